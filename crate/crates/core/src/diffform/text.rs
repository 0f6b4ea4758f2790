//! Text, LaTeX and JSON forms of differential monomials and forms.
//!
//! Text: `c * u^(3p-6) * u[1,0]^2 * u[2,0]`, terms joined by ` + ` / ` - `.

use super::form::DiffForm;
use super::monomial::{DerivSymbol, DiffMonomial, UPower};
use crate::algebra::{Expr, RatFunc};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

fn deriv_order(m: &DiffMonomial) -> Vec<(DerivSymbol, u32)> {
    let mut d: Vec<_> = m.derivs().collect();
    d.sort_by_key(|(s, _)| (s.order(), std::cmp::Reverse(s.h1)));
    d
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let up = self.upower;
        if !up.is_zero() {
            parts.push(match (up.coeff_p, up.constant) {
                (0, 1) => "u".to_string(),
                (0, k) if k > 0 => format!("u^{k}"),
                _ => format!("u^({})", up.affine()),
            });
        }
        for (s, e) in deriv_order(self) {
            parts.push(if e == 1 { s.to_string() } else { format!("{s}^{e}") });
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl DiffMonomial {
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let up = self.upower;
        if !up.is_zero() {
            match (up.coeff_p, up.constant) {
                (0, 1) => out.push('u'),
                (0, k) if k > 0 => out.push_str(&format!("u^{{{k}}}")),
                _ => out.push_str(&format!("u^{{{}}}", up.affine())),
            }
        }
        for (s, e) in deriv_order(self) {
            out.push_str(&format!("u_{{{},{}}}", s.h1, s.h2));
            if e > 1 {
                out.push_str(&format!("^{{{e}}}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

fn coeff_text(c: &RatFunc) -> (bool, String) {
    let s = c.to_string();
    let single = c.is_polynomial() && c.num().len() == 1 || c.as_constant().is_some();
    if single {
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({s})"))
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, cs) = coeff_text(c);
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if cs == "1" && *m != DiffMonomial::one() {
                write!(f, "{sep}{m}")?;
            } else {
                write!(f, "{sep}{cs} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm({self})")
    }
}

impl DiffForm {
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let single = c.as_constant().is_some() || (c.is_polynomial() && c.num().len() == 1);
            let mut cl = c.to_latex();
            let mut neg = false;
            if single {
                if let Some(rest) = cl.strip_prefix('-') {
                    neg = true;
                    cl = rest.to_string();
                }
                if cl == "1" {
                    cl.clear();
                }
            } else {
                cl = format!("\\left({cl}\\right)");
            }
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let space = if cl.is_empty() { "" } else { " " };
            out.push_str(&format!("{sep}{cl}{space}{}", m.to_latex()));
        }
        out
    }
}

/// Split at top-level occurrences of `sep` (outside brackets/parentheses).
fn split_top(s: &str, is_sep: impl Fn(&[u8], usize) -> bool) -> Vec<(usize, usize)> {
    let b = s.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..b.len() {
        match b[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ if depth == 0 && is_sep(b, i) => {
                out.push((start, i));
                start = i;
            }
            _ => {}
        }
    }
    out.push((start, b.len()));
    out
}

fn parse_upower(s: &str) -> Result<UPower> {
    let bad = || Error::Parse(format!("bad u exponent `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(&t);
    let mut up = UPower::ZERO;
    let mut rest = t;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let tok = &body[..end];
        rest = &body[end..];
        if let Some(k) = tok.strip_suffix('p') {
            let k: i32 = if k.is_empty() { 1 } else { k.parse().map_err(|_| bad())? };
            up.coeff_p += sign * k;
        } else {
            let k: i32 = tok.parse().map_err(|_| bad())?;
            up.constant += sign * k;
        }
    }
    Ok(up)
}

/// Parse a factor that names `u` or a derivative, if it is one.
fn parse_u_factor(f: &str) -> Result<Option<DiffMonomial>> {
    let Some(rest) = f.strip_prefix('u') else {
        return Ok(None);
    };
    if rest.is_empty() {
        return Ok(Some(DiffMonomial::u_pow(UPower::int(1))));
    }
    if let Some(e) = rest.strip_prefix('^') {
        return Ok(Some(DiffMonomial::u_pow(parse_upower(e)?)));
    }
    let bad = || Error::Parse(format!("bad derivative factor `{f}`"));
    let inner = rest.strip_prefix('[').ok_or_else(bad)?;
    let close = inner.find(']').ok_or_else(bad)?;
    let (hs, tail) = (&inner[..close], &inner[close + 1..]);
    let mut it = hs.split(',').map(|x| x.trim().parse::<u8>());
    let (Some(Ok(h1)), Some(Ok(h2)), None) = (it.next(), it.next(), it.next()) else {
        return Err(bad());
    };
    let e: u32 = match tail.strip_prefix('^') {
        Some(e) => e.trim().parse().map_err(|_| bad())?,
        None if tail.is_empty() => 1,
        None => return Err(bad()),
    };
    Ok(Some(DiffMonomial::new(UPower::ZERO, &[(h1, h2, e)])?))
}

impl std::str::FromStr for DiffForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<DiffForm> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(DiffForm::zero());
        }
        let terms = split_top(&s, |b, i| {
            (b[i] == b'+' || b[i] == b'-') && i > 0 && !matches!(b[i - 1], b'*' | b'/' | b'^' | b'(' | b'[')
        });
        let mut out = DiffForm::zero();
        for (a, b) in terms {
            let term = &s[a..b];
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let mut mono = DiffMonomial::one();
            let mut coeff: Vec<&str> = Vec::new();
            for (x, y) in split_top(body, |b, i| b[i] == b'*') {
                let fac = body[x..y].trim_start_matches('*');
                match parse_u_factor(fac)? {
                    Some(m) => mono = mono.mul(&m),
                    None => coeff.push(fac),
                }
            }
            let mut c = if coeff.is_empty() { RatFunc::int(1) } else { Expr::parse(&coeff.join("*"))?.to_ratfunc()? };
            if neg {
                c = -c;
            }
            out.add_term(mono, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonDeriv {
    h: [u8; 2],
    e: u32,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    u_power: [i32; 2],
    derivs: Vec<JsonDeriv>,
}

impl Serialize for DiffForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                u_power: [m.upower.coeff_p, m.upower.constant],
                derivs: deriv_order(m).into_iter().map(|(d, e)| JsonDeriv { h: [d.h1, d.h2], e }).collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        let mut out = DiffForm::zero();
        for t in terms {
            let c = RatFunc::parse(&t.coeff).map_err(D::Error::custom)?;
            let ds: Vec<(u8, u8, u32)> = t.derivs.iter().map(|x| (x.h[0], x.h[1], x.e)).collect();
            let m = DiffMonomial::new(UPower::new(t.u_power[0], t.u_power[1]), &ds).map_err(D::Error::custom)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = "3*p*u[1,0]^4 + 3*u*u[2,0]*u[1,0]^2 - 5*u[1,0]^4";
        let f: DiffForm = s.parse().unwrap();
        assert_eq!(f.to_string(), "(3*p - 5) * u[1,0]^4 + 3 * u * u[1,0]^2 * u[2,0]");
        assert_eq!(f.to_string().parse::<DiffForm>().unwrap(), f);
    }

    #[test]
    fn u_power_text() {
        let f: DiffForm = "c1/n * u^(3p-6) * u[1,0]^2 * u[2,0]".parse().unwrap();
        assert_eq!(f.to_string(), "(c1/n) * u^(3p-6) * u[1,0]^2 * u[2,0]");
        assert_eq!(parse_upower("(-p+2)").unwrap(), UPower::new(-1, 2));
        assert_eq!(parse_upower("3*p-6").unwrap(), UPower::new(3, -6));
    }

    #[test]
    fn negative_leading_and_fractions() {
        let f: DiffForm = "-2*n/(p-1)^2 * u^2 * u[1,1]^2 - 3/4 * u[0,1]^4".parse().unwrap();
        assert_eq!(f.to_string().parse::<DiffForm>().unwrap(), f);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn latex_form() {
        let f: DiffForm = "3*u*u[2,0]*u[1,0]^2 - u^3*u[4,0]".parse().unwrap();
        assert_eq!(f.to_latex(), "-u^{3}u_{4,0} + 3 uu_{1,0}^{2}u_{2,0}");
    }

    #[test]
    fn json_round_trip() {
        let f: DiffForm = "(3*p-5)/n * u^(3p-6) * u[1,0]^3 + mu * u^2 * u[1,1]^2".parse().unwrap();
        let j = serde_json::to_string(&f).unwrap();
        let g: DiffForm = serde_json::from_str(&j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!("u[1]".parse::<DiffForm>().is_err());
        assert!("3 * u[5,0]".parse::<DiffForm>().is_err());
        assert!("x * u".parse::<DiffForm>().is_err());
    }
}

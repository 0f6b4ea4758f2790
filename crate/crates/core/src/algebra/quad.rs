use super::rat::{parse_rat, rat_to_string, Rat};
use super::Field;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b*sqrt(17)` over an arbitrary coefficient field.
///
/// `Quad<Rat>` is the number field Q(sqrt 17) used for evaluation at the
/// irrational table rows; `Quad<RatFunc>` carries the symbolic constants
/// whose definitions mention sqrt(17).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<T> {
    pub a: T,
    pub b: T,
}

pub type QField = Quad<Rat>;

const D: i64 = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_rat(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl<T: Field> Quad<T> {
    pub fn new(a: T, b: T) -> Self {
        Quad { a, b }
    }

    pub fn from_base(a: T) -> Self {
        Quad { a, b: T::zero() }
    }

    pub fn sqrt17() -> Self {
        Quad { a: T::zero(), b: T::one() }
    }

    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 17 b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - T::from_rat(&Rat::from_integer(D.into())) * self.b.clone() * self.b.clone()
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let norm = self.norm();
        let c = self.conj();
        Some(Quad { a: c.a.checked_div(&norm)?, b: c.b.checked_div(&norm)? })
    }
}

impl<T: Field> Zero for Quad<T> {
    fn zero() -> Self {
        Quad { a: T::zero(), b: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Field> One for Quad<T> {
    fn one() -> Self {
        Quad { a: T::one(), b: T::zero() }
    }
}

impl<T: Field> Field for Quad<T> {
    fn from_rat(r: &Rat) -> Self {
        Quad::from_base(T::from_rat(r))
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(self.clone() * rhs.inv()?)
    }
}

impl<T: Field> Add for Quad<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Quad { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<T: Field> Sub for Quad<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Quad { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<T: Field> Mul for Quad<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = T::from_rat(&Rat::from_integer(D.into()));
        Quad {
            a: self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<T: Field> Neg for Quad<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad { a: -self.a, b: -self.b }
    }
}

impl<T: Field> Div for Quad<T> {
    type Output = Self;
    /// Panics on division by zero; use [`Field::checked_div`] when the divisor
    /// may vanish.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero in quadratic field")
    }
}

impl<'a, T: Field> Add<&'a Quad<T>> for &'a Quad<T> {
    type Output = Quad<T>;
    fn add(self, rhs: &Quad<T>) -> Quad<T> {
        self.clone() + rhs.clone()
    }
}

impl<'a, T: Field> Sub<&'a Quad<T>> for &'a Quad<T> {
    type Output = Quad<T>;
    fn sub(self, rhs: &Quad<T>) -> Quad<T> {
        self.clone() - rhs.clone()
    }
}

impl<'a, T: Field> Mul<&'a Quad<T>> for &'a Quad<T> {
    type Output = Quad<T>;
    fn mul(self, rhs: &Quad<T>) -> Quad<T> {
        self.clone() * rhs.clone()
    }
}

impl QField {
    pub fn int(v: i64) -> Self {
        Quad::from_base(Rat::from_integer(v.into()))
    }

    pub fn rat(num: i64, den: i64) -> Self {
        Quad::from_base(super::rat(num, den))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Exact sign of `a + b*sqrt(17)`: case split on the signs of `a`, `b`
    /// and, when they differ, a comparison of `a^2` against `17 b^2`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rat(&self.a);
        let sb = Sign::of_rat(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) => s,
            (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * Rat::from_integer(D.into());
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("sqrt(17) is irrational"),
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Floating-point approximation, for display and test cross-checks only.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (D as f64).sqrt()
    }

    /// Exact floor, found from a float guess corrected by exact comparisons.
    pub fn floor(&self) -> BigInt {
        let guess = self.to_f64().floor();
        let mut k = BigInt::from(guess as i64);
        if !guess.is_finite() || guess.abs() > 1e15 {
            // Large magnitudes: fall back to bounding sqrt(17) by integer sqrt.
            k = self.floor_slow();
        }
        while QField::from_base(Rat::from_integer(k.clone())) > *self {
            k -= 1;
        }
        while QField::from_base(Rat::from_integer(&k + 1)) <= *self {
            k += 1;
        }
        k
    }

    fn floor_slow(&self) -> BigInt {
        // b*sqrt(17) = sign(b) * sqrt(17 b^2); bracket with integer square roots.
        let b2 = &self.b * &self.b * Rat::from_integer(D.into());
        let approx = (b2.numer() * b2.denom()).sqrt() / b2.denom();
        let bpart = if self.b.is_negative() { -approx } else { approx };
        self.a.floor().to_integer() + bpart
    }

    /// Square root inside the field, when it exists.
    pub fn sqrt_exact(&self) -> Option<QField> {
        match self.sign() {
            Sign::Negative => return None,
            Sign::Zero => return Some(QField::zero()),
            Sign::Positive => {}
        }
        // (x + y sqrt17)^2 = a + b sqrt17  =>  x^2 + 17 y^2 = a, 2xy = b.
        // x^2 = (a +- sqrt(a^2 - 17 b^2)) / 2.
        let norm = self.norm();
        let root = rat_sqrt(&norm)?;
        let two = Rat::from_integer(2.into());
        for cand in [(&self.a + &root) / &two, (&self.a - &root) / &two] {
            if let Some(x) = rat_sqrt(&cand) {
                let y = if x.is_zero() {
                    match rat_sqrt(&(&self.a / Rat::from_integer(D.into()))) {
                        Some(y) => y,
                        None => continue,
                    }
                } else {
                    &self.b / (&two * &x)
                };
                let r = Quad { a: x, b: y };
                if &r * &r == *self {
                    return Some(if r.is_negative() { -r } else { r });
                }
            }
        }
        None
    }

    /// The rational with the smallest denominator strictly inside `(lo, hi)`,
    /// computed by the continued-fraction (Stern-Brocot) descent with exact
    /// comparisons. Requires `lo < hi`.
    pub fn simplest_rational_between(lo: &QField, hi: &QField) -> Rat {
        assert!(lo < hi, "empty interval");
        simplest_between(lo, hi)
    }
}

fn simplest_between(lo: &QField, hi: &QField) -> Rat {
    // Integer strictly inside?
    let fl = lo.floor();
    let candidate = QField::from_base(Rat::from_integer(&fl + 1));
    if candidate < *hi {
        // Prefer the integer closest to zero inside the interval.
        if lo.is_negative() && hi.is_positive() {
            return Rat::zero();
        }
        if hi.sign() != Sign::Positive {
            // interval entirely <= 0: the largest integer strictly below hi
            let fh = hi.floor();
            let top = if QField::from_base(Rat::from_integer(fh.clone())) == *hi { fh - 1 } else { fh };
            return Rat::from_integer(top);
        }
        return Rat::from_integer(fl + 1);
    }
    // lo and hi share the integer part f (or hi == f+1): recurse on reciprocals.
    let f = QField::from_base(Rat::from_integer(fl.clone()));
    let lo_frac = lo - &f;
    let hi_frac = hi - &f;
    if lo_frac.is_zero() {
        // interval (f, f + t): pick f + 1/k with k large enough
        let inv = QField::one() / hi_frac;
        let k = inv.floor() + 1;
        return Rat::from_integer(fl) + Rat::new(BigInt::one(), k);
    }
    let inner = simplest_between(&(QField::one() / hi_frac), &(QField::one() / lo_frac));
    Rat::from_integer(fl) + Rat::one() / inner
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

impl PartialOrd for QField {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QField {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl From<Rat> for QField {
    fn from(r: Rat) -> Self {
        Quad::from_base(r)
    }
}

impl fmt::Display for QField {
    /// `a/b+c/d*sqrt(17)` with zero parts omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = (!self.a.is_zero()).then(|| rat_to_string(&self.a));
        let b = if self.b.is_zero() {
            None
        } else if self.b.is_one() {
            Some("sqrt(17)".to_string())
        } else if (-self.b.clone()).is_one() {
            Some("-sqrt(17)".to_string())
        } else {
            Some(format!("{}*sqrt(17)", rat_to_string(&self.b)))
        };
        match (a, b) {
            (None, None) => write!(f, "0"),
            (Some(a), None) => write!(f, "{a}"),
            (None, Some(b)) => write!(f, "{b}"),
            (Some(a), Some(b)) if b.starts_with('-') => write!(f, "{a}{b}"),
            (Some(a), Some(b)) => write!(f, "{a}+{b}"),
        }
    }
}

impl std::str::FromStr for QField {
    type Err = Error;

    /// Accepts `a/b`, `a/b+c/d*sqrt(17)`, `a/b-c/d*sqrt(17)`, `c/d*sqrt(17)`
    /// and `sqrt(17)` with optional sign.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace("+-", "-").replace("-+", "-").replace("--", "+");
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let Some(pos) = t.find("sqrt(17)") else {
            return Ok(Quad::from_base(parse_rat(&t)?));
        };
        if pos + "sqrt(17)".len() != t.len() {
            return Err(Error::Parse(format!("sqrt(17) must be the last factor: {s:?}")));
        }
        let head = &t[..pos];
        // Split head into rational part and the coefficient of sqrt(17):
        // the coefficient starts at the last +/- that is not at position 0
        // and not right after '/'.
        let bytes = head.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        let (a_str, coef) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let b = match coef {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            c => parse_rat(c.strip_prefix('+').unwrap_or(c))?,
        };
        let a = if a_str.is_empty() { Rat::zero() } else { parse_rat(a_str)? };
        Ok(Quad { a, b })
    }
}

impl serde::Serialize for QField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QField {
    fn deserialize<D2: serde::Deserializer<'de>>(d: D2) -> std::result::Result<Self, D2::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn q(s: &str) -> QField {
        s.parse().unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(QField::zero().sign(), Sign::Zero);
        assert_eq!(q("-9+sqrt(17)").sign(), Sign::Negative);
        // (9 + sqrt17)/8 - 13/9 > 0
        let n2 = q("9/8+1/8*sqrt(17)");
        assert_eq!((n2 - QField::rat(13, 9)).sign(), Sign::Positive);
        // Independent check: 9 sqrt17 > 104 - 81 = 23  <=>  81*17 > 23^2.
        assert!((81.0_f64 * 17.0).sqrt() > 23.0);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "3", "-5/9", "sqrt(17)", "-sqrt(17)", "1/2+3/4*sqrt(17)", "9/8-1/8*sqrt(17)", "-2/3*sqrt(17)"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("9/8 + -1/8*sqrt(17)"), q("9/8-1/8*sqrt(17)"));
        assert!("1.5".parse::<QField>().is_err());
        assert!("sqrt(17)*2".parse::<QField>().is_err());
    }

    #[test]
    fn inverse_and_division() {
        let x = q("3-sqrt(17)");
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QField::one());
        assert!(QField::zero().inv().is_none());
    }

    #[test]
    fn exact_sqrt() {
        let r = q("5/2+1/2*sqrt(17)"); // (1/2 + 1/2 sqrt17)^2 = (1 + 17 + 2 sqrt17)/4
        let s = q("1/2+1/2*sqrt(17)");
        assert_eq!(&s * &s, q("9/2+1/2*sqrt(17)"));
        assert_eq!(q("9/2+1/2*sqrt(17)").sqrt_exact(), Some(s));
        assert_eq!(QField::int(16).sqrt_exact(), Some(QField::int(4)));
        assert_eq!(QField::int(17).sqrt_exact(), Some(QField::sqrt17()));
        assert_eq!(QField::int(2).sqrt_exact(), None);
        let _ = r;
    }

    #[test]
    fn floor_and_simplest() {
        assert_eq!(q("sqrt(17)").floor(), BigInt::from(4));
        assert_eq!(q("-sqrt(17)").floor(), BigInt::from(-5));
        assert_eq!(QField::int(3).floor(), BigInt::from(3));
        let r = QField::simplest_rational_between(&QField::rat(1, 3), &QField::rat(1, 2));
        assert_eq!(r, rat(2, 5));
        let r = QField::simplest_rational_between(&q("-sqrt(17)"), &QField::int(-4));
        assert!(QField::from(r.clone()) > q("-sqrt(17)") && QField::from(r) < QField::int(-4));
        let r = QField::simplest_rational_between(&QField::int(-3), &QField::int(2));
        assert_eq!(r, Rat::zero());
        let r = QField::simplest_rational_between(&QField::int(-7), &QField::int(-2));
        assert_eq!(r, rat(-3, 1));
    }
}

use super::quad::QField;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A parameter point `(n, p, mu[, c1])` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub n: u32,
    pub p: QField,
    pub mu: QField,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c1: Option<QField>,
}

impl ParamPoint {
    pub fn new(n: u32, p: QField, mu: QField) -> Result<ParamPoint> {
        if n == 0 {
            return Err(Error::InvalidPoint("n must be a positive integer".into()));
        }
        if p == QField::int(1) {
            return Err(Error::PEqualsOne);
        }
        Ok(ParamPoint { n, p, mu, c1: None })
    }

    pub fn with_c1(mut self, c1: QField) -> ParamPoint {
        self.c1 = Some(c1);
        self
    }

    pub fn without_c1(&self) -> ParamPoint {
        ParamPoint { c1: None, ..self.clone() }
    }

    /// Values of `(n, p, mu, c1)`; an absent `c1` reads as zero.
    pub fn values(&self) -> [QField; 4] {
        [QField::int(self.n as i64), self.p.clone(), self.mu.clone(), self.c1.clone().unwrap_or_else(|| QField::int(0))]
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={}, mu={}", self.n, self.p, self.mu)?;
        if let Some(c1) = &self.c1 {
            write!(f, ", c1={c1}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_p_one_and_n_zero() {
        assert_eq!(ParamPoint::new(2, QField::int(1), QField::int(0)), Err(Error::PEqualsOne));
        assert!(matches!(ParamPoint::new(0, QField::int(2), QField::int(0)), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn display_and_json() {
        let x = ParamPoint::new(2, QField::rat(11, 5), QField::int(2)).unwrap().with_c1(QField::rat(-5, 9));
        assert_eq!(x.to_string(), "(n=2, p=11/5, mu=2, c1=-5/9)");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"n":2,"p":"11/5","mu":"2","c1":"-5/9"}"#);
        assert_eq!(serde_json::from_str::<ParamPoint>(&j).unwrap(), x);
    }
}

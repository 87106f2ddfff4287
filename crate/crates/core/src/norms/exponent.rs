use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Lebesgue exponent in `[1, inf]` with its conjugate cached.
///
/// `conjugate` swaps the stored pair, so it is an exact involution.
#[derive(Clone, Copy)]
pub struct Exponent {
    p: f64,
    inv: f64,
    conj_p: f64,
    conj_inv: f64,
}

impl Exponent {
    pub const ONE: Exponent = Exponent {
        p: 1.0,
        inv: 1.0,
        conj_p: f64::INFINITY,
        conj_inv: 0.0,
    };
    pub const INFINITY: Exponent = Exponent {
        p: f64::INFINITY,
        inv: 0.0,
        conj_p: 1.0,
        conj_inv: 1.0,
    };

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Exponent(p));
        }
        if p == 1.0 {
            return Ok(Self::ONE);
        }
        if p.is_infinite() {
            return Ok(Self::INFINITY);
        }
        let inv = 1.0 / p;
        Ok(Exponent {
            p,
            inv,
            conj_p: p / (p - 1.0),
            conj_inv: 1.0 - inv,
        })
    }

    /// Build from `1/p` in `[0, 1]`.
    pub fn from_inv(inv: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&inv) {
            return Err(Error::Exponent(1.0 / inv));
        }
        if inv == 0.0 {
            return Ok(Self::INFINITY);
        }
        if inv == 1.0 {
            return Ok(Self::ONE);
        }
        let conj_inv = 1.0 - inv;
        Ok(Exponent {
            p: 1.0 / inv,
            inv,
            conj_p: 1.0 / conj_inv,
            conj_inv,
        })
    }

    pub fn value(self) -> f64 {
        self.p
    }

    pub fn inv(self) -> f64 {
        self.inv
    }

    pub fn is_infinite(self) -> bool {
        self.p.is_infinite()
    }

    pub fn conjugate(self) -> Self {
        Exponent {
            p: self.conj_p,
            inv: self.conj_inv,
            conj_p: self.p,
            conj_inv: self.inv,
        }
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.p)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(Self::INFINITY),
            t => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent `{t}`")))
                .and_then(Exponent::new),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.p)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(x) => Exponent::new(x),
            Raw::Str(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

pub fn exponents(ps: &[f64]) -> Result<Vec<Exponent>> {
    ps.iter().map(|&p| Exponent::new(p)).collect()
}

pub fn conjugate(p: Exponent) -> Exponent {
    p.conjugate()
}

pub fn conjugate_all(ps: &[Exponent]) -> Vec<Exponent> {
    ps.iter().map(|p| p.conjugate()).collect()
}

pub fn sum_inv(ps: &[Exponent]) -> f64 {
    ps.iter().map(|p| p.inv()).sum()
}

/// `(1/n) sum 1/p_i`.
pub fn mean_inv(ps: &[Exponent]) -> f64 {
    sum_inv(ps) / ps.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        let e = exponents(&[2.0, 2.0]).unwrap();
        assert_eq!(conjugate_all(&e), e);
        let c = conjugate_all(&exponents(&[4.0, 4.0 / 3.0]).unwrap());
        assert!((c[0].value() - 4.0 / 3.0).abs() < 1e-15);
        assert!((c[1].value() - 4.0).abs() < 1e-12);
        assert!(Exponent::ONE.conjugate().is_infinite());
        assert_eq!(Exponent::INFINITY.conjugate(), Exponent::ONE);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(Exponent::new(0.5), Err(Error::Exponent(0.5)));
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn serde_inf() {
        let e: Vec<Exponent> = serde_json::from_str(r#"[2, "inf", 1.5]"#).unwrap();
        assert!(e[1].is_infinite());
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"[2.0,"inf",1.5]"#);
        assert!(serde_json::from_str::<Exponent>("0.3").is_err());
    }
}

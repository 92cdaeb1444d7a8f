//! Exact field elements: arbitrary-precision rationals or residues mod a prime.
//!
//! Every computation in this crate reduces to arithmetic on [`Scalar`] values.
//! Equality is exact; there are no tolerances anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The ground field of an instance: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl FieldSpec {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Mod { value: 0, prime: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Mod { value: 1 % *p, prime: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let p = *p as i128;
                let v = ((n as i128 % p) + p) % p;
                Scalar::Mod { value: v as u64, prime: p as u64 }
            }
        }
    }

    /// Parses "a" or "a/b" with optional sign. In `Fp` the fraction is
    /// evaluated as a field division.
    pub fn parse(&self, s: &str) -> Result<Scalar, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: i64 = num.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let mut val = self.from_i64(n);
        if let Some(d) = den {
            let d: i64 = d.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if d == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            let dv = self.from_i64(d);
            val = val.div(&dv);
        }
        Ok(val)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator (enforced by
/// `num_rational`); residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, prime: u64 },
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p is prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "element not invertible mod {p}");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Q,
            Scalar::Mod { prime, .. } => FieldSpec::Fp(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { value: (a + b) % p, prime: *p }
            }
            _ => panic!("mixed field arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, prime } => {
                Scalar::Mod { value: (prime - value % prime) % prime, prime: *prime }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { value: ((*a as u128 * *b as u128) % *p as u128) as u64, prime: *p }
            }
            _ => panic!("mixed field arithmetic"),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, prime } => {
                Scalar::Mod { value: mod_inv(*value, *prime), prime: *prime }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = FieldSpec::Q;
        let third = f.parse("1/3").unwrap();
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
    }

    #[test]
    fn mod_p_inverse() {
        let f = FieldSpec::Fp(7);
        let three = f.from_i64(3);
        assert!(three.mul(&three.inv()).is_one());
        assert_eq!(f.parse("1/3").unwrap(), three.inv());
    }

    #[test]
    fn display_round_trips() {
        let f = FieldSpec::Q;
        for s in ["0", "5", "-2/3", "7/2"] {
            let v = f.parse(s).unwrap();
            assert_eq!(f.parse(&v.to_string()).unwrap(), v);
        }
    }
}

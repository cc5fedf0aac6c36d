//! Exact scalars over the rationals and over prime fields.
//!
//! A [`Scalar`] is either an arbitrary-precision rational in canonical
//! reduced form or a residue modulo a prime. Arithmetic never rounds.
//! Mixing the two fields in one operation is a hard error (panic), never a
//! coercion; the only sanctioned crossing is [`Scalar::reduce_mod`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Field descriptor shared by all entries of a matrix or polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Q,
            Scalar::Mod { prime, .. } => Field::Fp(*prime),
        }
    }

    pub fn zero(field: Field) -> Self {
        Self::from_int(0, field)
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(1, field)
    }

    pub fn from_int(n: i64, field: Field) -> Self {
        match field {
            Field::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let v = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { value: v, prime: p }
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
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

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Mod { value, prime } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Mod {
                        value: mod_pow(*value, *prime - 2, *prime),
                        prime: *prime,
                    })
                }
            }
        }
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow(&self, e: i64) -> Option<Scalar> {
        if e < 0 {
            return self.inv().map(|inv| inv.pow(-e).expect("nonneg"));
        }
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// Reduce a rational scalar mod `p`. Fails when the denominator is
    /// divisible by `p`; prime-field scalars must already live mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Mod { value, prime } => {
                if *prime == p {
                    Ok(Scalar::Mod {
                        value: *value,
                        prime: p,
                    })
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            Scalar::Rat(r) => {
                let pb = BigInt::from(p);
                let den = r.denom().mod_floor_big(&pb);
                if den == 0 {
                    return Err(Error::BadPrime { prime: p });
                }
                let num = r.numer().mod_floor_big(&pb);
                let den_inv = mod_pow(den, p - 2, p);
                Ok(Scalar::Mod {
                    value: mulmod(num, den_inv, p),
                    prime: p,
                })
            }
        }
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, p: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, p: &BigInt) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(p);
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue fits in u64"),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ratop:tt, $modop:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $ratop b),
                    (
                        Scalar::Mod { value: a, prime: p },
                        Scalar::Mod { value: b, prime: q },
                    ) => {
                        assert_eq!(p, q, "field mismatch: F_{p} vs F_{q}");
                        let f: fn(u64, u64, u64) -> u64 = $modop;
                        Scalar::Mod { value: f(*a, *b, *p), prime: *p }
                    }
                    _ => panic!("field mismatch: Q vs F_p"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, |a, b, p| (a + b) % p);
scalar_binop!(Sub, sub, -, |a, b, p| (a + p - b) % p);
scalar_binop!(Mul, mul, *, mulmod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: (*prime - *value) % *prime,
                prime: *prime,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, prime } => write!(f, "{value} (mod {prime})"),
        }
    }
}

/// Parse the `"p/q"` / `"p"` wire form of a rational scalar.
pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Scalar::Rat(BigRational::new(num, den)))
}

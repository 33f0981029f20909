//! Exact base fields: the rationals and prime fields F_p.
//!
//! Rationals use an `i64` fast path and fall back to big rationals on overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field descriptor carried by matrices and algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::Small(n, 1)),
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Parses `Q` or `F<p>` with p a prime below 2^31.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let p: u64 = s
            .strip_prefix('F')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(s.to_string()));
        }
        Ok(Field::Prime(p))
    }

    /// Parses a scalar written as `k`, `p/q` or `k mod p`.
    pub fn scalar(self, s: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(s.to_string());
        let s = s.trim();
        if let Some((k, p)) = s.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            if self != Field::Prime(p) {
                return Err(bad());
            }
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            return Ok(self.int(k));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::Q(Rat::from_big(BigRational::new(n, d)))),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let n = n.mod_floor(&m).to_u64().unwrap();
                let d = d.mod_floor(&m).to_u64().unwrap();
                if d == 0 {
                    return Err(bad());
                }
                Ok(Scalar::Fp(n, p).mul(&Scalar::Fp(d, p).inv()))
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational number in lowest terms with positive denominator.
///
/// `Big` is only used when the value does not fit the small form, so derived
/// equality and hashing are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    fn from_i128(n: i128, d: i128) -> Rat {
        let g = gcd_i128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new(n.into(), d.into()))),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rat::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Rat::Small(s, 1);
                    }
                }
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) if *a != i64::MIN => Rat::Small(-a, *b),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Rat {
        match self {
            Rat::Small(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// An element of a rational or prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    /// value and modulus
    Fp(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rat::Small(1, 1)),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Scalar::Q(r) => Scalar::Q(r.inv()),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, p - 2, *p), *p),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp((a + b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp(a * b % p, *p),
            _ => panic!("mixed fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
        }
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }

    /// The value as a big rational (rationals only).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.to_big()),
            Scalar::Fp(..) => None,
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Q(Rat::from_big(r))
    }

    /// Value of an F_p element as an integer in `0..p`.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp(v, _) => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Absolute size hint used to prefer small pivots.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Q(Rat::Small(n, d)) => n.unsigned_abs().max(*d as u64),
            Scalar::Q(Rat::Big(_)) => u64::MAX,
            Scalar::Fp(..) => 0,
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => write!(f, "{n}"),
            Scalar::Q(Rat::Small(n, d)) => write!(f, "{n}/{d}"),
            Scalar::Q(Rat::Big(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, p) => write!(f, "{v} mod {p}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Sign of a rational scalar (0 for F_p elements).
pub fn signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Q(Rat::Small(n, _)) => n.signum() as i32,
        Scalar::Q(Rat::Big(r)) => {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        }
        Scalar::Fp(..) => 0,
    }
}

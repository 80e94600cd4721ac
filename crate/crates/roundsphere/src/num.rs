//! Exact rational arithmetic.
//!
//! [`Rat`] is the coefficient type for the whole exact lane. Values are kept
//! in a reduced `i128` numerator/denominator pair as long as they fit and are
//! promoted transparently to an arbitrary-precision rational on overflow, so
//! arithmetic is exact for any input while the common small-coefficient case
//! stays allocation-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, Debug)]
pub enum Rat {
    /// Reduced fraction with `den > 0`, `gcd(|num|, den) == 1`.
    Small(i128, i128),
    /// Arbitrary-precision fallback, reduced, denominator positive.
    Big(Box<BigRational>),
}

#[inline]
fn gcd_i128(a: i128, b: i128) -> i128 {
    a.unsigned_abs().gcd(&b.unsigned_abs()) as i128
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn from_int(v: i64) -> Rat {
        Rat::Small(v as i128, 1)
    }

    /// `p/q`, reduced. Panics on `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Rat {
        assert!(q != 0, "zero denominator");
        Rat::normalized(p as i128, q as i128)
    }

    fn normalized(mut p: i128, mut q: i128) -> Rat {
        if q < 0 {
            p = -p;
            q = -q;
        }
        if p == 0 {
            return Rat::Small(0, 1);
        }
        let g = gcd_i128(p, q);
        Rat::Small(p / g, q / g)
    }

    fn big(r: BigRational) -> Rat {
        // Demote whenever the reduced value fits back into i128.
        if let (Some(p), Some(q)) = (r.numer().to_i128(), r.denom().to_i128()) {
            Rat::Small(p, q)
        } else {
            Rat::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(p, q) => BigRational::new(BigInt::from(*p), BigInt::from(*q)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(p, _) => *p == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(p, _) => *p < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, q) => *q == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(p, q) => *p as f64 / *q as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Integer power with negative exponents allowed (base must be nonzero).
    pub fn powi(&self, e: i32) -> Rat {
        let mut acc = Rat::ONE;
        let base = if e < 0 {
            assert!(!self.is_zero(), "zero to a negative power");
            Rat::ONE / self.clone()
        } else {
            self.clone()
        };
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn recip(&self) -> Rat {
        Rat::ONE / self.clone()
    }

    /// Fast multiply by a machine integer.
    pub fn mul_int(&self, k: i64) -> Rat {
        match self {
            Rat::Small(p, q) => {
                let k = k as i128;
                let g = gcd_i128(k, *q);
                let (k, q) = (k / g, q / g);
                match p.checked_mul(k) {
                    Some(num) => Rat::Small(num, q),
                    None => Rat::big(self.to_big() * BigRational::from(BigInt::from(k * g))),
                }
            }
            Rat::Big(b) => Rat::big(&**b * BigRational::from(BigInt::from(k))),
        }
    }

    /// Exact division by a machine integer. Panics on zero.
    pub fn div_int(&self, k: i64) -> Rat {
        assert!(k != 0, "division by zero");
        match self {
            Rat::Small(p, q) => {
                let mut k = k as i128;
                let mut p = *p;
                if k < 0 {
                    k = -k;
                    p = -p;
                }
                let g = gcd_i128(p, k);
                let (p, k) = (p / g, k / g);
                match q.checked_mul(k) {
                    Some(den) => Rat::Small(p, den),
                    None => Rat::big(self.to_big() / BigRational::from(BigInt::from(k * g))),
                }
            }
            Rat::Big(b) => Rat::big(&**b / BigRational::from(BigInt::from(k))),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        // Both variants are kept reduced and Big is demoted eagerly, so
        // representations are canonical.
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                match (a.checked_mul(*d), c.checked_mul(*b)) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    _ => self.to_big().cmp(&other.to_big()),
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let g = gcd_i128(*b, *d);
                let (b1, d1) = (b / g, d / g);
                let num = a
                    .checked_mul(d1)
                    .and_then(|x| c.checked_mul(b1).and_then(|y| x.checked_add(y)));
                let den = b1.checked_mul(*d);
                match (num, den) {
                    (Some(p), Some(q)) => Rat::normalized(p, q),
                    _ => Rat::big(self.to_big() + rhs.to_big()),
                }
            }
            _ => Rat::big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self + &(-rhs)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                // Cross-reduce before multiplying to keep intermediates small.
                let g1 = gcd_i128(*a, *d);
                let g2 = gcd_i128(*c, *b);
                let (a1, d1) = (a / g1, d / g1);
                let (c1, b1) = (c / g2, b / g2);
                match (a1.checked_mul(c1), b1.checked_mul(d1)) {
                    (Some(p), Some(q)) => Rat::Small(p, q),
                    _ => Rat::big(self.to_big() * rhs.to_big()),
                }
            }
            _ => Rat::big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        match rhs {
            Rat::Small(c, d) => {
                let inv = if *c < 0 {
                    Rat::Small(-d, -c)
                } else {
                    Rat::Small(*d, *c)
                };
                self * &inv
            }
            Rat::Big(b) => Rat::big(self.to_big() / &**b),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(p, q) => Rat::Small(-p, *q),
            Rat::Big(b) => Rat::big(-&**b),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $fn:ident),*) => {$(
        impl $trait for Rat {
            type Output = Rat;
            fn $fn(self, rhs: Rat) -> Rat { $trait::$fn(&self, &rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(p, 1) => write!(f, "{p}"),
            Rat::Small(p, q) => write!(f, "{p}/{q}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Rat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let q: BigInt = q.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Rat::big(BigRational::new(p, q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(Rat::ratio(2, 4), Rat::ratio(1, 2));
        assert_eq!(Rat::ratio(-2, -4), Rat::ratio(1, 2));
        assert_eq!(Rat::ratio(2, -4), Rat::ratio(-1, 2));
        assert_eq!(Rat::ratio(0, 7), Rat::ZERO);
    }

    #[test]
    fn field_ops() {
        let a = Rat::ratio(3, 4);
        let b = Rat::ratio(5, 6);
        assert_eq!(&a + &b, Rat::ratio(19, 12));
        assert_eq!(&a - &b, Rat::ratio(-1, 12));
        assert_eq!(&a * &b, Rat::ratio(5, 8));
        assert_eq!(&a / &b, Rat::ratio(9, 10));
        assert_eq!(a.mul_int(8), Rat::from_int(6));
        assert_eq!(a.div_int(-3), Rat::ratio(-1, 4));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let huge = Rat::Small(i128::MAX / 2, 1);
        let sq = &huge * &huge;
        assert!(matches!(sq, Rat::Big(_)));
        let back = &sq / &huge;
        assert_eq!(back, huge);
        assert!(matches!(back, Rat::Small(_, _)));
        // Exactness through the promotion boundary.
        let third = Rat::ratio(1, 3);
        assert_eq!(&(&sq * &third) * &Rat::from_int(3), sq);
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "7", "-3/5", "22/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rat>().unwrap(), Rat::ratio(2, 3));
    }

    #[test]
    fn powers() {
        assert_eq!(Rat::ratio(2, 3).powi(3), Rat::ratio(8, 27));
        assert_eq!(Rat::ratio(2, 3).powi(-2), Rat::ratio(9, 4));
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericsError;

/// An element of the rationals or of a real quadratic field `Q(sqrt(d))`.
///
/// The value is `rational + surd * sqrt(radicand)`. Both coefficients are
/// kept as reduced [`BigRational`]s and the radicand is square-free, so two
/// scalars over the same field are numerically equal exactly when their
/// fields are equal. A zero surd coefficient always carries `radicand == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    rational: BigRational,
    surd: BigRational,
    radicand: u64,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(value: BigRational) -> Self {
        ExactScalar {
            rational: value,
            surd: BigRational::zero(),
            radicand: 0,
        }
    }

    /// `p / q` as an exact rational.
    pub fn ratio(p: i64, q: i64) -> Result<Self, NumericsError> {
        if q == 0 {
            return Err(NumericsError::ZeroDenominator);
        }
        Ok(Self::from_rational(BigRational::new(p.into(), q.into())))
    }

    /// Builds `p/q + (r/s) * sqrt(d)` in canonical form.
    ///
    /// Square factors of `d` are folded into the surd coefficient; a perfect
    /// square `d` collapses the value into the rationals.
    pub fn make_quadratic(p: i64, q: i64, r: i64, s: i64, d: i64) -> Result<Self, NumericsError> {
        if q == 0 || s == 0 {
            return Err(NumericsError::ZeroDenominator);
        }
        if d < 0 {
            return Err(NumericsError::NegativeRadicand(d));
        }
        Ok(Self::from_parts(
            BigRational::new(p.into(), q.into()),
            BigRational::new(r.into(), s.into()),
            d as u64,
        ))
    }

    /// Canonicalising constructor over big rationals.
    pub fn from_parts(rational: BigRational, surd: BigRational, radicand: u64) -> Self {
        let (square, free) = split_square(radicand);
        let mut rational = rational;
        let mut surd = surd * BigRational::from_integer(BigInt::from(square));
        let mut radicand = free;
        if radicand == 1 {
            rational += &surd;
            surd = BigRational::zero();
        }
        if radicand <= 1 || surd.is_zero() {
            surd = BigRational::zero();
            radicand = 0;
        }
        ExactScalar {
            rational,
            surd,
            radicand,
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// Square-free radicand; `0` for a pure rational.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn p(&self) -> &BigInt {
        self.rational.numer()
    }

    pub fn q(&self) -> &BigInt {
        self.rational.denom()
    }

    pub fn r(&self) -> &BigInt {
        self.surd.numer()
    }

    pub fn s(&self) -> &BigInt {
        self.surd.denom()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The field both operands live in, if they share one.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, NumericsError> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(NumericsError::MixedRadicals(a, b)),
        }
    }

    /// Exact sign of `u + v sqrt(d)`, decided by comparing `u^2` with `v^2 d`.
    pub fn signum(&self) -> Ordering {
        let u = self.rational.numer().sign();
        let v = self.surd.numer().sign();
        match (u, v) {
            (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
            (Sign::Plus, Sign::Plus | Sign::NoSign) | (Sign::NoSign, Sign::Plus) => {
                Ordering::Greater
            }
            (Sign::Minus, Sign::Minus | Sign::NoSign) | (Sign::NoSign, Sign::Minus) => {
                Ordering::Less
            }
            (u, _) => {
                // Opposite signs: the larger magnitude wins. Cross-multiplied so
                // only integers are compared.
                let lhs = self.rational.numer().pow(2u32) * self.surd.denom().pow(2u32);
                let rhs = self.surd.numer().pow(2u32)
                    * BigInt::from(self.radicand)
                    * self.rational.denom().pow(2u32);
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sign_ordering(u),
                    Ordering::Less => sign_ordering(u).reverse(),
                }
            }
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, NumericsError> {
        self.common_radicand(other)?;
        Ok((self - other).signum())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        Ok(Self::from_parts(
            &self.rational + &other.rational,
            &self.surd + &other.surd,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.surd * &other.surd * dd;
        let surd = &self.rational * &other.surd + &self.surd * &other.rational;
        Ok(Self::from_parts(rational, surd, d))
    }

    /// Multiplicative inverse via the conjugate `(u - v sqrt(d)) / (u^2 - v^2 d)`.
    pub fn recip(&self) -> Result<Self, NumericsError> {
        if self.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        let dd = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * dd;
        Ok(Self::from_parts(
            &self.rational / &norm,
            -(&self.surd / &norm),
            self.radicand,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, NumericsError> {
        self.try_mul(&other.recip()?)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.surd.is_zero() {
            return self.rational.floor().to_integer();
        }
        // sqrt(v^2 d) with v = r/s is sqrt(r^2 d s^2) / s^2; bracket it with an
        // integer square root, then correct by exact comparison.
        let s2 = self.surd.denom().pow(2u32);
        let inner = self.surd.numer().pow(2u32) * BigInt::from(self.radicand) * &s2;
        let root = BigRational::new(inner.sqrt(), s2);
        let approx = if self.surd.is_negative() {
            &self.rational - root
        } else {
            &self.rational + root
        };
        let mut n = approx.floor().to_integer();
        loop {
            let candidate = ExactScalar::from_rational(BigRational::from_integer(n.clone()));
            if (&candidate - self).signum() == Ordering::Greater {
                n -= 1;
                continue;
            }
            let next = ExactScalar::from_rational(BigRational::from_integer(&n + 1));
            if (&next - self).signum() != Ordering::Greater {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Decimal expansion with `digits` fractional digits, rounded half up.
    pub fn approximate(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let scaled = ExactScalar::from_parts(
            &self.rational * BigRational::from_integer(scale.clone()) + half,
            &self.surd * BigRational::from_integer(scale.clone()),
            self.radicand,
        );
        let n = scaled.floor();
        let negative = n.is_negative();
        let magnitude = n.abs();
        let (int_part, frac_part) = magnitude.div_rem(&scale);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            let frac = frac_part.to_string();
            out.extend(std::iter::repeat_n('0', digits - frac.len()));
            out.push_str(&frac);
        }
        out
    }

    /// Lossy conversion for reporting only; never used in a decision.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }

    /// Renders the value in the scalar literal grammar accepted by
    /// [`parse_scalar`](super::parse_scalar).
    pub fn to_literal(&self) -> String {
        if self.surd.is_zero() {
            return if self.rational.denom().is_one() {
                self.rational.numer().to_string()
            } else {
                format!("{}/{}", self.rational.numer(), self.rational.denom())
            };
        }
        let l = self.rational.denom().lcm(self.surd.denom());
        let p = self.rational.numer() * (&l / self.rational.denom());
        let r = self.surd.numer() * (&l / self.surd.denom());
        let op = if r.is_negative() { '-' } else { '+' };
        format!("({}{}{}*sqrt({}))/{}", p, op, r.abs(), self.radicand, l)
    }
}

fn sign_ordering(sign: Sign) -> Ordering {
    match sign {
        Sign::Plus => Ordering::Greater,
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
    }
}

/// Splits `d` into `square^2 * free` with `free` square-free.
fn split_square(d: u64) -> (u64, u64) {
    if d == 0 {
        return (1, 0);
    }
    let mut square = 1u64;
    let mut free = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= free {
        let pp = p * p;
        while free.is_multiple_of(pp) {
            free /= pp;
            square *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free)
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(value: BigRational) -> Self {
        Self::from_rational(value)
    }
}

// Operators panic on mixed radicals. Every scalar inside one IET shares a
// radicand (checked at construction), so they cannot fire there.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                self.$checked(rhs).expect("mixed quadratic fields")
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$checked(&rhs).expect("mixed quadratic fields")
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$checked(rhs).expect("mixed quadratic fields")
            }
        }
    };
}

impl ExactScalar {
    fn try_sub(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        Ok(Self::from_parts(
            &self.rational - &other.rational,
            &self.surd - &other.surd,
            d,
        ))
    }
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rational: -&self.rational,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

//! Probability scalar abstraction. The decomposition runs on plain doubles
//! by default; an exact-rational mode keeps every probability (and every
//! inclusion-exclusion sum) exact so that small golden cases are reproducible
//! independent of summation order. Logarithms are always taken in `f64` at
//! the last moment.

use num::{BigRational, FromPrimitive, ToPrimitive, Zero};

/// Scalar used for probability mass arithmetic.
pub trait Prob: Clone + PartialEq + PartialOrd + Send + Sync + std::fmt::Debug + 'static {
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// The probability `num / den`.
    fn from_count(num: u64, den: u64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    /// Multiplication by a signed integer (inclusion-exclusion coefficients).
    fn scaled(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Name used in report metadata.
    fn mode_name() -> &'static str;

    fn log2(&self) -> f64 {
        self.to_f64().log2()
    }
}

impl Prob for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_count(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn scaled(&self, k: i64) -> Self {
        self * k as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn mode_name() -> &'static str {
        "double"
    }
}

impl Prob for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        num::One::one()
    }

    fn from_count(num: u64, den: u64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn scaled(&self, k: i64) -> Self {
        self * BigRational::from_i64(k).expect("integer fits")
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).expect("rational representable as f64")
    }

    fn mode_name() -> &'static str {
        "rational"
    }
}

/// Checks that a total mass is one, exactly for rationals and within
/// `tolerance` for doubles.
pub fn mass_is_normalized<P: Prob>(total: &P, tolerance: f64) -> bool {
    if P::EXACT {
        *total == P::one()
    } else {
        (total.to_f64() - 1.0).abs() <= tolerance
    }
}

/// Nonnegativity check usable for both scalar kinds.
pub fn mass_is_nonnegative<P: Prob>(value: &P) -> bool {
    if P::EXACT {
        // PartialOrd on BigRational is total
        value >= &P::zero()
    } else {
        value.to_f64() >= 0.0
    }
}

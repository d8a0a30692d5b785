//! Numeric abstraction shared by the linear algebra, LP and hull kernels.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Field elements usable by the generic kernels.
///
/// Exact types decide zero tests exactly; floating types use a tolerance.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact.
    const EXACT: bool;

    /// Zero test used for pivoting and sign decisions.
    fn is_negligible(&self) -> bool;

    fn int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self;

    fn as_f64(&self) -> f64;

    /// Sign under the zero test: -1, 0 or 1.
    fn sign(&self) -> i32 {
        if self.is_negligible() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Rescale a ray to a canonical representative. Exact types clear
    /// denominators and common factors; floats normalize to unit max-norm.
    fn normalize_ray(v: &mut [Self]);
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn int(v: i64) -> Self {
                v as $t
            }

            fn ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn normalize_ray(v: &mut [Self]) {
                let m = v.iter().fold(0.0 as $t, |a, x| a.max(x.abs()));
                if m > $tol {
                    for x in v.iter_mut() {
                        *x /= m;
                        if x.abs() <= $tol {
                            *x = 0.0;
                        }
                    }
                }
            }
        }
    };
}

impl_float_scalar!(f32, 1e-4);
impl_float_scalar!(f64, 1e-9);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn normalize_ray(v: &mut [Self]) {
        use num_integer::Integer;
        if v.iter().all(|x| x.is_zero()) {
            return;
        }
        let mut den = BigInt::one();
        for x in v.iter() {
            den = den.lcm(x.denom());
        }
        let mut g = BigInt::zero();
        for x in v.iter() {
            let num = x.numer() * (&den / x.denom());
            g = g.gcd(&num);
        }
        for x in v.iter_mut() {
            let num = x.numer() * (&den / x.denom());
            *x = BigRational::from_integer(num / &g);
        }
    }
}

/// Convert an `f64` to an exact rational (exact binary expansion).
pub fn rat_from_f64(v: f64) -> BigRational {
    BigRational::from_f64(v).unwrap_or_else(BigRational::zero)
}

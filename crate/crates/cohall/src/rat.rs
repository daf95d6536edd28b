//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals kept in
//! canonical form (coprime, positive denominator) by `num-rational`.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rat = BigRational;

/// The integer `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `n/d` in canonical form. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `1/(k!)`.
pub fn inv_factorial(k: u32) -> Rat {
    let mut f = BigInt::from(1);
    for j in 2..=k as u64 {
        f *= BigInt::from(j);
    }
    BigRational::new(BigInt::from(1), f)
}

/// Render without a trailing `/1` for integers.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

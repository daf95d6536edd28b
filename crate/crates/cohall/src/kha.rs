//! The K-theoretical Hall algebra: graded symmetric Laurent polynomials with
//! the multiplicative shuffle kernel, and the Chern-character embedding into
//! the completed algebra.
//!
//! The shuffle kernel is
//!
//! ```text
//! prod_{i,j} prod_{a1,a2} (1 - z'_{i,a1} z''^{-1}_{j,a2})^{a_ij}
//! / prod_i prod_{a1,a2} (1 - z'_{i,a1} z''^{-1}_{i,a2})
//! ```
//!
//! Each same-vertex pole is rewritten as `z'' / (z'' - z')`, so the sum
//! clears against the per-vertex Vandermonde in the `z` variables exactly as
//! in the cohomological case, with one final exact Laurent division.

use std::fmt;

use crate::coha::{check_same_quiver, shuffle_maps, shuffle_mul_series, CohaSeriesElem, SeriesKernel};
use crate::error::{HallError, Result};
use crate::quiver::{DimVector, Quiver};
use crate::rat::Rat;
use crate::symfun::laurent::LaurentPoly;
use crate::symfun::series::laurent_to_series;
use crate::symfun::shuffle::shuffle_tuples;
use crate::symfun::vars::VarSpec;

/// A graded element: a per-vertex symmetric Laurent polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct KhaElem {
    quiver: Quiver,
    gamma: DimVector,
    laurent: LaurentPoly,
}

impl KhaElem {
    pub fn new(quiver: Quiver, gamma: DimVector, laurent: LaurentPoly) -> Result<Self> {
        if gamma.len() != quiver.vertex_count() {
            return Err(HallError::DimensionMismatch {
                expected: quiver.vertex_count(),
                got: gamma.len(),
            });
        }
        gamma.require_nonnegative()?;
        let spec = VarSpec::new(&gamma)?;
        if laurent.spec() != &spec {
            return Err(HallError::Precondition(format!(
                "Laurent variables do not match grade ({gamma})"
            )));
        }
        if !laurent.is_symmetric() {
            return Err(HallError::Precondition(
                "element must be symmetric within each vertex's variable group".into(),
            ));
        }
        Ok(KhaElem { quiver, gamma, laurent })
    }

    pub fn unit(quiver: Quiver) -> Self {
        let n = quiver.vertex_count();
        let gamma = DimVector::zero(n);
        let spec = VarSpec::new(&gamma).expect("zero grade");
        KhaElem { quiver, gamma, laurent: LaurentPoly::one(&spec) }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn gamma(&self) -> &DimVector {
        &self.gamma
    }

    pub fn laurent(&self) -> &LaurentPoly {
        &self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_zero()
    }

    pub fn add(&self, other: &KhaElem) -> Result<KhaElem> {
        check_same_quiver(&self.quiver, &other.quiver)?;
        if self.gamma != other.gamma {
            return Err(HallError::Precondition(format!(
                "cannot add elements of grades ({}) and ({})",
                self.gamma, other.gamma
            )));
        }
        Ok(KhaElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            laurent: self.laurent.add(&other.laurent),
        })
    }

    pub fn scale(&self, c: &Rat) -> KhaElem {
        KhaElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            laurent: self.laurent.scale(c),
        }
    }
}

impl fmt::Debug for KhaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KhaElem[{}]({})", self.gamma, self.laurent)
    }
}

/// The Hall product on Laurent elements. Poles cancel in the shuffle sum;
/// the result is again a symmetric Laurent polynomial.
pub fn kha_mul(f1: &KhaElem, f2: &KhaElem) -> Result<KhaElem> {
    check_same_quiver(&f1.quiver, &f2.quiver)?;
    let q = &f1.quiver;
    let gamma = f1.gamma.add(&f2.gamma);
    let spec = VarSpec::new(&gamma)?;
    let spec1 = f1.laurent.spec();
    let spec2 = f2.laurent.spec();
    // per-vertex Vandermonde in the z variables
    let vdw = {
        let positions: Vec<Vec<usize>> =
            (0..spec.vertex_count()).map(|i| (0..spec.count(i) as usize).collect()).collect();
        LaurentPoly::from_multipoly(&crate::symfun::poly::vandermonde_positions(&spec, &positions))
    };
    let mut acc = LaurentPoly::zero(&spec);
    for tuple in shuffle_tuples(spec1.counts(), spec2.counts()) {
        let maps = shuffle_maps(spec1, spec2, &spec, &tuple);
        let mut term =
            f1.laurent.map_vars(&spec, &maps.map1).mul(&f2.laurent.map_vars(&spec, &maps.map2));
        if term.is_zero() {
            continue;
        }
        // numerator: (1 - z' z''^{-1})^{a_ij} over cross pairs
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                let a = q.arrow_count(i, j);
                if a == 0 {
                    continue;
                }
                for &p1 in &maps.first_positions[i] {
                    for &p2 in &maps.second_positions[j] {
                        let zp = LaurentPoly::var_pow(&spec, spec.var_index(i, p1), 1);
                        let zdd_inv = LaurentPoly::var_pow(&spec, spec.var_index(j, p2), -1);
                        let factor = LaurentPoly::one(&spec).sub(&zp.mul(&zdd_inv));
                        for _ in 0..a {
                            term = term.mul(&factor);
                        }
                    }
                }
            }
        }
        // denominator: 1/(1 - z' z''^{-1}) = z''/(z'' - z'); the monomial
        // parts multiply in here, the (z''-z') poles clear against the
        // Vandermonde
        for i in 0..q.vertex_count() {
            let c1 = maps.first_positions[i].len() as i32;
            if c1 == 0 {
                continue;
            }
            for &p2 in &maps.second_positions[i] {
                term = term.mul(&LaurentPoly::var_pow(&spec, spec.var_index(i, p2), c1));
            }
        }
        term = term.mul(&LaurentPoly::from_multipoly(&crate::symfun::poly::vandermonde_positions(
            &spec,
            &maps.first_positions,
        )));
        term = term.mul(&LaurentPoly::from_multipoly(&crate::symfun::poly::vandermonde_positions(
            &spec,
            &maps.second_positions,
        )));
        if !maps.sign.is_positive() {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    let laurent = acc.exact_divide(&vdw).map_err(|e| {
        HallError::NotDivisible(format!("shuffle sum not divisible by the Vandermonde: {e}"))
    })?;
    KhaElem::new(q.clone(), gamma, laurent)
}

/// The Chern character: substitute `z -> e^x` term by term, truncated at
/// `order`. Additive but not multiplicative for the plain completed product.
pub fn chern(f: &KhaElem, order: u32) -> Result<CohaSeriesElem> {
    let series = laurent_to_series(&f.laurent, order);
    CohaSeriesElem::new(f.quiver.clone(), f.gamma.clone(), series)
}

/// The Hall product transported to the series side: the kernel factors
/// `x'' - x'` are replaced by `1 - e^{x' - x''}`. On Chern images this is the
/// Laurent product: `chern(kha_mul(f1, f2)) = kha_mul_series(chern f1,
/// chern f2)` at every truncation order.
pub fn kha_mul_series(s1: &CohaSeriesElem, s2: &CohaSeriesElem) -> Result<CohaSeriesElem> {
    check_same_quiver(s1.quiver(), s2.quiver())?;
    let order = s1.order().min(s2.order());
    let series = shuffle_mul_series(
        s1.quiver(),
        s1.gamma(),
        s1.series(),
        s2.gamma(),
        s2.series(),
        order,
        SeriesKernel::KhaExp,
    )?;
    CohaSeriesElem::new(s1.quiver().clone(), s1.gamma().add(s2.gamma()), series)
}

/// Both routes of the Chern compatibility at the given order: the Chern
/// image of the Laurent product, and the series-side product of the Chern
/// images computed with the Vandermonde margin so that the comparison range
/// is true for the underlying infinite series.
pub fn chern_compat_pair(
    f1: &KhaElem,
    f2: &KhaElem,
    order: u32,
) -> Result<(CohaSeriesElem, CohaSeriesElem)> {
    let spec = VarSpec::new(&f1.gamma().add(f2.gamma()))?;
    let margin =
        crate::symfun::poly::vandermonde(&spec).homogeneous_degree().expect("homogeneous") as u32;
    let lhs = chern(&kha_mul(f1, f2)?, order)?;
    let rhs = kha_mul_series(&chern(f1, order + margin)?, &chern(f2, order + margin)?)?;
    Ok((lhs, rhs.truncate(order)))
}

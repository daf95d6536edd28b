//! The cohomological Hall algebra of a quiver: graded elements carried by
//! per-vertex symmetric polynomials, the shuffle product, the bigrading, the
//! sign-twisted star product, and brute-force probing of the generator
//! dimensions.
//!
//! The shuffle product of two elements of grades `g1`, `g2` is the sum over
//! per-vertex shuffles of
//!
//! ```text
//! f1(x') f2(x'') prod_{i,j} prod_{a1,a2} (x''_{j,a2} - x'_{i,a1})^{a_ij}
//!               / prod_{i}  prod_{a1,a2} (x''_{i,a2} - x'_{i,a1})
//! ```
//!
//! The sum is always a polynomial. Rather than running rational-function
//! arithmetic, every term is cleared against the full per-vertex Vandermonde
//! of the combined variables: the denominator of a shuffle term is, up to the
//! sign of the shuffle, the cross part of the Vandermonde, so each cleared
//! term stays polynomial and the final exact division must succeed. A failed
//! division aborts loudly since it can only mean a bug.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HallError, Result};
use crate::linalg::RowSpace;
use crate::quiver::{delta_fn, euler_form, psi_standard, satisfies_psi_property, DimVector, Quiver, Sign, Z2Form};
use crate::rat::Rat;
use crate::symfun::msym::{msym_labels, msym_poly, poly_msym_coords, MsymLabel};
use crate::symfun::poly::{vandermonde, vandermonde_positions, MultiPoly};
use crate::symfun::series::{divide_by_homogeneous, series_exp, todd_factor, TruncSeries};
use crate::symfun::shuffle::{shuffle_tuples, tuple_inversions, Shuffle};
use crate::symfun::vars::VarSpec;

/// A graded element: a symmetric polynomial in the variable groups of its
/// grade.
#[derive(Clone, PartialEq, Eq)]
pub struct CohaElem {
    quiver: Quiver,
    gamma: DimVector,
    poly: MultiPoly,
}

impl CohaElem {
    pub fn new(quiver: Quiver, gamma: DimVector, poly: MultiPoly) -> Result<Self> {
        if gamma.len() != quiver.vertex_count() {
            return Err(HallError::DimensionMismatch {
                expected: quiver.vertex_count(),
                got: gamma.len(),
            });
        }
        gamma.require_nonnegative()?;
        let spec = VarSpec::new(&gamma)?;
        if poly.spec() != &spec {
            return Err(HallError::Precondition(format!(
                "polynomial variables do not match grade ({gamma})"
            )));
        }
        if !poly.is_symmetric() {
            return Err(HallError::Precondition(
                "element must be symmetric within each vertex's variable group".into(),
            ));
        }
        Ok(CohaElem { quiver, gamma, poly })
    }

    /// The unit: the constant 1 in grade 0.
    pub fn unit(quiver: Quiver) -> Self {
        let n = quiver.vertex_count();
        let gamma = DimVector::zero(n);
        let spec = VarSpec::new(&gamma).expect("zero grade");
        CohaElem { quiver, gamma, poly: MultiPoly::one(&spec) }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn gamma(&self) -> &DimVector {
        &self.gamma
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &CohaElem) -> Result<CohaElem> {
        check_same_quiver(&self.quiver, &other.quiver)?;
        if self.gamma != other.gamma {
            return Err(HallError::Precondition(format!(
                "cannot add elements of grades ({}) and ({})",
                self.gamma, other.gamma
            )));
        }
        Ok(CohaElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            poly: self.poly.add(&other.poly),
        })
    }

    pub fn scale(&self, c: &Rat) -> CohaElem {
        CohaElem { quiver: self.quiver.clone(), gamma: self.gamma.clone(), poly: self.poly.scale(c) }
    }

    /// Truncate the carrier polynomial into a series element.
    pub fn to_series(&self, order: u32) -> CohaSeriesElem {
        CohaSeriesElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            series: TruncSeries::from_poly(&self.poly, order),
        }
    }
}

impl fmt::Debug for CohaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohaElem[{}]({})", self.gamma, self.poly)
    }
}

/// A graded element of the completed algebra: a truncated symmetric power
/// series. Stored coefficients are treated as exact data; degrees at and
/// above the truncation order are discarded by every operation.
#[derive(Clone, PartialEq, Eq)]
pub struct CohaSeriesElem {
    quiver: Quiver,
    gamma: DimVector,
    series: TruncSeries,
}

impl CohaSeriesElem {
    pub fn new(quiver: Quiver, gamma: DimVector, series: TruncSeries) -> Result<Self> {
        if gamma.len() != quiver.vertex_count() {
            return Err(HallError::DimensionMismatch {
                expected: quiver.vertex_count(),
                got: gamma.len(),
            });
        }
        gamma.require_nonnegative()?;
        let spec = VarSpec::new(&gamma)?;
        if series.spec() != &spec {
            return Err(HallError::Precondition(format!(
                "series variables do not match grade ({gamma})"
            )));
        }
        if !series.is_symmetric() {
            return Err(HallError::Precondition(
                "element must be symmetric within each vertex's variable group".into(),
            ));
        }
        Ok(CohaSeriesElem { quiver, gamma, series })
    }

    pub fn unit(quiver: Quiver, order: u32) -> Self {
        let n = quiver.vertex_count();
        let gamma = DimVector::zero(n);
        let spec = VarSpec::new(&gamma).expect("zero grade");
        CohaSeriesElem { quiver, gamma, series: TruncSeries::one(&spec, order) }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn gamma(&self) -> &DimVector {
        &self.gamma
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }

    pub fn truncate(&self, order: u32) -> CohaSeriesElem {
        CohaSeriesElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            series: self.series.truncate(order),
        }
    }

    /// Pointwise product with a series over the same variables (not the Hall
    /// product): used for twist factors.
    pub fn pointwise_mul(&self, factor: &TruncSeries) -> CohaSeriesElem {
        CohaSeriesElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            series: self.series.mul(factor),
        }
    }

    pub fn scale(&self, c: &Rat) -> CohaSeriesElem {
        CohaSeriesElem {
            quiver: self.quiver.clone(),
            gamma: self.gamma.clone(),
            series: self.series.scale(c),
        }
    }
}

impl fmt::Debug for CohaSeriesElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohaSeriesElem[{}]<{}>({})", self.gamma, self.order(), self.series)
    }
}

/// Bidegree `(gamma, 2k + chi(gamma, gamma))` of a homogeneous element of
/// polynomial degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bidegree {
    pub gamma: DimVector,
    pub l: i64,
}

impl Bidegree {
    pub fn add(&self, other: &Bidegree) -> Bidegree {
        Bidegree { gamma: self.gamma.add(&other.gamma), l: self.l + other.l }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.gamma, self.l)
    }
}

pub(crate) fn check_same_quiver(a: &Quiver, b: &Quiver) -> Result<()> {
    if a != b {
        return Err(HallError::Precondition("elements live over different quivers".into()));
    }
    Ok(())
}

/// Variable maps of one shuffle tuple into the combined spec.
pub(crate) struct ShuffleMaps {
    pub map1: Vec<usize>,
    pub map2: Vec<usize>,
    pub first_positions: Vec<Vec<usize>>,
    pub second_positions: Vec<Vec<usize>>,
    pub sign: Sign,
}

pub(crate) fn shuffle_maps(
    spec1: &VarSpec,
    spec2: &VarSpec,
    combined: &VarSpec,
    tuple: &[Shuffle],
) -> ShuffleMaps {
    let nv = combined.vertex_count();
    let mut map1 = Vec::with_capacity(spec1.total_vars());
    let mut map2 = Vec::with_capacity(spec2.total_vars());
    let mut first_positions = Vec::with_capacity(nv);
    let mut second_positions = Vec::with_capacity(nv);
    for i in 0..nv {
        for a in 0..spec1.count(i) as usize {
            map1.push(combined.var_index(i, tuple[i].first[a]));
        }
        first_positions.push(tuple[i].first.clone());
        second_positions.push(tuple[i].second.clone());
    }
    for i in 0..nv {
        for b in 0..spec2.count(i) as usize {
            map2.push(combined.var_index(i, tuple[i].second[b]));
        }
    }
    let sign = Sign::from_parity(tuple_inversions(tuple) as i64);
    ShuffleMaps { map1, map2, first_positions, second_positions, sign }
}

/// The Hall product on polynomial elements.
pub fn coha_mul(f1: &CohaElem, f2: &CohaElem) -> Result<CohaElem> {
    check_same_quiver(&f1.quiver, &f2.quiver)?;
    let q = &f1.quiver;
    let gamma = f1.gamma.add(&f2.gamma);
    let spec = VarSpec::new(&gamma)?;
    let spec1 = f1.poly.spec();
    let spec2 = f2.poly.spec();
    let vdw = vandermonde(&spec);
    let mut acc = MultiPoly::zero(&spec);
    for tuple in shuffle_tuples(spec1.counts(), spec2.counts()) {
        let maps = shuffle_maps(spec1, spec2, &spec, &tuple);
        let mut term = f1.poly.map_vars(&spec, &maps.map1).mul(&f2.poly.map_vars(&spec, &maps.map2));
        if term.is_zero() {
            continue;
        }
        // arrow kernel numerator
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                let a = q.arrow_count(i, j);
                if a == 0 {
                    continue;
                }
                for &p1 in &maps.first_positions[i] {
                    for &p2 in &maps.second_positions[j] {
                        let diff = MultiPoly::var_diff(
                            &spec,
                            spec.var_index(j, p2),
                            spec.var_index(i, p1),
                        );
                        for _ in 0..a {
                            term = term.mul(&diff);
                        }
                    }
                }
            }
        }
        // clear the same-vertex denominators against the full Vandermonde
        term = term.mul(&vandermonde_positions(&spec, &maps.first_positions));
        term = term.mul(&vandermonde_positions(&spec, &maps.second_positions));
        if !maps.sign.is_positive() {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    let poly = acc.exact_divide(&vdw).map_err(|e| {
        HallError::NotDivisible(format!("shuffle sum not divisible by the Vandermonde: {e}"))
    })?;
    CohaElem::new(q.clone(), gamma, poly)
}

pub(crate) enum SeriesKernel {
    /// Plain difference factors `(x'' - x')^{a_ij}`.
    Coha,
    /// Exponential factors `(1 - e^{x' - x''})^{a_ij}`, with the same-vertex
    /// poles rewritten as a Todd-type unit over a Vandermonde factor.
    KhaExp,
}

/// Shuffle product on truncated series, exact through `out_order`.
/// Intermediates are computed with a margin equal to the Vandermonde degree.
pub(crate) fn shuffle_mul_series(
    q: &Quiver,
    g1: &DimVector,
    s1: &TruncSeries,
    g2: &DimVector,
    s2: &TruncSeries,
    out_order: u32,
    kernel: SeriesKernel,
) -> Result<TruncSeries> {
    let gamma = g1.add(g2);
    let spec = VarSpec::new(&gamma)?;
    let spec1 = s1.spec();
    let spec2 = s2.spec();
    let vdw = vandermonde(&spec);
    let d = vdw.homogeneous_degree().expect("vandermonde is homogeneous") as u32;
    let w = out_order + d;
    let mut acc = TruncSeries::zero(&spec, w);
    for tuple in shuffle_tuples(spec1.counts(), spec2.counts()) {
        let maps = shuffle_maps(spec1, spec2, &spec, &tuple);
        let t1 = s1.map_vars(&spec, &maps.map1).with_order(w);
        let t2 = s2.map_vars(&spec, &maps.map2).with_order(w);
        let mut term = t1.mul(&t2);
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                let a = q.arrow_count(i, j);
                if a == 0 {
                    continue;
                }
                for &p1 in &maps.first_positions[i] {
                    for &p2 in &maps.second_positions[j] {
                        let hi = spec.var_index(j, p2);
                        let lo = spec.var_index(i, p1);
                        match kernel {
                            SeriesKernel::Coha => {
                                let diff = MultiPoly::var_diff(&spec, hi, lo);
                                for _ in 0..a {
                                    term = term.mul_poly(&diff);
                                }
                            }
                            SeriesKernel::KhaExp => {
                                // (1 - e^{x' - x''})^{a_ij}
                                let lin = MultiPoly::var_diff(&spec, lo, hi);
                                let factor =
                                    TruncSeries::one(&spec, w).sub(&series_exp(&lin, w)?);
                                for _ in 0..a {
                                    term = term.mul(&factor);
                                }
                            }
                        }
                    }
                }
            }
        }
        if let SeriesKernel::KhaExp = kernel {
            // 1/(1 - e^{x' - x''}) = todd(x' - x'') / (x'' - x'): the unit
            // Todd factors enter here, the 1/(x''-x') poles are cleared by
            // the Vandermonde below.
            for i in 0..q.vertex_count() {
                for &p1 in &maps.first_positions[i] {
                    for &p2 in &maps.second_positions[i] {
                        let lin = MultiPoly::var_diff(
                            &spec,
                            spec.var_index(i, p1),
                            spec.var_index(i, p2),
                        );
                        term = term.mul(&todd_factor(&lin, w)?);
                    }
                }
            }
        }
        term = term.mul_poly(&vandermonde_positions(&spec, &maps.first_positions));
        term = term.mul_poly(&vandermonde_positions(&spec, &maps.second_positions));
        if !maps.sign.is_positive() {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    divide_by_homogeneous(&acc, &vdw)
}

/// The Hall product on the completed algebra. The result is exact through
/// the smaller operand order, with the stored coefficients taken as exact
/// data.
pub fn coha_mul_series(f1: &CohaSeriesElem, f2: &CohaSeriesElem) -> Result<CohaSeriesElem> {
    check_same_quiver(&f1.quiver, &f2.quiver)?;
    let order = f1.order().min(f2.order());
    let series = shuffle_mul_series(
        &f1.quiver,
        &f1.gamma,
        &f1.series,
        &f2.gamma,
        &f2.series,
        order,
        SeriesKernel::Coha,
    )?;
    CohaSeriesElem::new(f1.quiver.clone(), f1.gamma.add(&f2.gamma), series)
}

/// Bidegree of a homogeneous element.
pub fn bidegree(f: &CohaElem) -> Result<Bidegree> {
    let k = f.poly.homogeneous_degree().ok_or_else(|| {
        HallError::Precondition("bidegree needs a homogeneous polynomial".into())
    })?;
    let chi = euler_form(&f.quiver, &f.gamma, &f.gamma)?;
    Ok(Bidegree { gamma: f.gamma.clone(), l: 2 * k + chi })
}

/// The sign-twisted star product `(-1)^{psi(g1, g2)} f1 f2`. The form must
/// split the braiding form: `psi(a,b) + psi(b,a) = beta(a,b)`.
pub fn star_mul(f1: &CohaElem, f2: &CohaElem, psi: &Z2Form) -> Result<CohaElem> {
    f1.quiver.require_symmetric()?;
    check_same_quiver(&f1.quiver, &f2.quiver)?;
    if !satisfies_psi_property(psi, &f1.quiver)? {
        return Err(HallError::Precondition(
            "psi does not split the braiding form beta".into(),
        ));
    }
    let sign = psi.eval_sign(&f1.gamma, &f2.gamma)?;
    let p = coha_mul(f1, f2)?;
    Ok(if sign.is_positive() { p } else { p.scale(&-Rat::from_integer(1.into())) })
}

/// The grade-wise sign map `f -> (-1)^{delta(gamma)} f` intertwining the star
/// products of two psi choices differing by the symmetric form `alpha`.
pub fn star_iso_delta(alpha: &Z2Form, f: &CohaElem) -> Result<CohaElem> {
    let sign = delta_fn(alpha, &f.gamma)?;
    Ok(if sign.is_positive() { f.clone() } else { f.scale(&-Rat::from_integer(1.into())) })
}

/// Table of generator dimensions per bidegree: the dimension of the graded
/// piece minus the dimension of the span of star products of lower-grade
/// homogeneous elements, by exact linear algebra on monomial-symmetric
/// coordinates.
#[derive(Clone, Debug, Default)]
pub struct PrimDimTable {
    pub entries: BTreeMap<(DimVector, i64), usize>,
}

impl fmt::Display for PrimDimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((gamma, l), dim) in &self.entries {
            writeln!(f, "gamma={gamma} l={l} dim={dim}")?;
        }
        Ok(())
    }
}

/// Desk-scale guard for `primitive_dims`.
const MAX_PRIM_VARS: i64 = 6;
const MAX_PRIM_DEGREE: i64 = 24;

pub fn primitive_dims(q: &Quiver, gamma_max: &DimVector, l_max: i64) -> Result<PrimDimTable> {
    q.require_symmetric()?;
    if gamma_max.len() != q.vertex_count() {
        return Err(HallError::DimensionMismatch {
            expected: q.vertex_count(),
            got: gamma_max.len(),
        });
    }
    gamma_max.require_nonnegative()?;
    if gamma_max.total() > MAX_PRIM_VARS {
        return Err(HallError::Resource(format!(
            "grade bound ({gamma_max}) exceeds the supported total of {MAX_PRIM_VARS} variables"
        )));
    }
    let order: Vec<usize> = (0..q.vertex_count()).collect();
    let psi = psi_standard(q, &order)?;
    let mut table = PrimDimTable::default();
    for gamma in gamma_max.sub_grades() {
        let chi = euler_form(q, &gamma, &gamma)?;
        let spec = VarSpec::new(&gamma)?;
        for l in -l_max..=l_max {
            let twice_k = l - chi;
            if twice_k < 0 || twice_k % 2 != 0 {
                continue;
            }
            let k = twice_k / 2;
            if k > MAX_PRIM_DEGREE {
                return Err(HallError::Resource(format!(
                    "polynomial degree {k} exceeds the supported bound {MAX_PRIM_DEGREE}"
                )));
            }
            let labels = msym_labels(&spec, k);
            if labels.is_empty() {
                continue;
            }
            if gamma.is_zero() {
                table.entries.insert((gamma.clone(), l), labels.len());
                continue;
            }
            let rank = decomposable_rank(q, &gamma, k, &labels, &psi)?;
            table.entries.insert((gamma.clone(), l), labels.len() - rank);
        }
    }
    Ok(table)
}

fn decomposable_rank(
    q: &Quiver,
    gamma: &DimVector,
    k: i64,
    labels: &[MsymLabel],
    psi: &Z2Form,
) -> Result<usize> {
    let index: BTreeMap<&MsymLabel, usize> =
        labels.iter().enumerate().map(|(n, l)| (l, n)).collect();
    let mut space = RowSpace::new(labels.len());
    for g1 in gamma.sub_grades() {
        if g1.is_zero() || g1 == *gamma {
            continue;
        }
        let g2 = gamma.sub(&g1);
        let s = k + euler_form(q, &g1, &g2)?;
        if s < 0 {
            continue;
        }
        let spec1 = VarSpec::new(&g1)?;
        let spec2 = VarSpec::new(&g2)?;
        for k1 in 0..=s {
            let k2 = s - k1;
            for b1 in msym_labels(&spec1, k1) {
                let e1 = CohaElem::new(q.clone(), g1.clone(), msym_poly(&spec1, &b1))?;
                for b2 in msym_labels(&spec2, k2) {
                    let e2 = CohaElem::new(q.clone(), g2.clone(), msym_poly(&spec2, &b2))?;
                    let prod = star_mul(&e1, &e2, psi)?;
                    if prod.is_zero() {
                        continue;
                    }
                    let coords = poly_msym_coords(prod.poly())?;
                    let mut row = vec![Rat::from_integer(0.into()); labels.len()];
                    for (label, c) in coords {
                        let idx = *index.get(&label).ok_or_else(|| {
                            HallError::Precondition("product left the expected degree".into())
                        })?;
                        row[idx] = c;
                    }
                    space.insert(row);
                }
            }
        }
    }
    Ok(space.rank())
}

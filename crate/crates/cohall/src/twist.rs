//! Zhang twisting systems on the completed algebra of a symmetric quiver:
//! the exponential twist factors, the graded automorphisms they induce, the
//! bullet and circ twisted products, the unit correction series eta, the
//! twisted Chern homomorphisms, and exact verification of every identity
//! they satisfy.
//!
//! All series computations are pole-free by construction: every rational
//! factor that appears is rewritten as an exponential prefactor times a
//! Todd-type unit series,
//!
//! ```text
//! (x_hi - x_lo) / (e^{x_hi} - e^{x_lo})   =  e^{-x_lo} todd(x_hi - x_lo)
//! (x_hi - x_lo) / (e^{-x_hi} - e^{-x_lo}) = -e^{x_lo}  todd(x_lo - x_hi)
//! ```
//!
//! with `todd(u) = u/(e^u - 1)`, so products of such factors are honest
//! invertible truncated series.

use std::fmt;

use crate::coha::{check_same_quiver, coha_mul_series, CohaSeriesElem};
use crate::error::{HallError, Result};
use crate::kha::{chern, kha_mul, KhaElem};
use crate::linalg::RowSpace;
use crate::quiver::{l_weight, mu_sign, DimVector, Quiver, Sign};
use crate::rat::{inv_factorial, Rat};
use crate::report::CheckReport;
use crate::sampler::Sampler;
use crate::symfun::msym::{msym_labels_laurent, msym_laurent};
use crate::symfun::poly::{vandermonde, Mono, MultiPoly};
use crate::symfun::series::{compose_univariate, series_exp, todd_factor, TruncSeries};
use crate::symfun::vars::VarSpec;

/// Shared configuration for twist computations: a symmetric quiver, the
/// user-visible truncation order, and the linear order on vertices that
/// fixes the ordered products behind `eta`.
#[derive(Clone, Debug)]
pub struct TwistContext {
    quiver: Quiver,
    order: u32,
    vertex_order: Vec<usize>,
    positions: Vec<usize>,
}

impl TwistContext {
    pub fn new(quiver: Quiver, order: u32, vertex_order: Option<Vec<usize>>) -> Result<Self> {
        quiver.require_symmetric()?;
        if order == 0 {
            return Err(HallError::Precondition("truncation order must be at least 1".into()));
        }
        let n = quiver.vertex_count();
        let vertex_order = vertex_order.unwrap_or_else(|| (0..n).collect());
        if vertex_order.len() != n {
            return Err(HallError::DimensionMismatch { expected: n, got: vertex_order.len() });
        }
        let mut positions = vec![usize::MAX; n];
        for (k, &v) in vertex_order.iter().enumerate() {
            if v >= n || positions[v] != usize::MAX {
                return Err(HallError::Precondition(format!(
                    "vertex order {vertex_order:?} is not a permutation of 0..{n}"
                )));
            }
            positions[v] = k;
        }
        Ok(TwistContext { quiver, order, vertex_order, positions })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertex_order
    }

    fn position(&self, vertex: usize) -> usize {
        self.positions[vertex]
    }
}

/// An invertible twist factor: a unit series on the variables of a grade,
/// with a separate multiplicative sign.
#[derive(Clone, Debug)]
pub struct TwistFactor {
    pub gamma: DimVector,
    pub series: TruncSeries,
    pub sign: Sign,
}

impl TwistFactor {
    /// The signed series actually multiplied into elements.
    pub fn signed_series(&self) -> TruncSeries {
        match self.sign {
            Sign::Plus => self.series.clone(),
            Sign::Minus => self.series.neg(),
        }
    }
}

fn weighted_vertex_sum(q: &Quiver, spec: &VarSpec, tau: &DimVector, flip: bool) -> Result<MultiPoly> {
    let mut linear = MultiPoly::zero(spec);
    for i in 0..q.vertex_count() {
        let w = l_weight(q, i, tau)?;
        if w == 0 {
            continue;
        }
        let c = Rat::from_integer(if flip { -w } else { w }.into());
        for a in 0..spec.count(i) as usize {
            let mut mono = vec![0; spec.total_vars()];
            mono[spec.var_index(i, a)] = 1;
            linear.add_term(mono, c.clone());
        }
    }
    Ok(linear)
}

fn a_series_at(ctx: &TwistContext, tau: &DimVector, spec: &VarSpec, order: u32, flip: bool) -> Result<TruncSeries> {
    let linear = weighted_vertex_sum(&ctx.quiver, spec, tau, flip)?;
    series_exp(&linear, order)
}

/// The exponential twist factor
/// `a^gamma_tau = exp(sum_i l_i(tau) (x_{i,1} + ... + x_{i,gamma^i}))`.
pub fn a_factor(ctx: &TwistContext, tau: &DimVector, gamma: &DimVector) -> Result<TwistFactor> {
    a_factor_at(ctx, tau, gamma, ctx.order)
}

pub fn a_factor_at(
    ctx: &TwistContext,
    tau: &DimVector,
    gamma: &DimVector,
    order: u32,
) -> Result<TwistFactor> {
    gamma.require_nonnegative()?;
    let spec = VarSpec::new(gamma)?;
    let series = a_series_at(ctx, tau, &spec, order, false)?;
    Ok(TwistFactor { gamma: gamma.clone(), series, sign: Sign::Plus })
}

/// `b^gamma_tau = (a^gamma_tau)^{-1}`, computed directly as the exponential
/// of the negated weights.
pub fn b_factor_at(
    ctx: &TwistContext,
    tau: &DimVector,
    gamma: &DimVector,
    order: u32,
) -> Result<TwistFactor> {
    gamma.require_nonnegative()?;
    let spec = VarSpec::new(gamma)?;
    let series = a_series_at(ctx, tau, &spec, order, true)?;
    Ok(TwistFactor { gamma: gamma.clone(), series, sign: Sign::Plus })
}

/// `b~^gamma_tau = b^gamma_tau mu(tau, gamma)`: the inverse factor carrying
/// the bilinear sign.
pub fn b_tilde_factor(ctx: &TwistContext, tau: &DimVector, gamma: &DimVector) -> Result<TwistFactor> {
    b_tilde_factor_at(ctx, tau, gamma, ctx.order)
}

pub fn b_tilde_factor_at(
    ctx: &TwistContext,
    tau: &DimVector,
    gamma: &DimVector,
    order: u32,
) -> Result<TwistFactor> {
    let mut f = b_factor_at(ctx, tau, gamma, order)?;
    f.sign = mu_sign(&ctx.quiver, tau, gamma)?;
    Ok(f)
}

/// The automorphism `sigma_tau`: multiply a grade-`gamma` element by
/// `a^gamma_tau`.
pub fn sigma_apply(ctx: &TwistContext, tau: &DimVector, f: &CohaSeriesElem) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f.quiver())?;
    let fac = a_factor_at(ctx, tau, f.gamma(), f.order())?;
    Ok(f.pointwise_mul(&fac.series))
}

/// The signed automorphism `sigma~_tau`: multiply by
/// `a^gamma_tau mu(tau, gamma)`.
pub fn sigma_tilde_apply(
    ctx: &TwistContext,
    tau: &DimVector,
    f: &CohaSeriesElem,
) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f.quiver())?;
    let mut fac = a_factor_at(ctx, tau, f.gamma(), f.order())?;
    fac.sign = mu_sign(&ctx.quiver, tau, f.gamma())?;
    Ok(f.pointwise_mul(&fac.signed_series()))
}

/// The right-twisted product `f1 • f2 = f1 · (a^{g2}_{g1}(x'') f2)`.
pub fn bullet_mul(
    ctx: &TwistContext,
    f1: &CohaSeriesElem,
    f2: &CohaSeriesElem,
) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f1.quiver())?;
    check_same_quiver(&ctx.quiver, f2.quiver())?;
    let fac = a_factor_at(ctx, f1.gamma(), f2.gamma(), f2.order())?;
    coha_mul_series(f1, &f2.pointwise_mul(&fac.series))
}

/// The left-twisted product `f1 ∘ f2 = (b~^{g1}_{g2}(x') f1) · f2`.
pub fn circ_mul(
    ctx: &TwistContext,
    f1: &CohaSeriesElem,
    f2: &CohaSeriesElem,
) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f1.quiver())?;
    check_same_quiver(&ctx.quiver, f2.quiver())?;
    let fac = b_tilde_factor_at(ctx, f2.gamma(), f1.gamma(), f1.order())?;
    coha_mul_series(&f1.pointwise_mul(&fac.signed_series()), f2)
}

/// One linear factor `x_hi - x_lo` raised to `exp` inside an ordered
/// product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFactor {
    pub lo: usize,
    pub hi: usize,
    pub exp: i64,
}

/// An ordered product of linear-difference factors over one variable spec.
#[derive(Clone, Debug)]
pub struct PairFactors {
    spec: VarSpec,
    pairs: Vec<PairFactor>,
}

impl PairFactors {
    pub fn spec(&self) -> &VarSpec {
        &self.spec
    }

    pub fn pairs(&self) -> &[PairFactor] {
        &self.pairs
    }

    /// Numerator and denominator of the product of the plain linear factors
    /// (positive exponents above, negated exponents below).
    pub fn fraction_poly(&self) -> (MultiPoly, MultiPoly) {
        let mut num = MultiPoly::one(&self.spec);
        let mut den = MultiPoly::one(&self.spec);
        for p in &self.pairs {
            let f = MultiPoly::var_diff(&self.spec, p.hi, p.lo);
            for _ in 0..p.exp.unsigned_abs() {
                if p.exp > 0 {
                    num = num.mul(&f);
                } else {
                    den = den.mul(&f);
                }
            }
        }
        (num, den)
    }

    /// Same fraction after the substitution `x -> e^x`, as truncated series:
    /// factors `(e^{x_hi} - e^{x_lo})^{±exp}`.
    pub fn fraction_exp_series(&self, order: u32) -> Result<(TruncSeries, TruncSeries)> {
        let mut num = TruncSeries::one(&self.spec, order);
        let mut den = TruncSeries::one(&self.spec, order);
        for p in &self.pairs {
            let ehi = series_exp(&MultiPoly::var(&self.spec, p.hi), order)?;
            let elo = series_exp(&MultiPoly::var(&self.spec, p.lo), order)?;
            let f = ehi.sub(&elo);
            for _ in 0..p.exp.unsigned_abs() {
                if p.exp > 0 {
                    num = num.mul(&f);
                } else {
                    den = den.mul(&f);
                }
            }
        }
        Ok((num, den))
    }

    /// Exponential prefactor `exp(sum_P c_P x_{lo_P})` over the pairs, with
    /// per-pair weight `c_P = sign * exp_P`.
    fn lo_exponential(&self, order: u32, negate: bool) -> Result<TruncSeries> {
        let mut linear = MultiPoly::zero(&self.spec);
        for p in &self.pairs {
            let w = if negate { -p.exp } else { p.exp };
            if w == 0 {
                continue;
            }
            let mut mono = vec![0; self.spec.total_vars()];
            mono[p.lo] = 1;
            linear.add_term(mono, Rat::from_integer(w.into()));
        }
        series_exp(&linear, order)
    }

    fn diff_poly(&self, p: &PairFactor, flip: bool) -> MultiPoly {
        if flip {
            MultiPoly::var_diff(&self.spec, p.lo, p.hi)
        } else {
            MultiPoly::var_diff(&self.spec, p.hi, p.lo)
        }
    }

    /// `prod_P [(x_hi - x_lo)/(e^{x_hi} - e^{x_lo})]^{exp_P}` as a unit
    /// series: each factor is `e^{-x_lo} todd(x_hi - x_lo)`.
    pub fn ratio_x_over_exp(&self, order: u32) -> Result<TruncSeries> {
        let mut out = self.lo_exponential(order, true)?;
        for p in &self.pairs {
            let t = todd_factor(&self.diff_poly(p, false), order)?;
            out = out.mul(&t.powi(p.exp)?);
        }
        Ok(out)
    }

    /// `prod_P [(x_hi - x_lo)/(e^{-x_hi} - e^{-x_lo})]^{exp_P}`: each factor
    /// is `-e^{x_lo} todd(x_lo - x_hi)`.
    pub fn ratio_x_over_exp_neg(&self, order: u32) -> Result<TruncSeries> {
        let mut out = self.lo_exponential(order, false)?;
        let mut parity = 0i64;
        for p in &self.pairs {
            parity += p.exp;
            let t = todd_factor(&self.diff_poly(p, true), order)?;
            out = out.mul(&t.powi(p.exp)?);
        }
        if !Sign::from_parity(parity).is_positive() {
            out = out.neg();
        }
        Ok(out)
    }

    /// `prod_P [(e^{x_hi} - e^{x_lo})/(1 - e^{x_lo - x_hi})]^{exp_P}`,
    /// computed from the unit pieces `(e^u - 1)/u` and `(1 - e^{-u})/u`
    /// rather than from the closed form it is checked against.
    pub fn ratio_exp_over_one_minus(&self, order: u32) -> Result<TruncSeries> {
        let mut out = self.lo_exponential(order, false)?;
        let expm1: Vec<Rat> = (0..order).map(|k| inv_factorial(k + 1)).collect();
        let one_minus: Vec<Rat> = (0..order)
            .map(|k| {
                let c = inv_factorial(k + 1);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        for p in &self.pairs {
            let u = self.diff_poly(p, false);
            let a = compose_univariate(&expm1, &u, order)?;
            let b = compose_univariate(&one_minus, &u, order)?;
            out = out.mul(&a.mul(&b.invert()?).powi(p.exp)?);
        }
        Ok(out)
    }

    /// `prod_P [(e^{-x_hi} - e^{-x_lo})/(1 - e^{x_lo - x_hi})]^{exp_P}`,
    /// from the unit pieces `(e^{-u} - 1)/u` and `(1 - e^{-u})/u`.
    pub fn ratio_exp_neg_over_one_minus(&self, order: u32) -> Result<TruncSeries> {
        let mut out = self.lo_exponential(order, true)?;
        let expm1_neg: Vec<Rat> = (0..order)
            .map(|k| {
                let c = inv_factorial(k + 1);
                if k % 2 == 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let one_minus: Vec<Rat> = (0..order)
            .map(|k| {
                let c = inv_factorial(k + 1);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        for p in &self.pairs {
            let u = self.diff_poly(p, false);
            let a = compose_univariate(&expm1_neg, &u, order)?;
            let b = compose_univariate(&one_minus, &u, order)?;
            out = out.mul(&a.mul(&b.invert()?).powi(p.exp)?);
        }
        Ok(out)
    }
}

/// The ordered product defining the grade-`gamma` correction: over pairs of
/// variables `(i, a1) < (j, a2)` in the lexicographic order induced by the
/// context's vertex order, the factor `(x_{j,a2} - x_{i,a1})` with exponent
/// `a_ij` for distinct vertices and `a_ii - 1` within a vertex.
pub fn k_factors(ctx: &TwistContext, gamma: &DimVector) -> Result<PairFactors> {
    gamma.require_nonnegative()?;
    let q = &ctx.quiver;
    if gamma.len() != q.vertex_count() {
        return Err(HallError::DimensionMismatch {
            expected: q.vertex_count(),
            got: gamma.len(),
        });
    }
    let spec = VarSpec::new(gamma)?;
    let mut pairs = Vec::new();
    let n = q.vertex_count();
    for i in 0..n {
        for j in 0..n {
            let exp = q.arrow_count(i, j) as i64 - i64::from(i == j);
            if exp == 0 {
                continue;
            }
            for a1 in 0..spec.count(i) as usize {
                for a2 in 0..spec.count(j) as usize {
                    let lt = (ctx.position(i), a1) < (ctx.position(j), a2);
                    if lt {
                        pairs.push(PairFactor {
                            lo: spec.var_index(i, a1),
                            hi: spec.var_index(j, a2),
                            exp,
                        });
                    }
                }
            }
        }
    }
    Ok(PairFactors { spec, pairs })
}

/// The cross-block product over all pairs (primed variable of grade `g1`,
/// double-primed variable of grade `g2`) in the combined layout, with the
/// arrow-kernel exponents `a_ij - [i = j]`.
pub fn cross_factors(ctx: &TwistContext, g1: &DimVector, g2: &DimVector) -> Result<PairFactors> {
    g1.require_nonnegative()?;
    g2.require_nonnegative()?;
    let q = &ctx.quiver;
    let spec1 = VarSpec::new(g1)?;
    let spec2 = VarSpec::new(g2)?;
    let (spec, map1, map2) = spec1.combined(&spec2);
    let n = q.vertex_count();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let exp = q.arrow_count(i, j) as i64 - i64::from(i == j);
            if exp == 0 {
                continue;
            }
            for a1 in 0..spec1.count(i) as usize {
                for a2 in 0..spec2.count(j) as usize {
                    pairs.push(PairFactor {
                        lo: map1[spec1.var_index(i, a1)],
                        hi: map2[spec2.var_index(j, a2)],
                        exp,
                    });
                }
            }
        }
    }
    Ok(PairFactors { spec, pairs })
}

/// The ordered product `k_gamma` as an exact fraction of polynomials. It is
/// a genuine fraction whenever some vertex carries no loops (the
/// within-vertex exponent `a_ii - 1` is then negative).
pub fn k_fraction(ctx: &TwistContext, gamma: &DimVector) -> Result<(MultiPoly, MultiPoly)> {
    Ok(k_factors(ctx, gamma)?.fraction_poly())
}

/// `K_gamma`: the same ordered product after `x -> e^x`, as a fraction of
/// truncated series.
pub fn k_exp_fraction(
    ctx: &TwistContext,
    gamma: &DimVector,
    order: u32,
) -> Result<(TruncSeries, TruncSeries)> {
    k_factors(ctx, gamma)?.fraction_exp_series(order)
}

/// The unit correction series `eta_gamma`, with constant coefficient 1.
pub fn eta(ctx: &TwistContext, gamma: &DimVector) -> Result<TruncSeries> {
    eta_at(ctx, gamma, ctx.order)
}

pub fn eta_at(ctx: &TwistContext, gamma: &DimVector, order: u32) -> Result<TruncSeries> {
    k_factors(ctx, gamma)?.ratio_x_over_exp(order)
}

/// The tilde variant, built from the sign-flipped exponential substitution;
/// its constant coefficient is `(-1)^{sum of pair exponents}`.
pub fn eta_tilde(ctx: &TwistContext, gamma: &DimVector) -> Result<TruncSeries> {
    eta_tilde_at(ctx, gamma, ctx.order)
}

pub fn eta_tilde_at(ctx: &TwistContext, gamma: &DimVector, order: u32) -> Result<TruncSeries> {
    k_factors(ctx, gamma)?.ratio_x_over_exp_neg(order)
}

/// The twisted Chern homomorphism into the right twist:
/// `f -> eta_gamma ch(f)`. Multiplicative from the Laurent product to the
/// bullet product.
pub fn h_sigma(ctx: &TwistContext, f: &KhaElem) -> Result<CohaSeriesElem> {
    h_sigma_at(ctx, f, ctx.order)
}

pub fn h_sigma_at(ctx: &TwistContext, f: &KhaElem, order: u32) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f.quiver())?;
    let c = chern(f, order)?;
    Ok(c.pointwise_mul(&eta_at(ctx, f.gamma(), order)?))
}

/// The twisted Chern homomorphism into the left twist:
/// `f -> eta~_gamma ch(f)`. Multiplicative to the circ product.
pub fn h_tilde(ctx: &TwistContext, f: &KhaElem) -> Result<CohaSeriesElem> {
    h_tilde_at(ctx, f, ctx.order)
}

pub fn h_tilde_at(ctx: &TwistContext, f: &KhaElem, order: u32) -> Result<CohaSeriesElem> {
    check_same_quiver(&ctx.quiver, f.quiver())?;
    let c = chern(f, order)?;
    Ok(c.pointwise_mul(&eta_tilde_at(ctx, f.gamma(), order)?))
}

/// Degree margin consumed by one shuffle product at the combined grade.
fn vandermonde_margin(g1: &DimVector, g2: &DimVector) -> Result<u32> {
    let spec = VarSpec::new(&g1.add(g2))?;
    Ok(vandermonde(&spec).homogeneous_degree().expect("homogeneous") as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistFamily {
    /// The unsigned exponential family.
    Sigma,
    /// The mu-signed family.
    SigmaTilde,
    /// Deliberately wrong weights; used as a negative control.
    #[doc(hidden)]
    Corrupted,
}

fn family_apply(
    ctx: &TwistContext,
    family: TwistFamily,
    tau: &DimVector,
    f: &CohaSeriesElem,
) -> Result<CohaSeriesElem> {
    match family {
        TwistFamily::Sigma => sigma_apply(ctx, tau, f),
        TwistFamily::SigmaTilde => sigma_tilde_apply(ctx, tau, f),
        TwistFamily::Corrupted => {
            // off-by-one twist parameter: no longer additive, so the
            // twisting-system axioms must fail on generic samples
            let shifted = DimVector::new(tau.components().iter().map(|&t| t + 1).collect());
            sigma_apply(ctx, &shifted, f)
        }
    }
}

fn family_name(family: TwistFamily) -> &'static str {
    match family {
        TwistFamily::Sigma => "sigma",
        TwistFamily::SigmaTilde => "sigma-tilde",
        TwistFamily::Corrupted => "corrupted",
    }
}

/// Exact verification of the twisting-system axioms, the group law and the
/// automorphism property on seeded random samples.
///
/// For elements `x` of grade `gx` and `y` of grade `gy` and a free `l`, the
/// left axiom reads `sigma_l(sigma_{gy}(x) y) = sigma_{gy+l}(x) sigma_l(y)`;
/// the right axiom, for `y` of grade `gy`, `z` of grade `gz` and free `g`,
/// reads `sigma_g(y sigma_{gy}(z)) = sigma_g(y) sigma_{g+gy}(z)`.
pub fn twisting_axiom_check(
    ctx: &TwistContext,
    grade_bound: &DimVector,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for family in [TwistFamily::Sigma, TwistFamily::SigmaTilde] {
        let sub = twisting_axioms_for_family(ctx, family, grade_bound, samples, seed)?;
        report.merge(sub);
    }
    Ok(report)
}

pub(crate) fn twisting_axioms_for_family(
    ctx: &TwistContext,
    family: TwistFamily,
    grade_bound: &DimVector,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let mut sampler = Sampler::new(seed);
    let n = ctx.quiver.vertex_count();
    let name = family_name(family);
    for run in 0..samples {
        let gx = sampler.grade(grade_bound);
        let gy = sampler.grade(grade_bound);
        let max_deg = 2 + sampler.int(0, 1);
        let w = ctx.order + vandermonde_margin(&gx, &gy)?;
        let sx = VarSpec::new(&gx)?;
        let sy = VarSpec::new(&gy)?;
        let x = CohaSeriesElem::new(
            ctx.quiver.clone(),
            gx.clone(),
            TruncSeries::from_poly(&sampler.sym_poly(&sx, max_deg, 2), w),
        )?;
        let y = CohaSeriesElem::new(
            ctx.quiver.clone(),
            gy.clone(),
            TruncSeries::from_poly(&sampler.sym_poly(&sy, max_deg, 2), w),
        )?;
        let free = sampler.dim_vector(n, -2, 2);

        // left axiom
        let lhs = family_apply(ctx, family, &free, &coha_mul_series(&family_apply(ctx, family, &gy, &x)?, &y)?)?;
        let rhs = coha_mul_series(
            &family_apply(ctx, family, &gy.add(&free), &x)?,
            &family_apply(ctx, family, &free, &y)?,
        )?;
        report.check(
            format!("{name} left-twist axiom [{run}] gx=({gx}) gy=({gy}) l=({free})"),
            lhs.truncate(ctx.order) == rhs.truncate(ctx.order),
            || format!("lhs = {:?} rhs = {:?}", lhs.truncate(ctx.order), rhs.truncate(ctx.order)),
        );

        // right axiom: reuse x as the middle element y', y as z
        let lhs = family_apply(ctx, family, &free, &coha_mul_series(&x, &family_apply(ctx, family, &gx, &y)?)?)?;
        let rhs = coha_mul_series(
            &family_apply(ctx, family, &free, &x)?,
            &family_apply(ctx, family, &free.add(&gx), &y)?,
        )?;
        report.check(
            format!("{name} right-twist axiom [{run}] gy=({gx}) gz=({gy}) g=({free})"),
            lhs.truncate(ctx.order) == rhs.truncate(ctx.order),
            || format!("lhs = {:?} rhs = {:?}", lhs.truncate(ctx.order), rhs.truncate(ctx.order)),
        );

        // group law
        let tau2 = sampler.dim_vector(n, -2, 2);
        let lhs = family_apply(ctx, family, &free, &family_apply(ctx, family, &tau2, &x)?)?;
        let rhs = family_apply(ctx, family, &free.add(&tau2), &x)?;
        report.check(
            format!("{name} group law [{run}] tau1=({free}) tau2=({tau2})"),
            lhs == rhs,
            || format!("lhs = {:?} rhs = {:?}", lhs, rhs),
        );

        // automorphism property
        let lhs = family_apply(ctx, family, &free, &coha_mul_series(&x, &y)?)?;
        let rhs = coha_mul_series(&family_apply(ctx, family, &free, &x)?, &family_apply(ctx, family, &free, &y)?)?;
        report.check(
            format!("{name} automorphism [{run}] tau=({free})"),
            lhs.truncate(ctx.order) == rhs.truncate(ctx.order),
            || format!("lhs = {:?} rhs = {:?}", lhs.truncate(ctx.order), rhs.truncate(ctx.order)),
        );
    }
    Ok(report)
}

/// Exact verification of the four correction-series identities relating
/// `eta`, its tilde variant, the cross-block kernels and the twist factors,
/// at the context's order.
pub fn lemma_manipul_check(
    ctx: &TwistContext,
    g1: &DimVector,
    g2: &DimVector,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let order = ctx.order;
    let spec1 = VarSpec::new(g1)?;
    let spec2 = VarSpec::new(g2)?;
    let (combined, map1, map2) = spec1.combined(&spec2);
    let cross = cross_factors(ctx, g1, g2)?;

    // multiplicativity of eta across a grade split
    let eta_total = eta_at(ctx, &g1.add(g2), order)?;
    let eta_1 = eta_at(ctx, g1, order)?.map_vars(&combined, &map1);
    let eta_2 = eta_at(ctx, g2, order)?.map_vars(&combined, &map2);
    let rhs = eta_1.mul(&eta_2).mul(&cross.ratio_x_over_exp(order)?);
    report.check(
        format!("eta splitting g1=({g1}) g2=({g2})"),
        eta_total == rhs,
        || format!("lhs = {eta_total:?} rhs = {rhs:?}"),
    );

    // exponential kernel vs multiplicative kernel: K/L = (a^{g2}_{g1}(x''))^{-1}
    let lhs = cross.ratio_exp_over_one_minus(order)?;
    let a_fac = a_factor_at(ctx, g1, g2, order)?.series.map_vars(&combined, &map2);
    let rhs = a_fac.invert()?;
    report.check(
        format!("exp-kernel comparison g1=({g1}) g2=({g2})"),
        lhs == rhs,
        || format!("lhs = {lhs:?} rhs = {rhs:?}"),
    );

    // tilde variant of the splitting
    let eta_total = eta_tilde_at(ctx, &g1.add(g2), order)?;
    let eta_1 = eta_tilde_at(ctx, g1, order)?.map_vars(&combined, &map1);
    let eta_2 = eta_tilde_at(ctx, g2, order)?.map_vars(&combined, &map2);
    let rhs = eta_1.mul(&eta_2).mul(&cross.ratio_x_over_exp_neg(order)?);
    report.check(
        format!("eta-tilde splitting g1=({g1}) g2=({g2})"),
        eta_total == rhs,
        || format!("lhs = {eta_total:?} rhs = {rhs:?}"),
    );

    // tilde kernel comparison: K~/L~ = (b~^{g1}_{g2}(x'))^{-1}
    let lhs = cross.ratio_exp_neg_over_one_minus(order)?;
    let b_fac = b_tilde_factor_at(ctx, g2, g1, order)?;
    let mut rhs = b_fac.series.map_vars(&combined, &map1).invert()?;
    if !b_fac.sign.is_positive() {
        rhs = rhs.neg();
    }
    report.check(
        format!("exp-kernel comparison (tilde) g1=({g1}) g2=({g2})"),
        lhs == rhs,
        || format!("lhs = {lhs:?} rhs = {rhs:?}"),
    );

    Ok(report)
}

/// Dual-route verification that the twisted Chern maps are multiplicative:
/// the bullet (resp. circ) product of the images equals the image of the
/// Laurent product, exactly at the context's order, on seeded random pairs.
pub fn h_multiplicativity_check(
    ctx: &TwistContext,
    g1: &DimVector,
    g2: &DimVector,
    pairs: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let mut sampler = Sampler::new(seed);
    let spec1 = VarSpec::new(g1)?;
    let spec2 = VarSpec::new(g2)?;
    let margin = vandermonde_margin(g1, g2)?;
    let w = ctx.order + margin;
    for run in 0..pairs {
        let f1 = KhaElem::new(ctx.quiver.clone(), g1.clone(), sampler.sym_laurent(&spec1, -2, 2, 2))?;
        let f2 = KhaElem::new(ctx.quiver.clone(), g2.clone(), sampler.sym_laurent(&spec2, -2, 2, 2))?;
        let product = kha_mul(&f1, &f2)?;

        let lhs = bullet_mul(ctx, &h_sigma_at(ctx, &f1, w)?, &h_sigma_at(ctx, &f2, w)?)?;
        let rhs = h_sigma_at(ctx, &product, ctx.order)?;
        report.check(
            format!("bullet multiplicativity [{run}] g1=({g1}) g2=({g2})"),
            lhs.truncate(ctx.order) == rhs,
            || format!("lhs = {:?} rhs = {rhs:?}", lhs.truncate(ctx.order)),
        );

        let lhs = circ_mul(ctx, &h_tilde_at(ctx, &f1, w)?, &h_tilde_at(ctx, &f2, w)?)?;
        let rhs = h_tilde_at(ctx, &product, ctx.order)?;
        report.check(
            format!("circ multiplicativity [{run}] g1=({g1}) g2=({g2})"),
            lhs.truncate(ctx.order) == rhs,
            || format!("lhs = {:?} rhs = {rhs:?}", lhs.truncate(ctx.order)),
        );
    }
    Ok(report)
}

/// Rank check: the twisted Chern images of the orbit-sum spanning set with
/// bounded exponents stay linearly independent after truncation.
pub fn injectivity_check(
    ctx: &TwistContext,
    gamma: &DimVector,
    z_bound: i32,
    order: u32,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let spec = VarSpec::new(gamma)?;
    let labels = msym_labels_laurent(&spec, -z_bound, z_bound);
    for (name, tilde) in [("h-sigma", false), ("h-tilde", true)] {
        let mut monomials: Vec<Mono> = Vec::new();
        let mut images = Vec::with_capacity(labels.len());
        for label in &labels {
            let f = KhaElem::new(ctx.quiver.clone(), gamma.clone(), msym_laurent(&spec, label))?;
            let image = if tilde { h_tilde_at(ctx, &f, order)? } else { h_sigma_at(ctx, &f, order)? };
            images.push(image);
        }
        for image in &images {
            for mono in image.series().terms().keys() {
                if !monomials.contains(mono) {
                    monomials.push(mono.clone());
                }
            }
        }
        monomials.sort();
        let index: std::collections::BTreeMap<&Mono, usize> =
            monomials.iter().enumerate().map(|(n, m)| (m, n)).collect();
        let mut space = RowSpace::new(monomials.len());
        let mut independent = 0usize;
        for image in &images {
            let mut row = vec![Rat::from_integer(0.into()); monomials.len()];
            for (mono, c) in image.series().terms() {
                row[index[mono]] = c.clone();
            }
            if space.insert(row) {
                independent += 1;
            }
        }
        report.check(
            format!("{name} injectivity rank gamma=({gamma}) z-bound={z_bound} order={order}"),
            independent == labels.len(),
            || format!("rank {independent} of {} spanning elements", labels.len()),
        );
    }
    Ok(report)
}

impl fmt::Display for TwistFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ({})", self.sign, self.series)
    }
}

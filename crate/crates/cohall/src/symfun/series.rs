//! Truncated multivariate power series: all arithmetic is exact on the
//! monomials of total degree below the truncation order, higher degrees are
//! discarded.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{HallError, Result};
use crate::rat::{inv_factorial, Rat};
use crate::symfun::laurent::LaurentPoly;
use crate::symfun::poly::{is_symmetric_map, mono_degree, term_string, Mono, MultiPoly};
use crate::symfun::vars::VarSpec;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    spec: VarSpec,
    order: u32,
    terms: BTreeMap<Mono, Rat>,
}

impl TruncSeries {
    pub fn zero(spec: &VarSpec, order: u32) -> Self {
        TruncSeries { spec: spec.clone(), order, terms: BTreeMap::new() }
    }

    pub fn constant(spec: &VarSpec, order: u32, c: Rat) -> Self {
        let mut s = TruncSeries::zero(spec, order);
        if order > 0 && !c.is_zero() {
            s.terms.insert(vec![0; spec.total_vars()], c);
        }
        s
    }

    pub fn one(spec: &VarSpec, order: u32) -> Self {
        TruncSeries::constant(spec, order, Rat::one())
    }

    pub fn from_poly(p: &MultiPoly, order: u32) -> Self {
        let mut s = TruncSeries::zero(p.spec(), order);
        for (m, c) in p.terms() {
            if mono_degree(m) < order as i64 {
                s.terms.insert(m.clone(), c.clone());
            }
        }
        s
    }

    pub fn spec(&self) -> &VarSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0; self.spec.total_vars()]).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() || mono_degree(&m) >= self.order as i64 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        TruncSeries { spec: self.spec.clone(), order: self.order, terms }
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(&self.spec, self.order);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        TruncSeries { spec: self.spec.clone(), order: self.order, terms }
    }

    /// Product truncated to the common order.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let order = self.order.min(other.order);
        let mut out = TruncSeries::zero(&self.spec, order);
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        for (m1, c1) in &small.terms {
            let d1 = mono_degree(m1);
            if d1 >= order as i64 {
                continue;
            }
            for (m2, c2) in &large.terms {
                if d1 + mono_degree(m2) >= order as i64 {
                    continue;
                }
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> TruncSeries {
        self.mul(&TruncSeries::from_poly(p, self.order))
    }

    /// Integer powers; negative exponents go through `invert`.
    pub fn powi(&self, e: i64) -> Result<TruncSeries> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut out = TruncSeries::one(&self.spec, self.order);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Reinterpret the stored terms at another order. Raising the order
    /// treats the data as exact (missing degrees are zero); lowering it
    /// truncates.
    pub fn with_order(&self, order: u32) -> TruncSeries {
        if order <= self.order {
            return self.truncate(order);
        }
        TruncSeries { spec: self.spec.clone(), order, terms: self.terms.clone() }
    }

    /// Restrict to a lower truncation order.
    pub fn truncate(&self, order: u32) -> TruncSeries {
        let order = order.min(self.order);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| mono_degree(m) < order as i64)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncSeries { spec: self.spec.clone(), order, terms }
    }

    /// The homogeneous slice of total degree `k` as a polynomial.
    pub fn degree_slice(&self, k: i64) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.spec);
        for (m, c) in &self.terms {
            if mono_degree(m) == k {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    /// All stored terms as a polynomial.
    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.spec);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn map_vars(&self, target: &VarSpec, var_map: &[usize]) -> TruncSeries {
        assert_eq!(var_map.len(), self.spec.total_vars());
        let mut out = TruncSeries::zero(target, self.order);
        for (m, c) in &self.terms {
            let mut nm = vec![0i32; target.total_vars()];
            for (v, &e) in m.iter().enumerate() {
                nm[var_map[v]] += e;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric_map(&self.terms, &self.spec)
    }

    /// Two-sided inverse at the stored order; needs a nonzero constant term.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(HallError::NotInvertible);
        }
        // 1/s = (1/c0) * sum_k (-u)^k  with  u = s/c0 - 1  of positive valuation
        let c0_inv = c0.recip();
        let mut u = self.scale(&c0_inv);
        u.add_term(vec![0; self.spec.total_vars()], -Rat::one());
        let mut out = TruncSeries::one(&self.spec, self.order);
        let mut pow = TruncSeries::one(&self.spec, self.order);
        for k in 1..self.order {
            pow = pow.mul(&u);
            if pow.is_zero() {
                break;
            }
            if k % 2 == 1 {
                out = out.sub(&pow);
            } else {
                out = out.add(&pow);
            }
        }
        Ok(out.scale(&c0_inv))
    }

    fn render(&self, spaced: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by(|a, b| mono_degree(b).cmp(&mono_degree(a)).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (pos, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if pos == 0 {
                if neg {
                    out.push('-');
                }
            } else if spaced {
                out.push_str(if neg { " - " } else { " + " });
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&term_string(&abs, m, &self.spec, 'x'));
        }
        out
    }

    pub fn to_canonical_string(&self) -> String {
        self.render(true)
    }

    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }
}

/// Substitute a homogeneous linear form into a univariate series given by
/// its coefficient list: `sum_k coeffs[k] * linear^k`, truncated at `order`.
pub fn compose_univariate(coeffs: &[Rat], linear: &MultiPoly, order: u32) -> Result<TruncSeries> {
    require_linear(linear)?;
    let spec = linear.spec();
    let mut out = TruncSeries::zero(spec, order);
    let mut pow = TruncSeries::one(spec, order);
    let lin = TruncSeries::from_poly(linear, order);
    for (k, c) in coeffs.iter().enumerate().take(order as usize) {
        if k > 0 {
            pow = pow.mul(&lin);
            if pow.is_zero() {
                break;
            }
        }
        out = out.add(&pow.scale(c));
    }
    Ok(out)
}

fn require_linear(p: &MultiPoly) -> Result<()> {
    for m in p.terms().keys() {
        if mono_degree(m) != 1 {
            return Err(HallError::Precondition(
                "argument must be homogeneous linear with zero constant term".into(),
            ));
        }
    }
    Ok(())
}

/// `exp(linear)` truncated at `order`; the argument must be a homogeneous
/// linear form (zero constant term).
pub fn series_exp(linear: &MultiPoly, order: u32) -> Result<TruncSeries> {
    let coeffs: Vec<Rat> = (0..order).map(inv_factorial).collect();
    compose_univariate(&coeffs, linear, order)
}

/// Coefficients of `u / (e^u - 1)` up to `u^{n-1}`: the exponential
/// generating sequence of the Bernoulli numbers.
pub fn todd_coefficients(n: u32) -> Vec<Rat> {
    // (e^u - 1)/u = sum u^k / (k+1)!; invert by the triangular recurrence
    let mut t: Vec<Rat> = Vec::with_capacity(n as usize);
    for k in 0..n as usize {
        let mut acc = if k == 0 { Rat::one() } else { Rat::zero() };
        for (j, tj) in t.iter().enumerate().take(k) {
            acc -= tj * &inv_factorial((k - j + 1) as u32);
        }
        t.push(acc);
    }
    t
}

/// The Todd-type unit series `u/(e^u - 1)` composed with a linear form.
pub fn todd_factor(linear: &MultiPoly, order: u32) -> Result<TruncSeries> {
    compose_univariate(&todd_coefficients(order), linear, order)
}

/// Chern-type substitution `z_v^k -> exp(k x_v)`, term by term, truncated at
/// `order`. Additive, and multiplicative up to truncation.
pub fn laurent_to_series(f: &LaurentPoly, order: u32) -> TruncSeries {
    let spec = f.spec();
    let mut out = TruncSeries::zero(spec, order);
    for (m, c) in f.terms() {
        let mut linear = MultiPoly::zero(spec);
        for (v, &e) in m.iter().enumerate() {
            if e != 0 {
                linear.add_term(
                    {
                        let mut mo = vec![0; spec.total_vars()];
                        mo[v] = 1;
                        mo
                    },
                    Rat::from_integer(e.into()),
                );
            }
        }
        let e = series_exp(&linear, order).expect("linear by construction");
        out = out.add(&e.scale(c));
    }
    out
}

/// Divide by a nonzero homogeneous polynomial of degree `d`, slice by slice:
/// the quotient is exact through order `self.order - d`. Fails loudly when a
/// slice is not divisible, which signals a bug upstream.
pub fn divide_by_homogeneous(s: &TruncSeries, den: &MultiPoly) -> Result<TruncSeries> {
    let d = den.homogeneous_degree().ok_or_else(|| {
        HallError::Precondition("divisor must be homogeneous".into())
    })?;
    if den.is_zero() {
        return Err(HallError::NotDivisible("division by zero".into()));
    }
    let order = (s.order() as i64 - d).max(0) as u32;
    let mut out = TruncSeries::zero(s.spec(), order);
    for k in 0..order as i64 {
        let slice = s.degree_slice(k + d);
        if slice.is_zero() {
            continue;
        }
        let q = slice.exact_divide(den)?;
        for (m, c) in q.terms() {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[<{}]({})", self.order, self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DimVector;
    use crate::rat::{rat, rat_i};

    fn spec(counts: &[i64]) -> VarSpec {
        VarSpec::new(&DimVector::new(counts.to_vec())).unwrap()
    }

    #[test]
    fn truncation_drops_high_degree() {
        let s = spec(&[1]);
        let u = MultiPoly::var(&s, 0);
        let one_plus = TruncSeries::from_poly(&MultiPoly::one(&s).add(&u), 2);
        let one_minus = TruncSeries::from_poly(&MultiPoly::one(&s).sub(&u), 2);
        assert_eq!(one_plus.mul(&one_minus), TruncSeries::one(&s, 2));
    }

    #[test]
    fn square_at_order_three() {
        let s = spec(&[1]);
        let x = TruncSeries::from_poly(&MultiPoly::var(&s, 0), 3);
        let sq = x.mul(&x);
        assert_eq!(sq.coeff(&vec![2]), rat_i(1));
        assert_eq!(sq.terms().len(), 1);
    }

    #[test]
    fn exp_of_zero_and_of_x() {
        let s = spec(&[1]);
        assert_eq!(series_exp(&MultiPoly::zero(&s), 5).unwrap(), TruncSeries::one(&s, 5));
        let e = series_exp(&MultiPoly::var(&s, 0), 3).unwrap();
        assert_eq!(e.coeff(&vec![0]), rat_i(1));
        assert_eq!(e.coeff(&vec![1]), rat_i(1));
        assert_eq!(e.coeff(&vec![2]), rat(1, 2));
    }

    #[test]
    fn exp_group_law() {
        let s = spec(&[2]);
        let l = MultiPoly::var(&s, 0).add(&MultiPoly::var(&s, 1));
        let e = series_exp(&l, 4).unwrap();
        let einv = series_exp(&l.neg(), 4).unwrap();
        assert_eq!(e.mul(&einv), TruncSeries::one(&s, 4));
    }

    #[test]
    fn exp_rejects_nonlinear() {
        let s = spec(&[1]);
        let x = MultiPoly::var(&s, 0);
        assert!(series_exp(&x.mul(&x), 4).is_err());
        assert!(series_exp(&x.add(&MultiPoly::one(&s)), 4).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let s = spec(&[1]);
        let u = MultiPoly::var(&s, 0);
        let f = TruncSeries::from_poly(&MultiPoly::one(&s).sub(&u), 3);
        let inv = f.invert().unwrap();
        // 1 + u + u^2
        assert_eq!(inv.coeff(&vec![0]), rat_i(1));
        assert_eq!(inv.coeff(&vec![1]), rat_i(1));
        assert_eq!(inv.coeff(&vec![2]), rat_i(1));
        assert_eq!(f.mul(&inv), TruncSeries::one(&s, 3));
        assert_eq!(TruncSeries::one(&s, 4).invert().unwrap(), TruncSeries::one(&s, 4));
    }

    #[test]
    fn invert_rejects_zero_constant() {
        let s = spec(&[1]);
        let x = TruncSeries::from_poly(&MultiPoly::var(&s, 0), 3);
        assert!(matches!(x.invert(), Err(HallError::NotInvertible)));
    }

    #[test]
    fn todd_series_values() {
        let t = todd_coefficients(6);
        assert_eq!(t[0], rat_i(1));
        assert_eq!(t[1], rat(-1, 2));
        assert_eq!(t[2], rat(1, 12));
        assert_eq!(t[3], rat_i(0));
        assert_eq!(t[4], rat(-1, 720));
        let s = spec(&[1]);
        let u = MultiPoly::var(&s, 0);
        let td = todd_factor(&u, 6).unwrap();
        assert_eq!(td.constant_term(), rat_i(1));
        // todd * (e^u - 1)/u = 1
        let exp = series_exp(&u, 7).unwrap();
        let em1 = exp.sub(&TruncSeries::one(&s, 7));
        let em1_over_u = divide_by_homogeneous(&em1, &u).unwrap();
        assert_eq!(td.mul(&em1_over_u), TruncSeries::one(&s, 6));
        assert_eq!(td.invert().unwrap().mul(&td), TruncSeries::one(&s, 6));
    }

    #[test]
    fn chern_substitution() {
        let s = spec(&[1]);
        // z^0 = 1
        assert_eq!(laurent_to_series(&LaurentPoly::one(&s), 4), TruncSeries::one(&s, 4));
        // z at order 3
        let z = LaurentPoly::var_pow(&s, 0, 1);
        let e = laurent_to_series(&z, 3);
        assert_eq!(e.coeff(&vec![2]), rat(1, 2));
        // z + z^-1 at order 3 = 2 + x^2
        let f = z.add(&LaurentPoly::var_pow(&s, 0, -1));
        let g = laurent_to_series(&f, 3);
        assert_eq!(g.coeff(&vec![0]), rat_i(2));
        assert_eq!(g.coeff(&vec![1]), rat_i(0));
        assert_eq!(g.coeff(&vec![2]), rat_i(1));
        assert_eq!(g.terms().len(), 2);
    }

    #[test]
    fn chern_is_multiplicative_after_truncation() {
        let s = spec(&[2]);
        let f = LaurentPoly::var_pow(&s, 0, 1).add(&LaurentPoly::var_pow(&s, 1, -2));
        let g = LaurentPoly::var_pow(&s, 0, -1).scale(&rat(2, 3)).add(&LaurentPoly::one(&s));
        for order in [2u32, 4, 6] {
            let lhs = laurent_to_series(&f.mul(&g), order);
            let rhs = laurent_to_series(&f, order).mul(&laurent_to_series(&g, order));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homogeneous_slice_division() {
        let s = spec(&[2]);
        let x1 = MultiPoly::var(&s, 0);
        let x2 = MultiPoly::var(&s, 1);
        let den = x2.sub(&x1);
        let f = series_exp(&x1.add(&x2), 6).unwrap();
        let num = f.mul_poly(&den);
        let back = divide_by_homogeneous(&num, &den).unwrap();
        assert_eq!(back, f.truncate(5));
    }
}

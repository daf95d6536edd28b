//! Dense-exponent multivariate polynomials over the rationals.
//!
//! Terms map exponent vectors (one entry per declared variable) to nonzero
//! rational coefficients. The canonical term order for printing and for
//! leading terms is graded lexicographic on the flattened variable list.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{HallError, Result};
use crate::rat::{rat_string, Rat};
use crate::symfun::vars::VarSpec;

pub type Mono = Vec<i32>;

pub fn mono_degree(m: &Mono) -> i64 {
    m.iter().map(|&e| e as i64).sum()
}

/// Graded-lex key used for leading-term extraction.
fn grlex(m: &Mono) -> (i64, Mono) {
    (mono_degree(m), m.clone())
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    spec: VarSpec,
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero(spec: &VarSpec) -> Self {
        MultiPoly { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(spec: &VarSpec, c: Rat) -> Self {
        let mut p = MultiPoly::zero(spec);
        if !c.is_zero() {
            p.terms.insert(vec![0; spec.total_vars()], c);
        }
        p
    }

    pub fn one(spec: &VarSpec) -> Self {
        MultiPoly::constant(spec, Rat::one())
    }

    /// The single variable with flat index `v`.
    pub fn var(spec: &VarSpec, v: usize) -> Self {
        assert!(v < spec.total_vars());
        let mut mono = vec![0; spec.total_vars()];
        mono[v] = 1;
        let mut p = MultiPoly::zero(spec);
        p.terms.insert(mono, Rat::one());
        p
    }

    /// Difference of two variables, `x_hi - x_lo`.
    pub fn var_diff(spec: &VarSpec, hi: usize, lo: usize) -> Self {
        let mut p = MultiPoly::var(spec, hi);
        p.add_term(MultiPoly::var(spec, lo).terms.keys().next().unwrap().clone(), -Rat::one());
        p
    }

    pub fn from_terms(spec: &VarSpec, terms: BTreeMap<Mono, Rat>) -> Self {
        let mut p = MultiPoly::zero(spec);
        for (m, c) in terms {
            assert_eq!(m.len(), spec.total_vars(), "exponent vector length mismatch");
            debug_assert!(m.iter().all(|&e| e >= 0), "negative exponent in polynomial");
            p.add_term(m, c);
        }
        p
    }

    pub fn spec(&self) -> &VarSpec {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.spec.total_vars()])
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
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

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MultiPoly { spec: self.spec.clone(), terms }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.spec);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        MultiPoly { spec: self.spec.clone(), terms }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_capped(other, None)
    }

    /// Product, discarding monomials of total degree >= `cap` when given.
    pub fn mul_capped(&self, other: &MultiPoly, cap: Option<i64>) -> MultiPoly {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let mut out = MultiPoly::zero(&self.spec);
        let (small, large) =
            if self.num_terms() <= other.num_terms() { (self, other) } else { (other, self) };
        for (m1, c1) in &small.terms {
            let d1 = mono_degree(m1);
            for (m2, c2) in &large.terms {
                if let Some(cap) = cap {
                    if d1 + mono_degree(m2) >= cap {
                        continue;
                    }
                }
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.spec);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Total degree of the highest monomial; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| mono_degree(m)).max()
    }

    /// Minimum total degree over the support.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| mono_degree(m)).min()
    }

    /// `Some(k)` when every monomial has total degree `k`; the zero
    /// polynomial is homogeneous of every degree (`Some(0)` by convention).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = mono_degree(m);
            match deg {
                None => deg = Some(d),
                Some(k) if k != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// The homogeneous part of total degree `k`.
    pub fn degree_slice(&self, k: i64) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| mono_degree(m) == k)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { spec: self.spec.clone(), terms }
    }

    /// Drop all monomials of total degree >= `cap`.
    pub fn truncate_below(&self, cap: i64) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| mono_degree(m) < cap)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { spec: self.spec.clone(), terms }
    }

    /// Push the polynomial through a flat-variable relabeling into a larger
    /// spec: variable `v` becomes `var_map[v]`.
    pub fn map_vars(&self, target: &VarSpec, var_map: &[usize]) -> MultiPoly {
        assert_eq!(var_map.len(), self.spec.total_vars());
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut nm = vec![0i32; target.total_vars()];
            for (v, &e) in m.iter().enumerate() {
                nm[var_map[v]] += e;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Apply the transposition of flat variables `a` and `b` to every
    /// exponent vector.
    pub fn swap_vars(&self, a: usize, b: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.spec);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            nm.swap(a, b);
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Invariance under every adjacent transposition within each vertex
    /// block (sufficient since those generate the symmetric groups).
    pub fn is_symmetric(&self) -> bool {
        is_symmetric_map(&self.terms, &self.spec)
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(Mono, Rat)> {
        self.terms
            .iter()
            .max_by(|(m1, _), (m2, _)| grlex(m1).cmp(&grlex(m2)))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Exact quotient `self / den`; fails unless `den` divides exactly.
    pub fn exact_divide(&self, den: &MultiPoly) -> Result<MultiPoly> {
        assert_eq!(self.spec, den.spec, "variable spec mismatch");
        if den.is_zero() {
            return Err(HallError::NotDivisible("division by the zero polynomial".into()));
        }
        // remainder keyed by (degree, exponents) so the graded-lex maximum
        // is the last entry
        let mut rem: BTreeMap<(i64, Mono), Rat> = self
            .terms
            .iter()
            .map(|(m, c)| ((mono_degree(m), m.clone()), c.clone()))
            .collect();
        let (lm_den, lc_den) = den.leading_term().expect("nonzero divisor");
        let den_terms: Vec<(&Mono, &Rat)> = den.terms.iter().collect();
        let mut quot = MultiPoly::zero(&self.spec);
        while let Some(((_, lm_r), lc_r)) = rem.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
            let mut shift = vec![0i32; lm_r.len()];
            let mut ok = true;
            for v in 0..lm_r.len() {
                let d = lm_r[v] - lm_den[v];
                if d < 0 {
                    ok = false;
                    break;
                }
                shift[v] = d;
            }
            if !ok {
                return Err(HallError::NotDivisible(format!(
                    "leading monomial {:?} is not a multiple of {:?}",
                    lm_r, lm_den
                )));
            }
            let c = &lc_r / &lc_den;
            quot.add_term(shift.clone(), c.clone());
            for (m, k) in &den_terms {
                let mono: Mono = m.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let key = (mono_degree(&mono), mono);
                let delta = &c * *k;
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    Entry::Occupied(mut e) => {
                        let sum = e.get() - &delta;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(quot)
    }

    /// Largest power of each variable dividing every term, as a monomial.
    pub fn min_exponents(&self) -> Mono {
        let n = self.spec.total_vars();
        let mut min = vec![i32::MAX; n];
        for m in self.terms.keys() {
            for (v, &e) in m.iter().enumerate() {
                min[v] = min[v].min(e);
            }
        }
        if self.terms.is_empty() {
            min = vec![0; n];
        }
        min
    }

    fn render(&self, spaced: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b).cmp(&grlex(a)));
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

    /// Canonical text, graded-lex descending, exact fractions.
    pub fn to_canonical_string(&self) -> String {
        self.render(true)
    }

    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }
}

pub(crate) fn term_string(abs_coeff: &Rat, m: &Mono, spec: &VarSpec, kind: char) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !abs_coeff.is_one() || m.iter().all(|&e| e == 0) {
        parts.push(rat_string(abs_coeff));
    }
    for (v, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(spec.var_name(kind, v));
        } else {
            parts.push(format!("{}^{}", spec.var_name(kind, v), e));
        }
    }
    parts.join("*")
}

/// Shared symmetry test on raw term maps (used by all three carriers).
pub(crate) fn is_symmetric_map(terms: &BTreeMap<Mono, Rat>, spec: &VarSpec) -> bool {
    for i in 0..spec.vertex_count() {
        let c = spec.count(i) as usize;
        for a in 0..c.saturating_sub(1) {
            let va = spec.var_index(i, a);
            let vb = spec.var_index(i, a + 1);
            for (m, coeff) in terms {
                let mut swapped = m.clone();
                swapped.swap(va, vb);
                match terms.get(&swapped) {
                    Some(c2) if c2 == coeff => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// The product over vertices of the Vandermonde of that vertex's variables:
/// `prod_i prod_{a<b} (x_{i,b} - x_{i,a})`.
pub fn vandermonde(spec: &VarSpec) -> MultiPoly {
    let positions: Vec<Vec<usize>> =
        (0..spec.vertex_count()).map(|i| (0..spec.count(i) as usize).collect()).collect();
    vandermonde_positions(spec, &positions)
}

/// Vandermonde restricted to the given slots of each vertex (slots listed in
/// increasing order).
pub fn vandermonde_positions(spec: &VarSpec, positions: &[Vec<usize>]) -> MultiPoly {
    let mut out = MultiPoly::one(spec);
    for (i, pos) in positions.iter().enumerate() {
        for b in 1..pos.len() {
            for a in 0..b {
                let f = MultiPoly::var_diff(spec, spec.var_index(i, pos[b]), spec.var_index(i, pos[a]));
                out = out.mul(&f);
            }
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_canonical_string())
    }
}

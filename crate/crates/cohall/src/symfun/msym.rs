//! Monomial symmetric basis: per-vertex non-increasing exponent patterns.
//!
//! A label holds, for every vertex, the exponents of one variable block
//! sorted non-increasingly (entries may be negative for Laurent labels).
//! The associated basis element is the orbit sum of the pattern under the
//! per-vertex symmetric groups. Symmetric polynomials have unique
//! coordinates in this basis, read off the sorted representative of each
//! orbit.

use std::collections::BTreeMap;

use crate::error::{HallError, Result};
use crate::rat::Rat;
use crate::symfun::laurent::LaurentPoly;
use crate::symfun::poly::{Mono, MultiPoly};
use crate::symfun::vars::VarSpec;

/// Per-vertex sorted exponent patterns; each inner vector has exactly the
/// vertex's variable count, sorted non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MsymLabel(pub Vec<Vec<i32>>);

impl MsymLabel {
    pub fn degree(&self) -> i64 {
        self.0.iter().flatten().map(|&e| e as i64).sum()
    }

    /// The flat exponent vector of the sorted representative monomial.
    pub fn representative(&self, spec: &VarSpec) -> Mono {
        let mut m = Vec::with_capacity(spec.total_vars());
        for part in &self.0 {
            m.extend(part.iter().copied());
        }
        m
    }

    fn from_mono(spec: &VarSpec, m: &Mono) -> MsymLabel {
        let mut parts = Vec::with_capacity(spec.vertex_count());
        for i in 0..spec.vertex_count() {
            let c = spec.count(i) as usize;
            let mut block: Vec<i32> =
                (0..c).map(|a| m[spec.var_index(i, a)]).collect();
            block.sort_unstable_by(|a, b| b.cmp(a));
            parts.push(block);
        }
        MsymLabel(parts)
    }
}

/// Non-increasing tuples of length `parts` of non-negative integers summing
/// to `k` (partitions of `k` into at most `parts` parts, zero padded).
pub fn partitions_of(k: i64, parts: usize) -> Vec<Vec<i32>> {
    fn rec(remaining: i64, slots: usize, max: i64, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let hi = remaining.min(max);
        for v in (0..=hi).rev() {
            // the remaining slots carry at most v each
            if remaining - v > v * (slots as i64 - 1) {
                continue;
            }
            prefix.push(v as i32);
            rec(remaining - v, slots - 1, v, prefix, out);
            prefix.pop();
        }
    }
    if k < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(k, parts, k, &mut Vec::new(), &mut out);
    out
}

/// All labels of the given total degree for the spec.
pub fn msym_labels(spec: &VarSpec, degree: i64) -> Vec<MsymLabel> {
    fn rec(
        spec: &VarSpec,
        vertex: usize,
        remaining: i64,
        prefix: &mut Vec<Vec<i32>>,
        out: &mut Vec<MsymLabel>,
    ) {
        if vertex == spec.vertex_count() {
            if remaining == 0 {
                out.push(MsymLabel(prefix.clone()));
            }
            return;
        }
        let parts = spec.count(vertex) as usize;
        for k in 0..=remaining {
            for p in partitions_of(k, parts) {
                prefix.push(p);
                rec(spec, vertex + 1, remaining - k, prefix, out);
                prefix.pop();
            }
        }
    }
    if degree < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(spec, 0, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Laurent labels: per-vertex non-increasing tuples with entries in
/// `[min_e, max_e]`.
pub fn msym_labels_laurent(spec: &VarSpec, min_e: i32, max_e: i32) -> Vec<MsymLabel> {
    fn tuples(len: usize, min_e: i32, max_e: i32) -> Vec<Vec<i32>> {
        fn rec(len: usize, min_e: i32, max: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if len == 0 {
                out.push(prefix.clone());
                return;
            }
            for v in (min_e..=max).rev() {
                prefix.push(v);
                rec(len - 1, min_e, v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, min_e, max_e, &mut Vec::new(), &mut out);
        out
    }
    let mut out: Vec<MsymLabel> = vec![MsymLabel(Vec::new())];
    for i in 0..spec.vertex_count() {
        let opts = tuples(spec.count(i) as usize, min_e, max_e);
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for label in &out {
            for o in &opts {
                let mut l = label.0.clone();
                l.push(o.clone());
                next.push(MsymLabel(l));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Distinct permutations of a multiset.
fn distinct_permutations(tuple: &[i32]) -> Vec<Vec<i32>> {
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    // classic next-permutation walk over the sorted list
    loop {
        out.push(sorted.clone());
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    out
}

fn orbit_monos(spec: &VarSpec, label: &MsymLabel) -> Vec<Mono> {
    assert_eq!(label.0.len(), spec.vertex_count());
    let per_vertex: Vec<Vec<Vec<i32>>> =
        label.0.iter().map(|part| distinct_permutations(part)).collect();
    let mut monos: Vec<Vec<i32>> = vec![Vec::new()];
    for opts in &per_vertex {
        let mut next = Vec::with_capacity(monos.len() * opts.len());
        for m in &monos {
            for o in opts {
                let mut nm = m.clone();
                nm.extend(o.iter().copied());
                next.push(nm);
            }
        }
        monos = next;
    }
    monos
}

/// The orbit-sum polynomial of a label (non-negative exponents required).
pub fn msym_poly(spec: &VarSpec, label: &MsymLabel) -> MultiPoly {
    let mut p = MultiPoly::zero(spec);
    for m in orbit_monos(spec, label) {
        p.add_term(m, Rat::from_integer(1.into()));
    }
    p
}

/// The orbit-sum Laurent polynomial of a label.
pub fn msym_laurent(spec: &VarSpec, label: &MsymLabel) -> LaurentPoly {
    let mut p = LaurentPoly::zero(spec);
    for m in orbit_monos(spec, label) {
        p.add_term(m, Rat::from_integer(1.into()));
    }
    p
}

/// Coordinates of a symmetric polynomial in the monomial symmetric basis.
pub fn poly_msym_coords(p: &MultiPoly) -> Result<BTreeMap<MsymLabel, Rat>> {
    if !p.is_symmetric() {
        return Err(HallError::Precondition(
            "monomial-symmetric coordinates need a symmetric polynomial".into(),
        ));
    }
    let spec = p.spec();
    let mut out = BTreeMap::new();
    for (m, c) in p.terms() {
        let label = MsymLabel::from_mono(spec, m);
        if &label.representative(spec) == m {
            out.insert(label, c.clone());
        }
    }
    Ok(out)
}

/// Coordinates of a symmetric Laurent polynomial in the basis of orbit sums.
pub fn laurent_msym_coords(p: &LaurentPoly) -> Result<BTreeMap<MsymLabel, Rat>> {
    if !p.is_symmetric() {
        return Err(HallError::Precondition(
            "monomial-symmetric coordinates need a symmetric Laurent polynomial".into(),
        ));
    }
    let spec = p.spec();
    let mut out = BTreeMap::new();
    for (m, c) in p.terms() {
        let label = MsymLabel::from_mono(spec, m);
        if &label.representative(spec) == m {
            out.insert(label, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DimVector;
    use crate::rat::rat_i;

    fn spec(counts: &[i64]) -> VarSpec {
        VarSpec::new(&DimVector::new(counts.to_vec())).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(4, 2).len(), 3); // 4, 31, 22
        assert_eq!(partitions_of(0, 3).len(), 1);
        assert_eq!(partitions_of(5, 1).len(), 1);
        assert_eq!(partitions_of(3, 0).len(), 0);
        assert_eq!(partitions_of(0, 0).len(), 1);
    }

    #[test]
    fn msym_orbit_sums() {
        let s = spec(&[2]);
        let label = MsymLabel(vec![vec![2, 1]]);
        let p = msym_poly(&s, &label);
        // x1^2 x2 + x1 x2^2
        assert_eq!(p.num_terms(), 2);
        assert!(p.is_symmetric());
        let square = MsymLabel(vec![vec![1, 1]]);
        assert_eq!(msym_poly(&s, &square).num_terms(), 1);
    }

    #[test]
    fn coords_roundtrip() {
        let s = spec(&[2, 1]);
        let l1 = MsymLabel(vec![vec![2, 0], vec![1]]);
        let l2 = MsymLabel(vec![vec![1, 1], vec![0]]);
        let p = msym_poly(&s, &l1).scale(&rat_i(3)).add(&msym_poly(&s, &l2).scale(&rat_i(-2)));
        let coords = poly_msym_coords(&p).unwrap();
        assert_eq!(coords.len(), 2);
        assert_eq!(coords[&l1], rat_i(3));
        assert_eq!(coords[&l2], rat_i(-2));
    }

    #[test]
    fn label_enumeration_by_degree() {
        let s = spec(&[2]);
        // degree d symmetric polynomials in 2 vars: floor(d/2)+1 labels
        for d in 0..6i64 {
            assert_eq!(msym_labels(&s, d).len() as i64, d / 2 + 1);
        }
        let s2 = spec(&[1, 1]);
        assert_eq!(msym_labels(&s2, 3).len(), 4); // (3,0),(2,1),(1,2),(0,3)
    }

    #[test]
    fn laurent_labels_in_window() {
        let s = spec(&[2]);
        // non-increasing pairs with entries in [-1, 1]: C(3+1, 2) = 6
        assert_eq!(msym_labels_laurent(&s, -1, 1).len(), 6);
    }
}

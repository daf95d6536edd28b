//! Variable groups: one block of variables per quiver vertex.

use crate::error::Result;
use crate::quiver::DimVector;

/// Declares the variable groups `x_{i,1..gamma^i}` for a grade `gamma`.
/// Variables are flattened vertex-major: vertex 0 first, slots in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpec {
    counts: Vec<u32>,
    offsets: Vec<usize>,
    total: usize,
}

impl VarSpec {
    pub fn new(gamma: &DimVector) -> Result<Self> {
        gamma.require_nonnegative()?;
        let counts: Vec<u32> = gamma.components().iter().map(|&c| c as u32).collect();
        let mut offsets = Vec::with_capacity(counts.len());
        let mut total = 0usize;
        for &c in &counts {
            offsets.push(total);
            total += c as usize;
        }
        Ok(VarSpec { counts, offsets, total })
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, vertex: usize) -> u32 {
        self.counts[vertex]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total_vars(&self) -> usize {
        self.total
    }

    pub fn gamma(&self) -> DimVector {
        DimVector::new(self.counts.iter().map(|&c| c as i64).collect())
    }

    /// Flat index of slot `slot` (0-based) of `vertex`.
    pub fn var_index(&self, vertex: usize, slot: usize) -> usize {
        debug_assert!(slot < self.counts[vertex] as usize);
        self.offsets[vertex] + slot
    }

    /// Inverse of `var_index`.
    pub fn var_of_index(&self, idx: usize) -> (usize, usize) {
        let mut vertex = 0;
        while vertex + 1 < self.counts.len() && self.offsets[vertex + 1] <= idx {
            vertex += 1;
        }
        (vertex, idx - self.offsets[vertex])
    }

    /// Spec for the concatenated grade, together with the flat-variable maps
    /// embedding each factor: within every vertex the first block comes from
    /// `self`, the second from `other`.
    pub fn combined(&self, other: &VarSpec) -> (VarSpec, Vec<usize>, Vec<usize>) {
        assert_eq!(self.vertex_count(), other.vertex_count(), "vertex count mismatch");
        let gamma = self.gamma().add(&other.gamma());
        let spec = VarSpec::new(&gamma).expect("sums of non-negative grades are non-negative");
        let mut map1 = Vec::with_capacity(self.total);
        let mut map2 = Vec::with_capacity(other.total);
        for i in 0..self.vertex_count() {
            for a in 0..self.counts[i] as usize {
                map1.push(spec.var_index(i, a));
            }
        }
        for i in 0..other.vertex_count() {
            for b in 0..other.counts[i] as usize {
                map2.push(spec.var_index(i, self.counts[i] as usize + b));
            }
        }
        (spec, map1, map2)
    }

    /// Display name of a flat variable, e.g. `x[0,2]` (slots are 1-based in
    /// printed form).
    pub fn var_name(&self, kind: char, idx: usize) -> String {
        let (i, a) = self.var_of_index(idx);
        format!("{kind}[{i},{}]", a + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_indexing_roundtrip() {
        let spec = VarSpec::new(&DimVector::new(vec![2, 0, 3])).unwrap();
        assert_eq!(spec.total_vars(), 5);
        assert_eq!(spec.var_index(0, 1), 1);
        assert_eq!(spec.var_index(2, 0), 2);
        for idx in 0..spec.total_vars() {
            let (i, a) = spec.var_of_index(idx);
            assert_eq!(spec.var_index(i, a), idx);
        }
        assert_eq!(spec.var_name('x', 3), "x[2,2]");
    }

    #[test]
    fn combined_layout() {
        let s1 = VarSpec::new(&DimVector::new(vec![1, 2])).unwrap();
        let s2 = VarSpec::new(&DimVector::new(vec![2, 1])).unwrap();
        let (spec, m1, m2) = s1.combined(&s2);
        assert_eq!(spec.counts(), &[3, 3]);
        // vertex 0: s1 slot 0 -> 0, s2 slots -> 1, 2
        assert_eq!(m1, vec![0, 3, 4]);
        assert_eq!(m2, vec![1, 2, 5]);
    }

    #[test]
    fn rejects_negative_grade() {
        assert!(VarSpec::new(&DimVector::new(vec![1, -1])).is_err());
    }
}

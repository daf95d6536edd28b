//! Incremental reduced row echelon form over exact rationals.

use num_traits::Zero;

use crate::rat::Rat;

/// A growing row space in reduced echelon form. Rows are dense coordinate
/// vectors of a fixed width.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ncols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `row` after eliminating against the current space.
    pub fn reduce(&self, mut row: Vec<Rat>) -> Vec<Rat> {
        assert_eq!(row.len(), self.ncols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (dst, src) in row.iter_mut().zip(r) {
                    *dst -= &f * src;
                }
            }
        }
        row
    }

    pub fn contains(&self, row: Vec<Rat>) -> bool {
        self.reduce(row).iter().all(Rat::is_zero)
    }

    /// Insert a row; returns `true` when it enlarges the space.
    pub fn insert(&mut self, row: Vec<Rat>) -> bool {
        let mut row = self.reduce(row);
        let pivot = match row.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let lead = row[pivot].clone();
        for c in row.iter_mut() {
            *c /= &lead;
        }
        // back-eliminate the new pivot column from existing rows
        for r in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let f = r[pivot].clone();
                for (dst, src) in r.iter_mut().zip(&row) {
                    *dst -= &f * src;
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > pivot).unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        true
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Express `row` modulo the space as coordinates on the free columns.
    /// The reduced residual is supported on free columns exactly when `row`
    /// represents a coset element canonically.
    pub fn coset_coordinates(&self, row: Vec<Rat>) -> Vec<Rat> {
        let red = self.reduce(row);
        self.free_columns().iter().map(|&c| red[c].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn row(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_i(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(row(&[1, 2, 3])));
        assert!(s.insert(row(&[0, 1, 1])));
        assert!(!s.insert(row(&[1, 3, 4])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(row(&[2, 5, 7])));
        assert!(!s.contains(row(&[0, 0, 1])));
        assert_eq!(s.free_columns(), vec![2]);
    }

    #[test]
    fn coset_coordinates_kill_the_space() {
        let mut s = RowSpace::new(3);
        s.insert(row(&[1, 0, 2]));
        let c = s.coset_coordinates(row(&[3, 1, 6]));
        assert_eq!(c, vec![rat_i(1), rat_i(0)]);
    }
}

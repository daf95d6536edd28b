//! Enumeration of (p,q)-shuffles.
//!
//! A shuffle interleaves a block of `p` slots and a block of `q` slots into
//! `p+q` combined positions, keeping the order inside each block. It is
//! recorded by the sorted position lists of the two blocks.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl Shuffle {
    /// Number of pairs (a, b) with `a` a first-block position, `b` a
    /// second-block position and `a > b`; the parity is the sign of the
    /// shuffle permutation.
    pub fn inversions(&self) -> u64 {
        let mut inv = 0;
        for &a in &self.first {
            for &b in &self.second {
                if a > b {
                    inv += 1;
                }
            }
        }
        inv
    }
}

/// All C(p+q, p) shuffles of block sizes `(p, q)`, in lexicographic order of
/// the first-block position list.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let total = p + q;
    let mut out = Vec::new();
    let mut choose = |positions: &[usize]| {
        let set: Vec<bool> = {
            let mut s = vec![false; total];
            for &v in positions {
                s[v] = true;
            }
            s
        };
        let second = (0..total).filter(|&v| !set[v]).collect();
        out.push(Shuffle { first: positions.to_vec(), second });
    };
    let mut current: Vec<usize> = (0..p).collect();
    if p == 0 {
        choose(&current);
        return out;
    }
    loop {
        choose(&current);
        // next combination in lexicographic order
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + total - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..p {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Cartesian product of per-vertex shuffles for block sizes `c1`, `c2`.
pub fn shuffle_tuples(c1: &[u32], c2: &[u32]) -> Vec<Vec<Shuffle>> {
    assert_eq!(c1.len(), c2.len());
    let per_vertex: Vec<Vec<Shuffle>> =
        c1.iter().zip(c2).map(|(&p, &q)| shuffles(p as usize, q as usize)).collect();
    let mut out: Vec<Vec<Shuffle>> = vec![Vec::new()];
    for choices in &per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Total inversion count of a per-vertex shuffle tuple.
pub fn tuple_inversions(tuple: &[Shuffle]) -> u64 {
    tuple.iter().map(Shuffle::inversions).sum()
}

//! Quiver data, dimension vectors, the Euler form, and the sign calculus.
//!
//! Signs live in the multiplicative group {+1, -1} so they compose directly
//! with rational coefficients. Bilinear forms into Z/2 are represented by
//! their basis matrices over Z/2 and evaluated on integer vectors reduced
//! mod 2.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{HallError, Result};

/// A finite quiver: `arrows[i][j]` counts the arrows from vertex `i` to
/// vertex `j`. Vertices are indexed `0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = arrows.len();
        if n == 0 {
            return Err(HallError::Precondition("quiver needs at least one vertex".into()));
        }
        for row in &arrows {
            if row.len() != n {
                return Err(HallError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        Ok(Quiver { arrows })
    }

    /// The quiver with a single vertex and `loops` loops.
    pub fn one_vertex(loops: u32) -> Self {
        Quiver { arrows: vec![vec![loops]] }
    }

    pub fn vertex_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    /// Error with the offending pair when the quiver is not symmetric.
    pub fn require_symmetric(&self) -> Result<()> {
        let n = self.vertex_count();
        for i in 0..n {
            for j in 0..n {
                if self.arrows[i][j] != self.arrows[j][i] {
                    return Err(HallError::SymmetryRequired {
                        i,
                        j,
                        aij: self.arrows[i][j],
                        aji: self.arrows[j][i],
                    });
                }
            }
        }
        Ok(())
    }

    fn check_len(&self, g: &DimVector) -> Result<()> {
        if g.len() != self.vertex_count() {
            return Err(HallError::DimensionMismatch { expected: self.vertex_count(), got: g.len() });
        }
        Ok(())
    }

    /// Parse the quiver document format:
    ///
    /// ```text
    /// vertices 2
    /// arrows
    /// 0 1
    /// 1 0
    /// ```
    ///
    /// Blank lines and `#` comments are skipped.
    pub fn parse_doc(text: &str) -> Result<Self> {
        let mut vertices: Option<usize> = None;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut in_arrows = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lno = lineno + 1;
            if let Some(rest) = line.strip_prefix("vertices") {
                let n: usize = rest.trim().parse().map_err(|_| {
                    HallError::parse(lno, 1, format!("invalid vertex count `{}`", rest.trim()))
                })?;
                vertices = Some(n);
            } else if line == "arrows" {
                in_arrows = true;
            } else if in_arrows {
                let row: Vec<u32> = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse().map_err(|_| {
                            HallError::parse(lno, 1, format!("invalid arrow count `{tok}`"))
                        })
                    })
                    .collect::<Result<_>>()?;
                rows.push(row);
            } else {
                return Err(HallError::parse(lno, 1, format!("unexpected line `{line}`")));
            }
        }
        let n = vertices.ok_or_else(|| HallError::parse(1, 1, "missing `vertices` field"))?;
        if rows.len() != n {
            return Err(HallError::parse(
                1,
                1,
                format!("expected {n} arrow rows, found {}", rows.len()),
            ));
        }
        Quiver::new(rows)
    }

    pub fn to_doc_string(&self) -> String {
        let mut s = format!("vertices {}\narrows\n", self.vertex_count());
        for row in &self.arrows {
            let toks: Vec<String> = row.iter().map(|a| a.to_string()).collect();
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        s
    }
}

/// An integer vector indexed by the vertices. Grades of algebra elements are
/// non-negative; twist parameters may have entries of any sign. Operations
/// that need non-negativity check it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(components: Vec<i64>) -> Self {
        DimVector(components)
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(HallError::Precondition(format!("grade {self} must be componentwise non-negative")))
        }
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len(), "dimension vector length mismatch");
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All vectors `0 <= v <= self` componentwise, in lexicographic order.
    pub fn sub_grades(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            let mut next = Vec::new();
            for prefix in &out {
                for v in 0..=c.max(0) {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", toks.join(","))
    }
}

/// A multiplicative sign, the image of Z/2 in the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_bool(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// A bilinear form (Z/2)^I x (Z/2)^I -> Z/2 given by its matrix on the
/// standard basis. Integer vectors are reduced mod 2 before evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Form {
    m: Vec<Vec<bool>>,
}

impl Z2Form {
    pub fn zero(n: usize) -> Self {
        Z2Form { m: vec![vec![false; n]; n] }
    }

    pub fn from_matrix(m: Vec<Vec<bool>>) -> Result<Self> {
        let n = m.len();
        for row in &m {
            if row.len() != n {
                return Err(HallError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        Ok(Z2Form { m })
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.m[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.m[i][j] == self.m[j][i]))
    }

    /// Sum of forms (same as difference over Z/2).
    pub fn plus(&self, other: &Z2Form) -> Result<Z2Form> {
        if self.size() != other.size() {
            return Err(HallError::DimensionMismatch { expected: self.size(), got: other.size() });
        }
        let n = self.size();
        let m = (0..n)
            .map(|i| (0..n).map(|j| self.m[i][j] ^ other.m[i][j]).collect())
            .collect();
        Ok(Z2Form { m })
    }

    /// Evaluate as an element of Z/2 (`true` = odd).
    pub fn eval(&self, g1: &DimVector, g2: &DimVector) -> Result<bool> {
        let n = self.size();
        if g1.len() != n {
            return Err(HallError::DimensionMismatch { expected: n, got: g1.len() });
        }
        if g2.len() != n {
            return Err(HallError::DimensionMismatch { expected: n, got: g2.len() });
        }
        let mut acc = false;
        for i in 0..n {
            if g1.get(i).rem_euclid(2) == 0 {
                continue;
            }
            for j in 0..n {
                if g2.get(j).rem_euclid(2) == 1 && self.m[i][j] {
                    acc = !acc;
                }
            }
        }
        Ok(acc)
    }

    pub fn eval_sign(&self, g1: &DimVector, g2: &DimVector) -> Result<Sign> {
        Ok(Sign::from_bool(self.eval(g1, g2)?))
    }
}

/// The Euler form of the quiver:
/// `chi(g1, g2) = sum_i g1^i g2^i - sum_{i,j} a_ij g1^i g2^j`.
pub fn euler_form(q: &Quiver, g1: &DimVector, g2: &DimVector) -> Result<i64> {
    q.check_len(g1)?;
    q.check_len(g2)?;
    let n = q.vertex_count();
    let mut acc = 0i64;
    for i in 0..n {
        acc += g1.get(i) * g2.get(i);
        for j in 0..n {
            acc -= q.arrow_count(i, j) as i64 * g1.get(i) * g2.get(j);
        }
    }
    Ok(acc)
}

/// Parity of the self-Euler form: `epsilon(g) = chi(g, g) mod 2`.
pub fn epsilon(q: &Quiver, g: &DimVector) -> Result<Sign> {
    Ok(Sign::from_parity(euler_form(q, g, g)?))
}

/// `beta(g1, g2) = (chi(g1, g2) + epsilon(g1) epsilon(g2)) mod 2`.
///
/// Symmetric with `beta(g, g) = 0` whenever the quiver is symmetric, which is
/// the only case where it is used; non-symmetric quivers are rejected.
pub fn beta(q: &Quiver, g1: &DimVector, g2: &DimVector) -> Result<Sign> {
    q.require_symmetric()?;
    let chi = euler_form(q, g1, g2)?;
    let e1 = !epsilon(q, g1)?.is_positive() as i64;
    let e2 = !epsilon(q, g2)?.is_positive() as i64;
    Ok(Sign::from_parity(chi + e1 * e2))
}

/// The matrix of `beta` on the standard basis.
pub fn beta_form(q: &Quiver) -> Result<Z2Form> {
    q.require_symmetric()?;
    let n = q.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let ei = DimVector::unit(n, i);
            let ej = DimVector::unit(n, j);
            m[i][j] = !beta(q, &ei, &ej)?.is_positive();
        }
    }
    Z2Form::from_matrix(m)
}

/// The standard choice of a form `psi` with
/// `psi(g1, g2) + psi(g2, g1) = beta(g1, g2)`: on basis vectors,
/// `psi(e_i, e_j) = beta(e_i, e_j)` when `i` comes after `j` in the given
/// linear order on vertices, and `0` otherwise.
///
/// `vertex_order` is a permutation of `0..n`; `vertex_order[k]` is the vertex
/// in position `k`.
pub fn psi_standard(q: &Quiver, vertex_order: &[usize]) -> Result<Z2Form> {
    let n = q.vertex_count();
    let pos = permutation_positions(n, vertex_order)?;
    let b = beta_form(q)?;
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if pos[i] > pos[j] {
                m[i][j] = b.entry(i, j);
            }
        }
    }
    Z2Form::from_matrix(m)
}

/// Check `psi(g1, g2) + psi(g2, g1) = beta(g1, g2)` on the standard basis,
/// which implies it everywhere by bilinearity.
pub fn satisfies_psi_property(psi: &Z2Form, q: &Quiver) -> Result<bool> {
    let b = beta_form(q)?;
    if psi.size() != b.size() {
        return Err(HallError::DimensionMismatch { expected: b.size(), got: psi.size() });
    }
    let n = b.size();
    for i in 0..n {
        for j in 0..n {
            if (psi.entry(i, j) ^ psi.entry(j, i)) != b.entry(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The quadratic function attached to a symmetric form `alpha`: decomposing
/// `g = e_{i_1} + ... + e_{i_n}`, sum `alpha(e_{i_s}, e_{i_t})` over the
/// pairs `s < t`. It satisfies `alpha(g, g') = delta(g+g') + delta(g) +
/// delta(g')` and vanishes on `0` and on every basis vector.
pub fn delta_fn(alpha: &Z2Form, g: &DimVector) -> Result<Sign> {
    if !alpha.is_symmetric() {
        return Err(HallError::Precondition("delta requires a symmetric Z/2 form".into()));
    }
    if g.len() != alpha.size() {
        return Err(HallError::DimensionMismatch { expected: alpha.size(), got: g.len() });
    }
    g.require_nonnegative()?;
    let n = g.len();
    let mut acc = 0i64;
    for i in 0..n {
        // pairs inside the e_i block: C(g_i, 2) of them
        let gi = g.get(i);
        if alpha.entry(i, i) {
            acc += gi * (gi - 1) / 2;
        }
        for j in (i + 1)..n {
            if alpha.entry(i, j) {
                acc += gi * g.get(j);
            }
        }
    }
    Ok(Sign::from_parity(acc))
}

/// The twist weight `l_i(tau) = tau^i - sum_j a_ij tau^j`.
pub fn l_weight(q: &Quiver, i: usize, tau: &DimVector) -> Result<i64> {
    q.check_len(tau)?;
    let mut acc = tau.get(i);
    for j in 0..q.vertex_count() {
        acc -= q.arrow_count(i, j) as i64 * tau.get(j);
    }
    Ok(acc)
}

/// `mu(tau, gamma) = (-1)^{sum_i gamma^i tau^i + sum_{i,j} a_ij gamma^i tau^j}`.
pub fn mu_sign(q: &Quiver, tau: &DimVector, gamma: &DimVector) -> Result<Sign> {
    q.check_len(tau)?;
    q.check_len(gamma)?;
    let n = q.vertex_count();
    let mut acc = 0i64;
    for i in 0..n {
        acc += gamma.get(i) * tau.get(i);
        for j in 0..n {
            acc += q.arrow_count(i, j) as i64 * gamma.get(i) * tau.get(j);
        }
    }
    Ok(Sign::from_parity(acc))
}

fn permutation_positions(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(HallError::DimensionMismatch { expected: n, got: order.len() });
    }
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(HallError::Precondition(format!(
                "vertex order {order:?} is not a permutation of 0..{n}"
            )));
        }
        pos[v] = k;
    }
    Ok(pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    #[test]
    fn euler_form_one_vertex_loops() {
        let q = Quiver::one_vertex(3);
        assert_eq!(euler_form(&q, &dv(&[2]), &dv(&[5])).unwrap(), -20);
    }

    #[test]
    fn euler_form_zero_argument() {
        let q = Quiver::new(vec![vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(euler_form(&q, &dv(&[0, 0]), &dv(&[3, -1])).unwrap(), 0);
    }

    #[test]
    fn euler_form_two_vertices() {
        let q = Quiver::new(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(euler_form(&q, &dv(&[1, 1]), &dv(&[1, 1])).unwrap(), -2);
    }

    #[test]
    fn euler_form_length_mismatch() {
        let q = Quiver::one_vertex(0);
        assert!(euler_form(&q, &dv(&[1, 2]), &dv(&[1])).is_err());
    }

    #[test]
    fn euler_form_bilinear() {
        let q = Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        let a = dv(&[2, -1]);
        let b = dv(&[1, 3]);
        let c = dv(&[0, 2]);
        let lhs = euler_form(&q, &a.add(&b), &c).unwrap();
        let rhs = euler_form(&q, &a, &c).unwrap() + euler_form(&q, &b, &c).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = euler_form(&q, &c, &a.add(&b)).unwrap();
        let rhs = euler_form(&q, &c, &a).unwrap() + euler_form(&q, &c, &b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(&Quiver::one_vertex(0), &dv(&[1])).unwrap(), Sign::Minus);
        assert_eq!(epsilon(&Quiver::one_vertex(0), &dv(&[0])).unwrap(), Sign::Plus);
        // chi = (1-2)*9 = -9, odd
        assert_eq!(epsilon(&Quiver::one_vertex(2), &dv(&[3])).unwrap(), Sign::Minus);
    }

    #[test]
    fn beta_vanishes_on_diagonal() {
        for m in 0..4 {
            let q = Quiver::one_vertex(m);
            for g in 0..5 {
                assert_eq!(beta(&q, &dv(&[g]), &dv(&[g])).unwrap(), Sign::Plus);
            }
        }
        let q = Quiver::new(vec![vec![1, 2], vec![2, 0]]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let g = dv(&[a, b]);
                assert_eq!(beta(&q, &g, &g).unwrap(), Sign::Plus);
            }
        }
    }

    #[test]
    fn beta_examples() {
        let q = Quiver::one_vertex(0);
        assert_eq!(beta(&q, &dv(&[0]), &dv(&[1])).unwrap(), Sign::Plus);
        // chi = 1, eps*eps = 1 -> even
        assert_eq!(beta(&q, &dv(&[1]), &dv(&[1])).unwrap(), Sign::Plus);
    }

    #[test]
    fn beta_rejects_asymmetric() {
        let q = Quiver::new(vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(
            beta(&q, &dv(&[1, 0]), &dv(&[0, 1])),
            Err(HallError::SymmetryRequired { .. })
        ));
    }

    #[test]
    fn psi_standard_property_holds() {
        let quivers = vec![
            Quiver::one_vertex(0),
            Quiver::one_vertex(2),
            Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap(),
            Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap(),
        ];
        for q in &quivers {
            let n = q.vertex_count();
            let order: Vec<usize> = (0..n).collect();
            let psi = psi_standard(q, &order).unwrap();
            assert!(satisfies_psi_property(&psi, q).unwrap());
            // psi(e_i, e_i) is even
            for i in 0..n {
                let ei = DimVector::unit(n, i);
                assert_eq!(psi.eval_sign(&ei, &ei).unwrap(), Sign::Plus);
            }
        }
    }

    #[test]
    fn psi_property_random_vectors() {
        let q = Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        let psi = psi_standard(&q, &[1, 0]).unwrap();
        // exhaustive over small vectors stands in for 100 random pairs
        for a in 0..4i64 {
            for b in 0..4i64 {
                for c in 0..4i64 {
                    for d in 0..4i64 {
                        let g1 = dv(&[a, b]);
                        let g2 = dv(&[c, d]);
                        let lhs = psi.eval(&g1, &g2).unwrap() ^ psi.eval(&g2, &g1).unwrap();
                        let rhs = !beta(&q, &g1, &g2).unwrap().is_positive();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_decomposition_identity() {
        // alpha = psi + psi' for two valid psi choices is symmetric
        let q = Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        let psi1 = psi_standard(&q, &[0, 1]).unwrap();
        let psi2 = psi_standard(&q, &[1, 0]).unwrap();
        let alpha = psi1.plus(&psi2).unwrap();
        assert!(alpha.is_symmetric());
        let n = 2;
        for i in 0..n {
            assert_eq!(delta_fn(&alpha, &DimVector::unit(n, i)).unwrap(), Sign::Plus);
        }
        assert_eq!(delta_fn(&alpha, &DimVector::zero(n)).unwrap(), Sign::Plus);
        for a in 0..4i64 {
            for b in 0..4i64 {
                for c in 0..4i64 {
                    for d in 0..4i64 {
                        let g1 = dv(&[a, b]);
                        let g2 = dv(&[c, d]);
                        let lhs = alpha.eval_sign(&g1, &g2).unwrap();
                        let rhs = delta_fn(&alpha, &g1.add(&g2)).unwrap()
                            * delta_fn(&alpha, &g1).unwrap()
                            * delta_fn(&alpha, &g2).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_rejects_asymmetric_form() {
        let mut m = vec![vec![false; 2]; 2];
        m[0][1] = true;
        let alpha = Z2Form::from_matrix(m).unwrap();
        assert!(delta_fn(&alpha, &dv(&[1, 1])).is_err());
    }

    #[test]
    fn l_weight_values() {
        for m in 0..4 {
            let q = Quiver::one_vertex(m);
            assert_eq!(l_weight(&q, 0, &dv(&[1])).unwrap(), 1 - m as i64);
            assert_eq!(l_weight(&q, 0, &dv(&[0])).unwrap(), 0);
        }
        let q = Quiver::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(l_weight(&q, 0, &dv(&[2, 3])).unwrap(), -3);
    }

    #[test]
    fn l_weight_additive() {
        let q = Quiver::new(vec![vec![0, 2], vec![2, 1]]).unwrap();
        let t1 = dv(&[1, -2]);
        let t2 = dv(&[3, 1]);
        for i in 0..2 {
            assert_eq!(
                l_weight(&q, i, &t1.add(&t2)).unwrap(),
                l_weight(&q, i, &t1).unwrap() + l_weight(&q, i, &t2).unwrap()
            );
        }
    }

    #[test]
    fn mu_sign_values() {
        let q0 = Quiver::one_vertex(0);
        assert_eq!(mu_sign(&q0, &dv(&[0]), &dv(&[5])).unwrap(), Sign::Plus);
        assert_eq!(mu_sign(&q0, &dv(&[1]), &dv(&[1])).unwrap(), Sign::Minus);
        let q1 = Quiver::one_vertex(1);
        assert_eq!(mu_sign(&q1, &dv(&[1]), &dv(&[1])).unwrap(), Sign::Plus);
    }

    #[test]
    fn mu_sign_biadditive() {
        let q = Quiver::new(vec![vec![1, 2], vec![2, 0]]).unwrap();
        let taus = [dv(&[1, 0]), dv(&[-1, 2]), dv(&[2, 1])];
        let gammas = [dv(&[1, 1]), dv(&[0, 3]), dv(&[2, -1])];
        for t1 in &taus {
            for t2 in &taus {
                for g in &gammas {
                    assert_eq!(
                        mu_sign(&q, &t1.add(t2), g).unwrap(),
                        mu_sign(&q, t1, g).unwrap() * mu_sign(&q, t2, g).unwrap()
                    );
                }
            }
        }
        for t in &taus {
            for g1 in &gammas {
                for g2 in &gammas {
                    assert_eq!(
                        mu_sign(&q, t, &g1.add(g2)).unwrap(),
                        mu_sign(&q, t, g1).unwrap() * mu_sign(&q, t, g2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn quiver_doc_roundtrip() {
        let q = Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let doc = q.to_doc_string();
        assert_eq!(Quiver::parse_doc(&doc).unwrap(), q);
        let doc = "# a comment\nvertices 1\narrows\n2\n";
        assert_eq!(Quiver::parse_doc(doc).unwrap(), Quiver::one_vertex(2));
        assert!(Quiver::parse_doc("arrows\n1\n").is_err());
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::from_parity(-3), Sign::Minus);
        assert_eq!(-Sign::Minus, Sign::Plus);
    }
}

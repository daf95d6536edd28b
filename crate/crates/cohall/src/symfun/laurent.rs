//! Symmetric Laurent polynomials in the torus variables `z[i,a]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{HallError, Result};
use crate::rat::Rat;
use crate::symfun::poly::{is_symmetric_map, mono_degree, term_string, Mono, MultiPoly};
use crate::symfun::vars::VarSpec;

/// A Laurent polynomial: exponent vectors may have negative entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    spec: VarSpec,
    terms: BTreeMap<Mono, Rat>,
}

impl LaurentPoly {
    pub fn zero(spec: &VarSpec) -> Self {
        LaurentPoly { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(spec: &VarSpec, c: Rat) -> Self {
        let mut p = LaurentPoly::zero(spec);
        if !c.is_zero() {
            p.terms.insert(vec![0; spec.total_vars()], c);
        }
        p
    }

    pub fn one(spec: &VarSpec) -> Self {
        LaurentPoly::constant(spec, Rat::one())
    }

    /// `z_v^e` for the flat variable `v` (any integer `e`).
    pub fn var_pow(spec: &VarSpec, v: usize, e: i32) -> Self {
        assert!(v < spec.total_vars());
        let mut mono = vec![0; spec.total_vars()];
        mono[v] = e;
        let mut p = LaurentPoly::zero(spec);
        p.terms.insert(mono, Rat::one());
        p
    }

    pub fn from_terms(spec: &VarSpec, terms: BTreeMap<Mono, Rat>) -> Self {
        let mut p = LaurentPoly::zero(spec);
        for (m, c) in terms {
            assert_eq!(m.len(), spec.total_vars(), "exponent vector length mismatch");
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

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        LaurentPoly { spec: self.spec.clone(), terms }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.spec);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        LaurentPoly { spec: self.spec.clone(), terms }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.spec, other.spec, "variable spec mismatch");
        let mut out = LaurentPoly::zero(&self.spec);
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(&self.spec);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn map_vars(&self, target: &VarSpec, var_map: &[usize]) -> LaurentPoly {
        assert_eq!(var_map.len(), self.spec.total_vars());
        let mut out = LaurentPoly::zero(target);
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

    /// Componentwise minimum exponent over the support (zero vector for 0).
    pub fn min_exponents(&self) -> Mono {
        let n = self.spec.total_vars();
        let mut min = vec![0i32; n];
        let mut first = true;
        for m in self.terms.keys() {
            for v in 0..n {
                if first || m[v] < min[v] {
                    min[v] = m[v];
                }
            }
            first = false;
        }
        min
    }

    /// Multiply by the monomial `z^shift`.
    pub fn shift(&self, shift: &Mono) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { spec: self.spec.clone(), terms }
    }

    /// Reinterpret as an ordinary polynomial; fails on negative exponents.
    pub fn to_multipoly(&self) -> Result<MultiPoly> {
        for m in self.terms.keys() {
            if m.iter().any(|&e| e < 0) {
                return Err(HallError::Precondition(
                    "Laurent polynomial has negative exponents".into(),
                ));
            }
        }
        Ok(MultiPoly::from_terms(&self.spec, self.terms.clone()))
    }

    pub fn from_multipoly(p: &MultiPoly) -> LaurentPoly {
        LaurentPoly { spec: p.spec().clone(), terms: p.terms().clone() }
    }

    /// Exact quotient in the Laurent ring: shift both operands into the
    /// polynomial ring, divide there, undo the shift.
    pub fn exact_divide(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(self.spec, den.spec, "variable spec mismatch");
        if den.is_zero() {
            return Err(HallError::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(&self.spec));
        }
        let mn = self.min_exponents();
        let md = den.min_exponents();
        let neg = |m: &Mono| -> Mono { m.iter().map(|&e| -e).collect() };
        let num_p = self.shift(&neg(&mn)).to_multipoly().expect("shift clears negatives");
        let den_p = den.shift(&neg(&md)).to_multipoly().expect("shift clears negatives");
        let q = num_p.exact_divide(&den_p)?;
        let back: Mono = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        Ok(LaurentPoly::from_multipoly(&q).shift(&back))
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
            let negc = c.is_negative();
            let abs = if negc { -c.clone() } else { c.clone() };
            if pos == 0 {
                if negc {
                    out.push('-');
                }
            } else if spaced {
                out.push_str(if negc { " - " } else { " + " });
            } else {
                out.push(if negc { '-' } else { '+' });
            }
            out.push_str(&term_string(&abs, m, &self.spec, 'z'));
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

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::DimVector;

    fn spec(counts: &[i64]) -> VarSpec {
        VarSpec::new(&DimVector::new(counts.to_vec())).unwrap()
    }

    #[test]
    fn laurent_arithmetic() {
        let s = spec(&[1]);
        let z = LaurentPoly::var_pow(&s, 0, 1);
        let zi = LaurentPoly::var_pow(&s, 0, -1);
        assert_eq!(z.mul(&zi), LaurentPoly::one(&s));
        let p = z.add(&zi);
        assert_eq!(p.mul(&p), z.pow(2).add(&LaurentPoly::constant(&s, crate::rat::rat_i(2))).add(&zi.pow(2)));
    }

    #[test]
    fn laurent_division_with_shifts() {
        let s = spec(&[2]);
        let z1 = LaurentPoly::var_pow(&s, 0, 1);
        let z2 = LaurentPoly::var_pow(&s, 1, 1);
        // (z2 - z1) * z1^-2 z2^-1 divided by (z2 - z1)
        let num = z2.sub(&z1).mul(&LaurentPoly::var_pow(&s, 0, -2)).mul(&LaurentPoly::var_pow(&s, 1, -1));
        let q = num.exact_divide(&z2.sub(&z1)).unwrap();
        assert_eq!(q, LaurentPoly::var_pow(&s, 0, -2).mul(&LaurentPoly::var_pow(&s, 1, -1)));
    }

    #[test]
    fn laurent_symmetry() {
        let s = spec(&[2]);
        let z1 = LaurentPoly::var_pow(&s, 0, -1);
        let z2 = LaurentPoly::var_pow(&s, 1, -1);
        assert!(z1.add(&z2).is_symmetric());
        assert!(!z1.is_symmetric());
    }

    #[test]
    fn printing_uses_z_names() {
        let s = spec(&[1]);
        let p = LaurentPoly::var_pow(&s, 0, -2).scale(&crate::rat::rat(3, 4));
        assert_eq!(p.to_canonical_string(), "3/4*z[0,1]^-2");
    }
}

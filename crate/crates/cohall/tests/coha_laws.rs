//! Algebra laws of the shuffle product: associativity, sign commutativity,
//! bidegree additivity, the star-product suite, and agreement with an
//! independently computed one-vertex kernel.

use cohall::coha::{bidegree, coha_mul, star_iso_delta, star_mul, CohaElem};
use cohall::linalg::RowSpace;
use cohall::quiver::{epsilon, euler_form, psi_standard};
use cohall::rat::{rat_i, Rat};
use cohall::sampler::Sampler;
use cohall::symfun::msym::{msym_labels, poly_msym_coords};
use cohall::symfun::poly::MultiPoly;
use cohall::symfun::vars::VarSpec;
use cohall::{DimVector, Quiver};

fn dv(v: &[i64]) -> DimVector {
    DimVector::new(v.to_vec())
}

fn test_quivers() -> Vec<Quiver> {
    vec![
        Quiver::one_vertex(0),
        Quiver::one_vertex(1),
        Quiver::one_vertex(2),
        Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap(),
        Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap(),
    ]
}

fn random_elem(sampler: &mut Sampler, q: &Quiver, gamma: &DimVector, max_deg: i64) -> CohaElem {
    let spec = VarSpec::new(gamma).unwrap();
    CohaElem::new(q.clone(), gamma.clone(), sampler.sym_poly(&spec, max_deg, 2)).unwrap()
}

/// Split a total grade into three random summands.
fn random_triple_grades(sampler: &mut Sampler, n: usize, per_vertex: i64) -> [DimVector; 3] {
    let mut parts = [vec![0i64; n], vec![0i64; n], vec![0i64; n]];
    for v in 0..n {
        let total = sampler.int(1, per_vertex);
        for _ in 0..total {
            let k = sampler.int(0, 2) as usize;
            parts[k][v] += 1;
        }
    }
    [dv(&parts[0]), dv(&parts[1]), dv(&parts[2])]
}

/// Split a total grade into two random summands.
fn random_pair_grades(sampler: &mut Sampler, n: usize, per_vertex: i64) -> [DimVector; 2] {
    let mut parts = [vec![0i64; n], vec![0i64; n]];
    for v in 0..n {
        let total = sampler.int(1, per_vertex);
        for _ in 0..total {
            let k = sampler.int(0, 1) as usize;
            parts[k][v] += 1;
        }
    }
    [dv(&parts[0]), dv(&parts[1])]
}

#[test]
fn associativity_on_random_triples() {
    let mut sampler = Sampler::new(2024);
    for q in test_quivers() {
        let n = q.vertex_count();
        for _ in 0..6 {
            let [g1, g2, g3] = random_triple_grades(&mut sampler, n, 3);
            let f1 = random_elem(&mut sampler, &q, &g1, 3);
            let f2 = random_elem(&mut sampler, &q, &g2, 3);
            let f3 = random_elem(&mut sampler, &q, &g3, 3);
            let lhs = coha_mul(&coha_mul(&f1, &f2).unwrap(), &f3).unwrap();
            let rhs = coha_mul(&f1, &coha_mul(&f2, &f3).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "associativity failed: g=({g1}),({g2}),({g3})");
        }
    }
}

#[test]
fn sign_commutativity() {
    let mut sampler = Sampler::new(99);
    for q in test_quivers() {
        assert!(q.is_symmetric());
        let n = q.vertex_count();
        for _ in 0..8 {
            let [g1, g2] = random_pair_grades(&mut sampler, n, 3);
            let f1 = random_elem(&mut sampler, &q, &g1, 3);
            let f2 = random_elem(&mut sampler, &q, &g2, 3);
            let lhs = coha_mul(&f1, &f2).unwrap();
            let mut rhs = coha_mul(&f2, &f1).unwrap();
            if euler_form(&q, &g1, &g2).unwrap().rem_euclid(2) == 1 {
                rhs = rhs.scale(&-Rat::from_integer(1.into()));
            }
            assert_eq!(lhs, rhs);
        }
    }
}

/// Independent route for the one-vertex kernel `(x'' - x')^{m-1}`: every
/// shuffle term is put over the common denominator of all ordered variable
/// pairs, so the sign bookkeeping of the main path is not reused.
fn one_vertex_mul_reference(m: u32, f1: &CohaElem, f2: &CohaElem) -> MultiPoly {
    let g1 = f1.gamma().get(0) as usize;
    let g2 = f2.gamma().get(0) as usize;
    let total = g1 + g2;
    let spec = VarSpec::new(&dv(&[total as i64])).unwrap();
    // common denominator: product of (x_b - x_a) over all ordered pairs a != b
    let mut common = MultiPoly::one(&spec);
    for a in 0..total {
        for b in 0..total {
            if a != b {
                common = common.mul(&MultiPoly::var_diff(&spec, b, a));
            }
        }
    }
    let mut acc = MultiPoly::zero(&spec);
    for sh in cohall::symfun::shuffle::shuffles(g1, g2) {
        let map1: Vec<usize> = sh.first.clone();
        let map2: Vec<usize> = sh.second.clone();
        let mut term = f1.poly().map_vars(&spec, &map1).mul(&f2.poly().map_vars(&spec, &map2));
        // kernel numerator (x'' - x')^m over chosen pairs
        for &a in &sh.first {
            for &b in &sh.second {
                let diff = MultiPoly::var_diff(&spec, b, a);
                for _ in 0..m {
                    term = term.mul(&diff);
                }
            }
        }
        // complete the term's denominator to the common one: multiply by
        // every ordered-pair factor except (first, second) pairs
        for a in 0..total {
            for b in 0..total {
                if a == b {
                    continue;
                }
                let is_denominator_pair =
                    sh.first.contains(&a) && sh.second.contains(&b);
                if !is_denominator_pair {
                    term = term.mul(&MultiPoly::var_diff(&spec, b, a));
                }
            }
        }
        acc = acc.add(&term);
    }
    acc.exact_divide(&common).unwrap()
}

#[test]
fn one_vertex_kernel_matches_reference() {
    let mut sampler = Sampler::new(7);
    for m in 0..4u32 {
        let q = Quiver::one_vertex(m);
        for (a, b) in [(0i64, 1i64), (1, 1), (1, 2), (2, 1), (3, 0)] {
            let f1 = random_elem(&mut sampler, &q, &dv(&[a]), 3);
            let f2 = random_elem(&mut sampler, &q, &dv(&[b]), 3);
            let product = coha_mul(&f1, &f2).unwrap();
            let reference = one_vertex_mul_reference(m, &f1, &f2);
            assert_eq!(product.poly(), &reference, "m={m} grades {a},{b}");
        }
    }
}

#[test]
fn bidegree_additivity() {
    let q = Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
    let g1 = dv(&[1, 0]);
    let g2 = dv(&[1, 1]);
    let s1 = VarSpec::new(&g1).unwrap();
    let s2 = VarSpec::new(&g2).unwrap();
    // homogeneous inputs
    let f1 = CohaElem::new(q.clone(), g1, MultiPoly::var(&s1, 0).pow(2)).unwrap();
    let f2 = CohaElem::new(
        q.clone(),
        g2,
        MultiPoly::var(&s2, 0).mul(&MultiPoly::var(&s2, 1)),
    )
    .unwrap();
    let p = coha_mul(&f1, &f2).unwrap();
    if !p.is_zero() {
        let lhs = bidegree(&p).unwrap();
        let rhs = bidegree(&f1).unwrap().add(&bidegree(&f2).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn star_supercommutativity_and_associativity() {
    let mut sampler = Sampler::new(4242);
    for q in [Quiver::one_vertex(2), Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap()] {
        let n = q.vertex_count();
        let order: Vec<usize> = (0..n).collect();
        let psi = psi_standard(&q, &order).unwrap();
        for _ in 0..6 {
            let [g1, g2] = random_pair_grades(&mut sampler, n, 3);
            let f1 = random_elem(&mut sampler, &q, &g1, 2);
            let f2 = random_elem(&mut sampler, &q, &g2, 2);
            let lhs = star_mul(&f1, &f2, &psi).unwrap();
            let mut rhs = star_mul(&f2, &f1, &psi).unwrap();
            let e1 = !epsilon(&q, &g1).unwrap().is_positive();
            let e2 = !epsilon(&q, &g2).unwrap().is_positive();
            if e1 && e2 {
                rhs = rhs.scale(&-Rat::from_integer(1.into()));
            }
            assert_eq!(lhs, rhs, "supercommutativity");
        }
        for _ in 0..4 {
            let [g1, g2, g3] = random_triple_grades(&mut sampler, n, 2);
            let f1 = random_elem(&mut sampler, &q, &g1, 2);
            let f2 = random_elem(&mut sampler, &q, &g2, 2);
            let f3 = random_elem(&mut sampler, &q, &g3, 2);
            let lhs = star_mul(&star_mul(&f1, &f2, &psi).unwrap(), &f3, &psi).unwrap();
            let rhs = star_mul(&f1, &star_mul(&f2, &f3, &psi).unwrap(), &psi).unwrap();
            assert_eq!(lhs, rhs, "star associativity");
        }
    }
}

#[test]
fn delta_iso_intertwines_two_psi_choices() {
    let mut sampler = Sampler::new(31);
    let q = Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
    let psi1 = psi_standard(&q, &[0, 1]).unwrap();
    let psi2 = psi_standard(&q, &[1, 0]).unwrap();
    let alpha = psi1.plus(&psi2).unwrap();
    assert!(alpha.is_symmetric());
    for _ in 0..8 {
        let [g1, g2] = random_pair_grades(&mut sampler, 2, 3);
        let f1 = random_elem(&mut sampler, &q, &g1, 2);
        let f2 = random_elem(&mut sampler, &q, &g2, 2);
        let lhs = star_iso_delta(&alpha, &star_mul(&f1, &f2, &psi1).unwrap()).unwrap();
        let rhs = star_mul(
            &star_iso_delta(&alpha, &f1).unwrap(),
            &star_iso_delta(&alpha, &f2).unwrap(),
            &psi2,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn one_sided_ideals_are_two_sided_at_desk_scale() {
    // span of products g*f equals span of f*g over a spanning set of g
    let q = Quiver::one_vertex(2);
    let gf = dv(&[1]);
    let spec_f = VarSpec::new(&gf).unwrap();
    let f = CohaElem::new(q.clone(), gf.clone(), MultiPoly::var(&spec_f, 0)).unwrap();
    let gd = dv(&[1]);
    let spec_d = VarSpec::new(&gd).unwrap();
    let target_deg_bound = 6i64;
    let target = gf.add(&gd);
    let target_spec = VarSpec::new(&target).unwrap();
    let mut labels = Vec::new();
    for d in 0..=target_deg_bound {
        labels.extend(msym_labels(&target_spec, d));
    }
    let index: std::collections::BTreeMap<_, _> =
        labels.iter().enumerate().map(|(n, l)| (l.clone(), n)).collect();
    let mut left = RowSpace::new(labels.len());
    let mut right = RowSpace::new(labels.len());
    for d in 0..4i64 {
        for b in msym_labels(&spec_d, d) {
            let g = CohaElem::new(
                q.clone(),
                gd.clone(),
                cohall::symfun::msym::msym_poly(&spec_d, &b),
            )
            .unwrap();
            for (space, prod) in [
                (&mut left, coha_mul(&g, &f).unwrap()),
                (&mut right, coha_mul(&f, &g).unwrap()),
            ] {
                if prod.is_zero() {
                    continue;
                }
                let mut row = vec![rat_i(0); labels.len()];
                for (label, c) in poly_msym_coords(prod.poly()).unwrap() {
                    row[index[&label]] = c;
                }
                space.insert(row);
            }
        }
    }
    assert_eq!(left.rank(), right.rank());
    // mutual containment: every left row lies in the right span
    for d in 0..4i64 {
        for b in msym_labels(&spec_d, d) {
            let g = CohaElem::new(
                q.clone(),
                gd.clone(),
                cohall::symfun::msym::msym_poly(&spec_d, &b),
            )
            .unwrap();
            let prod = coha_mul(&g, &f).unwrap();
            if prod.is_zero() {
                continue;
            }
            let mut row = vec![rat_i(0); labels.len()];
            for (label, c) in poly_msym_coords(prod.poly()).unwrap() {
                row[index[&label]] = c;
            }
            assert!(right.contains(row));
        }
    }
}

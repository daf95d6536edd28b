//! Shared fixtures for the kernel benchmarks.

use cohall::coha::CohaElem;
use cohall::kha::KhaElem;
use cohall::sampler::Sampler;
use cohall::symfun::vars::VarSpec;
use cohall::{DimVector, Quiver};

pub fn dense_two_vertex() -> Quiver {
    Quiver::new(vec![vec![1, 2], vec![2, 1]]).unwrap()
}

pub fn sample_elem(q: &Quiver, gamma: &[i64], max_deg: i64, seed: u64) -> CohaElem {
    let g = DimVector::new(gamma.to_vec());
    let spec = VarSpec::new(&g).unwrap();
    let mut sampler = Sampler::new(seed);
    CohaElem::new(q.clone(), g, sampler.sym_poly(&spec, max_deg, 3)).unwrap()
}

pub fn sample_kha_elem(q: &Quiver, gamma: &[i64], seed: u64) -> KhaElem {
    let g = DimVector::new(gamma.to_vec());
    let spec = VarSpec::new(&g).unwrap();
    let mut sampler = Sampler::new(seed);
    KhaElem::new(q.clone(), g, sampler.sym_laurent(&spec, -2, 2, 3)).unwrap()
}

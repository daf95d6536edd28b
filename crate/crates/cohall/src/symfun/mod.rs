//! Exact multivariate polynomial, Laurent-polynomial and truncated
//! power-series arithmetic over the rationals, with per-vertex variable
//! groups and shuffle enumeration.

pub mod laurent;
pub mod msym;
pub mod parse;
pub mod poly;
pub mod series;
pub mod shuffle;
pub mod vars;

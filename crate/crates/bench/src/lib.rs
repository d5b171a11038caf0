//! Inputs shared by the benchmarks.

use csf_core::free_algebra::{enumerate_words, Space};
use csf_core::relation_engine::{csf_generators, LinearSystem};
use csf_core::{Poly, Word};

/// Every word of `Ȟ¹` of degree `d`, as polynomials.
pub fn check_h1(d: usize) -> Vec<Poly> {
    enumerate_words(d, Space::CheckH1).into_iter().map(Poly::from).collect()
}

/// The alternating word `xyxy…` of length `len`, ending in `y` when `len` is even.
pub fn alternating(len: usize) -> Word {
    let s: String = (0..len).map(|i| if i % 2 == 0 { 'x' } else { 'y' }).collect();
    s.parse().expect("alternating word")
}

/// The system whose rank is the table entry at `(d + n, n)`.
pub fn csf_system(n: usize, d: usize) -> LinearSystem {
    LinearSystem::new(d + n, csf_generators(n, d)).expect("homogeneous generators")
}

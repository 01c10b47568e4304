//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsorlab::cohomology::{binorm_character_module, group_from_spec, GModule};
use torsorlab::limits::Limits;
use torsorlab::IntegerMatrix;

/// A seeded `rows × cols` matrix with entries in `[−bound, bound]`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntegerMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntegerMatrix::from_i64(rows, cols, &e)
}

pub fn trivial_module(spec: &str) -> GModule {
    GModule::trivial(group_from_spec(spec, &Limits::default()).expect("group spec"), 1)
}

/// The binorm character module over `cyclic:a × cyclic:b`.
pub fn binorm_module(a: usize, b: usize) -> GModule {
    let l = Limits::default();
    let g1 = group_from_spec(&format!("cyclic:{a}"), &l).expect("group spec");
    let g2 = group_from_spec(&format!("cyclic:{b}"), &l).expect("group spec");
    binorm_character_module(&g1, &g2).expect("binorm module").module
}

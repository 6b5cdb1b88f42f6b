#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tubedef_core::band::parse_band;
use tubedef_core::fixtures::klein4;
use tubedef_core::{BandModuleSpec, BoundAlgebra, Field, Matrix, Representation};

/// Number of vertexwise linear maps `v -> w` commuting with every arrow,
/// counted by enumerating all candidates over a prime field.
pub fn brute_force_hom_count(v: &Representation, w: &Representation) -> u64 {
    let f = v.field();
    let p = f.characteristic();
    assert!(p > 0, "brute force needs a finite field");
    let q = v.algebra().quiver();
    let shapes: Vec<(usize, usize)> = (0..q.num_vertices()).map(|x| (w.dim_at(x), v.dim_at(x))).collect();
    let n: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = p.pow(n as u32);
    let mut count = 0;
    for code in 0..total {
        let mut digits = code;
        let blocks: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| {
                Matrix::from_fn(f, r, c, |_, _| {
                    let d = digits % p;
                    digits /= p;
                    f.from_i64(d as i64)
                })
            })
            .collect();
        if q.arrows().iter().enumerate().all(|(k, a)| &blocks[a.target] * v.action(k) == w.action(k) * &blocks[a.source]) {
            count += 1;
        }
    }
    count
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_module(alg: &Arc<BoundAlgebra>, dims: Vec<usize>, seed: u64) -> Representation {
    Representation::random(Arc::clone(alg), dims, &mut rng(seed))
}

pub fn klein_band(f: Field, lambda: i64, m: usize) -> Representation {
    let alg = klein4(f);
    let band = parse_band("a b^-", &alg).unwrap();
    tubedef_core::band::band_module(&BandModuleSpec { band, lambda: f.from_i64(lambda), m }).unwrap()
}

/// Random invertible change of basis at every vertex.
pub fn random_basis_change(v: &Representation, seed: u64) -> Vec<Matrix> {
    let mut r = rng(seed);
    v.dims()
        .iter()
        .map(|&d| loop {
            let m = Matrix::random_with(&mut r, v.field(), d, d);
            if m.is_invertible() {
                break m;
            }
        })
        .collect()
}

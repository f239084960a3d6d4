//! Random numeric four-dimensional Lie algebras for randomized checks.

use std::collections::BTreeMap;

use rand::Rng;

use super::{catalog, ExtensionSpec, LieAlgebra};
use crate::exactmath::{FracMatrix, Rat, RatFunc};

fn small_rat(rng: &mut impl Rng) -> RatFunc {
    let n: i64 = rng.gen_range(-3..=3);
    let d: i64 = rng.gen_range(1..=2);
    RatFunc::frac(n, d)
}

/// Random invertible integer matrix with entries in `-2..=2`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> FracMatrix {
    loop {
        let rows: Vec<Vec<RatFunc>> = (0..n)
            .map(|_| (0..n).map(|_| RatFunc::int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = FracMatrix::from_rows(rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn random_catalog(rng: &mut impl Rng) -> LieAlgebra {
    let names = ["g_tau", "g2+g2", "g4_1", "g4_2", "g4_9", "g4_10", "g4_11", "h3+a1"];
    let name = names[rng.gen_range(0..names.len())];
    let mut p = BTreeMap::new();
    for key in ["tau", "alpha", "beta"] {
        p.insert(key.to_string(), small_rat(rng));
    }
    catalog(name, &p).expect("catalog entry")
}

fn random_triangular(rng: &mut impl Rng) -> LieAlgebra {
    // dφ2, dφ3 in ⟨φ12, φ13⟩; dφ4 = p φ12 + q φ13 + (a + d) φ14 + r φ23
    let (a, b, c, d) = (small_rat(rng), small_rat(rng), small_rat(rng), small_rat(rng));
    let (p, q, r) = (small_rat(rng), small_rat(rng), small_rat(rng));
    let t = vec![
        (1, 0, 1, a.clone()),
        (1, 0, 2, b),
        (2, 0, 1, c),
        (2, 0, 2, d.clone()),
        (3, 0, 1, p),
        (3, 0, 2, q),
        (3, 0, 3, &a + &d),
        (3, 1, 2, r),
    ];
    LieAlgebra::from_coframe(4, &t).expect("in range")
}

fn random_extension(rng: &mut impl Rng) -> LieAlgebra {
    if rng.gen_bool(0.5) {
        let rows = (0..3).map(|_| (0..3).map(|_| small_rat(rng)).collect()).collect();
        ExtensionSpec { base: LieAlgebra::abelian(3), derivations: vec![FracMatrix::from_rows(rows)] }
            .build()
            .expect("any endomorphism of an abelian algebra is a derivation")
    } else {
        // derivations of h3 with [h1, h2] = h3
        let (a, b, c, d, e, f) = (
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
        );
        let z = RatFunc::zero();
        let m = FracMatrix::from_rows(vec![
            vec![a.clone(), b, z.clone()],
            vec![c, d.clone(), z],
            vec![e, f, &a + &d],
        ]);
        let h3 = catalog("h3", &BTreeMap::new()).expect("catalog entry");
        ExtensionSpec { base: h3, derivations: vec![m] }.build().expect("derivation of h3")
    }
}

/// A random numeric four-dimensional Lie algebra, expressed in a random basis.
pub fn random_valid_algebra(rng: &mut impl Rng) -> LieAlgebra {
    let l = match rng.gen_range(0..3) {
        0 => random_catalog(rng),
        1 => random_triangular(rng),
        _ => random_extension(rng),
    };
    let p = random_invertible(rng, 4);
    let out = l.change_basis(&p).expect("invertible");
    debug_assert!(out.is_lie());
    out
}

/// Random rational in `[-bound, bound]` with denominator at most `den`.
pub fn random_rat(rng: &mut impl Rng, bound: i64, den: i64) -> Rat {
    let d = rng.gen_range(1..=den);
    Rat::new(rng.gen_range(-bound * d..=bound * d), d)
}

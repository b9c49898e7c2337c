//! Shared helpers for the benchmark targets.

use lefdisc_core::exactmath::{Monomial, MultiPoly, PolyMatrix, Rational};

/// Deterministic pseudo-random polynomial matrix with small integer
/// coefficients; `state` seeds a tiny LCG so benches need no RNG crates
/// at library level.
pub fn seeded_matrix(dim: usize, num_vars: usize, state: &mut u64) -> PolyMatrix {
    let next = move |state: &mut u64| {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*state >> 33) as i64
    };
    let mut m = PolyMatrix::zero(dim, dim, num_vars);
    for i in 0..dim {
        for j in 0..dim {
            let terms = (0..2).map(|_| {
                let exps: Vec<u32> = (0..num_vars).map(|_| (next(state) % 2) as u32).collect();
                (
                    Monomial::new(exps),
                    Rational::from_integer((next(state) % 7 - 3).into()),
                )
            });
            m.set(i, j, MultiPoly::from_terms(num_vars, terms));
        }
    }
    m
}

/// Skew-symmetrize helper for pfaffian benches.
pub fn seeded_skew(dim: usize, num_vars: usize, state: &mut u64) -> PolyMatrix {
    let base = seeded_matrix(dim, num_vars, state);
    let mut m = PolyMatrix::zero(dim, dim, num_vars);
    for i in 0..dim {
        for j in i + 1..dim {
            let p = base.at(i, j).clone();
            m.set(j, i, -&p);
            m.set(i, j, p);
        }
    }
    m
}

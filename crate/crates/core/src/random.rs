//! Seeded generators of random exact instances.
//!
//! Every generator takes an explicit RNG; [`trial_rng`] derives an
//! independent stream per trial so parallel and sequential runs draw the same
//! instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{int, Matrix, Subspace, Vector};
use crate::polycore::VForm;

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| int(small_int(rng, bound))).collect()
}

/// A random nonzero vector.
pub fn random_nonzero_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    loop {
        let v = random_vector(rng, n, bound);
        if v.iter().any(|x| *x != int(0)) {
            return v;
        }
    }
}

/// Random subspace of exactly dimension `d` (`d ≤ n`).
pub fn random_subspace_of_dim<R: Rng>(rng: &mut R, n: usize, d: usize) -> Subspace {
    assert!(d <= n);
    loop {
        let vs = (0..d).map(|_| random_vector(rng, n, 3)).collect();
        let s = Subspace::span(n, vs).expect("lengths match");
        if s.dim() == d {
            return s;
        }
    }
}

/// Random subspace with dimension drawn uniformly from `0..=n`.
pub fn random_subspace<R: Rng>(rng: &mut R, n: usize) -> Subspace {
    let d = rng.random_range(0..=n);
    random_subspace_of_dim(rng, n, d)
}

/// Subspace spanned by random vectors drawn from a few sparse coordinate
/// patterns; these hit non-generic positions (e.g. `A^{ωω} ≠ A`) far more
/// often than dense random subspaces.
pub fn random_sparse_subspace<R: Rng>(rng: &mut R, n: usize) -> Subspace {
    let count = rng.random_range(0..=n.min(4));
    let vs = (0..count)
        .map(|_| {
            let mut v = vec![int(0); n];
            let support = rng.random_range(1..=2.min(n));
            for _ in 0..support {
                let i = rng.random_range(0..n);
                v[i] = int(small_int(rng, 2));
            }
            v
        })
        .collect();
    Subspace::span(n, vs).expect("lengths match")
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = small_int(rng, bound);
            m.set(i, j, int(x));
            m.set(j, i, int(-x));
        }
    }
    m
}

/// Random `V`-valued form on `Qⁿ` with `k` components (possibly degenerate).
pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> VForm {
    let comps = (0..k).map(|_| random_skew(rng, n, 2)).collect();
    VForm::new(n, comps).expect("skew by construction")
}

/// Random nondegenerate form with `n ≤ max_n`, `k ≤ max_k`. Sparse components
/// are mixed in so that orthogonals are often nontrivial.
pub fn random_nondegenerate_form<R: Rng>(rng: &mut R, max_n: usize, max_k: usize) -> VForm {
    loop {
        let n = rng.random_range(1..=max_n);
        let k = rng.random_range(1..=max_k);
        let sparse = rng.random_bool(0.5);
        let comps = (0..k)
            .map(|_| {
                let mut m = random_skew(rng, n, 2);
                if sparse {
                    for i in 0..n {
                        for j in (i + 1)..n {
                            if rng.random_bool(0.6) {
                                m.set(i, j, int(0));
                                m.set(j, i, int(0));
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let form = VForm::new(n, comps).expect("skew by construction");
        if form.is_nondegenerate() {
            return form;
        }
    }
}

/// Random `rows × cols` matrix of full row rank (`rows ≤ cols`).
pub fn random_surjection<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    assert!(rows <= cols);
    loop {
        let m = Matrix::from_rows(cols, (0..rows).map(|_| random_vector(rng, cols, 2)).collect())
            .expect("lengths match");
        if m.rank() == rows {
            return m;
        }
    }
}

//! Instance generators.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, which is
//! portable and stable across platforms, so a seed names the same matrix
//! everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixKind {
    /// Each cell is 1 independently with probability `density`.
    RandomDensity { m: usize, n: usize, density: f64 },
    /// Boolean OR of `k` random rectangles; each row (column) joins a
    /// rectangle with probability 1/2, with one forced in if none did.
    RectangleSum { m: usize, n: usize, k: usize },
    Identity { n: usize },
    ComplementIdentity { n: usize },
}

impl MatrixKind {
    pub fn dims(&self) -> (usize, usize) {
        match *self {
            MatrixKind::RandomDensity { m, n, .. } | MatrixKind::RectangleSum { m, n, .. } => {
                (m, n)
            }
            MatrixKind::Identity { n } | MatrixKind::ComplementIdentity { n } => (n, n),
        }
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate_matrix(kind: &MatrixKind, seed: u64) -> Result<BoolMatrix> {
    let (m, n) = kind.dims();
    if m == 0 || n == 0 {
        return Err(Error::Usage(format!("dimensions must be positive, got {m}x{n}")));
    }
    let mut rng = rng_for(seed);
    match *kind {
        MatrixKind::RandomDensity { density, .. } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(Error::Usage(format!("density {density} is outside [0, 1]")));
            }
            BoolMatrix::from_fn(m, n, |_, _| rng.gen_bool(density))
        }
        MatrixKind::RectangleSum { k, .. } => {
            let mut out = BoolMatrix::zeros(m, n)?;
            for _ in 0..k {
                let rows = random_subset(&mut rng, m);
                let cols = random_subset(&mut rng, n);
                for &i in &rows {
                    for &j in &cols {
                        out.set(i, j, true);
                    }
                }
            }
            Ok(out)
        }
        MatrixKind::Identity { n } => BoolMatrix::identity(n),
        MatrixKind::ComplementIdentity { n } => BoolMatrix::from_fn(n, n, |i, j| i != j),
    }
}

fn random_subset(rng: &mut ChaCha8Rng, size: usize) -> Vec<usize> {
    let mut set: Vec<usize> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
    if set.is_empty() {
        set.push(rng.gen_range(0..size));
    }
    set
}

/// Every `m x n` Boolean matrix, in order of its row-major bit pattern.
pub fn all_matrices(m: usize, n: usize) -> Result<impl Iterator<Item = BoolMatrix>> {
    if m == 0 || n == 0 {
        return Err(Error::Usage(format!("dimensions must be positive, got {m}x{n}")));
    }
    if m * n > 24 {
        return Err(Error::ResourceLimit {
            what: "cell count for exhaustive enumeration",
            actual: m * n,
            cap: 24,
        });
    }
    Ok((0u64..1 << (m * n)).map(move |bits| BoolMatrix::from_bits(m, n, bits).expect("fits")))
}

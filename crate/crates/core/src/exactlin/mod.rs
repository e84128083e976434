//! Exact scalar and matrix arithmetic over `Q` and `F_p`.

mod field;
mod matrix;
pub mod poly;
mod span;

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub use field::{Field, Scalar, ScalarDisplay, DEFAULT_PRIME, MAX_PRIME, RATIONAL_SAMPLE_RADIUS};
pub use field::uniform_below;
pub use matrix::{Echelon, Mat, Solution};
pub use span::{Membership, RowEchelon, SpanTracker};

/// Generator behind every randomized routine: ChaCha8 seeded from a `u64`.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with a stream label so sub-computations draw independent,
/// reproducible streams (splitmix64 finaliser).
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rank(m: &Mat) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Mat) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn solve_linear(m: &Mat, b: &[Scalar]) -> Result<Option<Solution>, crate::error::LinAlgError> {
    m.solve_linear(b)
}

/// An invertible element of a span of square matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibleWitness {
    pub coefficients: Vec<Scalar>,
    pub matrix: Mat,
    pub determinant: Scalar,
}

/// Search the span of `basis` for an invertible matrix.
///
/// Each basis element is tried on its own first, then `trials` seeded random
/// combinations. `None` is inconclusive: it does not prove the span is
/// singular.
pub fn find_invertible_in_span(basis: &[Mat], trials: usize, seed: u64) -> Option<InvertibleWitness> {
    let first = basis.first()?;
    let field = first.field();
    let n = first.rows();
    assert!(basis.iter().all(|m| m.is_square() && m.rows() == n), "span basis must be square of equal size");
    if n == 0 {
        return Some(InvertibleWitness {
            coefficients: basis.iter().enumerate().map(|(i, _)| if i == 0 { field.one() } else { field.zero() }).collect(),
            matrix: Mat::zeros(field, 0, 0),
            determinant: field.one(),
        });
    }
    let check = |coefficients: Vec<Scalar>| {
        let mut m = Mat::zeros(field, n, n);
        for (c, b) in coefficients.iter().zip(basis) {
            m.add_scaled(*c, b);
        }
        let det = m.determinant();
        (!field.is_zero(det)).then_some(InvertibleWitness { coefficients, matrix: m, determinant: det })
    };
    for i in 0..basis.len() {
        let unit = (0..basis.len()).map(|j| if i == j { field.one() } else { field.zero() }).collect();
        if let Some(w) = check(unit) {
            return Some(w);
        }
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..trials {
        let coeffs = basis.iter().map(|_| field.random(&mut rng)).collect();
        if let Some(w) = check(coeffs) {
            return Some(w);
        }
    }
    None
}

//! The alternating expression g_n and the degree criterion built on it.
//!
//! g_n(x, y_1, ..., y_n) = sum over all permutations d of {0..n} of
//! sign(d) x^{d(0)} y_1 x^{d(1)} ... y_n x^{d(n)}.
//!
//! It vanishes for every substitution of the y's exactly when the powers
//! x^0..x^n are linearly dependent, i.e. when x is algebraic of degree <= n
//! over the ground field. That makes "the first n where g_n dies" a reading
//! of the algebraic degree, which `degree_via_gn` exploits.

use crate::matrix::{ExactMatrix, MatrixError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Structural descriptor of g_n: n y-slots, (n+1)! terms over the symmetric
/// group of {0..n}, each term signed by permutation parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GnIdentity {
    n: usize,
}

impl GnIdentity {
    /// n >= 1.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "g_n needs at least one y slot");
        assert!(n <= 20, "term bookkeeping overflows beyond n = 20");
        GnIdentity { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// (n+1)!
    pub fn term_count(&self) -> u128 {
        (1..=self.n as u128 + 1).product()
    }
}

/// Visit every permutation of {0..k-1} together with its sign. Heap's
/// algorithm: consecutive outputs differ by one transposition, so the sign
/// simply alternates.
fn for_each_signed_permutation(k: usize, mut visit: impl FnMut(&[usize], i32)) {
    let mut items: Vec<usize> = (0..k).collect();
    let mut counters = vec![0usize; k];
    let mut sign = 1i32;
    visit(&items, sign);
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(counters[i], i);
            }
            sign = -sign;
            visit(&items, sign);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

fn check_gn_inputs(n: usize, x: &ExactMatrix, ys: &[ExactMatrix]) -> Result<usize, MatrixError> {
    if !x.is_square() {
        return Err(MatrixError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if ys.len() != n {
        return Err(MatrixError::ShapeMismatch {
            op: "gn_eval",
            left: (n, 0),
            right: (ys.len(), 0),
        });
    }
    for y in ys {
        if y.rows() != x.rows() || y.cols() != x.cols() {
            return Err(MatrixError::ShapeMismatch {
                op: "gn_eval",
                left: (x.rows(), x.cols()),
                right: (y.rows(), y.cols()),
            });
        }
        if y.spec() != x.spec() {
            return Err(MatrixError::SpecMismatch {
                left: x.spec().to_string(),
                right: y.spec().to_string(),
            });
        }
    }
    Ok(x.rows())
}

fn x_powers(n: usize, x: &ExactMatrix) -> Result<Vec<ExactMatrix>, MatrixError> {
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(ExactMatrix::identity(x.spec().clone(), x.rows()));
    for _ in 0..n {
        powers.push(powers.last().unwrap().mul(x)?);
    }
    Ok(powers)
}

/// Reference evaluator: the literal alternating sum over all (n+1)!
/// permutations. Exponential; kept as the oracle for the fast route.
pub fn gn_eval_naive(
    n: usize,
    x: &ExactMatrix,
    ys: &[ExactMatrix],
) -> Result<ExactMatrix, MatrixError> {
    let m = check_gn_inputs(n, x, ys)?;
    let powers = x_powers(n, x)?;
    let mut acc = ExactMatrix::zero(x.spec().clone(), m, m);
    for_each_signed_permutation(n + 1, |perm, sign| {
        let mut term = powers[perm[0]].clone();
        for (i, y) in ys.iter().enumerate() {
            term = term
                .mul(y)
                .and_then(|t| t.mul(&powers[perm[i + 1]]))
                .expect("validated shapes");
        }
        let signed = if sign > 0 { term } else { term.neg() };
        acc = acc.add(&signed).expect("validated shapes");
    });
    Ok(acc)
}

/// Fast evaluator by dynamic programming over exponent subsets.
///
/// A term is built left to right; after consuming y_k its x-exponents so far
/// form a (k+1)-element subset S of {0..n}, and the permutation sign factors
/// through insertion order: appending exponent e after the set S contributes
/// (-1)^|{s in S : s > e}|. Summing partial products per (k, S) needs
/// O(2^{n+1} (n+1)) matrix multiplications instead of (n+1)!.
pub fn gn_eval_fast(
    n: usize,
    x: &ExactMatrix,
    ys: &[ExactMatrix],
) -> Result<ExactMatrix, MatrixError> {
    let m = check_gn_inputs(n, x, ys)?;
    let powers = x_powers(n, x)?;
    let full: usize = (1usize << (n + 1)) - 1;
    let mut level: Vec<Option<ExactMatrix>> = vec![None; full + 1];
    for (e, power) in powers.iter().enumerate() {
        level[1usize << e] = Some(power.clone());
    }
    for y in ys.iter() {
        let mut next: Vec<Option<ExactMatrix>> = vec![None; full + 1];
        for (mask, entry) in level.iter().enumerate() {
            let partial = match entry {
                Some(p) => p,
                None => continue,
            };
            let after_y = partial.mul(y)?;
            for e in 0..=n {
                if mask & (1 << e) != 0 {
                    continue;
                }
                // parity of |{s in mask : s > e}|
                let higher = (mask >> (e + 1)).count_ones();
                let term = after_y.mul(&powers[e])?;
                let signed = if higher % 2 == 0 { term } else { term.neg() };
                let slot = mask | (1 << e);
                next[slot] = Some(match next[slot].take() {
                    Some(acc) => acc.add(&signed)?,
                    None => signed,
                });
            }
        }
        level = next;
    }
    Ok(level[full]
        .take()
        .unwrap_or_else(|| ExactMatrix::zero(x.spec().clone(), m, m)))
}

/// Outcome of sampling g_n(x, -) over the ambient matrix ring.
#[derive(Clone, Debug, Serialize)]
pub enum VanishOutcome {
    /// No nonzero value in `trials` samples. Probabilistic evidence only.
    Vanished { trials: u64 },
    /// A concrete substitution with a nonzero value: an exact disproof.
    Witness {
        trial: u64,
        #[serde(skip)]
        ys: Vec<ExactMatrix>,
        #[serde(skip)]
        value: ExactMatrix,
    },
}

impl VanishOutcome {
    pub fn vanished(&self) -> bool {
        matches!(self, VanishOutcome::Vanished { .. })
    }
}

/// Sample y-tuples with seeded uniform entries and test g_n(x, ys) = 0.
/// Trial t uses seed ^ t, so outcomes are reproducible and independent of
/// evaluation order; the witness reported is the one with the lowest trial
/// index.
pub fn gn_vanishes_on(
    x: &ExactMatrix,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<VanishOutcome, MatrixError> {
    assert!(trials >= 1, "at least one trial");
    if !x.is_square() {
        return Err(MatrixError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let m = x.rows();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
        let ys: Vec<ExactMatrix> = (0..n)
            .map(|_| ExactMatrix::random(x.spec(), m, &mut rng))
            .collect();
        let value = gn_eval_fast(n, x, &ys)?;
        if !value.is_zero() {
            return Ok(VanishOutcome::Witness { trial, ys, value });
        }
    }
    Ok(VanishOutcome::Vanished { trials })
}

/// Smallest n for which g_n(x, -) vanished across all trials. Convention:
/// g_n vanishes identically iff the algebraic degree of x is <= n, so the
/// returned level equals the degree (up to sampling error on the vanishing
/// side; the nonzero side is exact).
pub fn degree_via_gn(x: &ExactMatrix, trials: u64, seed: u64) -> Result<usize, MatrixError> {
    let m = x.rows();
    for n in 1..m {
        if gn_vanishes_on(x, n, trials, seed)?.vanished() {
            return Ok(n);
        }
    }
    // Degree never exceeds m: g_m already vanishes identically on M_m.
    Ok(m)
}

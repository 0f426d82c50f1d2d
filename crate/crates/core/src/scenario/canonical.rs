//! Gluing of two problems on the closed disk.
//!
//! The canonical orientation of a closed-disk problem is a reference token.
//! A problem is modelled as evaluation constants `E ≅ ℝⁿ` plus extra kernel
//! `K` and cokernel `C`. Gluing `A` to `B` gives the sequence
//! `0 -> [E; K_B; K_A] -> [E_B; K_B; E_A; K_A] -> [C_B; ℝⁿ; C_A] -> [C_B; C_A] -> 0`
//! with `α(e) = (e, e)` on the constants and `β = (-I, I)` into `ℝⁿ`.

use super::ScenarioError;
use crate::graded_lines::{exact_sequence_oracle, BasisChoice, BlockMap, ExactSequenceData, SummandColumn};
use crate::linalg::{q, Matrix};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosedDiskProblem {
    pub n: u32,
    pub ker_extra: usize,
    pub coker_extra: usize,
    /// Orientation relative to the canonical one.
    pub token: Sign,
}

impl ClosedDiskProblem {
    pub fn canonical(n: u32) -> Self {
        ClosedDiskProblem {
            n,
            ker_extra: 0,
            coker_extra: 0,
            token: Sign::Plus,
        }
    }

    pub fn with_extras(n: u32, ker_extra: usize, coker_extra: usize, token: Sign) -> Self {
        ClosedDiskProblem {
            n,
            ker_extra,
            coker_extra,
            token,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalVerdict {
    /// Sign of the sequence on the evaluation constants alone.
    pub core: Sign,
    /// Transport through the block model of the full sequence.
    pub formal: Sign,
    /// The same sequence from explicit matrices.
    pub oracle: Sign,
    /// Orientation of the glued problem relative to its canonical one.
    pub glued_token: Sign,
}

impl CanonicalVerdict {
    pub fn holds(&self) -> bool {
        self.core == Sign::Plus && self.formal == self.oracle
    }
}

fn gluing_matrices(n: usize, kb: usize, ka: usize, cb: usize, ca: usize) -> (Matrix, Matrix, Matrix) {
    let v1 = n + kb + ka;
    let w1 = 2 * n + kb + ka;
    let w2 = cb + n + ca;
    let v2 = cb + ca;
    // W1 = [E_B; K_B; E_A; K_A].
    let (eb, kbo, ea, kao) = (0, n, n + kb, 2 * n + kb);
    let mut alpha = Matrix::zeros(w1, v1);
    for i in 0..n {
        alpha.set(eb + i, i, q(1));
        alpha.set(ea + i, i, q(1));
    }
    for i in 0..kb {
        alpha.set(kbo + i, n + i, q(1));
    }
    for i in 0..ka {
        alpha.set(kao + i, n + kb + i, q(1));
    }
    let mut beta = Matrix::zeros(w2, w1);
    for i in 0..n {
        beta.set(cb + i, eb + i, q(-1));
        beta.set(cb + i, ea + i, q(1));
    }
    let mut gamma = Matrix::zeros(v2, w2);
    for i in 0..cb {
        gamma.set(i, i, q(1));
    }
    for i in 0..ca {
        gamma.set(cb + i, cb + n + i, q(1));
    }
    (alpha, beta, gamma)
}

fn formal_data(n: usize, kb: usize, ka: usize, cb: usize, ca: usize) -> Result<ExactSequenceData, ScenarioError> {
    let col = |blocks: &[(&str, usize)]| SummandColumn::from_dims(blocks);
    let mut alpha = vec![BlockMap::identity("E", "E_B")];
    let mut beta = vec![BlockMap::identity("E_A", "Rn")];
    let mut gamma = Vec::new();
    if n == 0 {
        alpha.clear();
        beta.clear();
    }
    if kb > 0 {
        alpha.push(BlockMap::identity("K_B", "K_B"));
    }
    if ka > 0 {
        alpha.push(BlockMap::identity("K_A", "K_A"));
    }
    if cb > 0 {
        gamma.push(BlockMap::identity("C_B", "C_B"));
    }
    if ca > 0 {
        gamma.push(BlockMap::identity("C_A", "C_A"));
    }
    // Projecting α(e) = (e, e) to E_B is the identity, so α is triangular
    // against [E_B | E_A] and E_A serves as the complement.
    Ok(ExactSequenceData {
        v1: col(&[("E", n), ("K_B", kb), ("K_A", ka)])?,
        w1: col(&[("E_B", n), ("K_B", kb), ("E_A", n), ("K_A", ka)])?,
        w2: col(&[("C_B", cb), ("Rn", n), ("C_A", ca)])?,
        v2: col(&[("C_B", cb), ("C_A", ca)])?,
        alpha,
        beta,
        gamma,
    })
}

/// Glues `a` into `b` and compares the transported orientation of the glued
/// problem with its canonical token.
pub fn canonical_gluing_check(a: &ClosedDiskProblem, b: &ClosedDiskProblem) -> Result<CanonicalVerdict, ScenarioError> {
    if a.n != b.n || a.n == 0 {
        return Err(ScenarioError::InvalidParameters(format!(
            "both problems need the same positive n, got {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n as usize;
    let (al, be, ga) = gluing_matrices(n, 0, 0, 0, 0);
    let core = exact_sequence_oracle(&al, &be, &ga, BasisChoice::Standard)?;
    let (kb, ka, cb, ca) = (b.ker_extra, a.ker_extra, b.coker_extra, a.coker_extra);
    let (al, be, ga) = gluing_matrices(n, kb, ka, cb, ca);
    let oracle = exact_sequence_oracle(&al, &be, &ga, BasisChoice::Standard)?;
    let formal = formal_data(n, kb, ka, cb, ca)?.transport_sign()?;
    Ok(CanonicalVerdict {
        core,
        formal,
        oracle,
        glued_token: a.token * b.token * core,
    })
}

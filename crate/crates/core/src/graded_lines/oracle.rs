//! Brute-force checks that materialize explicit bases and take determinants.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LinesError;
use crate::linalg::{q, sign_of, Matrix, Q};
use crate::sign::Sign;

/// Sign of the permutation matrix that moves consecutive coordinate blocks of
/// the given dimensions into `order` (`order[j]` = original block at slot `j`).
pub fn block_reorder_oracle(dims: &[usize], order: &[usize]) -> Result<Sign, LinesError> {
    if order.len() != dims.len() {
        return Err(LinesError::Inconsistent(format!(
            "permutation has {} entries for {} blocks",
            order.len(),
            dims.len()
        )));
    }
    let mut seen = vec![false; dims.len()];
    for &i in order {
        if i >= dims.len() || std::mem::replace(&mut seen[i], true) {
            return Err(LinesError::Inconsistent(format!("invalid permutation {order:?}")));
        }
    }
    let total: usize = dims.iter().sum();
    let mut start = vec![0usize; dims.len()];
    for i in 1..dims.len() {
        start[i] = start[i - 1] + dims[i - 1];
    }
    // Column c of P is the image of old basis vector c.
    let mut p = Matrix::zeros(total, total);
    let mut row = 0;
    for &i in order {
        for t in 0..dims[i] {
            p.set(row, start[i] + t, Q::one());
            row += 1;
        }
    }
    Ok(sign_of(&p.det()).expect("permutation matrices are invertible"))
}

/// How the oracle picks the free choices in the basis recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisChoice {
    /// Complement from standard vectors, `u` as the minimal-pivot solution.
    Standard,
    /// Random complement and random shifts of `u` by elements of `ker γ`.
    Randomized(u64),
}

/// Orientation sign of a four-term exact sequence
/// `0 -> V1 -α-> W1 -β-> W2 -γ-> V2 -> 0` given by integer (or rational)
/// matrices, with every space carrying its standard orientation.
///
/// Builds `[α(v) | w]` on W1 and `[u | β(w)]` on W2 with `γ(u)` the standard
/// basis of V2, and returns the product of the two determinant signs.
pub fn exact_sequence_oracle(
    alpha: &Matrix,
    beta: &Matrix,
    gamma: &Matrix,
    choice: BasisChoice,
) -> Result<Sign, LinesError> {
    let v1 = alpha.cols();
    let w1 = alpha.rows();
    if beta.cols() != w1 {
        return Err(LinesError::Shape(format!(
            "β has {} columns but W1 has dimension {w1}",
            beta.cols()
        )));
    }
    let w2 = beta.rows();
    if gamma.cols() != w2 {
        return Err(LinesError::Shape(format!(
            "γ has {} columns but W2 has dimension {w2}",
            gamma.cols()
        )));
    }
    let v2 = gamma.rows();

    let ra = alpha.rank();
    if ra != v1 {
        return Err(LinesError::NotExact(format!(
            "α is not injective: rank {ra} < dim V1 = {v1}"
        )));
    }
    if !beta.mul(alpha).is_zero() {
        return Err(LinesError::NotExact("β∘α ≠ 0".into()));
    }
    if !gamma.mul(beta).is_zero() {
        return Err(LinesError::NotExact("γ∘β ≠ 0".into()));
    }
    let rb = beta.rank();
    if rb != w1 - v1 {
        return Err(LinesError::NotExact(format!(
            "ker β ≠ im α: rank β = {rb}, expected dim W1 - dim V1 = {}",
            w1 - v1
        )));
    }
    let rg = gamma.rank();
    if rg != v2 {
        return Err(LinesError::NotExact(format!(
            "γ is not surjective: rank {rg} < dim V2 = {v2}"
        )));
    }
    if rg != w2 - rb {
        return Err(LinesError::NotExact(format!(
            "ker γ ≠ im β: rank γ = {rg}, expected dim W2 - rank β = {}",
            w2 - rb
        )));
    }

    let mut rng = match choice {
        BasisChoice::Standard => None,
        BasisChoice::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    // W1 basis: images of the V1 basis, then a complement w.
    let mut b1: Vec<Vec<Q>> = (0..v1).map(|j| alpha.column(j)).collect();
    let mut comp: Vec<Vec<Q>> = Vec::new();
    let mut next_std = 0;
    while b1.len() < w1 {
        let cand: Vec<Q> = match rng.as_mut() {
            Some(r) => (0..w1).map(|_| q(r.gen_range(-3..=3))).collect(),
            None => {
                let mut e = vec![Q::zero(); w1];
                e[next_std] = Q::one();
                next_std += 1;
                e
            }
        };
        let mut trial = b1.clone();
        trial.push(cand.clone());
        if Matrix::from_columns(w1, &trial).rank() == trial.len() {
            b1 = trial;
            comp.push(cand);
        }
    }
    let d1 = Matrix::from_columns(w1, &b1).det();

    // W2 basis: lifts u of the V2 basis, then β(w).
    let im_beta: Vec<Vec<Q>> = comp.iter().map(|w| beta.mul_vec(w)).collect();
    let mut b2: Vec<Vec<Q>> = Vec::with_capacity(w2);
    for i in 0..v2 {
        let mut e = vec![Q::zero(); v2];
        e[i] = Q::one();
        let mut u = gamma.solve(&e).expect("γ is surjective, so every basis vector lifts");
        if let Some(r) = rng.as_mut() {
            for b in &im_beta {
                let c = q(r.gen_range(-2..=2));
                for (x, y) in u.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
        }
        b2.push(u);
    }
    b2.extend(im_beta);
    let d2 = Matrix::from_columns(w2, &b2).det();

    let s1 = sign_of(&d1).expect("constructed W1 basis is independent");
    let s2 = sign_of(&d2).expect("exactness makes the W2 basis independent");
    Ok(s1 * s2)
}

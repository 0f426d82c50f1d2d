//! Orientations of the space of conformal structures on a disk with `m + 1`
//! boundary punctures `p_0, ..., p_m`.
//!
//! A disk is modelled on the upper half-plane with punctures at increasing
//! real positions. A tangent vector is a vector of puncture velocities taken
//! modulo the infinitesimal Möbius transformations, which move the puncture
//! at `r` with velocity `a + b r + c r^2`. An ordered list of velocity
//! vectors is a basis exactly when, together with the three Möbius vectors,
//! it spans, and its orientation is the sign of that determinant.
//!
//! Boundary gluing is modelled by shrinking a cluster: the punctures of the
//! inner disk sit at `P_k + ε x_i`, and signs are read off from the lowest
//! order term in `ε`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ScenarioError;
use crate::linalg::det_integer;
use crate::sign::Sign;

/// `±∂_{p_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedSymbol {
    pub sign: Sign,
    pub puncture: usize,
}

impl SignedSymbol {
    pub fn plus(puncture: usize) -> Self {
        SignedSymbol {
            sign: Sign::Plus,
            puncture,
        }
    }

    pub fn minus(puncture: usize) -> Self {
        SignedSymbol {
            sign: Sign::Minus,
            puncture,
        }
    }
}

/// Generic increasing positions.
fn position(i: usize) -> i64 {
    let i = i as i64;
    10 * i + i * i
}

/// Rows of the `(m+1) x (m+1)` matrix `[1 | r | r^2 | columns]`.
fn mobius_matrix(positions: &[BigInt], columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    positions
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = vec![BigInt::from(1), r.clone(), r * r];
            row.extend(columns.iter().map(|c| c[i].clone()));
            row
        })
        .collect()
}

/// A chosen ordered basis of the tangent space at a disk with `m` negative
/// punctures, with its sign relative to the default `(∂_{p_m}, ..., ∂_{p_3})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalSlot {
    m: usize,
    basis: Vec<SignedSymbol>,
    sign: Sign,
}

impl ConformalSlot {
    pub fn standard(m: usize) -> Result<Self, ScenarioError> {
        if m < 2 {
            return Err(ScenarioError::InvalidParameters(format!(
                "need at least two negative punctures, got {m}"
            )));
        }
        let basis = (3..=m).rev().map(SignedSymbol::plus).collect();
        Ok(ConformalSlot {
            m,
            basis,
            sign: Sign::Plus,
        })
    }

    pub fn with_basis(m: usize, basis: Vec<SignedSymbol>) -> Result<Self, ScenarioError> {
        Self::standard(m)?;
        if basis.len() != m - 2 {
            return Err(ScenarioError::InvalidParameters(format!(
                "basis needs {} vectors, got {}",
                m - 2,
                basis.len()
            )));
        }
        if let Some(b) = basis.iter().find(|b| b.puncture > m) {
            return Err(ScenarioError::InvalidParameters(format!(
                "puncture p_{} does not exist",
                b.puncture
            )));
        }
        let d = Self::det(m, &basis);
        if d.is_zero() {
            return Err(ScenarioError::InvalidParameters("vectors do not form a basis".into()));
        }
        let reference = Self::det(m, &Self::standard(m)?.basis);
        let sign = Sign::from_bool_negative(d.is_negative() != reference.is_negative());
        Ok(ConformalSlot { m, basis, sign })
    }

    fn det(m: usize, basis: &[SignedSymbol]) -> BigInt {
        let positions: Vec<BigInt> = (0..=m).map(|i| BigInt::from(position(i))).collect();
        let columns: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|b| {
                (0..=m)
                    .map(|i| {
                        if i == b.puncture {
                            BigInt::from(b.sign.to_i64())
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        det_integer(mobius_matrix(&positions, &columns))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[SignedSymbol] {
        &self.basis
    }

    /// Orientation of this basis relative to the default one.
    pub fn sign(&self) -> Sign {
        self.sign
    }
}

/// Vector used as the outward normal of the gluing boundary stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GlueNormal {
    /// `-∂_ε`: the direction in which the cluster shrinks.
    OutwardEpsilon,
    /// `∂_{q_1}`, the first puncture of the inner disk.
    FirstInnerPuncture,
}

/// Result of gluing the default orientations of an `m1`-disk into puncture
/// `p_k` of an `m2`-disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConformalGlue {
    pub m1: usize,
    pub m2: usize,
    pub k: usize,
    /// Sign computed in the half-plane model.
    pub ledger: Sign,
    /// `(-1)^((m1-1)k + 1)`.
    pub closed_form: Sign,
}

impl ConformalGlue {
    pub fn agrees(&self) -> bool {
        self.ledger == self.closed_form
    }
}

pub fn conformal_closed_form(m1: usize, k: usize) -> Sign {
    Sign::from_parity(((m1 as i64 - 1) * k as i64) + 1)
}

pub fn conformal_glue_sign(m1: usize, m2: usize, k: usize) -> Result<ConformalGlue, ScenarioError> {
    let ledger = conformal_glue_sign_with_normal(m1, m2, k, GlueNormal::OutwardEpsilon)?;
    Ok(ConformalGlue {
        m1,
        m2,
        k,
        ledger,
        closed_form: conformal_closed_form(m1, k),
    })
}

type GlueKey = (usize, usize, usize, GlueNormal);

/// Orientation of `(∂_{p_{m2}}, ..., ∂_{p_3}, ∂_{x_{m1}}, ..., ∂_{x_3}, ν)`
/// relative to the default orientation of the glued disk, where `ν` is the
/// chosen normal and `∂_{p_k}` translates the whole cluster.
pub fn conformal_glue_sign_with_normal(
    m1: usize,
    m2: usize,
    k: usize,
    normal: GlueNormal,
) -> Result<Sign, ScenarioError> {
    if m1 < 2 || m2 < 2 {
        return Err(ScenarioError::InvalidParameters(format!(
            "both disks need at least two negative punctures, got {m1} and {m2}"
        )));
    }
    if k == 0 || k > m2 {
        return Err(ScenarioError::InvalidParameters(format!(
            "gluing puncture k = {k} outside 1..={m2}"
        )));
    }
    // The half-plane determinant is the expensive part and sweeps revisit
    // the same few shapes.
    static CACHE: OnceLock<Mutex<HashMap<GlueKey, Sign>>> = OnceLock::new();
    let key = (m1, m2, k, normal);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache lock").get(&key) {
        return Ok(*s);
    }
    let s = half_plane_sign(m1, m2, k, normal)?;
    cache.lock().expect("cache lock").insert(key, s);
    Ok(s)
}

fn half_plane_sign(m1: usize, m2: usize, k: usize, normal: GlueNormal) -> Result<Sign, ScenarioError> {
    let m = m1 + m2 - 1;
    // Glued punctures in boundary order: p_0..p_{k-1}, q_1..q_{m1}, p_{k+1}..p_{m2}.
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        P(usize),
        Q(usize),
    }
    let kinds: Vec<Kind> = (0..k)
        .map(Kind::P)
        .chain((1..=m1).map(Kind::Q))
        .chain((k + 1..=m2).map(Kind::P))
        .collect();

    let glued = |eps: i64| -> (BigInt, BigInt) {
        let positions: Vec<BigInt> = kinds
            .iter()
            .map(|kd| match *kd {
                Kind::P(i) => BigInt::from(position(i)),
                Kind::Q(i) => BigInt::from(position(k) + eps * i as i64),
            })
            .collect();
        let indicator =
            |f: &dyn Fn(Kind) -> i64| -> Vec<BigInt> { kinds.iter().map(|kd| BigInt::from(f(*kd))).collect() };
        let mut cols = Vec::new();
        for j in (3..=m2).rev() {
            if j == k {
                cols.push(indicator(&|kd| matches!(kd, Kind::Q(_)) as i64));
            } else {
                cols.push(indicator(&|kd| (kd == Kind::P(j)) as i64));
            }
        }
        for j in (3..=m1).rev() {
            cols.push(indicator(&|kd| if kd == Kind::Q(j) { eps } else { 0 }));
        }
        cols.push(match normal {
            GlueNormal::OutwardEpsilon => indicator(&|kd| match kd {
                Kind::Q(i) => -(i as i64),
                Kind::P(_) => 0,
            }),
            GlueNormal::FirstInnerPuncture => indicator(&|kd| (kd == Kind::Q(1)) as i64),
        });
        let reference: Vec<Vec<BigInt>> = (3..=m)
            .rev()
            .map(|j| (0..=m).map(|i| BigInt::from((i == j) as i64)).collect())
            .collect();
        (
            det_integer(mobius_matrix(&positions, &cols)),
            det_integer(mobius_matrix(&positions, &reference)),
        )
    };

    // Degrees in ε are at most m1 + 1 and 3 respectively.
    let points: Vec<i64> = (1..=(m1 as i64 + 3)).collect();
    let values: Vec<(BigInt, BigInt)> = points.iter().map(|&e| glued(e)).collect();
    let lhs: Vec<BigInt> = values.iter().map(|v| v.0.clone()).collect();
    let rhs: Vec<BigInt> = values.iter().map(|v| v.1.clone()).collect();
    let a = lowest_order_sign(&points, &lhs)
        .ok_or_else(|| ScenarioError::InvalidParameters("glued vectors are degenerate to every order".into()))?;
    let b = lowest_order_sign(&points, &rhs)
        .ok_or_else(|| ScenarioError::InvalidParameters("degenerate reference".into()))?;
    Ok(a * b)
}

/// Sign of the lowest order nonzero coefficient of the polynomial through
/// the given points (degree less than the number of points).
fn lowest_order_sign(xs: &[i64], ys: &[BigInt]) -> Option<Sign> {
    let n = xs.len();
    let x: Vec<BigRational> = xs.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut c: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&x[i] - &x[i - j]);
        }
    }
    // Expand the Newton form into monomial coefficients, lowest first.
    let mut poly = vec![c[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, a) in poly.iter().enumerate() {
            next[d + 1] += a;
            next[d] -= a * &x[i];
        }
        next[0] += &c[i];
        poly = next;
    }
    poly.iter()
        .find(|a| !a.is_zero())
        .map(|a| if a.is_negative() { Sign::Minus } else { Sign::Plus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_reads_lowest_term() {
        // 3x^2 - x^3 at x = 1..5.
        let xs = [1, 2, 3, 4, 5];
        let ys: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(3 * x * x - x * x * x)).collect();
        assert_eq!(lowest_order_sign(&xs, &ys), Some(Sign::Plus));
        let zeros = vec![BigInt::zero(); 5];
        assert_eq!(lowest_order_sign(&xs, &zeros), None);
    }

    #[test]
    fn glue_examples() {
        assert_eq!(conformal_glue_sign(2, 3, 1).unwrap().ledger, Sign::Plus);
        assert_eq!(conformal_glue_sign(3, 3, 2).unwrap().ledger, Sign::Minus);
        assert_eq!(conformal_glue_sign(2, 4, 3).unwrap().ledger, Sign::Plus);
    }

    #[test]
    fn standard_slot() {
        let s = ConformalSlot::standard(5).unwrap();
        assert_eq!(s.basis().len(), 3);
        assert_eq!(s.sign(), Sign::Plus);
        assert!(ConformalSlot::standard(1).is_err());
    }

    #[test]
    fn swapped_basis_flips() {
        let b = vec![SignedSymbol::plus(3), SignedSymbol::plus(4)];
        assert_eq!(ConformalSlot::with_basis(4, b).unwrap().sign(), Sign::Minus);
        let b = vec![SignedSymbol::minus(4), SignedSymbol::plus(3)];
        assert_eq!(ConformalSlot::with_basis(4, b).unwrap().sign(), Sign::Minus);
        let b = vec![SignedSymbol::plus(4), SignedSymbol::plus(4)];
        assert!(ConformalSlot::with_basis(4, b).is_err());
    }

    #[test]
    fn rejects_bad_gluing_parameters() {
        assert!(conformal_glue_sign(1, 3, 1).is_err());
        assert!(conformal_glue_sign(2, 3, 0).is_err());
        assert!(conformal_glue_sign(2, 3, 4).is_err());
    }
}

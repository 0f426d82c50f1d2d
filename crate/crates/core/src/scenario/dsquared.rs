//! Two-level broken disks in the symplectization: an inner disk
//! `(b_k; f_1..f_{m-1})` glued into the `k`-th negative puncture of an outer
//! disk `(a; b_1..b_r)`.

use num_bigint::BigInt;

use super::conformal::conformal_glue_sign;
use super::ledger::{labels_without, layout, Ledger, LedgerColumn};
use super::tokens::{SignExpr, TokenRelation};
use super::{glued_capping_sign, CappingSystemParams, DiskSetting, FormalDiskOp, ScenarioError};
use crate::dga::{Dga, Element, Ring};
use crate::graded_lines::{exact_sequence_oracle, BasisChoice};
use crate::linalg::Matrix;
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsquaredScenario {
    /// The inner disk has `m - 1` negative punctures.
    pub m: usize,
    pub k: usize,
    pub r: usize,
    /// `|b_1|, ..., |b_r|`.
    pub b: Vec<i64>,
    /// `|f_1|, ..., |f_{m-1}|`.
    pub f: Vec<i64>,
    pub params: CappingSystemParams,
}

impl DsquaredScenario {
    pub fn new(
        m: usize,
        k: usize,
        r: usize,
        b: Vec<i64>,
        f: Vec<i64>,
        params: CappingSystemParams,
    ) -> Result<Self, ScenarioError> {
        if m <= 2 {
            return Err(ScenarioError::InvalidParameters(format!("need m > 2, got {m}")));
        }
        if r <= 1 {
            return Err(ScenarioError::InvalidParameters(format!("need r > 1, got {r}")));
        }
        if k == 0 || k > r {
            return Err(ScenarioError::InvalidParameters(format!("k = {k} outside 1..={r}")));
        }
        if b.len() != r || f.len() != m - 1 {
            return Err(ScenarioError::InvalidParameters(format!(
                "expected {r} outer and {} inner gradings, got {} and {}",
                m - 1,
                b.len(),
                f.len()
            )));
        }
        let s = DsquaredScenario { m, k, r, b, f, params };
        FormalDiskOp::new(s.a(), s.b.clone(), DiskSetting::Symplectization, true)?;
        FormalDiskOp::new(s.b[k - 1], s.f.clone(), DiskSetting::Symplectization, true)?;
        Ok(s)
    }

    /// Puts all of `|b_k| - 1` on `f_1`.
    pub fn with_default_inner(
        m: usize,
        k: usize,
        r: usize,
        b: Vec<i64>,
        params: CappingSystemParams,
    ) -> Result<Self, ScenarioError> {
        if m <= 2 || k == 0 || k > b.len() {
            return Err(ScenarioError::InvalidParameters(format!(
                "bad shape m = {m}, k = {k}, r = {}",
                b.len()
            )));
        }
        let mut f = vec![0; m - 1];
        f[0] = b[k - 1] - 1;
        Self::new(m, k, r, b, f, params)
    }

    pub fn a(&self) -> i64 {
        self.b.iter().sum::<i64>() + 1
    }

    pub fn closed_form(&self) -> Sign {
        let below: i64 = self.b[..self.k - 1].iter().sum();
        Sign::from_parity((self.m * self.k + self.r + 1) as i64 + below)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsquaredReport {
    pub ledger: Ledger,
    pub total: Sign,
    pub closed_form: Sign,
}

impl DsquaredReport {
    pub fn agrees(&self) -> bool {
        self.total == self.closed_form && self.ledger.oracle_agrees()
    }
}

fn blk(label: impl Into<String>, p: i64) -> (String, i64) {
    (label.into(), p)
}

/// Rearranges the capped gluing sequence of the broken disk into the one of
/// the glued disk and returns the sign paid.
pub fn dsquared_rearrangement_sign(s: &DsquaredScenario) -> Result<DsquaredReport, ScenarioError> {
    let (m, k, r) = (s.m, s.k, s.r);
    let nd = s.params.nd();
    let cp = |g: i64| g + nd + 1;
    let b = |j: usize| s.b[j - 1];
    let f = |j: usize| s.f[j - 1];

    let mut ker = vec![blk("RtB", 1)];
    ker.extend((1..=r).rev().map(|j| blk(format!("Kb{j}-"), 1)));
    ker.push(blk("RtA", 1));
    ker.extend((1..m).rev().map(|j| blk(format!("Kf{j}-"), 1)));

    let mut coker = vec![blk("CB", r as i64), blk("Ca+", cp(s.a()))];
    coker.extend((1..=r).rev().map(|j| blk(format!("Cb{j}-"), b(j))));
    coker.extend([
        blk("Rt", 1),
        blk("Rnd", nd),
        blk("CA", m as i64 - 1),
        blk(format!("Cb{k}+"), cp(b(k))),
    ]);
    coker.extend((1..m).rev().map(|j| blk(format!("Cf{j}-"), f(j))));

    let mut ker2 = vec![blk("RtB", 1), blk("RtA", 1)];
    ker2.extend((k + 1..=r).rev().map(|j| blk(format!("Kb{j}-"), 1)));
    ker2.extend((1..m).rev().map(|j| blk(format!("Kf{j}-"), 1)));
    ker2.extend((1..k).rev().map(|j| blk(format!("Kb{j}-"), 1)));
    ker2.extend([blk("RtC", 1), blk(format!("Kb{k}-"), 1)]);

    let mut coker2 = vec![
        blk("CB", r as i64),
        blk("Rt", 1),
        blk("CA", m as i64 - 1),
        blk("Ca+", cp(s.a())),
    ];
    coker2.extend((k + 1..=r).rev().map(|j| blk(format!("Cb{j}-"), b(j))));
    coker2.extend((1..m).rev().map(|j| blk(format!("Cf{j}-"), f(j))));
    coker2.extend((1..k).rev().map(|j| blk(format!("Cb{j}-"), b(j))));
    coker2.extend([
        blk("RtC3", 1),
        blk("Rnd", nd),
        blk(format!("Cb{k}+"), cp(b(k))),
        blk(format!("Cb{k}-"), b(k)),
    ]);

    let full_ker = layout(&ker2)?;
    let full_coker = layout(&coker2)?;
    let mut l = Ledger::new(layout(&ker)?, layout(&coker)?);
    l.move_to("sigma1.ker", LedgerColumn::Kernel, "RtA", 1)?;
    l.move_to("sigma1.coker", LedgerColumn::Cokernel, "Rt", 1)?;
    l.move_to("coker_a", LedgerColumn::Cokernel, "CA", 2)?;
    l.reorder("sigma2", LedgerColumn::Kernel, &labels_without(&full_ker, &["RtC"]))?;
    l.reorder(
        "sigma3",
        LedgerColumn::Cokernel,
        &labels_without(&full_coker, &["RtC3"]),
    )?;
    l.remove_pairs("rt_pair", &full_ker, &full_coker, &[("RtC", "RtC3", Sign::Plus)])?;
    l.factor("glued_cap", glued_capping_sign(b(k), s.params));

    Ok(DsquaredReport {
        total: l.total(),
        closed_form: s.closed_form(),
        ledger: l,
    })
}

fn z(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Sign of the sequence that splits off the translation of the broken disk,
/// computed from explicit matrices with the actual cokernel dimensions
/// `r - 2` and `m - 3`.
pub fn sigma0_oracle(m: usize, r: usize) -> Result<Sign, ScenarioError> {
    let (cb, ca) = (r - 2, m - 3);
    let w2 = cb + 1 + ca;
    let alpha = Matrix::from_i64(2, 1, &[1, 1]);
    let mut beta = Matrix::zeros(w2, 2);
    beta.set(cb, 0, crate::linalg::q(-1));
    beta.set(cb, 1, crate::linalg::q(1));
    let mut gamma = Matrix::zeros(cb + ca, w2);
    for i in 0..cb {
        gamma.set(i, i, crate::linalg::q(1));
    }
    for i in 0..ca {
        gamma.set(cb + i, cb + 1 + i, crate::linalg::q(1));
    }
    Ok(exact_sequence_oracle(&alpha, &beta, &gamma, BasisChoice::Standard)?)
}

/// One way of breaking a disk over a fixed word: the inner disk covers
/// `inner` consecutive letters starting at letter `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DsquaredConfig {
    pub k: usize,
    pub inner: usize,
}

/// Two broken disks at the ends of one component of a one-dimensional
/// moduli space, with positive puncture `|a| = Σ|d_i| + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsquaredPair {
    pub word: Vec<i64>,
    pub first: DsquaredConfig,
    pub second: DsquaredConfig,
    pub params: CappingSystemParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEnd {
    pub config: DsquaredConfig,
    pub report: DsquaredReport,
    pub sigma0: Sign,
    /// Conformal gluing sign.
    pub nu1: Sign,
    /// `σ̃ + σ0`, which must match its closed form.
    pub nu3: Sign,
    pub nu3_closed: Sign,
    pub boundary: SignExpr,
    pub boundary_closed: SignExpr,
}

impl BoundaryEnd {
    pub fn agrees(&self) -> bool {
        self.report.agrees() && self.nu3 == self.nu3_closed && self.boundary == self.boundary_closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVerdict {
    pub ends: [BoundaryEnd; 2],
    /// Relation forced by opposite boundary orientations.
    pub derived: TokenRelation,
    /// The relation that makes `∂² = 0` at this word.
    pub claimed: TokenRelation,
    /// `∂²a` computed by the Leibniz rule vanishes exactly when `claimed` holds.
    pub leibniz_agrees: bool,
}

impl BoundaryVerdict {
    pub fn holds(&self) -> bool {
        self.ends.iter().all(BoundaryEnd::agrees) && self.derived == self.claimed && self.leibniz_agrees
    }
}

impl DsquaredConfig {
    fn scenario(&self, word: &[i64], params: CappingSystemParams) -> Result<DsquaredScenario, ScenarioError> {
        let l = word.len();
        if self.inner < 2 || self.k == 0 || self.k - 1 + self.inner > l {
            return Err(ScenarioError::InvalidParameters(format!(
                "inner disk {self:?} does not fit in a word of length {l}"
            )));
        }
        let lo = self.k - 1;
        let hi = lo + self.inner;
        let f = word[lo..hi].to_vec();
        let mut b = word[..lo].to_vec();
        b.push(f.iter().sum::<i64>() + 1);
        b.extend_from_slice(&word[hi..]);
        let r = b.len();
        DsquaredScenario::new(self.inner + 1, self.k, r, b, f, params)
    }
}

fn tokens(i: usize) -> (String, String) {
    let tick = if i == 0 { "" } else { "'" };
    (format!("mu1{tick}"), format!("mu2{tick}"))
}

fn boundary_end(
    config: DsquaredConfig,
    i: usize,
    word: &[i64],
    params: CappingSystemParams,
) -> Result<BoundaryEnd, ScenarioError> {
    let s = config.scenario(word, params)?;
    let report = dsquared_rearrangement_sign(&s)?;
    let sigma0 = sigma0_oracle(s.m, s.r)?;
    let nu1 = conformal_glue_sign(s.m - 1, s.r, s.k)?.ledger;
    let nu3 = report.total * sigma0;
    let below: i64 = word[..s.k - 1].iter().sum();
    let coker_a = s.m as i64 - 1;
    let delta = coker_a + s.r as i64 + 1;
    let nu3_closed = Sign::from_parity((coker_a - 1) * s.k as i64 + below + delta);
    let (t1, t2) = tokens(i);
    let boundary = SignExpr::with_tokens(nu1 * nu3, [t1.clone(), t2.clone()]);
    let boundary_closed = SignExpr::with_tokens(Sign::from_parity(1 + below + delta), [t1, t2]);
    Ok(BoundaryEnd {
        config,
        report,
        sigma0,
        nu1,
        nu3,
        nu3_closed,
        boundary,
        boundary_closed,
    })
}

pub fn dsquared_boundary_cancellation(pair: &DsquaredPair) -> Result<BoundaryVerdict, ScenarioError> {
    if pair.first == pair.second {
        return Err(ScenarioError::InvalidParameters(
            "the two ends must be different broken disks".into(),
        ));
    }
    let e0 = boundary_end(pair.first, 0, &pair.word, pair.params)?;
    let e1 = boundary_end(pair.second, 1, &pair.word, pair.params)?;
    let derived = e0.boundary.equals(&(e1.boundary.clone() * Sign::Minus));

    let leibniz = |c: &DsquaredConfig, i: usize| {
        let (t1, t2) = tokens(i);
        let below: i64 = pair.word[..c.k - 1].iter().sum();
        SignExpr::with_tokens(Sign::from_parity(below), [t1, t2])
    };
    let claimed = leibniz(&pair.first, 0).equals(&(leibniz(&pair.second, 1) * Sign::Minus));
    let leibniz_agrees = leibniz_check(pair, &claimed)?;

    Ok(BoundaryVerdict {
        ends: [e0, e1],
        derived,
        claimed,
        leibniz_agrees,
    })
}

/// Builds the two-term differential with placeholder chords for every sign
/// assignment and compares `∂²a = 0` with the claimed relation.
fn leibniz_check(pair: &DsquaredPair, claimed: &TokenRelation) -> Result<bool, ScenarioError> {
    let word = &pair.word;
    for bits in 0..16u32 {
        let val = |j: u32| Sign::from_bool_negative(bits >> j & 1 == 1);
        let assignment = |t: &str| match t {
            "mu1" => val(0),
            "mu2" => val(1),
            "mu1'" => val(2),
            _ => val(3),
        };
        let mut dga = Dga::new(Ring::Integers);
        let letters: Vec<usize> = word
            .iter()
            .enumerate()
            .map(|(i, g)| dga.add_chord(&format!("d{i}"), *g))
            .collect::<Result<_, _>>()
            .map_err(|e| ScenarioError::InvalidParameters(e.to_string()))?;
        let a = dga
            .add_chord("a", word.iter().sum::<i64>() + 2)
            .map_err(|e| ScenarioError::InvalidParameters(e.to_string()))?;
        let mut da = Element::zero();
        for (i, c) in [pair.first, pair.second].iter().enumerate() {
            let lo = c.k - 1;
            let hi = lo + c.inner;
            let inner_grading: i64 = word[lo..hi].iter().sum::<i64>() + 1;
            let id = dga
                .add_chord(&format!("c{i}"), inner_grading)
                .map_err(|e| ScenarioError::InvalidParameters(e.to_string()))?;
            let mu1 = assignment(&tokens(i).0);
            let mu2 = assignment(&tokens(i).1);
            dga.set_differential(id, Element::monomial(letters[lo..hi].to_vec(), z(mu1.to_i64())))
                .map_err(|e| ScenarioError::InvalidParameters(e.to_string()))?;
            let mut outer = letters[..lo].to_vec();
            outer.push(id);
            outer.extend_from_slice(&letters[hi..]);
            da = da + Element::monomial(outer, z(mu2.to_i64()));
        }
        dga.set_differential(a, da)
            .map_err(|e| ScenarioError::InvalidParameters(e.to_string()))?;
        let dd = dga.apply_differential(&dga.differential(a).clone());
        if dd.is_zero() != claimed.holds(assignment) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> CappingSystemParams {
        CappingSystemParams::new(n).unwrap()
    }

    #[test]
    fn examples() {
        let s = DsquaredScenario::with_default_inner(3, 1, 2, vec![1, 0], p(1)).unwrap();
        let rep = dsquared_rearrangement_sign(&s).unwrap();
        assert_eq!(rep.total, Sign::Plus);
        assert!(rep.agrees());
        let s = DsquaredScenario::with_default_inner(3, 2, 2, vec![1, 1], p(1)).unwrap();
        assert_eq!(dsquared_rearrangement_sign(&s).unwrap().total, Sign::Plus);
    }

    #[test]
    fn step_values() {
        for n in 1..4 {
            let s = DsquaredScenario::new(4, 2, 3, vec![2, 3, -1], vec![1, 1, 0], p(n)).unwrap();
            let rep = dsquared_rearrangement_sign(&s).unwrap();
            let l = &rep.ledger;
            let nd = p(n).nd();
            assert_eq!(l.sign_of("sigma1"), Sign::from_parity(3 + nd));
            assert_eq!(l.sign_of("coker_a"), Sign::Plus);
            assert_eq!(l.sign_of("sigma2"), Sign::from_parity(4 * 2 + 1));
            assert_eq!(l.sign_of("sigma3"), Sign::from_parity(2 + 3 + 1));
            assert_eq!(l.sign_of("rt_pair"), Sign::Plus);
            assert!(rep.agrees());
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(DsquaredScenario::with_default_inner(2, 1, 2, vec![1, 0], p(1)).is_err());
        assert!(DsquaredScenario::with_default_inner(3, 1, 1, vec![1], p(1)).is_err());
        assert!(matches!(
            DsquaredScenario::new(3, 1, 2, vec![1, 0], vec![1, 1], p(1)),
            Err(ScenarioError::NotRigid(_))
        ));
    }

    #[test]
    fn sigma0_is_inner_cokernel_parity() {
        for m in 3..7 {
            for r in 2..6 {
                assert_eq!(sigma0_oracle(m, r).unwrap(), Sign::from_parity(m as i64 - 1));
            }
        }
    }

    #[test]
    fn equal_positions_need_opposite_products() {
        let pair = DsquaredPair {
            word: vec![0, 1, 1, 0],
            first: DsquaredConfig { k: 1, inner: 2 },
            second: DsquaredConfig { k: 1, inner: 3 },
            params: p(1),
        };
        let v = dsquared_boundary_cancellation(&pair).unwrap();
        assert!(v.holds(), "{v:?}");
        assert_eq!(v.derived.value, Sign::Minus);
        assert_eq!(v.derived.tokens.len(), 4);
    }

    #[test]
    fn shifted_inner_disk() {
        let pair = DsquaredPair {
            word: vec![1, 2, 0, 1, 1],
            first: DsquaredConfig { k: 1, inner: 2 },
            second: DsquaredConfig { k: 3, inner: 2 },
            params: p(2),
        };
        let v = dsquared_boundary_cancellation(&pair).unwrap();
        assert!(v.holds(), "{v:?}");
        // Σ below k' = 1 + 2 flips the relation.
        assert_eq!(v.derived.value, Sign::Plus);
    }
}

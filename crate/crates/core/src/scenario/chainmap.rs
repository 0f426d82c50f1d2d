//! Broken disks at the ends of a one-dimensional cobordism moduli space.
//!
//! `T`: a symplectization disk `u0 = (a; b_1..b_m)` on top, with cobordism
//! disks `v_i = (b_i; b^i_1..b^i_{m_i})` below every negative puncture.
//!
//! `T̃`: a cobordism disk `v0 = (a; c_1..c_l)` on top, with a symplectization
//! disk `u_j = (c_j; f_1..f_k)` below its `j`-th negative puncture.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;

use super::conformal::conformal_glue_sign;
use super::ledger::{labels_without, layout, Ledger, LedgerColumn};
use super::tokens::{SignExpr, TokenRelation};
use super::{glued_capping_sign, CappingSystemParams, DiskSetting, FormalDiskOp, ScenarioError};
use crate::dga::{Dga, DgaMorphism, Element, Ring};
use crate::graded_lines::{exact_sequence_oracle, BasisChoice};
use crate::linalg::{q, Matrix};
use crate::sign::Sign;

fn blk(label: impl Into<String>, p: i64) -> (String, i64) {
    (label.into(), p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TScenario {
    /// `sub[i-1]` are the negative gradings of `v_i`.
    pub sub: Vec<Vec<i64>>,
    pub params: CappingSystemParams,
}

impl TScenario {
    pub fn new(sub: Vec<Vec<i64>>, params: CappingSystemParams) -> Result<Self, ScenarioError> {
        if sub.len() < 2 {
            return Err(ScenarioError::InvalidParameters(format!(
                "the top disk needs at least two negative punctures, got {}",
                sub.len()
            )));
        }
        let s = TScenario { sub, params };
        for (i, v) in s.sub.iter().enumerate() {
            FormalDiskOp::new(s.b(i + 1), v.clone(), DiskSetting::Cobordism, true)?;
        }
        FormalDiskOp::new(s.a(), s.bs(), DiskSetting::Symplectization, true)?;
        Ok(s)
    }

    pub fn m(&self) -> usize {
        self.sub.len()
    }

    pub fn mi(&self, i: usize) -> usize {
        self.sub[i - 1].len()
    }

    pub fn b(&self, i: usize) -> i64 {
        self.sub[i - 1].iter().sum()
    }

    fn bs(&self) -> Vec<i64> {
        (1..=self.m()).map(|i| self.b(i)).collect()
    }

    pub fn a(&self) -> i64 {
        self.bs().iter().sum::<i64>() + 1
    }

    /// The glued negative word.
    pub fn word(&self) -> Vec<i64> {
        self.sub.iter().flatten().copied().collect()
    }

    pub fn closed_form(&self) -> Sign {
        let nd = self.params.nd();
        let s: i64 = (1..=self.m())
            .map(|i| i as i64 * (self.mi(i) as i64 + 1) + self.b(i) + nd + 1)
            .sum();
        Sign::from_parity(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TReport {
    pub ledger: Ledger,
    pub total: Sign,
    pub closed_form: Sign,
    pub nu0: Sign,
    pub nu0_closed: Sign,
    pub nu2: Sign,
    pub nu2_closed: Sign,
    pub boundary: SignExpr,
    pub boundary_closed: SignExpr,
}

impl TReport {
    pub fn agrees(&self) -> bool {
        self.total == self.closed_form
            && self.ledger.oracle_agrees()
            && self.nu0 == self.nu0_closed
            && self.nu2 == self.nu2_closed
            && self.boundary == self.boundary_closed
    }
}

fn t_tokens(m: usize) -> Vec<String> {
    std::iter::once("eps0".to_string())
        .chain((1..=m).map(|i| format!("mu{i}")))
        .collect()
}

/// Translation sequence of the `T` configuration, from explicit matrices.
/// Cokernel blocks have their actual dimensions `m - 2` and `m_i - 2`.
pub fn nu0_oracle(m: usize, mi: &[usize]) -> Result<Sign, ScenarioError> {
    if mi.len() != m || m < 2 || mi.iter().any(|&x| x < 2) {
        return Err(ScenarioError::InvalidParameters(format!(
            "bad shape m = {m}, m_i = {mi:?}"
        )));
    }
    let cu = m - 2;
    let cv = |i: usize| mi[i - 1] - 2;
    // W2 = [Cu0; R_m; Cv_m; ...; R_1; Cv_1], V2 = [Cu0; Cv_m; R'_m; ...; R'_2; Cv_1].
    let mut w2_rt = vec![0; m + 1];
    let mut w2_cv = vec![0; m + 1];
    let mut off = cu;
    for i in (1..=m).rev() {
        w2_rt[i] = off;
        w2_cv[i] = off + 1;
        off += 1 + cv(i);
    }
    let w2 = off;
    let mut v2_cv = vec![0; m + 1];
    let mut v2_rt = vec![0; m + 1];
    let mut off = cu;
    for i in (1..=m).rev() {
        v2_cv[i] = off;
        off += cv(i);
        if i >= 2 {
            v2_rt[i] = off;
            off += 1;
        }
    }
    let v2 = off;

    let alpha = Matrix::zeros(1, 0);
    let mut beta = Matrix::zeros(w2, 1);
    for &row in &w2_rt[1..=m] {
        beta.set(row, 0, q(-1));
    }
    let mut gamma = Matrix::zeros(v2, w2);
    for x in 0..cu {
        gamma.set(x, x, q(1));
    }
    for i in 1..=m {
        for x in 0..cv(i) {
            gamma.set(v2_cv[i] + x, w2_cv[i] + x, q(1));
        }
        if i >= 2 {
            gamma.set(v2_rt[i], w2_rt[i], q(1));
        }
    }
    for &row in &v2_rt[2..=m] {
        gamma.set(row, w2_rt[1], q(-1));
    }
    Ok(exact_sequence_oracle(&alpha, &beta, &gamma, BasisChoice::Standard)?)
}

pub fn chainmap_t_sign(s: &TScenario) -> Result<TReport, ScenarioError> {
    let m = s.m();
    let nd = s.params.nd();
    let cp = |g: i64| g + nd + 1;

    let mut ker = vec![blk("Ku0", 1), blk("Ka+", 0)];
    ker.extend((1..=m).rev().map(|i| blk(format!("Kb{i}-"), 1)));
    let mut coker = vec![blk("Cu0", m as i64), blk("Ca+", cp(s.a()))];
    coker.extend((1..=m).rev().map(|i| blk(format!("Cb{i}-"), s.b(i))));
    for i in (1..=m).rev() {
        ker.extend([
            blk(format!("Kv{i}"), 0),
            blk(format!("Kb{i}+"), 0),
            blk(format!("Kcap{i}"), s.mi(i) as i64),
        ]);
        coker.extend([
            blk(format!("Rt{i}"), 1),
            blk(format!("Rnd{i}"), nd),
            blk(format!("Cv{i}"), s.mi(i) as i64),
            blk(format!("Cb{i}+"), cp(s.b(i))),
            blk(format!("Ccap{i}"), s.b(i)),
        ]);
    }

    let mut ker2 = vec![blk("Ku0", 1)];
    ker2.extend((1..=m).rev().map(|i| blk(format!("Kv{i}"), 0)));
    ker2.push(blk("Ka+", 0));
    ker2.extend((1..=m).rev().map(|i| blk(format!("Kcap{i}"), s.mi(i) as i64)));
    let mut coker2 = vec![blk("Cu0", m as i64)];
    for i in (1..=m).rev() {
        coker2.extend([blk(format!("Rt{i}"), 1), blk(format!("Cv{i}"), s.mi(i) as i64)]);
    }
    coker2.push(blk("Ca+", cp(s.a())));
    coker2.extend((1..=m).rev().map(|i| blk(format!("Ccap{i}"), s.b(i))));
    for i in (1..=m).rev() {
        ker2.extend([
            blk(format!("Kb{i}+"), 0),
            blk(format!("RtK{i}"), 1),
            blk(format!("Kb{i}-"), 1),
        ]);
        coker2.extend([
            blk(format!("RtC{i}"), 1),
            blk(format!("Rnd{i}"), nd),
            blk(format!("Cb{i}+"), cp(s.b(i))),
            blk(format!("Cb{i}-"), s.b(i)),
        ]);
    }

    let full_ker = layout(&ker2)?;
    let full_coker = layout(&coker2)?;
    let rtk: Vec<String> = (1..=m).map(|i| format!("RtK{i}")).collect();
    let rtc: Vec<String> = (1..=m).map(|i| format!("RtC{i}")).collect();
    let rtk_ref: Vec<&str> = rtk.iter().map(String::as_str).collect();
    let rtc_ref: Vec<&str> = rtc.iter().map(String::as_str).collect();

    let mut l = Ledger::new(layout(&ker)?, layout(&coker)?);
    l.reorder("sigma1", LedgerColumn::Kernel, &labels_without(&full_ker, &rtk_ref))?;
    for i in (1..=m).rev() {
        let base = 1 + 2 * (m - i);
        l.move_to(
            &format!("sigma2.{i}.rt"),
            LedgerColumn::Cokernel,
            &format!("Rt{i}"),
            base,
        )?;
        l.move_to(
            &format!("sigma2.{i}.cv"),
            LedgerColumn::Cokernel,
            &format!("Cv{i}"),
            base + 1,
        )?;
    }
    for i in (1..=m).rev() {
        let mut target: Vec<String> = l.cokernel().labels().iter().map(|x| x.to_string()).collect();
        let x = target.iter().position(|t| *t == format!("Cb{i}-")).expect("present");
        let y = target.iter().position(|t| *t == format!("Ccap{i}")).expect("present");
        target.swap(x, y);
        l.reorder(&format!("sigma3.{i}"), LedgerColumn::Cokernel, &target)?;
    }
    l.reorder(
        "residual",
        LedgerColumn::Cokernel,
        &labels_without(&full_coker, &rtc_ref),
    )?;
    let pairs: Vec<(&str, &str, Sign)> = (0..m).rev().map(|i| (rtk_ref[i], rtc_ref[i], Sign::Plus)).collect();
    l.remove_pairs("rt_pairs", &full_ker, &full_coker, &pairs)?;

    let total = l.total();
    let sum_mi: usize = (1..=m).map(|i| s.mi(i)).sum();
    let mi: Vec<usize> = (1..=m).map(|i| s.mi(i)).collect();
    let nu0 = nu0_oracle(m, &mi)?;
    let nu0_closed = Sign::from_parity(1 + sum_mi as i64);
    let mut nu2 = Sign::Plus;
    for i in (1..=m).rev() {
        let above: usize = (i + 1..=m).map(|j| s.mi(j)).sum();
        nu2 *= conformal_glue_sign(s.mi(i), i + above, i)?.ledger;
    }
    let nu2_closed = Sign::from_parity(m as i64 + (1..=m).map(|i| i as i64 * (s.mi(i) as i64 + 1)).sum::<i64>());
    let capped: Sign = (1..=m).map(|i| glued_capping_sign(s.b(i), s.params)).product();
    let sigma_t = total * nu0 * Sign::from_parity(m as i64) * capped;
    let tokens = t_tokens(m);
    let boundary = SignExpr::with_tokens(sigma_t * nu2, tokens.clone());
    let boundary_closed = SignExpr::with_tokens(Sign::from_parity(1 + sum_mi as i64), tokens);

    Ok(TReport {
        ledger: l,
        total,
        closed_form: s.closed_form(),
        nu0,
        nu0_closed,
        nu2,
        nu2_closed,
        boundary,
        boundary_closed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtildeScenario {
    pub j: usize,
    /// `|c_1|, ..., |c_l|`.
    pub c: Vec<i64>,
    /// `|f_1|, ..., |f_k|`.
    pub f: Vec<i64>,
    pub params: CappingSystemParams,
}

impl TtildeScenario {
    pub fn new(j: usize, c: Vec<i64>, f: Vec<i64>, params: CappingSystemParams) -> Result<Self, ScenarioError> {
        if c.len() < 2 || f.len() < 2 {
            return Err(ScenarioError::InvalidParameters(format!(
                "need l, k >= 2, got l = {}, k = {}",
                c.len(),
                f.len()
            )));
        }
        if j == 0 || j > c.len() {
            return Err(ScenarioError::InvalidParameters(format!(
                "j = {j} outside 1..={}",
                c.len()
            )));
        }
        let s = TtildeScenario { j, c, f, params };
        FormalDiskOp::new(s.a(), s.c.clone(), DiskSetting::Cobordism, true)?;
        FormalDiskOp::new(s.c[j - 1], s.f.clone(), DiskSetting::Symplectization, true)?;
        Ok(s)
    }

    /// Sets `|c_j| = Σ|f| + 1`.
    pub fn with_rigid_cj(
        j: usize,
        mut c: Vec<i64>,
        f: Vec<i64>,
        params: CappingSystemParams,
    ) -> Result<Self, ScenarioError> {
        if j >= 1 && j <= c.len() {
            c[j - 1] = f.iter().sum::<i64>() + 1;
        }
        Self::new(j, c, f, params)
    }

    pub fn l(&self) -> usize {
        self.c.len()
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    pub fn a(&self) -> i64 {
        self.c.iter().sum()
    }

    pub fn word(&self) -> Vec<i64> {
        let j = self.j;
        let mut w = self.c[..j - 1].to_vec();
        w.extend_from_slice(&self.f);
        w.extend_from_slice(&self.c[j..]);
        w
    }

    pub fn closed_form(&self) -> Sign {
        let (l, k, j) = (self.l() as i64, self.k() as i64, self.j as i64);
        let below: i64 = self.c[..self.j - 1].iter().sum();
        Sign::from_parity(self.c[self.j - 1] + self.params.nd() + 1 + j * (k + 1) + k + l + below)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtildeReport {
    pub ledger: Ledger,
    pub total: Sign,
    pub closed_form: Sign,
    pub sigma0: Sign,
    pub sigma0_closed: Sign,
    pub conformal: Sign,
    pub boundary: SignExpr,
    pub boundary_closed: SignExpr,
}

impl TtildeReport {
    pub fn agrees(&self) -> bool {
        self.total == self.closed_form
            && self.ledger.oracle_agrees()
            && self.sigma0 == self.sigma0_closed
            && self.boundary == self.boundary_closed
    }
}

fn tt_tokens(j: usize) -> Vec<String> {
    vec!["mu0".to_string(), format!("eps{j}")]
}

/// Translation sequence of the `T̃` configuration: the translation of `u_j`
/// maps onto the `R_t` summand of the cokernel. Actual dimensions `l - 2` and
/// `k - 2` are used.
pub fn sigma0_tilde_oracle(l: usize, k: usize) -> Result<Sign, ScenarioError> {
    if l < 2 || k < 2 {
        return Err(ScenarioError::InvalidParameters(format!(
            "need l, k >= 2, got {l}, {k}"
        )));
    }
    let (cv, cu) = (l - 2, k - 2);
    let w2 = cv + 1 + cu;
    let alpha = Matrix::zeros(1, 0);
    let mut beta = Matrix::zeros(w2, 1);
    beta.set(cv, 0, q(1));
    let mut gamma = Matrix::zeros(cv + cu, w2);
    for x in 0..cv {
        gamma.set(x, x, q(1));
    }
    for x in 0..cu {
        gamma.set(cv + x, cv + 1 + x, q(1));
    }
    Ok(exact_sequence_oracle(&alpha, &beta, &gamma, BasisChoice::Standard)?)
}

pub fn chainmap_ttilde_sign(s: &TtildeScenario) -> Result<TtildeReport, ScenarioError> {
    let (l, k, j) = (s.l(), s.k(), s.j);
    let nd = s.params.nd();
    let cp = |g: i64| g + nd + 1;
    let c = |i: usize| s.c[i - 1];
    let fsum: i64 = s.f.iter().sum();

    let mut ker = vec![blk("Kv0", 0), blk("Ka+", 0)];
    ker.extend((1..=l).rev().map(|i| blk(format!("Kc{i}-"), 1)));
    ker.extend([blk("Kuj", 1), blk("Kcj+", 0), blk("Kcap", k as i64)]);
    let mut coker = vec![blk("Cv0", l as i64), blk("Ca+", cp(s.a()))];
    coker.extend((1..=l).rev().map(|i| blk(format!("Cc{i}-"), c(i))));
    coker.extend([
        blk("Rt", 1),
        blk("Rnd", nd),
        blk("Cuj", k as i64),
        blk("Ccj+", cp(c(j))),
        blk("Ccap", fsum),
    ]);

    let mut ker2 = vec![blk("Kv0", 0), blk("Kuj", 1), blk("Ka+", 0)];
    ker2.extend((j + 1..=l).rev().map(|i| blk(format!("Kc{i}-"), 1)));
    ker2.push(blk("Kcap", k as i64));
    ker2.extend((1..j).rev().map(|i| blk(format!("Kc{i}-"), 1)));
    ker2.extend([blk("Kcj+", 0), blk("RtK", 1), blk(format!("Kc{j}-"), 1)]);
    let mut coker2 = vec![
        blk("Cv0", l as i64),
        blk("Rt", 1),
        blk("Cuj", k as i64),
        blk("Ca+", cp(s.a())),
    ];
    coker2.extend((j + 1..=l).rev().map(|i| blk(format!("Cc{i}-"), c(i))));
    coker2.push(blk("Ccap", fsum));
    coker2.extend((1..j).rev().map(|i| blk(format!("Cc{i}-"), c(i))));
    coker2.extend([
        blk("RtC", 1),
        blk("Rnd", nd),
        blk("Ccj+", cp(c(j))),
        blk(format!("Cc{j}-"), c(j)),
    ]);

    let full_ker = layout(&ker2)?;
    let full_coker = layout(&coker2)?;
    let mut lg = Ledger::new(layout(&ker)?, layout(&coker)?);
    lg.move_to("sigma0", LedgerColumn::Kernel, "Kuj", 1)?;
    lg.reorder("sigma1", LedgerColumn::Kernel, &labels_without(&full_ker, &["RtK"]))?;
    lg.move_to("sigma2.rt", LedgerColumn::Cokernel, "Rt", 1)?;
    lg.move_to("sigma2.cu", LedgerColumn::Cokernel, "Cuj", 2)?;
    lg.reorder("sigma3", LedgerColumn::Cokernel, &labels_without(&full_coker, &["RtC"]))?;
    lg.remove_pairs("rt_pair", &full_ker, &full_coker, &[("RtK", "RtC", Sign::Plus)])?;

    let total = lg.total();
    let sigma0 = sigma0_tilde_oracle(l, k)?;
    let sigma0_closed = Sign::from_parity(k as i64);
    let conformal = conformal_glue_sign(k, l, j)?.ledger;
    let sigma_tt = total * sigma0 * Sign::from_parity(k as i64) * glued_capping_sign(c(j), s.params);
    let tokens = tt_tokens(j);
    let boundary = SignExpr::with_tokens(sigma_tt * conformal, tokens.clone());
    let below: i64 = s.c[..j - 1].iter().sum();
    let boundary_closed = SignExpr::with_tokens(Sign::from_parity(1 + l as i64 + k as i64 + below), tokens);

    Ok(TtildeReport {
        ledger: lg,
        total,
        closed_form: s.closed_form(),
        sigma0,
        sigma0_closed,
        conformal,
        boundary,
        boundary_closed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainmapVerdict {
    pub t: TReport,
    pub ttilde: TtildeReport,
    /// Forced by the two ends having opposite boundary orientations.
    pub derived: TokenRelation,
    /// `ε0 Π μ_i = (-1)^(Σ_{i<j}|c_i|) μ0 ε_j`, the chain map equation at this word.
    pub claimed: TokenRelation,
    /// `Φ∂ = ∂Φ` at `a`, computed in the DGA engine, holds exactly when `claimed` does.
    pub leibniz_agrees: bool,
}

impl ChainmapVerdict {
    pub fn holds(&self) -> bool {
        self.t.agrees() && self.ttilde.agrees() && self.derived == self.claimed && self.leibniz_agrees
    }
}

pub fn chainmap_cancellation(t: &TScenario, tt: &TtildeScenario) -> Result<ChainmapVerdict, ScenarioError> {
    if t.word() != tt.word() {
        return Err(ScenarioError::WordMismatch(format!(
            "{:?} versus {:?}",
            t.word(),
            tt.word()
        )));
    }
    let tr = chainmap_t_sign(t)?;
    let ttr = chainmap_ttilde_sign(tt)?;
    let derived = tr.boundary.equals(&(ttr.boundary.clone() * Sign::Minus));
    let below: i64 = tt.c[..tt.j - 1].iter().sum();
    let claimed = SignExpr::with_tokens(Sign::Plus, t_tokens(t.m()))
        .equals(&SignExpr::with_tokens(Sign::from_parity(below), tt_tokens(tt.j)));
    let leibniz_agrees = leibniz_check(t, tt, &claimed).map_err(ScenarioError::InvalidParameters)?;
    Ok(ChainmapVerdict {
        t: tr,
        ttilde: ttr,
        derived,
        claimed,
        leibniz_agrees,
    })
}

fn leibniz_check(t: &TScenario, tt: &TtildeScenario, claimed: &TokenRelation) -> Result<bool, String> {
    let word = t.word();
    let names: Vec<String> = t_tokens(t.m()).into_iter().chain(tt_tokens(tt.j)).collect();
    let unique: BTreeSet<&String> = names.iter().collect();
    assert_eq!(unique.len(), names.len(), "token names collide");
    let e = |x: Result<usize, crate::dga::DgaError>| x.map_err(|e| e.to_string());
    let z = |s: Sign| BigInt::from(s.to_i64());

    for bits in 0u32..(1 << names.len()) {
        let val = |t: &str| {
            let i = names.iter().position(|n| n == t).expect("known token");
            Sign::from_bool_negative(bits >> i & 1 == 1)
        };
        let mut target = Dga::new(Ring::Integers);
        let letters: Vec<usize> = word
            .iter()
            .enumerate()
            .map(|(i, g)| e(target.add_chord(&format!("w{i}"), *g)))
            .collect::<Result<_, _>>()?;
        let lo = tt.j - 1;
        let hi = lo + tt.k();
        let cj = e(target.add_chord("cj", tt.c[tt.j - 1]))?;
        target
            .set_differential(
                cj,
                Element::monomial(letters[lo..hi].to_vec(), z(val(&format!("eps{}", tt.j)))),
            )
            .map_err(|e| e.to_string())?;

        let mut source = Dga::new(Ring::Integers);
        let a = e(source.add_chord("a", t.a()))?;
        let bs: Vec<usize> = (1..=t.m())
            .map(|i| e(source.add_chord(&format!("b{i}"), t.b(i))))
            .collect::<Result<_, _>>()?;
        source
            .set_differential(a, Element::monomial(bs.clone(), z(val("eps0"))))
            .map_err(|e| e.to_string())?;

        let mut images = vec![Element::zero(); source.len()];
        let mut pos = 0;
        for (i, &b) in bs.iter().enumerate() {
            let len = t.mi(i + 1);
            images[b] = Element::monomial(letters[pos..pos + len].to_vec(), z(val(&format!("mu{}", i + 1))));
            pos += len;
        }
        let mut top = letters[..lo].to_vec();
        top.push(cj);
        top.extend_from_slice(&letters[hi..]);
        images[a] = Element::monomial(top, z(val("mu0")));
        let phi = DgaMorphism::new(Arc::new(source), Arc::new(target), images).map_err(|e| e.to_string())?;
        if phi.check_chain_map().holds() != claimed.holds(val) {
            return Ok(false);
        }
    }
    Ok(true)
}

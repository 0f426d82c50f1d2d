//! Randomized and exhaustive sweeps over every sign lemma.
//!
//! Each scenario draws from its own RNG, seeded from the sweep seed, the
//! lemma and the scenario index, so results do not depend on scheduling.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::canonical::{canonical_gluing_check, ClosedDiskProblem};
use super::chainmap::{chainmap_cancellation, chainmap_t_sign, chainmap_ttilde_sign, TScenario, TtildeScenario};
use super::conformal::{conformal_glue_sign, conformal_glue_sign_with_normal, GlueNormal};
use super::dsquared::{
    dsquared_boundary_cancellation, dsquared_rearrangement_sign, DsquaredConfig, DsquaredPair, DsquaredScenario,
};
use super::trivial::trivial_cobordism_sign;
use super::{CappingSystemParams, ScenarioError};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_m: usize,
    pub max_r: usize,
    pub max_l: usize,
    pub grading_min: i64,
    pub grading_max: i64,
    pub n_values: Vec<u32>,
    pub seed: u64,
    /// Random scenarios per randomized lemma.
    pub samples: usize,
    /// Bound on `m1` and `m2` for the exhaustive conformal sweep.
    pub conformal_max: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_m: 5,
            max_r: 5,
            max_l: 5,
            grading_min: -3,
            grading_max: 4,
            n_values: vec![1, 2, 3],
            seed: 0,
            samples: 2000,
            conformal_max: 7,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |msg: String| Err(ScenarioError::InvalidParameters(msg));
        if self.max_m < 3 || self.max_r < 2 || self.max_l < 2 {
            return bad(format!(
                "need max_m >= 3, max_r >= 2, max_l >= 2, got {}, {}, {}",
                self.max_m, self.max_r, self.max_l
            ));
        }
        if self.grading_min > self.grading_max {
            return bad(format!(
                "empty grading range {}..={}",
                self.grading_min, self.grading_max
            ));
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return bad("n values must be positive and non-empty".into());
        }
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        if self.conformal_max < 2 {
            return bad(format!(
                "conformal bound must be at least 2, got {}",
                self.conformal_max
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSummary {
    pub name: &'static str,
    pub total: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub lemma: &'static str,
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub lemmas: Vec<LemmaSummary>,
    pub first_failure: Option<Counterexample>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.lemmas.iter().all(|l| l.passed == l.total)
    }

    pub fn lemma(&self, name: &str) -> Option<&LemmaSummary> {
        self.lemmas.iter().find(|l| l.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lemmas {
            let status = if l.passed == l.total { "ok" } else { "FAIL" };
            let _ = writeln!(out, "{:<16} {:>6}/{:<6} {status}", l.name, l.passed, l.total);
        }
        if let Some(c) = &self.first_failure {
            let _ = writeln!(out, "\nfirst counterexample: {} #{}\n{}", c.lemma, c.index, c.detail);
        }
        out
    }

    /// Flat `key=value` lines.
    pub fn render_summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed={}", self.config.seed);
        for l in &self.lemmas {
            let _ = writeln!(out, "{}.total={}", l.name, l.total);
            let _ = writeln!(out, "{}.passed={}", l.name, l.passed);
        }
        let _ = writeln!(out, "all_pass={}", self.all_pass());
        if let Some(c) = &self.first_failure {
            let _ = writeln!(out, "first_failure={}#{}", c.lemma, c.index);
        }
        out
    }
}

type Outcome = Result<(), String>;
type Case = fn(&mut Draw) -> Outcome;

fn rng_for(seed: u64, lemma: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(lemma);
    r.set_word_pos(index as u128 * 1024);
    r
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn err(e: ScenarioError) -> String {
    format!("error: {e}")
}

struct Draw<'a> {
    cfg: &'a SweepConfig,
    rng: ChaCha8Rng,
}

impl Draw<'_> {
    fn grading(&mut self) -> i64 {
        self.rng.gen_range(self.cfg.grading_min..=self.cfg.grading_max)
    }

    fn gradings(&mut self, len: usize) -> Vec<i64> {
        (0..len).map(|_| self.grading()).collect()
    }

    fn params(&mut self) -> CappingSystemParams {
        let n = self.cfg.n_values[self.rng.gen_range(0..self.cfg.n_values.len())];
        CappingSystemParams::new(n).expect("validated n")
    }

    fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }
}

fn dsquared_case(d: &mut Draw) -> Outcome {
    let m = d.range(3, d.cfg.max_m);
    let r = d.range(2, d.cfg.max_r);
    let k = d.range(1, r);
    let f = d.gradings(m - 1);
    let mut b = d.gradings(r);
    b[k - 1] = f.iter().sum::<i64>() + 1;
    let params = d.params();
    let s = DsquaredScenario::new(m, k, r, b, f, params).map_err(err)?;
    let rep = dsquared_rearrangement_sign(&s).map_err(err)?;
    check(rep.agrees(), || {
        format!("{s:?}\n{}closed form {}", rep.ledger, rep.closed_form)
    })
}

fn dsquared_pair_case(d: &mut Draw) -> Outcome {
    let len = d.range(3, d.cfg.max_r + 1);
    let word = d.gradings(len);
    let params = d.params();
    let config = |d: &mut Draw| {
        let inner = d.range(2, len - 1);
        let k = d.range(1, len - inner + 1);
        DsquaredConfig { k, inner }
    };
    let first = config(d);
    let mut second = config(d);
    while second == first {
        second = config(d);
    }
    let pair = DsquaredPair {
        word,
        first,
        second,
        params,
    };
    let v = dsquared_boundary_cancellation(&pair).map_err(err)?;
    check(v.holds(), || format!("{pair:?}\n{v:?}"))
}

fn random_t(d: &mut Draw) -> Result<TScenario, String> {
    let m = d.range(2, d.cfg.max_m);
    let sub: Vec<Vec<i64>> = (0..m)
        .map(|_| {
            let mi = d.range(2, d.cfg.max_r);
            d.gradings(mi)
        })
        .collect();
    let params = d.params();
    TScenario::new(sub, params).map_err(err)
}

fn t_case(d: &mut Draw) -> Outcome {
    let s = random_t(d)?;
    let r = chainmap_t_sign(&s).map_err(err)?;
    check(r.agrees(), || format!("{s:?}\n{}{r:?}", r.ledger))
}

fn ttilde_case(d: &mut Draw) -> Outcome {
    let l = d.range(2, d.cfg.max_l);
    let k = d.range(2, d.cfg.max_m);
    let j = d.range(1, l);
    let c = d.gradings(l);
    let f = d.gradings(k);
    let params = d.params();
    let s = TtildeScenario::with_rigid_cj(j, c, f, params).map_err(err)?;
    let r = chainmap_ttilde_sign(&s).map_err(err)?;
    check(r.agrees(), || format!("{s:?}\n{}{r:?}", r.ledger))
}

fn cancel_case(d: &mut Draw) -> Outcome {
    let t = random_t(d)?;
    let word = t.word();
    let k = d.range(2, word.len() - 1);
    let lo = d.range(0, word.len() - k);
    let f = word[lo..lo + k].to_vec();
    let mut c: Vec<i64> = word[..lo].to_vec();
    c.push(0);
    c.extend_from_slice(&word[lo + k..]);
    let tt = TtildeScenario::with_rigid_cj(lo + 1, c, f, t.params).map_err(err)?;
    let v = chainmap_cancellation(&t, &tt).map_err(err)?;
    check(v.holds(), || format!("{t:?}\n{tt:?}\n{v:?}"))
}

fn canonical_case(d: &mut Draw) -> Outcome {
    let n = d.cfg.n_values[d.range(0, d.cfg.n_values.len() - 1)];
    let problem = |d: &mut Draw| {
        let token = if d.rng.gen_bool(0.5) { Sign::Minus } else { Sign::Plus };
        ClosedDiskProblem::with_extras(n, d.range(0, 2), d.range(0, 2), token)
    };
    let a = problem(d);
    let b = problem(d);
    let v = canonical_gluing_check(&a, &b).map_err(err)?;
    check(v.holds() && v.glued_token == a.token * b.token, || {
        format!("{a:?}\n{b:?}\n{v:?}")
    })
}

fn run_random(
    cfg: &SweepConfig,
    name: &'static str,
    lemma: u64,
    case: fn(&mut Draw) -> Outcome,
) -> (LemmaSummary, Option<Counterexample>) {
    let outcomes: Vec<Outcome> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut d = Draw {
                cfg,
                rng: rng_for(cfg.seed, lemma, i),
            };
            case(&mut d)
        })
        .collect();
    summarize(name, outcomes)
}

fn summarize(name: &'static str, outcomes: Vec<Outcome>) -> (LemmaSummary, Option<Counterexample>) {
    let total = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first = outcomes.into_iter().enumerate().find_map(|(index, o)| {
        o.err().map(|detail| Counterexample {
            lemma: name,
            index,
            detail,
        })
    });
    (LemmaSummary { name, total, passed }, first)
}

fn conformal_outcomes(max: usize) -> Vec<Outcome> {
    let mut cases = Vec::new();
    for m1 in 2..=max {
        for m2 in 2..=max {
            for k in 1..=m2 {
                cases.push((m1, m2, k));
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(m1, m2, k)| {
            let g = conformal_glue_sign(m1, m2, k).map_err(err)?;
            let alt = conformal_glue_sign_with_normal(m1, m2, k, GlueNormal::FirstInnerPuncture).map_err(err)?;
            check(g.agrees() && alt == g.ledger, || {
                format!("{g:?}\nalternative normal {alt:?}")
            })
        })
        .collect()
}

fn trivial_outcomes(cfg: &SweepConfig) -> Vec<Outcome> {
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        for d_a in 1..=2 {
            let p = CappingSystemParams::with_d_a(n, d_a).expect("validated n");
            for g in cfg.grading_min..=cfg.grading_max {
                out.push(match trivial_cobordism_sign(g, p) {
                    Ok(r) => check(r.agrees(), || format!("{}{r:?}", r.ledger)),
                    Err(e) => Err(err(e)),
                });
            }
        }
    }
    out
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, ScenarioError> {
    cfg.validate()?;
    let mut parts = vec![summarize("conformal", conformal_outcomes(cfg.conformal_max))];
    let random: [(&'static str, Case); 6] = [
        ("dsquared", dsquared_case),
        ("dsquared_pairs", dsquared_pair_case),
        ("chainmap_t", t_case),
        ("chainmap_ttilde", ttilde_case),
        ("chainmap_cancel", cancel_case),
        ("canonical", canonical_case),
    ];
    for (i, (name, case)) in random.into_iter().enumerate() {
        parts.push(run_random(cfg, name, i as u64 + 1, case));
    }
    parts.push(summarize("trivial", trivial_outcomes(cfg)));
    let first_failure = parts.iter().find_map(|(_, c)| c.clone());
    Ok(SweepReport {
        config: cfg.clone(),
        lemmas: parts.into_iter().map(|(l, _)| l).collect(),
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes_and_is_deterministic() {
        let cfg = SweepConfig {
            samples: 40,
            conformal_max: 4,
            seed: 7,
            ..SweepConfig::default()
        };
        let a = run_sweep(&cfg).unwrap();
        assert!(a.all_pass(), "{}", a.render_text());
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a.render_summary(), b.render_summary());
        assert_eq!(a.lemma("trivial").unwrap().total, 3 * 2 * 8);
    }

    #[test]
    fn rejects_bad_bounds() {
        let cfg = SweepConfig {
            max_m: 2,
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg).is_err());
        let cfg = SweepConfig {
            n_values: vec![],
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg).is_err());
    }
}

//! Formal models of capped ∂̄-problems and their gluing sequences. Every
//! kernel and cokernel is a labelled block whose dimension is only known
//! modulo 2; the gluing sequences are rearranged block by block and the
//! accumulated Koszul signs are compared with closed forms.

mod canonical;
mod chainmap;
mod conformal;
mod dsquared;
mod ledger;
pub mod sweep;
mod tokens;
mod trivial;

use thiserror::Error;

use crate::graded_lines::LinesError;
use crate::sign::{parity, Sign};

pub use canonical::{canonical_gluing_check, CanonicalVerdict, ClosedDiskProblem};
pub use chainmap::{
    chainmap_cancellation, chainmap_t_sign, chainmap_ttilde_sign, nu0_oracle, sigma0_tilde_oracle, ChainmapVerdict,
    TReport, TScenario, TtildeReport, TtildeScenario,
};
pub use conformal::{
    conformal_closed_form, conformal_glue_sign, conformal_glue_sign_with_normal, ConformalGlue, ConformalSlot,
    GlueNormal, SignedSymbol,
};
pub use dsquared::{
    dsquared_boundary_cancellation, dsquared_rearrangement_sign, sigma0_oracle, BoundaryVerdict, DsquaredConfig,
    DsquaredPair, DsquaredReport, DsquaredScenario,
};
pub use ledger::{Ledger, LedgerColumn, LedgerStep, StepKind};
pub use tokens::{SignExpr, TokenRelation};
pub use trivial::{trivial_cobordism_sign, TrivialReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("rigidity violated: {0}")]
    NotRigid(String),
    #[error("scenarios are not over the same word: {0}")]
    WordMismatch(String),
    #[error(transparent)]
    Lines(#[from] LinesError),
}

/// Dimension `n` of the Legendrian and number `d_A` of auxiliary directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CappingSystemParams {
    n: u32,
    d_a: u8,
}

impl CappingSystemParams {
    /// Default rule: `d_A = 1` if `n = 1`, otherwise `d_A = 2`.
    pub fn new(n: u32) -> Result<Self, ScenarioError> {
        Self::with_d_a(n, if n == 1 { 1 } else { 2 })
    }

    pub fn with_d_a(n: u32, d_a: u8) -> Result<Self, ScenarioError> {
        if n == 0 {
            return Err(ScenarioError::InvalidParameters("n must be positive".into()));
        }
        if !(1..=2).contains(&d_a) {
            return Err(ScenarioError::InvalidParameters(format!(
                "d_A must be 1 or 2, got {d_a}"
            )));
        }
        Ok(CappingSystemParams { n, d_a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d_a(&self) -> u8 {
        self.d_a
    }

    /// `n + d_A`, the dimension of the auxiliary summand.
    pub fn nd(&self) -> i64 {
        self.n as i64 + self.d_a as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Kernel and cokernel parities of a capping operator, per the admissibility
/// condition on capping systems.
pub fn capping_parities(grading: i64, polarity: Polarity, params: CappingSystemParams) -> (u8, u8) {
    match polarity {
        Polarity::Positive => (0, parity(grading + params.nd() + 1)),
        Polarity::Negative => (1, parity(grading)),
    }
}

/// Sign of the glued capping disk at a chord relative to the canonical
/// orientation: `(-1)^(|p| + n + d_A + 1)`.
pub fn glued_capping_sign(grading: i64, params: CappingSystemParams) -> Sign {
    Sign::from_parity(grading + params.nd() + 1)
}

/// A capping operator with its chosen orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormalCappingOp {
    pub chord_grading: i64,
    pub polarity: Polarity,
    pub ker_parity: u8,
    pub coker_parity: u8,
    pub orient: Sign,
}

impl FormalCappingOp {
    pub fn new(grading: i64, polarity: Polarity, params: CappingSystemParams, orient: Sign) -> Self {
        let (ker_parity, coker_parity) = capping_parities(grading, polarity, params);
        FormalCappingOp {
            chord_grading: grading,
            polarity,
            ker_parity,
            coker_parity,
            orient,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiskSetting {
    LagrangianProjection,
    Symplectization,
    Cobordism,
}

/// A punctured disk with one positive and `neg_chords.len()` negative
/// punctures. Only disks with at least two negative punctures are modelled;
/// for those the cokernel is the space of conformal variations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalDiskOp {
    pub pos_chord: i64,
    pub neg_chords: Vec<i64>,
    pub setting: DiskSetting,
    pub rigid: bool,
}

impl FormalDiskOp {
    pub fn new(pos_chord: i64, neg_chords: Vec<i64>, setting: DiskSetting, rigid: bool) -> Result<Self, ScenarioError> {
        let d = FormalDiskOp {
            pos_chord,
            neg_chords,
            setting,
            rigid,
        };
        if d.neg_chords.len() < 2 {
            return Err(ScenarioError::InvalidParameters(format!(
                "disk needs at least two negative punctures, got {}",
                d.neg_chords.len()
            )));
        }
        if rigid && d.expected_dimension() != 0 {
            return Err(ScenarioError::NotRigid(format!(
                "{:?} disk ({}; {:?}) has dimension {}",
                d.setting,
                d.pos_chord,
                d.neg_chords,
                d.expected_dimension()
            )));
        }
        Ok(d)
    }

    /// Dimension of the moduli space (after quotienting translations).
    pub fn expected_dimension(&self) -> i64 {
        let s: i64 = self.neg_chords.iter().sum();
        match self.setting {
            DiskSetting::LagrangianProjection | DiskSetting::Symplectization => self.pos_chord - s - 1,
            DiskSetting::Cobordism => self.pos_chord - s,
        }
    }

    /// Actual kernel dimension for a rigid disk: the ℝ-translation direction
    /// in the symplectization, nothing otherwise.
    pub fn ker_dim(&self) -> usize {
        match self.setting {
            DiskSetting::Symplectization => 1,
            _ => 0,
        }
    }

    /// Cokernel dimension for a rigid disk: the conformal variations.
    pub fn coker_dim(&self) -> usize {
        self.neg_chords.len() - 2
    }

    pub fn ker_parity(&self) -> u8 {
        (self.ker_dim() % 2) as u8
    }

    pub fn coker_parity(&self) -> u8 {
        (self.coker_dim() % 2) as u8
    }
}

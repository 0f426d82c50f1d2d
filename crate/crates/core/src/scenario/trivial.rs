//! The trivial strip over a chord `a` in the cylinder cobordism, broken as a
//! symplectization strip on top of a cobordism strip.

use super::ledger::{labels_without, layout, Ledger, LedgerColumn};
use super::{glued_capping_sign, CappingSystemParams, ScenarioError};
use crate::graded_lines::{exact_sequence_oracle, BasisChoice};
use crate::linalg::Matrix;
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialReport {
    pub grading: i64,
    pub params: CappingSystemParams,
    pub ledger: Ledger,
    /// Sign of the gluing rearrangement.
    pub sigma1: Sign,
    pub sigma1_closed: Sign,
    /// Sign of the sequence identifying the glued kernel, from explicit matrices.
    pub sigma0: Sign,
    /// Glued capping disk.
    pub sigma3: Sign,
    pub total: Sign,
}

impl TrivialReport {
    /// The strip counts with sign `+1`.
    pub fn agrees(&self) -> bool {
        self.ledger.oracle_agrees()
            && self.sigma1 == self.sigma1_closed
            && self.sigma0 == Sign::Plus
            && self.total == Sign::Plus
    }
}

fn blk(label: &str, p: i64) -> (String, i64) {
    (label.to_string(), p)
}

pub fn trivial_cobordism_sign(grading: i64, params: CappingSystemParams) -> Result<TrivialReport, ScenarioError> {
    let nd = params.nd();
    let cp = grading + nd + 1;
    let a = grading;
    let ker = [
        blk("Ku1", 1),
        blk("Kha+", 0),
        blk("Kma-", 1),
        blk("Ku2", 1),
        blk("Kma+", 0),
        blk("Kla-", 1),
    ];
    let coker = [
        blk("Cha+", cp),
        blk("Cma-", a),
        blk("Rt", 1),
        blk("Rnd", nd),
        blk("Cma+", cp),
        blk("Cla-", a),
    ];
    let ker2 = [
        blk("Ku1", 1),
        blk("Ku2", 1),
        blk("Kha+", 0),
        blk("Kla-", 1),
        blk("Kma+", 0),
        blk("Rtp", 1),
        blk("Kma-", 1),
    ];
    let coker2 = [
        blk("Rt", 1),
        blk("Cha+", cp),
        blk("Cla-", a),
        blk("Rtp3", 1),
        blk("Rnd", nd),
        blk("Cma+", cp),
        blk("Cma-", a),
    ];
    let full_ker = layout(&ker2)?;
    let full_coker = layout(&coker2)?;
    let mut l = Ledger::new(layout(&ker)?, layout(&coker)?);
    l.reorder("kernel", LedgerColumn::Kernel, &labels_without(&full_ker, &["Rtp"]))?;
    l.move_to("rt_to_top", LedgerColumn::Cokernel, "Rt", 0)?;
    l.reorder("align", LedgerColumn::Cokernel, &labels_without(&full_coker, &["Rtp3"]))?;
    l.remove_pairs("removal", &full_ker, &full_coker, &[("Rtp", "Rtp3", Sign::Plus)])?;

    let sigma1 = l.total();
    let alpha = Matrix::from_i64(2, 1, &[1, 1]);
    let beta = Matrix::from_i64(1, 2, &[-1, 1]);
    let gamma = Matrix::zeros(0, 1);
    let sigma0 = exact_sequence_oracle(&alpha, &beta, &gamma, BasisChoice::Standard)?;
    let sigma3 = glued_capping_sign(grading, params);
    Ok(TrivialReport {
        grading,
        params,
        ledger: l,
        sigma1,
        sigma1_closed: Sign::from_parity(grading + nd + 1),
        sigma0,
        sigma3,
        total: sigma0 * sigma1 * sigma3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_counts_plus_one() {
        for n in 1..4 {
            for d_a in 1..=2 {
                let p = CappingSystemParams::with_d_a(n, d_a).unwrap();
                for g in -3..=4 {
                    let r = trivial_cobordism_sign(g, p).unwrap();
                    assert!(r.agrees(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn step_values() {
        let p = CappingSystemParams::new(2).unwrap();
        let r = trivial_cobordism_sign(3, p).unwrap();
        assert_eq!(r.ledger.sign_of("rt_to_top"), Sign::from_parity(p.nd() + 1));
        assert_eq!(r.ledger.sign_of("removal"), Sign::Plus);
    }
}

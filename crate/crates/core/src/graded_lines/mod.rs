//! Koszul signs for ordered direct sums of formal oriented spaces, and the
//! orientation convention for four-term exact sequences.

mod column;
mod exact;
mod oracle;
pub mod random;

use thiserror::Error;

pub use column::{block_reorder_sign, koszul_sign, FormalSummand, SummandColumn};
pub use exact::{
    exact_sequence_transport, exact_sequence_transport_with_complement, BlockMap, ExactSequenceData, Slot,
};
pub use oracle::{block_reorder_oracle, exact_sequence_oracle, BasisChoice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("target order omits label {0:?}")]
    MissingLabel(String),
    #[error("zero-dimensional summand {0:?} must carry orientation +1")]
    ZeroDimensionalOrientation(String),
    #[error("inconsistent identification data: {0}")]
    Inconsistent(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::sign::Sign;

    fn col(blocks: &[(&str, usize)]) -> SummandColumn {
        SummandColumn::from_dims(blocks).unwrap()
    }

    #[test]
    fn odd_odd_transposition() {
        let c = col(&[("A", 1), ("B", 1)]);
        let (s, out) = block_reorder_sign(&c, &["B", "A"]).unwrap();
        assert_eq!(s, Sign::Minus);
        assert_eq!(out.labels(), vec!["B", "A"]);
        assert_eq!(out.sign(), Sign::Minus);
    }

    #[test]
    fn even_block_moves_freely() {
        let c = col(&[("A", 2), ("B", 3)]);
        assert_eq!(block_reorder_sign(&c, &["B", "A"]).unwrap().0, Sign::Plus);
    }

    #[test]
    fn five_block_reversal_matches_oracle() {
        let c = col(&[("A", 1), ("B", 0), ("C", 1), ("D", 1), ("E", 0)]);
        let (s, _) = block_reorder_sign(&c, &["E", "D", "C", "B", "A"]).unwrap();
        let oracle = block_reorder_oracle(&[1, 0, 1, 1, 0], &[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(oracle, Sign::Minus);
        assert_eq!(s, oracle);
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(block_reorder_oracle(&[1, 1], &[1, 0]).unwrap(), Sign::Minus);
        assert_eq!(block_reorder_oracle(&[2, 3], &[1, 0]).unwrap(), Sign::Plus);
        assert_eq!(block_reorder_oracle(&[1, 1, 1], &[2, 0, 1]).unwrap(), Sign::Plus);
        assert!(block_reorder_oracle(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn reorder_rejects_bad_targets() {
        let c = col(&[("A", 1), ("B", 1)]);
        assert_eq!(
            block_reorder_sign(&c, &["A", "Z"]).unwrap_err(),
            LinesError::UnknownLabel("Z".into())
        );
        assert_eq!(
            block_reorder_sign(&c, &["A", "A"]).unwrap_err(),
            LinesError::DuplicateLabel("A".into())
        );
        assert!(matches!(
            block_reorder_sign(&c, &["A"]).unwrap_err(),
            LinesError::MissingLabel(_)
        ));
        assert!(SummandColumn::from_dims(&[("A", 1), ("A", 2)]).is_err());
        assert!(FormalSummand::new("Z", 0, Sign::Minus).is_err());
    }

    #[test]
    fn remove_pays_for_blocks_below() {
        let c = col(&[("A", 1), ("B", 1), ("C", 2)]);
        let (rest, removed, cost) = c.remove("A").unwrap();
        assert_eq!(removed.label(), "A");
        assert_eq!(cost, Sign::Minus);
        assert_eq!(rest.labels(), vec!["B", "C"]);
    }

    fn iso_data(beta_sign: Sign) -> ExactSequenceData {
        ExactSequenceData {
            v1: SummandColumn::empty(),
            w1: col(&[("x", 2)]),
            w2: col(&[("y", 2)]),
            v2: SummandColumn::empty(),
            alpha: vec![],
            beta: vec![BlockMap::new("x", "y", beta_sign)],
            gamma: vec![],
        }
    }

    #[test]
    fn isomorphism_case_transports_orientation() {
        let mut d = iso_data(Sign::Plus);
        d.w1 = d.w1.with_sign(Sign::Minus);
        assert_eq!(exact_sequence_transport(&d, Slot::W2).unwrap(), Sign::Minus);
        let d = iso_data(Sign::Minus);
        assert_eq!(exact_sequence_transport(&d, Slot::W2).unwrap(), Sign::Minus);
    }

    #[test]
    fn right_end_isomorphism() {
        let d = ExactSequenceData {
            v1: SummandColumn::empty(),
            w1: SummandColumn::empty(),
            w2: col(&[("y", 3)]),
            v2: col(&[("z", 3)]).with_sign(Sign::Minus),
            alpha: vec![],
            beta: vec![],
            gamma: vec![BlockMap::identity("y", "z")],
        };
        assert_eq!(exact_sequence_transport(&d, Slot::W2).unwrap(), Sign::Minus);
    }

    #[test]
    fn structural_errors() {
        let mut d = iso_data(Sign::Plus);
        d.beta.clear();
        assert!(matches!(
            exact_sequence_transport(&d, Slot::W2),
            Err(LinesError::Inconsistent(_))
        ));
        let mut d = iso_data(Sign::Plus);
        d.w2 = col(&[("y", 1)]);
        assert!(exact_sequence_transport(&d, Slot::W2).is_err());
    }

    #[test]
    fn oracle_trivial_cases() {
        let z = |r, c| Matrix::zeros(r, c);
        let id = Matrix::identity(2);
        assert_eq!(
            exact_sequence_oracle(&z(2, 0), &id, &z(0, 2), BasisChoice::Standard).unwrap(),
            Sign::Plus
        );
        let flip = Matrix::from_i64(2, 2, &[1, 0, 0, -1]);
        assert_eq!(
            exact_sequence_oracle(&z(2, 0), &flip, &z(0, 2), BasisChoice::Standard).unwrap(),
            Sign::Minus
        );
    }

    #[test]
    fn oracle_dims_1_2_2_1() {
        let a = Matrix::from_i64(2, 1, &[1, 1]);
        let b = Matrix::from_i64(2, 2, &[1, -1, 2, -2]);
        let g = Matrix::from_i64(1, 2, &[2, -1]);
        let s = exact_sequence_oracle(&a, &b, &g, BasisChoice::Standard).unwrap();
        // [α(v) | e1] = [[1,1],[1,0]] has det -1; [u | β(e1)] = [[1/2,1],[0,2]] has det 1.
        assert_eq!(s, Sign::Minus);
        for seed in 0..20 {
            assert_eq!(
                exact_sequence_oracle(&a, &b, &g, BasisChoice::Randomized(seed)).unwrap(),
                s
            );
        }
    }

    #[test]
    fn oracle_names_failing_condition() {
        let a = Matrix::from_i64(2, 1, &[1, 1]);
        let b = Matrix::from_i64(2, 2, &[1, 0, 0, 1]);
        let g = Matrix::zeros(0, 2);
        let e = exact_sequence_oracle(&a, &b, &g, BasisChoice::Standard).unwrap_err();
        assert_eq!(e, LinesError::NotExact("β∘α ≠ 0".into()));
        let a0 = Matrix::zeros(2, 0);
        let b1 = Matrix::from_i64(1, 2, &[1, 0]);
        let e = exact_sequence_oracle(&a0, &b1, &Matrix::zeros(0, 1), BasisChoice::Standard).unwrap_err();
        assert!(e.to_string().contains("ker β ≠ im α"), "{e}");
    }
}

use std::fmt;

use super::ScenarioError;
use crate::graded_lines::{block_reorder_oracle, SummandColumn};
use crate::sign::Sign;

/// Steps whose column has total dimension at most this are replayed through
/// the permutation-matrix oracle.
const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LedgerColumn {
    Kernel,
    Cokernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Reorder(LedgerColumn),
    PairRemoval,
    Factor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerStep {
    pub name: String,
    pub kind: StepKind,
    pub sign: Sign,
    /// Independent recomputation of a reorder, when small enough.
    pub oracle: Option<Sign>,
}

impl fmt::Display for LedgerStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StepKind::Reorder(LedgerColumn::Kernel) => "reorder ker",
            StepKind::Reorder(LedgerColumn::Cokernel) => "reorder coker",
            StepKind::PairRemoval => "remove pair",
            StepKind::Factor => "factor",
        };
        write!(f, "{}: {kind} {}", self.name, self.sign)?;
        if let Some(o) = self.oracle {
            write!(f, " (oracle {o})")?;
        }
        Ok(())
    }
}

/// A kernel column and a cokernel column being rearranged into a target
/// layout, with every sign paid along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    ker: SummandColumn,
    coker: SummandColumn,
    steps: Vec<LedgerStep>,
}

impl Ledger {
    pub fn new(ker: SummandColumn, coker: SummandColumn) -> Self {
        Ledger {
            ker,
            coker,
            steps: Vec::new(),
        }
    }

    pub fn kernel(&self) -> &SummandColumn {
        &self.ker
    }

    pub fn cokernel(&self) -> &SummandColumn {
        &self.coker
    }

    pub fn steps(&self) -> &[LedgerStep] {
        &self.steps
    }

    fn column(&self, c: LedgerColumn) -> &SummandColumn {
        match c {
            LedgerColumn::Kernel => &self.ker,
            LedgerColumn::Cokernel => &self.coker,
        }
    }

    /// Reorders one column into `target` (a full list of its labels).
    pub fn reorder<S: AsRef<str>>(
        &mut self,
        name: &str,
        column: LedgerColumn,
        target: &[S],
    ) -> Result<Sign, ScenarioError> {
        let col = self.column(column);
        let (next, sign) = col.reorder(target)?;
        let oracle = if col.total_dim() <= ORACLE_LIMIT {
            let dims: Vec<usize> = col.summands().iter().map(|s| s.dim()).collect();
            Some(block_reorder_oracle(&dims, &col.order_of(target)?)?)
        } else {
            None
        };
        match column {
            LedgerColumn::Kernel => self.ker = next,
            LedgerColumn::Cokernel => self.coker = next,
        }
        self.steps.push(LedgerStep {
            name: name.to_string(),
            kind: StepKind::Reorder(column),
            sign,
            oracle,
        });
        Ok(sign)
    }

    /// Moves one block to `index`, keeping the others in order.
    pub fn move_to(
        &mut self,
        name: &str,
        column: LedgerColumn,
        label: &str,
        index: usize,
    ) -> Result<Sign, ScenarioError> {
        let col = self.column(column);
        let mut target: Vec<String> = col
            .labels()
            .into_iter()
            .filter(|l| *l != label)
            .map(str::to_string)
            .collect();
        if col.position(label).is_none() {
            return Err(crate::graded_lines::LinesError::UnknownLabel(label.into()).into());
        }
        if index > target.len() {
            return Err(ScenarioError::InvalidParameters(format!(
                "cannot move {label} to position {index}"
            )));
        }
        target.insert(index, label.to_string());
        self.reorder(name, column, &target)
    }

    /// Prices removing identified `(kernel, cokernel, map sign)` pairs from
    /// the given full layouts, one pair after the other. What is left must be
    /// the current state of the ledger.
    pub fn remove_pairs(
        &mut self,
        name: &str,
        full_ker: &SummandColumn,
        full_coker: &SummandColumn,
        pairs: &[(&str, &str, Sign)],
    ) -> Result<Sign, ScenarioError> {
        let mut k = full_ker.clone();
        let mut c = full_coker.clone();
        let mut sign = Sign::Plus;
        for (kl, cl, s) in pairs {
            let (k2, a, ka) = k.remove(kl)?;
            let (c2, b, kb) = c.remove(cl)?;
            if a.dim() != b.dim() {
                return Err(ScenarioError::InvalidParameters(format!(
                    "cannot identify {kl} (dim {}) with {cl} (dim {})",
                    a.dim(),
                    b.dim()
                )));
            }
            sign = sign * ka * kb * *s;
            k = k2;
            c = c2;
        }
        for (left, now, what) in [(&k, &self.ker, "kernel"), (&c, &self.coker, "cokernel")] {
            if left.labels() != now.labels() {
                return Err(ScenarioError::InvalidParameters(format!(
                    "{what} layout after removal {:?} differs from ledger state {:?}",
                    left.labels(),
                    now.labels()
                )));
            }
        }
        self.steps.push(LedgerStep {
            name: name.to_string(),
            kind: StepKind::PairRemoval,
            sign,
            oracle: None,
        });
        Ok(sign)
    }

    /// Records an externally computed factor.
    pub fn factor(&mut self, name: &str, sign: Sign) {
        self.steps.push(LedgerStep {
            name: name.to_string(),
            kind: StepKind::Factor,
            sign,
            oracle: None,
        });
    }

    pub fn total(&self) -> Sign {
        self.steps.iter().map(|s| s.sign).product()
    }

    /// Product of the steps whose name starts with `prefix`.
    pub fn sign_of(&self, prefix: &str) -> Sign {
        self.steps
            .iter()
            .filter(|s| s.name.starts_with(prefix))
            .map(|s| s.sign)
            .product()
    }

    /// Every replayed step matches its oracle.
    pub fn oracle_agrees(&self) -> bool {
        self.steps.iter().all(|s| s.oracle.map_or(true, |o| o == s.sign))
    }
}

impl fmt::Display for Ledger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "  {s}")?;
        }
        write!(f, "  total: {}", self.total())
    }
}

/// Builds a column of parity representatives.
pub(crate) fn layout(blocks: &[(String, i64)]) -> Result<SummandColumn, ScenarioError> {
    let dims: Vec<(&str, usize)> = blocks
        .iter()
        .map(|(l, p)| (l.as_str(), p.rem_euclid(2) as usize))
        .collect();
    Ok(SummandColumn::from_dims(&dims)?)
}

pub(crate) fn labels_without(col: &SummandColumn, drop: &[&str]) -> Vec<String> {
    col.labels()
        .into_iter()
        .filter(|l| !drop.contains(l))
        .map(str::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(l: &str, p: i64) -> (String, i64) {
        (l.to_string(), p)
    }

    #[test]
    fn steps_accumulate_and_replay() {
        let ker = layout(&[b("x", 1), b("y", 1), b("z", 0)]).unwrap();
        let coker = layout(&[b("u", 1), b("v", 1)]).unwrap();
        let mut l = Ledger::new(ker, coker);
        assert_eq!(l.move_to("s1", LedgerColumn::Kernel, "y", 0).unwrap(), Sign::Minus);
        assert_eq!(
            l.reorder("s2", LedgerColumn::Cokernel, &["v", "u"]).unwrap(),
            Sign::Minus
        );
        l.factor("cap", Sign::Minus);
        assert_eq!(l.total(), Sign::Minus);
        assert_eq!(l.sign_of("s"), Sign::Plus);
        assert!(l.oracle_agrees());
        assert_eq!(l.kernel().labels(), vec!["y", "x", "z"]);
    }

    #[test]
    fn pair_removal_checks_remainder() {
        let ker = layout(&[b("x", 1)]).unwrap();
        let coker = layout(&[b("u", 1)]).unwrap();
        let mut l = Ledger::new(ker, coker);
        let fk = layout(&[b("t", 1), b("x", 1)]).unwrap();
        let fc = layout(&[b("u", 1), b("t3", 1)]).unwrap();
        // t pays for x; t3 is already at the bottom.
        assert_eq!(
            l.remove_pairs("rm", &fk, &fc, &[("t", "t3", Sign::Plus)]).unwrap(),
            Sign::Minus
        );
        let bad = layout(&[b("t", 1), b("w", 1)]).unwrap();
        assert!(l.remove_pairs("rm", &bad, &fc, &[("t", "t3", Sign::Plus)]).is_err());
    }
}

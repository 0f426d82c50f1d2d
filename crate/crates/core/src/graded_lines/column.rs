use std::collections::{HashMap, HashSet};

use super::LinesError;
use crate::sign::Sign;

/// A formal oriented vector space: a labelled block of known dimension whose
/// orientation is recorded relative to a fixed reference basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSummand {
    label: String,
    dim: usize,
    orient: Sign,
}

impl FormalSummand {
    pub fn new(label: impl Into<String>, dim: usize, orient: Sign) -> Result<Self, LinesError> {
        let label = label.into();
        if dim == 0 && orient == Sign::Minus {
            return Err(LinesError::ZeroDimensionalOrientation(label));
        }
        Ok(FormalSummand { label, dim, orient })
    }

    /// A summand carrying its reference orientation.
    pub fn reference(label: impl Into<String>, dim: usize) -> Self {
        FormalSummand {
            label: label.into(),
            dim,
            orient: Sign::Plus,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orient(&self) -> Sign {
        self.orient
    }

    pub fn is_odd(&self) -> bool {
        self.dim % 2 == 1
    }
}

/// An ordered direct sum of formal summands, together with the product of all
/// reordering costs paid since construction.
///
/// Read as a single oriented space, a column carries the orientation
/// `sign * prod(orient)` relative to the concatenation of the summands'
/// reference bases in the current order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SummandColumn {
    summands: Vec<FormalSummand>,
    sign: Sign,
}

impl SummandColumn {
    pub fn new(summands: Vec<FormalSummand>) -> Result<Self, LinesError> {
        let mut seen = HashSet::new();
        for s in &summands {
            if !seen.insert(s.label.as_str()) {
                return Err(LinesError::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(SummandColumn {
            summands,
            sign: Sign::Plus,
        })
    }

    /// Column of reference-oriented summands from `(label, dim)` pairs.
    pub fn from_dims<S: AsRef<str>>(blocks: &[(S, usize)]) -> Result<Self, LinesError> {
        Self::new(
            blocks
                .iter()
                .map(|(l, d)| FormalSummand::reference(l.as_ref(), *d))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        SummandColumn {
            summands: Vec::new(),
            sign: Sign::Plus,
        }
    }

    pub fn summands(&self) -> &[FormalSummand] {
        &self.summands
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.dim).sum()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.summands.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.summands.iter().position(|s| s.label == label)
    }

    pub fn get(&self, label: &str) -> Option<&FormalSummand> {
        self.summands.iter().find(|s| s.label == label)
    }

    /// Orientation of the whole column relative to the concatenated references.
    pub fn orientation(&self) -> Sign {
        self.sign * self.summands.iter().map(|s| s.orient).product::<Sign>()
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// Same labels and order, every dimension replaced by its parity.
    pub fn parity_reduced(&self) -> Self {
        SummandColumn {
            summands: self
                .summands
                .iter()
                .map(|s| FormalSummand {
                    label: s.label.clone(),
                    dim: s.dim % 2,
                    orient: if s.dim % 2 == 0 { Sign::Plus } else { s.orient },
                })
                .collect(),
            sign: self.sign,
        }
    }

    /// Translates a target order of labels into the list of current indices.
    pub fn order_of<S: AsRef<str>>(&self, target: &[S]) -> Result<Vec<usize>, LinesError> {
        let index: HashMap<&str, usize> = self
            .summands
            .iter()
            .enumerate()
            .map(|(i, s)| (s.label.as_str(), i))
            .collect();
        let mut used = vec![false; self.summands.len()];
        let mut order = Vec::with_capacity(target.len());
        for t in target {
            let t = t.as_ref();
            let &i = index.get(t).ok_or_else(|| LinesError::UnknownLabel(t.to_string()))?;
            if used[i] {
                return Err(LinesError::DuplicateLabel(t.to_string()));
            }
            used[i] = true;
            order.push(i);
        }
        if order.len() != self.summands.len() {
            let missing = self
                .summands
                .iter()
                .zip(&used)
                .find(|(_, u)| !**u)
                .map(|(s, _)| s.label.clone())
                .unwrap_or_default();
            return Err(LinesError::MissingLabel(missing));
        }
        Ok(order)
    }

    /// Returns the reordered column and the Koszul cost of the move.
    pub fn reorder<S: AsRef<str>>(&self, target: &[S]) -> Result<(SummandColumn, Sign), LinesError> {
        let order = self.order_of(target)?;
        let dims: Vec<usize> = self.summands.iter().map(|s| s.dim).collect();
        let cost = koszul_sign(&dims, &order);
        let summands = order.iter().map(|&i| self.summands[i].clone()).collect();
        Ok((
            SummandColumn {
                summands,
                sign: self.sign * cost,
            },
            cost,
        ))
    }

    /// Moves one block to position `index` (0 = top), keeping the others in order.
    pub fn move_to(&self, label: &str, index: usize) -> Result<(SummandColumn, Sign), LinesError> {
        let from = self
            .position(label)
            .ok_or_else(|| LinesError::UnknownLabel(label.to_string()))?;
        let mut labels: Vec<&str> = self.labels();
        let l = labels.remove(from);
        if index > labels.len() {
            return Err(LinesError::Inconsistent(format!(
                "position {index} out of range for block {label}"
            )));
        }
        labels.insert(index, l);
        let labels: Vec<String> = labels.into_iter().map(str::to_string).collect();
        self.reorder(&labels)
    }

    /// Moves the block to the bottom (cost recorded) and drops it.
    pub fn remove(&self, label: &str) -> Result<(SummandColumn, FormalSummand, Sign), LinesError> {
        let (mut moved, cost) = self.move_to(label, self.len().saturating_sub(1))?;
        let last = moved.summands.pop().expect("column is nonempty");
        Ok((moved, last, cost))
    }

    /// Appends a block at the bottom, which is free.
    pub fn push(&self, summand: FormalSummand) -> Result<SummandColumn, LinesError> {
        if self.position(&summand.label).is_some() {
            return Err(LinesError::DuplicateLabel(summand.label));
        }
        let mut out = self.clone();
        out.summands.push(summand);
        Ok(out)
    }
}

/// Koszul sign of moving blocks of the given dimensions into `order`, where
/// `order[j]` is the original index of the block placed at position `j`.
pub fn koszul_sign(dims: &[usize], order: &[usize]) -> Sign {
    let mut new_pos = vec![0usize; order.len()];
    for (j, &i) in order.iter().enumerate() {
        new_pos[i] = j;
    }
    let mut parity = 0u64;
    for i in 0..dims.len() {
        if dims[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..dims.len() {
            if dims[j] % 2 == 1 && new_pos[i] > new_pos[j] {
                parity ^= 1;
            }
        }
    }
    Sign::from_parity(parity as i64)
}

/// Reorders `column` into `target_order` and returns the Koszul cost together
/// with the updated column (whose sign has been multiplied by the cost).
pub fn block_reorder_sign<S: AsRef<str>>(
    column: &SummandColumn,
    target_order: &[S],
) -> Result<(Sign, SummandColumn), LinesError> {
    let (col, cost) = column.reorder(target_order)?;
    Ok((cost, col))
}

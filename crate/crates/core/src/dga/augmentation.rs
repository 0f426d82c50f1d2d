use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Dga, DgaError, Element};
use crate::linalg::{Matrix, Q};

/// A unital algebra map to ℤ, supported on chords of grading 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Augmentation {
    values: BTreeMap<usize, BigInt>,
}

impl Augmentation {
    pub fn zero() -> Self {
        Augmentation::default()
    }

    pub fn new(dga: &Dga, values: BTreeMap<usize, BigInt>) -> Result<Self, DgaError> {
        let mut kept = BTreeMap::new();
        for (id, v) in values {
            if id >= dga.len() {
                return Err(DgaError::IndexOutOfRange(id));
            }
            if v.is_zero() {
                continue;
            }
            if dga.grading(id) != 0 {
                return Err(DgaError::AugmentationOffDegree {
                    chord: dga.chord(id).name.clone(),
                    grading: dga.grading(id),
                    value: v,
                });
            }
            kept.insert(id, v);
        }
        Ok(Augmentation { values: kept })
    }

    pub fn value(&self, id: usize) -> BigInt {
        self.values.get(&id).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> &BTreeMap<usize, BigInt> {
        &self.values
    }

    /// Multiplicative extension with `ε(1) = 1`.
    pub fn eval(&self, e: &Element) -> BigInt {
        let mut total = BigInt::zero();
        for (w, c) in e.terms() {
            let mut p = c.clone();
            for x in w {
                match self.values.get(x) {
                    Some(v) => p *= v,
                    None => {
                        p = BigInt::zero();
                        break;
                    }
                }
            }
            total += p;
        }
        total
    }
}

/// Chords with `ε(∂a) ≠ 0`, with that value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationVerdict {
    pub failures: Vec<(usize, BigInt)>,
}

impl AugmentationVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn augmentation_check(dga: &Dga, aug: &Augmentation) -> AugmentationVerdict {
    let failures = (0..dga.len())
        .filter_map(|a| {
            let v = aug.eval(dga.differential(a));
            (!v.is_zero()).then_some((a, v))
        })
        .collect();
    AugmentationVerdict { failures }
}

/// The linearized differential `C_g -> C_{g-1}` in one grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedGrading {
    pub grading: i64,
    /// Chords of grading `g` (columns).
    pub chords: Vec<usize>,
    /// Chords of grading `g - 1` (rows).
    pub targets: Vec<usize>,
    pub matrix: Matrix,
    pub rank: usize,
    /// `dim ker d_g - rank d_{g+1}` over ℚ.
    pub homology_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearized {
    pub gradings: Vec<LinearizedGrading>,
}

impl Linearized {
    /// `d_{g-1} ∘ d_g = 0` in every grading.
    pub fn squares_to_zero(&self) -> bool {
        let by: BTreeMap<i64, &LinearizedGrading> = self.gradings.iter().map(|g| (g.grading, g)).collect();
        self.gradings.iter().all(|g| match by.get(&(g.grading - 1)) {
            Some(lower) if !g.targets.is_empty() && !lower.targets.is_empty() => lower.matrix.mul(&g.matrix).is_zero(),
            _ => true,
        })
    }

    pub fn grading(&self, g: i64) -> Option<&LinearizedGrading> {
        self.gradings.iter().find(|x| x.grading == g)
    }
}

/// Conjugates by `a ↦ a + ε(a)` and keeps the word-length-one part.
pub fn linearized_differential(dga: &Dga, aug: &Augmentation) -> Result<Linearized, DgaError> {
    let verdict = augmentation_check(dga, aug);
    if let Some((a, v)) = verdict.failures.first() {
        return Err(DgaError::Invalid(format!(
            "augmentation does not annihilate ∂{}: value {v}",
            dga.chord(*a).name
        )));
    }
    let mut by_grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, c) in dga.chords().iter().enumerate() {
        by_grading.entry(c.grading).or_default().push(i);
    }

    // Linear coefficients of φ(∂a): the letter at position i survives, every
    // other letter is replaced by its augmentation value.
    let linear = |a: usize| -> BTreeMap<usize, BigInt> {
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (w, c) in dga.differential(a).terms() {
            for i in 0..w.len() {
                let mut p = c.clone();
                for (j, x) in w.iter().enumerate() {
                    if j != i {
                        p *= aug.value(*x);
                        if p.is_zero() {
                            break;
                        }
                    }
                }
                if !p.is_zero() {
                    *out.entry(w[i]).or_insert_with(BigInt::zero) += p;
                }
            }
        }
        out
    };

    let mut gradings = Vec::new();
    let empty = Vec::new();
    for (&g, chords) in &by_grading {
        let targets = by_grading.get(&(g - 1)).unwrap_or(&empty).clone();
        let mut m = Matrix::zeros(targets.len(), chords.len());
        for (col, &a) in chords.iter().enumerate() {
            for (x, c) in linear(a) {
                if let Some(row) = targets.iter().position(|&t| t == x) {
                    m.set(row, col, Q::from_integer(c));
                }
            }
        }
        let rank = m.rank();
        gradings.push(LinearizedGrading {
            grading: g,
            chords: chords.clone(),
            targets,
            matrix: m,
            rank,
            homology_rank: 0,
        });
    }
    let ranks: BTreeMap<i64, usize> = gradings.iter().map(|g| (g.grading, g.rank)).collect();
    for g in &mut gradings {
        let above = ranks.get(&(g.grading + 1)).copied().unwrap_or(0);
        g.homology_rank = g.chords.len() - g.rank - above;
    }
    Ok(Linearized { gradings })
}

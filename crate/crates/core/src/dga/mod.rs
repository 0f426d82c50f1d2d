//! Free unital noncommutative DGAs over ℤ generated by Reeb chords.

mod augmentation;
mod element;
mod morphism;
pub mod random;
mod tame;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use augmentation::{
    augmentation_check, linearized_differential, Augmentation, AugmentationVerdict, Linearized, LinearizedGrading,
};
pub use element::{Element, Word};
pub use morphism::{capping_change_morphism, compose, ChainMapVerdict, DgaMorphism};
pub use tame::{apply_tame_moves, apply_tame_moves_with_morphism, TameMove};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("unknown chord {0:?}")]
    UnknownChord(String),
    #[error("duplicate chord {0:?}")]
    DuplicateChord(String),
    #[error("invalid chord name {0:?}")]
    InvalidName(String),
    #[error("chord index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("morphisms do not compose: first target {first_target} differs from second source {second_source}")]
    Mismatch {
        first_target: String,
        second_source: String,
    },
    #[error("substitution for {0:?} references the replaced generator")]
    SelfReference(String),
    #[error("augmentation is nonzero ({value}) on chord {chord:?} of grading {grading}")]
    AugmentationOffDegree { chord: String, grading: i64, value: BigInt },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Z2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub name: String,
    pub grading: i64,
}

/// Chord names: a letter or `_`, then letters, digits, `_`, `.` or `'`.
pub fn valid_chord_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "sign" && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

/// Words of `∂a` (or `Φ(a)`) whose grading is off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub chord: usize,
    pub word: Word,
    pub expected: i64,
    pub found: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    ring: Ring,
    chords: Vec<Chord>,
    index: HashMap<String, usize>,
    diff: Vec<Element>,
}

impl Dga {
    pub fn new(ring: Ring) -> Self {
        Dga {
            ring,
            chords: Vec::new(),
            index: HashMap::new(),
            diff: Vec::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn add_chord(&mut self, name: &str, grading: i64) -> Result<usize, DgaError> {
        if !valid_chord_name(name) {
            return Err(DgaError::InvalidName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(DgaError::DuplicateChord(name.to_string()));
        }
        let id = self.chords.len();
        self.chords.push(Chord {
            name: name.to_string(),
            grading,
        });
        self.index.insert(name.to_string(), id);
        self.diff.push(Element::zero());
        Ok(id)
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn chord(&self, id: usize) -> &Chord {
        &self.chords[id]
    }

    pub fn id(&self, name: &str) -> Result<usize, DgaError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DgaError::UnknownChord(name.to_string()))
    }

    pub fn grading(&self, id: usize) -> i64 {
        self.chords[id].grading
    }

    pub fn word_grading(&self, word: &[usize]) -> i64 {
        word.iter().map(|&x| self.chords[x].grading).sum()
    }

    /// Builds a word from chord names.
    pub fn word(&self, names: &[&str]) -> Result<Word, DgaError> {
        names.iter().map(|n| self.id(n)).collect()
    }

    fn check(&self, e: &Element) -> Result<(), DgaError> {
        match e.max_chord() {
            Some(m) if m >= self.len() => Err(DgaError::IndexOutOfRange(m)),
            _ => Ok(()),
        }
    }

    pub fn set_differential(&mut self, id: usize, value: Element) -> Result<(), DgaError> {
        if id >= self.len() {
            return Err(DgaError::IndexOutOfRange(id));
        }
        self.check(&value)?;
        self.diff[id] = value;
        Ok(())
    }

    /// `∂` of a chord; chords without a differential have `∂ = 0`.
    pub fn differential(&self, id: usize) -> &Element {
        &self.diff[id]
    }

    /// `∂` extended to the algebra by
    /// `∂(xw) = ∂x·w + (-1)^|x| x·∂w` and `∂1 = 0`.
    pub fn leibniz_extend(&self, e: &Element) -> Result<Element, DgaError> {
        self.check(e)?;
        Ok(self.apply_differential(e))
    }

    /// [`leibniz_extend`](Self::leibniz_extend) without the range check.
    pub fn apply_differential(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut before = 0i64;
            for (i, &x) in w.iter().enumerate() {
                let c = if before.rem_euclid(2) == 1 {
                    -c.clone()
                } else {
                    c.clone()
                };
                for (dw, dc) in self.diff[x].terms() {
                    let mut nw = Vec::with_capacity(w.len() + dw.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(dw);
                    nw.extend_from_slice(&w[i + 1..]);
                    out.add_term(nw, &c * dc);
                }
                before += self.chords[x].grading;
            }
        }
        out
    }

    /// Chords with `∂²a ≠ 0` (reduced mod 2 over `Z2`).
    pub fn d_squared_report(&self) -> Vec<(usize, Element)> {
        (0..self.len())
            .filter_map(|a| {
                let mut dd = self.apply_differential(&self.diff[a]);
                if self.ring == Ring::Z2 {
                    dd = dd.mod2();
                }
                (!dd.is_zero()).then_some((a, dd))
            })
            .collect()
    }

    /// Words of `∂a` whose grading is not `|a| - 1`.
    pub fn grading_validate(&self) -> Vec<GradingViolation> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let expected = self.grading(a) - 1;
            for (w, _) in self.diff[a].terms() {
                let found = self.word_grading(w);
                if found != expected {
                    out.push(GradingViolation {
                        chord: a,
                        word: w.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        out
    }

    /// The same generators with every coefficient reduced into `{0, 1}`.
    pub fn mod2_view(&self) -> Dga {
        let mut d = self.clone();
        d.ring = Ring::Z2;
        for e in &mut d.diff {
            *e = e.mod2();
        }
        d
    }

    /// Multiplies `∂a` by `(-1)^((n-1)(|a|+1))`. This is the alternative sign
    /// convention for ingested counts; it is not applied anywhere by default
    /// and need not preserve `∂² = 0`.
    pub fn legacy_rescaled(&self, n: u32) -> Dga {
        let mut d = self.clone();
        for (a, e) in d.diff.iter_mut().enumerate() {
            let exp = (n as i64 - 1) * (self.chords[a].grading + 1);
            if exp.rem_euclid(2) == 1 {
                *e = -std::mem::take(e);
            }
        }
        d
    }

    /// Renders an element with chord names, e.g. `b·c - a` or `1`.
    pub fn format_element(&self, e: &Element) -> String {
        format_with(e, |x| self.chords[x].name.as_str())
    }
}

pub(crate) fn format_with<'a>(e: &Element, name: impl Fn(usize) -> &'a str) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (w, c)) in e.terms().enumerate() {
        let neg = c < &BigInt::from(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let body: Vec<&str> = w.iter().map(|&x| name(x)).collect();
        let one = BigInt::from(1);
        match (body.is_empty(), mag == one) {
            (true, _) => s.push_str(&mag.to_string()),
            (false, true) => s.push_str(&body.join("·")),
            (false, false) => s.push_str(&format!("{mag}·{}", body.join("·"))),
        }
    }
    s
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chords.iter().enumerate() {
            writeln!(f, "∂{} = {}", c.name, self.format_element(&self.diff[i]))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// a(1), b(0), c(0) with ∂a = b·c.
    pub(crate) fn abc() -> Dga {
        let mut d = Dga::new(Ring::Integers);
        let a = d.add_chord("a", 1).unwrap();
        let b = d.add_chord("b", 0).unwrap();
        let c = d.add_chord("c", 0).unwrap();
        d.set_differential(a, Element::monomial(vec![b, c], z(1))).unwrap();
        d
    }

    #[test]
    fn leibniz_examples() {
        let d = abc();
        let [a, b, c] = [0, 1, 2];
        let aa = d.leibniz_extend(&Element::monomial(vec![a, a], z(1))).unwrap();
        let expected = Element::from_terms([(vec![b, c, a], z(1)), (vec![a, b, c], z(-1))]);
        assert_eq!(aa, expected);
        let ba = d.leibniz_extend(&Element::monomial(vec![b, a], z(1))).unwrap();
        assert_eq!(ba, Element::monomial(vec![b, b, c], z(1)));
        assert!(d.apply_differential(d.differential(a)).is_zero());
        assert!(d.leibniz_extend(&Element::generator(7)).is_err());
        assert_eq!(d.format_element(&aa), "-a·b·c + b·c·a");
    }

    #[test]
    fn d_squared_failure_example() {
        let mut d = Dga::new(Ring::Integers);
        let a = d.add_chord("a", 2).unwrap();
        let b = d.add_chord("b", 1).unwrap();
        d.set_differential(a, Element::generator(b)).unwrap();
        d.set_differential(b, Element::one()).unwrap();
        assert_eq!(d.d_squared_report(), vec![(a, Element::one())]);
        assert!(d.grading_validate().is_empty());
        assert!(abc().d_squared_report().is_empty());
    }

    #[test]
    fn grading_examples() {
        assert!(abc().grading_validate().is_empty());
        let mut d = Dga::new(Ring::Integers);
        let a = d.add_chord("a", 3).unwrap();
        let b = d.add_chord("b", 1).unwrap();
        d.set_differential(a, Element::generator(b)).unwrap();
        let v = d.grading_validate();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].expected, v[0].found), (2, 1));
    }

    #[test]
    fn names_and_duplicates() {
        let mut d = Dga::new(Ring::Integers);
        assert!(d.add_chord("src.a'", 0).is_ok());
        assert_eq!(d.add_chord("src.a'", 1), Err(DgaError::DuplicateChord("src.a'".into())));
        for bad in ["", "1a", "a b", "sign", "->"] {
            assert!(d.add_chord(bad, 0).is_err(), "{bad}");
        }
    }

    #[test]
    fn mod2_view_and_rescaling() {
        let mut d = abc();
        d.set_differential(0, Element::monomial(vec![1, 2], z(2))).unwrap();
        assert!(d.mod2_view().differential(0).is_zero());
        let r = abc().legacy_rescaled(2);
        // (n-1)(|a|+1) = 2 is even for a; b and c have ∂ = 0.
        assert_eq!(r, abc());
        let r = abc().legacy_rescaled(1);
        assert_eq!(r, abc());
        let mut e = Dga::new(Ring::Integers);
        let x = e.add_chord("x", 2).unwrap();
        let y = e.add_chord("y", 1).unwrap();
        e.set_differential(x, Element::generator(y)).unwrap();
        assert_eq!(e.legacy_rescaled(2).differential(x), &-Element::generator(y));
    }
}

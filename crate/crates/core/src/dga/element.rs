use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A word in the chords of one DGA, as chord indices. The empty word is the unit.
pub type Word = Vec<usize>;

/// A finite ℤ-linear combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Word, BigInt>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigInt::one())
    }

    pub fn generator(id: usize) -> Self {
        Self::monomial(vec![id], BigInt::one())
    }

    pub fn monomial(word: Word, coeff: BigInt) -> Self {
        let mut e = Element::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigInt)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Coefficients reduced into `{0, 1}`.
    pub fn mod2(&self) -> Element {
        let two = BigInt::from(2);
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mod_floor(&two)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Largest chord index used, if any.
    pub fn max_chord(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.iter().copied()).max()
    }

    pub fn mentions(&self, id: usize) -> bool {
        self.terms.keys().any(|w| w.contains(&id))
    }

    /// Replaces every letter by an element and multiplies out.
    pub fn substitute(&self, image: impl Fn(usize) -> Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut acc = Element::monomial(Vec::new(), c.clone());
            for &x in w {
                acc = &acc * &image(x);
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        self + (-rhs)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = Element::monomial(vec![0, 1], z(2));
        let b = Element::monomial(vec![0, 1], z(-2));
        assert!((a.clone() + b).is_zero());
        assert_eq!((a.clone() - a).len(), 0);
    }

    #[test]
    fn product_is_noncommutative() {
        let x = Element::generator(0);
        let y = Element::generator(1);
        let c = &x * &y - &y * &x;
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff(&[0, 1]), z(1));
        assert_eq!(c.coeff(&[1, 0]), z(-1));
        assert_eq!(&Element::one() * &x, x);
    }

    #[test]
    fn mod2_and_substitute() {
        let e = Element::from_terms([(vec![0], z(3)), (vec![1], z(-4)), (vec![], z(-1))]);
        let m = e.mod2();
        assert_eq!(m.coeff(&[0]), z(1));
        assert_eq!(m.coeff(&[1]), z(0));
        assert_eq!(m.coeff(&[]), z(1));
        let doubled = e.substitute(|x| Element::generator(x).scale(&z(2)));
        assert_eq!(doubled.coeff(&[0]), z(6));
        assert_eq!(doubled.coeff(&[]), z(-1));
    }
}

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{format_with, Dga, DgaError, Element, GradingViolation};
use crate::sign::Sign;

/// A unital algebra map given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism {
    source: Arc<Dga>,
    target: Arc<Dga>,
    images: Vec<Element>,
}

/// Chords `a` with `Φ(∂a) ≠ ∂Φ(a)`, with the difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapVerdict {
    pub offending: Vec<(usize, Element)>,
}

impl ChainMapVerdict {
    pub fn holds(&self) -> bool {
        self.offending.is_empty()
    }
}

impl DgaMorphism {
    pub fn new(source: Arc<Dga>, target: Arc<Dga>, images: Vec<Element>) -> Result<Self, DgaError> {
        if images.len() != source.len() {
            return Err(DgaError::Invalid(format!(
                "{} images given for {} source chords",
                images.len(),
                source.len()
            )));
        }
        for e in &images {
            if let Some(m) = e.max_chord() {
                if m >= target.len() {
                    return Err(DgaError::IndexOutOfRange(m));
                }
            }
        }
        Ok(DgaMorphism { source, target, images })
    }

    pub fn identity(dga: Arc<Dga>) -> Self {
        let images = (0..dga.len()).map(Element::generator).collect();
        DgaMorphism {
            source: dga.clone(),
            target: dga,
            images,
        }
    }

    pub fn source(&self) -> &Arc<Dga> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Dga> {
        &self.target
    }

    pub fn image(&self, id: usize) -> &Element {
        &self.images[id]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn with_image(&self, id: usize, value: Element) -> Result<Self, DgaError> {
        let mut images = self.images.clone();
        *images.get_mut(id).ok_or(DgaError::IndexOutOfRange(id))? = value;
        Self::new(self.source.clone(), self.target.clone(), images)
    }

    /// The multiplicative, unital, ℤ-linear extension.
    pub fn apply(&self, e: &Element) -> Element {
        e.substitute(|x| self.images[x].clone())
    }

    pub fn check_chain_map(&self) -> ChainMapVerdict {
        let offending = (0..self.source.len())
            .filter_map(|a| {
                let lhs = self.apply(self.source.differential(a));
                let rhs = self.target.apply_differential(&self.images[a]);
                let diff = lhs - rhs;
                (!diff.is_zero()).then_some((a, diff))
            })
            .collect();
        ChainMapVerdict { offending }
    }

    /// Words of `Φ(a)` whose grading is not `|a|`.
    pub fn grading_validate(&self) -> Vec<GradingViolation> {
        let mut out = Vec::new();
        for (a, img) in self.images.iter().enumerate() {
            let expected = self.source.grading(a);
            for (w, _) in img.terms() {
                let found = self.target.word_grading(w);
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

    pub fn format_image(&self, a: usize) -> String {
        format_with(&self.images[a], |x| self.target.chord(x).name.as_str())
    }
}

impl fmt::Display for DgaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.source.len() {
            writeln!(f, "Φ({}) = {}", self.source.chord(a).name, self.format_image(a))?;
        }
        Ok(())
    }
}

fn describe(d: &Dga) -> String {
    let chords: Vec<String> = d
        .chords()
        .iter()
        .map(|c| format!("{}({})", c.name, c.grading))
        .collect();
    format!("[{}]", chords.join(" "))
}

/// `phi2 ∘ phi1`.
pub fn compose(phi2: &DgaMorphism, phi1: &DgaMorphism) -> Result<DgaMorphism, DgaError> {
    if !Arc::ptr_eq(&phi1.target, &phi2.source) && *phi1.target != *phi2.source {
        return Err(DgaError::Mismatch {
            first_target: describe(&phi1.target),
            second_source: describe(&phi2.source),
        });
    }
    let images = phi1.images.iter().map(|e| phi2.apply(e)).collect();
    Ok(DgaMorphism {
        source: phi1.source.clone(),
        target: phi2.target.clone(),
        images,
    })
}

/// `Φ(a) = s_a a` into the DGA with `∂' = Φ ∂ Φ⁻¹`, i.e. `∂'a = s_a Φ(∂a)`.
pub fn capping_change_morphism(dga: &Arc<Dga>, signs: &[Sign]) -> Result<(DgaMorphism, Arc<Dga>), DgaError> {
    if signs.len() != dga.len() {
        return Err(DgaError::Invalid(format!(
            "{} signs given for {} chords",
            signs.len(),
            dga.len()
        )));
    }
    let coeff = |a: usize| BigInt::from(signs[a].to_i64());
    let images: Vec<Element> = (0..dga.len()).map(|a| Element::monomial(vec![a], coeff(a))).collect();
    let mut next = (**dga).clone();
    for a in 0..dga.len() {
        let d = dga.differential(a).substitute(|x| images[x].clone()).scale(&coeff(a));
        next.set_differential(a, d)?;
    }
    let next = Arc::new(next);
    let phi = DgaMorphism::new(dga.clone(), next.clone(), images)?;
    Ok((phi, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::Ring;

    fn z(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn abc() -> Arc<Dga> {
        let mut d = Dga::new(Ring::Integers);
        let a = d.add_chord("a", 1).unwrap();
        let b = d.add_chord("b", 0).unwrap();
        let c = d.add_chord("c", 0).unwrap();
        d.set_differential(a, Element::monomial(vec![b, c], z(1))).unwrap();
        Arc::new(d)
    }

    #[test]
    fn apply_is_multiplicative() {
        let d = abc();
        let phi = DgaMorphism::identity(d.clone())
            .with_image(0, Element::monomial(vec![0], z(-1)))
            .unwrap();
        let ab = Element::monomial(vec![0, 1], z(1));
        assert_eq!(phi.apply(&ab), Element::monomial(vec![0, 1], z(-1)));
        assert_eq!(DgaMorphism::identity(d.clone()).apply(&ab), ab);
        assert_eq!(phi.apply(&Element::one()), Element::one());
    }

    #[test]
    fn chain_map_examples() {
        let d = abc();
        assert!(DgaMorphism::identity(d.clone()).check_chain_map().holds());
        let phi = DgaMorphism::identity(d.clone())
            .with_image(0, Element::monomial(vec![0], z(-1)))
            .unwrap();
        let v = phi.check_chain_map();
        assert_eq!(v.offending.len(), 1);
        assert_eq!(v.offending[0].0, 0);
    }

    #[test]
    fn capping_change() {
        let d = abc();
        let (id, same) = capping_change_morphism(&d, &[Sign::Plus; 3]).unwrap();
        assert_eq!(*same, *d);
        assert_eq!(
            id,
            DgaMorphism::new(d.clone(), same.clone(), id.images().to_vec()).unwrap()
        );
        let signs = [Sign::Minus, Sign::Plus, Sign::Plus];
        let (phi, next) = capping_change_morphism(&d, &signs).unwrap();
        assert_eq!(next.differential(0), &Element::monomial(vec![1, 2], z(-1)));
        assert!(phi.check_chain_map().holds());
        let (psi, back) = capping_change_morphism(&next, &signs).unwrap();
        assert_eq!(*back, *d);
        let both = compose(&psi, &phi).unwrap();
        assert_eq!(both.images(), DgaMorphism::identity(d.clone()).images());
    }

    #[test]
    fn diagonal_signs_compose() {
        let d = abc();
        let s = [Sign::Minus, Sign::Minus, Sign::Plus];
        let t = [Sign::Minus, Sign::Plus, Sign::Minus];
        let (sigma, mid) = capping_change_morphism(&d, &s).unwrap();
        let (tau, _) = capping_change_morphism(&mid, &t).unwrap();
        let st = compose(&tau, &sigma).unwrap();
        for a in 0..3 {
            let c = (s[a] * t[a]).to_i64();
            assert_eq!(st.image(a), &Element::monomial(vec![a], z(c)));
        }
    }

    #[test]
    fn compose_rejects_mismatch() {
        let d = abc();
        let mut other = Dga::new(Ring::Integers);
        other.add_chord("x", 0).unwrap();
        let e = compose(&DgaMorphism::identity(Arc::new(other)), &DgaMorphism::identity(d)).unwrap_err();
        assert!(matches!(e, DgaError::Mismatch { .. }));
    }

    #[test]
    fn morphism_grading_violation() {
        let d = abc();
        let phi = DgaMorphism::identity(d.clone())
            .with_image(1, Element::generator(0))
            .unwrap();
        let v = phi.grading_validate();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].chord, v[0].expected, v[0].found), (1, 0, 1));
    }
}

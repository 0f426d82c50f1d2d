use std::sync::Arc;

use num_bigint::BigInt;

use super::{compose, Dga, DgaError, DgaMorphism, Element};
use crate::sign::Sign;

/// Elementary moves used to grow valid DGAs from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameMove {
    /// `a ↦ sign·a + shift`, where `shift` does not involve `a`.
    Substitution { chord: usize, sign: Sign, shift: Element },
    /// New chords `x` of grading `grading` and `y` of grading `grading - 1`
    /// with `∂x = y`.
    Stabilization { x: String, y: String, grading: i64 },
}

pub fn apply_tame_moves(seed: &Arc<Dga>, moves: &[TameMove]) -> Result<Arc<Dga>, DgaError> {
    Ok(apply_tame_moves_with_morphism(seed, moves)?.0)
}

/// Also returns the chain map from the seed into the result: the
/// substitution automorphisms and stabilization inclusions, composed.
pub fn apply_tame_moves_with_morphism(
    seed: &Arc<Dga>,
    moves: &[TameMove],
) -> Result<(Arc<Dga>, DgaMorphism), DgaError> {
    let mut cur = seed.clone();
    let mut total = DgaMorphism::identity(seed.clone());
    for mv in moves {
        let (next, step) = apply_one(&cur, mv)?;
        total = compose(&step, &total)?;
        cur = next;
    }
    Ok((cur, total))
}

pub(crate) fn apply_one(d: &Arc<Dga>, mv: &TameMove) -> Result<(Arc<Dga>, DgaMorphism), DgaError> {
    match mv {
        TameMove::Substitution { chord, sign, shift } => {
            let a = *chord;
            if a >= d.len() {
                return Err(DgaError::IndexOutOfRange(a));
            }
            if shift.mentions(a) {
                return Err(DgaError::SelfReference(d.chord(a).name.clone()));
            }
            if let Some(m) = shift.max_chord() {
                if m >= d.len() {
                    return Err(DgaError::IndexOutOfRange(m));
                }
            }
            let s = BigInt::from(sign.to_i64());
            let psi_a = Element::monomial(vec![a], s.clone()) + shift.clone();
            let psi = |x: usize| {
                if x == a {
                    psi_a.clone()
                } else {
                    Element::generator(x)
                }
            };
            let mut next = (**d).clone();
            for x in 0..d.len() {
                let dx = if x == a {
                    let inner = d.differential(a).clone() - d.apply_differential(shift);
                    inner.substitute(psi).scale(&s)
                } else {
                    d.differential(x).substitute(psi)
                };
                next.set_differential(x, dx)?;
            }
            let next = Arc::new(next);
            let images = (0..d.len()).map(psi).collect();
            let phi = DgaMorphism::new(d.clone(), next.clone(), images)?;
            Ok((next, phi))
        }
        TameMove::Stabilization { x, y, grading } => {
            let mut next = (**d).clone();
            let xi = next.add_chord(x, *grading)?;
            let yi = next.add_chord(y, grading - 1)?;
            next.set_differential(xi, Element::generator(yi))?;
            let next = Arc::new(next);
            let images = (0..d.len()).map(Element::generator).collect();
            let phi = DgaMorphism::new(d.clone(), next.clone(), images)?;
            Ok((next, phi))
        }
    }
}

//! Seeded generators of valid DGAs, elements and algebra maps for tests,
//! fixtures and benchmarks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::tame::apply_one;
use super::{Dga, DgaMorphism, Element, Ring, TameMove};
use crate::sign::Sign;

/// `a(1), b(0), c(0)` with `∂a = b·c`.
pub fn abc_seed() -> Arc<Dga> {
    let mut d = Dga::new(Ring::Integers);
    let a = d.add_chord("a", 1).expect("fresh name");
    let b = d.add_chord("b", 0).expect("fresh name");
    let c = d.add_chord("c", 0).expect("fresh name");
    d.set_differential(a, Element::monomial(vec![b, c], BigInt::from(1)))
        .expect("valid indices");
    Arc::new(d)
}

/// A random word of the requested grading, if one is found quickly.
fn random_word<R: Rng>(
    rng: &mut R,
    dga: &Dga,
    grading: i64,
    exclude: Option<usize>,
    max_len: usize,
) -> Option<Vec<usize>> {
    let letters: Vec<usize> = (0..dga.len()).filter(|&x| Some(x) != exclude).collect();
    for _ in 0..64 {
        let len = rng.gen_range(0..=max_len);
        if len > 0 && letters.is_empty() {
            continue;
        }
        let w: Vec<usize> = (0..len).map(|_| *letters.choose(rng).expect("nonempty")).collect();
        if dga.word_grading(&w) == grading {
            return Some(w);
        }
    }
    None
}

/// A homogeneous element of the given grading avoiding `exclude`; may be zero.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    dga: &Dga,
    grading: i64,
    exclude: Option<usize>,
    max_terms: usize,
    max_len: usize,
) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        if let Some(w) = random_word(rng, dga, grading, exclude, max_len) {
            e.add_term(w, BigInt::from(rng.gen_range(-2i64..=2)));
        }
    }
    e
}

/// A random inhomogeneous element.
pub fn random_element<R: Rng>(rng: &mut R, dga: &Dga, max_terms: usize, max_len: usize) -> Element {
    let mut e = Element::zero();
    if dga.is_empty() {
        return Element::monomial(Vec::new(), BigInt::from(rng.gen_range(-3i64..=3)));
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dga.len())).collect();
        e.add_term(w, BigInt::from(rng.gen_range(-3i64..=3)));
    }
    e
}

/// One random tame move on `dga`; stabilization names are `x{tag}`, `y{tag}`
/// with `tag` bumped until both are unused.
pub fn random_tame_move<R: Rng>(rng: &mut R, dga: &Dga, mut tag: usize) -> TameMove {
    if dga.is_empty() || rng.gen_bool(0.3) {
        while dga.id(&format!("x{tag}")).is_ok() || dga.id(&format!("y{tag}")).is_ok() {
            tag += 1;
        }
        return TameMove::Stabilization {
            x: format!("x{tag}"),
            y: format!("y{tag}"),
            grading: rng.gen_range(-1..=3),
        };
    }
    let chord = rng.gen_range(0..dga.len());
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let shift = random_homogeneous(rng, dga, dga.grading(chord), Some(chord), 2, 2);
    TameMove::Substitution { chord, sign, shift }
}

/// Applies `count` random tame moves to `seed`, returning the result, the
/// chain map from the seed and the moves used.
pub fn random_tame_dga<R: Rng>(rng: &mut R, seed: &Arc<Dga>, count: usize) -> (Arc<Dga>, DgaMorphism, Vec<TameMove>) {
    let mut cur = seed.clone();
    let mut total = DgaMorphism::identity(seed.clone());
    let mut moves = Vec::new();
    for i in 0..count {
        let mv = random_tame_move(rng, &cur, i);
        let (next, step) = apply_one(&cur, &mv).expect("generated moves are valid");
        total = super::compose(&step, &total).expect("consecutive maps compose");
        cur = next;
        moves.push(mv);
    }
    (cur, total, moves)
}

/// A random DGA with `∂² = 0`: the `∂a = b·c` seed, a few free chords, then
/// `moves` tame moves.
pub fn random_valid_dga<R: Rng>(rng: &mut R, moves: usize) -> Arc<Dga> {
    let mut d = (*abc_seed()).clone();
    for i in 0..rng.gen_range(0..3) {
        d.add_chord(&format!("e{i}"), rng.gen_range(-1..=2))
            .expect("fresh name");
    }
    random_tame_dga(rng, &Arc::new(d), moves).0
}

/// A grading-preserving algebra map with random images (not a chain map).
pub fn random_algebra_map<R: Rng>(rng: &mut R, source: &Arc<Dga>, target: &Arc<Dga>) -> DgaMorphism {
    let images = (0..source.len())
        .map(|a| random_homogeneous(rng, target, source.grading(a), None, 3, 3))
        .collect();
    DgaMorphism::new(source.clone(), target.clone(), images).expect("images live in the target")
}

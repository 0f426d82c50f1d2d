//! Seeded generators of exact sequences that come with both a formal block
//! description and explicit matrices, for cross-checking the two paths.

use rand::seq::SliceRandom;
use rand::Rng;

use super::column::{FormalSummand, SummandColumn};
use super::exact::{BlockMap, ExactSequenceData};
use crate::linalg::{q, Matrix};
use crate::sign::Sign;

/// A block-structured exact sequence, the same sequence as explicit matrices
/// after an orientation-preserving integer change of basis in every space.
#[derive(Clone, Debug)]
pub struct TwistedSequence {
    pub data: ExactSequenceData,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub gamma: Matrix,
}

fn split<R: Rng>(rng: &mut R, total: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        parts.push(d);
        left -= d;
        if rng.gen_bool(0.15) {
            parts.push(0);
        }
    }
    if parts.is_empty() && rng.gen_bool(0.3) {
        parts.push(0);
    }
    parts
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    Sign::from_bool_negative(rng.gen_bool(0.5))
}

fn block_sign<R: Rng>(rng: &mut R, dim: usize) -> Sign {
    if dim == 0 {
        Sign::Plus
    } else {
        random_sign(rng)
    }
}

fn column<R: Rng>(rng: &mut R, blocks: &[(String, usize)]) -> SummandColumn {
    let summands = blocks
        .iter()
        .map(|(l, d)| {
            let o = block_sign(rng, *d);
            FormalSummand::new(l.clone(), *d, o).expect("zero blocks get +1")
        })
        .collect();
    SummandColumn::new(summands).expect("generated labels are distinct")
}

fn offsets(col: &SummandColumn) -> std::collections::HashMap<String, usize> {
    let mut out = std::collections::HashMap::new();
    let mut off = 0;
    for s in col.summands() {
        out.insert(s.label().to_string(), off);
        off += s.dim();
    }
    out
}

fn block_matrix(maps: &[BlockMap], dom: &SummandColumn, cod: &SummandColumn) -> Matrix {
    let mut m = Matrix::zeros(cod.total_dim(), dom.total_dim());
    let (od, oc) = (offsets(dom), offsets(cod));
    for bm in maps {
        let d = dom.get(&bm.from).expect("generated map").dim();
        for i in 0..d {
            let v = if i == 0 { bm.sign.to_i64() } else { 1 };
            m.set(oc[&bm.to] + i, od[&bm.from] + i, q(v));
        }
    }
    m
}

/// A random product of elementary shears and its inverse. Determinant +1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (Matrix, Matrix) {
    let mut p = Matrix::identity(n);
    let mut inv = Matrix::identity(n);
    if n < 2 {
        return (p, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = Matrix::identity(n);
        e.set(i, j, q(c));
        let mut e_inv = Matrix::identity(n);
        e_inv.set(i, j, q(-c));
        p = e.mul(&p);
        inv = inv.mul(&e_inv);
    }
    (p, inv)
}

/// Random exact sequence with every space of dimension at most `max_dim`.
pub fn random_twisted_sequence<R: Rng>(rng: &mut R, max_dim: usize) -> TwistedSequence {
    let a = rng.gen_range(0..=max_dim);
    let c = rng.gen_range(0..=max_dim - a);
    let t = rng.gen_range(0..=max_dim - c);

    let va: Vec<usize> = split(rng, a);
    let vc: Vec<usize> = split(rng, c);
    let vt: Vec<usize> = split(rng, t);

    let v1_blocks: Vec<(String, usize)> = va.iter().enumerate().map(|(i, d)| (format!("v{i}"), *d)).collect();
    let mut w1_blocks: Vec<(String, usize)> = va
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("a{i}"), *d))
        .chain(vc.iter().enumerate().map(|(i, d)| (format!("c{i}"), *d)))
        .collect();
    let mut w2_blocks: Vec<(String, usize)> = vc
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("b{i}"), *d))
        .chain(vt.iter().enumerate().map(|(i, d)| (format!("t{i}"), *d)))
        .collect();
    let mut v2_blocks: Vec<(String, usize)> = vt.iter().enumerate().map(|(i, d)| (format!("y{i}"), *d)).collect();
    w1_blocks.shuffle(rng);
    w2_blocks.shuffle(rng);
    v2_blocks.shuffle(rng);

    let alpha: Vec<BlockMap> = va
        .iter()
        .enumerate()
        .map(|(i, d)| BlockMap::new(format!("v{i}"), format!("a{i}"), block_sign(rng, *d)))
        .collect();
    let beta: Vec<BlockMap> = vc
        .iter()
        .enumerate()
        .map(|(i, d)| BlockMap::new(format!("c{i}"), format!("b{i}"), block_sign(rng, *d)))
        .collect();
    let gamma: Vec<BlockMap> = vt
        .iter()
        .enumerate()
        .map(|(i, d)| BlockMap::new(format!("t{i}"), format!("y{i}"), block_sign(rng, *d)))
        .collect();

    let data = ExactSequenceData {
        v1: column(rng, &v1_blocks),
        w1: column(rng, &w1_blocks),
        w2: column(rng, &w2_blocks),
        v2: column(rng, &v2_blocks),
        alpha,
        beta,
        gamma,
    };

    let ma = block_matrix(&data.alpha, &data.v1, &data.w1);
    let mb = block_matrix(&data.beta, &data.w1, &data.w2);
    let mg = block_matrix(&data.gamma, &data.w2, &data.v2);

    let (_, p0i) = random_unimodular(rng, a, 3);
    let (p1, p1i) = random_unimodular(rng, a + c, 4);
    let (p2, p2i) = random_unimodular(rng, c + t, 4);
    let (p3, _) = random_unimodular(rng, t, 3);
    let alpha_m = p1.mul(&ma).mul(&p0i);
    let beta_m = p2.mul(&mb).mul(&p1i);
    let gamma_m = p3.mul(&mg).mul(&p2i);

    TwistedSequence {
        data,
        alpha: alpha_m,
        beta: beta_m,
        gamma: gamma_m,
    }
}

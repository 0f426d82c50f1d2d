use std::collections::{HashMap, HashSet};

use super::column::{koszul_sign, SummandColumn};
use super::LinesError;
use crate::sign::Sign;

/// One block of a block-diagonal map: `from` maps isomorphically onto `to`
/// by a map whose determinant (relative to the two reference bases) has
/// sign `sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMap {
    pub from: String,
    pub to: String,
    pub sign: Sign,
}

impl BlockMap {
    pub fn new(from: impl Into<String>, to: impl Into<String>, sign: Sign) -> Self {
        BlockMap {
            from: from.into(),
            to: to.into(),
            sign,
        }
    }

    pub fn identity(from: impl Into<String>, to: impl Into<String>) -> Self {
        Self::new(from, to, Sign::Plus)
    }
}

/// Formal data of `0 -> V1 -α-> W1 -β-> W2 -γ-> V2 -> 0`.
///
/// `alpha` sends every V1 block into W1; `beta` sends the remaining W1 blocks
/// (the complement) into W2; `gamma` sends the W2 blocks not hit by `beta`
/// onto V2. Zero-dimensional blocks may be left unmapped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceData {
    pub v1: SummandColumn,
    pub w1: SummandColumn,
    pub w2: SummandColumn,
    pub v2: SummandColumn,
    pub alpha: Vec<BlockMap>,
    pub beta: Vec<BlockMap>,
    pub gamma: Vec<BlockMap>,
}

/// One of the four spaces of an exact sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    V1,
    W1,
    W2,
    V2,
}

struct Resolved {
    alpha_sign: Sign,
    beta_sign: Sign,
    gamma_sign: Sign,
    /// W1 labels hit by α, listed in V1 order.
    alpha_images: Vec<String>,
    /// Complement blocks of W1 in W1 order, with their β-images.
    complement: Vec<(String, String)>,
    /// W2 blocks mapped by γ, listed in V2 order.
    gamma_sources: Vec<String>,
}

fn check_map(
    name: &str,
    maps: &[BlockMap],
    domain: &SummandColumn,
    codomain: &SummandColumn,
) -> Result<HashMap<String, (String, Sign)>, LinesError> {
    let mut out = HashMap::new();
    let mut targets = HashSet::new();
    for m in maps {
        let s = domain
            .get(&m.from)
            .ok_or_else(|| LinesError::Inconsistent(format!("{name}: unknown source block {}", m.from)))?;
        let t = codomain
            .get(&m.to)
            .ok_or_else(|| LinesError::Inconsistent(format!("{name}: unknown target block {}", m.to)))?;
        if s.dim() != t.dim() {
            return Err(LinesError::Inconsistent(format!(
                "{name}: block {} (dim {}) cannot map onto {} (dim {})",
                m.from,
                s.dim(),
                m.to,
                t.dim()
            )));
        }
        if s.dim() == 0 && m.sign == Sign::Minus {
            return Err(LinesError::Inconsistent(format!(
                "{name}: zero-dimensional block {} cannot carry sign -1",
                m.from
            )));
        }
        if out.insert(m.from.clone(), (m.to.clone(), m.sign)).is_some() {
            return Err(LinesError::Inconsistent(format!(
                "{name}: block {} mapped twice",
                m.from
            )));
        }
        if !targets.insert(m.to.clone()) {
            return Err(LinesError::Inconsistent(format!("{name}: block {} hit twice", m.to)));
        }
    }
    Ok(out)
}

impl ExactSequenceData {
    fn resolve(&self) -> Result<Resolved, LinesError> {
        let a = check_map("α", &self.alpha, &self.v1, &self.w1)?;
        let b = check_map("β", &self.beta, &self.w1, &self.w2)?;
        let g = check_map("γ", &self.gamma, &self.w2, &self.v2)?;

        let mut alpha_sign = Sign::Plus;
        let mut alpha_images = Vec::new();
        for s in self.v1.summands() {
            match a.get(s.label()) {
                Some((t, sg)) => {
                    alpha_sign *= *sg;
                    alpha_images.push(t.clone());
                }
                None if s.dim() == 0 => {}
                None => {
                    return Err(LinesError::Inconsistent(format!(
                        "α: V1 block {} is not mapped",
                        s.label()
                    )))
                }
            }
        }
        let hit_by_alpha: HashSet<&str> = alpha_images.iter().map(String::as_str).collect();

        let mut beta_sign = Sign::Plus;
        let mut complement = Vec::new();
        for s in self.w1.summands() {
            let in_image = hit_by_alpha.contains(s.label());
            match (in_image, b.get(s.label())) {
                (true, Some(_)) => {
                    return Err(LinesError::Inconsistent(format!(
                        "β: block {} lies in the image of α but is mapped by β",
                        s.label()
                    )))
                }
                (true, None) => {}
                (false, Some((t, sg))) => {
                    beta_sign *= *sg;
                    complement.push((s.label().to_string(), t.clone()));
                }
                (false, None) if s.dim() == 0 => {}
                (false, None) => {
                    return Err(LinesError::Inconsistent(format!(
                        "β: complement block {} is not mapped",
                        s.label()
                    )))
                }
            }
        }
        let hit_by_beta: HashSet<&str> = complement.iter().map(|(_, t)| t.as_str()).collect();

        let mut gamma_sign = Sign::Plus;
        let mut by_target: HashMap<&str, &str> = HashMap::new();
        for s in self.w2.summands() {
            let in_image = hit_by_beta.contains(s.label());
            match (in_image, g.get(s.label())) {
                (true, Some(_)) => {
                    return Err(LinesError::Inconsistent(format!(
                        "γ: block {} lies in the image of β but is mapped by γ",
                        s.label()
                    )))
                }
                (true, None) => {}
                (false, Some((t, sg))) => {
                    gamma_sign *= *sg;
                    by_target.insert(t.as_str(), s.label());
                }
                (false, None) if s.dim() == 0 => {}
                (false, None) => {
                    return Err(LinesError::Inconsistent(format!(
                        "γ: block {} is neither in the image of β nor mapped onto V2",
                        s.label()
                    )))
                }
            }
        }
        let mut gamma_sources = Vec::new();
        for s in self.v2.summands() {
            match by_target.get(s.label()) {
                Some(src) => gamma_sources.push(src.to_string()),
                None if s.dim() == 0 => {}
                None => {
                    return Err(LinesError::Inconsistent(format!(
                        "γ: V2 block {} is not hit",
                        s.label()
                    )))
                }
            }
        }

        let lhs = self.w1.total_dim() as i64 - self.v1.total_dim() as i64;
        let rhs = self.w2.total_dim() as i64 - self.v2.total_dim() as i64;
        if lhs != rhs {
            return Err(LinesError::Inconsistent(format!(
                "dim W1 - dim V1 = {lhs} but dim W2 - dim V2 = {rhs}"
            )));
        }

        Ok(Resolved {
            alpha_sign,
            beta_sign,
            gamma_sign,
            alpha_images,
            complement,
            gamma_sources,
        })
    }

    /// The sign `s` with `o(W1) o(W2) = s o(V1) o(V2)`, every orientation taken
    /// relative to the concatenated references of its column.
    pub fn transport_sign(&self) -> Result<Sign, LinesError> {
        self.transport_sign_with_complement(None)
    }

    /// As [`transport_sign`](Self::transport_sign), listing the complement
    /// blocks of W1 in the given order instead of W1 order.
    pub fn transport_sign_with_complement(&self, complement_order: Option<&[&str]>) -> Result<Sign, LinesError> {
        let r = self.resolve()?;
        let complement: Vec<(String, String)> = match complement_order {
            None => r.complement.clone(),
            Some(order) => {
                let lookup: HashMap<&str, &str> = r.complement.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                if order.len() != lookup.len() {
                    return Err(LinesError::Inconsistent(
                        "complement order must list every complement block once".into(),
                    ));
                }
                let mut out = Vec::new();
                let mut seen = HashSet::new();
                for l in order {
                    let t = lookup
                        .get(l)
                        .ok_or_else(|| LinesError::Inconsistent(format!("{l} is not a complement block")))?;
                    if !seen.insert(*l) {
                        return Err(LinesError::DuplicateLabel(l.to_string()));
                    }
                    out.push((l.to_string(), t.to_string()));
                }
                out
            }
        };

        let w1_target = full_order(
            &self.w1,
            r.alpha_images
                .iter()
                .cloned()
                .chain(complement.iter().map(|(c, _)| c.clone())),
        );
        let w2_target = full_order(
            &self.w2,
            r.gamma_sources
                .iter()
                .cloned()
                .chain(complement.iter().map(|(_, t)| t.clone())),
        );
        let s_w1 = r.alpha_sign * reorder_cost(&self.w1, &w1_target)?;
        let s_w2 = r.gamma_sign * r.beta_sign * reorder_cost(&self.w2, &w2_target)?;
        Ok(s_w1 * s_w2)
    }
}

fn full_order(column: &SummandColumn, head: impl Iterator<Item = String>) -> Vec<String> {
    let mut order: Vec<String> = head.collect();
    let listed: HashSet<String> = order.iter().cloned().collect();
    for l in column.labels() {
        if !listed.contains(l) {
            order.push(l.to_string());
        }
    }
    order
}

fn reorder_cost(column: &SummandColumn, target: &[String]) -> Result<Sign, LinesError> {
    let order = column.order_of(target)?;
    let dims: Vec<usize> = column.summands().iter().map(|s| s.dim()).collect();
    Ok(koszul_sign(&dims, &order))
}

/// Orientation of the `unknown` space induced by the orientations of the other
/// three (read from their columns, see [`SummandColumn::orientation`]).
pub fn exact_sequence_transport(data: &ExactSequenceData, unknown: Slot) -> Result<Sign, LinesError> {
    let s = data.transport_sign()?;
    Ok(solve_slot(data, unknown, s))
}

/// [`exact_sequence_transport`] with an explicit order on the complement of
/// `im α` in W1; the result does not depend on that choice.
pub fn exact_sequence_transport_with_complement(
    data: &ExactSequenceData,
    unknown: Slot,
    complement_order: &[&str],
) -> Result<Sign, LinesError> {
    let s = data.transport_sign_with_complement(Some(complement_order))?;
    Ok(solve_slot(data, unknown, s))
}

fn solve_slot(data: &ExactSequenceData, unknown: Slot, s: Sign) -> Sign {
    let o = |slot: Slot| match slot {
        Slot::V1 => data.v1.orientation(),
        Slot::W1 => data.w1.orientation(),
        Slot::W2 => data.w2.orientation(),
        Slot::V2 => data.v2.orientation(),
    };
    // o(W1) o(W2) o(V1) o(V2) = s; every sign is its own inverse.
    [Slot::V1, Slot::W1, Slot::W2, Slot::V2]
        .into_iter()
        .filter(|&x| x != unknown)
        .map(o)
        .product::<Sign>()
        * s
}

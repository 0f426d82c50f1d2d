use lch_core::scenario::{
    canonical_gluing_check, chainmap_cancellation, chainmap_t_sign, chainmap_ttilde_sign, conformal_closed_form,
    conformal_glue_sign, conformal_glue_sign_with_normal, dsquared_rearrangement_sign, trivial_cobordism_sign,
    CappingSystemParams, ClosedDiskProblem, ConformalSlot, DsquaredScenario, GlueNormal, SignedSymbol, TScenario,
    TtildeScenario,
};
use lch_core::Sign;
use proptest::prelude::*;

fn params(n: u32) -> CappingSystemParams {
    CappingSystemParams::new(n).unwrap()
}

#[test]
fn conformal_gluing_all_small_disks() {
    for m1 in 2..=7 {
        for m2 in 2..=7 {
            for k in 1..=m2 {
                let g = conformal_glue_sign(m1, m2, k).unwrap();
                assert_eq!(g.ledger, conformal_closed_form(m1, k), "({m1}, {m2}, {k})");
            }
        }
    }
}

#[test]
fn inner_puncture_normal_matches_outward_epsilon() {
    for m1 in 2..=6 {
        for m2 in 2..=6 {
            for k in 1..=m2 {
                let a = conformal_glue_sign_with_normal(m1, m2, k, GlueNormal::OutwardEpsilon).unwrap();
                let b = conformal_glue_sign_with_normal(m1, m2, k, GlueNormal::FirstInnerPuncture).unwrap();
                assert_eq!(a, b, "({m1}, {m2}, {k})");
            }
        }
    }
}

/// Fixing `p_0, p_j, p_k` instead of `p_0, p_1, p_2` with the basis
/// `(∂p_m..∂p_{k+1}, -∂p_{k-1}..-∂p_{j+1}, ∂p_{j-1}..∂p_1)` gives the default orientation.
#[test]
fn other_fixed_punctures_keep_orientation() {
    let mut count = 0;
    for m in 3..=7 {
        for j in 1..m {
            for k in j + 1..=m {
                let basis: Vec<SignedSymbol> = (k + 1..=m)
                    .rev()
                    .map(SignedSymbol::plus)
                    .chain((j + 1..k).rev().map(SignedSymbol::minus))
                    .chain((1..j).rev().map(SignedSymbol::plus))
                    .collect();
                let slot = ConformalSlot::with_basis(m, basis).unwrap();
                assert_eq!(slot.sign(), Sign::Plus, "m = {m}, j = {j}, k = {k}");
                count += 1;
            }
        }
    }
    assert_eq!(count, 55);
}

#[test]
fn trivial_strip_wide_range() {
    for n in 1..=3 {
        for d_a in 1..=2 {
            let p = CappingSystemParams::with_d_a(n, d_a).unwrap();
            for g in -5..=5 {
                let r = trivial_cobordism_sign(g, p).unwrap();
                assert_eq!(r.total, Sign::Plus);
                assert!(r.agrees());
            }
        }
    }
}

fn gradings(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=4, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dsquared_depends_on_parities_only(
        f in gradings(2..=4),
        b in gradings(2..=5),
        k_seed in 0usize..8,
        n in 1u32..=3,
        shift in prop::collection::vec(-2i64..=2, 9),
    ) {
        let r = b.len();
        let k = k_seed % r + 1;
        let build = |f: &[i64], b: &[i64]| {
            let mut b = b.to_vec();
            b[k - 1] = f.iter().sum::<i64>() + 1;
            DsquaredScenario::new(f.len() + 1, k, r, b, f.to_vec(), params(n)).unwrap()
        };
        let s = build(&f, &b);
        let f2: Vec<i64> = f.iter().zip(&shift).map(|(x, d)| x + 2 * d).collect();
        let b2: Vec<i64> = b.iter().zip(shift.iter().rev()).map(|(x, d)| x + 2 * d).collect();
        let s2 = build(&f2, &b2);
        let r1 = dsquared_rearrangement_sign(&s).unwrap();
        let r2 = dsquared_rearrangement_sign(&s2).unwrap();
        prop_assert!(r1.agrees());
        prop_assert_eq!(r1.total, r2.total);
    }

    #[test]
    fn chainmap_ledgers_match(
        sub in prop::collection::vec(gradings(2..=4), 2..=4),
        c in gradings(2..=5),
        f in gradings(2..=4),
        j_seed in 0usize..8,
        n in 1u32..=3,
    ) {
        let t = TScenario::new(sub, params(n)).unwrap();
        prop_assert!(chainmap_t_sign(&t).unwrap().agrees());
        let j = j_seed % c.len() + 1;
        let tt = TtildeScenario::with_rigid_cj(j, c, f, params(n)).unwrap();
        prop_assert!(chainmap_ttilde_sign(&tt).unwrap().agrees());
    }

    #[test]
    fn chainmap_cancels_on_any_split(
        sub in prop::collection::vec(gradings(2..=3), 2..=3),
        k_seed in 0usize..16,
        lo_seed in 0usize..16,
        n in 1u32..=3,
    ) {
        let t = TScenario::new(sub, params(n)).unwrap();
        let word = t.word();
        let k = 2 + k_seed % (word.len() - 2);
        let lo = lo_seed % (word.len() - k + 1);
        let mut c = word[..lo].to_vec();
        c.push(0);
        c.extend_from_slice(&word[lo + k..]);
        let tt = TtildeScenario::with_rigid_cj(lo + 1, c, word[lo..lo + k].to_vec(), params(n)).unwrap();
        let v = chainmap_cancellation(&t, &tt).unwrap();
        prop_assert!(v.holds());
    }

    #[test]
    fn canonical_gluing_multiplies_tokens(
        n in 1u32..=4,
        extras in prop::collection::vec(0usize..=2, 4),
        ta in any::<bool>(),
        tb in any::<bool>(),
    ) {
        let a = ClosedDiskProblem::with_extras(n, extras[0], extras[1], Sign::from_bool_negative(ta));
        let b = ClosedDiskProblem::with_extras(n, extras[2], extras[3], Sign::from_bool_negative(tb));
        let v = canonical_gluing_check(&a, &b).unwrap();
        prop_assert!(v.holds());
        prop_assert_eq!(v.glued_token, a.token * b.token);
    }
}

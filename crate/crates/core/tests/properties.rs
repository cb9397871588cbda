mod common;

use std::collections::BTreeSet;

use common::*;
use gentree::graphmap::{flip, ModulePair};
use gentree::indec::{classify, tree_module_fastpath, ClassifyOptions, Outcome};
use gentree::linalg::{
    hom_space, int, is_indecomposable_oracle, FieldSpec, Homomorphism, OracleConfig, OracleOutcome,
};
use gentree::network::Subnetwork;
use gentree::quiver::pushdown;
use proptest::prelude::*;
use rand::Rng;

fn pair_from(seed: u64) -> ModulePair {
    let (f1, f2) = random_pair(&mut rng(seed));
    ModulePair::new(f1, f2, FieldSpec::Rational).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn graph_maps_are_closed_under_negation(seed in any::<u64>()) {
        let p = pair_from(seed);
        let gs = p.ggms().unwrap();
        for g in gs {
            prop_assert!(p.is_ggm(&g.sub));
            prop_assert!(p.served_exactly_once(&g.sub));
            let neg = g.negate(&p);
            prop_assert!(gs.contains(&neg));
            prop_assert!(neg.hom.add(&g.hom).is_zero_in(p.field()));
        }
    }

    #[test]
    fn targeted_search_matches_enumeration(seed in any::<u64>()) {
        let p = pair_from(seed);
        let gs = p.ggms().unwrap();
        for v in 0..p.n2.net.vertex_count() {
            let hit = p.ggm_through(v).unwrap();
            prop_assert_eq!(hit.is_some(), gs.iter().any(|g| g.sub.vertices.contains(&v)));
            if let Some(g) = hit {
                prop_assert!(g.sub.vertices.contains(&v));
                prop_assert!(gs.contains(&g));
            }
        }
    }

    #[test]
    fn ghosts_realise_zero(seed in any::<u64>()) {
        let p = pair_from(seed);
        let ghosts = p.ghosts().unwrap();
        prop_assert_eq!(p.find_ghost().unwrap().is_some(), !ghosts.is_empty());
        for g in ghosts {
            prop_assert!(p.is_ghost(&g.sub));
            let flipped = flip(&g.sub);
            prop_assert_eq!(&flipped.vertices, &g.sub.vertices);
            prop_assert!(ghosts.iter().any(|h| h.sub == flipped));
            prop_assert!(p.hom_of_subnetwork(&g.sub).is_zero_in(p.field()));
        }
    }

    #[test]
    fn support_preimages_are_complete(seed in any::<u64>()) {
        let p = pair_from(seed);
        for h in hom_space(&p.m1, &p.m2).unwrap() {
            let supp = p.support(&h);
            let lifted = Subnetwork::induced(&p.n2.net, supp.iter().flat_map(|&b| [2 * b, 2 * b + 1]));
            prop_assert!(p.is_complete(&lifted).complete);
        }
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>()) {
        let p = pair_from(seed);
        prop_assume!(p.is_ghost_free().unwrap());
        let basis = hom_space(&p.m1, &p.m2).unwrap();
        let mut r = rng(seed ^ 0x5eed);
        let mut h = Homomorphism::zero(&p.m1, &p.m2);
        for b in &basis {
            h = h.add(&b.scale(&int(r.gen_range(-3..=3))));
        }
        h = h.reduce(p.field());
        match p.decompose_hom(&h) {
            Ok(d) => {
                prop_assert!(d.sum(&p).eq_in(&h, p.field()));
                prop_assert!(d.terms.iter().all(|t| p.is_ggm(&t.ggm.sub)));
            }
            Err(e) => prop_assert!(h.is_zero_in(p.field()), "{e}"),
        }
    }

    #[test]
    fn fast_path_agrees_with_oracle(seed in any::<u64>()) {
        let f = random_tree_module(&mut rng(seed));
        prop_assert!(tree_module_fastpath(&f).unwrap().is_indecomposable());
        let m = pushdown(&f, FieldSpec::Rational).unwrap();
        let o = is_indecomposable_oracle(&m, OracleConfig::default()).unwrap();
        let decomposable = matches!(o.outcome, OracleOutcome::Decomposable { .. });
        prop_assert!(!decomposable);
    }

    #[test]
    fn classify_agrees_with_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random_quiver(&mut r);
        let Some(f) = random_morphism(&mut r, &q, "F", 1, 8) else { return Ok(()) };
        let c = classify(&f, &ClassifyOptions::default()).unwrap();
        prop_assert_ne!(c.verdict.oracle_agrees(), Some(false));
        if let Outcome::Decomposable { idempotent, .. } = &c.verdict.outcome {
            let m = pushdown(&f, FieldSpec::Rational).unwrap();
            prop_assert!(idempotent.compose(idempotent).eq_in(idempotent, FieldSpec::Rational));
            prop_assert!(gentree::linalg::verify_hom(idempotent, &m, &m).unwrap());
        }
    }

    #[test]
    fn carving_keeps_complete_preimages(seed in any::<u64>()) {
        let p = pair_from(seed);
        prop_assume!(p.is_ghost_free().unwrap());
        for h in hom_space(&p.m1, &p.m2).unwrap() {
            let supp: BTreeSet<usize> = p.support(&h);
            let c = p.carve(&supp).unwrap();
            prop_assert_eq!(c.sub.vertices.len(), 2 * supp.len());
            prop_assert!(p.is_complete(&c.sub).complete);
            prop_assert!(p.is_r2_free(&c.sub));
        }
    }
}

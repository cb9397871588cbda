//! End-to-end acceptance run: one PASS/FAIL line per criterion, exact
//! arithmetic throughout.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::*;
use gentree::dynkin::{verify_catalog, DynkinDSpec};
use gentree::graphmap::ModulePair;
use gentree::indec::{
    classify, trace_rank_identity, tree_module_fastpath, ClassifyOptions, Outcome, ProofRoute,
};
use gentree::linalg::{
    hom_defects, hom_space, int, verify_hom, FieldSpec, Homomorphism, OracleConfig, OracleOutcome,
};
use gentree::network::Subnetwork;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(pair: &ModulePair, fixture_name: &str, hom: &str) -> Homomorphism {
    fixture(fixture_name)
        .hom(hom)
        .unwrap()
        .to_homomorphism(&pair.f1, &pair.f2, &pair.m1, &pair.m2)
        .unwrap()
}

fn neg(pair: &ModulePair, h: &Homomorphism) -> Homomorphism {
    h.scale(&int(-1)).reduce(pair.field())
}

fn sign_flip_hom() -> Check {
    let p = fixture_pair("flip");
    let basis = hom_space(&p.m1, &p.m2).map_err(|e| e.to_string())?;
    ensure(basis.len() == 1, || {
        format!("Hom dimension {}", basis.len())
    })?;
    let h = named(&p, "flip", "flip");
    let b = &basis[0];
    ensure(
        b.eq_in(&h, p.field()) || b.eq_in(&neg(&p, &h), p.field()),
        || "basis element is not v2 -> w4, v3 -> -w4 up to sign".into(),
    )?;
    let maps: Vec<&Homomorphism> = p.ggms().unwrap().iter().map(|g| &g.hom).collect();
    ensure(maps.len() == 2, || format!("{} graph maps", maps.len()))?;
    ensure(maps.contains(&&h) && maps.contains(&&neg(&p, &h)), || {
        "graph maps do not realise ±H".into()
    })?;
    Ok("dim Hom = 1, 2 graph maps realising ±(v2 -> w4, v3 -> -w4)".into())
}

fn ggm_enumeration() -> Check {
    let p = fixture_pair("ggm");
    let gs = p.ggms().unwrap();
    ensure(gs.len() == 6, || format!("{} graph maps", gs.len()))?;
    let mut expected = Vec::new();
    for name in ["G1", "G2", "G3"] {
        let h = named(&p, "ggm", name);
        expected.push(neg(&p, &h));
        expected.push(h);
    }
    for h in &expected {
        ensure(gs.iter().any(|g| &g.hom == h), || {
            "a displayed map is not realised".into()
        })?;
    }
    ensure(gs.iter().all(|g| expected.contains(&g.hom)), || {
        "an extra map is realised".into()
    })?;
    let (g1, g2, g3) = (
        named(&p, "ggm", "G1"),
        named(&p, "ggm", "G2"),
        named(&p, "ggm", "G3"),
    );
    ensure(g1.sub(&g2) == g3, || "G1 - G2 != G3".into())?;
    let homs: Vec<Homomorphism> = gs.iter().map(|g| g.hom.clone()).collect();
    let span = span_dim(&p, &homs);
    let dim = hom_space(&p.m1, &p.m2).map_err(|e| e.to_string())?.len();
    ensure(span == 2 && dim == 2, || {
        format!("span {span}, dim Hom {dim}")
    })?;
    Ok("6 graph maps = ±G1, ±G2, ±G3; G1 - G2 = G3; span = dim Hom = 2".into())
}

fn span_dim(p: &ModulePair, homs: &[Homomorphism]) -> usize {
    let rows: Vec<Vec<_>> = homs.iter().map(|h| h.coordinates()).collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    gentree::linalg::rank(p.field(), &rows, ncols)
}

fn non_homomorphism_witness() -> Check {
    let p = fixture_pair("ggm");
    let vs = [(2, 5), (1, 4), (3, 5)].map(|(n, m)| p.cover_index(n, m, true).unwrap());
    let sub = Subnetwork::induced(&p.n2.net, vs);
    let h = p.hom_of_subnetwork(&sub);
    ensure(
        !verify_hom(&h, &p.m1, &p.m2).map_err(|e| e.to_string())?,
        || "accepted as a homomorphism".into(),
    )?;
    let d = hom_defects(&h, &p.m1, &p.m2).map_err(|e| e.to_string())?;
    ensure(d.len() == 1, || format!("{} defects", d.len()))?;
    ensure(
        d[0].map_then_arrow == vec![int(1)] && d[0].arrow_then_map == vec![int(2)],
        || {
            format!(
                "defect {:?} vs {:?}",
                d[0].map_then_arrow, d[0].arrow_then_map
            )
        },
    )?;
    Ok("realised map fails: w5 vs 2 w5".into())
}

fn ghost_detection() -> Check {
    let p = fixture_pair("ghost");
    let n1 = &p.n1.net;
    ensure(
        (n1.vertex_count(), n1.arrow_count(), n1.edge_count()) == (7, 8, 2),
        || {
            format!(
                "{} vertices, {} arrows, {} edges",
                n1.vertex_count(),
                n1.arrow_count(),
                n1.edge_count()
            )
        },
    )?;
    ensure(!p.is_ghost_free().unwrap(), || "reported ghost-free".into())?;
    for g in p.ghosts().unwrap() {
        ensure(p.hom_of_subnetwork(&g.sub).is_zero_in(p.field()), || {
            "a ghost realises a nonzero map".into()
        })?;
    }
    Ok(format!(
        "7 vertices, 8 arrows, 2 edges; {} ghosts, all realising 0",
        p.ghosts().unwrap().len()
    ))
}

const RANDOM_PAIRS: usize = 200;
const SEED: u64 = 2024;

fn random_ghost_free_pairs() -> (Vec<ModulePair>, Vec<ModulePair>) {
    let mut r = rng(SEED);
    let (mut free, mut ghosted) = (Vec::new(), Vec::new());
    while free.len() < RANDOM_PAIRS {
        let (f1, f2) = random_pair(&mut r);
        let p = ModulePair::new(f1, f2, FieldSpec::Rational).unwrap();
        if p.is_ghost_free().unwrap() {
            free.push(p);
        } else {
            ghosted.push(p);
        }
    }
    (free, ghosted)
}

fn hom_generation(pairs: &[ModulePair]) -> Check {
    let mut basis = 0;
    for (i, p) in pairs.iter().enumerate() {
        check_hom_generation(p).map_err(|e| format!("pair {i}: {e}"))?;
        basis += hom_space(&p.m1, &p.m2).unwrap().len();
    }
    Ok(format!(
        "{} ghost-free pairs, {basis} basis elements rebuilt, spans match",
        pairs.len()
    ))
}

fn carving(pairs: &[ModulePair], ghosted: &[ModulePair]) -> Check {
    for (i, p) in pairs.iter().chain(ghosted).enumerate() {
        check_carving(p).map_err(|e| format!("random pair {i}: {e}"))?;
    }
    for name in ["ggm", "ghost"] {
        let p = fixture_pair(name);
        let all: BTreeSet<usize> = (0..p.n1.net.vertex_count()).collect();
        check_carving_of(&p, &all).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} random pairs and both fixtures",
        pairs.len() + ghosted.len()
    ))
}

const TREE_MODULES: usize = 100;

fn indecomposability() -> Check {
    let opts = ClassifyOptions::default();
    let d5 = &fixture("d5").morphisms[0];
    let c = classify(d5, &opts).map_err(|e| e.to_string())?;
    ensure(c.verdict.is_indecomposable(), || {
        format!("d5: {}", c.verdict.outcome)
    })?;
    let o = c.verdict.oracle.as_ref().ok_or("d5: oracle not run")?;
    ensure(o.field == FieldSpec::Prime(3), || {
        format!("oracle over {}", o.field)
    })?;
    ensure(c.verdict.oracle_agrees() == Some(true), || {
        "d5: oracle disagrees".into()
    })?;
    let mut r = rng(SEED + 1);
    let oracle = OracleConfig {
        budget: 3u64.pow(16),
        ..OracleConfig::default()
    };
    for i in 0..TREE_MODULES {
        let f = random_tree_module(&mut r);
        let v = tree_module_fastpath(&f).map_err(|e| format!("module {i}: {e}"))?;
        ensure(
            v.outcome
                == (Outcome::Indecomposable {
                    route: ProofRoute::TreeModule,
                }),
            || format!("module {i}: {}", v.outcome),
        )?;
        let m = gentree::quiver::pushdown(&f, FieldSpec::Rational).unwrap();
        let o = gentree::linalg::is_indecomposable_oracle(&m, oracle).map_err(|e| e.to_string())?;
        ensure(o.outcome == OracleOutcome::Indecomposable, || {
            format!("module {i}: oracle {:?}", o.outcome)
        })?;
    }
    Ok(format!("d5 proved, oracle over F3 agrees; {TREE_MODULES} random tree modules proved, oracle agrees"))
}

fn converse() -> Check {
    let opts = ClassifyOptions {
        oracle: None,
        ..ClassifyOptions::default()
    };
    let dec = &fixture("dec").morphisms[0];
    let m = gentree::quiver::pushdown(dec, FieldSpec::Rational).unwrap();
    let c = classify(dec, &opts).map_err(|e| e.to_string())?;
    let Outcome::Decomposable {
        idempotent,
        image_dims,
        kernel_dims,
    } = &c.verdict.outcome
    else {
        return Err(format!("dec: {}", c.verdict.outcome));
    };
    // basis of the two-dimensional space is (v1, v3); v2 spans the other
    let images = gentree::cli::parse::hom_images(idempotent, &m, &m);
    let expect = [
        (1, vec![(int(1), 3)]),
        (2, vec![(int(1), 2)]),
        (3, vec![(int(1), 3)]),
    ];
    ensure(images.into_iter().collect::<Vec<_>>() == expect, || {
        "dec: idempotent differs".into()
    })?;
    ensure(idempotent.compose(idempotent) == *idempotent, || {
        "dec: e^2 != e".into()
    })?;
    ensure(verify_hom(idempotent, &m, &m).unwrap(), || {
        "dec: e is not a homomorphism".into()
    })?;
    ensure(
        image_dims == &vec![1, 1] && kernel_dims == &vec![1, 0],
        || format!("dec: summands {image_dims:?} {kernel_dims:?}"),
    )?;
    ensure(trace_rank_identity(idempotent, FieldSpec::Rational), || {
        "dec: trace != rank".into()
    })?;
    let bad = &fixture("d5_bad").morphisms[0];
    let c = classify(bad, &opts).map_err(|e| e.to_string())?;
    let Outcome::Decomposable { idempotent, .. } = &c.verdict.outcome else {
        return Err(format!("d5_bad: {}", c.verdict.outcome));
    };
    ensure(trace_rank_identity(idempotent, FieldSpec::Rational), || {
        "d5_bad: trace != rank".into()
    })?;
    Ok("dec: e = (v1 -> v3, v3 -> v3, v2 -> v2), summands (1,1) + (1,0); d5_bad decomposable; trace = rank".into())
}

fn dynkin_catalog() -> Check {
    let opts = ClassifyOptions::default();
    let mut runs = 0;
    for n in [4, 5] {
        let fig = DynkinDSpec::new(n, {
            let mut o = vec![gentree::dynkin::Dir::Backward; n - 2];
            o.push(gentree::dynkin::Dir::Forward);
            o
        })
        .unwrap();
        let others = DynkinDSpec::all(n).unwrap();
        for spec in std::iter::once(fig.clone()).chain(others.into_iter().filter(|s| *s != fig)) {
            let r = verify_catalog(&spec, true, &opts).map_err(|e| e.to_string())?;
            ensure(r.entries.len() == n * (n - 1), || {
                format!("{spec}: {} roots", r.entries.len())
            })?;
            if let Some(e) = r.entries.iter().find(|e| !e.ok()) {
                return Err(format!("{spec}: root {:?} {}", e.root, e.outcome));
            }
            runs += 1;
        }
    }
    Ok(format!(
        "D4 (12 roots) and D5 (20 roots) in all {runs} orientations; wrong choices decomposable"
    ))
}

fn structure(pairs: &[ModulePair], ghosted: &[ModulePair]) -> Check {
    for name in FIXTURES {
        check_structure(&fixture_pair(name)).map_err(|e| format!("{name}: {e}"))?;
    }
    for (i, p) in pairs.iter().chain(ghosted).enumerate() {
        check_structure(p).map_err(|e| format!("random pair {i}: {e}"))?;
    }
    Ok(format!(
        "{} fixtures and {} random pairs",
        FIXTURES.len(),
        pairs.len() + ghosted.len()
    ))
}

fn run(label: &str, f: impl FnOnce() -> Check) -> bool {
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &out {
        Ok(detail) => println!("PASS {label}: {detail}"),
        Err(detail) => println!("FAIL {label}: {detail}"),
    }
    out.is_ok()
}

#[test]
fn acceptance() {
    let (free, ghosted) = random_ghost_free_pairs();
    let results = [
        run("1 sign-flip Hom", sign_flip_hom),
        run("2 graph map enumeration", ggm_enumeration),
        run("3 non-homomorphism witness", non_homomorphism_witness),
        run("4 ghost detection", ghost_detection),
        run("5 Hom generated by graph maps", || hom_generation(&free)),
        run("6 carving", || carving(&free, &ghosted)),
        run("7 indecomposability", indecomposability),
        run("8 converse idempotents", converse),
        run("9 type D catalog", dynkin_catalog),
        run("10 structural invariants", || structure(&free, &ghosted)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

//! Fixture loading shared by unit tests.

use crate::cli::parse::{parse_problem, Problem};
use crate::quiver::TreeMorphism;

pub(crate) fn fixture(name: &str) -> Problem {
    let src = match name {
        "dec" => include_str!("../fixtures/dec.txt"),
        "dec_rooted" => include_str!("../fixtures/dec_rooted.txt"),
        "flip" => include_str!("../fixtures/flip.txt"),
        "ggm" => include_str!("../fixtures/ggm.txt"),
        "ghost" => include_str!("../fixtures/ghost.txt"),
        "d5" => include_str!("../fixtures/d5.txt"),
        "d5_bad" => include_str!("../fixtures/d5_bad.txt"),
        other => panic!("no fixture {other}"),
    };
    parse_problem(src).unwrap()
}

/// The first two morphisms of a fixture, or the only one twice.
pub(crate) fn morphisms(name: &str) -> (TreeMorphism, TreeMorphism) {
    let p = fixture(name);
    let f1 = p.morphisms[0].clone();
    let f2 = p.morphisms.get(1).cloned().unwrap_or_else(|| f1.clone());
    (f1, f2)
}

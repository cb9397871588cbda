//! Depth-first enumeration of complete, R2-free, connected subnetworks of
//! the two-cover.
//!
//! From a seed vertex the search repeatedly picks the first unserved
//! obligation (vertices in insertion order) and branches over the links that
//! can serve it. In such a subnetwork every obligation is served exactly
//! once, so each result is reached along exactly one branch from any of its
//! vertices.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::obligations::blocked_pair;
use super::ModulePair;
use crate::network::{LinkId, Subnetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Never both lifts of a base vertex.
    InvolutionFree,
    /// Closed under the involution. Grown along links like the other mode;
    /// invariance is checked once every obligation is served.
    Invariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Seeds {
    /// Every admissible vertex; each result is reported from its smallest
    /// vertex only.
    All,
    /// Every result containing this vertex.
    Through(usize),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Query<'a> {
    pub mode: Mode,
    pub seeds: Seeds,
    pub allowed: Option<&'a BTreeSet<usize>>,
    /// Stop at the first result in seed order, then branch order.
    pub first_only: bool,
}

impl<'a> Query<'a> {
    pub fn all(mode: Mode) -> Self {
        Query {
            mode,
            seeds: Seeds::All,
            allowed: None,
            first_only: false,
        }
    }
}

/// Some seed used up its step allowance before the answer was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LimitReached;

pub(crate) fn enumerate(pair: &ModulePair, q: Query<'_>) -> Result<Vec<Subnetwork>, LimitReached> {
    let n = pair.n2.net.vertex_count();
    let seeds: Vec<usize> = match q.seeds {
        Seeds::Through(v) => vec![v],
        Seeds::All => (0..n)
            .filter(|&v| q.mode == Mode::InvolutionFree || v % 2 == 0)
            .filter(|&v| q.allowed.is_none_or(|a| a.contains(&(v / 2))))
            .collect(),
    };
    // smallest seed with a result so far; in first-only mode larger seeds stop
    let best = AtomicUsize::new(usize::MAX);
    let runs: Vec<(usize, Result<Vec<Subnetwork>, LimitReached>)> = seeds
        .par_iter()
        .map(|&seed| {
            let mut s = State::new(pair, q, seed, &best);
            s.add_vertex(seed);
            s.step();
            (
                seed,
                if s.exceeded {
                    Err(LimitReached)
                } else {
                    Ok(s.found)
                },
            )
        })
        .collect();
    let mut out = Vec::new();
    for (seed, run) in runs {
        if q.first_only && seed > best.load(Ordering::Relaxed) {
            break;
        }
        let found = run?;
        if q.first_only && !found.is_empty() {
            return Ok(found);
        }
        out.extend(found);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

struct State<'a> {
    pair: &'a ModulePair,
    q: Query<'a>,
    seed: usize,
    best: &'a AtomicUsize,
    steps: u64,
    exceeded: bool,
    in_set: Vec<bool>,
    order: Vec<usize>,
    served: Vec<Vec<bool>>,
    /// Chosen links at each vertex, with their far ends.
    at: Vec<Vec<usize>>,
    links: Vec<LinkId>,
    found: Vec<Subnetwork>,
}

impl<'a> State<'a> {
    fn new(pair: &'a ModulePair, q: Query<'a>, seed: usize, best: &'a AtomicUsize) -> Self {
        let n = pair.n2.net.vertex_count();
        State {
            pair,
            q,
            seed,
            best,
            steps: 0,
            exceeded: false,
            in_set: vec![false; n],
            order: Vec::new(),
            served: (0..n)
                .map(|v| vec![false; pair.obligations(v).len()])
                .collect(),
            at: vec![Vec::new(); n],
            links: Vec::new(),
            found: Vec::new(),
        }
    }

    fn add_vertex(&mut self, v: usize) {
        self.in_set[v] = true;
        self.order.push(v);
    }

    fn remove_vertex(&mut self, v: usize) {
        self.in_set[v] = false;
        let last = self.order.pop();
        debug_assert_eq!(last, Some(v));
    }

    fn stopped(&self) -> bool {
        self.exceeded
            || (self.q.first_only
                && (!self.found.is_empty() || self.best.load(Ordering::Relaxed) < self.seed))
    }

    fn first_unserved(&self) -> Option<(usize, usize)> {
        self.order
            .iter()
            .find_map(|&v| self.served[v].iter().position(|s| !s).map(|o| (v, o)))
    }

    fn admissible_new(&self, y: usize) -> bool {
        if self.q.seeds == Seeds::All && y < self.seed {
            return false;
        }
        if !self.q.allowed.is_none_or(|a| a.contains(&(y / 2))) {
            return false;
        }
        match self.q.mode {
            Mode::InvolutionFree => !self.in_set[y ^ 1],
            Mode::Invariant => true,
        }
    }

    fn creates_block(&self, x: usize, y: usize) -> bool {
        let tri = &self.pair.triangles;
        self.at[x].iter().any(|&p| blocked_pair(tri, p, x, y))
            || self.at[y].iter().any(|&q| blocked_pair(tri, q, y, x))
    }

    fn step(&mut self) {
        self.steps += 1;
        if self.steps > self.pair.search_limit() {
            self.exceeded = true;
        }
        if self.stopped() {
            return;
        }
        let Some((x, o)) = self.first_unserved() else {
            self.emit();
            return;
        };
        let pair = self.pair;
        for &(link, y, oy) in &pair.table.servers[x][o] {
            let new_y = !self.in_set[y];
            if new_y {
                if !self.admissible_new(y) {
                    continue;
                }
            } else if self.served[y][oy] {
                continue;
            }
            if self.creates_block(x, y) {
                continue;
            }
            if new_y {
                self.add_vertex(y);
            }
            self.links.push(link);
            self.served[x][o] = true;
            self.served[y][oy] = true;
            self.at[x].push(y);
            self.at[y].push(x);

            self.step();

            self.at[y].pop();
            self.at[x].pop();
            self.served[y][oy] = false;
            self.served[x][o] = false;
            self.links.pop();
            if new_y {
                self.remove_vertex(y);
            }
            if self.stopped() {
                return;
            }
        }
    }

    fn emit(&mut self) {
        if self.q.mode == Mode::Invariant && !self.order.iter().all(|&v| self.in_set[v ^ 1]) {
            return;
        }
        let mut sub = Subnetwork {
            vertices: self.order.iter().copied().collect(),
            ..Subnetwork::default()
        };
        for &l in &self.links {
            sub.insert_link(l);
        }
        self.found.push(sub);
        if self.q.first_only {
            self.best.fetch_min(self.seed, Ordering::Relaxed);
        }
    }
}

//! Exhaustive search for an EL-labeling.
//!
//! Whether a labeling is EL depends only on the weak order it induces on the
//! covers, so the search enumerates weak orders: each cover, in turn, either
//! joins an existing label class or opens a new class in one of the gaps
//! between existing classes. Every weak order is produced exactly once.
//! Covers are visited so that small intervals are completed first; after each
//! step the intervals through the new cover are checked on their fully
//! labeled chains.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::verify::{interval_chains, LexMode};
use super::EdgeLabeling;
use crate::canonical::{canonical_form, canonical_labeling, CanonicalForm};
use crate::lattice::Lattice;

pub const DEFAULT_EL_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Shellable(EdgeLabeling),
    NotShellable,
    Unknown { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Label choices tried.
    pub nodes: u64,
}

struct Search {
    // maximal chains of each interval, as edge lists
    chains: Vec<Vec<usize>>,
    intervals: Vec<Vec<usize>>,
    mobius: Vec<i64>,
    pos: Vec<usize>,
    order: Vec<usize>,
    // checks[p]: intervals through order[p]
    checks: Vec<Vec<usize>>,
    label: Vec<u32>,
    classes: u32,
    nodes: u64,
    budget: u64,
    mode: LexMode,
    use_mobius: bool,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Nodes given to the first restart; each later restart gets twice as many.
const FIRST_RUN: u64 = 1_000;

/// Searches the canonical relabeling of `l`, so isomorphic inputs get the
/// same verdict and node count, and maps any certificate back.
///
/// An EL-labeling restricts to every interval, so the intervals below the
/// coatoms and above the atoms are searched first; one that is not
/// EL-shellable refutes `l`. Search cost depends heavily on the order covers
/// are visited, so the main search restarts under seeded renumberings with
/// doubling node limits until one run finishes or `budget` is spent. A
/// finished run is exhaustive, so `NotShellable` is exact.
pub fn el_search(l: &Lattice, budget: u64, mode: LexMode) -> SearchResult {
    let mut s = Restarts {
        nodes: 0,
        budget,
        mode,
        memo: HashMap::new(),
    };
    let outcome = s.run(l);
    SearchResult {
        outcome,
        nodes: s.nodes,
    }
}

struct Restarts {
    nodes: u64,
    budget: u64,
    mode: LexMode,
    // canonical form -> EL-shellable, for decided intervals
    memo: HashMap<CanonicalForm, bool>,
}

impl Restarts {
    fn refuted_by_an_interval(&mut self, l: &Lattice) -> bool {
        let (bot, top) = (l.bot(), l.top());
        let bounds = l
            .lower_covers(top)
            .iter()
            .map(|&c| (bot, c))
            .chain(l.upper_covers(bot).iter().map(|&a| (a, top)));
        let intervals: Vec<Lattice> = bounds
            .map(|(lo, hi)| l.interval(lo, hi).expect("comparable").lattice)
            .filter(|iv| iv.len() > 3)
            .collect();
        for iv in intervals {
            let key = canonical_form(iv.poset());
            let shellable = match self.memo.get(&key) {
                Some(&known) => Some(known),
                None => match self.run(&iv) {
                    SearchOutcome::Shellable(_) => Some(true),
                    SearchOutcome::NotShellable => Some(false),
                    SearchOutcome::Unknown { .. } => None,
                },
            };
            if let Some(known) = shellable {
                self.memo.insert(key, known);
            }
            if shellable == Some(false) {
                return true;
            }
        }
        false
    }

    fn run(&mut self, l: &Lattice) -> SearchOutcome {
        if self.refuted_by_an_interval(l) {
            return SearchOutcome::NotShellable;
        }
        let canonical = canonical_labeling(l.poset());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut limit = FIRST_RUN;
        let mut perm = canonical.clone();
        loop {
            if self.nodes >= self.budget {
                return SearchOutcome::Unknown {
                    budget: self.budget,
                };
            }
            let run = search_as_numbered(
                &l.relabel(&perm),
                limit.min(self.budget - self.nodes),
                self.mode,
                true,
            );
            self.nodes += run.nodes;
            match run.outcome {
                SearchOutcome::Unknown { .. } => {
                    let mut shuffle: Vec<usize> = (0..l.len()).collect();
                    shuffle.shuffle(&mut rng);
                    perm = canonical.iter().map(|&c| shuffle[c]).collect();
                    limit = limit.saturating_mul(2);
                }
                SearchOutcome::Shellable(cert) => {
                    let mut inverse = vec![0; perm.len()];
                    for (old, &new) in perm.iter().enumerate() {
                        inverse[new] = old;
                    }
                    let mut back = EdgeLabeling::new();
                    for ((a, b), label) in cert.iter() {
                        back.insert(inverse[a], inverse[b], label);
                    }
                    return SearchOutcome::Shellable(back);
                }
                SearchOutcome::NotShellable => return SearchOutcome::NotShellable,
            }
        }
    }
}

/// `table[a][b]` is the Möbius function on `[a, b]`, zero when `a` is not
/// below `b`.
fn mobius_table(l: &Lattice) -> Vec<Vec<i64>> {
    let n = l.len();
    let order = l.poset().linear_extension();
    let mut table = vec![vec![0i64; n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        for &z in &order {
            if !l.leq(a, z) {
                continue;
            }
            row[z] = if z == a {
                1
            } else {
                -order
                    .iter()
                    .filter(|&&w| w != z && l.leq(a, w) && l.leq(w, z))
                    .map(|&w| row[w])
                    .sum::<i64>()
            };
        }
    }
    table
}

/// One run with covers visited in an order fixed by the element ids.
fn search_as_numbered(l: &Lattice, budget: u64, mode: LexMode, use_mobius: bool) -> SearchResult {
    let covers = l.covers();
    let m = covers.len();
    let edge_of: HashMap<_, _> = covers.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mobius = mobius_table(l);
    let mut intervals = Vec::new();
    for a in l.elements() {
        for b in l.poset().up_set(a).iter() {
            if a != b {
                let size = l
                    .poset()
                    .up_set(a)
                    .intersection(l.poset().down_set(b))
                    .count();
                intervals.push((size, a, b));
            }
        }
    }
    intervals.sort_unstable();

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut interval_chain_ids: Vec<Vec<usize>> = Vec::new();
    let mut interval_mobius = Vec::new();
    let mut order = Vec::with_capacity(m);
    let mut placed = vec![false; m];
    for &(_, a, b) in &intervals {
        let mut ids = Vec::new();
        for c in interval_chains(l, a, b) {
            let edges: Vec<usize> = c.windows(2).map(|w| edge_of[&(w[0], w[1])]).collect();
            for &e in &edges {
                if !placed[e] {
                    placed[e] = true;
                    order.push(e);
                }
            }
            ids.push(chains.len());
            chains.push(edges);
        }
        interval_chain_ids.push(ids);
        interval_mobius.push(mobius[a][b]);
    }
    debug_assert_eq!(order.len(), m);

    let mut pos = vec![0; m];
    for (p, &e) in order.iter().enumerate() {
        pos[e] = p;
    }
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, ids) in interval_chain_ids.iter().enumerate() {
        let mut touched: Vec<usize> = ids
            .iter()
            .flat_map(|&c| chains[c].iter().map(|&e| pos[e]))
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for p in touched {
            checks[p].push(i);
        }
    }

    let mut s = Search {
        chains,
        intervals: interval_chain_ids,
        mobius: interval_mobius,
        pos,
        order,
        checks,
        label: vec![0; m],
        classes: 0,
        nodes: 0,
        budget,
        mode,
        use_mobius,
    };
    let outcome = match s.dfs(0) {
        Step::Found => SearchOutcome::Shellable(EdgeLabeling::from(
            covers
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (a, b, s.label[i] as i64 + 1))
                .collect::<Vec<_>>(),
        )),
        Step::Exhausted => SearchOutcome::NotShellable,
        Step::OutOfBudget => SearchOutcome::Unknown { budget },
    };
    SearchResult {
        outcome,
        nodes: s.nodes,
    }
}

impl Search {
    fn dfs(&mut self, p: usize) -> Step {
        if p == self.order.len() {
            return Step::Found;
        }
        let e = self.order[p];
        let k = self.classes;
        // (new class?, position)
        let mut options: Vec<(bool, u32)> = Vec::with_capacity(2 * k as usize + 1);
        options.extend((0..=k).map(|g| (true, g)));
        options.extend((0..k).map(|c| (false, c)));

        for (fresh, x) in options {
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            if fresh {
                for &f in &self.order[..p] {
                    if self.label[f] >= x {
                        self.label[f] += 1;
                    }
                }
                self.classes += 1;
            }
            self.label[e] = x;

            let result = if self.consistent(p) {
                self.dfs(p + 1)
            } else {
                Step::Exhausted
            };
            if !matches!(result, Step::Exhausted) {
                return result;
            }

            if fresh {
                for &f in &self.order[..p] {
                    if self.label[f] > x {
                        self.label[f] -= 1;
                    }
                }
                self.classes -= 1;
            }
        }
        Step::Exhausted
    }

    /// Some labeled pair of consecutive edges fails to increase.
    fn has_descent(&self, c: usize, p: usize) -> bool {
        self.chains[c].windows(2).any(|w| {
            self.pos[w[0]] <= p && self.pos[w[1]] <= p && self.label[w[0]] >= self.label[w[1]]
        })
    }

    /// Some labeled pair of consecutive edges increases.
    fn has_ascent(&self, c: usize, p: usize) -> bool {
        self.chains[c].windows(2).any(|w| {
            self.pos[w[0]] <= p && self.pos[w[1]] <= p && self.label[w[0]] < self.label[w[1]]
        })
    }

    fn labeled(&self, c: usize, p: usize) -> bool {
        self.chains[c].iter().all(|&e| self.pos[e] <= p)
    }

    /// Compares chain `c` against the fully labeled chain `i` as far as the
    /// labeled prefix of `c` decides it.
    fn lex_cmp(&self, c: usize, i: usize, p: usize) -> Option<Ordering> {
        for (&e, &f) in self.chains[c].iter().zip(&self.chains[i]) {
            if self.pos[e] > p {
                return None;
            }
            match self.label[e].cmp(&self.label[f]) {
                Ordering::Equal => {}
                o => return Some(o),
            }
        }
        Some(self.chains[c].len().cmp(&self.chains[i].len()))
    }

    /// Under an EL-labeling the Möbius value of an interval is the sum of
    /// (-1)^length over its maximal chains without ascents. Fails when the
    /// chains still undecided cannot close the gap.
    fn mobius_reachable(&self, iv: usize, p: usize) -> bool {
        let (mut lo, mut hi) = (0, 0);
        for &c in &self.intervals[iv] {
            if self.has_ascent(c, p) {
                continue;
            }
            let sign = if self.chains[c].len().is_multiple_of(2) {
                1
            } else {
                -1
            };
            if self.labeled(c, p) {
                lo += sign;
                hi += sign;
            } else if sign > 0 {
                hi += 1;
            } else {
                lo -= 1;
            }
        }
        (lo..=hi).contains(&self.mobius[iv])
    }

    /// Checks every interval through `order[p]` against the labels so far.
    /// Relative order among assigned labels never changes later, so any
    /// failure here is permanent.
    fn consistent(&self, p: usize) -> bool {
        for &iv in &self.checks[p] {
            if self.use_mobius && !self.mobius_reachable(iv, p) {
                return false;
            }
            let ids = &self.intervals[iv];
            let mut open = 0;
            let mut increasing = None;
            for &c in ids {
                if self.has_descent(c, p) {
                    continue;
                }
                open += 1;
                if self.labeled(c, p) {
                    if increasing.is_some() {
                        return false;
                    }
                    increasing = Some(c);
                }
            }
            if open == 0 {
                return false;
            }
            if let Some(i) = increasing {
                let beaten = ids.iter().any(|&c| {
                    c != i
                        && self.lex_cmp(c, i, p).is_some_and(|o| match self.mode {
                            LexMode::Weak => o.is_lt(),
                            LexMode::Strict => o.is_le(),
                        })
                });
                if beaten {
                    return false;
                }
            }
        }
        true
    }
}

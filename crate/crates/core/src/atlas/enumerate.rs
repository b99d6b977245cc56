//! Generation of all lattices of a given size up to isomorphism.
//!
//! Elements are added one at a time in order of rank, bottom first. A new
//! element is described by its set of lower covers, an antichain of existing
//! elements; within one rank the lower-cover sets are non-decreasing. Every
//! lattice has at least one such construction order. Elements added later are
//! never below earlier ones, so a pair of elements that already has a least
//! upper bound keeps it: the down-set of every new element must be closed
//! under the joins defined so far, and pairs without an upper bound get the
//! new element as their join. The top covers every maximal element. The
//! resulting labeled lattices are deduplicated by canonical form.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::canonical::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ElementId;

/// Largest size accepted by [`enumerate_lattices`].
pub const MAX_ENUMERATION_SIZE: usize = 10;

const NONE: u8 = u8::MAX;

#[derive(Clone)]
struct Partial {
    n: usize,
    /// Lower covers per element, sorted.
    lower: Vec<Vec<ElementId>>,
    down: Vec<BitSet>,
    rank: Vec<usize>,
    /// `join[a * n + b]`, or `NONE` while the pair has no upper bound.
    join: Vec<u8>,
}

impl Partial {
    fn new(n: usize) -> Partial {
        let mut down = BitSet::new(n);
        down.insert(0);
        let mut join = vec![NONE; n * n];
        join[0] = 0;
        Partial {
            n,
            lower: vec![Vec::new()],
            down: vec![down],
            rank: vec![0],
            join,
        }
    }

    fn len(&self) -> usize {
        self.lower.len()
    }

    /// Adds an element with lower covers `s` if the joins stay consistent.
    fn push(&self, s: Vec<ElementId>) -> Option<Partial> {
        let v = self.len();
        let n = self.n;
        let mut d = BitSet::new(n);
        for &x in &s {
            d.union_with(&self.down[x]);
        }
        let members: Vec<ElementId> = d.iter().collect();
        let mut join = self.join.clone();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                let j = join[a * n + b];
                if j == NONE {
                    join[a * n + b] = v as u8;
                    join[b * n + a] = v as u8;
                } else if !d.contains(j as usize) {
                    return None;
                }
            }
        }
        for &a in &members {
            join[a * n + v] = v as u8;
            join[v * n + a] = v as u8;
        }
        join[v * n + v] = v as u8;
        d.insert(v);
        let rank = 1 + s.iter().map(|&x| self.rank[x]).max().unwrap_or(0);
        let mut next = self.clone();
        next.lower.push(s);
        next.down.push(d);
        next.rank.push(rank);
        next.join = join;
        Some(next)
    }

    fn maximal_elements(&self) -> Vec<ElementId> {
        let mut covered = vec![false; self.len()];
        for l in &self.lower {
            for &x in l {
                covered[x] = true;
            }
        }
        (0..self.len()).filter(|&x| !covered[x]).collect()
    }

    fn finish(&self) -> Lattice {
        let top = self.len();
        let mut covers: Vec<(ElementId, ElementId)> = Vec::new();
        for (b, l) in self.lower.iter().enumerate() {
            covers.extend(l.iter().map(|&a| (a, b)));
        }
        covers.extend(self.maximal_elements().into_iter().map(|a| (a, top)));
        Lattice::from_covers(top + 1, &covers).expect("construction yields a lattice")
    }

    /// Antichains of existing elements allowed as the next lower-cover set.
    fn candidates(&self) -> Vec<Vec<ElementId>> {
        let last = self.len() - 1;
        let (min_rank, min_key) = (self.rank[last], &self.lower[last]);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.antichains(0, &mut chosen, &mut out);
        out.retain(|s| {
            let r = 1 + s.iter().map(|&x| self.rank[x]).max().unwrap();
            r > min_rank || (r == min_rank && s >= min_key)
        });
        out
    }

    fn antichains(
        &self,
        from: ElementId,
        chosen: &mut Vec<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
    ) {
        for x in from..self.len() {
            if chosen
                .iter()
                .all(|&y| !self.down[x].contains(y) && !self.down[y].contains(x))
            {
                chosen.push(x);
                out.push(chosen.clone());
                self.antichains(x + 1, chosen, out);
                chosen.pop();
            }
        }
    }
}

fn extend(p: &Partial, total: usize, out: &mut BTreeSet<CanonicalForm>) {
    // the top is element `total - 1`
    if p.len() == total - 1 {
        out.insert(canonical_form(p.finish().poset()));
        return;
    }
    for s in p.candidates() {
        if let Some(next) = p.push(s) {
            extend(&next, total, out);
        }
    }
}

/// Canonical forms of all `n`-element lattices, ascending.
pub fn enumerate_canonical_forms(n: usize) -> Result<Vec<CanonicalForm>> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::BoundExceeded {
            n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![canonical_form(Lattice::chain(0).poset())]),
        _ => {}
    }
    let root = Partial::new(n);
    if n == 2 {
        let mut out = BTreeSet::new();
        extend(&root, n, &mut out);
        return Ok(out.into_iter().collect());
    }
    // branch on the second element's successors in parallel
    let first = root.push(vec![0]).expect("atom over the bottom");
    let branches: Vec<Partial> = if n == 3 {
        vec![first]
    } else {
        first
            .candidates()
            .into_iter()
            .filter_map(|s| first.push(s))
            .collect()
    };
    let sets: Vec<BTreeSet<CanonicalForm>> = branches
        .par_iter()
        .map(|b| {
            let mut out = BTreeSet::new();
            extend(b, n, &mut out);
            out
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(all.into_iter().collect())
}

/// All `n`-element lattices up to isomorphism, each in canonical labeling,
/// ordered by canonical form.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>> {
    enumerate_canonical_forms(n)?
        .into_iter()
        .map(|c| Lattice::try_from_poset(c.to_poset()?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=7)
            .map(|n| enumerate_canonical_forms(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![0, 1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn outputs_are_canonical_lattices() {
        for l in enumerate_lattices(6).unwrap() {
            assert_eq!(l.bot(), 0);
            assert_eq!(l.top(), 5);
            assert_eq!(
                canonical_form(l.poset()).to_poset().unwrap().covers(),
                l.covers()
            );
        }
    }

    #[test]
    fn bound() {
        assert!(matches!(
            enumerate_lattices(11),
            Err(Error::BoundExceeded { n: 11, max: 10 })
        ));
    }
}

//! Finite lattices with materialized join and meet tables.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::ElementId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bot: ElementId,
    top: ElementId,
}

impl Lattice {
    /// Validates that every pair of elements has a least upper bound and a
    /// greatest lower bound, and materializes both tables.
    pub fn try_from_poset(poset: FinitePoset) -> Result<Lattice> {
        let n = poset.len();
        let topo = poset.linear_extension();
        let mut pos = vec![0; n];
        for (i, &a) in topo.iter().enumerate() {
            pos[a] = i;
        }

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let ub = poset.up_set(a).intersection(poset.up_set(b));
                let j = least_of(&ub, &pos, |x| poset.up_set(x)).ok_or_else(|| {
                    Error::NoUniqueJoin {
                        a,
                        b,
                        minimal_upper_bounds: extremal_of(&ub, |x, y| poset.lt(x, y)),
                    }
                })?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        for a in 0..n {
            for b in a..n {
                let lb = poset.down_set(a).intersection(poset.down_set(b));
                let m = greatest_of(&lb, &pos, |x| poset.down_set(x)).ok_or_else(|| {
                    Error::NoUniqueMeet {
                        a,
                        b,
                        maximal_lower_bounds: extremal_of(&lb, |x, y| poset.lt(y, x)),
                    }
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }

        let bot = *poset.minimal_elements().first().ok_or(Error::NoBottom)?;
        let top = *poset.maximal_elements().first().ok_or(Error::NoTop)?;
        Ok(Lattice {
            poset,
            join,
            meet,
            bot,
            top,
        })
    }

    /// Assembles a lattice from tables already known to be correct.
    pub(crate) fn from_parts_unchecked(
        poset: FinitePoset,
        join: Vec<u32>,
        meet: Vec<u32>,
    ) -> Lattice {
        let bot = poset.minimal_elements()[0];
        let top = poset.maximal_elements()[0];
        Lattice {
            poset,
            join,
            meet,
            bot,
            top,
        }
    }

    pub fn from_covers(n: usize, pairs: &[(ElementId, ElementId)]) -> Result<Lattice> {
        Lattice::try_from_poset(FinitePoset::from_covers(n, pairs)?)
    }

    pub fn chain(length: usize) -> Lattice {
        let covers: Vec<_> = (0..length).map(|i| (i, i + 1)).collect();
        Lattice::from_covers(length + 1, &covers).expect("chains are lattices")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    #[inline]
    pub fn bot(&self) -> ElementId {
        self.bot
    }

    #[inline]
    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a * self.len() + b] as ElementId
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a * self.len() + b] as ElementId
    }

    /// Join of a family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = ElementId>>(&self, it: I) -> ElementId {
        it.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = ElementId>>(&self, it: I) -> ElementId {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.lt(a, b)
    }

    #[inline]
    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        self.poset.covers()
    }

    pub fn lower_covers(&self, a: ElementId) -> &[ElementId] {
        self.poset.lower_covers(a)
    }

    pub fn upper_covers(&self, a: ElementId) -> &[ElementId] {
        self.poset.upper_covers(a)
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    /// The lattice on the same ids ordered by `>=`.
    pub fn dual(&self) -> Lattice {
        Lattice {
            poset: self.poset.dual(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bot: self.top,
            top: self.bot,
        }
    }

    /// Renames element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[ElementId]) -> Lattice {
        let n = self.len();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                join[perm[a] * n + perm[b]] = perm[self.join(a, b)] as u32;
                meet[perm[a] * n + perm[b]] = perm[self.meet(a, b)] as u32;
            }
        }
        Lattice {
            poset: self.poset.relabel(perm),
            join,
            meet,
            bot: perm[self.bot],
            top: perm[self.top],
        }
    }

    /// The interval `[lo, hi]` as a lattice of its own.
    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Result<Interval> {
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable(lo, hi));
        }
        let members = self.poset.up_set(lo).intersection(self.poset.down_set(hi));
        let elements: Vec<ElementId> = members.iter().collect();
        let mut index = vec![usize::MAX; self.len()];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let m = elements.len();
        let mut join = vec![0u32; m * m];
        let mut meet = vec![0u32; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                join[i * m + j] = index[self.join(a, b)] as u32;
                meet[i * m + j] = index[self.meet(a, b)] as u32;
            }
        }
        let poset = self.poset.induced(&elements);
        Ok(Interval {
            lo,
            hi,
            lattice: Lattice::from_parts_unchecked(poset, join, meet),
            elements,
        })
    }
}

/// A closed interval of a lattice together with the map from its local ids
/// back to the ambient lattice.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: ElementId,
    pub hi: ElementId,
    pub lattice: Lattice,
    /// Local id `i` is ambient element `elements[i]`; ascending.
    pub elements: Vec<ElementId>,
}

impl Interval {
    pub fn to_ambient(&self, local: ElementId) -> ElementId {
        self.elements[local]
    }

    pub fn to_local(&self, ambient: ElementId) -> Option<ElementId> {
        self.elements.binary_search(&ambient).ok()
    }
}

/// The element of `set` that is below every other member, if any. The first
/// member in a linear extension is minimal, so it is the only candidate.
fn least_of<'a>(
    set: &BitSet,
    pos: &[usize],
    up: impl Fn(ElementId) -> &'a BitSet,
) -> Option<ElementId> {
    let cand = set.iter().min_by_key(|&x| pos[x])?;
    set.is_subset(up(cand)).then_some(cand)
}

fn greatest_of<'a>(
    set: &BitSet,
    pos: &[usize],
    down: impl Fn(ElementId) -> &'a BitSet,
) -> Option<ElementId> {
    let cand = set.iter().max_by_key(|&x| pos[x])?;
    set.is_subset(down(cand)).then_some(cand)
}

/// Members of `set` with nothing in `set` strictly `before` them.
fn extremal_of(set: &BitSet, before: impl Fn(ElementId, ElementId) -> bool) -> Vec<ElementId> {
    let items: Vec<_> = set.iter().collect();
    items
        .iter()
        .copied()
        .filter(|&x| !items.iter().any(|&y| before(y, x)))
        .collect()
}

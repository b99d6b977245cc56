//! Finite posets given by their cover relation.

use std::collections::{BTreeSet, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ElementId;

/// A finite poset on `0..n` stored as its cover relation plus the derived
/// order, kept both as up-sets and down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    covers: Vec<(ElementId, ElementId)>,
    lower: Vec<Vec<ElementId>>,
    upper: Vec<Vec<ElementId>>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl FinitePoset {
    /// Builds a poset from a strictly reduced cover list.
    ///
    /// Pairs implied by longer paths are rejected with [`Error::NotReduced`];
    /// use [`FinitePoset::transitive_reduce`] to accept arbitrary order pairs.
    pub fn from_covers(n: usize, pairs: &[(ElementId, ElementId)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in pairs {
            check_range(a, n)?;
            check_range(b, n)?;
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicatePair(a, b));
            }
        }
        let covers: Vec<_> = seen.into_iter().collect();
        let (lower, upper) = adjacency(n, &covers);
        let topo = topological_order(n, &lower, &upper)?;
        let (up, down) = closure(n, &topo, &lower, &upper);

        for &(a, b) in &covers {
            if let Some(&c) = upper[a].iter().find(|&&c| c != b && up[c].contains(b)) {
                let mut path = vec![a];
                path.extend(shortest_path(&upper, c, b));
                return Err(Error::NotReduced { pair: (a, b), path });
            }
        }

        Ok(FinitePoset {
            n,
            covers,
            lower,
            upper,
            up,
            down,
        })
    }

    /// Builds the poset generated by arbitrary order pairs, keeping only the
    /// covers of the transitive closure. Reflexive and repeated pairs are
    /// ignored.
    pub fn transitive_reduce(n: usize, pairs: &[(ElementId, ElementId)]) -> Result<Self> {
        let mut rel = BTreeSet::new();
        for &(a, b) in pairs {
            check_range(a, n)?;
            check_range(b, n)?;
            if a != b {
                rel.insert((a, b));
            }
        }
        let rel: Vec<_> = rel.into_iter().collect();
        let (lower, upper) = adjacency(n, &rel);
        let topo = topological_order(n, &lower, &upper)?;
        let (up, down) = closure(n, &topo, &lower, &upper);
        let covers = reduce(n, &up, &down);
        Ok(Self::from_order_unchecked(n, covers, up, down))
    }

    /// Builds a poset from an order given by up-sets, assumed to be a partial
    /// order. Covers are recomputed.
    pub(crate) fn from_up_sets(up: Vec<BitSet>) -> Self {
        let n = up.len();
        let mut down = vec![BitSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        let covers = reduce(n, &up, &down);
        Self::from_order_unchecked(n, covers, up, down)
    }

    fn from_order_unchecked(
        n: usize,
        covers: Vec<(ElementId, ElementId)>,
        up: Vec<BitSet>,
        down: Vec<BitSet>,
    ) -> Self {
        let (lower, upper) = adjacency(n, &covers);
        FinitePoset {
            n,
            covers,
            lower,
            upper,
            up,
            down,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.upper[a].contains(&b)
    }

    /// Elements covered by `a`, ascending.
    pub fn lower_covers(&self, a: ElementId) -> &[ElementId] {
        &self.lower[a]
    }

    /// Elements covering `a`, ascending.
    pub fn upper_covers(&self, a: ElementId) -> &[ElementId] {
        &self.upper[a]
    }

    /// `{b : a <= b}`
    pub fn up_set(&self, a: ElementId) -> &BitSet {
        &self.up[a]
    }

    /// `{b : b <= a}`
    pub fn down_set(&self, a: ElementId) -> &BitSet {
        &self.down[a]
    }

    pub fn minimal_elements(&self) -> Vec<ElementId> {
        (0..self.n).filter(|&a| self.lower[a].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElementId> {
        (0..self.n).filter(|&a| self.upper[a].is_empty()).collect()
    }

    /// Smallest-id-first topological order of the cover digraph.
    pub fn linear_extension(&self) -> Vec<ElementId> {
        topological_order(self.n, &self.lower, &self.upper).expect("poset is acyclic")
    }

    /// Length of the longest cover path from a minimal element to each element.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0; self.n];
        for a in self.linear_extension() {
            level[a] = self.lower[a]
                .iter()
                .map(|&b| level[b] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// The opposite order on the same ids.
    pub fn dual(&self) -> FinitePoset {
        let covers: BTreeSet<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        FinitePoset::from_order_unchecked(
            self.n,
            covers.into_iter().collect(),
            self.down.clone(),
            self.up.clone(),
        )
    }

    /// Renames element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[ElementId]) -> FinitePoset {
        assert_eq!(perm.len(), self.n);
        let pairs: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        FinitePoset::from_covers(self.n, &pairs).expect("relabeling preserves validity")
    }

    /// Restriction of the order to `elements`; the i-th element of the result
    /// is `elements[i]`.
    pub fn induced(&self, elements: &[ElementId]) -> FinitePoset {
        let m = elements.len();
        let up = elements
            .iter()
            .map(|&a| {
                let mut row = BitSet::new(m);
                for (j, &b) in elements.iter().enumerate() {
                    if self.leq(a, b) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        FinitePoset::from_up_sets(up)
    }
}

fn check_range(a: ElementId, n: usize) -> Result<()> {
    if a >= n {
        Err(Error::OutOfRange { element: a, n })
    } else {
        Ok(())
    }
}

fn adjacency(
    n: usize,
    pairs: &[(ElementId, ElementId)],
) -> (Vec<Vec<ElementId>>, Vec<Vec<ElementId>>) {
    let mut lower = vec![Vec::new(); n];
    let mut upper = vec![Vec::new(); n];
    for &(a, b) in pairs {
        upper[a].push(b);
        lower[b].push(a);
    }
    for v in lower.iter_mut().chain(upper.iter_mut()) {
        v.sort_unstable();
        v.dedup();
    }
    (lower, upper)
}

fn topological_order(
    n: usize,
    lower: &[Vec<ElementId>],
    upper: &[Vec<ElementId>],
) -> Result<Vec<ElementId>> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<ElementId> = (0..n).filter(|&a| indeg[a] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = ready.pop_first() {
        order.push(a);
        for &b in &upper[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(Error::Cycle(find_cycle(&indeg, lower)))
    }
}

/// Every element left over by Kahn's algorithm has a leftover lower cover, so
/// walking downward among them must revisit a vertex.
fn find_cycle(indeg: &[usize], lower: &[Vec<ElementId>]) -> Vec<ElementId> {
    let start = indeg.iter().position(|&d| d > 0).expect("a vertex remains");
    let mut pos = vec![usize::MAX; indeg.len()];
    let mut walk = Vec::new();
    let mut v = start;
    loop {
        if pos[v] != usize::MAX {
            let mut cycle = walk[pos[v]..].to_vec();
            cycle.push(v);
            cycle.reverse();
            return cycle;
        }
        pos[v] = walk.len();
        walk.push(v);
        v = *lower[v]
            .iter()
            .find(|&&w| indeg[w] > 0)
            .expect("leftover vertex has a leftover lower cover");
    }
}

fn closure(
    n: usize,
    topo: &[ElementId],
    lower: &[Vec<ElementId>],
    upper: &[Vec<ElementId>],
) -> (Vec<BitSet>, Vec<BitSet>) {
    let mut up = vec![BitSet::new(n); n];
    for &a in topo.iter().rev() {
        let mut row = BitSet::new(n);
        row.insert(a);
        for &b in &upper[a] {
            row.union_with(&up[b]);
        }
        up[a] = row;
    }
    let mut down = vec![BitSet::new(n); n];
    for &a in topo {
        let mut row = BitSet::new(n);
        row.insert(a);
        for &b in &lower[a] {
            row.union_with(&down[b]);
        }
        down[a] = row;
    }
    (up, down)
}

fn reduce(n: usize, up: &[BitSet], down: &[BitSet]) -> Vec<(ElementId, ElementId)> {
    let mut covers = Vec::new();
    for (a, above) in up.iter().enumerate().take(n) {
        for b in above.iter() {
            if a != b && above.intersection(&down[b]).count() == 2 {
                covers.push((a, b));
            }
        }
    }
    covers
}

fn shortest_path(upper: &[Vec<ElementId>], from: ElementId, to: ElementId) -> Vec<ElementId> {
    let mut prev = vec![usize::MAX; upper.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &upper[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_from_covers() {
        let p =
            FinitePoset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.leq(0, 5));
        assert!(p.leq(1, 3));
        assert!(!p.comparable(1, 2));
        assert!(!p.comparable(3, 4));
        assert_eq!(p.minimal_elements(), vec![0]);
        assert_eq!(p.maximal_elements(), vec![5]);
    }

    #[test]
    fn single_point() {
        let p = FinitePoset::from_covers(1, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.covers().is_empty());
        assert!(p.leq(0, 0));
    }

    #[test]
    fn non_reduced_input_is_rejected() {
        match FinitePoset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]) {
            Err(Error::NotReduced { pair, path }) => {
                assert_eq!(pair, (0, 2));
                assert_eq!(path, vec![0, 1, 2]);
            }
            other => panic!("expected NotReduced, got {other:?}"),
        }
    }

    #[test]
    fn cycles_and_bad_pairs() {
        match FinitePoset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]) {
            Err(Error::Cycle(c)) => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 4);
            }
            other => panic!("expected Cycle, got {other:?}"),
        }
        assert!(matches!(
            FinitePoset::from_covers(2, &[(0, 1), (0, 1)]),
            Err(Error::DuplicatePair(0, 1))
        ));
        assert!(matches!(
            FinitePoset::from_covers(2, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            FinitePoset::from_covers(2, &[(0, 2)]),
            Err(Error::OutOfRange { element: 2, n: 2 })
        ));
    }

    #[test]
    fn transitive_reduce_examples() {
        let p = FinitePoset::transitive_reduce(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);

        let p = FinitePoset::transitive_reduce(2, &[(0, 1)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1)]);

        let all: Vec<_> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let p = FinitePoset::transitive_reduce(4, &all).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2), (2, 3)]);

        assert!(matches!(
            FinitePoset::transitive_reduce(2, &[(0, 1), (1, 0)]),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn levels_and_dual() {
        let p = FinitePoset::from_covers(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert_eq!(p.levels(), vec![0, 1, 1, 2]);
        let d = p.dual();
        assert!(d.leq(3, 0));
        assert_eq!(d.covers(), &[(1, 0), (2, 0), (3, 1), (3, 2)]);
        assert_eq!(d.dual(), p);
    }
}

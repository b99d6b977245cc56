//! The lattice of order ideals of a finite poset.

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;
use crate::ElementId;

pub const DEFAULT_IDEAL_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub lattice: Lattice,
    /// `ideals[x]` lists the poset elements of lattice element `x`, ascending.
    pub ideals: Vec<Vec<ElementId>>,
}

impl IdealLattice {
    /// Lattice element whose ideal is exactly `members`.
    pub fn element_of(&self, members: &[ElementId]) -> Option<ElementId> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.ideals.iter().position(|i| *i == key)
    }
}

/// Down-closed subsets of `p` ordered by inclusion. Elements are numbered by
/// (size, sorted member list), so the empty ideal is the bottom.
pub fn ideal_lattice(p: &FinitePoset, cap: usize) -> Result<IdealLattice> {
    let m = p.len();
    let empty = BitSet::new(m);
    let mut seen: HashSet<BitSet> = HashSet::from([empty.clone()]);
    let mut frontier = vec![empty];
    while let Some(ideal) = frontier.pop() {
        for x in 0..m {
            if ideal.contains(x) || !p.lower_covers(x).iter().all(|&y| ideal.contains(y)) {
                continue;
            }
            let mut next = ideal.clone();
            next.insert(x);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                frontier.push(next);
            }
        }
    }

    let mut ideals: Vec<(Vec<ElementId>, BitSet)> =
        seen.into_iter().map(|s| (s.iter().collect(), s)).collect();
    ideals.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&BitSet, usize> = ideals
        .iter()
        .enumerate()
        .map(|(i, (_, s))| (s, i))
        .collect();

    let n = ideals.len();
    let mut covers = Vec::new();
    for (i, (_, set)) in ideals.iter().enumerate() {
        for x in 0..m {
            if set.contains(x) || !p.lower_covers(x).iter().all(|&y| set.contains(y)) {
                continue;
            }
            let mut next = set.clone();
            next.insert(x);
            covers.push((i, index[&next]));
        }
    }
    let poset = FinitePoset::from_covers(n, &covers)?;

    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for (i, (_, a)) in ideals.iter().enumerate() {
        for (j, (_, b)) in ideals.iter().enumerate().skip(i) {
            let mut u = a.clone();
            u.union_with(b);
            let v = a.intersection(b);
            let (u, v) = (index[&u] as u32, index[&v] as u32);
            join[i * n + j] = u;
            join[j * n + i] = u;
            meet[i * n + j] = v;
            meet[j * n + i] = v;
        }
    }
    let lattice = Lattice::from_parts_unchecked(poset, join, meet);
    Ok(IdealLattice {
        lattice,
        ideals: ideals.into_iter().map(|(m, _)| m).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_one_poset_gives_ten_ideals() {
        let il = ideal_lattice(&fixtures::fig1a_poset(), DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(il.lattice.len(), 10);
        assert_eq!(il.ideals[il.lattice.bot()], Vec::<usize>::new());
        assert_eq!(il.ideals[il.lattice.top()], vec![0, 1, 2, 3]);
        // tables agree with a fresh validation of the order
        let checked = Lattice::try_from_poset(il.lattice.poset().clone()).unwrap();
        assert_eq!(checked, il.lattice);
    }

    #[test]
    fn antichain_gives_boolean_lattice() {
        for k in 0..6 {
            let p = FinitePoset::from_covers(k, &[]).unwrap();
            let il = ideal_lattice(&p, DEFAULT_IDEAL_CAP).unwrap();
            assert_eq!(il.lattice.len(), 1 << k);
        }
    }

    #[test]
    fn chain_gives_longer_chain() {
        let p = FinitePoset::from_covers(3, &[(0, 1), (1, 2)]).unwrap();
        let il = ideal_lattice(&p, DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(il.lattice.len(), 4);
        assert_eq!(il.lattice.covers(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn cap_is_enforced() {
        let p = FinitePoset::from_covers(5, &[]).unwrap();
        assert!(matches!(
            ideal_lattice(&p, 31),
            Err(Error::CapExceeded { cap: 31 })
        ));
        assert_eq!(ideal_lattice(&p, 32).unwrap().lattice.len(), 32);
    }
}

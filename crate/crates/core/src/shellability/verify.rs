use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{is_increasing, label_vector, EdgeLabeling};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ElementId;

/// How the unique increasing chain must compare with the other chains of an
/// interval: `Weak` asks for `<=`, `Strict` for `<`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LexMode {
    #[default]
    Weak,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ElVerdict {
    IsEl,
    NotEl(ElFailure),
}

impl ElVerdict {
    pub fn is_el(&self) -> bool {
        matches!(self, ElVerdict::IsEl)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElFailure {
    pub interval: (ElementId, ElementId),
    pub reason: ElReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ElReason {
    NoIncreasingChain {
        chains: Vec<Vec<ElementId>>,
    },
    MultipleIncreasingChains {
        chains: Vec<Vec<ElementId>>,
    },
    IncreasingNotLexMin {
        increasing: Vec<ElementId>,
        smaller: Vec<ElementId>,
    },
}

impl ElFailure {
    /// Re-evaluates the recorded chains under `labeling` and confirms the
    /// stated reason.
    pub fn reverify(&self, l: &Lattice, labeling: &EdgeLabeling, mode: LexMode) -> bool {
        let (a, b) = self.interval;
        let vec = |c: &[ElementId]| label_vector(labeling, c).ok();
        let spans = |c: &[ElementId]| {
            c.first() == Some(&a)
                && c.last() == Some(&b)
                && c.windows(2).all(|w| l.is_cover(w[0], w[1]))
        };
        match &self.reason {
            ElReason::NoIncreasingChain { chains } => {
                let all = interval_chains(l, a, b);
                *chains == all
                    && chains
                        .iter()
                        .all(|c| vec(c).is_some_and(|v| !is_increasing(&v)))
            }
            ElReason::MultipleIncreasingChains { chains } => {
                chains.len() >= 2
                    && chains
                        .iter()
                        .all(|c| spans(c) && vec(c).is_some_and(|v| is_increasing(&v)))
            }
            ElReason::IncreasingNotLexMin {
                increasing,
                smaller,
            } => {
                let (Some(vi), Some(vs)) = (vec(increasing), vec(smaller)) else {
                    return false;
                };
                spans(increasing)
                    && spans(smaller)
                    && increasing != smaller
                    && is_increasing(&vi)
                    && match mode {
                        LexMode::Weak => vs < vi,
                        LexMode::Strict => vs <= vi,
                    }
            }
        }
    }
}

/// All maximal chains of `[a, b]` as element sequences, lexicographically
/// ordered.
pub fn interval_chains(l: &Lattice, a: ElementId, b: ElementId) -> Vec<Vec<ElementId>> {
    let mut memo = HashMap::new();
    chains_memo(l, a, b, &mut memo)
}

fn chains_memo(
    l: &Lattice,
    a: ElementId,
    b: ElementId,
    memo: &mut HashMap<(ElementId, ElementId), Vec<Vec<ElementId>>>,
) -> Vec<Vec<ElementId>> {
    if let Some(c) = memo.get(&(a, b)) {
        return c.clone();
    }
    let chains = if a == b {
        vec![vec![a]]
    } else {
        let mut out = Vec::new();
        for &c in l.upper_covers(a) {
            if l.leq(c, b) {
                for tail in chains_memo(l, c, b, memo) {
                    let mut chain = Vec::with_capacity(tail.len() + 1);
                    chain.push(a);
                    chain.extend(tail);
                    out.push(chain);
                }
            }
        }
        out
    };
    memo.insert((a, b), chains.clone());
    chains
}

/// Checks that every interval `[a, b]` with `a < b` has exactly one strictly
/// increasing maximal chain, and that its label vector is lexicographically
/// least among the interval's chains. Intervals are visited smallest first.
pub fn is_el_labeling(l: &Lattice, labeling: &EdgeLabeling, mode: LexMode) -> Result<ElVerdict> {
    if let Some((a, b)) = labeling.missing_cover(l) {
        return Err(Error::PartialLabeling(a, b));
    }
    let mut intervals: Vec<(usize, ElementId, ElementId)> = Vec::new();
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

    let mut memo = HashMap::new();
    for (_, a, b) in intervals {
        let chains = chains_memo(l, a, b, &mut memo);
        if let Some(reason) = check_interval(labeling, &chains, mode)? {
            return Ok(ElVerdict::NotEl(ElFailure {
                interval: (a, b),
                reason,
            }));
        }
    }
    Ok(ElVerdict::IsEl)
}

fn check_interval(
    labeling: &EdgeLabeling,
    chains: &[Vec<ElementId>],
    mode: LexMode,
) -> Result<Option<ElReason>> {
    let vectors = chains
        .iter()
        .map(|c| label_vector(labeling, c))
        .collect::<Result<Vec<_>>>()?;
    let increasing: Vec<usize> = (0..chains.len())
        .filter(|&i| is_increasing(&vectors[i]))
        .collect();
    match increasing.as_slice() {
        [] => Ok(Some(ElReason::NoIncreasingChain {
            chains: chains.to_vec(),
        })),
        &[i] => {
            let beaten = (0..chains.len()).find(|&k| {
                k != i
                    && match mode {
                        LexMode::Weak => vectors[k] < vectors[i],
                        LexMode::Strict => vectors[k] <= vectors[i],
                    }
            });
            Ok(beaten.map(|k| ElReason::IncreasingNotLexMin {
                increasing: chains[i].clone(),
                smaller: chains[k].clone(),
            }))
        }
        many => Ok(Some(ElReason::MultipleIncreasingChains {
            chains: many.iter().map(|&i| chains[i].clone()).collect(),
        })),
    }
}

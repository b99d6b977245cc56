//! Irreducible elements, maximal chains, perspectivity and the sets `K(j)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ElementId;

/// A join-irreducible element together with its unique lower cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JoinIrreducible {
    pub j: ElementId,
    pub j_star: ElementId,
}

impl JoinIrreducible {
    pub fn is_atom(&self, l: &Lattice) -> bool {
        self.j_star == l.bot()
    }

    pub fn cover(&self) -> (ElementId, ElementId) {
        (self.j_star, self.j)
    }
}

/// A meet-irreducible element together with its unique upper cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MeetIrreducible {
    pub m: ElementId,
    pub m_star: ElementId,
}

pub fn join_irreducibles(l: &Lattice) -> Vec<JoinIrreducible> {
    l.elements()
        .filter_map(|j| match l.lower_covers(j) {
            &[j_star] => Some(JoinIrreducible { j, j_star }),
            _ => None,
        })
        .collect()
}

pub fn is_join_irreducible(l: &Lattice, j: ElementId) -> bool {
    l.lower_covers(j).len() == 1
}

pub fn meet_irreducibles(l: &Lattice) -> Vec<MeetIrreducible> {
    join_irreducibles(&l.dual())
        .into_iter()
        .map(|ji| MeetIrreducible {
            m: ji.j,
            m_star: ji.j_star,
        })
        .collect()
}

/// `c_0 < c_1 < ... < c_k` from bottom to top, consecutive elements forming
/// covers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct MaximalChain(Vec<ElementId>);

impl MaximalChain {
    pub fn new(l: &Lattice, elements: Vec<ElementId>) -> Result<MaximalChain> {
        let ok = elements.first() == Some(&l.bot())
            && elements.last() == Some(&l.top())
            && elements.iter().all(|&e| e < l.len())
            && elements.windows(2).all(|w| l.is_cover(w[0], w[1]));
        if ok {
            Ok(MaximalChain(elements))
        } else {
            Err(Error::NotAMaximalChain(elements))
        }
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.0
    }

    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn covers(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Maximum length of a maximal chain.
pub fn length(l: &Lattice) -> usize {
    l.poset().levels()[l.top()]
}

/// Every maximal chain, in lexicographic order of element-id sequences.
pub fn maximal_chains(l: &Lattice) -> MaximalChains<'_> {
    MaximalChains {
        lattice: l,
        path: vec![l.bot()],
        next: vec![0],
        done: false,
    }
}

pub struct MaximalChains<'a> {
    lattice: &'a Lattice,
    path: Vec<ElementId>,
    // index of the next upper cover to try at each depth
    next: Vec<usize>,
    done: bool,
}

impl Iterator for MaximalChains<'_> {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        if self.done {
            return None;
        }
        loop {
            let v = *self.path.last()?;
            if v == self.lattice.top() {
                let chain = MaximalChain(self.path.clone());
                self.path.pop();
                self.next.pop();
                if self.path.is_empty() {
                    self.done = true;
                }
                return Some(chain);
            }
            let i = *self.next.last().unwrap();
            match self.lattice.upper_covers(v).get(i) {
                Some(&w) => {
                    *self.next.last_mut().unwrap() += 1;
                    self.path.push(w);
                    self.next.push(0);
                }
                None => {
                    self.path.pop();
                    self.next.pop();
                    if self.path.is_empty() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Least index `s >= 1` with `j <= c_s`.
pub fn gamma(l: &Lattice, chain: &MaximalChain, j: ElementId) -> Result<usize> {
    if j >= l.len() || !is_join_irreducible(l, j) {
        return Err(Error::NotJoinIrreducible(j));
    }
    Ok(chain
        .elements()
        .iter()
        .position(|&c| l.leq(j, c))
        .expect("top is above every element"))
}

/// `gamma` for every join-irreducible, in ascending order of the element.
pub fn gamma_map(l: &Lattice, chain: &MaximalChain) -> Vec<(ElementId, usize)> {
    join_irreducibles(l)
        .into_iter()
        .map(|ji| (ji.j, gamma(l, chain, ji.j).expect("join-irreducible")))
        .collect()
}

fn check_cover(l: &Lattice, (a, b): (ElementId, ElementId)) -> Result<()> {
    if a < l.len() && b < l.len() && l.is_cover(a, b) {
        Ok(())
    } else {
        Err(Error::NotACover(a, b))
    }
}

/// Whether two covers are perspective: `b1 ∨ a2 = b2` and `b1 ∧ a2 = a1`, or
/// `a1 ∨ b2 = b1` and `a1 ∧ b2 = a2`.
pub fn is_perspective(
    l: &Lattice,
    (a1, b1): (ElementId, ElementId),
    (a2, b2): (ElementId, ElementId),
) -> Result<bool> {
    check_cover(l, (a1, b1))?;
    check_cover(l, (a2, b2))?;
    Ok(perspective_unchecked(l, (a1, b1), (a2, b2)))
}

fn perspective_unchecked(
    l: &Lattice,
    (a1, b1): (ElementId, ElementId),
    (a2, b2): (ElementId, ElementId),
) -> bool {
    (l.join(b1, a2) == b2 && l.meet(b1, a2) == a1) || (l.join(a1, b2) == b1 && l.meet(a1, b2) == a2)
}

/// All join-irreducibles `j` with `(a, b)` perspective to `(j_*, j)`.
pub fn perspective_irreducibles(
    l: &Lattice,
    cover: (ElementId, ElementId),
) -> Result<Vec<JoinIrreducible>> {
    check_cover(l, cover)?;
    Ok(join_irreducibles(l)
        .into_iter()
        .filter(|ji| perspective_unchecked(l, cover, ji.cover()))
        .collect())
}

/// First join-irreducible (by id) perspective to the cover, by scanning.
pub fn perspectivity_witness_scan(
    l: &Lattice,
    cover: (ElementId, ElementId),
) -> Result<JoinIrreducible> {
    perspective_irreducibles(l, cover)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::WitnessNotFound {
            cover,
            diagnostics: format!(
                "no join-irreducible among {:?} is perspective",
                join_irreducibles(l)
            ),
        })
}

/// Witness built by descending into intervals below the cover.
///
/// For a cover `(a, b)` with `b` not the top, the search moves to `[0, b]`.
/// At the top, either the top is join-irreducible (and is the witness) or
/// some other coatom `c` exists; then with `z = a ∧ c` any `d` with
/// `z ⋖ d <= c` and `d ≰ a` gives a cover `(z, d)` whose witness in `[0, d]`
/// also witnesses `(a, b)`. Choices take the smallest qualifying id.
pub fn perspectivity_witness_recursive(
    l: &Lattice,
    cover: (ElementId, ElementId),
) -> Result<JoinIrreducible> {
    check_cover(l, cover)?;
    let j = descend(l, cover, &mut Vec::new())?;
    let ji = JoinIrreducible {
        j,
        j_star: l.lower_covers(j)[0],
    };
    if perspective_unchecked(l, cover, ji.cover()) {
        Ok(ji)
    } else {
        Err(Error::WitnessNotFound {
            cover,
            diagnostics: format!("descent produced {ji:?}, which is not perspective"),
        })
    }
}

fn descend(
    l: &Lattice,
    (a, b): (ElementId, ElementId),
    trace: &mut Vec<String>,
) -> Result<ElementId> {
    let not_found = |trace: &Vec<String>, why: &str| Error::WitnessNotFound {
        cover: (a, b),
        diagnostics: format!("{why}; trace: {}", trace.join(" -> ")),
    };

    if b != l.top() {
        trace.push(format!("[0,{b}]"));
        let iv = l.interval(l.bot(), b)?;
        let local = (iv.to_local(a).unwrap(), iv.lattice.top());
        return descend(&iv.lattice, local, trace).map(|j| iv.to_ambient(j));
    }
    let coatoms = l.lower_covers(l.top());
    if coatoms.len() == 1 {
        return Ok(l.top());
    }
    let c = *coatoms
        .iter()
        .find(|&&c| c != a)
        .ok_or_else(|| not_found(trace, "no second coatom"))?;
    let z = l.meet(a, c);
    let d = *l
        .upper_covers(z)
        .iter()
        .find(|&&d| l.leq(d, c) && !l.leq(d, a))
        .ok_or_else(|| not_found(trace, "no d with z ⋖ d <= c, d ≰ a"))?;
    trace.push(format!("c={c} z={z} d={d}"));
    let iv = l.interval(l.bot(), d)?;
    let local = (iv.to_local(z).unwrap(), iv.lattice.top());
    descend(&iv.lattice, local, trace).map(|j| iv.to_ambient(j))
}

/// `K(j) = {a : j_* <= a, j ≰ a}` with its maximal elements and, when there
/// is exactly one, `kappa`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaData {
    pub j: JoinIrreducible,
    pub k: Vec<ElementId>,
    pub maximals: Vec<ElementId>,
    pub kappa: Option<ElementId>,
}

pub fn kappa_data(l: &Lattice, j: ElementId) -> Result<KappaData> {
    if j >= l.len() || !is_join_irreducible(l, j) {
        return Err(Error::NotJoinIrreducible(j));
    }
    let j_star = l.lower_covers(j)[0];
    let k: Vec<ElementId> = l
        .elements()
        .filter(|&a| l.leq(j_star, a) && !l.leq(j, a))
        .collect();
    let maximals: Vec<ElementId> = k
        .iter()
        .copied()
        .filter(|&a| !k.iter().any(|&b| l.lt(a, b)))
        .collect();
    let kappa = match maximals.as_slice() {
        &[m] => Some(m),
        _ => None,
    };
    Ok(KappaData {
        j: JoinIrreducible { j, j_star },
        k,
        maximals,
        kappa,
    })
}

/// `⋁K(j)` when that join is itself a member of `K(j)`.
pub fn kappa_by_join(l: &Lattice, data: &KappaData) -> Option<ElementId> {
    let join = l.join_all(data.k.iter().copied());
    data.k.contains(&join).then_some(join)
}

/// Irredundant sets of join-irreducibles whose join is `x`, each sorted, in
/// ascending bitmask order over the join-irreducibles below `x`.
pub fn irredundant_join_reps(l: &Lattice, x: ElementId) -> Vec<Vec<ElementId>> {
    let below: Vec<ElementId> = join_irreducibles(l)
        .into_iter()
        .map(|ji| ji.j)
        .filter(|&j| l.leq(j, x))
        .collect();
    assert!(
        below.len() < 32,
        "too many join-irreducibles below {x} for subset search"
    );
    let mut reps = Vec::new();
    for mask in 0u32..(1 << below.len()) {
        let set: Vec<ElementId> = (0..below.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| below[i])
            .collect();
        if l.join_all(set.iter().copied()) != x {
            continue;
        }
        let irredundant = (0..set.len()).all(|skip| {
            l.join_all(
                set.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &e)| e),
            ) != x
        });
        if irredundant {
            reps.push(set);
        }
    }
    reps
}

/// `u` join-refines `v`: every member of `u` lies below some member of `v`.
pub fn join_refines(l: &Lattice, u: &[ElementId], v: &[ElementId]) -> bool {
    u.iter().all(|&a| v.iter().any(|&b| l.leq(a, b)))
}

/// The irredundant join representation of `x` that join-refines every other
/// one, or `None` when no such representation exists.
pub fn canonical_join_rep(l: &Lattice, x: ElementId) -> Option<Vec<ElementId>> {
    let reps = irredundant_join_reps(l, x);
    reps.iter()
        .find(|u| reps.iter().all(|v| join_refines(l, u, v)))
        .cloned()
}

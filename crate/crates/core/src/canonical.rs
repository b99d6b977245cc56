//! Canonical forms of finite posets for isomorphism rejection.
//!
//! Vertices are first colored by (level, lower-cover count, upper-cover count)
//! and the coloring is refined until every vertex in a cell sees the same
//! multiset of neighbouring colors. The search then individualizes vertices
//! of the first non-singleton cell, refines again, and keeps the
//! lexicographically least cover-matrix encoding over all discrete leaves.
//! Exchangeable twins (same lower and upper covers) are only branched on once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::ElementId;

/// Byte string that identifies the isomorphism class of a poset: two bytes of
/// big-endian size followed by the row-major cover matrix in canonical order,
/// packed most significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> usize {
        u16::from_be_bytes([self.0[0], self.0[1]]) as usize
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<CanonicalForm> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse {
            line: 0,
            message: format!("bad canonical form: {e}"),
        })?;
        if bytes.len() < 2 {
            return Err(Error::Parse {
                line: 0,
                message: "canonical form too short".into(),
            });
        }
        let n = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
        if bytes.len() != 2 + (n * n).div_ceil(8) {
            return Err(Error::Parse {
                line: 0,
                message: format!("canonical form length does not match size {n}"),
            });
        }
        Ok(CanonicalForm(bytes))
    }

    /// The poset in canonical labeling.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let n = self.size();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let bit = a * n + b;
                if self.0[2 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    covers.push((a, b));
                }
            }
        }
        FinitePoset::from_covers(n, &covers)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl From<CanonicalForm> for String {
    fn from(c: CanonicalForm) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for CanonicalForm {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        CanonicalForm::from_hex(&s)
    }
}

pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    canonize(p).0
}

/// Permutation `perm` with `perm[old] = new` mapping `p` onto its canonical
/// labeling.
pub fn canonical_labeling(p: &FinitePoset) -> Vec<ElementId> {
    canonize(p).1
}

pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    p.len() == q.len()
        && p.covers().len() == q.covers().len()
        && canonical_form(p) == canonical_form(q)
}

pub fn canonize(p: &FinitePoset) -> (CanonicalForm, Vec<ElementId>) {
    let n = p.len();
    let levels = p.levels();
    let keys: Vec<_> = (0..n)
        .map(|v| (levels[v], p.lower_covers(v).len(), p.upper_covers(v).len()))
        .collect();
    let mut colors = positions(&keys);
    refine(p, &mut colors);

    let twin: Vec<usize> = (0..n)
        .map(|v| {
            (0..=v)
                .find(|&w| {
                    p.lower_covers(w) == p.lower_covers(v) && p.upper_covers(w) == p.upper_covers(v)
                })
                .unwrap()
        })
        .collect();

    let mut best: Option<(Vec<u8>, Vec<ElementId>)> = None;
    search(p, &twin, colors, &mut best);
    let (bytes, perm) = best.expect("search visits at least one leaf");
    (CanonicalForm(bytes), perm)
}

fn search(
    p: &FinitePoset,
    twin: &[usize],
    colors: Vec<usize>,
    best: &mut Option<(Vec<u8>, Vec<ElementId>)>,
) {
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| size[c] > 1) else {
        let code = encode(p, &colors);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colors));
        }
        return;
    };

    let mut tried: Vec<usize> = Vec::new();
    for v in (0..n).filter(|&v| colors[v] == target) {
        if tried.contains(&twin[v]) {
            continue;
        }
        tried.push(twin[v]);
        let keys: Vec<_> = (0..n).map(|u| (colors[u], u != v)).collect();
        let mut next = positions(&keys);
        refine(p, &mut next);
        search(p, twin, next, best);
    }
}

/// Splits cells by the multisets of colors among lower and upper covers until
/// nothing splits.
fn refine(p: &FinitePoset, colors: &mut Vec<usize>) {
    let n = colors.len();
    let mut cells = distinct(colors);
    loop {
        let keys: Vec<_> = (0..n)
            .map(|v| {
                let mut lo: Vec<usize> = p.lower_covers(v).iter().map(|&u| colors[u]).collect();
                let mut hi: Vec<usize> = p.upper_covers(v).iter().map(|&u| colors[u]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                (colors[v], lo, hi)
            })
            .collect();
        let next = positions(&keys);
        let count = distinct(&next);
        *colors = next;
        if count == cells {
            return;
        }
        cells = count;
    }
}

/// Color of each vertex is the number of vertices with a strictly smaller key,
/// so a discrete coloring is a permutation.
fn positions<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut colors = vec![0; keys.len()];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = if i > 0 && keys[order[i - 1]] == keys[v] {
            colors[order[i - 1]]
        } else {
            i
        };
    }
    colors
}

fn distinct(colors: &[usize]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors
        .iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c], true))
        .count()
}

fn encode(p: &FinitePoset, perm: &[ElementId]) -> Vec<u8> {
    let n = p.len();
    let mut bytes = vec![0u8; 2 + (n * n).div_ceil(8)];
    bytes[..2].copy_from_slice(&(n as u16).to_be_bytes());
    for &(a, b) in p.covers() {
        let bit = perm[a] * n + perm[b];
        bytes[2 + bit / 8] |= 0x80 >> (bit % 8);
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relabeled_hexagon_has_same_form() {
        let h = fixtures::hexagon();
        let relabeled = h.poset().relabel(&[3, 0, 5, 1, 4, 2]);
        assert_eq!(canonical_form(h.poset()), canonical_form(&relabeled));
        assert!(is_isomorphic(h.poset(), &relabeled));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert!(!is_isomorphic(
            fixtures::m3().poset(),
            fixtures::hexagon().poset()
        ));
    }

    #[test]
    fn canonical_order_puts_bottom_first() {
        let l = fixtures::fig5c();
        let perm = canonical_labeling(l.poset());
        assert_eq!(perm[l.bot()], 0);
        assert_eq!(perm[l.top()], l.len() - 1);
    }

    #[test]
    fn decode_round_trip() {
        let p = fixtures::fig6b();
        let c = canonical_form(p.poset());
        let q = c.to_poset().unwrap();
        assert_eq!(canonical_form(&q), c);
        assert_eq!(CanonicalForm::from_hex(&c.to_hex()).unwrap(), c);
        assert!(CanonicalForm::from_hex("00").is_err());
        assert!(CanonicalForm::from_hex("0003ff").is_err());
    }

    #[test]
    fn twins_do_not_blow_up() {
        // M_10: bottom, ten atoms, top
        let mut covers = Vec::new();
        for a in 1..=10 {
            covers.push((0, a));
            covers.push((a, 11));
        }
        let p = FinitePoset::from_covers(12, &covers).unwrap();
        let q = p.relabel(&[11, 3, 5, 7, 9, 0, 1, 2, 4, 6, 8, 10]);
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }
}

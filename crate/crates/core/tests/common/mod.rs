//! Slow reference implementations that only use the order relation.
#![allow(dead_code)]

use std::collections::BTreeSet;

use latticelab::{FinitePoset, Lattice};

/// Reflexive order relation as a boolean matrix.
pub fn order_matrix(p: &FinitePoset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut m: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
    // transitive closure of the covers
    for &(a, b) in p.covers() {
        m[a][b] = true;
    }
    for k in 0..n {
        let via = m[k].clone();
        for row in m.iter_mut().filter(|r| r[k]) {
            for (x, &y) in row.iter_mut().zip(&via) {
                *x |= y;
            }
        }
    }
    m
}

/// Least upper bound by scanning all elements.
pub fn join(le: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = le.len();
    let ubs: Vec<usize> = (0..n).filter(|&u| le[a][u] && le[b][u]).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| le[u][v]))
}

pub fn meet(le: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = le.len();
    let lbs: Vec<usize> = (0..n).filter(|&u| le[u][a] && le[u][b]).collect();
    lbs.iter().copied().find(|&u| lbs.iter().all(|&v| le[v][u]))
}

pub fn is_lattice(le: &[Vec<bool>]) -> bool {
    let n = le.len();
    n > 0 && (0..n).all(|a| (0..n).all(|b| join(le, a, b).is_some() && meet(le, a, b).is_some()))
}

/// Elements whose strict down-set has a greatest element.
pub fn join_irreducible_count(le: &[Vec<bool>]) -> usize {
    let n = le.len();
    (0..n)
        .filter(|&x| {
            let below: Vec<usize> = (0..n).filter(|&y| y != x && le[y][x]).collect();
            below.iter().any(|&m| below.iter().all(|&y| le[y][m]))
        })
        .count()
}

pub fn meet_irreducible_count(le: &[Vec<bool>]) -> usize {
    let n = le.len();
    let t: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| le[b][a]).collect()).collect();
    join_irreducible_count(&t)
}

/// Number of elements in a longest chain, minus one.
pub fn length(le: &[Vec<bool>]) -> usize {
    let n = le.len();
    let mut best = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| le[y][x]).count());
    for &x in &order {
        for &y in &order {
            if y != x && le[y][x] {
                best[x] = best[x].max(best[y] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap(n, &mut perm, &mut out);
    out
}

fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, perm, out);
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Lexicographically least order matrix over all relabelings.
pub fn brute_canonical(le: &[Vec<bool>]) -> Vec<bool> {
    let n = le.len();
    let mut best: Option<Vec<bool>> = None;
    for perm in permutations(n) {
        // perm[old] = new
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[perm[a] * n + perm[b]] = le[a][b];
            }
        }
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    }
    best.unwrap_or_default()
}

pub fn brute_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    p.len() == q.len() && brute_canonical(&order_matrix(p)) == brute_canonical(&order_matrix(q))
}

/// Every `n`-element lattice with bottom 0 and top `n - 1` whose covers go
/// from smaller to larger ids, one per isomorphism class.
pub fn naive_lattices(n: usize) -> Vec<FinitePoset> {
    if n == 1 {
        return vec![FinitePoset::from_covers(1, &[]).unwrap()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let covers: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let Ok(p) = FinitePoset::from_covers(n, &covers) else {
            continue;
        };
        let le = order_matrix(&p);
        if !(0..n).all(|x| le[0][x] && le[x][n - 1]) || !is_lattice(&le) {
            continue;
        }
        if seen.insert(brute_canonical(&le)) {
            out.push(p);
        }
    }
    out
}

pub fn lattice(p: FinitePoset) -> Lattice {
    Lattice::try_from_poset(p).unwrap()
}

//! k-criticality verification along three independent routes: the Hall-style
//! deficiency scan over V-subsets, the exhaustive deletion oracle, and the
//! balanced-augmentation route via strong connectivity of the
//! matching-contracted digraph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::construct::tilde;
use crate::error::Error;
use crate::graph::{BipartiteGraph, Matching};

const NIL: usize = usize::MAX;

/// Default cap on C(n, k) for the deletion oracle.
pub const DEFAULT_DELETION_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Deficiency,
    Deletion,
    Tilde,
}

/// Certificate of non-k-criticality: a nonempty B ⊆ V with
/// |N(B)| < |B| + k in the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallWitness {
    pub b: Vec<usize>,
    pub neighborhood_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub is_k_critical: bool,
    pub witness: Option<HallWitness>,
    pub method: Method,
}

/// Maximum-cardinality matching, Hopcroft-Karp.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let (n, m) = (g.n(), g.m());
    let mut mate_u = vec![NIL; n];
    let mut mate_v = vec![NIL; m];
    let mut dist = vec![NIL; n];
    let mut queue = VecDeque::new();
    loop {
        queue.clear();
        for u in 0..n {
            if mate_u[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut reachable_free_v = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors_u(u) {
                let w = mate_v[v];
                if w == NIL {
                    reachable_free_v = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free_v {
            break;
        }
        for u in 0..n {
            if mate_u[u] == NIL {
                hk_augment(g, u, &mut mate_u, &mut mate_v, &mut dist);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = mate_u
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != NIL)
        .map(|(u, &v)| (u, v))
        .collect();
    Matching::from_pairs_unchecked(pairs)
}

fn hk_augment(
    g: &BipartiteGraph,
    u: usize,
    mate_u: &mut [usize],
    mate_v: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in g.neighbors_u(u) {
        let w = mate_v[v];
        if w == NIL || (dist[w] == dist[u] + 1 && hk_augment(g, w, mate_u, mate_v, dist)) {
            mate_u[u] = v;
            mate_v[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}

/// True when some matching saturates all of V.
pub fn has_complete_matching(g: &BipartiteGraph) -> bool {
    max_matching(g).covers_v(g.m())
}

/// Deficiency test: G is k-critical iff |N(B)| >= |B| + k for every
/// nonempty B ⊆ V, with k = n - m. On failure the witness is an
/// inclusion-minimal violating set (in fact one of minimum size, first in
/// lexicographic order).
///
/// Exponential in m; U-side neighborhoods are tracked as 128-bit masks, so
/// n is capped at 128.
pub fn is_k_critical_deficiency(g: &BipartiteGraph) -> Result<Verdict, Error> {
    if g.n() < g.m() {
        return Err(Error::ShapeError(format!(
            "verification needs n >= m, got ({}, {})",
            g.n(),
            g.m()
        )));
    }
    if g.n() > 128 {
        return Err(Error::TooLarge(format!(
            "deficiency scan handles n <= 128, got n = {}",
            g.n()
        )));
    }
    let k = g.n() - g.m();
    let masks: Vec<u128> = (0..g.m())
        .map(|j| {
            g.neighbors_v(j)
                .iter()
                .fold(0u128, |acc, &i| acc | (1u128 << i))
        })
        .collect();
    let mut chosen = Vec::new();
    if !scan_violation(&masks, k, 0, &mut chosen, 0) {
        return Ok(Verdict {
            is_k_critical: true,
            witness: None,
            method: Method::Deficiency,
        });
    }
    let b = minimal_violation(&masks, k, chosen.len());
    let neighborhood_size = union_size(&masks, &b);
    debug_assert!(neighborhood_size < b.len() + k);
    Ok(Verdict {
        is_k_critical: false,
        witness: Some(HallWitness {
            b,
            neighborhood_size,
        }),
        method: Method::Deficiency,
    })
}

fn union_size(masks: &[u128], b: &[usize]) -> usize {
    b.iter()
        .fold(0u128, |acc, &j| acc | masks[j])
        .count_ones() as usize
}

/// Depth-first include/exclude scan for any violating subset. The union of
/// chosen masks only grows down an include chain, so a branch dies once even
/// the largest remaining subset cannot dip under |B| + k.
fn scan_violation(
    masks: &[u128],
    k: usize,
    idx: usize,
    chosen: &mut Vec<usize>,
    union: u128,
) -> bool {
    if idx == masks.len() {
        return false;
    }
    let remaining = masks.len() - idx;
    if union.count_ones() as usize >= chosen.len() + remaining + k {
        return false;
    }
    let with = union | masks[idx];
    chosen.push(idx);
    if (with.count_ones() as usize) < chosen.len() + k {
        return true;
    }
    if scan_violation(masks, k, idx + 1, chosen, with) {
        return true;
    }
    chosen.pop();
    scan_violation(masks, k, idx + 1, chosen, union)
}

/// First violating subset in size-ascending, then lexicographic order.
/// `cap` is the size of some known violation.
fn minimal_violation(masks: &[u128], k: usize, cap: usize) -> Vec<usize> {
    for size in 1..=cap {
        let mut chosen = Vec::with_capacity(size);
        if pick_violation(masks, k, size, 0, &mut chosen, 0) {
            return chosen;
        }
    }
    unreachable!("a violation of size <= cap exists");
}

fn pick_violation(
    masks: &[u128],
    k: usize,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    union: u128,
) -> bool {
    if chosen.len() == size {
        return (union.count_ones() as usize) < size + k;
    }
    let need = size - chosen.len();
    for v in start..=(masks.len() - need) {
        chosen.push(v);
        if pick_violation(masks, k, size, v + 1, chosen, union | masks[v]) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = match c.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    c
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Ground-truth oracle: deletes every k-subset of U and checks that a
/// complete matching of V survives. Cost is C(n, k) matching runs; refused
/// when that exceeds the budget.
pub fn is_k_critical_deletion(g: &BipartiteGraph, budget: u64) -> Result<Verdict, Error> {
    if g.n() < g.m() {
        return Err(Error::ShapeError(format!(
            "verification needs n >= m, got ({}, {})",
            g.n(),
            g.m()
        )));
    }
    let k = g.n() - g.m();
    let needed = binomial(g.n(), k);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    let mut deleted: Vec<usize> = (0..k).collect();
    loop {
        let keep: Vec<usize> = (0..g.n())
            .filter(|i| deleted.binary_search(i).is_err())
            .collect();
        let h = g.induced_u(&keep).expect("complement indices in range");
        if !has_complete_matching(&h) {
            // A Hall violator of the damaged graph is one of the host too:
            // deleting k vertices inflates |N(B)| by at most k.
            let b0 = hall_violator(&h).expect("uncovered V side has a violator");
            let b = shrink_witness(g, k, b0);
            let neighborhood_size = g.neighborhood_v(&b).expect("witness in range").len();
            debug_assert!(neighborhood_size < b.len() + k);
            return Ok(Verdict {
                is_k_critical: false,
                witness: Some(HallWitness {
                    b,
                    neighborhood_size,
                }),
                method: Method::Deletion,
            });
        }
        if !next_combination(&mut deleted, g.n()) {
            break;
        }
    }
    Ok(Verdict {
        is_k_critical: true,
        witness: None,
        method: Method::Deletion,
    })
}

/// Hall violator of a graph whose maximum matching leaves V uncovered:
/// alternating reachability from the unmatched V vertices.
fn hall_violator(h: &BipartiteGraph) -> Option<Vec<usize>> {
    let mm = max_matching(h);
    if mm.covers_v(h.m()) {
        return None;
    }
    let mut mate_u = vec![NIL; h.n()];
    let mut mate_v = vec![NIL; h.m()];
    for &(u, v) in mm.pairs() {
        mate_u[u] = v;
        mate_v[v] = u;
    }
    let mut seen_v = vec![false; h.m()];
    let mut seen_u = vec![false; h.n()];
    let mut stack: Vec<usize> = (0..h.m()).filter(|&j| mate_v[j] == NIL).collect();
    for &j in &stack {
        seen_v[j] = true;
    }
    while let Some(j) = stack.pop() {
        for &i in h.neighbors_v(j) {
            if !seen_u[i] {
                seen_u[i] = true;
                let w = mate_u[i];
                // An unmatched u here would be an augmenting path.
                assert!(w != NIL, "matching is maximum");
                if !seen_v[w] {
                    seen_v[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Some((0..h.m()).filter(|&j| seen_v[j]).collect())
}

fn violates(g: &BipartiteGraph, k: usize, b: &[usize]) -> bool {
    !b.is_empty() && g.neighborhood_v(b).expect("witness in range").len() < b.len() + k
}

/// Greedy inclusion-minimization: drop elements (ascending) while the
/// violation persists.
fn shrink_witness(g: &BipartiteGraph, k: usize, mut b: Vec<usize>) -> Vec<usize> {
    debug_assert!(violates(g, k, &b));
    let mut i = 0;
    while i < b.len() {
        let mut cand = b.clone();
        cand.remove(i);
        if violates(g, k, &cand) {
            b = cand;
        } else {
            i += 1;
        }
    }
    b
}

/// Extendability test for balanced graphs: directs all edges U to V,
/// contracts a perfect matching, and checks strong k-connectivity of the
/// resulting digraph by unit-capacity vertex-split flow between every
/// ordered node pair. Strong k-connectivity follows the convention of
/// requiring more than k vertices.
///
/// The matching used is the lexicographically first perfect matching; the
/// result does not depend on that choice.
///
/// # Panics
/// Panics when k < 1.
pub fn is_k_extendable(g: &BipartiteGraph, k: usize) -> Result<bool, Error> {
    if g.n() != g.m() {
        return Err(Error::Unbalanced { n: g.n(), m: g.m() });
    }
    assert!(k >= 1, "extendability threshold must be at least 1");
    let pm = perfect_matching_lex(g, false).ok_or(Error::NoPerfectMatching)?;
    Ok(extendable_with_matching(g, &pm, k))
}

pub(crate) fn extendable_with_matching(g: &BipartiteGraph, mate_of_u: &[usize], k: usize) -> bool {
    let q = g.n();
    if q < k + 1 {
        return false;
    }
    let mut owner = vec![NIL; q];
    for (u, &v) in mate_of_u.iter().enumerate() {
        owner[v] = u;
    }
    // Node i of the contracted digraph is the pair (u_i, v_{mate_of_u[i]});
    // each non-matching edge (u_i, v_j) becomes the arc i -> owner(j).
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); q];
    for u in 0..q {
        for &v in g.neighbors_u(u) {
            if v != mate_of_u[u] {
                arcs[u].push(owner[v]);
            }
        }
        arcs[u].sort_unstable();
        arcs[u].dedup();
    }
    for s in 0..q {
        for t in 0..q {
            if s != t && !has_k_disjoint_paths(&arcs, s, t, k) {
                return false;
            }
        }
    }
    true
}

/// At least k internally-vertex-disjoint s->t paths, by augmenting BFS on
/// the vertex-split unit-capacity network (in(i) = 2i, out(i) = 2i + 1).
fn has_k_disjoint_paths(arcs: &[Vec<usize>], s: usize, t: usize, k: usize) -> bool {
    let q = arcs.len();
    let nn = 2 * q;
    let mut cap = vec![vec![0i8; nn]; nn];
    for i in 0..q {
        cap[2 * i][2 * i + 1] = 1;
    }
    for (i, outs) in arcs.iter().enumerate() {
        for &j in outs {
            cap[2 * i + 1][2 * j] = 1;
        }
    }
    let (src, snk) = (2 * s + 1, 2 * t);
    let mut prev = vec![NIL; nn];
    for _ in 0..k {
        prev.iter_mut().for_each(|p| *p = NIL);
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        'bfs: while let Some(x) = queue.pop_front() {
            for y in 0..nn {
                if prev[y] == NIL && cap[x][y] > 0 {
                    prev[y] = x;
                    if y == snk {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        if prev[snk] == NIL {
            return false;
        }
        let mut y = snk;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
    }
    true
}

/// Lexicographically first (or last) perfect matching, as mate-of-u, or
/// None when no perfect matching exists. Greedy per-vertex forcing with a
/// feasibility probe on the remainder.
pub(crate) fn perfect_matching_lex(g: &BipartiteGraph, prefer_high: bool) -> Option<Vec<usize>> {
    let q = g.n();
    if g.m() != q || max_matching(g).size() != q {
        return None;
    }
    let mut taken_v = vec![false; q];
    let mut mate = vec![NIL; q];
    for u in 0..q {
        let mut candidates: Vec<usize> = g
            .neighbors_u(u)
            .iter()
            .copied()
            .filter(|&v| !taken_v[v])
            .collect();
        if prefer_high {
            candidates.reverse();
        }
        let mut placed = false;
        for v in candidates {
            taken_v[v] = true;
            if remainder_has_pm(g, u + 1, &taken_v) {
                mate[u] = v;
                placed = true;
                break;
            }
            taken_v[v] = false;
        }
        assert!(placed, "prefix extendability is invariant");
    }
    Some(mate)
}

fn remainder_has_pm(g: &BipartiteGraph, from_u: usize, taken_v: &[bool]) -> bool {
    let q = g.n();
    let rows: Vec<Vec<usize>> = (from_u..q)
        .map(|u| {
            g.neighbors_u(u)
                .iter()
                .copied()
                .filter(|&v| !taken_v[v])
                .collect()
        })
        .collect();
    matching_size(&rows, q) == q - from_u
}

/// Kuhn's algorithm on a raw adjacency slice.
fn matching_size(rows: &[Vec<usize>], m: usize) -> usize {
    let mut mate_v = vec![NIL; m];
    let mut visited = vec![false; m];
    let mut size = 0;
    for u in 0..rows.len() {
        visited.iter_mut().for_each(|x| *x = false);
        if kuhn_augment(rows, u, &mut visited, &mut mate_v) {
            size += 1;
        }
    }
    size
}

fn kuhn_augment(rows: &[Vec<usize>], u: usize, visited: &mut [bool], mate_v: &mut [usize]) -> bool {
    for &v in &rows[u] {
        if !visited[v] {
            visited[v] = true;
            if mate_v[v] == NIL || kuhn_augment(rows, mate_v[v], visited, mate_v) {
                mate_v[v] = u;
                return true;
            }
        }
    }
    false
}

/// Verdict via the balancing augmentation: G is k-critical iff tilde(G) is
/// k-extendable. Produces no witness.
pub fn is_k_critical_tilde(g: &BipartiteGraph) -> Result<Verdict, Error> {
    if g.n() < g.m() {
        return Err(Error::ShapeError(format!(
            "verification needs n >= m, got ({}, {})",
            g.n(),
            g.m()
        )));
    }
    let k = g.n() - g.m();
    let is_k_critical = if k == 0 {
        // tilde adds nothing; 0-criticality is a complete matching of V.
        has_complete_matching(g)
    } else {
        match is_k_extendable(&tilde(g), k) {
            Ok(v) => v,
            Err(Error::NoPerfectMatching) => false,
            Err(e) => return Err(e),
        }
    };
    Ok(Verdict {
        is_k_critical,
        witness: None,
        method: Method::Tilde,
    })
}

/// Meta-check that the deletion oracle and the tilde route agree on G.
/// Expected to always return true.
pub fn check_tilde_equivalence(g: &BipartiteGraph, budget: u64) -> Result<bool, Error> {
    if g.n() <= g.m() {
        return Err(Error::ShapeError(format!(
            "equivalence check needs n > m, got ({}, {})",
            g.n(),
            g.m()
        )));
    }
    let deletion = is_k_critical_deletion(g, budget)?;
    let tilde_route = is_k_critical_tilde(g)?;
    Ok(deletion.is_k_critical == tilde_route.is_k_critical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        construct_conjecture, construct_g1, construct_g2, construct_negative, tilde,
    };
    use crate::params::derive_params;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn g2(n: i64, m: i64) -> BipartiteGraph {
        construct_g2(&derive_params(n, m).unwrap())
    }

    fn valid_paramsets(n_max: i64) -> Vec<crate::params::ParamSet> {
        let mut out = Vec::new();
        for n in 3..=n_max {
            for m in 2..n {
                if let Ok(p) = derive_params(n, m) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn max_matching_pinned() {
        assert_eq!(max_matching(&g2(6, 3)).size(), 3);

        let empty = BipartiteGraph::build(3, 3, &[]).unwrap();
        assert_eq!(max_matching(&empty).size(), 0);

        let pm: Vec<(usize, usize)> = (0..5).map(|i| (i, i)).collect();
        let g = BipartiteGraph::build(5, 5, &pm).unwrap();
        assert_eq!(max_matching(&g).size(), 5);
    }

    #[test]
    fn complete_matching_pinned() {
        let h = g2(6, 3).induced_u(&[0, 2, 4]).unwrap();
        assert!(has_complete_matching(&h));

        // Keeping only one neighbor of the last V-block starves it.
        let g1 = construct_g1(&derive_params(12, 9).unwrap());
        let h = g1.induced_u(&[0, 1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert!(!has_complete_matching(&h));

        let lonely = BipartiteGraph::build(0, 1, &[]).unwrap();
        assert!(!has_complete_matching(&lonely));
    }

    #[test]
    fn deficiency_pinned() {
        let v = is_k_critical_deficiency(&g2(6, 3)).unwrap();
        assert!(v.is_k_critical);
        assert_eq!(v.witness, None);
        assert_eq!(v.method, Method::Deficiency);

        let neg = construct_negative(&derive_params(10, 5).unwrap()).unwrap();
        let v = is_k_critical_deficiency(&neg).unwrap();
        assert!(!v.is_k_critical);
        let w = v.witness.unwrap();
        assert_eq!(w.b, vec![0, 4]);
        assert_eq!(w.neighborhood_size, 6);

        let g1 = construct_g1(&derive_params(12, 9).unwrap());
        let v = is_k_critical_deficiency(&g1).unwrap();
        assert!(!v.is_k_critical);
        let w = v.witness.unwrap();
        // Minimum-size witness: the first twin pair of a blown-up block.
        assert_eq!(w.b, vec![0, 1]);
        assert_eq!(w.neighborhood_size, 4);
        // The last V-block is a larger violator of the same shape.
        assert_eq!(g1.neighborhood_v(&[6, 7, 8]).unwrap().len(), 4);
    }

    #[test]
    fn deficiency_shape_error() {
        let g = BipartiteGraph::build(2, 3, &[]).unwrap();
        assert!(matches!(
            is_k_critical_deficiency(&g),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn deletion_pinned() {
        let v = is_k_critical_deletion(&g2(12, 9), DEFAULT_DELETION_BUDGET).unwrap();
        assert!(v.is_k_critical);
        assert_eq!(v.method, Method::Deletion);

        let conj = construct_conjecture(5, 3).unwrap();
        assert!(is_k_critical_deletion(&conj, 100).unwrap().is_k_critical);

        let neg = construct_negative(&derive_params(10, 5).unwrap()).unwrap();
        let v = is_k_critical_deletion(&neg, DEFAULT_DELETION_BUDGET).unwrap();
        assert!(!v.is_k_critical);
        let w = v.witness.unwrap();
        assert!(w.neighborhood_size < w.b.len() + 5);
        // The pinned failing deletion: removing these five leaves v0 and
        // v[m-1] competing for u0 alone.
        let keep: Vec<usize> = (0..10).filter(|i| ![1, 2, 5, 6, 7].contains(i)).collect();
        assert!(!has_complete_matching(&neg.induced_u(&keep).unwrap()));
    }

    #[test]
    fn deletion_budget() {
        let g = g2(12, 9);
        let res = is_k_critical_deletion(&g, 100);
        assert_eq!(
            res,
            Err(Error::BudgetExceeded {
                needed: 220,
                budget: 100
            })
        );
    }

    #[test]
    fn extendable_pinned() {
        // C6 as a balanced (3,3) cycle: contraction is a directed 3-cycle.
        let c6 = BipartiteGraph::build(3, 3, &[(0, 0), (0, 2), (1, 0), (1, 1), (2, 1), (2, 2)])
            .unwrap();
        assert_eq!(is_k_extendable(&c6, 1), Ok(true));
        assert_eq!(is_k_extendable(&c6, 2), Ok(false));

        // A bare perfect matching contracts to an arcless digraph.
        let pm: Vec<(usize, usize)> = (0..3).map(|i| (i, i)).collect();
        let bare = BipartiteGraph::build(3, 3, &pm).unwrap();
        assert_eq!(is_k_extendable(&bare, 1), Ok(false));

        assert_eq!(is_k_extendable(&tilde(&g2(6, 3)), 3), Ok(true));

        let unbal = BipartiteGraph::build(3, 2, &[]).unwrap();
        assert_eq!(
            is_k_extendable(&unbal, 1),
            Err(Error::Unbalanced { n: 3, m: 2 })
        );

        let no_pm = BipartiteGraph::build(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(is_k_extendable(&no_pm, 1), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn extendable_independent_of_matching() {
        let graphs = vec![
            tilde(&g2(6, 3)),
            tilde(&g2(6, 4)),
            tilde(&construct_g1(&derive_params(6, 3).unwrap())),
            BipartiteGraph::build(3, 3, &[(0, 0), (0, 2), (1, 0), (1, 1), (2, 1), (2, 2)])
                .unwrap(),
            BipartiteGraph::build(
                4,
                4,
                &(0..4)
                    .flat_map(|i| (0..4).map(move |j| (i, j)))
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        ];
        for g in &graphs {
            let lo = perfect_matching_lex(g, false).unwrap();
            let hi = perfect_matching_lex(g, true).unwrap();
            for k in 1..=3 {
                assert_eq!(
                    extendable_with_matching(g, &lo, k),
                    extendable_with_matching(g, &hi, k),
                    "matching choice changed the verdict (k={k})"
                );
            }
        }
    }

    #[test]
    fn tilde_route_pinned() {
        assert!(is_k_critical_tilde(&g2(6, 3)).unwrap().is_k_critical);
        let neg = construct_negative(&derive_params(10, 5).unwrap()).unwrap();
        assert!(!is_k_critical_tilde(&neg).unwrap().is_k_critical);

        assert!(check_tilde_equivalence(&g2(6, 3), DEFAULT_DELETION_BUDGET).unwrap());
        assert!(check_tilde_equivalence(&neg, DEFAULT_DELETION_BUDGET).unwrap());
        let g1 = construct_g1(&derive_params(6, 3).unwrap());
        assert!(check_tilde_equivalence(&g1, DEFAULT_DELETION_BUDGET).unwrap());

        let balanced = BipartiteGraph::build(3, 3, &[]).unwrap();
        assert!(matches!(
            check_tilde_equivalence(&balanced, 100),
            Err(Error::ShapeError(_))
        ));
    }

    fn random_graph(rng: &mut StdRng, n: usize, m: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..m {
                if rng.random_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        BipartiteGraph::build(n, m, &edges).unwrap()
    }

    #[test]
    fn oracle_agreement_small() {
        // Constructions and random graphs: the two verdict routes agree.
        let mut corpus: Vec<BipartiteGraph> = Vec::new();
        for p in valid_paramsets(12) {
            corpus.push(construct_g2(&p));
            corpus.push(construct_g1(&p));
            if let Ok(g) = construct_negative(&p) {
                corpus.push(g);
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..150 {
            let n = rng.random_range(2..=10);
            let m = rng.random_range(1..=n);
            corpus.push(random_graph(&mut rng, n, m));
        }
        for g in &corpus {
            let defic = is_k_critical_deficiency(g).unwrap();
            let delet = is_k_critical_deletion(g, DEFAULT_DELETION_BUDGET).unwrap();
            assert_eq!(
                defic.is_k_critical,
                delet.is_k_critical,
                "route disagreement at ({}, {})",
                g.n(),
                g.m()
            );
            for v in [&defic, &delet] {
                if let Some(w) = &v.witness {
                    assert!(!w.b.is_empty());
                    assert!(w.neighborhood_size < w.b.len() + (g.n() - g.m()));
                }
            }
        }
    }

    #[test]
    fn tilde_agreement_small() {
        let mut corpus: Vec<BipartiteGraph> = Vec::new();
        for p in valid_paramsets(10) {
            corpus.push(construct_g2(&p));
            corpus.push(construct_g1(&p));
        }
        let mut rng = StdRng::seed_from_u64(0xace);
        for _ in 0..60 {
            let n = rng.random_range(3..=9);
            let m = rng.random_range(2..n);
            corpus.push(random_graph(&mut rng, n, m));
        }
        for g in &corpus {
            assert!(
                check_tilde_equivalence(g, DEFAULT_DELETION_BUDGET).unwrap(),
                "tilde route disagreed at ({}, {})",
                g.n(),
                g.m()
            );
        }
    }

    #[test]
    fn single_edge_additions_preserve_verdict() {
        for p in valid_paramsets(12) {
            let g = construct_g2(&p);
            assert!(is_k_critical_deficiency(&g).unwrap().is_k_critical);
            for i in 0..g.n() {
                for j in 0..g.m() {
                    if g.has_edge(i, j) {
                        continue;
                    }
                    let mut edges = g.edges();
                    edges.push((i, j));
                    let bigger = BipartiteGraph::build(g.n(), g.m(), &edges).unwrap();
                    assert!(
                        is_k_critical_deficiency(&bigger).unwrap().is_k_critical,
                        "adding (u{i}, v{j}) broke ({}, {})",
                        p.n,
                        p.m
                    );
                }
            }
        }
    }

    #[test]
    fn block_construction_critical_iff_c_equals_m() {
        for p in valid_paramsets(20) {
            let verdict = is_k_critical_deficiency(&construct_g1(&p)).unwrap();
            assert_eq!(
                verdict.is_k_critical,
                p.c == p.m,
                "G1({}, {}) with c={} m={}",
                p.n,
                p.m,
                p.c,
                p.m
            );
        }
    }

    #[test]
    fn verified_graphs_meet_v_degree_floor() {
        for p in valid_paramsets(16) {
            let g = construct_g2(&p);
            assert!(is_k_critical_deficiency(&g).unwrap().is_k_critical);
            assert!(g.degree_profile().min_v >= p.b as usize);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn prop_routes_agree(
            n in 2usize..=8,
            m in 1usize..=8,
            seed in any::<u64>(),
        ) {
            prop_assume!(m <= n);
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, m);
            let defic = is_k_critical_deficiency(&g).unwrap();
            let delet = is_k_critical_deletion(&g, u64::MAX).unwrap();
            prop_assert_eq!(defic.is_k_critical, delet.is_k_critical);
            if let Some(w) = defic.witness {
                let hood = g.neighborhood_v(&w.b).unwrap();
                prop_assert_eq!(hood.len(), w.neighborhood_size);
                prop_assert!(hood.len() < w.b.len() + (n - m));
            }
        }
    }
}

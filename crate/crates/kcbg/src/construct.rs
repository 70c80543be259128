//! Graph constructions: the two biregular interval families and the stepped
//! generalization, the edge-exchange counterexample for a < m-1, the
//! near-biregular graph for non-integral a, and the balancing augmentation.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::BipartiteGraph;
use crate::params::ParamSet;

fn uz(v: i64) -> usize {
    usize::try_from(v).expect("parameter is nonnegative")
}

/// Block-interval construction: u_i covers the a classes starting at
/// floor(i/x) * y. Biregular (a, b); k-critical exactly when c = m.
pub fn construct_g1(p: &ParamSet) -> BipartiteGraph {
    let (n, m, a, x, y) = (uz(p.n), uz(p.m), uz(p.a), uz(p.x), uz(p.y));
    let mut edges = Vec::with_capacity(n * a);
    for i in 0..n {
        let j = (i / x) * y;
        for alpha in 0..a {
            edges.push((i, (j + alpha) % m));
        }
    }
    BipartiteGraph::build(n, m, &edges).expect("indices are reduced mod m")
}

/// The same graph as [`construct_g1`], built by blowing up the d-regular
/// circulant on (c, c): u'_i is replaced by x copies, v'_j by y copies, and
/// each circulant edge by a complete K_{x,y}. Flat indexing puts copy alpha
/// of u'_i at u_{i*x + alpha} and copy beta of v'_j at v_{j*y + beta}.
pub fn construct_g1_blowup(p: &ParamSet) -> BipartiteGraph {
    let (c, d, x, y) = (uz(p.c), uz(p.d), uz(p.x), uz(p.y));
    let (n, m) = (uz(p.n), uz(p.m));
    let mut edges = Vec::with_capacity(n * uz(p.a));
    for i in 0..c {
        for delta in 0..d {
            let j = (i + delta) % c;
            for alpha in 0..x {
                for beta in 0..y {
                    edges.push((i * x + alpha, j * y + beta));
                }
            }
        }
    }
    BipartiteGraph::build(n, m, &edges).expect("indices are reduced mod c")
}

/// Shifted-interval construction: u_i covers the a classes starting at
/// ceil(i*y/x) mod m. Biregular (a, b) and k-critical for every valid
/// parameter set.
pub fn construct_g2(p: &ParamSet) -> BipartiteGraph {
    step_graph(p, 1)
}

/// Stepped variant of [`construct_g2`]: u_i covers the classes
/// ceil(i*y/x) + s*alpha mod m for alpha in [0, a). Requires s to divide x;
/// the s = 1 case is exactly construct_g2.
pub fn construct_g2_step(p: &ParamSet, s: i64) -> Result<BipartiteGraph, Error> {
    if s < 1 || p.x % s != 0 {
        return Err(Error::InvalidStep { s, x: p.x });
    }
    Ok(step_graph(p, s))
}

/// [`construct_g2_step`] without the divisibility gate. For s not dividing
/// x the output carries no guarantees (in general not even biregular).
pub fn construct_g2_step_unchecked(p: &ParamSet, s: i64) -> BipartiteGraph {
    assert!(s >= 1, "step must be positive");
    step_graph(p, s)
}

fn step_graph(p: &ParamSet, s: i64) -> BipartiteGraph {
    let (n, m, a, x, y, s) = (uz(p.n), uz(p.m), uz(p.a), uz(p.x), uz(p.y), uz(s));
    let mut edges = Vec::with_capacity(n * a);
    for i in 0..n {
        let j = (i * y).div_ceil(x);
        for alpha in 0..a {
            edges.push((i, (j + s * alpha) % m));
        }
    }
    BipartiteGraph::build(n, m, &edges).expect("indices are reduced mod m")
}

/// Edge-exchange counterexample for the c = m, a < m-1 case: an
/// (a, b)-regular graph of order (n, m) that is not k-critical.
///
/// The base graph joins v_i to the a residue classes i..i+a-1 of U
/// (class t is {u_t, u_{t+m}, ..., u_{t+(x-1)m}}). The exchange then makes
/// v_{m-1} a twin of v_0: v_{m-1} trades its class m-1 for class a-1, and
/// v_1 takes class m-1 in place of class a-1. Degrees are untouched, and
/// B = {v_0, v_{m-1}} has |N(B)| = a*x = b < 2 + k.
pub fn construct_negative(p: &ParamSet) -> Result<BipartiteGraph, Error> {
    if p.c < p.m {
        return Err(Error::Inapplicable(format!(
            "needs c = gcd(n,m) = m, got c={} m={}",
            p.c, p.m
        )));
    }
    if p.a == p.m - 1 {
        return Err(Error::Inapplicable(format!(
            "needs a < m-1, got a = m-1 = {}",
            p.a
        )));
    }
    let (n, m, a, x) = (uz(p.n), uz(p.m), uz(p.a), uz(p.x));
    let mut edges = BTreeSet::new();
    for i in 0..m {
        for alpha in 0..a {
            for z in 0..x {
                edges.insert(((i + alpha + z * m) % n, i));
            }
        }
    }
    for z in 0..x {
        let class_top = (m - 1 + z * m) % n;
        let class_cut = (a - 1 + z * m) % n;
        assert!(edges.remove(&(class_top, m - 1)));
        assert!(edges.remove(&(class_cut, 1)));
        assert!(edges.insert((class_cut, m - 1)));
        assert!(edges.insert((class_top, 1)));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(BipartiteGraph::build(n, m, &edges).expect("indices are reduced mod n"))
}

/// Near-biregular construction for pairs where a = m(n-m+1)/n is not an
/// integer: u_i covers the ceil(m(n-m+1)/n) classes starting at
/// ceil(i*m/n) mod m. Conjectured k-critical; verified empirically by the
/// search module's scan.
pub fn construct_conjecture(n: i64, m: i64) -> Result<BipartiteGraph, Error> {
    if m <= 1 || n <= m {
        return Err(Error::InvalidParams(format!(
            "need n > m > 1, got n={n} m={m}"
        )));
    }
    let b = n - m + 1;
    let mb = m as i128 * b as i128;
    if mb % n as i128 == 0 {
        return Err(Error::IsBiregularCase { n, m });
    }
    let a_up = uz(((mb + n as i128 - 1) / n as i128) as i64);
    let (n, m) = (uz(n), uz(m));
    let mut edges = Vec::with_capacity(n * a_up);
    for i in 0..n {
        // The raw start index reaches m for i near n; reduce mod m.
        let j = (i * m).div_ceil(n) % m;
        for alpha in 0..a_up {
            edges.push((i, (j + alpha) % m));
        }
    }
    Ok(BipartiteGraph::build(n, m, &edges).expect("indices are reduced mod m"))
}

/// Balancing augmentation: appends k = n - m universal vertices to the V
/// side, giving a graph of order (n, n).
///
/// # Panics
/// Panics when n < m.
pub fn tilde(g: &BipartiteGraph) -> BipartiteGraph {
    assert!(g.n() >= g.m(), "tilde needs n >= m");
    let k = g.n() - g.m();
    let mut edges = g.edges();
    edges.reserve(g.n() * k);
    for i in 0..g.n() {
        for t in 0..k {
            edges.push((i, g.m() + t));
        }
    }
    BipartiteGraph::build(g.n(), g.m() + k, &edges).expect("augmented indices in range")
}

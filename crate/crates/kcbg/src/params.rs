//! The degree-parameter model. A pair n > m > 1 admits an (a,b)-biregular
//! k-critical graph with b = n-m+1 exactly when a = m(n-m+1)/n is an
//! integer. Everything else follows from the two gcds c = gcd(n,m) and
//! d = gcd(a,b): with n = cx, m = cy, a = dy, b = dx and p = c-d, the
//! integrality is equivalent to the unit equation dx - c(x-y) = 1.
//!
//! Each `enumerate_from_*` function inverts the model from one fixed
//! quantity, producing every admissible pair keyed by it (up to the stated
//! cutoff for the two infinite families).

use serde::Serialize;

use crate::error::Error;
use crate::numth::{divisor_pairs, gcd, unit_bezout_positive};

/// Complete parameter set of an admissible pair. Invariants hold by
/// construction: instances only come out of [`derive_params`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamSet {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub x: i64,
    pub y: i64,
    pub p: i64,
}

/// Derives the full parameter set for the pair (n, m).
///
/// Fails with [`Error::NotBiregular`] when m(n-m+1)/n is not an integer,
/// in which case no biregular solution of order (n, m) exists.
pub fn derive_params(n: i64, m: i64) -> Result<ParamSet, Error> {
    if m <= 1 || n <= m {
        return Err(Error::InvalidParams(format!(
            "need n > m > 1, got n={n} m={m}"
        )));
    }
    let k = n - m;
    let b = k + 1;
    let mb = m as i128 * b as i128;
    if mb % n as i128 != 0 {
        return Err(Error::NotBiregular { n, m });
    }
    let a = (mb / n as i128) as i64;
    let c = gcd(n, m);
    let d = gcd(a, b);
    let ps = ParamSet {
        n,
        m,
        k,
        a,
        b,
        c,
        d,
        x: n / c,
        y: m / c,
        p: c - d,
    };
    ps.assert_identities();
    Ok(ps)
}

impl ParamSet {
    /// Every identity and inequality of the model. A failure here is a bug,
    /// not bad input: admissibility was already decided by integrality.
    fn assert_identities(&self) {
        let &ParamSet { n, m, k, a, b, c, d, x, y, p } = self;
        let w = |v: i64| v as i128;
        assert!(n > m && m > 2, "degenerate pair n={n} m={m}");
        assert_eq!(k, n - m);
        assert_eq!(b, k + 1);
        assert_eq!(w(a) * w(n), w(b) * w(m));
        assert_eq!(n, c * x);
        assert_eq!(m, c * y);
        assert_eq!(w(a), w(d) * w(y));
        assert_eq!(w(b), w(d) * w(x));
        assert_eq!(gcd(x, y), 1);
        assert_eq!(gcd(c, d), 1);
        assert_eq!(gcd(c, x), 1);
        assert_eq!(gcd(x, x - y), 1);
        assert_eq!(w(d) * w(x), w(c) * w(x - y) + 1);
        assert_eq!(w(p) * w(x), w(m) - 1);
        assert_eq!(w(p) * w(x - y), w(a) - 1);
        assert_eq!(w(p) * w(y), w(m) - w(a));
        assert!(p > 0 && c > d && d > 0 && c > p);
        assert!(x > y && y > 0);
        assert!(b > a && a > 1);
        assert!(n - x >= b && m - y >= a);
        assert!(n - c >= m && m >= c);
        assert!(b - d >= a && a >= d);
    }
}

fn push_counted(out: &mut Vec<(ParamSet, usize)>, ps: ParamSet) {
    match out.iter_mut().find(|(q, _)| (q.n, q.m) == (ps.n, ps.m)) {
        Some(entry) => entry.1 += 1,
        None => out.push((ps, 1)),
    }
}

fn finish(mut out: Vec<(ParamSet, usize)>) -> Vec<(ParamSet, usize)> {
    out.sort_by_key(|(q, _)| (q.n, q.m));
    out
}

fn strip(counted: Vec<(ParamSet, usize)>) -> Vec<ParamSet> {
    counted.into_iter().map(|(q, _)| q).collect()
}

/// Admissible pairs sharing the reduced ratio y/x, for the first
/// `l_max + 1` scale steps. The scales are (c, d) = (c0 + l*x, d0 + l*(x-y))
/// where (d0, c0) is the least positive solution of dx - c(x-y) = 1.
pub fn enumerate_from_xy(x: i64, y: i64, l_max: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_xy_counted(x, y, l_max).map(strip)
}

pub(crate) fn enumerate_from_xy_counted(
    x: i64,
    y: i64,
    l_max: i64,
) -> Result<Vec<(ParamSet, usize)>, Error> {
    if y < 1 || y >= x {
        return Err(Error::InvalidParams(format!(
            "need 0 < y < x, got x={x} y={y}"
        )));
    }
    if gcd(x, y) != 1 {
        return Err(Error::InvalidParams(format!(
            "need gcd(x, y) = 1, got x={x} y={y}"
        )));
    }
    if l_max < 0 {
        return Err(Error::InvalidParams(format!("need l_max >= 0, got {l_max}")));
    }
    let (d0, c0) = unit_bezout_positive(x, x - y).expect("x and x - y are coprime");
    let mut out = Vec::new();
    for l in 0..=l_max {
        let c = l
            .checked_mul(x)
            .and_then(|v| v.checked_add(c0))
            .ok_or(Error::Overflow("c = c0 + l * x"))?;
        let d = l
            .checked_mul(x - y)
            .and_then(|v| v.checked_add(d0))
            .ok_or(Error::Overflow("d = d0 + l * (x - y)"))?;
        let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
        if m <= 1 {
            // Only the l = 0 step of y = 1 lands here (c0 = d0 = 1).
            continue;
        }
        let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
        let ps = derive_params(n, m).expect("scale step is admissible");
        debug_assert_eq!((ps.c, ps.d), (c, d));
        push_counted(&mut out, ps);
    }
    Ok(finish(out))
}

/// Admissible pairs sharing the gcd pair (c, d) = (gcd(n,m), gcd(a,b)), for
/// the first `l_max + 1` shape steps (x, z) = (x0 + l*c, z0 + l*d), y = x-z.
pub fn enumerate_from_cd(c: i64, d: i64, l_max: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_cd_counted(c, d, l_max).map(strip)
}

pub(crate) fn enumerate_from_cd_counted(
    c: i64,
    d: i64,
    l_max: i64,
) -> Result<Vec<(ParamSet, usize)>, Error> {
    if d < 1 || d >= c {
        return Err(Error::InvalidParams(format!(
            "need 0 < d < c, got c={c} d={d}"
        )));
    }
    if gcd(c, d) != 1 {
        return Err(Error::InvalidParams(format!(
            "need gcd(c, d) = 1, got c={c} d={d}"
        )));
    }
    if l_max < 0 {
        return Err(Error::InvalidParams(format!("need l_max >= 0, got {l_max}")));
    }
    let (mut x0, mut z0) = unit_bezout_positive(d, c).expect("c and d are coprime");
    if z0 == 0 {
        // d = 1 gives the degenerate (x, z) = (1, 0); the least useful
        // solution is one step further along.
        x0 += c;
        z0 += d;
    }
    let mut out = Vec::new();
    for l in 0..=l_max {
        let x = l
            .checked_mul(c)
            .and_then(|v| v.checked_add(x0))
            .ok_or(Error::Overflow("x = x0 + l * c"))?;
        let z = l
            .checked_mul(d)
            .and_then(|v| v.checked_add(z0))
            .ok_or(Error::Overflow("z = z0 + l * d"))?;
        let y = x - z;
        let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
        let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
        let ps = derive_params(n, m).expect("shape step is admissible");
        debug_assert_eq!((ps.x, ps.y), (x, y));
        push_counted(&mut out, ps);
    }
    Ok(finish(out))
}

/// All admissible pairs with the given smaller class size m. Factors
/// m = c * y and m - 1 = p * x subject to x > y and p < c; the pair list is
/// finite and never empty for m >= 3.
pub fn enumerate_from_m(m: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_m_counted(m).map(strip)
}

pub(crate) fn enumerate_from_m_counted(m: i64) -> Result<Vec<(ParamSet, usize)>, Error> {
    if m < 3 {
        return Err(Error::InvalidParams(format!("need m >= 3, got m={m}")));
    }
    let mut out = Vec::new();
    for (c, y) in divisor_pairs(m) {
        if c < 2 {
            continue;
        }
        for (p, x) in divisor_pairs(m - 1) {
            if p >= c || x <= y {
                continue;
            }
            let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
            let ps = derive_params(n, m).expect("m-keyed factorization is admissible");
            debug_assert_eq!((ps.c, ps.p), (c, p));
            push_counted(&mut out, ps);
        }
    }
    debug_assert!(!out.is_empty(), "m = c, x = m - 1 always qualifies");
    Ok(finish(out))
}

/// All admissible pairs with the given U-side degree a. Factors a = d * y
/// and a - 1 = p * z; every combination is admissible via x = z + y,
/// c = d + p.
pub fn enumerate_from_a(a: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_a_counted(a).map(strip)
}

pub(crate) fn enumerate_from_a_counted(a: i64) -> Result<Vec<(ParamSet, usize)>, Error> {
    if a < 2 {
        return Err(Error::InvalidParams(format!("need a >= 2, got a={a}")));
    }
    let mut out = Vec::new();
    for (d, y) in divisor_pairs(a) {
        for (p, z) in divisor_pairs(a - 1) {
            let x = z.checked_add(y).ok_or(Error::Overflow("x = z + y"))?;
            let c = d.checked_add(p).ok_or(Error::Overflow("c = d + p"))?;
            let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
            let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
            let ps = derive_params(n, m).expect("a-keyed factorization is admissible");
            debug_assert_eq!((ps.a, ps.d), (a, d));
            push_counted(&mut out, ps);
        }
    }
    Ok(finish(out))
}

/// All admissible pairs with the given V-side degree b = n - m + 1. Factors
/// b = d * x (x >= 2) and b - 1 = c * z (c > d, z < x); y = x - z.
pub fn enumerate_from_b(b: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_b_counted(b).map(strip)
}

pub(crate) fn enumerate_from_b_counted(b: i64) -> Result<Vec<(ParamSet, usize)>, Error> {
    if b < 3 {
        return Err(Error::InvalidParams(format!("need b >= 3, got b={b}")));
    }
    let mut out = Vec::new();
    for (d, x) in divisor_pairs(b) {
        if x < 2 {
            continue;
        }
        for (c, z) in divisor_pairs(b - 1) {
            if c <= d || z >= x {
                continue;
            }
            let y = x - z;
            let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
            let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
            let ps = derive_params(n, m).expect("b-keyed factorization is admissible");
            debug_assert_eq!((ps.b, ps.d), (b, d));
            push_counted(&mut out, ps);
        }
    }
    Ok(finish(out))
}

/// All admissible pairs with the given larger class size n. Each coprime
/// factorization n = c * x (c, x >= 2) contributes exactly one m, pinned by
/// the unique (d, z) with dx - zc = 1, 0 < d < c, 0 < z < x.
///
/// Fails for n < 4 and for prime n (no factorization with both parts >= 2);
/// composite n without a coprime factorization yield an empty list.
pub fn enumerate_from_n(n: i64) -> Result<Vec<ParamSet>, Error> {
    enumerate_from_n_counted(n).map(strip)
}

pub(crate) fn enumerate_from_n_counted(n: i64) -> Result<Vec<(ParamSet, usize)>, Error> {
    if n < 4 {
        return Err(Error::InvalidParams(format!("need n >= 4, got n={n}")));
    }
    let splits: Vec<(i64, i64)> = divisor_pairs(n)
        .into_iter()
        .filter(|&(c, x)| c >= 2 && x >= 2)
        .collect();
    if splits.is_empty() {
        return Err(Error::InvalidParams(format!("n={n} is prime")));
    }
    let mut out = Vec::new();
    for (c, x) in splits {
        if gcd(c, x) != 1 {
            continue;
        }
        let (d, z) = unit_bezout_positive(x, c).expect("c and x are coprime");
        let y = x - z;
        let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
        let ps = derive_params(n, m).expect("n-keyed factorization is admissible");
        debug_assert_eq!((ps.c, ps.d), (c, d));
        push_counted(&mut out, ps);
    }
    Ok(finish(out))
}

/// One instantiation of the inconsistent n-keyed recipe that factors n + 1
/// instead of pinning (d, z) by the unit equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NPlusOneCandidate {
    pub n: i64,
    pub c: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub d: i64,
    pub m: i64,
    pub a: i64,
    pub b: i64,
    /// Whether b = n - m + 1 holds. It never does: the recipe forces
    /// c(x - y)^2 = y - x, impossible for positive c and x != y.
    pub consistent: bool,
}

/// Expands the alternative n-keyed recipe (n = cx with c, x >= 2;
/// n + 1 = yz with z >= c + 1; d = z - c; m = cy; a = dy; b = dx) for every
/// n up to `n_max`, recording for each candidate whether it satisfies
/// b = n - m + 1.
pub fn n_plus_one_candidates(n_max: i64) -> Vec<NPlusOneCandidate> {
    let mut out = Vec::new();
    for n in 4..=n_max {
        for (c, x) in divisor_pairs(n) {
            if c < 2 || x < 2 {
                continue;
            }
            for (y, z) in divisor_pairs(n + 1) {
                if z < c + 1 {
                    continue;
                }
                let d = z - c;
                let m = c * y;
                out.push(NPlusOneCandidate {
                    n,
                    c,
                    x,
                    y,
                    z,
                    d,
                    m,
                    a: d * y,
                    b: d * x,
                    consistent: d * x == n - m + 1,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pairs(v: &[ParamSet]) -> Vec<(i64, i64)> {
        v.iter().map(|p| (p.n, p.m)).collect()
    }

    #[test]
    fn derive_pinned_6_3() {
        let p = derive_params(6, 3).unwrap();
        assert_eq!(
            p,
            ParamSet { n: 6, m: 3, k: 3, a: 2, b: 4, c: 3, d: 2, x: 2, y: 1, p: 1 }
        );
    }

    #[test]
    fn derive_pinned_12_9() {
        let p = derive_params(12, 9).unwrap();
        assert_eq!(
            p,
            ParamSet { n: 12, m: 9, k: 3, a: 3, b: 4, c: 3, d: 1, x: 4, y: 3, p: 2 }
        );
    }

    #[test]
    fn derive_rejects() {
        assert_eq!(derive_params(5, 3), Err(Error::NotBiregular { n: 5, m: 3 }));
        assert!(matches!(derive_params(3, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(derive_params(3, 6), Err(Error::InvalidParams(_))));
        assert!(matches!(derive_params(6, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn derive_scan_matches_integrality() {
        for n in 3..=300i64 {
            for m in 2..n {
                let admissible = (m as i128 * (n - m + 1) as i128) % n as i128 == 0;
                assert_eq!(derive_params(n, m).is_ok(), admissible, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn from_m_pinned() {
        let ns = |m: i64| -> Vec<i64> {
            enumerate_from_m(m).unwrap().iter().map(|p| p.n).collect()
        };
        assert_eq!(ns(3), vec![6]);
        assert_eq!(ns(9), vec![12, 18, 24, 36, 72]);
        assert_eq!(ns(7), vec![14, 21, 42]);
        assert!(matches!(enumerate_from_m(2), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn from_a_pinned() {
        let a2 = enumerate_from_a(2).unwrap();
        assert_eq!(pairs(&a2), vec![(6, 3), (6, 4)]);
        assert!(pairs(&enumerate_from_a(3).unwrap()).contains(&(12, 9)));
        assert!(pairs(&enumerate_from_a(4).unwrap()).contains(&(20, 5)));
        assert!(matches!(enumerate_from_a(1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn from_b_pinned() {
        assert_eq!(pairs(&enumerate_from_b(4).unwrap()), vec![(6, 3), (12, 9)]);
        assert_eq!(pairs(&enumerate_from_b(3).unwrap()), vec![(6, 4)]);
        assert_eq!(
            pairs(&enumerate_from_b(6).unwrap()),
            vec![(10, 5), (15, 10), (30, 25)]
        );
        assert!(matches!(enumerate_from_b(2), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn from_n_pinned() {
        assert_eq!(pairs(&enumerate_from_n(12).unwrap()), vec![(12, 4), (12, 9)]);
        assert_eq!(pairs(&enumerate_from_n(6).unwrap()), vec![(6, 3), (6, 4)]);
        assert_eq!(enumerate_from_n(9).unwrap(), vec![]);
        assert!(matches!(enumerate_from_n(7), Err(Error::InvalidParams(_))));
        assert!(matches!(enumerate_from_n(3), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn from_xy_first_steps() {
        // y/x = 1/2: scales c = 1 + 2l with the l = 0 step degenerate.
        let fam = enumerate_from_xy(2, 1, 3).unwrap();
        assert_eq!(pairs(&fam), vec![(6, 3), (10, 5), (14, 7)]);
        for p in &fam {
            assert_eq!((p.x, p.y), (2, 1));
        }

        let fam = enumerate_from_xy(4, 3, 2).unwrap();
        assert_eq!(pairs(&fam), vec![(12, 9), (28, 21), (44, 33)]);

        assert!(matches!(enumerate_from_xy(4, 2, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(enumerate_from_xy(3, 3, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(enumerate_from_xy(2, 1, -1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn from_cd_first_steps() {
        // (c, d) = (3, 2): least (x, z) with 2x - 3z = 1 is (2, 1).
        let fam = enumerate_from_cd(3, 2, 2).unwrap();
        assert_eq!(pairs(&fam), vec![(6, 3), (15, 6), (24, 9)]);
        for p in &fam {
            assert_eq!((p.c, p.d), (3, 2));
        }

        // d = 1 needs the degenerate-step fixup: (x, z) = (c + 1, 1).
        let fam = enumerate_from_cd(3, 1, 1).unwrap();
        assert_eq!(pairs(&fam), vec![(12, 9), (21, 15)]);

        assert!(matches!(enumerate_from_cd(4, 2, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(enumerate_from_cd(2, 3, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn round_trip_all_enumerations() {
        // Every admissible pair with n <= 160 appears under each of its keys.
        for n in 3..=160i64 {
            for m in 2..n {
                let Ok(ps) = derive_params(n, m) else { continue };
                assert!(pairs(&enumerate_from_m(ps.m).unwrap()).contains(&(n, m)));
                assert!(pairs(&enumerate_from_a(ps.a).unwrap()).contains(&(n, m)));
                assert!(pairs(&enumerate_from_b(ps.b).unwrap()).contains(&(n, m)));
                assert!(pairs(&enumerate_from_n(ps.n).unwrap()).contains(&(n, m)));
                // Scale index along the xy ray: c = c0 + l * x.
                let (_, c0) = unit_bezout_positive(ps.x, ps.x - ps.y).unwrap();
                let l = (ps.c - c0) / ps.x;
                assert!(pairs(&enumerate_from_xy(ps.x, ps.y, l).unwrap()).contains(&(n, m)));
                let fam = enumerate_from_cd(ps.c, ps.d, (ps.x / ps.c) + 1).unwrap();
                assert!(pairs(&fam).contains(&(n, m)), "cd key missed n={n} m={m}");
            }
        }
    }

    #[test]
    fn enumerations_emit_only_admissible() {
        for m in 3..=60 {
            for ps in enumerate_from_m(m).unwrap() {
                assert_eq!(derive_params(ps.n, ps.m).unwrap(), ps);
            }
        }
        for a in 2..=40 {
            for ps in enumerate_from_a(a).unwrap() {
                assert_eq!(derive_params(ps.n, ps.m).unwrap(), ps);
                assert_eq!(ps.a, a);
            }
        }
        for b in 3..=40 {
            for ps in enumerate_from_b(b).unwrap() {
                assert_eq!(derive_params(ps.n, ps.m).unwrap(), ps);
                assert_eq!(ps.b, b);
            }
        }
    }

    #[test]
    fn n_key_is_unique_per_factorization() {
        // Each m appears once, and the enumeration agrees with the brute
        // integrality scan over all m < n.
        for n in 4..=200i64 {
            let brute: BTreeSet<i64> = (2..n).filter(|&m| derive_params(n, m).is_ok()).collect();
            match enumerate_from_n_counted(n) {
                Ok(counted) => {
                    let got: Vec<i64> = counted.iter().map(|(p, _)| p.m).collect();
                    let set: BTreeSet<i64> = got.iter().copied().collect();
                    assert_eq!(set, brute, "n={n}");
                    assert_eq!(set.len(), got.len(), "duplicate m for n={n}");
                    assert!(counted.iter().all(|&(_, c)| c == 1));
                }
                Err(_) => assert!(brute.is_empty(), "n={n} erred but has pairs"),
            }
        }
    }

    #[test]
    fn n_plus_one_recipe_never_consistent() {
        let cands = n_plus_one_candidates(100);
        assert!(!cands.is_empty());
        assert!(cands.iter().all(|c| !c.consistent));
    }
}

//! Number-theoretic plumbing for the parameter model: extended Euclid,
//! positive unit Bezout solutions, divisor and coprime pair enumeration,
//! and the two counting functions behind the interval construction.
//!
//! All public entry points take and return `i64`; intermediate products are
//! computed in `i128`, and results that could leave `i64` are errors.

use crate::error::Error;

/// Greatest common divisor, nonnegative result.
pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Coefficients returned by [`extended_gcd`]: `alpha * phi + beta * psi = g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutSolution {
    pub g: i64,
    pub phi: i64,
    pub psi: i64,
}

/// Extended Euclidean algorithm for positive arguments.
///
/// Returns the canonical coefficient pair produced by the iterative scheme.
/// For `alpha != beta` the coefficients satisfy `|phi| <= beta / (2g)` and
/// `|psi| <= alpha / (2g)`; in every case `|phi| < beta` and `|psi| < alpha`
/// hold whenever `max(alpha, beta) > 1`.
///
/// # Panics
/// Panics when `alpha < 1` or `beta < 1`.
pub fn extended_gcd(alpha: i64, beta: i64) -> BezoutSolution {
    assert!(alpha >= 1 && beta >= 1, "extended_gcd needs positive arguments");
    let (mut old_r, mut r) = (alpha as i128, beta as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    let sol = BezoutSolution {
        g: old_r as i64,
        phi: old_s as i64,
        psi: old_t as i64,
    };
    debug_assert_eq!(
        alpha as i128 * sol.phi as i128 + beta as i128 * sol.psi as i128,
        sol.g as i128
    );
    sol
}

/// Least positive solution of `alpha * phi - beta * psi = 1`.
///
/// The returned pair satisfies `0 < phi <= beta` and `0 <= psi < alpha`.
/// Solvable exactly when `gcd(alpha, beta) = 1`.
///
/// # Panics
/// Panics when `alpha < 1` or `beta < 1`.
pub fn unit_bezout_positive(alpha: i64, beta: i64) -> Result<(i64, i64), Error> {
    let sol = extended_gcd(alpha, beta);
    if sol.g != 1 {
        return Err(Error::NoSolution { alpha, beta });
    }
    // alpha * phi = 1 (mod beta); the least positive representative is
    // phi = sol.phi mod beta, with the zero residue standing for beta itself.
    let mut phi = sol.phi.rem_euclid(beta);
    if phi == 0 {
        phi = beta;
    }
    let psi = ((alpha as i128 * phi as i128 - 1) / beta as i128) as i64;
    debug_assert!(0 < phi && phi <= beta);
    debug_assert!(0 <= psi && psi < alpha);
    Ok((phi, psi))
}

/// All ordered factorizations `n = p * q` with `p, q >= 1`, sorted by `p`.
///
/// # Panics
/// Panics when `n < 1`.
pub fn divisor_pairs(n: i64) -> Vec<(i64, i64)> {
    assert!(n >= 1, "divisor_pairs needs n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut p = 1;
    while p <= n / p {
        if n % p == 0 {
            small.push((p, n / p));
            if p != n / p {
                large.push((n / p, p));
            }
        }
        p += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Coprime pairs `(x, y)` with `1 <= y < x <= limit`, emitted in ascending
/// order of the fraction `y / x` by an in-order Stern-Brocot traversal.
///
/// # Panics
/// Panics when `limit < 2`.
pub fn coprime_pairs(limit: i64) -> CoprimePairs {
    assert!(limit >= 2, "coprime_pairs needs limit >= 2");
    CoprimePairs {
        limit,
        stack: vec![Frame::Interval {
            lo: (0, 1),
            hi: (1, 1),
        }],
    }
}

/// Iterator state for [`coprime_pairs`]. Frames on the stack are either open
/// intervals between already-placed tree fractions or pending emissions.
pub struct CoprimePairs {
    limit: i64,
    stack: Vec<Frame>,
}

enum Frame {
    /// Open interval between two adjacent fractions, as (numerator, denominator).
    Interval { lo: (i64, i64), hi: (i64, i64) },
    Emit { num: i64, den: i64 },
}

impl Iterator for CoprimePairs {
    type Item = (i64, i64);

    fn next(&mut self) -> Option<(i64, i64)> {
        while let Some(frame) = self.stack.pop() {
            match frame {
                Frame::Emit { num, den } => return Some((den, num)),
                Frame::Interval { lo, hi } => {
                    // The mediant has the least denominator among all fractions
                    // strictly inside the interval, so once it exceeds the
                    // limit the interval holds nothing more to emit.
                    let med = (lo.0 + hi.0, lo.1 + hi.1);
                    if med.1 > self.limit {
                        continue;
                    }
                    self.stack.push(Frame::Interval { lo: med, hi });
                    self.stack.push(Frame::Emit {
                        num: med.0,
                        den: med.1,
                    });
                    self.stack.push(Frame::Interval { lo, hi: med });
                }
            }
        }
        None
    }
}

fn check_xyc(x: i64, y: i64, c: i64) -> Result<(i64, i64), Error> {
    if x < 1 || y < 1 || c < 1 {
        return Err(Error::InvalidParams(format!(
            "need x, y, c >= 1, got x={x} y={y} c={c}"
        )));
    }
    if y >= x {
        return Err(Error::InvalidParams(format!("need y < x, got x={x} y={y}")));
    }
    if gcd(x, y) != 1 {
        return Err(Error::InvalidParams(format!(
            "need gcd(x, y) = 1, got x={x} y={y}"
        )));
    }
    let n = c.checked_mul(x).ok_or(Error::Overflow("n = c * x"))?;
    let m = c.checked_mul(y).ok_or(Error::Overflow("m = c * y"))?;
    Ok((n, m))
}

/// Number of `i` in `[0, cx)` whose interval start `ceil(iy/x)` lands in the
/// residue class `j` modulo `m = cy`. Equals `floor(jx/y) - floor((j-1)x/y)`;
/// the `j = 0` class picks up the wrap at `i` near `cx`.
pub fn ceil_count(x: i64, y: i64, c: i64, j: i64) -> Result<i64, Error> {
    let (_, m) = check_xyc(x, y, c)?;
    if j < 0 || j >= m {
        return Err(Error::InvalidParams(format!(
            "need j in [0, {m}), got j={j}"
        )));
    }
    let hi = (j as i128 * x as i128).div_euclid(y as i128);
    let lo = ((j as i128 - 1) * x as i128).div_euclid(y as i128);
    Ok((hi - lo) as i64)
}

/// Total [`ceil_count`] over the `a = dy` consecutive residue classes ending
/// at `l` modulo `m = cy`. For every window this equals `b = dx`.
pub fn window_count(x: i64, y: i64, d: i64, c: i64, l: i64) -> Result<i64, Error> {
    let (_, m) = check_xyc(x, y, c)?;
    if d < 1 || d >= c {
        return Err(Error::InvalidParams(format!(
            "need 0 < d < c, got d={d} c={c}"
        )));
    }
    if l < 0 || l >= m {
        return Err(Error::InvalidParams(format!(
            "need l in [0, {m}), got l={l}"
        )));
    }
    let a = d.checked_mul(y).ok_or(Error::Overflow("a = d * y"))?;
    let mut total = 0i64;
    for t in 0..a {
        let j = (l - t).rem_euclid(m);
        total = total
            .checked_add(ceil_count(x, y, c, j)?)
            .ok_or(Error::Overflow("window_count total"))?;
    }
    Ok(total)
}

//! Color reduction with polynomials over a prime field.
//!
//! A color `c < q^(d+1)` is read as the coefficient vector (base-`q` digits)
//! of a polynomial `f_c` of degree at most `d` over GF(q). Two different
//! colors agree on at most `d` points. A vertex picks an evaluation point
//! `x` and takes the new color `x * q + f_c(x)`, so the new palette has
//! `q^2` colors.

use serde::{Deserialize, Serialize};

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= x {
        if x.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Smallest prime `>= x`.
pub fn next_prime(x: u64) -> u64 {
    (x.max(2)..).find(|&p| is_prime(p)).unwrap()
}

/// Smallest `r` with `r^k >= m`.
fn ceil_root(m: u64, k: u32) -> u64 {
    let mut r = (m as f64).powf(1.0 / k as f64).floor().max(1.0) as u64;
    while r > 1 && pow_at_least(r - 1, k, m) {
        r -= 1;
    }
    while !pow_at_least(r, k, m) {
        r += 1;
    }
    r
}

fn pow_at_least(r: u64, k: u32, m: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(r);
        if acc >= m {
            return true;
        }
    }
    acc >= m
}

/// One reduction step from a palette of `m` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinialStep {
    pub m: u64,
    pub q: u64,
    pub d: u32,
    /// A vertex tolerates up to this many neighbours that share the chosen
    /// evaluation value (0 for a properness-preserving step).
    pub beta: u64,
}

impl LinialStep {
    /// Cheapest field for `m` colors, degree `d`, `delta` neighbours to avoid
    /// and tolerance `beta`: `q (beta + 1) > delta d` and `q^(d+1) >= m`.
    pub fn with_degree(m: u64, delta: u64, d: u32, beta: u64) -> Self {
        let need = delta * d as u64 / (beta + 1) + 1;
        let q = next_prime(need.max(ceil_root(m, d + 1)));
        LinialStep { m, q, d, beta }
    }

    /// Degree with the smallest resulting palette among `1..=64`.
    pub fn best(m: u64, delta: u64, beta: u64) -> Self {
        (1..=64)
            .map(|d| Self::with_degree(m, delta, d, beta))
            .min_by_key(|s| (s.q, s.d))
            .unwrap()
    }

    pub fn palette(&self) -> u64 {
        self.q * self.q
    }

    /// `f_c(x)` by Horner's rule; digit `i` of `c` is the coefficient of `x^i`.
    pub fn eval(&self, c: u64, x: u64) -> u64 {
        debug_assert!(c < self.m);
        let q = self.q;
        let mut digits = [0u64; 65];
        let mut rest = c;
        for slot in digits.iter_mut().take(self.d as usize + 1) {
            *slot = rest % q;
            rest /= q;
        }
        digits[..=self.d as usize]
            .iter()
            .rev()
            .fold(0, |acc, &dg| (acc * x + dg) % q)
    }

    /// New color of a vertex with color `c` given the colors of the
    /// neighbours it has to avoid. Neighbours with color `c` are ignored.
    /// Picks the point with fewest agreements, the smallest one on ties, and
    /// reports that count.
    pub fn choose(&self, c: u64, others: &[u64]) -> (u64, u64) {
        let others: Vec<u64> = others.iter().copied().filter(|&u| u != c).collect();
        let mut best = (u64::MAX, 0);
        for x in 0..self.q {
            let fx = self.eval(c, x);
            let hits = others.iter().filter(|&&u| self.eval(u, x) == fx).count() as u64;
            if hits < best.0 {
                best = (hits, x);
                if hits == 0 {
                    break;
                }
            }
        }
        let (hits, x) = best;
        (x * self.q + self.eval(c, x), hits)
    }
}

/// Properness-preserving steps from `m0` colors with `delta` neighbours to
/// avoid, each chosen greedily, until no step shrinks the palette.
pub fn proper_schedule(m0: u64, delta: u64) -> Vec<LinialStep> {
    let mut steps = Vec::new();
    let mut m = m0;
    loop {
        let s = LinialStep::best(m, delta, 0);
        if s.palette() >= m {
            return steps;
        }
        m = s.palette();
        steps.push(s);
    }
}

/// Final palette after `steps`, or `m0` if there are none.
pub fn final_palette(m0: u64, steps: &[LinialStep]) -> u64 {
    steps.last().map_or(m0, LinialStep::palette)
}

/// Proper steps followed by up to four tolerant steps that split the defect
/// budget `budget` evenly; the split with the smallest final palette wins,
/// fewer steps on ties.
pub fn defective_schedule(m0: u64, delta: u64, budget: u64) -> Vec<LinialStep> {
    let mut base = proper_schedule(m0, delta);
    if budget == 0 {
        return base;
    }
    let m = final_palette(m0, &base);
    let mut best: Option<Vec<LinialStep>> = None;
    for k in 1..=4u64 {
        let beta = budget / k;
        if beta == 0 {
            break;
        }
        let mut tail = Vec::new();
        let mut cur = m;
        for _ in 0..k {
            let s = LinialStep::best(cur, delta, beta);
            if s.palette() >= cur {
                break;
            }
            cur = s.palette();
            tail.push(s);
        }
        let better = match &best {
            None => true,
            Some(b) => (final_palette(m, &tail), tail.len()) < (final_palette(m, b), b.len()),
        };
        if better {
            best = Some(tail);
        }
    }
    base.extend(best.unwrap_or_default());
    base
}

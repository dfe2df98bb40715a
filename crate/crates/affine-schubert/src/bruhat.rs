//! Bruhat order on the affine symmetric group: rank and difference
//! functions, the order test, covering relations, order ideals, Poincaré
//! polynomials and reflection sets.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::{AffinePermutation, Transposition};
use crate::poly::UnivariatePolynomial;

/// Default element budget for order-ideal traversals.
pub const DEFAULT_IDEAL_CAP: usize = 5_000_000;

/// `r_w(p, q) = #{ i <= p : w(i) >= q }`, finite because `w(i) -> -inf`
/// as `i -> -inf`.
pub fn rank(w: &AffinePermutation, p: i64, q: i64) -> u64 {
    let n = w.n() as i64;
    let mut count = 0i64;
    for (idx, &base) in w.window().iter().enumerate() {
        let r = idx as i64 + 1;
        // positions r + k*n <= p carrying value base + k*n >= q
        let kmax = (p - r).div_euclid(n);
        let kmin = (q - base + n - 1).div_euclid(n);
        if kmax >= kmin {
            count += kmax - kmin + 1;
        }
    }
    count as u64
}

/// `r'_w(p, q) = #{ i >= p : w(i) <= q }`.
pub fn rank_prime(w: &AffinePermutation, p: i64, q: i64) -> u64 {
    let n = w.n() as i64;
    let mut count = 0i64;
    for (idx, &base) in w.window().iter().enumerate() {
        let r = idx as i64 + 1;
        let kmin = (p - r + n - 1).div_euclid(n);
        let kmax = (q - base).div_euclid(n);
        if kmax >= kmin {
            count += kmax - kmin + 1;
        }
    }
    count as u64
}

/// The rank difference `d_{x,w}(p, q) = r_w(p, q) - r_x(p, q)`.
pub fn diff(x: &AffinePermutation, w: &AffinePermutation, p: i64, q: i64) -> i64 {
    rank(w, p, q) as i64 - rank(x, p, q) as i64
}

/// The primed difference `d'_{x,w}(p, q) = r'_w(p, q) - r'_x(p, q)`.
pub fn diff_prime(x: &AffinePermutation, w: &AffinePermutation, p: i64, q: i64) -> i64 {
    rank_prime(w, p, q) as i64 - rank_prime(x, p, q) as i64
}

fn value_range(x: &AffinePermutation, w: &AffinePermutation) -> (i64, i64) {
    let n = x.n() as i64;
    let lo = x.min_window().min(w.min_window()) - n;
    let hi = x.max_window().max(w.max_window()) + n;
    (lo, hi)
}

/// Bruhat order test: `x <= w` iff the rank difference is nonnegative
/// everywhere. Periodicity confines `p` to one window; outside the common
/// value spread the difference vanishes, so `q` ranges over a finite band.
pub fn leq(x: &AffinePermutation, w: &AffinePermutation) -> Result<bool> {
    if x.n() != w.n() {
        return Err(Error::PeriodMismatch(x.n(), w.n()));
    }
    let n = x.n() as i64;
    let (qlo, qhi) = value_range(x, w);
    for p in 1..=n {
        for q in qlo..=qhi {
            if diff(x, w, p, q) < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same order test through the primed rank functions.
pub fn leq_prime(x: &AffinePermutation, w: &AffinePermutation) -> Result<bool> {
    if x.n() != w.n() {
        return Err(Error::PeriodMismatch(x.n(), w.n()));
    }
    let n = x.n() as i64;
    let (qlo, qhi) = value_range(x, w);
    for p in 1..=n {
        for q in qlo..=qhi {
            if diff_prime(x, w, p, q) < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All covering pairs `u = w t` with `l(u) = l(w) - 1`, each tagged with its
/// transposition. A pair `(i, j)` is a cover when `w(i) > w(j)`, no value
/// between the positions lands in `[w(j), w(i)]`, and either `j - i < n` or
/// `w(i) - w(j) < n`; the second clause bounds the scan.
pub fn covers_down(w: &AffinePermutation) -> Vec<(Transposition, AffinePermutation)> {
    let n = w.n() as i64;
    let horizon = n * (w.spread() + 1);
    let mut out = Vec::new();
    for i in 1..=n {
        let wi = w.apply(i);
        'next_j: for j in i + 1..=i + horizon {
            let wj = w.apply(j);
            if wj >= wi {
                continue;
            }
            if j - i >= n && wi - wj >= n {
                continue;
            }
            for k in i + 1..j {
                let wk = w.apply(k);
                if wj <= wk && wk <= wi {
                    continue 'next_j;
                }
            }
            let t = Transposition::new(w.n(), i, j).expect("cover indices are distinct mod n");
            let u = w.right_mul_t(&t).expect("same period");
            out.push((t, u));
        }
    }
    out
}

/// Number of coatoms of `w`, i.e. the coefficient of `q^(l(w)-1)` in the
/// Poincaré polynomial.
pub fn coatom_count(w: &AffinePermutation) -> usize {
    covers_down(w).len()
}

/// Number of distinct generators in a reduced word for `w`, i.e. the
/// coefficient of `q` in the Poincaré polynomial.
pub fn support_size(w: &AffinePermutation) -> usize {
    let word = w.reduced_word();
    let mut seen = vec![false; w.n()];
    for &g in &word.letters {
        seen[g] = true;
    }
    seen.iter().filter(|&&b| b).count()
}

/// The order ideal `{ v : v <= w }`, computed by closing downward under
/// covering relations, with the default element budget.
pub fn order_ideal(w: &AffinePermutation) -> Result<HashSet<AffinePermutation>> {
    order_ideal_capped(w, DEFAULT_IDEAL_CAP)
}

/// Order ideal with an explicit element budget.
pub fn order_ideal_capped(
    w: &AffinePermutation,
    cap: usize,
) -> Result<HashSet<AffinePermutation>> {
    let mut seen: HashSet<AffinePermutation> = HashSet::new();
    let mut queue: VecDeque<AffinePermutation> = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(v) = queue.pop_front() {
        for (_, u) in covers_down(&v) {
            if seen.insert(u.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapacityExceeded(cap));
                }
                queue.push_back(u);
            }
        }
    }
    Ok(seen)
}

/// The Poincaré polynomial of `w`: the rank generating function of its order
/// ideal. Constant term 1, degree `l(w)`.
pub fn poincare(w: &AffinePermutation) -> Result<UnivariatePolynomial> {
    poincare_capped(w, DEFAULT_IDEAL_CAP)
}

/// Poincaré polynomial with an explicit element budget. The traversal tracks
/// depth from `w`; the poset is graded, so depth determines length.
pub fn poincare_capped(w: &AffinePermutation, cap: usize) -> Result<UnivariatePolynomial> {
    let top = w.length();
    let mut coeffs = vec![BigUint::zero(); top + 1];
    let mut seen: HashSet<AffinePermutation> = HashSet::new();
    let mut frontier = vec![w.clone()];
    seen.insert(w.clone());
    let mut depth = 0usize;
    while !frontier.is_empty() {
        coeffs[top - depth] += BigUint::from(frontier.len());
        let mut next = Vec::new();
        for v in &frontier {
            for (_, u) in covers_down(v) {
                if seen.insert(u.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapacityExceeded(cap));
                    }
                    next.push(u);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(UnivariatePolynomial::from_big_coeffs(coeffs))
}

/// Default scan horizon for reflection enumeration: `j - i <= n (l(w) + 2)`.
/// Swapping values further apart creates more inversions than `w` has, so
/// the product can no longer stay below `w`.
pub fn reflection_horizon(w: &AffinePermutation) -> i64 {
    let n = w.n() as i64;
    n * (w.length() as i64 + 2)
}

/// The reflection set `R(x, w) = { t : x < x t <= w }`, requiring `x <= w`.
pub fn reflection_set(
    x: &AffinePermutation,
    w: &AffinePermutation,
) -> Result<Vec<Transposition>> {
    reflection_set_with_horizon(x, w, reflection_horizon(w))
}

/// Reflection set with an explicit scan horizon; widening the horizon must
/// never change the result (regression-tested).
pub fn reflection_set_with_horizon(
    x: &AffinePermutation,
    w: &AffinePermutation,
    horizon: i64,
) -> Result<Vec<Transposition>> {
    if !leq(x, w)? {
        return Err(Error::NotComparable);
    }
    let n = x.n() as i64;
    let mut out = Vec::new();
    for p in 1..=n {
        let xp = x.apply(p);
        for q in p + 1..=p + horizon {
            if (q - p).rem_euclid(n) == 0 {
                continue;
            }
            if xp >= x.apply(q) {
                continue; // x t would be shorter than x
            }
            let t = Transposition::new(x.n(), p, q).expect("distinct mod n");
            let xt = x.right_mul_t(&t).expect("same period");
            if leq(&xt, w)? {
                out.push(t);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Convenience: `#R(x, w)`.
pub fn reflection_count(x: &AffinePermutation, w: &AffinePermutation) -> Result<usize> {
    Ok(reflection_set(x, w)?.len())
}

/// JSON-serializable record tying a window to its Poincaré polynomial;
/// the line-delimited cache file format stores one of these per line.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct PoincareRecord {
    pub n: usize,
    pub window: Vec<i64>,
    pub poincare: Vec<u64>,
}

impl PoincareRecord {
    pub fn new(w: &AffinePermutation, p: &UnivariatePolynomial) -> Self {
        PoincareRecord {
            n: w.n(),
            window: w.window().to_vec(),
            poincare: p
                .coeffs()
                .iter()
                .map(|c| {
                    u64::try_from(c).expect("desk-scale coefficients fit in u64")
                })
                .collect(),
        }
    }

    pub fn polynomial(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(self.poincare.iter().copied())
    }
}

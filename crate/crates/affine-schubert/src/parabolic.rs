//! Parabolic subgroups of the affine symmetric group: membership, the
//! length-additive coset decomposition, the greedy maximal element below a
//! bound, longest elements of maximal parabolics, and quotient Poincaré
//! polynomials.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bruhat;
use crate::error::{Error, Result};
use crate::perm::AffinePermutation;
use crate::poly::UnivariatePolynomial;

/// A subset of the generator indices `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSubset {
    n: usize,
    members: BTreeSet<usize>,
}

impl GeneratorSubset {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&g) = members.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidArgs(format!(
                "generator index {g} out of range for period {n}"
            )));
        }
        Ok(GeneratorSubset { n, members })
    }

    /// The maximal subset `S \ {s_g}`.
    pub fn without(n: usize, g: usize) -> Result<Self> {
        if g >= n {
            return Err(Error::InvalidArgs(format!(
                "generator index {g} out of range for period {n}"
            )));
        }
        GeneratorSubset::new(n, (0..n).filter(|&h| h != g))
    }

    pub fn full(n: usize) -> Self {
        GeneratorSubset {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(&g)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n
    }

    /// Parses the comma-separated text form, e.g. `"0,2"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let members: Vec<usize> = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad generator index {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        GeneratorSubset::new(n, members)
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Membership in the parabolic subgroup generated by `J`: every letter of a
/// reduced word must come from `J` (reduced words of parabolic elements are
/// letter-closed, so one word suffices).
pub fn in_parabolic(w: &AffinePermutation, j: &GeneratorSubset) -> bool {
    assert_eq!(w.n(), j.n());
    w.reduced_word().letters.iter().all(|&g| j.contains(g))
}

/// True iff no reduced word of `w` starts with a letter of `J`,
/// i.e. `w` is the minimal-length representative of its left coset.
pub fn is_left_minimal(w: &AffinePermutation, j: &GeneratorSubset) -> bool {
    j.members().all(|g| !w.is_left_descent(g))
}

/// The unique factorization `w = u v` with `u` in the parabolic subgroup,
/// `v` left-minimal, and lengths adding up.
pub fn parabolic_decompose(
    w: &AffinePermutation,
    j: &GeneratorSubset,
) -> (AffinePermutation, AffinePermutation) {
    assert_eq!(w.n(), j.n());
    let mut u = AffinePermutation::identity(w.n());
    let mut v = w.clone();
    while let Some(g) = j.members().find(|&g| v.is_left_descent(g)) {
        v = v.left_mul_gen(g);
        u = u.right_mul_gen(g);
    }
    (u, v)
}

/// The left-minimal coset representative of `w` (the `v` of the
/// decomposition).
pub fn minimal_coset_rep(w: &AffinePermutation, j: &GeneratorSubset) -> AffinePermutation {
    parabolic_decompose(w, j).1
}

/// Greedy maximal element of `[e, w]` inside the parabolic subgroup: read a
/// reduced word left to right, keeping the letters from `J` that increase
/// length. Independent of the chosen reduced word.
pub fn demazure_m(w: &AffinePermutation, j: &GeneratorSubset) -> AffinePermutation {
    assert_eq!(w.n(), j.n());
    let mut m = AffinePermutation::identity(w.n());
    for &g in &w.reduced_word().letters {
        if j.contains(g) && !m.is_right_descent(g) {
            m = m.right_mul_gen(g);
        }
    }
    m
}

/// The longest element of the maximal parabolic subgroup missing `s_g`: the
/// order-reversal of the length-`n` integer interval that subgroup
/// stabilizes. The right interval is found by testing the `n` candidates.
pub fn longest_parabolic_element(n: usize, g: usize) -> Result<AffinePermutation> {
    let j = GeneratorSubset::without(n, g)?;
    for a in 1..=n as i64 {
        let cand = interval_reversal(n, a);
        if in_parabolic(&cand, &j) {
            debug_assert_eq!(cand.length(), n * (n - 1) / 2);
            return Ok(cand);
        }
    }
    unreachable!("some interval reversal lies in every maximal parabolic")
}

/// The affine permutation reversing the interval `[a, a + n - 1]` (and all
/// its translates).
fn interval_reversal(n: usize, a: i64) -> AffinePermutation {
    let m = n as i64;
    let mut window = vec![0i64; n];
    for t in 0..m {
        let pos = a + t;
        let val = a + m - 1 - t;
        let r = (pos - 1).rem_euclid(m);
        window[r as usize] = val - (pos - 1 - r);
    }
    AffinePermutation::from_window(n, window).expect("interval reversal is valid")
}

/// Rank generating function of the left-minimal representatives below `v`
/// in the induced quotient order, computed by projecting the order ideal.
pub fn quotient_poincare(
    v: &AffinePermutation,
    j: &GeneratorSubset,
) -> Result<UnivariatePolynomial> {
    quotient_poincare_capped(v, j, bruhat::DEFAULT_IDEAL_CAP)
}

pub fn quotient_poincare_capped(
    v: &AffinePermutation,
    j: &GeneratorSubset,
    cap: usize,
) -> Result<UnivariatePolynomial> {
    if !is_left_minimal(v, j) {
        return Err(Error::NotMinimalRep);
    }
    let ideal = bruhat::order_ideal_capped(v, cap)?;
    let mut reps: HashMap<AffinePermutation, usize> = HashMap::new();
    for z in &ideal {
        let rep = minimal_coset_rep(z, j);
        let l = rep.length();
        reps.entry(rep).or_insert(l);
    }
    let seen: HashSet<AffinePermutation> = reps.keys().cloned().collect();
    let mut coeffs = vec![BigUint::zero(); v.length() + 1];
    for rep in seen {
        coeffs[rep.length()] += BigUint::from(1u32);
    }
    Ok(UnivariatePolynomial::from_big_coeffs(coeffs))
}

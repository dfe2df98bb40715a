//! Twisted spirals, the factoring-subword machinery, factored Poincaré
//! computation, and the rational-smoothness classifier.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::parabolic::{self, GeneratorSubset};
use crate::patterns::{self, Occurrence, Pattern};
use crate::perm::{AffinePermutation, Word};
use crate::poly::{q_binomial, UnivariatePolynomial};

/// Parameters of a twisted spiral: generator index `i` in `[0, n-1]` and a
/// nonzero winding number `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralParams {
    pub i: usize,
    pub k: i64,
}

/// The rotation word starting at subscript `a` with signed length `b`:
/// consecutive ascending generators for `b > 0`, descending for `b < 0`,
/// empty for `b = 0`. Subscripts are taken mod `n`.
pub fn cycle_word(n: usize, a: i64, b: i64) -> Word {
    let m = n as i64;
    let letters: Vec<usize> = if b > 0 {
        (0..b).map(|t| (a + t).rem_euclid(m) as usize).collect()
    } else {
        (0..-b).map(|t| (a - t).rem_euclid(m) as usize).collect()
    };
    Word { n, letters }
}

/// The element of the rotation word; its length is `|b|`.
pub fn cycle_c(n: usize, a: i64, b: i64) -> AffinePermutation {
    cycle_word(n, a, b).evaluate()
}

/// The twisted spiral: the longest element of the maximal parabolic missing
/// `s_i`, times the rotation of signed length `k(n-1)` starting at `i`.
pub fn twisted_spiral(n: usize, i: usize, k: i64) -> Result<AffinePermutation> {
    if n < 3 || i >= n || k == 0 {
        return Err(Error::InvalidArgs(format!(
            "twisted spiral needs n >= 3, i < n, k != 0 (got n={n}, i={i}, k={k})"
        )));
    }
    let w0 = parabolic::longest_parabolic_element(n, i)?;
    let c = cycle_c(n, i as i64, k * (n as i64 - 1));
    let w = w0.compose(&c)?;
    // length additivity is a theorem about this product; check, don't assume
    let expected = n * (n - 1) / 2 + k.unsigned_abs() as usize * (n - 1);
    assert_eq!(
        w.length(),
        expected,
        "twisted spiral length additivity failed for n={n} i={i} k={k}"
    );
    Ok(w)
}

/// Inverse problem: decides whether `w` is a twisted spiral and returns one
/// set of parameters if so. The winding magnitude is forced by length
/// arithmetic, so only `2n` candidates need to be built.
pub fn recognize_spiral(w: &AffinePermutation) -> Option<SpiralParams> {
    let n = w.n();
    if n < 3 {
        return None;
    }
    let base = n * (n - 1) / 2;
    let len = w.length();
    if len <= base {
        return None;
    }
    let extra = len - base;
    if !extra.is_multiple_of(n - 1) {
        return None;
    }
    let m = (extra / (n - 1)) as i64;
    for i in 0..n {
        for k in [m, -m] {
            if let Ok(cand) = twisted_spiral(n, i, k) {
                if cand == *w {
                    return Some(SpiralParams { i, k });
                }
            }
        }
    }
    None
}

/// The head-inversion subword of `w`: `alpha` indexes the largest window
/// value with at least one later smaller value; `v` lists that value and
/// every later smaller one; `u` is the right-to-left maxima subsequence
/// of `v`. Positions accompany the values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaSubword {
    pub alpha: i64,
    pub v: Vec<(i64, i64)>,
    pub u: Vec<(i64, i64)>,
}

impl AlphaSubword {
    pub fn v_values(&self) -> Vec<i64> {
        self.v.iter().map(|&(_, v)| v).collect()
    }

    pub fn u_values(&self) -> Vec<i64> {
        self.u.iter().map(|&(_, v)| v).collect()
    }

    /// True iff some position between `alpha` and the last entry carries a
    /// value above `w(alpha)`.
    pub fn interrupted(&self) -> bool {
        let last = self.v.last().expect("v is nonempty").0;
        (self.v.len() as i64) < last - self.alpha + 1
    }

    pub fn is_decreasing(&self) -> bool {
        self.v.windows(2).all(|c| c[0].1 > c[1].1)
    }
}

/// Computes the head-inversion subword. Fails on the identity.
pub fn alpha_subword(w: &AffinePermutation) -> Result<AlphaSubword> {
    if w.is_identity() {
        return Err(Error::IdentityInput);
    }
    let n = w.n() as i64;
    let mut alpha = None;
    for i in 1..=n {
        let wi = w.apply(i);
        let has_partner = (i + 1..=w.last_pos_leq(wi - 1)).any(|j| w.apply(j) < wi);
        if has_partner && alpha.is_none_or(|a| w.apply(a) < wi) {
            alpha = Some(i);
        }
    }
    let alpha = alpha.expect("non-identity element has an inversion in its window");
    let wa = w.apply(alpha);
    let mut v = vec![(alpha, wa)];
    for j in alpha + 1..=w.last_pos_leq(wa - 1) {
        let wj = w.apply(j);
        if wj < wa {
            v.push((j, wj));
        }
    }
    // right-to-left maxima: entries larger than everything after them
    let mut u = Vec::new();
    let mut best = i64::MIN;
    for &(p, val) in v.iter().rev() {
        if val > best {
            u.push((p, val));
            best = val;
        }
    }
    u.reverse();
    Ok(AlphaSubword { alpha, v, u })
}

/// Which permutation carries a factoring subword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    SelfPerm,
    InversePerm,
}

/// A consecutive strictly decreasing run `x_1 > ... > x_k` satisfying the
/// four factoring conditions, together with its pivot index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoringSubword {
    /// Position of `x_1` in the carrier permutation.
    pub start: i64,
    pub values: Vec<i64>,
    /// 1-based pivot index `j`.
    pub pivot: usize,
}

impl FactoringSubword {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn pivot_value(&self) -> i64 {
        self.values[self.pivot - 1]
    }

    pub fn pivot_position(&self) -> i64 {
        self.start + self.pivot as i64 - 1
    }
}

fn prefix_max(w: &AffinePermutation, before: i64) -> i64 {
    let n = w.n() as i64;
    (before - n..before).map(|l| w.apply(l)).max().unwrap()
}

fn suffix_min(w: &AffinePermutation, after: i64) -> i64 {
    let n = w.n() as i64;
    (after + 1..=after + n).map(|l| w.apply(l)).min().unwrap()
}

/// Checks the four factoring conditions for the run starting at `start` of
/// length `k`, and computes the pivot. Length-1 runs are rejected: they
/// produce an empty shuffle.
fn verify_factoring(w: &AffinePermutation, start: i64, k: usize) -> Option<FactoringSubword> {
    if k < 2 || k > w.n() {
        return None;
    }
    let values: Vec<i64> = (0..k as i64).map(|t| w.apply(start + t)).collect();
    if values.windows(2).any(|c| c[0] <= c[1]) {
        return None;
    }
    let end = start + k as i64 - 1;
    let pmax = prefix_max(w, start);
    let smin = suffix_min(w, end);
    if values[0] <= pmax {
        return None;
    }
    if values[k - 1] >= smin {
        return None;
    }
    if values[k - 1] > pmax && smin <= values[0] {
        return None;
    }
    // rightmost entry exceeding everything left of the run
    let j0 = values.iter().rposition(|&v| v > pmax).unwrap() + 1;
    let pivot = if j0 == k { 1 } else { j0 };
    Some(FactoringSubword {
        start,
        values,
        pivot,
    })
}

/// One construction attempt on `y`; the produced subword may live on `y`
/// itself or on its inverse.
fn construct_candidate(y: &AffinePermutation) -> Option<(Carrier, FactoringSubword)> {
    let sub = alpha_subword(y).ok()?;
    let last_pos = sub.v.last().unwrap().0;
    if sub.interrupted() {
        // run from the largest interrupter down to the tail of v
        let beta = (sub.alpha + 1..last_pos)
            .filter(|&p| y.apply(p) > y.apply(sub.alpha))
            .max_by_key(|&p| y.apply(p))?;
        let k = (last_pos - beta + 1) as usize;
        verify_factoring(y, beta, k).map(|x| (Carrier::SelfPerm, x))
    } else if sub.is_decreasing() {
        let k = sub.v.len();
        verify_factoring(y, sub.alpha, k).map(|x| (Carrier::SelfPerm, x))
    } else {
        // the right-to-left maxima must be a run of consecutive values;
        // transporting them through the inverse yields a consecutive run
        // of positions there
        let uv = sub.u_values();
        let m = uv.len() as i64;
        if uv
            .iter()
            .enumerate()
            .any(|(t, &val)| val != uv[0] - t as i64)
        {
            return None;
        }
        let inv = y.inverse();
        let start = uv[0] - (m - 1);
        verify_factoring(&inv, start, uv.len()).map(|x| (Carrier::InversePerm, x))
    }
}

fn flip(c: Carrier) -> Carrier {
    match c {
        Carrier::SelfPerm => Carrier::InversePerm,
        Carrier::InversePerm => Carrier::SelfPerm,
    }
}

/// Finds a factoring subword on `w` or on its inverse, preferring `w`
/// itself. Avoiders of 3412 and 4231 always have one; other inputs may
/// yield `None`.
pub fn find_factoring_subword(
    w: &AffinePermutation,
) -> Result<Option<(Carrier, FactoringSubword)>> {
    if w.is_identity() {
        return Err(Error::IdentityInput);
    }
    let mut found: Vec<(Carrier, FactoringSubword)> = Vec::new();
    if let Some((c, x)) = construct_candidate(w) {
        found.push((c, x));
    }
    if let Some((c, x)) = construct_candidate(&w.inverse()) {
        found.push((flip(c), x));
    }
    found.sort_by_key(|(c, _)| match c {
        Carrier::SelfPerm => 0,
        Carrier::InversePerm => 1,
    });
    Ok(found.into_iter().next())
}

/// One factorization step `w = w' sigma`.
#[derive(Debug, Clone)]
pub struct PsiStep {
    pub w_prime: AffinePermutation,
    pub sigma: AffinePermutation,
    /// The deleted generator: `sigma` is left-minimal for `S \ {s_d}` and
    /// every reduced word of `sigma` starts with `s_d`.
    pub d: usize,
    pub j_set: GeneratorSubset,
    pub subword: FactoringSubword,
}

/// The factoring map: shuffles the pivot block of the factoring subword past
/// the rest, producing `w = w' sigma` with `w'` in a maximal parabolic and
/// `sigma` a one-descent minimal coset representative.
///
/// Requires a factoring subword on `w` itself; when only the inverse carries
/// one, factor the inverse instead (the Poincaré polynomial is blind to the
/// difference).
pub fn psi(w: &AffinePermutation) -> Result<PsiStep> {
    let (carrier, x) = find_factoring_subword(w)?.ok_or(Error::NoFactoringSubword)?;
    if carrier != Carrier::SelfPerm {
        return Err(Error::NoFactoringSubword);
    }
    psi_from_subword(w, x)
}

fn psi_from_subword(w: &AffinePermutation, x: FactoringSubword) -> Result<PsiStep> {
    let n = w.n();
    let k = x.len() as i64;
    let j = x.pivot as i64;
    let gamma = x.pivot_position();
    let mut sigma_inv_word = Vec::new();
    for t in 0..j {
        sigma_inv_word.extend(cycle_word(n, gamma - t, k - j).letters);
    }
    let sigma_inv = Word {
        n,
        letters: sigma_inv_word,
    }
    .evaluate();
    let w_prime = w.compose(&sigma_inv)?;
    let sigma = sigma_inv.inverse();
    let d_raw = gamma - (j - 1) + (k - j - 1);
    let d = d_raw.rem_euclid(n as i64) as usize;
    let j_set = GeneratorSubset::without(n, d)?;
    if w_prime.length() + sigma.length() != w.length() {
        return Err(Error::InvalidArgs(format!(
            "factoring step is not length-additive on {w}; input must avoid 3412"
        )));
    }
    Ok(PsiStep {
        w_prime,
        sigma,
        d,
        j_set,
        subword: x,
    })
}

/// Poincaré polynomial of a 3412- and 4231-avoider, computed by repeated
/// factorization: each step contributes a q-binomial quotient factor.
pub fn poincare_factored(w: &AffinePermutation) -> Result<UnivariatePolynomial> {
    let p3412: Pattern = "3412".parse().unwrap();
    let p4231: Pattern = "4231".parse().unwrap();
    if patterns::contains(w, &p3412).is_some() {
        return Err(Error::PatternPresent("3412"));
    }
    if patterns::contains(w, &p4231).is_some() {
        return Err(Error::PatternPresent("4231"));
    }
    let mut acc = UnivariatePolynomial::one();
    let mut cur = w.clone();
    let mut inverted_in_a_row = 0u32;
    while !cur.is_identity() {
        let (carrier, x) = find_factoring_subword(&cur)?
            .ok_or_else(|| Error::InvalidArgs(format!("no factoring subword on avoider {cur}")))?;
        match carrier {
            Carrier::InversePerm => {
                cur = cur.inverse();
                inverted_in_a_row += 1;
                assert!(
                    inverted_in_a_row <= 1,
                    "factoring subword search ping-ponged on {cur}"
                );
                continue;
            }
            Carrier::SelfPerm => {
                inverted_in_a_row = 0;
                let k = x.len();
                let j = x.pivot;
                let step = psi_from_subword(&cur, x)?;
                let factor = q_binomial(k, j)?;
                debug_assert!(factor.is_palindromic());
                debug_assert_eq!(factor.degree(), Some(step.sigma.length()));
                acc = acc.mul(&factor);
                cur = step.w_prime;
            }
        }
    }
    Ok(acc)
}

/// Why an element indexes a rationally smooth Schubert variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothReason {
    /// Avoids both 3412 and 4231.
    Avoider,
    TwistedSpiral(SpiralParams),
    /// Period 2: the infinite dihedral group, where everything is smooth.
    SmallRank,
}

/// Pattern evidence for a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub pattern: &'static str,
    pub occurrence: Occurrence,
}

/// Classification outcome, always carrying re-checkable evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    RationallySmooth { reason: SmoothReason },
    NotRationallySmooth { witness: PatternWitness },
}

impl Verdict {
    pub fn is_rationally_smooth(&self) -> bool {
        matches!(self, Verdict::RationallySmooth { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::RationallySmooth { reason } => {
                let (name, evidence) = match reason {
                    SmoothReason::Avoider => ("avoids_3412_and_4231", json!(null)),
                    SmoothReason::TwistedSpiral(p) => {
                        ("twisted_spiral", json!({"i": p.i, "k": p.k}))
                    }
                    SmoothReason::SmallRank => ("small_rank", json!(null)),
                };
                json!({"verdict": "rationally_smooth", "reason": name, "evidence": evidence})
            }
            Verdict::NotRationallySmooth { witness } => json!({
                "verdict": "not_rationally_smooth",
                "reason": format!("contains_{}", witness.pattern),
                "evidence": {
                    "pattern": witness.pattern,
                    "indices": witness.occurrence.indices,
                },
            }),
        }
    }
}

/// Decides rational smoothness: period 2 is always smooth; otherwise the
/// element must avoid both patterns or be a twisted spiral. Negative
/// verdicts carry a pattern occurrence.
pub fn classify(w: &AffinePermutation) -> Verdict {
    if w.n() == 2 {
        return Verdict::RationallySmooth {
            reason: SmoothReason::SmallRank,
        };
    }
    let p3412: Pattern = "3412".parse().unwrap();
    let p4231: Pattern = "4231".parse().unwrap();
    let occ4231 = patterns::contains(w, &p4231);
    let occ3412 = patterns::contains(w, &p3412);
    match (occ3412, occ4231) {
        (None, None) => Verdict::RationallySmooth {
            reason: SmoothReason::Avoider,
        },
        (occ3412, occ4231) => {
            if let Some(params) = recognize_spiral(w) {
                return Verdict::RationallySmooth {
                    reason: SmoothReason::TwistedSpiral(params),
                };
            }
            let witness = match occ4231 {
                Some(occ) => PatternWitness {
                    pattern: "4231",
                    occurrence: occ,
                },
                None => PatternWitness {
                    pattern: "3412",
                    occurrence: occ3412.expect("at least one pattern present"),
                },
            };
            Verdict::NotRationallySmooth { witness }
        }
    }
}

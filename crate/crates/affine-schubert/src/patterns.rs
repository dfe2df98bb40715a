//! Classical pattern containment in affine permutations, plus the
//! occurrence-normalization procedures used by the witness constructions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::AffinePermutation;

/// A classical pattern: a permutation of `[1..k]`, `k <= 8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    perm: Vec<u8>,
}

impl Pattern {
    pub fn new(perm: Vec<u8>) -> Result<Self> {
        let k = perm.len();
        if k == 0 || k > 8 {
            return Err(Error::InvalidArgs(format!(
                "pattern length {k} outside [1, 8]"
            )));
        }
        let mut seen = vec![false; k];
        for &v in &perm {
            if v == 0 || v as usize > k || seen[v as usize - 1] {
                return Err(Error::InvalidArgs(format!(
                    "pattern {perm:?} is not a permutation of 1..={k}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Pattern { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.perm
    }

    pub fn inverse(&self) -> Pattern {
        let mut inv = vec![0u8; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Pattern { perm: inv }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Digit-string form, e.g. `"3412"`.
    fn from_str(s: &str) -> Result<Self> {
        let perm: Vec<u8> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad pattern digit {c:?}")))
            })
            .collect::<Result<_>>()?;
        Pattern::new(perm)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.perm {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A placement of a pattern: strictly increasing indices whose values have
/// exactly the pattern's relative order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub indices: Vec<i64>,
}

/// Checks that `indices` place `p` in `w`.
pub fn occurrence_matches(w: &AffinePermutation, p: &Pattern, indices: &[i64]) -> bool {
    if indices.len() != p.len() {
        return false;
    }
    if indices.windows(2).any(|c| c[0] >= c[1]) {
        return false;
    }
    let vals: Vec<i64> = indices.iter().map(|&i| w.apply(i)).collect();
    for a in 0..vals.len() {
        for b in a + 1..vals.len() {
            if (vals[a] < vals[b]) != (p.perm[a] < p.perm[b]) {
                return false;
            }
        }
    }
    true
}

/// Index horizon for the placement search: beyond
/// `last_pos_leq(max_window + k n) + k n` every value is too large to start
/// or continue a sum-of-indices-minimal occurrence. Widening this horizon
/// must never change the answer (regression-tested).
pub fn default_horizon(w: &AffinePermutation, k: usize) -> i64 {
    let n = w.n() as i64;
    let reach = w.max_window() + k as i64 * n;
    w.last_pos_leq(reach) + k as i64 * n
}

/// Searches for an occurrence of `p` in `w` with first index in `[1, n]`
/// (always legal by periodicity). Returns the lexicographically first
/// placement found by the depth-first search, or `None`.
pub fn contains(w: &AffinePermutation, p: &Pattern) -> Option<Occurrence> {
    contains_with_horizon(w, p, default_horizon(w, p.len()))
}

/// Placement search with an explicit index horizon.
pub fn contains_with_horizon(
    w: &AffinePermutation,
    p: &Pattern,
    horizon: i64,
) -> Option<Occurrence> {
    let k = p.len();
    let n = w.n() as i64;
    let mut pos = vec![0i64; k];
    let mut vals = vec![0i64; k];
    for i1 in 1..=n {
        pos[0] = i1;
        vals[0] = w.apply(i1);
        if place(w, p, 1, horizon, &mut pos, &mut vals) {
            return Some(Occurrence {
                indices: pos.clone(),
            });
        }
    }
    None
}

fn place(
    w: &AffinePermutation,
    p: &Pattern,
    m: usize,
    horizon: i64,
    pos: &mut [i64],
    vals: &mut [i64],
) -> bool {
    let k = p.len();
    if m == k {
        return true;
    }
    let pm = p.perm[m];
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for (&letter, &val) in p.perm.iter().zip(vals.iter()).take(m) {
        if letter < pm {
            lo = lo.max(val);
        } else {
            hi = hi.min(val);
        }
    }
    // leave room for the remaining pattern letters
    let mut jmax = horizon - (k - m - 1) as i64;
    if hi != i64::MAX {
        // value-pinned: past this position every value exceeds the bound
        jmax = jmax.min(w.last_pos_leq(hi - 1));
    }
    let mut j = pos[m - 1] + 1;
    while j <= jmax {
        let v = w.apply(j);
        if v > lo && v < hi {
            pos[m] = j;
            vals[m] = v;
            if place(w, p, m + 1, horizon, pos, vals) {
                return true;
            }
        }
        j += 1;
    }
    false
}

/// Negation of `contains`.
pub fn avoids(w: &AffinePermutation, p: &Pattern) -> bool {
    contains(w, p).is_none()
}

/// Roles of a 4231 occurrence listed in position order: the value at
/// `pos4` is the largest, then `pos2 < pos3` carry the middle values
/// (smaller first), and `pos1` carries the smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Roles4231 {
    pub pos4: i64,
    pub pos2: i64,
    pub pos3: i64,
    pub pos1: i64,
}

impl Roles4231 {
    fn from_occurrence(w: &AffinePermutation, occ: &Occurrence) -> Result<Self> {
        let p: Pattern = "4231".parse().unwrap();
        if !occurrence_matches(w, &p, &occ.indices) {
            return Err(Error::NotAnOccurrence);
        }
        Ok(Roles4231 {
            pos4: occ.indices[0],
            pos2: occ.indices[1],
            pos3: occ.indices[2],
            pos1: occ.indices[3],
        })
    }

    pub fn to_occurrence(self) -> Occurrence {
        Occurrence {
            indices: vec![self.pos4, self.pos2, self.pos3, self.pos1],
        }
    }
}

/// Squeezes a 4231 occurrence to the normalized form: the largest value is a
/// strict prefix maximum and sits as far right as possible, the occurrence
/// spans less than one period on each side, and the two in-between gaps
/// contain no interfering values.
pub fn normalize_4231(w: &AffinePermutation, occ: &Occurrence) -> Result<Occurrence> {
    let r = Roles4231::from_occurrence(w, occ)?;
    let n = w.n() as i64;
    let (mut i4, mut i2, mut i3, mut i1) = (r.pos4, r.pos2, r.pos3, r.pos1);

    // position of the maximum over (-inf, i4]
    fn prefix_argmax(w: &AffinePermutation, upto: i64) -> i64 {
        let n = w.n() as i64;
        let mut best = upto;
        let mut best_v = w.apply(upto);
        let floor = w.first_pos_geq(best_v); // left of this, all values smaller
        let mut j = upto - 1;
        while j >= floor - n {
            if w.apply(j) > best_v {
                best = j;
                best_v = w.apply(j);
            }
            j -= 1;
        }
        best
    }

    i4 = prefix_argmax(w, i4);
    let mut fuel = 10_000;
    loop {
        let before = (i4, i2, i3, i1);

        // pull the tail within one period of the head
        while i2 - i4 > n {
            i2 -= n;
            i3 -= n;
            i1 -= n;
        }
        // squeeze the middle and the tail leftward
        loop {
            let prev = (i2, i3, i1);
            if let Some(j) = (i4 + 1..=i2)
                .find(|&j| w.apply(i1) < w.apply(j) && w.apply(j) < w.apply(i3))
            {
                i2 = j;
            }
            if let Some(j) = (i2 + 1..=i3)
                .find(|&j| w.apply(i2) < w.apply(j) && w.apply(j) < w.apply(i4))
            {
                i3 = j;
            }
            if let Some(j) = (i3 + 1..=i1).find(|&j| w.apply(j) < w.apply(i2)) {
                i1 = j;
            }
            if (i2, i3, i1) == prev {
                break;
            }
        }
        while i1 - i3 > n {
            i1 -= n;
        }
        // slide the head right along prefix maxima below i2
        let wi4 = w.apply(i4);
        let mut best = i4;
        let mut best_v = wi4;
        for j in i4 + 1..i2 {
            let v = w.apply(j);
            if v >= best_v {
                best = j;
                best_v = v;
            }
        }
        i4 = best;

        if (i4, i2, i3, i1) == before {
            break;
        }
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::InvalidArgs(
                "4231 normalization did not reach a fixed point".into(),
            ));
        }
    }

    let out = Occurrence {
        indices: vec![i4, i2, i3, i1],
    };
    let p: Pattern = "4231".parse().unwrap();
    if !occurrence_matches(w, &p, &out.indices) {
        return Err(Error::NotAnOccurrence);
    }
    Ok(out)
}

/// A normalized 3412 occurrence. Position order is `i3 < i4 < i1 < i2`;
/// value order is `w(i1) < w(i2) < w(i3) < w(i4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalized3412 {
    pub i3: i64,
    pub i4: i64,
    pub i1: i64,
    pub i2: i64,
    /// No points between positions `i4` and `i1` (value band `(w(i2), w(i3))`).
    pub b_empty: bool,
    /// `i3 = i4 mod n`.
    pub same_class_34: bool,
    /// `i1 = i2 mod n`.
    pub same_class_12: bool,
}

impl Normalized3412 {
    pub fn indices(&self) -> [i64; 4] {
        [self.i3, self.i4, self.i1, self.i2]
    }

    /// Count of points strictly between `i4` and `i1` (the `45312_k`
    /// parameter when the middle band is nonempty).
    pub fn middle_count(&self) -> i64 {
        self.i1 - self.i4 - 1
    }
}

/// Runs the four-step squeeze on a 3412 occurrence until it stops changing.
/// Termination follows from the strict shrinking of the middle gap.
pub fn normalize_3412(w: &AffinePermutation, occ: &Occurrence) -> Result<Normalized3412> {
    let p: Pattern = "3412".parse().unwrap();
    if !occurrence_matches(w, &p, &occ.indices) {
        return Err(Error::NotAnOccurrence);
    }
    let (mut i3, mut i4, mut i1, mut i2) = (
        occ.indices[0],
        occ.indices[1],
        occ.indices[2],
        occ.indices[3],
    );

    let mut fuel = 10_000;
    loop {
        let before = (i3, i4, i1, i2);

        // (1) new head pair position: the largest m < i1 seeing some smaller
        // value above w(i2) on its left; the witness with the largest value
        // becomes the candidate third point.
        let w_i2 = w.apply(i2);
        let floor = w.first_pos_geq(w_i2 + 1);
        let mut new_i4 = None;
        let mut jstar = None;
        let mut m = i1 - 1;
        while m > floor {
            let wm = w.apply(m);
            if wm > w_i2 {
                let mut best: Option<i64> = None;
                let mut j = m - 1;
                while j >= floor {
                    let wj = w.apply(j);
                    if wj > w_i2 && wj < wm && best.is_none_or(|b| w.apply(b) < wj) {
                        best = Some(j);
                    }
                    j -= 1;
                }
                if let Some(j) = best {
                    new_i4 = Some(m);
                    jstar = Some(j);
                    break;
                }
            }
            m -= 1;
        }
        let (m4, j) = match (new_i4, jstar) {
            (Some(a), Some(b)) => (a, b),
            // the current occurrence itself witnesses step (1)
            _ => (i4, i3),
        };
        i4 = m4;

        // (2) the smallest m > i4 seeing some value between w(m) and w(j)
        // on its right; the witness with the smallest value feeds step (3).
        let w_j = w.apply(j);
        let limit = w.last_pos_leq(w_j - 1);
        let mut new_i1 = None;
        let mut kstar = None;
        let mut m = i4 + 1;
        while m < limit {
            let wm = w.apply(m);
            if wm < w_j {
                let mut best: Option<i64> = None;
                for kk in m + 1..=limit {
                    let wk = w.apply(kk);
                    if wk > wm && wk < w_j && best.is_none_or(|b| w.apply(b) > wk) {
                        best = Some(kk);
                    }
                }
                if let Some(kk) = best {
                    new_i1 = Some(m);
                    kstar = Some(kk);
                    break;
                }
            }
            m += 1;
        }
        let (m1, kk) = match (new_i1, kstar) {
            (Some(a), Some(b)) => (a, b),
            _ => (i1, i2),
        };
        i1 = m1;

        // (3) the closest third point left of i4
        let w_k = w.apply(kk);
        let w_i4 = w.apply(i4);
        let floor3 = w.first_pos_geq(w_k + 1);
        let mut m = i4 - 1;
        let mut found3 = None;
        while m >= floor3 {
            let wm = w.apply(m);
            if wm > w_k && wm < w_i4 {
                found3 = Some(m);
                break;
            }
            m -= 1;
        }
        i3 = found3.ok_or_else(|| {
            Error::InvalidArgs("3412 normalization lost its third point".into())
        })?;

        // (4) the closest second point right of i1
        let w_i3 = w.apply(i3);
        let w_i1 = w.apply(i1);
        let limit4 = w.last_pos_leq(w_i3 - 1);
        let mut found2 = None;
        for m in i1 + 1..=limit4 {
            let wm = w.apply(m);
            if wm > w_i1 && wm < w_i3 {
                found2 = Some(m);
                break;
            }
        }
        i2 = found2.ok_or_else(|| {
            Error::InvalidArgs("3412 normalization lost its second point".into())
        })?;

        if (i3, i4, i1, i2) == before {
            break;
        }
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::InvalidArgs(
                "3412 normalization did not reach a fixed point".into(),
            ));
        }
    }

    if !occurrence_matches(w, &p, &[i3, i4, i1, i2]) {
        return Err(Error::NotAnOccurrence);
    }
    let n = w.n() as i64;
    let b_empty = !((i4 + 1)..i1)
        .any(|jj| w.apply(jj) > w.apply(i2) && w.apply(jj) < w.apply(i3));
    Ok(Normalized3412 {
        i3,
        i4,
        i1,
        i2,
        b_empty,
        same_class_34: (i4 - i3).rem_euclid(n) == 0,
        same_class_12: (i2 - i1).rem_euclid(n) == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn random_element(n: usize, max_word: usize, rng: &mut StdRng) -> AffinePermutation {
        let steps = rng.gen_range(0..=max_word);
        let mut w = AffinePermutation::identity(n);
        for _ in 0..steps {
            w = w.right_mul_gen(rng.gen_range(0..n));
        }
        w
    }

    /// Exhaustive placement search over a wide window, independent of the
    /// pruned DFS.
    fn brute_contains(w: &AffinePermutation, p: &Pattern, reach: i64) -> bool {
        let n = w.n() as i64;
        let k = p.len();
        fn rec(
            w: &AffinePermutation,
            p: &Pattern,
            m: usize,
            start: i64,
            reach: i64,
            picked: &mut Vec<i64>,
        ) -> bool {
            if m == p.len() {
                return occurrence_matches(w, p, picked);
            }
            for j in start..=reach {
                picked.push(j);
                if occurrence_matches_prefix(w, p, picked) && rec(w, p, m + 1, j + 1, reach, picked)
                {
                    return true;
                }
                picked.pop();
            }
            false
        }
        fn occurrence_matches_prefix(w: &AffinePermutation, p: &Pattern, picked: &[i64]) -> bool {
            let vals: Vec<i64> = picked.iter().map(|&i| w.apply(i)).collect();
            for a in 0..vals.len() {
                for b in a + 1..vals.len() {
                    if (vals[a] < vals[b]) != (p.letters()[a] < p.letters()[b]) {
                        return false;
                    }
                }
            }
            true
        }
        let _ = k;
        (1..=n).any(|i1| {
            let mut picked = vec![i1];
            rec(w, p, 1, i1 + 1, reach, &mut picked)
        })
    }

    #[test]
    fn pattern_validation() {
        assert!(Pattern::new(vec![3, 4, 1, 2]).is_ok());
        assert!(Pattern::new(vec![1, 1, 2]).is_err());
        assert!(Pattern::new(vec![]).is_err());
        assert!(Pattern::new(vec![1, 2, 3, 4, 5, 6, 7, 8, 9]).is_err());
        assert_eq!(pat("3412").inverse(), pat("3412"));
        assert_eq!(pat("4231").inverse(), pat("4231"));
        assert_eq!(pat("132").inverse(), pat("132"));
        assert_eq!(pat("312").inverse(), pat("231"));
    }

    #[test]
    fn worked_examples_in_s6() {
        let w = perm("8,1,3,5,4,0");
        // 8, 1, 5, 0 has the relative order of 4231
        assert!(occurrence_matches(&w, &pat("4231"), &[1, 2, 4, 6]));
        let occ = contains(&w, &pat("4231")).expect("contains 4231");
        assert!(occurrence_matches(&w, &pat("4231"), &occ.indices));
        // w avoids 3412
        assert!(avoids(&w, &pat("3412")));
        // 2, 8, 6 is an occurrence of 132 using out-of-window indices
        assert!(occurrence_matches(&w, &pat("132"), &[-5, 1, 12]));
        let occ = contains(&w, &pat("132")).expect("contains 132");
        assert!(occurrence_matches(&w, &pat("132"), &occ.indices));
        assert!(occ.indices[0] >= 1 && occ.indices[0] <= 6);
    }

    #[test]
    fn identity_avoids_descent_patterns() {
        let id = AffinePermutation::identity(4);
        for p in ["21", "321", "132", "3412", "4231"] {
            assert!(avoids(&id, &pat(p)), "pattern {p}");
        }
        // and contains increasing patterns
        assert!(contains(&id, &pat("123")).is_some());
    }

    #[test]
    fn contains_agrees_with_brute_force() {
        let mut rng = StdRng::seed_from_u64(101);
        let patterns = ["321", "132", "3412", "4231", "2143"];
        for _ in 0..60 {
            let w = random_element(3, 8, &mut rng);
            for ps in patterns {
                let p = pat(ps);
                let reach = default_horizon(&w, p.len()) + 6;
                assert_eq!(
                    contains(&w, &p).is_some(),
                    brute_contains(&w, &p, reach),
                    "w={w} p={ps}"
                );
            }
        }
    }

    #[test]
    fn doubling_the_horizon_is_stable() {
        let mut rng = StdRng::seed_from_u64(103);
        for _ in 0..120 {
            let n = rng.gen_range(3..=5);
            let w = random_element(n, 14, &mut rng);
            for ps in ["3412", "4231"] {
                let p = pat(ps);
                let h = default_horizon(&w, p.len());
                assert_eq!(
                    contains_with_horizon(&w, &p, h).is_some(),
                    contains_with_horizon(&w, &p, 2 * h).is_some(),
                    "w={w} p={ps}"
                );
            }
        }
    }

    #[test]
    fn doubling_the_horizon_is_stable_exhaustively() {
        let levels = crate::enumerate::elements_up_to_length(3, 10, 1 << 20).unwrap();
        for w in levels.into_iter().flatten() {
            for ps in ["3412", "4231"] {
                let p = pat(ps);
                let h = default_horizon(&w, p.len());
                assert_eq!(
                    contains_with_horizon(&w, &p, h).is_some(),
                    contains_with_horizon(&w, &p, 2 * h).is_some(),
                    "w={w} p={ps}"
                );
            }
        }
    }

    #[test]
    fn occurrences_shift_by_the_period() {
        let mut rng = StdRng::seed_from_u64(107);
        for _ in 0..40 {
            let w = random_element(4, 12, &mut rng);
            if let Some(occ) = contains(&w, &pat("3412")) {
                let shifted: Vec<i64> = occ.indices.iter().map(|i| i + 4).collect();
                assert!(occurrence_matches(&w, &pat("3412"), &shifted));
            }
        }
    }

    #[test]
    fn avoidance_transports_along_inverse() {
        let mut rng = StdRng::seed_from_u64(109);
        for _ in 0..80 {
            let w = random_element(4, 12, &mut rng);
            for ps in ["3412", "4231", "132", "312"] {
                let p = pat(ps);
                assert_eq!(
                    avoids(&w, &p),
                    avoids(&w.inverse(), &p.inverse()),
                    "w={w} p={ps}"
                );
            }
        }
    }

    #[test]
    fn parabolic_occurrences_fit_in_one_window() {
        // inside a maximal parabolic, containment implies an occurrence
        // spanning less than one period
        let mut rng = StdRng::seed_from_u64(113);
        for _ in 0..60 {
            let n = 4usize;
            let g = rng.gen_range(0..n);
            let letters: Vec<usize> = (0..rng.gen_range(0..12))
                .map(|_| {
                    let mut l = rng.gen_range(0..n);
                    while l == g {
                        l = rng.gen_range(0..n);
                    }
                    l
                })
                .collect();
            let w = crate::perm::Word::new(n, letters).unwrap().evaluate();
            for ps in ["3412", "4231"] {
                let p = pat(ps);
                if let Some(_occ) = contains(&w, &p) {
                    let found = (1..=n as i64).any(|start| {
                        let idx: Vec<i64> = (start..start + n as i64).collect();
                        // brute force inside the window [start, start+n)
                        window_occurrence(&w, &p, &idx)
                    });
                    assert!(found, "w={w} p={ps}");
                }
            }
        }
    }

    fn window_occurrence(w: &AffinePermutation, p: &Pattern, positions: &[i64]) -> bool {
        let k = p.len();
        let m = positions.len();
        if m < k {
            return false;
        }
        // choose k of the window positions
        fn rec(
            w: &AffinePermutation,
            p: &Pattern,
            positions: &[i64],
            start: usize,
            picked: &mut Vec<i64>,
        ) -> bool {
            if picked.len() == p.len() {
                return occurrence_matches(w, p, picked);
            }
            for t in start..positions.len() {
                picked.push(positions[t]);
                if rec(w, p, positions, t + 1, picked) {
                    return true;
                }
                picked.pop();
            }
            false
        }
        rec(w, p, positions, 0, &mut Vec::new())
    }

    #[test]
    fn normalize_4231_is_idempotent_and_valid() {
        let mut rng = StdRng::seed_from_u64(127);
        let p = pat("4231");
        let mut seen = 0;
        for _ in 0..400 {
            let w = random_element(4, 20, &mut rng);
            if let Some(occ) = contains(&w, &p) {
                seen += 1;
                let norm = normalize_4231(&w, &occ).unwrap();
                assert!(occurrence_matches(&w, &p, &norm.indices), "w={w}");
                let again = normalize_4231(&w, &norm).unwrap();
                assert_eq!(norm, again, "w={w}");
                let (i4, i2, i3, i1) =
                    (norm.indices[0], norm.indices[1], norm.indices[2], norm.indices[3]);
                // stated postconditions
                assert!(i2 - i4 < 4, "w={w}");
                assert!(i1 - i3 < 4, "w={w}");
                let w4 = w.apply(i4);
                let floor = w.first_pos_geq(w4);
                assert!((floor - 8..i4).all(|j| w.apply(j) < w4), "w={w}");
                assert!(
                    !(i2 + 1..i3).any(|j| w.apply(i2) < w.apply(j) && w.apply(j) < w4),
                    "w={w}"
                );
                assert!(!(i3 + 1..i1).any(|j| w.apply(j) < w.apply(i2)), "w={w}");
            }
        }
        assert!(seen >= 20, "sampler found too few 4231 occurrences: {seen}");
    }

    #[test]
    fn normalize_4231_fixture() {
        let w = perm("8,1,3,5,4,0");
        let occ = Occurrence {
            indices: vec![1, 2, 4, 6],
        };
        let norm = normalize_4231(&w, &occ).unwrap();
        assert!(occurrence_matches(&w, &pat("4231"), &norm.indices));
        // brute-force: the normalized occurrence must satisfy every stated
        // postcondition, and be reachable (positions <= the original's)
        assert!(norm.indices[0] >= 1 - 6);
        assert!(normalize_4231(&w, &norm).unwrap() == norm);
    }

    #[test]
    fn normalize_4231_rejects_non_occurrences() {
        let w = perm("8,1,3,5,4,0");
        let bogus = Occurrence {
            indices: vec![1, 2, 3, 4],
        };
        assert!(matches!(
            normalize_4231(&w, &bogus),
            Err(Error::NotAnOccurrence)
        ));
    }

    #[test]
    fn normalize_3412_on_45312_pattern() {
        // [4,5,3,1,2] is a 45312_1: the normalized occurrence keeps its
        // middle band nonempty
        let w = perm("4,5,3,1,2");
        let occ = contains(&w, &pat("3412")).unwrap();
        let norm = normalize_3412(&w, &occ).unwrap();
        assert_eq!((norm.i3, norm.i4, norm.i1, norm.i2), (1, 2, 4, 5));
        assert!(!norm.b_empty);
        assert_eq!(norm.middle_count(), 1);
        assert!(!norm.same_class_34);
        assert!(!norm.same_class_12);
        verify_dotted_regions_empty(&w, &norm);
    }

    /// The four forbidden regions of a normalized occurrence contain no
    /// points of `w`.
    pub(crate) fn verify_dotted_regions_empty(w: &AffinePermutation, norm: &Normalized3412) {
        let (i3, i4, i1, i2) = (norm.i3, norm.i4, norm.i1, norm.i2);
        let (w1, w2, w3, w4) = (
            w.apply(i1),
            w.apply(i2),
            w.apply(i3),
            w.apply(i4),
        );
        for j in i3 + 1..i4 {
            let v = w.apply(j);
            assert!(!(v > w2 && v < w4), "point in left forbidden band, w={w}");
        }
        for j in i4 + 1..i1 {
            let v = w.apply(j);
            assert!(v <= w3, "point above middle band, w={w}");
            assert!(v >= w2, "point below middle band, w={w}");
        }
        for j in i1 + 1..i2 {
            let v = w.apply(j);
            assert!(!(v > w1 && v < w3), "point in right forbidden band, w={w}");
        }
    }

    #[test]
    fn normalize_3412_is_idempotent_on_random_occurrences() {
        let mut rng = StdRng::seed_from_u64(131);
        let p = pat("3412");
        let mut seen = 0;
        for _ in 0..300 {
            let w = random_element(4, 16, &mut rng);
            if let Some(occ) = contains(&w, &p) {
                seen += 1;
                let norm = normalize_3412(&w, &occ).unwrap();
                assert!(
                    occurrence_matches(&w, &p, &[norm.i3, norm.i4, norm.i1, norm.i2]),
                    "w={w}"
                );
                let occ2 = Occurrence {
                    indices: vec![norm.i3, norm.i4, norm.i1, norm.i2],
                };
                let norm2 = normalize_3412(&w, &occ2).unwrap();
                assert_eq!(norm, norm2, "w={w}");
                if norm.b_empty {
                    assert_eq!(norm.i1, norm.i4 + 1, "w={w}");
                }
                verify_dotted_regions_empty(&w, &norm);
            }
        }
        assert!(seen > 30, "sampler found too few 3412 occurrences: {seen}");
    }
}

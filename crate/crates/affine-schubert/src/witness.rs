//! Constructive evidence of non-palindromicity: the coatom-counting graph
//! and rank-1 coefficient gap for 4231, and the catalog of comparison
//! elements with oversized reflection sets for 3412.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bruhat;
use crate::error::{Error, Result};
use crate::patterns::{self, Normalized3412, Occurrence};
use crate::perm::{AffinePermutation, Transposition};
use crate::smoothness;

/// Indices of the left-to-right maxima of a finite sequence; the first
/// element always counts.
pub fn left_to_right_maxima(seq: &[i64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = i64::MIN;
    for (i, &v) in seq.iter().enumerate() {
        if v > best {
            out.push(i);
            best = v;
        }
    }
    out
}

/// Indices of the right-to-left maxima, in position order; the last element
/// always counts.
pub fn right_to_left_maxima(seq: &[i64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = i64::MIN;
    for (i, &v) in seq.iter().enumerate().rev() {
        if v > best {
            out.push(i);
            best = v;
        }
    }
    out.reverse();
    out
}

/// The coatom graph rooted at a strict prefix maximum `beta`: vertices are
/// the positions at or after `beta` carrying values up to the window's last
/// left-to-right maximum, and edges are the covering transpositions with
/// left endpoint in the window starting at `beta`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaGraph {
    pub beta: i64,
    /// Positions of the left-to-right maxima of the window at `beta`.
    pub maxima: Vec<i64>,
    pub vertices: Vec<i64>,
    pub edges: Vec<(i64, i64)>,
    /// Edges of the induced block subgraphs, one list per maximum.
    pub block_edges: Vec<Vec<(i64, i64)>>,
}

impl BetaGraph {
    pub fn block_edge_count(&self) -> usize {
        self.block_edges.iter().map(|b| b.len()).sum()
    }
}

/// Builds the coatom graph at `beta`; every value strictly left of `beta`
/// must be smaller than the value at `beta`.
pub fn build_beta_graph(w: &AffinePermutation, beta: i64) -> Result<BetaGraph> {
    let n = w.n() as i64;
    let w_beta = w.apply(beta);
    if (beta - n..beta).any(|l| w.apply(l) > w_beta) {
        return Err(Error::BadBeta(beta));
    }
    let window: Vec<i64> = (beta..beta + n).map(|p| w.apply(p)).collect();
    let maxima: Vec<i64> = left_to_right_maxima(&window)
        .into_iter()
        .map(|t| beta + t as i64)
        .collect();
    let top = w.apply(*maxima.last().unwrap());
    let vertices: Vec<i64> = (beta..=w.last_pos_leq(top))
        .filter(|&j| w.apply(j) <= top)
        .collect();
    let vertex_set: HashSet<i64> = vertices.iter().copied().collect();

    let mut edges = Vec::new();
    for (t, _) in bruhat::covers_down(w) {
        // the unique translate with left endpoint in [beta, beta + n)
        let s = (beta - t.i()).div_euclid(n) + i64::from((beta - t.i()).rem_euclid(n) != 0);
        let (a, b) = (t.i() + s * n, t.j() + s * n);
        debug_assert!(a >= beta && a < beta + n);
        if vertex_set.contains(&a) && vertex_set.contains(&b) {
            edges.push((a, b));
        }
    }
    edges.sort_unstable();

    let r = maxima.len();
    let mut block_edges = vec![Vec::new(); r];
    for &(a, b) in &edges {
        for (idx, &am) in maxima.iter().enumerate() {
            let upper = if idx + 1 < r {
                maxima[idx + 1]
            } else {
                beta + n
            };
            if a >= am && a < upper && b >= am && b < upper {
                block_edges[idx].push((a, b));
            }
        }
    }
    Ok(BetaGraph {
        beta,
        maxima,
        vertices,
        edges,
        block_edges,
    })
}

/// An increasing position sequence from `i` to `j` whose consecutive swaps
/// are all covering relations; requires `w(i) > w(j)` and the pair to fit in
/// one period by position or by value.
pub fn chain(w: &AffinePermutation, i: i64, j: i64) -> Result<Vec<i64>> {
    let n = w.n() as i64;
    let (wi, wj) = (w.apply(i), w.apply(j));
    if i >= j || wi <= wj || (j - i >= n && wi - wj >= n) {
        return Err(Error::PreconditionViolated(i, j));
    }
    let by_position = j - i < n;
    let mut seq = vec![i];
    let mut cur = i;
    while cur != j {
        let wcur = w.apply(cur);
        let mut pick: Option<i64> = None;
        for d in cur + 1..=j {
            let wd = w.apply(d);
            if wd < wcur && wd >= wj {
                let better = match pick {
                    None => true,
                    Some(prev) => {
                        if by_position {
                            d - cur < prev - cur
                        } else {
                            wcur - wd < wcur - w.apply(prev)
                        }
                    }
                };
                if better {
                    pick = Some(d);
                }
                if by_position {
                    break; // the first hit is the closest by position
                }
            }
        }
        let d = pick.expect("w(j) itself always qualifies");
        seq.push(d);
        cur = d;
    }
    Ok(seq)
}

/// Rank-1 coefficient evidence for a 4231-containing element: the support
/// (the `q` coefficient) is strictly below the coatom count (the top-minus-
/// one coefficient). The graph that certifies the count is attached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientGap {
    pub support: usize,
    pub coatoms: usize,
    pub graph: BetaGraph,
}

impl CoefficientGap {
    pub fn holds(&self) -> bool {
        self.support < self.coatoms
    }
}

/// Builds the coefficient-gap report for a 4231 occurrence: normalizes the
/// occurrence, roots the graph at its largest value, and counts.
pub fn witness_4231(w: &AffinePermutation, occ: &Occurrence) -> Result<CoefficientGap> {
    let norm = patterns::normalize_4231(w, occ)?;
    let beta = norm.indices[0];
    let graph = build_beta_graph(w, beta)?;
    Ok(CoefficientGap {
        support: bruhat::support_size(w),
        coatoms: bruhat::coatom_count(w),
        graph,
    })
}

/// A comparison element `x < w` whose reflection set strictly exceeds the
/// length gap, refuting palindromicity. Verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub x: AffinePermutation,
    pub length_gap: usize,
    pub r_count: usize,
    pub case: String,
}

impl WitnessCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.x.window(),
            "length_gap": self.length_gap,
            "r_count": self.r_count,
            "case": self.case,
        })
    }
}

/// Applies right multiplications by `t_{a,b}` pairs in order; `None` if any
/// pair is degenerate (congruent indices).
fn apply_transpositions(
    w: &AffinePermutation,
    pairs: &[(i64, i64)],
) -> Option<AffinePermutation> {
    let mut x = w.clone();
    for &(a, b) in pairs {
        let t = Transposition::new(w.n(), a, b).ok()?;
        x = x.right_mul_t(&t).ok()?;
    }
    Some(x)
}

/// Checks a candidate and packages it when it certifies.
fn try_certificate(
    w: &AffinePermutation,
    x: AffinePermutation,
    case: &str,
) -> Result<Option<WitnessCertificate>> {
    if x == *w || !bruhat::leq(&x, w)? {
        return Ok(None);
    }
    let length_gap = w.length() - x.length();
    let r_count = bruhat::reflection_set(&x, w)?.len();
    if r_count > length_gap {
        Ok(Some(WitnessCertificate {
            x,
            length_gap,
            r_count,
            case: case.to_string(),
        }))
    } else {
        Ok(None)
    }
}

/// Half-turn rotation of the plane picture: conjugation by `i -> 1 - i`.
/// It is a Bruhat-order automorphism exchanging the two mirror-image
/// witness configurations.
fn rotate_half_turn(w: &AffinePermutation) -> AffinePermutation {
    let n = w.n();
    let window: Vec<i64> = (1..=n as i64).map(|p| 1 - w.apply(1 - p)).collect();
    AffinePermutation::from_window(n, window).expect("rotation preserves validity")
}

/// Catalog candidates for a normalized 3412 occurrence, tagged by case.
fn catalog_candidates(
    w: &AffinePermutation,
    norm: &Normalized3412,
) -> Vec<(String, AffinePermutation)> {
    let n = w.n() as i64;
    let (i3, i4, i1, i2) = (norm.i3, norm.i4, norm.i1, norm.i2);
    let mut out: Vec<(String, AffinePermutation)> = Vec::new();
    let mut push = |tag: &str, pairs: &[(i64, i64)]| {
        if let Some(x) = apply_transpositions(w, pairs) {
            out.push((tag.to_string(), x));
        }
    };

    if !norm.b_empty {
        if !norm.same_class_34 && !norm.same_class_12 {
            push("overlap-distinct", &[(i3, i2), (i4, i2), (i3, i1)]);
        } else if norm.same_class_34 {
            push("overlap-head-class", &[(i4, i1), (i1, i2), (i2, i4 + n)]);
        } else {
            push("overlap-tail-class", &[(i4, i1), (i3, i4), (i1, i3 + n)]);
        }
    } else if norm.same_class_34 && norm.same_class_12 {
        // the two-residue terminal configuration: classify the in-between
        // columns by value band
        let w1 = w.apply(i1);
        let cols: Vec<i64> = (i1 + 1 - n..i4).collect();
        let e_pts: Vec<i64> = cols
            .iter()
            .copied()
            .filter(|&j| w.apply(j) > w1 && w.apply(j) < w1 + n)
            .collect();
        let d_pts: Vec<i64> = cols
            .iter()
            .copied()
            .filter(|&j| w.apply(j) < w1)
            .collect();
        let f_pts: Vec<i64> = cols
            .iter()
            .copied()
            .filter(|&j| w.apply(j) > w1 + n)
            .collect();
        if !e_pts.is_empty() {
            push("band-middle", &[(i4 - n, i1), (i4, i1)]);
        } else if !d_pts.is_empty() && !f_pts.is_empty() {
            push(
                "band-low-high",
                &[
                    (i4 - n - 1, i1 + 1),
                    (i4 - 1, i1 + 1),
                    (i4 - n, i1),
                    (i4, i1),
                ],
            );
        } else if !d_pts.is_empty() {
            // an ascent in the low band feeds the overlap construction
            if let Some((a, b)) = lowest_band_ascent(w, i1, i4 + n) {
                push("band-low-ascent", &[(i4, a), (a, b), (b, i4 + n)]);
            }
        } else if !f_pts.is_empty() {
            // mirror image of the low-band ascent: rotate, construct there,
            // and transport the result back
            let wr = rotate_half_turn(w);
            let occ_r = Occurrence {
                indices: vec![1 - i2, 1 - i1, 1 - i4, 1 - i3],
            };
            if let Ok(norm_r) = patterns::normalize_3412(&wr, &occ_r) {
                let (j3, j4, j1) = (norm_r.i3, norm_r.i4, norm_r.i1);
                let _ = j3;
                if let Some((a, b)) = lowest_band_ascent(&wr, j1, j4 + n) {
                    if let Some(xr) =
                        apply_transpositions(&wr, &[(j4, a), (a, b), (b, j4 + n)])
                    {
                        out.push(("band-high-ascent".to_string(), rotate_half_turn(&xr)));
                    }
                }
            }
        }
    }
    out
}

/// Leftmost ascending pair strictly between `lo` and `hi`.
fn lowest_band_ascent(w: &AffinePermutation, lo: i64, hi: i64) -> Option<(i64, i64)> {
    for a in lo + 1..hi - 1 {
        for b in a + 1..hi {
            if w.apply(a) < w.apply(b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Bounded fallback: breadth-first search over length-decreasing products of
/// at most four transpositions with endpoints near the occurrence.
fn fallback_search(
    w: &AffinePermutation,
    norm: &Normalized3412,
) -> Result<Option<WitnessCertificate>> {
    let n = w.n() as i64;
    let lo = norm.i3 - 2 * n;
    let hi = norm.i2 + 2 * n;
    let mut ts = Vec::new();
    for a in lo..hi {
        for b in a + 1..=hi {
            if (b - a).rem_euclid(n) != 0 {
                ts.push(Transposition::new(w.n(), a, b).expect("distinct classes"));
            }
        }
    }
    let mut frontier = vec![w.clone()];
    let mut seen: HashSet<AffinePermutation> = frontier.iter().cloned().collect();
    const NODE_CAP: usize = 100_000;
    for _depth in 0..4 {
        let mut next = Vec::new();
        for y in &frontier {
            for t in &ts {
                // keep only length-decreasing steps
                let (a, b) = (t.i(), t.j());
                if y.apply(a) <= y.apply(b) {
                    continue;
                }
                let z = y.right_mul_t(t).expect("same period");
                if seen.insert(z.clone()) {
                    if let Some(cert) = try_certificate(w, z.clone(), "fallback-search")? {
                        return Ok(Some(cert));
                    }
                    next.push(z);
                }
                if seen.len() > NODE_CAP {
                    return Ok(None);
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Produces a verified witness certificate for a 3412-containing,
/// 4231-avoiding element that is not a twisted spiral. Candidates come from
/// the case catalog; anything unverified falls back to a bounded search.
pub fn witness_3412(
    w: &AffinePermutation,
    norm: &Normalized3412,
) -> Result<WitnessCertificate> {
    if smoothness::recognize_spiral(w).is_some() {
        return Err(Error::SpiralInput);
    }
    for (tag, x) in catalog_candidates(w, norm) {
        if let Some(cert) = try_certificate(w, x, &tag)? {
            return Ok(cert);
        }
    }
    fallback_search(w, norm)?.ok_or(Error::WitnessNotFound)
}

/// Machine-checkable evidence that an element is not rationally smooth.
#[derive(Debug, Clone)]
pub enum Evidence {
    /// The `q` coefficient falls short of the coatom count.
    CoefficientGap(CoefficientGap),
    /// An explicit comparison element with an oversized reflection set.
    Reflections(WitnessCertificate),
}

impl Evidence {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Evidence::CoefficientGap(g) => serde_json::json!({
                "kind": "coefficient_gap",
                "support": g.support,
                "coatoms": g.coatoms,
                "beta": g.graph.beta,
                "edges": g.graph.edges,
            }),
            Evidence::Reflections(c) => {
                let mut j = c.to_json();
                j["kind"] = serde_json::json!("reflection_overcount");
                j
            }
        }
    }
}

/// Builds and verifies non-smoothness evidence for `w`, or returns `None`
/// when `w` is rationally smooth. 4231-containing elements get the
/// coefficient gap; 3412-only elements get a reflection certificate, except
/// that the no-overlap mixed-residue configuration is covered by the
/// coefficient gap as well.
pub fn certify(w: &AffinePermutation) -> Result<Option<Evidence>> {
    let verdict = smoothness::classify(w);
    let witness = match verdict {
        smoothness::Verdict::RationallySmooth { .. } => return Ok(None),
        smoothness::Verdict::NotRationallySmooth { witness } => witness,
    };
    if witness.pattern == "4231" {
        let gap = witness_4231(w, &witness.occurrence)?;
        if gap.holds() {
            return Ok(Some(Evidence::CoefficientGap(gap)));
        }
        return Err(Error::WitnessNotFound);
    }
    let norm = patterns::normalize_3412(w, &witness.occurrence)?;
    if norm.b_empty && !(norm.same_class_34 && norm.same_class_12) {
        // rank-1 failure via the coatom graph
        let support = bruhat::support_size(w);
        let coatoms = bruhat::coatom_count(w);
        if support < coatoms {
            let beta = prefix_argmax(w, norm.i3);
            let graph = build_beta_graph(w, beta)?;
            return Ok(Some(Evidence::CoefficientGap(CoefficientGap {
                support,
                coatoms,
                graph,
            })));
        }
    }
    witness_3412(w, &norm).map(|c| Some(Evidence::Reflections(c)))
}

/// Position of the maximum value over `(-inf, upto]`.
fn prefix_argmax(w: &AffinePermutation, upto: i64) -> i64 {
    let n = w.n() as i64;
    let mut best = upto;
    for l in upto - n + 1..upto {
        if w.apply(l) > w.apply(best) {
            best = l;
        }
    }
    // the window max is a strict prefix max only if nothing left beats it;
    // walk left while needed
    loop {
        let improved = (best - n..best).find(|&l| w.apply(l) > w.apply(best));
        match improved {
            Some(l) => best = l,
            None => return best,
        }
    }
}

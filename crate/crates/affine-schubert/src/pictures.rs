//! Plane pictures of Bruhat pairs: dot/cross diagrams with the positive
//! rank-difference region shaded, swap rectangles, index deletion, pair
//! flattening, and SVG export.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bruhat::{self, diff, diff_prime};
use crate::error::{Error, Result};
use crate::perm::AffinePermutation;

/// Inclusive column range of a picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Viewport {
    pub lo: i64,
    pub hi: i64,
}

impl Viewport {
    pub fn new(lo: i64, hi: i64, n: usize) -> Result<Self> {
        if lo > hi || (hi - lo + 1) < n as i64 {
            return Err(Error::InvalidArgs(format!(
                "viewport [{lo}, {hi}] must cover at least one window of {n}"
            )));
        }
        Ok(Viewport { lo, hi })
    }

    /// One window of margin on each side of the base window.
    pub fn default_for(n: usize) -> Self {
        Viewport {
            lo: 1 - n as i64,
            hi: 2 * n as i64,
        }
    }
}

/// An inclusive lattice box of cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub col_lo: i64,
    pub col_hi: i64,
    pub row_lo: i64,
    pub row_hi: i64,
}

impl Rect {
    pub fn contains(&self, col: i64, row: i64) -> bool {
        col >= self.col_lo && col <= self.col_hi && row >= self.row_lo && row <= self.row_hi
    }
}

/// Swap rectangles: right multiplication by `t_{p,q}` raises the rank
/// difference exactly on the translated boxes
/// `[p + kn, q - 1 + kn] x [x_p + 1 + kn, x_q + kn]`.
pub fn rectangles(
    x: &AffinePermutation,
    p: i64,
    q: i64,
    k_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<Rect>> {
    if p >= q || x.apply(p) >= x.apply(q) {
        return Err(Error::InvalidArgs(format!(
            "rectangles need p < q and x(p) < x(q), got p={p} q={q}"
        )));
    }
    let n = x.n() as i64;
    let (xp, xq) = (x.apply(p), x.apply(q));
    Ok(k_range
        .map(|k| Rect {
            col_lo: p + k * n,
            col_hi: q - 1 + k * n,
            row_lo: xp + 1 + k * n,
            row_hi: xq + k * n,
        })
        .collect())
}

/// Multiplicity of the point `(col, row)` in the periodic family of swap
/// rectangles of `t_{p,q}`.
pub fn rectangle_multiplicity(x: &AffinePermutation, p: i64, q: i64, col: i64, row: i64) -> i64 {
    let n = x.n() as i64;
    let (xp, xq) = (x.apply(p), x.apply(q));
    // solve for the k making each constraint hold, then count the overlap
    let k_col_lo = (col - (q - 1) + n - 1).div_euclid(n); // col <= q-1+kn
    let k_col_hi = (col - p).div_euclid(n); // col >= p+kn
    let k_row_lo = (row - xq + n - 1).div_euclid(n);
    let k_row_hi = (row - (xp + 1)).div_euclid(n);
    let lo = k_col_lo.max(k_row_lo);
    let hi = k_col_hi.min(k_row_hi);
    (hi - lo + 1).max(0)
}

/// The shading criterion: `t_{p,q}` stays below `w` from `x` exactly when
/// the rank difference covers every rectangle multiplicity.
pub fn shading_admits(
    x: &AffinePermutation,
    w: &AffinePermutation,
    p: i64,
    q: i64,
) -> Result<bool> {
    if p >= q || x.apply(p) >= x.apply(q) {
        return Err(Error::InvalidArgs(format!(
            "shading needs p < q and x(p) < x(q), got p={p} q={q}"
        )));
    }
    let base = &rectangles(x, p, q, 0..=0)?[0];
    for col in base.col_lo..=base.col_hi {
        for row in base.row_lo..=base.row_hi {
            let m = rectangle_multiplicity(x, p, q, col, row);
            if diff(x, w, col, row) < m {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Deletes the position class of `i` and the value class of `w(i)`,
/// compresses the remaining rows and columns, and shifts values by the
/// unique constant restoring the window-sum invariant. The result has
/// period `n - 1` and does not depend on the representative `i`.
pub fn delete_index(w: &AffinePermutation, i: i64) -> Result<AffinePermutation> {
    let n = w.n() as i64;
    if n < 3 {
        return Err(Error::InvalidArgs(
            "deletion needs period at least 3".into(),
        ));
    }
    let wi = w.apply(i);
    // deleted values <= v anchored at the class of w(i)
    let cnt = |v: i64| (v - wi).div_euclid(n) + 1;
    let mut window: Vec<i64> = (i + 1..i + n).map(|j| w.apply(j) - cnt(w.apply(j))).collect();
    let m = n - 1;
    let target = m * (m + 1) / 2;
    let sum: i64 = window.iter().sum();
    let delta = target - sum;
    if delta.rem_euclid(m) != 0 {
        return Err(Error::InvalidArgs(format!(
            "deletion at {i} left an unnormalizable window"
        )));
    }
    let shift = delta / m;
    for v in &mut window {
        *v += shift;
    }
    AffinePermutation::from_window(m as usize, window)
}

/// True when no index can be removed from the pair without disturbing its
/// length gap or reflection set.
pub fn is_flattened(x: &AffinePermutation, w: &AffinePermutation) -> bool {
    flattenable_index(x, w).is_none()
}

fn flattenable_index(x: &AffinePermutation, w: &AffinePermutation) -> Option<i64> {
    let n = x.n() as i64;
    if n < 3 {
        return None;
    }
    (1..=n).find(|&i| {
        let v = w.apply(i);
        x.apply(i) == v
            && diff(x, w, i, v) == 0
            && diff_prime(x, w, i, v) == 0
            && ((diff(x, w, i, v + 1) == 0 && diff(x, w, i - 1, v) == 0)
                || (diff_prime(x, w, i, v - 1) == 0 && diff_prime(x, w, i + 1, v) == 0))
    })
}

/// Iteratively removes removable indices (smallest residue first) from a
/// comparable pair; each deletion preserves the length gap and the
/// reflection-set size.
pub fn flatten_pair(
    x: &AffinePermutation,
    w: &AffinePermutation,
) -> Result<(AffinePermutation, AffinePermutation)> {
    if !bruhat::leq(x, w)? {
        return Err(Error::NotComparable);
    }
    let mut x = x.clone();
    let mut w = w.clone();
    while let Some(i) = flattenable_index(&x, &w) {
        x = delete_index(&x, i)?;
        w = delete_index(&w, i)?;
    }
    Ok((x, w))
}

/// Plane model of a comparable pair: dots for `w`, crosses for `x`, and the
/// cells where the rank difference is positive, with its value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BruhatPicture {
    pub n: usize,
    pub viewport: Viewport,
    pub w_points: Vec<(i64, i64)>,
    pub x_points: Vec<(i64, i64)>,
    /// `(col, row, multiplicity)` for every viewport cell with positive
    /// rank difference.
    pub shaded: Vec<(i64, i64, i64)>,
    pub overlays: Vec<Rect>,
}

/// Builds the picture of `x <= w` over a viewport.
pub fn build_picture(
    x: &AffinePermutation,
    w: &AffinePermutation,
    viewport: Viewport,
) -> Result<BruhatPicture> {
    if x.n() != w.n() {
        return Err(Error::PeriodMismatch(x.n(), w.n()));
    }
    if !bruhat::leq(x, w)? {
        return Err(Error::NotComparable);
    }
    let w_points: Vec<(i64, i64)> = (viewport.lo..=viewport.hi)
        .map(|c| (c, w.apply(c)))
        .collect();
    let x_points: Vec<(i64, i64)> = (viewport.lo..=viewport.hi)
        .map(|c| (c, x.apply(c)))
        .collect();
    let row_lo = w_points
        .iter()
        .chain(&x_points)
        .map(|&(_, r)| r)
        .min()
        .unwrap()
        - 1;
    let row_hi = w_points
        .iter()
        .chain(&x_points)
        .map(|&(_, r)| r)
        .max()
        .unwrap()
        + 1;
    let mut shaded = Vec::new();
    for col in viewport.lo..=viewport.hi {
        for row in row_lo..=row_hi {
            let m = diff(x, w, col, row);
            debug_assert!(m >= 0, "comparable pair has nonnegative differences");
            if m > 0 {
                shaded.push((col, row, m));
            }
        }
    }
    Ok(BruhatPicture {
        n: x.n(),
        viewport,
        w_points,
        x_points,
        shaded,
        overlays: Vec::new(),
    })
}

/// Adds the swap rectangles of `t_{p,q}` over the picture's own pair,
/// clipped to the translates that meet the viewport.
pub fn add_swap_overlay(
    pic: &mut BruhatPicture,
    x: &AffinePermutation,
    p: i64,
    q: i64,
) -> Result<()> {
    let n = x.n() as i64;
    let span = (pic.viewport.hi - pic.viewport.lo) / n + 2;
    let rects = rectangles(x, p, q, -span..=span)?;
    pic.overlays.extend(
        rects
            .into_iter()
            .filter(|r| r.col_hi >= pic.viewport.lo && r.col_lo <= pic.viewport.hi),
    );
    Ok(())
}

const CELL: i64 = 16;

/// Deterministic SVG 1.1 text for a picture.
pub fn to_svg(pic: &BruhatPicture) -> String {
    let row_lo = pic
        .w_points
        .iter()
        .chain(&pic.x_points)
        .map(|&(_, r)| r)
        .min()
        .unwrap_or(0)
        - 1;
    let row_hi = pic
        .w_points
        .iter()
        .chain(&pic.x_points)
        .map(|&(_, r)| r)
        .max()
        .unwrap_or(0)
        + 1;
    let cols = pic.viewport.hi - pic.viewport.lo + 1;
    let rows = row_hi - row_lo + 1;
    let width = cols * CELL;
    let height = rows * CELL + CELL; // one extra band for column labels
    let cx = |col: i64| (col - pic.viewport.lo) * CELL;
    let cy = |row: i64| (row_hi - row) * CELL;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{width}" height="{}" fill="white"/>"##,
        rows * CELL
    );
    // shaded cells, multiplicity darkens
    for &(col, row, m) in &pic.shaded {
        let opacity = 0.15 * m.min(4) as f64;
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="#336699" fill-opacity="{opacity:.2}"/>"##,
            cx(col),
            cy(row)
        );
    }
    // rectangle overlays
    for r in &pic.overlays {
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#cc8800" stroke-width="1.5"/>"##,
            cx(r.col_lo),
            cy(r.row_hi),
            (r.col_hi - r.col_lo + 1) * CELL,
            (r.row_hi - r.row_lo + 1) * CELL
        );
    }
    // grid
    for c in 0..=cols {
        let _ = writeln!(
            s,
            r##"<line x1="{0}" y1="0" x2="{0}" y2="{1}" stroke="#dddddd" stroke-width="0.5"/>"##,
            c * CELL,
            rows * CELL
        );
    }
    for r in 0..=rows {
        let _ = writeln!(
            s,
            r##"<line x1="0" y1="{0}" x2="{1}" y2="{0}" stroke="#dddddd" stroke-width="0.5"/>"##,
            r * CELL,
            width
        );
    }
    // points: dots for w, crosses for x
    for &(col, row) in &pic.w_points {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="4" fill="black"/>"##,
            cx(col) + CELL / 2,
            cy(row) + CELL / 2
        );
    }
    for &(col, row) in &pic.x_points {
        let (px, py) = (cx(col) + CELL / 2, cy(row) + CELL / 2);
        let _ = writeln!(
            s,
            r##"<path d="M {} {} L {} {} M {} {} L {} {}" stroke="#cc0000" stroke-width="1.5"/>"##,
            px - 4,
            py - 4,
            px + 4,
            py + 4,
            px - 4,
            py + 4,
            px + 4,
            py - 4
        );
    }
    // column labels
    for col in pic.viewport.lo..=pic.viewport.hi {
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" font-size="8" text-anchor="middle" fill="#555555">{col}</text>"##,
            cx(col) + CELL / 2,
            rows * CELL + 10
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes the SVG to a file.
pub fn render_svg(pic: &BruhatPicture, path: &Path) -> Result<()> {
    std::fs::write(path, to_svg(pic))?;
    Ok(())
}

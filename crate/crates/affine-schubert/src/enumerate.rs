//! Breadth-first enumeration of the affine symmetric group graded by length,
//! avoider counting, exhaustive classification checks, and the Poincaré
//! polynomial cache file format.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bruhat::{self, PoincareRecord};
use crate::error::{Error, Result};
use crate::patterns::{self, Pattern};
use crate::perm::AffinePermutation;
use crate::smoothness::{self, Verdict};

/// Iterator over length-graded levels of the group: item `l` is the sorted
/// list of all elements of length `l`. Dedup is by canonical window; only
/// two adjacent levels are held in memory.
pub struct Levels {
    n: usize,
    frontier: Vec<AffinePermutation>,
    current_len: usize,
    max_len: usize,
    produced: usize,
    cap: usize,
    done: bool,
}

/// Levels of `S~_n` for lengths `0..=max_len`, with a total element budget.
pub fn levels(n: usize, max_len: usize, cap: usize) -> Levels {
    assert!(n >= 2);
    Levels {
        n,
        frontier: vec![AffinePermutation::identity(n)],
        current_len: 0,
        max_len,
        produced: 0,
        cap,
        done: false,
    }
}

impl Iterator for Levels {
    type Item = Result<(usize, Vec<AffinePermutation>)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.current_len > self.max_len {
            return None;
        }
        self.produced += self.frontier.len();
        if self.produced > self.cap {
            self.done = true;
            return Some(Err(Error::CapacityExceeded(self.cap)));
        }
        let level = std::mem::take(&mut self.frontier);
        let len = self.current_len;
        self.current_len += 1;
        if self.current_len <= self.max_len {
            // every element of length l+1 is w s_g for some length-l element
            // w with an ascent at g
            let mut next: HashSet<AffinePermutation> =
                HashSet::with_capacity(level.len() * 2);
            for w in &level {
                for g in 0..self.n {
                    if !w.is_right_descent(g) {
                        next.insert(w.right_mul_gen(g));
                    }
                }
            }
            let mut next: Vec<AffinePermutation> = next.into_iter().collect();
            next.sort_unstable();
            self.frontier = next;
        }
        if self.frontier.is_empty() {
            self.done = true;
        }
        Some(Ok((len, level)))
    }
}

/// Materializes all elements of length `<= max_len`, grouped by length.
pub fn elements_up_to_length(
    n: usize,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Vec<AffinePermutation>>> {
    levels(n, max_len, cap)
        .map(|r| r.map(|(_, level)| level))
        .collect()
}

fn both_patterns() -> (Pattern, Pattern) {
    ("3412".parse().unwrap(), "4231".parse().unwrap())
}

/// Result of a bounded avoider count with a stability margin.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AvoiderReport {
    pub n: usize,
    /// Length bound the count is taken over.
    pub bound: usize,
    /// Extra lengths scanned to confirm no further avoiders appear.
    pub margin: usize,
    pub count: u64,
    pub by_length: Vec<u64>,
    /// True iff the margin contributed no avoiders.
    pub stable: bool,
}

/// Counts the elements avoiding both 3412 and 4231. All of them have length
/// at most `n(n-1)`; the scan continues one period of lengths further and
/// reports whether the count stayed put.
pub fn count_avoiders(n: usize, cap: usize) -> Result<AvoiderReport> {
    let bound = n * (n - 1);
    let (p3412, p4231) = both_patterns();
    let mut by_length = vec![0u64; bound + 1];
    let mut stable = true;
    for item in levels(n, bound + n, cap) {
        let (len, level) = item?;
        let hits = level
            .par_iter()
            .filter(|w| patterns::avoids(w, &p3412) && patterns::avoids(w, &p4231))
            .count() as u64;
        if len <= bound {
            by_length[len] = hits;
        } else if hits > 0 {
            stable = false;
        }
    }
    Ok(AvoiderReport {
        n,
        bound,
        margin: n,
        count: by_length.iter().sum(),
        by_length,
        stable,
    })
}

/// Result of a 3412-avoider count within a length bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub max_len: usize,
    pub count: u64,
    pub by_length: Vec<u64>,
    /// True iff the final period of lengths contributed nothing.
    pub stable: bool,
}

/// Counts 3412-avoiders of length `<= max_len`, reporting whether the count
/// already stopped growing over the last period of lengths.
pub fn count_3412_avoiders(n: usize, max_len: usize, cap: usize) -> Result<StabilityReport> {
    let p3412: Pattern = "3412".parse().unwrap();
    let mut by_length = vec![0u64; max_len + 1];
    for item in levels(n, max_len, cap) {
        let (len, level) = item?;
        by_length[len] = level
            .par_iter()
            .filter(|w| patterns::avoids(w, &p3412))
            .count() as u64;
    }
    let tail_start = max_len.saturating_sub(n) + 1;
    let stable = by_length[tail_start..].iter().all(|&c| c == 0);
    Ok(StabilityReport {
        n,
        max_len,
        count: by_length.iter().sum(),
        by_length,
        stable,
    })
}

/// One disagreement between the classifier and the palindromicity oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Disagreement {
    pub window: Vec<i64>,
    pub classified_smooth: bool,
    pub palindromic: bool,
}

/// Outcome of the exhaustive classifier-vs-oracle run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    pub n: usize,
    pub max_len: usize,
    pub checked: u64,
    pub avoiders: u64,
    pub spirals: u64,
    pub small_rank: u64,
    pub not_smooth: u64,
    pub disagreements: Vec<Disagreement>,
    /// Lengths at which spiral verdicts appeared; each must be
    /// `n(n-1)/2 + k(n-1)`.
    pub spiral_lengths_ok: bool,
}

/// Checks `classify(w)` against palindromicity of the brute-force Poincaré
/// polynomial for every element of length `<= max_len`.
pub fn verify_theorem(n: usize, max_len: usize, cap: usize) -> Result<TheoremReport> {
    let mut report = TheoremReport {
        n,
        max_len,
        checked: 0,
        avoiders: 0,
        spirals: 0,
        small_rank: 0,
        not_smooth: 0,
        disagreements: Vec::new(),
        spiral_lengths_ok: true,
    };
    for item in levels(n, max_len, cap) {
        let (len, level) = item?;
        let results: Vec<(Verdict, bool)> = level
            .par_iter()
            .map(|w| {
                let verdict = smoothness::classify(w);
                let palindromic = bruhat::poincare_capped(w, cap)
                    .map(|p| p.is_palindromic())
                    .unwrap_or(false);
                (verdict, palindromic)
            })
            .collect();
        for (w, (verdict, palindromic)) in level.iter().zip(results) {
            report.checked += 1;
            match &verdict {
                Verdict::RationallySmooth { reason } => {
                    use smoothness::SmoothReason::*;
                    match reason {
                        Avoider => report.avoiders += 1,
                        TwistedSpiral(_) => {
                            report.spirals += 1;
                            let base = n * (n - 1) / 2;
                            let ok = len >= base && (len - base).is_multiple_of(n - 1);
                            report.spiral_lengths_ok &= ok;
                        }
                        SmallRank => report.small_rank += 1,
                    }
                }
                Verdict::NotRationallySmooth { .. } => report.not_smooth += 1,
            }
            if verdict.is_rationally_smooth() != palindromic {
                report.disagreements.push(Disagreement {
                    window: w.window().to_vec(),
                    classified_smooth: verdict.is_rationally_smooth(),
                    palindromic,
                });
            }
        }
    }
    Ok(report)
}

/// Cache file path for period `n` under a cache directory.
pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("n{n}.jsonl"))
}

/// Writes Poincaré polynomials for all elements of length `<= max_len` as
/// line-delimited JSON records, sorted by (length, window). Returns the
/// number of records written.
pub fn write_cache(dir: &Path, n: usize, max_len: usize, cap: usize) -> Result<usize> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, n);
    let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
    let mut count = 0usize;
    for item in levels(n, max_len, cap) {
        let (_, level) = item?;
        let records: Vec<PoincareRecord> = level
            .par_iter()
            .map(|w| {
                bruhat::poincare_capped(w, cap).map(|p| PoincareRecord::new(w, &p))
            })
            .collect::<Result<_>>()?;
        for rec in records {
            serde_json::to_writer(&mut out, &rec)
                .map_err(|e| Error::Parse(format!("cache serialization: {e}")))?;
            out.write_all(b"\n")?;
            count += 1;
        }
    }
    out.flush()?;
    Ok(count)
}

/// Reads a line-delimited cache file.
pub fn read_cache(path: &Path) -> Result<Vec<PoincareRecord>> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut records = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PoincareRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("cache line: {e}")))?;
        records.push(rec);
    }
    Ok(records)
}

/// Recomputes every cached polynomial and demands bit-identical agreement.
/// Returns the number of verified records.
pub fn verify_cache(path: &Path, cap: usize) -> Result<usize> {
    let records = read_cache(path)?;
    records
        .par_iter()
        .map(|rec| {
            let w = AffinePermutation::from_window(rec.n, rec.window.clone())?;
            let fresh = bruhat::poincare_capped(&w, cap)?;
            if PoincareRecord::new(&w, &fresh) != *rec {
                return Err(Error::InvalidArgs(format!(
                    "cache mismatch for window {:?}",
                    rec.window
                )));
            }
            Ok(())
        })
        .collect::<Result<Vec<()>>>()?;
    Ok(records.len())
}

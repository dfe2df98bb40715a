//! Affine permutations: periodic bijections of the integers with a fixed
//! window sum, their group arithmetic and length functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the affine symmetric group of period `n`: a bijection
/// `w : Z -> Z` with `w(i + n) = w(i) + n` and `w(1) + ... + w(n) = n(n+1)/2`.
///
/// The base window `[w(1), ..., w(n)]` is the canonical representation;
/// equality, ordering and hashing all go through it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Box<[i64]>,
}

impl AffinePermutation {
    /// Identity of period `n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 2, "period must be at least 2");
        AffinePermutation {
            window: (1..=n as i64).collect(),
        }
    }

    /// Builds an element from its base window, validating the invariants.
    pub fn from_window(n: usize, window: Vec<i64>) -> Result<Self> {
        if n < 2 || window.len() != n {
            return Err(Error::BadArity {
                n,
                got: window.len(),
            });
        }
        let m = n as i64;
        let mut seen: Vec<Option<i64>> = vec![None; n];
        for &v in &window {
            let r = v.rem_euclid(m) as usize;
            if let Some(prev) = seen[r] {
                return Err(Error::DistinctResidueViolation { n, a: prev, b: v });
            }
            seen[r] = Some(v);
        }
        let expected = m * (m + 1) / 2;
        let got: i64 = window.iter().sum();
        if got != expected {
            return Err(Error::WindowSumViolation { expected, got });
        }
        Ok(AffinePermutation {
            window: window.into_boxed_slice(),
        })
    }

    /// The period `n`.
    pub fn n(&self) -> usize {
        self.window.len()
    }

    /// The base window `[w(1), ..., w(n)]`.
    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i64 + 1)
    }

    /// Evaluates `w(i)` for any integer `i` via the periodic extension.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n) as usize;
        let k = (i - 1).div_euclid(n);
        self.window[r] + k * n
    }

    /// The unique position `i` with `w(i) = v`.
    pub fn position_of(&self, v: i64) -> i64 {
        let n = self.n() as i64;
        for (p, &base) in self.window.iter().enumerate() {
            if (v - base).rem_euclid(n) == 0 {
                return p as i64 + 1 + (v - base);
            }
        }
        unreachable!("window residues cover all classes");
    }

    /// Function composition: `(u.compose(v))(i) = u(v(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::PeriodMismatch(self.n(), other.n()));
        }
        let window = (1..=self.n() as i64)
            .map(|i| self.apply(other.apply(i)))
            .collect::<Vec<_>>();
        Ok(AffinePermutation {
            window: window.into_boxed_slice(),
        })
    }

    /// The group inverse.
    pub fn inverse(&self) -> Self {
        let n = self.n() as i64;
        let mut window = vec![0i64; self.n()];
        for (p, &v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let k = (v - 1 - r) / n;
            window[r as usize] = p as i64 + 1 - k * n;
        }
        AffinePermutation {
            window: window.into_boxed_slice(),
        }
    }

    /// Right multiplication by an affine transposition: swaps the values in
    /// the position classes of `t.i` and `t.j`.
    pub fn right_mul_t(&self, t: &Transposition) -> Result<Self> {
        if self.n() != t.n() {
            return Err(Error::PeriodMismatch(self.n(), t.n()));
        }
        let n = self.n() as i64;
        let mut window = self.window.to_vec();
        let (i, j) = (t.i(), t.j());
        // base representative of each position class and its offset
        let ri = (i - 1).rem_euclid(n) as usize;
        let rj = (j - 1).rem_euclid(n) as usize;
        window[ri] = self.apply(j) + (ri as i64 + 1 - i);
        window[rj] = self.apply(i) + (rj as i64 + 1 - j);
        Ok(AffinePermutation {
            window: window.into_boxed_slice(),
        })
    }

    /// Right multiplication by the simple generator `s_g`, `g` in `[0, n-1]`.
    pub fn right_mul_gen(&self, g: usize) -> Self {
        let n = self.n();
        assert!(g < n, "generator index out of range");
        let mut window = self.window.to_vec();
        if g >= 1 {
            window.swap(g - 1, g);
        } else {
            // s_0 swaps positions n and n+1
            let wn = window[n - 1];
            window[n - 1] = window[0] + n as i64;
            window[0] = wn - n as i64;
        }
        AffinePermutation {
            window: window.into_boxed_slice(),
        }
    }

    /// Left multiplication by `s_g`: swaps the value classes `a` and `a+1`
    /// where `a = g` for `g >= 1` and `a = n` for `g = 0`.
    pub fn left_mul_gen(&self, g: usize) -> Self {
        let n = self.n() as i64;
        assert!((g as i64) < n, "generator index out of range");
        let a = if g == 0 { n } else { g as i64 };
        let ra = a.rem_euclid(n);
        let rb = (a + 1).rem_euclid(n);
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = v.rem_euclid(n);
                if r == ra {
                    v + 1
                } else if r == rb {
                    v - 1
                } else {
                    v
                }
            })
            .collect::<Vec<_>>();
        AffinePermutation {
            window: window.into_boxed_slice(),
        }
    }

    pub fn min_window(&self) -> i64 {
        *self.window.iter().min().unwrap()
    }

    pub fn max_window(&self) -> i64 {
        *self.window.iter().max().unwrap()
    }

    /// Window value spread in units of `n`, rounded up.
    pub(crate) fn spread(&self) -> i64 {
        let n = self.n() as i64;
        let d = self.max_window() - self.min_window();
        (d + n - 1).div_euclid(n)
    }

    /// Largest index `j` with `w(j) <= v`; every position beyond it carries a
    /// value strictly greater than `v`.
    pub fn last_pos_leq(&self, v: i64) -> i64 {
        let n = self.n() as i64;
        self.window
            .iter()
            .enumerate()
            .map(|(p, &base)| p as i64 + 1 + n * (v - base).div_euclid(n))
            .max()
            .unwrap()
    }

    /// Smallest index `j` with `w(j) >= v`; every position before it carries a
    /// value strictly less than `v`.
    pub fn first_pos_geq(&self, v: i64) -> i64 {
        let n = self.n() as i64;
        self.window
            .iter()
            .enumerate()
            .map(|(p, &base)| {
                // smallest k with base + k*n >= v
                p as i64 + 1 + n * (v - base + n - 1).div_euclid(n)
            })
            .min()
            .unwrap()
    }

    /// Coxeter length: the number of affine inversions, pairs `(i, j)` with
    /// `1 <= i <= n`, `i < j` and `w(i) > w(j)`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let horizon = n * (1 + self.spread());
        let mut count = 0usize;
        for i in 1..=n {
            let wi = self.apply(i);
            for j in i + 1..=i + horizon {
                if self.apply(j) < wi {
                    count += 1;
                }
            }
        }
        count
    }

    /// Shi's closed-form length: window inversions plus the sum of
    /// `floor(|w_j - w_i| / n)` over window pairs `i < j`.
    pub fn length_shi(&self) -> usize {
        let n = self.n() as i64;
        let w = &self.window;
        let mut total = 0i64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    total += 1;
                }
                total += (w[j] - w[i]).abs().div_euclid(n);
            }
        }
        total as usize
    }

    /// True iff right multiplication by `s_g` shortens the element.
    pub fn is_right_descent(&self, g: usize) -> bool {
        let n = self.n() as i64;
        let a = if g == 0 { n } else { g as i64 };
        self.apply(a) > self.apply(a + 1)
    }

    /// True iff left multiplication by `s_g` shortens the element.
    pub fn is_left_descent(&self, g: usize) -> bool {
        let n = self.n() as i64;
        let a = if g == 0 { n } else { g as i64 };
        self.position_of(a) > self.position_of(a + 1)
    }

    /// Generator indices `g` with `l(w s_g) < l(w)`, ascending.
    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.n()).filter(|&g| self.is_right_descent(g)).collect()
    }

    /// A reduced word for `w`, obtained by greedily stripping the smallest
    /// right descent.
    pub fn reduced_word(&self) -> Word {
        let n = self.n();
        let mut cur = self.clone();
        let mut stripped = Vec::new();
        while !cur.is_identity() {
            let g = (0..n)
                .find(|&g| cur.is_right_descent(g))
                .expect("non-identity element has a right descent");
            cur = cur.right_mul_gen(g);
            stripped.push(g);
        }
        stripped.reverse();
        Word {
            n,
            letters: stripped,
        }
    }

    /// Sparse affine permutation matrix: writes `w_i = a_i + n b_i` with
    /// `1 <= a_i <= n` and yields one entry `(row a_i, column i, exponent b_i)`
    /// per window position.
    pub fn matrix_entries(&self) -> Vec<MatrixEntry> {
        let n = self.n() as i64;
        self.window
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                let a = (v - 1).rem_euclid(n) + 1;
                let b = (v - a) / n;
                MatrixEntry {
                    row: a as usize,
                    col: p + 1,
                    exponent: b,
                }
            })
            .collect()
    }

    /// Line-oriented text export of the matrix: one `row col exponent` record
    /// per line, in column order.
    pub fn matrix_records(&self) -> String {
        self.matrix_entries()
            .iter()
            .map(|e| format!("{} {} {}", e.row, e.col, e.exponent))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// One nonzero entry of the affine permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub exponent: i64,
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    /// Parses the window text form, e.g. `"8,3,1,0,4,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let entries: Vec<i64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad window entry {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        AffinePermutation::from_window(entries.len(), entries)
    }
}

/// An affine transposition `t_{i,j}`, normalized so that `1 <= i <= n`,
/// `i < j` and `i != j mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    n: usize,
    i: i64,
    j: i64,
}

impl Transposition {
    pub fn new(n: usize, a: i64, b: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgs(format!("period {n} too small")));
        }
        let m = n as i64;
        if (a - b).rem_euclid(m) == 0 {
            return Err(Error::InvalidArgs(format!(
                "t_({a},{b}) is not a transposition: indices congruent mod {n}"
            )));
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let shift = (lo - 1).div_euclid(m);
        Ok(Transposition {
            n,
            i: lo - shift * m,
            j: hi - shift * m,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})", self.i, self.j)
    }
}

/// A word in the generators `s_0, ..., s_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if letters.iter().any(|&g| g >= n) {
            return Err(Error::InvalidArgs(format!(
                "letter out of range for period {n}"
            )));
        }
        Ok(Word { n, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product of the letters, left to right.
    pub fn evaluate(&self) -> AffinePermutation {
        self.letters
            .iter()
            .fold(AffinePermutation::identity(self.n), |w, &g| {
                w.right_mul_gen(g)
            })
    }

    pub fn is_reduced(&self) -> bool {
        self.evaluate().length() == self.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| format!("s{g}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

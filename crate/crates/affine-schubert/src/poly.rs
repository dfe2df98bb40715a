//! Dense polynomials in `q` with nonnegative arbitrary-precision integer
//! coefficients, plus the q-factorial and q-binomial constructors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q`, stored as a dense coefficient vector indexed by
/// degree. The trailing coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigUint>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePolynomial {
            coeffs: vec![BigUint::one()],
        }
    }

    /// `1 + q + ... + q^(m-1)`, the q-analogue of the integer `m`.
    pub fn gauss_integer(m: usize) -> Self {
        UnivariatePolynomial {
            coeffs: vec![BigUint::one(); m],
        }
    }

    pub fn from_coeffs<I: IntoIterator<Item = u64>>(coeffs: I) -> Self {
        let coeffs = coeffs.into_iter().map(BigUint::from).collect();
        let mut p = UnivariatePolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_big_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut p = UnivariatePolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigUint {
        self.coeffs.get(d).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn eval_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// True iff the coefficient sequence reads the same reversed.
    pub fn is_palindromic(&self) -> bool {
        let k = self.coeffs.len();
        (0..k / 2).all(|i| self.coeffs[i] == self.coeffs[k - 1 - i])
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if other.coeffs.len() > coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigUint::zero());
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            coeffs[i] += b;
        }
        UnivariatePolynomial { coeffs }
    }

    /// Exact division; fails unless `self = q * d` with nonnegative integer
    /// coefficients throughout.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidArgs("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if d.coeffs[0].is_zero() {
            return Err(Error::InvalidArgs(
                "divisor must have nonzero constant term".into(),
            ));
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(Error::InvalidArgs("inexact polynomial division".into()));
        }
        let qlen = self.coeffs.len() - d.coeffs.len() + 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigUint::zero(); qlen];
        // divide from the constant term upward; all q-analogue divisors here
        // have constant term 1
        for i in 0..qlen {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = (&c / &d.coeffs[0], &c % &d.coeffs[0]);
            if !r.is_zero() {
                return Err(Error::InvalidArgs("inexact polynomial division".into()));
            }
            quot[i] = q.clone();
            for (k, dc) in d.coeffs.iter().enumerate() {
                let sub = &q * dc;
                rem[i + k] = rem[i + k]
                    .checked_sub(&sub)
                    .ok_or_else(|| Error::InvalidArgs("inexact polynomial division".into()))?;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgs("inexact polynomial division".into()));
        }
        Ok(UnivariatePolynomial::from_big_coeffs(quot))
    }
}

impl fmt::Display for UnivariatePolynomial {
    /// Space-separated coefficients from degree 0, e.g. `1 2 2 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for UnivariatePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs: Vec<BigUint> = s
            .split_whitespace()
            .map(|t| {
                t.parse::<BigUint>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        Ok(UnivariatePolynomial::from_big_coeffs(coeffs))
    }
}

/// The q-factorial `(m!)_q = prod_{k=1}^m (1 + q + ... + q^(k-1))`.
pub fn q_factorial(m: usize) -> UnivariatePolynomial {
    let mut p = UnivariatePolynomial::one();
    for k in 1..=m {
        p = p.mul(&UnivariatePolynomial::gauss_integer(k));
    }
    p
}

/// The q-binomial coefficient, computed by exact division of q-factorials.
pub fn q_binomial(k: usize, j: usize) -> Result<UnivariatePolynomial> {
    if j > k {
        return Err(Error::InvalidArgs(format!(
            "q-binomial arguments out of range: ({k}, {j})"
        )));
    }
    let denom = q_factorial(j).mul(&q_factorial(k - j));
    q_factorial(k).exact_div(&denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_factorial_three() {
        assert_eq!(
            q_factorial(3),
            UnivariatePolynomial::from_coeffs([1, 2, 2, 1])
        );
        assert_eq!(q_factorial(0), UnivariatePolynomial::one());
    }

    #[test]
    fn q_binomial_small_values() {
        assert_eq!(
            q_binomial(3, 1).unwrap(),
            UnivariatePolynomial::from_coeffs([1, 1, 1])
        );
        assert_eq!(q_binomial(4, 0).unwrap(), UnivariatePolynomial::one());
        assert!(q_binomial(2, 3).is_err());
    }

    #[test]
    fn q_binomial_symmetry_and_palindromicity() {
        for k in 0..=8 {
            for j in 0..=k {
                let a = q_binomial(k, j).unwrap();
                let b = q_binomial(k, k - j).unwrap();
                assert_eq!(a, b);
                assert!(a.is_palindromic());
                // specializes to the ordinary binomial at q = 1
                let mut expect = BigUint::from(1u64);
                for t in 0..j {
                    expect = expect * BigUint::from((k - t) as u64)
                        / BigUint::from((t + 1) as u64);
                }
                assert_eq!(a.eval_one(), expect);
            }
        }
    }

    #[test]
    fn palindromic_checks() {
        assert!(UnivariatePolynomial::from_coeffs([1, 2, 2, 1]).is_palindromic());
        assert!(!UnivariatePolynomial::from_coeffs([1, 2, 0, 1]).is_palindromic());
        assert!(UnivariatePolynomial::one().is_palindromic());
        assert!(UnivariatePolynomial::zero().is_palindromic());
    }

    #[test]
    fn exact_division_detects_remainders() {
        let f = UnivariatePolynomial::from_coeffs([1, 2, 2, 1]);
        let g = UnivariatePolynomial::from_coeffs([1, 1]);
        assert_eq!(
            f.exact_div(&g).unwrap(),
            UnivariatePolynomial::from_coeffs([1, 1, 1])
        );
        let h = UnivariatePolynomial::from_coeffs([1, 1, 1]);
        assert!(h.exact_div(&g).is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = UnivariatePolynomial::from_coeffs([1, 3, 5, 5, 3, 1]);
        assert_eq!(f.to_string(), "1 3 5 5 3 1");
        assert_eq!("1 3 5 5 3 1".parse::<UnivariatePolynomial>().unwrap(), f);
    }
}

//! Integer polynomials in `q`, used for every point count in the crate.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Integer polynomial in `q`, coefficients by ascending degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i128>", into = "Vec<i128>")]
pub struct QPolynomial {
    coeffs: Vec<i128>,
}

impl From<Vec<i128>> for QPolynomial {
    fn from(v: Vec<i128>) -> Self {
        Self::new(v)
    }
}

impl From<QPolynomial> for Vec<i128> {
    fn from(p: QPolynomial) -> Self {
        p.coeffs
    }
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self { coeffs: c }
    }

    /// `(1 + q)^k`.
    pub fn one_plus_q_pow(k: usize) -> Self {
        let base = Self::new(vec![1, 1]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// `[m]_q = 1 + q + ... + q^{m-1}`.
    pub fn q_integer(m: usize) -> Self {
        Self::new(vec![1; m])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * q + c)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + rhs.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) - rhs.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{k}")?,
                _ => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = QPolynomial::new(vec![1, 2, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 2]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(QPolynomial::new(vec![0, 0]).degree(), None);
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(QPolynomial::one_plus_q_pow(3).coeffs(), &[1, 3, 3, 1]);
        assert_eq!(QPolynomial::one_plus_q_pow(0), QPolynomial::one());
        assert_eq!(QPolynomial::one_plus_q_pow(3).eval(2), 27);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(QPolynomial::new(vec![1, 2, 2, 1]).to_string(), "1 + 2q + 2q^2 + q^3");
        assert_eq!(QPolynomial::new(vec![0, -1, 0, 3]).to_string(), "-q + 3q^3");
    }

    #[test]
    fn json_is_ascending_coefficients() {
        let p = QPolynomial::new(vec![1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,1]");
        let back: QPolynomial = serde_json::from_str("[1,1,0]").unwrap();
        assert_eq!(back, p);
    }
}

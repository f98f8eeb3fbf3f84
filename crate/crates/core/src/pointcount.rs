//! Exact interpolation of point counts across primes.

use crate::qpoly::QPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::io;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointCountError {
    #[error("{label}: need {needed} samples, have {got}")]
    TooFewSamples { label: String, needed: usize, got: usize },
    #[error("{label}: prime {p} sampled twice")]
    DuplicatePrime { label: String, p: u32 },
    #[error("{label}: coefficient of q^{degree} is {value}, not an integer")]
    NonIntegral { label: String, degree: usize, value: String },
    #[error("{label}: fitted polynomial gives {expected} at p = {p}, sample is {observed}")]
    Inconsistent { label: String, p: u32, expected: String, observed: u128 },
    #[error("{label}: coefficient {value} does not fit in 128 bits")]
    Overflow { label: String, value: String },
    #[error("{label}: counting failed at p = {p}: {message}")]
    Count { label: String, p: u32, message: String },
}

pub type Result<T> = std::result::Result<T, PointCountError>;

/// Exact counts of one set at several primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountSeries {
    pub label: String,
    pub samples: Vec<(u32, u128)>,
}

impl CountSeries {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            samples: Vec::new(),
        }
    }

    pub fn from_samples(label: impl Into<String>, samples: Vec<(u32, u128)>) -> Result<Self> {
        let mut s = Self::new(label);
        for (p, c) in samples {
            s.push(p, c)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, p: u32, count: u128) -> Result<()> {
        if self.samples.iter().any(|&(q, _)| q == p) {
            return Err(PointCountError::DuplicatePrime {
                label: self.label.clone(),
                p,
            });
        }
        self.samples.push((p, count));
        Ok(())
    }

    pub fn primes(&self) -> Vec<u32> {
        self.samples.iter().map(|&(p, _)| p).collect()
    }
}

/// The polynomial of degree `<= bound` through the first `bound + 1` samples,
/// computed by exact rational elimination on the Vandermonde system. Every
/// coefficient must be an integer and every further sample must lie on it.
pub fn interpolate(series: &CountSeries, bound: usize) -> Result<QPolynomial> {
    let m = bound + 1;
    if series.samples.len() < m {
        return Err(PointCountError::TooFewSamples {
            label: series.label.clone(),
            needed: m,
            got: series.samples.len(),
        });
    }
    let used = &series.samples[..m];
    // augmented Vandermonde rows [1, p, p^2, …, p^bound | count]
    let mut rows: Vec<Vec<BigRational>> = used
        .iter()
        .map(|&(p, c)| {
            let base = BigRational::from_integer(BigInt::from(p));
            let mut row = Vec::with_capacity(m + 1);
            let mut power = BigRational::one();
            for _ in 0..m {
                row.push(power.clone());
                power *= &base;
            }
            row.push(BigRational::from_integer(BigInt::from(c)));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .expect("distinct primes give an invertible Vandermonde matrix");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
    }
    let mut coeffs = Vec::with_capacity(m);
    for (degree, row) in rows.iter().enumerate() {
        let value = &row[m];
        if !value.is_integer() {
            return Err(PointCountError::NonIntegral {
                label: series.label.clone(),
                degree,
                value: value.to_string(),
            });
        }
        let int = value.to_integer();
        let c = int.to_i128().ok_or_else(|| PointCountError::Overflow {
            label: series.label.clone(),
            value: int.to_string(),
        })?;
        coeffs.push(c);
    }
    let poly = QPolynomial::new(coeffs);
    for &(p, c) in &series.samples[m..] {
        let expected = eval_big(&poly, p);
        if expected != BigInt::from(c) {
            return Err(PointCountError::Inconsistent {
                label: series.label.clone(),
                p,
                expected: expected.to_string(),
                observed: c,
            });
        }
    }
    Ok(poly)
}

fn eval_big(poly: &QPolynomial, p: u32) -> BigInt {
    let q = BigInt::from(p);
    poly.coeffs()
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &q + BigInt::from(c))
}

/// Outcome of comparing a fitted polynomial with a count at an unused prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoldoutReport {
    pub prime: u32,
    pub predicted: String,
    pub observed: u128,
    pub passed: bool,
}

impl fmt::Display for HoldoutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "holdout p = {}: {} matches", self.prime, self.observed)
        } else {
            write!(
                f,
                "holdout p = {}: predicted {}, counted {}",
                self.prime, self.predicted, self.observed
            )
        }
    }
}

pub fn holdout_report(poly: &QPolynomial, prime: u32, observed: u128) -> HoldoutReport {
    let predicted = eval_big(poly, prime);
    HoldoutReport {
        prime,
        passed: predicted == BigInt::from(observed),
        predicted: predicted.to_string(),
        observed,
    }
}

pub fn validate_holdout(poly: &QPolynomial, holdout: (u32, u128)) -> bool {
    holdout_report(poly, holdout.0, holdout.1).passed
}

/// The `count` smallest primes, skipping 2 when `odd_only`.
pub fn prime_schedule(count: usize, odd_only: bool) -> Vec<u32> {
    (2u32..)
        .filter(|&p| crate::gf::is_prime(p) && !(odd_only && p == 2))
        .take(count)
        .collect()
}

/// `primes` followed by further primes (in increasing order, larger than any
/// given one) until `needed` samples exist.
pub fn extend_schedule(primes: &[u32], needed: usize, odd_only: bool) -> Vec<u32> {
    let mut out = primes.to_vec();
    let mut next = primes.iter().copied().max().map_or(2, |m| m + 1);
    while out.len() < needed {
        if crate::gf::is_prime(next) && !(odd_only && next == 2) {
            out.push(next);
        }
        next += 1;
    }
    out
}

/// `C(n-r, 2) + C(r, 2)`: dimension of the type-A two-column Springer fiber.
pub fn expected_dimension_a(n: usize, r: usize) -> usize {
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    c2(n - r) + c2(r)
}

/// `(dim Z(N) - n) / 2` for the orthogonal nilpotent of Jordan type
/// `(2^{2r}, 1^{2n-4r})`, with `dim Z(N) = ((2n-2r)² + (2r)² - (2n-4r)) / 2`.
pub fn expected_dimension_d(n: usize, r: usize) -> usize {
    let centralizer = ((2 * n - 2 * r).pow(2) + (2 * r).pow(2) - (2 * n - 4 * r)) / 2;
    (centralizer - n) / 2
}

/// A polynomial fitted on `bound + 1` primes and checked on one more.
#[derive(Clone, Debug, Serialize)]
pub struct Fit {
    pub series: CountSeries,
    pub bound: usize,
    pub polynomial: QPolynomial,
    pub degree: Option<usize>,
    pub leading_coefficient: i128,
    pub holdout: HoldoutReport,
}

/// Counts at the given primes (in parallel), fits on all but the last, and
/// validates on the last.
pub fn fit_with_holdout<F>(label: &str, bound: usize, primes: &[u32], count: F) -> Result<Fit>
where
    F: Fn(u32) -> std::result::Result<u128, String> + Sync,
{
    if primes.len() < bound + 2 {
        return Err(PointCountError::TooFewSamples {
            label: label.into(),
            needed: bound + 2,
            got: primes.len(),
        });
    }
    let counted: Vec<(u32, std::result::Result<u128, String>)> =
        primes.par_iter().map(|&p| (p, count(p))).collect();
    let mut samples = Vec::with_capacity(primes.len());
    for (p, c) in counted {
        let c = c.map_err(|message| PointCountError::Count {
            label: label.into(),
            p,
            message,
        })?;
        samples.push((p, c));
    }
    let (&(hp, hc), fitted) = samples.split_last().expect("at least two primes");
    let series = CountSeries::from_samples(label, fitted.to_vec())?;
    let polynomial = interpolate(&series, bound)?;
    let holdout = holdout_report(&polynomial, hp, hc);
    Ok(Fit {
        degree: polynomial.degree(),
        leading_coefficient: polynomial.leading_coefficient(),
        series,
        bound,
        polynomial,
        holdout,
    })
}

/// Writes `label,prime,count` rows.
pub fn write_csv<W: io::Write>(series: &[CountSeries], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "prime", "count"])?;
    for s in series {
        for &(p, c) in &s.samples {
            w.write_record([s.label.as_str(), &p.to_string(), &c.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

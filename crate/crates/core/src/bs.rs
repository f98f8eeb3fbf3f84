//! Bott–Samelson varieties of type A as explicit choice sequences.
//!
//! Step `j` with letter `i` replaces `V_i` of the current flag by any `W` with
//! `V_{i-1} ⊂ W ⊂ V_{i+1}`; the section keeps `V_i`.

use crate::flags_a::{self, CompleteFlag, FlagError, NilpotentA};
use crate::gf::{self, PrimeField, Subspace};
use crate::qpoly::QPolynomial;
use crate::weyl::{self, WeylType, Word};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BsError {
    #[error("letter {letter} out of range for a flag of length {n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("point has {got} steps, word has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Weyl(#[from] weyl::WeylError),
    #[error(transparent)]
    Flag(#[from] FlagError),
}

pub type Result<T> = std::result::Result<T, BsError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BSWord {
    pub base_flag: CompleteFlag,
    pub letters: Word,
}

impl BSWord {
    pub fn new(base_flag: CompleteFlag, letters: Word) -> Result<Self> {
        let n = base_flag.n();
        if let Some(&letter) = letters.0.iter().find(|&&i| i == 0 || i >= n) {
            return Err(BsError::LetterOutOfRange { letter, n });
        }
        Ok(Self { base_flag, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.base_flag.get(0).field()
    }
}

/// The flag after each step; `flags[j]` is the flag after step `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BSPoint {
    pub flags: Vec<CompleteFlag>,
}

impl BSPoint {
    pub fn end_flag<'a>(&'a self, word: &'a BSWord) -> &'a CompleteFlag {
        self.flags.last().unwrap_or(&word.base_flag)
    }

    /// The subspace `W_j` chosen at step `j` (1-based).
    pub fn choice(&self, word: &BSWord, j: usize) -> &Subspace {
        self.flags[j - 1].get(word.letters.0[j - 1])
    }

    /// Whether step `j` (1-based) took the section.
    pub fn takes_section(&self, word: &BSWord, j: usize) -> bool {
        let prev = if j == 1 { &word.base_flag } else { &self.flags[j - 2] };
        self.flags[j - 1] == *prev
    }
}

/// `(1 + q)^len`.
pub fn bs_point_count(word: &BSWord) -> QPolynomial {
    QPolynomial::one_plus_q_pow(word.len())
}

fn replace(flag: &CompleteFlag, i: usize, w: Subspace) -> CompleteFlag {
    let mut subspaces = flag.subspaces().to_vec();
    subspaces[i] = w;
    CompleteFlag::from_chain_unchecked(subspaces)
}

/// The `p + 1` flags obtained from `flag` by changing `V_i`; the first one is
/// not necessarily `flag` itself.
pub fn elementary_choices(flag: &CompleteFlag, i: usize) -> Vec<CompleteFlag> {
    gf::enumerate_subspaces(i, flag.get(i - 1), flag.get(i + 1))
        .expect("V_{i-1} ⊂ V_{i+1}")
        .into_iter()
        .map(|w| replace(flag, i, w))
        .collect()
}

fn rec(word: &BSWord, current: &CompleteFlag, steps: &mut Vec<CompleteFlag>, out: &mut Vec<BSPoint>) {
    let j = steps.len();
    if j == word.len() {
        out.push(BSPoint { flags: steps.clone() });
        return;
    }
    for next in elementary_choices(current, word.letters.0[j]) {
        steps.push(next.clone());
        rec(word, &next, steps, out);
        steps.pop();
    }
}

/// Every `F_p`-point, ordered by choices (parallel over the first step).
pub fn enumerate_bs_points(word: &BSWord) -> Vec<BSPoint> {
    if word.is_empty() {
        return vec![BSPoint { flags: Vec::new() }];
    }
    elementary_choices(&word.base_flag, word.letters.0[0])
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut steps = vec![first.clone()];
            rec(word, &first, &mut steps, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn check_positions(word: &BSWord, positions: &BTreeSet<usize>) -> Result<()> {
    if let Some(&position) = positions.iter().find(|&&j| j == 0 || j > word.len()) {
        return Err(BsError::PositionOutOfRange {
            position,
            len: word.len(),
        });
    }
    Ok(())
}

/// The word with the letters at the 1-based `positions` removed.
pub fn subword_divisor(word: &BSWord, positions: &BTreeSet<usize>) -> Result<BSWord> {
    check_positions(word, positions)?;
    let letters = word
        .letters
        .0
        .iter()
        .enumerate()
        .filter(|(j, _)| !positions.contains(&(j + 1)))
        .map(|(_, &i)| i)
        .collect();
    BSWord::new(word.base_flag.clone(), Word(letters))
}

/// Points of the divisor `D_J`: those taking the section at every position in `J`.
pub fn in_divisor(word: &BSWord, point: &BSPoint, positions: &BTreeSet<usize>) -> bool {
    positions.iter().all(|&j| point.takes_section(word, j))
}

/// Image of a point of the subword variety in the parent variety: the
/// section at each removed position, the subword point's choices elsewhere.
pub fn embed_subword_point(word: &BSWord, positions: &BTreeSet<usize>, sub_point: &BSPoint) -> Result<BSPoint> {
    check_positions(word, positions)?;
    let expected = word.len() - positions.len();
    if sub_point.flags.len() != expected {
        return Err(BsError::LengthMismatch {
            expected,
            got: sub_point.flags.len(),
        });
    }
    let mut flags = Vec::with_capacity(word.len());
    let mut current = word.base_flag.clone();
    let mut sub = sub_point.flags.iter();
    for j in 1..=word.len() {
        if !positions.contains(&j) {
            current = sub.next().expect("length checked").clone();
        }
        flags.push(current.clone());
    }
    Ok(BSPoint { flags })
}

/// `|G/B| · (1 + q)^len` for the inner flag variety of type `inner` on
/// `inner_n` letters.
pub fn xtilde_point_count(word: &BSWord, inner: WeylType, inner_n: usize) -> Result<QPolynomial> {
    let base = weyl::poincare_polynomial(inner, inner_n)?;
    Ok(&base * &bs_point_count(word))
}

/// Points of `F(Im N) ×` Bott–Samelson, grouped by small flag: for each
/// complete flag of `Im N`, the number of Bott–Samelson points of `letters`
/// over the reference flag it determines.
pub fn xtilde_grouped_counts(nil: &NilpotentA, letters: &Word) -> Result<Vec<u128>> {
    flags_a::enumerate_small_flags(nil)
        .iter()
        .map(|small| {
            let base = flags_a::reference_flag(nil, small)?;
            let word = BSWord::new(base, letters.clone())?;
            Ok(enumerate_bs_points(&word).len() as u128)
        })
        .collect()
}

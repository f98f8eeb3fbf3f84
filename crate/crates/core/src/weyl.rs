//! Weyl groups of types `A_{n-1}` (permutations of `[1, n]`) and `D_n`
//! (signed permutations with an even number of sign changes), with Bourbaki
//! numbering of the simple reflections.
//!
//! Elements act on positions from the right: `w · s_i` swaps the entries at
//! positions `i` and `i + 1`; in type D, `w · s_n` maps the last two entries
//! `(a, b)` to `(-b, -a)`.

use crate::flags_a::{self, CompleteFlag, FlagError, NilpotentA};
use crate::combinat::StandardTableau;
use crate::gf::{PrimeField, Subspace};
use crate::qpoly::QPolynomial;
use crate::search::{self, FlagRule};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("not a valid {kind:?} element: {detail}")]
    InvalidElement { kind: WeylType, detail: String },
    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("elements of different groups: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("{kind:?} with n = {n} is too large to enumerate")]
    RankTooLarge { kind: WeylType, n: usize },
    #[error("word {word:?} is not reduced")]
    NotReduced { word: Vec<usize> },
    #[error("no reduced word of {v} ends with {w_word:?}")]
    NoExtension { w_word: Vec<usize>, v: String },
    #[error("relative positions have no unique Bruhat maximum: {maximal:?}")]
    NoUniqueMaximum { maximal: Vec<Vec<i32>> },
    #[error("extraction at p = {p1} and p = {p2} disagree")]
    PrimeDisagreement { p1: u32, p2: u32 },
    #[error("point count mismatch at p = {p}: expected {expected}, enumerated {counted}")]
    CountMismatch { p: u32, expected: i128, counted: i128 },
    #[error(transparent)]
    Flag(#[from] FlagError),
}

pub type Result<T> = std::result::Result<T, WeylError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylType {
    A,
    D,
}

/// Element in one-line notation. Type A: a permutation of `1..=n` (rank
/// `n - 1`). Type D: a signed permutation of `±1..=±n` with an even number of
/// negative entries (rank `n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    kind: WeylType,
    one_line: Vec<i32>,
}

/// Sequence of simple-reflection indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.one_line.iter().map(ToString::to_string).collect();
        write!(f, "{:?}[{}]", self.kind, parts.join(" "))
    }
}

/// Rank of the root system on `n` letters.
pub fn rank_of(kind: WeylType, n: usize) -> usize {
    match kind {
        WeylType::A => n.saturating_sub(1),
        WeylType::D => n,
    }
}

impl WeylElement {
    pub fn new(kind: WeylType, one_line: Vec<i32>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] || (kind == WeylType::A && x < 0) {
                return Err(WeylError::InvalidElement {
                    kind,
                    detail: format!("{one_line:?} is not a (signed) permutation"),
                });
            }
            seen[a] = true;
        }
        if kind == WeylType::D {
            if n < 2 {
                return Err(WeylError::InvalidElement {
                    kind,
                    detail: "type D needs n >= 2".into(),
                });
            }
            if one_line.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                return Err(WeylError::InvalidElement {
                    kind,
                    detail: format!("{one_line:?} has an odd number of sign changes"),
                });
            }
        }
        Ok(Self { kind, one_line })
    }

    pub fn identity(kind: WeylType, n: usize) -> Self {
        Self {
            kind,
            one_line: (1..=n as i32).collect(),
        }
    }

    pub fn longest(kind: WeylType, n: usize) -> Self {
        let one_line = match kind {
            WeylType::A => (1..=n as i32).rev().collect(),
            WeylType::D if n % 2 == 0 => (1..=n as i32).map(|x| -x).collect(),
            WeylType::D => (1..=n as i32).map(|x| if x < n as i32 { -x } else { x }).collect(),
        };
        Self { kind, one_line }
    }

    pub fn simple(kind: WeylType, n: usize, i: usize) -> Result<Self> {
        Self::identity(kind, n).times_simple(i)
    }

    pub fn from_word(kind: WeylType, n: usize, word: &Word) -> Result<Self> {
        word.0
            .iter()
            .try_fold(Self::identity(kind, n), |acc, &i| acc.times_simple(i))
    }

    pub fn kind(&self) -> WeylType {
        self.kind
    }

    /// Number of letters permuted.
    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn rank(&self) -> usize {
        rank_of(self.kind, self.n())
    }

    pub fn one_line(&self) -> &[i32] {
        &self.one_line
    }

    /// Value at position `a` (1-based), extended by `w(-a) = -w(a)`.
    pub fn apply(&self, a: i32) -> i32 {
        let v = self.one_line[a.unsigned_abs() as usize - 1];
        if a < 0 {
            -v
        } else {
            v
        }
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        let rank = self.rank();
        if i == 0 || i > rank {
            return Err(WeylError::LetterOutOfRange { letter: i, rank });
        }
        Ok(())
    }

    /// `self · s_i`.
    pub fn times_simple(&self, i: usize) -> Result<Self> {
        self.check_letter(i)?;
        let mut w = self.one_line.clone();
        let n = w.len();
        if self.kind == WeylType::D && i == n {
            let (a, b) = (w[n - 2], w[n - 1]);
            w[n - 2] = -b;
            w[n - 1] = -a;
        } else {
            w.swap(i - 1, i);
        }
        Ok(Self {
            kind: self.kind,
            one_line: w,
        })
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.n() != other.n() {
            return Err(WeylError::TypeMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(Self {
            kind: self.kind,
            one_line: other.one_line.iter().map(|&a| self.apply(a)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0i32; self.n()];
        for (pos, &x) in self.one_line.iter().enumerate() {
            let a = x.unsigned_abs() as usize;
            inv[a - 1] = if x < 0 { -(pos as i32 + 1) } else { pos as i32 + 1 };
        }
        Self {
            kind: self.kind,
            one_line: inv,
        }
    }

    /// Whether `w(ε_i + sign·ε_j)` is a negative root, where `w(ε_a) = ε_{w(a)}`,
    /// `ε_{-b} = -ε_b`, and a root is positive iff its first nonzero coordinate is.
    fn sends_negative(&self, i: usize, j: usize, sign: i32) -> bool {
        let (x, y) = (self.one_line[i - 1], sign * self.one_line[j - 1]);
        if x.abs() < y.abs() {
            x < 0
        } else {
            y < 0
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut len = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                len += usize::from(self.sends_negative(i, j, -1));
                if self.kind == WeylType::D {
                    len += usize::from(self.sends_negative(i, j, 1));
                }
            }
        }
        len
    }

    /// Whether `ℓ(self · s_i) < ℓ(self)`, i.e. `w(α_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.n();
        if self.kind == WeylType::D && i == n {
            self.sends_negative(n - 1, n, 1)
        } else {
            self.sends_negative(i, i + 1, -1)
        }
    }

    /// Reduced word, built by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Word {
        let mut w = self.clone();
        let mut stripped = Vec::new();
        while let Some(i) = (1..=w.rank()).find(|&i| w.has_right_descent(i)) {
            stripped.push(i);
            w = w.times_simple(i).expect("descent index is a valid letter");
        }
        stripped.reverse();
        Word(stripped)
    }
}

/// The Bruhat interval `[e, w]`, as the set of all subword products of a
/// reduced word of `w`.
pub fn lower_interval(w: &WeylElement) -> HashSet<WeylElement> {
    let mut set: HashSet<WeylElement> = HashSet::new();
    set.insert(WeylElement::identity(w.kind, w.n()));
    for &i in &w.reduced_word().0 {
        let extended: Vec<WeylElement> = set
            .iter()
            .map(|x| x.times_simple(i).expect("letter of a reduced word"))
            .collect();
        set.extend(extended);
    }
    set
}

/// `u <= w` in the Bruhat order (subword property).
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    u.check_same_group(w)?;
    if u.length() > w.length() {
        return Ok(false);
    }
    Ok(lower_interval(w).contains(u))
}

/// `#{a <= i : x(a) <= j}` for type A, indexed `[i][j]` with `i, j ∈ [0, n]`.
pub fn rank_table(x: &WeylElement) -> Vec<Vec<usize>> {
    let n = x.n();
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| x.one_line[..i].iter().filter(|&&v| v as usize <= j).count())
                .collect()
        })
        .collect()
}

/// Type-A Bruhat order via rank tables: `u <= w` iff `u[i][j] >= w[i][j]`.
pub fn bruhat_leq_by_ranks(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    u.check_same_group(w)?;
    if u.kind != WeylType::A {
        return Err(WeylError::TypeMismatch(u.to_string(), "type A".into()));
    }
    let (tu, tw) = (rank_table(u), rank_table(w));
    Ok(tu.iter().flatten().zip(tw.iter().flatten()).all(|(a, b)| a >= b))
}

fn enumeration_limit(kind: WeylType) -> usize {
    match kind {
        WeylType::A => 7,
        WeylType::D => 5,
    }
}

/// Every element of the group, sorted by one-line notation.
pub fn elements(kind: WeylType, n: usize) -> Result<Vec<WeylElement>> {
    if n > enumeration_limit(kind) || (kind == WeylType::D && n < 2) {
        return Err(WeylError::RankTooLarge { kind, n });
    }
    let mut perms: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in 1..=n as i32 {
                if !p.iter().any(|&x| x.abs() == v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        match kind {
            WeylType::A => out.push(WeylElement { kind, one_line: p }),
            WeylType::D => {
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() % 2 == 1 {
                        continue;
                    }
                    let one_line = p
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                        .collect();
                    out.push(WeylElement { kind, one_line });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `Σ_{u ∈ W} q^{ℓ(u)}`.
pub fn poincare_polynomial(kind: WeylType, n: usize) -> Result<QPolynomial> {
    let els = elements(kind, n)?;
    Ok(length_generating_function(els.iter()))
}

fn length_generating_function<'a>(els: impl Iterator<Item = &'a WeylElement>) -> QPolynomial {
    let mut coeffs: Vec<i128> = Vec::new();
    for u in els {
        let l = u.length();
        if coeffs.len() <= l {
            coeffs.resize(l + 1, 0);
        }
        coeffs[l] += 1;
    }
    QPolynomial::new(coeffs)
}

/// `Σ_{u <= w} q^{ℓ(u)}`.
pub fn schubert_point_count(w: &WeylElement) -> Result<QPolynomial> {
    if w.n() > enumeration_limit(w.kind) {
        return Err(WeylError::RankTooLarge { kind: w.kind, n: w.n() });
    }
    Ok(length_generating_function(lower_interval(w).iter()))
}

/// A reduced word for `v` ending with `w_word`. It exists iff
/// `x = v · w^{-1}` satisfies `ℓ(x) + ℓ(w) = ℓ(v)`; the result is then a
/// reduced word of `x` followed by `w_word`.
pub fn suffix_extend(w_word: &Word, v: &WeylElement) -> Result<Word> {
    let w = WeylElement::from_word(v.kind, v.n(), w_word)?;
    if w.length() != w_word.len() {
        return Err(WeylError::NotReduced { word: w_word.0.clone() });
    }
    let x = v.compose(&w.inverse())?;
    if x.length() + w.length() != v.length() {
        return Err(WeylError::NoExtension {
            w_word: w_word.0.clone(),
            v: v.to_string(),
        });
    }
    let mut letters = x.reduced_word().0;
    letters.extend_from_slice(&w_word.0);
    Ok(Word(letters))
}

/// Which incidence set a component word describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchubertKind {
    /// `F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1})`
    W,
    /// `F_k ⊆ V_{p_k}`
    V,
}

/// Bruhat maximum of the relative positions, to the reference flag of the
/// standard small flag, over all `F_p`-points of the chosen incidence set.
/// Also returns the number of points enumerated.
pub fn extract_schubert_element(
    nil: &NilpotentA,
    t: &StandardTableau,
    which: SchubertKind,
) -> Result<(WeylElement, u128)> {
    let small = flags_a::standard_small_flag(nil);
    let reference = flags_a::reference_flag(nil, &small)?;
    let rule = match which {
        SchubertKind::W => flags_a::schubert_w_rule(nil, t, &small)?,
        SchubertKind::V => flags_a::schubert_v_rule(nil, t, &small)?,
    };
    let (positions, count) = search::fold_chains(
        &rule,
        || (BTreeSet::new(), 0u128),
        |acc, chain| {
            let f = CompleteFlag::from_chain_unchecked(chain.to_vec());
            acc.0.insert(flags_a::relative_position(&f, &reference).expect("same ambient"));
            acc.1 += 1;
        },
        |mut a, b| {
            a.0.extend(b.0);
            a.1 += b.1;
            a
        },
    );
    let positions: Vec<WeylElement> = positions.into_iter().collect();
    let maximal: Vec<&WeylElement> = positions
        .iter()
        .filter(|u| {
            !positions
                .iter()
                .any(|x| x != *u && bruhat_leq(u, x).expect("same group"))
        })
        .collect();
    if maximal.len() != 1 {
        return Err(WeylError::NoUniqueMaximum {
            maximal: maximal.iter().map(|u| u.one_line.clone()).collect(),
        });
    }
    let top = maximal[0].clone();
    debug_assert_eq!(rule.depth(), nil.n());
    Ok((top, count))
}

/// The pair `(w, v)` of a two-column tableau, extracted at two primes and
/// validated against direct counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWords {
    pub w: WeylElement,
    pub v: WeylElement,
    pub w_word: Word,
    pub v_word: Word,
    pub primes: Vec<u32>,
    pub holdout: u32,
}

/// Extracts `(w, v)` at `primes[0]` and `primes[1]`, requires agreement, and
/// checks the Schubert point counts of both against memoised counts of the
/// incidence sets at `holdout`.
pub fn component_words(n: usize, r: usize, t: &StandardTableau, primes: [u32; 2], holdout: u32) -> Result<ComponentWords> {
    let mut found: Vec<(WeylElement, WeylElement)> = Vec::new();
    for &p in &primes {
        let field = PrimeField::new(p).map_err(FlagError::from)?;
        let nil = NilpotentA::new(n, r, field)?;
        let (w, w_count) = extract_schubert_element(&nil, t, SchubertKind::W)?;
        let (v, v_count) = extract_schubert_element(&nil, t, SchubertKind::V)?;
        for (x, counted) in [(&w, w_count), (&v, v_count)] {
            let expected = schubert_point_count(x)?.eval(p as i128);
            if expected != counted as i128 {
                return Err(WeylError::CountMismatch {
                    p,
                    expected,
                    counted: counted as i128,
                });
            }
        }
        found.push((w, v));
    }
    if found[0] != found[1] {
        return Err(WeylError::PrimeDisagreement {
            p1: primes[0],
            p2: primes[1],
        });
    }
    let (w, v) = found.swap_remove(0);
    let field = PrimeField::new(holdout).map_err(FlagError::from)?;
    let nil = NilpotentA::new(n, r, field)?;
    for (x, which) in [(&w, SchubertKind::W), (&v, SchubertKind::V)] {
        let counted = flags_a::count_schubert_memo(&nil, t, which)?;
        let expected = schubert_point_count(x)?.eval(holdout as i128);
        if expected != counted as i128 {
            return Err(WeylError::CountMismatch {
                p: holdout,
                expected,
                counted: counted as i128,
            });
        }
    }
    Ok(ComponentWords {
        w_word: w.reduced_word(),
        v_word: v.reduced_word(),
        w,
        v,
        primes: primes.to_vec(),
        holdout,
    })
}

/// Relative position of two flags given as chains; see
/// [`flags_a::relative_position`].
pub fn relative_position_of_chains(f: &[Subspace], reference: &[Subspace]) -> Result<WeylElement> {
    let n = f.len() - 1;
    let mut u = vec![0i32; n];
    for i in 1..=n {
        let j = (1..=n)
            .find(|&j| f[i].intersection_dim(&reference[j]) - f[i - 1].intersection_dim(&reference[j]) == 1)
            .expect("V_i/V_{i-1} meets the full space");
        u[i - 1] = j as i32;
    }
    WeylElement::new(WeylType::A, u)
}

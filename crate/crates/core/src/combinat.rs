//! Young diagrams, standard tableaux and standard domino tableaux.
//!
//! Tableaux use the decreasing convention: labels decrease along rows (left to
//! right) and along columns (top to bottom). A tableau of size `n` is the same
//! datum as the chain of diagrams `λ^(i) = τ^{-1}([i+1, n])`, `i = 0..=n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("row lengths {0:?} do not form a Young diagram")]
    NotADiagram(Vec<usize>),
    #[error("shape has {0} columns, at most two allowed")]
    TooManyColumns(usize),
    #[error("rank {r} too large for n = {n}: need 2r <= n")]
    RankTooLarge { n: usize, r: usize },
    #[error("domino tableaux need an even number of boxes, got {0}")]
    OddBoxCount(usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("diagram chain is not a domino chain: {0}")]
    NotADominoChain(String),
}

pub type Result<T> = std::result::Result<T, CombinatError>;

/// Young diagram given by weakly decreasing positive row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(CombinatError::NotADiagram(rows));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Diagram with columns of heights `first >= second`.
    pub fn two_column(first: usize, second: usize) -> Result<Self> {
        if second > first {
            return Err(CombinatError::NotADiagram(vec![first, second]));
        }
        let mut rows = vec![2; second];
        rows.extend(std::iter::repeat_n(1, first - second));
        Ok(Self { rows })
    }

    /// Jordan type of a two-column nilpotent on `F^n` of rank `r`.
    pub fn two_column_for_rank(n: usize, r: usize) -> Result<Self> {
        if 2 * r > n {
            return Err(CombinatError::RankTooLarge { n, r });
        }
        Self::two_column(n - r, r)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn column_height(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&len| len > c).count()
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        self.rows.get(row).is_some_and(|&len| col < len)
    }

    /// Every even part occurs with even multiplicity.
    pub fn is_admissible(&self) -> bool {
        let mut i = 0;
        while i < self.rows.len() {
            let part = self.rows[i];
            let mult = self.rows[i..].iter().take_while(|&&x| x == part).count();
            if part % 2 == 0 && mult % 2 == 1 {
                return false;
            }
            i += mult;
        }
        true
    }

    /// Removable corner boxes, top to bottom.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len())
            .filter(|&i| i + 1 == self.rows.len() || self.rows[i + 1] < self.rows[i])
            .map(|i| (i, self.rows[i] - 1))
            .collect()
    }

    fn without_box(&self, row: usize) -> Self {
        let mut rows = self.rows.clone();
        rows[row] -= 1;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Self { rows }
    }

    fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Boxes of `self` not in `smaller`.
    pub fn difference(&self, smaller: &YoungDiagram) -> Vec<(usize, usize)> {
        self.boxes()
            .filter(|&(r, c)| !smaller.contains_box(r, c))
            .collect()
    }

    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }
}

/// Labels of the second column in increasing order, stored with the sentinels
/// `p_0 = 0` and `p_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SecondColumn {
    labels: Vec<usize>,
    upper_sentinel: usize,
}

impl SecondColumn {
    pub fn new(labels: Vec<usize>, upper_sentinel: usize) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Self {
            labels,
            upper_sentinel,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn r(&self) -> usize {
        self.labels.len()
    }

    /// `p_k` for `k ∈ [0, r+1]`, sentinels included.
    pub fn p(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else if k <= self.labels.len() {
            self.labels[k - 1]
        } else {
            assert_eq!(k, self.labels.len() + 1, "index past the upper sentinel");
            self.upper_sentinel
        }
    }

    pub fn upper_sentinel(&self) -> usize {
        self.upper_sentinel
    }

    /// `#({p_1..p_r} ∩ [1, i])`.
    pub fn count_up_to(&self, i: usize) -> usize {
        self.labels.iter().take_while(|&&p| p <= i).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.labels.binary_search(&i).is_ok()
    }
}

/// Standard tableau (decreasing convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardTableau {
    shape: YoungDiagram,
    entries: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// Validates shape, bijectivity onto `[1, n]` and strict decrease.
    pub fn from_entries(entries: Vec<Vec<usize>>) -> Result<Self> {
        let shape = YoungDiagram::new(entries.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &x in entries.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(CombinatError::InvalidTableau(format!(
                    "labels must be a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        for (r, row) in entries.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if c + 1 < row.len() && row[c + 1] >= x {
                    return Err(CombinatError::InvalidTableau(format!("row {r} not decreasing")));
                }
                if let Some(&below) = entries.get(r + 1).and_then(|next| next.get(c)) {
                    if below >= x {
                        return Err(CombinatError::InvalidTableau(format!(
                            "column {c} not decreasing"
                        )));
                    }
                }
            }
        }
        Ok(Self { shape, entries })
    }

    /// Rebuilds the tableau from `λ^(0) ⊃ λ^(1) ⊃ … ⊃ λ^(n) = ∅`, where
    /// consecutive diagrams differ by one box; that box gets label `i`.
    pub fn from_chain(chain: &[YoungDiagram]) -> Result<Self> {
        let shape = chain
            .first()
            .cloned()
            .ok_or_else(|| CombinatError::InvalidTableau("empty chain".into()))?;
        let n = shape.size();
        if chain.len() != n + 1 || chain[n].size() != 0 {
            return Err(CombinatError::InvalidTableau("chain length mismatch".into()));
        }
        let mut entries: Vec<Vec<usize>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
        for i in 1..=n {
            if !chain[i - 1].contains(&chain[i]) {
                return Err(CombinatError::InvalidTableau(format!("chain not nested at {i}")));
            }
            let diff = chain[i - 1].difference(&chain[i]);
            if diff.len() != 1 {
                return Err(CombinatError::InvalidTableau(format!(
                    "step {i} removes {} boxes",
                    diff.len()
                )));
            }
            let (r, c) = diff[0];
            entries[r][c] = i;
        }
        Self::from_entries(entries)
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// `λ^(i)` for `i = 0..=n`.
    pub fn to_chain(&self) -> Vec<YoungDiagram> {
        let n = self.size();
        (0..=n)
            .map(|i| {
                let rows: Vec<usize> = self
                    .entries
                    .iter()
                    .map(|row| row.iter().filter(|&&x| x > i).count())
                    .collect();
                YoungDiagram::new(rows).expect("suffix of a standard tableau is a diagram")
            })
            .collect()
    }

    pub fn second_column_labels(&self) -> Result<Vec<usize>> {
        if self.shape.num_columns() > 2 {
            return Err(CombinatError::TooManyColumns(self.shape.num_columns()));
        }
        let mut labels: Vec<usize> = self.entries.iter().filter_map(|row| row.get(1).copied()).collect();
        labels.sort_unstable();
        Ok(labels)
    }

    /// Second column with sentinels `p_0 = 0`, `p_{r+1} = n + 1`.
    pub fn second_column(&self) -> Result<SecondColumn> {
        Ok(SecondColumn::new(self.second_column_labels()?, self.size() + 1))
    }

    /// Two-column tableau of size `n` whose second column holds exactly `labels`.
    pub fn two_column_from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        let r = labels.len();
        let shape = YoungDiagram::two_column_for_rank(n, r)?;
        let mut second: Vec<usize> = labels.to_vec();
        second.sort_unstable();
        second.dedup();
        if second.len() != r || second.iter().any(|&x| x == 0 || x > n) {
            return Err(CombinatError::InvalidTableau(format!("bad label set {labels:?}")));
        }
        let mut first: Vec<usize> = (1..=n).filter(|x| !second.contains(x)).collect();
        first.sort_unstable_by(|a, b| b.cmp(a));
        second.reverse();
        let entries: Vec<Vec<usize>> = (0..shape.num_rows())
            .map(|row| {
                if row < r {
                    vec![first[row], second[row]]
                } else {
                    vec![first[row]]
                }
            })
            .collect();
        Self::from_entries(entries)
    }
}

/// All standard tableaux of `shape`, built by removing corner boxes with
/// labels `1, 2, …, n`. Sorted by flattened row-major entries.
pub fn enumerate_standard_tableaux(shape: &YoungDiagram) -> Vec<StandardTableau> {
    fn rec(current: &YoungDiagram, label: usize, entries: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if current.size() == 0 {
            out.push(entries.clone());
            return;
        }
        for (r, c) in current.corners() {
            entries[r][c] = label;
            rec(&current.without_box(r), label + 1, entries, out);
            entries[r][c] = 0;
        }
    }
    let mut entries: Vec<Vec<usize>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
    let mut raw = Vec::new();
    rec(shape, 1, &mut entries, &mut raw);
    raw.sort();
    raw.into_iter()
        .map(|e| StandardTableau::from_entries(e).expect("corner removal yields standard tableaux"))
        .collect()
}

/// Standard tableaux of the two-column shape with column heights `(n - r, r)`,
/// ordered by their second-column label lists.
pub fn enumerate_two_column_tableaux(n: usize, r: usize) -> Result<Vec<StandardTableau>> {
    let shape = YoungDiagram::two_column_for_rank(n, r)?;
    let mut all = enumerate_standard_tableaux(&shape);
    all.sort_by_key(|t| t.second_column_labels().expect("two-column shape"));
    Ok(all)
}

pub fn second_column_labels(t: &StandardTableau) -> Result<Vec<usize>> {
    t.second_column_labels()
}

/// A domino: two adjacent boxes, listed in row-major order.
pub type Domino = [(usize, usize); 2];

/// Standard domino tableau (decreasing convention): each label `1..=n` covers
/// two adjacent boxes and every `τ^{-1}([i+1, n])` is a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominoTableau {
    shape: YoungDiagram,
    entries: Vec<Vec<usize>>,
}

fn removable_dominoes(d: &YoungDiagram) -> Vec<(Domino, YoungDiagram)> {
    let rows = d.rows();
    let mut out = Vec::new();
    for i in 0..rows.len() {
        let len = rows[i];
        let next = rows.get(i + 1).copied().unwrap_or(0);
        // horizontal: last two boxes of row i
        if len >= 2 && next <= len - 2 {
            let mut r = rows.to_vec();
            r[i] -= 2;
            out.push(([(i, len - 2), (i, len - 1)], YoungDiagram::new(r).unwrap()));
        }
        // vertical: last box of rows i and i+1 when they have equal length
        if i + 1 < rows.len() && rows[i + 1] == len {
            let after = rows.get(i + 2).copied().unwrap_or(0);
            if after < len {
                let mut r = rows.to_vec();
                r[i] -= 1;
                r[i + 1] -= 1;
                out.push(([(i, len - 1), (i + 1, len - 1)], YoungDiagram::new(r).unwrap()));
            }
        }
    }
    out
}

impl DominoTableau {
    pub fn from_entries(entries: Vec<Vec<usize>>) -> Result<Self> {
        let shape = YoungDiagram::new(entries.iter().map(Vec::len).collect())?;
        let size = shape.size();
        if size % 2 == 1 {
            return Err(CombinatError::OddBoxCount(size));
        }
        let t = Self { shape, entries };
        let chain = t.to_chain_unchecked()?;
        for i in 1..chain.len() {
            let diff = chain[i - 1].difference(&chain[i]);
            if diff.len() != 2 || !adjacent(diff[0], diff[1]) {
                return Err(CombinatError::InvalidTableau(format!("label {i} is not a domino")));
            }
        }
        Ok(t)
    }

    /// Rebuilds the tableau from a chain `λ^(0) ⊃ … ⊃ λ^(n) = ∅` in which
    /// consecutive diagrams differ by a domino.
    pub fn from_chain(chain: &[YoungDiagram]) -> Result<Self> {
        let shape = chain
            .first()
            .cloned()
            .ok_or_else(|| CombinatError::NotADominoChain("empty chain".into()))?;
        let n = chain.len() - 1;
        if shape.size() != 2 * n || chain[n].size() != 0 {
            return Err(CombinatError::NotADominoChain("chain length mismatch".into()));
        }
        let mut entries: Vec<Vec<usize>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
        for i in 1..=n {
            if !chain[i - 1].contains(&chain[i]) {
                return Err(CombinatError::NotADominoChain(format!("not nested at step {i}")));
            }
            let diff = chain[i - 1].difference(&chain[i]);
            if diff.len() != 2 || !adjacent(diff[0], diff[1]) {
                return Err(CombinatError::NotADominoChain(format!(
                    "step {i} removes {diff:?}"
                )));
            }
            for (r, c) in diff {
                entries[r][c] = i;
            }
        }
        Self::from_entries(entries)
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// Number of dominoes.
    pub fn n(&self) -> usize {
        self.shape.size() / 2
    }

    fn to_chain_unchecked(&self) -> Result<Vec<YoungDiagram>> {
        let n = self.n();
        let mut counts = vec![0usize; n + 1];
        for &x in self.entries.iter().flatten() {
            if x == 0 || x > n {
                return Err(CombinatError::InvalidTableau(format!("label {x} out of range")));
            }
            counts[x] += 1;
        }
        if counts[1..].iter().any(|&c| c != 2) {
            return Err(CombinatError::InvalidTableau("each label must occur twice".into()));
        }
        (0..=n)
            .map(|i| {
                let rows: Vec<usize> = self
                    .entries
                    .iter()
                    .map(|row| {
                        let k = row.iter().take_while(|&&x| x > i).count();
                        if row[k..].iter().any(|&x| x > i) {
                            usize::MAX
                        } else {
                            k
                        }
                    })
                    .collect();
                if rows.contains(&usize::MAX) {
                    return Err(CombinatError::InvalidTableau(format!(
                        "labels > {i} do not form a diagram"
                    )));
                }
                YoungDiagram::new(rows).map_err(|_| {
                    CombinatError::InvalidTableau(format!("labels > {i} do not form a diagram"))
                })
            })
            .collect()
    }

    /// `λ^(i) = τ^{-1}([i+1, n])` for `i = 0..=n`.
    pub fn to_chain(&self) -> Vec<YoungDiagram> {
        self.to_chain_unchecked().expect("validated at construction")
    }

    /// The domino tiles, indexed by label (`tiles()[i-1]` holds label `i`).
    pub fn tiles(&self) -> Vec<Domino> {
        let n = self.n();
        let mut cells: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                cells[x - 1].push((r, c));
            }
        }
        cells.into_iter().map(|v| [v[0], v[1]]).collect()
    }

    pub fn all_vertical(&self) -> bool {
        self.tiles().iter().all(|[a, b]| a.1 == b.1)
    }

    pub fn is_admissible(&self) -> bool {
        self.to_chain().iter().all(YoungDiagram::is_admissible)
    }

    /// Labels of the tiles lying in the second column, increasing.
    pub fn second_column_labels(&self) -> Result<Vec<usize>> {
        if self.shape.num_columns() > 2 {
            return Err(CombinatError::TooManyColumns(self.shape.num_columns()));
        }
        let mut labels: Vec<usize> = self.entries.iter().filter_map(|row| row.get(1).copied()).collect();
        labels.sort_unstable();
        labels.dedup();
        Ok(labels)
    }

    /// Second column with sentinels `p_0 = 0`, `p_{r+1} = 2n + 1`.
    pub fn second_column(&self) -> Result<SecondColumn> {
        Ok(SecondColumn::new(self.second_column_labels()?, 2 * self.n() + 1))
    }
}

fn adjacent(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 == b.0 && a.1.abs_diff(b.1) == 1) || (a.1 == b.1 && a.0.abs_diff(b.0) == 1)
}

/// All standard domino tableaux of `shape`, sorted by flattened row-major entries.
pub fn enumerate_domino_tableaux(shape: &YoungDiagram) -> Result<Vec<DominoTableau>> {
    if shape.size() % 2 == 1 {
        return Err(CombinatError::OddBoxCount(shape.size()));
    }
    fn rec(current: &YoungDiagram, label: usize, entries: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if current.size() == 0 {
            out.push(entries.clone());
            return;
        }
        for (domino, rest) in removable_dominoes(current) {
            for &(r, c) in &domino {
                entries[r][c] = label;
            }
            rec(&rest, label + 1, entries, out);
            for &(r, c) in &domino {
                entries[r][c] = 0;
            }
        }
    }
    let mut entries: Vec<Vec<usize>> = shape.rows().iter().map(|&l| vec![0; l]).collect();
    let mut raw = Vec::new();
    rec(shape, 1, &mut entries, &mut raw);
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|e| DominoTableau::from_entries(e).expect("domino removal yields domino tableaux"))
        .collect())
}

pub fn is_admissible(t: &DominoTableau) -> bool {
    t.is_admissible()
}

/// Shape `(2^{2r}, 1^{2n-4r})`: the Jordan type of a two-column orthogonal
/// nilpotent of rank `2r` on `F^{2n}`.
pub fn two_column_domino_shape(n: usize, r: usize) -> Result<YoungDiagram> {
    if 2 * r > n {
        return Err(CombinatError::RankTooLarge { n, r });
    }
    YoungDiagram::two_column(2 * n - 2 * r, 2 * r)
}

#[derive(Clone, Debug, Serialize)]
pub struct DominoCheckReport {
    pub shape: YoungDiagram,
    pub total_tableaux: usize,
    pub admissible: Vec<DominoTableau>,
    pub all_vertical: bool,
}

/// Admissible standard domino tableaux of the two-column shape with `2n` boxes
/// and second column of height `2r`, with the outcome of the vertical-tile scan.
pub fn two_column_domino_check(n: usize, r: usize) -> Result<DominoCheckReport> {
    let shape = two_column_domino_shape(n, r)?;
    domino_check_for_shape(&shape)
}

pub fn domino_check_for_shape(shape: &YoungDiagram) -> Result<DominoCheckReport> {
    if shape.num_columns() > 2 {
        return Err(CombinatError::TooManyColumns(shape.num_columns()));
    }
    let all = enumerate_domino_tableaux(shape)?;
    let total_tableaux = all.len();
    let admissible: Vec<DominoTableau> = all.into_iter().filter(DominoTableau::is_admissible).collect();
    let all_vertical = admissible.iter().all(DominoTableau::all_vertical);
    Ok(DominoCheckReport {
        shape: shape.clone(),
        total_tableaux,
        admissible,
        all_vertical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hook_length_count(shape: &YoungDiagram) -> u128 {
        let n = shape.size() as u128;
        let mut num: u128 = (1..=n).product();
        let mut den: u128 = 1;
        for (r, &len) in shape.rows().iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape.column_height(c) - r - 1;
                den *= (arm + leg + 1) as u128;
            }
        }
        num /= den;
        num
    }

    #[test]
    fn diagram_validation() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert_eq!(YoungDiagram::new(vec![2, 1, 0]).unwrap().rows(), &[2, 1]);
        assert_eq!(YoungDiagram::two_column(3, 1).unwrap().rows(), &[2, 1, 1]);
    }

    #[test]
    fn admissibility_of_partitions() {
        assert!(YoungDiagram::new(vec![1, 1]).unwrap().is_admissible());
        assert!(!YoungDiagram::new(vec![2]).unwrap().is_admissible());
        assert!(YoungDiagram::new(vec![2, 2, 1]).unwrap().is_admissible());
        assert!(YoungDiagram::new(vec![3, 3]).unwrap().is_admissible());
        assert!(!YoungDiagram::new(vec![2, 1, 1]).unwrap().is_admissible());
    }

    #[test]
    fn small_two_column_counts() {
        let t = enumerate_two_column_tableaux(2, 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].entries(), &[vec![2, 1]]);
        assert_eq!(t[0].second_column_labels().unwrap(), vec![1]);

        let t = enumerate_two_column_tableaux(4, 2).unwrap();
        assert_eq!(t.len(), 2);
        let labels: Vec<_> = t.iter().map(|x| x.second_column_labels().unwrap()).collect();
        assert_eq!(labels, vec![vec![1, 2], vec![1, 3]]);

        let t = enumerate_two_column_tableaux(3, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].second_column_labels().unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn rank_too_large_rejected() {
        assert_eq!(
            enumerate_two_column_tableaux(3, 2),
            Err(CombinatError::RankTooLarge { n: 3, r: 2 })
        );
    }

    #[test]
    fn three_columns_rejected() {
        let t = enumerate_standard_tableaux(&YoungDiagram::new(vec![3]).unwrap());
        assert_eq!(t[0].second_column_labels(), Err(CombinatError::TooManyColumns(3)));
    }

    #[test]
    fn counts_match_hook_length_formula() {
        for n in 0..=8 {
            for r in 0..=n / 2 {
                let shape = YoungDiagram::two_column_for_rank(n, r).unwrap();
                let got = enumerate_two_column_tableaux(n, r).unwrap().len() as u128;
                assert_eq!(got, hook_length_count(&shape), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn chain_round_trip() {
        for n in 0..=7 {
            for r in 0..=n / 2 {
                for t in enumerate_two_column_tableaux(n, r).unwrap() {
                    assert_eq!(StandardTableau::from_chain(&t.to_chain()).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for t in enumerate_two_column_tableaux(6, 2).unwrap() {
            let labels = t.second_column_labels().unwrap();
            assert_eq!(StandardTableau::two_column_from_labels(6, &labels).unwrap(), t);
        }
    }

    #[test]
    fn sentinels() {
        let t = StandardTableau::two_column_from_labels(5, &[2, 4]).unwrap();
        let sc = t.second_column().unwrap();
        assert_eq!((sc.p(0), sc.p(1), sc.p(2), sc.p(3)), (0, 2, 4, 6));
        assert_eq!(sc.count_up_to(3), 1);
    }

    #[test]
    fn domino_example_three_three() {
        let shape = YoungDiagram::new(vec![3, 3]).unwrap();
        let all = enumerate_domino_tableaux(&shape).unwrap();
        let entries: Vec<_> = all.iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![
                vec![vec![3, 2, 1], vec![3, 2, 1]],
                vec![vec![3, 2, 2], vec![3, 1, 1]],
                vec![vec![3, 3, 1], vec![2, 2, 1]],
            ]
        );
        let adm: Vec<bool> = all.iter().map(DominoTableau::is_admissible).collect();
        assert_eq!(adm, vec![true, true, false]);
    }

    #[test]
    fn single_dominoes() {
        let v = enumerate_domino_tableaux(&YoungDiagram::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].all_vertical() && v[0].is_admissible());
        let h = enumerate_domino_tableaux(&YoungDiagram::new(vec![2]).unwrap()).unwrap();
        assert_eq!(h.len(), 1);
        assert!(!h[0].all_vertical());
        assert!(!h[0].is_admissible());
    }

    #[test]
    fn odd_box_count_rejected() {
        assert_eq!(
            enumerate_domino_tableaux(&YoungDiagram::new(vec![2, 1]).unwrap()),
            Err(CombinatError::OddBoxCount(3))
        );
    }

    #[test]
    fn invalid_domino_entries_rejected() {
        assert!(DominoTableau::from_entries(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(DominoTableau::from_entries(vec![vec![2, 2], vec![1, 1]]).is_ok());
    }

    #[test]
    fn vertical_tiles_small_cases() {
        let rep = two_column_domino_check(1, 0).unwrap();
        assert_eq!(rep.admissible.len(), 1);
        assert!(rep.all_vertical);
        for (n, r) in [(2, 1), (3, 1)] {
            let rep = two_column_domino_check(n, r).unwrap();
            assert!(!rep.admissible.is_empty());
            assert!(rep.all_vertical);
            for t in &rep.admissible {
                let labels = t.second_column_labels().unwrap();
                assert_eq!(labels.len(), r);
                assert!(labels.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn domino_chain_round_trip() {
        let shape = YoungDiagram::two_column(4, 2).unwrap();
        for t in enumerate_domino_tableaux(&shape).unwrap() {
            assert_eq!(DominoTableau::from_chain(&t.to_chain()).unwrap(), t);
        }
    }

    #[test]
    fn json_form() {
        let t = StandardTableau::two_column_from_labels(2, &[1]).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"shape":[2],"entries":[[2,1]]}"#
        );
    }
}

//! Exact linear algebra over prime fields.
//!
//! Every subspace is kept in reduced row-echelon form, so two subspaces are
//! equal exactly when their representations are equal. All geometry in this
//! crate (flags, kernels, images, orthogonal complements) is expressed through
//! [`Subspace`] and [`MatrixFp`].

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("characteristic 2 is not allowed for this construction")]
    EvenCharacteristic,
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix of shape {rows}x{cols} cannot act on F_p^{ambient}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        ambient: usize,
    },
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("lower subspace is not contained in upper subspace")]
    NotContained,
    #[error("requested dimension {k} outside [{lo}, {hi}]")]
    DimensionOutOfRange { k: usize, lo: usize, hi: usize },
}

pub type Result<T> = std::result::Result<T, GfError>;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > (1 << 30) {
            return Err(GfError::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// Same as [`PrimeField::new`] but rejects `p = 2`.
    pub fn new_odd(p: u32) -> Result<Self> {
        let f = Self::new(p)?;
        f.require_odd()?;
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn require_odd(&self) -> Result<()> {
        if self.p == 2 {
            Err(GfError::EvenCharacteristic)
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + self.p as u64 - b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn check_same(&self, other: &PrimeField) -> Result<()> {
        if self.p != other.p {
            Err(GfError::FieldMismatch {
                left: self.p,
                right: other.p,
            })
        } else {
            Ok(())
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over `F_p`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.reduce(x)))
            .collect();
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(GfError::ShapeMismatch {
                rows: other.rows,
                cols: other.cols,
                ambient: self.cols,
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).dim()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `u^T M v`.
    pub fn pair(&self, u: &[u32], v: &[u32]) -> u32 {
        let mv = self.apply(v);
        dot(self.field, u, &mv)
    }

    fn check_acts_on(&self, ambient: usize) -> Result<()> {
        if self.cols != ambient {
            return Err(GfError::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                ambient,
            });
        }
        Ok(())
    }
}

pub fn dot(f: PrimeField, u: &[u32], v: &[u32]) -> u32 {
    u.iter()
        .zip(v)
        .fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// A linear subspace of `F_p^m` stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    dim: usize,
    basis: Vec<u32>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for row in self.rows() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            dim: 0,
            basis: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        rref(&MatrixFp::identity(field, ambient))
    }

    /// Span of the given vectors (entries already reduced mod p).
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient");
            data.extend(v.iter().map(|&x| x % field.p()));
        }
        Self::from_flat(field, ambient, data)
    }

    /// Span of the standard basis vectors `e_i` for the given 0-based indices.
    pub fn coordinate(field: PrimeField, ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<Vec<u32>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(field, ambient, &vectors)
    }

    fn from_flat(field: PrimeField, ambient: usize, mut data: Vec<u32>) -> Self {
        let dim = reduce_in_place(field, ambient, &mut data);
        data.truncate(dim * ambient);
        Self {
            field,
            ambient,
            dim,
            basis: data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.basis[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.dim).map(move |i| self.row(i))
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// Flattened canonical basis; the key for the canonical enumeration order.
    pub fn flat_basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().position(|&x| x != 0).expect("zero row in canonical basis"))
            .collect()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut w = v.to_vec();
        for row in self.rows() {
            let piv = row.iter().position(|&x| x != 0).unwrap();
            let c = w[piv];
            if c != 0 {
                for (wj, &rj) in w.iter_mut().zip(row) {
                    *wj = f.sub(*wj, f.mul(c, rj));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim <= self.dim && other.rows().all(|r| self.contains_vector(r))
    }

    pub fn is_contained_in(&self, other: &Subspace) -> bool {
        other.contains(self)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.ambient != other.ambient {
            return Err(GfError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// The annihilator `{x : <x, w> = 0 for all w}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let f = self.field;
        let pivots = self.pivots();
        let mut is_pivot = vec![None; self.ambient];
        for (a, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(a);
        }
        let mut vectors = Vec::new();
        for free in 0..self.ambient {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut x = vec![0u32; self.ambient];
            x[free] = 1;
            for (a, &c) in pivots.iter().enumerate() {
                x[c] = f.neg(self.row(a)[free]);
            }
            vectors.push(x);
        }
        Subspace::span(f, self.ambient, &vectors)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut data = self.basis.clone();
        data.extend_from_slice(&other.basis);
        Ok(Self::from_flat(self.field, self.ambient, data))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `dim(self ∩ other)`, computed as `dim A + dim B - dim(A + B)`.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut data = self.basis.clone();
        data.extend_from_slice(&other.basis);
        let rank = reduce_in_place(self.field, self.ambient, &mut data);
        self.dim + other.dim - rank
    }

    /// `self + span(v)`.
    pub fn with_vector(&self, v: &[u32]) -> Subspace {
        let mut data = self.basis.clone();
        data.extend_from_slice(v);
        Self::from_flat(self.field, self.ambient, data)
    }

    /// Vectors extending a basis of `inner` to a basis of `self`, picked greedily
    /// from the canonical basis of `self`.
    pub fn complement_basis(&self, inner: &Subspace) -> Result<Vec<Vec<u32>>> {
        self.check_compatible(inner)?;
        if !self.contains(inner) {
            return Err(GfError::NotContained);
        }
        let mut acc = inner.clone();
        let mut out = Vec::new();
        for row in self.rows() {
            if !acc.contains_vector(row) {
                acc = acc.with_vector(row);
                out.push(row.to_vec());
            }
        }
        Ok(out)
    }

    /// Whether `form(u, v) = 0` for all `u, v` in the subspace.
    pub fn is_isotropic(&self, form: &MatrixFp) -> bool {
        self.rows()
            .all(|u| self.rows().all(|v| form.pair(u, v) == 0))
    }
}

/// Row-reduces `data` (rows of width `ambient`) in place; returns the rank.
/// Afterwards the first `rank` rows are the reduced row-echelon basis.
fn reduce_in_place(f: PrimeField, ambient: usize, data: &mut [u32]) -> usize {
    let nrows = if ambient == 0 { 0 } else { data.len() / ambient };
    let mut rank = 0;
    for col in 0..ambient {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| data[r * ambient + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..ambient {
                data.swap(piv * ambient + j, rank * ambient + j);
            }
        }
        let inv = f.inv(data[rank * ambient + col]);
        if inv != 1 {
            for j in col..ambient {
                let idx = rank * ambient + j;
                data[idx] = f.mul(data[idx], inv);
            }
        }
        for r in 0..nrows {
            if r == rank {
                continue;
            }
            let c = data[r * ambient + col];
            if c == 0 {
                continue;
            }
            for j in col..ambient {
                let v = f.mul(c, data[rank * ambient + j]);
                let idx = r * ambient + j;
                data[idx] = f.sub(data[idx], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Row space of `m` in canonical form.
pub fn rref(m: &MatrixFp) -> Subspace {
    Subspace::from_flat(m.field, m.cols, m.data.clone())
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// `N(w)`.
pub fn image(n: &MatrixFp, w: &Subspace) -> Result<Subspace> {
    n.field.check_same(&w.field)?;
    n.check_acts_on(w.ambient)?;
    let vectors: Vec<Vec<u32>> = w.rows().map(|r| n.apply(r)).collect();
    Ok(Subspace::span(n.field, n.rows, &vectors))
}

/// `Im N`, i.e. the column space.
pub fn column_space(n: &MatrixFp) -> Subspace {
    rref(&n.transpose())
}

pub fn kernel(n: &MatrixFp) -> Subspace {
    rref(n).annihilator()
}

/// `N^{-1}(w) = {v : N v ∈ w}`.
pub fn preimage(n: &MatrixFp, w: &Subspace) -> Result<Subspace> {
    n.field.check_same(&w.field)?;
    if n.rows != w.ambient {
        return Err(GfError::ShapeMismatch {
            rows: n.rows,
            cols: n.cols,
            ambient: w.ambient,
        });
    }
    let ann = w.annihilator();
    let f = n.field;
    let mut data = Vec::with_capacity(ann.dim * n.cols);
    for a in ann.rows() {
        for j in 0..n.cols {
            let mut acc = 0u32;
            for (i, &ai) in a.iter().enumerate() {
                if ai != 0 {
                    acc = f.add(acc, f.mul(ai, n.get(i, j)));
                }
            }
            data.push(acc);
        }
    }
    Ok(Subspace::from_flat(f, n.cols, data).annihilator())
}

/// `w^⊥ = {v : form(u, v) = 0 for all u ∈ w}`.
pub fn orth_complement(w: &Subspace, form: &MatrixFp) -> Result<Subspace> {
    w.field.check_same(&form.field)?;
    if form.rows != form.cols || form.rows != w.ambient {
        return Err(GfError::ShapeMismatch {
            rows: form.rows,
            cols: form.cols,
            ambient: w.ambient,
        });
    }
    if form.rank() != form.rows {
        return Err(GfError::DegenerateForm);
    }
    Ok(orth_complement_unchecked(w, form))
}

/// Orthogonal complement without the nondegeneracy check; for hot loops where
/// the form was validated once.
pub fn orth_complement_unchecked(w: &Subspace, form: &MatrixFp) -> Subspace {
    let vectors: Vec<Vec<u32>> = w
        .rows()
        .map(|u| {
            // row vector u^T G
            (0..form.cols)
                .map(|j| {
                    u.iter().enumerate().fold(0u32, |acc, (i, &ui)| {
                        form.field.add(acc, form.field.mul(ui, form.get(i, j)))
                    })
                })
                .collect()
        })
        .collect();
    Subspace::span(w.field, w.ambient, &vectors).annihilator()
}

/// Coefficients `c` with `Σ c_a basis[a] = v`, if `v` lies in the span.
pub fn solve_combination(f: PrimeField, basis: &[Vec<u32>], v: &[u32]) -> Option<Vec<u32>> {
    let m = basis.len();
    let ambient = v.len();
    // Augmented system: columns are basis vectors, rows are coordinates.
    let width = m + 1;
    let mut data = vec![0u32; ambient * width];
    for i in 0..ambient {
        for (a, b) in basis.iter().enumerate() {
            data[i * width + a] = b[i];
        }
        data[i * width + m] = v[i];
    }
    let rank = reduce_in_place(f, width, &mut data);
    let mut coeffs = vec![0u32; m];
    for r in 0..rank {
        let row = &data[r * width..(r + 1) * width];
        let piv = row.iter().position(|&x| x != 0).unwrap();
        if piv == m {
            return None;
        }
        coeffs[piv] = row[m];
    }
    // Verify (handles dependent basis input).
    let mut check = vec![0u32; ambient];
    for (a, b) in basis.iter().enumerate() {
        for i in 0..ambient {
            check[i] = f.add(check[i], f.mul(coeffs[a], b[i]));
        }
    }
    (check == v).then_some(coeffs)
}

/// Matrix of the operator induced by `n` on `outer / inner`.
///
/// Both subspaces must be `n`-stable. The quotient basis is
/// `outer.complement_basis(inner)`.
pub fn quotient_operator(n: &MatrixFp, outer: &Subspace, inner: &Subspace) -> Result<MatrixFp> {
    let f = n.field;
    let comp = outer.complement_basis(inner)?;
    let mut full_basis = inner.basis_vectors();
    let k = full_basis.len();
    full_basis.extend(comp.iter().cloned());
    let m = comp.len();
    let mut q = MatrixFp::zeros(f, m, m);
    for (a, c) in comp.iter().enumerate() {
        let image = n.apply(c);
        let coeffs = solve_combination(f, &full_basis, &image).ok_or(GfError::NotContained)?;
        for b in 0..m {
            q.data[b * m + a] = coeffs[k + b];
        }
    }
    Ok(q)
}

/// Jordan type of a nilpotent matrix as a partition (weakly decreasing block
/// sizes). Returns `None` if the matrix is not nilpotent.
pub fn nilpotent_jordan_type(m: &MatrixFp) -> Option<Vec<usize>> {
    assert_eq!(m.rows, m.cols);
    let size = m.rows;
    let mut ranks = vec![size];
    let mut power = MatrixFp::identity(m.field, size);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > size + 1 {
            return None;
        }
        power = power.mul(m).ok()?;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            return None;
        }
        ranks.push(r);
    }
    // at_least[k-1] = number of blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &cnt) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..(cnt - next) {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

/// Calls `visit` on every `k`-dimensional subspace `S` with
/// `lower ⊆ S ⊆ upper`, in a deterministic (but not sorted) order.
pub fn for_each_subspace_between(
    k: usize,
    lower: &Subspace,
    upper: &Subspace,
    mut visit: impl FnMut(Subspace),
) -> Result<()> {
    let comp = upper.complement_basis(lower)?;
    let lo = lower.dim();
    let hi = upper.dim();
    if k < lo || k > hi {
        return Err(GfError::DimensionOutOfRange { k, lo, hi });
    }
    let j = k - lo;
    let c = comp.len();
    let f = lower.field;
    let p = f.p();
    let ambient = lower.ambient;
    let mut pivots: Vec<usize> = (0..j).collect();
    loop {
        // free positions: (row a, column b) with b > pivots[a] and b not a pivot
        let free: Vec<(usize, usize)> = (0..j)
            .flat_map(|a| {
                let pv = &pivots;
                ((pv[a] + 1)..c)
                    .filter(move |b| !pv.contains(b))
                    .map(move |b| (a, b))
            })
            .collect();
        let mut values = vec![0u32; free.len()];
        loop {
            let mut data = lower.basis.clone();
            for a in 0..j {
                let mut x = comp[pivots[a]].clone();
                for (idx, &(ra, b)) in free.iter().enumerate() {
                    if ra == a && values[idx] != 0 {
                        for (xi, &ci) in x.iter_mut().zip(&comp[b]) {
                            *xi = f.add(*xi, f.mul(values[idx], ci));
                        }
                    }
                }
                data.extend_from_slice(&x);
            }
            visit(Subspace::from_flat(f, ambient, data));
            // odometer
            let mut pos = 0;
            while pos < values.len() {
                values[pos] += 1;
                if values[pos] < p {
                    break;
                }
                values[pos] = 0;
                pos += 1;
            }
            if pos == values.len() {
                break;
            }
        }
        if !next_combination(&mut pivots, c) {
            break;
        }
    }
    Ok(())
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `k`-dimensional subspace between `lower` and `upper`, each once, in
/// lexicographic order of the flattened canonical basis.
pub fn enumerate_subspaces(k: usize, lower: &Subspace, upper: &Subspace) -> Result<Vec<Subspace>> {
    lower.check_compatible(upper)?;
    if !upper.contains(lower) {
        return Err(GfError::NotContained);
    }
    let mut out = Vec::new();
    for_each_subspace_between(k, lower, upper, |s| out.push(s))?;
    out.sort_unstable_by(|a, b| a.basis.cmp(&b.basis));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn all_vectors(field: PrimeField, m: usize) -> Vec<Vec<u32>> {
        let p = field.p();
        let total = (p as usize).pow(m as u32);
        (0..total)
            .map(|mut x| {
                (0..m)
                    .map(|_| {
                        let d = (x % p as usize) as u32;
                        x /= p as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn field_rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(GfError::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(GfError::NotPrime(1)));
        assert_eq!(PrimeField::new_odd(2), Err(GfError::EvenCharacteristic));
        assert!(PrimeField::new(37).is_ok());
    }

    #[test]
    fn rref_drops_zero_rows() {
        let m = MatrixFp::from_rows(f(2), &[vec![1, 1], vec![0, 0]]);
        let s = rref(&m);
        assert_eq!(s.basis_vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn rref_identity_is_full() {
        let s = rref(&MatrixFp::identity(f(3), 3));
        assert_eq!(s.dim(), 3);
        assert_eq!(s, Subspace::full(f(3), 3));
    }

    #[test]
    fn rref_scalar_multiple_row() {
        // (2,4) = 2 * (1,2) over F_5
        let m = MatrixFp::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let s = rref(&m);
        assert_eq!(s.basis_vectors(), vec![vec![1, 2]]);
        assert_eq!(Subspace::span(f(5), 2, &s.basis_vectors()), s);
    }

    #[test]
    fn distinct_lines_in_plane() {
        let a = Subspace::span(f(2), 2, &[vec![1, 0]]);
        let b = Subspace::span(f(2), 2, &[vec![1, 1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(f(2), 2));
    }

    #[test]
    fn nested_sum_and_intersection() {
        let a = Subspace::span(f(3), 3, &[vec![1, 2, 0]]);
        let b = Subspace::span(f(3), 3, &[vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), b);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(f(3), 2);
        let b = Subspace::zero(f(3), 3);
        assert!(matches!(a.sum(&b), Err(GfError::AmbientMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(GfError::AmbientMismatch { .. })));
    }

    #[test]
    fn planes_in_f3_4_against_membership_oracle() {
        let field = f(3);
        let a = Subspace::span(field, 4, &[vec![1, 0, 2, 1], vec![0, 1, 1, 0]]);
        let b = Subspace::span(field, 4, &[vec![1, 1, 0, 1], vec![0, 0, 1, 2]]);
        let vecs = all_vectors(field, 4);
        let in_both = vecs
            .iter()
            .filter(|v| a.contains_vector(v) && b.contains_vector(v))
            .count();
        let i = a.intersect(&b).unwrap();
        assert_eq!(in_both, 3usize.pow(i.dim() as u32));
        for v in &vecs {
            assert_eq!(i.contains_vector(v), a.contains_vector(v) && b.contains_vector(v));
        }
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let field = f(3);
        let n = MatrixFp::from_rows(field, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let zero = Subspace::zero(field, 3);
        assert_eq!(preimage(&n, &zero).unwrap(), kernel(&n));
        assert_eq!(image(&n, &Subspace::full(field, 3)).unwrap(), column_space(&n));
        assert!(kernel(&n).contains(&column_space(&n)));
    }

    #[test]
    fn preimage_of_image_for_jordan_block() {
        let field = f(3);
        let n = MatrixFp::from_rows(field, &[vec![0, 1], vec![0, 0]]);
        let im = column_space(&n);
        let pre = preimage(&n, &im).unwrap();
        let brute = all_vectors(field, 2)
            .into_iter()
            .filter(|v| im.contains_vector(&n.apply(v)))
            .count();
        assert_eq!(brute, 9);
        assert_eq!(pre, Subspace::full(field, 2));
    }

    fn split_form(field: PrimeField, m: usize) -> MatrixFp {
        let mut g = MatrixFp::zeros(field, m, m);
        for i in 0..m {
            g.set(i, m - 1 - i, 1);
        }
        g
    }

    #[test]
    fn orth_complement_extremes() {
        let field = f(3);
        let g = split_form(field, 4);
        assert_eq!(
            orth_complement(&Subspace::zero(field, 4), &g).unwrap(),
            Subspace::full(field, 4)
        );
        assert!(orth_complement(&Subspace::full(field, 4), &g).unwrap().is_zero());
    }

    #[test]
    fn isotropic_line_lies_in_its_complement() {
        let field = f(3);
        let g = split_form(field, 4);
        let line = Subspace::span(field, 4, &[vec![1, 0, 0, 0]]);
        let perp = orth_complement(&line, &g).unwrap();
        let brute: Vec<Vec<u32>> = all_vectors(field, 4)
            .into_iter()
            .filter(|v| g.pair(line.row(0), v) == 0)
            .collect();
        assert_eq!(brute.len(), 27);
        assert!(brute.iter().all(|v| perp.contains_vector(v)));
        assert!(perp.contains(&line));
    }

    #[test]
    fn degenerate_form_rejected() {
        let field = f(3);
        let g = MatrixFp::zeros(field, 2, 2);
        assert_eq!(
            orth_complement(&Subspace::zero(field, 2), &g),
            Err(GfError::DegenerateForm)
        );
    }

    #[test]
    fn enumerate_trivial_range() {
        let field = f(3);
        let lower = Subspace::span(field, 3, &[vec![1, 0, 0]]);
        let upper = Subspace::full(field, 3);
        assert_eq!(enumerate_subspaces(1, &lower, &upper).unwrap(), vec![lower.clone()]);
    }

    #[test]
    fn enumerate_planes_of_f2_4() {
        let field = f(2);
        let zero = Subspace::zero(field, 4);
        let full = Subspace::full(field, 4);
        let got = enumerate_subspaces(2, &zero, &full).unwrap();
        // oracle: spans of all pairs of vectors, deduplicated
        let vecs = all_vectors(field, 4);
        let mut brute = std::collections::BTreeSet::new();
        for u in &vecs {
            for v in &vecs {
                let s = Subspace::span(field, 4, &[u.clone(), v.clone()]);
                if s.dim() == 2 {
                    brute.insert(s);
                }
            }
        }
        assert_eq!(got.len(), 35);
        assert_eq!(brute.len(), 35);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, brute.into_iter().collect::<Vec<_>>());
        assert!(got.windows(2).all(|w| w[0].flat_basis() < w[1].flat_basis()));
    }

    #[test]
    fn lines_of_f3_2() {
        let field = f(3);
        let got = enumerate_subspaces(1, &Subspace::zero(field, 2), &Subspace::full(field, 2)).unwrap();
        assert_eq!(got.len(), (9 - 1) / (3 - 1));
    }

    #[test]
    fn enumerate_rejects_bad_input() {
        let field = f(3);
        let a = Subspace::span(field, 3, &[vec![1, 0, 0]]);
        let b = Subspace::span(field, 3, &[vec![0, 1, 0]]);
        assert_eq!(enumerate_subspaces(1, &a, &b), Err(GfError::NotContained));
        assert!(matches!(
            enumerate_subspaces(3, &a, &a.sum(&b).unwrap()),
            Err(GfError::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn jordan_type_of_quotient() {
        let field = f(5);
        // two 2-blocks and a 1-block: e1 <- e2, e3 <- e4
        let n = MatrixFp::from_rows(
            field,
            &[
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0],
            ],
        );
        assert_eq!(nilpotent_jordan_type(&n), Some(vec![2, 2, 1]));
        let inner = Subspace::coordinate(field, 5, &[0]);
        let q = quotient_operator(&n, &Subspace::full(field, 5), &inner).unwrap();
        assert_eq!(nilpotent_jordan_type(&q), Some(vec![2, 1, 1]));
        assert_eq!(nilpotent_jordan_type(&MatrixFp::identity(field, 2)), None);
    }

    #[test]
    fn solve_combination_finds_coefficients() {
        let field = f(7);
        let basis = vec![vec![1, 2, 0], vec![0, 1, 3]];
        let v = vec![2, 5, 3];
        let c = solve_combination(field, &basis, &v).unwrap();
        assert_eq!(c, vec![2, 1]);
        assert_eq!(solve_combination(field, &basis, &[0, 0, 1]), None);
    }
}

//! Type-A Springer fibers of nilpotents with `N² = 0`.
//!
//! The canonical nilpotent of rank `r` on `F_p^n` sends `e_{2j}` to
//! `e_{2j-1}` for `j <= r` (1-based) and kills every other basis vector, so
//! `Im N` and `Ker N` are coordinate subspaces.

use crate::combinat::{self, CombinatError, SecondColumn, StandardTableau, YoungDiagram};
use crate::gf::{self, GfError, MatrixFp, PrimeField, Subspace};
use crate::search::{self, Condition, FlagRule, IncidenceRule};
use crate::weyl::{self, SchubertKind, WeylElement};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error("rank {r} too large for n = {n}: need 2r <= n")]
    RankTooLarge { n: usize, r: usize },
    #[error("matrix is not a valid nilpotent: {0}")]
    InvalidNilpotent(String),
    #[error("not a flag: {0}")]
    InvalidFlag(String),
    #[error("flag is not stable under N at step {0}")]
    NotStable(usize),
    #[error("flag is not in the open part of the component of {0:?}")]
    NotInOpenPart(Vec<usize>),
    #[error("tableau shape {found:?} differs from the Jordan type {expected:?}")]
    WrongShape { expected: Vec<usize>, found: Vec<usize> },
    #[error("jump set {jumps:?} has size different from the rank {r}")]
    BadJumpSet { jumps: Vec<usize>, r: usize },
    #[error("vector is not in Im N")]
    NotInImage,
    #[error("subspace is not Lagrangian for the form on Im N")]
    NotLagrangian,
}

pub type Result<T> = std::result::Result<T, FlagError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentA {
    n: usize,
    r: usize,
    matrix: MatrixFp,
    image: Subspace,
    kernel: Subspace,
}

impl NilpotentA {
    /// The canonical nilpotent of rank `r` on `F_p^n`.
    pub fn new(n: usize, r: usize, field: PrimeField) -> Result<Self> {
        if 2 * r > n {
            return Err(FlagError::RankTooLarge { n, r });
        }
        let mut m = MatrixFp::zeros(field, n, n);
        for j in 0..r {
            m.set(2 * j, 2 * j + 1, 1);
        }
        Self::from_matrix(m)
    }

    /// Validates `N² = 0` and derives the rank.
    pub fn from_matrix(matrix: MatrixFp) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(FlagError::InvalidNilpotent("not square".into()));
        }
        if !matrix.mul(&matrix)?.is_zero() {
            return Err(FlagError::InvalidNilpotent("N^2 != 0".into()));
        }
        let n = matrix.rows();
        let image = gf::column_space(&matrix);
        let kernel = gf::kernel(&matrix);
        let r = image.dim();
        debug_assert!(kernel.contains(&image));
        Ok(Self {
            n,
            r,
            matrix,
            image,
            kernel,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &MatrixFp {
        &self.matrix
    }

    pub fn image(&self) -> &Subspace {
        &self.image
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::two_column_for_rank(self.n, self.r).expect("2r <= n")
    }

    pub fn preimage(&self, w: &Subspace) -> Subspace {
        gf::preimage(&self.matrix, w).expect("same ambient")
    }

    pub fn apply_to(&self, w: &Subspace) -> Subspace {
        gf::image(&self.matrix, w).expect("same ambient")
    }

    /// `N(V) ⊆ W`.
    pub fn maps_into(&self, v: &Subspace, w: &Subspace) -> bool {
        v.rows().all(|x| w.contains_vector(&self.matrix.apply(x)))
    }
}

pub fn make_nilpotent(n: usize, r: usize, field: PrimeField) -> Result<NilpotentA> {
    NilpotentA::new(n, r, field)
}

/// Complete flag `V_0 ⊂ V_1 ⊂ … ⊂ V_n` with `dim V_i = i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompleteFlag {
    subspaces: Vec<Subspace>,
}

impl Serialize for CompleteFlag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // V_0 carries no information
        self.subspaces[1..].serialize(s)
    }
}

impl CompleteFlag {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        check_chain(&subspaces, subspaces.len().saturating_sub(1))?;
        let n = subspaces.len() - 1;
        if subspaces[n].ambient() != n {
            return Err(FlagError::InvalidFlag(format!(
                "{} members for ambient dimension {}",
                n + 1,
                subspaces[n].ambient()
            )));
        }
        Ok(Self { subspaces })
    }

    /// Wraps a chain produced by a flag search.
    pub fn from_chain_unchecked(subspaces: Vec<Subspace>) -> Self {
        debug_assert!(check_chain(&subspaces, subspaces.len() - 1).is_ok());
        Self { subspaces }
    }

    /// `V_i = span(e_{order[0]}, …, e_{order[i-1]})` (0-based indices).
    pub fn coordinate(field: PrimeField, order: &[usize]) -> Self {
        let n = order.len();
        let subspaces = (0..=n).map(|i| Subspace::coordinate(field, n, &order[..i])).collect();
        Self { subspaces }
    }

    pub fn standard(field: PrimeField, n: usize) -> Self {
        Self::coordinate(field, &(0..n).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn is_stable(&self, nil: &NilpotentA) -> bool {
        (1..=self.n()).all(|i| nil.maps_into(&self.subspaces[i], &self.subspaces[i - 1]))
    }
}

/// Checks `V_0 = 0`, `dim V_i = i` and strict nesting for `i <= depth`.
pub(crate) fn check_chain(chain: &[Subspace], depth: usize) -> Result<()> {
    if chain.len() != depth + 1 {
        return Err(FlagError::InvalidFlag(format!("expected {} members", depth + 1)));
    }
    for (i, v) in chain.iter().enumerate() {
        if v.dim() != i {
            return Err(FlagError::InvalidFlag(format!("dim V_{i} = {}", v.dim())));
        }
        if i > 0 && !v.contains(&chain[i - 1]) {
            return Err(FlagError::InvalidFlag(format!("V_{} not inside V_{i}", i - 1)));
        }
    }
    Ok(())
}

/// `N`-stable complete flags, optionally restricted to the open part `X⁰_t`
/// of the component with second-column labels `open_part`.
pub struct FiberRule<'a> {
    nil: &'a NilpotentA,
    open_part: Option<SecondColumn>,
}

impl<'a> FiberRule<'a> {
    pub fn fiber(nil: &'a NilpotentA) -> Self {
        Self { nil, open_part: None }
    }

    pub fn open_part(nil: &'a NilpotentA, t: &StandardTableau) -> Result<Self> {
        check_shape(nil, t)?;
        Ok(Self {
            nil,
            open_part: Some(t.second_column()?),
        })
    }
}

impl FlagRule for FiberRule<'_> {
    fn depth(&self) -> usize {
        self.nil.n
    }

    fn root(&self) -> Subspace {
        Subspace::zero(self.nil.field(), self.nil.n)
    }

    fn children(&self, chain: &[Subspace], visit: &mut dyn FnMut(Subspace)) {
        let last = chain.last().unwrap();
        let i = chain.len();
        let upper = self.nil.preimage(last);
        gf::for_each_subspace_between(i, last, &upper, |s| {
            if let Some(sc) = &self.open_part {
                if s.intersection_dim(&self.nil.image) != sc.count_up_to(i) {
                    return;
                }
            }
            visit(s);
        })
        .expect("V_i ⊆ N^{-1}(V_i)");
    }
}

/// Memo key for [`FiberRule`]: the rank of the operator induced on `V/V_i`,
/// which together with `i` fixes the isomorphism type of all completions.
fn fiber_key(nil: &NilpotentA) -> impl Fn(&[Subspace]) -> usize + '_ {
    move |chain| {
        let v = chain.last().unwrap();
        nil.r - v.intersection_dim(&nil.image)
    }
}

fn check_shape(nil: &NilpotentA, t: &StandardTableau) -> Result<()> {
    let expected = nil.shape();
    if *t.shape() != expected {
        return Err(FlagError::WrongShape {
            expected: expected.rows().to_vec(),
            found: t.shape().rows().to_vec(),
        });
    }
    Ok(())
}

pub fn enumerate_fiber(nil: &NilpotentA) -> Vec<CompleteFlag> {
    search::collect_chains(&FiberRule::fiber(nil))
        .into_iter()
        .map(CompleteFlag::from_chain_unchecked)
        .collect()
}

pub fn visit_fiber(nil: &NilpotentA, mut visit: impl FnMut(&[Subspace])) {
    search::visit_chains(&FiberRule::fiber(nil), &mut visit);
}

pub fn count_fiber(nil: &NilpotentA) -> u128 {
    search::count_chains(&FiberRule::fiber(nil))
}

pub fn count_fiber_memo(nil: &NilpotentA) -> u128 {
    search::count_chains_memo(&FiberRule::fiber(nil), fiber_key(nil))
}

/// Points of the open part `X⁰_t`.
pub fn enumerate_component(nil: &NilpotentA, t: &StandardTableau) -> Result<Vec<CompleteFlag>> {
    Ok(search::collect_chains(&FiberRule::open_part(nil, t)?)
        .into_iter()
        .map(CompleteFlag::from_chain_unchecked)
        .collect())
}

pub fn count_component(nil: &NilpotentA, t: &StandardTableau) -> Result<u128> {
    Ok(search::count_chains(&FiberRule::open_part(nil, t)?))
}

pub fn count_component_memo(nil: &NilpotentA, t: &StandardTableau) -> Result<u128> {
    Ok(search::count_chains_memo(&FiberRule::open_part(nil, t)?, fiber_key(nil)))
}

fn check_stable(nil: &NilpotentA, f: &CompleteFlag) -> Result<()> {
    if f.n() != nil.n {
        return Err(FlagError::InvalidFlag(format!("flag of length {} for n = {}", f.n(), nil.n)));
    }
    for i in 1..=f.n() {
        if !nil.maps_into(f.get(i), f.get(i - 1)) {
            return Err(FlagError::NotStable(i));
        }
    }
    Ok(())
}

/// Tableau whose `i`-th diagram is the Jordan type of the operator induced by
/// `N` on `V / V_i`.
pub fn spaltenstein_tableau(nil: &NilpotentA, f: &CompleteFlag) -> Result<StandardTableau> {
    check_stable(nil, f)?;
    let full = Subspace::full(nil.field(), nil.n);
    let chain = f
        .subspaces()
        .iter()
        .map(|v| {
            let q = gf::quotient_operator(&nil.matrix, &full, v)?;
            let parts = gf::nilpotent_jordan_type(&q)
                .ok_or_else(|| FlagError::InvalidNilpotent("induced operator not nilpotent".into()))?;
            Ok(YoungDiagram::new(parts)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StandardTableau::from_chain(&chain)?)
}

/// Positions `i` where `dim(Im N ∩ V_i)` increases.
pub fn jump_set(nil: &NilpotentA, f: &CompleteFlag) -> Vec<usize> {
    (1..=f.n())
        .filter(|&i| f.get(i).intersection_dim(&nil.image) > f.get(i - 1).intersection_dim(&nil.image))
        .collect()
}

/// Two-column tableau whose second column holds the jump positions of
/// `i ↦ dim(Im N ∩ V_i)`.
pub fn jump_tableau(nil: &NilpotentA, f: &CompleteFlag) -> Result<StandardTableau> {
    check_stable(nil, f)?;
    let jumps = jump_set(nil, f);
    if jumps.len() != nil.r {
        return Err(FlagError::BadJumpSet { jumps, r: nil.r });
    }
    Ok(StandardTableau::two_column_from_labels(nil.n, &jumps)?)
}

/// `f ∈ X⁰_t`.
pub fn in_open_part(nil: &NilpotentA, f: &CompleteFlag, t: &StandardTableau) -> Result<bool> {
    check_shape(nil, t)?;
    Ok(jump_tableau(nil, f)? == *t)
}

/// A point of `X̂`: a complete flag `(F_k)` of `Im N` and a complete flag `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XhatPoint {
    pub small_flag: Vec<Subspace>,
    pub big_flag: CompleteFlag,
}

impl XhatPoint {
    /// `F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1})` for all `k ∈ [1, r]`.
    pub fn satisfies_incidences(&self, nil: &NilpotentA, sc: &SecondColumn) -> bool {
        (1..=sc.r()).all(|k| {
            let v = self.big_flag.get(sc.p(k));
            v.contains(&self.small_flag[k]) && nil.preimage(&self.small_flag[k - 1]).contains(v)
        })
    }
}

/// `F_k = Im N ∩ V_{p_k}` for `f ∈ X⁰_t`.
pub fn xhat_lift(nil: &NilpotentA, f: &CompleteFlag, t: &StandardTableau) -> Result<XhatPoint> {
    if !in_open_part(nil, f, t)? {
        return Err(FlagError::NotInOpenPart(t.second_column_labels()?));
    }
    let sc = t.second_column()?;
    let small_flag = (0..=nil.r)
        .map(|k| nil.image.intersect(f.get(sc.p(k))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let point = XhatPoint {
        small_flag,
        big_flag: f.clone(),
    };
    debug_assert!(point.satisfies_incidences(nil, &sc));
    Ok(point)
}

/// Complete flags of `Im N`, each as `F_0 ⊂ … ⊂ F_r`.
pub fn enumerate_small_flags(nil: &NilpotentA) -> Vec<Vec<Subspace>> {
    search::collect_chains(&IncidenceRule::complete(nil.image.clone(), vec![]))
}

/// `F_k = span` of the first `k` basis vectors of `Im N`.
pub fn standard_small_flag(nil: &NilpotentA) -> Vec<Subspace> {
    let basis = nil.image.basis_vectors();
    (0..=nil.r)
        .map(|k| Subspace::span(nil.field(), nil.n, &basis[..k]))
        .collect()
}

/// The complete flag `F_0 ⊂ … ⊂ F_r = Im N ⊂ F_{r+1} ⊂ … ⊂ F_{n-r} = Ker N
/// ⊂ N^{-1}(F_1) ⊂ … ⊂ N^{-1}(F_r)`, the middle part filled with canonical
/// complement vectors of `Im N` in `Ker N`.
pub fn reference_flag(nil: &NilpotentA, small: &[Subspace]) -> Result<CompleteFlag> {
    check_chain(small, nil.r)?;
    if small[nil.r] != nil.image {
        return Err(FlagError::InvalidFlag("small flag must end at Im N".into()));
    }
    let mut subspaces = small.to_vec();
    let mut current = nil.image.clone();
    for v in nil.kernel.complement_basis(&nil.image)? {
        current = current.with_vector(&v);
        subspaces.push(current.clone());
    }
    for fk in &small[1..] {
        subspaces.push(nil.preimage(fk));
    }
    CompleteFlag::new(subspaces)
}

fn schubert_rule(nil: &NilpotentA, t: &StandardTableau, small: &[Subspace], which: SchubertKind) -> Result<IncidenceRule> {
    check_shape(nil, t)?;
    check_chain(small, nil.r)?;
    let sc = t.second_column()?;
    let mut conditions = Vec::new();
    for k in 1..=nil.r {
        conditions.push(Condition::Contains {
            at: sc.p(k),
            sub: small[k].clone(),
        });
        if which == SchubertKind::W {
            conditions.push(Condition::ContainedIn {
                at: sc.p(k),
                sub: nil.preimage(&small[k - 1]),
            });
        }
    }
    Ok(IncidenceRule::complete(Subspace::full(nil.field(), nil.n), conditions))
}

/// `F_w`: flags with `F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1})`.
pub fn schubert_w_rule(nil: &NilpotentA, t: &StandardTableau, small: &[Subspace]) -> Result<IncidenceRule> {
    schubert_rule(nil, t, small, SchubertKind::W)
}

/// `F_v`: flags with `F_k ⊆ V_{p_k}`.
pub fn schubert_v_rule(nil: &NilpotentA, t: &StandardTableau, small: &[Subspace]) -> Result<IncidenceRule> {
    schubert_rule(nil, t, small, SchubertKind::V)
}

/// Size of `F_w` (or `F_v`) for the standard small flag, counted with memoisation
/// on the dimension table against the reference flag.
pub fn count_schubert_memo(nil: &NilpotentA, t: &StandardTableau, which: SchubertKind) -> Result<u128> {
    let small = standard_small_flag(nil);
    count_schubert_memo_for(nil, t, &small, which)
}

fn count_schubert_memo_for(nil: &NilpotentA, t: &StandardTableau, small: &[Subspace], which: SchubertKind) -> Result<u128> {
    let reference = reference_flag(nil, small)?;
    let rule = schubert_rule(nil, t, small, which)?;
    Ok(search::count_chains_memo(&rule, search::relative_dims_key(reference.subspaces())))
}

/// Every `F_p`-point of `X̂`, ordered by small flag.
pub fn enumerate_xhat(nil: &NilpotentA, t: &StandardTableau) -> Result<Vec<XhatPoint>> {
    let mut out = Vec::new();
    for small in enumerate_small_flags(nil) {
        let rule = schubert_w_rule(nil, t, &small)?;
        for chain in search::collect_chains(&rule) {
            out.push(XhatPoint {
                small_flag: small.clone(),
                big_flag: CompleteFlag::from_chain_unchecked(chain),
            });
        }
    }
    Ok(out)
}

/// `|X̂(F_p)|`, as the sum over small flags of memoised `F_w` counts.
pub fn count_xhat_memo(nil: &NilpotentA, t: &StandardTableau) -> Result<u128> {
    enumerate_small_flags(nil)
        .iter()
        .map(|small| count_schubert_memo_for(nil, t, small, SchubertKind::W))
        .sum()
}

/// `|F(Im N)(F_p)|`.
pub fn count_small_flags(nil: &NilpotentA) -> u128 {
    search::count_chains(&IncidenceRule::complete(nil.image.clone(), vec![]))
}

/// `f ∈ Y`: `dim(Im N ∩ V_{p_k}) >= k` for all `k`.
pub fn y_membership(nil: &NilpotentA, f: &CompleteFlag, t: &StandardTableau) -> Result<bool> {
    check_shape(nil, t)?;
    let sc = t.second_column()?;
    Ok((1..=sc.r()).all(|k| f.get(sc.p(k)).intersection_dim(&nil.image) >= k))
}

/// The permutation `u` with `dim(V_i ∩ R_j) = #{a <= i : u(a) <= j}`.
pub fn relative_position(f: &CompleteFlag, reference: &CompleteFlag) -> Result<WeylElement> {
    if f.n() != reference.n() {
        return Err(FlagError::InvalidFlag("flags of different lengths".into()));
    }
    Ok(weyl::relative_position_of_chains(f.subspaces(), reference.subspaces())
        .expect("dimension jumps define a permutation"))
}

/// Every two-column tableau of the shape of `N`, in enumeration order.
pub fn component_tableaux(nil: &NilpotentA) -> Vec<StandardTableau> {
    combinat::enumerate_two_column_tableaux(nil.n, nil.r).expect("2r <= n")
}

/// Flags in relative position `<= w` to the standard flag:
/// `dim(V_i ∩ E_j) >= #{a <= i : w(a) <= j}`.
pub fn schubert_variety_rule(field: PrimeField, w: &WeylElement) -> Result<IncidenceRule> {
    if w.kind() != weyl::WeylType::A {
        return Err(FlagError::InvalidFlag(format!("{w} is not a type A element")));
    }
    let n = w.n();
    let standard = CompleteFlag::standard(field, n);
    let ranks = weyl::rank_table(w);
    let mut conditions = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if ranks[i][j] > 0 {
                conditions.push(Condition::MeetsAtLeast {
                    at: i,
                    sub: standard.get(j).clone(),
                    min_dim: ranks[i][j],
                });
            }
        }
    }
    Ok(IncidenceRule::complete(Subspace::full(field, n), conditions))
}

pub fn count_schubert_variety(field: PrimeField, w: &WeylElement) -> Result<u128> {
    let rule = schubert_variety_rule(field, w)?;
    let standard = CompleteFlag::standard(field, w.n());
    Ok(search::count_chains_memo(&rule, search::relative_dims_key(standard.subspaces())))
}

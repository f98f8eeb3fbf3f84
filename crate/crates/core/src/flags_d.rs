//! Type-D Springer fibers of nilpotents with `N² = 0`.
//!
//! `F_p^{2n}` (p odd) carries the split form `ω(x_a, x_{2n+1-a}) = 1` on the
//! ordered basis `e_1, …, e_n, f_n, …, f_1`. The canonical nilpotent of half-rank
//! `r` maps `f_{2j-1} ↦ e_{2j}` and `f_{2j} ↦ -e_{2j-1}` for `j <= r`, so
//! `Im N = span(e_1, …, e_{2r})`.

use crate::combinat::{self, DominoTableau, SecondColumn, YoungDiagram};
use crate::flags_a::{check_chain, FlagError, Result};
use crate::gf::{self, MatrixFp, PrimeField, Subspace};
use crate::search::{self, Condition, FlagRule, IncidenceRule};
use serde::Serialize;

/// `F_p^{2n}` with the split symmetric form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthSpace {
    n: usize,
    #[serde(serialize_with = "serialize_matrix")]
    omega: MatrixFp,
}

fn serialize_matrix<S: serde::Serializer>(m: &MatrixFp, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

impl OrthSpace {
    pub fn new(n: usize, field: PrimeField) -> Result<Self> {
        field.require_odd()?;
        let dim = 2 * n;
        let mut omega = MatrixFp::zeros(field, dim, dim);
        for a in 0..dim {
            omega.set(a, dim - 1 - a, 1);
        }
        Ok(Self { n, omega })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> PrimeField {
        self.omega.field()
    }

    pub fn omega(&self) -> &MatrixFp {
        &self.omega
    }

    /// Coordinate index of `e_a` (1-based `a`).
    pub fn e(&self, a: usize) -> usize {
        a - 1
    }

    /// Coordinate index of `f_a` (1-based `a`).
    pub fn f(&self, a: usize) -> usize {
        2 * self.n - a
    }

    pub fn perp(&self, w: &Subspace) -> Subspace {
        gf::orth_complement_unchecked(w, &self.omega)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentD {
    space: OrthSpace,
    r: usize,
    matrix: MatrixFp,
    image: Subspace,
    kernel: Subspace,
    /// Gram matrix of `α` on the ambient coordinates; zero outside `Im N`.
    alpha_matrix: MatrixFp,
}

impl NilpotentD {
    pub fn space(&self) -> &OrthSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
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

    /// Jordan type `(2^{2r}, 1^{2n-4r})`.
    pub fn shape(&self) -> YoungDiagram {
        combinat::two_column_domino_shape(self.n(), self.r).expect("2r <= n")
    }

    pub fn preimage(&self, w: &Subspace) -> Subspace {
        gf::preimage(&self.matrix, w).expect("same ambient")
    }

    pub fn apply_to(&self, w: &Subspace) -> Subspace {
        gf::image(&self.matrix, w).expect("same ambient")
    }

    pub fn maps_into(&self, v: &Subspace, w: &Subspace) -> bool {
        v.rows().all(|x| w.contains_vector(&self.matrix.apply(x)))
    }

    /// Ambient form restricting to `α` on `Im N`.
    pub fn alpha_matrix(&self) -> &MatrixFp {
        &self.alpha_matrix
    }

    /// Some `v'` with `N v' = v`.
    pub fn some_preimage(&self, v: &[u32]) -> Result<Vec<u32>> {
        let f = self.field();
        let dim = self.space.dim();
        let columns: Vec<Vec<u32>> = (0..dim)
            .map(|b| {
                let mut x = vec![0u32; dim];
                x[b] = 1;
                self.matrix.apply(&x)
            })
            .collect();
        gf::solve_combination(f, &columns, v).ok_or(FlagError::NotInImage)
    }

    /// `α(u, v) = ω(u, v')` for any `v'` with `N v' = v`.
    pub fn alpha(&self, u: &[u32], v: &[u32]) -> Result<u32> {
        if !self.image.contains_vector(u) {
            return Err(FlagError::NotInImage);
        }
        let v_pre = self.some_preimage(v)?;
        Ok(self.space.omega.pair(u, &v_pre))
    }

    /// `α`-isotropy of a subspace of `Im N`.
    pub fn is_alpha_isotropic(&self, w: &Subspace) -> bool {
        self.image.contains(w) && w.is_isotropic(&self.alpha_matrix)
    }
}

/// The form `α` on `Im N` in the canonical basis of `Im N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaForm {
    pub carrier: Subspace,
    pub gram: MatrixFp,
}

impl AlphaForm {
    pub fn of(nil: &NilpotentD) -> Result<Self> {
        let basis = nil.image.basis_vectors();
        let m = basis.len();
        let mut gram = MatrixFp::zeros(nil.field(), m, m);
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                gram.set(a, b, nil.alpha(u, v)? as i64);
            }
        }
        Ok(Self {
            carrier: nil.image.clone(),
            gram,
        })
    }

    pub fn is_skew(&self) -> bool {
        let f = self.gram.field();
        let m = self.gram.rows();
        (0..m).all(|a| (0..m).all(|b| self.gram.get(a, b) == f.neg(self.gram.get(b, a))))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.gram.rows()
    }
}

/// The split space of half-dimension `n` and its canonical nilpotent of rank `2r`.
pub fn make_orth_nilpotent(n: usize, r: usize, field: PrimeField) -> Result<(OrthSpace, NilpotentD)> {
    if 2 * r > n {
        return Err(FlagError::RankTooLarge { n, r });
    }
    let space = OrthSpace::new(n, field)?;
    let dim = space.dim();
    let mut m = MatrixFp::zeros(field, dim, dim);
    for j in 1..=r {
        m.set(space.e(2 * j), space.f(2 * j - 1), 1);
        m.set(space.e(2 * j - 1), space.f(2 * j), -1);
    }
    let nil = validated(space.clone(), r, m)?;
    Ok((space, nil))
}

fn validated(space: OrthSpace, r: usize, matrix: MatrixFp) -> Result<NilpotentD> {
    let field = space.field();
    let dim = space.dim();
    if !matrix.mul(&matrix)?.is_zero() {
        return Err(FlagError::InvalidNilpotent("N^2 != 0".into()));
    }
    if matrix.rank() != 2 * r {
        return Err(FlagError::InvalidNilpotent(format!("rank {} != 2r = {}", matrix.rank(), 2 * r)));
    }
    // ω(Nv, w) + ω(v, Nw) = 0 on basis vectors
    let nt_omega = matrix.transpose().mul(&space.omega)?;
    let omega_n = space.omega.mul(&matrix)?;
    for a in 0..dim {
        for b in 0..dim {
            if field.add(nt_omega.get(a, b), omega_n.get(a, b)) != 0 {
                return Err(FlagError::InvalidNilpotent("N is not ω-skew-adjoint".into()));
            }
        }
    }
    let image = gf::column_space(&matrix);
    let kernel = gf::kernel(&matrix);
    let mut nil = NilpotentD {
        space,
        r,
        matrix,
        image,
        kernel,
        alpha_matrix: MatrixFp::zeros(field, dim, dim),
    };
    // α on the ambient coordinates: supported on the pivot coordinates of Im N,
    // which for the canonical nilpotent are exactly its coordinates
    let basis = nil.image.basis_vectors();
    let pivots = nil.image.pivots();
    let coordinate = basis
        .iter()
        .zip(&pivots)
        .all(|(v, &p)| v.iter().enumerate().all(|(i, &x)| x == u32::from(i == p)));
    if !coordinate {
        return Err(FlagError::InvalidNilpotent("Im N is not a coordinate subspace".into()));
    }
    let mut alpha_matrix = MatrixFp::zeros(field, dim, dim);
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in basis.iter().enumerate() {
            alpha_matrix.set(pivots[a], pivots[b], nil.alpha(u, v)? as i64);
        }
    }
    nil.alpha_matrix = alpha_matrix;
    Ok(nil)
}

/// Isotropic flag `V_0 ⊂ … ⊂ V_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IsotropicFlag {
    subspaces: Vec<Subspace>,
}

impl IsotropicFlag {
    pub fn new(space: &OrthSpace, subspaces: Vec<Subspace>) -> Result<Self> {
        check_chain(&subspaces, space.n.saturating_sub(1))?;
        if let Some(bad) = subspaces.iter().position(|v| !v.is_isotropic(&space.omega)) {
            return Err(FlagError::InvalidFlag(format!("V_{bad} is not isotropic")));
        }
        Ok(Self { subspaces })
    }

    pub fn from_chain_unchecked(subspaces: Vec<Subspace>) -> Self {
        Self { subspaces }
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Index of the last member, `n - 1`.
    pub fn depth(&self) -> usize {
        self.subspaces.len() - 1
    }
}

/// Isotropic flags with `N(V_i) ⊆ V_{i-1}` and `N(V_{n-1}^⊥) ⊆ V_{n-1}`.
pub struct FiberRuleD<'a> {
    nil: &'a NilpotentD,
    open_part: Option<SecondColumn>,
}

impl<'a> FiberRuleD<'a> {
    pub fn fiber(nil: &'a NilpotentD) -> Self {
        Self { nil, open_part: None }
    }

    /// The open part `X⁰_t`, pruned by the `U_i` jump criterion.
    pub fn open_part(nil: &'a NilpotentD, t: &DominoTableau) -> Result<Self> {
        check_domino_shape(nil, t)?;
        Ok(Self {
            nil,
            open_part: Some(t.second_column()?),
        })
    }
}

impl FlagRule for FiberRuleD<'_> {
    fn depth(&self) -> usize {
        self.nil.n() - 1
    }

    fn root(&self) -> Subspace {
        Subspace::zero(self.nil.field(), self.nil.space.dim())
    }

    fn children(&self, chain: &[Subspace], visit: &mut dyn FnMut(Subspace)) {
        let last = chain.last().unwrap();
        let i = chain.len();
        let omega = &self.nil.space.omega;
        let upper = self
            .nil
            .space
            .perp(last)
            .intersect(&self.nil.preimage(last))
            .expect("same ambient");
        gf::for_each_subspace_between(i, last, &upper, |s| {
            if !s.is_isotropic(omega) {
                return;
            }
            if let Some(sc) = &self.open_part {
                let mut probe = chain.to_vec();
                probe.push(s.clone());
                if u_sequence_of_chain(self.nil, &probe)[i].dim() != sc.count_up_to(i) {
                    return;
                }
            }
            visit(s);
        })
        .expect("V_i ⊆ upper");
    }

    fn accept_leaf(&self, chain: &[Subspace]) -> bool {
        let last = chain.last().unwrap();
        self.nil.maps_into(&self.nil.space.perp(last), last)
    }
}

fn check_domino_shape(nil: &NilpotentD, t: &DominoTableau) -> Result<()> {
    let expected = nil.shape();
    if *t.shape() != expected {
        return Err(FlagError::WrongShape {
            expected: expected.rows().to_vec(),
            found: t.shape().rows().to_vec(),
        });
    }
    Ok(())
}

pub fn enumerate_fiber_d(nil: &NilpotentD) -> Vec<IsotropicFlag> {
    search::collect_chains(&FiberRuleD::fiber(nil))
        .into_iter()
        .map(IsotropicFlag::from_chain_unchecked)
        .collect()
}

pub fn count_fiber_d(nil: &NilpotentD) -> u128 {
    search::count_chains(&FiberRuleD::fiber(nil))
}

pub fn enumerate_component_d(nil: &NilpotentD, t: &DominoTableau) -> Result<Vec<IsotropicFlag>> {
    Ok(search::collect_chains(&FiberRuleD::open_part(nil, t)?)
        .into_iter()
        .map(IsotropicFlag::from_chain_unchecked)
        .collect())
}

pub fn count_component_d(nil: &NilpotentD, t: &DominoTableau) -> Result<u128> {
    Ok(search::count_chains(&FiberRuleD::open_part(nil, t)?))
}

/// All isotropic flags `V_0 ⊂ … ⊂ V_{n-1}`.
pub fn all_isotropic_flags_rule(space: &OrthSpace) -> IncidenceRule {
    IncidenceRule::isotropic(Subspace::full(space.field(), space.dim()), space.n - 1, space.omega.clone(), vec![])
}

pub fn is_in_fiber_d(nil: &NilpotentD, f: &IsotropicFlag) -> bool {
    let depth = f.depth();
    depth + 1 == nil.n()
        && (1..=depth).all(|i| nil.maps_into(f.get(i), f.get(i - 1)))
        && nil.maps_into(&nil.space.perp(f.get(depth)), f.get(depth))
}

fn check_in_fiber(nil: &NilpotentD, f: &IsotropicFlag) -> Result<()> {
    if !is_in_fiber_d(nil, f) {
        return Err(FlagError::NotStable(f.depth()));
    }
    Ok(())
}

fn u_sequence_of_chain(nil: &NilpotentD, chain: &[Subspace]) -> Vec<Subspace> {
    let mut out = vec![Subspace::zero(nil.field(), nil.space.dim())];
    for v in &chain[1..] {
        let prev = out.last().unwrap();
        let next = v.intersect(&nil.apply_to(&nil.space.perp(prev))).expect("same ambient");
        out.push(next);
    }
    out
}

/// `U_0 = 0`, `U_i = V_i ∩ N(U_{i-1}^⊥)`.
pub fn u_sequence(nil: &NilpotentD, f: &IsotropicFlag) -> Result<Vec<Subspace>> {
    check_in_fiber(nil, f)?;
    Ok(u_sequence_of_chain(nil, f.subspaces()))
}

/// Inclusion-maximal subspaces `W ⊆ V` with `W ⊆ N(W^⊥)`, by exhaustive
/// search over all subspaces of `V`.
pub fn maximal_self_dual_subspaces(nil: &NilpotentD, v: &Subspace) -> Vec<Subspace> {
    let zero = Subspace::zero(nil.field(), nil.space.dim());
    let mut valid = Vec::new();
    for k in 0..=v.dim() {
        gf::for_each_subspace_between(k, &zero, v, |w| {
            if nil.apply_to(&nil.space.perp(&w)).contains(&w) {
                valid.push(w);
            }
        })
        .expect("0 ⊆ V");
    }
    valid
        .iter()
        .filter(|w| !valid.iter().any(|x| x.dim() > w.dim() && x.contains(w)))
        .cloned()
        .collect()
}

/// Every nested chain `U_0 ⊆ U_1 ⊆ … ⊆ U_{n-1}` with each `U_i` an
/// inclusion-maximal `W ⊆ V_i` with `W ⊆ N(W^⊥)`.
pub fn maximal_chains_by_search(nil: &NilpotentD, f: &IsotropicFlag) -> Vec<Vec<Subspace>> {
    let candidates: Vec<Vec<Subspace>> = f
        .subspaces()
        .iter()
        .map(|v| maximal_self_dual_subspaces(nil, v))
        .collect();
    let mut chains: Vec<Vec<Subspace>> = vec![Vec::new()];
    for level in &candidates {
        chains = chains
            .into_iter()
            .flat_map(|c| {
                level
                    .iter()
                    .filter(|w| c.last().is_none_or(|prev: &Subspace| w.contains(prev)))
                    .map(|w| {
                        let mut next = c.clone();
                        next.push(w.clone());
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    chains
}

/// `Σ_{j <= i} V_j ∩ N(V_j^⊥)`.
pub fn u_by_sum_formula(nil: &NilpotentD, f: &IsotropicFlag, i: usize) -> Subspace {
    (0..=i).fold(Subspace::zero(nil.field(), nil.space.dim()), |acc, j| {
        let vj = f.get(j);
        let piece = vj.intersect(&nil.apply_to(&nil.space.perp(vj))).expect("same ambient");
        acc.sum(&piece).expect("same ambient")
    })
}

/// Positions where `dim U_i` increases.
pub fn u_jump_set(nil: &NilpotentD, f: &IsotropicFlag) -> Result<Vec<usize>> {
    let us = u_sequence(nil, f)?;
    Ok((1..us.len()).filter(|&i| us[i].dim() > us[i - 1].dim()).collect())
}

/// Domino tableau whose `i`-th diagram is the Jordan type of the operator
/// induced by `N` on `V_i^⊥ / V_i`.
pub fn domino_tableau_of_flag(nil: &NilpotentD, f: &IsotropicFlag) -> Result<DominoTableau> {
    check_in_fiber(nil, f)?;
    let mut chain = f
        .subspaces()
        .iter()
        .map(|v| {
            let q = gf::quotient_operator(&nil.matrix, &nil.space.perp(v), v)?;
            let parts = gf::nilpotent_jordan_type(&q)
                .ok_or_else(|| FlagError::InvalidNilpotent("induced operator not nilpotent".into()))?;
            Ok(YoungDiagram::new(parts)?)
        })
        .collect::<Result<Vec<_>>>()?;
    chain.push(YoungDiagram::empty());
    Ok(DominoTableau::from_chain(&chain)?)
}

/// `f ∈ X⁰_t` by the `U_i` jump criterion.
pub fn in_open_part_d(nil: &NilpotentD, f: &IsotropicFlag, t: &DominoTableau) -> Result<bool> {
    check_domino_shape(nil, t)?;
    Ok(u_jump_set(nil, f)? == t.second_column_labels()?)
}

/// Admissible domino tableaux of the Jordan type of `N`, in enumeration order.
pub fn component_domino_tableaux(nil: &NilpotentD) -> Vec<DominoTableau> {
    combinat::enumerate_domino_tableaux(&nil.shape())
        .expect("even box count")
        .into_iter()
        .filter(DominoTableau::is_admissible)
        .collect()
}

/// A point of the type-D `X̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XhatPointD {
    pub small_flag: Vec<Subspace>,
    pub big_flag: IsotropicFlag,
}

impl XhatPointD {
    pub fn satisfies_incidences(&self, nil: &NilpotentD, sc: &SecondColumn) -> bool {
        (1..=sc.r()).all(|k| {
            let v = self.big_flag.get(sc.p(k));
            v.contains(&self.small_flag[k]) && nil.preimage(&self.small_flag[k - 1]).contains(v)
        })
    }
}

/// `F_k = U_{p_k}` for `f ∈ X⁰_t`.
pub fn xhat_lift_d(nil: &NilpotentD, f: &IsotropicFlag, t: &DominoTableau) -> Result<XhatPointD> {
    if !in_open_part_d(nil, f, t)? {
        return Err(FlagError::NotInOpenPart(t.second_column_labels()?));
    }
    let sc = t.second_column()?;
    let us = u_sequence(nil, f)?;
    let small_flag = (0..=nil.r).map(|k| us[sc.p(k)].clone()).collect();
    Ok(XhatPointD {
        small_flag,
        big_flag: f.clone(),
    })
}

/// `α`-isotropic flags `F_0 ⊂ … ⊂ F_r` of `Im N`.
pub fn small_flags_rule(nil: &NilpotentD) -> IncidenceRule {
    IncidenceRule::isotropic(nil.image.clone(), nil.r, nil.alpha_matrix.clone(), vec![])
}

pub fn enumerate_small_flags_d(nil: &NilpotentD) -> Vec<Vec<Subspace>> {
    search::collect_chains(&small_flags_rule(nil))
}

pub fn count_small_flags_d(nil: &NilpotentD) -> u128 {
    search::count_chains(&small_flags_rule(nil))
}

/// `OF_w` for a small flag: isotropic flags with `F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1})`.
pub fn schubert_w_rule_d(nil: &NilpotentD, t: &DominoTableau, small: &[Subspace]) -> Result<IncidenceRule> {
    check_domino_shape(nil, t)?;
    check_chain(small, nil.r)?;
    let sc = t.second_column()?;
    let mut conditions = Vec::new();
    for k in 1..=nil.r {
        conditions.push(Condition::Contains {
            at: sc.p(k),
            sub: small[k].clone(),
        });
        conditions.push(Condition::ContainedIn {
            at: sc.p(k),
            sub: nil.preimage(&small[k - 1]),
        });
    }
    Ok(IncidenceRule::isotropic(
        Subspace::full(nil.field(), nil.space.dim()),
        nil.n() - 1,
        nil.space.omega.clone(),
        conditions,
    ))
}

pub fn enumerate_xhat_d(nil: &NilpotentD, t: &DominoTableau) -> Result<Vec<XhatPointD>> {
    let mut out = Vec::new();
    for small in enumerate_small_flags_d(nil) {
        for chain in search::collect_chains(&schubert_w_rule_d(nil, t, &small)?) {
            out.push(XhatPointD {
                small_flag: small.clone(),
                big_flag: IsotropicFlag::from_chain_unchecked(chain),
            });
        }
    }
    Ok(out)
}

/// `dim(L ∩ V_{p_k}) >= k` for all `k`, with `L` Lagrangian for `α`.
pub fn y_membership_d(nil: &NilpotentD, f: &IsotropicFlag, l: &Subspace, t: &DominoTableau) -> Result<bool> {
    check_domino_shape(nil, t)?;
    if l.dim() != nil.r || !nil.is_alpha_isotropic(l) {
        return Err(FlagError::NotLagrangian);
    }
    let sc = t.second_column()?;
    Ok((1..=sc.r()).all(|k| l.intersection_dim(f.get(sc.p(k))) >= k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn brute_fiber(nil: &NilpotentD) -> Vec<IsotropicFlag> {
        let mut out: Vec<IsotropicFlag> = search::collect_chains(&all_isotropic_flags_rule(nil.space()))
            .into_iter()
            .map(IsotropicFlag::from_chain_unchecked)
            .filter(|fl| is_in_fiber_d(nil, fl))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn construction_checks() {
        assert!(make_orth_nilpotent(2, 1, f(2)).is_err());
        assert!(matches!(make_orth_nilpotent(2, 2, f(3)), Err(FlagError::RankTooLarge { .. })));
        let (_, zero) = make_orth_nilpotent(2, 0, f(3)).unwrap();
        assert!(zero.matrix().is_zero());
        let (_, nil) = make_orth_nilpotent(2, 1, f(3)).unwrap();
        assert_eq!(nil.image().dim(), 2);
        assert!(nil.kernel().contains(nil.image()));
        assert_eq!(nil.shape().rows(), &[2, 2]);
        let (_, nil) = make_orth_nilpotent(5, 2, f(5)).unwrap();
        let parts = gf::nilpotent_jordan_type(nil.matrix()).unwrap();
        assert_eq!(parts, vec![2, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn isotropic_flag_counts_match_poincare() {
        // |OF| = Poincaré polynomial of D_n
        for (n, p, expected) in [(2u32, 3u128, 16u128), (3, 3, 4 * 13 * 40)] {
            let space = OrthSpace::new(n as usize, f(p as u32)).unwrap();
            assert_eq!(search::count_chains(&all_isotropic_flags_rule(&space)), expected);
        }
    }

    #[test]
    fn alpha_is_well_defined_skew_nondegenerate() {
        let (_, nil) = make_orth_nilpotent(2, 1, f(3)).unwrap();
        let image: Vec<Vec<u32>> = all_vectors(&nil, nil.image());
        let kernel = all_vectors(&nil, nil.kernel());
        for u in &image {
            for v in &image {
                let base = nil.alpha(u, v).unwrap();
                let v0 = nil.some_preimage(v).unwrap();
                for k in &kernel {
                    let other: Vec<u32> = v0.iter().zip(k).map(|(&a, &b)| nil.field().add(a, b)).collect();
                    assert_eq!(nil.space().omega().pair(u, &other), base);
                }
                assert_eq!(base, nil.field().neg(nil.alpha(v, u).unwrap()));
            }
            assert_eq!(nil.alpha(u, u).unwrap(), 0);
        }
        for n in 2..=4 {
            for p in [3, 5] {
                for r in 1..=n / 2 {
                    let (_, nil) = make_orth_nilpotent(n, r, f(p)).unwrap();
                    let form = AlphaForm::of(&nil).unwrap();
                    assert!(form.is_skew() && form.is_nondegenerate());
                }
            }
        }
    }

    fn all_vectors(nil: &NilpotentD, s: &Subspace) -> Vec<Vec<u32>> {
        let basis = s.basis_vectors();
        let p = nil.field().p();
        let mut out = vec![vec![0u32; nil.space().dim()]];
        for b in &basis {
            let mut next = Vec::new();
            for v in &out {
                for c in 0..p {
                    next.push(v.iter().zip(b).map(|(&x, &y)| nil.field().add(x, nil.field().mul(c, y))).collect());
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn alpha_rejects_vectors_outside_the_image() {
        let (space, nil) = make_orth_nilpotent(2, 1, f(3)).unwrap();
        let mut x = vec![0u32; 4];
        x[space.f(1)] = 1;
        assert!(matches!(nil.alpha(&x, &x), Err(FlagError::NotInImage)));
    }

    #[test]
    fn fiber_matches_filter_oracle() {
        for (n, r) in [(2, 0), (2, 1), (3, 1), (3, 0)] {
            let (_, nil) = make_orth_nilpotent(n, r, f(3)).unwrap();
            let mut fast = enumerate_fiber_d(&nil);
            fast.sort();
            assert_eq!(fast, brute_fiber(&nil), "n={n} r={r}");
        }
    }

    #[test]
    fn u_sequence_properties() {
        for (n, r) in [(2, 1), (3, 1)] {
            let (_, nil) = make_orth_nilpotent(n, r, f(3)).unwrap();
            let tableaux = component_domino_tableaux(&nil);
            let mut classes = BTreeMap::new();
            for fl in enumerate_fiber_d(&nil) {
                let us = u_sequence(&nil, &fl).unwrap();
                assert_eq!(maximal_chains_by_search(&nil, &fl), vec![us.clone()]);
                for (i, u) in us.iter().enumerate() {
                    assert!(maximal_self_dual_subspaces(&nil, fl.get(i)).contains(u));
                    assert!(nil.is_alpha_isotropic(u));
                    if i > 0 {
                        assert!(u.dim() - us[i - 1].dim() <= 1);
                    }
                }
                let last = us.last().unwrap();
                assert_eq!(last.dim(), r);
                let t = domino_tableau_of_flag(&nil, &fl).unwrap();
                assert!(t.is_admissible());
                assert!(tableaux.contains(&t));
                assert_eq!(u_jump_set(&nil, &fl).unwrap(), t.second_column_labels().unwrap());
                for i in 0..=fl.depth() {
                    assert_eq!(u_by_sum_formula(&nil, &fl, i), us[i]);
                }
                let pt = xhat_lift_d(&nil, &fl, &t).unwrap();
                assert!(pt.satisfies_incidences(&nil, &t.second_column().unwrap()));
                assert!(pt.small_flag.iter().all(|s| nil.is_alpha_isotropic(s)));
                assert!(y_membership_d(&nil, &fl, last, &t).unwrap());
                *classes.entry(t).or_insert(0) += 1;
            }
            assert_eq!(classes.len(), tableaux.len());
        }
    }

    #[test]
    fn open_part_rule_matches_classification() {
        let (_, nil) = make_orth_nilpotent(3, 1, f(3)).unwrap();
        let fiber = enumerate_fiber_d(&nil);
        for t in component_domino_tableaux(&nil) {
            let mut direct: Vec<_> = fiber
                .iter()
                .filter(|fl| domino_tableau_of_flag(&nil, fl).unwrap() == t)
                .cloned()
                .collect();
            direct.sort();
            let mut pruned = enumerate_component_d(&nil, &t).unwrap();
            pruned.sort();
            assert_eq!(direct, pruned);
        }
    }

    #[test]
    fn xhat_groups_have_equal_size() {
        for (n, r) in [(2, 1), (3, 1)] {
            let (_, nil) = make_orth_nilpotent(n, r, f(3)).unwrap();
            for t in component_domino_tableaux(&nil) {
                let pts = enumerate_xhat_d(&nil, &t).unwrap();
                let mut groups: BTreeMap<Vec<Subspace>, usize> = BTreeMap::new();
                for pt in &pts {
                    *groups.entry(pt.small_flag.clone()).or_insert(0) += 1;
                }
                assert_eq!(groups.len() as u128, count_small_flags_d(&nil));
                let sizes: Vec<usize> = groups.values().copied().collect();
                assert!(sizes.iter().all(|&s| s == sizes[0] && s > 0));
            }
        }
    }

    #[test]
    fn lagrangian_check() {
        let (space, nil) = make_orth_nilpotent(3, 1, f(3)).unwrap();
        let t = &component_domino_tableaux(&nil)[0];
        let fl = &enumerate_fiber_d(&nil)[0];
        let zero = Subspace::zero(f(3), space.dim());
        assert!(matches!(y_membership_d(&nil, fl, &zero, t), Err(FlagError::NotLagrangian)));
    }
}

//! Depth-first flag enumeration engine.
//!
//! A [`FlagRule`] describes how a chain `V_0 ⊂ V_1 ⊂ … ⊂ V_i` may be extended
//! by one dimension. The engine walks every admissible chain of the rule's
//! depth, either visiting leaves in a fixed order, folding them in parallel
//! (partitioned by the choice of `V_1`, merged in that same order), or
//! counting them with memoisation on a caller-supplied invariant.

use crate::gf::{for_each_subspace_between, MatrixFp, Subspace};
use rayon::prelude::*;
use std::collections::HashMap;
use std::hash::Hash;

pub trait FlagRule: Sync {
    /// Number of extension steps; leaves are chains `V_0 ⊂ … ⊂ V_depth`.
    fn depth(&self) -> usize;

    fn root(&self) -> Subspace;

    /// Calls `visit` on every admissible `V_{i+1}` for the chain `V_0..=V_i`.
    fn children(&self, chain: &[Subspace], visit: &mut dyn FnMut(Subspace));

    /// Final check on a complete chain.
    fn accept_leaf(&self, _chain: &[Subspace]) -> bool {
        true
    }
}

fn walk<R: FlagRule + ?Sized>(rule: &R, chain: &mut Vec<Subspace>, visit: &mut dyn FnMut(&[Subspace])) {
    if chain.len() == rule.depth() + 1 {
        if rule.accept_leaf(chain) {
            visit(chain);
        }
        return;
    }
    let mut kids = Vec::new();
    rule.children(chain, &mut |s| kids.push(s));
    for s in kids {
        chain.push(s);
        walk(rule, chain, visit);
        chain.pop();
    }
}

/// Visits every leaf chain, in deterministic order.
pub fn visit_chains<R: FlagRule + ?Sized>(rule: &R, mut visit: impl FnMut(&[Subspace])) {
    let mut chain = vec![rule.root()];
    walk(rule, &mut chain, &mut visit);
}

pub fn collect_chains<R: FlagRule + ?Sized>(rule: &R) -> Vec<Vec<Subspace>> {
    let mut out = Vec::new();
    visit_chains(rule, |c| out.push(c.to_vec()));
    out
}

pub fn count_chains<R: FlagRule + ?Sized>(rule: &R) -> u128 {
    fold_chains(rule, || 0u128, |acc, _| *acc += 1, |a, b| a + b)
}

/// Parallel fold over all leaf chains. Work is split by the choice of `V_1`;
/// partial results are merged left to right in the enumeration order of
/// `V_1`, so the result is deterministic whenever `merge` is associative.
pub fn fold_chains<R, T, I, F, M>(rule: &R, init: I, fold: F, merge: M) -> T
where
    R: FlagRule + ?Sized,
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[Subspace]) + Sync,
    M: Fn(T, T) -> T,
{
    let root = rule.root();
    if rule.depth() == 0 {
        let mut acc = init();
        let chain = vec![root];
        if rule.accept_leaf(&chain) {
            fold(&mut acc, &chain);
        }
        return acc;
    }
    let mut firsts = Vec::new();
    rule.children(std::slice::from_ref(&root), &mut |s| firsts.push(s));
    let parts: Vec<T> = firsts
        .into_par_iter()
        .map(|v1| {
            let mut acc = init();
            let mut chain = vec![root.clone(), v1];
            walk(rule, &mut chain, &mut |c| fold(&mut acc, c));
            acc
        })
        .collect();
    parts.into_iter().fold(init(), merge)
}

/// Counts leaf chains, memoising subtree counts on `(depth, key(chain))`.
///
/// The caller guarantees that the number of completions of a chain depends only
/// on its depth and `key(chain)`. At every expanded node, all children are
/// enumerated and bucketed by key; one representative per key is expanded.
pub fn count_chains_memo<R, K, KF>(rule: &R, key: KF) -> u128
where
    R: FlagRule + ?Sized,
    K: Hash + Eq + Clone,
    KF: Fn(&[Subspace]) -> K,
{
    let mut memo: HashMap<(usize, K), u128> = HashMap::new();
    let mut chain = vec![rule.root()];
    memo_rec(rule, &key, &mut chain, &mut memo)
}

fn memo_rec<R, K, KF>(rule: &R, key: &KF, chain: &mut Vec<Subspace>, memo: &mut HashMap<(usize, K), u128>) -> u128
where
    R: FlagRule + ?Sized,
    K: Hash + Eq + Clone,
    KF: Fn(&[Subspace]) -> K,
{
    let level = chain.len() - 1;
    if level == rule.depth() {
        return u128::from(rule.accept_leaf(chain));
    }
    // bucket children by key, preserving first-seen order
    let mut buckets: Vec<(K, u128, Subspace)> = Vec::new();
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut kids = Vec::new();
    rule.children(chain, &mut |s| kids.push(s));
    for s in kids {
        chain.push(s);
        let k = key(chain);
        let s = chain.pop().unwrap();
        match index.get(&k) {
            Some(&i) => buckets[i].1 += 1,
            None => {
                index.insert(k.clone(), buckets.len());
                buckets.push((k, 1, s));
            }
        }
    }
    let mut total = 0u128;
    for (k, mult, rep) in buckets {
        let memo_key = (level + 1, k);
        let sub = match memo.get(&memo_key) {
            Some(&c) => c,
            None => {
                chain.push(rep);
                let c = memo_rec(rule, key, chain, memo);
                chain.pop();
                memo.insert(memo_key, c);
                c
            }
        };
        total += mult * sub;
    }
    total
}

/// One incidence condition on the member `V_at` of a flag.
#[derive(Clone, Debug)]
pub enum Condition {
    /// `sub ⊆ V_at`
    Contains { at: usize, sub: Subspace },
    /// `V_at ⊆ sub`
    ContainedIn { at: usize, sub: Subspace },
    /// `dim(V_at ∩ sub) >= min_dim`
    MeetsAtLeast { at: usize, sub: Subspace, min_dim: usize },
}

impl Condition {
    pub fn at(&self) -> usize {
        match self {
            Condition::Contains { at, .. }
            | Condition::ContainedIn { at, .. }
            | Condition::MeetsAtLeast { at, .. } => *at,
        }
    }

    pub fn holds(&self, flag: &[Subspace]) -> bool {
        match self {
            Condition::Contains { at, sub } => flag[*at].contains(sub),
            Condition::ContainedIn { at, sub } => sub.contains(&flag[*at]),
            Condition::MeetsAtLeast { at, sub, min_dim } => {
                flag[*at].intersection_dim(sub) >= *min_dim
            }
        }
    }

    /// Whether `V_i = s` (with `i <= at`) can still be extended to meet the condition.
    fn feasible(&self, i: usize, s: &Subspace) -> bool {
        match self {
            Condition::Contains { at, sub } => s.sum(sub).expect("same ambient").dim() <= *at,
            Condition::ContainedIn { sub, .. } => sub.contains(s),
            Condition::MeetsAtLeast { at, sub, min_dim } => {
                s.intersection_dim(sub) + (at - i) >= *min_dim
            }
        }
    }
}

/// Flags of `F_p^m` (complete, or isotropic up to `depth` when a form is
/// given) subject to incidence conditions.
pub struct IncidenceRule {
    ambient: Subspace,
    depth: usize,
    form: Option<MatrixFp>,
    conditions: Vec<Condition>,
    /// `uppers[i]`: intersection of all `ContainedIn` bounds at positions `>= i`.
    uppers: Vec<Subspace>,
}

impl IncidenceRule {
    /// Complete flags of `ambient`'s space (`depth = dim`), with conditions.
    pub fn complete(ambient: Subspace, conditions: Vec<Condition>) -> Self {
        let depth = ambient.dim();
        Self::build(ambient, depth, None, conditions)
    }

    /// Isotropic flags `V_0 ⊂ … ⊂ V_depth` for `form`, with conditions.
    pub fn isotropic(ambient: Subspace, depth: usize, form: MatrixFp, conditions: Vec<Condition>) -> Self {
        Self::build(ambient, depth, Some(form), conditions)
    }

    fn build(ambient: Subspace, depth: usize, form: Option<MatrixFp>, conditions: Vec<Condition>) -> Self {
        let mut uppers = vec![ambient.clone(); depth + 1];
        for i in (0..=depth).rev() {
            let mut u = if i < depth { uppers[i + 1].clone() } else { ambient.clone() };
            for c in &conditions {
                if let Condition::ContainedIn { at, sub } = c {
                    if *at == i {
                        u = u.intersect(sub).expect("same ambient");
                    }
                }
            }
            uppers[i] = u;
        }
        Self {
            ambient,
            depth,
            form,
            conditions,
            uppers,
        }
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    pub fn satisfied_by(&self, flag: &[Subspace]) -> bool {
        self.conditions.iter().all(|c| c.holds(flag))
    }
}

impl FlagRule for IncidenceRule {
    fn depth(&self) -> usize {
        self.depth
    }

    fn root(&self) -> Subspace {
        Subspace::zero(self.ambient.field(), self.ambient.ambient())
    }

    fn children(&self, chain: &[Subspace], visit: &mut dyn FnMut(Subspace)) {
        let i = chain.len();
        let last = chain.last().unwrap();
        let mut upper = self.uppers[i].clone();
        if let Some(form) = &self.form {
            upper = upper
                .intersect(&crate::gf::orth_complement_unchecked(last, form))
                .expect("same ambient");
        }
        if !upper.contains(last) || upper.dim() < i {
            return;
        }
        for_each_subspace_between(i, last, &upper, |s| {
            if let Some(form) = &self.form {
                if !s.is_isotropic(form) {
                    return;
                }
            }
            if self
                .conditions
                .iter()
                .filter(|c| c.at() >= i)
                .all(|c| c.feasible(i, &s))
            {
                visit(s);
            }
        })
        .expect("upper contains last");
    }

    fn accept_leaf(&self, chain: &[Subspace]) -> bool {
        self.satisfied_by(chain)
    }
}

/// Key for [`count_chains_memo`] under an [`IncidenceRule`] whose condition
/// subspaces all belong to the reference flag `reference`: the dimensions
/// `dim(V_i ∩ R_j)`, which determine the orbit of `V_i` under the stabiliser
/// of `reference`.
pub fn relative_dims_key(reference: &[Subspace]) -> impl Fn(&[Subspace]) -> Vec<u8> + '_ {
    move |chain: &[Subspace]| {
        let v = chain.last().unwrap();
        reference
            .iter()
            .map(|r| v.intersection_dim(r) as u8)
            .collect()
    }
}

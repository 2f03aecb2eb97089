//! Closed subsets, double cosets and quotient algebras.

use std::collections::{BTreeSet, VecDeque};

use crate::algebra::{AlgebraElement, StructureConstantTable, TableBuilder};
use crate::chartab::{character_table, ChartabOptions, IdempotentSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default limit on the rank for [`enumerate_closed_subsets`].
pub const DEFAULT_RANK_GUARD: usize = 20;

/// A subset `C ∋ 1` of the basis with `C*C ⊆ C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedSubset<S> {
    /// Sorted basis indices; always contains 0.
    pub members: Vec<usize>,
    /// `|C⁺| = Σ_{c∈C} |c|`.
    pub c_plus_degree: S,
}

impl<S: Scalar> ClosedSubset<S> {
    pub fn contains(&self, b: usize) -> bool {
        self.members.binary_search(&b).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `C⁺ = Σ_{c∈C} c`.
    pub fn c_plus(&self, rank: usize) -> AlgebraElement<S> {
        let mut coeffs = vec![S::zero(); rank];
        for &c in &self.members {
            coeffs[c] = S::one();
        }
        AlgebraElement::from_coeffs(coeffs)
    }

    /// `e = |C⁺|⁻¹ C⁺`.
    pub fn idempotent(&self, rank: usize) -> AlgebraElement<S> {
        self.c_plus(rank).scale(&(S::one() / self.c_plus_degree.clone()))
    }
}

fn check_indices<S: Scalar>(t: &StructureConstantTable<S>, idx: &[usize]) -> Result<()> {
    match idx.iter().find(|&&i| i >= t.rank()) {
        Some(i) => Err(Error::Structural(format!("basis index {i} out of range for rank {}", t.rank()))),
        None => Ok(()),
    }
}

/// Smallest closed subset containing `seed` and 1.
pub fn closure<S: Scalar>(t: &StructureConstantTable<S>, seed: &[usize], tol: f64) -> Result<ClosedSubset<S>> {
    check_indices(t, seed)?;
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    set.insert(0);
    loop {
        let mut added = Vec::new();
        for &a in &set {
            for &b in &set {
                for (c, v) in t.product(t.star(a), b) {
                    if !v.is_negligible(tol) && !set.contains(c) {
                        added.push(*c);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        set.extend(added);
    }
    let members: Vec<usize> = set.into_iter().collect();
    let c_plus_degree = members.iter().fold(S::zero(), |acc, &c| acc + t.degree(c).clone());
    Ok(ClosedSubset { members, c_plus_degree })
}

/// Whether `members` (which must contain 0) is closed.
pub fn is_closed<S: Scalar>(t: &StructureConstantTable<S>, members: &[usize], tol: f64) -> Result<bool> {
    let c = closure(t, members, tol)?;
    let mut m = members.to_vec();
    m.sort_unstable();
    m.dedup();
    Ok(m.contains(&0) && c.members == m)
}

/// Every closed subset, ordered by size and then lexicographically.
pub fn enumerate_closed_subsets<S: Scalar>(
    t: &StructureConstantTable<S>,
    guard: usize,
    tol: f64,
) -> Result<Vec<ClosedSubset<S>>> {
    if t.rank() > guard {
        return Err(Error::RankGuard { rank: t.rank(), limit: guard });
    }
    // every closed D ⊋ C contains closure(C ∪ {b}) for each b ∈ D \ C
    let start = closure(t, &[], tol)?;
    let mut found = vec![start.clone()];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.members.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for b in (0..t.rank()).filter(|b| !c.contains(*b)) {
            let mut seed = c.members.clone();
            seed.push(b);
            let next = closure(t, &seed, tol)?;
            if seen.insert(next.members.clone()) {
                found.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    found.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(found)
}

/// `{CbC}` as sorted index lists, ordered by smallest element. Each coset is
/// the support of `C⁺ b C⁺`.
pub fn double_cosets<S: Scalar>(
    t: &StructureConstantTable<S>,
    c: &ClosedSubset<S>,
    tol: f64,
) -> Result<Vec<Vec<usize>>> {
    let cp = c.c_plus(t.rank());
    let mut owner: Vec<Option<usize>> = vec![None; t.rank()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for b in 0..t.rank() {
        if owner[b].is_some() {
            continue;
        }
        let x = t.mul(&t.mul(&cp, &t.basis_element(b)), &cp);
        let support = x.support(tol);
        for &s in &support {
            if let Some(o) = owner[s] {
                return Err(Error::Integrity(format!(
                    "double cosets of {} and {} overlap at {}",
                    t.label(cosets[o][0]),
                    t.label(b),
                    t.label(s)
                )));
            }
            owner[s] = Some(cosets.len());
        }
        if !support.contains(&b) {
            return Err(Error::Integrity(format!("{} is not in its own double coset", t.label(b))));
        }
        cosets.push(support);
    }
    Ok(cosets)
}

/// The quotient `(A/C, B/C)` and the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientAlgebra<S> {
    pub subset: ClosedSubset<S>,
    /// Smallest index of each double coset; `coset_reps[0] = 0`.
    pub coset_reps: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
    pub table: StructureConstantTable<S>,
    /// `|b_i/C| = |C⁺|⁻¹ Σ_{x∈Cb_iC} |x|`.
    pub quotient_degrees: Vec<S>,
}

impl<S: Scalar> QuotientAlgebra<S> {
    /// Index of the double coset containing `b`.
    pub fn coset_of(&self, b: usize) -> usize {
        self.cosets.iter().position(|d| d.contains(&b)).expect("cosets partition the basis")
    }

    /// `ι(x) = Σ_i x_i |C⁺|⁻¹ (Cb_iC)⁺`, the map onto `eAe`.
    pub fn embed(&self, x: &AlgebraElement<S>, parent_rank: usize) -> AlgebraElement<S> {
        let mut coeffs = vec![S::zero(); parent_rank];
        for (i, d) in self.cosets.iter().enumerate() {
            let w = x.coeffs[i].clone() / self.subset.c_plus_degree.clone();
            for &b in d {
                coeffs[b] = w.clone();
            }
        }
        AlgebraElement::from_coeffs(coeffs)
    }
}

/// Builds the quotient by a closed subset. The constants
/// `γ_ijk = |C⁺|⁻¹ Σ_{r∈Cb_iC, s∈Cb_jC} λ_rst` are computed for every
/// `t ∈ Cb_kC` and must agree.
pub fn quotient<S: Scalar>(t: &StructureConstantTable<S>, c: &ClosedSubset<S>, tol: f64) -> Result<QuotientAlgebra<S>> {
    check_indices(t, &c.members)?;
    if !is_closed(t, &c.members, tol)? {
        return Err(Error::Structural(format!("{:?} is not a closed subset", c.members)));
    }
    let c = &closure(t, &c.members, tol)?;
    let cosets = double_cosets(t, c, tol)?;
    let k = cosets.len();
    let cp = c.c_plus_degree.clone();
    let mut owner = vec![0; t.rank()];
    for (i, d) in cosets.iter().enumerate() {
        for &b in d {
            owner[b] = i;
        }
    }

    // sums[i][j][t] = Σ_{r∈D_i, s∈D_j} λ_rst
    let mut sums = vec![vec![S::zero(); t.rank()]; k * k];
    for r in 0..t.rank() {
        for s in 0..t.rank() {
            let slot = &mut sums[owner[r] * k + owner[s]];
            for (u, v) in t.product(r, s) {
                slot[*u] = slot[*u].clone() + v.clone();
            }
        }
    }
    let mut b = TableBuilder::new(k);
    for i in 0..k {
        for j in 0..k {
            let row = &sums[i * k + j];
            for (kk, d) in cosets.iter().enumerate() {
                let gamma = row[d[0]].clone() / cp.clone();
                if let Some(&other) = d.iter().find(|&&u| !(row[u].clone() / cp.clone()).approx_eq(&gamma, tol)) {
                    return Err(Error::Integrity(format!(
                        "γ({}, {}, {}) depends on the representative: {} at {} but {} at {}",
                        i,
                        j,
                        kk,
                        gamma.render(),
                        t.label(d[0]),
                        (row[other].clone() / cp.clone()).render(),
                        t.label(other)
                    )));
                }
                if !gamma.is_negligible(tol) {
                    b.constant(i, j, kk, gamma);
                }
            }
        }
    }
    let quotient_degrees: Vec<S> =
        cosets.iter().map(|d| d.iter().fold(S::zero(), |acc, &x| acc + t.degree(x).clone()) / cp.clone()).collect();
    for (i, d) in cosets.iter().enumerate() {
        b.star(i, owner[t.star(d[0])]);
        b.degree(i, quotient_degrees[i].clone());
        b.label(i, format!("{}/C", t.label(d[0])));
    }
    let table = b.build()?;
    let coset_reps = cosets.iter().map(|d| d[0]).collect();
    Ok(QuotientAlgebra { subset: c.clone(), coset_reps, cosets, table, quotient_degrees })
}

/// Checks that `ι` is an algebra homomorphism onto `eAe`: `ι(1) = e`,
/// `ι(x)ι(y) = ι(xy)` on the basis, and `e b e ∈ ι(A/C)` for every `b`.
pub fn embedding_check<S: Scalar>(t: &StructureConstantTable<S>, q: &QuotientAlgebra<S>, tol: f64) -> bool {
    let r = t.rank();
    let k = q.table.rank();
    let e = q.subset.idempotent(r);
    if !q.embed(&q.table.identity(), r).approx_eq(&e, tol) {
        return false;
    }
    let images: Vec<AlgebraElement<S>> = (0..k).map(|i| q.embed(&q.table.basis_element(i), r)).collect();
    for i in 0..k {
        for j in 0..k {
            let lhs = t.mul(&images[i], &images[j]);
            let rhs = q.embed(&q.table.mul(&q.table.basis_element(i), &q.table.basis_element(j)), r);
            if !lhs.approx_eq(&rhs, tol) {
                return false;
            }
        }
    }
    // e b e is constant on each double coset, so it lies in the image
    (0..r).all(|b| {
        let ebe = t.mul(&t.mul(&e, &t.basis_element(b)), &e);
        q.cosets.iter().all(|d| d.iter().all(|&u| ebe.coeffs[u].approx_eq(&ebe.coeffs[d[0]], tol)))
    })
}

/// `e ε_χ` for each character, with `e = |C⁺|⁻¹ C⁺`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentImage<S> {
    pub chi: usize,
    pub image: AlgebraElement<S>,
    pub is_zero: bool,
}

pub fn quotient_idempotent_images<S: Scalar>(
    t: &StructureConstantTable<S>,
    c: &ClosedSubset<S>,
    idems: &IdempotentSet<S>,
    tol: f64,
) -> Vec<IdempotentImage<S>> {
    let e = c.idempotent(t.rank());
    idems
        .idempotents
        .iter()
        .enumerate()
        .map(|(chi, eps)| {
            let image = t.mul(&e, eps);
            let is_zero = image.is_negligible(tol);
            IdempotentImage { chi, image, is_zero }
        })
        .collect()
}

/// Parent and quotient characters matched through `e ε_χ = ι(η_ψ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Preservation<S> {
    pub quotient: QuotientAlgebra<S>,
    /// `(χ, ψ, ζ_χ, ζ_ψ)` for every `χ` with `e ε_χ ≠ 0`.
    pub pairs: Vec<(usize, usize, S, S)>,
    /// Parent characters with a nonzero image that no quotient idempotent matches.
    pub unmatched: Vec<usize>,
    /// `ψ(b/C) = χ(ι(b/C))` for every matched pair.
    pub values_match: bool,
    /// Every nonzero image matched, injectively, with equal ζ.
    pub holds: bool,
}

pub fn quotient_multiplicity_preservation<S: Scalar>(
    t: &StructureConstantTable<S>,
    c: &ClosedSubset<S>,
    opts: ChartabOptions,
) -> Result<Preservation<S>> {
    let tol = opts.tol;
    let q = quotient(t, c, tol)?;
    let (pct, pid) = character_table(t, opts)?;
    let (qct, qid) = character_table(&q.table, opts)?;
    let images = quotient_idempotent_images(t, c, &pid, tol);
    let embedded: Vec<AlgebraElement<S>> = qid.idempotents.iter().map(|x| q.embed(x, t.rank())).collect();
    let scale = pid.idempotents.iter().map(AlgebraElement::max_abs).fold(1.0, f64::max);
    let match_tol = if S::EXACT { 0.0 } else { tol * 1e3 * scale };

    let mut pairs = Vec::new();
    let mut unmatched = Vec::new();
    let mut used = vec![false; embedded.len()];
    let mut values_match = true;
    for img in images.iter().filter(|i| !i.is_zero) {
        match (0..embedded.len()).find(|&psi| !used[psi] && embedded[psi].approx_eq(&img.image, match_tol)) {
            Some(psi) => {
                used[psi] = true;
                pairs.push((img.chi, psi, pct.zeta[img.chi].clone(), qct.zeta[psi].clone()));
                for (kk, d) in q.cosets.iter().enumerate() {
                    let restricted = d.iter().fold(S::zero(), |acc, &x| acc + pct.characters[img.chi][x].clone())
                        / q.subset.c_plus_degree.clone();
                    values_match &= restricted.approx_eq(&qct.characters[psi][kk], match_tol.max(tol));
                }
            }
            None => unmatched.push(img.chi),
        }
    }
    let holds = unmatched.is_empty()
        && pairs.len() == qct.len()
        && pairs.iter().all(|(_, _, a, b)| a.approx_eq(b, tol.max(if S::EXACT { 0.0 } else { 1e-9 })));
    Ok(Preservation { quotient: q, pairs, unmatched, values_match, holds })
}

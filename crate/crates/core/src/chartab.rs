//! Irreducible characters, central primitive idempotents and the standard
//! feasible multiplicities `ζ_χ`.
//!
//! The computation works on the center `Z(A)`, which is commutative and
//! semisimple. A seeded random integer combination `z` of a center basis is
//! generically regular, so its eigenvalues on `Z(A)` are pairwise distinct
//! and the spectral projectors
//!
//! ```text
//! ε_i = Π_{j≠i} (z - μ_j) / (μ_i - μ_j)
//! ```
//!
//! are exactly the central primitive idempotents. Eigenvalues come from a
//! floating Schur decomposition; in exact mode they are rounded to rationals
//! and the whole decomposition is certified by checking `Π_i (z - μ_i) = 0`
//! exactly. A failed certificate means the characters are irrational and the
//! caller switches to floating mode.
//!
//! From `ε_χ`: `χ(1)² = r(ε_χ)`, `χ(b) = r(b ε_χ) / χ(1)` with `r` the regular
//! trace, and `ζ_χ = |B⁺| · [1_A]ε_χ / χ(1)`.

use std::cmp::Ordering;

use num::traits::{Signed, ToPrimitive};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_permutation, AlgebraElement, StructureConstantTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar, C64, DEFAULT_TOL, INTEGRALITY_TOL};

const RETRIES: usize = 3;
const COEFF_RANGE: i64 = 1000;

/// Characters of an algebra. Row 0 is the principal character `ρ(b) = |b|`;
/// the remaining rows are in descending lexicographic order of their values.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable<S> {
    /// `characters[χ][b] = χ(b)`.
    pub characters: Vec<Vec<S>>,
    /// `χ(1)`.
    pub degrees_chi: Vec<usize>,
    /// Standard feasible multiplicities `ζ_χ`.
    pub zeta: Vec<S>,
    pub b_plus: S,
    pub principal_row: usize,
    pub commutative: bool,
}

/// Central primitive idempotents aligned with the rows of a [`CharacterTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentSet<S> {
    pub idempotents: Vec<AlgebraElement<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartabOptions {
    pub seed: u64,
    pub tol: f64,
}

impl Default for ChartabOptions {
    fn default() -> Self {
        ChartabOptions { seed: 0x5eed, tol: DEFAULT_TOL }
    }
}

impl<S: Scalar> CharacterTable<S> {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn value(&self, chi: usize, b: usize) -> &S {
        &self.characters[chi][b]
    }

    pub fn to_c64(&self) -> CharacterTable<C64> {
        CharacterTable {
            characters: self.characters.iter().map(|r| r.iter().map(Scalar::to_c64).collect()).collect(),
            degrees_chi: self.degrees_chi.clone(),
            zeta: self.zeta.iter().map(Scalar::to_c64).collect(),
            b_plus: self.b_plus.to_c64(),
            principal_row: self.principal_row,
            commutative: self.commutative,
        }
    }

    /// The ζ values sorted by [`Scalar::order`].
    pub fn sorted_zeta(&self) -> Vec<S> {
        let mut z = self.zeta.clone();
        z.sort_by(|a, b| a.order(b));
        z
    }
}

impl<S: Scalar> IdempotentSet<S> {
    pub fn to_c64(&self) -> IdempotentSet<C64> {
        IdempotentSet {
            idempotents: self
                .idempotents
                .iter()
                .map(|e| AlgebraElement::from_coeffs(e.coeffs.iter().map(Scalar::to_c64).collect()))
                .collect(),
        }
    }
}

/// A basis of the center `{x : xb = bx for all b}`.
pub fn center_basis<S: Scalar>(t: &StructureConstantTable<S>, tol: f64) -> Vec<AlgebraElement<S>> {
    center_with_free(t, tol).0
}

/// Center basis plus, for each basis vector, the coordinate where it is 1
/// and every other basis vector is 0.
fn center_with_free<S: Scalar>(t: &StructureConstantTable<S>, tol: f64) -> (Vec<AlgebraElement<S>>, Vec<usize>) {
    let r = t.rank();
    if t.is_commutative(tol) {
        return ((0..r).map(|i| t.basis_element(i)).collect(), (0..r).collect());
    }
    // rows (b, c), columns a: [c](ab - ba) = λ_abc - λ_bac
    let m = Matrix::from_fn(r * r, r, |row, a| {
        let (b, c) = (row / r, row % r);
        t.lambda(a, b, c) - t.lambda(b, a, c)
    });
    let (basis, free) = m.null_space(tol);
    (basis.into_iter().map(AlgebraElement::from_coeffs).collect(), free)
}

/// Character table and central primitive idempotents in the scalar field `S`.
///
/// For `S = Rational` this returns [`Error::Inexact`] when the characters are
/// not rational; [`characters_auto`] handles the fallback.
pub fn character_table<S: Scalar>(
    t: &StructureConstantTable<S>,
    opts: ChartabOptions,
) -> Result<(CharacterTable<S>, IdempotentSet<S>)> {
    let tol = opts.tol;
    let commutative = t.is_commutative(tol);
    let (center, free) = center_with_free(t, tol);
    let k = center.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last_cluster = String::new();

    let mut found = None;
    for _ in 0..=RETRIES {
        let weights: Vec<i64> = (0..k).map(|_| rng.random_range(-COEFF_RANGE..=COEFF_RANGE)).collect();
        let z = center
            .iter()
            .zip(&weights)
            .fold(AlgebraElement::zero(t.rank()), |acc, (zi, &w)| acc.add(&zi.scale(&S::from_i64(w))));
        // multiplication by z on the center, in center coordinates
        let mut mz = Matrix::zeros(k, k);
        for (j, zj) in center.iter().enumerate() {
            let p = t.mul(&z, zj);
            for (i, &f) in free.iter().enumerate() {
                mz[(i, j)] = p.coeffs[f].clone();
            }
        }
        let Some(eigen) = mz.eigenvalues() else {
            last_cluster = "Schur iteration did not converge".into();
            continue;
        };
        if let Some(cluster) = find_cluster(&eigen) {
            last_cluster = cluster;
            continue;
        }
        let mut mus = Vec::with_capacity(k);
        for ev in &eigen {
            match S::from_c64_guess(*ev) {
                Some(m) => mus.push(m),
                None => return Err(Error::Inexact(format!("eigenvalue {} of a generic central element", ev.render()))),
            }
        }
        if S::EXACT && has_duplicate(&mus) {
            last_cluster = "rational guesses coincide".into();
            continue;
        }
        match spectral_projectors(&mz, &mus)? {
            Some(coords) => {
                let idems: Vec<AlgebraElement<S>> = coords
                    .iter()
                    .map(|c| {
                        center.iter().zip(c).fold(AlgebraElement::zero(t.rank()), |acc, (zi, w)| acc.add(&zi.scale(w)))
                    })
                    .collect();
                found = Some(idems);
                break;
            }
            None => {
                last_cluster =
                    format!("eigen-residual too large for {:?}", eigen.iter().map(Scalar::render).collect::<Vec<_>>());
            }
        }
    }
    let Some(idems) = found else {
        return Err(Error::NumericalDegeneracy { cluster: last_cluster });
    };

    let b_plus = t.b_plus();
    let tau = t.regular_trace_vector();
    // trace_of_product[b][a] = r(b·a) = Σ_c λ_bac τ_c
    let trace_of_product = Matrix::from_fn(t.rank(), t.rank(), |b, a| {
        t.product(b, a).iter().fold(S::zero(), |acc, (c, l)| acc + l.clone() * tau[*c].clone())
    });

    let mut rows = Vec::with_capacity(k);
    for eps in idems {
        let rtr = dot(&tau, &eps.coeffs);
        let dim = block_size(&rtr, tol)?;
        let d = S::from_i64(dim as i64);
        let values: Vec<S> = (0..t.rank()).map(|b| dot(trace_of_product.row(b), &eps.coeffs) / d.clone()).collect();
        let zeta = b_plus.clone() * eps.coeffs[0].clone() / d.clone();
        rows.push((values, dim, zeta, eps));
    }

    let principal = rows
        .iter()
        .position(|(v, dim, _, _)| {
            *dim == 1 && v.iter().zip(t.degrees()).all(|(x, d)| x.approx_eq(d, tol * d.magnitude().max(1.0) * 1e3))
        })
        .ok_or_else(|| Error::Integrity("no character equals the degree map".into()))?;
    let principal_row = rows.remove(principal);
    rows.sort_by(|a, b| lex(&b.0, &a.0));
    rows.insert(0, principal_row);

    let mut table = CharacterTable {
        characters: Vec::with_capacity(k),
        degrees_chi: Vec::with_capacity(k),
        zeta: Vec::with_capacity(k),
        b_plus,
        principal_row: 0,
        commutative,
    };
    let mut idempotents = Vec::with_capacity(k);
    for (v, dim, z, e) in rows {
        table.characters.push(v);
        table.degrees_chi.push(dim);
        table.zeta.push(z);
        idempotents.push(e);
    }
    Ok((table, IdempotentSet { idempotents }))
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn lex<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.order(y)).find(|o| *o != Ordering::Equal).unwrap_or(Ordering::Equal)
}

fn has_duplicate<S: Scalar>(v: &[S]) -> bool {
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i].approx_eq(&v[j], 0.0)))
}

fn find_cluster(eigen: &[C64]) -> Option<String> {
    let scale = eigen.iter().map(|e| e.norm()).fold(1.0, f64::max);
    let sep = 1e-6 * scale;
    for i in 0..eigen.len() {
        for j in i + 1..eigen.len() {
            if (eigen[i] - eigen[j]).norm() < sep {
                return Some(format!("{{{}, {}}}", eigen[i].render(), eigen[j].render()));
            }
        }
    }
    None
}

/// Center coordinates of the spectral projectors of `mz` for the eigenvalues
/// `mus`. Returns `None` when the floating residual check fails; errors with
/// `Inexact` when the exact certificate fails.
fn spectral_projectors<S: Scalar>(mz: &Matrix<S>, mus: &[S]) -> Result<Option<Vec<Vec<S>>>> {
    let k = mz.rows();
    let shifted: Vec<Matrix<S>> = mus.iter().map(|m| mz.sub(&Matrix::identity(k).scale(m))).collect();
    if S::EXACT {
        let prod = shifted.iter().skip(1).fold(shifted[0].clone(), |acc, m| acc.mul(m));
        if !prod.is_negligible(0.0) {
            return Err(Error::Inexact("rounded eigenvalues do not annihilate the central element".into()));
        }
    }
    let unit = unit_coords(k);
    let scale = mus.iter().map(Scalar::magnitude).fold(1.0, f64::max);
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut v = unit.clone();
        for j in 0..k {
            if i == j {
                continue;
            }
            let denom = mus[i].clone() - mus[j].clone();
            v = mat_vec(&shifted[j], &v).into_iter().map(|x| x / denom.clone()).collect();
        }
        let norm = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        if S::EXACT {
            if norm == 0.0 {
                return Err(Error::Inexact("vanishing spectral projector".into()));
            }
        } else {
            let resid = mat_vec(&shifted[i], &v).iter().map(Scalar::magnitude).fold(0.0, f64::max);
            if norm < 1e-12 || resid > 1e-7 * scale * norm.max(1.0) {
                return Ok(None);
            }
        }
        out.push(v);
    }
    Ok(Some(out))
}

/// `1_A` is the first center basis vector: column 0 of the commutator
/// system is identically zero, so it is always free.
fn unit_coords<S: Scalar>(k: usize) -> Vec<S> {
    let mut v = vec![S::zero(); k];
    v[0] = S::one();
    v
}

fn mat_vec<S: Scalar>(m: &Matrix<S>, v: &[S]) -> Vec<S> {
    (0..m.rows()).map(|i| dot(m.row(i), v)).collect()
}

fn block_size<S: Scalar>(rtr: &S, tol: f64) -> Result<usize> {
    if S::EXACT {
        let n = rtr.as_integer(0.0).filter(|n| n.is_positive()).ok_or_else(|| {
            Error::Inexact(format!("regular trace {} of an idempotent is not a positive integer", rtr.render()))
        })?;
        let root = n.sqrt();
        if &root * &root != n {
            return Err(Error::Integrity(format!("regular trace {n} of an idempotent is not a square")));
        }
        root.to_usize().ok_or_else(|| Error::Integrity("block size overflow".into()))
    } else {
        let c = rtr.to_c64();
        let root = c.re.max(0.0).sqrt().round();
        let slack = (1e-6 * c.re.abs().max(1.0)).max(tol);
        if root < 1.0 || c.im.abs() > slack || (root * root - c.re).abs() > slack {
            return Err(Error::NumericalDegeneracy {
                cluster: format!("regular trace {} of an idempotent is not a perfect square", c.render()),
            });
        }
        Ok(root as usize)
    }
}

/// Character data in whichever mode succeeded.
#[derive(Debug, Clone, PartialEq)]
pub enum Characters {
    Exact(CharacterTable<Rational>, IdempotentSet<Rational>),
    Float(CharacterTable<C64>, IdempotentSet<C64>),
}

/// How to pick between exact and floating arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exact when the characters are rational, floating otherwise.
    #[default]
    Auto,
    /// Exact or fail with [`Error::Inexact`].
    Exact,
    Float,
}

impl Characters {
    pub fn is_exact(&self) -> bool {
        matches!(self, Characters::Exact(..))
    }

    pub fn float_table(&self) -> CharacterTable<C64> {
        match self {
            Characters::Exact(ct, _) => ct.to_c64(),
            Characters::Float(ct, _) => ct.clone(),
        }
    }

    pub fn zeta_c64(&self) -> Vec<C64> {
        self.float_table().zeta
    }
}

/// Character table of a rational table, exact when possible.
pub fn characters_auto(t: &StructureConstantTable<Rational>, mode: Mode, opts: ChartabOptions) -> Result<Characters> {
    if mode != Mode::Float {
        match character_table(t, opts) {
            Ok((ct, id)) => return Ok(Characters::Exact(ct, id)),
            Err(Error::Inexact(_)) if mode == Mode::Auto => {}
            Err(e) => return Err(e),
        }
    }
    let (ct, id) = character_table(&t.to_float(), opts)?;
    Ok(Characters::Float(ct, id))
}

/// `ζ(b) = δ_{1,b} |B⁺|`.
pub fn standard_trace<S: Scalar>(t: &StructureConstantTable<S>) -> Vec<S> {
    let mut v = vec![S::zero(); t.rank()];
    v[0] = t.b_plus();
    v
}

/// Outcome of the standard character test.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardVerdict<S> {
    pub in_s: bool,
    /// `(row, ζ_χ)` for every multiplicity that is not a positive integer.
    pub offending: Vec<(usize, S)>,
}

/// Membership in S: every `ζ_χ` a positive integer. `tol` is the
/// integrality slack in floating mode (see [`INTEGRALITY_TOL`]).
pub fn check_standard_condition<S: Scalar>(ct: &CharacterTable<S>, tol: f64) -> StandardVerdict<S> {
    let offending: Vec<_> = ct
        .zeta
        .iter()
        .enumerate()
        .filter(|(_, z)| !z.as_integer(tol).is_some_and(|n| n >= BigInt::from(1)))
        .map(|(i, z)| (i, z.clone()))
        .collect();
    StandardVerdict { in_s: offending.is_empty(), offending }
}

pub fn default_integrality_tol<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        INTEGRALITY_TOL
    }
}

/// Residuals of the orthogonality relations.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityResiduals<S> {
    /// `(φ, ψ)`: `(1/|B⁺|) Σ_b φ(b*)ψ(b)/|b*| − δ_φψ φ(1)/ζ_φ`.
    pub rows: Matrix<S>,
    /// Commutative only, `(b, c)`: `Σ_χ ζ_χ χ(b) χ(c*) − δ_bc |b||B⁺|`.
    pub columns: Option<Matrix<S>>,
}

impl<S: Scalar> OrthogonalityResiduals<S> {
    pub fn max_abs(&self) -> f64 {
        self.rows.max_abs().max(self.columns.as_ref().map_or(0.0, Matrix::max_abs))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.rows.is_negligible(tol) && self.columns.as_ref().is_none_or(|c| c.is_negligible(tol))
    }
}

pub fn orthogonality_residual<S: Scalar>(
    ct: &CharacterTable<S>,
    t: &StructureConstantTable<S>,
) -> OrthogonalityResiduals<S> {
    let d = ct.len();
    let r = t.rank();
    let rows = Matrix::from_fn(d, d, |phi, psi| {
        let sum = (0..r).fold(S::zero(), |acc, b| {
            let bs = t.star(b);
            acc + ct.characters[phi][bs].clone() * ct.characters[psi][b].clone() / t.degree(bs).clone()
        });
        let lhs = sum / ct.b_plus.clone();
        let rhs = if phi == psi { S::from_i64(ct.degrees_chi[phi] as i64) / ct.zeta[phi].clone() } else { S::zero() };
        lhs - rhs
    });
    let columns = ct.commutative.then(|| {
        Matrix::from_fn(r, r, |b, c| {
            let cs = t.star(c);
            let lhs = (0..d).fold(S::zero(), |acc, chi| {
                acc + ct.zeta[chi].clone() * ct.characters[chi][b].clone() * ct.characters[chi][cs].clone()
            });
            let rhs = if b == c { t.degree(b).clone() * ct.b_plus.clone() } else { S::zero() };
            lhs - rhs
        })
    });
    OrthogonalityResiduals { rows, columns }
}

/// `|ζ_χ| ≥ 1/χ(1)` for every character (and `≥ 1` in the commutative case,
/// where `χ(1) = 1`).
pub fn multiplicity_bound_check<S: Scalar>(ct: &CharacterTable<S>, tol: f64) -> bool {
    ct.zeta.iter().zip(&ct.degrees_chi).all(|(z, &d)| {
        let bound = S::one() / S::from_i64(d as i64);
        z.abs_at_least(&bound, tol) && (!ct.commutative || z.abs_at_least(&S::one(), tol))
    })
}

/// `|χ(a)| ≤ |a| χ(1)` for every basis element and character.
pub fn character_value_bound_check<S: Scalar>(ct: &CharacterTable<S>, t: &StructureConstantTable<S>, tol: f64) -> bool {
    ct.characters.iter().zip(&ct.degrees_chi).all(|(row, &d)| {
        row.iter().zip(t.degrees()).all(|(v, deg)| (deg.clone() * S::from_i64(d as i64)).abs_at_least(v, tol))
    })
}

/// Checks that the basis bijection `perm` (`b ↦ perm[b]`) extends to a
/// C-algebra isomorphism `t1 → t2`.
pub fn isomorphism_check<S: Scalar>(
    t1: &StructureConstantTable<S>,
    t2: &StructureConstantTable<S>,
    perm: &[usize],
    tol: f64,
) -> Result<bool> {
    if t1.rank() != t2.rank() {
        return Err(Error::Structural(format!("ranks differ: {} vs {}", t1.rank(), t2.rank())));
    }
    check_permutation(perm, t1.rank())?;
    let r = t1.rank();
    for a in 0..r {
        if perm[t1.star(a)] != t2.star(perm[a]) || !t1.degree(a).approx_eq(t2.degree(perm[a]), tol) {
            return Ok(false);
        }
        for b in 0..r {
            for c in 0..r {
                if !t1.lambda(a, b, c).approx_eq(&t2.lambda(perm[a], perm[b], perm[c]), tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Compares ζ multisets after sorting.
pub fn multiset_zeta_equal<S: Scalar>(ct1: &CharacterTable<S>, ct2: &CharacterTable<S>, tol: f64) -> bool {
    multiset_equal(&ct1.zeta, &ct2.zeta, tol)
}

/// Multiset equality of two value lists within `tol`.
pub fn multiset_equal<S: Scalar>(a: &[S], b: &[S], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| match (0..b.len()).find(|&j| !used[j] && x.approx_eq(&b[j], tol)) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

/// Evaluates `ε_χ = (1/|B⁺|) Σ_b ζ_χ χ(b*)/|b*| · b` from table data.
pub fn idempotent_from_formula<S: Scalar>(
    ct: &CharacterTable<S>,
    t: &StructureConstantTable<S>,
    chi: usize,
) -> AlgebraElement<S> {
    AlgebraElement::from_coeffs(
        (0..t.rank())
            .map(|b| {
                let bs = t.star(b);
                ct.zeta[chi].clone() * ct.characters[chi][bs].clone() / t.degree(bs).clone() / ct.b_plus.clone()
            })
            .collect(),
    )
}

/// Standard multiplicities are real and positive in the commutative case.
pub fn zeta_positive<S: Scalar>(ct: &CharacterTable<S>, tol: f64) -> bool {
    ct.zeta.iter().all(|z| z.is_positive(tol))
}

//! Eigenmatrices and the dual of a commutative C-algebra.
//!
//! The dual has basis `Δ*_χ`, one per irreducible character, with constants
//!
//! ```text
//! q^χ_{φψ} = (ζ_φ ζ_ψ / |B⁺|) Σ_b p_b(φ) p_b(ψ) conj(p_b(χ)) / |b|²
//! ```
//!
//! where `p_b(χ) = χ(b)`. Its degrees are the standard multiplicities and its
//! identity is `Δ*_ρ`.

use crate::algebra::{AlgebraElement, StructureConstantTable, TableBuilder};
use crate::chartab::{character_table, check_standard_condition, multiset_equal, CharacterTable, ChartabOptions};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, C64, INTEGRALITY_TOL};

/// `P[χ][b] = χ(b)` and `Q = |B⁺| P⁻¹`, so `Q[b][χ] = q_χ(b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenmatrixPair<S> {
    pub p: Matrix<S>,
    pub q: Matrix<S>,
    pub b_plus: S,
}

impl<S: Scalar> EigenmatrixPair<S> {
    /// `PQ = QP = |B⁺| I`.
    pub fn product_ok(&self, tol: f64) -> bool {
        let n = self.p.rows();
        let want = Matrix::identity(n).scale(&self.b_plus);
        self.p.mul(&self.q).approx_eq(&want, tol) && self.q.mul(&self.p).approx_eq(&want, tol)
    }

    /// `q_χ(1) = ζ_χ`.
    pub fn first_row_is_zeta(&self, zeta: &[S], tol: f64) -> bool {
        self.q.row(0).iter().zip(zeta).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// `p_b(ρ) = |b|`.
    pub fn principal_row_is_degrees(&self, degrees: &[S], tol: f64) -> bool {
        self.p.row(0).iter().zip(degrees).all(|(a, b)| a.approx_eq(b, tol))
    }
}

fn require_commutative<S: Scalar>(ct: &CharacterTable<S>) -> Result<()> {
    if ct.commutative {
        Ok(())
    } else {
        Err(Error::Unsupported("duality is defined for commutative algebras only".into()))
    }
}

pub fn eigenmatrices<S: Scalar>(
    t: &StructureConstantTable<S>,
    ct: &CharacterTable<S>,
    tol: f64,
) -> Result<EigenmatrixPair<S>> {
    require_commutative(ct)?;
    if ct.len() != t.rank() {
        return Err(Error::DimensionMismatch { expected: t.rank(), found: ct.len() });
    }
    let p = Matrix::from_rows(&ct.characters);
    let inv = p.inverse(tol).ok_or_else(|| Error::Integrity("character table is singular".into()))?;
    let q = inv.scale(&ct.b_plus);
    Ok(EigenmatrixPair { p, q, b_plus: ct.b_plus.clone() })
}

/// `Q[b][χ] = ζ_χ χ(b*) / |b|`, the same matrix read off the column
/// orthogonality relation.
pub fn q_from_orthogonality<S: Scalar>(t: &StructureConstantTable<S>, ct: &CharacterTable<S>) -> Matrix<S> {
    let r = t.rank();
    Matrix::from_fn(r, ct.len(), |b, chi| {
        ct.zeta[chi].clone() * ct.characters[chi][t.star(b)].clone() / t.degree(b).clone()
    })
}

/// The dual algebra together with the primal data it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DualAlgebra<S> {
    pub table: StructureConstantTable<S>,
    /// Primal character values, `primal_p[χ][b] = p_b(χ)`.
    pub primal_p: Matrix<S>,
    /// `|B̂⁺| = Σ_χ ζ_χ`.
    pub b_plus_hat: S,
}

/// Index of `χ̄` for each row.
pub fn conjugate_pairing<S: Scalar>(ct: &CharacterTable<S>, tol: f64) -> Result<Vec<usize>> {
    (0..ct.len())
        .map(|chi| {
            (0..ct.len())
                .find(|&phi| {
                    ct.characters[chi].iter().zip(&ct.characters[phi]).all(|(a, b)| a.conj().approx_eq(b, tol))
                })
                .ok_or_else(|| Error::Integrity(format!("row {chi} has no conjugate row")))
        })
        .collect()
}

pub fn dual_algebra<S: Scalar>(
    t: &StructureConstantTable<S>,
    ct: &CharacterTable<S>,
    tol: f64,
) -> Result<DualAlgebra<S>> {
    require_commutative(ct)?;
    let d = ct.len();
    let r = t.rank();
    if d != r {
        return Err(Error::DimensionMismatch { expected: r, found: d });
    }
    let bar = conjugate_pairing(ct, tol)?;
    let p = &ct.characters;
    let inv_deg_sq: Vec<S> = (0..r).map(|b| S::one() / (t.degree(b).clone() * t.degree(b).clone())).collect();
    let mut builder = TableBuilder::new(d);
    for phi in 0..d {
        for psi in 0..d {
            let front = ct.zeta[phi].clone() * ct.zeta[psi].clone() / ct.b_plus.clone();
            for chi in 0..d {
                let sum = (0..r).fold(S::zero(), |acc, b| {
                    acc + p[phi][b].clone() * p[psi][b].clone() * p[chi][b].conj() * inv_deg_sq[b].clone()
                });
                let v = front.clone() * sum;
                if !v.is_real(tol.max(1e-9) * (1.0 + v.magnitude())) {
                    return Err(Error::Integrity(format!(
                        "dual constant ({phi}, {psi}, {chi}) = {} is not real",
                        v.render()
                    )));
                }
                let v = if S::EXACT {
                    v
                } else {
                    S::from_c64_guess(C64::new(v.to_c64().re, 0.0)).expect("floats always convert")
                };
                if !v.is_negligible(if S::EXACT { 0.0 } else { tol }) {
                    builder.constant(phi, psi, chi, v);
                }
            }
        }
    }
    for chi in 0..d {
        builder.star(chi, bar[chi]);
        builder.degree(chi, ct.zeta[chi].clone());
        builder.label(chi, if chi == 0 { "rho".to_string() } else { format!("chi{chi}") });
    }
    let table = builder.build()?;
    let b_plus_hat = ct.zeta.iter().fold(S::zero(), |acc, z| acc + z.clone());
    Ok(DualAlgebra { table, primal_p: Matrix::from_rows(p), b_plus_hat })
}

/// `f_b = (1/|B̂⁺|) Σ_χ p_b(χ) Δ*_χ`, one per primal basis element.
pub fn dual_idempotents<S: Scalar>(da: &DualAlgebra<S>) -> Vec<AlgebraElement<S>> {
    let d = da.primal_p.rows();
    (0..da.primal_p.cols())
        .map(|b| {
            AlgebraElement::from_coeffs(
                (0..d).map(|chi| da.primal_p[(chi, b)].clone() / da.b_plus_hat.clone()).collect(),
            )
        })
        .collect()
}

/// Multiplicities of the dual set against the primal degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCorrespondence {
    /// Sorted, rendered.
    pub dual_zeta: Vec<String>,
    pub degrees: Vec<String>,
    /// Whether the dual characters were computed exactly.
    pub exact: bool,
    pub holds: bool,
}

/// Outcome of the integral-degree/S test on both sides of the duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `(integral degree, in S)`.
    pub primal: (bool, bool),
    pub dual: (bool, bool),
    /// `primal.0 ∧ primal.1 == dual.0 ∧ dual.1`.
    pub consistent: bool,
    /// ζ multiset of the double dual equals that of the primal.
    pub double_dual_ok: bool,
    pub exact: bool,
}

/// Character data of `t`, computed in `S`, with the dual built on top.
fn dual_stack<S: Scalar>(
    t: &StructureConstantTable<S>,
    opts: ChartabOptions,
) -> Result<(CharacterTable<S>, DualAlgebra<S>, CharacterTable<S>)> {
    let (ct, _) = character_table(t, opts)?;
    let da = dual_algebra(t, &ct, opts.tol)?;
    let (dct, _) = character_table(&da.table, opts)?;
    Ok((ct, da, dct))
}

fn cmp_tol<S: Scalar>(tol: f64) -> f64 {
    if S::EXACT {
        0.0
    } else {
        tol
    }
}

fn sorted_rendered<S: Scalar>(v: &[S]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| a.order(b));
    v.iter().map(Scalar::render).collect()
}

fn degree_correspondence_in<S: Scalar>(
    t: &StructureConstantTable<S>,
    opts: ChartabOptions,
) -> Result<DegreeCorrespondence> {
    let (_, _, dct) = dual_stack(t, opts)?;
    let holds = multiset_equal(&dct.zeta, t.degrees(), cmp_tol::<S>(opts.tol));
    Ok(DegreeCorrespondence {
        dual_zeta: sorted_rendered(&dct.zeta),
        degrees: sorted_rendered(t.degrees()),
        exact: S::EXACT,
        holds,
    })
}

/// The standard multiplicities of the dual, computed from its own character
/// table, against the degrees `{|b|}` of the primal basis. Rational input
/// whose dual has irrational characters is redone in floating point.
pub fn dual_multiplicities_match_degrees<S: Scalar>(
    t: &StructureConstantTable<S>,
    opts: ChartabOptions,
) -> Result<DegreeCorrespondence> {
    match degree_correspondence_in(t, opts) {
        Err(Error::Inexact(_)) if S::EXACT => degree_correspondence_in(&t.to_float(), opts),
        r => r,
    }
}

fn in_s<S: Scalar>(ct: &CharacterTable<S>) -> bool {
    check_standard_condition(ct, if S::EXACT { 0.0 } else { INTEGRALITY_TOL }).in_s
}

fn consistency_in<S: Scalar>(t: &StructureConstantTable<S>, opts: ChartabOptions) -> Result<ConsistencyReport> {
    let (ct, da, dct) = dual_stack(t, opts)?;
    let int_tol = if S::EXACT { 0.0 } else { INTEGRALITY_TOL };
    let primal = (t.is_integral_degree(int_tol), in_s(&ct));
    let dual = (da.table.is_integral_degree(int_tol), in_s(&dct));
    let dd = dual_algebra(&da.table, &dct, opts.tol)?;
    let (ddct, _) = character_table(&dd.table, opts)?;
    let double_dual_ok = multiset_equal(&ddct.zeta, &ct.zeta, cmp_tol::<S>(opts.tol));
    Ok(ConsistencyReport {
        primal,
        dual,
        consistent: (primal.0 && primal.1) == (dual.0 && dual.1),
        double_dual_ok,
        exact: S::EXACT,
    })
}

/// Integral degree together with membership in S, for the algebra and its
/// dual, plus a double-dual round trip of the multiplicities.
pub fn duality_consistency_check<S: Scalar>(
    t: &StructureConstantTable<S>,
    opts: ChartabOptions,
) -> Result<ConsistencyReport> {
    match consistency_in(t, opts) {
        Err(Error::Inexact(_)) if S::EXACT => consistency_in(&t.to_float(), opts),
        r => r,
    }
}

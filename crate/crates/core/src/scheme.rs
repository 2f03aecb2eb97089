//! Association schemes given by relation matrices, their adjacency algebras,
//! and checks for when a matrix representation of a table algebra is the
//! adjacency algebra of a scheme.

use crate::algebra::{StructureConstantTable, TableBuilder};
use crate::chartab::{characters_auto, check_standard_condition, CharacterTable, Characters, ChartabOptions, Mode};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, Rational, Scalar, INTEGRALITY_TOL};

/// Largest scheme accepted by [`scheme_to_algebra`].
pub const POINT_GUARD: usize = 200;

/// `relmat[x][y]` is the index of the relation containing `(x, y)`; relation 0
/// is the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRelations {
    relmat: Vec<Vec<usize>>,
    rank: usize,
}

impl SchemeRelations {
    /// Checks shape and the diagonal. Regularity is checked by
    /// [`scheme_to_algebra`].
    pub fn new(relmat: Vec<Vec<usize>>) -> Result<Self> {
        let n = relmat.len();
        if n == 0 {
            return Err(Error::NotAScheme("no points".into()));
        }
        for (x, row) in relmat.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (y, &g) in row.iter().enumerate() {
                if (x == y) != (g == 0) {
                    return Err(Error::NotAScheme(format!(
                        "relation {g} at ({x}, {y}); 0 must be exactly the diagonal"
                    )));
                }
            }
        }
        let rank = relmat.iter().flatten().max().map_or(1, |m| m + 1);
        let mut used = vec![false; rank];
        relmat.iter().flatten().for_each(|&g| used[g] = true);
        if let Some(g) = used.iter().position(|u| !u) {
            return Err(Error::NotAScheme(format!("relation {g} is empty")));
        }
        Ok(SchemeRelations { relmat, rank })
    }

    /// Scheme of a graph: 0 on the diagonal, 1 on edges, 2 on non-edges.
    pub fn from_graph(adj: &[Vec<bool>]) -> Result<Self> {
        let rel = adj
            .iter()
            .enumerate()
            .map(|(x, row)| {
                row.iter()
                    .enumerate()
                    .map(|(y, &e)| {
                        if x == y {
                            0
                        } else if e {
                            1
                        } else {
                            2
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(rel)
    }

    pub fn points(&self) -> usize {
        self.relmat.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relmat[x][y]
    }

    pub fn relmat(&self) -> &[Vec<usize>] {
        &self.relmat
    }

    /// The 0-1 matrix `σ_g`.
    pub fn adjacency(&self, g: usize) -> Matrix<Rational> {
        let n = self.points();
        Matrix::from_fn(n, n, |x, y| if self.relmat[x][y] == g { int(1) } else { int(0) })
    }
}

/// Matrices `D(b)`, one per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRepresentation<S> {
    pub matrices: Vec<Matrix<S>>,
}

impl<S: Scalar> MatrixRepresentation<S> {
    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, Matrix::rows)
    }

    pub fn traces(&self) -> Vec<S> {
        self.matrices.iter().map(Matrix::trace).collect()
    }

    /// `D(1) = I` and `D(a)D(b) = Σ_c λ_abc D(c)`.
    pub fn check_homomorphism(&self, t: &StructureConstantTable<S>, tol: f64) -> Result<()> {
        if self.matrices.len() != t.rank() {
            return Err(Error::DimensionMismatch { expected: t.rank(), found: self.matrices.len() });
        }
        let m = self.dimension();
        if let Some(b) = self.matrices.iter().position(|d| d.rows() != m || d.cols() != m) {
            return Err(Error::Structural(format!("D({}) is not {m}x{m}", t.label(b))));
        }
        if !self.matrices[0].approx_eq(&Matrix::identity(m), tol) {
            return Err(Error::NotHomomorphic("D(1) is not the identity".into()));
        }
        for a in 1..t.rank() {
            for b in 1..t.rank() {
                let lhs = self.matrices[a].mul(&self.matrices[b]);
                let rhs = t
                    .product(a, b)
                    .iter()
                    .fold(Matrix::zeros(m, m), |acc, (c, l)| acc.add(&self.matrices[*c].scale(l)));
                if !lhs.approx_eq(&rhs, tol) {
                    return Err(Error::NotHomomorphic(format!(
                        "D({})D({}) differs from D({0}{1})",
                        t.label(a),
                        t.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Trace of each `D(b)` is `|B⁺|` at the identity and 0 elsewhere.
    pub fn affords_standard_trace(&self, t: &StructureConstantTable<S>, tol: f64) -> bool {
        let bp = t.b_plus();
        self.traces()
            .iter()
            .enumerate()
            .all(|(b, tr)| if b == 0 { tr.approx_eq(&bp, tol) } else { tr.is_negligible(tol) })
    }
}

/// Validates regularity by counting, and returns the adjacency algebra with
/// its adjacency matrices.
pub fn scheme_to_algebra(
    s: &SchemeRelations,
) -> Result<(StructureConstantTable<Rational>, MatrixRepresentation<Rational>)> {
    let n = s.points();
    if n > POINT_GUARD {
        return Err(Error::RankGuard { rank: n, limit: POINT_GUARD });
    }
    let r = s.rank();
    let rel = s.relmat();

    let mut star = vec![None; r];
    for x in 0..n {
        for y in 0..n {
            let (g, h) = (rel[x][y], rel[y][x]);
            match star[g] {
                None => star[g] = Some(h),
                Some(prev) if prev != h => {
                    return Err(Error::NotAScheme(format!(
                        "transpose of relation {g} is not a relation: ({x}, {y}) goes to {h}, elsewhere to {prev}"
                    )));
                }
                _ => {}
            }
        }
    }

    // counts[(g*r + h)*r + k], first seen witness
    let mut counts: Vec<Option<usize>> = vec![None; r * r * r];
    let mut witness = vec![(0usize, 0usize); r];
    let mut seen = vec![false; r];
    let mut local = vec![0usize; r * r];
    for x in 0..n {
        for y in 0..n {
            let k = rel[x][y];
            local.iter_mut().for_each(|c| *c = 0);
            for z in 0..n {
                local[rel[x][z] * r + rel[z][y]] += 1;
            }
            if !seen[k] {
                seen[k] = true;
                witness[k] = (x, y);
            }
            for gh in 0..r * r {
                let slot = &mut counts[gh * r + k];
                match *slot {
                    None => *slot = Some(local[gh]),
                    Some(c) if c != local[gh] => {
                        let (wx, wy) = witness[k];
                        return Err(Error::NotAScheme(format!(
                            "relations ({}, {}) over relation {k}: {c} paths for ({wx}, {wy}) but {} for ({x}, {y})",
                            gh / r,
                            gh % r,
                            local[gh]
                        )));
                    }
                    _ => {}
                }
            }
        }
    }

    let mut b = TableBuilder::new(r);
    for (g, st) in star.iter().enumerate() {
        b.star(g, st.expect("every relation occurs"));
    }
    for g in 0..r {
        for h in 0..r {
            for k in 0..r {
                let c = counts[(g * r + h) * r + k].unwrap_or(0);
                if c != 0 {
                    b.constant(g, h, k, int(c as i64));
                }
            }
        }
    }
    let t = b.build()?;
    let d = MatrixRepresentation { matrices: (0..r).map(|g| s.adjacency(g)).collect() };
    Ok((t, d))
}

/// Per-condition outcome of the adjacency-image test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyVerdict {
    pub affords_zeta: bool,
    /// `D(b*) = D(b)ᵀ`.
    pub transpose_ok: bool,
    /// Every entry is 0 or 1.
    pub zero_one_ok: bool,
    /// `D(b) ∘ D(c) = 0` for `b ≠ c`.
    pub disjoint_ok: bool,
    /// `Σ_b D(b) = J`.
    pub sum_is_j: bool,
    /// Each row and column of `D(b)` sums to `|b|`.
    pub row_sums_ok: bool,
    pub is_adjacency_image: bool,
}

/// Decides whether `d`, a representation of `t`, maps the basis onto the
/// relation matrices of an association scheme. A non-homomorphic `d` is an
/// error rather than a negative verdict.
pub fn adjacency_image_check<S: Scalar>(
    t: &StructureConstantTable<S>,
    d: &MatrixRepresentation<S>,
    tol: f64,
) -> Result<AdjacencyVerdict> {
    d.check_homomorphism(t, tol)?;
    let r = t.rank();
    let m = d.dimension();
    let mats = &d.matrices;
    let affords_zeta = d.affords_standard_trace(t, tol);
    let transpose_ok = (0..r).all(|b| mats[t.star(b)].approx_eq(&mats[b].transpose(), tol));
    let zero_one_ok = mats.iter().all(|x| x.entries().all(|e| e.is_negligible(tol) || e.approx_eq(&S::one(), tol)));
    let disjoint_ok = (0..r).all(|b| (b + 1..r).all(|c| mats[b].hadamard(&mats[c]).is_negligible(tol)));
    let total = mats.iter().skip(1).fold(mats[0].clone(), |acc, x| acc.add(x));
    let sum_is_j = total.entries().all(|e| e.approx_eq(&S::one(), tol));
    let row_sums_ok = (0..r).all(|b| {
        let deg = t.degree(b);
        (0..m).all(|i| {
            let row = (0..m).fold(S::zero(), |acc, j| acc + mats[b][(i, j)].clone());
            let col = (0..m).fold(S::zero(), |acc, j| acc + mats[b][(j, i)].clone());
            row.approx_eq(deg, tol) && col.approx_eq(deg, tol)
        })
    });
    let is_adjacency_image = affords_zeta && transpose_ok && zero_one_ok && disjoint_ok && sum_is_j && row_sums_ok;
    Ok(AdjacencyVerdict {
        affords_zeta,
        transpose_ok,
        zero_one_ok,
        disjoint_ok,
        sum_is_j,
        row_sums_ok,
        is_adjacency_image,
    })
}

/// True iff `D(b) ∘ D(c) = δ_bc D(b)` for all basis pairs, i.e. the image is
/// closed under the Hadamard product with the basis as its primitive
/// idempotents. `d` must afford the standard trace.
pub fn hadamard_preservation_check<S: Scalar>(
    t: &StructureConstantTable<S>,
    d: &MatrixRepresentation<S>,
    tol: f64,
) -> Result<bool> {
    if d.matrices.len() != t.rank() {
        return Err(Error::DimensionMismatch { expected: t.rank(), found: d.matrices.len() });
    }
    if !d.affords_standard_trace(t, tol) {
        return Err(Error::NotAffordingZeta(format!(
            "traces are [{}]",
            d.traces().iter().map(Scalar::render).collect::<Vec<_>>().join(", ")
        )));
    }
    let r = t.rank();
    let mats = &d.matrices;
    let mut preserved = true;
    for b in 0..r {
        for c in 0..r {
            let h = mats[b].hadamard(&mats[c]);
            let want = if b == c { mats[b].clone() } else { Matrix::zeros(h.rows(), h.cols()) };
            preserved &= h.approx_eq(&want, tol);
            // τ(X ∘ Y) = tr(X Yᵀ)
            let x = &mats[t.star(b)];
            let y = &mats[c];
            let lhs = x.hadamard(y).entry_sum();
            let rhs = x.mul(&y.transpose()).trace();
            if !lhs.approx_eq(&rhs, tol * (1.0 + rhs.magnitude())) {
                return Err(Error::Integrity(format!("entry-sum identity fails at ({}, {})", t.label(b), t.label(c))));
            }
        }
    }
    Ok(preserved)
}

/// The representation `D(b) = diag(χ(b) repeated ζ_χ times)` of a commutative
/// algebra in S. It affords the standard trace by construction.
pub fn character_model_representation<S: Scalar>(ct: &CharacterTable<S>) -> Result<MatrixRepresentation<S>> {
    if !ct.commutative {
        return Err(Error::Unsupported("character model needs a commutative algebra".into()));
    }
    let verdict = check_standard_condition(ct, if S::EXACT { 0.0 } else { INTEGRALITY_TOL });
    if !verdict.in_s {
        let bad: Vec<String> = verdict.offending.iter().map(|(i, z)| format!("ζ_{i} = {}", z.render())).collect();
        return Err(Error::NotInS(bad.join(", ")));
    }
    let mult: Vec<usize> = ct
        .zeta
        .iter()
        .map(|z| z.as_integer(INTEGRALITY_TOL).and_then(|n| usize::try_from(n).ok()).expect("checked integral"))
        .collect();
    let m: usize = mult.iter().sum();
    let r = ct.characters[0].len();
    let matrices = (0..r)
        .map(|b| {
            let diag: Vec<S> =
                ct.characters.iter().zip(&mult).flat_map(|(row, &k)| std::iter::repeat_n(row[b].clone(), k)).collect();
            Matrix::from_fn(m, m, |i, j| if i == j { diag[i].clone() } else { S::zero() })
        })
        .collect();
    Ok(MatrixRepresentation { matrices })
}

/// Every representation affording the standard trace is faithful exactly when
/// `M[χ][b] = ζ_χ χ(b)` is nonsingular.
pub fn faithfulness_check<S: Scalar>(ct: &CharacterTable<S>, tol: f64) -> Result<bool> {
    if !ct.commutative {
        return Err(Error::Unsupported("faithfulness matrix needs a commutative algebra".into()));
    }
    let d = ct.len();
    let m = Matrix::from_fn(d, d, |chi, b| ct.zeta[chi].clone() * ct.characters[chi][b].clone());
    Ok(m.rank(tol) == d)
}

/// The rank `q + 2` algebra of the parallel classes of an affine plane of
/// order `q`: `r_i² = (q−1)r_0 + (q−2)r_i`, `r_i r_j = Σ_{k≠0,i,j} r_k`.
pub fn affine_plane_algebra(q: usize) -> Result<StructureConstantTable<Rational>> {
    if q < 2 {
        return Err(Error::Inadmissible(format!("affine plane order {q} < 2")));
    }
    let r = q + 2;
    let qi = q as i64;
    let mut b = TableBuilder::new(r);
    for i in 0..r {
        b.constant(0, i, i, int(1)).constant(i, 0, i, int(1));
        b.label(i, format!("r{i}"));
    }
    for i in 1..r {
        b.constant(i, i, 0, int(qi - 1));
        b.constant(i, i, i, int(qi - 2));
        for j in 1..r {
            if i != j {
                for k in (1..r).filter(|&k| k != i && k != j) {
                    b.constant(i, j, k, int(1));
                }
            }
        }
    }
    b.build()
}

/// Feasibility of strongly regular graph parameters judged two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgFeasibility {
    /// Classical eigenvalue-multiplicity integrality.
    pub integrality_ok: bool,
    /// The rank-3 algebra is in S.
    pub standard_ok: bool,
    pub agree: bool,
}

/// Checks that `(n, k, λ, μ)` gives a rank-3 symmetric table algebra with
/// nonnegative constants.
pub fn srg_admissible(n: i64, k: i64, lambda: i64, mu: i64) -> Result<()> {
    let fail = |why: &str| Err(Error::Inadmissible(format!("({n},{k},{lambda},{mu}): {why}")));
    if !(0 < k && k < n - 1) {
        return fail("need 0 < k < n-1");
    }
    if !(0 <= lambda && lambda < k) {
        return fail("need 0 <= lambda < k");
    }
    if !(0 <= mu && mu <= k) {
        return fail("need 0 <= mu <= k");
    }
    if k * (k - lambda - 1) != (n - k - 1) * mu {
        return fail("k(k-lambda-1) != (n-k-1)mu");
    }
    if n - 2 * k + lambda < 0 || n - 2 * k + mu - 2 < 0 {
        return fail("complement has a negative constant");
    }
    Ok(())
}

/// The classical test: the eigenvalue multiplicities
/// `f, g = ½[(n−1) ∓ (2k + (n−1)(λ−μ))/√Δ]`, `Δ = (λ−μ)² + 4(k−μ)`,
/// are integers.
pub fn srg_integrality(n: i64, k: i64, lambda: i64, mu: i64) -> bool {
    let delta = (lambda - mu).pow(2) + 4 * (k - mu);
    let num = 2 * k + (n - 1) * (lambda - mu);
    if num == 0 {
        return (n - 1) % 2 == 0;
    }
    let s = delta.isqrt();
    if s * s != delta || s == 0 {
        return false;
    }
    ((n - 1) * s - num) % (2 * s) == 0 && ((n - 1) * s + num) % (2 * s) == 0
}

/// Rank-3 algebra with basis `1, g, h` of a strongly regular graph and its
/// complement.
pub fn srg_algebra(n: i64, k: i64, lambda: i64, mu: i64) -> Result<StructureConstantTable<Rational>> {
    srg_admissible(n, k, lambda, mu)?;
    let l = n - k - 1;
    let mut b = TableBuilder::new(3);
    for i in 0..3 {
        b.constant(0, i, i, int(1)).constant(i, 0, i, int(1));
    }
    b.constant(1, 1, 0, int(k)).constant(1, 1, 1, int(lambda)).constant(1, 1, 2, int(mu));
    for (x, y) in [(1, 2), (2, 1)] {
        b.constant(x, y, 1, int(k - lambda - 1)).constant(x, y, 2, int(k - mu));
    }
    b.constant(2, 2, 0, int(l)).constant(2, 2, 1, int(n - 2 * k + lambda)).constant(2, 2, 2, int(n - 2 - 2 * k + mu));
    b.label(1, "g").label(2, "h");
    b.build()
}

/// Builds the rank-3 algebra, computes its characters and compares the
/// standard character condition with [`srg_integrality`].
pub fn srg_feasibility(
    n: i64,
    k: i64,
    lambda: i64,
    mu: i64,
    opts: ChartabOptions,
) -> Result<(StructureConstantTable<Rational>, Characters, SrgFeasibility)> {
    let t = srg_algebra(n, k, lambda, mu)?;
    let ch = characters_auto(&t, Mode::Auto, opts)?;
    let standard_ok = match &ch {
        Characters::Exact(ct, _) => check_standard_condition(ct, 0.0).in_s,
        Characters::Float(ct, _) => check_standard_condition(ct, INTEGRALITY_TOL).in_s,
    };
    let integrality_ok = srg_integrality(n, k, lambda, mu);
    Ok((t, ch, SrgFeasibility { integrality_ok, standard_ok, agree: integrality_ok == standard_ok }))
}

/// All admissible parameter quadruples with at most `max_n` points.
pub fn admissible_srg_parameters(max_n: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 1..n - 1 {
            for lambda in 0..k {
                for mu in 0..=k {
                    if srg_admissible(n, k, lambda, mu).is_ok() {
                        out.push((n, k, lambda, mu));
                    }
                }
            }
        }
    }
    out
}

/// `Σ_χ ζ_χ χ(1)²`, which equals the number of points for a scheme.
pub fn weighted_dimension<S: Scalar>(ct: &CharacterTable<S>) -> S {
    ct.zeta.iter().zip(&ct.degrees_chi).fold(S::zero(), |acc, (z, &d)| acc + z.clone() * S::from_i64((d * d) as i64))
}

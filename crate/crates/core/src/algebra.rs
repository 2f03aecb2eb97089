//! Algebras with a distinguished basis, given by structure constants.
//!
//! Basis index 0 is always the identity `1_A`. Products are stored sparsely:
//! for every ordered pair `(a, b)` only the nonzero `λ_abc` are kept.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, C64};

/// Index of a basis element; 0 is the identity.
pub type BasisIndex = usize;

/// An element `Σ x_b b` of the algebra, stored as its coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(rank: usize) -> Self {
        AlgebraElement { coeffs: vec![S::zero(); rank] }
    }

    pub fn basis(rank: usize, i: BasisIndex) -> Self {
        let mut e = Self::zero(rank);
        e.coeffs[i] = S::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: BasisIndex) -> &S {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        AlgebraElement { coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Indices with a non-negligible coefficient.
    pub fn support(&self, tol: f64) -> Vec<BasisIndex> {
        (0..self.len()).filter(|&i| !self.coeffs[i].is_negligible(tol)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// The algebra itself: rank, structure constants, involution, degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstantTable<S> {
    rank: usize,
    products: Vec<Vec<(BasisIndex, S)>>,
    star: Vec<BasisIndex>,
    degrees: Vec<S>,
    labels: Vec<String>,
}

/// Incremental construction of a [`StructureConstantTable`].
#[derive(Debug, Clone)]
pub struct TableBuilder<S> {
    rank: usize,
    lambda: BTreeMap<(usize, usize, usize), S>,
    star: Vec<Option<usize>>,
    degrees: Vec<Option<S>>,
    labels: Vec<Option<String>>,
    problems: Vec<String>,
}

impl<S: Scalar> TableBuilder<S> {
    pub fn new(rank: usize) -> Self {
        TableBuilder {
            rank,
            lambda: BTreeMap::new(),
            star: vec![None; rank],
            degrees: vec![None; rank],
            labels: vec![None; rank],
            problems: Vec::new(),
        }
    }

    fn check(&mut self, what: &str, idx: &[usize]) -> bool {
        if let Some(bad) = idx.iter().find(|&&i| i >= self.rank) {
            self.problems.push(format!("{what}: index {bad} out of range for rank {}", self.rank));
            false
        } else {
            true
        }
    }

    /// Sets `λ_abc`. Zero values are dropped.
    pub fn constant(&mut self, a: usize, b: usize, c: usize, value: S) -> &mut Self {
        if self.check("structure constant", &[a, b, c]) {
            if value.is_zero() {
                self.lambda.remove(&(a, b, c));
            } else {
                self.lambda.insert((a, b, c), value);
            }
        }
        self
    }

    /// Declares `i* = j` (and hence `j* = i`).
    pub fn star(&mut self, i: usize, j: usize) -> &mut Self {
        if self.check("star", &[i, j]) {
            for (x, y) in [(i, j), (j, i)] {
                match self.star[x] {
                    Some(prev) if prev != y => {
                        self.problems.push(format!("star: {x} already paired with {prev}, not {y}"));
                    }
                    _ => self.star[x] = Some(y),
                }
            }
        }
        self
    }

    pub fn degree(&mut self, i: usize, value: S) -> &mut Self {
        if self.check("degree", &[i]) {
            self.degrees[i] = Some(value);
        }
        self
    }

    pub fn label(&mut self, i: usize, name: impl Into<String>) -> &mut Self {
        if self.check("label", &[i]) {
            self.labels[i] = Some(name.into());
        }
        self
    }

    /// Finishes the table. Degrees missing from the input are read off
    /// `λ_{b,b*,1}`; declared ones are kept and cross-checked by `validate`.
    pub fn build(&self) -> Result<StructureConstantTable<S>> {
        if self.rank == 0 {
            return Err(Error::Structural("rank must be positive".into()));
        }
        if let Some(p) = self.problems.first() {
            return Err(Error::Structural(p.clone()));
        }
        let star: Vec<usize> = (0..self.rank).map(|i| self.star[i].unwrap_or(i)).collect();
        let mut products = vec![Vec::new(); self.rank * self.rank];
        for (&(a, b, c), v) in &self.lambda {
            products[a * self.rank + b].push((c, v.clone()));
        }
        let lookup = |a: usize, b: usize| {
            products[a * self.rank + b]
                .iter()
                .find(|(c, _)| *c == 0)
                .map_or_else(S::zero, |(_, v): &(usize, S)| v.clone())
        };
        let degrees = (0..self.rank).map(|i| self.degrees[i].clone().unwrap_or_else(|| lookup(i, star[i]))).collect();
        let labels = (0..self.rank).map(|i| self.labels[i].clone().unwrap_or_else(|| default_label(i))).collect();
        Ok(StructureConstantTable { rank: self.rank, products, star, degrees, labels })
    }
}

pub fn default_label(i: usize) -> String {
    if i == 0 {
        "1".to_string()
    } else {
        format!("b{i}")
    }
}

/// Which axiom a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Condition I: real constants.
    RealConstants,
    /// Condition I: `1_A` is index 0 and acts as the identity.
    Identity,
    /// Condition II: `*` is an involution fixing `1_A`.
    StarInvolution,
    /// Condition II: `λ_{a*b*c*} = λ_{bac}`.
    AntiAutomorphism,
    /// Condition III: `λ_{ab1} = δ_{ab*}|a|`.
    TraceForm,
    /// Condition III: `|a| > 0`.
    PositiveDegree,
    /// Condition IV: `Σ_c λ_abc |c| = |a||b|`.
    DegreeHomomorphism,
    /// Condition IV: `|b*| = |b|`.
    DegreeStar,
    Associativity,
}

impl Axiom {
    pub fn condition(self) -> &'static str {
        match self {
            Axiom::RealConstants | Axiom::Identity => "I",
            Axiom::StarInvolution | Axiom::AntiAutomorphism => "II",
            Axiom::TraceForm | Axiom::PositiveDegree => "III",
            Axiom::DegreeHomomorphism | Axiom::DegreeStar => "IV",
            Axiom::Associativity => "associativity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::RealConstants => "real structure constants",
            Axiom::Identity => "identity element",
            Axiom::StarInvolution => "involution",
            Axiom::AntiAutomorphism => "anti-automorphism",
            Axiom::TraceForm => "trace form",
            Axiom::PositiveDegree => "positive degree",
            Axiom::DegreeHomomorphism => "degree map homomorphism",
            Axiom::DegreeStar => "degree of star",
            Axiom::Associativity => "associativity",
        };
        match self.condition() {
            "associativity" => write!(f, "{name}"),
            c => write!(f, "condition {c} ({name})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<BasisIndex>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.axiom, self.indices, self.detail)
    }
}

/// All axiom violations found by [`StructureConstantTable::validate`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Distinct conditions ("I".."IV", "associativity") that fail.
    pub fn conditions(&self) -> Vec<&'static str> {
        let mut c: Vec<_> = self.violations.iter().map(|v| v.axiom.condition()).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

impl<S: Scalar> StructureConstantTable<S> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn star(&self, i: BasisIndex) -> BasisIndex {
        self.star[i]
    }

    pub fn star_map(&self) -> &[BasisIndex] {
        &self.star
    }

    pub fn degree(&self, i: BasisIndex) -> &S {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[S] {
        &self.degrees
    }

    pub fn label(&self, i: BasisIndex) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero `(c, λ_abc)` for the product `ab`, sorted by `c`.
    pub fn product(&self, a: BasisIndex, b: BasisIndex) -> &[(BasisIndex, S)] {
        &self.products[a * self.rank + b]
    }

    pub fn lambda(&self, a: BasisIndex, b: BasisIndex, c: BasisIndex) -> S {
        let p = self.product(a, b);
        p.binary_search_by_key(&c, |(i, _)| *i).map_or_else(|_| S::zero(), |k| p[k].1.clone())
    }

    /// Every stored `(a, b, c, λ_abc)`.
    pub fn entries(&self) -> impl Iterator<Item = (BasisIndex, BasisIndex, BasisIndex, &S)> + '_ {
        (0..self.rank * self.rank)
            .flat_map(move |ab| self.products[ab].iter().map(move |(c, v)| (ab / self.rank, ab % self.rank, *c, v)))
    }

    /// `|B⁺| = Σ_b |b|`.
    pub fn b_plus(&self) -> S {
        self.degrees.iter().fold(S::zero(), |acc, d| acc + d.clone())
    }

    pub fn basis_element(&self, i: BasisIndex) -> AlgebraElement<S> {
        AlgebraElement::basis(self.rank, i)
    }

    pub fn identity(&self) -> AlgebraElement<S> {
        self.basis_element(0)
    }

    fn conform(&self, x: &AlgebraElement<S>) -> Result<()> {
        if x.len() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank, found: x.len() })
        }
    }

    /// `(xy)_c = Σ_{a,b} x_a y_b λ_abc`.
    pub fn multiply(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.conform(x)?;
        self.conform(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = vec![S::zero(); self.rank];
        for (a, xa) in x.coeffs.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coeffs.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let w = xa.clone() * yb.clone();
                for (c, l) in self.product(a, b) {
                    out[*c] = out[*c].clone() + w.clone() * l.clone();
                }
            }
        }
        AlgebraElement { coeffs: out }
    }

    /// `x* = Σ conj(x_b) b*`.
    pub fn star_element(&self, x: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.conform(x)?;
        let mut out = vec![S::zero(); self.rank];
        for (b, xb) in x.coeffs.iter().enumerate() {
            out[self.star[b]] = xb.conj();
        }
        Ok(AlgebraElement { coeffs: out })
    }

    /// `⟨x, y⟩`: the coefficient of `1_A` in `x y*`.
    pub fn bilinear_form(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> Result<S> {
        let ys = self.star_element(y)?;
        Ok(self.multiply(x, &ys)?.coeffs[0].clone())
    }

    /// Left-regular matrix `L(x)` with `L(x)_{c,d} = coefficient of c in x·d`.
    pub fn left_matrix(&self, x: &AlgebraElement<S>) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::zeros(self.rank, self.rank);
        for (a, xa) in x.coeffs.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for d in 0..self.rank {
                for (c, l) in self.product(a, d) {
                    m[(*c, d)] = m[(*c, d)].clone() + xa.clone() * l.clone();
                }
            }
        }
        m
    }

    /// `L(b)` for every basis element, `L(b)_{c,d} = λ_{bdc}`.
    pub fn regular_representation(&self) -> Vec<Matrix<S>> {
        (0..self.rank).map(|b| self.left_matrix(&self.basis_element(b))).collect()
    }

    /// Regular trace on the basis: `τ_a = tr L(a) = Σ_c λ_{acc}`.
    pub fn regular_trace_vector(&self) -> Vec<S> {
        (0..self.rank).map(|a| (0..self.rank).fold(S::zero(), |acc, c| acc + self.lambda(a, c, c))).collect()
    }

    pub fn is_table_algebra(&self, tol: f64) -> bool {
        self.entries().all(|(_, _, _, v)| v.is_nonnegative(tol))
    }

    pub fn is_integral(&self, tol: f64) -> bool {
        self.entries().all(|(_, _, _, v)| v.as_integer(tol).is_some())
    }

    pub fn is_integral_degree(&self, tol: f64) -> bool {
        self.degrees.iter().all(|d| d.as_integer(tol).is_some())
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        (0..self.rank).all(|a| (a + 1..self.rank).all(|b| sparse_eq(self.product(a, b), self.product(b, a), tol)))
    }

    /// Checks every axiom and reports all violations.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let r = self.rank;
        let mut out = Vec::new();
        let mut push = |axiom, indices: Vec<usize>, detail: String| {
            out.push(Violation { axiom, indices, detail });
        };

        for (a, b, c, v) in self.entries() {
            if !v.is_real(tol) {
                push(Axiom::RealConstants, vec![a, b, c], format!("λ = {}", v.render()));
            }
        }

        for b in 0..r {
            for c in 0..r {
                let want = if b == c { S::one() } else { S::zero() };
                for (x, y, label) in [(0, b, "λ_1bc"), (b, 0, "λ_b1c")] {
                    let got = self.lambda(x, y, c);
                    if !got.approx_eq(&want, tol) {
                        push(
                            Axiom::Identity,
                            vec![b, c],
                            format!("{label} = {}, expected {}", got.render(), want.render()),
                        );
                    }
                }
            }
        }

        if self.star[0] != 0 {
            push(Axiom::StarInvolution, vec![0], format!("1* = {}", self.star[0]));
        }
        for i in 0..r {
            if self.star[self.star[i]] != i {
                push(Axiom::StarInvolution, vec![i], format!("{i}** = {}", self.star[self.star[i]]));
            }
        }
        for (a, b, c, v) in self.entries() {
            // λ_{ab c} must equal λ_{b* a* c*}
            let mirrored = self.lambda(self.star[b], self.star[a], self.star[c]);
            if !mirrored.approx_eq(v, tol) {
                push(
                    Axiom::AntiAutomorphism,
                    vec![a, b, c],
                    format!("λ_abc = {} but λ_b*a*c* = {}", v.render(), mirrored.render()),
                );
            }
        }

        for a in 0..r {
            if !self.degrees[a].is_positive(tol) {
                push(Axiom::PositiveDegree, vec![a], format!("|b| = {}", self.degrees[a].render()));
            }
            for b in 0..r {
                let want = if b == self.star[a] { self.degrees[a].clone() } else { S::zero() };
                let got = self.lambda(a, b, 0);
                if !got.approx_eq(&want, tol) {
                    push(Axiom::TraceForm, vec![a, b], format!("λ_ab1 = {}, expected {}", got.render(), want.render()));
                }
            }
        }

        for a in 0..r {
            if !self.degrees[self.star[a]].approx_eq(&self.degrees[a], tol) {
                push(Axiom::DegreeStar, vec![a], "|b*| != |b|".into());
            }
            for b in 0..r {
                let lhs =
                    self.product(a, b).iter().fold(S::zero(), |acc, (c, l)| acc + l.clone() * self.degrees[*c].clone());
                let rhs = self.degrees[a].clone() * self.degrees[b].clone();
                if !lhs.approx_eq(&rhs, tol) {
                    push(
                        Axiom::DegreeHomomorphism,
                        vec![a, b],
                        format!("Σ λ_abc|c| = {}, |a||b| = {}", lhs.render(), rhs.render()),
                    );
                }
            }
        }

        let basis: Vec<_> = (0..r).map(|i| self.basis_element(i)).collect();
        for a in 0..r {
            for b in 0..r {
                let ab = self.mul(&basis[a], &basis[b]);
                for c in 0..r {
                    let left = self.mul(&ab, &basis[c]);
                    let bc = self.mul(&basis[b], &basis[c]);
                    let right = self.mul(&basis[a], &bc);
                    let scale = left.max_abs().max(1.0);
                    if !left.approx_eq(&right, tol * scale) {
                        push(Axiom::Associativity, vec![a, b, c], "(ab)c != a(bc)".into());
                    }
                }
            }
        }

        ValidationReport { violations: out }
    }

    /// Transports the table along a basis permutation `perm[old] = new`
    /// which must fix 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rank)?;
        if perm[0] != 0 {
            return Err(Error::Structural("relabeling must fix the identity".into()));
        }
        let r = self.rank;
        let mut products = vec![Vec::new(); r * r];
        for (a, b, c, v) in self.entries() {
            products[perm[a] * r + perm[b]].push((perm[c], v.clone()));
        }
        for p in &mut products {
            p.sort_by_key(|(c, _)| *c);
        }
        let mut star = vec![0; r];
        let mut degrees = vec![S::zero(); r];
        let mut labels = vec![String::new(); r];
        for i in 0..r {
            star[perm[i]] = perm[self.star[i]];
            degrees[perm[i]] = self.degrees[i].clone();
            labels[perm[i]] = self.labels[i].clone();
        }
        Ok(StructureConstantTable { rank: r, products, star, degrees, labels })
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstantTable<T> {
        StructureConstantTable {
            rank: self.rank,
            products: self.products.iter().map(|p| p.iter().map(|(c, v)| (*c, f(v))).collect()).collect(),
            star: self.star.clone(),
            degrees: self.degrees.iter().map(&f).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_float(&self) -> StructureConstantTable<C64> {
        self.map_scalars(Scalar::to_c64)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank);
        self.labels = labels;
        self
    }
}

fn sparse_eq<S: Scalar>(x: &[(usize, S)], y: &[(usize, S)], tol: f64) -> bool {
    let (mut i, mut j) = (0, 0);
    loop {
        match (x.get(i), y.get(j)) {
            (None, None) => return true,
            (Some((c, v)), Some((d, w))) if c == d => {
                if !v.approx_eq(w, tol) {
                    return false;
                }
                i += 1;
                j += 1;
            }
            (Some((c, v)), Some((d, _))) if c < d => {
                if !v.is_negligible(tol) {
                    return false;
                }
                i += 1;
            }
            (Some((_, v)), None) => {
                if !v.is_negligible(tol) {
                    return false;
                }
                i += 1;
            }
            (_, Some((_, w))) => {
                if !w.is_negligible(tol) {
                    return false;
                }
                j += 1;
            }
        }
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Structural(format!("map has length {}, expected {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Structural("basis map is not a bijection".into()));
        }
    }
    Ok(())
}

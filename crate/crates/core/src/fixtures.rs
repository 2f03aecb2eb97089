//! Small algebras used in examples, tests and benchmarks.

use crate::algebra::{StructureConstantTable, TableBuilder};
use crate::scalar::{int, Rational};
use crate::scheme::SchemeRelations;

/// Rank-3 integral table algebra with basis `1, b, c`:
/// `b² = 2 + b`, `bc = cb = 2c`, `c² = 25 + 25b + 22c`.
pub fn rank_three_not_in_s() -> StructureConstantTable<Rational> {
    let mut b = TableBuilder::new(3);
    for i in 0..3 {
        b.constant(0, i, i, int(1)).constant(i, 0, i, int(1));
    }
    b.constant(1, 1, 0, int(2)).constant(1, 1, 1, int(1));
    b.constant(1, 2, 2, int(2)).constant(2, 1, 2, int(2));
    b.constant(2, 2, 0, int(25)).constant(2, 2, 1, int(25)).constant(2, 2, 2, int(22));
    b.label(1, "b").label(2, "c");
    b.build().expect("fixture is well formed")
}

/// The one-dimensional algebra spanned by `1`.
pub fn rank_one() -> StructureConstantTable<Rational> {
    let mut b = TableBuilder::new(1);
    b.constant(0, 0, 0, int(1));
    b.build().expect("fixture is well formed")
}

/// `{1, g}` with `g² = 1`.
pub fn sign_algebra() -> StructureConstantTable<Rational> {
    group_algebra(2, |a, b| (a + b) % 2, |a| a)
}

/// Group algebra of the cyclic group of order `n`, basis `g^0, ..., g^(n-1)`.
pub fn cyclic_group(n: usize) -> StructureConstantTable<Rational> {
    group_algebra(n, |a, b| (a + b) % n, |a| (n - a) % n)
}

/// Group algebra of the symmetric group on three letters. Basis order:
/// identity, the three transpositions, the two 3-cycles.
pub fn symmetric_group_s3() -> StructureConstantTable<Rational> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
    // (p·q)(x) = p(q(x))
    let compose = |a: usize, b: usize| index([0, 1, 2].map(|x| perms[a][perms[b][x]]));
    let inverse = |a: usize| {
        let mut inv = [0; 3];
        for (x, &y) in perms[a].iter().enumerate() {
            inv[y] = x;
        }
        index(inv)
    };
    let mut t = group_algebra(6, compose, inverse);
    t = t.with_labels(["1", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).to_vec());
    t
}

/// Group algebra from a multiplication table; element 0 must be the identity.
pub fn group_algebra(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    inv: impl Fn(usize) -> usize,
) -> StructureConstantTable<Rational> {
    let mut b = TableBuilder::new(n);
    for x in 0..n {
        b.star(x, inv(x));
        for y in 0..n {
            b.constant(x, y, mul(x, y), int(1));
        }
    }
    b.build().expect("group table is well formed")
}

/// The complete graph `K_n` as a rank-2 scheme.
pub fn complete_graph_scheme(n: usize) -> SchemeRelations {
    let rel = (0..n).map(|x| (0..n).map(|y| usize::from(x != y)).collect()).collect();
    SchemeRelations::new(rel).expect("complete graph is a scheme")
}

/// Petersen graph: vertices are the 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen_scheme() -> SchemeRelations {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let adj: Vec<Vec<bool>> = pairs
        .iter()
        .map(|&(a, b)| pairs.iter().map(|&(c, d)| a != c && a != d && b != c && b != d).collect())
        .collect();
    SchemeRelations::from_graph(&adj).expect("Petersen graph is strongly regular")
}

/// Points of the affine plane over `Z/p` (`p` prime), related by the parallel
/// class of the line joining them. Relation `i ≥ 1` has direction `(1, i-1)`
/// for `i ≤ p` and `(0, 1)` for `i = p + 1`.
pub fn affine_plane_scheme(p: usize) -> SchemeRelations {
    assert!(p >= 2 && (2..p).all(|d| !p.is_multiple_of(d)), "affine_plane_scheme needs a prime order");
    let point = |i: usize| (i / p, i % p);
    let n = p * p;
    let direction = |dx: usize, dy: usize| {
        if dx == 0 {
            p + 1
        } else {
            // slope dy / dx in Z/p
            let inv = (1..p).find(|&v| (v * dx) % p == 1).expect("p is prime");
            1 + (dy * inv) % p
        }
    };
    let rel = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == b {
                        return 0;
                    }
                    let ((x1, y1), (x2, y2)) = (point(a), point(b));
                    direction((x2 + p - x1) % p, (y2 + p - y1) % p)
                })
                .collect()
        })
        .collect();
    SchemeRelations::new(rel).expect("affine plane relations are well formed")
}

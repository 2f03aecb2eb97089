//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with its own harness: `cargo test -p tablealg-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tablealg::chartab::{
    character_table, character_value_bound_check, characters_auto, isomorphism_check, multiplicity_bound_check,
    orthogonality_residual, CharacterTable, Characters, ChartabOptions, IdempotentSet, Mode,
};
use tablealg::closed::{enumerate_closed_subsets, quotient, quotient_multiplicity_preservation, ClosedSubset};
use tablealg::duality::{dual_multiplicities_match_degrees, duality_consistency_check, eigenmatrices};
use tablealg::fixtures::{cyclic_group, petersen_scheme, rank_three_not_in_s, sign_algebra, symmetric_group_s3};
use tablealg::scheme::{
    adjacency_image_check, admissible_srg_parameters, affine_plane_algebra, hadamard_preservation_check,
    scheme_to_algebra, srg_algebra, srg_feasibility,
};
use tablealg::{int, AlgebraElement, Rational, Scalar, StructureConstantTable, C64};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn cli(args: &[&str], stdin: &str) -> tablealg_cli::Outcome {
    let mut argv = vec!["tablealg"];
    argv.extend_from_slice(args);
    tablealg_cli::run(argv, &mut stdin.as_bytes())
}

fn json(out: &tablealg_cli::Outcome) -> Value {
    serde_json::from_str(&out.stdout).expect("json report")
}

fn rows_and_zeta(v: &Value) -> (Vec<Vec<String>>, Vec<String>) {
    let chars = v["characters"].as_array().expect("characters");
    let rows = chars
        .iter()
        .map(|c| c["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect();
    let zeta = chars.iter().map(|c| c["zeta"].as_str().unwrap().to_string()).collect();
    (rows, zeta)
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

const RANK3_TBA: &str = include_str!("../../../fixtures/rank3.tba");

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = cli(&["--json", "--exact", "chartab", "-"], RANK3_TBA);
    let std = cli(&["--exact", "standard", "-"], RANK3_TBA);
    let elapsed = start.elapsed();
    if out.code != 0 {
        return fail(format!("chartab exit {} {}", out.code, out.stderr));
    }
    let (rows, zeta) = rows_and_zeta(&json(&out));
    let want_rows = vec![strs(&["1", "2", "25"]), strs(&["1", "2", "-3"]), strs(&["1", "-1", "0"])];
    let want_zeta = strs(&["1", "25/3", "56/3"]);
    if rows != want_rows || zeta != want_zeta {
        return fail(format!("rows {rows:?} zeta {zeta:?}"));
    }
    if std.code != 1 || !std.stdout.contains("in_S no") {
        return fail(format!("standard exit {} (expected 1, not in S)", std.code));
    }
    if elapsed >= Duration::from_secs(1) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("rows and zeta (1, 25/3, 56/3) exact; not in S; {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for q in 2..=5usize {
        let start = Instant::now();
        let gen = cli(&["gen", "affine", &q.to_string()], "");
        let out = cli(&["--json", "--exact", "chartab", "-"], &gen.stdout);
        let std = cli(&["--exact", "standard", "-"], &gen.stdout);
        let elapsed = start.elapsed();
        if gen.code != 0 || out.code != 0 {
            return fail(format!("q={q}: exit {} / {} {}", gen.code, out.code, out.stderr));
        }
        let (rows, zeta) = rows_and_zeta(&json(&out));
        // principal row (1, q-1, ..., q-1); for each class j a row with q-1 at j and -1 elsewhere
        let r = q + 2;
        let qm1 = (q - 1).to_string();
        let principal: Vec<String> = (0..r).map(|i| if i == 0 { "1".into() } else { qm1.clone() }).collect();
        let others: BTreeSet<Vec<String>> = (1..r)
            .map(|j| {
                (0..r)
                    .map(|i| {
                        if i == 0 {
                            "1".into()
                        } else if i == j {
                            qm1.clone()
                        } else {
                            "-1".into()
                        }
                    })
                    .collect()
            })
            .collect();
        let got_others: BTreeSet<Vec<String>> = rows[1..].iter().cloned().collect();
        let mut want_zeta = vec![qm1.clone(); r];
        want_zeta[0] = "1".into();
        if rows.len() != r || rows[0] != principal || got_others != others || zeta != want_zeta {
            return fail(format!("q={q}: rows {rows:?} zeta {zeta:?}"));
        }
        if std.code != 0 || !std.stdout.contains("in_S yes") {
            return fail(format!("q={q}: standard exit {}", std.code));
        }
        if elapsed >= Duration::from_secs(1) {
            return fail(format!("q={q}: took {elapsed:?}"));
        }
        notes.push(format!("q={q} {elapsed:.2?}"));
    }
    pass(format!("pattern exact, in S; {}", notes.join(", ")))
}

fn criterion_3() -> Outcome {
    let opts = ChartabOptions::default();
    let mut exact = vec![("rank3", rank_three_not_in_s())];
    for q in 2..=5 {
        exact.push(("affine", affine_plane_algebra(q).unwrap()));
    }
    for (name, t) in &exact {
        let (ct, _) = match character_table::<Rational>(t, opts) {
            Ok(x) => x,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let res = orthogonality_residual(&ct, t);
        if !res.is_zero(0.0) || res.columns.is_none() {
            return fail(format!("{name}: residual {}", res.max_abs()));
        }
    }
    let pentagon = srg_algebra(5, 2, 0, 1).unwrap();
    match characters_auto(&pentagon, Mode::Auto, opts) {
        Ok(Characters::Float(ct, _)) => {
            let res = orthogonality_residual(&ct, &pentagon.to_float());
            if res.columns.is_none() || res.max_abs() >= 1e-9 {
                return fail(format!("pentagon residual {:e}", res.max_abs()));
            }
            pass(format!("row and column residuals 0 on 5 exact tables; pentagon {:.1e}", res.max_abs()))
        }
        Ok(Characters::Exact(..)) => fail("pentagon characters came out rational"),
        Err(e) => fail(format!("pentagon: {e}")),
    }
}

/// Double cosets and `γ` computed from scratch, for every representative.
fn gamma_independent(
    t: &StructureConstantTable<Rational>,
    c: &ClosedSubset<Rational>,
) -> Result<Vec<Vec<Vec<Rational>>>, String> {
    let r = t.rank();
    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    for b in 0..r {
        if cosets.iter().any(|d| d.contains(&b)) {
            continue;
        }
        let mut d = BTreeSet::new();
        for &x in &c.members {
            for &y in &c.members {
                let e = t
                    .multiply(&t.multiply(&t.basis_element(x), &t.basis_element(b)).unwrap(), &t.basis_element(y))
                    .unwrap();
                d.extend((0..r).filter(|&u| e.coeffs[u] != int(0)));
            }
        }
        cosets.push(d);
    }
    let cp: Rational = c.members.iter().map(|&x| t.degree(x).clone()).sum();
    let k = cosets.len();
    let mut gamma = vec![vec![vec![int(0); k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            for (kk, dk) in cosets.iter().enumerate() {
                let vals: Vec<Rational> = dk
                    .iter()
                    .map(|&u| {
                        let mut s = int(0);
                        for &a in &cosets[i] {
                            for &b in &cosets[j] {
                                s += t.lambda(a, b, u);
                            }
                        }
                        s / cp.clone()
                    })
                    .collect();
                if vals.iter().any(|v| v != &vals[0]) {
                    return Err(format!("γ({i},{j},{kk}) varies: {vals:?}"));
                }
                gamma[i][j][kk] = vals[0].clone();
            }
        }
    }
    Ok(gamma)
}

fn criterion_4() -> Outcome {
    let t = affine_plane_algebra(3).unwrap();
    let opts = ChartabOptions::default();
    let subsets = match enumerate_closed_subsets(&t, 20, 0.0) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let mut pairs = 0;
    for c in &subsets {
        let p = match quotient_multiplicity_preservation(&t, c, opts) {
            Ok(p) => p,
            Err(e) => return fail(format!("{:?}: {e}", c.members)),
        };
        if !p.holds || !p.values_match || !p.unmatched.is_empty() || p.pairs.len() != p.quotient.table.rank() {
            return fail(format!("{:?}: preservation fails", c.members));
        }
        if p.pairs.iter().any(|(_, _, a, b)| a != b) {
            return fail(format!("{:?}: ζ differs", c.members));
        }
        pairs += p.pairs.len();
        let q = quotient(&t, c, 0.0).unwrap();
        if !q.table.validate(0.0).is_valid() {
            return fail(format!("{:?}: quotient invalid", c.members));
        }
        let gamma = match gamma_independent(&t, c) {
            Ok(g) => g,
            Err(e) => return fail(format!("{:?}: {e}", c.members)),
        };
        let k = q.table.rank();
        if gamma.len() != k {
            return fail(format!("{:?}: {} cosets vs quotient rank {k}", c.members, gamma.len()));
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if gamma[i][j][l] != q.table.lambda(i, j, l) {
                        return fail(format!("{:?}: γ({i},{j},{l}) mismatch", c.members));
                    }
                }
            }
        }
    }
    pass(format!("{} closed subsets, {pairs} matched characters, γ exhaustive", subsets.len()))
}

fn criterion_5() -> Outcome {
    let opts = ChartabOptions::default();
    let (petersen, _) = scheme_to_algebra(&petersen_scheme()).unwrap();
    let cases = [
        ("rank3", rank_three_not_in_s()),
        ("affine3", affine_plane_algebra(3).unwrap()),
        ("affine4", affine_plane_algebra(4).unwrap()),
        ("petersen", petersen),
    ];
    for (name, t) in &cases {
        let (ct, _) = match character_table::<Rational>(t, opts) {
            Ok(x) => x,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let pq = match eigenmatrices(t, &ct, 0.0) {
            Ok(x) => x,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if !pq.product_ok(0.0) || !pq.first_row_is_zeta(&ct.zeta, 0.0) {
            return fail(format!("{name}: PQ or first row of Q"));
        }
        let deg = dual_multiplicities_match_degrees(t, opts).unwrap();
        let mut a = deg.dual_zeta.clone();
        let mut b = deg.degrees.clone();
        a.sort();
        b.sort();
        if !deg.holds || (deg.exact && a != b) {
            return fail(format!("{name}: dual ζ {:?} vs degrees {:?}", deg.dual_zeta, deg.degrees));
        }
        let cons = duality_consistency_check(t, opts).unwrap();
        if !cons.consistent || !cons.double_dual_ok {
            return fail(format!("{name}: consistency {} double dual {}", cons.consistent, cons.double_dual_ok));
        }
    }
    pass("PQ = |B+|I, Q row 0 = ζ, dual ζ = degrees, consistency and double dual on 4 algebras")
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (t, d) = scheme_to_algebra(&petersen_scheme()).unwrap();
    let v = match adjacency_image_check(&t, &d, 0.0) {
        Ok(v) => v,
        Err(e) => return fail(e.to_string()),
    };
    let all = v.affords_zeta && v.transpose_ok && v.zero_one_ok && v.disjoint_ok && v.sum_is_j && v.row_sums_ok;
    if !all || !v.is_adjacency_image {
        return fail(format!("unperturbed verdict {v:?}"));
    }
    if !matches!(hadamard_preservation_check(&t, &d, 0.0), Ok(true)) {
        return fail("Hadamard preservation false on the Petersen scheme");
    }
    let n = d.dimension();
    let mut tried = 0;
    for g in 0..d.matrices.len() {
        for x in 0..n {
            for y in 0..n {
                let mut p = d.clone();
                let old = p.matrices[g][(x, y)].clone();
                p.matrices[g][(x, y)] = if old == int(0) { int(1) } else { int(0) };
                tried += 1;
                if let Ok(v) = adjacency_image_check(&t, &p, 0.0) {
                    let all = v.affords_zeta
                        && v.transpose_ok
                        && v.zero_one_ok
                        && v.disjoint_ok
                        && v.sum_is_j
                        && v.row_sums_ok;
                    if all {
                        return fail(format!("perturbation σ_{g}[{x}][{y}] accepted"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(2) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("all flags true; {tried} perturbations rejected; {elapsed:.2?}"))
}

/// Multiplicity integrality straight from the spectrum: the nontrivial
/// eigenvalues r, s and a nonnegative integer f with k + f r + (n-1-f) s = 0.
fn srg_oracle(n: i64, k: i64, l: i64, m: i64) -> bool {
    let disc = (((l - m) * (l - m) + 4 * (k - m)) as f64).sqrt();
    let r = ((l - m) as f64 + disc) / 2.0;
    let s = ((l - m) as f64 - disc) / 2.0;
    (1..n - 1).any(|f| {
        let g = n - 1 - f;
        (k as f64 + f as f64 * r + g as f64 * s).abs() < 1e-7
    })
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let opts = ChartabOptions::default();
    let params = admissible_srg_parameters(50);
    let mut disagree = Vec::new();
    let mut integral = 0;
    for &(n, k, l, m) in &params {
        let oracle = srg_oracle(n, k, l, m);
        integral += usize::from(oracle);
        match srg_feasibility(n, k, l, m, opts) {
            Ok((_, _, f)) if f.standard_ok == oracle => {}
            Ok((_, _, f)) => disagree.push(format!("({n},{k},{l},{m}) standard {} oracle {oracle}", f.standard_ok)),
            Err(e) => disagree.push(format!("({n},{k},{l},{m}) {e}")),
        }
    }
    let elapsed = start.elapsed();
    if !disagree.is_empty() {
        return fail(format!("{} disagreements, first {}", disagree.len(), disagree[0]));
    }
    if elapsed >= Duration::from_secs(30) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("{} parameter sets, {integral} integral, 0 disagreements; {elapsed:.2?}", params.len()))
}

fn idempotents_ok<S: Scalar>(t: &StructureConstantTable<S>, id: &IdempotentSet<S>, tol: f64) -> bool {
    let r = t.rank();
    let mut sum = AlgebraElement::zero(r);
    for (i, a) in id.idempotents.iter().enumerate() {
        sum = sum.add(a);
        if a.is_negligible(tol) {
            return false;
        }
        for (j, b) in id.idempotents.iter().enumerate() {
            let p = t.multiply(a, b).unwrap();
            let want = if i == j { a.clone() } else { AlgebraElement::zero(r) };
            if !p.approx_eq(&want, tol) {
                return false;
            }
        }
    }
    sum.approx_eq(&t.identity(), tol)
}

fn table_checks<S: Scalar>(
    t: &StructureConstantTable<S>,
    ct: &CharacterTable<S>,
    id: &IdempotentSet<S>,
    tol: f64,
) -> bool {
    idempotents_ok(t, id, tol) && multiplicity_bound_check(ct, tol) && character_value_bound_check(ct, t, tol)
}

fn checks(t: &StructureConstantTable<Rational>, ch: &Characters) -> bool {
    match ch {
        Characters::Exact(ct, id) => table_checks(t, ct, id, 0.0),
        Characters::Float(ct, id) => table_checks(&t.to_float(), ct, id, 1e-8),
    }
}

fn sorted_zeta(ch: &Characters) -> Vec<C64> {
    let mut z = ch.zeta_c64();
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

fn criterion_8() -> Outcome {
    let opts = ChartabOptions::default();
    let (petersen, _) = scheme_to_algebra(&petersen_scheme()).unwrap();
    let mut fixtures = vec![
        ("rank3".to_string(), rank_three_not_in_s()),
        ("sign".into(), sign_algebra()),
        ("Z/4".into(), cyclic_group(4)),
        ("Z/5".into(), cyclic_group(5)),
        ("S3".into(), symmetric_group_s3()),
        ("petersen".into(), petersen),
        ("pentagon".into(), srg_algebra(5, 2, 0, 1).unwrap()),
        ("srg(7,3,1,1)".into(), srg_algebra(7, 3, 1, 1).unwrap()),
    ];
    for q in 2..=5 {
        fixtures.push((format!("affine{q}"), affine_plane_algebra(q).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tables = 0;
    for (name, t) in &fixtures {
        let base = match characters_auto(t, Mode::Auto, opts) {
            Ok(c) => c,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if !checks(t, &base) {
            return fail(format!("{name}: idempotent or bound check fails"));
        }
        let z0 = sorted_zeta(&base);
        for _ in 0..100 {
            let mut tail: Vec<usize> = (1..t.rank()).collect();
            tail.shuffle(&mut rng);
            let perm: Vec<usize> = std::iter::once(0).chain(tail).collect();
            let t2 = t.relabel(&perm).unwrap();
            if !isomorphism_check(t, &t2, &perm, 0.0).unwrap() {
                return fail(format!("{name}: relabeling {perm:?} is not an isomorphism"));
            }
            let ch =
                match characters_auto(&t2, Mode::Auto, ChartabOptions { seed: rand::Rng::random(&mut rng), ..opts }) {
                    Ok(c) => c,
                    Err(e) => return fail(format!("{name} {perm:?}: {e}")),
                };
            tables += 1;
            if !checks(&t2, &ch) {
                return fail(format!("{name} {perm:?}: idempotent or bound check fails"));
            }
            let z = sorted_zeta(&ch);
            if z.len() != z0.len() || z.iter().zip(&z0).any(|(a, b)| (a - b).norm() > 1e-9) {
                return fail(format!("{name} {perm:?}: ζ multiset changed"));
            }
            if base.is_exact() && ch.is_exact() {
                let (Characters::Exact(a, _), Characters::Exact(b, _)) = (&base, &ch) else { unreachable!() };
                if a.sorted_zeta() != b.sorted_zeta() {
                    return fail(format!("{name} {perm:?}: exact ζ multiset changed"));
                }
            }
        }
    }
    pass(format!("{} fixtures x 100 relabelings, {tables} tables checked", fixtures.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 rank-three character table (exact), not in S", criterion_1),
        ("2 affine plane character tables q = 2..5", criterion_2),
        ("3 orthogonality residuals", criterion_3),
        ("4 quotient multiplicity preservation", criterion_4),
        ("5 duality suite", criterion_5),
        ("6 scheme realizability and perturbations", criterion_6),
        ("7 SRG feasibility sweep n <= 50", criterion_7),
        ("8 randomized relabeling properties", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

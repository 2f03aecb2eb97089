//! Command-line front end for `tablealg`.
//!
//! [`run`] does all the work and returns the exit code and both output
//! streams, so the binary is a thin wrapper and tests can drive commands
//! in-process.
//!
//! Exit codes: 0 when the computation finished and every asserted invariant
//! held, 1 for a negative verdict, 2 for unusable input.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use tablealg::chartab::{
    character_value_bound_check, characters_auto, check_standard_condition, multiplicity_bound_check,
    orthogonality_residual, standard_trace, CharacterTable, Characters, ChartabOptions, IdempotentSet, Mode,
};
use tablealg::closed::{
    closure, embedding_check, enumerate_closed_subsets, is_closed, quotient, quotient_multiplicity_preservation,
};
use tablealg::duality::{dual_algebra, dual_multiplicities_match_degrees, duality_consistency_check, eigenmatrices};
use tablealg::format::{parse_scheme, parse_tba, write_tba};
use tablealg::scheme::{
    adjacency_image_check, affine_plane_algebra, hadamard_preservation_check, scheme_to_algebra, srg_feasibility,
};
use tablealg::{Error, Rational, Scalar, StructureConstantTable, C64, DEFAULT_TOL, INTEGRALITY_TOL};

#[derive(Debug, Parser)]
#[command(name = "tablealg", version, about = "Table algebras, character tables and association schemes")]
struct Cli {
    /// Seed for the random central element used in diagonalization.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Floating-point comparison tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Require exact rational characters.
    #[arg(long, global = true)]
    exact: bool,
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check the C-algebra axioms.
    Verify { file: String },
    /// Print the character table and standard multiplicities.
    Chartab { file: String },
    /// Decide whether the standard feasible trace is a character.
    Standard { file: String },
    /// List all closed subsets.
    Closed {
        file: String,
        #[arg(long, default_value_t = tablealg::closed::DEFAULT_RANK_GUARD)]
        guard: usize,
    },
    /// Quotient by a closed subset, as a TBA file with a report.
    Quotient {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Dual algebra of a commutative algebra, as a TBA file with a report.
    Dual { file: String },
    /// Association schemes.
    Scheme {
        #[command(subcommand)]
        action: SchemeCmd,
    },
    /// Generate algebras.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
}

#[derive(Debug, Subcommand)]
enum SchemeCmd {
    /// Check regularity and the adjacency-algebra conditions.
    Check { file: String },
    /// Emit the adjacency algebra as a TBA file.
    Algebra { file: String },
}

#[derive(Debug, Subcommand)]
enum GenCmd {
    /// Parallel classes of an affine plane of order q.
    Affine { q: usize },
    /// Rank-3 algebra of a strongly regular graph.
    Srg { n: i64, k: i64, lambda: i64, mu: i64 },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Input {
    text: String,
    digest: String,
}

struct Report {
    text: String,
    json: Map<String, Value>,
    status: i32,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), json: Map::new(), status: 0 }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.insert(key.to_string(), v);
    }

    /// Records a verdict line and fails the report when `ok` is false.
    fn verdict(&mut self, prefix: &str, key: &str, ok: bool) {
        self.line(format!("{prefix}{key} {}", yes_no(ok)));
        self.set(key, Value::Bool(ok));
        if !ok {
            self.status = 1;
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let echo = format!("tablealg {}", echo.join(" "));
    let json = cli.json;
    match dispatch(&cli, stdin) {
        Ok((input, mut report)) => {
            let digest = input.as_ref().map(|i| i.digest.clone());
            if json {
                report.set("command", Value::String(echo));
                report.set("input_sha256", digest.map_or(Value::Null, Value::String));
                report.set("status", json!(report.status));
                let stdout =
                    serde_json::to_string_pretty(&Value::Object(report.json)).expect("json values serialize") + "\n";
                Outcome { code: report.status, stdout, stderr: String::new() }
            } else {
                let mut out = format!("# {echo}\n");
                if let Some(d) = digest {
                    let _ = writeln!(out, "# input sha256 {d}");
                }
                out.push_str(&report.text);
                let _ = writeln!(out, "# status {}", report.status);
                Outcome { code: report.status, stdout: out, stderr: String::new() }
            }
        }
        Err(msg) => {
            let stdout = if json {
                serde_json::to_string_pretty(&json!({ "command": echo, "error": msg, "status": 2 }))
                    .expect("json values serialize")
                    + "\n"
            } else {
                String::new()
            };
            Outcome { code: 2, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Input, String> {
    let mut bytes = Vec::new();
    if path == "-" {
        stdin.read_to_end(&mut bytes).map_err(|e| format!("reading standard input: {e}"))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| format!("{path}: {e}"))?;
    }
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| format!("{path}: not UTF-8 text"))?;
    Ok(Input { text, digest })
}

fn load_tba(path: &str, stdin: &mut dyn Read) -> Result<(Input, StructureConstantTable<Rational>), String> {
    let input = read_input(path, stdin)?;
    let t = parse_tba(&input.text).map_err(|e| format!("{path}: {e}"))?;
    Ok((input, t))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<(Option<Input>, Report), String> {
    let opts = ChartabOptions { seed: cli.seed, tol: cli.tol };
    let mode = if cli.exact { Mode::Exact } else { Mode::Auto };
    match &cli.cmd {
        Cmd::Verify { file } => {
            let (input, t) = load_tba(file, stdin)?;
            Ok((Some(input), verify(&t, cli.tol)))
        }
        Cmd::Chartab { file } => {
            let (input, t) = load_tba(file, stdin)?;
            let ch = characters_auto(&t, mode, opts).map_err(err)?;
            Ok((Some(input), chartab_report(&t, &ch, opts.tol)))
        }
        Cmd::Standard { file } => {
            let (input, t) = load_tba(file, stdin)?;
            let ch = characters_auto(&t, mode, opts).map_err(err)?;
            Ok((Some(input), standard_report(&t, &ch)))
        }
        Cmd::Closed { file, guard } => {
            let (input, t) = load_tba(file, stdin)?;
            Ok((Some(input), closed_report(&t, *guard, cli.tol)?))
        }
        Cmd::Quotient { file, subset } => {
            let (input, t) = load_tba(file, stdin)?;
            Ok((Some(input), quotient_report(&t, subset, mode, opts)?))
        }
        Cmd::Dual { file } => {
            let (input, t) = load_tba(file, stdin)?;
            let ch = characters_auto(&t, mode, opts).map_err(err)?;
            let report = match &ch {
                Characters::Exact(ct, _) => dual_report(&t, ct, opts)?,
                Characters::Float(ct, _) => dual_report(&t.to_float(), ct, opts)?,
            };
            Ok((Some(input), report))
        }
        Cmd::Scheme { action: SchemeCmd::Check { file } } => {
            let input = read_input(file, stdin)?;
            let s = parse_scheme(&input.text).map_err(|e| format!("{file}: {e}"))?;
            Ok((Some(input), scheme_check(&s, cli.tol)?))
        }
        Cmd::Scheme { action: SchemeCmd::Algebra { file } } => {
            let input = read_input(file, stdin)?;
            let s = parse_scheme(&input.text).map_err(|e| format!("{file}: {e}"))?;
            let (t, _) = scheme_to_algebra(&s).map_err(err)?;
            let mut r = Report::new();
            r.line(format!("# points {}", s.points()));
            r.set("points", json!(s.points()));
            emit_table(&mut r, &t);
            Ok((Some(input), r))
        }
        Cmd::Gen { what: GenCmd::Affine { q } } => {
            let t = affine_plane_algebra(*q).map_err(err)?;
            let mut r = Report::new();
            emit_table(&mut r, &t);
            Ok((None, r))
        }
        Cmd::Gen { what: GenCmd::Srg { n, k, lambda, mu } } => {
            let (t, _, f) = srg_feasibility(*n, *k, *lambda, *mu, opts).map_err(err)?;
            let mut r = Report::new();
            r.line(format!("# integrality_ok {}", yes_no(f.integrality_ok)));
            r.line(format!("# standard_ok {}", yes_no(f.standard_ok)));
            r.set("integrality_ok", Value::Bool(f.integrality_ok));
            r.set("standard_ok", Value::Bool(f.standard_ok));
            r.verdict("# ", "agree", f.agree);
            emit_table(&mut r, &t);
            Ok((None, r))
        }
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Appends the table in TBA form; the text report is then a readable TBA file.
fn emit_table<S: Scalar>(r: &mut Report, t: &StructureConstantTable<S>) {
    let tba = write_tba(t);
    r.text.push_str(&tba);
    r.set("tba", Value::String(tba));
}

fn verify(t: &StructureConstantTable<Rational>, tol: f64) -> Report {
    let mut r = Report::new();
    let report = t.validate(tol);
    r.line(format!("rank {}", t.rank()));
    r.set("rank", json!(t.rank()));
    for v in &report.violations {
        r.line(format!("violation {v}"));
    }
    r.set(
        "violations",
        Value::Array(
            report
                .violations
                .iter()
                .map(|v| json!({ "axiom": v.axiom.to_string(), "condition": v.axiom.condition(), "indices": v.indices, "detail": v.detail }))
                .collect(),
        ),
    );
    let flags = [
        ("table_algebra", t.is_table_algebra(tol)),
        ("integral", t.is_integral(tol)),
        ("integral_degree", t.is_integral_degree(tol)),
        ("commutative", t.is_commutative(tol)),
    ];
    for (k, v) in flags {
        r.line(format!("{k} {}", yes_no(v)));
        r.set(k, Value::Bool(v));
    }
    r.verdict("", "valid", report.is_valid());
    r
}

fn show<S: Scalar>(x: &S, tol: f64) -> String {
    if !S::EXACT && x.is_negligible(tol) {
        "0".into()
    } else {
        x.render()
    }
}

fn row_name(i: usize) -> String {
    if i == 0 {
        "rho".into()
    } else {
        format!("chi{i}")
    }
}

fn chartab_report(t: &StructureConstantTable<Rational>, ch: &Characters, tol: f64) -> Report {
    match ch {
        Characters::Exact(ct, id) => chartab_generic(t, ct, id, 0.0, "exact"),
        Characters::Float(ct, id) => chartab_generic(&t.to_float(), ct, id, tol, "float"),
    }
}

/// Aligned table: rows are characters, columns basis labels, then ζ.
fn format_table<S: Scalar>(t: &StructureConstantTable<S>, ct: &CharacterTable<S>, tol: f64) -> Vec<String> {
    let noncomm = !ct.commutative;
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut head = vec![String::new()];
    if noncomm {
        head.push("deg".into());
    }
    head.extend(t.labels().iter().cloned());
    head.push("|".into());
    head.push("zeta".into());
    grid.push(head);
    for (i, row) in ct.characters.iter().enumerate() {
        let mut line = vec![row_name(i)];
        if noncomm {
            line.push(ct.degrees_chi[i].to_string());
        }
        line.extend(row.iter().map(|v| show(v, tol)));
        line.push("|".into());
        line.push(show(&ct.zeta[i], tol));
        grid.push(line);
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    grid.iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, w))| if c == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}

fn chartab_json<S: Scalar>(t: &StructureConstantTable<S>, ct: &CharacterTable<S>, tol: f64) -> Value {
    json!({
        "labels": t.labels(),
        "characters": ct.characters.iter().enumerate().map(|(i, row)| json!({
            "name": row_name(i),
            "degree": ct.degrees_chi[i],
            "values": row.iter().map(|v| show(v, tol)).collect::<Vec<_>>(),
            "zeta": show(&ct.zeta[i], tol),
        })).collect::<Vec<_>>(),
        "b_plus": show(&ct.b_plus, tol),
    })
}

fn chartab_generic<S: Scalar>(
    t: &StructureConstantTable<S>,
    ct: &CharacterTable<S>,
    idems: &IdempotentSet<S>,
    tol: f64,
    mode: &str,
) -> Report {
    let mut r = Report::new();
    r.line(format!("# mode {mode}"));
    r.set("mode", json!(mode));
    for l in format_table(t, ct, tol) {
        r.line(l);
    }
    if let Value::Object(m) = chartab_json(t, ct, tol) {
        r.json.extend(m);
    }
    let res = orthogonality_residual(ct, t);
    let res_tol = if S::EXACT { 0.0 } else { tol.max(1e-9) };
    r.line(format!("# orthogonality residual {}", fmt_norm(res.max_abs())));
    r.set("orthogonality_residual", json!(fmt_norm(res.max_abs())));
    r.verdict("# ", "orthogonality", res.is_zero(res_tol));
    r.verdict("# ", "multiplicity_bound", multiplicity_bound_check(ct, res_tol));
    r.verdict("# ", "value_bound", !t.is_table_algebra(res_tol) || character_value_bound_check(ct, t, res_tol));
    r.verdict("# ", "principal_zeta_one", ct.zeta[0].approx_eq(&S::one(), res_tol));
    let idem_ok = idempotents_ok(t, idems, res_tol.max(if S::EXACT { 0.0 } else { 1e-8 }));
    r.verdict("# ", "idempotents", idem_ok);
    let int_tol = if S::EXACT { 0.0 } else { INTEGRALITY_TOL };
    let in_s = check_standard_condition(ct, int_tol).in_s;
    r.line(format!("# in_S {}", yes_no(in_s)));
    r.set("in_S", Value::Bool(in_s));
    r
}

fn idempotents_ok<S: Scalar>(t: &StructureConstantTable<S>, idems: &IdempotentSet<S>, tol: f64) -> bool {
    let e = &idems.idempotents;
    let mut sum = tablealg::AlgebraElement::zero(t.rank());
    for (i, ei) in e.iter().enumerate() {
        sum = sum.add(ei);
        for (j, ej) in e.iter().enumerate() {
            let Ok(p) = t.multiply(ei, ej) else { return false };
            let want = if i == j { ei.clone() } else { tablealg::AlgebraElement::zero(t.rank()) };
            if !p.approx_eq(&want, tol) {
                return false;
            }
        }
    }
    sum.approx_eq(&t.identity(), tol)
}

fn fmt_norm(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

fn standard_report(t: &StructureConstantTable<Rational>, ch: &Characters) -> Report {
    match ch {
        Characters::Exact(ct, _) => standard_generic(t, ct, 0.0),
        Characters::Float(ct, _) => standard_generic(&t.to_float(), ct, INTEGRALITY_TOL),
    }
}

fn standard_generic<S: Scalar>(t: &StructureConstantTable<S>, ct: &CharacterTable<S>, int_tol: f64) -> Report {
    let mut r = Report::new();
    let zeta_b: Vec<String> = standard_trace(t).iter().map(Scalar::render).collect();
    r.line(format!("standard_trace {}", zeta_b.join(" ")));
    r.set("standard_trace", json!(zeta_b));
    for (i, z) in ct.zeta.iter().enumerate() {
        r.line(format!("zeta {} {}", row_name(i), show(z, int_tol)));
    }
    r.set("zeta", json!(ct.zeta.iter().map(|z| show(z, int_tol)).collect::<Vec<_>>()));
    let v = check_standard_condition(ct, int_tol);
    for (i, z) in &v.offending {
        r.line(format!("offending {} {}", row_name(*i), show(z, int_tol)));
    }
    r.set("offending", json!(v.offending.iter().map(|(i, _)| row_name(*i)).collect::<Vec<_>>()));
    r.verdict("", "in_S", v.in_s);
    r
}

fn labels_of<S: Scalar>(t: &StructureConstantTable<S>, members: &[usize]) -> String {
    members.iter().map(|&i| t.label(i)).collect::<Vec<_>>().join(",")
}

fn closed_report(t: &StructureConstantTable<Rational>, guard: usize, tol: f64) -> Result<Report, String> {
    let subsets = enumerate_closed_subsets(t, guard, tol).map_err(err)?;
    let mut r = Report::new();
    r.line(format!("count {}", subsets.len()));
    for c in &subsets {
        let idx: Vec<String> = c.members.iter().map(usize::to_string).collect();
        r.line(format!("{{{}}}  indices {}  C+ {}", labels_of(t, &c.members), idx.join(","), c.c_plus_degree.render()));
    }
    r.set(
        "closed_subsets",
        Value::Array(
            subsets
                .iter()
                .map(|c| json!({ "indices": c.members, "labels": c.members.iter().map(|&i| t.label(i)).collect::<Vec<_>>(), "c_plus": c.c_plus_degree.render() }))
                .collect(),
        ),
    );
    Ok(r)
}

fn quotient_report(
    t: &StructureConstantTable<Rational>,
    subset: &[usize],
    mode: Mode,
    opts: ChartabOptions,
) -> Result<Report, String> {
    let mut members = subset.to_vec();
    if !members.contains(&0) {
        members.push(0);
    }
    if !is_closed(t, &members, opts.tol).map_err(err)? {
        let cl = closure(t, &members, opts.tol).map_err(err)?;
        return Err(format!(
            "subset {{{}}} is not closed; its closure is {{{}}}",
            labels_of(t, &members),
            labels_of(t, &cl.members)
        ));
    }
    let c = closure(t, &members, opts.tol).map_err(err)?;
    let q = quotient(t, &c, opts.tol).map_err(err)?;
    let mut r = Report::new();
    r.line(format!("# subset {{{}}}  C+ {}", labels_of(t, &c.members), c.c_plus_degree.render()));
    for (d, rep) in q.cosets.iter().zip(&q.coset_reps) {
        r.line(format!("# coset {} = {{{}}}", t.label(*rep), labels_of(t, d)));
    }
    r.set("cosets", json!(q.cosets));
    r.verdict("# ", "quotient_valid", q.table.validate(opts.tol).is_valid());
    r.verdict("# ", "embedding", embedding_check(t, &q, opts.tol));

    let exact = if mode == Mode::Float {
        Err(Error::Inexact("floating mode requested".into()))
    } else {
        quotient_multiplicity_preservation(t, &c, opts)
    };
    let (pairs, holds, values) = match exact {
        Ok(p) => (
            p.pairs.iter().map(|(a, b, x, y)| (*a, *b, x.render(), y.render())).collect::<Vec<_>>(),
            p.holds,
            p.values_match,
        ),
        Err(Error::Inexact(_)) if mode != Mode::Exact => {
            let tf = t.to_float();
            let cf = closure(&tf, &c.members, opts.tol).map_err(err)?;
            let p = quotient_multiplicity_preservation::<C64>(&tf, &cf, opts).map_err(err)?;
            (
                p.pairs.iter().map(|(a, b, x, y)| (*a, *b, show(x, opts.tol), show(y, opts.tol))).collect(),
                p.holds,
                p.values_match,
            )
        }
        Err(e) => return Err(err(e)),
    };
    for (chi, psi, a, b) in &pairs {
        r.line(format!("# zeta parent {} = {a}  quotient {} = {b}", row_name(*chi), row_name(*psi)));
    }
    r.set("zeta_pairs", json!(pairs.iter().map(|(c, p, a, b)| json!({"parent": row_name(*c), "quotient": row_name(*p), "parent_zeta": a, "quotient_zeta": b})).collect::<Vec<_>>()));
    r.verdict("# ", "restricted_values", values);
    r.verdict("# ", "zeta_preserved", holds);
    emit_table(&mut r, &q.table);
    Ok(r)
}

fn dual_report<S: Scalar>(
    t: &StructureConstantTable<S>,
    ct: &CharacterTable<S>,
    opts: ChartabOptions,
) -> Result<Report, String> {
    let tol = if S::EXACT { 0.0 } else { opts.tol };
    let pq = eigenmatrices(t, ct, tol).map_err(err)?;
    let da = dual_algebra(t, ct, tol).map_err(err)?;
    let mut r = Report::new();
    r.line(format!("# mode {}", if S::EXACT { "exact" } else { "float" }));
    r.verdict("# ", "pq_is_scalar", pq.product_ok(tol.max(if S::EXACT { 0.0 } else { 1e-9 })));
    r.verdict("# ", "q_first_row_is_zeta", pq.first_row_is_zeta(&ct.zeta, tol));
    r.verdict("# ", "dual_valid", da.table.validate(tol).is_valid());
    r.line(format!("# dual b_plus {}", show(&da.b_plus_hat, tol)));
    let deg = dual_multiplicities_match_degrees(t, opts).map_err(err)?;
    r.line(format!("# dual zeta {{{}}}", deg.dual_zeta.join(", ")));
    r.line(format!("# degrees {{{}}}", deg.degrees.join(", ")));
    r.set("dual_zeta", json!(deg.dual_zeta));
    r.set("degrees", json!(deg.degrees));
    r.verdict("# ", "dual_zeta_equals_degrees", deg.holds);
    let cor = duality_consistency_check(t, opts).map_err(err)?;
    r.line(format!("# primal integral_degree {} in_S {}", yes_no(cor.primal.0), yes_no(cor.primal.1)));
    r.line(format!("# dual integral_degree {} in_S {}", yes_no(cor.dual.0), yes_no(cor.dual.1)));
    r.set("primal", json!({"integral_degree": cor.primal.0, "in_S": cor.primal.1}));
    r.set("dual", json!({"integral_degree": cor.dual.0, "in_S": cor.dual.1}));
    r.verdict("# ", "consistent", cor.consistent);
    r.verdict("# ", "double_dual", cor.double_dual_ok);
    emit_table(&mut r, &da.table);
    Ok(r)
}

fn scheme_check(s: &tablealg::SchemeRelations, tol: f64) -> Result<Report, String> {
    let mut r = Report::new();
    r.line(format!("points {}", s.points()));
    r.line(format!("relations {}", s.rank()));
    r.set("points", json!(s.points()));
    r.set("relations", json!(s.rank()));
    let (t, d) = match scheme_to_algebra(s) {
        Ok(x) => x,
        Err(Error::NotAScheme(msg)) => {
            r.line(format!("violation {msg}"));
            r.set("violation", json!(msg));
            r.verdict("", "scheme", false);
            return Ok(r);
        }
        Err(e) => return Err(err(e)),
    };
    r.verdict("", "scheme", true);
    let valencies: Vec<String> = t.degrees().iter().map(Scalar::render).collect();
    r.line(format!("valencies {}", valencies.join(" ")));
    r.set("valencies", json!(valencies));
    let v = adjacency_image_check(&t, &d, tol).map_err(err)?;
    for (k, b) in [
        ("affords_zeta", v.affords_zeta),
        ("transpose_ok", v.transpose_ok),
        ("zero_one_ok", v.zero_one_ok),
        ("disjoint_ok", v.disjoint_ok),
        ("sum_is_J", v.sum_is_j),
        ("row_sums_ok", v.row_sums_ok),
    ] {
        r.line(format!("{k} {}", yes_no(b)));
        r.set(k, Value::Bool(b));
    }
    r.verdict("", "is_adjacency_image", v.is_adjacency_image);
    r.verdict("", "hadamard_preserved", hadamard_preservation_check(&t, &d, tol).map_err(err)?);
    let ch = characters_auto(&t, Mode::Auto, ChartabOptions { tol, ..ChartabOptions::default() }).map_err(err)?;
    let in_s = match &ch {
        Characters::Exact(ct, _) => check_standard_condition(ct, 0.0).in_s,
        Characters::Float(ct, _) => check_standard_condition(ct, INTEGRALITY_TOL).in_s,
    };
    r.verdict("", "in_S", in_s);
    Ok(r)
}

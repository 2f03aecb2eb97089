//! Text formats.
//!
//! Algebras:
//!
//! ```text
//! tba 1
//! rank 3
//! label 1 b
//! star 1 1          # only needed for non-fixed points
//! sc 1 1 0 2        # λ_abc, num or num/den
//! deg 1 2           # optional
//! ```
//!
//! Schemes:
//!
//! ```text
//! scheme 1
//! points 3
//! 0 1 1
//! 1 0 1
//! 1 1 0
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::algebra::{default_label, StructureConstantTable, TableBuilder};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::scheme::SchemeRelations;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn index(line: usize, word: &str, rank: usize) -> Result<usize> {
    let i: usize = word.parse().map_err(|_| perr(line, format!("bad index {word:?}")))?;
    if i >= rank {
        return Err(perr(line, format!("index {i} out of range for rank {rank}")));
    }
    Ok(i)
}

fn value(line: usize, word: &str) -> Result<Rational> {
    parse_rational(word).ok_or_else(|| perr(line, format!("bad number {word:?}")))
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() != n + 1 {
        return Err(perr(line, format!("{} takes {n} arguments, found {}", words[0], words.len() - 1)));
    }
    Ok(())
}

pub fn parse_tba(text: &str) -> Result<StructureConstantTable<Rational>> {
    let mut lines = tokens(text);
    match lines.next() {
        Some((_, w)) if w == ["tba", "1"] => {}
        Some((l, _)) => return Err(perr(l, "expected header `tba 1`")),
        None => return Err(perr(1, "empty input")),
    }
    let mut builder: Option<(TableBuilder<Rational>, usize)> = None;
    let mut seen_sc = HashSet::new();
    let mut seen_deg = HashSet::new();
    let mut last_line = 1;
    for (l, w) in lines {
        last_line = l;
        if w[0] == "rank" {
            arity(l, &w, 1)?;
            if builder.is_some() {
                return Err(perr(l, "rank given twice"));
            }
            let r: usize = w[1].parse().map_err(|_| perr(l, format!("bad rank {:?}", w[1])))?;
            if r == 0 {
                return Err(perr(l, "rank must be positive"));
            }
            builder = Some((TableBuilder::new(r), r));
            continue;
        }
        let Some((b, r)) = builder.as_mut() else {
            return Err(perr(l, format!("`{}` before `rank`", w[0])));
        };
        let r = *r;
        match w[0] {
            "label" => {
                arity(l, &w, 2)?;
                b.label(index(l, w[1], r)?, w[2]);
            }
            "star" => {
                arity(l, &w, 2)?;
                let (i, j) = (index(l, w[1], r)?, index(l, w[2], r)?);
                b.star(i, j);
                b.build().map_err(|e| perr(l, e.to_string()))?;
            }
            "sc" => {
                arity(l, &w, 4)?;
                let (x, y, z) = (index(l, w[1], r)?, index(l, w[2], r)?, index(l, w[3], r)?);
                if !seen_sc.insert((x, y, z)) {
                    return Err(perr(l, format!("duplicate constant for ({x}, {y}, {z})")));
                }
                b.constant(x, y, z, value(l, w[4])?);
            }
            "deg" => {
                arity(l, &w, 2)?;
                let i = index(l, w[1], r)?;
                if !seen_deg.insert(i) {
                    return Err(perr(l, format!("duplicate degree for {i}")));
                }
                b.degree(i, value(l, w[2])?);
            }
            other => return Err(perr(l, format!("unknown directive `{other}`"))),
        }
    }
    let (b, _) = builder.ok_or_else(|| perr(last_line, "missing `rank`"))?;
    b.build().map_err(|e| perr(last_line, e.to_string()))
}

/// Writes a table in the format read by [`parse_tba`]. Floating tables are
/// written as decimals and must have real entries.
pub fn write_tba<S: Scalar>(t: &StructureConstantTable<S>) -> String {
    let mut out = String::from("tba 1\n");
    let _ = writeln!(out, "rank {}", t.rank());
    for i in 0..t.rank() {
        if t.label(i) != default_label(i) {
            let _ = writeln!(out, "label {i} {}", t.label(i));
        }
    }
    for i in 0..t.rank() {
        let j = t.star(i);
        if i < j {
            let _ = writeln!(out, "star {i} {j}");
        }
    }
    for (a, b, c, v) in t.entries() {
        let _ = writeln!(out, "sc {a} {b} {c} {}", v.render());
    }
    for i in 0..t.rank() {
        let _ = writeln!(out, "deg {i} {}", t.degree(i).render());
    }
    out
}

pub fn parse_scheme(text: &str) -> Result<SchemeRelations> {
    let mut lines = tokens(text);
    match lines.next() {
        Some((_, w)) if w == ["scheme", "1"] => {}
        Some((l, _)) => return Err(perr(l, "expected header `scheme 1`")),
        None => return Err(perr(1, "empty input")),
    }
    let n = match lines.next() {
        Some((l, w)) if w.first() == Some(&"points") => {
            arity(l, &w, 1)?;
            w[1].parse::<usize>().map_err(|_| perr(l, format!("bad point count {:?}", w[1])))?
        }
        Some((l, _)) => return Err(perr(l, "expected `points <n>`")),
        None => return Err(perr(1, "missing `points`")),
    };
    let mut rows = Vec::with_capacity(n);
    let mut last = 2;
    for (l, w) in lines {
        last = l;
        if rows.len() == n {
            return Err(perr(l, format!("more than {n} rows")));
        }
        if w.len() != n {
            return Err(perr(l, format!("expected {n} entries, found {}", w.len())));
        }
        let row = w
            .iter()
            .map(|x| x.parse::<usize>().map_err(|_| perr(l, format!("bad relation index {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(perr(last, format!("expected {n} rows, found {}", rows.len())));
    }
    SchemeRelations::new(rows)
}

pub fn write_scheme(s: &SchemeRelations) -> String {
    let mut out = format!("scheme 1\npoints {}\n", s.points());
    for row in s.relmat() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{petersen_scheme, rank_three_not_in_s};
    use crate::scalar::int;

    const EXAMPLE: &str = "tba 1
# basis 1, b, c
rank 3
label 1 b
label 2 c
sc 0 0 0 1
sc 0 1 1 1
sc 0 2 2 1
sc 1 0 1 1
sc 2 0 2 1
sc 1 1 0 2
sc 1 1 1 1
sc 1 2 2 2
sc 2 1 2 2
sc 2 2 0 25
sc 2 2 1 25
sc 2 2 2 22   # c² = 25 + 25b + 22c
";

    #[test]
    fn parses_example() {
        let t = parse_tba(EXAMPLE).unwrap();
        assert_eq!(t, rank_three_not_in_s());
        assert_eq!(t.degree(2), &int(25));
    }

    #[test]
    fn round_trip() {
        let t = rank_three_not_in_s();
        assert_eq!(parse_tba(&write_tba(&t)).unwrap(), t);
        let s = petersen_scheme();
        assert_eq!(parse_scheme(&write_scheme(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = EXAMPLE.replace("sc 2 2 2 22", "sc 2 2 7 22");
        assert!(matches!(parse_tba(&bad), Err(Error::Parse { line: 17, .. })));
        assert!(matches!(parse_tba("tba 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tba("tba 1\nsc 0 0 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tba("tba 1\nrank 2\nsc 0 0 0 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_tba("tba 1\nrank 2\nfoo 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_tba("tba 1\nrank 3\nstar 1 2\nstar 1 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_tba("tba 1\nrank 1\nsc 0 0 0 1\nsc 0 0 0 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_tba(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_scheme("scheme 1\npoints 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_scheme("scheme 1\npoints 2\n0 1\n1\n"), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn decimals_are_exact() {
        let t = parse_tba("tba 1\nrank 2\nsc 0 0 0 1\nsc 0 1 1 1\nsc 1 0 1 1\nsc 1 1 0 0.5\nsc 1 1 1 -0.5\n").unwrap();
        assert_eq!(t.lambda(1, 1, 0), crate::scalar::rational(1, 2));
        assert!(t.validate(0.0).is_valid());
    }
}

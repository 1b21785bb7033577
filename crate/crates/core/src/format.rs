//! The `.alg` text format.
//!
//! ```text
//! # comment
//! field Q            # or F2, F<p>
//! nilp 3
//! vertex a b c       # one or more vertex ids
//! arrow x a b        # arrow x: a -> b
//! arrow y b c
//! zero y*x           # x first, then y
//! rel y*x - z*w      # binomial, both sides parallel and of equal length
//! partition E' = c; E'' = a, b
//! ```

use std::fmt::Write as _;

use crate::algebra::{AlgebraSpec, Relation};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quiver::Quiver;

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Column (1-based) of `token` within `line`, searching from byte `from`.
fn col(line: &str, token: &str, from: usize) -> usize {
    line[from.min(line.len())..]
        .find(token)
        .map(|i| i + from + 1)
        .unwrap_or(from + 1)
}

pub fn parse_alg(text: &str) -> Result<AlgebraSpec> {
    let mut q = Quiver::new();
    let mut relations = Vec::new();
    let mut field = FieldSpec::Rational;
    let mut nilp = None;
    let mut partition = None;
    let mut pending: Vec<(usize, String, usize, bool)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let start = line.len() - line.trim_start().len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let rest_col = col(line, rest, start + kw.len());
        match kw {
            "vertex" => {
                if rest.is_empty() {
                    return Err(err(ln, start + kw.len() + 1, "expected at least one vertex id"));
                }
                let mut from = start + kw.len();
                for id in rest.split_whitespace() {
                    let c = col(line, id, from);
                    from = c - 1 + id.len();
                    q.add_vertex(id).map_err(|e| err(ln, c, e.to_string()))?;
                }
            }
            "arrow" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(err(ln, rest_col, "expected `arrow <id> <source> <target>`"));
                }
                if toks[0].contains('*') {
                    return Err(err(ln, rest_col, "arrow ids may not contain `*`"));
                }
                let mut from = start + kw.len();
                let cols: Vec<usize> = toks
                    .iter()
                    .map(|t| {
                        let c = col(line, t, from);
                        from = c - 1 + t.len();
                        c
                    })
                    .collect();
                for k in 1..3 {
                    if q.vertex(toks[k]).is_err() {
                        return Err(err(ln, cols[k], format!("unknown vertex `{}`", toks[k])));
                    }
                }
                q.add_arrow(toks[0], toks[1], toks[2])
                    .map_err(|e| err(ln, cols[0], e.to_string()))?;
            }
            "zero" => pending.push((ln, rest.to_string(), rest_col, false)),
            "rel" => pending.push((ln, rest.to_string(), rest_col, true)),
            "field" => {
                field = rest.parse().map_err(|e: Error| err(ln, rest_col, e.to_string()))?;
            }
            "nilp" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| err(ln, rest_col, format!("expected a number, found `{rest}`")))?;
                nilp = Some(n);
            }
            "partition" => {
                let p = parse_partition(rest).map_err(|m| err(ln, rest_col, m))?;
                partition = Some((ln, rest_col, p));
            }
            other => return Err(err(ln, start + 1, format!("unknown statement `{other}`"))),
        }
    }
    for (ln, body, c, binomial) in pending {
        let path = |s: &str, off: usize| q.parse_path(s.trim()).map_err(|e| err(ln, c + off, e.to_string()));
        let rel = if binomial {
            let (l, r) = body
                .split_once(" - ")
                .ok_or_else(|| err(ln, c, "expected `rel <path> - <path>`"))?;
            Relation::Binomial(path(l, 0)?, path(r, l.len() + 3)?)
        } else {
            if body.contains(" - ") {
                return Err(err(ln, c, "`zero` takes a single path; use `rel` for binomials"));
            }
            Relation::Monomial(path(&body, 0)?)
        };
        relations.push(rel);
    }
    let mut spec = AlgebraSpec::new(q, relations).with_field(field);
    if let Some(n) = nilp {
        spec = spec.with_nilp(n);
    }
    if let Some((ln, c, (lower, upper))) = partition {
        for v in lower.iter().chain(&upper) {
            if spec.quiver.vertex(v).is_err() {
                return Err(err(ln, c, format!("unknown vertex `{v}` in partition")));
            }
        }
        let upper = if upper.is_empty() {
            spec.quiver
                .vertex_names()
                .iter()
                .filter(|v| !lower.contains(v))
                .cloned()
                .collect()
        } else {
            upper
        };
        spec.partition = Some((lower, upper));
    }
    Ok(spec)
}

/// `E' = a, b; E'' = c` (the `E''` part may be omitted).
fn parse_partition(text: &str) -> std::result::Result<(Vec<String>, Vec<String>), String> {
    let mut lower = None;
    let mut upper = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected `E' = ...; E'' = ...`, found `{part}`"))?;
        let names: Vec<String> = v
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        match k.trim() {
            "E'" => lower = Some(names),
            "E''" => upper = names,
            other => return Err(format!("unknown partition key `{other}`")),
        }
    }
    Ok((lower.ok_or("missing E'")?, upper))
}

pub fn emit_alg(spec: &AlgebraSpec) -> String {
    let q = &spec.quiver;
    let mut s = String::new();
    let _ = writeln!(s, "field {}", spec.field);
    let _ = writeln!(s, "nilp {}", spec.nilp);
    for v in q.vertex_names() {
        let _ = writeln!(s, "vertex {v}");
    }
    for a in q.arrows() {
        let _ = writeln!(s, "arrow {} {} {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target));
    }
    for r in &spec.relations {
        match r {
            Relation::Monomial(p) => {
                let _ = writeln!(s, "zero {}", q.render(p));
            }
            Relation::Binomial(p, t) => {
                let _ = writeln!(s, "rel {} - {}", q.render(p), q.render(t));
            }
        }
    }
    if let Some((l, u)) = &spec.partition {
        let _ = writeln!(s, "partition E' = {}; E'' = {}", l.join(", "), u.join(", "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip() {
        for spec in [catalog::looped_radical_square_zero(), catalog::lambda0(2, 3).unwrap()] {
            let text = emit_alg(&spec);
            let back = parse_alg(&text).unwrap();
            assert_eq!(back.quiver, spec.quiver);
            assert_eq!(back.relations, spec.relations);
            assert_eq!(back.partition, spec.partition);
            assert_eq!(emit_alg(&back), text);
        }
    }

    #[test]
    fn errors_point_at_tokens() {
        let e = parse_alg("vertex a b\narrow x a c\n").unwrap_err();
        assert_eq!(e, err(2, 11, "unknown vertex `c`"));
        let e = parse_alg("vertex a\n  frobnicate\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 3, .. }));
        let e = parse_alg("vertex a b\narrow x a b\nzero x*y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 6, .. }), "{e}");
        let e = parse_alg("field F4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 7, .. }));
    }

    #[test]
    fn partition_complement() {
        let spec = parse_alg("vertex a b c\narrow x a b\npartition E' = b\n").unwrap();
        assert_eq!(spec.partition, Some((vec!["b".into()], vec!["a".into(), "c".into()])));
    }
}

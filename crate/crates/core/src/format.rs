//! Line-oriented text formats for algebras, products and linear maps.
//!
//! ```text
//! # comments run to the end of the line
//! algebra sl2 dim 3
//! grading z2                      # optional; z2, z2^k or z^k
//! basis 0 e [degree 0]            # degree coordinates comma-separated
//! basis 1 f
//! basis 2 h
//! bracket 0 1 = 1*2
//! bracket 0 2 = -2*0
//! bracket 1 2 = 2*1
//! ```
//!
//! Indices are 0-based. A right-hand side is `c*k (+ c*k)*` with rational
//! `c`, or `0`. Product files hold `product i j = …` lines with `i ≤ j`; map
//! files hold `map i = …` lines giving the image of `e_i`. The serializers
//! emit a canonical form that parses back to an identical value, and
//! serializing that value reproduces the text byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::grading::{Grading, GradingGroup};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::map::LinearMap;
use crate::poisson::Product;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// Largest dimension accepted from text.
pub const MAX_DIM: usize = 1024;

type ParseResult<T> = Result<T, ParseError>;

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((n + 1, body))
    })
}

fn parse_index(tok: &str, dim: usize, line: usize) -> ParseResult<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(line, format!("expected a basis index, found `{tok}`")));
    }
    match tok.parse::<usize>() {
        Ok(i) if i < dim => Ok(i),
        _ => Err(ParseError::new(line, format!("index {tok} out of range for dimension {dim}"))),
    }
}

/// Parses `c*k (+ c*k)*` or `0` into a vector of length `dim`.
fn parse_terms(rhs: &str, dim: usize, line: usize) -> ParseResult<Vector> {
    let mut v = Vector::zeros(dim);
    let tokens: Vec<&str> = rhs.split_whitespace().collect();
    if tokens == ["0"] {
        return Ok(v);
    }
    if tokens.is_empty() || tokens.len().is_multiple_of(2) {
        return Err(ParseError::new(line, "expected `c*k (+ c*k)*` or `0`"));
    }
    let mut seen = vec![false; dim];
    for (pos, tok) in tokens.iter().enumerate() {
        if pos % 2 == 1 {
            if *tok != "+" {
                return Err(ParseError::new(line, format!("expected `+`, found `{tok}`")));
            }
            continue;
        }
        let (coeff, idx) =
            tok.split_once('*').ok_or_else(|| ParseError::new(line, format!("expected `c*k`, found `{tok}`")))?;
        let c = parse_scalar(coeff).map_err(|e| e.at(line))?;
        let k = parse_index(idx, dim, line)?;
        if std::mem::replace(&mut seen[k], true) {
            return Err(ParseError::new(line, format!("basis index {k} repeated")));
        }
        v[k] = c;
    }
    Ok(v)
}

fn render_terms(v: &Vector) -> String {
    let terms: Vec<String> = v.nonzeros().map(|(k, c)| format!("{}*{k}", format_scalar(c))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn split_assignment(body: &str, line: usize) -> ParseResult<(&str, &str)> {
    body.split_once('=').ok_or_else(|| ParseError::new(line, "missing `=`"))
}

fn parse_group(tok: &str, line: usize) -> ParseResult<GradingGroup> {
    let bad = || ParseError::new(line, format!("unknown grading group `{tok}`"));
    let (kind, rank) = match tok.split_once('^') {
        Some((kind, k)) => (kind, k.parse::<usize>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    if rank == 0 || rank > 64 {
        return Err(bad());
    }
    match kind {
        "z2" => Ok(GradingGroup::Z2Pow(rank)),
        "z" => Ok(GradingGroup::ZPow(rank)),
        _ => Err(bad()),
    }
}

fn parse_degree(tok: &str, line: usize) -> ParseResult<Vec<i64>> {
    tok.split(',').map(|c| c.parse::<i64>().map_err(|_| ParseError::new(line, format!("bad degree `{tok}`")))).collect()
}

pub fn parse_algebra(text: &str) -> ParseResult<LieAlgebra> {
    parse_graded_algebra(text).map(|(alg, _)| alg)
}

/// Parses an algebra file, returning the grading when basis degrees are given.
pub fn parse_graded_algebra(text: &str) -> ParseResult<(LieAlgebra, Option<Grading>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| ParseError::new(0, "empty algebra file"))?;
    let (name, dim) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["algebra", name, "dim", d] => {
            let dim = d
                .parse::<usize>()
                .ok()
                .filter(|&d| d <= MAX_DIM)
                .ok_or_else(|| ParseError::new(hline, format!("dimension must be an integer ≤ {MAX_DIM}")))?;
            (name.to_string(), dim)
        }
        _ => return Err(ParseError::new(hline, "expected `algebra <name> dim <d>`")),
    };

    let mut group: Option<GradingGroup> = None;
    let mut labels: Vec<Option<String>> = vec![None; dim];
    let mut degrees: Vec<Option<Vec<i64>>> = vec![None; dim];
    let mut brackets: BTreeMap<(usize, usize), (usize, Vector)> = BTreeMap::new();
    let mut last_line = hline;

    for (line, body) in lines {
        last_line = line;
        let keyword = body.split_whitespace().next().unwrap_or("");
        match keyword {
            "grading" => {
                let toks: Vec<&str> = body.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(ParseError::new(line, "expected `grading <group>`"));
                }
                if group.replace(parse_group(toks[1], line)?).is_some() {
                    return Err(ParseError::new(line, "grading declared twice"));
                }
            }
            "basis" => {
                let toks: Vec<&str> = body.split_whitespace().collect();
                let (idx, label, degree) = match toks[..] {
                    [_, i, l] => (i, l, None),
                    [_, i, l, "degree", g] => (i, l, Some(parse_degree(g, line)?)),
                    _ => return Err(ParseError::new(line, "expected `basis <index> <label> [degree <g>]`")),
                };
                let i = parse_index(idx, dim, line)?;
                if labels[i].is_some() {
                    return Err(ParseError::new(line, format!("basis index {i} declared twice")));
                }
                if labels.iter().flatten().any(|l| l == label) {
                    return Err(ParseError::new(line, format!("label `{label}` used twice")));
                }
                labels[i] = Some(label.to_string());
                degrees[i] = degree;
            }
            "bracket" => {
                let (lhs, rhs) = split_assignment(body, line)?;
                let toks: Vec<&str> = lhs.split_whitespace().collect();
                let [_, a, b] = toks[..] else {
                    return Err(ParseError::new(line, "expected `bracket <i> <j> = …`"));
                };
                let i = parse_index(a, dim, line)?;
                let j = parse_index(b, dim, line)?;
                let v = parse_terms(rhs, dim, line)?;
                if i == j {
                    if !v.is_zero() {
                        return Err(ParseError::new(line, format!("nonzero self-bracket [{i}, {i}]")));
                    }
                    continue;
                }
                let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -&v) };
                if let Some((first, prev)) = brackets.get(&key) {
                    let msg = if *prev == v {
                        format!("bracket of {} and {} already declared on line {first}", key.0, key.1)
                    } else {
                        format!("bracket of {} and {} contradicts antisymmetry with line {first}", key.0, key.1)
                    };
                    return Err(ParseError::new(line, msg));
                }
                brackets.insert(key, (line, v));
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }

    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| ParseError::new(last_line, format!("basis index {i} not declared"))))
        .collect::<ParseResult<_>>()?;

    let grading = if degrees.iter().all(Option::is_none) {
        if group.is_some() && dim > 0 {
            return Err(ParseError::new(last_line, "grading declared but no basis degrees given"));
        }
        None
    } else {
        let degrees: Vec<Vec<i64>> = degrees
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| ParseError::new(last_line, format!("basis index {i} has no degree"))))
            .collect::<ParseResult<_>>()?;
        let group = group.unwrap_or(GradingGroup::Z2Pow(degrees[0].len()));
        Some(Grading::new(group, degrees).map_err(|e| ParseError::new(last_line, e.to_string()))?)
    };

    let alg = LieAlgebra::new(name, labels, brackets.into_iter().map(|((i, j), (_, v))| (i, j, v)))
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok((alg, grading))
}

/// Canonical text for `alg`, with basis degrees when a grading is given.
pub fn serialize_algebra(alg: &LieAlgebra, grading: Option<&Grading>) -> String {
    let mut out = format!("algebra {} dim {}\n", alg.name(), alg.dim());
    if let Some(g) = grading {
        let _ = writeln!(out, "grading {}", g.group());
    }
    for (i, label) in alg.labels().iter().enumerate() {
        match grading {
            Some(g) => {
                let _ = writeln!(out, "basis {i} {label} degree {}", g.degree(i));
            }
            None => {
                let _ = writeln!(out, "basis {i} {label}");
            }
        }
    }
    for ((i, j), v) in alg.brackets() {
        let _ = writeln!(out, "bracket {i} {j} = {}", render_terms(v));
    }
    out
}

pub fn parse_product(text: &str, dim: usize) -> ParseResult<Product> {
    let mut entries: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for (line, body) in content_lines(text) {
        let (lhs, rhs) = split_assignment(body, line)?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let ["product", a, b] = toks[..] else {
            return Err(ParseError::new(line, "expected `product <i> <j> = …`"));
        };
        let i = parse_index(a, dim, line)?;
        let j = parse_index(b, dim, line)?;
        if i > j {
            return Err(ParseError::new(line, format!("product {i} {j}: write the pair as {j} {i}")));
        }
        let v = parse_terms(rhs, dim, line)?;
        if entries.insert((i, j), v).is_some() {
            return Err(ParseError::new(line, format!("product {i} {j} declared twice")));
        }
    }
    Product::new(dim, entries.into_iter().map(|((i, j), v)| (i, j, v))).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn serialize_product(p: &Product) -> String {
    let mut out = String::new();
    for ((i, j), v) in p.entries() {
        let _ = writeln!(out, "product {i} {j} = {}", render_terms(v));
    }
    out
}

pub fn parse_map(text: &str, dim: usize) -> ParseResult<LinearMap> {
    let mut map = LinearMap::zero(dim);
    let mut seen = vec![false; dim];
    for (line, body) in content_lines(text) {
        let (lhs, rhs) = split_assignment(body, line)?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let ["map", a] = toks[..] else {
            return Err(ParseError::new(line, "expected `map <i> = …`"));
        };
        let i = parse_index(a, dim, line)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(ParseError::new(line, format!("map {i} declared twice")));
        }
        for (k, c) in parse_terms(rhs, dim, line)?.nonzeros() {
            map.set(k, i, c.clone());
        }
    }
    Ok(map)
}

pub fn serialize_map(m: &LinearMap) -> String {
    let mut out = String::new();
    for i in 0..m.dim() {
        let img = m.image(i);
        if !img.is_zero() {
            let _ = writeln!(out, "map {i} = {}", render_terms(&img));
        }
    }
    out
}

/// Renders a vector as `c*label + …` for reports.
pub fn render_vector(alg: &LieAlgebra, v: &Vector) -> String {
    let terms: Vec<String> = v
        .nonzeros()
        .map(|(k, c)| {
            let c: &Scalar = c;
            format!("{}*{}", format_scalar(c), alg.label(k))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

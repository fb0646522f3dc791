//! Line-oriented family description files.
//!
//! ```text
//! # a space line
//! param a1 a2 a3 a4
//! var x y z
//! order degrevlex
//! gen x - a1*y - a2*z; x - a3*y - a4*z
//!
//! detect
//! box a1 -4 4
//! box a2 -4 4
//! resolution 64
//! point 0 1 2
//! csv more_points.csv
//! sample at=2,1 count=50 seed=7 range=-4,4
//! ```
//!
//! `aux u` declares an indeterminate that is eliminated before analysis.
//! Names may be separated by spaces or commas. Numbers are integers, `p/q`
//! fractions or exact decimals. Everything after `#` is a comment.

use std::fmt;

use crate::detector::{DetectConfig, SampleSpec};
use crate::error::AlgebraError;
use crate::field::{parse_rational, render_rational, Rational};
use crate::hough::FamilySpec;
use crate::monomial::TermOrder;
use crate::parse::{parse_polynomial, ParseErrorKind};

pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyFile {
    pub family: FamilySpec,
    pub detect: Option<DetectConfig>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FileErrorKind {
    UnknownKeyword(String),
    MissingArgument(&'static str),
    UnexpectedArgument(String),
    Duplicate(String),
    UnknownIdentifier(String),
    UnknownParameter(String),
    MalformedNumber(String),
    Expression(ParseErrorKind),
    Arity { expected: usize, found: usize },
    BadOrder(String),
    NoParameters,
    NoVariables,
    NoGenerators,
    OutsideDetect(String),
    MissingBox(String),
    Family(AlgebraError),
}

/// An error with 1-based line and column.
#[derive(Clone, Debug, PartialEq)]
pub struct FileError {
    pub line: usize,
    pub column: usize,
    pub kind: FileErrorKind,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            FileErrorKind::UnknownKeyword(k) => write!(f, "unknown keyword `{k}`"),
            FileErrorKind::MissingArgument(what) => write!(f, "missing {what}"),
            FileErrorKind::UnexpectedArgument(a) => write!(f, "unexpected `{a}`"),
            FileErrorKind::Duplicate(what) => write!(f, "duplicate {what}"),
            FileErrorKind::UnknownIdentifier(n) => write!(f, "unknown identifier `{n}`"),
            FileErrorKind::UnknownParameter(n) => write!(f, "`{n}` is not a declared parameter"),
            FileErrorKind::MalformedNumber(n) => write!(f, "malformed number `{n}`"),
            FileErrorKind::Expression(k) => write!(f, "{k}"),
            FileErrorKind::Arity { expected, found } => write!(f, "expected {expected} coordinates, found {found}"),
            FileErrorKind::BadOrder(o) => write!(f, "unsupported term ordering `{o}` (use degrevlex or deglex)"),
            FileErrorKind::NoParameters => write!(f, "no `param` declared"),
            FileErrorKind::NoVariables => write!(f, "no `var` declared"),
            FileErrorKind::NoGenerators => write!(f, "no `gen` given"),
            FileErrorKind::OutsideDetect(k) => write!(f, "`{k}` is only allowed after `detect`"),
            FileErrorKind::MissingBox(p) => write!(f, "no `box` for parameter `{p}`"),
            FileErrorKind::Family(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FileError {}

/// A word of a line with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (bi, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, bi));
                start = None;
            }
            (false, None) => start = Some(bi),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, line.len()));
    }
    out.into_iter().map(|(s, e)| Word { text: &line[s..e], column: line[..s].chars().count() + 1 }).collect()
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

struct Pending {
    text: String,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, kind: FileErrorKind) -> FileError {
    FileError { line, column, kind }
}

fn number(w: &Word<'_>, line: usize) -> Result<Rational, FileError> {
    parse_rational(w.text).ok_or_else(|| err(line, w.column, FileErrorKind::MalformedNumber(w.text.to_string())))
}

/// Parse `key=value` with a comma-separated value list.
fn key_values<'a>(rest: &'a str, rest_col: usize) -> Vec<(&'a str, Vec<Word<'a>>, usize)> {
    let mut out = Vec::new();
    for w in rest.split_whitespace() {
        let offset = rest.find(w).unwrap_or(0);
        let col = rest_col + rest[..offset].chars().count();
        match w.split_once('=') {
            Some((k, v)) => {
                let vcol = col + k.chars().count() + 1;
                let vals = words(v).into_iter().map(|x| Word { text: x.text, column: vcol + x.column - 1 }).collect();
                out.push((k, vals, col));
            }
            None => out.push((w, Vec::new(), col)),
        }
    }
    out
}

/// Parse a family file. CSV paths are recorded, not read.
pub fn parse_family_file(text: &str) -> Result<FamilyFile, FileError> {
    let mut params: Vec<(String, usize, usize)> = Vec::new();
    let mut vars: Vec<(String, usize, usize)> = Vec::new();
    let mut hidden: Vec<(String, usize, usize)> = Vec::new();
    let mut order: Option<TermOrder> = None;
    let mut gens: Vec<Pending> = Vec::new();
    let mut in_detect = false;
    let mut boxes: Vec<(String, Rational, Rational, usize, usize)> = Vec::new();
    let mut resolution: Option<usize> = None;
    let mut points: Vec<(Vec<Rational>, usize, usize)> = Vec::new();
    let mut csv: Vec<String> = Vec::new();
    let mut sample: Option<(SampleSpec, usize, usize)> = None;
    let mut last_line = 1;

    for (li, raw) in text.lines().enumerate() {
        let ln = li + 1;
        last_line = ln;
        let line = strip_comment(raw);
        let ws = words(line);
        let Some(kw) = ws.first().copied() else { continue };
        let args = &ws[1..];
        let detect_only = ["box", "resolution", "point", "csv", "sample"];
        if detect_only.contains(&kw.text) && !in_detect {
            return Err(err(ln, kw.column, FileErrorKind::OutsideDetect(kw.text.to_string())));
        }
        match kw.text {
            "param" | "params" | "var" | "vars" | "aux" => {
                if args.is_empty() {
                    return Err(err(ln, kw.column + kw.text.len(), FileErrorKind::MissingArgument("names")));
                }
                let target = match kw.text {
                    "param" | "params" => &mut params,
                    "var" | "vars" => &mut vars,
                    _ => &mut hidden,
                };
                for a in args {
                    target.push((a.text.to_string(), ln, a.column));
                }
            }
            "order" => {
                let Some(o) = args.first() else {
                    return Err(err(ln, kw.column + 5, FileErrorKind::MissingArgument("ordering name")));
                };
                if order.is_some() {
                    return Err(err(ln, kw.column, FileErrorKind::Duplicate("`order`".into())));
                }
                if let Some(extra) = args.get(1) {
                    return Err(err(ln, extra.column, FileErrorKind::UnexpectedArgument(extra.text.into())));
                }
                match TermOrder::parse(o.text) {
                    Some(t @ (TermOrder::DegLex | TermOrder::DegRevLex)) => order = Some(t),
                    _ => return Err(err(ln, o.column, FileErrorKind::BadOrder(o.text.to_string()))),
                }
            }
            "gen" | "gens" => {
                let kw_end = line.find(kw.text).unwrap_or(0) + kw.text.len();
                let body = &line[kw_end..];
                let mut offset = kw_end;
                let mut any = false;
                for piece in body.split(';') {
                    let trimmed = piece.trim_start();
                    let lead = piece.len() - trimmed.len();
                    if !trimmed.trim().is_empty() {
                        let col = line[..offset + lead].chars().count() + 1;
                        gens.push(Pending { text: trimmed.trim_end().to_string(), line: ln, column: col });
                        any = true;
                    }
                    offset += piece.len() + 1;
                }
                if !any {
                    return Err(err(
                        ln,
                        kw.column + kw.text.len(),
                        FileErrorKind::MissingArgument("generator expression"),
                    ));
                }
            }
            "detect" => {
                if in_detect {
                    return Err(err(ln, kw.column, FileErrorKind::Duplicate("`detect` section".into())));
                }
                if let Some(extra) = args.first() {
                    return Err(err(ln, extra.column, FileErrorKind::UnexpectedArgument(extra.text.into())));
                }
                in_detect = true;
            }
            "box" => {
                if args.len() < 3 {
                    return Err(err(ln, kw.column, FileErrorKind::MissingArgument("`box <param> <lo> <hi>`")));
                }
                if let Some(extra) = args.get(3) {
                    return Err(err(ln, extra.column, FileErrorKind::UnexpectedArgument(extra.text.into())));
                }
                let lo = number(&args[1], ln)?;
                let hi = number(&args[2], ln)?;
                boxes.push((args[0].text.to_string(), lo, hi, ln, args[0].column));
            }
            "resolution" => {
                let Some(r) = args.first() else {
                    return Err(err(ln, kw.column, FileErrorKind::MissingArgument("cells per axis")));
                };
                if resolution.is_some() {
                    return Err(err(ln, kw.column, FileErrorKind::Duplicate("`resolution`".into())));
                }
                let n: usize =
                    r.text.parse().map_err(|_| err(ln, r.column, FileErrorKind::MalformedNumber(r.text.into())))?;
                resolution = Some(n);
            }
            "point" => {
                let coords = args.iter().map(|a| number(a, ln)).collect::<Result<Vec<_>, _>>()?;
                points.push((coords, ln, kw.column));
            }
            "csv" => {
                let Some(p) = args.first() else {
                    return Err(err(ln, kw.column, FileErrorKind::MissingArgument("file name")));
                };
                let start = line[..].find(p.text).unwrap_or(0);
                csv.push(line[start..].trim().to_string());
            }
            "sample" => {
                if sample.is_some() {
                    return Err(err(ln, kw.column, FileErrorKind::Duplicate("`sample`".into())));
                }
                let kw_end = line.find(kw.text).unwrap_or(0) + kw.text.len();
                let rest_col = line[..kw_end].chars().count() + 1;
                let (mut at, mut count, mut seed, mut range) = (None, None, 0u64, None);
                for (k, vals, col) in key_values(&line[kw_end..], rest_col) {
                    let single = |vals: &[Word<'_>]| -> Result<String, FileError> {
                        match vals {
                            [v] => Ok(v.text.to_string()),
                            _ => Err(err(ln, col, FileErrorKind::MissingArgument("one value"))),
                        }
                    };
                    match k {
                        "at" => at = Some(vals.iter().map(|v| number(v, ln)).collect::<Result<Vec<_>, _>>()?),
                        "count" => {
                            let v = single(&vals)?;
                            count =
                                Some(v.parse::<usize>().map_err(|_| err(ln, col, FileErrorKind::MalformedNumber(v)))?);
                        }
                        "seed" => {
                            let v = single(&vals)?;
                            seed = v.parse::<u64>().map_err(|_| err(ln, col, FileErrorKind::MalformedNumber(v)))?;
                        }
                        "range" => {
                            if vals.len() != 2 {
                                return Err(err(ln, col, FileErrorKind::MissingArgument("`range=lo,hi`")));
                            }
                            range = Some((number(&vals[0], ln)?, number(&vals[1], ln)?));
                        }
                        other => return Err(err(ln, col, FileErrorKind::UnexpectedArgument(other.to_string()))),
                    }
                }
                let at = at.ok_or_else(|| err(ln, kw.column, FileErrorKind::MissingArgument("`at=`")))?;
                let count = count.ok_or_else(|| err(ln, kw.column, FileErrorKind::MissingArgument("`count=`")))?;
                let range =
                    range.unwrap_or_else(|| (Rational::from_integer((-4).into()), Rational::from_integer(4.into())));
                sample = Some((SampleSpec { at, count, seed, range }, ln, kw.column));
            }
            other => return Err(err(ln, kw.column, FileErrorKind::UnknownKeyword(other.to_string()))),
        }
    }

    if params.is_empty() {
        return Err(err(last_line, 1, FileErrorKind::NoParameters));
    }
    if vars.is_empty() {
        return Err(err(last_line, 1, FileErrorKind::NoVariables));
    }
    if gens.is_empty() {
        return Err(err(last_line, 1, FileErrorKind::NoGenerators));
    }
    let mut seen: Vec<&str> = Vec::new();
    for (n, l, c) in params.iter().chain(&vars).chain(&hidden) {
        if seen.contains(&n.as_str()) {
            return Err(err(*l, *c, FileErrorKind::Duplicate(format!("name `{n}`"))));
        }
        if !n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            || !n.chars().all(|c| c.is_alphanumeric() || "_[]".contains(c))
        {
            return Err(err(*l, *c, FileErrorKind::UnexpectedArgument(n.clone())));
        }
        seen.push(n);
    }
    let names = |v: &[(String, usize, usize)]| v.iter().map(|(n, _, _)| n.clone()).collect::<Vec<_>>();
    let (pn, vn, hn) = (names(&params), names(&vars), names(&hidden));
    let ring = FamilySpec::ring_for(&pn, &vn, &hn).map_err(|e| err(1, 1, FileErrorKind::Family(e)))?;
    let mut polys = Vec::new();
    for g in &gens {
        let p = parse_polynomial(&g.text, &ring).map_err(|e| {
            let column = g.column + e.column - 1;
            match e.kind {
                ParseErrorKind::UnknownIdentifier(n) => err(g.line, column, FileErrorKind::UnknownIdentifier(n)),
                ParseErrorKind::MalformedNumber(n) => err(g.line, column, FileErrorKind::MalformedNumber(n)),
                k => err(g.line, column, FileErrorKind::Expression(k)),
            }
        })?;
        polys.push(p);
    }
    let first = &gens[0];
    let family = FamilySpec::new(pn.clone(), vn.clone(), hn, order.unwrap_or(TermOrder::DegRevLex), polys)
        .map_err(|e| err(first.line, first.column, FileErrorKind::Family(e)))?;

    let detect = if in_detect {
        let mut bounds = Vec::new();
        for (b, _, _, l, c) in &boxes {
            if !pn.contains(b) {
                return Err(err(*l, *c, FileErrorKind::UnknownParameter(b.clone())));
            }
            if boxes.iter().filter(|x| &x.0 == b).count() > 1 {
                return Err(err(*l, *c, FileErrorKind::Duplicate(format!("box for `{b}`"))));
            }
        }
        for p in &pn {
            match boxes.iter().find(|b| &b.0 == p) {
                Some((_, lo, hi, _, _)) => bounds.push((lo.clone(), hi.clone())),
                None => return Err(err(last_line, 1, FileErrorKind::MissingBox(p.clone()))),
            }
        }
        for (pt, l, c) in &points {
            if pt.len() != vn.len() {
                return Err(err(*l, *c, FileErrorKind::Arity { expected: vn.len(), found: pt.len() }));
            }
        }
        if let Some((s, l, c)) = &sample {
            if s.at.len() != pn.len() {
                return Err(err(*l, *c, FileErrorKind::Arity { expected: pn.len(), found: s.at.len() }));
            }
        }
        Some(DetectConfig {
            bounds,
            resolution: resolution.unwrap_or(DEFAULT_RESOLUTION),
            points: points.into_iter().map(|(p, _, _)| p).collect(),
            csv,
            sample: sample.map(|(s, _, _)| s),
        })
    } else {
        None
    };
    Ok(FamilyFile { family, detect })
}

/// Points from CSV text: one point per record, exact numbers. `#` starts a
/// comment line; a first record that does not parse as numbers is a header.
pub fn parse_points_csv(text: &str, arity: usize) -> Result<Vec<Vec<Rational>>, FileError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (ri, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            err(line, 1, FileErrorKind::UnexpectedArgument(e.to_string()))
        })?;
        let ln = rec.position().map_or(ri + 1, |p| p.line() as usize);
        let fields: Vec<&str> = rec.iter().filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let parsed: Option<Vec<Rational>> = fields.iter().map(|f| parse_rational(f)).collect();
        match parsed {
            Some(p) if p.len() == arity => out.push(p),
            Some(p) => return Err(err(ln, 1, FileErrorKind::Arity { expected: arity, found: p.len() })),
            None if ri == 0 => continue,
            None => {
                let bad = fields.iter().find(|f| parse_rational(f).is_none()).unwrap_or(&"");
                return Err(err(ln, 1, FileErrorKind::MalformedNumber(bad.to_string())));
            }
        }
    }
    Ok(out)
}

fn join(v: &[String]) -> String {
    v.join(" ")
}

/// Canonical text that parses back to the same file.
pub fn render_family_file(file: &FamilyFile) -> String {
    let fam = &file.family;
    let mut s = String::new();
    s.push_str(&format!("param {}\n", join(fam.params())));
    s.push_str(&format!("var {}\n", join(fam.vars())));
    if !fam.hidden().is_empty() {
        s.push_str(&format!("aux {}\n", join(fam.hidden())));
    }
    s.push_str(&format!("order {}\n", fam.order().name()));
    for g in fam.generators() {
        s.push_str(&format!("gen {g}\n"));
    }
    if let Some(d) = &file.detect {
        s.push_str("\ndetect\n");
        for (p, (lo, hi)) in fam.params().iter().zip(&d.bounds) {
            s.push_str(&format!("box {p} {} {}\n", render_rational(lo), render_rational(hi)));
        }
        s.push_str(&format!("resolution {}\n", d.resolution));
        for p in &d.points {
            let c: Vec<String> = p.iter().map(render_rational).collect();
            s.push_str(&format!("point {}\n", c.join(" ")));
        }
        for c in &d.csv {
            s.push_str(&format!("csv {c}\n"));
        }
        if let Some(sm) = &d.sample {
            let at: Vec<String> = sm.at.iter().map(render_rational).collect();
            s.push_str(&format!(
                "sample at={} count={} seed={} range={},{}\n",
                at.join(","),
                sm.count,
                sm.seed,
                render_rational(&sm.range.0),
                render_rational(&sm.range.1)
            ));
        }
    }
    s
}

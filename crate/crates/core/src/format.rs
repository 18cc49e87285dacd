//! Line-oriented input files for fans and orbifold point data.
//!
//! ```text
//! fan x1
//! dim 3
//! k 3
//! ray [1, 3, -1]
//! cone C1 [2, 3, 4]
//! ```
//!
//! ```text
//! orbifold p2-z3
//! m 2
//! d 2
//! einstein true
//! s positive
//! point p1
//!   kind ricci-flat
//!   order 3
//!   weights [1, 2]
//!   phi [1, 0]
//! ```
//!
//! `#` starts a comment. Cone indices are 1-based. Numbers are integers or
//! `p/q` rationals; decimals are rejected. Every problem is reported with
//! its line and field, and parsing continues past the first one.

use std::path::Path;

use serde::Serialize;

use crate::balancing::{LaplacianData, PointKind, ScalarCurvature, SingularPointRecord, Sign};
use crate::error::{Error, ParseError, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::spectral::GroupPresentation;
use crate::toric::{CyclicFactor, Fan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanFile {
    pub name: Option<String>,
    pub dim: usize,
    pub k: Option<u64>,
    pub rays: Vec<Vec<i64>>,
    pub ray_labels: Vec<Option<String>>,
    /// 0-based ray indices.
    pub cones: Vec<Vec<usize>>,
    pub cone_labels: Vec<String>,
}

impl FanFile {
    pub fn fan(&self) -> Fan {
        Fan::new(self.dim, self.rays.clone(), self.cones.clone())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match &self.name {
            Some(n) => out.push_str(&format!("fan {n}\n")),
            None => out.push_str("fan\n"),
        }
        out.push_str(&format!("dim {}\n", self.dim));
        if let Some(k) = self.k {
            out.push_str(&format!("k {k}\n"));
        }
        for (ray, label) in self.rays.iter().zip(&self.ray_labels) {
            match label {
                Some(l) => out.push_str(&format!("ray {l} {}\n", int_list(ray))),
                None => out.push_str(&format!("ray {}\n", int_list(ray))),
            }
        }
        for (cone, label) in self.cones.iter().zip(&self.cone_labels) {
            let one_based: Vec<i64> = cone.iter().map(|&i| i as i64 + 1).collect();
            out.push_str(&format!("cone {label} {}\n", int_list(&one_based)));
        }
        out
    }
}

/// One singular point: balancing data plus, optionally, its diagonal action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldPoint {
    pub record: SingularPointRecord,
    pub weights: Option<Vec<u64>>,
}

impl OrbifoldPoint {
    pub fn group(&self, m: usize) -> Option<Result<GroupPresentation>> {
        let weights = self.weights.clone()?;
        Some(GroupPresentation::new(m, vec![CyclicFactor { order: self.record.group_order, weights }]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldFile {
    pub name: Option<String>,
    pub m: u32,
    pub d: usize,
    pub einstein: bool,
    pub s: ScalarCurvature,
    pub points: Vec<OrbifoldPoint>,
}

impl OrbifoldFile {
    pub fn records(&self) -> Vec<SingularPointRecord> {
        self.points.iter().map(|p| p.record.clone()).collect()
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match &self.name {
            Some(n) => out.push_str(&format!("orbifold {n}\n")),
            None => out.push_str("orbifold\n"),
        }
        out.push_str(&format!("m {}\nd {}\neinstein {}\n", self.m, self.d, self.einstein));
        match &self.s {
            ScalarCurvature::Positive => out.push_str("s positive\n"),
            ScalarCurvature::Exact(q) => out.push_str(&format!("s {}\n", format_rational(q))),
        }
        for p in &self.points {
            let r = &p.record;
            out.push_str(&format!("point {}\n", r.label));
            let kind = match r.kind {
                PointKind::RicciFlat => "ricci-flat",
                PointKind::ScalarFlat => "scalar-flat",
            };
            out.push_str(&format!("  kind {kind}\n  order {}\n", r.group_order));
            if let Some(w) = &p.weights {
                let w: Vec<i64> = w.iter().map(|&x| x as i64).collect();
                out.push_str(&format!("  weights {}\n", int_list(&w)));
            }
            out.push_str(&format!("  phi {}\n", rational_list(&r.phi)));
            if let LaplacianData::Explicit(l) = &r.laplacian {
                out.push_str(&format!("  laplacian {}\n", rational_list(l)));
            }
            if let Some(sign) = r.e_sign {
                out.push_str(match sign {
                    Sign::Plus => "  e-sign +\n",
                    Sign::Minus => "  e-sign -\n",
                });
            }
            if let Some(e) = &r.e_magnitude {
                out.push_str(&format!("  e-mag {}\n", format_rational(e)));
            }
            if let Some(c) = &r.c_gamma {
                out.push_str(&format!("  c-gamma {}\n", format_rational(c)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InputFile {
    Fan(FanFile),
    Orbifold(OrbifoldFile),
}

impl InputFile {
    pub fn name(&self) -> Option<&str> {
        match self {
            Self::Fan(f) => f.name.as_deref(),
            Self::Orbifold(o) => o.name.as_deref(),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Self::Fan(f) => f.serialize(),
            Self::Orbifold(o) => o.serialize(),
        }
    }
}

fn int_list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn rational_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                return None;
            }
            let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            Some(Line { number: i + 1, key, rest: rest.trim() })
        })
        .collect()
}

#[derive(Default)]
struct Errors(Vec<ParseError>);

impl Errors {
    fn push(&mut self, line: usize, field: &str, message: impl Into<String>) {
        self.0.push(ParseError { line, field: Some(field.to_string()), message: message.into() });
    }

    fn general(&mut self, line: usize, message: impl Into<String>) {
        self.0.push(ParseError { line, field: None, message: message.into() });
    }
}

/// Splits `label [a, b]` or `[a, b]` into the optional label and the items.
fn labelled_list(rest: &str) -> std::result::Result<(Option<&str>, Vec<&str>), String> {
    let open = rest.find('[').ok_or("expected a bracketed list")?;
    let close = rest.rfind(']').ok_or("missing closing `]`")?;
    if close < open || !rest[close + 1..].trim().is_empty() {
        return Err("unexpected text after the list".into());
    }
    let label = rest[..open].trim();
    let label = (!label.is_empty()).then_some(label);
    if label.is_some_and(|l| l.contains(char::is_whitespace)) {
        return Err("labels cannot contain spaces".into());
    }
    let items: Vec<&str> = rest[open + 1..close]
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    Ok((label, items))
}

fn int_items(items: &[&str]) -> std::result::Result<Vec<i64>, String> {
    items
        .iter()
        .map(|s| s.parse::<i64>().map_err(|_| format!("`{s}` is not an integer")))
        .collect()
}

fn rational_items(items: &[&str]) -> std::result::Result<Vec<Rational>, String> {
    items
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| format!("`{s}` is not an exact rational")))
        .collect()
}

fn header_name(rest: &str) -> Option<String> {
    (!rest.is_empty()).then(|| rest.to_string())
}

fn set_once<T>(slot: &mut Option<(T, usize)>, value: T, line: usize, field: &str, errors: &mut Errors) {
    if let Some((_, first)) = slot {
        errors.push(line, field, format!("repeated (first given on line {first})"));
    } else {
        *slot = Some((value, line));
    }
}

/// Parses either file type, chosen by the header line.
pub fn parse_input_str(text: &str) -> Result<InputFile> {
    let ls = lines(text);
    match ls.first().map(|l| l.key) {
        Some("fan") => parse_fan_str(text).map(InputFile::Fan),
        Some("orbifold") => parse_orbifold_str(text).map(InputFile::Orbifold),
        Some(_) => Err(Error::Parse(vec![ParseError {
            line: ls[0].number,
            field: None,
            message: "first line must be `fan` or `orbifold`".into(),
        }])),
        None => Err(Error::Parse(vec![ParseError { line: 0, field: None, message: "file is empty".into() }])),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_input(path: &Path) -> Result<InputFile> {
    parse_input_str(&read(path)?)
}

pub fn parse_fan(path: &Path) -> Result<FanFile> {
    parse_fan_str(&read(path)?)
}

pub fn parse_orbifold(path: &Path) -> Result<OrbifoldFile> {
    parse_orbifold_str(&read(path)?)
}

pub fn parse_fan_str(text: &str) -> Result<FanFile> {
    let ls = lines(text);
    let mut errors = Errors::default();
    let Some(first) = ls.first() else {
        return Err(Error::Parse(vec![ParseError { line: 0, field: None, message: "file is empty".into() }]));
    };
    if first.key != "fan" {
        errors.general(first.number, "first line must be `fan [name]`");
    }
    let name = if first.key == "fan" { header_name(first.rest) } else { None };
    let mut dim: Option<(usize, usize)> = None;
    let mut k: Option<(u64, usize)> = None;
    let mut rays: Vec<(Vec<i64>, Option<String>, usize)> = Vec::new();
    let mut cones: Vec<(Vec<i64>, String, usize)> = Vec::new();
    let mut ray_lines = 0usize;
    let mut cone_lines = 0usize;
    let start = usize::from(first.key == "fan");
    for line in &ls[start..] {
        let n = line.number;
        match line.key {
            "dim" => match line.rest.parse::<usize>() {
                Ok(d) if d >= 1 => set_once(&mut dim, d, n, "dim", &mut errors),
                _ => errors.push(n, "dim", format!("`{}` is not a positive integer", line.rest)),
            },
            "k" => match line.rest.parse::<u64>() {
                Ok(v) if v >= 1 => set_once(&mut k, v, n, "k", &mut errors),
                _ => errors.push(n, "k", format!("`{}` is not a positive integer", line.rest)),
            },
            "ray" => {
                ray_lines += 1;
                let field = format!("ray {ray_lines}");
                match labelled_list(line.rest).and_then(|(l, items)| Ok((l, int_items(&items)?))) {
                    Ok((label, v)) => rays.push((v, label.map(str::to_string), n)),
                    Err(msg) => errors.push(n, &field, msg),
                }
            }
            "cone" => {
                cone_lines += 1;
                let default = format!("C{cone_lines}");
                match labelled_list(line.rest).and_then(|(l, items)| Ok((l, int_items(&items)?))) {
                    Ok((label, v)) => cones.push((v, label.map_or(default, str::to_string), n)),
                    Err(msg) => errors.push(n, &format!("cone {default}"), msg),
                }
            }
            "fan" | "orbifold" => errors.general(n, "a second header line is not allowed"),
            other => errors.push(n, other, "unknown key"),
        }
    }
    let last_line = ls.last().map_or(0, |l| l.number);
    let dim = match dim {
        Some((d, _)) => d,
        None => {
            errors.push(last_line, "dim", "missing");
            0
        }
    };
    if rays.is_empty() {
        errors.push(last_line, "ray", "no rays given");
    }
    if cones.is_empty() {
        errors.push(last_line, "cone", "no cones given");
    }
    for (i, (ray, _, n)) in rays.iter().enumerate() {
        if dim > 0 && ray.len() != dim {
            errors.push(*n, &format!("ray {}", i + 1), format!("has {} coordinates, dim is {dim}", ray.len()));
        }
    }
    let mut zero_based = Vec::with_capacity(cones.len());
    for (cone, label, n) in &cones {
        let mut idx = Vec::with_capacity(cone.len());
        for &i in cone {
            if i < 1 || i as usize > ray_lines {
                errors.push(*n, &format!("cone {label}"), format!("ray index {i} is outside 1..={ray_lines}"));
            } else {
                idx.push(i as usize - 1);
            }
        }
        if cone.is_empty() {
            errors.push(*n, &format!("cone {label}"), "empty cone");
        }
        zero_based.push(idx);
    }
    if !errors.0.is_empty() {
        return Err(Error::Parse(errors.0));
    }
    Ok(FanFile {
        name,
        dim,
        k: k.map(|(v, _)| v),
        ray_labels: rays.iter().map(|(_, l, _)| l.clone()).collect(),
        rays: rays.into_iter().map(|(v, _, _)| v).collect(),
        cone_labels: cones.iter().map(|(_, l, _)| l.clone()).collect(),
        cones: zero_based,
    })
}

#[derive(Default)]
struct PointDraft {
    label: String,
    line: usize,
    kind: Option<(PointKind, usize)>,
    order: Option<(u64, usize)>,
    weights: Option<(Vec<u64>, usize)>,
    phi: Option<(Vec<Rational>, usize)>,
    laplacian: Option<(Vec<Rational>, usize)>,
    e_sign: Option<(Sign, usize)>,
    e_mag: Option<(Rational, usize)>,
    c_gamma: Option<(Rational, usize)>,
}

fn positive_rational(rest: &str) -> std::result::Result<Rational, String> {
    match parse_rational(rest) {
        Some(q) if q > Rational::from_integer(0.into()) => Ok(q),
        Some(_) => Err("must be positive".into()),
        None => Err(format!("`{rest}` is not an exact rational")),
    }
}

fn bare_list(rest: &str) -> std::result::Result<Vec<&str>, String> {
    match labelled_list(rest)? {
        (None, items) => Ok(items),
        (Some(_), _) => Err("expected only a bracketed list".into()),
    }
}

fn point_field(draft: &mut PointDraft, line: &Line<'_>, errors: &mut Errors) {
    let n = line.number;
    let field = format!("point {} {}", draft.label, line.key);
    match line.key {
        "kind" => match line.rest {
            "ricci-flat" => set_once(&mut draft.kind, PointKind::RicciFlat, n, &field, errors),
            "scalar-flat" => set_once(&mut draft.kind, PointKind::ScalarFlat, n, &field, errors),
            other => errors.push(n, &field, format!("`{other}` is not ricci-flat or scalar-flat")),
        },
        "order" => match line.rest.parse::<u64>() {
            Ok(v) if v >= 1 => set_once(&mut draft.order, v, n, &field, errors),
            _ => errors.push(n, &field, format!("`{}` is not a positive integer", line.rest)),
        },
        "weights" => match bare_list(line.rest).and_then(|items| int_items(&items)) {
            Ok(v) if v.iter().all(|&x| x >= 0) => {
                set_once(&mut draft.weights, v.into_iter().map(|x| x as u64).collect(), n, &field, errors)
            }
            Ok(_) => errors.push(n, &field, "weights must be nonnegative"),
            Err(msg) => errors.push(n, &field, msg),
        },
        "phi" => match bare_list(line.rest).and_then(|items| rational_items(&items)) {
            Ok(v) => set_once(&mut draft.phi, v, n, &field, errors),
            Err(msg) => errors.push(n, &field, msg),
        },
        "laplacian" => match bare_list(line.rest).and_then(|items| rational_items(&items)) {
            Ok(v) => set_once(&mut draft.laplacian, v, n, &field, errors),
            Err(msg) => errors.push(n, &field, msg),
        },
        "e-sign" => match line.rest {
            "+" => set_once(&mut draft.e_sign, Sign::Plus, n, &field, errors),
            "-" => set_once(&mut draft.e_sign, Sign::Minus, n, &field, errors),
            other => errors.push(n, &field, format!("`{other}` is not + or -")),
        },
        "e-mag" => match positive_rational(line.rest) {
            Ok(q) => set_once(&mut draft.e_mag, q, n, &field, errors),
            Err(msg) => errors.push(n, &field, msg),
        },
        "c-gamma" => match positive_rational(line.rest) {
            Ok(q) => set_once(&mut draft.c_gamma, q, n, &field, errors),
            Err(msg) => errors.push(n, &field, msg),
        },
        other => errors.push(n, other, format!("unknown key in point {}", draft.label)),
    }
}

pub fn parse_orbifold_str(text: &str) -> Result<OrbifoldFile> {
    let ls = lines(text);
    let mut errors = Errors::default();
    let Some(first) = ls.first() else {
        return Err(Error::Parse(vec![ParseError { line: 0, field: None, message: "file is empty".into() }]));
    };
    if first.key != "orbifold" {
        errors.general(first.number, "first line must be `orbifold [name]`");
    }
    let name = if first.key == "orbifold" { header_name(first.rest) } else { None };
    let mut m: Option<(u32, usize)> = None;
    let mut d: Option<(usize, usize)> = None;
    let mut einstein: Option<(bool, usize)> = None;
    let mut s: Option<(ScalarCurvature, usize)> = None;
    let mut drafts: Vec<PointDraft> = Vec::new();
    let start = usize::from(first.key == "orbifold");
    for line in &ls[start..] {
        let n = line.number;
        match line.key {
            "point" => {
                if line.rest.is_empty() || line.rest.contains(char::is_whitespace) {
                    errors.push(n, "point", "expected a single label");
                }
                if drafts.iter().any(|p| p.label == line.rest) {
                    errors.push(n, "point", format!("label `{}` used twice", line.rest));
                }
                drafts.push(PointDraft { label: line.rest.to_string(), line: n, ..PointDraft::default() });
            }
            "m" if drafts.is_empty() => match line.rest.parse::<u32>() {
                Ok(v) if v >= 2 => set_once(&mut m, v, n, "m", &mut errors),
                _ => errors.push(n, "m", format!("`{}` is not an integer ≥ 2", line.rest)),
            },
            "d" if drafts.is_empty() => match line.rest.parse::<usize>() {
                Ok(v) if v >= 1 => set_once(&mut d, v, n, "d", &mut errors),
                _ => errors.push(n, "d", format!("`{}` is not a positive integer", line.rest)),
            },
            "einstein" if drafts.is_empty() => match line.rest {
                "true" => set_once(&mut einstein, true, n, "einstein", &mut errors),
                "false" => set_once(&mut einstein, false, n, "einstein", &mut errors),
                other => errors.push(n, "einstein", format!("`{other}` is not true or false")),
            },
            "s" if drafts.is_empty() => {
                if line.rest == "positive" {
                    set_once(&mut s, ScalarCurvature::Positive, n, "s", &mut errors);
                } else {
                    match positive_rational(line.rest) {
                        Ok(q) => set_once(&mut s, ScalarCurvature::Exact(q), n, "s", &mut errors),
                        Err(msg) => errors.push(n, "s", msg),
                    }
                }
            }
            "fan" | "orbifold" => errors.general(n, "a second header line is not allowed"),
            _ => match drafts.last_mut() {
                Some(draft) => point_field(draft, line, &mut errors),
                None => errors.push(n, line.key, "unknown key"),
            },
        }
    }
    let last_line = ls.last().map_or(0, |l| l.number);
    let m_val = match m {
        Some((v, _)) => v,
        None => {
            errors.push(last_line, "m", "missing");
            0
        }
    };
    let einstein = einstein.is_some_and(|(v, _)| v);
    if drafts.is_empty() {
        errors.push(last_line, "point", "no points given");
    }
    let d_val = d.map(|(v, _)| v).or_else(|| drafts.iter().find_map(|p| p.phi.as_ref().map(|(v, _)| v.len())));
    let mut points = Vec::with_capacity(drafts.len());
    for draft in drafts {
        let label = draft.label.clone();
        let f = |key: &str| format!("point {label} {key}");
        let mut ok = true;
        let mut require = |present: bool, key: &str, errors: &mut Errors| {
            if !present {
                errors.push(draft.line, &f(key), "missing");
                ok = false;
            }
        };
        require(draft.kind.is_some(), "kind", &mut errors);
        require(draft.order.is_some(), "order", &mut errors);
        require(draft.phi.is_some(), "phi", &mut errors);
        if let (Some((phi, n)), Some(d)) = (&draft.phi, d_val) {
            if phi.len() != d {
                errors.push(*n, &f("phi"), format!("has {} entries, d is {d}", phi.len()));
                ok = false;
            }
        }
        if let Some((lap, n)) = &draft.laplacian {
            let expected = draft.phi.as_ref().map(|(p, _)| p.len());
            if expected.is_some_and(|e| e != lap.len()) {
                errors.push(*n, &f("laplacian"), "length differs from phi");
                ok = false;
            }
        } else if !einstein && draft.kind.as_ref().is_some_and(|(k, _)| *k == PointKind::RicciFlat) {
            errors.push(draft.line, &f("laplacian"), "missing (required unless `einstein true`)");
            ok = false;
        }
        if let Some((w, n)) = &draft.weights {
            if m_val > 0 && w.len() != m_val as usize {
                errors.push(*n, &f("weights"), format!("has {} entries, m is {m_val}", w.len()));
                ok = false;
            }
        }
        if draft.kind.as_ref().is_some_and(|(k, _)| *k == PointKind::ScalarFlat) && draft.e_sign.is_none() {
            errors.push(draft.line, &f("e-sign"), "missing (required for scalar-flat points)");
            ok = false;
        }
        if !ok {
            continue;
        }
        let kind = draft.kind.expect("checked").0;
        let order = draft.order.expect("checked").0;
        let record = SingularPointRecord {
            label: draft.label,
            kind,
            group_order: order,
            phi: draft.phi.expect("checked").0,
            laplacian: draft.laplacian.map_or(LaplacianData::Einstein, |(l, _)| LaplacianData::Explicit(l)),
            e_sign: draft.e_sign.map(|(v, _)| v),
            e_magnitude: draft.e_mag.map(|(v, _)| v),
            c_gamma: draft.c_gamma.map(|(v, _)| v),
        };
        points.push(OrbifoldPoint { record, weights: draft.weights.map(|(v, _)| v) });
    }
    if !errors.0.is_empty() {
        return Err(Error::Parse(errors.0));
    }
    Ok(OrbifoldFile {
        name,
        m: m_val,
        d: d_val.unwrap_or(0),
        einstein,
        s: s.map_or(ScalarCurvature::Positive, |(v, _)| v),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_FAN: &str = "fan p2\ndim 2\nk 1\nray [1, 0]\nray [0, 1]\nray [-1, -1]\ncone [1, 2]\ncone [2, 3]\ncone [3, 1]\n";

    #[test]
    fn fan_round_trip() {
        let f = parse_fan_str(SMALL_FAN).unwrap();
        assert_eq!(f.cones[2], vec![2, 0]);
        assert_eq!(f.cone_labels[0], "C1");
        let again = parse_fan_str(&f.serialize()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn fan_errors_are_located() {
        let text = "fan bad\ndim 2\nray [1, 0]\nray [0, 1, 5]\nray [x, 1]\ncone C1 [1, 4]\nbogus 3\n";
        let Err(Error::Parse(errs)) = parse_fan_str(text) else { panic!("expected errors") };
        let at = |line: usize| errs.iter().find(|e| e.line == line).unwrap_or_else(|| panic!("no error on line {line}"));
        assert_eq!(at(4).field.as_deref(), Some("ray 2"));
        assert!(at(5).message.contains("`x`"));
        assert_eq!(at(6).field.as_deref(), Some("cone C1"));
        assert_eq!(at(7).field.as_deref(), Some("bogus"));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(parse_fan_str(""), Err(Error::Parse(_))));
        assert!(matches!(parse_input_str("# only a comment\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn orbifold_round_trip() {
        let text = "orbifold t\nm 2\nd 1\neinstein true\ns 3/2\npoint q1\n  kind scalar-flat\n  order 2\n  weights [1, 1]\n  phi [1/2]\n  e-sign -\n  e-mag 2\npoint p1\n  kind ricci-flat\n  order 3\n  phi [-1]\n  laplacian [3]\n  c-gamma 1\n";
        let o = parse_orbifold_str(text).unwrap();
        assert_eq!(o.points.len(), 2);
        assert_eq!(o.points[0].record.e_sign, Some(Sign::Minus));
        assert_eq!(o.s, ScalarCurvature::Exact(crate::linalg::ratio(3, 2)));
        assert_eq!(parse_orbifold_str(&o.serialize()).unwrap(), o);
        assert!(matches!(parse_input_str(text), Ok(InputFile::Orbifold(_))));
    }

    #[test]
    fn orbifold_errors_are_located() {
        let text = "orbifold t\nm 2\nd 2\npoint q1\n  kind scalar-flat\n  order 2\n  phi [1, 0.5]\npoint p1\n  kind ricci-flat\n  order 2\n  phi [1, 0]\n";
        let Err(Error::Parse(errs)) = parse_orbifold_str(text) else { panic!("expected errors") };
        assert!(errs.iter().any(|e| e.line == 7 && e.field.as_deref() == Some("point q1 phi")));
        assert!(errs.iter().any(|e| e.field.as_deref() == Some("point q1 e-sign")));
        assert!(errs.iter().any(|e| e.field.as_deref() == Some("point p1 laplacian")));
    }
}

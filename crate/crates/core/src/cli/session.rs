//! The cycle-definition file format.
//!
//! ```text
//! params: a1, a2
//! modulus: 2
//! [surface Sigma]
//! params: u, v
//! x  = u
//! t1 = v
//! t2 = ((1 - a1*u)*(1 - a2*u))/(1 - (a1 + a2)*u)
//! t3 = (u + v + 2)/(u + v + 1)
//! [cycle B]
//! D30Sigma - D3infSigma
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arith::{Poly, RatFunc, Symbol};
use crate::cycles::{
    boundary_surface_with, surface_faces_with, Cycle, CycleError, ParamCurve, ParamSurface, UserFace,
};
use crate::text::parse_expr;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

fn perr<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

#[derive(Clone, Debug)]
pub enum Item {
    Curve(ParamCurve),
    Surface(ParamSurface),
    /// Unresolved `(coefficient, name)` terms.
    Cycle(Vec<(i64, String)>),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Curve(_) => "curve",
            Item::Surface(_) => "surface",
            Item::Cycle(_) => "cycle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    pub params: Vec<Symbol>,
    pub modulus: u32,
    pub items: BTreeMap<String, Item>,
    /// User parametrizations of faces, keyed by surface name.
    pub faces: Vec<(String, UserFace)>,
}

/// A `key: value` or `key = value` line.
#[derive(Clone, Debug)]
struct Entry {
    key: String,
    assign: bool,
    value: String,
    line: usize,
    /// Column of the first character of `value`.
    col: usize,
}

struct Section {
    kind: String,
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn split_line(raw: &str, line: usize) -> Result<Option<Entry>, ParseError> {
    let text = raw.split('#').next().unwrap_or("");
    if text.trim().is_empty() {
        return Ok(None);
    }
    let pos = text.find([':', '=']);
    let Some(pos) = pos else {
        let col = text.len() - text.trim_start().len() + 1;
        return Ok(Some(Entry { key: String::new(), assign: false, value: text.trim().to_string(), line, col }));
    };
    let key = text[..pos].trim().to_string();
    if key.is_empty() {
        return perr(line, pos + 1, "missing key");
    }
    let rest = &text[pos + 1..];
    let lead = rest.len() - rest.trim_start().len();
    let col = text[..pos + 1 + lead].chars().count() + 1;
    Ok(Some(Entry { key, assign: &text[pos..pos + 1] == "=", value: rest.trim().to_string(), line, col }))
}

fn parse_list(e: &Entry) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    for part in e.value.split(',') {
        let name = part.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return perr(e.line, e.col, format!("bad identifier list '{}'", e.value));
        }
        if name.starts_with(|c: char| c.is_ascii_digit()) {
            return perr(e.line, e.col, format!("identifier '{name}' starts with a digit"));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn parse_modulus(e: &Entry) -> Result<u32, ParseError> {
    match e.value.parse::<u32>() {
        Ok(m) if m >= 2 => Ok(m),
        Ok(m) => perr(e.line, e.col, format!("modulus {m} < 2")),
        Err(_) => perr(e.line, e.col, format!("bad modulus '{}'", e.value)),
    }
}

fn expr(e: &Entry, vars: &[Symbol], params: &[Symbol]) -> Result<RatFunc, ParseError> {
    let resolve = |name: &str| {
        vars.iter().chain(params.iter()).find(|s| s.name() == name).cloned()
    };
    parse_expr(&e.value, &resolve).map_err(|err| ParseError { line: e.line, col: e.col + err.col - 1, message: err.message })
}

type Headers = (Option<Vec<Symbol>>, Option<u32>);

fn scan(text: &str) -> Result<(Headers, Vec<Section>), ParseError> {
    let mut params: Option<Vec<Symbol>> = None;
    let mut modulus: Option<u32> = None;
    let mut sections: Vec<Section> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.split('#').next().unwrap_or("").trim();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return perr(line, raw.find('[').unwrap_or(0) + 1, "unterminated section header");
            };
            let mut parts = inner.split_whitespace();
            let (Some(kind), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
                return perr(line, 1, "section header must be [kind NAME]");
            };
            if !["curve", "surface", "cycle", "face"].contains(&kind) {
                return perr(line, 2, format!("unknown section kind '{kind}'"));
            }
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return perr(line, 2 + kind.len(), format!("bad name '{name}'"));
            }
            sections.push(Section { kind: kind.into(), name: name.into(), line, entries: Vec::new() });
            continue;
        }
        let Some(e) = split_line(raw, line)? else { continue };
        match sections.last_mut() {
            Some(s) => s.entries.push(e),
            None => match (e.key.as_str(), e.assign) {
                ("params", false) => {
                    if params.is_some() {
                        return perr(line, 1, "duplicate params header");
                    }
                    params = Some(parse_list(&e)?.iter().map(|n| Symbol::param(n)).collect());
                }
                ("modulus", false) => {
                    if modulus.is_some() {
                        return perr(line, 1, "duplicate modulus header");
                    }
                    modulus = Some(parse_modulus(&e)?);
                }
                _ => return perr(line, 1, format!("unexpected '{}' outside a section", e.key)),
            },
        }
    }
    Ok(((params, modulus), sections))
}

/// Parses a whole file.
pub fn parse_file(text: &str) -> Result<Session, ParseError> {
    let ((params, modulus), sections) = scan(text)?;
    let params = params.unwrap_or_default();
    let modulus = modulus.unwrap_or(2);
    let mut session = Session { params, modulus, items: BTreeMap::new(), faces: Vec::new() };
    let mut cycle_lines = Vec::new();
    for s in sections {
        if s.kind == "face" {
            let face = build_face(&session, &s)?;
            session.faces.push((s.name.clone(), face));
            continue;
        }
        if session.items.contains_key(&s.name) {
            return perr(s.line, 1, format!("duplicate name '{}'", s.name));
        }
        let item = match s.kind.as_str() {
            "curve" => Item::Curve(build_curve(&session, &s)?),
            "surface" => Item::Surface(build_surface(&session, &s)?),
            _ => {
                cycle_lines.push((s.name.clone(), s.line));
                Item::Cycle(build_cycle(&s)?)
            }
        };
        session.items.insert(s.name.clone(), item);
    }
    for (name, line) in cycle_lines {
        if let Some(Item::Cycle(terms)) = session.items.get(&name) {
            for (_, t) in terms {
                if session.lookup(t).is_none() {
                    return perr(line, 1, format!("cycle '{name}' refers to unknown name '{t}'"));
                }
            }
        }
    }
    Ok(session)
}

/// Coordinate lines `x = ...`, `t1 = ...`, ... of a section.
fn coordinates<'a>(s: &'a Section) -> Result<(&'a Entry, Vec<&'a Entry>), ParseError> {
    let mut x = None;
    let mut ts: BTreeMap<usize, &Entry> = BTreeMap::new();
    for e in s.entries.iter().filter(|e| e.assign) {
        if e.key == "x" {
            if x.replace(e).is_some() {
                return perr(e.line, 1, "duplicate x");
            }
        } else if let Some(k) = e.key.strip_prefix('t').and_then(|d| d.parse::<usize>().ok()) {
            if k == 0 || ts.insert(k, e).is_some() {
                return perr(e.line, 1, format!("bad or duplicate coordinate {}", e.key));
            }
        } else if !["u", "v"].contains(&e.key.as_str()) {
            return perr(e.line, 1, format!("unknown coordinate '{}'", e.key));
        }
    }
    let Some(x) = x else {
        return perr(s.line, 1, format!("{} {} has no x coordinate", s.kind, s.name));
    };
    if ts.is_empty() || ts.keys().last() != Some(&ts.len()) {
        return perr(s.line, 1, format!("{} {} must define t1, ..., tn without gaps", s.kind, s.name));
    }
    Ok((x, ts.into_values().collect()))
}

fn section_modulus(session: &Session, s: &Section) -> Result<u32, ParseError> {
    match s.entries.iter().find(|e| !e.assign && e.key == "modulus") {
        Some(e) => parse_modulus(e),
        None => Ok(session.modulus),
    }
}

fn check_keys(s: &Section, allowed: &[&str]) -> Result<(), ParseError> {
    for e in s.entries.iter().filter(|e| !e.assign) {
        if !allowed.contains(&e.key.as_str()) {
            let what = if e.key.is_empty() { e.value.clone() } else { e.key.clone() };
            return perr(e.line, 1, format!("unexpected '{what}' in {} section", s.kind));
        }
    }
    Ok(())
}

fn cycle_err(line: usize, e: CycleError) -> ParseError {
    ParseError { line, col: 1, message: e.to_string() }
}

fn build_curve(session: &Session, s: &Section) -> Result<ParamCurve, ParseError> {
    check_keys(s, &["param", "modulus"])?;
    let Some(pe) = s.entries.iter().find(|e| !e.assign && e.key == "param") else {
        return perr(s.line, 1, format!("curve {} needs 'param: NAME'", s.name));
    };
    let names = parse_list(pe)?;
    if names.len() != 1 {
        return perr(pe.line, pe.col, "a curve has exactly one parameter");
    }
    let var = Symbol::var(&names[0]);
    if session.params.iter().any(|p| p.name() == var.name()) {
        return perr(pe.line, pe.col, format!("'{var}' is already a ground parameter"));
    }
    let m = section_modulus(session, s)?;
    let (xe, tes) = coordinates(s)?;
    let vars = [var.clone()];
    let x = expr(xe, &vars, &session.params)?;
    let ts = tes.iter().map(|e| expr(e, &vars, &session.params)).collect::<Result<Vec<_>, _>>()?;
    ParamCurve::new(var, m, x, ts).map_err(|e| cycle_err(s.line, e))
}

fn surface_params(session: &Session, s: &Section) -> Result<(Symbol, Symbol), ParseError> {
    let Some(pe) = s.entries.iter().find(|e| !e.assign && e.key == "params") else {
        return perr(s.line, 1, format!("surface {} needs 'params: U, V'", s.name));
    };
    let names = parse_list(pe)?;
    if names.len() != 2 {
        return perr(pe.line, pe.col, "a surface has exactly two parameters");
    }
    for n in &names {
        if session.params.iter().any(|p| p.name() == n) {
            return perr(pe.line, pe.col, format!("'{n}' is already a ground parameter"));
        }
    }
    Ok((Symbol::var(&names[0]), Symbol::var(&names[1])))
}

fn build_surface(session: &Session, s: &Section) -> Result<ParamSurface, ParseError> {
    check_keys(s, &["params", "modulus"])?;
    let (u, v) = surface_params(session, s)?;
    let m = section_modulus(session, s)?;
    let (xe, tes) = coordinates(s)?;
    let vars = [u.clone(), v.clone()];
    let x = expr(xe, &vars, &session.params)?;
    let ts = tes.iter().map(|e| expr(e, &vars, &session.params)).collect::<Result<Vec<_>, _>>()?;
    ParamSurface::new(u, v, m, x, ts).map_err(|e| cycle_err(s.line, e))
}

fn build_face(session: &Session, s: &Section) -> Result<UserFace, ParseError> {
    check_keys(s, &["i", "j", "factor", "param", "mult"])?;
    let Some(Item::Surface(surf)) = session.items.get(&s.name) else {
        return perr(s.line, 1, format!("face section for unknown surface '{}' (declare the surface first)", s.name));
    };
    let get = |k: &str| {
        s.entries
            .iter()
            .find(|e| !e.assign && e.key == k)
            .ok_or_else(|| ParseError { line: s.line, col: 1, message: format!("face section needs '{k}:'") })
    };
    let ie = get("i")?;
    let i: usize = ie.value.parse().map_err(|_| ParseError { line: ie.line, col: ie.col, message: "bad face index".into() })?;
    let je = get("j")?;
    let at_infinity = match je.value.as_str() {
        "0" => false,
        "inf" => true,
        _ => return perr(je.line, je.col, "j must be 0 or inf"),
    };
    let me = get("mult")?;
    let mult: i64 = me.value.parse().map_err(|_| ParseError { line: me.line, col: me.col, message: "bad multiplicity".into() })?;
    let pe = get("param")?;
    let names = parse_list(pe)?;
    if names.len() != 1 {
        return perr(pe.line, pe.col, "a face curve has exactly one parameter");
    }
    let param = Symbol::var(&names[0]);
    let (su, sv) = surf.params();
    let fe = get("factor")?;
    let factor = expr(fe, &[su.clone(), sv.clone()], &session.params)?;
    if !factor.den().is_constant() {
        return perr(fe.line, fe.col, "factor must be a polynomial");
    }
    let factor: Poly = factor.num().clone();
    let find = |k: &str| {
        s.entries
            .iter()
            .find(|e| e.assign && e.key == k)
            .ok_or_else(|| ParseError { line: s.line, col: 1, message: format!("face section needs '{k} = ...'") })
    };
    let vars = [param.clone()];
    let ue = find("u")?;
    let ve = find("v")?;
    let u = expr(ue, &vars, &session.params)?;
    let v = expr(ve, &vars, &session.params)?;
    // map the surface parameter names onto the section keys
    let (u, v) = if su.name() == "u" || sv.name() != "u" { (u, v) } else { (v, u) };
    Ok(UserFace { i, at_infinity, factor, param, u, v, mult })
}

fn build_cycle(s: &Section) -> Result<Vec<(i64, String)>, ParseError> {
    let mut terms = Vec::new();
    for e in &s.entries {
        if e.assign || !e.key.is_empty() {
            return perr(e.line, 1, "cycle lines are sums like '2*C1 - D10Sigma'");
        }
        parse_terms(&e.value, e.line, e.col, &mut terms)?;
    }
    if terms.is_empty() {
        return perr(s.line, 1, format!("cycle {} is empty", s.name));
    }
    Ok(terms)
}

fn parse_terms(src: &str, line: usize, col0: usize, out: &mut Vec<(i64, String)>) -> Result<(), ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut first = true;
    let skip = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip(&mut i);
        if i >= chars.len() {
            return Ok(());
        }
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
            skip(&mut i);
        } else if !first {
            return perr(line, col0 + i, "expected '+' or '-'");
        }
        first = false;
        let mut coef = 1i64;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if i > start {
            let digits: String = chars[start..i].iter().collect();
            coef = digits.parse().map_err(|_| ParseError { line, col: col0 + start, message: "coefficient too large".into() })?;
            skip(&mut i);
            if i >= chars.len() || chars[i] != '*' {
                return perr(line, col0 + i, "expected '*' after coefficient");
            }
            i += 1;
            skip(&mut i);
        }
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
            i += 1;
        }
        if i == start {
            return perr(line, col0 + i, "expected a name");
        }
        out.push((sign * coef, chars[start..i].iter().collect()));
    }
}

/// What a name denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Item(String),
    /// `D{i}0NAME` or `D{i}infNAME`.
    Face { surface: String, i: usize, at_infinity: bool },
    /// `DNAME`.
    Boundary(String),
}

impl Session {
    /// Reads `[face NAME]` sections for surfaces of this session.
    pub fn parse_faces(&self, text: &str) -> Result<Vec<(String, UserFace)>, ParseError> {
        let ((params, modulus), sections) = scan(text)?;
        if params.is_some() || modulus.is_some() {
            return perr(1, 1, "a faces file holds only [face NAME] sections");
        }
        let mut out = Vec::new();
        for s in sections {
            if s.kind != "face" {
                return perr(s.line, 1, "a faces file holds only [face NAME] sections");
            }
            out.push((s.name.clone(), build_face(self, &s)?));
        }
        Ok(out)
    }

    fn is_surface(&self, name: &str) -> bool {
        matches!(self.items.get(name), Some(Item::Surface(_)))
    }

    pub fn lookup(&self, name: &str) -> Option<Target> {
        if self.items.contains_key(name) {
            return Some(Target::Item(name.into()));
        }
        let rest = name.strip_prefix('D')?;
        if self.is_surface(rest) {
            return Some(Target::Boundary(rest.into()));
        }
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let after = &rest[digits.len()..];
        if let Some(surf) = after.strip_prefix("inf") {
            let i = digits.parse().ok()?;
            return self.is_surface(surf).then(|| Target::Face { surface: surf.into(), i, at_infinity: true });
        }
        let i = digits.strip_suffix('0')?.parse().ok()?;
        self.is_surface(after).then(|| Target::Face { surface: after.into(), i, at_infinity: false })
    }

    pub fn surface(&self, name: &str) -> Option<&ParamSurface> {
        match self.items.get(name) {
            Some(Item::Surface(s)) => Some(s),
            _ => None,
        }
    }

    pub fn user_faces(&self, surface: &str) -> Vec<UserFace> {
        self.faces.iter().filter(|(s, _)| s == surface).map(|(_, f)| f.clone()).collect()
    }

    /// The 1-cycle a name denotes.
    pub fn cycle(&self, name: &str) -> Result<Cycle, CycleError> {
        self.cycle_depth(name, &mut BTreeSet::new())
    }

    fn cycle_depth(&self, name: &str, seen: &mut BTreeSet<String>) -> Result<Cycle, CycleError> {
        match self.lookup(name) {
            None => Err(CycleError::Invalid(format!("unknown name '{name}'"))),
            Some(Target::Item(n)) => match &self.items[&n] {
                Item::Curve(c) => Ok(Cycle::single(c.clone())),
                Item::Surface(_) => Err(CycleError::Invalid(format!("'{n}' is a surface, not a 1-cycle"))),
                Item::Cycle(terms) => {
                    if !seen.insert(n.clone()) {
                        return Err(CycleError::Invalid(format!("cycle '{n}' refers to itself")));
                    }
                    let mut z = Cycle::zero();
                    for (k, t) in terms {
                        z = z.add(&self.cycle_depth(t, seen)?.scale(*k))?;
                    }
                    seen.remove(&n);
                    Ok(z)
                }
            },
            Some(Target::Face { surface, i, at_infinity }) => {
                let s = self.surface(&surface).expect("checked");
                surface_faces_with(s, i, at_infinity, &self.user_faces(&surface))?.cycle()
            }
            Some(Target::Boundary(surface)) => {
                let s = self.surface(&surface).expect("checked");
                boundary_surface_with(s, &self.user_faces(&surface))
            }
        }
    }
}

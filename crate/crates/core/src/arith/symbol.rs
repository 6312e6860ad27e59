//! Interned symbols for parameters (elements of the base field) and variables.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Whether a symbol generates the base field `k = Q(a1, ..., ar)` or is a
/// geometric variable (ambient coordinate, curve or surface parameter).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Param,
    Var,
}

#[derive(Clone)]
pub struct Symbol {
    kind: SymbolKind,
    name: Arc<str>,
}

fn interner() -> &'static Mutex<HashMap<(SymbolKind, String), Arc<str>>> {
    static TABLE: OnceLock<Mutex<HashMap<(SymbolKind, String), Arc<str>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Symbol {
    pub fn new(kind: SymbolKind, name: &str) -> Self {
        let mut table = interner().lock().expect("symbol table poisoned");
        let name = table
            .entry((kind, name.to_string()))
            .or_insert_with(|| Arc::from(name))
            .clone();
        Symbol { kind, name }
    }

    pub fn param(name: &str) -> Self {
        Self::new(SymbolKind::Param, name)
    }

    pub fn var(name: &str) -> Self {
        Self::new(SymbolKind::Var, name)
    }

    /// The ambient coordinate `x`.
    pub fn x() -> Self {
        Self::var("x")
    }

    /// The ambient cube coordinate `t_i` (1-based).
    pub fn t(i: usize) -> Self {
        Self::var(&format!("t{i}"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_param(&self) -> bool {
        self.kind == SymbolKind::Param
    }

    /// Order used for wedge bases: variables before parameters, `x` first
    /// among variables, otherwise natural name order.
    pub fn wedge_cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let rank = |s: &Symbol| match (s.kind, s.name()) {
            (SymbolKind::Var, "x") => 0u8,
            (SymbolKind::Var, _) => 1,
            (SymbolKind::Param, _) => 2,
        };
        rank(self)
            .cmp(&rank(other))
            .then_with(|| natural_cmp(self.name(), other.name()))
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && (Arc::ptr_eq(&self.name, &other.name) || self.name == other.name)
    }
}

impl Eq for Symbol {}

impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.name.hash(state);
    }
}

impl Ord for Symbol {
    /// Parameters before variables; within a group, natural order so that
    /// `t2 < t10`.
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.name, &other.name) && self.kind == other.kind {
            return Ordering::Equal;
        }
        self.kind
            .cmp(&other.kind)
            .then_with(|| natural_cmp(&self.name, &other.name))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Param => write!(f, "param:{}", self.name),
            SymbolKind::Var => write!(f, "var:{}", self.name),
        }
    }
}

/// Compares names treating maximal digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ia, mut ib) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ia.peek().copied(), ib.peek().copied()) {
            (None, None) => return a.len().cmp(&b.len()).then(a.cmp(b)),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((sa, ca)), Some((sb, cb))) => {
                if ca.is_ascii_digit() && cb.is_ascii_digit() {
                    let ea = run_end(a, sa);
                    let eb = run_end(b, sb);
                    let (da, db) = (a[sa..ea].trim_start_matches('0'), b[sb..eb].trim_start_matches('0'));
                    let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    while ia.peek().is_some_and(|&(i, _)| i < ea) {
                        ia.next();
                    }
                    while ib.peek().is_some_and(|&(i, _)| i < eb) {
                        ib.next();
                    }
                } else {
                    let ord = ca.cmp(&cb);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    ia.next();
                    ib.next();
                }
            }
        }
    }
}

fn run_end(s: &str, start: usize) -> usize {
    s[start..]
        .char_indices()
        .find(|(_, c)| !c.is_ascii_digit())
        .map_or(s.len(), |(i, _)| start + i)
}

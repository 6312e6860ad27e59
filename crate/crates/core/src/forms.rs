//! Absolute Kähler differential forms with rational coefficients, the
//! cyclic forms `ω_l^n`, face restriction and Poincaré residues.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{ArithError, RatFunc, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("pole of order {order} along {face}")]
    HigherPole { face: String, order: i64 },
    #[error("coefficient has a pole along {0} not of logarithmic type")]
    NonLogPole(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A wedge of basis differentials, strictly increasing in wedge order
/// (`dx`, then the other variables, then the parameters).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Wedge(Vec<Symbol>);

impl Wedge {
    pub fn empty() -> Self {
        Wedge(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.0.contains(s)
    }

    /// Sorts `syms`, returning the permutation sign, or `None` on a repeat.
    pub fn sorted(mut syms: Vec<Symbol>) -> Option<(i32, Wedge)> {
        let mut sign = 1;
        // insertion sort counting transpositions
        for i in 1..syms.len() {
            let mut j = i;
            while j > 0 {
                match syms[j - 1].wedge_cmp(&syms[j]) {
                    Ordering::Greater => {
                        syms.swap(j - 1, j);
                        sign = -sign;
                        j -= 1;
                    }
                    Ordering::Equal => return None,
                    Ordering::Less => break,
                }
            }
        }
        Some((sign, Wedge(syms)))
    }

    /// Removes `s`, returning the sign of moving it to the front.
    fn extract_front(&self, s: &Symbol) -> Option<(i32, Wedge)> {
        let pos = self.0.iter().position(|x| x == s)?;
        let mut rest = self.0.clone();
        rest.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, Wedge(rest)))
    }
}

impl Ord for Wedge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                let o = a.wedge_cmp(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Wedge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("d{s}")).collect();
        f.write_str(&parts.join(" ^ "))
    }
}

/// `sum coeff * wedge`, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffForm {
    terms: BTreeMap<Wedge, RatFunc>,
}

impl DiffForm {
    pub fn zero() -> Self {
        DiffForm::default()
    }

    pub fn scalar(f: RatFunc) -> Self {
        Self::from_terms(vec![(Wedge::empty(), f)])
    }

    /// The basis differential `ds`.
    pub fn basis(s: &Symbol) -> Self {
        Self::from_terms(vec![(Wedge(vec![s.clone()]), RatFunc::one())])
    }

    /// `ds1 ^ ds2 ^ ...` in the given order.
    pub fn basis_wedge(syms: &[Symbol]) -> Self {
        match Wedge::sorted(syms.to_vec()) {
            Some((sign, w)) => Self::from_terms(vec![(w, RatFunc::from_int(sign as i64))]),
            None => DiffForm::zero(),
        }
    }

    pub fn from_terms(it: Vec<(Wedge, RatFunc)>) -> Self {
        let mut f = DiffForm::zero();
        for (w, c) in it {
            f.add_term(w, c);
        }
        f
    }

    fn add_term(&mut self, w: Wedge, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Wedge, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Wedge) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficient of `ds1 ^ ... ^ dsk` taken in the given order.
    pub fn coeff_of(&self, syms: &[Symbol]) -> RatFunc {
        match Wedge::sorted(syms.to_vec()) {
            Some((sign, w)) => self.coeff(&w).scale(&crate::arith::rational::int(sign as i64)),
            None => RatFunc::zero(),
        }
    }

    /// Degree when homogeneous (0 for the zero form).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Wedge::degree);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (w, c) in &o.terms {
            f.add_term(w.clone(), c.clone());
        }
        f
    }

    pub fn neg(&self) -> Self {
        DiffForm { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * f)).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&RatFunc::from_int(k))
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = DiffForm::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut syms = w1.0.clone();
                syms.extend(w2.0.iter().cloned());
                if let Some((sign, w)) = Wedge::sorted(syms) {
                    let c = c1 * c2;
                    out.add_term(w, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Absolute exterior derivative (all symbols, parameters included).
    pub fn d(&self) -> Self {
        let mut out = DiffForm::zero();
        for (w, c) in &self.terms {
            out = out.add(&d_func(c).wedge(&DiffForm::from_terms(vec![(w.clone(), RatFunc::one())])));
        }
        out
    }

    /// Substitutes `value` for `s` in the coefficients and drops terms
    /// containing `ds`.
    pub fn restrict(&self, s: &Symbol, value: &RatFunc) -> Result<Self, FormError> {
        let mut out = DiffForm::zero();
        for (w, c) in &self.terms {
            if w.contains(s) {
                continue;
            }
            out.add_term(w.clone(), c.substitute_one(s, value)?);
        }
        Ok(out)
    }

    /// Renames symbols in coefficients and wedges.
    pub fn rename(&self, map: &dyn Fn(&Symbol) -> Symbol) -> Self {
        let mut out = DiffForm::zero();
        for (w, c) in &self.terms {
            let syms: Vec<Symbol> = w.0.iter().map(map).collect();
            if let Some((sign, nw)) = Wedge::sorted(syms) {
                let c = c.rename(map);
                out.add_term(nw, if sign < 0 { -c } else { c });
            }
        }
        out
    }

    /// Pullback along `s -> map[s]`; symbols absent from the map are kept.
    pub fn pullback(&self, map: &BTreeMap<Symbol, RatFunc>) -> Result<Self, FormError> {
        let mut dcache: BTreeMap<Symbol, DiffForm> = BTreeMap::new();
        let mut out = DiffForm::zero();
        for (w, c) in &self.terms {
            let mut acc = DiffForm::scalar(c.substitute(map)?);
            for s in &w.0 {
                let ds = dcache
                    .entry(s.clone())
                    .or_insert_with(|| match map.get(s) {
                        Some(f) => d_func(f),
                        None => DiffForm::basis(s),
                    })
                    .clone();
                acc = acc.wedge(&ds);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

/// `df = sum_s (∂f/∂s) ds`.
pub fn d_func(f: &RatFunc) -> DiffForm {
    DiffForm::from_terms(
        f.symbols()
            .into_iter()
            .map(|s| {
                let c = f.derivative(&s);
                (Wedge(vec![s]), c)
            })
            .collect(),
    )
}

/// `df / f`.
pub fn dlog(f: &RatFunc) -> Result<DiffForm, FormError> {
    Ok(d_func(f).scale(&f.inv()?))
}

/// `dt/t` for a symbol.
pub fn dlog_symbol(s: &Symbol) -> DiffForm {
    DiffForm::basis(s).scale(&RatFunc::var(s.clone()).inv().expect("nonzero"))
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if w.degree() == 0 { format!("({c})") } else { format!("({c}) ^ {w}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A face `{t_i = j}` with `j` in `{0, ∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub i: usize,
    pub at_infinity: bool,
}

impl FaceId {
    pub fn zero(i: usize) -> Self {
        FaceId { i, at_infinity: false }
    }

    pub fn infinity(i: usize) -> Self {
        FaceId { i, at_infinity: true }
    }

    /// `sgn(0) = 1`, `sgn(∞) = -1`.
    pub fn sgn(&self) -> i64 {
        if self.at_infinity {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{} = {}", self.i, if self.at_infinity { "inf" } else { "0" })
    }
}

/// The increasing enumeration of `{1..n+1} \ {i}`.
pub fn alpha(i: usize, n: usize) -> Result<Vec<usize>, FormError> {
    if i == 0 || i > n + 1 {
        return Err(FormError::IndexOutOfRange(format!("i = {i} not in 1..={}", n + 1)));
    }
    Ok((1..=n + 1).filter(|&k| k != i).collect())
}

/// `(1 - t_{c_l}) / x^{m+1} · dlog t_{c_{l+1}} ^ ... ^ dlog t_{c_n} ^
/// dlog t_{c_1} ^ ... ^ dlog t_{c_{l-1}}` for the coordinate list `c`.
fn cyclic(coords: &[usize], l: usize, m: u32) -> DiffForm {
    let n = coords.len();
    let x = RatFunc::var(Symbol::x());
    let tl = RatFunc::var(Symbol::t(coords[l - 1]));
    let head = (&RatFunc::one() - &tl).checked_div(&x.pow(m as i32 + 1).expect("x nonzero")).expect("nonzero");
    let mut form = DiffForm::scalar(head);
    for k in (l..n).chain(0..l - 1) {
        form = form.wedge(&dlog_symbol(&Symbol::t(coords[k])));
    }
    form
}

/// `ω_{l,m}^n` on `◇̂_n`.
pub fn omega(l: usize, m: u32, n: usize) -> Result<DiffForm, FormError> {
    if n < 1 || l == 0 || l > n {
        return Err(FormError::IndexOutOfRange(format!("l = {l} not in 1..={n}")));
    }
    let coords: Vec<usize> = (1..=n).collect();
    Ok(cyclic(&coords, l, m))
}

/// `ω_l^n(i)` on `◇̂_{n+1}`: the cyclic form on the coordinates
/// `α_1(i) < ... < α_n(i)` starting at `α_l(i)`.
pub fn omega_face(l: usize, n: usize, i: usize, m: u32) -> Result<DiffForm, FormError> {
    if l == 0 || l > n {
        return Err(FormError::IndexOutOfRange(format!("l = {l} not in 1..={n}")));
    }
    Ok(cyclic(&alpha(i, n)?, l, m))
}

/// Which side of the residue the logarithmic factor is moved to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlogSide {
    /// `f = dlog(t_i - j) ^ α + β`.
    Left,
    /// `f = α ^ dlog(t_i - j) + β`.
    Right,
}

/// Poincaré residue along a coordinate face, with the logarithmic factor
/// on the left.
pub fn poincare_residue(f: &DiffForm, face: FaceId) -> Result<DiffForm, FormError> {
    poincare_residue_with(f, face, DlogSide::Left)
}

pub fn poincare_residue_with(f: &DiffForm, face: FaceId, side: DlogSide) -> Result<DiffForm, FormError> {
    let ti = Symbol::t(face.i);
    let s = Symbol::var("_s");
    let mut out = DiffForm::zero();
    for (w, c) in f.terms() {
        // local coordinate s with t_i = s (finite) or t_i = 1/s
        let (c, jac) = if face.at_infinity {
            let inv_s = RatFunc::var(s.clone()).inv().expect("nonzero");
            // dt_i = -s^{-2} ds
            let jac = -&inv_s.pow(2).expect("nonzero");
            (c.substitute_one(&ti, &inv_s)?, jac)
        } else {
            (c.rename(&|x: &Symbol| if *x == ti { s.clone() } else { x.clone() }), RatFunc::one())
        };
        match w.extract_front(&ti) {
            None => {
                if c.order_in(&s) < 0 {
                    return Err(FormError::NonLogPole(face.to_string()));
                }
            }
            Some((sign, rest)) => {
                // c dt_i ^ rest = (c · jac · s) dlog s ^ rest
                let local = &(&c * &jac) * &RatFunc::var(s.clone());
                let ord = local.order_in(&s);
                if ord < 0 {
                    return Err(FormError::HigherPole { face: face.to_string(), order: 1 - ord });
                }
                let val = local.substitute_one(&s, &RatFunc::zero())?;
                let sign = match side {
                    DlogSide::Left => sign,
                    DlogSide::Right => sign * if rest.degree() % 2 == 0 { 1 } else { -1 },
                };
                let val = if sign < 0 { -val } else { val };
                out = out.add(&DiffForm::from_terms(vec![(rest, val)]));
            }
        }
    }
    Ok(out)
}

/// `ω^{n+1}_{α_l(i)} = (-1)^{i+l} ω_l^n(i) ^ dt_i/t_i`.
pub fn check_omega_wedge_identity(n: usize, i: usize, l: usize, m: u32) -> Result<bool, FormError> {
    let a = alpha(i, n)?;
    let lhs = omega(a[l - 1], m, n + 1)?;
    let rhs = omega_face(l, n, i, m)?.wedge(&dlog_symbol(&Symbol::t(i)));
    let sign = if (i + l) % 2 == 0 { 1 } else { -1 };
    Ok(lhs == rhs.scale_int(sign))
}

/// `Res_{F_i^j} ω^{n+1}_{α_l(i)} = -sgn(j) (-1)^{i+l} ω_l^n(i)|_{F_i^j}`.
pub fn check_poincare_lemma(n: usize, i: usize, at_infinity: bool, l: usize, m: u32) -> Result<bool, FormError> {
    let a = alpha(i, n)?;
    let face = FaceId { i, at_infinity };
    let lhs = poincare_residue(&omega(a[l - 1], m, n + 1)?, face)?;
    let sign = -face.sgn() * if (i + l) % 2 == 0 { 1 } else { -1 };
    // ω_l^n(i) does not involve t_i, so restriction leaves it unchanged
    let rhs = omega_face(l, n, i, m)?.scale_int(sign);
    Ok(lhs == rhs)
}

//! The regulator `R_{2,m}` on curves, cycles and boundaries of surfaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::rational::int;
use crate::arith::{RatFunc, Symbol, UniRat};
use crate::cycles::{
    boundary_surface_with, modulus_classify, Cycle, CycleError, ParamCurve, ParamSurface, PlaceClass, UserFace,
};
use crate::forms::{omega, DiffForm};
use crate::geometry::{GeometryError, Place};
use crate::series::residue_1form;

/// Sign attached to the residue of `ω_l`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegulatorConvention {
    /// `(-1)^{l-1} res ω_l`.
    #[default]
    Cyclic,
    /// `(-1)^{l-1} res η_l`, where `η_l` has the `dlog t_k` in increasing
    /// order; `ω_l = (-1)^{(l-1)(n-l)} η_l`. Agrees with `Cyclic` for even `n`.
    Alternating,
}

impl RegulatorConvention {
    pub fn sign(self, l: usize, n: usize) -> i64 {
        let base = if (l - 1) % 2 == 0 { 1 } else { -1 };
        match self {
            RegulatorConvention::Cyclic => base,
            RegulatorConvention::Alternating => base * if ((l - 1) * (n - l)) % 2 == 0 { 1 } else { -1 },
        }
    }
}

/// An element of `Ω^{n-2}_k`, stored as coefficients of `da_J`.
#[derive(Clone, PartialEq, Eq)]
pub struct RegulatorValue {
    pub n: usize,
    terms: BTreeMap<Vec<Symbol>, RatFunc>,
}

impl RegulatorValue {
    pub fn zero(n: usize) -> Self {
        RegulatorValue { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: RatFunc) -> Self {
        let mut v = RegulatorValue::zero(n);
        v.add_term(Vec::new(), c);
        v
    }

    fn add_term(&mut self, key: Vec<Symbol>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Symbol>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[Symbol]) -> RatFunc {
        self.terms.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, o: &RegulatorValue) -> RegulatorValue {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: i64) -> RegulatorValue {
        let mut out = RegulatorValue::zero(self.n);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c.scale(&int(k)));
        }
        out
    }

    pub fn neg(&self) -> RegulatorValue {
        self.scale(-1)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                if key.is_empty() {
                    return c.to_string();
                }
                let c = c.to_string();
                let c = if c.contains(' ') || c.contains('/') { format!("({c})") } else { c };
                let w: Vec<String> = key.iter().map(|s| format!("d{s}")).collect();
                format!("{c} * {}", w.join("^"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for RegulatorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RegulatorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `ν*ω` as an absolute form on the parameter line.
pub fn pullback_to_curve(form: &DiffForm, c: &ParamCurve) -> Result<DiffForm, CycleError> {
    Ok(form.pullback(&c.coordinate_map())?)
}

/// Residue with trace, splitting clusters on which the expansion is not
/// uniform.
fn residue_split(g: &UniRat, p: &Place) -> Result<RatFunc, CycleError> {
    match residue_1form(g, p) {
        Ok(r) => Ok(r),
        Err(GeometryError::SplitRequired { factor_poly, .. }) => {
            let q = p.modulus().expect("only clusters split");
            let rest = q.div_exact(&factor_poly).expect("factor divides");
            let mut acc = RatFunc::zero();
            for piece in [factor_poly, rest] {
                acc = &acc + &residue_split(g, &Place::from_poly(&piece)?)?;
            }
            Ok(acc)
        }
        Err(e) => Err(e.into()),
    }
}

/// The residue part of `(-1)^{l-1} res_p ν*(ω_l)` sorted by `da_J`, the
/// `dt` factor in front.
pub fn candidate_value(
    c: &ParamCurve,
    p: &Place,
    l: usize,
    conv: RegulatorConvention,
) -> Result<RegulatorValue, CycleError> {
    let n = c.n();
    let form = pullback_to_curve(&omega(l, c.modulus(), n)?, c)?;
    let s = c.param();
    let sign = conv.sign(l, n);
    let mut out = RegulatorValue::zero(n);
    for (w, coef) in form.terms() {
        let syms = w.symbols();
        if syms.first() != Some(s) {
            continue;
        }
        let g = UniRat::from_ratfunc(coef, s)?;
        let r = residue_split(&g, p)?;
        out.add_term(syms[1..].to_vec(), r.scale(&int(sign)));
    }
    Ok(out)
}

/// `R_{2,m}(C; p)` using the smallest index in `S`.
pub fn regulator_point(c: &ParamCurve, pc: &PlaceClass, conv: RegulatorConvention) -> Result<RegulatorValue, CycleError> {
    let Some(&l) = pc.s.iter().next() else {
        return Err(CycleError::NotAdmissible(format!(
            "no index satisfies the modulus condition at {}",
            pc.place.render(c.param())
        )));
    };
    candidate_value(c, &pc.place, l, conv)
}

/// Per-place contributions.
pub fn regulator_breakdown(
    c: &ParamCurve,
    conv: RegulatorConvention,
) -> Result<Vec<(PlaceClass, RegulatorValue)>, CycleError> {
    let cls = modulus_classify(c)?;
    cls.places
        .into_iter()
        .map(|pc| {
            let v = regulator_point(c, &pc, conv)?;
            Ok((pc, v))
        })
        .collect()
}

pub fn regulator_curve(c: &ParamCurve) -> Result<RegulatorValue, CycleError> {
    regulator_curve_with(c, RegulatorConvention::default())
}

pub fn regulator_curve_with(c: &ParamCurve, conv: RegulatorConvention) -> Result<RegulatorValue, CycleError> {
    let mut acc = RegulatorValue::zero(c.n());
    for (_, v) in regulator_breakdown(c, conv)? {
        acc = acc.add(&v);
    }
    Ok(acc)
}

pub fn regulator_cycle(z: &Cycle) -> Result<RegulatorValue, CycleError> {
    regulator_cycle_with(z, RegulatorConvention::default())
}

pub fn regulator_cycle_with(z: &Cycle, conv: RegulatorConvention) -> Result<RegulatorValue, CycleError> {
    let n = z.shape().map_or(0, |(n, _)| n);
    let mut acc = RegulatorValue::zero(n);
    for (k, c) in &z.terms {
        acc = acc.add(&regulator_curve_with(c, conv)?.scale(*k));
    }
    Ok(acc)
}

/// Candidate values at one place for every index in `S`.
#[derive(Clone, Debug)]
pub struct WellDefinedness {
    pub place: Place,
    pub candidates: Vec<(usize, RegulatorValue)>,
}

impl WellDefinedness {
    pub fn mixed(&self) -> bool {
        self.candidates.len() >= 2
    }

    pub fn agree(&self) -> bool {
        self.candidates.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn all_zero(&self) -> bool {
        self.candidates.iter().all(|(_, v)| v.is_zero())
    }

    /// Agreement everywhere, and vanishing at mixed places.
    pub fn holds(&self) -> bool {
        self.agree() && (!self.mixed() || self.all_zero())
    }
}

pub fn verify_well_definedness(c: &ParamCurve, conv: RegulatorConvention) -> Result<Vec<WellDefinedness>, CycleError> {
    let cls = modulus_classify(c)?;
    let mut out = Vec::new();
    for pc in cls.places {
        let mut candidates = Vec::new();
        for &l in &pc.s {
            candidates.push((l, candidate_value(c, &pc.place, l, conv)?));
        }
        out.push(WellDefinedness { place: pc.place, candidates });
    }
    Ok(out)
}

/// `R_{2,m}(∂S)`, which vanishes for admissible `S`.
pub fn verify_boundary_vanishing(s: &ParamSurface) -> Result<RegulatorValue, CycleError> {
    verify_boundary_vanishing_with(s, &[], RegulatorConvention::default())
}

pub fn verify_boundary_vanishing_with(
    s: &ParamSurface,
    user: &[UserFace],
    conv: RegulatorConvention,
) -> Result<RegulatorValue, CycleError> {
    let b = boundary_surface_with(s, user)?;
    let v = regulator_cycle_with(&b, conv)?;
    Ok(if b.is_empty() { RegulatorValue::zero(s.dim() - 1) } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{surface_faces, Degeneracy};
    use crate::text::rf;

    fn curve(m: u32, coords: &[&str]) -> ParamCurve {
        ParamCurve::new(Symbol::var("t"), m, rf(coords[0]), coords[1..].iter().map(|s| rf(s)).collect()).unwrap()
    }

    fn sigma() -> ParamSurface {
        ParamSurface::new(
            Symbol::var("u"),
            Symbol::var("v"),
            2,
            rf("u"),
            vec![rf("v"), rf("((1 - a1*u)*(1 - a2*u))/(1 - (a1 + a2)*u)"), rf("(u + v + 2)/(u + v + 1)")],
        )
        .unwrap()
    }

    #[test]
    fn pullback_examples() {
        let c = curve(2, &["t", "1 + t^2", "(t+2)/(t+1)"]);
        let t = Symbol::var("t");
        let f = pullback_to_curve(&crate::forms::dlog_symbol(&Symbol::t(2)), &c).unwrap();
        assert_eq!(f.coeff_of(&[t.clone()]), rf("-1/((t+1)*(t+2))"));
        let f = pullback_to_curve(&omega(1, 2, 2).unwrap(), &c).unwrap();
        assert_eq!(f.coeff_of(&[t]), rf("1/(t*(t+1)*(t+2))"));

        let c = curve(2, &["t", "a1"]);
        let f = pullback_to_curve(&crate::forms::dlog_symbol(&Symbol::t(1)), &c).unwrap();
        assert_eq!(f.coeff_of(&[Symbol::param("a1")]), rf("1/a1"));
    }

    #[test]
    fn single_curve_values() {
        let c = curve(2, &["t", "1 + t^2", "(t+2)/(t+1)"]);
        assert_eq!(regulator_curve(&c).unwrap(), RegulatorValue::scalar(2, rf("1/2")));
        let c3 = c.with_extra_coordinate(rf("a1")).unwrap();
        let v = regulator_curve(&c3).unwrap();
        assert_eq!(v.coeff(&[Symbol::param("a1")]), rf("1/(2*a1)"));
        assert_eq!(v.render(), "(1/2/a1) * da1");
    }

    #[test]
    fn sigma_example() {
        let s = sigma();
        let face = |i, inf| surface_faces(&s, i, inf).unwrap().cycle().unwrap();
        let r = |z: &Cycle| regulator_cycle(z).unwrap();
        assert_eq!(r(&face(1, false)), RegulatorValue::scalar(2, rf("a1*a2/2")));
        assert!(r(&face(1, true)).is_zero());
        assert!(r(&face(2, false)).is_zero());
        assert!(r(&face(2, true)).is_zero());
        let d3 = face(3, false).add(&face(3, true).scale(-1)).unwrap();
        assert_eq!(r(&d3), RegulatorValue::scalar(2, rf("-a1*a2/2")));
        assert!(verify_boundary_vanishing(&s).unwrap().is_zero());
    }

    #[test]
    fn mixed_places_vanish() {
        for coords in [["t", "1 + t^2", "1 + t^3"], ["t", "1 + t^3", "1 + t^4"], ["t^2", "1 + t^4", "1 + t^5"]] {
            let c = curve(2, &coords);
            let wd = verify_well_definedness(&c, RegulatorConvention::Cyclic).unwrap();
            assert!(wd.iter().all(WellDefinedness::holds), "{coords:?}: {wd:?}");
            assert!(wd.iter().any(WellDefinedness::mixed));
        }
    }

    #[test]
    fn degenerate_and_constant_x() {
        let c = curve(2, &["5", "a1", "t"]);
        assert_eq!(crate::cycles::degeneracy(&c), Degeneracy::Degenerate { slot: 2 });
        assert!(regulator_curve(&c).unwrap().is_zero());
        assert!(regulator_curve(&curve(2, &["3", "t^2 + 1", "t + 5"])).unwrap().is_zero());
    }

    #[test]
    fn inadmissible_curve_is_rejected() {
        let c = curve(2, &["t", "1 + t", "t + 2"]);
        assert!(matches!(regulator_curve(&c), Err(CycleError::NotAdmissible(_))));
    }

    #[test]
    fn conventions_agree_for_even_n() {
        for l in 1..=4 {
            assert_eq!(RegulatorConvention::Cyclic.sign(l, 4), RegulatorConvention::Alternating.sign(l, 4));
            assert_eq!(RegulatorConvention::Cyclic.sign(l.min(2), 2), RegulatorConvention::Alternating.sign(l.min(2), 2));
        }
        assert_ne!(RegulatorConvention::Cyclic.sign(2, 3), RegulatorConvention::Alternating.sign(2, 3));
    }

    #[test]
    fn cancelled_cycle_keeps_its_degree() {
        let c = Cycle::single(curve(2, &["t", "1 + t^2", "(t + 2)/(t + 1)"]));
        let z = c.add(&c.scale(-1)).unwrap().scale(0);
        assert!(z.is_empty());
        assert_eq!(regulator_cycle(&z).unwrap(), RegulatorValue::zero(2));
        assert_eq!(regulator_cycle(&c.scale(0)).unwrap(), regulator_cycle(&c).unwrap().scale(0));
    }

    #[test]
    fn value_arithmetic() {
        let a = RegulatorValue::scalar(2, rf("a1"));
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.scale(3), RegulatorValue::scalar(2, rf("3*a1")));
        assert_eq!(RegulatorValue::zero(3).render(), "0");
    }
}

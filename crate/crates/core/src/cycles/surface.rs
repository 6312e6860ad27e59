use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arith::gcd::gcd;
use crate::arith::{factor_linear, Poly, RatFunc, Symbol};

use super::{check_admissible_curve, Cycle, CycleError, ParamCurve};

/// A map `P^1 x P^1 -> ◇̂_{n+1}`, `(u, v) -> (x, t_1, ..., t_{n+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSurface {
    u: Symbol,
    v: Symbol,
    m: u32,
    x: RatFunc,
    t: Vec<RatFunc>,
}

impl ParamSurface {
    pub fn new(u: Symbol, v: Symbol, m: u32, x: RatFunc, t: Vec<RatFunc>) -> Result<Self, CycleError> {
        if m < 2 {
            return Err(CycleError::Invalid(format!("modulus {m} < 2")));
        }
        if u == v {
            return Err(CycleError::Invalid("surface parameters must differ".into()));
        }
        if t.len() < 2 {
            return Err(CycleError::Invalid("a surface needs at least two cube coordinates".into()));
        }
        let check = |f: &RatFunc, name: &str| -> Result<(), CycleError> {
            for s in f.symbols() {
                if !s.is_param() && s != u && s != v {
                    return Err(CycleError::Invalid(format!("{name} involves {s}, which is neither {u} nor {v}")));
                }
            }
            Ok(())
        };
        check(&x, "x")?;
        if x.is_zero() {
            return Err(CycleError::Invalid("x is identically 0".into()));
        }
        for (k, f) in t.iter().enumerate() {
            let name = format!("t{}", k + 1);
            check(f, &name)?;
            if f.is_zero() {
                return Err(CycleError::Invalid(format!("{name} is identically 0")));
            }
            if f.is_one() {
                return Err(CycleError::Invalid(format!("{name} is identically 1")));
            }
        }
        let moving = |s: &Symbol| x.contains(s) || t.iter().any(|f| f.contains(s));
        if !moving(&u) || !moving(&v) {
            return Err(CycleError::Invalid("parametrization does not depend on both parameters".into()));
        }
        Ok(ParamSurface { u, v, m, x, t })
    }

    pub fn params(&self) -> (&Symbol, &Symbol) {
        (&self.u, &self.v)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// Number of cube coordinates, `n + 1`.
    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn x(&self) -> &RatFunc {
        &self.x
    }

    pub fn t(&self, i: usize) -> &RatFunc {
        &self.t[i - 1]
    }

    pub fn render(&self) -> String {
        let mut parts = vec![format!("x = {}", self.x)];
        for (k, f) in self.t.iter().enumerate() {
            parts.push(format!("t{} = {}", k + 1, f));
        }
        format!("[{}, {}] ({})", self.u, self.v, parts.join(", "))
    }
}

impl fmt::Debug for ParamSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A curve in the parameter domain.
#[derive(Clone, Debug)]
enum Line {
    /// Substitution of rational functions in the remaining parameter.
    Param(BTreeMap<Symbol, RatFunc>),
    /// `s = ∞`.
    AtInfinity(Symbol),
}

enum Restricted {
    Value(RatFunc),
    Infinite,
}

fn leading_in(p: &Poly, s: &Symbol, deg: u32) -> Poly {
    p.to_univariate(s).get(deg as usize).cloned().unwrap_or_else(Poly::zero)
}

fn restrict_poly(p: &Poly, map: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc, CycleError> {
    Ok(RatFunc::from_poly(p.clone()).substitute(map)?)
}

fn restrict(f: &RatFunc, line: &Line) -> Result<Restricted, CycleError> {
    match line {
        Line::Param(map) => {
            let n = restrict_poly(f.num(), map)?;
            let d = restrict_poly(f.den(), map)?;
            if d.is_zero() {
                if n.is_zero() {
                    return Err(CycleError::CapabilityLimit(format!("{f} is indeterminate along a whole face")));
                }
                return Ok(Restricted::Infinite);
            }
            Ok(Restricted::Value(n.checked_div(&d)?))
        }
        Line::AtInfinity(s) => {
            let dn = f.num().degree_in(s);
            let dd = f.den().degree_in(s);
            Ok(match dn.cmp(&dd) {
                std::cmp::Ordering::Greater => Restricted::Infinite,
                std::cmp::Ordering::Less => Restricted::Value(RatFunc::zero()),
                std::cmp::Ordering::Equal => {
                    Restricted::Value(RatFunc::new(leading_in(f.num(), s, dn), leading_in(f.den(), s, dd))?)
                }
            })
        }
    }
}

/// Order of `f` along the line `s = ∞`.
fn ord_at_infinity(f: &RatFunc, s: &Symbol) -> i64 {
    f.den().degree_in(s) as i64 - f.num().degree_in(s) as i64
}

/// A user-supplied parametrization `s -> (u(s), v(s))` of a component of a
/// face that the solver cannot parametrize.
#[derive(Clone, Debug)]
pub struct UserFace {
    pub i: usize,
    pub at_infinity: bool,
    /// The factor of the face equation this curve parametrizes.
    pub factor: Poly,
    pub param: Symbol,
    pub u: RatFunc,
    pub v: RatFunc,
    pub mult: i64,
}

#[derive(Clone, Debug)]
pub enum FaceKind {
    Curve(ParamCurve),
    /// Inside `{t_slot = 1}`, hence empty in `◇`.
    EmptyInDiamond { slot: usize },
    /// Inside `{x = ∞}`.
    OutsideAffine,
    /// The whole component maps to a point.
    Contracted,
}

/// One component of a face `∂_i^j S`.
#[derive(Clone, Debug)]
pub struct FaceCurve {
    pub component: String,
    pub mult: i64,
    pub kind: FaceKind,
}

impl FaceCurve {
    pub fn curve(&self) -> Option<&ParamCurve> {
        match &self.kind {
            FaceKind::Curve(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FaceResult {
    pub i: usize,
    pub at_infinity: bool,
    pub faces: Vec<FaceCurve>,
}

impl FaceResult {
    /// The face as a cycle, with empty and contracted components dropped.
    pub fn cycle(&self) -> Result<Cycle, CycleError> {
        let mut z = Cycle::zero();
        for f in &self.faces {
            if let Some(c) = f.curve() {
                z.push(f.mult, c.clone())?;
            }
        }
        Ok(z)
    }
}

fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    let (a, b) = (a.primitive_rational(), b.primitive_rational());
    a == b || a == -&b
}

fn face_name(i: usize, at_infinity: bool) -> String {
    format!("t{i} = {}", if at_infinity { "inf" } else { "0" })
}

fn build_face(
    s: &ParamSurface,
    i: usize,
    param: &Symbol,
    line: &Line,
    component: String,
    mult: i64,
) -> Result<FaceCurve, CycleError> {
    let x = restrict(&s.x, line)?;
    let mut ts = Vec::new();
    for k in (1..=s.dim()).filter(|&k| k != i) {
        ts.push((k, restrict(s.t(k), line)?));
    }
    let x = match x {
        Restricted::Infinite => return Ok(FaceCurve { component, mult, kind: FaceKind::OutsideAffine }),
        Restricted::Value(x) => x,
    };
    for (k, f) in &ts {
        if matches!(f, Restricted::Value(f) if f.is_one()) {
            return Ok(FaceCurve { component, mult, kind: FaceKind::EmptyInDiamond { slot: *k } });
        }
    }
    if x.is_zero() {
        return Err(CycleError::ImproperSurface(format!("x vanishes on the face component {component}")));
    }
    let mut coords = Vec::new();
    for (k, f) in ts {
        match f {
            Restricted::Value(f) if !f.is_zero() => coords.push(f),
            _ => {
                return Err(CycleError::ImproperSurface(format!(
                    "t{k} is identically 0 or inf on the face component {component}"
                )))
            }
        }
    }
    if !x.contains(param) && coords.iter().all(|f| !f.contains(param)) {
        return Ok(FaceCurve { component, mult, kind: FaceKind::Contracted });
    }
    let c = ParamCurve::new(param.clone(), s.m, x, coords)?;
    Ok(FaceCurve { component, mult, kind: FaceKind::Curve(c) })
}

/// The components of `{t_i = 0}` (or `{t_i = ∞}`) as parametrized curves.
pub fn surface_faces(s: &ParamSurface, i: usize, at_infinity: bool) -> Result<FaceResult, CycleError> {
    surface_faces_with(s, i, at_infinity, &[])
}

pub fn surface_faces_with(
    s: &ParamSurface,
    i: usize,
    at_infinity: bool,
    user: &[UserFace],
) -> Result<FaceResult, CycleError> {
    if i == 0 || i > s.dim() {
        return Err(CycleError::Invalid(format!("face index {i} out of range 1..={}", s.dim())));
    }
    let ti = s.t(i);
    let eq = if at_infinity { ti.den() } else { ti.num() };
    let (u, v) = (&s.u, &s.v);
    let mut faces = Vec::new();
    if eq.contains(u) || eq.contains(v) {
        let fac = factor_linear(eq, &[v.clone(), u.clone()])?;
        for f in &fac.factors {
            if !f.poly.contains(u) && !f.poly.contains(v) {
                continue;
            }
            let mult = f.mult as i64;
            let solve = [(v, u), (u, v)].into_iter().find(|(a, _)| f.poly.degree_in(a) == 1);
            if let Some((solved, param)) = solve {
                let cs = f.poly.to_univariate(solved);
                let value = RatFunc::new(-&cs[0], cs[1].clone())?;
                let component = format!("{solved} = {value}");
                let line = Line::Param(BTreeMap::from([(solved.clone(), value)]));
                faces.push(build_face(s, i, param, &line, component, mult)?);
                continue;
            }
            let given: Vec<&UserFace> = user
                .iter()
                .filter(|uf| uf.i == i && uf.at_infinity == at_infinity && same_up_to_scalar(&uf.factor, &f.poly))
                .collect();
            if given.is_empty() {
                return Err(CycleError::NeedsUserInput {
                    surface: s.render(),
                    i,
                    j: if at_infinity { "inf".into() } else { "0".into() },
                    factor: RatFunc::from_poly(f.poly.clone()).to_string(),
                });
            }
            for uf in given {
                let map = BTreeMap::from([(u.clone(), uf.u.clone()), (v.clone(), uf.v.clone())]);
                let on = restrict_poly(&f.poly, &map)?;
                if !on.is_zero() {
                    return Err(CycleError::Invalid(format!(
                        "user face ({}, {}) does not lie on {}",
                        uf.u,
                        uf.v,
                        RatFunc::from_poly(f.poly.clone())
                    )));
                }
                if uf.mult != mult {
                    return Err(CycleError::Invalid(format!(
                        "user face multiplicity {} differs from the factor multiplicity {mult}",
                        uf.mult
                    )));
                }
                let component = format!("({u}, {v}) = ({}, {})", uf.u, uf.v);
                faces.push(build_face(s, i, &uf.param, &Line::Param(map), component, mult)?);
            }
        }
    }
    for (a, other) in [(u, v), (v, u)] {
        let o = ord_at_infinity(ti, a);
        if (o > 0 && !at_infinity) || (o < 0 && at_infinity) {
            let line = Line::AtInfinity(a.clone());
            faces.push(build_face(s, i, other, &line, format!("{a} = inf"), o.abs())?);
        }
    }
    Ok(FaceResult { i, at_infinity, faces })
}

/// `∂S = sum_i (-1)^i (∂_i^0 S - ∂_i^∞ S)`.
pub fn boundary_surface(s: &ParamSurface) -> Result<Cycle, CycleError> {
    boundary_surface_with(s, &[])
}

pub fn boundary_surface_with(s: &ParamSurface, user: &[UserFace]) -> Result<Cycle, CycleError> {
    let mut out = Cycle::empty(s.dim() - 1, s.m);
    for i in 1..=s.dim() {
        for at_inf in [false, true] {
            let sign = if i % 2 == 0 { 1 } else { -1 } * if at_inf { -1 } else { 1 };
            let res = surface_faces_with(s, i, at_inf, user)?;
            out = out.add(&res.cycle()?.scale(sign))?;
        }
    }
    Ok(out)
}

/// Modulus data along one component of `{x = 0}` in the parameter domain.
#[derive(Clone, Debug)]
pub struct ComponentClass {
    pub component: String,
    pub r: i64,
    pub ords: Vec<i64>,
    pub s: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct SurfaceAdmissibility {
    pub modulus: bool,
    pub components: Vec<ComponentClass>,
    /// Faces computed and checked as curves, with their verdicts.
    pub faces_checked: Vec<(String, bool)>,
    /// Faces that could not be computed.
    pub faces_unverified: Vec<String>,
    pub warnings: Vec<String>,
    pub issues: Vec<String>,
}

impl SurfaceAdmissibility {
    pub fn admissible(&self) -> bool {
        self.modulus && self.faces_checked.iter().all(|(_, ok)| *ok)
    }
}

fn multiplicity_of(q: &Poly, p: &Poly) -> i64 {
    let mut p = p.clone();
    let mut k = 0;
    while let Some(r) = p.div_exact(q) {
        p = r;
        k += 1;
    }
    k
}

/// Splits the squarefree components `qs` until each polynomial in `polys`
/// is either divisible by a component or coprime to it.
fn refine_components(mut qs: Vec<Poly>, polys: &[&Poly], u: &Symbol, v: &Symbol) -> Vec<Poly> {
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for q in qs {
            let split = polys.iter().find_map(|p| {
                let g = gcd(&q, p);
                let proper = (g.contains(u) || g.contains(v)) && !same_up_to_scalar(&g, &q);
                proper.then_some(g)
            });
            match split {
                Some(g) => {
                    let rest = q.div_exact(&g).expect("gcd divides");
                    next.push(g);
                    next.push(rest.primitive_rational());
                    changed = true;
                }
                None => next.push(q),
            }
        }
        qs = next;
        if !changed {
            return qs;
        }
    }
}

pub fn check_admissible_surface(s: &ParamSurface) -> Result<SurfaceAdmissibility, CycleError> {
    check_admissible_surface_with(s, &[])
}

pub fn check_admissible_surface_with(s: &ParamSurface, user: &[UserFace]) -> Result<SurfaceAdmissibility, CycleError> {
    let (u, v) = (&s.u, &s.v);
    let m = s.m as i64;
    let shifted: Vec<RatFunc> = s.t.iter().map(|f| f - &RatFunc::one()).collect();
    let mut rep = SurfaceAdmissibility {
        modulus: true,
        components: Vec::new(),
        faces_checked: Vec::new(),
        faces_unverified: Vec::new(),
        warnings: Vec::new(),
        issues: Vec::new(),
    };

    let mut finite = Vec::new();
    if s.x.num().contains(u) || s.x.num().contains(v) {
        for f in factor_linear(s.x.num(), &[v.clone(), u.clone()])?.factors {
            if f.poly.contains(u) || f.poly.contains(v) {
                finite.push(f.poly);
            }
        }
    }
    let mut polys: Vec<&Poly> = Vec::new();
    for f in &shifted {
        polys.push(f.num());
        polys.push(f.den());
    }
    let finite = refine_components(finite, &polys, u, v);

    let mut classify = |component: String, r: i64, ords: Vec<i64>| {
        let set: BTreeSet<usize> = ords.iter().enumerate().filter(|(_, o)| **o >= m * r).map(|(l, _)| l + 1).collect();
        if set.is_empty() {
            rep.modulus = false;
            rep.issues.push(format!(
                "modulus fails along {component}: r = {r}, ord(t_l - 1) = {ords:?} < {}",
                m * r
            ));
        }
        rep.components.push(ComponentClass { component, r, ords, s: set });
    };
    for q in &finite {
        let r = multiplicity_of(q, s.x.num());
        let ords = shifted.iter().map(|f| multiplicity_of(q, f.num()) - multiplicity_of(q, f.den())).collect();
        classify(format!("{} = 0", RatFunc::from_poly(q.clone())), r, ords);
    }
    for a in [u, v] {
        let r = ord_at_infinity(&s.x, a);
        if r > 0 {
            let ords = shifted.iter().map(|f| ord_at_infinity(f, a)).collect();
            classify(format!("{a} = inf"), r, ords);
        }
    }

    // indeterminacy points of the coordinate map on {x = 0}
    let mut coords = vec![("x".to_string(), &s.x)];
    for (k, f) in s.t.iter().enumerate() {
        coords.push((format!("t{}", k + 1), f));
    }
    for q in &finite {
        let solve = [(v, u), (u, v)].into_iter().find(|(a, _)| q.degree_in(a) == 1);
        let Some((solved, param)) = solve else {
            rep.warnings.push(format!(
                "component {} = 0 of x = 0 is not linear in a parameter; indeterminacy not checked",
                RatFunc::from_poly(q.clone())
            ));
            continue;
        };
        let cs = q.to_univariate(solved);
        let map = BTreeMap::from([(solved.clone(), RatFunc::new(-&cs[0], cs[1].clone())?)]);
        for (name, f) in &coords {
            let n = restrict_poly(f.num(), &map)?;
            let d = restrict_poly(f.den(), &map)?;
            let g = gcd(n.num(), d.num());
            if g.contains(param) {
                rep.warnings.push(format!(
                    "{name} is indeterminate on x = 0 where {} = 0 ({solved} = {}); a blown-up parametrization may be needed",
                    RatFunc::from_poly(g),
                    map[solved]
                ));
            }
        }
        // the point of the component at param = ∞
        if map[solved].contains(param) {
            rep.warnings.push(format!(
                "point at infinity of component {} = 0 of x = 0 not checked for indeterminacy",
                RatFunc::from_poly(q.clone())
            ));
            continue;
        }
        for (name, f) in &coords {
            let top = f.num().degree_in(param).max(f.den().degree_in(param));
            let n = restrict_poly(&leading_in(f.num(), param, top), &map)?;
            let d = restrict_poly(&leading_in(f.den(), param, top), &map)?;
            if n.is_zero() && d.is_zero() {
                rep.warnings.push(format!(
                    "{name} is indeterminate on x = 0 at {solved} = {}, {param} = inf; a blown-up parametrization may be needed",
                    map[solved]
                ));
            }
        }
    }
    for a in [u, v] {
        if ord_at_infinity(&s.x, a) <= 0 {
            continue;
        }
        for (name, f) in &coords {
            let top = f.num().degree_in(a).max(f.den().degree_in(a));
            let g = gcd(&leading_in(f.num(), a, top), &leading_in(f.den(), a, top));
            if g.contains(u) || g.contains(v) {
                rep.warnings.push(format!(
                    "{name} is indeterminate on x = 0 along {a} = inf where {} = 0; a blown-up parametrization may be needed",
                    RatFunc::from_poly(g)
                ));
            }
        }
    }

    for i in 1..=s.dim() {
        for at_inf in [false, true] {
            let name = face_name(i, at_inf);
            match surface_faces_with(s, i, at_inf, user) {
                Ok(res) => {
                    for f in res.faces {
                        if let FaceKind::Curve(c) = &f.kind {
                            let cr = check_admissible_curve(c)?;
                            if !cr.admissible() {
                                rep.issues.push(format!("face {name}, {}: {}", f.component, cr.issues.join("; ")));
                            }
                            rep.faces_checked.push((format!("{name}: {}", f.component), cr.admissible()));
                        }
                    }
                }
                Err(e) if e.is_capability_limit() => rep.faces_unverified.push(format!("{name}: {e}")),
                Err(e) => {
                    rep.issues.push(format!("face {name}: {e}"));
                    rep.faces_checked.push((name, false));
                }
            }
        }
    }
    Ok(rep)
}

use std::collections::BTreeSet;

use crate::arith::{QuotientElem, RatFunc, UniPoly, UniRat};
use crate::geometry::{divisor_sup, ord_at, principal_divisor, refine_place, zero_places, Divisor, Place};
use crate::series::place_ring;

use super::zero::{PointValue, ZeroCycle, ZeroPoint};
use super::{CycleError, ParamCurve};

/// Value of `f` at a place on which `f` is uniform.
pub(crate) fn eval_at(f: &UniRat, p: &Place) -> Result<(PointValue, std::sync::Arc<crate::arith::QuotientRing>), CycleError> {
    let ring = place_ring(p)?;
    let value = match p {
        Place::Infinity => match f.num.deg().cmp(&f.den.deg()) {
            std::cmp::Ordering::Less => PointValue::Finite(QuotientElem::zero(&ring)),
            std::cmp::Ordering::Equal => PointValue::Finite(QuotientElem::scalar(&ring, &f.num.lc() / &f.den.lc())),
            std::cmp::Ordering::Greater => PointValue::Infinite,
        },
        _ => {
            let theta = QuotientElem::theta(&ring);
            let d = theta.eval_poly(&f.den);
            if d.is_zero() {
                PointValue::Infinite
            } else {
                let inv = d.inv().map_err(|_| {
                    CycleError::CapabilityLimit(format!("coordinate not uniform on {:?}", p))
                })?;
                let v = theta.eval_poly(&f.num).mul(&inv);
                if !v.is_zero() && !v.is_unit() {
                    return Err(CycleError::CapabilityLimit(format!("coordinate not uniform on {:?}", p)));
                }
                PointValue::Finite(v)
            }
        }
    };
    Ok((value, ring))
}

/// Polynomials whose multiplicities must be constant on every place used
/// for evaluating the coordinates of `c`.
fn coordinate_polys(c: &ParamCurve) -> Vec<UniPoly> {
    let mut out = vec![c.ux().num.clone(), c.ux().den.clone()];
    for i in 1..=c.n() {
        let t = c.ut(i);
        out.push(t.num.clone());
        out.push(t.den.clone());
        out.push(t.sub_scalar(&RatFunc::one()).num);
    }
    out
}

/// A point of the parameter line over the face `t_i = j`.
#[derive(Clone, Debug)]
pub struct FacePoint {
    pub place: Place,
    pub ring: std::sync::Arc<crate::arith::QuotientRing>,
    /// Order of `t_i` (for `j = 0`) or of `1/t_i` (for `j = ∞`).
    pub mult: i64,
    pub x: PointValue,
    /// All cube coordinates, `t_i` included.
    pub t: Vec<PointValue>,
}

impl FacePoint {
    /// Whether the point lies in `◇_n = A^1 × (P^1 \ {1})^n`.
    pub fn in_diamond(&self) -> bool {
        !self.x.is_infinite() && !self.t.iter().any(PointValue::is_one)
    }

    /// Other cube indices on which the point also lies on a face.
    pub fn other_faces(&self, i: usize) -> Vec<usize> {
        (1..=self.t.len())
            .filter(|&k| k != i && (self.t[k - 1].is_zero() || self.t[k - 1].is_infinite()))
            .collect()
    }
}

/// Places where `t_i = 0` (or `∞`), split so every coordinate is uniform.
pub fn face_points(c: &ParamCurve, i: usize, at_infinity: bool) -> Result<Vec<FacePoint>, CycleError> {
    let ti = c.ut(i);
    let eq = if at_infinity { &ti.den } else { &ti.num };
    let polys = coordinate_polys(c);
    let prefs: Vec<&UniPoly> = polys.iter().collect();
    let mut places = Vec::new();
    for (p, _) in zero_places(eq)? {
        places.extend(refine_place(&p, &prefs));
    }
    let inf_ord = ord_at(ti, &Place::Infinity)?;
    if (inf_ord > 0 && !at_infinity) || (inf_ord < 0 && at_infinity) {
        places.push(Place::Infinity);
    }
    let mut out = Vec::new();
    for p in places {
        let o = ord_at(ti, &p)?;
        let mult = if at_infinity { -o } else { o };
        debug_assert!(mult > 0);
        let (x, ring) = eval_at(c.ux(), &p)?;
        let t = (1..=c.n()).map(|k| eval_at(c.ut(k), &p).map(|v| v.0)).collect::<Result<Vec<_>, _>>()?;
        out.push(FacePoint { place: p, ring, mult, x, t });
    }
    Ok(out)
}

/// `∂C = sum_i (-1)^i (∂_i^0 C - ∂_i^∞ C)`.
pub fn boundary_curve(c: &ParamCurve) -> Result<ZeroCycle, CycleError> {
    let mut z = ZeroCycle::zero();
    for i in 1..=c.n() {
        for at_inf in [false, true] {
            let sign = if i % 2 == 0 { 1 } else { -1 } * if at_inf { -1 } else { 1 };
            for fp in face_points(c, i, at_inf)? {
                if !fp.in_diamond() {
                    continue;
                }
                let others = fp.other_faces(i);
                if fp.x.is_zero() || !others.is_empty() {
                    return Err(CycleError::FaceViolation(format!(
                        "point {} on t{i} = {} {}",
                        fp.place.render(c.param()),
                        if at_inf { "inf" } else { "0" },
                        if fp.x.is_zero() { "has x = 0".to_string() } else { format!("also lies on faces of t{:?}", others) }
                    )));
                }
                let mut coords = Vec::with_capacity(c.n());
                let fin = |v: &PointValue| match v {
                    PointValue::Finite(e) => e.clone(),
                    PointValue::Infinite => unreachable!("checked finite"),
                };
                coords.push(fin(&fp.x));
                for k in (1..=c.n()).filter(|&k| k != i) {
                    coords.push(fin(&fp.t[k - 1]));
                }
                z.push(ZeroPoint {
                    param: c.param().clone(),
                    place: fp.place.clone(),
                    ring: fp.ring.clone(),
                    coords,
                    mult: sign * fp.mult,
                });
            }
        }
    }
    Ok(z)
}

/// Modulus data at one place over `x = 0`.
#[derive(Clone, Debug)]
pub struct PlaceClass {
    pub place: Place,
    /// `ord_p(x)`.
    pub r: i64,
    /// `ord_p(t_l - 1)` for `l = 1..n`.
    pub ords: Vec<i64>,
    /// Indices `l` with `ord_p(t_l - 1) >= m r`.
    pub s: BTreeSet<usize>,
}

impl PlaceClass {
    /// The unique index when `S` is a singleton.
    pub fn exclusive(&self) -> Option<usize> {
        (self.s.len() == 1).then(|| *self.s.iter().next().expect("one element"))
    }

    pub fn is_mixed(&self) -> bool {
        self.s.len() >= 2
    }
}

#[derive(Clone, Debug)]
pub struct ModulusClassification {
    pub places: Vec<PlaceClass>,
}

impl ModulusClassification {
    pub fn satisfied(&self) -> bool {
        self.places.iter().all(|p| !p.s.is_empty())
    }
}

/// Places over `x = 0` with the indices satisfying the modulus condition.
pub fn modulus_classify(c: &ParamCurve) -> Result<ModulusClassification, CycleError> {
    let shifted: Vec<UniRat> = (1..=c.n()).map(|l| c.ut(l).sub_scalar(&RatFunc::one())).collect();
    let mut polys: Vec<&UniPoly> = Vec::new();
    for f in &shifted {
        polys.push(&f.num);
        polys.push(&f.den);
    }
    let mut places = Vec::new();
    for (p, _) in zero_places(&c.ux().num)? {
        places.extend(refine_place(&p, &polys));
    }
    if c.ux().num.deg() < c.ux().den.deg() {
        places.push(Place::Infinity);
    }
    let m = c.modulus() as i64;
    let mut out = Vec::new();
    for p in places {
        let r = ord_at(c.ux(), &p)?;
        let ords = shifted.iter().map(|f| ord_at(f, &p)).collect::<Result<Vec<_>, _>>()?;
        let s = ords.iter().enumerate().filter(|(_, o)| **o >= m * r).map(|(l, _)| l + 1).collect();
        out.push(PlaceClass { place: p, r, ords, s });
    }
    Ok(ModulusClassification { places: out })
}

/// Verdicts of the admissibility conditions for a curve.
#[derive(Clone, Debug)]
pub struct CurveAdmissibility {
    /// No point of `◇_n` lies on two faces.
    pub proper: bool,
    /// No parameter value at all (including where `x = ∞` or some
    /// `t_k = 1`) lies on two faces.
    pub proper_in_closure: bool,
    /// Every face point in `◇_n` has `x ≠ 0` and no other coordinate in
    /// `{0, ∞}`.
    pub faces_legal: bool,
    /// The modulus condition holds at every place over `x = 0`.
    pub modulus: bool,
    /// `sup_l ν*{t_l = 1} - m ν*{x = 0}` is effective.
    pub sup_form_effective: bool,
    pub issues: Vec<String>,
}

impl CurveAdmissibility {
    pub fn admissible(&self) -> bool {
        self.proper && self.faces_legal && self.modulus
    }
}

fn zero_divisor(f: &UniRat) -> Result<Divisor, CycleError> {
    let d = principal_divisor(f)?;
    Ok(Divisor::from_terms(d.iter().filter(|(_, k)| **k > 0).map(|(p, k)| (p.clone(), *k)).collect()))
}

pub fn check_admissible_curve(c: &ParamCurve) -> Result<CurveAdmissibility, CycleError> {
    let mut rep = CurveAdmissibility {
        proper: true,
        proper_in_closure: true,
        faces_legal: true,
        modulus: true,
        sup_form_effective: true,
        issues: Vec::new(),
    };
    let var = c.param();
    for i in 1..=c.n() {
        for at_inf in [false, true] {
            let face = format!("t{i} = {}", if at_inf { "inf" } else { "0" });
            for fp in face_points(c, i, at_inf)? {
                let others = fp.other_faces(i);
                let inside = fp.in_diamond();
                if !others.is_empty() {
                    rep.proper_in_closure = false;
                    if inside {
                        rep.proper = false;
                        rep.faces_legal = false;
                        rep.issues.push(format!(
                            "{} lies on {face} and on faces of t{:?}",
                            fp.place.render(var),
                            others
                        ));
                    }
                }
                if inside && fp.x.is_zero() {
                    rep.faces_legal = false;
                    rep.issues.push(format!("{} on {face} has x = 0", fp.place.render(var)));
                }
            }
        }
    }
    let cls = modulus_classify(c)?;
    for pc in &cls.places {
        if pc.s.is_empty() {
            rep.modulus = false;
            rep.issues.push(format!(
                "modulus fails at {}: r = {}, ord(t_l - 1) = {:?} < {}",
                pc.place.render(var),
                pc.r,
                pc.ords,
                c.modulus() as i64 * pc.r
            ));
        }
    }
    let mut ds = Vec::new();
    for l in 1..=c.n() {
        ds.push(zero_divisor(&c.ut(l).sub_scalar(&RatFunc::one()))?);
    }
    let sup = divisor_sup(&ds)?;
    let lhs = sup.sub(&zero_divisor(c.ux())?.scale(c.modulus() as i64));
    rep.sup_form_effective = lhs.is_effective();
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    NotDegenerate,
    /// Pullback of a point along the projection forgetting `t_slot`.
    Degenerate { slot: usize },
    /// `multiplicity` times a degenerate cycle.
    DegenerateImage { slot: usize, multiplicity: usize },
}

pub fn degeneracy(c: &ParamCurve) -> Degeneracy {
    if !c.ux().is_constant() {
        return Degeneracy::NotDegenerate;
    }
    let moving: Vec<usize> = (1..=c.n()).filter(|&k| !c.ut(k).is_constant()).collect();
    match moving.as_slice() {
        [k] => match c.ut(*k).map_degree() {
            1 => Degeneracy::Degenerate { slot: *k },
            d => Degeneracy::DegenerateImage { slot: *k, multiplicity: d },
        },
        _ => Degeneracy::NotDegenerate,
    }
}

pub fn is_degenerate(c: &ParamCurve) -> bool {
    matches!(degeneracy(c), Degeneracy::Degenerate { .. })
}

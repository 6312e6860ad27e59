//! Laurent expansions at places of the projective line and residues of
//! rational 1-forms, traced down to `k` at clusters.

use std::sync::Arc;

use crate::arith::{ArithError, QuotientElem, QuotientRing, RatFunc, UniPoly, UniRat};
use crate::geometry::{zero_places, GeometryError, Place};

/// `sum_{j >= v} c_j s^j`, exact for exponents `v..=precision`. At a
/// finite place `s = t - θ` with `θ` the class of the generator in
/// `k[θ]/(q)`; at infinity `s = 1/t`.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub place: Place,
    pub ring: Arc<QuotientRing>,
    /// `None` for the zero series.
    pub valuation: Option<i64>,
    pub coeffs: Vec<QuotientElem>,
    pub precision: i64,
}

impl LaurentSeries {
    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Coefficient of `s^e` (zero below the valuation).
    pub fn coeff(&self, e: i64) -> QuotientElem {
        assert!(e <= self.precision, "coefficient beyond precision");
        match self.valuation {
            Some(v) if e >= v => self.coeffs[(e - v) as usize].clone(),
            _ => QuotientElem::zero(&self.ring),
        }
    }
}

/// The residue algebra of a place together with the local coordinate.
pub fn place_ring(p: &Place) -> Result<Arc<QuotientRing>, ArithError> {
    match p.modulus() {
        Some(q) => QuotientRing::new(&q),
        None => QuotientRing::new(&UniPoly::gen()),
    }
}

/// Coefficients of `p(θ + s)` in `s`.
fn taylor(p: &UniPoly, ring: &Arc<QuotientRing>) -> Vec<QuotientElem> {
    let n = p.coeffs().len();
    let theta = QuotientElem::theta(ring);
    let mut pows = vec![QuotientElem::one(ring)];
    for _ in 1..n {
        let last = pows.last().expect("nonempty").mul(&theta);
        pows.push(last);
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = QuotientElem::zero(ring);
        let mut binom = num_bigint::BigInt::from(1);
        for i in j..n {
            if i > j {
                binom = binom * i / (i - j);
            }
            let c = p.coeff(i);
            if c.is_zero() {
                continue;
            }
            let c = c.scale(&crate::arith::Rational::from_integer(binom.clone()));
            acc = acc.add(&pows[i - j].scale(&c));
        }
        out.push(acc);
    }
    out
}

/// Local coefficients of numerator and denominator, and the extra power
/// of `s` contributed by the chart.
fn local_parts(f: &UniRat, p: &Place, ring: &Arc<QuotientRing>) -> (Vec<QuotientElem>, Vec<QuotientElem>, i64) {
    match p {
        Place::Infinity => {
            let d = f.num.deg().max(f.den.deg());
            let lift = |u: &UniPoly| -> Vec<QuotientElem> {
                u.reversed(d).coeffs().iter().map(|c| QuotientElem::scalar(ring, c.clone())).collect()
            };
            (lift(&f.num), lift(&f.den), 0)
        }
        _ => (taylor(&f.num, ring), taylor(&f.den, ring), 0),
    }
}

fn split_error(ring: &Arc<QuotientRing>, e: &QuotientElem) -> GeometryError {
    let g = e.rep().gcd(ring.modulus());
    let t = crate::arith::Symbol::var("t");
    GeometryError::SplitRequired {
        cluster: ring.modulus().to_ratfunc(&t).to_string(),
        factor: g.to_ratfunc(&t).to_string(),
        factor_poly: g,
    }
}

/// Leading index, requiring the leading coefficient to be a unit.
fn lead(a: &[QuotientElem], ring: &Arc<QuotientRing>) -> Result<Option<usize>, GeometryError> {
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            if !c.is_unit() {
                return Err(split_error(ring, c));
            }
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Expansion of `f` at `p` through the exponent `upto`.
pub fn expand_at(f: &UniRat, p: &Place, upto: i64) -> Result<LaurentSeries, GeometryError> {
    let ring = place_ring(p)?;
    if f.is_zero() {
        return Ok(LaurentSeries { place: p.clone(), ring, valuation: None, coeffs: Vec::new(), precision: upto });
    }
    let (a, b, _) = local_parts(f, p, &ring);
    let va = lead(&a, &ring)?.expect("nonzero numerator");
    let vb = lead(&b, &ring)?.expect("nonzero denominator");
    let v = va as i64 - vb as i64;
    let count = if upto >= v { (upto - v + 1) as usize } else { 0 };
    let get = |x: &[QuotientElem], i: usize| x.get(i).cloned().unwrap_or_else(|| QuotientElem::zero(&ring));
    let b0inv = b[vb].inv().map_err(|_| split_error(&ring, &b[vb]))?;
    let mut c: Vec<QuotientElem> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = get(&a, va + k);
        for i in 1..=k {
            let bi = get(&b, vb + i);
            if !bi.is_zero() {
                acc = acc.sub(&bi.mul(&c[k - i]));
            }
        }
        c.push(acc.mul(&b0inv));
    }
    Ok(LaurentSeries { place: p.clone(), ring, valuation: Some(v), coeffs: c, precision: upto })
}

/// Residue of `g dt` at `p`, traced to `k`.
pub fn residue_1form(g: &UniRat, p: &Place) -> Result<RatFunc, GeometryError> {
    if g.is_zero() {
        return Ok(RatFunc::zero());
    }
    match p {
        // dt = -s^{-2} ds
        Place::Infinity => {
            let s = expand_at(g, p, 1)?;
            Ok(-s.coeff(1).trace())
        }
        _ => {
            let s = expand_at(g, p, -1)?;
            Ok(s.coeff(-1).trace())
        }
    }
}

/// Poles of `g dt`: the finite poles of `g` and infinity.
pub fn form_poles(g: &UniRat) -> Result<Vec<Place>, GeometryError> {
    let mut out: Vec<Place> = zero_places(&g.den)?.into_iter().map(|(p, _)| p).collect();
    out.push(Place::Infinity);
    Ok(out)
}

/// Sum of the residues of `g dt` over all places.
pub fn reciprocity_check(g: &UniRat) -> Result<RatFunc, GeometryError> {
    let mut acc = RatFunc::zero();
    for p in form_poles(g)? {
        acc = &acc + &residue_1form(g, &p)?;
    }
    Ok(acc)
}

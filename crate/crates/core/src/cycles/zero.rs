//! Zero-cycles of `◇_{n-1}` and their canonical comparison.

use std::fmt;
use std::sync::Arc;

use crate::arith::{QuotientElem, QuotientRing, RatFunc, Symbol, UniPoly};
use crate::geometry::Place;

use super::CycleError;

/// The value of a coordinate at a (possibly non-rational) point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointValue {
    Finite(QuotientElem),
    Infinite,
}

impl PointValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, PointValue::Finite(v) if v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, PointValue::Finite(v) if v.sub(&QuotientElem::one(v.ring())).is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PointValue::Infinite)
    }
}

/// A closed point (or a cluster of conjugate points) with multiplicity.
/// `coords` are `x, t_1, ..., t_{n-1}` evaluated in the residue algebra.
#[derive(Clone, Debug)]
pub struct ZeroPoint {
    pub param: Symbol,
    pub place: Place,
    pub ring: Arc<QuotientRing>,
    pub coords: Vec<QuotientElem>,
    pub mult: i64,
}

impl ZeroPoint {
    pub fn render(&self) -> String {
        let theta = Symbol::var("theta");
        let vals: Vec<String> = self.coords.iter().map(|c| c.rep().to_ratfunc(&theta).to_string()).collect();
        let names: Vec<String> =
            std::iter::once("x".to_string()).chain((1..self.coords.len()).map(|k| format!("t{k}"))).collect();
        let body = format!("({}) = ({})", names.join(", "), vals.join(", "));
        match &self.place {
            Place::Cluster(q) => format!("[cluster {}: {body}]", q.to_ratfunc(&theta)),
            _ => format!("[{body}]"),
        }
    }
}

/// Integer combination of points.
#[derive(Clone, Debug, Default)]
pub struct ZeroCycle {
    pub points: Vec<ZeroPoint>,
}

/// Canonical key of a point: minimal polynomial of a primitive element and
/// the coordinates as polynomials in it.
type Key = (UniPoly, Vec<UniPoly>);

impl ZeroCycle {
    pub fn zero() -> Self {
        ZeroCycle::default()
    }

    pub fn push(&mut self, p: ZeroPoint) {
        if p.mult != 0 {
            self.points.push(p);
        }
    }

    pub fn add(&self, o: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        out.points.extend(o.points.iter().cloned());
        out
    }

    pub fn scale(&self, k: i64) -> ZeroCycle {
        ZeroCycle {
            points: self
                .points
                .iter()
                .filter(|_| k != 0)
                .map(|p| ZeroPoint { mult: p.mult * k, ..p.clone() })
                .collect(),
        }
    }

    /// Total degree over `k`.
    pub fn degree(&self) -> i64 {
        self.points.iter().map(|p| p.mult * p.ring.degree() as i64).sum()
    }

    /// Pairwise disjoint points with nonzero multiplicities.
    pub fn canonical(&self) -> Result<Vec<(Key, i64)>, CycleError> {
        if self.points.is_empty() {
            return Ok(Vec::new());
        }
        let width = self.points[0].coords.len();
        if self.points.iter().any(|p| p.coords.len() != width) {
            return Err(CycleError::Invalid("points of different dimensions".into()));
        }
        let weights = find_primitive(&self.points)?;
        let mut entries: Vec<(Key, i64)> = Vec::new();
        for p in &self.points {
            entries.push((key_of(p, &weights), p.mult));
        }
        refine(&mut entries);
        let mut merged: Vec<(Key, i64)> = Vec::new();
        for (k, m) in entries {
            match merged.iter_mut().find(|(k2, _)| *k2 == k) {
                Some((_, m2)) => *m2 += m,
                None => merged.push((k, m)),
            }
        }
        merged.retain(|(_, m)| *m != 0);
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(merged)
    }

    pub fn is_zero(&self) -> Result<bool, CycleError> {
        Ok(self.canonical()?.is_empty())
    }

    pub fn render(&self) -> String {
        if self.points.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, p) in self.points.iter().enumerate() {
            let sign = if p.mult < 0 { "-" } else { "+" };
            if k == 0 {
                if p.mult < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if p.mult.abs() != 1 {
                out.push_str(&format!("{}*", p.mult.abs()));
            }
            out.push_str(&p.render());
        }
        out
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn combination(p: &ZeroPoint, w: &[i64]) -> QuotientElem {
    let mut acc = QuotientElem::zero(&p.ring);
    for (c, k) in p.coords.iter().zip(w) {
        if *k != 0 {
            acc = acc.add(&c.scale(&RatFunc::from_int(*k)));
        }
    }
    acc
}

/// Characteristic polynomial of multiplication by `e`.
fn char_poly(e: &QuotientElem) -> UniPoly {
    let d = e.ring().degree();
    let mut p = Vec::with_capacity(d + 1);
    p.push(RatFunc::from_int(d as i64));
    let mut pw = QuotientElem::one(e.ring());
    for _ in 1..=d {
        pw = pw.mul(e);
        p.push(pw.trace());
    }
    // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut el = vec![RatFunc::one()];
    for k in 1..=d {
        let mut acc = RatFunc::zero();
        for i in 1..=k {
            let term = &el[k - i] * &p[i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        el.push(acc.scale(&crate::arith::rational::rat(1, k as i64)));
    }
    let mut coeffs = vec![RatFunc::zero(); d + 1];
    for (k, ek) in el.iter().enumerate() {
        coeffs[d - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    UniPoly::new(coeffs)
}

fn weight_vectors(width: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..=4i64).flat_map(move |b| {
        let total = (2 * b + 1).pow(width.saturating_sub(1) as u32);
        (0..total).filter_map(move |mut idx| {
            let mut w = vec![1i64];
            for _ in 1..width {
                w.push(idx % (2 * b + 1) - b);
                idx /= 2 * b + 1;
            }
            (w.iter().skip(1).map(|v| v.abs()).max().unwrap_or(0) == b).then_some(w)
        })
    })
}

/// Integer weights `w` (with `w_0 = 1`) such that `sum w_k coords_k`
/// generates every residue algebra.
fn find_primitive(points: &[ZeroPoint]) -> Result<Vec<i64>, CycleError> {
    let width = points[0].coords.len();
    'outer: for w in weight_vectors(width) {
        for p in points {
            if p.ring.degree() > 1 && !char_poly(&combination(p, &w)).is_squarefree() {
                continue 'outer;
            }
        }
        return Ok(w);
    }
    Err(CycleError::CapabilityLimit("no primitive element found for a zero-cycle comparison".into()))
}

/// Solves `M y = b` over the field of rational functions; `M` invertible.
fn solve(mut m: Vec<Vec<RatFunc>>, mut b: Vec<RatFunc>) -> Vec<RatFunc> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("invertible matrix");
        m.swap(col, piv);
        b.swap(col, piv);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let v = &m[col][c] * &f;
                m[r][c] = &m[r][c] - &v;
            }
            let v = &b[col] * &f;
            b[r] = &b[r] - &v;
        }
    }
    (0..n).map(|i| &b[i] / &m[i][i]).collect()
}

fn key_of(p: &ZeroPoint, w: &[i64]) -> Key {
    let l = combination(p, w);
    let d = p.ring.degree();
    if d == 1 {
        let lv = l.rep().coeff(0);
        let chi = UniPoly::linear_root(&lv);
        let coords = p.coords.iter().map(|c| UniPoly::constant(c.rep().coeff(0))).collect();
        return (chi, coords);
    }
    let chi = char_poly(&l);
    // columns: representatives of L^0 .. L^{d-1}
    let mut cols = Vec::with_capacity(d);
    let mut pw = QuotientElem::one(&p.ring);
    for _ in 0..d {
        cols.push(pw.clone());
        pw = pw.mul(&l);
    }
    let matrix: Vec<Vec<RatFunc>> = (0..d).map(|r| (0..d).map(|c| cols[c].rep().coeff(r)).collect()).collect();
    let coords = p
        .coords
        .iter()
        .map(|c| UniPoly::new(solve(matrix.clone(), (0..d).map(|r| c.rep().coeff(r)).collect())))
        .collect();
    (chi, coords)
}

fn restrict_key(k: &Key, g: &UniPoly) -> Key {
    let g = g.monic();
    (g.clone(), k.1.iter().map(|p| p.rem(&g)).collect())
}

/// Splits keys until any two are equal or disjoint.
fn refine(entries: &mut Vec<(Key, i64)>) {
    'again: loop {
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let (a, b) = (&entries[i].0, &entries[j].0);
                if a == b {
                    continue;
                }
                let g = if a.0 == b.0 {
                    // common roots where the coordinates agree
                    let mut g = a.0.clone();
                    for (p, q) in a.1.iter().zip(&b.1) {
                        g = g.gcd(&(p - q));
                    }
                    g
                } else {
                    a.0.gcd(&b.0)
                };
                if g.is_constant() {
                    continue;
                }
                let (ki, mi) = entries[i].clone();
                let (kj, mj) = entries[j].clone();
                let mut pieces = Vec::new();
                for (k, m) in [(ki, mi), (kj, mj)] {
                    let rest = k.0.div_exact(&g).expect("gcd divides");
                    pieces.push((restrict_key(&k, &g), m));
                    if !rest.is_constant() {
                        pieces.push((restrict_key(&k, &rest), m));
                    }
                }
                entries.remove(j);
                entries.remove(i);
                entries.extend(pieces);
                continue 'again;
            }
        }
        return;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn k(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }
    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&n| k(n)).collect())
    }
    fn rational_point(coords: &[i64], mult: i64) -> ZeroPoint {
        let ring = QuotientRing::new(&up(&[0, 1])).unwrap();
        ZeroPoint {
            param: Symbol::var("t"),
            place: Place::Rational(k(0)),
            coords: coords.iter().map(|&c| QuotientElem::scalar(&ring, k(c))).collect(),
            ring,
            mult,
        }
    }
    /// The point(s) `(θ, θ^2 + 1)` over `q`.
    fn cluster_point(q: &[i64], mult: i64) -> ZeroPoint {
        let ring = QuotientRing::new(&up(q)).unwrap();
        let th = QuotientElem::theta(&ring);
        let t1 = th.mul(&th).add(&QuotientElem::one(&ring));
        ZeroPoint {
            param: Symbol::var("t"),
            place: Place::Cluster(up(q)),
            coords: vec![th, t1],
            ring,
            mult,
        }
    }

    #[test]
    fn rational_points_cancel() {
        let mut z = ZeroCycle::zero();
        z.push(rational_point(&[2, 5], 1));
        z.push(rational_point(&[2, 5], -1));
        assert!(z.is_zero().unwrap());
        z.push(rational_point(&[3, 5], 1));
        assert!(!z.is_zero().unwrap());
    }

    #[test]
    fn cluster_equals_its_split_points() {
        // θ^2 - 1 = (θ - 1)(θ + 1): points (1, 2) and (-1, 2)
        let mut z = ZeroCycle::zero();
        z.push(cluster_point(&[-1, 0, 1], 1));
        z.push(rational_point(&[1, 2], -1));
        z.push(rational_point(&[-1, 2], -1));
        assert!(z.is_zero().unwrap());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn same_cluster_with_shifted_generator() {
        // θ -> -θ maps the roots of θ^2 - 2 to each other
        let mut z = ZeroCycle::zero();
        z.push(cluster_point(&[-2, 0, 1], 1));
        let ring = QuotientRing::new(&up(&[-2, 0, 1])).unwrap();
        let th = QuotientElem::theta(&ring).neg();
        let t1 = th.mul(&th).add(&QuotientElem::one(&ring));
        z.push(ZeroPoint { param: Symbol::var("s"), place: Place::Cluster(up(&[-2, 0, 1])), coords: vec![th, t1], ring, mult: -1 });
        assert!(z.is_zero().unwrap());
    }

    #[test]
    fn char_poly_matches_modulus() {
        let ring = QuotientRing::new(&up(&[1, 1, 0, 1])).unwrap();
        let th = QuotientElem::theta(&ring);
        assert_eq!(char_poly(&th), up(&[1, 1, 0, 1]));
        let two = QuotientElem::scalar(&ring, RatFunc::constant(int(2)));
        assert_eq!(char_poly(&two), up(&[-8, 12, -6, 1]));
    }
}

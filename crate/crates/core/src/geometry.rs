//! Closed points and Weil divisors on the projective line over `k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{factor_linear, ArithError, RatFunc, Symbol, UniPoly, UniRat};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("valuation of the zero function is infinite")]
    ZeroFunction,
    #[error("cluster {cluster} is not uniform: split required along factor {factor}")]
    SplitRequired { cluster: String, factor: String, factor_poly: UniPoly },
    #[error("empty sequence of divisors")]
    Empty,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A closed point of the parameter line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// `t = c` with `c` in `k`.
    Rational(RatFunc),
    /// The zeros of a monic squarefree polynomial of degree at least 2.
    Cluster(UniPoly),
    Infinity,
}

impl Place {
    /// Canonical place for the zeros of `q`; degree-one clusters become
    /// rational places.
    pub fn from_poly(q: &UniPoly) -> Result<Place, GeometryError> {
        match q.degree() {
            None | Some(0) => Err(ArithError::BadModulus("place polynomial must have positive degree".into()).into()),
            Some(1) => {
                let m = q.monic();
                Ok(Place::Rational(-&m.coeff(0)))
            }
            Some(_) => {
                let m = q.monic();
                if !m.is_squarefree() {
                    return Err(ArithError::BadModulus("cluster polynomial is not squarefree".into()).into());
                }
                Ok(Place::Cluster(m))
            }
        }
    }

    pub fn rational(c: RatFunc) -> Place {
        Place::Rational(c)
    }

    /// Monic defining polynomial of a finite place.
    pub fn modulus(&self) -> Option<UniPoly> {
        match self {
            Place::Rational(c) => Some(UniPoly::linear_root(c)),
            Place::Cluster(q) => Some(q.clone()),
            Place::Infinity => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Cluster(q) => q.deg(),
            _ => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn render(&self, var: &Symbol) -> String {
        match self {
            Place::Rational(c) => format!("({var}={c})"),
            Place::Cluster(q) => format!("(cluster: {})", q.to_ratfunc(var)),
            Place::Infinity => "(inf)".into(),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Symbol::var("t")))
    }
}

/// Multiplicity of the squarefree monic `q` in `p`, failing when `p` shares
/// a proper factor with `q`.
fn multiplicity(p: &UniPoly, q: &UniPoly) -> Result<i64, GeometryError> {
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let g = p.gcd(q);
        if g.is_constant() {
            return Ok(k);
        }
        if g.deg() < q.deg() {
            return Err(GeometryError::SplitRequired {
                cluster: q.to_ratfunc(&Symbol::var("t")).to_string(),
                factor: g.to_ratfunc(&Symbol::var("t")).to_string(),
                factor_poly: g,
            });
        }
        p = p.div_exact(q).expect("q divides");
        k += 1;
    }
}

/// Splits the place `p` until each of `polys` has the same multiplicity at
/// every piece.
pub fn refine_place(p: &Place, polys: &[&UniPoly]) -> Vec<Place> {
    let Some(q) = p.modulus() else {
        return vec![p.clone()];
    };
    if q.deg() == 1 {
        return vec![p.clone()];
    }
    for poly in polys {
        if poly.is_zero() {
            continue;
        }
        if let Err(GeometryError::SplitRequired { factor_poly, .. }) = multiplicity(poly, &q) {
            let rest = q.div_exact(&factor_poly).expect("factor divides");
            let mut out = Vec::new();
            for piece in [factor_poly, rest] {
                let pl = Place::from_poly(&piece).expect("factor of a squarefree polynomial");
                out.extend(refine_place(&pl, polys));
            }
            return out;
        }
    }
    vec![p.clone()]
}

/// Valuation of `f` at `p`.
pub fn ord_at(f: &UniRat, p: &Place) -> Result<i64, GeometryError> {
    if f.is_zero() {
        return Err(GeometryError::ZeroFunction);
    }
    match p.modulus() {
        None => Ok(f.den.deg() as i64 - f.num.deg() as i64),
        Some(q) => Ok(multiplicity(&f.num, &q)? - multiplicity(&f.den, &q)?),
    }
}

/// Valuation of a rational function in `var` at `p`.
pub fn ord_at_ratfunc(f: &RatFunc, var: &Symbol, p: &Place) -> Result<i64, GeometryError> {
    ord_at(&UniRat::from_ratfunc(f, var)?, p)
}

/// Zeros of a nonzero polynomial as places with multiplicities; roots in
/// `k` that the linear-factor extractor finds are split off, the rest stay
/// as clusters.
pub fn zero_places(p: &UniPoly) -> Result<Vec<(Place, i64)>, GeometryError> {
    if p.is_zero() {
        return Err(GeometryError::ZeroFunction);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let z = Symbol::var("z");
    let mut out = Vec::new();
    for (sf, m) in p.squarefree()? {
        let poly = sf.clear_denominators(&z);
        let fac = factor_linear(&poly, std::slice::from_ref(&z))?;
        for f in fac.factors {
            if !f.poly.contains(&z) {
                continue;
            }
            let u = UniPoly::from_poly(&f.poly, &z)?;
            out.push((Place::from_poly(&u)?, (m * f.mult) as i64));
        }
    }
    Ok(out)
}

/// Finite map from places to nonzero integers; finite places pairwise
/// coprime. Equality is taken after common refinement, so an unsplit
/// cluster equals the sum of its pieces.
#[derive(Clone, Default)]
pub struct Divisor {
    map: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: Place, k: i64) -> Self {
        Self::from_terms(vec![(p, k)])
    }

    /// Sums the terms after refining overlapping clusters.
    pub fn from_terms(terms: Vec<(Place, i64)>) -> Self {
        let refined = refine(terms);
        let mut map = BTreeMap::new();
        for (p, k) in refined {
            *map.entry(p).or_insert(0) += k;
        }
        map.retain(|_, k| *k != 0);
        Divisor { map }
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.map.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.map.iter()
    }

    pub fn support(&self) -> Vec<Place> {
        self.map.keys().cloned().collect()
    }

    /// Degree with clusters weighted by their degree.
    pub fn degree(&self) -> i64 {
        self.map.iter().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.map.values().all(|k| *k >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut terms: Vec<(Place, i64)> = self.map.iter().map(|(p, k)| (p.clone(), *k)).collect();
        terms.extend(other.map.iter().map(|(p, k)| (p.clone(), *k)));
        Divisor::from_terms(terms)
    }

    pub fn scale(&self, c: i64) -> Divisor {
        Divisor::from_terms(self.map.iter().map(|(p, k)| (p.clone(), k * c)).collect())
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn render(&self, var: &Symbol) -> String {
        if self.map.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.map.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(&p.render(var));
        }
        out
    }
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map || self.sub(other).is_zero()
    }
}

impl Eq for Divisor {}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Symbol::var("t")))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits finite places by pairwise gcds until their moduli are pairwise
/// coprime or equal.
fn refine(mut terms: Vec<(Place, i64)>) -> Vec<(Place, i64)> {
    'again: loop {
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let (Some(qi), Some(qj)) = (terms[i].0.modulus(), terms[j].0.modulus()) else {
                    continue;
                };
                if qi == qj {
                    continue;
                }
                let g = qi.gcd(&qj);
                if g.is_constant() {
                    continue;
                }
                let (ki, kj) = (terms[i].1, terms[j].1);
                let mut pieces = Vec::new();
                for (q, k) in [(qi, ki), (qj, kj)] {
                    pieces.push((g.clone(), k));
                    let rest = q.div_exact(&g).expect("gcd divides");
                    if !rest.is_constant() {
                        pieces.push((rest, k));
                    }
                }
                terms.remove(j);
                terms.remove(i);
                for (q, k) in pieces {
                    terms.push((Place::from_poly(&q).expect("factor of a squarefree polynomial"), k));
                }
                continue 'again;
            }
        }
        return terms;
    }
}

/// Zeros minus poles of `f`, including the point at infinity.
pub fn principal_divisor(f: &UniRat) -> Result<Divisor, GeometryError> {
    if f.is_zero() {
        return Err(GeometryError::ZeroFunction);
    }
    let mut terms = zero_places(&f.num)?;
    terms.extend(zero_places(&f.den)?.into_iter().map(|(p, k)| (p, -k)));
    let inf = f.den.deg() as i64 - f.num.deg() as i64;
    if inf != 0 {
        terms.push((Place::Infinity, inf));
    }
    Ok(Divisor::from_terms(terms))
}

pub fn principal_divisor_ratfunc(f: &RatFunc, var: &Symbol) -> Result<Divisor, GeometryError> {
    principal_divisor(&UniRat::from_ratfunc(f, var)?)
}

/// Place-wise maximum, absent places counting as 0.
pub fn divisor_sup(ds: &[Divisor]) -> Result<Divisor, GeometryError> {
    if ds.is_empty() {
        return Err(GeometryError::Empty);
    }
    // refine all supports jointly
    let mut all: Vec<(Place, i64)> = Vec::new();
    for d in ds {
        all.extend(d.iter().map(|(p, _)| (p.clone(), 0)));
    }
    let places: Vec<Place> = {
        let mut v: Vec<Place> = refine(all).into_iter().map(|(p, _)| p).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut terms = Vec::new();
    for p in &places {
        let best = ds.iter().map(|d| coeff_refined(d, p)).max().expect("nonempty");
        terms.push((p.clone(), best));
    }
    Ok(Divisor::from_terms(terms))
}

/// Coefficient of `d` at a place that refines (divides) one of its places.
fn coeff_refined(d: &Divisor, p: &Place) -> i64 {
    let Some(q) = p.modulus() else {
        return d.coeff(p);
    };
    for (dp, k) in d.iter() {
        if let Some(dq) = dp.modulus() {
            if !q.gcd(&dq).is_constant() {
                return *k;
            }
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::text::rf;
    use proptest::prelude::*;

    fn t() -> Symbol {
        Symbol::var("t")
    }
    fn ur(s: &str) -> UniRat {
        UniRat::from_ratfunc(&rf(s), &t()).unwrap()
    }
    fn at(s: &str) -> Place {
        Place::Rational(rf(s))
    }
    fn cl(s: &str) -> Place {
        Place::from_poly(&ur(s).num).unwrap()
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_at(&ur("t^3/(t+1)"), &at("0")).unwrap(), 3);
        assert_eq!(ord_at(&ur("t^2+1"), &Place::Infinity).unwrap(), -2);
        let x = Symbol::var("x");
        let f = rf("a1*a2*x^2/(1-(a1+a2)*x)");
        assert_eq!(ord_at_ratfunc(&f, &x, &at("0")).unwrap(), 2);
        assert_eq!(ord_at(&ur("0"), &at("0")), Err(GeometryError::ZeroFunction));
    }

    #[test]
    fn cluster_non_uniformity_is_reported() {
        let q = cl("t^2 - 1");
        assert!(matches!(ord_at(&ur("t - 1"), &q), Err(GeometryError::SplitRequired { .. })));
        assert_eq!(ord_at(&ur("(t^2-1)^2/t"), &q).unwrap(), 2);
    }

    #[test]
    fn principal_divisor_examples() {
        assert_eq!(
            principal_divisor(&ur("t")).unwrap(),
            Divisor::from_terms(vec![(at("0"), 1), (Place::Infinity, -1)])
        );
        let d = principal_divisor(&ur("t^2+1")).unwrap();
        assert_eq!(d, Divisor::from_terms(vec![(cl("t^2+1"), 1), (Place::Infinity, -2)]));
        assert_eq!(d.to_string(), "(cluster: t^2 + 1) - 2*(inf)");
        let d = principal_divisor(&ur("(t+2)/(t+1)")).unwrap();
        assert_eq!(d, Divisor::from_terms(vec![(at("-2"), 1), (at("-1"), -1)]));
        // parameter roots split off
        let x = Symbol::var("x");
        let d = principal_divisor_ratfunc(&rf("(1-a1*x)*(1-a2*x)"), &x).unwrap();
        assert_eq!(d.support().len(), 3);
        assert_eq!(d.coeff(&at("1/a1")), 1);
    }

    #[test]
    fn sup_examples() {
        let p = at("0");
        let q = at("1");
        let d = Divisor::from_terms(vec![(p.clone(), 2), (q.clone(), -1)]);
        assert_eq!(divisor_sup(&[d.clone(), d.clone()]).unwrap(), d);
        let e = Divisor::from_terms(vec![(p.clone(), 1), (q.clone(), 1)]);
        assert_eq!(divisor_sup(&[d, e]).unwrap(), Divisor::from_terms(vec![(p.clone(), 2), (q, 1)]));
        let f = principal_divisor(&ur("t")).unwrap();
        assert_eq!(divisor_sup(&[f, Divisor::zero()]).unwrap(), Divisor::point(p, 1));
        assert_eq!(divisor_sup(&[]), Err(GeometryError::Empty));
    }

    #[test]
    fn overlapping_clusters_refine() {
        let d = Divisor::from_terms(vec![(cl("t^2-1"), 1), (at("1"), 2)]);
        assert_eq!(d, Divisor::from_terms(vec![(at("-1"), 1), (at("1"), 3)]));
        let d = Divisor::from_terms(vec![(cl("(t^2+1)*(t^2+2)"), 1), (cl("(t^2+1)*(t^2+3)"), -1)]);
        assert_eq!(d, Divisor::from_terms(vec![(cl("t^2+2"), 1), (cl("t^2+3"), -1)]));
    }

    fn arb_unirat() -> impl Strategy<Value = UniRat> {
        let factor = prop_oneof![
            (-4i64..5).prop_map(|c| format!("(t - {c})")),
            (1i64..4).prop_map(|c| format!("(t^2 + {c})")),
            (1i64..3, -2i64..3).prop_map(|(c, d)| format!("({c}*t^3 + t + {d})")),
        ];
        (
            proptest::collection::vec(factor.clone(), 0..4),
            proptest::collection::vec(factor, 0..4),
            1i64..5,
        )
            .prop_map(|(n, d, k)| {
                let num = if n.is_empty() { "1".to_string() } else { n.join("*") };
                let den = if d.is_empty() { "1".to_string() } else { d.join("*") };
                ur(&format!("{k}*{num}/({den})"))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn principal_degree_is_zero(f in arb_unirat()) {
            prop_assert_eq!(principal_divisor(&f).unwrap().degree(), 0);
        }

        #[test]
        fn principal_is_multiplicative(f in arb_unirat(), g in arb_unirat()) {
            let lhs = principal_divisor(&f.mul(&g)).unwrap();
            let rhs = principal_divisor(&f).unwrap().add(&principal_divisor(&g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sup_laws(f in arb_unirat(), g in arb_unirat(), h in arb_unirat()) {
            let (a, b, c) = (principal_divisor(&f).unwrap(), principal_divisor(&g).unwrap(), principal_divisor(&h).unwrap());
            let ab = divisor_sup(&[a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(&ab, &divisor_sup(&[b.clone(), a.clone()]).unwrap());
            prop_assert_eq!(divisor_sup(&[ab.clone(), c.clone()]).unwrap(), divisor_sup(&[a.clone(), divisor_sup(&[b.clone(), c]).unwrap()]).unwrap());
            prop_assert_eq!(divisor_sup(&[a.clone(), a.clone()]).unwrap(), a.clone());
            prop_assert!(ab.sub(&a).is_effective());
            prop_assert!(ab.sub(&b).is_effective());
        }

        #[test]
        fn ord_matches_divisor(f in arb_unirat(), c in -4i64..5) {
            let d = principal_divisor(&f).unwrap();
            let p = Place::Rational(RatFunc::constant(Rational::from_integer(c.into())));
            prop_assert_eq!(ord_at(&f, &p).unwrap(), d.coeff(&p));
        }
    }
}

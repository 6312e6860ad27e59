//! Normalized quotients of multivariate polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use super::rational::Rational;
use super::symbol::Symbol;
use super::ArithError;

/// `num / den` with `gcd(num, den) = 1` and `den` having coprime integer
/// coefficients and a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let c = den.rational_content();
        if c.is_one() {
            RatFunc { num, den }
        } else {
            let inv = c.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Builds a quotient whose parts are already coprime (only the
    /// denominator scale is normalized).
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        let c = den.rational_content();
        RatFunc { num: num.scale(&c.recip()), den: den.scale(&c.recip()) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_poly(Poly::var(s))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    /// True when only parameters occur, i.e. the value lies in `k`.
    pub fn is_scalar(&self) -> bool {
        self.symbols().iter().all(Symbol::is_param)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(RatFunc::from_coprime(self.num.pow(e as u32), self.den.pow(e as u32)))
        } else {
            self.inv()?.pow(-e)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, s: &Symbol) -> Self {
        if !self.contains(s) {
            return RatFunc::zero();
        }
        let dn = self.num.derivative(s);
        if self.den.is_one() {
            return RatFunc::from_poly(dn);
        }
        let dd = self.den.derivative(s);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalize(top, self.den.pow(2))
    }

    /// Simultaneous substitution of rational functions for symbols.
    pub fn substitute(&self, map: &BTreeMap<Symbol, RatFunc>) -> Result<Self, ArithError> {
        if !self.symbols().iter().any(|s| map.contains_key(s)) {
            return Ok(self.clone());
        }
        // Homogenize both parts with the same denominator powers so that the
        // common denominators cancel.
        let mut bounds: BTreeMap<Symbol, u32> = BTreeMap::new();
        for s in map.keys() {
            let d = self.num.degree_in(s).max(self.den.degree_in(s));
            if d > 0 {
                bounds.insert(s.clone(), d);
            }
        }
        let mut cache: BTreeMap<(Symbol, bool, u32), Poly> = BTreeMap::new();
        let mut power = |s: &Symbol, numer: bool, e: u32| -> Poly {
            cache
                .entry((s.clone(), numer, e))
                .or_insert_with(|| {
                    let f = &map[s];
                    if numer { f.num.pow(e) } else { f.den.pow(e) }
                })
                .clone()
        };
        let mut eval = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (m, c) in p.terms() {
                let mut term = Poly::constant(c.clone());
                let mut rest = Vec::new();
                for (s, e) in m.factors() {
                    if map.contains_key(s) {
                        term = &term * &power(s, true, *e);
                    } else {
                        rest.push((s.clone(), *e));
                    }
                }
                for (s, b) in &bounds {
                    let e = m.exponent(s);
                    if b - e > 0 {
                        term = &term * &power(s, false, b - e);
                    }
                }
                let rest = super::poly::Monomial::from_pairs(rest);
                acc = &acc + &term.mul_monomial(&rest);
            }
            acc
        };
        let n = eval(&self.num);
        let d = eval(&self.den);
        RatFunc::new(n, d).map_err(|_| ArithError::PoleInSubstitution)
    }

    pub fn substitute_one(&self, s: &Symbol, value: &RatFunc) -> Result<Self, ArithError> {
        let mut map = BTreeMap::new();
        map.insert(s.clone(), value.clone());
        self.substitute(&map)
    }

    pub fn rename(&self, map: &dyn Fn(&Symbol) -> Symbol) -> Self {
        RatFunc::from_coprime(self.num.rename(map), self.den.rename(map))
    }

    /// Order of vanishing along the hyperplane `s = 0`.
    pub fn order_in(&self, s: &Symbol) -> i64 {
        assert!(!self.is_zero());
        self.num.low_degree_in(s) as i64 - self.den.low_degree_in(s) as i64
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::from_coprime(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFunc::from_coprime(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let bd = self.den.div_exact(&g).expect("gcd divides");
        let dd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &bd);
        RatFunc::normalize(num, &self.den * &dd)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_ratfunc(self))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_ratfunc(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use proptest::prelude::*;

    fn t() -> RatFunc {
        RatFunc::var(Symbol::var("t"))
    }
    fn x() -> RatFunc {
        RatFunc::var(Symbol::var("x"))
    }
    fn a(i: usize) -> RatFunc {
        RatFunc::var(Symbol::param(&format!("a{i}")))
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn normalize_examples() {
        let f = RatFunc::new((&t() * &c(2)).num().clone(), Poly::from_int(4)).unwrap();
        assert_eq!(f, t().scale(&rat(1, 2)));
        let tt = t().num().clone();
        let f = RatFunc::new(&(&tt * &tt) - &Poly::one(), &tt - &Poly::one()).unwrap();
        assert_eq!(f, &t() + &c(1));
    }

    #[test]
    fn normalize_face_coordinate() {
        // (1 - a1 x)(1 - a2 x) - (1 - (a1 + a2) x) over 1 - (a1 + a2) x
        let one = c(1);
        let l1 = &one - &(&a(1) * &x());
        let l2 = &one - &(&a(2) * &x());
        let l3 = &one - &(&(&a(1) + &a(2)) * &x());
        let lhs = &(&(&l1 * &l2) - &l3) / &l3;
        let expect = &(&(&a(1) * &a(2)) * &(&x() * &x())) / &l3;
        assert_eq!(lhs, expect);
        // expanded by hand: numerator a1*a2*x^2
        assert_eq!(lhs.num().clone().primitive_rational(), (&(&a(1) * &a(2)) * &(&x() * &x())).num().clone());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(ArithError::ZeroDenominator));
        assert!(c(0).inv().is_err());
    }

    #[test]
    fn derivative_examples() {
        let ts = Symbol::var("t");
        assert_eq!((&t() * &t()).derivative(&ts), &t() * &c(2));
        let one = c(1);
        let p = &(&one - &(&a(1) * &x())) * &(&one - &(&a(2) * &x()));
        let expect = -&(&x() * &(&one - &(&a(2) * &x())));
        assert_eq!(p.derivative(&Symbol::param("a1")), expect);
        let f = &(&t() + &c(2)) / &(&t() + &c(1));
        let expect = -&(&one / &(&(&t() + &c(1)) * &(&t() + &c(1))));
        assert_eq!(f.derivative(&ts), expect);
    }

    #[test]
    fn denominators_are_normalized() {
        let f = &c(1) / &(&c(-2) * &t());
        assert_eq!(f.den(), t().num());
        assert_eq!(f.num().constant_value(), Some(rat(-1, 2)));
    }

    #[test]
    fn simultaneous_substitution() {
        let ts = Symbol::var("t");
        let xs = Symbol::var("x");
        let f = &x() / &t();
        let mut map = BTreeMap::new();
        map.insert(xs.clone(), t());
        map.insert(ts.clone(), x());
        assert_eq!(f.substitute(&map).unwrap(), &t() / &x());
        let g = &c(1) / &(&t() - &c(1));
        assert_eq!(g.substitute_one(&ts, &c(1)), Err(ArithError::PoleInSubstitution));
        let h = &(&t() * &t()) / &(&t() + &c(1));
        let s = &c(1) / &x();
        let expect = &c(1) / &(&x() * &(&c(1) + &x()));
        assert_eq!(h.substitute_one(&ts, &s).unwrap(), expect);
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        let atom = prop::sample::select(vec![t(), x(), a(1), a(2), c(1), c(2), c(-3)]);
        let poly = prop::collection::vec((atom.clone(), atom, -3i64..4), 1..4).prop_map(|terms| {
            terms.iter().fold(RatFunc::zero(), |acc, (u, v, k)| &acc + &(&(u * v) * &c(*k)))
        });
        (poly.clone(), poly).prop_map(|(n, d)| if d.is_zero() { n } else { &n / &d })
    }

    fn is_normalized(f: &RatFunc) -> bool {
        RatFunc::new(f.num().clone(), f.den().clone()).as_ref() == Ok(f)
            && crate::arith::gcd::gcd(f.num(), f.den()).is_constant()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn field_laws(f in arb_ratfunc(), g in arb_ratfunc()) {
            let sum = &f + &g;
            prop_assert_eq!(&(&sum - &g), &f);
            prop_assert!(is_normalized(&sum));
            if !g.is_zero() {
                let prod = &f * &g;
                prop_assert!(is_normalized(&prod));
                prop_assert_eq!(prod.checked_div(&g).unwrap(), f);
            }
        }
    }
}

//! Dense univariate polynomials over the base field `k` (coefficients are
//! scalar [`RatFunc`]s) and univariate rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::symbol::Symbol;
use super::ArithError;

/// `sum_i coeffs[i] * t^i`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<RatFunc>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    /// The generator `t`.
    pub fn gen() -> Self {
        Self::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// `t - c`.
    pub fn linear_root(c: &RatFunc) -> Self {
        Self::new(vec![-c, RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![RatFunc::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: c }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let dd = d.deg();
        let inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![RatFunc::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &(&f * dj);
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("nonzero divisor").1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() { other.monic() } else { self.monic() };
        }
        if self.coeffs.iter().chain(&other.coeffs).any(|c| c.constant_value().is_none()) {
            // fraction-free over the parameter ring
            let z = Symbol::var("_gcd");
            let g = super::gcd::gcd(&self.clear_denominators(&z), &other.clear_denominators(&z));
            return UniPoly::from_poly(&g, &z).expect("parameters only").monic();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&super::rational::int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Coefficients reversed: `t^deg * self(1/t)`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(deg + 1, RatFunc::zero());
        c.reverse();
        UniPoly::new(c)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's squarefree decomposition of a nonzero polynomial: monic pairwise
    /// coprime squarefree factors `f_i` (nonconstant) with multiplicities, such
    /// that `self = lc * prod f_i^m_i`.
    pub fn squarefree(&self) -> Result<Vec<(UniPoly, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            let nb = b.div_exact(&a).expect("gcd divides");
            let c = d.div_exact(&a).expect("gcd divides");
            d = &c - &nb.derivative();
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    /// Reads `p` as a polynomial in `var` with scalar coefficients.
    pub fn from_poly(p: &Poly, var: &Symbol) -> Result<Self, ArithError> {
        let coeffs: Vec<RatFunc> = p.to_univariate(var).into_iter().map(RatFunc::from_poly).collect();
        if coeffs.iter().any(|c| !c.is_scalar()) {
            return Err(ArithError::NotUnivariate(var.to_string()));
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_ratfunc(&self, var: &Symbol) -> RatFunc {
        let t = RatFunc::var(var.clone());
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &t) + c;
        }
        acc
    }

    /// Multivariate polynomial proportional to `self`, with denominators of
    /// the scalar coefficients cleared.
    pub fn clear_denominators(&self, var: &Symbol) -> Poly {
        let mut l = Poly::one();
        for c in &self.coeffs {
            let g = super::gcd::gcd(&l, c.den());
            l = &l * &c.den().div_exact(&g).expect("gcd divides");
        }
        let lr = RatFunc::from_poly(l);
        let polys: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &lr;
                debug_assert!(v.is_polynomial());
                v.num().clone()
            })
            .collect();
        Poly::from_univariate(&polys, var)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc(&Symbol::var("t")))
    }
}

/// A rational function of one variable over `k`: `num / den`, coprime, `den`
/// monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniRat {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl UniRat {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(UniRat { num, den: UniPoly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd"));
        let inv = den.lc().inv()?;
        Ok(UniRat { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRat { num: p, den: UniPoly::one() }
    }

    /// Reads a rational function in `var` whose other symbols are parameters.
    pub fn from_ratfunc(f: &RatFunc, var: &Symbol) -> Result<Self, ArithError> {
        let num = UniPoly::from_poly(f.num(), var)?;
        let den = UniPoly::from_poly(f.den(), var)?;
        // coprime in Q[params][var] implies coprime over k
        let inv = den.lc().inv()?;
        Ok(UniRat { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn to_ratfunc(&self, var: &Symbol) -> RatFunc {
        &self.num.to_ratfunc(var) / &self.den.to_ratfunc(var)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<RatFunc> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`.
    pub fn degree_balance(&self) -> i64 {
        self.num.deg() as i64 - self.den.deg() as i64
    }

    /// Degree of the map to the projective line.
    pub fn map_degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn eval(&self, x: &RatFunc) -> Result<RatFunc, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::PoleInSubstitution);
        }
        Ok(&self.num.eval(x) / &d)
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        UniRat::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn sub_scalar(&self, c: &RatFunc) -> Self {
        let num = &self.num - &self.den.scale(c);
        UniRat::new(num, self.den.clone()).expect("nonzero")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        UniRat::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        UniRat::new(num, &self.den * &rhs.den).expect("nonzero")
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        UniRat::new(self.den.clone(), self.num.clone())
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

    #[test]
    fn division_and_gcd() {
        let p = up(&[-1, 0, 1]); // t^2 - 1
        let d = up(&[-1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(q, up(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&up(&[1, 1])), up(&[1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        // t^3 + 2t^2 + t = t (t+1)^2
        let p = up(&[0, 1, 2, 1]);
        let sf = p.squarefree().unwrap();
        assert_eq!(sf, vec![(up(&[0, 1]), 1), (up(&[1, 1]), 2)]);
        let q = up(&[1, 0, 1]);
        assert_eq!(q.squarefree().unwrap(), vec![(q.clone(), 1)]);
        assert!(UniPoly::zero().squarefree().is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = up(&[-2, 0, 1]);
        let b = up(&[1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn unirat_reads_parameter_coefficients() {
        let ts = Symbol::var("t");
        let a1 = RatFunc::var(Symbol::param("a1"));
        let f = &RatFunc::var(ts.clone()) / &a1;
        let u = UniRat::from_ratfunc(&f, &ts).unwrap();
        assert!(u.den.is_one());
        assert_eq!(u.num.coeff(1), &k(1) / &a1);
        assert_eq!(u.to_ratfunc(&ts), f);
        assert_eq!(u.eval(&int(2).into()).unwrap(), &k(2) / &a1);
    }
}

impl From<num_rational::BigRational> for RatFunc {
    fn from(r: num_rational::BigRational) -> Self {
        RatFunc::constant(r)
    }
}

//! The residue algebra `k[θ]/(q)` of a (possibly reducible) closed point,
//! with the trace down to `k`.

use std::fmt;
use std::sync::Arc;

use super::gcd::subresultant_inverse;
use super::ratfunc::RatFunc;
use super::symbol::Symbol;
use super::upoly::UniPoly;
use super::ArithError;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct QuotientRing {
    modulus: UniPoly,
    power_sums: Vec<RatFunc>,
}

impl QuotientRing {
    /// `q` must be squarefree of degree at least 1; it is made monic.
    pub fn new(q: &UniPoly) -> Result<Arc<Self>, ArithError> {
        if q.degree().is_none_or(|d| d == 0) {
            return Err(ArithError::BadModulus("modulus must have positive degree".into()));
        }
        let q = q.monic();
        if !q.is_squarefree() {
            return Err(ArithError::BadModulus("modulus is not squarefree".into()));
        }
        let power_sums = newton_power_sums(&q);
        Ok(Arc::new(QuotientRing { modulus: q, power_sums }))
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }
}

/// Power sums `p_0..p_{d-1}` of the roots of a monic polynomial.
fn newton_power_sums(q: &UniPoly) -> Vec<RatFunc> {
    let d = q.deg();
    // e_i = (-1)^i * coeff(d - i)
    let e: Vec<RatFunc> = (0..=d)
        .map(|i| {
            let c = q.coeff(d - i);
            if i % 2 == 0 { c } else { -&c }
        })
        .collect();
    let mut p = vec![RatFunc::from_int(d as i64)];
    for k in 1..d {
        let mut acc = RatFunc::zero();
        for i in 1..k {
            let term = &e[i] * &p[k - i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let last = e[k].scale(&super::rational::int(k as i64));
        acc = if k % 2 == 1 { &acc + &last } else { &acc - &last };
        p.push(acc);
    }
    p
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuotientElem {
    ring: Arc<QuotientRing>,
    rep: UniPoly,
}

impl QuotientElem {
    pub fn new(ring: &Arc<QuotientRing>, p: &UniPoly) -> Self {
        let rep = if p.degree().is_some_and(|d| d >= ring.degree()) { p.rem(&ring.modulus) } else { p.clone() };
        QuotientElem { ring: ring.clone(), rep }
    }

    pub fn scalar(ring: &Arc<QuotientRing>, c: RatFunc) -> Self {
        Self::new(ring, &UniPoly::constant(c))
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::zero())
    }

    pub fn one(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::one())
    }

    /// The class of the generator θ.
    pub fn theta(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::gen())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// The value as a scalar when the representative is constant.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: &self.rep + &o.rep }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: &self.rep - &o.rep }
    }

    pub fn neg(&self) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: -&self.rep }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.ring, &(&self.rep * &o.rep))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        QuotientElem { ring: self.ring.clone(), rep: self.rep.scale(c) }
    }

    /// Inverse, or the nontrivial common factor with the modulus when the
    /// element is a zero divisor.
    pub fn inv(&self) -> Result<Self, UniPoly> {
        if self.rep.is_zero() {
            return Err(self.ring.modulus.clone());
        }
        if self.rep.coeffs().iter().chain(self.ring.modulus.coeffs()).any(|c| c.constant_value().is_none()) {
            return self.inv_fraction_free();
        }
        let (g, s, _) = self.rep.ext_gcd(&self.ring.modulus);
        if g.is_one() {
            Ok(Self::new(&self.ring, &s))
        } else {
            Err(g)
        }
    }

    fn inv_fraction_free(&self) -> Result<Self, UniPoly> {
        let z = Symbol::var("_inv");
        let a = self.rep.clear_denominators(&z);
        // a = scale * rep
        let scale = a.to_univariate(&z).last().cloned().map(RatFunc::from_poly).expect("nonzero")
            .checked_div(&self.rep.lc())
            .expect("nonzero leading coefficient");
        let q = self.ring.modulus.clear_denominators(&z);
        match subresultant_inverse(&a, &q, &z) {
            Ok((s, g)) => {
                let factor = scale.checked_div(&RatFunc::from_poly(g)).expect("nonzero resultant");
                let s = UniPoly::new(s.into_iter().map(|c| &RatFunc::from_poly(c) * &factor).collect());
                Ok(Self::new(&self.ring, &s))
            }
            Err(r) => Err(UniPoly::new(r.into_iter().map(RatFunc::from_poly).collect()).monic()),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.rep.gcd(&self.ring.modulus).is_one()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates a polynomial at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> Self {
        let mut acc = Self::zero(&self.ring);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(&self.ring, c.clone()));
        }
        acc
    }

    /// Trace of multiplication by this element on `k[θ]/(q)` as a
    /// `k`-vector space.
    pub fn trace(&self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (c, p) in self.rep.coeffs().iter().zip(&self.ring.power_sums) {
            acc = &acc + &(c * p);
        }
        acc
    }
}

impl fmt::Debug for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {}",
            self.rep.to_ratfunc(&super::symbol::Symbol::var("theta")),
            self.ring.modulus.to_ratfunc(&super::symbol::Symbol::var("theta"))
        )
    }
}

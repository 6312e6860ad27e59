//! Partial factorization: contents, squarefree decomposition and extraction
//! of factors that are linear in a chosen variable. No full irreducible
//! factorization is attempted; what remains is reported as a block.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::{content_in, gcd};
use super::poly::{Monomial, Poly};
use super::rational::Rational;
use super::symbol::Symbol;
use super::ArithError;

/// Upper bound on linear-factor candidates tried per polynomial.
const MAX_CANDIDATES: usize = 20_000;

/// Squarefree decomposition of `p` viewed as univariate in `main` over the
/// fraction field of the remaining symbols. Factors are primitive in `main`,
/// pairwise coprime and squarefree; their product with multiplicities equals
/// `p` up to a factor not involving `main`.
pub fn squarefree_decompose(p: &Poly, main: &Symbol) -> Result<Vec<(Poly, u32)>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if !p.contains(main) {
        return Ok(Vec::new());
    }
    let c = content_in(p, main);
    let f = p.div_exact(&c).expect("content divides");
    let df = f.derivative(main);
    let a0 = gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c1 = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c1 - &b.derivative(main);
    let mut out = Vec::new();
    let mut i = 1;
    while b.contains(main) {
        let a = gcd(&b, &d);
        if a.contains(main) {
            out.push((a.primitive_rational(), i));
        }
        let nb = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &nb.derivative(main);
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// One factor of a partial factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub mult: u32,
    /// A variable in which the factor has degree exactly one, if any of the
    /// requested variables qualifies.
    pub linear_in: Option<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.mult);
        }
        acc
    }
}

/// Factors `p` into monomials, factors linear in one of `vars` (tried in
/// order), and leftover squarefree blocks. `p = unit * prod poly^mult`.
pub fn factor_linear(p: &Poly, vars: &[Symbol]) -> Result<Factorization, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let unit = p.rational_content();
    let mut acc: Vec<(Poly, u32)> = Vec::new();
    factor_into(&p.primitive_rational(), vars, 1, &mut acc)?;
    // merge equal factors
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (f, m) in acc {
        match merged.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += m,
            None => merged.push((f, m)),
        }
    }
    merged.sort();
    let factors = merged
        .into_iter()
        .map(|(poly, mult)| {
            let linear_in = vars.iter().find(|v| poly.degree_in(v) == 1).cloned();
            Factor { poly, mult, linear_in }
        })
        .collect();
    let mut out = Factorization { unit, factors };
    // fix the unit so that the expansion is exact
    let e = out.expand();
    let ratio = &p.leading_coeff() / &e.leading_coeff();
    out.unit = &out.unit * &ratio;
    Ok(out)
}

fn factor_into(p: &Poly, vars: &[Symbol], mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<(), ArithError> {
    if p.is_constant() {
        return Ok(());
    }
    let mc = p.monomial_content();
    let p = if mc.is_one() {
        p.clone()
    } else {
        for (s, e) in mc.factors() {
            out.push((Poly::var(s.clone()), e * mult));
        }
        p.div_exact(&Poly::monomial(Rational::one(), mc.clone())).expect("monomial content")
    };
    if p.is_constant() {
        return Ok(());
    }
    // choose a main variable, preferring the requested ones
    let syms = p.symbols();
    let main = vars
        .iter()
        .find(|v| syms.contains(v))
        .cloned()
        .unwrap_or_else(|| syms.iter().next().expect("non-constant").clone());
    let c = content_in(&p, &main);
    if !c.is_constant() {
        factor_into(&c, vars, mult, out)?;
    }
    let h = p.div_exact(&c).expect("content divides").primitive_rational();
    for (g, m) in squarefree_decompose(&h, &main)? {
        split_squarefree(&g, vars, m * mult, out)?;
    }
    Ok(())
}

/// Splits a squarefree polynomial that is primitive in some variable.
fn split_squarefree(g: &Poly, vars: &[Symbol], mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<(), ArithError> {
    let mut g = g.primitive_rational();
    'outer: loop {
        if g.is_constant() {
            return Ok(());
        }
        for y in vars.iter().filter(|y| g.contains(y)) {
            // content with respect to y may hide further structure
            let cy = content_in(&g, y);
            if !cy.is_constant() {
                let rest = g.div_exact(&cy).expect("content divides");
                split_squarefree(&cy, vars, mult, out)?;
                g = rest.primitive_rational();
                continue 'outer;
            }
            if g.degree_in(y) == 1 {
                out.push((g.clone(), mult));
                return Ok(());
            }
            if let Some(l) = find_linear_factor(&g, y)? {
                out.push((l.clone(), mult));
                g = g.div_exact(&l).expect("factor divides").primitive_rational();
                continue 'outer;
            }
        }
        out.push((g, mult));
        return Ok(());
    }
}

/// Searches for a factor `c1*y + c0` of `g` with `c1 | lc_y(g)` and
/// `c0 | tc_y(g)`.
fn find_linear_factor(g: &Poly, y: &Symbol) -> Result<Option<Poly>, ArithError> {
    let co = g.to_univariate(y);
    let lc = co.last().expect("non-empty").clone();
    let tc = co.iter().find(|c| !c.is_zero()).expect("non-empty").clone();
    if co[0].is_zero() {
        // y divides g; caller removes monomial content first
        return Ok(Some(Poly::var(y.clone())));
    }
    let dl = divisors(&lc)?;
    let dt = divisors(&tc)?;
    if dl.len().saturating_mul(dt.len()).saturating_mul(2) > MAX_CANDIDATES {
        return Ok(None);
    }
    let yp = Poly::var(y.clone());
    for c1 in &dl {
        for c0 in &dt {
            for sign in [1i64, -1] {
                let cand = &(c1 * &yp) + &c0.scale(&super::rational::int(sign));
                if g.div_exact(&cand).is_some() {
                    return Ok(Some(cand.primitive_rational()));
                }
            }
        }
    }
    Ok(None)
}

/// Divisors of `p` (up to sign) generated by its partial factorization and
/// the integer factorization of its content.
fn divisors(p: &Poly) -> Result<Vec<Poly>, ArithError> {
    let f = factor_linear(p, &p.symbols().into_iter().collect::<Vec<_>>())?;
    let mut out = vec![Poly::one()];
    let unit = f.unit.abs();
    if unit.is_integer() {
        for d in integer_divisors(unit.numer()) {
            if d.is_one() {
                continue;
            }
            let dp = Poly::constant(Rational::from_integer(d));
            out.push(dp);
        }
    }
    for fac in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (fac.mult as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..fac.mult {
                cur = &cur * &fac.poly;
                next.push(cur.clone());
            }
        }
        out = next;
        if out.len() > MAX_CANDIDATES {
            break;
        }
    }
    Ok(out)
}

/// Positive divisors of `n` found by trial division; large cofactors are
/// treated as prime.
fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    if m.is_zero() {
        return vec![BigInt::one()];
    }
    let mut d = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &d * &d <= m && d <= limit {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = &cur * &p;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[allow(dead_code)]
fn small(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[allow(dead_code)]
fn monomial_poly(m: &Monomial) -> Poly {
    Poly::monomial(Rational::one(), m.clone())
}

#[allow(dead_code)]
fn is_even(n: &BigInt) -> bool {
    n.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Poly {
        Poly::var(Symbol::var(s))
    }
    fn a(s: &str) -> Poly {
        Poly::var(Symbol::param(s))
    }
    fn c(n: i64) -> Poly {
        Poly::from_int(n)
    }

    #[test]
    fn squarefree_examples() {
        let t = v("t");
        let ts = Symbol::var("t");
        let p = &(&t.pow(3) + &(&c(2) * &t.pow(2))) + &t;
        let sf = squarefree_decompose(&p, &ts).unwrap();
        assert_eq!(sf, vec![(t.clone(), 1), (&t + &c(1), 2)]);
        let q = &t.pow(2) + &c(1);
        assert_eq!(squarefree_decompose(&q, &ts).unwrap(), vec![(q.clone(), 1)]);
        assert_eq!(squarefree_decompose(&Poly::zero(), &ts), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn squarefree_keeps_parameter_factor_whole() {
        let x = v("x");
        let xs = Symbol::var("x");
        let p = &(&c(1) - &(&a("a1") * &x)) * &(&c(1) - &(&a("a2") * &x));
        let sf = squarefree_decompose(&p, &xs).unwrap();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].1, 1);
        assert_eq!(sf[0].0, p.primitive_rational());
    }

    #[test]
    fn linear_extraction_splits_parameter_roots() {
        let x = v("x");
        let xs = Symbol::var("x");
        let l1 = &c(1) - &(&a("a1") * &x);
        let l2 = &c(1) - &(&a("a2") * &x);
        let f = factor_linear(&(&l1 * &l2), &[xs.clone()]).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|fa| fa.linear_in.as_ref() == Some(&xs) && fa.mult == 1));
        assert_eq!(f.expand(), &l1 * &l2);
    }

    #[test]
    fn linear_extraction_over_rationals() {
        let t = v("t");
        let ts = Symbol::var("t");
        // (2t - 3)^2 (t^2 + 1) (t + 5)
        let p = &(&(&(&c(2) * &t) - &c(3)).pow(2) * &(&t.pow(2) + &c(1))) * &(&t + &c(5));
        let f = factor_linear(&p, &[ts]).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 3);
        let quad = f.factors.iter().find(|x| x.linear_in.is_none()).unwrap();
        assert_eq!(quad.poly, &t.pow(2) + &c(1));
    }

    #[test]
    fn surface_face_factors() {
        let (u, w) = (v("u"), v("v"));
        let (us, vs) = (Symbol::var("u"), Symbol::var("v"));
        let p = &(&(&u + &w) + &c(2)) * &(&c(1) - &(&a("a1") * &u));
        let f = factor_linear(&p, &[vs.clone(), us.clone()]).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 2);
        let lin_v = f.factors.iter().filter(|x| x.linear_in.as_ref() == Some(&vs)).count();
        assert_eq!(lin_v, 1);
    }

    #[test]
    fn integer_divisor_enumeration() {
        let d: Vec<i64> = integer_divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn squarefree_reconstructs(roots in proptest::collection::vec((-4i64..5, 1u32..3), 1..4), k in 1i64..4) {
            let t = v("t");
            let ts = Symbol::var("t");
            let mut p = c(k);
            for (r, m) in &roots {
                p = &p * &(&t - &c(*r)).pow(*m);
            }
            let sf = squarefree_decompose(&p, &ts).unwrap();
            let mut prod = Poly::one();
            for (f, m) in &sf {
                prod = &prod * &f.pow(*m);
            }
            // equal up to a factor free of t
            prop_assert!(p.div_exact(&prod).is_some_and(|q| !q.contains(&ts)));
            for (i, (f, _)) in sf.iter().enumerate() {
                let df = f.derivative(&ts);
                prop_assert!(!gcd(f, &df).contains(&ts));
                for (g, _) in &sf[i + 1..] {
                    prop_assert!(!gcd(f, g).contains(&ts));
                }
            }
        }
    }
}

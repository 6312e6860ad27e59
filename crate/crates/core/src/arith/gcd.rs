//! Multivariate polynomial gcd over Q: recursive content splitting and a
//! primitive pseudo-remainder sequence in one chosen variable.

use super::poly::Poly;
use super::rational::{int, Rational};
use super::symbol::Symbol;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Greatest common divisor, normalized to coprime integer coefficients with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_rational();
    }
    if b.is_zero() {
        return a.primitive_rational();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let gm = Poly::monomial(num_traits::One::one(), ma.gcd(&mb));
    let a = a.div_exact(&Poly::monomial(num_traits::One::one(), ma)).expect("monomial content");
    let b = b.div_exact(&Poly::monomial(num_traits::One::one(), mb)).expect("monomial content");
    let core = gcd_no_monomial(&a, &b);
    (&core * &gm).primitive_rational()
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(it: I) -> Poly {
    let mut g = Poly::zero();
    for p in it {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (a, b) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if b.div_exact(a).is_some() {
        return a.primitive_rational();
    }
    let sa = a.symbols();
    let sb = b.symbols();
    // A variable present in only one argument can be eliminated through
    // the content with respect to it.
    if let Some(v) = sa.iter().find(|s| !sb.contains(s)) {
        let c = content_in(a, v);
        return gcd(&c, b);
    }
    if let Some(v) = sb.iter().find(|s| !sa.contains(s)) {
        let c = content_in(b, v);
        return gcd(a, &c);
    }
    if coprime_by_evaluation(a, b, &sa) {
        return Poly::one();
    }
    let v = sa
        .iter()
        .min_by_key(|s| a.degree_in(s).max(b.degree_in(s)))
        .expect("non-constant polynomial has a symbol")
        .clone();
    let ua = a.to_univariate(&v);
    let ub = b.to_univariate(&v);
    let ca = gcd_many(ua.iter());
    let cb = gcd_many(ub.iter());
    let c = gcd(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let g = primitive_prs(pa, pb);
    let g = Poly::from_univariate(&g, &v);
    (&g * &c).primitive_rational()
}

/// Sufficient test for `gcd(a, b) = 1`. For each symbol `v` the other
/// symbols are specialized at a point keeping `lc_v(a)` nonzero; a common
/// factor keeps its degree in `v` there, so coprime images in every `v` rule
/// it out.
fn coprime_by_evaluation(a: &Poly, b: &Poly, syms: &BTreeSet<Symbol>) -> bool {
    for v in syms {
        let others: Vec<&Symbol> = syms.iter().filter(|s| *s != v).collect();
        let lc = a.to_univariate(v).pop().expect("nonzero");
        let Some(point) = (0..8).map(|k| eval_point(&others, k)).find(|pt| !eval_all(&lc, pt).is_zero()) else {
            return false;
        };
        let ua = univariate_image(a, v, &point);
        let ub = univariate_image(b, v, &point);
        if rational_univariate_gcd_degree(ua, ub) > 0 {
            return false;
        }
    }
    true
}

fn eval_point<'a>(syms: &[&'a Symbol], k: i64) -> Vec<(&'a Symbol, Rational)> {
    // distinct small values, shifted on each retry
    syms.iter().enumerate().map(|(j, s)| (*s, int(3 + 7 * k + 2 * j as i64 + (j as i64 * j as i64) % 5))).collect()
}

fn eval_all(p: &Poly, point: &[(&Symbol, Rational)]) -> Poly {
    point.iter().fold(p.clone(), |q, (s, x)| q.eval_symbol(s, x))
}

fn univariate_image(p: &Poly, v: &Symbol, point: &[(&Symbol, Rational)]) -> Vec<Rational> {
    eval_all(p, point)
        .to_univariate(v)
        .iter()
        .map(|c| c.constant_value().expect("all other symbols evaluated"))
        .collect()
}

fn rational_univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let strip = |x: &mut Vec<Rational>| {
        while x.last().is_some_and(|c| c.is_zero()) {
            x.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let q = &a[a.len() - 1] / &b[b.len() - 1];
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[off + j] = &a[off + j] - &(&q * bj);
            }
            a.pop();
            strip(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Content of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: &Symbol) -> Poly {
    gcd_many(p.to_univariate(v).iter())
}

/// Primitive part of `p` with respect to `v` (content removed).
pub fn primitive_part_in(p: &Poly, v: &Symbol) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive_rational()
}

fn divide_coeffs(u: &[Poly], c: &Poly) -> Vec<Poly> {
    u.iter().map(|x| x.div_exact(c).expect("content divides coefficient")).collect()
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
pub(crate) fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = j + dr - db;
            r[idx] = &r[idx] - &(&lr * bj);
        }
        trim(&mut r);
    }
    r
}

/// Pseudo-division `lc(b)^(deg a - deg b + 1) a = quot * b + rem`.
fn pdiv(a: &[Poly], b: &[Poly]) -> (Vec<Poly>, Vec<Poly>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let steps = r.len() - db;
    let mut q = vec![Poly::zero(); steps];
    for _ in 0..steps {
        for x in q.iter_mut() {
            *x = &*x * lb;
        }
        if r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                *x = &*x * lb;
            }
            for (j, bj) in b.iter().enumerate() {
                let idx = j + dr - db;
                r[idx] = &r[idx] - &(&lr * bj);
            }
            q[dr - db] = &q[dr - db] + &lr;
            trim(&mut r);
        } else {
            for x in r.iter_mut() {
                *x = &*x * lb;
            }
        }
    }
    (q, r)
}

fn mul_univariate(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn sub_univariate(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    trim(&mut out);
    out
}

/// Fraction-free inverse of `a` modulo `q` (both in `v`, `deg a < deg q`)
/// by the extended subresultant sequence. Returns `(s, g)` with
/// `s * a = g mod q` and `g` free of `v`, or `Err(r)` with `r` the last
/// nonconstant subresultant when `a` and `q` share a factor.
pub(crate) fn subresultant_inverse(a: &Poly, q: &Poly, v: &Symbol) -> Result<(Vec<Poly>, Poly), Vec<Poly>> {
    let mut r0 = q.to_univariate(v);
    let mut r1 = a.to_univariate(v);
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (Vec::<Poly>::new(), vec![Poly::one()]);
    let mut delta = r0.len() - r1.len();
    let mut beta = if delta % 2 == 0 { Poly::from_int(-1) } else { Poly::one() };
    let mut psi = Poly::from_int(-1);
    loop {
        if r1.len() == 1 {
            return Ok((s1, r1.pop().expect("constant")));
        }
        let (quot, rem) = pdiv(&r0, &r1);
        if rem.is_empty() {
            return Err(r1);
        }
        let lc = r1.last().expect("nonzero").clone();
        let lpow = lc.pow(delta as u32 + 1);
        let r2: Vec<Poly> = rem.iter().map(|c| c.div_exact(&beta).expect("subresultant division")).collect();
        let s2: Vec<Poly> = sub_univariate(&s0.iter().map(|c| c * &lpow).collect::<Vec<_>>(), &mul_univariate(&quot, &s1))
            .iter()
            .map(|c| c.div_exact(&beta).expect("subresultant cofactor division"))
            .collect();
        let neg_lc = -&lc;
        psi = if delta == 0 {
            psi
        } else {
            neg_lc.pow(delta as u32).div_exact(&psi.pow(delta as u32 - 1)).expect("subresultant psi")
        };
        delta = r1.len() - r2.len();
        beta = &neg_lc * &psi.pow(delta as u32);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
}

fn primitive_univariate(mut u: Vec<Poly>) -> Vec<Poly> {
    use num_traits::Signed;
    trim(&mut u);
    if u.is_empty() {
        return u;
    }
    let c = gcd_many(u.iter());
    let out = divide_coeffs(&u, &c);
    let scale = out
        .iter()
        .map(|p| p.rational_content().abs())
        .reduce(|x, y| rational_gcd(&x, &y))
        .expect("non-empty");
    out.iter().map(|p| p.scale(&scale.recip())).collect()
}

fn rational_gcd(a: &num_rational::BigRational, b: &num_rational::BigRational) -> num_rational::BigRational {
    use num_integer::Integer;
    num_rational::BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    f = primitive_univariate(f);
    g = primitive_univariate(g);
    loop {
        if g.is_empty() {
            return f;
        }
        if g.len() == 1 {
            return vec![Poly::one()];
        }
        let r = primitive_univariate(prem(&f, &g));
        f = g;
        g = r;
    }
}

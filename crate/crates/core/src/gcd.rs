//! Multivariate polynomial gcd over ℚ.
//!
//! Recursive: split off the content with respect to a main variable, then
//! run a subresultant remainder sequence on the primitive parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Rational, Rationals};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingExt};

pub type QPoly = Polynomial<Rationals>;

/// Split `f` as `content * primitive` where `primitive` has coprime integer
/// coefficients and a positive leading coefficient. The content of zero is zero.
pub fn primitive_integer(f: &QPoly) -> (Rational, QPoly) {
    if f.is_zero() {
        return (Rational::zero(), f.clone());
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in f.terms() {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    let mut content = Rational::new(num_gcd, den_lcm);
    if f.lc().is_negative() {
        content = -content;
    }
    if content.is_one() {
        return (content, f.clone());
    }
    let inv = content.recip();
    (content, f.scale(&inv))
}

/// Canonical associate: coprime integer coefficients, positive leading coefficient.
pub fn normalize(f: &QPoly) -> QPoly {
    primitive_integer(f).1
}

/// `f / g` when the division is exact, `None` otherwise.
pub fn exact_div(f: &QPoly, g: &QPoly) -> Option<QPoly> {
    if g.is_unit() {
        return Some(f.scale(&g.lc().recip()));
    }
    f.div_exact(g)
}

/// Coefficients of `f` viewed as a univariate polynomial in `var`;
/// entry `k` multiplies `var^k` and is free of `var`.
pub fn coefficients_in(f: &QPoly, var: usize) -> Vec<QPoly> {
    let deg = f.degree_in(var) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in f.terms() {
        let k = m.exponent(var) as usize;
        let mut m = m.clone();
        m.set_exponent(var, 0);
        buckets[k].push((m, c.clone()));
    }
    // removing one variable keeps the relative order of terms within a bucket
    // only for some orderings, so re-sort
    buckets.into_iter().map(|t| Polynomial::from_terms(f.ring(), t).expect("same ring")).collect()
}

fn leading_coefficient_in(f: &QPoly, var: usize) -> QPoly {
    coefficients_in(f, var).pop().unwrap_or_else(|| f.ring().zero())
}

fn var_power(f: &QPoly, var: usize, k: u32) -> QPoly {
    f.ring().monomial(Monomial::var(f.ring().nvars(), var, k), Rational::one())
}

/// Pseudo-remainder of `a` by `b` in `var`: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_remainder(a: &QPoly, b: &QPoly, var: usize) -> QPoly {
    let db = b.degree_in(var);
    let lb = leading_coefficient_in(b, var);
    let mut r = a.clone();
    let mut e = a.degree_in(var) as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = leading_coefficient_in(&r, var);
        let shift = &lr * &var_power(&r, var, dr - db);
        r = &(&lb * &r) - &(&shift * b);
        e -= 1;
    }
    for _ in 0..e.max(0) {
        r = &lb * &r;
    }
    r
}

/// Content with respect to `var`: gcd of the coefficients in that variable.
pub fn content_in(f: &QPoly, var: usize) -> QPoly {
    let mut acc = f.ring().zero();
    for c in coefficients_in(f, var).into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_unit() {
            break;
        }
    }
    acc
}

fn monomial_gcd(mono: &Monomial, g: &QPoly) -> QPoly {
    let mut m = mono.clone();
    for (t, _) in g.terms() {
        m = m.gcd(t);
    }
    g.ring().monomial(m, Rational::one())
}

/// Normalized gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_unit() || g.is_unit() {
        return f.ring().one();
    }
    if f.len() == 1 {
        return monomial_gcd(f.lm(), g);
    }
    if g.len() == 1 {
        return monomial_gcd(g.lm(), f);
    }
    let nf = normalize(f);
    let ng = normalize(g);
    if nf == ng {
        return nf;
    }
    let fs = nf.support();
    let gs = ng.support();
    // a variable present in only one operand can be stripped via the content
    if let Some(&v) = fs.iter().find(|v| !gs.contains(v)) {
        return gcd(&content_in(&nf, v), &ng);
    }
    if let Some(&v) = gs.iter().find(|v| !fs.contains(v)) {
        return gcd(&nf, &content_in(&ng, v));
    }
    let v = fs[0];
    let cf = content_in(&nf, v);
    let cg = content_in(&ng, v);
    let c = gcd(&cf, &cg);
    let pf = exact_div(&nf, &cf).expect("content divides");
    let pg = exact_div(&ng, &cg).expect("content divides");
    let h = subresultant_gcd(&pf, &pg, v);
    normalize(&(&c * &h))
}

/// Gcd of two polynomials primitive in `var`, returned primitive in `var`.
fn subresultant_gcd(f: &QPoly, g: &QPoly, var: usize) -> QPoly {
    let (mut a, mut b) =
        if f.degree_in(var) >= g.degree_in(var) { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    let ring = f.ring().clone();
    let mut gg = ring.one();
    let mut h = ring.one();
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            let cb = content_in(&b, var);
            return exact_div(&b, &cb).expect("content divides");
        }
        if r.degree_in(var) == 0 {
            return ring.one();
        }
        a = b;
        let divisor = &gg * &h.pow(delta).expect("small exponent");
        b = exact_div(&r, &divisor).expect("subresultant division is exact");
        gg = leading_coefficient_in(&a, var);
        h = match delta {
            0 => h,
            1 => gg.clone(),
            d => {
                let num = gg.pow(d).expect("small exponent");
                let den = h.pow(d - 1).expect("small exponent");
                exact_div(&num, &den).expect("subresultant division is exact")
            }
        };
    }
}

/// Normalized lcm; zero if either argument is zero.
pub fn lcm(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() || g.is_zero() {
        return f.ring().zero();
    }
    let d = gcd(f, g);
    let q = exact_div(f, &d).expect("gcd divides");
    normalize(&(&q * g))
}

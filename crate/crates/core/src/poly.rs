//! Polynomial rings and sparse distributed polynomials.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Rational};
use crate::monomial::{Monomial, TermOrder};

/// Indeterminate names, coefficient field and term ordering of a ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    names: Vec<String>,
    order: TermOrder,
    field: F,
}

pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, order: TermOrder, field: F) -> Result<Ring<F>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::DuplicateIndeterminate(n.clone()));
            }
        }
        Ok(Arc::new(PolyRing { names, order, field }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Ring<F> {
        Arc::new(PolyRing { names: self.names.clone(), order, field: self.field.clone() })
    }
}

/// Polynomial constructors hang off the shared ring handle.
pub trait RingExt<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn rational(&self, q: &Rational) -> Polynomial<F>;
    fn var(&self, i: usize) -> Polynomial<F>;
    fn var_named(&self, name: &str) -> Result<Polynomial<F>>;
    fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F>;
}

impl<F: Field> RingExt<F> for Ring<F> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }
    fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }
    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.monomial(Monomial::one(self.nvars()), c)
    }
    fn rational(&self, q: &Rational) -> Polynomial<F> {
        self.constant(self.field.from_rational(q))
    }
    fn var(&self, i: usize) -> Polynomial<F> {
        self.monomial(Monomial::var(self.nvars(), i, 1), self.field.one())
    }
    fn var_named(&self, name: &str) -> Result<Polynomial<F>> {
        let i = self.index_of(name).ok_or_else(|| AlgebraError::UnknownIndeterminate(name.to_string()))?;
        Ok(self.var(i))
    }
    fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial { ring: self.clone(), terms: vec![(m, c)] }
    }
}

pub type Term<E> = (Monomial, E);

/// A polynomial with terms sorted strictly decreasing under the ring order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `a + b` for sorted term lists.
pub(crate) fn merge_add<F: Field>(
    field: &F,
    order: TermOrder,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(&a[i].1, &b[j].1);
                if !field.is_zero(&c) {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `p - c * m * g` for sorted term lists; consumes `p`.
pub(crate) fn sub_scaled_shifted<F: Field>(
    field: &F,
    order: TermOrder,
    p: Vec<Term<F::Elem>>,
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul_unchecked(m), gc)).peekable();
    let mut pi = p.into_iter().peekable();
    loop {
        match (pi.peek(), gi.peek()) {
            (Some(pt), Some(gt)) => match order.cmp(&pt.0, &gt.0) {
                Ordering::Greater => out.push(pi.next().unwrap()),
                Ordering::Less => {
                    let (gm, gc) = gi.next().unwrap();
                    out.push((gm, field.neg(&field.mul(c, gc))));
                }
                Ordering::Equal => {
                    let (pm, pc) = pi.next().unwrap();
                    let (_, gc) = gi.next().unwrap();
                    let v = field.sub(&pc, &field.mul(c, gc));
                    if !field.is_zero(&v) {
                        out.push((pm, v));
                    }
                }
            },
            (Some(_), None) => out.push(pi.next().unwrap()),
            (None, Some(_)) => {
                let (gm, gc) = gi.next().unwrap();
                out.push((gm, field.neg(&field.mul(c, gc))));
            }
            (None, None) => break,
        }
    }
    out
}

pub(crate) fn mul_terms<F: Field>(
    field: &F,
    order: TermOrder,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // multiply the longer list by each term of the shorter one and merge pairwise
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut parts: Vec<Vec<Term<F::Elem>>> = short
        .iter()
        .map(|(m, c)| {
            long.iter()
                .filter_map(|(lm, lc)| {
                    let v = field.mul(c, lc);
                    (!field.is_zero(&v)).then(|| (lm.mul_unchecked(m), v))
                })
                .collect()
        })
        .collect();
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(merge_add(field, order, &x, &y)),
                None => next.push(x),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

impl<F: Field> Polynomial<F> {
    /// Build from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &Ring<F>, terms: Vec<Term<F::Elem>>) -> Result<Self> {
        for (m, _) in &terms {
            if m.nvars() != ring.nvars() {
                return Err(AlgebraError::Dimension { expected: ring.nvars(), found: m.nvars() });
            }
        }
        let field = ring.field();
        let order = ring.order();
        let mut terms = terms;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Ok(Polynomial { ring: ring.clone(), terms: out })
    }

    pub(crate) fn from_sorted(ring: &Ring<F>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(AlgebraError::ZeroLeadingTerm)
    }

    /// Leading monomial; panics on zero. Engine-internal.
    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &F::Elem {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Indices of indeterminates that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> F::Elem {
        self.terms.iter().find(|(tm, _)| tm == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::from_sorted(&self.ring, merge_add(self.field(), self.ring.order(), &self.terms, &other.terms)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        // overflow guard on the per-variable maximal exponents
        let max_self: Vec<u32> = (0..self.ring.nvars()).map(|v| self.degree_in(v)).collect();
        let max_other: Vec<u32> = (0..self.ring.nvars()).map(|v| other.degree_in(v)).collect();
        Monomial::from_exponents(&max_self).mul(&Monomial::from_exponents(&max_other))?;
        Ok(Self::from_sorted(&self.ring, mul_terms(self.field(), self.ring.order(), &self.terms, &other.terms)))
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        Self::from_sorted(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Self::from_sorted(&self.ring, self.terms.iter().map(|(m, t)| (m.clone(), field.mul(c, t))).collect())
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self> {
        let field = self.field();
        if field.is_zero(c) {
            return Ok(self.ring.zero());
        }
        let terms = self.terms.iter().map(|(tm, tc)| Ok((tm.mul(m)?, field.mul(c, tc)))).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_sorted(&self.ring, terms))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        match self.terms.first() {
            None => Ok(self.clone()),
            Some((_, lc)) if self.field().is_one(lc) => Ok(self.clone()),
            Some((_, lc)) => {
                let inv = self.field().inv(lc)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// `self / g` when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() || !same_ring(&self.ring, &g.ring) {
            return None;
        }
        let field = self.field();
        let order = self.ring.order();
        let glm = g.lm().clone();
        let ginv = field.inv(g.lc()).ok()?;
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.first() {
            if !glm.divides(m) {
                return None;
            }
            let q = glm.quotient_of(m);
            let qc = field.mul(c, &ginv);
            rest = sub_scaled_shifted(field, order, rest, &qc, &q, &g.terms);
            quotient.push((q, qc));
        }
        Some(Self::from_sorted(&self.ring, quotient))
    }

    /// Re-express in another ring over the same field; `var_map[i]` is the
    /// index in `target` of this ring's `i`-th indeterminate.
    pub fn embed(&self, target: &Ring<F>, var_map: &[usize]) -> Result<Self> {
        if var_map.len() != self.ring.nvars() {
            return Err(AlgebraError::Dimension { expected: self.ring.nvars(), found: var_map.len() });
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &t) in var_map.iter().enumerate() {
                    let x = m.exponent(i);
                    if x > 0 {
                        if t >= n {
                            return Err(AlgebraError::Dimension { expected: n, found: t + 1 });
                        }
                        e.set_exponent(t, e.exponent(t) + x);
                    }
                }
                Ok((e, c.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(target, terms)
    }

    /// Move to a ring that contains every indeterminate of this one under the same name.
    pub fn embed_by_name(&self, target: &Ring<F>) -> Result<Self> {
        let map = self
            .ring
            .names()
            .iter()
            .zip(0..)
            .map(|(n, i)| {
                if self.degree_in(i) == 0 {
                    // unused indeterminates need not exist in the target
                    return Ok(target.index_of(n).unwrap_or(0));
                }
                target.index_of(n).ok_or_else(|| AlgebraError::UnknownIndeterminate(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.embed(target, &map)
    }

    /// The same polynomial under a different ordering of the same indeterminates.
    pub fn reordered(&self, target: &Ring<F>) -> Self {
        debug_assert_eq!(target.names(), self.ring.names());
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self::from_sorted(target, terms)
    }

    /// Substitute `images[i]` (a polynomial of `target`) for the `i`-th indeterminate.
    pub fn compose(&self, target: &Ring<F>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::Dimension { expected: self.ring.nvars(), found: images.len() });
        }
        for img in images {
            if !same_ring(img.ring(), target) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().try_mul(&images[v])?;
                    powers[v].push(next);
                }
                t = t.try_mul(&powers[v][e as usize])?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Name-based substitution: bound indeterminates take the given images,
    /// unbound ones map to the same-named indeterminate of `target`.
    pub fn substitute(&self, bindings: &[(&str, Polynomial<F>)], target: &Ring<F>) -> Result<Self> {
        for (name, _) in bindings {
            if self.ring.index_of(name).is_none() {
                return Err(AlgebraError::UnknownIndeterminate(name.to_string()));
            }
        }
        let images = self
            .ring
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| match bindings.iter().find(|(b, _)| b == n) {
                Some((_, p)) => Ok(p.clone()),
                None => match target.index_of(n) {
                    Some(j) => Ok(target.var(j)),
                    None if self.degree_in(i) == 0 => Ok(target.zero()),
                    None => Err(AlgebraError::UnknownIndeterminate(n.clone())),
                },
            })
            .collect::<Result<Vec<_>>>()?;
        self.compose(target, &images)
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::Dimension { expected: self.ring.nvars(), found: point.len() });
        }
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[v]);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Apply `f` to every coefficient, landing in a ring with the same indeterminates.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Ring<G>,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        let terms = self.terms.iter().map(|(m, c)| Ok((m.clone(), f(c)?))).collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(target, terms)
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        render_monomial(self.ring.names(), m)
    }
}

pub fn render_monomial(names: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            let sep = match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let (coef, atomic) = field.render(&abs);
            let body = if m.is_one() {
                if atomic || i == 0 {
                    coef
                } else {
                    format!("({coef})")
                }
            } else if field.is_one(&abs) {
                render_monomial(self.ring.names(), m)
            } else if atomic {
                format!("{coef}*{}", render_monomial(self.ring.names(), m))
            } else {
                format!("({coef})*{}", render_monomial(self.ring.names(), m))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings; use the `try_` form otherwise.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).expect("polynomial operands from different rings")
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Which of the three ring operations [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
    }
}

pub fn leading_term<F: Field>(f: &Polynomial<F>) -> Result<(Monomial, F::Elem)> {
    f.leading_term().map(|(m, c)| (m.clone(), c.clone()))
}

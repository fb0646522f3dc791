//! Buchberger's algorithm, normal forms and reduced Gröbner bases.

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Rational, Rationals};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{same_ring, sub_scaled_shifted, Polynomial, Ring, RingExt, Term};
use crate::ratfun::{lcm_denominators, FractionField};

/// An ideal given by generators; zero generators are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![ring.one()] }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner_basis(&self) -> GroebnerBasis<F> {
        reduce_basis(&buchberger(self))
    }

    pub fn is_unit(&self) -> bool {
        let gb = buchberger(self);
        gb.elements.iter().any(|g| g.is_unit())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        is_member(f, self)
    }

    /// Mutual containment of generators.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let a = self.groebner_basis();
        let b = other.groebner_basis();
        Ok(other.gens.iter().all(|g| a.reduce(g).is_zero()) && self.gens.iter().all(|g| b.reduce(g).is_zero()))
    }

    /// The same generators viewed in a ring with identical names and another ordering.
    pub fn with_order(&self, order: TermOrder) -> Self {
        let ring = self.ring.with_order(order);
        Ideal { gens: self.gens.iter().map(|g| g.reordered(&ring)).collect(), ring }
    }

    pub fn add(&self, other: &Ideal<F>) -> Result<Self> {
        Ideal::new(&self.ring, self.gens.iter().chain(other.gens.iter()).cloned())
    }
}

/// A Gröbner basis listed with σ-increasing leading terms.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<F>> {
        self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_unit())
    }

    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.elements)
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal { ring: self.ring.clone(), gens: self.elements.clone() }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }
}

#[inline]
fn support_mask(m: &Monomial) -> u64 {
    m.exponents().iter().enumerate().fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1 << (i % 64)) } else { acc })
}

struct Reducer<'a, E> {
    lm: &'a Monomial,
    mask: u64,
    terms: &'a [Term<E>],
    /// inverse of the leading coefficient; `None` when it is one
    lc_inv: Option<E>,
}

fn reducers<'a, F: Field>(field: &F, polys: impl Iterator<Item = &'a Polynomial<F>>) -> Vec<Reducer<'a, F::Elem>> {
    polys
        .filter(|g| !g.is_zero())
        .map(|g| Reducer {
            lm: g.lm(),
            mask: support_mask(g.lm()),
            terms: g.terms(),
            lc_inv: if field.is_one(g.lc()) {
                None
            } else {
                Some(field.inv(g.lc()).expect("nonzero leading coefficient"))
            },
        })
        .collect()
}

/// Full reduction of a term list; returns the remainder.
fn reduce_terms<F: Field>(
    field: &F,
    order: TermOrder,
    mut p: Vec<Term<F::Elem>>,
    reducers: &[Reducer<'_, F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut rem: Vec<Term<F::Elem>> = Vec::new();
    let mut head = 0usize;
    while head < p.len() {
        let (m, c) = &p[head];
        let mask = support_mask(m);
        let hit = reducers.iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m));
        match hit {
            Some(r) => {
                let q = r.lm.quotient_of(m);
                let coef = match &r.lc_inv {
                    None => c.clone(),
                    Some(inv) => field.mul(c, inv),
                };
                let tail = p.split_off(head);
                p.truncate(head);
                let reduced = sub_scaled_shifted(field, order, tail, &coef, &q, r.terms);
                rem.append(&mut p);
                p = reduced;
                head = 0;
            }
            None => head += 1,
        }
    }
    rem.append(&mut p);
    rem
}

/// Remainder of `f` modulo `g`: no term is divisible by a leading term of `g`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> Polynomial<F> {
    if g.is_empty() || f.is_zero() {
        return f.clone();
    }
    let field = f.field();
    let red = reducers(field, g.iter());
    let out = reduce_terms(field, f.ring().order(), f.terms().to_vec(), &red);
    Polynomial::from_sorted(f.ring(), out)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Order in which pending S-pairs are processed. The result after
/// [`reduce_basis`] is independent of the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSelection {
    /// Smallest lcm degree first, ties by `(i, j)`.
    #[default]
    Normal,
    /// Oldest pair first.
    Fifo,
    /// Largest lcm degree first.
    Reverse,
}

fn s_polynomial<F: Field>(
    field: &F,
    order: TermOrder,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    lcm: &Monomial,
) -> Vec<Term<F::Elem>> {
    // both monic
    let mf = f.lm().quotient_of(lcm);
    let mg = g.lm().quotient_of(lcm);
    let left: Vec<Term<F::Elem>> = f.terms()[1..].iter().map(|(m, c)| (m.mul_unchecked(&mf), c.clone())).collect();
    sub_scaled_shifted(field, order, left, &field.one(), &mg, &g.terms()[1..])
}

fn update(polys: &[Polynomial<impl Field>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].lm().clone();
    let mut cand: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let lg = polys[g].lm();
            (g, lh.lcm(lg), lh.is_coprime(lg))
        })
        .collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g1, l1, coprime)) = cand.pop() {
        let dominated = cand.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l1));
        if coprime || !dominated {
            kept.push((g1, l1, coprime));
        }
    }
    pairs.retain(|p| !(lh.divides(&p.lcm) && lh.lcm(polys[p.i].lm()) != p.lcm && lh.lcm(polys[p.j].lm()) != p.lcm));
    kept.sort_by_key(|(g, _, _)| *g);
    for (g, l, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i: g.min(h), j: g.max(h), lcm: l });
        }
    }
    active.retain(|&g| !lh.divides(polys[g].lm()));
    active.push(h);
}

/// Gröbner basis with the default pair selection.
pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    buchberger_with(ideal, PairSelection::Normal)
}

pub fn buchberger_with<F: Field>(ideal: &Ideal<F>, selection: PairSelection) -> GroebnerBasis<F> {
    let ring = ideal.ring.clone();
    let field = ring.field().clone();
    let order = ring.order();
    let unit = || GroebnerBasis { ring: ring.clone(), elements: vec![ring.one()], reduced: true };

    let mut gens: Vec<Polynomial<F>> = ideal.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    gens.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let red = reducers(&field, active.iter().map(|&i| &polys[i]));
        let r = reduce_terms(&field, order, g.into_terms(), &red);
        drop(red);
        if r.is_empty() {
            continue;
        }
        let r = Polynomial::from_sorted(&ring, r).monic().expect("nonzero");
        if r.is_unit() {
            return unit();
        }
        polys.push(r);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        let idx = match selection {
            PairSelection::Normal => (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.lcm.degree().cmp(&pb.lcm.degree()).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
                })
                .unwrap(),
            PairSelection::Fifo => 0,
            PairSelection::Reverse => (0..pairs.len())
                .max_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.lcm.degree().cmp(&pb.lcm.degree()).then((pb.i, pb.j).cmp(&(pa.i, pa.j)))
                })
                .unwrap(),
        };
        let pair = pairs.remove(idx);
        let s = s_polynomial(&field, order, &polys[pair.i], &polys[pair.j], &pair.lcm);
        let red = reducers(&field, active.iter().map(|&i| &polys[i]));
        let r = reduce_terms(&field, order, s, &red);
        drop(red);
        if r.is_empty() {
            continue;
        }
        let r = Polynomial::from_sorted(&ring, r).monic().expect("nonzero");
        if r.is_unit() {
            return unit();
        }
        polys.push(r);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let mut elements: Vec<Polynomial<F>> = active.into_iter().map(|i| polys[i].clone()).collect();
    elements.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    GroebnerBasis { ring, elements, reduced: false }
}

/// Minimalize, make monic and inter-reduce; the result is the unique reduced basis.
pub fn reduce_basis<F: Field>(gb: &GroebnerBasis<F>) -> GroebnerBasis<F> {
    if gb.reduced {
        return gb.clone();
    }
    let ring = gb.ring.clone();
    let order = ring.order();
    let field = ring.field().clone();
    let mut elems: Vec<Polynomial<F>> =
        gb.elements.iter().filter(|g| !g.is_zero()).map(|g| g.monic().expect("nonzero")).collect();
    if elems.iter().any(|g| g.is_unit()) {
        return GroebnerBasis { ring: ring.clone(), elements: vec![ring.one()], reduced: true };
    }
    elems.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    elems.dedup_by(|a, b| a.lm() == b.lm());
    let minimal: Vec<Polynomial<F>> = elems
        .iter()
        .enumerate()
        .filter(|(i, g)| !elems.iter().enumerate().any(|(j, h)| j != *i && h.lm().divides(g.lm()) && h.lm() != g.lm()))
        .map(|(_, g)| g.clone())
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let red = reducers(&field, minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h));
        let head = g.terms()[0].clone();
        let tail = reduce_terms(&field, order, g.terms()[1..].to_vec(), &red);
        let mut terms = vec![head];
        terms.extend(tail);
        out.push(Polynomial::from_sorted(&ring, terms));
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    GroebnerBasis { ring, elements: out, reduced: true }
}

/// True iff `f` lies in the ideal.
pub fn is_member<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    if !same_ring(f.ring(), &ideal.ring) {
        return Err(AlgebraError::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(ideal);
    Ok(gb.reduce(f).is_zero())
}

/// Check the Buchberger criterion directly: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(elements: &[Polynomial<F>]) -> bool {
    let Some(first) = elements.first() else { return true };
    let ring = first.ring().clone();
    let field = ring.field().clone();
    let order = ring.order();
    let monic: Vec<Polynomial<F>> = elements.iter().filter(|g| !g.is_zero()).map(|g| g.monic().unwrap()).collect();
    let red = reducers(&field, monic.iter());
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let l = monic[i].lm().lcm(monic[j].lm());
            let s = s_polynomial(&field, order, &monic[i], &monic[j], &l);
            if !reduce_terms(&field, order, s, &red).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Evaluate the coefficients of a basis over ℚ(a)[x] at `point`, landing in `target` = ℚ[x].
///
/// Fails when the point lies on the hypersurface where some denominator vanishes.
pub fn specialize_basis(
    gb: &GroebnerBasis<FractionField>,
    point: &[Rational],
    target: &Ring<Rationals>,
) -> Result<Vec<Polynomial<Rationals>>> {
    let field = gb.ring.field();
    let params = field.params();
    if point.len() != params.nvars() {
        return Err(AlgebraError::Dimension { expected: params.nvars(), found: point.len() });
    }
    if target.names() != gb.ring.names() {
        return Err(AlgebraError::RingMismatch);
    }
    let coeffs: Vec<_> = gb.elements.iter().flat_map(|g| g.terms().iter().map(|(_, c)| c)).collect();
    let d = lcm_denominators(params, coeffs.iter().copied());
    if d.eval(point)? == Rational::from_integer(0.into()) {
        return Err(AlgebraError::OutsideFlatLocus);
    }
    gb.elements.iter().map(|g| g.map_coefficients(target, |c| c.eval(point))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_with_atoms};
    use crate::poly::PolyRing;
    use proptest::prelude::*;

    fn qring(names: &[&str], order: TermOrder) -> Ring<Rationals> {
        PolyRing::new(names.iter().copied(), order, Rationals).unwrap()
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap())).unwrap()
    }

    #[test]
    fn normal_form_by_long_division() {
        let r = qring(&["x"], TermOrder::DegRevLex);
        let f = parse_polynomial("x^2-3*x+2", &r).unwrap();
        let g = parse_polynomial("x-1", &r).unwrap();
        // oracle: (x-1)(x-2) = x^2 - 3x + 2
        assert_eq!(&g * &parse_polynomial("x-2", &r).unwrap(), f);
        assert!(normal_form(&f, &[g]).is_zero());
        assert_eq!(normal_form(&f, &[]), f);
    }

    #[test]
    fn normal_form_over_parameter_field() {
        let params = qring(&["a1", "a2", "a3", "a4"], TermOrder::DegRevLex);
        let k = FractionField::new(params);
        let r = PolyRing::new(["x", "y", "z"], TermOrder::DegRevLex, k.clone()).unwrap();
        let atoms = |n: &str| k.param(n);
        let g = parse_with_atoms("y + ((a2-a4)/(a1-a3))*z", &r, &atoms).unwrap();
        let f = parse_with_atoms("x*y", &r, &atoms).unwrap();
        let expected = parse_with_atoms("-((a2-a4)/(a1-a3))*x*z", &r, &atoms).unwrap();
        assert_eq!(normal_form(&f, &[g]), expected);
    }

    #[test]
    fn trivial_bases() {
        let r = qring(&["x", "y"], TermOrder::DegRevLex);
        let gb = ideal(&r, &["x", "y"]).groebner_basis();
        assert_eq!(gb.elements(), &[r.var(1), r.var(0)]);
        let gb = ideal(&r, &["x^2+y", "1"]).groebner_basis();
        assert_eq!(gb.elements(), &[r.one()]);
        assert!(gb.is_reduced());
    }

    #[test]
    fn membership() {
        let r = qring(&["x"], TermOrder::DegRevLex);
        let i = ideal(&r, &["x-1", "x-2"]);
        assert!(is_member(&parse_polynomial("x^2-3*x+2", &r).unwrap(), &i).unwrap());
        let i = ideal(&r, &["x"]);
        assert!(!is_member(&r.one(), &i).unwrap());
        let r = qring(&["a", "e"], TermOrder::DegRevLex);
        let i = ideal(&r, &["a^2-e^2", "a^3-e^3"]);
        assert!(!is_member(&parse_polynomial("a-e", &r).unwrap(), &i).unwrap());
    }

    #[test]
    fn cyclic_three() {
        let r = qring(&["x", "y", "z"], TermOrder::DegRevLex);
        let i = ideal(&r, &["x+y+z", "x*y+y*z+z*x", "x*y*z-1"]);
        let gb = i.groebner_basis();
        assert!(is_groebner_basis(gb.elements()));
        for g in i.generators() {
            assert!(gb.reduce(g).is_zero());
        }
        // known reduced basis under degrevlex
        let expected = ideal(&r, &["x+y+z", "y^2+y*z+z^2", "z^3-1"]);
        assert_eq!(gb.elements(), expected.generators());
    }

    #[test]
    fn specialization_rejects_bad_points() {
        let params = qring(&["a"], TermOrder::DegRevLex);
        let k = FractionField::new(params);
        let r = PolyRing::new(["x"], TermOrder::DegRevLex, k.clone()).unwrap();
        let g = parse_with_atoms("a*x - 1", &r, &|n| k.param(n)).unwrap();
        let gb = Ideal::new(&r, [g]).unwrap().groebner_basis();
        let target = qring(&["x"], TermOrder::DegRevLex);
        let zero = Rational::from_integer(0.into());
        assert_eq!(specialize_basis(&gb, &[zero], &target), Err(AlgebraError::OutsideFlatLocus));
        let two = Rational::from_integer(2.into());
        let s = specialize_basis(&gb, &[two], &target).unwrap();
        assert_eq!(s, vec![parse_polynomial("x-1/2", &target).unwrap()]);
    }

    fn random_ideal() -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
        let term = (proptest::collection::vec(0u32..=3, 3), -3i64..=3);
        let poly = proptest::collection::vec(term, 1..4);
        proptest::collection::vec(poly, 1..4)
    }

    fn build(r: &Ring<Rationals>, gens: &[Vec<(Vec<u32>, i64)>]) -> Vec<Polynomial<Rationals>> {
        gens.iter()
            .map(|t| {
                let terms = t
                    .iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= 3)
                    .map(|(e, c)| (Monomial::from_exponents(e), crate::field::rational_from_int(*c)))
                    .collect();
                Polynomial::from_terms(r, terms).unwrap()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn basis_properties(gens in random_ideal()) {
            let r = qring(&["x", "y", "z"], TermOrder::DegRevLex);
            let gens = build(&r, &gens);
            let i = Ideal::new(&r, gens.clone()).unwrap();
            let gb = i.groebner_basis();
            prop_assert!(is_groebner_basis(gb.elements()));
            for g in &gens {
                prop_assert!(gb.reduce(g).is_zero());
            }
            let mut rev = gens.clone();
            rev.reverse();
            for sel in [PairSelection::Fifo, PairSelection::Reverse] {
                let other = reduce_basis(&buchberger_with(&Ideal::new(&r, rev.clone()).unwrap(), sel));
                prop_assert_eq!(other.elements(), gb.elements());
            }
            // normal form idempotence
            let f = &gens[0] * &r.var(0) + r.var(1);
            let nf = gb.reduce(&f);
            prop_assert_eq!(gb.reduce(&nf), nf);
        }
    }
}

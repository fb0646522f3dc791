//! Elimination, saturation, intersection and radical membership.
//!
//! Every operation that needs an auxiliary indeterminate places it in front
//! of the existing ones, in the eliminated block of a `BlockElim` ordering.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger, reduce_basis, Ideal};
use crate::monomial::TermOrder;
use crate::poly::{PolyRing, Polynomial, Ring, RingExt};

/// An elimination problem: drop the indeterminates named in `kill`.
#[derive(Clone, Debug)]
pub struct ElimRequest<'a, F: Field> {
    pub ideal: &'a Ideal<F>,
    pub kill: Vec<String>,
}

fn fresh_name<F: Field>(ring: &Ring<F>, base: &str) -> String {
    let mut name = format!("_{base}");
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Ring `[w] ++ ring` with `w` in a leading block that is eliminated first.
fn prepend_aux<F: Field>(ring: &Ring<F>, base: &str, order: TermOrder) -> Ring<F> {
    let mut names = vec![fresh_name(ring, base)];
    names.extend(ring.names().iter().cloned());
    PolyRing::new(names, order, ring.field().clone()).expect("fresh name is unique")
}

fn shift_map(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Gröbner basis of `gens` in `ring` (whose first `k` indeterminates are the
/// eliminated block), filtered to the elements free of that block and mapped
/// into `target` through `back`.
fn eliminate_front<F: Field>(
    ring: &Ring<F>,
    gens: Vec<Polynomial<F>>,
    k: usize,
    target: &Ring<F>,
    back: &[usize],
) -> Result<Ideal<F>> {
    let ideal = Ideal::new(ring, gens)?;
    let gb = reduce_basis(&buchberger(&ideal));
    let kept = gb
        .into_elements()
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)));
    let mut out = Vec::new();
    for g in kept {
        // killed slots map nowhere; they are zero in every kept term
        let map: Vec<usize> = back.iter().map(|&i| if i == usize::MAX { 0 } else { i }).collect();
        out.push(g.embed(target, &map)?);
    }
    Ideal::new(target, out)
}

/// Generators of `ideal ∩ K[remaining indeterminates]`, as polynomials of the
/// original ring.
pub fn eliminate<F: Field>(req: &ElimRequest<'_, F>) -> Result<Ideal<F>> {
    let ring = req.ideal.ring();
    let mut kill_idx = Vec::new();
    for name in &req.kill {
        let i = ring.index_of(name).ok_or_else(|| AlgebraError::UnknownIndeterminate(name.clone()))?;
        if !kill_idx.contains(&i) {
            kill_idx.push(i);
        }
    }
    kill_idx.sort_unstable();
    if kill_idx.is_empty() {
        return Ok(req.ideal.clone());
    }
    let keep_idx: Vec<usize> = (0..ring.nvars()).filter(|i| !kill_idx.contains(i)).collect();
    let perm: Vec<usize> = kill_idx.iter().chain(keep_idx.iter()).copied().collect();
    let names: Vec<String> = perm.iter().map(|&i| ring.names()[i].clone()).collect();
    let k = kill_idx.len();
    let elim_ring = PolyRing::new(names, TermOrder::BlockElim(k), ring.field().clone())?;
    // forward: original index -> position in elim_ring
    let mut forward = vec![0; ring.nvars()];
    for (pos, &orig) in perm.iter().enumerate() {
        forward[orig] = pos;
    }
    let back: Vec<usize> =
        perm.iter().enumerate().map(|(pos, &orig)| if pos < k { usize::MAX } else { orig }).collect();
    let gens = req.ideal.generators().iter().map(|g| g.embed(&elim_ring, &forward)).collect::<Result<Vec<_>>>()?;
    eliminate_front(&elim_ring, gens, k, ring, &back)
}

/// Convenience wrapper around [`eliminate`].
pub fn eliminate_names<F: Field>(ideal: &Ideal<F>, kill: &[&str]) -> Result<Ideal<F>> {
    eliminate(&ElimRequest { ideal, kill: kill.iter().map(|s| s.to_string()).collect() })
}

/// `f ∈ √I`, decided by `1 ∈ I + (1 - w f)` with a fresh `w`.
pub fn in_radical<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    let ring = ideal.ring();
    if f.ring() != ring {
        return Err(AlgebraError::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let ext = prepend_aux(ring, "w", TermOrder::DegRevLex);
    let map = shift_map(ring.nvars());
    let w = ext.var(0);
    let mut gens = ideal.generators().iter().map(|g| g.embed(&ext, &map)).collect::<Result<Vec<_>>>()?;
    gens.push(&ext.one() - &(&w * &f.embed(&ext, &map)?));
    Ok(Ideal::new(&ext, gens)?.is_unit())
}

/// Every generator of `j` lies in `√i`.
pub fn ideal_in_radical<F: Field>(j: &Ideal<F>, i: &Ideal<F>) -> Result<bool> {
    if j.ring() != i.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    for g in j.generators() {
        if !in_radical(g, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I : g^∞ = (I + (1 - w g)) ∩ K[x]`.
pub fn saturate_by_poly<F: Field>(ideal: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(AlgebraError::InvalidArgument("saturation by the zero polynomial".into()));
    }
    let ring = ideal.ring();
    if g.ring() != ring {
        return Err(AlgebraError::RingMismatch);
    }
    if g.is_unit() || ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let ext = prepend_aux(ring, "w", TermOrder::BlockElim(1));
    let map = shift_map(ring.nvars());
    let w = ext.var(0);
    let mut gens = ideal.generators().iter().map(|h| h.embed(&ext, &map)).collect::<Result<Vec<_>>>()?;
    gens.push(&ext.one() - &(&w * &g.embed(&ext, &map)?));
    let back: Vec<usize> = std::iter::once(usize::MAX).chain(0..ring.nvars()).collect();
    eliminate_front(&ext, gens, 1, ring, &back)
}

/// `I ∩ J` via `w I + (1 - w) J` and elimination of `w`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = i.ring();
    if j.ring() != ring {
        return Err(AlgebraError::RingMismatch);
    }
    if i.is_zero() || j.is_zero() {
        return Ideal::new(ring, []);
    }
    let ext = prepend_aux(ring, "w", TermOrder::BlockElim(1));
    let map = shift_map(ring.nvars());
    let w = ext.var(0);
    let one_minus_w = &ext.one() - &w;
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(&w * &f.embed(&ext, &map)?);
    }
    for g in j.generators() {
        gens.push(&one_minus_w * &g.embed(&ext, &map)?);
    }
    let back: Vec<usize> = std::iter::once(usize::MAX).chain(0..ring.nvars()).collect();
    eliminate_front(&ext, gens, 1, ring, &back)
}

/// `I : g = (I ∩ (g)) / g`.
pub fn quotient_by_poly<F: Field>(ideal: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(AlgebraError::InvalidArgument("quotient by the zero polynomial".into()));
    }
    let gi = Ideal::new(ideal.ring(), [g.clone()])?;
    let inter = intersect(ideal, &gi)?;
    let gens = inter
        .generators()
        .iter()
        .map(|h| {
            h.div_exact(g).ok_or_else(|| AlgebraError::InvalidArgument("intersection generator not divisible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// `I : J = ∩ (I : g)` over the generators of `J`.
pub fn quotient<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    if j.is_zero() {
        return Err(AlgebraError::InvalidArgument("quotient by the zero ideal".into()));
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in j.generators() {
        let q = quotient_by_poly(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

#[cfg(not(target_arch = "wasm32"))]
fn per_generator_saturations<F: Field>(i: &Ideal<F>, gens: &[Polynomial<F>]) -> Result<Vec<Ideal<F>>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = gens.iter().map(|g| s.spawn(move || saturate_by_poly(i, g))).collect();
        handles.into_iter().map(|h| h.join().expect("saturation worker panicked")).collect()
    })
}

#[cfg(target_arch = "wasm32")]
fn per_generator_saturations<F: Field>(i: &Ideal<F>, gens: &[Polynomial<F>]) -> Result<Vec<Ideal<F>>> {
    gens.iter().map(|g| saturate_by_poly(i, g)).collect()
}

/// `I : J^∞`, as the intersection of the saturations by each generator of `J`.
pub fn saturate_by_ideal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    if j.is_zero() {
        return Err(AlgebraError::InvalidArgument("saturation by the zero ideal".into()));
    }
    if j.ring() != i.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    let parts = per_generator_saturations(i, j.generators())?;
    let mut proper: Vec<Ideal<F>> = Vec::new();
    for p in parts {
        if !p.generators().iter().any(|g| g.is_unit()) {
            proper.push(p);
        }
    }
    let mut iter = proper.into_iter();
    let Some(mut acc) = iter.next() else {
        return Ok(Ideal::unit(i.ring()));
    };
    for p in iter {
        acc = intersect(&acc, &p)?;
    }
    Ok(acc)
}

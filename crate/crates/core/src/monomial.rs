//! Exponent vectors and term orderings.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// A power product, stored as one exponent per ring indeterminate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `x_var^exp` in a ring with `nvars` indeterminates.
    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, &b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b).ok_or(AlgebraError::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// Product without the overflow check; exponents here never approach `u32::MAX`
    /// in any ring this crate builds, but callers outside the engine use [`Monomial::mul`].
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub(crate) fn set_exponent(&mut self, var: usize, exp: u32) {
        self.0[var] = exp;
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A multiplicative total order on power products with 1 minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TermOrder {
    Lex,
    DegLex,
    DegRevLex,
    /// Eliminates the first `k` indeterminates: the first block is compared
    /// before the second, each block by `DegRevLex`.
    BlockElim(usize),
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn cmp_deglex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                if x != y {
                    // smaller exponent in the last differing slot wins
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        ord => ord,
    }
}

impl TermOrder {
    /// Compare two exponent vectors of equal length.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_slices(a.exponents(), b.exponents())
    }

    #[inline]
    pub fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            TermOrder::Lex => cmp_lex(a, b),
            TermOrder::DegLex => cmp_deglex(a, b),
            TermOrder::DegRevLex => cmp_degrevlex(a, b),
            TermOrder::BlockElim(k) => {
                let k = k.min(a.len());
                cmp_degrevlex(&a[..k], &b[..k]).then_with(|| cmp_degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, TermOrder::DegLex | TermOrder::DegRevLex)
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::DegLex => "deglex".into(),
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::BlockElim(k) => format!("elim{k}"),
        }
    }

    pub fn parse(name: &str) -> Option<TermOrder> {
        match name.to_ascii_lowercase().as_str() {
            "lex" => Some(TermOrder::Lex),
            "deglex" => Some(TermOrder::DegLex),
            "degrevlex" | "grevlex" => Some(TermOrder::DegRevLex),
            other => other.strip_prefix("elim").and_then(|k| k.parse().ok()).map(TermOrder::BlockElim),
        }
    }
}

/// Checked comparison that rejects vectors of different lengths.
pub fn compare_terms(u: &Monomial, v: &Monomial, ord: TermOrder) -> Result<Ordering> {
    if u.nvars() != v.nvars() {
        return Err(AlgebraError::Dimension { expected: u.nvars(), found: v.nvars() });
    }
    Ok(ord.cmp(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_square_beats_mixed() {
        // x^2 vs x*y in (x, y, z)
        assert_eq!(compare_terms(&m(&[2, 0, 0]), &m(&[1, 1, 0]), TermOrder::DegRevLex).unwrap(), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        for ord in [TermOrder::Lex, TermOrder::DegLex, TermOrder::DegRevLex, TermOrder::BlockElim(1)] {
            assert_eq!(compare_terms(&m(&[3, 1]), &m(&[3, 1]), ord).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn deglex_degree_first() {
        assert_eq!(compare_terms(&m(&[1, 1]), &m(&[3, 0]), TermOrder::DegLex).unwrap(), Ordering::Less);
    }

    #[test]
    fn degrevlex_differs_from_deglex() {
        // x*z^2 vs y^3... classic: x y^2 ... pick x*z vs y^2 in (x,y,z)
        assert_eq!(TermOrder::DegLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(TermOrder::DegRevLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_elim_kills_first_block() {
        // u * 1 beats x^9 when u is in the eliminated block
        let ord = TermOrder::BlockElim(1);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(compare_terms(&m(&[1]), &m(&[1, 0]), TermOrder::Lex), Err(AlgebraError::Dimension { .. })));
    }

    #[test]
    fn overflow_is_detected() {
        assert_eq!(m(&[u32::MAX]).mul(&m(&[1])), Err(AlgebraError::ExponentOverflow));
    }

    fn order_strategy() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::Lex),
            Just(TermOrder::DegLex),
            Just(TermOrder::DegRevLex),
            (0usize..=4).prop_map(TermOrder::BlockElim),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn ordering_laws(ord in order_strategy(), u in mono(), v in mono(), w in mono()) {
            // antisymmetry
            prop_assert_eq!(ord.cmp(&u, &v), ord.cmp(&v, &u).reverse());
            prop_assert_eq!(ord.cmp(&u, &v) == Ordering::Equal, u == v);
            // transitivity
            if ord.cmp(&u, &v) != Ordering::Greater && ord.cmp(&v, &w) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&u, &w), Ordering::Greater);
            }
            // multiplicativity
            if ord.cmp(&u, &v) == Ordering::Less {
                prop_assert_eq!(ord.cmp(&u.mul(&w).unwrap(), &v.mul(&w).unwrap()), Ordering::Less);
            }
            // 1 is minimal
            prop_assert_ne!(ord.cmp(&Monomial::one(4), &u), Ordering::Greater);
        }

        #[test]
        fn degree_compatibility(u in mono(), v in mono()) {
            for ord in [TermOrder::DegLex, TermOrder::DegRevLex] {
                if u.degree() < v.degree() {
                    prop_assert_eq!(ord.cmp(&u, &v), Ordering::Less);
                }
            }
        }
    }
}

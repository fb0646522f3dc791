//! Families of affine schemes over a parameter space and the regularity
//! criterion built on doubling coefficients.

use std::collections::HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::{Rational, Rationals};
use crate::gcd::{normalize, QPoly};
use crate::groebner::{buchberger, reduce_basis, GroebnerBasis, Ideal};
use crate::ideal_ops::{eliminate_names, ideal_in_radical, saturate_by_ideal};
use crate::monomial::{Monomial, TermOrder};
use crate::parse::{parse_polynomial, ParseError};
use crate::poly::{PolyRing, Polynomial, Ring, RingExt};
use crate::ratfun::{lcm_denominators, FractionField, RationalFunction};

/// A family `I(a, x) ⊆ ℚ[a, x]`, optionally given through auxiliary
/// indeterminates that are eliminated before anything else happens
/// (for instance the parameter `u` of a parametrized curve).
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    params: Vec<String>,
    vars: Vec<String>,
    hidden: Vec<String>,
    order: TermOrder,
    ring: Ring<Rationals>,
    generators: Vec<QPoly>,
}

impl FamilySpec {
    /// `generators` must live in [`FamilySpec::ring_for`] of the same names.
    pub fn new(
        params: Vec<String>,
        vars: Vec<String>,
        hidden: Vec<String>,
        order: TermOrder,
        generators: Vec<QPoly>,
    ) -> Result<Self> {
        if params.is_empty() {
            return Err(AlgebraError::InvalidArgument("a family needs at least one parameter".into()));
        }
        if vars.is_empty() {
            return Err(AlgebraError::InvalidArgument("a family needs at least one variable".into()));
        }
        if !matches!(order, TermOrder::DegLex | TermOrder::DegRevLex) {
            return Err(AlgebraError::InvalidArgument(format!(
                "term ordering `{}` is not allowed; use deglex or degrevlex",
                order.name()
            )));
        }
        let ring = Self::ring_for(&params, &vars, &hidden)?;
        if generators.iter().all(|g| g.is_zero()) {
            return Err(AlgebraError::InvalidArgument("a family needs a nonzero generator".into()));
        }
        for g in &generators {
            if g.ring() != &ring {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(FamilySpec { params, vars, hidden, order, ring, generators })
    }

    /// Parse generator expressions over the declared names.
    pub fn from_strings(
        params: &[&str],
        vars: &[&str],
        hidden: &[&str],
        order: TermOrder,
        generators: &[&str],
    ) -> std::result::Result<Self, FamilyError> {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let (params, vars, hidden) = (own(params), own(vars), own(hidden));
        let ring = Self::ring_for(&params, &vars, &hidden)?;
        let gens = generators
            .iter()
            .enumerate()
            .map(|(i, g)| parse_polynomial(g, &ring).map_err(|e| FamilyError::Parse { index: i, error: e }))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FamilySpec::new(params, vars, hidden, order, gens)?)
    }

    /// The ring `ℚ[params, vars, hidden]` in which generators are written.
    pub fn ring_for(params: &[String], vars: &[String], hidden: &[String]) -> Result<Ring<Rationals>> {
        let names = params.iter().chain(vars).chain(hidden).cloned();
        PolyRing::new(names, TermOrder::DegRevLex, Rationals)
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn hidden(&self) -> &[String] {
        &self.hidden
    }
    pub fn order(&self) -> TermOrder {
        self.order
    }
    pub fn ring(&self) -> &Ring<Rationals> {
        &self.ring
    }
    pub fn generators(&self) -> &[QPoly] {
        &self.generators
    }
    pub fn nparams(&self) -> usize {
        self.params.len()
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The same family under another ordering of the variables.
    pub fn with_order(&self, order: TermOrder) -> Result<Self> {
        FamilySpec::new(self.params.clone(), self.vars.clone(), self.hidden.clone(), order, self.generators.clone())
    }

    /// `ℚ[a]` under DegRevLex.
    pub fn param_ring(&self) -> Ring<Rationals> {
        PolyRing::new(self.params.iter().cloned(), TermOrder::DegRevLex, Rationals).expect("names are distinct")
    }

    /// `ℚ[x]` under the family ordering.
    pub fn var_ring(&self) -> Ring<Rationals> {
        PolyRing::new(self.vars.iter().cloned(), self.order, Rationals).expect("names are distinct")
    }

    /// `ℚ(a)[x]` under the family ordering.
    pub fn generic_ring(&self) -> Ring<FractionField> {
        PolyRing::new(self.vars.iter().cloned(), self.order, FractionField::new(self.param_ring()))
            .expect("names are distinct")
    }

    /// Generators of `I(a, x) = I ∩ ℚ[a, x]`, in the family ring.
    pub fn total_ideal(&self) -> Result<Ideal<Rationals>> {
        let ideal = Ideal::new(&self.ring, self.generators.iter().cloned())?;
        if self.hidden.is_empty() {
            return Ok(ideal);
        }
        let kill: Vec<&str> = self.hidden.iter().map(String::as_str).collect();
        eliminate_names(&ideal, &kill)
    }
}

/// Failure to build a [`FamilySpec`] from text.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("generator {index}: {error}")]
    Parse { index: usize, error: ParseError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Rewrite `f ∈ ℚ[a, rest]` as a polynomial of `target = ℚ(a)[rest]`, where
/// `param_pos[j]` and `target_pos[j]` say where the `j`-th indeterminate of
/// the source ring goes (exactly one of them is `Some`).
fn to_generic(
    f: &QPoly,
    params: &Ring<Rationals>,
    param_pos: &[Option<usize>],
    target: &Ring<FractionField>,
    target_pos: &[Option<usize>],
) -> Result<Polynomial<FractionField>> {
    let mut buckets: HashMap<Monomial, Vec<(Monomial, Rational)>> = HashMap::new();
    let mut keys: Vec<Monomial> = Vec::new();
    for (m, c) in f.terms() {
        let mut pm = Monomial::one(params.nvars());
        let mut xm = Monomial::one(target.nvars());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if let Some(j) = param_pos[i] {
                pm.set_exponent(j, e);
            } else if let Some(j) = target_pos[i] {
                xm.set_exponent(j, e);
            } else {
                return Err(AlgebraError::UnknownIndeterminate(f.ring().names()[i].clone()));
            }
        }
        let entry = buckets.entry(xm.clone()).or_default();
        if entry.is_empty() {
            keys.push(xm);
        }
        entry.push((pm, c.clone()));
    }
    let terms = keys
        .into_iter()
        .map(|xm| {
            let coeff = Polynomial::from_terms(params, buckets.remove(&xm).expect("bucket"))?;
            Ok((xm, RationalFunction::from_poly(coeff)))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(target, terms)
}

/// The reduced basis of the generic fiber together with its non-constant
/// coefficient list and σ-denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericFiberBasis {
    pub basis: GroebnerBasis<FractionField>,
    pub ncc: Vec<RationalFunction>,
    pub denominator: QPoly,
}

impl GenericFiberBasis {
    pub fn param_ring(&self) -> &Ring<Rationals> {
        self.basis.ring().field().params()
    }
}

/// Non-constant coefficients, element by element in basis order and term by
/// term within each element.
pub fn non_constant_coefficients(elements: &[Polynomial<FractionField>]) -> Vec<RationalFunction> {
    elements.iter().flat_map(|g| g.terms().iter().map(|(_, c)| c)).filter(|c| !c.is_constant()).cloned().collect()
}

/// Reduced σ-basis of `I(a, x) ℚ(a)[x]`.
pub fn generic_fiber_basis(fam: &FamilySpec) -> Result<GenericFiberBasis> {
    let params = fam.param_ring();
    let field = FractionField::new(params.clone());
    let m = fam.nparams();
    let n = fam.nvars();
    let k = fam.hidden.len();
    let param_pos: Vec<Option<usize>> = (0..m + n + k).map(|i| (i < m).then_some(i)).collect();
    let generic = fam.generic_ring();

    let elements = if k == 0 {
        let target_pos: Vec<Option<usize>> = (0..m + n).map(|i| (i >= m).then(|| i - m)).collect();
        let gens = fam
            .generators
            .iter()
            .map(|g| to_generic(g, &params, &param_pos, &generic, &target_pos))
            .collect::<Result<Vec<_>>>()?;
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.len() == 1 {
            // a principal ideal is its own reduced basis
            let g = gens[0].monic()?;
            if g.is_unit() {
                return Err(AlgebraError::DegenerateFamily);
            }
            vec![g]
        } else {
            reduce_basis(&buchberger(&Ideal::new(&generic, gens)?)).into_elements()
        }
    } else {
        // hidden indeterminates first, eliminated by a block ordering
        let mut names: Vec<String> = fam.hidden.clone();
        names.extend(fam.vars.iter().cloned());
        let elim_ring = PolyRing::new(names, TermOrder::BlockElim(k), field.clone())?;
        let target_pos: Vec<Option<usize>> = (0..m + n + k)
            .map(|i| {
                if i < m {
                    None
                } else if i < m + n {
                    Some(i - m + k)
                } else {
                    Some(i - m - n)
                }
            })
            .collect();
        let gens = fam
            .generators
            .iter()
            .map(|g| to_generic(g, &params, &param_pos, &elim_ring, &target_pos))
            .collect::<Result<Vec<_>>>()?;
        let gb = reduce_basis(&buchberger(&Ideal::new(&elim_ring, gens)?));
        if gb.is_unit() {
            return Err(AlgebraError::DegenerateFamily);
        }
        let back: Vec<usize> = (0..n + k).map(|i| i.saturating_sub(k)).collect();
        let kept = gb
            .into_elements()
            .into_iter()
            .filter(|g| g.terms().iter().all(|(mo, _)| mo.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.embed(&generic, &back))
            .collect::<Result<Vec<_>>>()?;
        if kept.is_empty() {
            return Err(AlgebraError::InvalidArgument("the generic fiber is the whole space".into()));
        }
        reduce_basis(&buchberger(&Ideal::new(&generic, kept)?)).into_elements()
    };
    let basis = reduce_basis(&buchberger(&Ideal::new(&generic, elements)?));
    if basis.is_unit() {
        return Err(AlgebraError::DegenerateFamily);
    }
    let ncc = non_constant_coefficients(basis.elements());
    let denominator = lcm_denominators(&params, ncc.iter());
    Ok(GenericFiberBasis { basis, ncc, denominator })
}

/// When to add the generator `d(a) d(e) t - 1` to the doubling ideal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverterPolicy {
    /// Only when the σ-denominator is not constant.
    #[default]
    WhenNeeded,
    /// Always; with `d = 1` the generator is `t - 1`.
    Always,
    /// Never; the test then ignores where the basis fails to specialize.
    Never,
}

impl InverterPolicy {
    pub fn includes(self, denominator: &QPoly) -> bool {
        match self {
            InverterPolicy::WhenNeeded => !denominator.is_unit(),
            InverterPolicy::Always => true,
            InverterPolicy::Never => false,
        }
    }
}

/// The ideals of doubling coefficients and of the diagonal, in
/// `ℚ[a₁…aₘ, e₁…eₘ, t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublingData {
    pub doubled_ring: Ring<Rationals>,
    pub idc: Ideal<Rationals>,
    pub idelta: Ideal<Rationals>,
    pub has_inverter: bool,
    /// Names of the doubled parameters, in the order of the originals.
    pub e_names: Vec<String>,
    pub t_name: String,
}

impl DoublingData {
    pub fn nparams(&self) -> usize {
        self.e_names.len()
    }

    pub fn a_map(&self) -> Vec<usize> {
        (0..self.nparams()).collect()
    }

    pub fn e_map(&self) -> Vec<usize> {
        (self.nparams()..2 * self.nparams()).collect()
    }

    /// Exchange every `aᵢ` with `eᵢ`.
    pub fn swap(&self, f: &QPoly) -> Result<QPoly> {
        let m = self.nparams();
        let map: Vec<usize> = (0..2 * m + 1)
            .map(|i| {
                if i < m {
                    i + m
                } else if i < 2 * m {
                    i - m
                } else {
                    i
                }
            })
            .collect();
        f.embed(&self.doubled_ring, &map)
    }
}

/// Doubled names: `a1 → e1`, `a → e`, otherwise a prefixed fallback; all
/// distinct from the originals.
fn doubled_names(params: &[String]) -> (Vec<String>, String) {
    let mut taken: Vec<String> = params.to_vec();
    let mut fresh = |cand: String| {
        let mut c = cand;
        while taken.contains(&c) {
            c.push('_');
        }
        taken.push(c.clone());
        c
    };
    let by_rule: Vec<Option<String>> =
        params.iter().map(|p| p.strip_prefix('a').map(|rest| format!("e{rest}"))).collect();
    let rule_ok = by_rule.iter().all(|n| n.as_ref().is_some_and(|n| !params.contains(n)));
    let e_names = params
        .iter()
        .zip(by_rule)
        .map(|(p, r)| if rule_ok { fresh(r.expect("rule applies")) } else { fresh(format!("e_{p}")) })
        .collect();
    let t = fresh("t".to_string());
    (e_names, t)
}

/// Build `I(DC_G)` and `I(Δ)` from a generic fiber basis.
pub fn doubling_data(gfb: &GenericFiberBasis, policy: InverterPolicy) -> Result<DoublingData> {
    let params = gfb.param_ring();
    let m = params.nvars();
    let (e_names, t_name) = doubled_names(params.names());
    let names = params.names().iter().cloned().chain(e_names.iter().cloned()).chain([t_name.clone()]);
    let doubled = PolyRing::new(names, TermOrder::DegRevLex, Rationals)?;
    let a_map: Vec<usize> = (0..m).collect();
    let e_map: Vec<usize> = (m..2 * m).collect();
    let mut gens = Vec::new();
    for c in &gfb.ncc {
        let pa = c.num().embed(&doubled, &a_map)?;
        let pe = c.num().embed(&doubled, &e_map)?;
        let da = c.den().embed(&doubled, &a_map)?;
        let de = c.den().embed(&doubled, &e_map)?;
        let g = &(&pa * &de) - &(&pe * &da);
        if !g.is_zero() {
            let g = normalize(&g);
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    let has_inverter = policy.includes(&gfb.denominator);
    if has_inverter {
        let d = &gfb.denominator;
        let t = doubled.var(2 * m);
        let inv = &(&(&d.embed(&doubled, &a_map)? * &d.embed(&doubled, &e_map)?) * &t) - &doubled.one();
        gens.push(inv);
    }
    let idc = Ideal::new(&doubled, gens)?;
    let idelta = Ideal::new(&doubled, (0..m).map(|i| &doubled.var(i) - &doubled.var(m + i)))?;
    Ok(DoublingData { doubled_ring: doubled, idc, idelta, has_inverter, e_names, t_name })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    /// Distinct parameters off `d_σ = 0` give distinct fibers.
    SigmaRegular,
    /// Distinct parameters off `d_σ · h = 0` give distinct fibers.
    GenericallyRegular,
    /// The criteria do not settle the question.
    NotDecided,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::SigmaRegular => 0,
            Verdict::GenericallyRegular => 2,
            Verdict::NotDecided => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SigmaRegular => "SigmaRegular",
            Verdict::GenericallyRegular => "GenericallyRegular",
            Verdict::NotDecided => "NotDecided",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub inverter: InverterPolicy,
    /// Compute the saturation even when the radical test already succeeded.
    pub always_saturate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub verdict: Verdict,
    pub fiber: GenericFiberBasis,
    pub doubling: DoublingData,
    pub radical_test: bool,
    /// Reduced basis of `S(Δ)`, when computed.
    pub saturation: Option<Vec<QPoly>>,
    /// Reduced basis of `S(Δ) ∩ ℚ[a]`, in `ℚ[a]`, when computed.
    pub elimination: Option<Vec<QPoly>>,
    pub witness: Option<QPoly>,
    pub open_set: String,
    pub notes: Vec<String>,
}

impl RegularityReport {
    pub fn denominator(&self) -> &QPoly {
        &self.fiber.denominator
    }
}

fn factor_text(f: &QPoly) -> String {
    let s = f.to_string();
    if f.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `A^m \ {f₁*f₂ = 0}`, skipping constant factors.
pub fn open_set_description(m: usize, factors: &[&QPoly]) -> String {
    let parts: Vec<String> = factors.iter().filter(|f| !f.is_constant()).map(|f| factor_text(f)).collect();
    if parts.is_empty() {
        return format!("A^{m}");
    }
    let body = if parts.len() == 1 { f_strip(&parts[0]) } else { parts.join("*") };
    format!("A^{m} \\ {{{body} = 0}}")
}

fn f_strip(s: &str) -> String {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s).to_string()
}

/// Decide σ-regularity by the radical test; fall back to the generic check.
pub fn check_sigma_regularity(fam: &FamilySpec) -> Result<RegularityReport> {
    analyze(fam, &AnalysisOptions::default())
}

pub fn analyze(fam: &FamilySpec, opts: &AnalysisOptions) -> Result<RegularityReport> {
    let fiber = generic_fiber_basis(fam)?;
    let doubling = doubling_data(&fiber, opts.inverter)?;
    let radical_test = ideal_in_radical(&doubling.idelta, &doubling.idc)?;
    let mut notes = Vec::new();
    if fiber.ncc.is_empty() {
        notes.push("no parameter dependence".to_string());
    }
    if radical_test {
        let mut report = RegularityReport {
            verdict: Verdict::SigmaRegular,
            open_set: open_set_description(fam.nparams(), &[&fiber.denominator]),
            fiber,
            doubling,
            radical_test,
            saturation: None,
            elimination: None,
            witness: None,
            notes,
        };
        if opts.always_saturate {
            let (sat, elim) = saturation_and_elimination(&report.fiber, &report.doubling)?;
            report.saturation = Some(sat);
            report.elimination = Some(elim);
        }
        return Ok(report);
    }
    let mut report = generic_regularity(&fiber, &doubling)?;
    report.notes.extend(notes);
    Ok(report)
}

fn saturation_and_elimination(fiber: &GenericFiberBasis, dd: &DoublingData) -> Result<(Vec<QPoly>, Vec<QPoly>)> {
    let sat = saturate_by_ideal(&dd.idc, &dd.idelta)?;
    let sat_gb = reduce_basis(&buchberger(&sat)).into_elements();
    let sat = Ideal::new(&dd.doubled_ring, sat_gb.iter().cloned())?;
    let mut kill: Vec<&str> = dd.e_names.iter().map(String::as_str).collect();
    kill.push(&dd.t_name);
    let elim = eliminate_names(&sat, &kill)?;
    let params = fiber.param_ring();
    let back: Vec<usize> = (0..2 * dd.nparams() + 1).map(|i| if i < dd.nparams() { i } else { 0 }).collect();
    let elim = elim
        .generators()
        .iter()
        // generators free of e and t, so the collapsed slots are never used
        .map(|g| g.embed(params, &back).map(|g| normalize(&g)))
        .collect::<Result<Vec<_>>>()?;
    Ok((sat_gb, elim))
}

/// Smallest by total degree, then DegRevLex on the leading monomial.
fn pick_witness(elim: &[QPoly]) -> Option<QPoly> {
    elim.iter()
        .filter(|g| !g.is_zero())
        .min_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| TermOrder::DegRevLex.cmp(a.leading_term().unwrap().0, b.leading_term().unwrap().0))
        })
        .cloned()
}

/// The saturation-and-elimination fallback once the radical test has failed.
pub fn generic_regularity(fiber: &GenericFiberBasis, dd: &DoublingData) -> Result<RegularityReport> {
    let (sat, elim) = saturation_and_elimination(fiber, dd)?;
    let m = dd.nparams();
    let witness = pick_witness(&elim);
    let (verdict, open_set) = match &witness {
        Some(h) if h.is_constant() => {
            // S(Δ) ∩ ℚ[a] = (1) happens only when the radical test holds
            (Verdict::SigmaRegular, open_set_description(m, &[&fiber.denominator]))
        }
        Some(h) => (Verdict::GenericallyRegular, open_set_description(m, &[&fiber.denominator, h])),
        None => (Verdict::NotDecided, open_set_description(m, &[&fiber.denominator])),
    };
    let witness = witness.filter(|h| !h.is_constant());
    Ok(RegularityReport {
        verdict,
        fiber: fiber.clone(),
        doubling: dd.clone(),
        radical_test: false,
        saturation: Some(sat),
        elimination: Some(elim),
        witness,
        open_set,
        notes: Vec::new(),
    })
}

/// `I(a, p) ⊆ ℚ[a]`: substitute the point for the variables.
pub fn hough_transform_point(fam: &FamilySpec, p: &[Rational]) -> Result<Ideal<Rationals>> {
    if p.len() != fam.nvars() {
        return Err(AlgebraError::Dimension { expected: fam.nvars(), found: p.len() });
    }
    let params = fam.param_ring();
    let total = fam.total_ideal()?;
    let bindings: Vec<(&str, QPoly)> =
        fam.vars.iter().map(String::as_str).zip(p.iter().map(|v| params.rational(v))).collect();
    let gens = total.generators().iter().map(|g| g.substitute(&bindings, &params)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&params, gens)
}

/// `I(α, x) ⊆ ℚ[x]`: substitute the parameter point, then drop hidden
/// indeterminates.
pub fn fiber_ideal(fam: &FamilySpec, alpha: &[Rational]) -> Result<Ideal<Rationals>> {
    if alpha.len() != fam.nparams() {
        return Err(AlgebraError::Dimension { expected: fam.nparams(), found: alpha.len() });
    }
    let xr = fam.var_ring();
    let work = if fam.hidden.is_empty() {
        xr.clone()
    } else {
        PolyRing::new(fam.vars.iter().chain(&fam.hidden).cloned(), fam.order, Rationals)?
    };
    let bindings: Vec<(&str, QPoly)> =
        fam.params.iter().map(String::as_str).zip(alpha.iter().map(|v| work.rational(v))).collect();
    let gens = fam.generators.iter().map(|g| g.substitute(&bindings, &work)).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&work, gens)?;
    if fam.hidden.is_empty() {
        return Ok(ideal);
    }
    let kill: Vec<&str> = fam.hidden.iter().map(String::as_str).collect();
    let elim = eliminate_names(&ideal, &kill)?;
    let n = fam.nvars();
    let back: Vec<usize> = (0..work.nvars()).map(|i| if i < n { i } else { 0 }).collect();
    let gens = elim.generators().iter().map(|g| g.embed(&xr, &back)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&xr, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational_from_int;
    use crate::parse::parse_polynomial;

    fn fam(params: &[&str], vars: &[&str], gens: &[&str]) -> FamilySpec {
        FamilySpec::from_strings(params, vars, &[], TermOrder::DegRevLex, gens).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational_from_int(x)).collect()
    }

    #[test]
    fn validation() {
        let e = FamilySpec::from_strings(&[], &["x"], &[], TermOrder::DegRevLex, &["x"]);
        assert!(matches!(e, Err(FamilyError::Algebra(AlgebraError::InvalidArgument(_)))));
        let e = FamilySpec::from_strings(&["a"], &["x"], &[], TermOrder::Lex, &["x-a"]);
        assert!(matches!(e, Err(FamilyError::Algebra(AlgebraError::InvalidArgument(_)))));
        let e = FamilySpec::from_strings(&["a"], &["x"], &[], TermOrder::DegRevLex, &["x-b"]);
        assert!(matches!(e, Err(FamilyError::Parse { index: 0, .. })));
        let e = FamilySpec::from_strings(&["a"], &["x"], &[], TermOrder::DegRevLex, &["0"]);
        assert!(e.is_err());
    }

    #[test]
    fn degenerate_family() {
        let f = fam(&["a"], &["x"], &["a*x-1", "x"]);
        assert_eq!(generic_fiber_basis(&f), Err(AlgebraError::DegenerateFamily));
        let f = fam(&["a"], &["x"], &["a+1"]);
        assert_eq!(generic_fiber_basis(&f), Err(AlgebraError::DegenerateFamily));
    }

    #[test]
    fn canonical_line_has_polynomial_coefficients() {
        let f = fam(&["a1", "a2", "a3", "a4"], &["x", "y", "z"], &["x-a1*z-a2", "y-a3*z-a4"]);
        let g = generic_fiber_basis(&f).unwrap();
        assert!(g.denominator.is_unit());
        let shown: Vec<String> = g.ncc.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown.len(), 4);
        for s in ["-a1", "-a2", "-a3", "-a4"] {
            assert!(shown.contains(&s.to_string()), "{shown:?}");
        }
    }

    #[test]
    fn doubled_names_follow_the_a_to_e_rule() {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(doubled_names(&own(&["a1", "a2"])), (own(&["e1", "e2"]), "t".to_string()));
        assert_eq!(doubled_names(&own(&["a"])), (own(&["e"]), "t".to_string()));
        assert_eq!(doubled_names(&own(&["m", "t"])), (own(&["e_m", "e_t"]), "t_".to_string()));
        assert_eq!(doubled_names(&own(&["a", "e"])), (own(&["e_a", "e_e"]), "t".to_string()));
    }

    #[test]
    fn first_conic_is_regular() {
        let f = fam(&["a"], &["x", "y"], &["x^2-a^2*y-a^3"]);
        let r = check_sigma_regularity(&f).unwrap();
        assert_eq!(r.verdict, Verdict::SigmaRegular);
        assert!(!r.doubling.has_inverter);
        let s = &r.doubling.doubled_ring;
        let expected = Ideal::new(s, ["a^2-e^2", "a^3-e^3"].map(|g| parse_polynomial(g, s).unwrap())).unwrap();
        assert!(r.doubling.idc.same_ideal(&expected).unwrap());
        assert_eq!(r.open_set, "A^1");
    }

    #[test]
    fn second_conic_is_not_decided() {
        let f = fam(&["a"], &["x", "y"], &["x^2-a^2*y-a^4"]);
        let r = check_sigma_regularity(&f).unwrap();
        assert_eq!(r.verdict, Verdict::NotDecided);
        assert!(!r.radical_test);
        assert_eq!(r.elimination.as_deref(), Some(&[][..]));
        assert!(r.witness.is_none());
    }

    #[test]
    fn parameter_free_family() {
        let f = fam(&["a"], &["x"], &["x^2-1"]);
        let r = check_sigma_regularity(&f).unwrap();
        assert_eq!(r.verdict, Verdict::NotDecided);
        assert!(r.notes.iter().any(|n| n == "no parameter dependence"));
    }

    #[test]
    fn transforms_and_fibers() {
        let f = fam(&["a", "b"], &["x", "y"], &["y*(x-a*y)^2-b*(x^4+y^4)"]);
        let t = hough_transform_point(&f, &q(&[0, 1])).unwrap();
        let pr = f.param_ring();
        assert!(t.same_ideal(&Ideal::new(&pr, [parse_polynomial("a^2-b", &pr).unwrap()]).unwrap()).unwrap());

        let f = fam(&["a", "b"], &["x", "y"], &["x^2+a*y^2-b"]);
        let t = hough_transform_point(&f, &q(&[0, 0])).unwrap();
        assert_eq!(t.generators()[0].to_string(), "-b");
        let c = fiber_ideal(&f, &q(&[-1, 0])).unwrap();
        assert_eq!(c.generators()[0].to_string(), "x^2 - y^2");
        assert!(matches!(fiber_ideal(&f, &q(&[1])), Err(AlgebraError::Dimension { .. })));
        assert!(matches!(hough_transform_point(&f, &q(&[1, 2, 3])), Err(AlgebraError::Dimension { .. })));

        let f = fam(&["a"], &["x"], &["a*x^2+x"]);
        assert_eq!(fiber_ideal(&f, &q(&[0])).unwrap().generators()[0].to_string(), "x");
        let f = fam(&["a"], &["x"], &["x-a"]);
        assert_eq!(hough_transform_point(&f, &q(&[0])).unwrap().generators()[0].to_string(), "-a");
    }

    #[test]
    fn viviani_fiber_by_substitution() {
        let f = fam(&["a1", "a2"], &["x", "y", "z"], &["a2*(z-a1)^2+y^2-a2*a1^2", "x^2+y^2+z^2-4*a1^2"]);
        let c = fiber_ideal(&f, &q(&[1, 1])).unwrap();
        let xr = f.var_ring();
        let expected =
            Ideal::new(&xr, ["(z-1)^2+y^2-1", "x^2+y^2+z^2-4"].map(|g| parse_polynomial(g, &xr).unwrap())).unwrap();
        assert!(c.same_ideal(&expected).unwrap());
    }

    #[test]
    fn open_set_text() {
        let r = PolyRing::new(["a1", "a2"], TermOrder::DegRevLex, Rationals).unwrap();
        let d = parse_polynomial("a1", &r).unwrap();
        let h = parse_polynomial("a1^2+a2^2", &r).unwrap();
        let one = r.one();
        assert_eq!(open_set_description(2, &[&one]), "A^2");
        assert_eq!(open_set_description(2, &[&one, &d]), "A^2 \\ {a1 = 0}");
        assert_eq!(open_set_description(2, &[&h]), "A^2 \\ {a1^2 + a2^2 = 0}");
        assert_eq!(open_set_description(2, &[&d, &h]), "A^2 \\ {a1*(a1^2 + a2^2) = 0}");
    }
}

//! Accumulator voting over a box of parameter values.
//!
//! The box is cut into `resolution^m` half-open cells `∏ [lo, hi)`. A data
//! point `p` votes for a cell when every generator of its transform `I(a, p)`
//! is incident to the cell: it takes strictly positive and strictly negative
//! values among the cell corners, or it vanishes at the lower corner or at
//! the center. Everything is evaluated exactly.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::AlgebraError;
use crate::field::{render_rational, Rational};
use crate::gcd::{normalize, QPoly};
use crate::hough::{generic_fiber_basis, FamilySpec};
use crate::poly::RingExt;

/// Largest number of cells an accumulator may have.
pub const MAX_CELLS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DetectError {
    #[error("resolution must be positive")]
    ZeroResolution,
    #[error("box for parameter {0} has zero or negative width")]
    EmptyBox(usize),
    #[error("accumulator would have more than {MAX_CELLS} cells")]
    TooManyCells,
    #[error("box has {found} intervals but the family has {expected} parameters")]
    BoxArity { expected: usize, found: usize },
    #[error("accumulator holds no votes")]
    NoVotes,
    #[error("cannot sample points: {0}")]
    Sampling(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type DetectResult<T> = std::result::Result<T, DetectError>;

/// Synthetic data: `count` points on the fiber over `at`, free coordinates
/// drawn from `range`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSpec {
    #[serde(serialize_with = "ser_rationals")]
    pub at: Vec<Rational>,
    pub count: usize,
    pub seed: u64,
    #[serde(serialize_with = "ser_pair")]
    pub range: (Rational, Rational),
}

/// Detector settings attached to a family file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DetectConfig {
    /// One closed interval per parameter, in parameter order.
    pub bounds: Vec<(Rational, Rational)>,
    pub resolution: usize,
    pub points: Vec<Vec<Rational>>,
    /// CSV files with more points, relative to the family file.
    pub csv: Vec<String>,
    pub sample: Option<SampleSpec>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(render_rational))
}

fn ser_pair<S: serde::Serializer>(v: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([render_rational(&v.0), render_rational(&v.1)])
}

fn ser_bounds<S: serde::Serializer>(v: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(a, b)| [render_rational(a), render_rational(b)]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Accumulator {
    #[serde(rename = "box", serialize_with = "ser_bounds")]
    bounds: Vec<(Rational, Rational)>,
    resolution: usize,
    /// Row-major, first parameter most significant.
    counts: Vec<u64>,
    /// Cells met by the denominator hypersurface.
    flagged: Vec<bool>,
}

impl Accumulator {
    pub fn new(bounds: Vec<(Rational, Rational)>, resolution: usize) -> DetectResult<Self> {
        if resolution == 0 {
            return Err(DetectError::ZeroResolution);
        }
        if let Some(i) = bounds.iter().position(|(lo, hi)| hi <= lo) {
            return Err(DetectError::EmptyBox(i));
        }
        let cells = u32::try_from(bounds.len())
            .ok()
            .and_then(|m| resolution.checked_pow(m))
            .filter(|&c| c <= MAX_CELLS)
            .ok_or(DetectError::TooManyCells)?;
        Ok(Accumulator { bounds, resolution, counts: vec![0; cells], flagged: vec![false; cells] })
    }

    pub fn bounds(&self) -> &[(Rational, Rational)] {
        &self.bounds
    }
    pub fn resolution(&self) -> usize {
        self.resolution
    }
    pub fn dims(&self) -> usize {
        self.bounds.len()
    }
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
    pub fn flagged(&self) -> &[bool] {
        &self.flagged
    }
    pub fn total_votes(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn cell_width(&self, axis: usize) -> Rational {
        let (lo, hi) = &self.bounds[axis];
        (hi - lo) / Rational::from_integer(self.resolution.into())
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims()];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.resolution;
            flat /= self.resolution;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.resolution + i)
    }

    pub fn count_at(&self, idx: &[usize]) -> u64 {
        self.counts[self.flat_index(idx)]
    }

    fn grid_value(&self, axis: usize, k: usize) -> Rational {
        let (lo, _) = &self.bounds[axis];
        lo + self.cell_width(axis) * Rational::from_integer(k.into())
    }

    /// Center of a cell.
    pub fn cell_center(&self, idx: &[usize]) -> Vec<Rational> {
        let half = Rational::new(1.into(), 2.into());
        idx.iter().enumerate().map(|(axis, &i)| &self.grid_value(axis, i) + &self.cell_width(axis) * &half).collect()
    }

    /// Half-open cell `∏ [lo, hi)` containing `point`, if it lies in the box.
    pub fn cell_of(&self, point: &[Rational]) -> Option<Vec<usize>> {
        if point.len() != self.dims() {
            return None;
        }
        point
            .iter()
            .enumerate()
            .map(|(axis, v)| {
                let (lo, hi) = &self.bounds[axis];
                if v < lo || v >= hi {
                    return None;
                }
                let k = ((v - lo) / self.cell_width(axis)).floor().to_integer();
                usize::try_from(k).ok()
            })
            .collect()
    }
}

/// Signs of a polynomial on the half-step lattice: even coordinates are
/// cell corners, odd ones cell centers.
struct SignGrid {
    signs: Vec<i8>,
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// The substitution `a_j = lo_j + (w_j / 2) k_j`, so that lattice points
/// have integer coordinates `k_j ∈ [0, 2 * resolution]`.
struct Lattice {
    per_axis: usize,
    m: usize,
    lo: Vec<Rational>,
    half: Vec<Rational>,
}

impl Lattice {
    fn new(acc: &Accumulator) -> Self {
        let two = Rational::from_integer(2.into());
        Lattice {
            per_axis: 2 * acc.resolution + 1,
            m: acc.dims(),
            lo: acc.bounds.iter().map(|(lo, _)| lo.clone()).collect(),
            half: (0..acc.dims()).map(|a| acc.cell_width(a) / &two).collect(),
        }
    }

    fn len(&self) -> usize {
        self.per_axis.pow(self.m as u32)
    }

    fn coords(&self, mut flat: usize) -> Vec<usize> {
        let mut k = vec![0; self.m];
        for slot in k.iter_mut().rev() {
            *slot = flat % self.per_axis;
            flat /= self.per_axis;
        }
        k
    }

    fn exact_sign(&self, f: &QPoly, k: &[usize]) -> Result<i8, AlgebraError> {
        let pt: Vec<Rational> =
            (0..self.m).map(|j| &self.lo[j] + &self.half[j] * Rational::from_integer(k[j].into())).collect();
        Ok(sign(&f.eval(&pt)?))
    }

    fn signs(&self, f: &QPoly) -> Result<SignGrid, AlgebraError> {
        let ring = f.ring();
        let images: Vec<QPoly> =
            (0..self.m).map(|j| &ring.rational(&self.lo[j]) + &ring.var(j).scale(&self.half[j])).collect();
        let g = normalize(&f.compose(ring, &images)?);
        let terms: Option<Vec<(Vec<u32>, i128)>> =
            g.terms().iter().map(|(mo, c)| c.numer().to_i128().map(|n| (mo.exponents().to_vec(), n))).collect();
        let deg = g.terms().iter().flat_map(|(mo, _)| mo.exponents().iter().copied()).max().unwrap_or(0) as usize;
        let powers: Option<Vec<Vec<i128>>> = (0..self.per_axis)
            .map(|k| {
                let mut row = vec![1i128];
                for _ in 0..deg {
                    row.push(row.last()?.checked_mul(k as i128)?);
                }
                Some(row)
            })
            .collect();
        let mut signs = Vec::with_capacity(self.len());
        for flat in 0..self.len() {
            let k = self.coords(flat);
            let fast = terms.as_ref().zip(powers.as_ref()).and_then(|(terms, pw)| {
                let mut acc = 0i128;
                for (e, c) in terms {
                    let mut t = *c;
                    for (j, &ej) in e.iter().enumerate() {
                        if ej > 0 {
                            t = t.checked_mul(pw[k[j]][ej as usize])?;
                        }
                    }
                    acc = acc.checked_add(t)?;
                }
                Some(acc.signum() as i8)
            });
            signs.push(match fast {
                Some(s) => s,
                None => self.exact_sign(f, &k)?,
            });
        }
        Ok(SignGrid { signs })
    }
}

/// Corner offsets `{0, 2}^m` in the half-step lattice.
fn corner_offsets(m: usize, per_axis: usize) -> Vec<usize> {
    (0..1usize << m)
        .map(|bits| {
            (0..m).fold(0, |acc, a| {
                let bit = (bits >> (m - 1 - a)) & 1;
                acc * per_axis + 2 * bit
            })
        })
        .collect()
}

fn incident(grid: &SignGrid, acc: &Accumulator, flat: usize, offsets: &[usize]) -> bool {
    let idx = acc.multi_index(flat);
    let per_axis = 2 * acc.resolution + 1;
    let base = idx.iter().fold(0, |a, &i| a * per_axis + 2 * i);
    let center = idx.iter().fold(0, |a, &i| a * per_axis + 2 * i + 1);
    if grid.signs[center] == 0 || grid.signs[base] == 0 {
        return true;
    }
    let (mut pos, mut neg) = (false, false);
    for &o in offsets {
        match grid.signs[base + o] {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
        if pos && neg {
            return true;
        }
    }
    false
}

fn incident_cells(grids: &[SignGrid], acc: &Accumulator, offsets: &[usize]) -> Vec<bool> {
    (0..acc.counts.len()).map(|c| grids.iter().all(|g| incident(g, acc, c, offsets))).collect()
}

/// Generators of `I(a, p)` for each point, computed from one elimination.
fn transforms(fam: &FamilySpec, points: &[Vec<Rational>]) -> DetectResult<Vec<Vec<QPoly>>> {
    let total = fam.total_ideal()?;
    let params = fam.param_ring();
    points
        .iter()
        .map(|p| {
            if p.len() != fam.nvars() {
                return Err(AlgebraError::Dimension { expected: fam.nvars(), found: p.len() }.into());
            }
            let bindings: Vec<(&str, QPoly)> =
                fam.vars().iter().map(String::as_str).zip(p.iter().map(|v| params.rational(v))).collect();
            let mut gens = Vec::new();
            for g in total.generators() {
                let s = g.substitute(&bindings, &params)?;
                if !s.is_zero() {
                    gens.push(s);
                }
            }
            Ok(gens)
        })
        .collect()
}

/// Add one vote per point to every cell incident to the point's transform.
pub fn accumulate_votes(fam: &FamilySpec, points: &[Vec<Rational>], acc: Accumulator) -> DetectResult<Accumulator> {
    let mut acc = acc;
    if acc.dims() != fam.nparams() {
        return Err(DetectError::BoxArity { expected: fam.nparams(), found: acc.dims() });
    }
    let lattice = Lattice::new(&acc);
    let offsets = corner_offsets(acc.dims(), 2 * acc.resolution + 1);
    if let Ok(gfb) = generic_fiber_basis(fam) {
        if !gfb.denominator.is_constant() {
            let grid = lattice.signs(&gfb.denominator)?;
            let hit = incident_cells(&[grid], &acc, &offsets);
            for (f, h) in acc.flagged.iter_mut().zip(hit) {
                *f |= h;
            }
        }
    }
    for gens in transforms(fam, points)? {
        if gens.iter().any(|g| g.is_constant()) {
            // a nonzero constant never vanishes: the point lies on no fiber
            continue;
        }
        let grids = gens.iter().map(|g| lattice.signs(g)).collect::<Result<Vec<_>, _>>()?;
        let hits = incident_cells(&grids, &acc, &offsets);
        for (c, hit) in acc.counts.iter_mut().zip(hits) {
            *c += u64::from(hit);
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Peak {
    pub index: Vec<usize>,
    #[serde(serialize_with = "ser_rationals")]
    pub center: Vec<Rational>,
    pub count: u64,
    pub flagged: bool,
}

/// The cell with most votes; ties go to the lexicographically first index.
pub fn detect_peak(acc: &Accumulator) -> DetectResult<Peak> {
    let mut best = 0usize;
    for (i, &c) in acc.counts.iter().enumerate() {
        if c > acc.counts[best] {
            best = i;
        }
    }
    if acc.counts[best] == 0 {
        return Err(DetectError::NoVotes);
    }
    let index = acc.multi_index(best);
    Ok(Peak { center: acc.cell_center(&index), count: acc.counts[best], flagged: acc.flagged[best], index })
}

fn random_rational(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let k: i64 = rng.gen_range(0..=1000);
    lo + (hi - lo) * Rational::new(k.into(), 1000.into())
}

/// Move every coordinate by `k/1000 · sigma` with `k` uniform in `[-1000, 1000]`.
pub fn perturb(points: &[Vec<Rational>], sigma: &Rational, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|v| {
                    let k: i64 = rng.gen_range(-1000..=1000);
                    v + sigma * Rational::new(k.into(), 1000.into())
                })
                .collect()
        })
        .collect()
}

/// For each generator, the variable it will be solved for: one that occurs
/// only linearly and is not already claimed.
fn solve_targets(gens: &[QPoly], n: usize) -> DetectResult<Vec<usize>> {
    let mut used = Vec::new();
    for g in gens {
        let pick = (0..n).rev().find(|&v| !used.contains(&v) && g.degree_in(v) == 1);
        match pick {
            Some(v) => used.push(v),
            None => {
                return Err(DetectError::Sampling(format!("`{g}` has no variable of degree one left to solve for")))
            }
        }
    }
    Ok(used)
}

/// Rational points on the fiber over `spec.at`.
///
/// Works for fibers where each generator can be solved for its own variable
/// once the others are known (lines, graphs, and similar).
pub fn sample_fiber(fam: &FamilySpec, spec: &SampleSpec) -> DetectResult<Vec<Vec<Rational>>> {
    let fiber = crate::hough::fiber_ideal(fam, &spec.at)?;
    let gens: Vec<QPoly> = fiber.generators().to_vec();
    let n = fam.nvars();
    let targets = solve_targets(&gens, n)?;
    let (lo, hi) = &spec.range;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let mut attempts = 0usize;
    while out.len() < spec.count {
        attempts += 1;
        if attempts > 100 * spec.count.max(1) {
            return Err(DetectError::Sampling("too many degenerate draws".into()));
        }
        let mut pt: Vec<Option<Rational>> =
            (0..n).map(|v| (!targets.contains(&v)).then(|| random_rational(&mut rng, lo, hi))).collect();
        if let Some(p) = solve_in_order(&gens, &targets, &mut pt)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn solve_in_order(
    gens: &[QPoly],
    targets: &[usize],
    pt: &mut [Option<Rational>],
) -> DetectResult<Option<Vec<Rational>>> {
    let mut pending: Vec<usize> = (0..gens.len()).collect();
    while !pending.is_empty() {
        let mut progressed = false;
        for &gi in pending.clone().iter() {
            let g = &gens[gi];
            let v = targets[gi];
            let unknown = g.support().into_iter().any(|u| u != v && pt[u].is_none());
            if unknown {
                continue;
            }
            // g = c1 * v + c0 with c0, c1 evaluated at the known coordinates
            let mut known: Vec<Rational> = pt.iter().map(|x| x.clone().unwrap_or_else(Rational::zero)).collect();
            known[v] = Rational::zero();
            let c0 = g.eval(&known)?;
            known[v] = Rational::from_integer(1.into());
            let c1 = &g.eval(&known)? - &c0;
            if c1.is_zero() {
                return Ok(None);
            }
            pt[v] = Some(-c0 / c1);
            pending.retain(|&p| p != gi);
            progressed = true;
        }
        if !progressed {
            return Err(DetectError::Sampling("generators cannot be solved one after another".into()));
        }
    }
    let p: Vec<Rational> = pt.iter().map(|x| x.clone().expect("all solved")).collect();
    for g in gens {
        if !g.eval(&p)?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(p))
}

/// Loads the points of one CSV path.
pub type CsvReader<'a> = dyn Fn(&str) -> Result<Vec<Vec<Rational>>, String> + 'a;

/// Gather the data points of a config, reading CSV files through `read`.
pub fn collect_points(
    fam: &FamilySpec,
    cfg: &DetectConfig,
    read_csv: &CsvReader<'_>,
) -> DetectResult<Vec<Vec<Rational>>> {
    let mut pts = cfg.points.clone();
    for path in &cfg.csv {
        pts.extend(read_csv(path).map_err(DetectError::Sampling)?);
    }
    if let Some(s) = &cfg.sample {
        pts.extend(sample_fiber(fam, s)?);
    }
    Ok(pts)
}

/// Convenience wrapper: vote and locate the peak.
pub fn run_detector(
    fam: &FamilySpec,
    points: &[Vec<Rational>],
    cfg: &DetectConfig,
) -> DetectResult<(Accumulator, Peak)> {
    let acc = accumulate_votes(fam, points, Accumulator::new(cfg.bounds.clone(), cfg.resolution)?)?;
    let peak = detect_peak(&acc)?;
    Ok((acc, peak))
}

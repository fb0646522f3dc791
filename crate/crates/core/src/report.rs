//! Text and JSON renderings of analysis results.

use serde_json::{json, Value};

use crate::detector::{Accumulator, Peak};
use crate::field::render_rational;
use crate::groebner::Ideal;
use crate::hough::{GenericFiberBasis, RegularityReport};
use crate::Rationals;

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Machine-readable report.
pub fn report_json(r: &RegularityReport) -> Value {
    json!({
        "verdict": r.verdict.to_string(),
        "denominator": r.fiber.denominator.to_string(),
        "ncc": strings(&r.fiber.ncc),
        "idc_generators": strings(r.doubling.idc.generators()),
        "saturation_generators": r.saturation.as_deref().map(strings),
        "witness": r.witness.as_ref().map(ToString::to_string),
        "open_set": r.open_set,
        "basis": strings(r.fiber.basis.elements()),
        "radical_test": r.radical_test,
        "inverter": r.doubling.has_inverter,
        "diagonal_generators": strings(r.doubling.idelta.generators()),
        "elimination_generators": r.elimination.as_deref().map(strings),
        "doubled_ring": r.doubling.doubled_ring.names(),
        "notes": r.notes,
    })
}

fn list(out: &mut String, title: &str, items: &[String]) {
    out.push_str(title);
    out.push('\n');
    if items.is_empty() {
        out.push_str("  (none)\n");
    }
    for i in items {
        out.push_str("  ");
        out.push_str(i);
        out.push('\n');
    }
}

/// The generic fiber basis, its coefficient list and denominator.
pub fn basis_text(g: &GenericFiberBasis) -> String {
    let mut out = String::new();
    list(&mut out, "reduced basis:", &strings(g.basis.elements()));
    list(&mut out, "non-constant coefficients:", &strings(&g.ncc));
    out.push_str(&format!("denominator: {}\n", g.denominator));
    out
}

/// Human-readable report.
pub fn report_text(r: &RegularityReport) -> String {
    let mut out = format!("verdict: {}\n", r.verdict);
    out.push_str(&basis_text(&r.fiber));
    out.push_str(&format!("ring: {}\n", r.doubling.doubled_ring.names().join(", ")));
    list(&mut out, "doubling ideal:", &strings(r.doubling.idc.generators()));
    list(&mut out, "diagonal ideal:", &strings(r.doubling.idelta.generators()));
    out.push_str(&format!("radical test: {}\n", r.radical_test));
    if let Some(s) = &r.saturation {
        list(&mut out, "saturation:", &strings(s));
    }
    if let Some(e) = &r.elimination {
        list(&mut out, "saturation in parameters:", &strings(e));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("witness: {w}\n"));
    }
    out.push_str(&format!("open set: {}\n", r.open_set));
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

pub fn ideal_json(i: &Ideal<Rationals>) -> Value {
    json!({ "ring": i.ring().names(), "generators": strings(i.generators()) })
}

pub fn ideal_text(i: &Ideal<Rationals>) -> String {
    let mut out = String::new();
    list(&mut out, &format!("ideal in Q[{}]:", i.ring().names().join(", ")), &strings(i.generators()));
    out
}

pub fn peak_json(acc: &Accumulator, peak: &Peak, points: usize) -> Value {
    json!({
        "points": points,
        "resolution": acc.resolution(),
        "box": acc.bounds().iter().map(|(a, b)| [render_rational(a), render_rational(b)]).collect::<Vec<_>>(),
        "total_votes": acc.total_votes(),
        "peak": peak,
        "flagged_cells": acc.flagged().iter().filter(|&&f| f).count(),
    })
}

pub fn peak_text(acc: &Accumulator, peak: &Peak, names: &[String], points: usize) -> String {
    let center: Vec<String> = names
        .iter()
        .zip(&peak.center)
        .map(|(n, c)| format!("{n} = {} (~{:.4})", render_rational(c), rational_to_f64(c)))
        .collect();
    let mut out = format!("points: {points}\nresolution: {}\ntotal votes: {}\n", acc.resolution(), acc.total_votes());
    out.push_str(&format!("peak cell: {:?} with {} votes\n", peak.index, peak.count));
    out.push_str(&format!("peak center: {}\n", center.join(", ")));
    let flagged = acc.flagged().iter().filter(|&&f| f).count();
    if flagged > 0 {
        out.push_str(&format!("cells meeting the denominator hypersurface: {flagged}\n"));
    }
    if peak.flagged {
        out.push_str("warning: the peak cell meets the denominator hypersurface\n");
    }
    out
}

pub fn rational_to_f64(q: &crate::Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

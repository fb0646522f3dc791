//! Invariants of the family layer and the detector on random inputs.

use hough_core::detector::{perturb, run_detector, sample_fiber, DetectConfig, SampleSpec};
use hough_core::family_file::{parse_family_file, render_family_file};
use hough_core::field::rational_from_int;
use hough_core::{check_sigma_regularity, fiber_ideal, hough_transform_point, FamilySpec, Rational, TermOrder};
use num_traits::Signed;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn line() -> FamilySpec {
    FamilySpec::from_strings(&["a1", "a2"], &["x", "y"], &[], TermOrder::DegRevLex, &["y - a1*x - a2"]).unwrap()
}

fn circle() -> FamilySpec {
    FamilySpec::from_strings(&["a1", "a2"], &["x", "y"], &[], TermOrder::DegRevLex, &["(x-a1)^2 + (y-a2)^2 - 1"])
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    /// p lies on the fiber over α exactly when α lies on the transform of p.
    #[test]
    fn transform_and_fiber_are_dual(alpha in proptest::collection::vec(small_rational(), 2),
                                    p in proptest::collection::vec(small_rational(), 2)) {
        for fam in [line(), circle()] {
            let on_fiber = fiber_ideal(&fam, &alpha).unwrap().generators().iter().all(|g| g.eval(&p).unwrap() == rational_from_int(0));
            let on_transform = hough_transform_point(&fam, &p).unwrap().generators().iter().all(|g| g.eval(&alpha).unwrap() == rational_from_int(0));
            prop_assert_eq!(on_fiber, on_transform);
        }
    }

    /// Sampled points lie on their fiber, and the true cell collects every vote.
    #[test]
    fn noiseless_samples_vote_for_their_cell(a1 in -3i64..=3, a2 in -3i64..=3, seed in 0u64..1000) {
        let fam = line();
        // slightly off the lattice so α is interior to its cell
        let at = vec![Rational::new((8 * a1 + 1).into(), 8.into()), Rational::new((8 * a2 - 1).into(), 8.into())];
        let spec = SampleSpec { at: at.clone(), count: 12, seed, range: (rational_from_int(-2), rational_from_int(2)) };
        let pts = sample_fiber(&fam, &spec).unwrap();
        let fiber = fiber_ideal(&fam, &at).unwrap();
        for p in &pts {
            prop_assert!(fiber.generators().iter().all(|g| g.eval(p).unwrap() == rational_from_int(0)));
        }
        let cfg = DetectConfig {
            bounds: vec![(rational_from_int(-4), rational_from_int(4)); 2],
            resolution: 16,
            ..DetectConfig::default()
        };
        let (acc, peak) = run_detector(&fam, &pts, &cfg).unwrap();
        prop_assert_eq!(acc.count_at(&acc.cell_of(&at).unwrap()), 12);
        prop_assert_eq!(peak.count, 12);
    }

    /// Perturbation moves each coordinate by at most σ and depends only on the seed.
    #[test]
    fn perturbation_bound(seed in any::<u64>(), pts in proptest::collection::vec(proptest::collection::vec(small_rational(), 3), 1..6)) {
        let sigma = Rational::new(1.into(), 50.into());
        let a = perturb(&pts, &sigma, seed);
        prop_assert_eq!(&a, &perturb(&pts, &sigma, seed));
        for (p, q) in pts.iter().zip(&a) {
            for (x, y) in p.iter().zip(q) {
                prop_assert!((x - y).abs() <= sigma);
            }
        }
    }

    /// Rendering a family and parsing it back gives the same family and verdict.
    #[test]
    fn family_text_round_trip(c in proptest::collection::vec(-3i64..=3, 3)) {
        let text = format!("param a b\nvar x y\ngen x^2 + ({})*a*y - ({})*b^2 + ({})*a*b\n", c[0], c[1], c[2]);
        let f = match parse_family_file(&text) {
            Ok(f) => f,
            Err(_) => return Ok(()),
        };
        let g = parse_family_file(&render_family_file(&f)).unwrap();
        prop_assert_eq!(&g, &f);
        if let (Ok(r1), Ok(r2)) = (check_sigma_regularity(&f.family), check_sigma_regularity(&g.family)) {
            prop_assert_eq!(r1.verdict, r2.verdict);
        }
    }
}

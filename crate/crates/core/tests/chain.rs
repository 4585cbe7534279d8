use std::f64::consts::{FRAC_PI_2, PI, TAU};

use closure_core::chain::{
    is_closure_config, monodromy_defect, run_chain, run_chain_oriented, seed_element, step,
    ClosureVerdict, Letter, Orientation, Word,
};
use closure_core::conic::{centers_ellipse, chord_through_centers, fit_dual_conic};
use closure_core::geom::{wrap_pi, Annulus, Chord, Point};
use proptest::prelude::*;

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn concentric(big_r: f64, r: f64) -> Annulus {
    Annulus::from_radii(big_r, r, 0.0).unwrap()
}

#[test]
fn seed_circle_concentric() {
    let a = concentric(3.0, 1.0);
    let e = seed_element(&a, Letter::C, 0.0).unwrap();
    let c = e.circle().unwrap();
    assert!(c.center.dist(Point::new(2.0, 0.0)) < 1e-14);
    assert!((c.radius - 1.0).abs() < 1e-14);
}

#[test]
fn seed_chord_concentric() {
    let a = concentric(2.0, 1.0);
    let e = seed_element(&a, Letter::S, -FRAC_PI_2).unwrap();
    let ch = e.chord().unwrap();
    for p in ch.endpoints {
        assert!((p.y + 1.0).abs() < 1e-14);
        assert!((p.x.abs() - 3f64.sqrt()).abs() < 1e-14);
    }
    assert!((ch.endpoints[0].x + ch.endpoints[1].x).abs() < 1e-14);
}

#[test]
fn seed_rotation_is_rigid_when_concentric() {
    let a = concentric(3.0, 1.0);
    let e0 = seed_element(&a, Letter::C, 0.3).unwrap();
    let e1 = seed_element(&a, Letter::C, 0.8).unwrap();
    let rotated = e0.circle().unwrap().center.rotate(0.5);
    assert!(rotated.dist(e1.circle().unwrap().center) < 1e-14);

    let b = Annulus::from_radii(3.0, 1.0, 0.8).unwrap();
    let e0 = seed_element(&b, Letter::C, 0.3).unwrap();
    let e1 = seed_element(&b, Letter::C, 0.8).unwrap();
    let rotated = e0.circle().unwrap().center.rotate(0.5);
    assert!(rotated.dist(e1.circle().unwrap().center) > 1e-3);
}

#[test]
fn circle_to_chord_exits_opposite_tangent() {
    let a = concentric(3.0, 1.0);
    let s0 = seed_element(&a, Letter::S, -FRAC_PI_2).unwrap();
    let c = seed_element(&a, Letter::C, 0.0).unwrap();
    let s1 = step(&a, &c, Some(&s0), Letter::S, Orientation::Ccw).unwrap();
    assert!((s1.progress() - FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn chord_to_chord_equilateral() {
    let a = concentric(2.0, 1.0);
    let s0 = seed_element(&a, Letter::S, 0.4).unwrap();
    let s1 = step(&a, &s0, None, Letter::S, Orientation::Ccw).unwrap();
    let s2 = step(&a, &s1, Some(&s0), Letter::S, Orientation::Ccw).unwrap();
    assert!((wrap_pi(s1.progress() - s0.progress()) - TAU / 3.0).abs() < 1e-12);
    assert!((wrap_pi(s2.progress() - s1.progress()) - TAU / 3.0).abs() < 1e-12);
}

#[test]
fn circle_to_circle_sixty_degrees() {
    let a = concentric(3.0, 1.0);
    let c0 = seed_element(&a, Letter::C, 0.0).unwrap();
    let c1 = step(&a, &c0, None, Letter::C, Orientation::Ccw).unwrap();
    assert!((c1.progress() - PI / 3.0).abs() < 1e-12);
}

#[test]
fn run_chain_examples() {
    let a = concentric(3.0, 1.0);
    let w = word("cscs");
    let run = run_chain(&a, &w, seed_element(&a, Letter::C, 0.37).unwrap()).unwrap();
    assert!(run.closed && run.defect.abs() < 1e-9);
    assert_eq!(run.elements.len(), 5);

    let a = concentric(7.0, 1.0);
    let run = run_chain(&a, &word("cscscs"), seed_element(&a, Letter::C, 1.1).unwrap()).unwrap();
    assert!(run.closed);

    let a = concentric(4.0, 1.0);
    let run = run_chain(&a, &w, seed_element(&a, Letter::C, 0.0).unwrap()).unwrap();
    assert!(!run.closed && run.defect.abs() > 0.1);
}

#[test]
fn seed_letter_must_match() {
    let a = concentric(3.0, 1.0);
    let seed = seed_element(&a, Letter::S, 0.0).unwrap();
    assert!(run_chain(&a, &word("cscs"), seed).is_err());
}

#[test]
fn monodromy_examples() {
    for (big_r, r, w) in [(3.0, 1.0, "cscs"), (2.0, 1.0, "sss"), (3.0, 1.0, "cccccc")] {
        let a = concentric(big_r, r);
        for theta in [0.0, 0.7, 2.1] {
            let d = monodromy_defect(&a, &word(w), theta).unwrap();
            assert!(d.abs() < 1e-9, "{w} at {theta}: {d}");
        }
    }
}

#[test]
fn closure_config_examples() {
    let w = word("cscs");
    let a = Annulus::from_radii(1.0, 0.2, 0.48f64.sqrt()).unwrap();
    assert_eq!(is_closure_config(&a, &w, 64, 1e-8).unwrap().verdict, ClosureVerdict::ClosedEverywhere);
    let a = Annulus::from_radii(1.0, 0.2, 0.5).unwrap();
    assert_eq!(is_closure_config(&a, &w, 64, 1e-8).unwrap().verdict, ClosureVerdict::ClosedNowhere);
    let a = Annulus::from_radii(1.0, 0.3, 0.1).unwrap();
    for w in ["ccs", "cscs", "ssc"] {
        let rep = is_closure_config(&a, &word(w), 16, PI).unwrap();
        assert_eq!(rep.verdict, ClosureVerdict::ClosedEverywhere);
    }
}

/// Concentric closure ratios `R/r` from the step-rotation closed forms.
fn closure_ratios() -> Vec<(&'static str, f64)> {
    vec![
        ("cscs", 3.0),
        ("cscscs", 7.0),
        ("sss", 2.0),
        ("ssss", 2f64.sqrt()),
        ("ccc", 1.0 / (7.0 - 4.0 * 3f64.sqrt())),
        ("cccccc", 3.0),
    ]
}

#[test]
fn all_or_nothing_at_concentric_ratios() {
    for (w, ratio) in closure_ratios() {
        let w = word(w);
        let a = concentric(ratio, 1.0);
        let rep = is_closure_config(&a, &w, 32, 1e-8).unwrap();
        assert_eq!(rep.verdict, ClosureVerdict::ClosedEverywhere, "{w}: {}", rep.max_abs_defect);
        let b = concentric(ratio * 1.01, 1.0);
        let rep = is_closure_config(&b, &w, 32, 1e-8).unwrap();
        assert_eq!(rep.verdict, ClosureVerdict::ClosedNowhere, "{w} perturbed: {}", rep.min_abs_defect);
    }
}

#[test]
fn all_or_nothing_off_center() {
    // Off-center points on the (cs)², Euler and Steiner loci with R = 1.
    let s4_d = 0.3f64;
    let s4_r = ((1.0 - s4_d * s4_d).powi(2) / (2.0 * (1.0 + s4_d * s4_d))).sqrt();
    let cases = [
        ("cscs", 0.2, 0.48f64.sqrt()),
        ("sss", 0.3, 0.4f64.sqrt()),
        ("ssss", s4_r, s4_d),
        ("ccc", 0.05, 0.55),
        ("cccccc", 0.1, (0.81f64 - 0.4 / 3.0).sqrt()),
    ];
    for (w, r, d) in cases {
        let w = word(w);
        let a = Annulus::from_radii(1.0, r, d).unwrap();
        let rep = is_closure_config(&a, &w, 32, 1e-8).unwrap();
        assert_eq!(rep.verdict, ClosureVerdict::ClosedEverywhere, "{w}");
        let b = Annulus::from_radii(1.01, r, d).unwrap();
        let rep = is_closure_config(&b, &w, 32, 1e-8).unwrap();
        assert_eq!(rep.verdict, ClosureVerdict::ClosedNowhere, "{w} perturbed");
    }
}

#[test]
fn chord_tangency_strictly_inside() {
    let a = Annulus::from_radii(1.0, 0.25, 0.35).unwrap();
    let run = run_chain(&a, &word("csscs"), seed_element(&a, Letter::C, 0.9).unwrap()).unwrap();
    for e in &run.elements {
        if let Some(ch) = e.chord() {
            let s0 = ch.param(ch.endpoints[0]);
            let s1 = ch.param(ch.endpoints[1]);
            assert!(s0 < 0.0 && s1 > 0.0);
        }
        if let Some(c) = e.circle() {
            assert!(a.is_inscribed(c, 1e-10));
        }
    }
}

#[test]
fn consecutive_elements_touch() {
    let a = Annulus::from_radii(1.0, 0.2, 0.3).unwrap();
    let run = run_chain(&a, &word("ccssc"), seed_element(&a, Letter::C, 2.0).unwrap()).unwrap();
    for pair in run.elements.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let gap = match (x.circle(), y.circle(), x.chord(), y.chord()) {
            (Some(c1), Some(c2), _, _) => c1.external_gap(c2).abs(),
            (Some(c), None, _, Some(t)) | (None, Some(c), Some(t), _) => {
                (t.line.signed_distance(c.center).abs() - c.radius).abs()
            }
            (None, None, Some(t1), Some(t2)) => {
                let mut m = f64::INFINITY;
                for p in t1.endpoints {
                    for q in t2.endpoints {
                        m = m.min(p.dist(q));
                    }
                }
                m
            }
            _ => unreachable!(),
        };
        assert!(gap < 1e-9, "gap {gap}");
    }
}

#[test]
fn reversed_chain_returns_to_seed() {
    let a = Annulus::from_radii(1.0, 0.22, 0.31).unwrap();
    for w in ["cscs", "ccs", "csss", "ccssc", "sss"] {
        let w = word(w);
        let seed = seed_element(&a, w.first(), 0.6).unwrap();
        let fwd = run_chain(&a, &w, seed).unwrap();
        let last = *fwd.elements.last().unwrap();
        let back = run_chain_oriented(&a, &w.reversed_cycle(), last, Orientation::Cw).unwrap();
        let end = back.elements.last().unwrap();
        assert!(end.matches(&seed, 1e-8, 1.0), "{w}");
        assert!(wrap_pi(end.progress() - seed.progress()).abs() < 1e-8);
    }
}

#[test]
fn cs_centers_inscribed_in_ellipse_with_tangent_sides() {
    for (r, d) in [(0.2, 0.3), (0.15, 0.5), (0.3, 0.1)] {
        let a = Annulus::from_radii(1.0, r, d).unwrap();
        let lines: Vec<_> = (0..12)
            .map(|k| {
                let ch = Chord::tangent_at(&a, 0.31 + TAU * k as f64 / 12.0);
                chord_through_centers(&a, &ch.line).unwrap()
            })
            .collect();
        let gamma = fit_dual_conic(&lines).unwrap().dual;
        let ell = centers_ellipse(&a);
        let w = word("cscscs");
        let run = run_chain(&a, &w, seed_element(&a, Letter::C, 1.3).unwrap()).unwrap();
        let centers: Vec<Point> =
            run.elements.iter().filter_map(|e| e.circle()).map(|c| c.center).collect();
        assert_eq!(centers.len(), 4);
        for c in &centers {
            assert!(ell.residual(*c).abs() < 1e-9);
        }
        for pair in centers.windows(2) {
            let side = closure_core::Line::through_points(pair[0], pair[1]).unwrap();
            assert!(gamma.tangency_residual(&side) < 1e-7);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn concentric_defect_independent_of_seed(
        r in 0.05f64..0.6,
        theta in 0.0f64..TAU,
        idx in 0usize..6,
    ) {
        let words = ["cscs", "sss", "ccc", "ccs", "csss", "cscsc"];
        let w = word(words[idx]);
        let a = concentric(1.0, r);
        let d0 = monodromy_defect(&a, &w, 0.0);
        let d1 = monodromy_defect(&a, &w, theta);
        match (d0, d1) {
            (Ok(x), Ok(y)) => prop_assert!(wrap_pi(x - y).abs() < 1e-10, "{} vs {}", x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn defect_is_wrapped(r in 0.05f64..0.5, d in 0.0f64..0.4, theta in 0.0f64..TAU) {
        prop_assume!(r + d < 0.95);
        let a = Annulus::from_radii(1.0, r, d).unwrap();
        if let Ok(x) = monodromy_defect(&a, &word("ccs"), theta) {
            prop_assert!(x > -PI && x <= PI);
        }
    }
}

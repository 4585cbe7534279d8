//! Numerical checks of the closure theorems behind `verify`.

use std::f64::consts::{PI, TAU};

use closure_core::chain::{is_closure_config, run_chain, seed_element, ClosureVerdict, Word};
use closure_core::conic::{
    centers_ellipse, chord_through_centers, confocal_intersections, conic_foci, fit_dual_conic,
    focal_elements, focus_directrix_residual, pass_through_residual, theorem6_rotation, DualFit,
    Envelope, PolarConicShape,
};
use closure_core::geom::{
    closure_criterion_residual, common_external_tangents, euler_like_residual,
    inscribed_circles_tangent_to_line, segment_inscribed_radius, theorem1_radii,
    theorem2_meeting_point, wrap_pi, Annulus, Chord, Circle, Line, Point, Similitude,
    Theorem1Scalars,
};
use closure_core::tol;

use crate::{CliError, Report, Residual, SceneConfig};

pub const THEOREMS: [&str; 7] = ["t1", "t2", "t3", "t4", "t5", "t6", "sangaku"];

/// Chords fitted to obtain the envelope, and chords held out to test it.
pub const FIT_CHORDS: usize = 12;
pub const HOLDOUT_CHORDS: usize = 24;

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn run(id: &str, cfg: &SceneConfig) -> Result<Report, CliError> {
    let mut rep = Report::new(format!("verify {id}"), cfg);
    match id {
        "t1" => t1(cfg, &mut rep)?,
        "t2" => t2(cfg, &mut rep)?,
        "t3" => t3(cfg, &mut rep)?,
        "t4" => t4(cfg, &mut rep)?,
        "t5" => t5(cfg, &mut rep)?,
        "t6" => t6(cfg, &mut rep)?,
        "sangaku" => sangaku(cfg, &mut rep)?,
        other => {
            return Err(CliError::Invalid(format!(
                "unknown theorem {other:?}; expected one of {}",
                THEOREMS.join(", ")
            )))
        }
    }
    Ok(rep)
}

/// Radii of the inscribed circles touching `ω` at both ends of the
/// diameter through angle `alpha`.
pub fn diameter_radii(a: &Annulus, alpha: f64) -> (f64, f64) {
    (a.inscribed_at(alpha).radius, a.inscribed_at(alpha + PI).radius)
}

fn t1(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let (big_r, r) = (a.outer_radius(), a.inner_radius());
    let curve = euler_like_residual(big_r, r, a.center_distance());
    rep.push(Residual::below("euler_like_residual", curve.abs() / (big_r * big_r), tol::TANGENCY));

    let mut formula = 0.0f64;
    let mut product = 0.0f64;
    let mut criterion = 0.0f64;
    for k in 0..8 {
        let alpha = cfg.theta0 + PI * k as f64 / 8.0;
        let sc = Theorem1Scalars::from_diameter(&a, alpha).map_err(invalid)?;
        let (r1, r2) = theorem1_radii(&sc, big_r, r).map_err(invalid)?;
        let (g1, g2) = diameter_radii(&a, alpha);
        formula = formula.max((r1 - g1).abs().max((r2 - g2).abs()) / big_r);
        product = product.max((g1 * g2 - r * r).abs() / (r * r));
        let norm = (r * (sc.s2 + sc.m2)).powi(2);
        criterion = criterion.max(closure_criterion_residual(&sc, big_r, r).map_err(invalid)?.abs() / norm);
    }
    rep.push(Residual::below("radius_formula_vs_construction", formula, tol::TANGENCY));
    rep.push(Residual::below("closure_criterion_residual", criterion, tol::TANGENCY));
    rep.push(Residual::below("diameter_radius_product", product, tol::TANGENCY));

    let w: Word = "cscs".parse().expect("literal word");
    let closure = is_closure_config(&a, &w, 64, cfg.tol).map_err(invalid)?;
    rep.verdict("cs2_closure", verdict_name(closure.verdict));
    rep.push(Residual::below("cs2_max_abs_defect", closure.max_abs_defect, cfg.tol));
    Ok(())
}

pub fn verdict_name(v: ClosureVerdict) -> &'static str {
    match v {
        ClosureVerdict::ClosedEverywhere => "closed-everywhere",
        ClosureVerdict::ClosedNowhere => "closed-nowhere",
        ClosureVerdict::Mixed => "mixed",
    }
}

/// Coordinates along the center line in which the four points where it
/// meets `k` and `ω` sit at `λ·(1, a, a², a³)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AFrame {
    pub a: f64,
    pub scale: f64,
    pub origin: Point,
    pub axis: Point,
}

impl AFrame {
    pub fn x(&self, p: Point) -> f64 {
        (p - self.origin).dot(self.axis)
    }

    /// Mismatch between the annulus's center distance and the frame's.
    pub fn center_distance_error(&self, ann: &Annulus) -> f64 {
        let a = self.a;
        (ann.center_distance() - self.scale * (a - 1.0).powi(2) * (a + 1.0) / 2.0).abs()
    }
}

/// The frame determined by `r/R`, or `None` for concentric annuli and
/// ratios with no real `a > 1`.
pub fn a_frame(ann: &Annulus) -> Option<AFrame> {
    if ann.is_concentric() {
        return None;
    }
    let t = ann.inner_radius() / ann.outer_radius();
    let disc = (1.0 - t).powi(2) - 4.0 * t * t;
    if disc <= 0.0 {
        return None;
    }
    let a = ((1.0 - t) + disc.sqrt()) / (2.0 * t);
    let scale = 2.0 * ann.inner_radius() / (a * a - a);
    let o = ann.outer().center;
    let axis = (o - ann.inner().center).unit();
    let origin = o - axis * (scale * (1.0 + a.powi(3)) / 2.0);
    Some(AFrame { a, scale, origin, axis })
}

/// The annulus `k = [1, a³]`, `ω = [a, a²]` on the x-axis.
pub fn a_frame_annulus(a: f64) -> Result<Annulus, CliError> {
    let outer = Circle::new(Point::new((1.0 + a.powi(3)) / 2.0, 0.0), (a.powi(3) - 1.0) / 2.0).map_err(invalid)?;
    let inner = Circle::new(Point::new((a + a * a) / 2.0, 0.0), (a * a - a) / 2.0).map_err(invalid)?;
    Annulus::new(outer, inner).map_err(invalid)
}

/// Largest distance of the points from their total-least-squares line.
pub fn collinearity(points: &[Point]) -> f64 {
    let n = points.len() as f64;
    let mean = points.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let q = *p - mean;
        sxx += q.x * q.x;
        sxy += q.x * q.y;
        syy += q.y * q.y;
    }
    let dir = Point::polar(0.5 * (2.0 * sxy).atan2(sxx - syy));
    let normal = dir.perp();
    points.iter().map(|p| (*p - mean).dot(normal).abs()).fold(0.0, f64::max)
}

pub struct MeetingPoints {
    pub points: Vec<Point>,
    pub circles: Vec<Circle>,
    pub at_infinity: usize,
}

/// Meeting points for `count` inscribed circles at evenly spaced contact
/// angles, skipping circles too close in size to `ω`.
pub fn meeting_points(ann: &Annulus, theta0: f64, count: usize) -> Result<MeetingPoints, CliError> {
    let mut out = MeetingPoints { points: Vec::new(), circles: Vec::new(), at_infinity: 0 };
    for k in 0..count {
        let c = ann.inscribed_at(theta0 + TAU * k as f64 / count as f64);
        if (c.radius - ann.inner_radius()).abs() < 1e-3 * ann.outer_radius() {
            continue;
        }
        match theorem2_meeting_point(ann, &c).map_err(invalid)? {
            Similitude::Finite(p) => {
                out.points.push(p);
                out.circles.push(c);
            }
            Similitude::AtInfinity(_) => out.at_infinity += 1,
        }
    }
    Ok(out)
}

fn t2(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let big_r = a.outer_radius();
    if a.is_concentric() {
        let off = (0..50)
            .map(|k| (a.inscribed_at(cfg.theta0 + TAU * k as f64 / 50.0).radius - a.inner_radius()).abs())
            .fold(0.0, f64::max);
        rep.verdict("locus", "line at infinity");
        rep.push(Residual::below("meeting_points_at_infinity", off / big_r, tol::TANGENCY));
        return Ok(());
    }
    let mp = meeting_points(&a, cfg.theta0, 50)?;
    rep.verdict("finite_meeting_points", mp.points.len());
    rep.push(Residual::below("collinearity", collinearity(&mp.points) / big_r, tol::TANGENCY * 10.0));
    match a_frame(&a) {
        Some(f) => {
            rep.verdict("a", f.a);
            rep.push(Residual::below("frame_center_distance", f.center_distance_error(&a) / big_r, tol::TANGENCY));
            let k = (f.a - 1.0) / (f.a + 1.0);
            let ratio = mp.circles.iter().map(|c| (c.radius - k * f.x(c.center)).abs()).fold(0.0, f64::max);
            rep.push(Residual::below("radius_over_x", ratio / big_r, tol::LOCUS));
            let on_axis = mp.points.iter().map(|p| f.x(*p).abs()).fold(0.0, f64::max);
            rep.push(Residual::below("distance_to_predicted_line", on_axis / big_r, tol::TANGENCY * 10.0));
        }
        None => rep.push(Residual::missing("frame_center_distance", tol::TANGENCY)),
    }
    Ok(())
}

/// Lines through the centers of the two inscribed circles tangent to each
/// chord touching `ω` at the given angles.
pub fn center_chords(a: &Annulus, angles: impl IntoIterator<Item = f64>) -> Result<Vec<Line>, CliError> {
    angles
        .into_iter()
        .map(|phi| chord_through_centers(a, &Chord::tangent_at(a, phi).line).map_err(invalid))
        .collect()
}

pub fn fit_angles(theta0: f64) -> impl Iterator<Item = f64> {
    (0..FIT_CHORDS).map(move |k| theta0 + TAU * k as f64 / FIT_CHORDS as f64)
}

pub fn holdout_angles(theta0: f64) -> impl Iterator<Item = f64> {
    (0..HOLDOUT_CHORDS).map(move |k| theta0 + TAU * (k as f64 + 0.37) / HOLDOUT_CHORDS as f64)
}

/// Envelope fitted to the center chords at [`fit_angles`].
pub fn fit_gamma(a: &Annulus, theta0: f64) -> Result<DualFit, CliError> {
    fit_dual_conic(&center_chords(a, fit_angles(theta0))?).map_err(invalid)
}

fn envelope_name(e: &Envelope) -> &'static str {
    match e {
        Envelope::Conic => "conic",
        Envelope::Point(_) => "point",
        Envelope::PointAtInfinity(_) => "point at infinity",
    }
}

fn t3(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let w = cfg.word()?;
    let closure = is_closure_config(&a, &w, 64, cfg.tol).map_err(invalid)?;
    rep.verdict("word", w.to_string());
    rep.verdict("closure", verdict_name(closure.verdict));
    rep.push(Residual::below("max_abs_defect", closure.max_abs_defect, cfg.tol));
    if w.is_mixed_alternating() {
        let gamma = fit_gamma(&a, cfg.theta0)?;
        let ell = centers_ellipse(&a);
        let (mut on_ellipse, mut tangency) = (0.0f64, 0.0f64);
        for k in 0..8 {
            let seed = seed_element(&a, w.first(), cfg.theta0 + TAU * k as f64 / 8.0).map_err(invalid)?;
            let run = run_chain(&a, &w, seed).map_err(invalid)?;
            let centers: Vec<Point> = run.elements.iter().filter_map(|e| e.circle()).map(|c| c.center).collect();
            for c in &centers {
                on_ellipse = on_ellipse.max(ell.residual(*c).abs());
            }
            for pair in centers.windows(2) {
                let side = Line::through_points(pair[0], pair[1]).map_err(invalid)?;
                tangency = tangency.max(gamma.dual.tangency_residual(&side));
            }
        }
        rep.verdict("envelope", envelope_name(&gamma.envelope));
        rep.push(Residual::below("centers_on_ellipse", on_ellipse / a.outer_radius(), tol::TANGENCY));
        rep.push(Residual::below("center_chords_tangent_to_envelope", tangency, tol::CONSTRUCT));
    }
    Ok(())
}

fn t4(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let gamma = fit_gamma(&a, cfg.theta0)?;
    let held = center_chords(&a, holdout_angles(cfg.theta0))?;
    let worst = held.iter().map(|l| gamma.dual.tangency_residual(l)).fold(0.0, f64::max);
    rep.verdict("envelope", envelope_name(&gamma.envelope));
    rep.verdict("line_rank", gamma.line_rank);
    rep.push(Residual::below("fit_max_residual", gamma.max_residual, tol::CONSTRUCT));
    rep.push(Residual::below("holdout_max_tangency", worst, tol::CONSTRUCT));
    if let Envelope::Point(q) = gamma.envelope {
        rep.push(Residual::below("envelope_point_to_center", q.dist(a.inner().center) / a.outer_radius(), tol::TANGENCY));
    }
    Ok(())
}

/// Distance from `I` to the nearest focus of the envelope, and the
/// focus–directrix residual at `I` with that focus's directrix.
pub fn envelope_focus_check(a: &Annulus, gamma: &DualFit) -> Result<(f64, Option<f64>), CliError> {
    let i = a.inner().center;
    if let Envelope::Point(q) = gamma.envelope {
        return Ok((q.dist(i), None));
    }
    let conic = gamma.dual.point_conic();
    let foci = conic_foci(&conic).map_err(invalid)?;
    let near = foci.iter().map(|f| f.dist(i)).fold(f64::INFINITY, f64::min);
    let elems = focal_elements(&conic).map_err(invalid)?;
    let best = elems
        .iter()
        .min_by(|x, y| x.focus.dist(i).total_cmp(&y.focus.dist(i)))
        .ok_or_else(|| invalid("envelope has no focus"))?;
    let fd = match &best.directrix {
        Some(dl) => Some(focus_directrix_residual(&conic, i, dl, best.eccentricity).map_err(invalid)?),
        None => None,
    };
    Ok((near, fd))
}

fn t5(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let gamma = fit_gamma(&a, cfg.theta0)?;
    let (near, fd) = envelope_focus_check(&a, &gamma)?;
    rep.verdict("envelope", envelope_name(&gamma.envelope));
    rep.push(Residual::below("focus_to_inner_center", near / a.outer_radius(), 1e-6));
    match fd {
        Some(x) => rep.push(Residual::below("focus_directrix_residual", x, 1e-6)),
        None => rep.verdict("directrix", "none (circle or point envelope)"),
    }
    Ok(())
}

/// Three ellipses with a common focus at the origin through two common points.
pub fn confocal_triple() -> [PolarConicShape; 3] {
    let focus = Point::ORIGIN;
    let e1 = PolarConicShape { focus, eccentricity: 0.5, semi_latus: 1.0, phase: 0.0 };
    let e2 = PolarConicShape { focus, eccentricity: 0.4, semi_latus: 1.3, phase: 2.0 };
    let pts = confocal_intersections(&e1, &e2);
    let e3 = PolarConicShape::through_points(focus, 1.15, [pts[0], pts[1]]).expect("points off the focus line");
    [e1, e2, e3]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tracking {
    /// Pass-through residual of the tracked phase at each increment.
    pub residuals: Vec<f64>,
    /// Increments completed before the first without a solution.
    pub tracked: usize,
    pub phases: Vec<f64>,
}

impl Tracking {
    /// Largest residual, including the closest approach at a failed increment.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn complete(&self, steps: usize) -> bool {
        self.tracked == steps
    }
}

/// Rotates the first two ellipses by `delta1` and `delta2` per increment
/// and follows the third by the solution nearest its previous phase.
pub fn track_third_ellipse(delta1: f64, delta2: f64, steps: usize) -> Tracking {
    let [e1, e2, e3] = confocal_triple();
    let mut phase = e3.phase;
    let mut out = Tracking { residuals: Vec::with_capacity(steps), tracked: 0, phases: Vec::new() };
    for k in 1..=steps {
        let (s1, s2) = (e1.rotated(delta1 * k as f64), e2.rotated(delta2 * k as f64));
        let pts = confocal_intersections(&s1, &s2);
        if pts.len() != 2 {
            out.residuals.push(f64::INFINITY);
            break;
        }
        let pair = [pts[0], pts[1]];
        let sols = theorem6_rotation(&e3.rotated(0.0), pair[0], pair[1]);
        let best = sols.iter().copied().min_by(|x, y| wrap_pi(x - phase).abs().total_cmp(&wrap_pi(y - phase).abs()));
        match best {
            Some(p) => {
                phase = p;
                out.residuals.push(pass_through_residual(&e3, p, &pair));
                out.phases.push(p);
                out.tracked += 1;
            }
            None => {
                // closest approach, reported for diagnosis
                let grid = (0..720).map(|j| TAU * j as f64 / 720.0);
                let m = grid.map(|p| pass_through_residual(&e3, p, &pair)).fold(f64::INFINITY, f64::min);
                out.residuals.push(m);
                break;
            }
        }
    }
    out
}

fn t6(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    if cfg.steps == 0 {
        return Err(invalid("steps must be at least 1"));
    }
    let main = track_third_ellipse(cfg.delta1, cfg.delta2, cfg.steps);
    rep.verdict("tracked_increments", main.tracked);
    rep.verdict("requested_increments", cfg.steps);
    rep.verdict("tracked_continuously", main.complete(cfg.steps));
    rep.push(Residual::below("max_pass_through_residual", main.max_residual(), tol::CLOSURE));
    let control = track_third_ellipse(cfg.delta1, cfg.delta1, cfg.steps);
    rep.push(Residual::below("co_rotating_control", control.max_residual(), tol::CLOSURE));
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SangakuCheck {
    pub segment_radii: (f64, f64),
    /// Distance mismatch of the second tangent from the second circle.
    pub second_tangent_gap: f64,
}

/// For the tangent to `ω` at `phi`: the segment radii cut by it and by the
/// second common external tangent of `ω` and the first circle.
pub fn sangaku_check(a: &Annulus, phi: f64) -> Result<SangakuCheck, CliError> {
    let t = Chord::tangent_at(a, phi).line;
    let circles = inscribed_circles_tangent_to_line(a, &t).map_err(invalid)?;
    if circles.len() != 2 {
        return Err(invalid(format!("expected 2 circles tangent to the chord, found {}", circles.len())));
    }
    let tangents = common_external_tangents(a.inner(), &circles[0]).map_err(invalid)?;
    let u = tangents
        .iter()
        .max_by(|x, y| x.distance_to(&t, a.outer_radius()).total_cmp(&y.distance_to(&t, a.outer_radius())))
        .ok_or_else(|| invalid("no second tangent"))?;
    let gap = (u.signed_distance(circles[1].center) - circles[1].radius).abs();
    let o = a.outer().center;
    let big_r = a.outer_radius();
    let rt = segment_inscribed_radius(big_r, t.signed_distance(o)).map_err(invalid)?;
    let ru = segment_inscribed_radius(big_r, u.signed_distance(o)).map_err(invalid)?;
    Ok(SangakuCheck { segment_radii: (rt, ru), second_tangent_gap: gap })
}

fn sangaku(cfg: &SceneConfig, rep: &mut Report) -> Result<(), CliError> {
    let a = cfg.annulus()?;
    let r2 = a.inner_radius().powi(2);
    let (mut product, mut gap) = (0.0f64, 0.0f64);
    for k in 0..8 {
        let c = sangaku_check(&a, cfg.theta0 + TAU * k as f64 / 8.0)?;
        product = product.max((c.segment_radii.0 * c.segment_radii.1 - r2).abs() / r2);
        gap = gap.max(c.second_tangent_gap / a.outer_radius());
    }
    rep.push(Residual::below("second_tangent_touches_both", gap, tol::TANGENCY));
    rep.push(Residual::below("segment_radius_product", product, tol::TANGENCY));
    Ok(())
}

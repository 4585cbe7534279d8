use serde::{Deserialize, Serialize};

use super::{ChainElement, ChainError, Letter, Result};
use crate::geom::{
    inscribed_circles_tangent_to_line, steiner_neighbors, tangent_lines_from_point, wrap_pi,
    Annulus, GeomError,
};
use crate::tol;

/// Sense in which the seed step advances around `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// First chain element: the inscribed circle touching `ω` at `theta`, or
/// the chord tangent to `ω` there.
pub fn seed_element(a: &Annulus, letter: Letter, theta: f64) -> Result<ChainElement> {
    match letter {
        Letter::C => {
            let c = a.inscribed_at(theta);
            if !(c.radius > 0.0) || !c.center.is_finite() {
                return Err(GeomError::Degenerate(format!("no inscribed circle at {theta}")).into());
            }
            Ok(ChainElement::from_circle(a, c))
        }
        Letter::S => Ok(ChainElement::from_chord_angle(a, theta)),
    }
}

/// Every element of type `letter` touching `prev`.
fn candidates(a: &Annulus, prev: &ChainElement, letter: Letter) -> Result<Vec<ChainElement>> {
    let out = match (prev, letter) {
        (ChainElement::Circle { circle, .. }, Letter::C) => steiner_neighbors(a, circle)?
            .into_iter()
            .map(|c| ChainElement::from_circle(a, c))
            .collect(),
        (ChainElement::Circle { circle, inner_angle, .. }, Letter::S) => {
            let r = a.inner_radius();
            let half = ((r - circle.radius) / (r + circle.radius)).clamp(-1.0, 1.0).acos();
            vec![
                ChainElement::from_chord_angle(a, inner_angle + half),
                ChainElement::from_chord_angle(a, inner_angle - half),
            ]
        }
        (ChainElement::Chord { chord, .. }, Letter::C) => {
            inscribed_circles_tangent_to_line(a, &chord.line)?
                .into_iter()
                .map(|c| ChainElement::from_circle(a, c))
                .collect()
        }
        (ChainElement::Chord { chord, .. }, Letter::S) => {
            let inner = a.inner();
            let mut v = Vec::new();
            for p in chord.endpoints {
                for line in tangent_lines_from_point(p, inner) {
                    let phi = (line.foot(inner.center) - inner.center).angle();
                    let e = ChainElement::from_chord_angle(a, phi);
                    if !e.matches(prev, tol::CONSTRUCT, a.outer_radius()) {
                        v.push(e);
                    }
                }
            }
            v
        }
    };
    Ok(out)
}

/// The successor of `prev` of type `letter`.
///
/// Candidates equal to `before` are excluded and the rest must satisfy the
/// separation condition at `prev`. Without a predecessor the candidate
/// advancing least in the given orientation is taken.
pub fn step(
    a: &Annulus,
    prev: &ChainElement,
    before: Option<&ChainElement>,
    letter: Letter,
    orientation: Orientation,
) -> Result<ChainElement> {
    let scale = a.outer_radius();
    let mut cands = candidates(a, prev, letter)?;
    if let Some(b) = before {
        cands.retain(|c| !c.matches(b, tol::CONSTRUCT, scale));
        let pb = prev.contact_with(b);
        let mut kept = Vec::with_capacity(cands.len());
        for c in cands {
            if prev.separates(a, pb, prev.contact_with(&c))? {
                kept.push(c);
            }
        }
        cands = kept;
    }
    let sign = orientation.sign();
    let delta = |c: &ChainElement| sign * wrap_pi(c.progress() - prev.progress());
    match cands.len() {
        0 => Err(ChainError::DeadEnd { index: 0 }),
        1 if before.is_some() => Ok(cands[0]),
        _ => {
            let best = cands
                .iter()
                .filter(|c| delta(c) > 0.0)
                .min_by(|x, y| delta(x).total_cmp(&delta(y)));
            match (best, before) {
                (Some(c), _) => Ok(*c),
                // Several valid successors, none advancing: take the smallest retreat.
                (None, Some(_)) => Ok(*cands
                    .iter()
                    .max_by(|x, y| delta(x).total_cmp(&delta(y)))
                    .expect("non-empty")),
                (None, None) => Err(ChainError::DeadEnd { index: 0 }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn concentric_c_to_s_advances_by_supplement() {
        let (big_r, r) = (1.0, 0.3);
        let a = Annulus::from_radii(big_r, r, 0.0).unwrap();
        let e = seed_element(&a, Letter::C, 0.0).unwrap();
        let s = step(&a, &e, None, Letter::S, Orientation::Ccw).unwrap();
        let psi = ((big_r - 3.0 * r) / (big_r + r)).acos();
        assert!((s.progress() - (PI - psi)).abs() < 1e-12);
        let cw = step(&a, &e, None, Letter::S, Orientation::Cw).unwrap();
        assert!((wrap_pi(cw.progress()) + (PI - psi)).abs() < 1e-12);
    }

    #[test]
    fn concentric_s_to_s_is_poncelet_step() {
        let a = Annulus::from_radii(1.0, 0.5, 0.0).unwrap();
        let s0 = seed_element(&a, Letter::S, 0.0).unwrap();
        let s1 = step(&a, &s0, None, Letter::S, Orientation::Ccw).unwrap();
        assert!((s1.progress() - 2.0 * 0.5f64.acos()).abs() < 1e-12);
        let s2 = step(&a, &s1, Some(&s0), Letter::S, Orientation::Ccw).unwrap();
        assert!((s2.progress() - 4.0 * 0.5f64.acos()).abs() < 1e-12);
    }

    #[test]
    fn successor_touches_predecessor() {
        let a = Annulus::from_radii(1.0, 0.25, 0.3).unwrap();
        let s0 = seed_element(&a, Letter::S, 0.7).unwrap();
        let c1 = step(&a, &s0, None, Letter::C, Orientation::Ccw).unwrap();
        let circ = c1.circle().unwrap();
        let ch = s0.chord().unwrap();
        assert!((ch.line.signed_distance(circ.center).abs() - circ.radius).abs() < 1e-10);
        assert!(a.is_inscribed(circ, 1e-10));
        let c2 = step(&a, &c1, Some(&s0), Letter::C, Orientation::Ccw).unwrap();
        assert!(circ.external_gap(c2.circle().unwrap()).abs() < 1e-10);
    }
}

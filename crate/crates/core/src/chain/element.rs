use serde::{Deserialize, Serialize};

use super::{ChainError, Letter, Result};
use crate::geom::{wrap_tau, Annulus, Chord, Circle, Point};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ChainElement {
    /// Inscribed circle with its contact angles on `ω` (about `I`) and on
    /// `k` (about `O`).
    Circle { circle: Circle, inner_angle: f64, outer_angle: f64 },
    /// Tangent chord with its contact angle on `ω` (about `I`).
    Chord { chord: Chord, inner_angle: f64 },
}

impl ChainElement {
    pub fn from_circle(a: &Annulus, circle: Circle) -> Self {
        ChainElement::Circle {
            circle,
            inner_angle: wrap_tau((circle.center - a.inner().center).angle()),
            outer_angle: wrap_tau((circle.center - a.outer().center).angle()),
        }
    }

    pub fn from_chord_angle(a: &Annulus, phi: f64) -> Self {
        ChainElement::Chord { chord: Chord::tangent_at(a, phi), inner_angle: wrap_tau(phi) }
    }

    pub fn letter(&self) -> Letter {
        match self {
            ChainElement::Circle { .. } => Letter::C,
            ChainElement::Chord { .. } => Letter::S,
        }
    }

    /// Contact angle with `ω`, in `[0, 2π)`.
    pub fn progress(&self) -> f64 {
        match *self {
            ChainElement::Circle { inner_angle, .. } | ChainElement::Chord { inner_angle, .. } => {
                inner_angle
            }
        }
    }

    pub fn circle(&self) -> Option<&Circle> {
        match self {
            ChainElement::Circle { circle, .. } => Some(circle),
            _ => None,
        }
    }

    pub fn chord(&self) -> Option<&Chord> {
        match self {
            ChainElement::Chord { chord, .. } => Some(chord),
            _ => None,
        }
    }

    /// Point where `self` and an adjacent element touch.
    pub fn contact_with(&self, other: &ChainElement) -> Point {
        match (self, other) {
            (ChainElement::Circle { circle: c1, .. }, ChainElement::Circle { circle: c2, .. }) => {
                c1.external_contact(c2)
            }
            (ChainElement::Circle { circle, .. }, ChainElement::Chord { chord, .. })
            | (ChainElement::Chord { chord, .. }, ChainElement::Circle { circle, .. }) => {
                chord.line.foot(circle.center)
            }
            (ChainElement::Chord { chord: a, .. }, ChainElement::Chord { chord: b, .. }) => {
                let mut best = (f64::INFINITY, a.endpoints[0]);
                for p in a.endpoints {
                    for q in b.endpoints {
                        let dd = p.dist(q);
                        if dd < best.0 {
                            best = (dd, (p + q) * 0.5);
                        }
                    }
                }
                best.1
            }
        }
    }

    /// Same element up to `tol · scale`.
    pub fn matches(&self, other: &ChainElement, tol: f64, scale: f64) -> bool {
        let eps = tol * scale;
        match (self, other) {
            (ChainElement::Circle { circle: c1, .. }, ChainElement::Circle { circle: c2, .. }) => {
                c1.center.dist(c2.center) <= eps && (c1.radius - c2.radius).abs() <= eps
            }
            (ChainElement::Chord { chord: a, .. }, ChainElement::Chord { chord: b, .. }) => {
                a.tangency.dist(b.tangency) <= eps
                    && a.endpoints[0].dist(b.endpoints[0]) <= eps
                    && a.endpoints[1].dist(b.endpoints[1]) <= eps
            }
            _ => false,
        }
    }

    /// Whether contacts `p` and `q` lie on opposite sides of this element's
    /// contacts with `ω` and `k`.
    pub fn separates(&self, a: &Annulus, p: Point, q: Point) -> Result<bool> {
        match self {
            ChainElement::Circle { circle, .. } => {
                let x = circle.center;
                let base = (a.inner().center - x).angle();
                let kappa = wrap_tau((x - a.outer().center).angle() - base);
                let eps = tol::TANGENCY * a.outer_radius() / circle.radius;
                let side = |pt: Point| -> Result<bool> {
                    let off = wrap_tau((pt - x).angle() - base);
                    let near = |t: f64| (off - t).abs() <= eps;
                    if near(0.0) || near(kappa) || near(std::f64::consts::TAU) {
                        return Err(ChainError::Tie { index: 0 });
                    }
                    Ok(off < kappa)
                };
                Ok(side(p)? != side(q)?)
            }
            ChainElement::Chord { chord, .. } => {
                let eps = tol::TANGENCY * a.outer_radius();
                let (sp, sq) = (chord.param(p), chord.param(q));
                if sp.abs() <= eps || sq.abs() <= eps {
                    return Err(ChainError::Tie { index: 0 });
                }
                Ok((sp > 0.0) != (sq > 0.0))
            }
        }
    }
}

//! Deterministic SVG figures of an annulus and a chain.

use std::fmt::Write;

use closure_core::chain::ChainElement;
use closure_core::geom::{Circle, Point};
use closure_core::{Annulus, Conic};

pub struct Figure<'a> {
    pub annulus: &'a Annulus,
    pub word: String,
    /// `u₁ … uₙ₊₁`, or the prefix built before a dead end.
    pub elements: &'a [ChainElement],
    /// Number of letters in the word.
    pub n: usize,
    pub closed: bool,
    pub defect: Option<f64>,
    /// Message for a chain that stopped early.
    pub failure: Option<String>,
    /// Sampled points of the fitted envelope.
    pub gamma: Option<Vec<Point>>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn circle(out: &mut String, c: &Circle, class: &str, width: f64, dashed: bool) {
    let dash = if dashed { format!(" stroke-dasharray=\"{} {}\"", num(4.0 * width), num(2.0 * width)) } else { String::new() };
    let _ = writeln!(
        out,
        "    <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" stroke-width=\"{}\"{dash}/>",
        num(c.center.x),
        num(c.center.y),
        num(c.radius),
        num(width)
    );
}

fn segment(out: &mut String, p: Point, q: Point, class: &str, width: f64, dashed: bool) {
    let dash = if dashed { format!(" stroke-dasharray=\"{} {}\"", num(4.0 * width), num(2.0 * width)) } else { String::new() };
    let _ = writeln!(
        out,
        "    <line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\"{dash}/>",
        num(p.x),
        num(p.y),
        num(q.x),
        num(q.y),
        num(width)
    );
}

fn element(out: &mut String, e: &ChainElement, width: f64, dashed: bool) {
    let suffix = if dashed { "-next" } else { "" };
    match e {
        ChainElement::Circle { circle: c, .. } => circle(out, c, &format!("chain-circle{suffix}"), width, dashed),
        ChainElement::Chord { chord, .. } => {
            segment(out, chord.endpoints[0], chord.endpoints[1], &format!("chain-chord{suffix}"), width, dashed)
        }
    }
}

pub fn render(fig: &Figure) -> String {
    let k = fig.annulus.outer();
    let big_r = k.radius;
    let half = 1.05 * big_r;
    let side = 2.0 * half;
    let (x0, y0) = (k.center.x - half, -(k.center.y + half));
    let w = 0.004 * big_r;
    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"600\" height=\"600\">",
        num(x0),
        num(y0),
        num(side),
        num(side)
    );
    let _ = writeln!(s, "  <g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\">");
    circle(&mut s, k, "outer", 1.5 * w, false);
    circle(&mut s, fig.annulus.inner(), "inner", 1.5 * w, false);
    if let Some(pts) = &fig.gamma {
        let mut path = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(path, "{}{} {}", if i == 0 { "M" } else { " L" }, num(p.x), num(p.y));
        }
        let _ = writeln!(s, "    <path class=\"gamma\" d=\"{path} Z\" stroke=\"gray\" stroke-width=\"{}\"/>", num(w));
    }
    for e in fig.elements.iter().take(fig.n) {
        element(&mut s, e, w, false);
    }
    if !fig.closed {
        if let Some(e) = fig.elements.get(fig.n) {
            element(&mut s, e, w, true);
        }
    }
    let _ = writeln!(s, "  </g>");
    let status = match (&fig.failure, fig.closed, fig.defect) {
        (Some(msg), _, _) => format!("partial: {msg}"),
        (None, true, Some(d)) => format!("closed (defect {d:.3e})"),
        (None, false, Some(d)) => format!("not closed (defect {d:.3e})"),
        _ => "not closed".to_string(),
    };
    let _ = writeln!(
        s,
        "  <text class=\"annotation\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\">{}: {}</text>",
        num(x0 + 0.02 * side),
        num(y0 + 0.05 * side),
        num(0.035 * side),
        fig.word,
        status
    );
    let _ = writeln!(s, "</svg>");
    s
}

/// Closed polyline through `n` points of an ellipse-type envelope.
pub fn gamma_points(conic: &Conic, n: usize) -> Option<Vec<Point>> {
    closure_core::conic::sample_points(conic, n).ok()
}

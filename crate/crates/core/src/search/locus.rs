use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::grid::defect_at;
use super::DefectGrid;
use crate::chain::Word;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub r: f64,
    pub d: f64,
    pub defect: f64,
    pub certified: Option<bool>,
}

/// Zero set of the defect as polylines in `(r, d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroLocus {
    pub word: Word,
    pub branches: Vec<Vec<LocusPoint>>,
}

impl ZeroLocus {
    pub fn points(&self) -> impl Iterator<Item = &LocusPoint> {
        self.branches.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.branches.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Grid edge between cell `a` and its neighbor `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Edge {
    a: (usize, usize),
    b: (usize, usize),
}

fn sign_change(x: f64, y: f64) -> bool {
    (x < 0.0) != (y < 0.0) && (x - y).abs() < PI
}

/// Bisects the defect along a segment until it is below the locus tolerance.
fn bisect(w: &Word, p: (f64, f64), fp: f64, q: (f64, f64)) -> Option<LocusPoint> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let at = |t: f64| (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
    let neg_lo = fp < 0.0;
    for _ in 0..200 {
        let t = 0.5 * (lo + hi);
        let (r, d) = at(t);
        let f = defect_at(w, r, d)?;
        if f.abs() < tol::LOCUS {
            return Some(LocusPoint { r, d, defect: f, certified: None });
        }
        if (f < 0.0) == neg_lo {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    None
}

/// Locus points on sign-changing grid edges, joined through shared cells.
pub fn trace_zero_locus(w: &Word, grid: &DefectGrid) -> ZeroLocus {
    let (nr, nd) = (grid.nr(), grid.nd());
    let mut edges = Vec::new();
    for i in 0..nr {
        for j in 0..nd {
            let Some(f) = grid.cell(i, j).value() else { continue };
            for (ii, jj) in [(i + 1, j), (i, j + 1)] {
                if ii >= nr || jj >= nd {
                    continue;
                }
                if let Some(g) = grid.cell(ii, jj).value() {
                    if sign_change(f, g) {
                        edges.push(Edge { a: (i, j), b: (ii, jj) });
                    }
                }
            }
        }
    }
    let found: Vec<Option<LocusPoint>> = edges
        .par_iter()
        .map(|e| {
            let p = (grid.r_axis[e.a.0], grid.d_axis[e.a.1]);
            let q = (grid.r_axis[e.b.0], grid.d_axis[e.b.1]);
            bisect(w, p, grid.cell(e.a.0, e.a.1).value()?, q)
        })
        .collect();
    let nodes: Vec<(Edge, LocusPoint)> =
        edges.into_iter().zip(found).filter_map(|(e, p)| p.map(|p| (e, p))).collect();

    // Each square is indexed by its lower-left cell; an edge borders up to two squares.
    let mut squares: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, (e, _)) in nodes.iter().enumerate() {
        let (i, j) = e.a;
        if e.b.0 == i + 1 {
            squares.entry((i, j)).or_default().push(k);
            if j > 0 {
                squares.entry((i, j - 1)).or_default().push(k);
            }
        } else {
            squares.entry((i, j)).or_default().push(k);
            if i > 0 {
                squares.entry((i - 1, j)).or_default().push(k);
            }
        }
    }
    let dist = |x: usize, y: usize| {
        let (p, q) = (nodes[x].1, nodes[y].1);
        (p.r - q.r).hypot(p.d - q.d)
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for members in squares.values() {
        let mut free = members.clone();
        while free.len() >= 2 {
            let mut best = (f64::INFINITY, 0, 1);
            for x in 0..free.len() {
                for y in x + 1..free.len() {
                    let dd = dist(free[x], free[y]);
                    if dd < best.0 {
                        best = (dd, x, y);
                    }
                }
            }
            let (u, v) = (free[best.1], free[best.2]);
            if adj[u].len() < 2 && adj[v].len() < 2 && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
            free.remove(best.2);
            free.remove(best.1);
        }
    }

    let mut seen = vec![false; nodes.len()];
    let mut branches = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut path = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(&nx) = adj[cur].iter().find(|&&n| !seen[n]) {
            seen[nx] = true;
            path.push(nx);
            cur = nx;
        }
        path
    };
    for start in (0..nodes.len()).filter(|&k| adj[k].len() < 2) {
        if !seen[start] {
            branches.push(walk(start, &mut seen));
        }
    }
    for start in 0..nodes.len() {
        if !seen[start] {
            branches.push(walk(start, &mut seen));
        }
    }
    ZeroLocus {
        word: w.clone(),
        branches: branches
            .into_iter()
            .map(|b| b.into_iter().map(|k| nodes[k].1).collect())
            .collect(),
    }
}

//! Bracketed scalar root finding.

/// Brent's method on a bracket `[a, b]` with `f(a)` and `f(b)` of opposite
/// sign. Returns `None` when the bracket does not straddle a sign change.
pub fn brent<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Option<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Some(b)
}

/// Scans `[lo, hi)` as a periodic domain split into `n` equal brackets and
/// returns every root found by [`brent`], in increasing order.
pub fn periodic_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let samples: Vec<f64> = (0..=n).map(|i| f(lo + h * i as f64)).collect();
    let mut roots = Vec::new();
    for i in 0..n {
        let (fa, fb) = (samples[i], samples[i + 1]);
        if fa == 0.0 {
            roots.push(lo + h * i as f64);
            continue;
        }
        if fa.signum() != fb.signum() && fb != 0.0 {
            let a = lo + h * i as f64;
            if let Some(x) = brent(&f, a, a + h, 1e-15) {
                roots.push(x);
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_sqrt2() {
        let x = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn periodic_scan_finds_both_cosine_roots() {
        let roots = periodic_roots(|t| t.cos() - 0.3, 0.0, std::f64::consts::TAU, 64);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.3f64.acos()).abs() < 1e-13);
        assert!((roots[1] - (std::f64::consts::TAU - 0.3f64.acos())).abs() < 1e-13);
    }
}

//! Verdict reporting for the acceptance checks in `tests/acceptance.rs`.

use std::io::Write;
use std::time::{Duration, Instant};

/// One `PASS`/`FAIL` line.
pub fn format_line(n: usize, pass: bool, elapsed: Duration, limit: Option<Duration>, detail: &str) -> String {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let limit = limit.map(|l| format!(" / limit {:.0} s", l.as_secs_f64())).unwrap_or_default();
    format!("{verdict} criterion {n}: {detail} [{:.3} s{limit}]\n", elapsed.as_secs_f64())
}

/// Writes past the test harness capture so the line always shows.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(format!("\n{line}").as_bytes());
    let _ = out.flush();
}

/// Runs `body`, which returns whether the check held and a summary, then
/// prints the verdict and panics on a miss. A run over `limit` seconds
/// counts as a miss.
pub fn criterion(n: usize, limit: Option<f64>, body: impl FnOnce() -> (bool, String)) {
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs_f64);
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let detail = if in_time { detail } else { format!("{detail}; over time limit") };
    emit(&format_line(n, ok && in_time, elapsed, limit, &detail));
    assert!(ok && in_time, "criterion {n}: {detail}");
}

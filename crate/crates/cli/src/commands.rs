//! Subcommand dispatch.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use closure_core::chain::{seed_element, trace_chain, ChainElement, Orientation};
use closure_core::conic::{ConicKind, Envelope};
use closure_core::geom::wrap_pi;
use closure_core::search::{
    certify_sample, enumerate_words, fit_relation, scan_defect, trace_zero_locus, with_workers,
};

use crate::svg::{gamma_points, render, Figure};
use crate::{scan_io, verify, CliError, Overrides, Report, Residual, SceneConfig};

#[derive(Debug, Parser)]
#[command(name = "closure-lab", version, about = "Closure chains of circles and chords in an annulus")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Outer radius.
    #[arg(long = "R", global = true, allow_negative_numbers = true)]
    pub big_r: Option<f64>,
    /// Inner radius.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Distance between the centers.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Word over {c, s}.
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Seed angle on the inner circle.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    /// Grid rows over r in (0, 1).
    #[arg(long, global = true)]
    pub nr: Option<usize>,
    /// Grid columns over d in [0, 1).
    #[arg(long, global = true)]
    pub nd: Option<usize>,
    /// Closure tolerance on the defect.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed angles per closure check.
    #[arg(long, global = true)]
    pub thetas: Option<usize>,
    /// Locus points certified per word.
    #[arg(long, global = true)]
    pub cert_points: Option<usize>,
    /// Longest word searched.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Degree of the fitted relation.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Rotation increment of the first ellipse.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta1: Option<f64>,
    /// Rotation increment of the second ellipse.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta2: Option<f64>,
    /// Number of rotation increments.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Draw the fitted envelope.
    #[arg(long, global = true)]
    pub gamma: bool,
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Artifact path (CSV, JSON or SVG depending on the command).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            big_r: self.big_r,
            r: self.r,
            d: self.d,
            word: self.word.clone(),
            theta0: self.theta0,
            nr: self.nr,
            nd: self.nd,
            tol: self.tol,
            workers: self.workers,
            thetas: self.thetas,
            cert_points: self.cert_points,
            max_len: self.max_len,
            degree: self.degree,
            delta1: self.delta1,
            delta2: self.delta2,
            steps: self.steps,
            gamma: self.gamma.then_some(true),
        }
    }

    pub fn resolve(&self) -> Result<SceneConfig, CliError> {
        let file = match &self.config {
            Some(p) => Overrides::from_file(p)?,
            None => Overrides::default(),
        };
        SceneConfig::resolve(self.overrides().over(file))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a theorem numerically: t1 … t6 or sangaku.
    Verify { theorem: String },
    /// Run one chain from the seed angle.
    Chain,
    /// Defect over the (r, d) grid as CSV.
    Scan,
    /// Enumerate words and certify their closure loci.
    Search,
    /// Fit a polynomial relation to a word's closure locus.
    Fit,
    /// Draw the annulus and chain as SVG.
    Render,
}

/// Where a command's primary output goes.
pub struct Output {
    pub stdout: String,
    pub exit: i32,
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn finish(mut rep: Report, start: Instant, out: Option<&Path>) -> Result<Output, CliError> {
    rep.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let text = rep.to_json();
    if let Some(p) = out {
        write_file(p, &text)?;
    }
    Ok(Output { stdout: text, exit: rep.exit_code() })
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let cfg = cli.flags.resolve()?;
    let out = cli.flags.out.as_deref();
    let start = Instant::now();
    let workers = cfg.workers;
    with_workers(workers, || dispatch(&cli.command, &cfg, out, start)).map_err(|e| CliError::Invalid(e.to_string()))?
}

fn dispatch(cmd: &Command, cfg: &SceneConfig, out: Option<&Path>, start: Instant) -> Result<Output, CliError> {
    match cmd {
        Command::Verify { theorem } => finish(verify::run(theorem, cfg)?, start, out),
        Command::Chain => chain(cfg, start, out),
        Command::Scan => scan(cfg, start, out),
        Command::Search => search(cfg, start, out),
        Command::Fit => fit(cfg, start, out),
        Command::Render => render_cmd(cfg, out),
    }
}

fn element_json(e: &ChainElement) -> serde_json::Value {
    match e {
        ChainElement::Circle { circle, inner_angle, outer_angle } => json!({
            "letter": "c",
            "progress": inner_angle,
            "outer_contact_angle": outer_angle,
            "center": [circle.center.x, circle.center.y],
            "radius": circle.radius,
        }),
        ChainElement::Chord { chord, inner_angle } => json!({
            "letter": "s",
            "progress": inner_angle,
            "endpoints": [[chord.endpoints[0].x, chord.endpoints[0].y], [chord.endpoints[1].x, chord.endpoints[1].y]],
        }),
    }
}

/// Chain from the configured seed: elements, defect and closure flag.
struct Traced {
    elements: Vec<ChainElement>,
    failure: Option<String>,
    defect: Option<f64>,
    radius_defect: f64,
}

fn trace(cfg: &SceneConfig) -> Result<Traced, CliError> {
    let a = cfg.annulus()?;
    let w = cfg.word()?;
    let seed = seed_element(&a, w.first(), cfg.theta0).map_err(|e| CliError::Invalid(e.to_string()))?;
    let (elements, err) = trace_chain(&a, &w, seed, Orientation::Ccw);
    let (defect, radius_defect) = if err.is_none() {
        let (first, last) = (elements[0], elements[w.len()]);
        let rd = match (first.circle(), last.circle()) {
            (Some(x), Some(y)) => (x.radius - y.radius).abs(),
            _ => 0.0,
        };
        (Some(wrap_pi(last.progress() - first.progress())), rd)
    } else {
        (None, 0.0)
    };
    Ok(Traced { elements, failure: err.map(|e| e.to_string()), defect, radius_defect })
}

fn chain(cfg: &SceneConfig, start: Instant, out: Option<&Path>) -> Result<Output, CliError> {
    let t = trace(cfg)?;
    let w = cfg.word()?;
    let mut rep = Report::new("chain", cfg);
    rep.verdict("word", w.to_string());
    rep.verdict("flagged_short_word", w.is_flagged());
    match t.defect {
        Some(d) => {
            rep.push(Residual::below("abs_defect", d.abs(), cfg.tol));
            rep.push(Residual::below("radius_defect", t.radius_defect / cfg.big_r, cfg.tol));
            rep.verdict("closed", d.abs() < cfg.tol && t.radius_defect <= cfg.tol * cfg.big_r);
            rep.verdict("defect", d);
        }
        None => {
            rep.verdict("closed", false);
            rep.error = t.failure.clone();
        }
    }
    rep.data = Some(json!({ "elements": t.elements.iter().map(element_json).collect::<Vec<_>>() }));
    finish(rep, start, out)
}

fn scan(cfg: &SceneConfig, start: Instant, out: Option<&Path>) -> Result<Output, CliError> {
    let w = cfg.word()?;
    let grid = scan_defect(&w, cfg.nr, cfg.nd).map_err(|e| CliError::Invalid(e.to_string()))?;
    let csv = scan_io::grid_to_string(&grid);
    let Some(path) = out else {
        return Ok(Output { stdout: csv, exit: 0 });
    };
    write_file(path, &csv)?;
    let mut rep = Report::new("scan", cfg);
    let dead = grid.cells.iter().filter(|c| c.value().is_none()).count();
    rep.verdict("cells", grid.cells.len());
    rep.verdict("dead_cells", dead);
    rep.verdict("csv", path.display().to_string());
    finish(rep, start, None)
}

fn search(cfg: &SceneConfig, start: Instant, out: Option<&Path>) -> Result<Output, CliError> {
    let words = enumerate_words(cfg.max_len).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut rep = Report::new("search", cfg);
    let mut listing = Vec::new();
    for w in &words {
        let grid = scan_defect(w, cfg.nr, cfg.nd).map_err(|e| CliError::Invalid(e.to_string()))?;
        let locus = trace_zero_locus(w, &grid);
        let entry = if locus.is_empty() {
            json!({ "word": w.to_string(), "status": "no locus found at this resolution", "locus_points": 0 })
        } else {
            let cert = certify_sample(w, &locus, cfg.thetas, cfg.cert_points)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let bad: Vec<_> = cert
                .counterexamples()
                .map(|p| json!({ "r": p.r, "d": p.d, "verdict": verify::verdict_name(p.verdict), "theta": p.counterexample_theta, "max_abs_defect": p.max_abs_defect }))
                .collect();
            json!({
                "word": w.to_string(),
                "status": if cert.certified { "certified" } else { "not certified" },
                "locus_points": locus.len(),
                "branches": locus.branches.len(),
                "certified_points": cert.points.len(),
                "counterexamples": bad,
            })
        };
        listing.push(entry);
    }
    rep.verdict("words", words.len());
    rep.verdict(
        "certified",
        listing.iter().filter(|e| e["status"] == "certified").map(|e| e["word"].clone()).collect::<Vec<_>>(),
    );
    rep.data = Some(json!({ "words": listing }));
    finish(rep, start, out)
}

fn fit(cfg: &SceneConfig, start: Instant, out: Option<&Path>) -> Result<Output, CliError> {
    let w = cfg.word()?;
    let grid = scan_defect(&w, cfg.nr, cfg.nd).map_err(|e| CliError::Invalid(e.to_string()))?;
    let locus = trace_zero_locus(&w, &grid);
    let mut rep = Report::new("fit", cfg);
    rep.verdict("locus_points", locus.len());
    match fit_relation(&locus, cfg.degree) {
        Ok(f) => {
            let terms: Vec<_> = f
                .basis
                .iter()
                .zip(&f.coefficients)
                .map(|(m, c)| json!({ "monomial": m.to_string(), "coefficient": c }))
                .collect();
            rep.verdict("nullity", f.nullity);
            rep.push(Residual::below("max_residual", f.max_residual, 1e-6));
            rep.data = Some(json!({ "degree": f.degree, "terms": terms, "singular_values": f.singular_values }));
        }
        Err(e) => rep.error = Some(e.to_string()),
    }
    finish(rep, start, out)
}

fn render_cmd(cfg: &SceneConfig, out: Option<&Path>) -> Result<Output, CliError> {
    let a = cfg.annulus()?;
    let w = cfg.word()?;
    let t = trace(cfg)?;
    let closed = t.defect.is_some_and(|d| d.abs() < cfg.tol) && t.radius_defect <= cfg.tol * cfg.big_r;
    let gamma = if cfg.gamma {
        verify::fit_gamma(&a, cfg.theta0)
            .ok()
            .filter(|g| matches!(g.envelope, Envelope::Conic))
            .map(|g| g.dual.point_conic())
            .filter(|c| c.kind() == ConicKind::Ellipse)
            .and_then(|c| gamma_points(&c, 256))
    } else {
        None
    };
    let fig = Figure {
        annulus: &a,
        word: w.to_string(),
        elements: &t.elements,
        n: w.len(),
        closed,
        defect: t.defect,
        failure: t.failure.clone(),
        gamma,
    };
    let svg = render(&fig);
    if let Some(p) = out {
        write_file(p, &svg)?;
    }
    let exit = if t.failure.is_some() { 1 } else { 0 };
    Ok(Output { stdout: if out.is_some() { String::new() } else { svg }, exit })
}

/// What a run of the CLI prints, without touching the process streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Captured {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

/// Runs the CLI on `args` (program name first) and captures its output.
pub fn run_captured<I, T>(args: I) -> Captured
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let (stdout, stderr, exit) = if e.use_stderr() {
                (String::new(), e.render().to_string(), 2)
            } else {
                (e.render().to_string(), String::new(), 0)
            };
            return Captured { stdout, stderr, exit };
        }
    };
    match execute(&cli) {
        Ok(o) => Captured { stdout: o.stdout, stderr: String::new(), exit: o.exit },
        Err(e) => {
            let diag = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            Captured {
                stdout: format!("{}\n", serde_json::to_string_pretty(&diag).expect("json")),
                stderr: format!("closure-lab: {e}\n"),
                exit: e.exit_code(),
            }
        }
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let c = run_captured(args);
    let _ = std::io::stdout().lock().write_all(c.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(c.stderr.as_bytes());
    c.exit
}

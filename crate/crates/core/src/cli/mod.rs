//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and maps the outcome to an exit code: 0 when every check
//! passed, 1 when a check failed (reports are still written), 2 on a usage
//! or configuration error.

mod config;
pub mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use config::{parse_complex, parse_config, parse_config_layer, ConfigLayer, RunConfig};

use crate::analysis::{box_dimension, fmt_num, moment, moment_series, Report, ReportLine, ScaleLadder};
use crate::complex_map::{cluster, delta_certificate, DeltaSearch, MapParams, Order, PointCloud2D, Verdict};
use crate::error::{Error, Result};
use crate::padic::PAdicNumber;
use crate::render::{export3d, pgm, preset, presets, svg, Format3D, Intensity, PresetKind, RasterConfig, Viewport};
use crate::solenoid::{
    delta_tilde, gamma_certificate, integrate_flow, solenoid_cloud, FlowConfig, GammaSampling, PointCloud3D,
    SolenoidParams, SolenoidPoint, TildeSearch,
};

pub const THREADS_ENV: &str = "PADIC_FRACTAL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "padic-fractal", version, about = "p-adic fractals in the plane and p-adic solenoids in space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Rasterize Υ(p^k Z_p) as PGM or draw it as SVG.
    Render2d,
    /// Export the solenoid cloud Ω(T_p) as PLY or CSV.
    Render3d,
    /// Embedding certificates: Δ bounds, and γ and Δ̃ when --a is given.
    Certify,
    /// Run one verification suite (--suite) or all of them (--all).
    Verify,
    /// Box-counting dimension of a planar or solenoid cloud.
    Dimension,
    /// Haar moments ⟨z^L z̄^L̄⟩ of the image measure.
    Moments,
    /// Integrate the flow field from a point and compare with the exact orbit.
    Orbit,
    /// List the figure presets.
    Presets,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Order: a non-negative integer or `inf`.
    #[arg(long, global = true)]
    pub m: Option<String>,
    /// `re,im` or a real.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Torus offset, `re,im` or a real.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// pgm, svg, ply or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[arg(long, global = true)]
    pub suite: Option<String>,
    #[arg(long, global = true)]
    pub all: bool,
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// JSON file with defaults; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub l: Option<u32>,
    #[arg(long, global = true)]
    pub lbar: Option<u32>,
    /// Flow end time.
    #[arg(long, global = true)]
    pub t: Option<f64>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Start point (ξ, x) of an orbit; x is an integer residue.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[arg(long, global = true)]
    pub x: Option<u128>,
    #[arg(long, global = true)]
    pub width: Option<usize>,
    #[arg(long, global = true)]
    pub height: Option<usize>,
    /// Grey levels proportional to hit counts instead of black and white.
    #[arg(long, global = true)]
    pub density: bool,
    #[arg(long, global = true)]
    pub xi_grid: Option<usize>,
}

impl Options {
    fn layer(&self) -> Result<ConfigLayer> {
        Ok(ConfigLayer {
            p: self.p,
            m: self.m.as_deref().map(str::parse).transpose()?,
            s: self.s.as_deref().map(parse_complex).transpose()?,
            a: self.a.as_deref().map(parse_complex).transpose()?,
            alpha: self.alpha,
            depth: self.depth,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format.clone(),
            preset: self.preset.clone(),
            exhaustive: self.exhaustive.then_some(true),
        })
    }
}

/// What a subcommand produced. `stdout` goes to standard output, `file` to
/// `--out` when set, `stderr` to standard error.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub file: Option<(PathBuf, Vec<u8>)>,
    pub stderr: String,
    pub passed: bool,
}

impl Outcome {
    fn report(report: &Report, out: Option<&Path>) -> Self {
        let text = report.to_string().into_bytes();
        Outcome {
            file: out.map(|p| (p.to_path_buf(), text.clone())),
            stdout: text,
            stderr: String::new(),
            passed: report.passed(),
        }
    }

    fn artifact(bytes: Vec<u8>, out: Option<&Path>, note: String) -> Self {
        match out {
            Some(path) => Outcome { file: Some((path.to_path_buf(), bytes)), stderr: note, passed: true, ..Default::default() },
            None => Outcome { stdout: bytes, stderr: note, passed: true, ..Default::default() },
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some((path, bytes)) = &outcome.file {
        if let Err(e) = std::fs::write(path, bytes) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&outcome.stdout).and_then(|_| stdout.flush()).is_err() {
        return 2;
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    outcome.exit_code()
}

/// Caps the rayon pool at `PADIC_FRACTAL_THREADS` workers when set.
fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parameter(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Resolves the configuration: defaults, preset, `--config` file, then flags.
pub fn resolve_config(opts: &Options) -> Result<RunConfig> {
    let flags = opts.layer()?;
    let base = match &opts.config {
        Some(path) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Error::Parameter(format!("cannot read config {}: {e}", path.display())))?;
            parse_config_layer(&bytes)?
        }
        None => ConfigLayer::default(),
    };
    base.overlay(&flags).resolve()
}

/// Runs a parsed command without touching stdout or the file system.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = resolve_config(&cli.opts)?;
    let opts = &cli.opts;
    match cli.command {
        Command::Presets => Ok(list_presets()),
        Command::Certify => certify(&cfg),
        Command::Verify => verify(&cfg, opts),
        Command::Render2d => render2d(&cfg, opts),
        Command::Render3d => render3d(&cfg, opts),
        Command::Dimension => dimension(&cfg, opts),
        Command::Moments => moments(&cfg, opts),
        Command::Orbit => orbit_cmd(&cfg, opts),
    }
}

fn tag(params: &MapParams) -> String {
    format!("p{}.m{}.s{}", params.p(), params.m(), suites::fmt_complex(params.s()))
}

fn list_presets() -> Outcome {
    let mut out = String::from("name\tp\tm\ts\tkind\tdepth\tnotes\n");
    for fig in presets() {
        let kind = match fig.kind {
            PresetKind::Plane { level } => format!("plane(level={level})"),
            PresetKind::Solenoid { a, xi_grid } => format!("solenoid(a={},xi_grid={xi_grid})", suites::fmt_complex(a)),
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{kind}\t{}\t{}",
            fig.name,
            fig.p(),
            fig.map.m(),
            suites::fmt_complex(fig.s()),
            fig.depth,
            fig.notes
        );
    }
    Outcome { stdout: out.into_bytes(), passed: true, ..Default::default() }
}

/// Search depth for Δ: at most 8 digits and at most 2^16 residues.
fn default_search_depth(p: u32) -> u32 {
    ((16.0 * std::f64::consts::LN_2 / (p as f64).ln()).floor() as u32).clamp(1, 8)
}

fn certificate_lines(r: &mut Report, prefix: &str, c: &crate::complex_map::EmbeddingCertificate) {
    r.push(ReportLine::at_least(format!("{prefix}.delta_lower"), c.delta_lower, 0.0));
    r.push(ReportLine::at_least(
        format!("{prefix}.delta_empirical"),
        c.delta_empirical,
        c.delta_lower - c.tail_allowance,
    ));
    let ok = matches!(c.verdict, Verdict::CertifiedEmbedding | Verdict::EmpiricallyInjective);
    r.push(ReportLine::new(
        format!("{prefix}.verdict"),
        c.verdict.to_string(),
        "certified-embedding|empirically-injective",
        ok,
    ));
}

fn certify(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.map_params()?;
    let depth = cfg.depth.unwrap_or_else(|| default_search_depth(params.p()));
    let cert = delta_certificate(&params, DeltaSearch { depth })?;
    let mut r = Report::new();
    let t = tag(&params);
    certificate_lines(&mut r, &format!("certify.{t}"), &cert);
    if let Some(a) = cfg.a {
        let sp = SolenoidParams::new(params, a)?;
        let g = gamma_certificate(&sp, GammaSampling::default())?;
        let ta = format!("{t}.a{}", suites::fmt_complex(a));
        r.push(ReportLine::new(
            format!("certify.{ta}.gamma_estimate"),
            fmt_num(g.gamma_estimate),
            "< 1",
            g.gamma_estimate < 1.0,
        ));
        r.push(ReportLine::at_least(format!("certify.{ta}.abs_a"), a.norm(), params.disk_radius()));
        let tilde = delta_tilde(&sp, TildeSearch::default())?;
        certificate_lines(&mut r, &format!("certify.{ta}.tilde"), &tilde);
    }
    Ok(Outcome::report(&r, cfg.out.as_deref()))
}

fn verify(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let report = if opts.all {
        suites::run_all(cfg.seed)?
    } else {
        let name = opts
            .suite
            .as_deref()
            .ok_or_else(|| Error::Parameter(format!("verify needs --suite <{}> or --all", suites::SUITES.join("|"))))?;
        let params = cfg.map_params()?;
        let mut r = Report::new();
        for one in name.split(',') {
            r.extend(suites::run_suite(one.trim(), &params, cfg.a, cfg.alpha, cfg.depth, cfg.seed, cfg.exhaustive)?);
        }
        r
    };
    Ok(Outcome::report(&report, cfg.out.as_deref()))
}

/// `Υ(p^level Z_p)` for the configured map; the level comes from a planar
/// preset and is 0 otherwise.
fn plane_cloud(cfg: &RunConfig, default_depth: u32) -> Result<PointCloud2D> {
    let params = cfg.map_params()?;
    let level = match cfg.preset.as_deref().map(preset).transpose()?.map(|f| f.kind) {
        Some(PresetKind::Plane { level }) => level,
        _ => 0,
    };
    let depth = cfg.depth.unwrap_or(default_depth) as i64;
    cluster(&PAdicNumber::zero(params.p()), level, &params, depth)
}

fn solenoid_setup(cfg: &RunConfig, opts: &Options) -> Result<(SolenoidParams, usize, u32)> {
    let params = cfg.map_params()?;
    let fig = cfg.preset.as_deref().map(preset).transpose()?;
    let preset_grid = fig.as_ref().and_then(|f| match f.kind {
        PresetKind::Solenoid { xi_grid, .. } => Some(xi_grid),
        PresetKind::Plane { .. } => None,
    });
    let a = cfg.a.unwrap_or_else(|| Complex64::new(2.0 * params.disk_radius(), 0.0));
    let xi_grid = opts.xi_grid.or(preset_grid).unwrap_or(64);
    let depth = cfg.depth.unwrap_or(6);
    Ok((SolenoidParams::new(params, a)?, xi_grid, depth))
}

fn extension(path: Option<&Path>) -> Option<String> {
    path.and_then(|p| p.extension()).map(|e| e.to_string_lossy().to_ascii_lowercase())
}

fn render2d(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let cloud = plane_cloud(cfg, 10)?;
    let format = cfg.format.clone().or_else(|| extension(cfg.out.as_deref())).unwrap_or_else(|| "pgm".into());
    let viewport = Viewport::fit(cloud.values(), 0.05)?;
    let width = opts.width.unwrap_or(1024);
    let aspect = (viewport.im_max - viewport.im_min) / (viewport.re_max - viewport.re_min);
    let height = opts.height.unwrap_or(((width as f64 * aspect).round() as usize).max(1));
    let bytes = match format.as_str() {
        "pgm" => {
            let intensity = if opts.density { Intensity::Density } else { Intensity::Binary };
            let rc = RasterConfig::new(width, height, viewport, intensity)?;
            let points: Vec<Complex64> = cloud.values().collect();
            pgm(&points, &rc)
        }
        "svg" => {
            let radius = 0.5 * (viewport.re_max - viewport.re_min) / width as f64;
            svg(&cloud, &viewport, radius, width).into_bytes()
        }
        other => return Err(Error::Parameter(format!("render2d writes pgm or svg, not `{other}`"))),
    };
    let mut note = format!("{} points, {width}x{height}\n", cloud.len());
    if cloud.is_empty() {
        note.push_str("warning: the cloud is empty; the image is blank\n");
    }
    Ok(Outcome::artifact(bytes, cfg.out.as_deref(), note))
}

fn render3d(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let (sp, xi_grid, depth) = solenoid_setup(cfg, opts)?;
    let cloud = solenoid_cloud(&sp, xi_grid, depth)?;
    let format: Format3D = cfg
        .format
        .clone()
        .or_else(|| extension(cfg.out.as_deref()))
        .unwrap_or_else(|| "ply".into())
        .parse()?;
    let note = format!("{} points on {xi_grid} fibers\n", cloud.len());
    Ok(Outcome::artifact(export3d(&cloud, format), cfg.out.as_deref(), note))
}

fn dimension(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let params = cfg.map_params()?;
    let solenoid = cfg.preset.as_deref().map(preset).transpose()?.is_some_and(|f| f.is_solenoid()) || cfg.a.is_some();
    let ds = params.scaling_dimension();
    let (est, target, what) = if solenoid {
        let (sp, xi_grid, depth) = solenoid_setup(cfg, opts)?;
        let cloud: PointCloud3D = solenoid_cloud(&sp, xi_grid, depth)?;
        (box_dimension(&cloud, &ScaleLadder::default())?, (ds + 1.0).min(3.0), "solenoid")
    } else {
        let cloud = plane_cloud(cfg, 12)?;
        (box_dimension(&cloud, &ScaleLadder::default())?, ds.min(2.0), "plane")
    };
    let t = format!("dimension.{what}.{}", tag(&params));
    let mut r = Report::new();
    r.push(ReportLine::within(format!("{t}.slope"), est.slope, target, 0.12));
    r.push(ReportLine::at_least(format!("{t}.r_squared"), est.r_squared, 0.95));
    r.push(ReportLine::new(
        format!("{t}.scale_window"),
        format!("{}..{}", fmt_num(est.scale_window.0), fmt_num(est.scale_window.1)),
        format!("points={}", est.point_count),
        true,
    ));
    Ok(Outcome::report(&r, cfg.out.as_deref()))
}

/// Order of the `s`-expansion used as the closed-form reference: deep enough
/// that the dropped terms are below `1e-12` while `p^{order+1}` stays in i128.
fn series_order(p: u32, abs_s: f64) -> u32 {
    let want = (1e-13f64.ln() / abs_s.ln()).ceil() as u32 + 8;
    let cap = (126.0 * std::f64::consts::LN_2 / (p as f64).ln()).floor() as u32 - 1;
    want.min(cap).min(60)
}

fn moments(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let params = cfg.map_params()?;
    let (l, lbar) = (opts.l.unwrap_or(1), opts.lbar.unwrap_or(1));
    let depth = cfg.depth.unwrap_or(10);
    let m = moment(l, lbar, &params, depth)?;
    let t = format!("moments.{}.L{l}.Lbar{lbar}", tag(&params));
    let mut r = Report::new();
    r.push(ReportLine::new(
        format!("{t}.value"),
        suites::fmt_complex(m.value),
        format!("+-{}", fmt_num(m.error_bound)),
        m.error_bound.is_finite(),
    ));
    let p = params.p();
    if params.m() == Order::Infinite && l < p && lbar < p {
        let abs_s = params.s().norm();
        let order = series_order(p, abs_s);
        let series = moment_series(l, lbar, p, params.s(), order)?;
        let k = (l + lbar) as i32;
        let dropped = 2.0 * (order as f64 + 2.0).powi(k) * abs_s.powi(order as i32 + 1) / (1.0 - abs_s).powi(2);
        r.push(ReportLine::at_most(format!("{t}.series_gap"), (m.value - series).norm(), m.error_bound + dropped));
    }
    Ok(Outcome::report(&r, cfg.out.as_deref()))
}

fn orbit_cmd(cfg: &RunConfig, opts: &Options) -> Result<Outcome> {
    let params = cfg.map_params()?;
    let a = cfg.a.unwrap_or_else(|| Complex64::new(2.0 * params.disk_radius(), 0.0));
    let sp = SolenoidParams::new(params, a)?;
    let start = SolenoidPoint::from_residue(opts.xi.unwrap_or(0.0), params.p(), opts.x.unwrap_or(0))?;
    let flow = integrate_flow(
        &start,
        &sp,
        FlowConfig { t_end: opts.t.unwrap_or(1.0), steps: opts.steps.unwrap_or(400), lookup_depth: cfg.depth.unwrap_or(12) },
    )?;
    let mut csv = String::from("t,x,y,z,exact_x,exact_y,exact_z\n");
    for s in &flow.samples {
        let [x, y, z] = s.integrated;
        let [ex, ey, ez] = s.exact;
        let _ = writeln!(csv, "{},{x},{y},{z},{ex},{ey},{ez}", s.t);
    }
    let mut r = Report::new();
    r.push(ReportLine::at_most(
        format!("orbit.{}.a{}.max_divergence", tag(&params), suites::fmt_complex(a)),
        flow.max_divergence,
        1e-3,
    ));
    let passed = r.passed();
    let outcome = match cfg.out.as_deref() {
        Some(path) => Outcome {
            stdout: r.to_string().into_bytes(),
            file: Some((path.to_path_buf(), csv.into_bytes())),
            stderr: String::new(),
            passed,
        },
        None => Outcome { stdout: csv.into_bytes(), file: None, stderr: r.to_string(), passed },
    };
    Ok(outcome)
}

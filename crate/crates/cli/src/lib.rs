//! Command-line front end: spectral scans, soliton grids, blow-up brackets,
//! asymptotic comparisons, the acceptance suite and figure data.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nmkdv::criteria::{parse_suite, run_suite, SuiteOptions};
use nmkdv::profile::{Field, PureStep, TabulatedProfile};
use nmkdv::scattering::{pure_step_scattering, pure_step_zeros, scattering_data};
use nmkdv::solitons::{
    asymptotic_u, blowup_scan, eval_grid, figure_grid, figure_preset, norming_from_values,
    region_of, SolitonField,
};
use nmkdv::spectral::{
    classify_tilde_candidates, e_constants, spectral_report, BSampler, Cplx, NumericB, PureStepB,
    SpectralReport, ZeroB,
};
use nmkdv::types::{linspace, Norming, ZeroSet};
use nmkdv::{CaseTag, Error, GridSpec, Params, Result, C64};
use serde::Serialize;

pub mod output;

use output::{float, sink, write_json, CsvTable};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "NMKDV_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nmkdv",
    version,
    about = "Scattering data and soliton fields of the nonlocal mKdV equation on an oscillating step"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a1, a2 and b on a real k grid
    Spectra,
    /// Zeros of a1 with their case tag
    Zeros,
    /// Trace-formula constants phi1, phi2, d1, d2 and E+-
    Trace,
    /// Closed-form soliton field on an (x, t) grid
    Soliton,
    /// Sign-change brackets of the soliton denominator
    Blowup,
    /// Region table with leading-order vs full values (t > 0)
    Asymptotics,
    /// Run acceptance criteria
    Verify,
    /// Figure presets 1-3 with every norming variant
    Figure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Where spectral data come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Pure-step closed forms.
    Closed,
    /// Direct scattering by ODE shooting (pure step, or `--profile`).
    Numeric,
    /// Trace formulas fed with the pure-step `b`, or the numeric `b` of `--profile`.
    Trace,
    /// `b = 0`; only meaningful for `zeros` and `trace`.
    Reflectionless,
}

#[derive(Debug, clap::Args)]
pub struct Opts {
    #[arg(
        long = "A",
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub amp: f64,
    #[arg(long = "B", global = true, allow_negative_numbers = true)]
    pub freq: Option<f64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Case tag: I, II, III, I~, II~, III~
    #[arg(long, global = true)]
    pub case: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma2: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eta1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmin: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    #[arg(long, global = true)]
    pub nt: Option<usize>,
    #[arg(long, global = true)]
    pub h: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kmin: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kmax: Option<f64>,
    #[arg(long, global = true)]
    pub nk: Option<usize>,
    #[arg(long, global = true, default_value_t = nmkdv::criteria::ORACLE_SEED)]
    pub seed: u64,
    /// Output file (directory for `figure`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Figure preset (1, 2 or 3).
    #[arg(long, global = true)]
    pub which: Option<u8>,
    /// Criteria to run: `all`, a number, or a comma-separated list.
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    #[arg(long, global = true, value_enum)]
    pub source: Option<Source>,
    /// Initial profile as a CSV with header `x,u0`.
    #[arg(long, global = true)]
    pub profile: Option<PathBuf>,
}

fn config(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl Opts {
    pub fn params(&self) -> Result<Params> {
        let b = self.freq.ok_or_else(|| config("--B is required"))?;
        let p = Params::new(self.amp, b)?;
        match self.tol {
            Some(t) => p.with_tol(t),
            None => Ok(p),
        }
    }

    fn case_tag(&self) -> Result<Option<CaseTag>> {
        self.case.as_deref().map(str::parse).transpose()
    }

    /// Soliton family: explicit `--case`, else the tilde case implied by `B` vs `A/4`.
    pub fn soliton(&self) -> Result<SolitonField> {
        let p = self.params()?;
        let case = match self.case_tag()? {
            Some(c) if c.is_tilde() => c,
            Some(c) => {
                return Err(config(format!(
                    "case {c} has no soliton family; use I~, II~ or III~"
                )))
            }
            None => {
                let quarter = p.amp / 4.0;
                if (p.freq - quarter).abs() <= nmkdv::solitons::DOUBLE_ZERO_MATCH * p.amp {
                    CaseTag::TildeIII
                } else if p.freq < quarter {
                    CaseTag::TildeI
                } else {
                    CaseTag::TildeII
                }
            }
        };
        let stray = |name: &str, v: Option<f64>| match v {
            Some(_) => Err(config(format!("--{name} does not apply to case {case}"))),
            None => Ok(()),
        };
        let norming = match case {
            CaseTag::TildeI => {
                stray("eta1", self.eta1)?;
                stray("nu1", self.nu1)?;
                norming_from_values(case, self.gamma1.unwrap_or(1.0), self.gamma2.unwrap_or(1.0))?
            }
            CaseTag::TildeII => {
                stray("gamma1", self.gamma1)?;
                stray("gamma2", self.gamma2)?;
                stray("nu1", self.nu1)?;
                norming_from_values(case, self.eta1.unwrap_or(1.0), 1.0)?
            }
            _ => {
                stray("gamma1", self.gamma1)?;
                stray("gamma2", self.gamma2)?;
                stray("eta1", self.eta1)?;
                norming_from_values(case, self.nu1.unwrap_or(1.0), 1.0)?
            }
        };
        SolitonField::new(p, norming)
    }

    /// Grid from flags, with `base` filling whatever was not given.
    pub fn grid(&self, base: GridSpec) -> Result<GridSpec> {
        GridSpec::new(
            (
                self.xmin.unwrap_or(base.xmin),
                self.xmax.unwrap_or(base.xmax),
            ),
            self.nx.unwrap_or(base.nx),
            (
                self.tmin.unwrap_or(base.tmin),
                self.tmax.unwrap_or(base.tmax),
            ),
            self.nt.unwrap_or(base.nt),
            self.h.unwrap_or(base.h),
        )
    }

    fn k_grid(&self) -> Result<Vec<f64>> {
        let (a, b, n) = (
            self.kmin.unwrap_or(-2.0),
            self.kmax.unwrap_or(2.0),
            self.nk.unwrap_or(201),
        );
        if !(a < b) || n < 2 || !a.is_finite() || !b.is_finite() {
            return Err(config("k grid needs kmin < kmax and nk >= 2"));
        }
        Ok(linspace(a, b, n))
    }

    fn load_profile(&self, p: Params) -> Result<Option<TabulatedProfile>> {
        self.profile
            .as_deref()
            .map(|path| TabulatedProfile::from_csv(p, path))
            .transpose()
    }
}

/// Applies the thread-count variable to the global pool.
pub fn configure_threads(value: Option<OsString>) -> Result<()> {
    let Some(raw) = value else { return Ok(()) };
    let n: usize = raw
        .to_str()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            config(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))
        })?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads(std::env::var_os(THREADS_ENV)) {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                EXIT_CONFIG
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    let o = &cli.opts;
    match cli.command {
        Command::Spectra => spectra(o),
        Command::Zeros => zeros(o),
        Command::Trace => trace(o),
        Command::Soliton => soliton(o),
        Command::Blowup => blowup(o),
        Command::Asymptotics => asymptotics(o),
        Command::Verify => {
            return Ok(if verify(o)? { EXIT_OK } else { EXIT_NUMERICAL });
        }
        Command::Figure => figure(o),
    }?;
    Ok(EXIT_OK)
}

fn cplx(z: C64) -> [String; 2] {
    [float(z.re), float(z.im)]
}

fn spectra(o: &Opts) -> Result<()> {
    let p = o.params()?;
    let ks = o.k_grid()?;
    let source = o.source.unwrap_or(if o.profile.is_some() {
        Source::Numeric
    } else {
        Source::Closed
    });
    let profile = o.load_profile(p)?;
    let step = PureStep::new(p);
    let field: &dyn Field = match &profile {
        Some(t) => t,
        None => &step,
    };
    let nan = C64::new(f64::NAN, f64::NAN);
    let rows: Vec<(f64, C64, C64, C64)> = match source {
        Source::Closed => {
            if profile.is_some() {
                return Err(config("--profile needs --source numeric"));
            }
            ks.iter()
                .map(|&k| match pure_step_scattering(&p, C64::new(k, 0.0)) {
                    Ok((a1, a2, b)) => Ok((k, a1, a2, b)),
                    Err(Error::SingularPoint(_)) => Ok((k, nan, nan, nan)),
                    Err(e) => Err(e),
                })
                .collect::<Result<_>>()?
        }
        Source::Numeric => {
            use rayon::prelude::*;
            ks.par_iter()
                .map(|&k| {
                    let s = scattering_data(field, C64::new(k, 0.0))?;
                    Ok((
                        k,
                        s.a1.unwrap_or(nan),
                        s.a2.unwrap_or(nan),
                        s.b.unwrap_or(nan),
                    ))
                })
                .collect::<Result<_>>()?
        }
        other => {
            return Err(config(format!(
                "spectra supports --source closed|numeric, got {other:?}"
            )))
        }
    };
    let out = sink(o.out.as_deref())?;
    match o.format {
        Format::Csv => {
            let comment = format!("params: {} source={}", p.summary(), source_name(source));
            let mut t = CsvTable::new(
                out,
                &comment,
                &["k", "a1_re", "a1_im", "a2_re", "a2_im", "b_re", "b_im"],
            )?;
            for (k, a1, a2, b) in rows {
                let mut rec = vec![float(k)];
                rec.extend(cplx(a1));
                rec.extend(cplx(a2));
                rec.extend(cplx(b));
                t.row(rec)?;
            }
            t.finish()
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                k: f64,
                a1: Cplx,
                a2: Cplx,
                b: Cplx,
            }
            #[derive(Serialize)]
            struct Doc {
                params: Params,
                source: String,
                rows: Vec<Row>,
            }
            let rows = rows
                .into_iter()
                .map(|(k, a1, a2, b)| Row {
                    k,
                    a1: a1.into(),
                    a2: a2.into(),
                    b: b.into(),
                })
                .collect();
            write_json(
                out,
                &Doc {
                    params: p,
                    source: source_name(source),
                    rows,
                },
            )
        }
    }
}

fn source_name(s: Source) -> String {
    format!("{s:?}").to_lowercase()
}

/// `b` sampler for the trace-formula sources.
fn sampler<'a>(
    o: &Opts,
    p: Params,
    profile: &'a Option<TabulatedProfile>,
    step: &'a PureStep,
) -> Result<Box<dyn BSampler + 'a>> {
    let source = o.source.unwrap_or(Source::Trace);
    Ok(match (source, profile) {
        (Source::Reflectionless, _) => Box::new(ZeroB),
        (Source::Trace, None) => Box::new(PureStepB(p)),
        (Source::Trace | Source::Numeric, Some(t)) => Box::new(NumericB::new(t)),
        (Source::Numeric, None) => Box::new(NumericB::new(step)),
        (Source::Closed, _) => {
            return Err(config(
                "closed-form data have no trace formula; use --source trace|numeric|reflectionless",
            ))
        }
    })
}

#[derive(Serialize)]
struct ZerosDoc {
    #[serde(rename = "A")]
    amp: f64,
    #[serde(rename = "B")]
    freq: f64,
    source: String,
    case: CaseTag,
    zeros: Vec<Cplx>,
    /// `+` or `-` for the constant `E+-` the tilde zeros came from.
    #[serde(skip_serializing_if = "Option::is_none")]
    branch: Option<char>,
}

fn zeros(o: &Opts) -> Result<()> {
    let p = o.params()?;
    let source = o.source.unwrap_or(Source::Closed);
    let (zs, branch): (ZeroSet, Option<char>) = match source {
        Source::Closed => (pure_step_zeros(&p), None),
        Source::Reflectionless => {
            let e = e_constants(&ZeroB, &p)?;
            let cands = classify_tilde_candidates(&e, &p);
            let (b, z) = *cands.first().ok_or_else(|| {
                Error::NoAdmissibleRoot("neither E+ nor E- yields admissible zeros".into())
            })?;
            (z, Some(b))
        }
        _ => {
            let profile = o.load_profile(p)?;
            let step = PureStep::new(p);
            let s = sampler(o, p, &profile, &step)?;
            let rep = spectral_report(s.as_ref(), &p)?;
            let z = match rep.zeros.as_slice() {
                [a, b] => [C64::new(a.re, a.im), C64::new(b.re, b.im)],
                _ => {
                    return Err(Error::Classification(
                        "trace formula returned no zero pair".into(),
                    ))
                }
            };
            (
                ZeroSet {
                    case: rep.case,
                    zeros: z,
                },
                None,
            )
        }
    };
    let mut list: Vec<Cplx> = zs.zeros.iter().map(|&z| z.into()).collect();
    if zs.is_double() {
        list.truncate(1);
    }
    let doc = ZerosDoc {
        amp: p.amp,
        freq: p.freq,
        source: source_name(source),
        case: zs.case,
        zeros: list,
        branch,
    };
    let out = sink(o.out.as_deref())?;
    match o.format {
        Format::Json => write_json(out, &doc),
        Format::Csv => {
            let comment = format!("params: {} source={}", p.summary(), doc.source);
            let mut t = CsvTable::new(out, &comment, &["case", "re", "im"])?;
            for z in &doc.zeros {
                t.row([doc.case.to_string(), float(z.re), float(z.im)])?;
            }
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct TraceDoc {
    #[serde(flatten)]
    report: SpectralReport,
    #[serde(rename = "E_plus", skip_serializing_if = "Option::is_none")]
    e_plus: Option<Cplx>,
    #[serde(rename = "E1", skip_serializing_if = "Option::is_none")]
    e1: Option<Cplx>,
    #[serde(rename = "E2", skip_serializing_if = "Option::is_none")]
    e2: Option<Cplx>,
    source: String,
}

fn trace(o: &Opts) -> Result<()> {
    let p = o.params()?;
    let profile = o.load_profile(p)?;
    let step = PureStep::new(p);
    let s = sampler(o, p, &profile, &step)?;
    let report = spectral_report(s.as_ref(), &p)?;
    let e = e_constants(s.as_ref(), &p)
        .ok()
        .filter(|e| e.e_plus.is_finite());
    let doc = TraceDoc {
        report,
        e_plus: e.map(|e| e.e_plus.into()),
        e1: e.map(|e| e.e1.into()),
        e2: e.map(|e| e.e2.into()),
        source: source_name(o.source.unwrap_or(Source::Trace)),
    };
    let out = sink(o.out.as_deref())?;
    match o.format {
        Format::Json => write_json(out, &doc),
        Format::Csv => {
            let comment = format!("params: {} source={}", p.summary(), doc.source);
            let mut t = CsvTable::new(out, &comment, &["name", "re", "im"])?;
            let r = &doc.report;
            let mut rows = vec![
                ("phi1", r.phi1.re, r.phi1.im),
                ("phi2", r.phi2, 0.0),
                ("d1", r.d1, 0.0),
                ("d2", r.d2, 0.0),
                ("E_minus", r.e_minus.re, r.e_minus.im),
            ];
            for (name, v) in [("E_plus", doc.e_plus), ("E1", doc.e1), ("E2", doc.e2)] {
                if let Some(v) = v {
                    rows.push((name, v.re, v.im));
                }
            }
            for (name, re, im) in rows {
                t.row([name.to_string(), float(re), float(im)])?;
            }
            t.finish()
        }
    }
}

fn field_comment(f: &SolitonField, grid: &GridSpec) -> String {
    format!(
        "params: {} case={} norming={} grid: x=[{:?},{:?}] nx={} t=[{:?},{:?}] nt={} h={:?}",
        f.params.summary(),
        f.case,
        f.norming.label(),
        grid.xmin,
        grid.xmax,
        grid.nx,
        grid.tmin,
        grid.tmax,
        grid.nt,
        grid.h
    )
}

/// Writes one soliton grid in the chosen format.
pub fn write_field(
    out: impl Write,
    f: &SolitonField,
    grid: &GridSpec,
    format: Format,
) -> Result<()> {
    let cells = eval_grid(f, grid);
    match format {
        Format::Csv => {
            let mut t = CsvTable::new(out, &field_comment(f, grid), &["x", "t", "u", "masked"])?;
            for (x, tt, s) in cells {
                t.row([
                    float(x),
                    float(tt),
                    float(s.u),
                    u8::from(s.masked).to_string(),
                ])?;
            }
            t.finish()
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Cell {
                x: f64,
                t: f64,
                u: f64,
                masked: bool,
            }
            #[derive(Serialize)]
            struct Doc {
                params: Params,
                case: CaseTag,
                norming: String,
                grid: GridSpec,
                cells: Vec<Cell>,
            }
            let cells = cells
                .into_iter()
                .map(|(x, t, s)| Cell {
                    x,
                    t,
                    u: s.u,
                    masked: s.masked,
                })
                .collect();
            write_json(
                out,
                &Doc {
                    params: f.params,
                    case: f.case,
                    norming: f.norming.label(),
                    grid: *grid,
                    cells,
                },
            )
        }
    }
}

fn soliton(o: &Opts) -> Result<()> {
    let f = o.soliton()?;
    let grid = o.grid(figure_grid())?;
    write_field(sink(o.out.as_deref())?, &f, &grid, o.format)
}

fn blowup(o: &Opts) -> Result<()> {
    let f = o.soliton()?;
    let grid = o.grid(figure_grid())?;
    let brackets = blowup_scan(&f, &grid);
    let out = sink(o.out.as_deref())?;
    match o.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                params: Params,
                case: CaseTag,
                norming: String,
                grid: GridSpec,
                brackets: Vec<nmkdv::solitons::Bracket>,
            }
            write_json(
                out,
                &Doc {
                    params: f.params,
                    case: f.case,
                    norming: f.norming.label(),
                    grid,
                    brackets,
                },
            )
        }
        Format::Csv => {
            let mut t = CsvTable::new(
                out,
                &field_comment(&f, &grid),
                &["t", "lo", "hi", "root", "residual"],
            )?;
            for b in brackets {
                t.row([
                    float(b.t),
                    float(b.lo),
                    float(b.hi),
                    float(b.root),
                    float(b.residual),
                ])?;
            }
            t.finish()
        }
    }
}

/// Default window for `asymptotics`: a single slice at `t = 40`.
pub fn asymptotics_grid() -> GridSpec {
    GridSpec::new((-20.0, 60.0), 161, (40.0, 40.0), 1, 1e-3).expect("static grid")
}

fn asymptotics(o: &Opts) -> Result<()> {
    let f = o.soliton()?;
    let grid = o.grid(asymptotics_grid())?;
    if !(grid.tmin > 0.0) {
        return Err(config("asymptotics needs tmin > 0"));
    }
    let mut rows = Vec::new();
    for t in grid.ts() {
        for x in grid.xs() {
            let region = region_of(&f, x, t)?;
            let full = f.eval(x, t);
            let asym = asymptotic_u(&f, region, x, t)?;
            rows.push((x, t, region, full, asym));
        }
    }
    let out = sink(o.out.as_deref())?;
    match o.format {
        Format::Csv => {
            let mut t = CsvTable::new(
                out,
                &field_comment(&f, &grid),
                &[
                    "x",
                    "t",
                    "region",
                    "u_full",
                    "u_asymptotic",
                    "abs_diff",
                    "masked",
                ],
            )?;
            for (x, tt, region, full, asym) in rows {
                t.row([
                    float(x),
                    float(tt),
                    region.to_string(),
                    float(full.u),
                    float(asym),
                    float((full.u - asym).abs()),
                    u8::from(full.masked).to_string(),
                ])?;
            }
            t.finish()
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: f64,
                t: f64,
                region: String,
                u_full: f64,
                u_asymptotic: f64,
                abs_diff: f64,
                masked: bool,
            }
            #[derive(Serialize)]
            struct Doc {
                params: Params,
                case: CaseTag,
                norming: String,
                rows: Vec<Row>,
            }
            let rows = rows
                .into_iter()
                .map(|(x, t, region, full, asym)| Row {
                    x,
                    t,
                    region: region.to_string(),
                    u_full: full.u,
                    u_asymptotic: asym,
                    abs_diff: (full.u - asym).abs(),
                    masked: full.masked,
                })
                .collect();
            write_json(
                out,
                &Doc {
                    params: f.params,
                    case: f.case,
                    norming: f.norming.label(),
                    rows,
                },
            )
        }
    }
}

/// Runs the selected criteria; `Ok(false)` when any failed.
fn verify(o: &Opts) -> Result<bool> {
    let ids = parse_suite(&o.suite)?;
    let report = run_suite(&ids, &SuiteOptions { seed: o.seed })?;
    let mut stdout = std::io::stdout().lock();
    for c in &report.criteria {
        writeln!(stdout, "{c}")?;
    }
    writeln!(
        stdout,
        "{} of {} criteria passed",
        report.criteria.iter().filter(|c| c.passed).count(),
        report.criteria.len()
    )?;
    if let Some(path) = o.out.as_deref() {
        write_json(sink(Some(path))?, &report)?;
    }
    Ok(report.passed)
}

/// File stem for one figure grid, e.g. `figure1_gamma_plus_minus`.
pub fn figure_file_stem(which: u8, n: Norming) -> String {
    let s = |v: nmkdv::types::Sign| if v.value() > 0.0 { "plus" } else { "minus" };
    let tail = match n {
        Norming::Gamma(a, b) => format!("gamma_{}_{}", s(a), s(b)),
        Norming::Eta(a) => format!("eta_{}", s(a)),
        Norming::Nu(a) => format!("nu_{}", s(a)),
    };
    format!("figure{which}_{tail}")
}

fn figure(o: &Opts) -> Result<()> {
    let which = o
        .which
        .ok_or_else(|| config("figure needs --which 1|2|3"))?;
    let dir: &Path = o
        .out
        .as_deref()
        .ok_or_else(|| config("figure needs --out <directory>"))?;
    let preset = figure_preset(which)?;
    let grid = o.grid(preset.grid)?;
    std::fs::create_dir_all(dir)?;
    let ext = match o.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut stdout = std::io::stdout().lock();
    for f in &preset.fields {
        let path = dir.join(format!("{}.{ext}", figure_file_stem(which, f.norming)));
        write_field(sink(Some(&path))?, f, &grid, o.format)?;
        writeln!(stdout, "{}", path.display())?;
    }
    Ok(())
}

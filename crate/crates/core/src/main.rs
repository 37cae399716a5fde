use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use sol3_minimal::export::{section_output, sig12, surface_mesh, verify_report, RunConfig, SurfaceKind};
use sol3_minimal::helicoid::{invert_period, HelicoidModel};
use sol3_minimal::ode::{b_rate, quadrature};

/// Minimal helicoids, catenoids and the entire graph in Sol3.
#[derive(Parser)]
#[command(name = "sol3", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a parameter rectangle and write an OBJ mesh.
    Surface(Opts),
    /// Write a horizontal section as CSV (t,c1,c2); catenoids also get a convexity certificate.
    Section(Opts),
    /// Run the full invariant suite; exit 2 if any check fails.
    Verify(Opts),
    /// Print W, x3(W) and the screw period T for a helicoid parameter.
    Period {
        #[arg(long = "K", allow_negative_numbers = true)]
        k: f64,
    },
    /// Print the helicoid parameter K with screw period T (negative T gives negative K).
    InvertPeriod {
        #[arg(long = "T", allow_negative_numbers = true)]
        t: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Helicoid,
    Catenoid,
    #[value(name = "graph-s", alias = "graph-S")]
    GraphS,
    PlaneLimit,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long = "K", allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    v_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    v_max: Option<f64>,
    #[arg(long)]
    nu: Option<usize>,
    #[arg(long)]
    nv: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    level: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report file; standard output (verify) or standard error (section) when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Multiplies every verification tolerance.
    #[arg(long)]
    tol_scale: Option<f64>,
    /// Emit per-vertex normals (frame components) in the mesh.
    #[arg(long)]
    normals: bool,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Opts {
    fn resolve(self) -> anyhow::Result<RunConfig> {
        let base = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                RunConfig::from_toml(&text)?
            }
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            kind: self.kind.map(|k| match k {
                Kind::Helicoid => SurfaceKind::Helicoid,
                Kind::Catenoid => SurfaceKind::Catenoid,
                Kind::GraphS => SurfaceKind::GraphS,
                Kind::PlaneLimit => SurfaceKind::PlaneLimit,
            }),
            k: self.k,
            alpha: self.alpha,
            u_min: self.u_min,
            u_max: self.u_max,
            v_min: self.v_min,
            v_max: self.v_max,
            nu: self.nu,
            nv: self.nv,
            level: self.level,
            out: self.out,
            report: self.report,
            tol_scale: self.tol_scale,
            normals: self.normals.then_some(true),
        };
        Ok(flags.over(base))
    }
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Surface(o) => {
            let cfg = o.resolve()?;
            let mesh = surface_mesh(&cfg)?;
            emit(cfg.out.as_deref(), &mesh.to_obj())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Section(o) => {
            let cfg = o.resolve()?;
            let (csv, cert) = section_output(&cfg)?;
            emit(cfg.out.as_deref(), &csv)?;
            match cert {
                Some(c) => {
                    let text = c.to_string();
                    match &cfg.report {
                        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
                        None => eprint!("{text}"),
                    }
                    Ok(if c.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
                }
                None => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Verify(o) => {
            let cfg = o.resolve()?;
            let rep = verify_report(&cfg)?;
            emit(cfg.report.as_deref(), &rep.to_string())?;
            let failed = rep.failures().count();
            eprintln!("{} checks, {failed} failed", rep.checks.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Period { k } => {
            if k == 0.0 {
                let w = quadrature(|u| 1.0 / b_rate(0.0, u), 0.0, std::f64::consts::PI, 1e-12)?.value;
                println!("W = {}", sig12(w));
                anyhow::bail!("K = 0 is degenerate: the helicoid collapses to the x3-axis and x3(W) = 0");
            }
            let m = HelicoidModel::build(k)?;
            println!("W = {}", sig12(m.period_w()));
            println!("x3(W) = {}", sig12(m.height_at_period()));
            println!("T = {}", sig12(m.period_t()));
            Ok(ExitCode::SUCCESS)
        }
        Command::InvertPeriod { t } => {
            println!("K = {}", sig12(invert_period(t)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! `cyclekit`: renders scene files to SVG, prints jet spectra, evaluates
//! lengths and runs the verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use cyclekit::cycle::{FsccParams, Point};
use cyclekit::hardy::{
    cauchy_transform, cauchy_transform_raw, dirac_residual, taylor_coeffs, taylor_coeffs_quadrature,
    CircleFunction, DiskPoint, HalfPlanePatch,
};
use cyclekit::hypercomplex::Sigma;
use cyclekit::jet::{apply_poly, cayley, jet_spectrum, jordan_image, spectral_map, HoloMap, JetSpectrum};
use cyclekit::matrix_text::parse_matrix;
use cyclekit::metric::{self, DiffConfig, LengthKind};
use cyclekit::render::{render, render_spectrum};
use cyclekit::scene::Scene;
use cyclekit::verify::{run_suite, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(name = "cyclekit", version, about = "Cycles, Möbius maps and covariant spectra in the three EPH geometries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Render a TOML scene to SVG.
    Render {
        scene: PathBuf,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`) and print one verdict per line.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override every nonzero tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the jet spectrum (eigenvalue, block length) of a matrix file.
    Spectrum {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Also draw the spectrum as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Coefficients of a polynomial φ in ascending order, each `re` or
        /// `re,im`; prints the spectra of φ(a) alongside.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        phi: Vec<String>,
    },
    /// Distances, lengths and perpendicularity. Points are written `u,v`.
    Measure {
        #[command(subcommand)]
        what: Measure,
    },
    /// Convergence tables for the Hardy-space routines.
    Analytic {
        #[command(subcommand)]
        table: Analytic,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Distance,
    CentreE,
    CentreP,
    CentreH,
    Focus,
}

impl From<Kind> for LengthKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Distance => LengthKind::Distance,
            Kind::CentreE => LengthKind::FromCentre(Sigma::Elliptic),
            Kind::CentreP => LengthKind::FromCentre(Sigma::Parabolic),
            Kind::CentreH => LengthKind::FromCentre(Sigma::Hyperbolic),
            Kind::Focus => LengthKind::FromFocus,
        }
    }
}

#[derive(clap::Args)]
struct Geometry {
    /// σ of the point plane: -1, 0 or 1.
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    sigma: i64,
    /// σ̆ of the cycle space; defaults to σ.
    #[arg(long, allow_hyphen_values = true)]
    sigma_breve: Option<i64>,
}

impl Geometry {
    fn resolve(&self) -> Result<(Sigma, FsccParams)> {
        let s = Sigma::try_from(self.sigma)?;
        let sb = match self.sigma_breve {
            Some(v) => Sigma::try_from(v)?,
            None => s,
        };
        Ok((s, FsccParams::new(sb)))
    }
}

#[derive(Subcommand)]
enum Measure {
    /// Signed squared distance `du² − σdv²` and the extremal-cycle value.
    Distance {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        geo: Geometry,
    },
    /// Signed length from A to B.
    Length {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value = "distance")]
        kind: Kind,
        #[command(flatten)]
        geo: Geometry,
    },
    /// Whether AB is perpendicular to the direction D for the chosen length.
    Perpendicular {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_enum, default_value = "distance")]
        kind: Kind,
        #[command(flatten)]
        geo: Geometry,
    },
}

#[derive(Subcommand)]
enum Analytic {
    /// Monomial recovery error of the Cauchy quadrature against node count.
    Cauchy {
        #[arg(long, default_value_t = 8)]
        degree: i32,
        #[arg(long, allow_hyphen_values = true, default_value = "0.5,0.3")]
        u: String,
    },
    /// Closed-form Taylor coefficients against FFT quadrature.
    Taylor {
        #[arg(long, allow_hyphen_values = true, default_value = "0.6,-0.5")]
        a: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Dirac residual of an analytic function under grid refinement.
    Dirac,
}

/// `println!` that reports a closed pipe as an error instead of panicking.
macro_rules! out {
    ($($t:tt)*) => {
        writeln!(io::stdout(), $($t)*)?
    };
}

fn pair(s: &str) -> Result<(f64, f64)> {
    let (x, y) = s.split_once(',').ok_or_else(|| anyhow!("expected `x,y`, got `{s}`"))?;
    Ok((x.trim().parse().context("bad number")?, y.trim().parse().context("bad number")?))
}

fn point(s: &str) -> Result<Point> {
    let (u, v) = pair(s)?;
    Ok(Point::new(u, v))
}

fn complex(s: &str) -> Result<C64> {
    if s.contains(',') {
        let (re, im) = pair(s)?;
        Ok(C64::new(re, im))
    } else {
        Ok(C64::new(s.trim().parse().context("bad number")?, 0.0))
    }
}

fn print_spectrum(label: &str, s: &JetSpectrum) -> Result<()> {
    for p in &s.points {
        out!("{label}\t{:.9}\t{:.9}\t{}", p.lambda.re, p.lambda.im, p.k);
    }
    Ok(())
}

/// Runs a command; `Ok(false)` means a verification failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Render { scene, output } => {
            let text = fs::read_to_string(&scene).with_context(|| format!("reading {}", scene.display()))?;
            let svg = render(&Scene::parse(&text)?)?;
            match output {
                Some(p) => fs::write(&p, svg).with_context(|| format!("writing {}", p.display()))?,
                None => write!(io::stdout(), "{svg}")?,
            }
            Ok(true)
        }
        Cmd::Verify { suite, samples, seed, tol } => {
            let cfg = SuiteConfig { samples, seed, tol };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut all = true;
            for name in names {
                for v in run_suite(name, &cfg)? {
                    out!("{v}");
                    all &= v.pass;
                }
            }
            Ok(all)
        }
        Cmd::Spectrum { matrix, tol, svg, phi } => {
            let text = fs::read_to_string(&matrix).with_context(|| format!("reading {}", matrix.display()))?;
            let a = parse_matrix(&text)?;
            let jets = jet_spectrum(&a, tol)?;
            print_spectrum("a", &jets)?;
            if !phi.is_empty() {
                let coeffs = phi.iter().map(|c| complex(c)).collect::<Result<Vec<_>>>()?;
                let phi = HoloMap::new(coeffs);
                print_spectrum("phi(a)", &jet_spectrum(&apply_poly(&phi, &a), tol)?)?;
                let mapped = spectral_map(&jets, &phi)?;
                print_spectrum("mapped", &mapped.spectrum)?;
                for p in &mapped.clamped {
                    out!("clamped\t{:.9}\t{:.9}\t{}", p.lambda.re, p.lambda.im, p.k);
                }
                print_spectrum("jordan", &jordan_image(&jets, &phi)?)?;
            }
            if let Some(p) = svg {
                fs::write(&p, render_spectrum(&jets)).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(true)
        }
        Cmd::Measure { what } => {
            measure(what)?;
            Ok(true)
        }
        Cmd::Analytic { table } => analytic(table),
    }
}

fn measure(what: Measure) -> Result<()> {
    match what {
        Measure::Distance { a, b, geo } => {
            let (s, params) = geo.resolve()?;
            let (a, b) = (point(&a)?, point(&b)?);
            out!("distance_sq\t{:.12}", metric::distance_sq(a, b, s));
            match metric::extremal_distance_sq(a, b, s, params.sigma_breve) {
                Ok(e) => out!("extremal_sq\t{e:.12}"),
                Err(e) => out!("extremal_sq\t{e}"),
            }
        }
        Measure::Length { a, b, kind, geo } => {
            let (s, params) = geo.resolve()?;
            out!("length\t{:.12}", metric::length(point(&a)?, point(&b)?, kind.into(), s, params)?);
        }
        Measure::Perpendicular { a, b, d, kind, geo } => {
            let (s, params) = geo.resolve()?;
            let (a, b, d) = (point(&a)?, point(&b)?, point(&d)?);
            let cfg = DiffConfig::default();
            let (d1, d2) = metric::length_derivative(a, b, d, kind.into(), s, params, cfg)?;
            let perp = metric::is_perpendicular(a, b, d, kind.into(), s, params, cfg)?;
            out!("derivative\t{d1:.3e}\t{d2:.3e}");
            out!("perpendicular\t{perp}");
        }
    }
    Ok(())
}

fn analytic(table: Analytic) -> Result<bool> {
    match table {
        Analytic::Cauchy { degree, u } => {
            let u = complex(&u)?;
            let du = DiskPoint::new(u)?;
            let exact = u.powi(degree);
            out!("N\traw_error\tcalibrated_error");
            for n in [16usize, 32, 64, 128, 256, 512, 1024] {
                let f = CircleFunction::from_fn(n, |z| z.powi(degree))?;
                let raw = (cauchy_transform_raw(&f, du) + exact).norm();
                let cal = (cauchy_transform(&f, du) - exact).norm();
                out!("{n}\t{raw:.3e}\t{cal:.3e}");
            }
        }
        Analytic::Taylor { a, count } => {
            let da = DiskPoint::new(complex(&a)?)?;
            let closed = taylor_coeffs(da, count);
            let quad = taylor_coeffs_quadrature(da, count, 1024)?;
            out!("n\tclosed_re\tclosed_im\terror");
            for (n, (c, q)) in closed.iter().zip(&quad).enumerate() {
                out!("{n}\t{:.12}\t{:.12}\t{:.3e}", c.re, c.im, (c - q).norm());
            }
        }
        Analytic::Dirac => {
            let f = |w: C64| 1.0 / (1.0 - 0.5 * cayley(w));
            let probe = C64::new(0.5, 1.0);
            out!("h\tresidual\torder");
            let mut prev: Option<f64> = None;
            for h in [0.1f64, 0.05, 0.025, 0.0125] {
                let n = (4.0 / h).round() as usize + 1;
                let patch = HalfPlanePatch::sample(HalfPlanePatch::DEFAULT_BOUNDS, n, n, f);
                let (i, j) = patch.index_of(probe).ok_or_else(|| anyhow!("probe is not a grid node"))?;
                let r = dirac_residual(&patch, i, j)?.norm();
                let order = prev.map_or(String::from("-"), |p| format!("{:.3}", (p / r).log2()));
                out!("{h}\t{r:.3e}\t{order}");
                prev = Some(r);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

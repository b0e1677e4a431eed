//! Command-line front end of the `ccf` binary.

mod render;

pub use render::{outline, render_svg, RenderOptions};

use crate::algorithms::{spec, AlgorithmId};
use crate::arith::{convergents, eval_cf, BigGaussian, DigitSeq, GaussianInt, RationalComplex};
use crate::dynamics::{digit_sequence_exact, refine_partition, verify_building, BuildParams};
use crate::error::{Error, Result};
use crate::natural_ext::{
    check_system, declared_l, perturbed_nearest_even_l, printed_l, simulate_attractor,
    BijectivityParams, PointCloud, SimParams, SphereRegion,
};
use crate::real_ab::{check_ab_system, example_l, example_pieces, simulate_ab, ABParams};
use crate::regions::Region;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Exit status for a failed verification.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad arguments, unreadable input and other errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ccf", version, about = "Complex continued fractions over the Gaussian integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digits of a point and its convergents, in exact arithmetic.
    Digits(DigitsArgs),
    /// Convergents of a digit string.
    Convergents(ConvergentsArgs),
    /// Checks that every digit image is a union of partition pieces.
    VerifyBuilding(BuildingArgs),
    /// Checks the bijectivity system of the sets `L_i`.
    VerifyBijectivity(BijectivityArgs),
    /// Simulates the natural extension and writes the cloud as CSV.
    Simulate(SimulateArgs),
    /// Draws a cloud as SVG panels, one per piece.
    Render(RenderArgs),
    /// Simulates the real (a, b) extension and reports the hull per piece.
    RealAb(RealAbArgs),
    /// Refines the fundamental set until every image is buildable.
    RefinePartition(RefineArgs),
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    #[arg(long, value_parser = parse_alg)]
    pub alg: AlgorithmId,
    /// Real and imaginary part, as integers, decimals or fractions `p/q`.
    #[arg(long, num_args = 2, required = true, value_names = ["RE", "IM"], allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Maximum number of digits after `a_0`.
    #[arg(long, default_value_t = 20, value_parser = positive_usize)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ConvergentsArgs {
    /// Digits `a_0 a_1 …`, each as `3`, `-2i`, `1+i` or `re,im`.
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    pub digits: Vec<GaussianInt>,
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive_f64)]
    pub eps: f64,
    /// Digits up to this modulus are checked one by one.
    #[arg(long, default_value_t = 8.0, value_parser = positive_f64)]
    pub radius: f64,
    /// Samples per comparison.
    #[arg(long, default_value_t = 1_000_000, value_parser = positive_usize)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct BuildingArgs {
    #[arg(long, value_parser = parse_alg)]
    pub alg: AlgorithmId,
    #[command(flatten)]
    pub sampling: Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LSets {
    /// The sets with known misprints corrected.
    Declared,
    /// The sets as printed.
    Printed,
    /// Nearest even sets with a shrunken ball, which must fail.
    Perturbed,
}

#[derive(Debug, Args)]
pub struct BijectivityArgs {
    #[arg(long, value_parser = parse_alg)]
    pub alg: AlgorithmId,
    #[arg(long, value_enum, default_value_t = LSets::Declared)]
    pub sets: LSets,
    #[command(flatten)]
    pub sampling: Sampling,
}

#[derive(Debug, Args)]
pub struct Orbits {
    #[arg(long, default_value_t = 100_000, value_parser = positive_usize)]
    pub points: usize,
    #[arg(long, default_value_t = 200, value_parser = positive_usize)]
    pub iters: usize,
    #[arg(long = "burn-in", default_value_t = 50, value_parser = positive_usize)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Orbits {
    fn params(&self) -> std::result::Result<SimParams, String> {
        if self.burn_in >= self.iters {
            return Err(format!(
                "--burn-in ({}) must be below --iters ({})",
                self.burn_in, self.iters
            ));
        }
        Ok(SimParams {
            n_points: self.points,
            n_iters: self.iters,
            burn_in: self.burn_in,
            seed: self.seed,
        })
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_alg)]
    pub alg: AlgorithmId,
    #[command(flatten)]
    pub orbits: Orbits,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// CSV written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Draws the outlines of the declared `S(L_i)`.
    #[arg(long)]
    pub overlay: bool,
    /// Draws regions read from a file in region text format, one per panel,
    /// given in S-coordinates.
    #[arg(long)]
    pub regions: Option<PathBuf>,
    /// Side of one panel in pixels.
    #[arg(long, default_value_t = 240, value_parser = positive_usize)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct RealAbArgs {
    #[arg(long, default_value_t = -0.8, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.4)]
    pub b: f64,
    /// Interior cut points of `[a, b]`; the published pieces when the
    /// parameters are the default ones.
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    pub cuts: Option<Vec<f64>>,
    #[command(flatten)]
    pub orbits: Orbits,
    /// CSV destination for the hulls.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long, value_parser = parse_alg)]
    pub alg: AlgorithmId,
    #[arg(long, default_value_t = 20, value_parser = positive_usize)]
    pub stages: usize,
    #[arg(long, default_value_t = 8.0, value_parser = positive_f64)]
    pub radius: f64,
    /// Writes the pieces in region text format.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_alg(s: &str) -> std::result::Result<AlgorithmId, String> {
    s.parse()
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

/// Parses `7`, `-1.25` or `3/8` exactly.
pub fn parse_exact(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        return (q != BigInt::from(0)).then_some((p.trim().parse().ok()?, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut p: BigInt = digits.parse().ok()?;
    if neg {
        p = -p;
    }
    Some((p, BigInt::from(10).pow(frac.len() as u32)))
}

fn exact_point(re: &str, im: &str) -> Result<RationalComplex> {
    let bad = |s: &str| Error::InvalidParameters(format!("cannot read `{s}` as an exact number"));
    let (pr, qr) = parse_exact(re).ok_or_else(|| bad(re))?;
    let (pi, qi) = parse_exact(im).ok_or_else(|| bad(im))?;
    let num = BigGaussian::new(&pr * &qi, &pi * &qr);
    let den = BigGaussian::new(qr * qi, 0);
    Ok(RationalComplex::new(num, den).expect("nonzero denominator"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn sets_for(alg: AlgorithmId, which: LSets) -> Result<Vec<SphereRegion>> {
    let missing = || Error::NoDeclaredL(alg.to_string());
    match which {
        LSets::Declared => declared_l(alg).ok_or_else(missing),
        LSets::Printed => printed_l(alg).ok_or_else(missing),
        LSets::Perturbed if alg == AlgorithmId::NearestEven => Ok(perturbed_nearest_even_l()),
        LSets::Perturbed => Err(Error::InvalidParameters(
            "--sets perturbed is only defined for nearest-even".into(),
        )),
    }
}

/// Splits a file of concatenated regions at each `region` header.
fn read_regions(text: &str) -> Result<Vec<Region>> {
    let lines: Vec<&str> = text.lines().collect();
    let starts: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("region"))
        .map(|(k, _)| k)
        .collect();
    let mut out = Vec::with_capacity(starts.len());
    for (n, &s) in starts.iter().enumerate() {
        let e = starts.get(n + 1).copied().unwrap_or(lines.len());
        // Leading blank lines keep the line numbers of parse errors global.
        let chunk = "\n".repeat(s) + &lines[s..e].join("\n");
        out.push(Region::from_text(&chunk)?);
    }
    Ok(out)
}

fn pieces_from_cuts(p: &ABParams, cuts: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut ends = vec![p.a];
    ends.extend_from_slice(cuts);
    ends.push(p.b);
    if !ends.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameters(
            "--cuts must be increasing and inside (a, b)".into(),
        ));
    }
    Ok(ends.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Runs one command, writing reports to `out`; returns the exit status.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Digits(a) => {
            let z = exact_point(&a.z[0], &a.z[1])?;
            let digits = digit_sequence_exact(a.alg, &z, a.n)?;
            writeln!(out, "z={z}")?;
            writeln!(out, "digits={digits}")?;
            for c in convergents(&digits) {
                writeln!(out, "{c}")?;
            }
            Ok(0)
        }
        Command::Convergents(a) => {
            let digits = DigitSeq::from_slice(&a.digits).expect("at least one digit");
            for c in convergents(&digits) {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "value={}", eval_cf(&digits))?;
            Ok(0)
        }
        Command::VerifyBuilding(a) => {
            let s = &a.sampling;
            let params = BuildParams {
                n: s.samples,
                eps: s.eps,
                seed: s.seed,
                radius: s.radius,
            };
            let r = verify_building(a.alg, &params)?;
            writeln!(out, "{r}")?;
            Ok(if r.passed() { 0 } else { EXIT_FAILED })
        }
        Command::VerifyBijectivity(a) => {
            let s = &a.sampling;
            let params = BijectivityParams {
                n: s.samples,
                eps: s.eps,
                seed: s.seed,
                radius: s.radius,
            };
            let ls = sets_for(a.alg, a.sets)?;
            let r = check_system(a.alg, &ls, &params)?;
            writeln!(out, "{r}")?;
            Ok(if r.passed() { 0 } else { EXIT_FAILED })
        }
        Command::Simulate(a) => {
            let params = a.orbits.params().map_err(Error::InvalidParameters)?;
            let cloud = simulate_attractor(a.alg, &params);
            match &a.output {
                Some(path) => {
                    let mut w = create(path)?;
                    cloud.write_csv(&mut w)?;
                    w.flush()?;
                    writeln!(
                        out,
                        "algorithm={} points={} dropped={} output={}",
                        a.alg,
                        cloud.records.len(),
                        cloud.dropped,
                        path.display()
                    )?;
                }
                None => cloud.write_csv(&mut *out)?,
            }
            Ok(0)
        }
        Command::Render(a) => {
            let cloud = PointCloud::read_csv(BufReader::new(File::open(&a.input)?))?;
            let mut outlines = Vec::new();
            if a.overlay {
                outlines = sets_for(cloud.algorithm, LSets::Declared)?
                    .into_iter()
                    .map(|l| l.s_region)
                    .collect();
            }
            if let Some(path) = &a.regions {
                outlines = read_regions(&std::fs::read_to_string(path)?)?;
            }
            let opts = RenderOptions {
                panel: a.size,
                ..Default::default()
            };
            let svg = render_svg(&cloud, &outlines, &opts);
            let mut w = create(&a.output)?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
            writeln!(
                out,
                "algorithm={} points={} output={}",
                cloud.algorithm,
                cloud.records.len(),
                a.output.display()
            )?;
            Ok(0)
        }
        Command::RealAb(a) => {
            let p = ABParams::new(a.a, a.b)?;
            let sim = a.orbits.params().map_err(Error::InvalidParameters)?;
            let published = p == ABParams::example() && a.cuts.is_none();
            let pieces = match &a.cuts {
                Some(c) => pieces_from_cuts(&p, c)?,
                None if published => example_pieces(),
                None => vec![(p.a, p.b)],
            };
            let hulls = simulate_ab(&p, &pieces, &sim);
            write!(out, "{hulls}")?;
            if let Some(path) = &a.output {
                let mut w = create(path)?;
                hulls.write_csv(&mut w)?;
                w.flush()?;
            }
            if !published {
                return Ok(0);
            }
            let mut worst: f64 = 0.0;
            for (i, l) in example_l().iter().enumerate() {
                let target = l.s_image().bounded().expect("bounded image");
                let d = hulls.hulls[i].distance(target);
                worst = worst.max(d);
                writeln!(out, "piece={} published S(L)=[{:.6}, {:.6}] distance={d:.2e}", i + 1, target.0, target.1)?;
            }
            let system = check_ab_system(&p, &pieces, &example_l(), 60);
            let deviation = system.deviation.iter().copied().fold(0.0, f64::max);
            writeln!(out, "system_deviation={deviation:.2e} max_distance={worst:.2e}")?;
            Ok(0)
        }
        Command::RefinePartition(a) => {
            let r = refine_partition(a.alg, a.stages, a.radius)?;
            writeln!(out, "{r}")?;
            writeln!(out, "published_pieces={}", spec(a.alg).partition.len())?;
            if let Some(path) = &a.output {
                let mut w = create(path)?;
                for piece in &r.pieces {
                    write!(w, "{}", piece.to_text())?;
                }
                w.flush()?;
            }
            Ok(if r.complete { 0 } else { EXIT_FAILED })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if code == 0 { 0 } else { EXIT_USAGE };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ccf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exact_numbers() {
        let n = |p: i64, q: i64| Some((BigInt::from(p), BigInt::from(q)));
        assert_eq!(parse_exact("1.5"), n(15, 10));
        assert_eq!(parse_exact("-0.25"), n(-25, 100));
        assert_eq!(parse_exact("3/8"), n(3, 8));
        assert_eq!(parse_exact("7"), n(7, 1));
        assert_eq!(parse_exact(".5"), n(5, 10));
        assert_eq!(parse_exact("1/0"), None);
        assert_eq!(parse_exact("1e3"), None);
        assert_eq!(parse_exact("-"), None);
    }

    #[test]
    fn digits_of_three_halves() {
        let (code, out, _) = run_str(&["digits", "--alg", "nearest-integer", "--z", "1.5", "0", "--n", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("digits=[2, 2]"), "{out}");
        assert!(out.contains("p1/q1 = (3)/(2)"), "{out}");
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run_str(&["digits", "--alg", "nearest", "--z", "1", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["simulate", "--alg", "disk", "--points", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["digits", "--alg", "disk", "--z", "x", "0"]).0, EXIT_USAGE);
        let (code, _, err) = run_str(&["verify-bijectivity", "--alg", "nearest-odd", "--samples", "10"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("error:"), "{err}");
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn regions_split_at_headers() {
        let a = Region::disk(num_complex::Complex64::new(0.0, 0.0), 0.5);
        let b = Region::unit_disk();
        let text = format!("{}{}", a.to_text(), b.to_text());
        let rs = read_regions(&text).unwrap();
        assert_eq!(rs.len(), 2);
        let bad = format!("{}region 1\ncell 1\n1 2 3\n", a.to_text());
        match read_regions(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, a.to_text().lines().count() + 3),
            other => panic!("{other:?}"),
        }
    }
}

//! Command-line front end: samplers, limit curves, character tables and
//! shifted RSK, with plot-ready CSV/JSON output.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numeric non-convergence,
//! 4 oracle bound exceeded. Diagnostics go to stderr, data to --out.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use shifted_shapes::characters::{
    dstar_check, plancherel_measure, schur_weyl_measure, CharacterRatioTable, LinearCharacters,
    SpinOracle, ORACLE_BOUND,
};
use shifted_shapes::free_cumulants::FreeCumulantSequence;
use shifted_shapes::limit_shapes::{
    insertion_level_curve, lsvk, lsvk_value, recording_level_curve, scaled_level_curves, sw_curve,
    LevelCurveFamily, ShapeError,
};
use shifted_shapes::partition::{OddPartition, StrictPartition};
use shifted_shapes::rsk::{rsk, CircledWord};
use shifted_shapes::samplers::{monte_carlo_profile, GridSpec, SamplerSpec};
use shifted_shapes::tableaux::ENUMERATION_BOUND;
use shifted_shapes::{rat_to_f64, Rat};

#[derive(Parser)]
#[command(
    name = "shifted-shapes",
    version,
    about = "Shifted Young diagrams, spin characters, limit shapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo samplers: mean scaled profiles and per-trial shapes.
    Sample {
        #[command(subcommand)]
        which: SampleCmd,
    },
    /// Limit curves of the analytic pipeline.
    Shape {
        #[command(subcommand)]
        which: ShapeCmd,
    },
    /// Exact character-oracle dumps and identity checks.
    Char {
        #[command(subcommand)]
        which: CharCmd,
    },
    /// Shifted RSK of explicit words.
    Rsk {
        #[command(subcommand)]
        which: RskCmd,
    },
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format for curve data.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; `-` means stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args, Clone)]
struct McOpts {
    /// Number of independent trials.
    #[arg(long, default_value_t = 20)]
    trials: u64,
    /// Master seed; all randomness flows from it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of grid points for the mean profile.
    #[arg(long, default_value_t = 201)]
    grid_points: usize,
    /// Half-width of the symmetric profile grid.
    #[arg(long, default_value_t = 3.0)]
    grid_half_width: f64,
    /// Worker cap (overrides SHIFTED_SHAPES_THREADS).
    #[arg(long)]
    parallel: Option<usize>,
    /// Stream per-trial shapes as JSON lines to this path.
    #[arg(long)]
    shapes_out: Option<String>,
    /// Report per-trial sup-deviations from a reference curve on stderr.
    #[arg(long, value_enum)]
    reference: Option<Reference>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reference {
    /// The Logan--Shepp / Vershik--Kerov curve.
    Lsvk,
    /// The Schur--Weyl curve at the run's own parameter c.
    Sw,
}

#[derive(Subcommand, Clone)]
enum SampleCmd {
    /// Shifted Plancherel measure, profiles scaled by 1/sqrt(2n).
    Plancherel {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        mc: McOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Shifted Schur--Weyl measure, profiles scaled by 1/sqrt(2n).
    SchurWeyl {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        mc: McOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Uniform tableaux of a prescribed shape: level-set shapes at alpha n.
    Syt {
        /// Shape as comma-separated strictly decreasing parts, e.g. 7,5,2.
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[command(flatten)]
        mc: McOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand, Clone)]
enum ShapeCmd {
    /// The Logan--Shepp / Vershik--Kerov curve in closed form.
    Lsvk {
        #[arg(long, default_value_t = 401)]
        grid_points: usize,
        #[arg(long, default_value_t = 2.5)]
        grid_half_width: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The Schur--Weyl limit curve for parameter c, by Stieltjes inversion.
    Sw {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 401)]
        grid_points: usize,
        #[arg(long, default_value_t = 0.0)]
        grid_half_width: f64,
        /// Largest regularization epsilon; the schedule is eps, eps/2, eps/4.
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Level-curve family with compressed cumulants R_k -> alpha^(k-1) R_k.
    Levels {
        /// Comma-separated levels in (0, 1].
        #[arg(long, default_value = "0.2,0.4,0.6,0.8,1.0")]
        alphas: String,
        /// Base curve: the Plancherel limit by default, or a Schur--Weyl
        /// curve when c is given.
        #[arg(long)]
        c: Option<f64>,
        /// Cumulant truncation order for the Schur--Weyl base.
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value_t = 201)]
        grid_points: usize,
        #[arg(long, default_value_t = 3.0)]
        grid_half_width: f64,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Insertion-tableau level curve at the given alpha.
    Insertion {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 401)]
        grid_points: usize,
        #[arg(long, default_value_t = 0.0)]
        grid_half_width: f64,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Recording-tableau level curve at the given alpha.
    Recording {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 401)]
        grid_points: usize,
        #[arg(long, default_value_t = 0.0)]
        grid_half_width: f64,
        #[arg(long, default_value_t = 1e-2)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand, Clone)]
enum CharCmd {
    /// Dump the full character-ratio table on SP_n as JSON.
    Table {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Cumulants of a measure's character ratio for given classes.
    Cumulants {
        #[arg(long)]
        n: u64,
        /// plancherel or schur-weyl
        #[arg(long, default_value = "plancherel")]
        measure: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Classes as semicolon-separated partitions, e.g. "3;3" or "5,1;3".
        #[arg(long)]
        classes: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the exact identity checks at size n, reporting PASS/FAIL.
    Verify {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Clone)]
enum RskCmd {
    /// Insert a word (tokens `3` / `c3`) and print the tableau pair as JSON.
    Encode {
        #[arg(long)]
        word: String,
        /// Alphabet size; defaults to the largest letter used.
        #[arg(long)]
        d: Option<u32>,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Numeric(String),
    Bound(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(s) | CliError::Numeric(s) | CliError::Bound(s) => write!(f, "{s}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Bound(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ShapeError> for CliError {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::BadInput(s) => CliError::Invalid(s),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sample { which } => run_sample(which),
        Command::Shape { which } => run_shape(which),
        Command::Char { which } => run_char(which),
        Command::Rsk { which } => run_rsk(which),
    }
}

fn write_out(path: &str, data: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout().write_all(data.as_bytes())?;
    } else {
        std::fs::write(path, data)?;
    }
    Ok(())
}

fn profile_payload(p: &shifted_shapes::profile::SampledProfile, format: Format) -> String {
    match format {
        Format::Csv => p.to_csv(),
        Format::Json => {
            let z: Vec<f64> = (0..p.len()).map(|i| p.z_at(i)).collect();
            serde_json::to_string_pretty(&json!({"z": z, "t": p.values})).unwrap() + "\n"
        }
    }
}

fn family_payload(fam: &LevelCurveFamily, format: Format) -> String {
    match format {
        Format::Csv => fam.to_csv(),
        Format::Json => {
            let curves: Vec<_> = fam
                .alphas
                .iter()
                .zip(&fam.curves)
                .map(|(a, c)| {
                    let z: Vec<f64> = (0..c.len()).map(|i| c.z_at(i)).collect();
                    json!({"alpha": a, "z": z, "t": c.values})
                })
                .collect();
            serde_json::to_string_pretty(&json!({"curves": curves})).unwrap() + "\n"
        }
    }
}

fn parse_shape(s: &str) -> Result<StrictPartition, CliError> {
    let parts: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let parts = parts.map_err(|_| CliError::Invalid(format!("bad shape {s:?}")))?;
    StrictPartition::new(parts).map_err(|e| CliError::Invalid(e.to_string()))
}

fn parse_alphas(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Invalid(format!("bad level {t:?}")))
        })
        .collect()
}

fn eps_schedule(epsilon: f64) -> Result<Vec<f64>, CliError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(CliError::Invalid(format!(
            "epsilon {epsilon} outside (0, 1)"
        )));
    }
    Ok(vec![epsilon, epsilon / 2.0, epsilon / 4.0])
}

fn apply_parallel(mc: &McOpts) {
    if let Some(k) = mc.parallel {
        std::env::set_var("SHIFTED_SHAPES_THREADS", k.max(1).to_string());
    }
}

fn run_sample(cmd: SampleCmd) -> Result<(), CliError> {
    let (spec, scale, mc, output, c_for_ref) = match &cmd {
        SampleCmd::Plancherel { n, mc, output } => {
            let scale = 1.0 / (2.0 * (*n as f64).max(1.0)).sqrt();
            (
                SamplerSpec::Plancherel { n: *n },
                scale,
                mc.clone(),
                output.clone(),
                None,
            )
        }
        SampleCmd::SchurWeyl { n, d, mc, output } => {
            if *d == 0 {
                return Err(CliError::Invalid("d must be at least 1".into()));
            }
            let scale = 1.0 / (2.0 * (*n as f64).max(1.0)).sqrt();
            let c = (*n as f64).sqrt() / *d as f64;
            (
                SamplerSpec::SchurWeyl { n: *n, d: *d },
                scale,
                mc.clone(),
                output.clone(),
                Some(c),
            )
        }
        SampleCmd::Syt {
            shape,
            alpha,
            mc,
            output,
        } => {
            if !(0.0..=1.0).contains(alpha) {
                return Err(CliError::Invalid(format!("alpha {alpha} outside [0, 1]")));
            }
            let shape = parse_shape(shape)?;
            let n = shape.size() as f64;
            let scale = 1.0 / (2.0 * n.max(1.0)).sqrt();
            (
                SamplerSpec::SytLevel {
                    shape,
                    alpha: *alpha,
                },
                scale,
                mc.clone(),
                output.clone(),
                None,
            )
        }
    };
    if mc.trials == 0 {
        return Err(CliError::Invalid("need at least one trial".into()));
    }
    if mc.grid_points < 2 {
        return Err(CliError::Invalid("need at least two grid points".into()));
    }
    apply_parallel(&mc);
    let grid = GridSpec::symmetric(mc.grid_half_width, mc.grid_points);

    let reference: Option<Box<dyn Fn(f64) -> f64 + Sync>> = match mc.reference {
        None => None,
        Some(Reference::Lsvk) => Some(Box::new(lsvk_value)),
        Some(Reference::Sw) => {
            let c = c_for_ref.ok_or_else(|| {
                CliError::Invalid("--reference sw needs the schur-weyl sampler".into())
            })?;
            let curve = sw_curve(
                c,
                GridSpec::symmetric(mc.grid_half_width + 0.5, 601),
                &shifted_shapes::limit_shapes::DEFAULT_EPS_SCHEDULE,
            )?;
            Some(Box::new(move |z: f64| curve.eval(z)))
        }
    };

    let out = monte_carlo_profile(
        &spec,
        mc.trials,
        scale,
        mc.seed,
        grid,
        reference
            .as_ref()
            .map(|f| f.as_ref() as &(dyn Fn(f64) -> f64 + Sync)),
    );

    if let Some(path) = &mc.shapes_out {
        let mut lines = String::new();
        for shape in &out.shapes {
            lines.push_str(&serde_json::to_string(shape.parts()).unwrap());
            lines.push('\n');
        }
        write_out(path, &lines)?;
    }
    if !out.deviations.is_empty() {
        let mean_dev = out.deviations.iter().sum::<f64>() / out.deviations.len() as f64;
        eprintln!("mean sup-deviation from reference: {mean_dev:.6}");
    }
    write_out(&output.out, &profile_payload(&out.mean, output.format))
}

fn run_shape(cmd: ShapeCmd) -> Result<(), CliError> {
    match cmd {
        ShapeCmd::Lsvk {
            grid_points,
            grid_half_width,
            output,
        } => {
            let p = lsvk(GridSpec::symmetric(grid_half_width, grid_points));
            write_out(&output.out, &profile_payload(&p, output.format))
        }
        ShapeCmd::Sw {
            c,
            grid_points,
            grid_half_width,
            epsilon,
            output,
        } => {
            if c <= 0.0 {
                return Err(CliError::Invalid(format!("c must be positive, got {c}")));
            }
            let half = if grid_half_width > 0.0 {
                grid_half_width
            } else {
                // support grows roughly linearly in c
                2.2 + 0.8 * c
            };
            let p = sw_curve(
                c,
                GridSpec::symmetric(half, grid_points),
                &eps_schedule(epsilon)?,
            )?;
            write_out(&output.out, &profile_payload(&p, output.format))
        }
        ShapeCmd::Levels {
            alphas,
            c,
            order,
            grid_points,
            grid_half_width,
            epsilon,
            output,
        } => {
            let alphas = parse_alphas(&alphas)?;
            let r = match c {
                None => FreeCumulantSequence::from_vals(vec![1.0]),
                Some(c) => {
                    if c <= 0.0 {
                        return Err(CliError::Invalid("c must be positive".into()));
                    }
                    let mut vals = vec![0.0; order.saturating_sub(1)];
                    for (i, v) in vals.iter_mut().enumerate() {
                        let k = i + 2;
                        if k % 2 == 0 {
                            *v = (c / std::f64::consts::SQRT_2).powi(k as i32 - 2);
                        }
                    }
                    FreeCumulantSequence::from_vals(vals)
                }
            };
            let fam = scaled_level_curves(
                &r,
                &alphas,
                GridSpec::symmetric(grid_half_width, grid_points),
                &eps_schedule(epsilon)?,
            )?;
            write_out(&output.out, &family_payload(&fam, output.format))
        }
        ShapeCmd::Insertion {
            alpha,
            grid_points,
            grid_half_width,
            epsilon,
            output,
        } => {
            let half = if grid_half_width > 0.0 {
                grid_half_width
            } else {
                3.5
            };
            let p = insertion_level_curve(
                alpha,
                GridSpec::symmetric(half, grid_points),
                &eps_schedule(epsilon)?,
            )?;
            write_out(&output.out, &profile_payload(&p, output.format))
        }
        ShapeCmd::Recording {
            alpha,
            grid_points,
            grid_half_width,
            epsilon,
            output,
        } => {
            let half = if grid_half_width > 0.0 {
                grid_half_width
            } else {
                3.5
            };
            let p = recording_level_curve(
                alpha,
                GridSpec::symmetric(half, grid_points),
                &eps_schedule(epsilon)?,
            )?;
            write_out(&output.out, &profile_payload(&p, output.format))
        }
    }
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn run_char(cmd: CharCmd) -> Result<(), CliError> {
    match cmd {
        CharCmd::Table { n, output } => {
            if n > ORACLE_BOUND {
                return Err(CliError::Bound(format!(
                    "n = {n} exceeds the oracle bound {ORACLE_BOUND}"
                )));
            }
            let mut oracle = SpinOracle::new(ORACLE_BOUND);
            let mut table = serde_json::Map::new();
            for xi in StrictPartition::all(n) {
                let mut row = serde_json::Map::new();
                for pi in OddPartition::all(n) {
                    let v = oracle
                        .char_ratio(&xi, &pi)
                        .map_err(|e| CliError::Bound(e.to_string()))?;
                    row.insert(display_parts(pi.parts()), json!(rat_str(&v)));
                }
                table.insert(display_parts(xi.parts()), serde_json::Value::Object(row));
            }
            let payload = serde_json::to_string_pretty(&serde_json::Value::Object(table)).unwrap();
            write_out(&output.out, &(payload + "\n"))
        }
        CharCmd::Cumulants {
            n,
            measure,
            d,
            classes,
            output,
        } => {
            let table = measure_table(&measure, n, d)?;
            let mut results = Vec::new();
            for spec in classes.split(';') {
                let parts: Result<Vec<u32>, _> =
                    spec.split(',').map(|t| t.trim().parse::<u32>()).collect();
                let parts = parts.map_err(|_| CliError::Invalid(format!("bad class {spec:?}")))?;
                let pis: Vec<OddPartition> = parts
                    .into_iter()
                    .map(|p| OddPartition::single(p).map_err(|e| CliError::Invalid(e.to_string())))
                    .collect::<Result<_, _>>()?;
                let total: u64 = pis.iter().map(|p| p.size()).sum();
                if total > n {
                    return Err(CliError::Invalid(format!(
                        "classes {spec:?} exceed n = {n}"
                    )));
                }
                let kappa = shifted_shapes::characters::char_cumulant(&table, &pis);
                results.push(json!({
                    "classes": spec.trim(),
                    "kappa": rat_str(&kappa),
                    "kappa_f64": rat_to_f64(&kappa),
                }));
            }
            let payload = serde_json::to_string_pretty(&json!({
                "n": n, "measure": measure, "cumulants": results
            }))
            .unwrap();
            write_out(&output.out, &(payload + "\n"))
        }
        CharCmd::Verify { n } => run_verify(n),
    }
}

fn display_parts(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn measure_table(measure: &str, n: u64, d: u32) -> Result<CharacterRatioTable, CliError> {
    match measure {
        "plancherel" => Ok(CharacterRatioTable::left_regular(n)),
        "schur-weyl" => {
            if d == 0 {
                return Err(CliError::Invalid("d must be at least 1".into()));
            }
            Ok(CharacterRatioTable::schur_weyl(n, d))
        }
        other => Err(CliError::Invalid(format!("unknown measure {other:?}"))),
    }
}

fn run_verify(n: u64) -> Result<(), CliError> {
    if n > ORACLE_BOUND.min(ENUMERATION_BOUND) {
        return Err(CliError::Bound(format!(
            "n = {n} exceeds the verification bound {}",
            ORACLE_BOUND.min(ENUMERATION_BOUND)
        )));
    }
    let mut oracle = SpinOracle::new(ORACLE_BOUND);
    let mut linear = LinearCharacters::new();
    let mut all_ok = true;
    let mut report = |name: &str, ok: bool| {
        println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    // Schur--Weyl calibration identities at d = 1, 2, 3
    for d in 1..=3u32 {
        let ok = schur_weyl_measure(n, d, ENUMERATION_BOUND)
            .ok()
            .and_then(|sw| oracle.table_of_measure(&sw).ok())
            .map(|t| t == CharacterRatioTable::schur_weyl(n, d))
            .unwrap_or(false);
        report(&format!("schur-weyl identity (n={n}, d={d})"), ok);
    }

    // Plancherel identity
    let ok = oracle
        .table_of_measure(&plancherel_measure(n))
        .map(|t| t == CharacterRatioTable::left_regular(n))
        .unwrap_or(false);
    report(&format!("plancherel identity (n={n})"), ok);

    // D* identity for all odd rho with |rho| <= min(n, 5)
    let mut dstar_ok = true;
    for rsize in 1..=n.min(5) {
        for rho in OddPartition::all(rsize) {
            match dstar_check(&mut oracle, &mut linear, &rho, n) {
                Ok(fails) if fails.is_empty() => {}
                _ => dstar_ok = false,
            }
        }
    }
    report(&format!("spin-linear doubling identity (n={n})"), dstar_ok);

    if all_ok {
        Ok(())
    } else {
        Err(CliError::Numeric("verification failed".into()))
    }
}

fn run_rsk(cmd: RskCmd) -> Result<(), CliError> {
    match cmd {
        RskCmd::Encode { word, d, output } => {
            let w = CircledWord::parse(&word).map_err(|e| CliError::Invalid(e.to_string()))?;
            let dmax = w.0.iter().map(|l| l.value).max().unwrap_or(1);
            let d = d.unwrap_or(dmax);
            let pair = rsk(&w, d).map_err(|e| CliError::Invalid(e.to_string()))?;
            let payload = match output.format {
                Format::Json | Format::Csv => serde_json::to_string_pretty(&pair).unwrap() + "\n",
            };
            write_out(&output.out, &payload)
        }
    }
}

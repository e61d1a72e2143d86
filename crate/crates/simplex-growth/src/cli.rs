//! Command-line entry point: `grow`, `star`, `urn`, `closed-form`, `verify`.
//! Every run with file outputs also writes a manifest JSON sufficient to
//! reproduce the outputs byte for byte on the same build.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{pk_model_b_d2_unnormalized, pk_weighted_tree};
use crate::config::{load_config, Instance, ModelConfig, Variant};
use crate::growth::{grow, growth_rate, ComplexState, EmpiricalTypeSampler, TraceFlags};
use crate::io::{write_json, write_profile_csv, write_trace_csv, RunManifest, UrnOutput};
use crate::profile::{DegreeProfile, Provenance};
use crate::seed::replica_seed;
use crate::star::{estimate_pk, estimate_star_rate, TypeSampler};
use crate::urn::{mean_matrix, perron, UrnTypeSampler};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "simplex-growth", version, about = "Growth, star-process and urn analysis of fitness-driven random simplicial complexes")]
pub struct Cli {
    /// Base seed; overrides the config's seed field.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Path to the TOML config.
    #[arg(long)]
    pub config: PathBuf,

    /// Override config fields, e.g. --set d=3 --set fitness.f0=2.0.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow the complex and write the degree profile.
    Grow {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        replicas: u32,
        #[arg(long)]
        out: PathBuf,
        /// Record the partition total every step (replica 0) to `<out>.z.csv`.
        #[arg(long)]
        trace_z: bool,
        /// Record post-burn-in chosen face types (replica 0) to `<out>.y.csv`.
        #[arg(long)]
        trace_y: bool,
    },
    /// Star-chain Monte Carlo: degree law terms, or the star growth rate.
    Star {
        #[command(flatten)]
        config: ConfigArgs,
        /// Partition growth rate (from `urn` or a growth trace).
        #[arg(long, required_unless_present = "lambda_star")]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        #[arg(long, default_value_t = 100_000)]
        replicas: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Estimate the star fitness growth rate for a fixed centre weight.
        #[arg(long)]
        lambda_star: bool,
        /// Centre weight for --lambda-star.
        #[arg(long)]
        weight: Option<f64>,
        /// Steps per replica for --lambda-star.
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
    },
    /// Finite-support urn analysis: growth rate and limiting type laws.
    Urn {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Closed-form degree laws.
    ClosedForm {
        /// Model variant (A or B) for the constant-fitness law.
        #[arg(long, conflicts_with = "wrt")]
        model: Option<Variant>,
        #[arg(long, requires = "model")]
        d: Option<u64>,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
        #[arg(long)]
        out: PathBuf,
        /// Emit the unnormalized d = 2 variant B geometric (mass 3/2).
        #[arg(long, requires = "model")]
        d2_unnormalized: bool,
        /// One-dimensional weighted-tree law for the given config.
        #[arg(long)]
        wrt: bool,
        #[arg(long, required_if_eq("wrt", "true"))]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Run the acceptance scenarios end to end.
    Verify {
        #[arg(long, default_value = "fast")]
        suite: Suite,
        /// Wall-clock budget in seconds; exceeding it yields a partial report.
        #[arg(long)]
        budget: Option<f64>,
        /// Optional JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl clap::ValueEnum for Variant {
    fn value_variants<'a>() -> &'a [Self] {
        &[Variant::A, Variant::B]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            Variant::A => clap::builder::PossibleValue::new("A"),
            Variant::B => clap::builder::PossibleValue::new("B"),
        })
    }
}

impl clap::ValueEnum for Suite {
    fn value_variants<'a>() -> &'a [Self] {
        &[Suite::Fast, Suite::Full]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            Suite::Fast => clap::builder::PossibleValue::new("fast"),
            Suite::Full => clap::builder::PossibleValue::new("full"),
        })
    }
}

/// Exit codes: 0 ok, 2 validation failure, 3 acceptance-comparison failure.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Comparison(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Comparison(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Comparison(m) | CliError::Io(m) => m,
        }
    }
}

impl From<crate::io::IoError> for CliError {
    fn from(e: crate::io::IoError) -> Self {
        CliError::Io(e.to_string())
    }
}

fn load(args: &ConfigArgs) -> Result<ModelConfig, CliError> {
    load_config(&args.config, &args.overrides).map_err(|e| CliError::Validation(e.to_string()))
}

fn effective_seed(cli_seed: Option<u64>, cfg: Option<&ModelConfig>) -> u64 {
    cli_seed.unwrap_or_else(|| cfg.map(|c| c.seed).unwrap_or(0))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        // Ignore the error if a pool already exists (tests, repeat calls).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let argv: Vec<String> = std::env::args().collect();
    match cli.command {
        Command::Grow {
            config,
            steps,
            replicas,
            out,
            trace_z,
            trace_y,
        } => {
            let started = Instant::now();
            let cfg = load(&config)?;
            let seed = effective_seed(cli.seed, Some(&cfg));
            let inst = cfg.compile();
            let mut manifest = RunManifest::new("grow", Some(cfg.clone()), seed);
            manifest.args = argv;

            let flags = TraceFlags {
                partition_stride: if trace_z { Some(1) } else { None },
                type_burn_in: if trace_y { Some(0.5) } else { None },
            };
            let runs = run_growth_replicas(&inst, steps, replicas, seed, flags);
            let profile = aggregate_growth(&runs, steps);
            write_profile_csv(&out, &profile)?;
            manifest.outputs.push(out.display().to_string());

            if trace_z {
                let path = suffixed(&out, "z.csv");
                write_trace_csv(&path, &runs[0].partition_trace)?;
                manifest.outputs.push(path.display().to_string());
            }
            if trace_y {
                let path = suffixed(&out, "y.csv");
                write_type_samples(&path, inst.d(), &runs[0].type_samples)?;
                manifest.outputs.push(path.display().to_string());
            }
            if trace_z {
                let est = growth_rate(&runs[0].partition_trace)
                    .map(|e| e.rate)
                    .unwrap_or(f64::NAN);
                println!("partition rate estimate: {est:.6}");
            }
            finalize_manifest(&out, manifest, started)?;
            println!(
                "grew {replicas} replica(s) of {steps} steps -> {}",
                out.display()
            );
            Ok(())
        }
        Command::Star {
            config,
            lambda,
            kmax,
            replicas,
            out,
            lambda_star,
            weight,
            steps,
        } => {
            let started = Instant::now();
            let cfg = load(&config)?;
            let seed = effective_seed(cli.seed, Some(&cfg));
            let inst = cfg.compile();
            let types = build_type_sampler(&inst, seed)?;
            let report = crate::hypotheses::check_hypotheses(&inst);

            if lambda_star {
                let w = weight.ok_or_else(|| {
                    CliError::Validation("--lambda-star needs --weight".into())
                })?;
                if !report.any_star_regime() {
                    eprintln!(
                        "warning: neither starred hypothesis regime could be certified; \
                         the star growth rate may not converge"
                    );
                }
                let (rate, stderr) = dispatch_star_rate(&inst, &types, w, steps, replicas, seed)?;
                println!("lambda_star({w}) = {rate:.6} +- {stderr:.6}");
                if let Some(out) = out {
                    let mut manifest = RunManifest::new("star", Some(cfg), seed);
                    manifest.args = argv;
                    write_json(
                        &out,
                        &serde_json::json!({
                            "centre_weight": w,
                            "steps": steps,
                            "replicas": replicas,
                            "lambda_star": rate,
                            "stderr": stderr,
                        }),
                    )?;
                    manifest.outputs.push(out.display().to_string());
                    finalize_manifest(&out, manifest, started)?;
                }
                return Ok(());
            }

            let lambda = lambda.expect("required unless --lambda-star");
            if lambda <= 0.0 {
                return Err(CliError::Validation("--lambda must be positive".into()));
            }
            let profile = dispatch_pk(&inst, &types, lambda, kmax as usize, replicas as usize, seed)?;
            let out = out.ok_or_else(|| CliError::Validation("--out is required".into()))?;
            write_profile_csv(&out, &profile)?;
            let mut manifest = RunManifest::new("star", Some(cfg), seed);
            manifest.args = argv;
            manifest.outputs.push(out.display().to_string());
            finalize_manifest(&out, manifest, started)?;
            println!(
                "star Monte Carlo over {replicas} replicas, k <= {kmax} -> {}",
                out.display()
            );
            Ok(())
        }
        Command::Urn { config, out } => {
            let started = Instant::now();
            let cfg = load(&config)?;
            let seed = effective_seed(cli.seed, Some(&cfg));
            let inst = cfg.compile();
            let mut urn = mean_matrix(&inst).map_err(|e| CliError::Validation(e.to_string()))?;
            perron(&mut urn, 1e-12).map_err(|e| CliError::Validation(e.to_string()))?;
            let output = UrnOutput::from_model(&urn).expect("perron ran");
            write_json(&out, &output)?;
            let mut manifest = RunManifest::new("urn", Some(cfg), seed);
            manifest.args = argv;
            manifest.outputs.push(out.display().to_string());
            finalize_manifest(&out, manifest, started)?;
            println!(
                "urn: {} types, lambda = {:.9}, residual = {:.3e} -> {}",
                output.types.len(),
                output.lambda,
                output.residual,
                out.display()
            );
            Ok(())
        }
        Command::ClosedForm {
            model,
            d,
            kmax,
            out,
            d2_unnormalized,
            wrt,
            config,
            overrides,
        } => {
            let started = Instant::now();
            let profile = if wrt {
                let path = config.ok_or_else(|| {
                    CliError::Validation("--wrt needs --config".into())
                })?;
                let cfg = load_config(&path, &overrides)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                if cfg.d != 1 {
                    return Err(CliError::Validation(format!(
                        "the weighted-tree law is one-dimensional; config has d = {}",
                        cfg.d
                    )));
                }
                let inst = cfg.compile();
                let fractions: Result<Vec<(u32, f64)>, _> = (0..=kmax)
                    .map(|k| {
                        pk_weighted_tree(&inst.weights, |w| inst.fitness.eval(&[w]), k)
                            .map(|p| (k as u32, p))
                    })
                    .collect();
                let fractions = fractions.map_err(|e| CliError::Validation(e.to_string()))?;
                DegreeProfile::from_fractions(Provenance::ClosedForm, &fractions)
            } else {
                let model = model.ok_or_else(|| {
                    CliError::Validation("closed-form needs --model or --wrt".into())
                })?;
                let d = d.ok_or_else(|| CliError::Validation("--model needs --d".into()))?;
                if d2_unnormalized {
                    if model != Variant::B || d != 2 {
                        return Err(CliError::Validation(
                            "--d2-unnormalized applies to --model B --d 2 only".into(),
                        ));
                    }
                    let fractions: Vec<(u32, f64)> = (0..=kmax)
                        .map(|k| (k as u32, pk_model_b_d2_unnormalized(k)))
                        .collect();
                    DegreeProfile::from_fractions(Provenance::ClosedForm, &fractions)
                } else {
                    crate::closed_form::const_profile(model, d, kmax)
                        .map_err(|e| CliError::Validation(e.to_string()))?
                }
            };
            write_profile_csv(&out, &profile)?;
            let mut manifest = RunManifest::new("closed-form", None, 0);
            manifest.args = argv;
            manifest.outputs.push(out.display().to_string());
            finalize_manifest(&out, manifest, started)?;
            println!("closed form with {} rows -> {}", profile.entries.len(), out.display());
            Ok(())
        }
        Command::Verify { suite, budget, out } => {
            let seed = cli.seed.unwrap_or(0);
            let report = run_suite(suite, seed, budget);
            for o in &report.outcomes {
                println!(
                    "criterion {}: {} [{}] {} ({:.2} s)",
                    o.id,
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.details,
                    o.seconds
                );
            }
            for id in &report.skipped {
                println!("criterion {id}: SKIPPED (budget exceeded)");
            }
            if let Some(out) = out {
                write_json(&out, &report)?;
            }
            if report.budget_exceeded {
                return Err(CliError::Comparison("budget exceeded; partial report".into()));
            }
            if !report.all_passed() {
                let failed: Vec<String> = report
                    .outcomes
                    .iter()
                    .filter(|o| !o.passed)
                    .map(|o| o.id.to_string())
                    .collect();
                return Err(CliError::Comparison(format!(
                    "criteria failed: {}",
                    failed.join(", ")
                )));
            }
            println!("all {} criteria passed", report.outcomes.len());
            Ok(())
        }
    }
}

/// Independent growth replicas with derived seeds; parallel via rayon.
fn run_growth_replicas(
    inst: &Instance,
    steps: u64,
    replicas: u32,
    seed: u64,
    flags: TraceFlags,
) -> Vec<crate::growth::GrowthSummary> {
    use rayon::prelude::*;
    (0..replicas)
        .into_par_iter()
        .map(|r| {
            // Only replica 0 carries traces; the rest just count degrees.
            let f = if r == 0 { flags } else { TraceFlags::default() };
            let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, r as u64));
            let mut state = ComplexState::init(inst, &mut rng);
            grow(&mut state, steps, f, &mut rng).expect("growth cannot stall")
        })
        .collect()
}

fn aggregate_growth(runs: &[crate::growth::GrowthSummary], steps: u64) -> DegreeProfile {
    if runs.len() == 1 {
        return runs[0].profile.clone();
    }
    let maps: Vec<(u64, std::collections::HashMap<u32, u64>)> = runs
        .iter()
        .map(|r| {
            let total: f64 = r.profile.entries.iter().map(|e| e.count).sum();
            let m = r
                .profile
                .entries
                .iter()
                .map(|e| (e.k, e.count as u64))
                .collect();
            (total as u64, m)
        })
        .collect();
    DegreeProfile::from_replicas(Provenance::Growth, steps, &maps)
}

/// Initial-type source for the star chain: the urn law under a finite
/// support, otherwise an empirical resampler from a dedicated growth run.
enum AnyTypeSampler {
    Urn(UrnTypeSampler),
    Empirical(EmpiricalTypeSampler),
}

impl TypeSampler for AnyTypeSampler {
    fn sample_type(&self, rng: &mut dyn rand::RngCore) -> crate::face::FaceType {
        match self {
            AnyTypeSampler::Urn(s) => s.sample_type(rng),
            AnyTypeSampler::Empirical(s) => s.sample_type(rng),
        }
    }
}

fn build_type_sampler(inst: &Instance, seed: u64) -> Result<AnyTypeSampler, CliError> {
    if inst.weights.atoms().is_some() {
        let mut urn = mean_matrix(inst).map_err(|e| CliError::Validation(e.to_string()))?;
        perron(&mut urn, 1e-12).map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(AnyTypeSampler::Urn(
            UrnTypeSampler::new(&urn).expect("perron ran"),
        ))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, u64::MAX / 2));
        let mut state = ComplexState::init(inst, &mut rng);
        let summary = grow(
            &mut state,
            100_000,
            TraceFlags {
                partition_stride: None,
                type_burn_in: Some(0.5),
            },
            &mut rng,
        )
        .expect("growth cannot stall");
        let sampler = EmpiricalTypeSampler::from_samples(&summary.type_samples)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(AnyTypeSampler::Empirical(sampler))
    }
}

fn dispatch_pk(
    inst: &Instance,
    types: &AnyTypeSampler,
    lambda: f64,
    kmax: usize,
    replicas: usize,
    seed: u64,
) -> Result<DegreeProfile, CliError> {
    estimate_pk(inst, types, lambda, kmax, replicas, seed)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn dispatch_star_rate(
    inst: &Instance,
    types: &AnyTypeSampler,
    weight: f64,
    steps: u64,
    replicas: u32,
    seed: u64,
) -> Result<(f64, f64), CliError> {
    estimate_star_rate(inst, types, weight, steps, replicas as usize, seed)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn suffixed(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(suffix);
    out.with_file_name(name)
}

fn write_type_samples(
    path: &Path,
    d: usize,
    samples: &[crate::face::FaceType],
) -> Result<(), CliError> {
    use std::fmt::Write as _;
    let mut text = String::new();
    let header: Vec<String> = (0..d).map(|i| format!("w{i}")).collect();
    let _ = writeln!(text, "{}", header.join(","));
    for t in samples {
        let row: Vec<String> = t.weights().iter().map(|w| format!("{w:.16e}")).collect();
        let _ = writeln!(text, "{}", row.join(","));
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn finalize_manifest(
    out: &Path,
    mut manifest: RunManifest,
    started: Instant,
) -> Result<(), CliError> {
    manifest.wall_clock_secs = started.elapsed().as_secs_f64();
    let path = suffixed(out, "manifest.json");
    write_json(&path, &manifest)?;
    Ok(())
}

//! `timepref`: experiments on the learnability of discounted-utility models.

mod config;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use config::ExperimentConfig;
use timepref_core::active::{
    cal_bound, cal_run, estimate_parity_mc, estimate_theta, parity_prob, write_cal_csv, write_theta_csv, CalConfig,
};
use timepref_core::datagen::{
    read_dataset, sample_dataset, write_dataset, DatasetHeader, DistributionSpec, PairSource, RngSeed,
};
use timepref_core::exact::{rat, Rational};
use timepref_core::mq::{mq_learn, write_mq_csv, MqAdapter, MqRecord, Oracle};
use timepref_core::pac::{blumer_bound, fit, hanneke_bound, learning_curve, write_curve_csv, CurveConfig, Family};
use timepref_core::vcdim::{
    is_shattered, is_shattered_exact, prop1_points, theorem3_points, theorem3_points_exact, write_shatter_csv,
    ExactBasis, ShatterRow,
};
use timepref_core::DiscountModel;

#[derive(Parser)]
#[command(name = "timepref", version, about = "Learnability experiments for discounted-utility models")]
struct Cli {
    /// Worker threads for independent trials and samples.
    #[arg(long, global = true, env = "TIMEPREF_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FamilyArg {
    Ed,
    Hd,
    Qhd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum MqFamilyArg {
    Ed,
    Hd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum DistArg {
    Mu,
    Gaussian,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Construct {
    Prop1,
    Thm3,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum BasisArg {
    Monomial,
    Hd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Arith {
    Exact,
    F64,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "ed")]
    family: FamilyArg,
    /// Exponential / quasi-hyperbolic discount factor.
    #[arg(long)]
    delta: Option<f64>,
    /// Hyperbolic discount rate.
    #[arg(long)]
    alpha: Option<f64>,
    /// Present-bias factor.
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args, Clone)]
struct DistArgs {
    #[arg(long, value_enum, default_value = "mu")]
    dist: DistArg,
    /// Payoff standard deviation for Gaussian pairs.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a labeled dataset (JSON lines).
    GenData {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long = "T")]
        t: usize,
        #[arg(long, value_parser = parse_count)]
        n: usize,
    },
    /// Fit a consistent hypothesis to a dataset file.
    PacFit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "ed")]
        family: FamilyArg,
        /// Upper end of the hyperbolic parameter domain.
        #[arg(long, default_value_t = timepref_core::pac::DEFAULT_ALPHA_MAX)]
        alpha_max: f64,
    },
    /// Held-out error of the consistent learner against training-set size.
    LearningCurve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long = "T")]
        t: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,10,100,1000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps_test: f64,
    },
    /// Sample-complexity reference curves (constant 1, base-2 logs).
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.01,0.005,0.001")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        conf: f64,
        #[arg(long, default_value_t = 3.0)]
        vc_d: f64,
    },
    /// Explicit shattered sets, optionally checked by enumeration.
    Shatter {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        construct: Construct,
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<usize>,
        /// Enumerate all labelings.
        #[arg(long)]
        check: bool,
        /// Weight bases for the polynomial-weight construction.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "monomial,hd")]
        basis: Vec<BasisArg>,
        /// Arithmetic for the polynomial-weight construction.
        #[arg(long, value_enum, default_value = "exact")]
        arith: Arith,
        /// Gap in the discount-table construction.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Monte Carlo check of the root-parity formula on random triples.
    ParityCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, value_parser = parse_count, default_value = "100000")]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_t: usize,
    },
    /// Monte Carlo disagreement coefficient.
    Theta {
        #[command(flatten)]
        common: Common,
        #[arg(long = "T")]
        t: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, value_parser = parse_count, default_value = "1000000")]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5")]
        grid: Vec<f64>,
    },
    /// CAL on a root-uniform stream labeled by exponential discounting.
    Cal {
        #[command(flatten)]
        common: Common,
        #[arg(long = "T", default_value_t = 5)]
        t: usize,
        #[arg(long, default_value_t = 0.3)]
        delta: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001,0.0001")]
        eps: Vec<f64>,
        #[arg(long, value_parser = parse_count, default_value = "1000000")]
        max_points: usize,
        /// Runs per eps; run k uses seed + k.
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// CAL label-complexity reference value (constant 1, base-2 logs).
    CalBound {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001,0.0001")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        conf: f64,
        #[arg(long, default_value_t = 3.0)]
        vc_d: f64,
        #[arg(long, default_value_t = 2.0)]
        theta: f64,
    },
    /// Membership-query learning by indifference-point search.
    Mq {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "ed")]
        family: MqFamilyArg,
        /// Hidden parameter; drawn uniformly per trial when omitted.
        #[arg(long)]
        truth: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.001")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Upper end of the hyperbolic parameter domain.
        #[arg(long, default_value_t = 4.0)]
        a_max: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
}

/// Counts given as integers or in float notation such as `1e6`.
fn parse_count(s: &str) -> std::result::Result<usize, String> {
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= usize::MAX as f64 => Ok(v as usize),
        _ => Err(format!("expected a non-negative integer, got {s:?}")),
    }
}

fn emit(common: &Common, cfg: &mut ExperimentConfig, body: &[u8]) -> Result<()> {
    cfg.out = common.out.as_ref().map(|p| p.display().to_string());
    let mut buf = cfg.header_line().into_bytes();
    buf.push(b'\n');
    buf.extend_from_slice(body);
    write_out(common, &buf)
}

fn write_out(common: &Common, buf: &[u8]) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, buf).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(buf)?;
            so.flush()?;
            Ok(())
        }
    }
}

fn truth_model(m: &ModelArgs) -> Result<DiscountModel> {
    let need = |v: Option<f64>, name: &str| v.with_context(|| format!("--{name} is required for this family"));
    let model = match m.family {
        FamilyArg::Ed => DiscountModel::Exponential { delta: need(m.delta, "delta")? },
        FamilyArg::Hd => DiscountModel::Hyperbolic { alpha: need(m.alpha, "alpha")? },
        FamilyArg::Qhd => DiscountModel::QuasiHyperbolic { beta: need(m.beta, "beta")?, delta: need(m.delta, "delta")? },
    };
    model.validate()?;
    Ok(model)
}

fn family_of(f: FamilyArg, alpha_max: f64) -> Family {
    match f {
        FamilyArg::Ed => Family::Exponential,
        FamilyArg::Hd => Family::Hyperbolic { alpha_max },
        FamilyArg::Qhd => Family::QuasiHyperbolic,
    }
}

fn dist_of(d: &DistArgs, t: usize) -> Result<DistributionSpec> {
    let spec = match d.dist {
        DistArg::Mu => DistributionSpec::MuRootUniform { t },
        DistArg::Gaussian => DistributionSpec::GaussianPairs { t, sigma: d.sigma },
    };
    spec.validate()?;
    Ok(spec)
}

fn model_config(cfg: &mut ExperimentConfig, m: &ModelArgs) {
    cfg.family = Some(family_name(m.family).into());
    cfg.delta = m.delta;
    cfg.alpha = m.alpha;
    cfg.beta = m.beta;
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Ed => "ed",
        FamilyArg::Hd => "hd",
        FamilyArg::Qhd => "qhd",
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::GenData { common, model, dist, t, n } => {
            let truth = truth_model(&model)?;
            let spec = dist_of(&dist, t)?;
            let mut cfg = ExperimentConfig::new("gen-data", common.seed);
            model_config(&mut cfg, &model);
            cfg.t = Some(vec![t]);
            cfg.n = Some(n);
            cfg.dist = Some(spec.name());
            cfg.out = common.out.as_ref().map(|p| p.display().to_string());
            let ds = sample_dataset(&spec, &truth, n, &mut RngSeed::new(common.seed).rng())?;
            let header = DatasetHeader { t, seed: common.seed, dist: spec.name(), config: Some(serde_json::to_value(&cfg)?) };
            let mut buf = Vec::new();
            write_dataset(&ds, &header, &mut buf)?;
            write_out(&common, &buf)
        }
        Command::PacFit { common, data, family, alpha_max } => {
            let file = File::open(&data).with_context(|| format!("opening {}", data.display()))?;
            let (header, ds) = read_dataset(BufReader::new(file))?;
            let fam = family_of(family, alpha_max);
            let rep = fit(&fam, &ds)?;
            let mut cfg = ExperimentConfig::new("pac-fit", common.seed);
            cfg.family = Some(family_name(family).into());
            cfg.t = Some(vec![header.t]);
            cfg.n = Some(ds.len());
            cfg.data = Some(data.display().to_string());
            if family == FamilyArg::Hd {
                cfg.alpha_max = Some(alpha_max);
            }
            let (param, beta) = match &rep.hypothesis {
                DiscountModel::Exponential { delta } => (*delta, None),
                DiscountModel::Hyperbolic { alpha } => (*alpha, None),
                DiscountModel::QuasiHyperbolic { beta, delta } => (*delta, Some(*beta)),
                other => bail!("unexpected hypothesis {other:?}"),
            };
            let body = format!(
                "family,T,n,param,beta,training_error,cells_examined,region_length,region\n{},{},{},{},{},{},{},{},\"{}\"\n",
                family_name(family),
                header.t,
                ds.len(),
                param,
                beta.map(|b| b.to_string()).unwrap_or_default(),
                rep.training_error,
                rep.cells_examined,
                rep.consistent_region.total_length(),
                rep.consistent_region,
            );
            emit(&common, &mut cfg, body.as_bytes())
        }
        Command::LearningCurve { common, model, dist, t, sizes, trials, eps_test } => {
            let truth = truth_model(&model)?;
            let spec = dist_of(&dist, t)?;
            let fam = family_of(model.family, timepref_core::pac::DEFAULT_ALPHA_MAX);
            let mut cfg = ExperimentConfig::new("learning-curve", common.seed);
            model_config(&mut cfg, &model);
            cfg.t = Some(vec![t]);
            cfg.dist = Some(spec.name());
            cfg.sizes = Some(sizes.clone());
            cfg.trials = Some(trials);
            cfg.eps_test = Some(eps_test);
            let cc = CurveConfig { family: fam, truth, sizes, trials, eps_test, seed: common.seed };
            let recs = learning_curve(&cc, &spec)?;
            let mut body = Vec::new();
            write_curve_csv(&recs, &mut body)?;
            emit(&common, &mut cfg, &body)
        }
        Command::Bounds { common, eps, conf, vc_d } => {
            let mut cfg = ExperimentConfig::new("bounds", common.seed);
            cfg.eps = Some(eps.clone());
            cfg.conf = Some(conf);
            cfg.vc_d = Some(vc_d);
            let mut body = String::from("# reference curves: O-constant 1, base-2 logs\neps,conf,vc_d,blumer,hanneke\n");
            for e in eps {
                body += &format!("{e},{conf},{vc_d},{},{}\n", blumer_bound(e, conf, vc_d)?, hanneke_bound(e, conf, vc_d)?);
            }
            emit(&common, &mut cfg, body.as_bytes())
        }
        Command::Shatter { common, construct, t, check, basis, arith, eps } => {
            shatter(common, construct, t, check, basis, arith, eps)
        }
        Command::ParityCheck { common, trials, samples, max_t } => {
            if max_t < 2 {
                bail!("--max-t must be at least 2");
            }
            let mut cfg = ExperimentConfig::new("parity-check", common.seed);
            cfg.trials = Some(trials);
            cfg.samples = Some(samples);
            cfg.max_t = Some(max_t);
            let root = RngSeed::new(common.seed);
            let mut pick = root.rng();
            let mut body = String::from("delta,gamma,T,mc,stderr,formula,z\n");
            for k in 0..trials {
                let delta = timepref_core::datagen::open_unit(&mut pick);
                let gamma = timepref_core::datagen::open_unit(&mut pick);
                let t = pick.random_range(2..=max_t);
                let mc = estimate_parity_mc(delta, gamma, t, samples, root.substream(k as u64 + 1))?;
                let formula = parity_prob((delta - gamma).abs(), t)?;
                let z = if mc.stderr > 0.0 { (mc.estimate - formula) / mc.stderr } else { 0.0 };
                body += &format!("{delta},{gamma},{t},{},{},{formula},{z}\n", mc.estimate, mc.stderr);
            }
            emit(&common, &mut cfg, body.as_bytes())
        }
        Command::Theta { common, t, delta, samples, grid } => {
            let mut cfg = ExperimentConfig::new("theta", common.seed);
            cfg.t = Some(vec![t]);
            cfg.delta = Some(delta);
            cfg.samples = Some(samples);
            cfg.grid = Some(grid.clone());
            let rep = estimate_theta(delta, t, &grid, samples, RngSeed::new(common.seed))?;
            let mut body = Vec::new();
            write_theta_csv(&rep, &mut body)?;
            writeln!(
                body,
                "# ratio_sup={} argmax_R={} tail_sup={} theta={}",
                rep.ratio_sup, rep.argmax_r, rep.tail_sup, rep.theta
            )?;
            emit(&common, &mut cfg, &body)
        }
        Command::Cal { common, t, delta, eps, max_points, trials } => {
            let mut cfg = ExperimentConfig::new("cal", common.seed);
            cfg.t = Some(vec![t]);
            cfg.delta = Some(delta);
            cfg.eps = Some(eps.clone());
            cfg.max_points = Some(max_points);
            cfg.trials = Some(trials);
            let runs: Vec<CalConfig> = eps
                .iter()
                .flat_map(|&e| {
                    (0..trials as u64).map(move |k| CalConfig {
                        true_delta: delta,
                        t,
                        eps: e,
                        max_points,
                        seed: common.seed.wrapping_add(k),
                    })
                })
                .collect();
            use rayon::prelude::*;
            let rows = runs
                .into_par_iter()
                .map(|c| cal_run(&c).map(|o| (c, o)))
                .collect::<timepref_core::Result<Vec<_>>>()?;
            let mut body = Vec::new();
            write_cal_csv(&rows, &mut body)?;
            emit(&common, &mut cfg, &body)
        }
        Command::CalBound { common, eps, conf, vc_d, theta } => {
            let mut cfg = ExperimentConfig::new("cal-bound", common.seed);
            cfg.eps = Some(eps.clone());
            cfg.conf = Some(conf);
            cfg.vc_d = Some(vc_d);
            cfg.theta = Some(theta);
            let mut body = String::from("# reference values: O-constant 1, base-2 logs, log theta floored at 1\neps,conf,vc_d,theta,bound\n");
            for e in eps {
                body += &format!("{e},{conf},{vc_d},{theta},{}\n", cal_bound(e, conf, vc_d, theta)?);
            }
            emit(&common, &mut cfg, body.as_bytes())
        }
        Command::Mq { common, family, truth, eps, rho, a_max, trials } => {
            let adapter = match family {
                MqFamilyArg::Ed => MqAdapter::exponential(2)?,
                MqFamilyArg::Hd => MqAdapter::hyperbolic(2, a_max)?,
            };
            let name = match family {
                MqFamilyArg::Ed => "ed",
                MqFamilyArg::Hd => "hd",
            };
            let mut cfg = ExperimentConfig::new("mq", common.seed);
            cfg.family = Some(name.into());
            cfg.truth = truth;
            cfg.eps = Some(eps.clone());
            cfg.rho = Some(rho);
            cfg.trials = Some(trials);
            if family == MqFamilyArg::Hd {
                cfg.a_max = Some(a_max);
            }
            let mut rng = RngSeed::new(common.seed).rng();
            let mut rows = Vec::new();
            for _ in 0..trials {
                let p = match truth {
                    Some(v) => v,
                    None => adapter.domain.hi * timepref_core::datagen::open_unit(&mut rng),
                };
                for &e in &eps {
                    let mut oracle = Oracle::new(adapter.model(p))?;
                    let h = mq_learn(&mut oracle, &adapter, e, rho)?;
                    rows.push(MqRecord {
                        family: name.into(),
                        truth: p,
                        eps: e,
                        param_h: h,
                        abs_err: (h - p).abs(),
                        queries: oracle.query_count(),
                        seed: common.seed,
                    });
                    eprintln!("queries={} (budget {}), abs_err={}", oracle.query_count(), adapter.query_budget(e), (h - p).abs());
                }
            }
            let mut body = Vec::new();
            write_mq_csv(&rows, &mut body)?;
            emit(&common, &mut cfg, &body)
        }
    }
}

fn shatter(
    common: Common,
    construct: Construct,
    ts: Vec<usize>,
    check: bool,
    bases: Vec<BasisArg>,
    arith: Arith,
    eps: f64,
) -> Result<()> {
    let mut cfg = ExperimentConfig::new("shatter", common.seed);
    cfg.t = Some(ts.clone());
    cfg.check = Some(check);
    cfg.construct = Some(match construct {
        Construct::Prop1 => "prop1".into(),
        Construct::Thm3 => "thm3".into(),
    });
    let exact_basis = |b: BasisArg| match b {
        BasisArg::Monomial => ExactBasis::Monomial,
        BasisArg::Hd => ExactBasis::HdCleared,
    };
    match construct {
        Construct::Prop1 => cfg.eps = Some(vec![eps]),
        Construct::Thm3 => {
            cfg.basis = Some(bases.iter().map(|&b| exact_basis(b).name().to_string()).collect());
            cfg.arith = Some(match arith {
                Arith::Exact => "exact".into(),
                Arith::F64 => "f64".into(),
            });
        }
    }

    if !check {
        let mut body = String::new();
        for &t in &ts {
            match construct {
                Construct::Prop1 => {
                    for (k, p) in prop1_points(t, eps)?.iter().enumerate() {
                        let rec = json!({"T": t, "family": "table", "k": k + 1, "x": p.x.payoffs(), "y": p.y.payoffs()});
                        body += &format!("{rec}\n");
                    }
                }
                Construct::Thm3 => {
                    for &b in &bases {
                        let eb = exact_basis(b);
                        match arith {
                            Arith::Exact => {
                                for (k, f) in theorem3_points_exact(t, eb, None)?.iter().enumerate() {
                                    let x: Vec<String> = f.iter().map(Rational::to_string).collect();
                                    let rec = json!({"T": t, "family": eb.name(), "k": k + 1, "x": x});
                                    body += &format!("{rec}\n");
                                }
                            }
                            Arith::F64 => {
                                for (k, p) in theorem3_points(t, &eb.f64_polys(t)?, None)?.iter().enumerate() {
                                    let rec = json!({"T": t, "family": eb.name(), "k": k + 1, "x": p.x.payoffs()});
                                    body += &format!("{rec}\n");
                                }
                            }
                        }
                    }
                }
            }
        }
        return emit(&common, &mut cfg, body.as_bytes());
    }

    let mut rows = Vec::new();
    for &t in &ts {
        match construct {
            Construct::Prop1 => {
                let start = Instant::now();
                let rep = is_shattered(&prop1_points(t, eps)?, &Family::TableDiscount)?;
                rows.push(ShatterRow { t, family: "table".into(), n: rep.n, shattered: rep.shattered, seconds: start.elapsed().as_secs_f64() });
            }
            Construct::Thm3 => {
                for &b in &bases {
                    let eb = exact_basis(b);
                    let start = Instant::now();
                    let (n, shattered) = match arith {
                        Arith::Exact => {
                            let plans = theorem3_points_exact(t, eb, None)?;
                            let rep = is_shattered_exact(&plans, eb, &rat(0, 1), &rat(1, 1))?;
                            (rep.n, rep.shattered)
                        }
                        Arith::F64 => {
                            let fam = match b {
                                BasisArg::Monomial => Family::Exponential,
                                BasisArg::Hd => Family::hyperbolic(),
                            };
                            let rep = is_shattered(&theorem3_points(t, &eb.f64_polys(t)?, None)?, &fam)?;
                            (rep.n, rep.shattered)
                        }
                    };
                    rows.push(ShatterRow { t, family: eb.name().into(), n, shattered, seconds: start.elapsed().as_secs_f64() });
                }
            }
        }
    }
    for r in &rows {
        eprintln!("T={} family={} shattered={}, n={}", r.t, r.family, r.shattered, r.n);
    }
    let mut body = Vec::new();
    write_shatter_csv(&rows, &mut body)?;
    emit(&common, &mut cfg, &body)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

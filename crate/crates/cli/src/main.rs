use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uniserial::alpha::{alpha, verify_alpha_lower_bound, standard_families};
use uniserial::checks::{check_ids, is_known_red, run_checks};
use uniserial::constructions::{
    affine_group, all_submodules, build_affine_equality_group, build_wreath_quasisimple, is_uniserial_module,
    permutation_module, wreath_product, CentralQuotient,
};
use uniserial::genprob::{p_conditional, p_exact_enum, p_exact_mobius, p_montecarlo, p_exact};
use uniserial::io::{group_to_json, parse_group_with};
use uniserial::linalg::FpMatrix;
use uniserial::maximal::{maximal_avoiding, maximal_subgroups, rational_string, zeta, SubgroupClass};
use uniserial::simple::SimpleGroup;
use uniserial::structure::{chief_series, frattini, is_uniserial, unique_minimal_normal, width_sequence};
use uniserial::{corpus, Group, Limits};

mod render;

/// Chief series, maximal subgroups and generation probabilities of permutation groups.
#[derive(Parser)]
#[command(name = "uniserial", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Largest group order for which the full subgroup lattice is computed.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_order: Option<u64>,
    /// Largest permutation degree accepted.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_degree: Option<u64>,
    /// Largest coset index for quotient actions.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_index: Option<u64>,
    /// Largest number of tuples enumerated directly.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_enumeration: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 4)]
    jobs: usize,
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Order, uniseriality, chief factors and Frattini flags.
    Analyze { file: String },
    /// Conjugacy classes of maximal subgroups, optionally only those avoiding N.
    Maxsub {
        file: String,
        #[arg(long = "N")]
        n: Option<String>,
    },
    /// The maximal subgroup zeta function at an integer point.
    Zeta {
        #[arg(long)]
        file: String,
        /// `self`, `minimal`, `derived` or a group file.
        #[arg(long = "N", default_value = "minimal")]
        n: String,
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
    /// Probability that d random elements generate the group.
    Genprob {
        #[arg(long)]
        file: String,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, value_enum, default_value_t = GenMethod::Exact)]
        method: GenMethod,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Report P_d(G)/P_d(G/N) for this normal subgroup.
        #[arg(long = "N")]
        n: Option<String>,
    },
    /// alpha and alpha* of a simple group such as `C:7`, `A:5`, `L:PSL2:49`, `Sp:M11`.
    Alpha {
        group: Option<String>,
        /// Minimum of alpha over the standard families instead.
        #[arg(long)]
        battery: bool,
    },
    #[command(subcommand)]
    Construct(Construct),
    /// Run the verification battery; exits 1 if any check fails.
    PaperChecks {
        checks: Vec<String>,
        #[arg(long)]
        list: bool,
        /// Include wall-clock times in JSON output.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMethod {
    Exact,
    Enum,
    Mobius,
    Mc,
}

#[derive(Subcommand)]
enum Construct {
    /// Wreath product of two permutation groups.
    Wreath {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Affine group from a matrix file `{"p", "n", "matrices"}`.
    Affine {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        matrices: PathBuf,
    },
    /// The permutation module F_p^n of S_n.
    Permmod {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    #[command(subcommand)]
    PaperExample(Example),
}

#[derive(Subcommand)]
enum Example {
    /// p^4 : 2.(A4^2 : C4) for p = ±1 mod 8.
    AffineEquality {
        #[arg(long, default_value_t = 7)]
        p: u64,
    },
    /// A quotient of SL(2,5) wr S_n by part of its central subgroup.
    WreathQuasisimple {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Quotient::Full)]
        quotient: Quotient,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quotient {
    Full,
    ModConstants,
    ModSumZero,
}

/// Outcome of a command: the report plus whether every verification passed.
struct Report {
    value: Value,
    verified: bool,
}

impl From<Value> for Report {
    fn from(value: Value) -> Report {
        Report { value, verified: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = render::render(&report.value, cli.global.format);
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn limits(g: &Global) -> Limits {
    let mut l = Limits::default();
    if let Some(x) = g.cap_order {
        l.max_lattice_order = x;
    }
    if let Some(x) = g.cap_degree {
        l.max_degree = x as usize;
    }
    if let Some(x) = g.cap_index {
        l.max_index = x;
    }
    if let Some(x) = g.cap_enumeration {
        l.max_enumeration = x;
    }
    l
}

/// Reads a group from a file, or from the bundled corpus as `corpus:KEY`.
fn load(spec: &str, limits: &Limits) -> Result<Group> {
    if let Some(key) = spec.strip_prefix("corpus:") {
        return Ok(corpus::entry(key)?.group_with(limits.clone())?);
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    parse_group_with(&text, limits.clone()).with_context(|| format!("parsing {spec}"))
}

fn normal_arg(g: &Group, spec: &str, limits: &Limits) -> Result<Group> {
    Ok(match spec {
        "self" => g.clone(),
        "minimal" | "socle" => unique_minimal_normal(g)?,
        "derived" => g.derived_subgroup(),
        path => {
            let n = load(path, limits)?;
            let n = g.subgroup(n.generators().to_vec()).context("N is not a subgroup")?;
            if !g.is_normal_subgroup(&n) {
                bail!("N is not normal");
            }
            n
        }
    })
}

fn run(cli: &Cli) -> Result<Report> {
    let lim = limits(&cli.global);
    Ok(match &cli.command {
        Command::Analyze { file } => analyze(&load(file, &lim)?)?.into(),
        Command::Maxsub { file, n } => {
            let g = load(file, &lim)?;
            let classes = match n {
                Some(spec) => maximal_avoiding(&g, &normal_arg(&g, spec, &lim)?)?,
                None => maximal_subgroups(&g)?,
            };
            json!({"order": g.order().to_string(), "classes": classes.iter().map(class_json).collect::<Vec<_>>()})
                .into()
        }
        Command::Zeta { file, n, s } => {
            let g = load(file, &lim)?;
            let n = normal_arg(&g, n, &lim)?;
            let z = zeta(&g, &n, *s)?;
            let mut v = serde_json::to_value(&z)?;
            v["s"] = json!(s);
            v["normal_order_form"] = json!(rational_string(&z.normal_order_form(&n.order(), *s)));
            v["simple_type"] = json!(z.simple_type.map(|t| t.to_string()));
            v.into()
        }
        Command::Genprob { file, d, method, samples, n } => {
            let g = load(file, &lim)?;
            if let Some(spec) = n {
                let n = normal_arg(&g, spec, &lim)?;
                let r = p_conditional(&g, &n, *d)?;
                return Ok(json!({"d": d, "conditional": rational_string(&r)}).into());
            }
            match method {
                GenMethod::Exact => serde_json::to_value(p_exact(&g, *d)?)?.into(),
                GenMethod::Enum => serde_json::to_value(p_exact_enum(&g, *d)?)?.into(),
                GenMethod::Mobius => serde_json::to_value(p_exact_mobius(&g, *d)?)?.into(),
                GenMethod::Mc => serde_json::to_value(p_montecarlo(&g, *d, *samples, cli.global.seed))?.into(),
            }
        }
        Command::Alpha { group, battery } => {
            if *battery {
                let minima = verify_alpha_lower_bound(&standard_families())?;
                let ok = minima.iter().all(|m| m.above_floor);
                return Ok(Report { value: json!({"families": minima}), verified: ok });
            }
            let text = group.as_deref().ok_or_else(|| anyhow!("give a group descriptor or --battery"))?;
            let t: SimpleGroup = text.parse()?;
            let t = t.normalize()?;
            let a = alpha(&t)?;
            json!({
                "group": t.to_string(),
                "alpha": render::compact_float(a.alpha.mid()),
                "alpha_interval": a.alpha,
                "alpha_star_interval": a.alpha_star,
            })
            .into()
        }
        Command::Construct(c) => construct(c, &lim)?,
        Command::PaperChecks { checks, list, timings } => {
            if *list {
                return Ok(json!({"checks": check_ids()}).into());
            }
            let outcomes = run_checks(checks, cli.global.jobs)?;
            let verified = outcomes.iter().all(|o| o.passed);
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    let mut row = json!({
                        "id": o.id,
                        "subject": o.subject,
                        "verdict": if o.passed { "pass" } else if is_known_red(o) { "fail (known)" } else { "fail" },
                        "summary": o.summary,
                    });
                    if *timings || !matches!(cli.global.format, Format::Json) {
                        row["seconds"] = json!(format!("{:.2}", o.seconds));
                    }
                    row
                })
                .collect();
            Report { value: json!({"checks": rows, "all_passed": verified}), verified }
        }
    })
}

fn class_json(c: &SubgroupClass) -> Value {
    json!({"order": c.order, "index": c.index, "class_length": c.class_length})
}

fn analyze(g: &Group) -> Result<Value> {
    let uniserial = is_uniserial(g)?;
    let series = chief_series(g)?;
    let factors: Vec<Value> = series
        .factors
        .iter()
        .map(|f| json!({"factor": f.label(), "order": (f.upper.order() / f.lower.order()).to_string(), "frattini": f.is_frattini}))
        .collect();
    let phi = frattini(g).map(|f| f.order().to_string()).ok();
    let widths = if uniserial { Some(width_sequence(g)?.display()) } else { None };
    Ok(json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "uniserial": uniserial,
        "chief_factors": factors,
        "frattini_order": phi,
        "width_sequence": widths,
    }))
}

fn matrices_from_file(path: &PathBuf, p: u64) -> Result<(usize, Vec<FpMatrix>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).context("matrix file is not JSON")?;
    let n = v["n"].as_u64().ok_or_else(|| anyhow!("matrix file needs an integer n"))? as usize;
    if let Some(fp) = v["p"].as_u64() {
        if fp != p {
            bail!("matrix file is over F_{fp}, not F_{p}");
        }
    }
    let mats = v["matrices"].as_array().ok_or_else(|| anyhow!("matrix file needs a matrices array"))?;
    let mut out = Vec::new();
    for m in mats {
        let entries: Vec<i64> = serde_json::from_value(m.clone()).context("matrix entries must be integers")?;
        if entries.len() != n * n {
            bail!("matrix has {} entries, expected {}", entries.len(), n * n);
        }
        let rows: Vec<Vec<i64>> = entries.chunks(n).map(|r| r.to_vec()).collect();
        out.push(FpMatrix::from_rows(p, &rows)?);
    }
    Ok((n, out))
}

fn group_report(g: &Group) -> Result<Value> {
    let mut v = analyze(g)?;
    v["group"] = serde_json::from_str(&group_to_json(g))?;
    Ok(v)
}

fn construct(c: &Construct, lim: &Limits) -> Result<Report> {
    Ok(match c {
        Construct::Wreath { left, right } => {
            let w = wreath_product(&load(left, lim)?, &load(right, lim)?)?;
            json!({"degree": w.degree(), "order": w.order().to_string(), "uniserial": is_uniserial(&w)?,
                   "group": serde_json::from_str::<Value>(&group_to_json(&w))?})
            .into()
        }
        Construct::Affine { p, matrices } => {
            let (n, mats) = matrices_from_file(matrices, *p)?;
            group_report(&affine_group(*p, n, &mats, lim)?)?.into()
        }
        Construct::Permmod { n, p } => {
            let pm = permutation_module(*n, *p)?;
            let subs = all_submodules(&pm.module)?;
            json!({
                "n": n,
                "p": p,
                "submodules": subs.iter().map(|s| json!({"dimension": s.dim(), "basis": s.basis})).collect::<Vec<_>>(),
                "v1_contains_v2": pm.v2.is_subspace_of(&pm.v1),
                "direct_sum": pm.v1.intersection(&pm.v2).dim() == 0,
                "uniserial": is_uniserial_module(&pm.module)?,
            })
            .into()
        }
        Construct::PaperExample(Example::AffineEquality { p }) => {
            let g = build_affine_equality_group(*p, lim)?;
            let mut v = analyze(&g)?;
            v["p"] = json!(p);
            v.into()
        }
        Construct::PaperExample(Example::WreathQuasisimple { n, quotient }) => {
            let t = corpus::load("sl2_5")?;
            let q = match quotient {
                Quotient::Full => CentralQuotient::Full,
                Quotient::ModConstants => CentralQuotient::ModConstants,
                Quotient::ModSumZero => CentralQuotient::ModSumZero,
            };
            let r = build_wreath_quasisimple(&t, *n, q)?;
            json!({
                "degree": r.group.degree(),
                "order": r.group.order().to_string(),
                "p": r.p,
                "central_order": r.central_order.to_string(),
                "retained_dimension": r.retained_dimension,
                "base_order": r.base.order().to_string(),
                "base_perfect": r.base.is_perfect(),
            })
            .into()
        }
    })
}

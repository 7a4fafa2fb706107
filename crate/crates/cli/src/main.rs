//! `rtdim`: teaching and VC dimensions of concept-class files.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failed check (or on an
//! unexpected internal error), 2 for unreadable or malformed input, 3 for
//! parameters outside what can be computed.

mod report;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use rtdim::bounds::{bound_report, constructive_teaching_set, default_alpha, BoundReport};
use rtdim::explore::{
    all_pairs, extremal_search, rtd_vcd_experiment, verify_corpus, NamedClass, SearchBudget,
};
use rtdim::format::{read_class_file, write_class};
use rtdim::Error;

use table::{fields, Table};

#[derive(Parser)]
#[command(
    name = "rtdim",
    version,
    about = "Teaching dimension, recursive teaching dimension and VC dimension"
)]
struct Cli {
    /// Worker threads for parallel sections (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measures of one class: VCD, per-concept TD, TD_min/TD_max, RTD and its plan, pattern profile.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Largest projection size in the pattern profile [default: min(n, 8)].
        #[arg(long)]
        profile_max: Option<usize>,
    },
    /// The RTD upper bound for VC dimension D and the restriction chain behind it.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Builds a teaching set by the restriction descent and prints its trace.
    Construct {
        file: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Local search for a class with large RTD under a VC-dimension cap.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        vcd_cap: usize,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Evaluation budget; makes the result independent of machine speed.
        #[arg(long)]
        max_evals: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// RTD against VCD over random classes.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Writes the product of two classes.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Checks every class file in a directory; exits 1 if any check fails.
    Verify {
        dir: PathBuf,
        /// Also check the product laws on every pair of classes (including each with itself).
        #[arg(long)]
        pairs: bool,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Input(_)) => 2,
        Some(
            Error::Parameter(_) | Error::Capacity(_) | Error::Domain(_) | Error::Convergence(_),
        ) => 3,
        Some(Error::Internal(_)) | None => 1,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn read(path: &Path) -> Result<rtdim::ConceptClass> {
    read_class_file(path).with_context(|| path.display().to_string())
}

fn parse_alpha(alpha: Option<f64>) -> f64 {
    alpha.unwrap_or_else(default_alpha)
}

fn chain_table(report: &BoundReport) -> String {
    let concrete = report.chain.iter().any(|s| s.restriction_size.is_some());
    let mut header = vec!["x", "y", "k"];
    if concrete {
        header.extend(["added", "restriction"]);
    }
    let mut t = Table::new(header);
    for s in &report.chain {
        let mut row = vec![s.x.to_string(), s.y.to_string(), s.k.to_string()];
        if concrete {
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            row.extend([opt(s.added), opt(s.restriction_size)]);
        }
        t.row(row);
    }
    t.render()
}

fn bound_fields(report: &BoundReport) -> String {
    fields(&[
        ("d", report.d.to_string()),
        ("alpha", format!("{:.6}", report.alpha)),
        ("lambda_star", format!("{:.6}", report.lambda_star)),
        ("x_start", report.x_start.to_string()),
        ("f_bound", format!("{:.4}", report.f_bound)),
        ("rtd_bound", format!("{:.4}", report.rtd_bound)),
    ])
}

fn analyze(file: &Path, json: bool, profile_max: Option<usize>) -> Result<u8> {
    let class = read(file)?;
    let r = report::analyze(&class, profile_max)?;
    if json {
        print_json(&r)?;
        return Ok(0);
    }
    print!(
        "{}",
        fields(&[
            ("n", r.n.to_string()),
            ("size", r.size.to_string()),
            ("vcd", r.vcd.to_string()),
            ("td_min", r.td_min.to_string()),
            ("td_max", r.td_max.to_string()),
            ("rtd", r.rtd.to_string()),
            ("maximal", r.maximal.to_string()),
            ("intersection_closed", r.intersection_closed.to_string()),
        ])
    );
    let mut tds = Table::new(["concept", "td"]);
    for c in &r.td {
        tds.row([c.concept.clone(), c.td.to_string()]);
    }
    let mut plan = Table::new(["level", "td", "concepts"]);
    for (i, l) in r.plan.iter().enumerate() {
        plan.row([(i + 1).to_string(), l.td.to_string(), l.concepts.join(" ")]);
    }
    let mut profile = Table::new(["x", "max patterns"]);
    for (x, m) in r.profile.as_map() {
        profile.row([x, m]);
    }
    println!(
        "\n{}\n{}\n{}",
        tds.render(),
        plan.render(),
        profile.render().trim_end()
    );
    Ok(0)
}

fn bounds(d: usize, alpha: Option<f64>, json: bool) -> Result<u8> {
    let report = bound_report(d, alpha)?;
    if json {
        print_json(&report)?;
    } else {
        println!(
            "{}\n{}",
            bound_fields(&report),
            chain_table(&report).trim_end()
        );
    }
    Ok(0)
}

fn construct(file: &Path, alpha: Option<f64>, json: bool) -> Result<u8> {
    let class = read(file)?;
    let out = constructive_teaching_set(&class, parse_alpha(alpha))?;
    if json {
        print_json(&report::construction(&out, class.n()))?;
        return Ok(0);
    }
    print!(
        "{}",
        fields(&[
            ("concept", out.concept.render(class.n())),
            ("teaching_set", out.teaching_set.instances().to_string()),
            ("labels", out.teaching_set.labels().to_string()),
            ("ts_size", out.teaching_set.len().to_string()),
        ])
    );
    println!(
        "\n{}\n{}",
        bound_fields(&out.trace),
        chain_table(&out.trace).trim_end()
    );
    Ok(0)
}

struct SearchArgs {
    n: usize,
    size: usize,
    vcd_cap: usize,
    budget: Option<f64>,
    max_evals: Option<u64>,
    seed: u64,
}

fn search(args: SearchArgs, json: bool) -> Result<u8> {
    let max_time = match args.budget {
        Some(secs) if !(secs.is_finite() && secs >= 0.0) => {
            return Err(Error::Parameter(format!(
                "budget {secs} must be a nonnegative number of seconds"
            ))
            .into())
        }
        Some(secs) => Some(Duration::from_secs_f64(secs)),
        None => None,
    };
    let budget = SearchBudget {
        max_time,
        max_evaluations: args.max_evals,
    };
    let r = extremal_search(args.n, args.size, args.vcd_cap, budget, args.seed)?;
    if json {
        print_json(&r)?;
        return Ok(0);
    }
    print!(
        "{}",
        fields(&[
            ("rtd", r.rtd.to_string()),
            ("vcd", r.vcd.to_string()),
            ("ratio", format!("{:.4}", r.ratio)),
            ("evaluations", r.evaluations.to_string()),
            ("restarts", r.restarts.to_string()),
            ("seed", r.seed.to_string()),
        ])
    );
    print!("\n{}", write_class(&r.best_class));
    Ok(0)
}

fn random(n: usize, size: usize, trials: usize, seed: u64, json: bool) -> Result<u8> {
    let s = rtd_vcd_experiment(n, size, trials, seed)?;
    if json {
        print_json(&s)?;
        return Ok(0);
    }
    print!(
        "{}",
        fields(&[
            ("n", s.n.to_string()),
            ("size", s.size.to_string()),
            ("trials", s.trials.to_string()),
            ("seed", s.seed.to_string()),
            ("rtd < vcd", format!("{:.4}", s.frac_rtd_lt_vcd)),
            ("rtd = vcd", format!("{:.4}", s.frac_rtd_eq_vcd)),
            ("rtd > vcd", format!("{:.4}", s.frac_rtd_gt_vcd)),
        ])
    );
    let mut t = Table::new(["value", "rtd count", "vcd count"]);
    let values: std::collections::BTreeSet<usize> = s
        .rtd_histogram
        .keys()
        .chain(s.vcd_histogram.keys())
        .copied()
        .collect();
    for v in values {
        let count = |h: &std::collections::BTreeMap<usize, usize>| h.get(&v).copied().unwrap_or(0);
        t.row([v, count(&s.rtd_histogram), count(&s.vcd_histogram)]);
    }
    println!("\n{}", t.render().trim_end());
    Ok(0)
}

fn product(first: &Path, second: &Path, output: &Path) -> Result<u8> {
    let a = read(first)?;
    let b = read(second)?;
    let p = a.product(&b)?;
    std::fs::write(output, write_class(&p))
        .with_context(|| format!("cannot write {}", output.display()))?;
    eprintln!(
        "wrote {} concepts on {} instances to {}",
        p.len(),
        p.n(),
        output.display()
    );
    Ok(0)
}

fn corpus(dir: &Path) -> Result<Vec<NamedClass>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Input(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            Ok(NamedClass::new(name, read(&path)?))
        })
        .collect()
}

fn verify(dir: &Path, pairs: bool, json: bool) -> Result<u8> {
    let classes = corpus(dir)?;
    let pair_list = if pairs {
        all_pairs(classes.len())
    } else {
        Vec::new()
    };
    let report = verify_corpus(&classes, &pair_list)?;
    for s in &report.skipped {
        eprintln!("skipped {}: {}", s.name, s.reason);
    }
    if json {
        print_json(&report)?;
    } else {
        let mark = |ok: Option<bool>| match ok {
            None => "-",
            Some(true) => "ok",
            Some(false) => "FAIL",
        };
        let mut t = Table::new([
            "class",
            "n",
            "size",
            "vcd",
            "rtd",
            "bound",
            "sauer",
            "maximal",
            "int-closed",
            "result",
        ]);
        for c in &report.classes {
            t.row([
                c.name.clone(),
                c.n.to_string(),
                c.size.to_string(),
                c.vcd.to_string(),
                c.rtd.to_string(),
                mark(Some(c.within_bound)).into(),
                mark(Some(c.sauer_counts)).into(),
                mark(c.maximal_equality).into(),
                mark(c.intersection_closed_bound).into(),
                if c.passed { "pass" } else { "FAIL" }.to_string(),
            ]);
        }
        print!("{}", t.render());
        if !report.pairs.is_empty() {
            let mut p = Table::new([
                "left",
                "right",
                "vcd (l, r, product)",
                "rtd (l, r, product)",
                "result",
            ]);
            for pc in &report.pairs {
                let triple = |v: [usize; 3]| format!("{} {} {}", v[0], v[1], v[2]);
                p.row([
                    pc.left.clone(),
                    pc.right.clone(),
                    triple(pc.vcd),
                    triple(pc.rtd),
                    if pc.passed { "pass" } else { "FAIL" }.to_string(),
                ]);
            }
            print!("\n{}", p.render());
        }
        println!(
            "\n{}",
            if report.all_passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
    }
    if !report.all_passed {
        eprintln!("verification failed");
    }
    Ok(if report.all_passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(Error::Parameter("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()?;
    }
    match cli.command {
        Command::Analyze {
            file,
            json,
            profile_max,
        } => analyze(&file, json, profile_max),
        Command::Bounds { d, alpha, json } => bounds(d, alpha, json),
        Command::Construct { file, alpha, json } => construct(&file, alpha, json),
        Command::Search {
            n,
            size,
            vcd_cap,
            budget,
            max_evals,
            seed,
            json,
        } => search(
            SearchArgs {
                n,
                size,
                vcd_cap,
                budget,
                max_evals,
                seed,
            },
            json,
        ),
        Command::Random {
            n,
            size,
            trials,
            seed,
            json,
        } => random(n, size, trials, seed, json),
        Command::Product {
            first,
            second,
            output,
        } => product(&first, &second, &output),
        Command::Verify { dir, pairs, json } => verify(&dir, pairs, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

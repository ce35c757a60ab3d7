//! Command-line surface: model emission, validation, d-invariants and
//! tables, connected sums, orientation reversal, property checks, and the
//! obstruction consumers.
//!
//! Exit codes: 0 success, 1 usage, 2 validation/input failure,
//! 3 uncertified result, 4 property failure.

use clap::{Args, Parser, Subcommand};
use hfd::catalog;
use hfd::dinv;
use hfd::files::{self, Report};
use hfd::functors::{enumerate_primitive_subspaces, Subspace};
use hfd::grading::{format_grading, GradingStr};
use hfd::hfmodel::{self, HFModel};
use hfd::intlinalg::IntMatrix;
use hfd::obstruct::{self, Lattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_UNCERTIFIED: u8 = 3;
const EXIT_PROPERTY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hfd",
    about = "Exact correction terms from graded-module models",
    disable_version_flag = true
)]
struct Cli {
    /// Emit machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Thread count for d-table entries (0 = default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a catalog model as JSON.
    Catalog {
        name: String,
        /// Number of S^1 x S^2 summands for parameterized entries.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Validate a model file.
    Validate { file: String },
    /// Compute d and d* for one subspace.
    D {
        file: String,
        /// Basis vectors `a1,..,an;b1,..,bn` (or `0` for the zero subspace).
        #[arg(long)]
        subspace: String,
    },
    /// Compute the full d-table over enumerated subspaces.
    DTable {
        file: String,
        /// Enumerate all ranks (default; kept for interface stability).
        #[arg(long, default_value_t = true)]
        rank_all: bool,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Connected sum of two models.
    Connsum {
        a: String,
        b: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Orientation reversal of a model.
    Reverse {
        a: String,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Property checks on a model (all checks when no flags given).
    Props(PropsArgs),
    /// Enumerate metabolizers of a linking form.
    Metabolizers {
        #[arg(long)]
        form: String,
    },
    /// Slice obstruction from a d-invariant table and linking form.
    SliceCheck {
        #[arg(long)]
        table: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        components: usize,
    },
    /// Certified characteristic-vector maximum of a definite unimodular lattice.
    Lattice {
        #[arg(long)]
        gram: String,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
}

#[derive(Args)]
struct PropsArgs {
    file: String,
    #[arg(long)]
    duality: bool,
    #[arg(long)]
    additivity: bool,
    #[arg(long)]
    rank: bool,
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    tower: bool,
    #[arg(long, default_value_t = 2)]
    bound: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version paths are successes, not usage errors.
            if e.use_stderr() {
                eprintln!("{}", e);
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

fn err(code: u8, message: impl ToString) -> CmdError {
    CmdError {
        code,
        message: message.to_string(),
    }
}

/// Invariant violations mean the model broke a guaranteed property of the
/// scan, which is a property failure, not an input problem.
fn dinv_err(e: dinv::DinvError) -> CmdError {
    let code = match &e {
        dinv::DinvError::InvariantViolation(_) => EXIT_PROPERTY,
        _ => EXIT_VALIDATION,
    };
    err(code, e)
}

fn read_input(path: &str) -> Result<String, CmdError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| err(EXIT_VALIDATION, format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| err(EXIT_VALIDATION, format!("cannot read {path}: {e}")))
    }
}

fn load_model(path: &str) -> Result<HFModel, CmdError> {
    let s = read_input(path)?;
    files::parse_model(&s).map_err(|e| err(EXIT_VALIDATION, e))
}

fn write_output(out: &Option<String>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| err(EXIT_VALIDATION, format!("cannot write {path}: {e}"))),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn jobs_opt(cli: &Cli) -> Option<usize> {
    if cli.jobs == 0 {
        None
    } else {
        Some(cli.jobs)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CmdError> {
    match &cli.command {
        Command::Catalog { name, n } => {
            let m = catalog::build(name, *n).ok_or_else(|| {
                err(
                    EXIT_USAGE,
                    format!(
                        "unknown catalog entry '{}'; known: {}",
                        name,
                        catalog::ENTRIES
                            .iter()
                            .map(|e| e.name)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )
            })?;
            let doc = files::emit_model(&m).map_err(|e| err(EXIT_VALIDATION, e))?;
            print!("{}", doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let m = load_model(file)?;
            let report = hfmodel::validate(&m);
            if cli.json {
                let mut r = Report::new("validate", vec![file.clone()]);
                r.certified = report.is_valid();
                r.failures = report.violations.clone();
                r.results = serde_json::json!({ "valid": report.is_valid() });
                print!("{}", r.emit());
            } else if report.is_valid() {
                println!("{}: valid", m.name);
            } else {
                for v in &report.violations {
                    println!("violation: {}", v);
                }
            }
            if report.is_valid() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VALIDATION))
            }
        }
        Command::D { file, subspace } => {
            let m = load_model(file)?;
            let v = files::parse_subspace(m.n(), subspace).map_err(|e| err(EXIT_VALIDATION, e))?;
            let d = dinv::d_invariant(&m, &v).map_err(dinv_err)?;
            let ds = dinv::d_star(&m, &v).map_err(dinv_err)?;
            if cli.json {
                let mut r = Report::new("d", vec![file.clone(), subspace.clone()]);
                r.certified = d.certified && ds.certified;
                r.results = serde_json::json!({
                    "d": GradingStr(d.value),
                    "d_certified": d.certified,
                    "d_star": GradingStr(ds.value),
                    "d_star_certified": ds.certified,
                });
                print!("{}", r.emit());
            } else {
                println!("d = {}", files::format_dvalue(&d));
                println!("d* = {}", files::format_dvalue(&ds));
            }
            if d.certified && ds.certified {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_UNCERTIFIED))
            }
        }
        Command::DTable {
            file,
            rank_all: _,
            bound,
        } => {
            let m = load_model(file)?;
            let table = dinv::d_table(&m, *bound, jobs_opt(cli)).map_err(dinv_err)?;
            let all_certified = table
                .entries
                .iter()
                .all(|e| e.d.certified && e.d_star.certified);
            if cli.json {
                let entries =
                    files::dtable_entries_json(&table).map_err(|e| err(EXIT_VALIDATION, e))?;
                let mut r = Report::new("d-table", vec![file.clone()]);
                r.certified = all_certified;
                r.results = serde_json::json!({
                    "model": table.model,
                    "bound": table.bound,
                    "entries": entries,
                });
                print!("{}", r.emit());
            } else {
                println!("model: {}  (bound {})", table.model, table.bound);
                println!("{:<6} {:<24} {:>8} {:>8}", "rank", "subspace", "d", "d*");
                for e in &table.entries {
                    let gens = e.subspace.span().gens();
                    let desc: Vec<String> = (0..gens.cols())
                        .map(|j| {
                            let col: Vec<String> =
                                gens.column(j).iter().map(|x| x.to_string()).collect();
                            col.join(",")
                        })
                        .collect();
                    println!(
                        "{:<6} {:<24} {:>8} {:>8}",
                        e.subspace.rank(),
                        desc.join(";"),
                        files::format_dvalue(&e.d),
                        files::format_dvalue(&e.d_star)
                    );
                }
            }
            if all_certified {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_UNCERTIFIED))
            }
        }
        Command::Connsum { a, b, out } => {
            let ma = load_model(a)?;
            let mb = load_model(b)?;
            let sum = hfmodel::connected_sum(&ma, &mb).map_err(|e| err(EXIT_VALIDATION, e))?;
            let doc = files::emit_model(&sum).map_err(|e| err(EXIT_VALIDATION, e))?;
            write_output(out, &doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reverse { a, out } => {
            let m = load_model(a)?;
            let rev = hfmodel::reverse_orientation(&m).map_err(|e| err(EXIT_VALIDATION, e))?;
            let doc = files::emit_model(&rev).map_err(|e| err(EXIT_VALIDATION, e))?;
            write_output(out, &doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Props(args) => run_props(cli, args),
        Command::Metabolizers { form } => {
            let s = read_input(form)?;
            let f: obstruct::LinkingForm =
                serde_json::from_str(&s).map_err(|e| err(EXIT_VALIDATION, e))?;
            let out =
                obstruct::enumerate_metabolizers(&f, None).map_err(|e| err(EXIT_VALIDATION, e))?;
            if cli.json {
                let mut r = Report::new("metabolizers", vec![form.clone()]);
                r.results = serde_json::json!({ "metabolizers": out });
                print!("{}", r.emit());
            } else if out.is_empty() {
                println!("no metabolizers");
            } else {
                for m in &out {
                    let elems: Vec<String> = m
                        .elements
                        .iter()
                        .map(|e| {
                            format!(
                                "({})",
                                e.iter()
                                    .map(|x| x.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        })
                        .collect();
                    println!("{{{}}}", elems.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SliceCheck {
            table,
            form,
            components,
        } => {
            let ts = read_input(table)?;
            let t: obstruct::DInvariantTable =
                serde_json::from_str(&ts).map_err(|e| err(EXIT_VALIDATION, e))?;
            let fs = read_input(form)?;
            let f: obstruct::LinkingForm =
                serde_json::from_str(&fs).map_err(|e| err(EXIT_VALIDATION, e))?;
            let verdict = obstruct::slice_obstruction(&t, &f, *components)
                .map_err(|e| err(EXIT_VALIDATION, e))?;
            if cli.json {
                let mut r = Report::new("slice-check", vec![table.clone(), form.clone()]);
                r.results = serde_json::to_value(&verdict).map_err(|e| err(EXIT_VALIDATION, e))?;
                print!("{}", r.emit());
            } else {
                match &verdict {
                    obstruct::SliceVerdict::Obstructed { reason } => {
                        println!("OBSTRUCTED: {}", reason)
                    }
                    obstruct::SliceVerdict::Unobstructed { metabolizers } => println!(
                        "UNOBSTRUCTED: {} metabolizer(s) survive",
                        metabolizers.len()
                    ),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { gram, bound } => {
            let s = read_input(gram)?;
            let mj: files::MatrixJson =
                serde_json::from_str(&s).map_err(|e| err(EXIT_VALIDATION, e))?;
            if mj.entries.len() != mj.rows * mj.cols {
                return Err(err(EXIT_VALIDATION, "matrix entry count mismatch"));
            }
            let l = Lattice {
                gram: IntMatrix::from_i64(mj.rows, mj.cols, &mj.entries),
            };
            let out =
                obstruct::char_vector_max(&l, Some(*bound)).map_err(|e| err(EXIT_VALIDATION, e))?;
            if cli.json {
                let mut r = Report::new("lattice", vec![gram.clone()]);
                r.certified = out.certified;
                r.results = serde_json::json!({
                    "max": out.max.to_string(),
                    "witness": out.witness,
                });
                print!("{}", r.emit());
            } else {
                println!(
                    "max(c^2 + rank) = {}{}  at c = ({})",
                    out.max,
                    if out.certified { "" } else { " (uncertified)" },
                    out.witness
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
            }
            if out.certified {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_UNCERTIFIED))
            }
        }
    }
}

fn random_chain(rng: &mut ChaCha8Rng, n: usize, bound: u64) -> Vec<Subspace> {
    // A nested pair from the enumeration: pick a rank-k subspace containing
    // a random rank-l one by extending a random sub-list of its basis.
    let mut chain = vec![Subspace::zero(n)];
    if n == 0 {
        return chain;
    }
    let k = rng.gen_range(1..=n);
    let subs = enumerate_primitive_subspaces(n, k, bound);
    let big = subs[rng.gen_range(0..subs.len())].clone();
    if k > 1 {
        let l = rng.gen_range(1..k);
        let basis = big.basis_vectors();
        let small = Subspace::new(n, &basis[..l]).expect("subset basis");
        chain.push(hfd::functors::saturate_subspace(&small));
    }
    chain.push(big);
    chain
}

fn run_props(cli: &Cli, args: &PropsArgs) -> Result<ExitCode, CmdError> {
    let m = load_model(&args.file)?;
    let run_all = !(args.duality || args.additivity || args.rank || args.simple || args.tower);
    let mut reports: Vec<dinv::PropertyReport> = Vec::new();
    if run_all || args.duality {
        let rev = hfmodel::reverse_orientation(&m).map_err(|e| err(EXIT_VALIDATION, e))?;
        reports.push(dinv::check_duality(&m, &rev, args.bound).map_err(dinv_err)?);
    }
    if run_all || args.additivity {
        let mm = hfmodel::connected_sum(&m, &m).map_err(|e| err(EXIT_VALIDATION, e))?;
        reports.push(dinv::check_additivity(&m, &m, &mm, 1).map_err(dinv_err)?);
    }
    if run_all || args.rank {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut report = dinv::PropertyReport {
            name: "rank-inequality".into(),
            ok: true,
            details: vec![],
        };
        for _ in 0..20 {
            let chain = random_chain(&mut rng, m.n(), args.bound);
            let r = dinv::check_rank_inequality(&m, &chain).map_err(dinv_err)?;
            if !r.ok {
                report.ok = false;
                report.details.extend(r.details);
            }
        }
        reports.push(report);
    }
    if run_all || args.simple {
        let (simple, r) = dinv::check_simple(&m, args.bound).map_err(dinv_err)?;
        let mut r = r;
        r.details.insert(0, format!("simple: {}", simple));
        reports.push(r);
    }
    if run_all || args.tower {
        let mut report = dinv::PropertyReport {
            name: "tower".into(),
            ok: true,
            details: vec![],
        };
        let w = &m.hf_inf;
        let lo = w.lo() + hfd::grading::grading(2);
        let hi = w.hi() - hfd::grading::grading(3);
        for k in 0..=m.n() {
            for v in enumerate_primitive_subspaces(m.n(), k, args.bound) {
                let qkr = hfd::functors::qk(w, &v).map_err(|e| err(EXIT_VALIDATION, e))?;
                let kqr = hfd::functors::kq(w, &v).map_err(|e| err(EXIT_VALIDATION, e))?;
                let mut g = lo;
                while g <= hi {
                    let qp = qkr.free_rank_at(g).unwrap_or(0)
                        + qkr.free_rank_at(g + hfd::grading::grading(1)).unwrap_or(0);
                    let kp = kqr.free_rank_at(g).unwrap_or(0)
                        + kqr.free_rank_at(g + hfd::grading::grading(1)).unwrap_or(0);
                    if qp != 1 || kp != 1 {
                        report.ok = false;
                        report.details.push(format!(
                            "tower rank {} / {} at grading {}",
                            qp,
                            kp,
                            format_grading(&g)
                        ));
                    }
                    g += hfd::grading::grading(1);
                }
            }
        }
        reports.push(report);
    }
    let all_ok = reports.iter().all(|r| r.ok);
    if cli.json {
        let mut r = Report::new("props", vec![args.file.clone()]);
        r.certified = all_ok;
        r.results = serde_json::json!({
            "checks": reports
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "name": p.name,
                        "ok": p.ok,
                        "details": p.details,
                    })
                })
                .collect::<Vec<_>>(),
        });
        r.failures = reports
            .iter()
            .filter(|p| !p.ok)
            .flat_map(|p| p.details.clone())
            .collect();
        print!("{}", r.emit());
    } else {
        for p in &reports {
            println!("{}: {}", p.name, if p.ok { "ok" } else { "FAILED" });
            for d in &p.details {
                println!("  {}", d);
            }
        }
    }
    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_PROPERTY))
    }
}

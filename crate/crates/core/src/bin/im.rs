//! Command-line front end. Exit status: 0 ok, 1 failed check, 2 usage
//! error, 3 malformed input.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use interpreter_metric::config::Config;
use interpreter_metric::harness::{
    axiom_suite, budget_sweep, ordering_experiment, selector_demo, sweep_csv, UniverseSpec,
};
use interpreter_metric::lang::{equivalent, evaluate, table};
use interpreter_metric::metric::{distance, symmetrized_distance};
use interpreter_metric::transform::{build_inverse_chain, verify};
use interpreter_metric::{Catalog, Error, Lab, Transformation};

#[derive(Parser)]
#[command(name = "im", version, about = "Chain-of-interpreters distance lab")]
struct Cli {
    /// key = value configuration file
    #[arg(long, global = true, env = "IM_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    modulus: Option<u32>,
    /// Enumeration ceiling
    #[arg(long, global = true)]
    ceiling: Option<u64>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CatalogArg {
    /// Catalog file (default: the built-in base catalog)
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Re-verify catalog entries on load
    #[arg(long)]
    reverify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program on one input
    Eval { program: String, x: u8 },
    /// Function table of a program
    Table { program: String },
    /// Whether two programs compute the same function
    Equiv { p: String, q: String },
    /// List programs in canonical order
    Enumerate {
        #[arg(long)]
        max_tokens: usize,
    },
    /// Check a transformation on every program up to the bound
    Verify {
        transform: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Catalog files
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Chain distance between two programs
    Dist {
        p: String,
        q: String,
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        max_tokens: Option<usize>,
        #[arg(long)]
        max_chain_length: Option<usize>,
        #[arg(long)]
        max_explored: Option<usize>,
        /// Report max(d(p,q), d(q,p))
        #[arg(long)]
        sym: bool,
    },
    /// Chain leading s(p) back to p
    Invert { transform: String, program: String },
    /// Metric axioms over a universe
    Axioms {
        #[arg(long, default_value_t = 6)]
        max_tokens: usize,
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// The selector counterexample, end to end
    SelectorDemo,
    /// Connectivity by budget, as CSV
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_tokens: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// Comment variants versus expression rewrites
    Ordering {
        #[arg(long, default_value_t = 7)]
        max_tokens: usize,
        #[command(flatten)]
        catalog: CatalogArg,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Verify { path: PathBuf },
    Show { path: PathBuf },
}

struct Ctx {
    config: Config,
    lab: Lab,
    json: bool,
}

impl Ctx {
    fn catalog(&self, arg: &CatalogArg) -> Result<Catalog, Error> {
        match arg.catalog.as_ref().or(self.config.catalog.as_ref()) {
            Some(path) => Catalog::load(path, &self.lab, arg.reverify),
            None => Ok(Catalog::base(self.lab.modulus())),
        }
    }

    fn emit(&self, value: serde_json::Value, text: impl FnOnce() -> String) {
        let out = if self.json {
            serde_json::to_string_pretty(&value).expect("json")
        } else {
            text()
        };
        // A closed pipe (`im enumerate | head`) is not an error.
        let _ = writeln!(std::io::stdout(), "{out}");
    }
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut config = Config::load(cli.config.as_deref())?;
    if let Some(m) = cli.modulus {
        config.set("modulus", &m.to_string())?;
    }
    if let Some(c) = cli.ceiling {
        config.set("ceiling", &c.to_string())?;
    }
    let ctx = Ctx {
        lab: config.lab(),
        config,
        json: cli.json,
    };
    let lab = &ctx.lab;
    let m = lab.modulus();
    match cli.command {
        Command::Eval { program, x } => {
            let p = lab.parse(&program)?;
            if x >= m.get() {
                return Err(Error::Config(format!("input {x} is not in Z_{}", m.get())));
            }
            let y = evaluate(&p, x, m);
            ctx.emit(json!({ "program": p.to_string(), "x": x, "value": y }), || y.to_string());
        }
        Command::Table { program } => {
            let p = lab.parse(&program)?;
            let t = table(&p, m);
            ctx.emit(json!({ "program": p.to_string(), "table": t }), || t.to_string());
        }
        Command::Equiv { p, q } => {
            let (p, q) = (lab.parse(&p)?, lab.parse(&q)?);
            let e = equivalent(&p, &q, m);
            ctx.emit(json!({ "p": p.to_string(), "q": q.to_string(), "equivalent": e }), || e.to_string());
        }
        Command::Enumerate { max_tokens } => {
            let programs: Vec<String> = lab.enumeration().iter_upto(max_tokens)?.map(|p| p.to_string()).collect();
            ctx.emit(json!(programs), || {
                programs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| format!("{i}\t{p}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::Verify { transform, bound } => {
            let t: Transformation = transform.parse()?;
            let r = verify(lab, &t, bound.unwrap_or(ctx.config.bound))?;
            ctx.emit(serde_json::to_value(&r).expect("json"), || match &r.counterexample {
                None => format!("{}: valid up to {} tokens ({} programs)", r.subject, r.bound, r.programs_checked),
                Some(cx) => format!(
                    "{}: invalid\ncounterexample: {} -> {}\n  {} vs {}",
                    r.subject, cx.program, cx.image, cx.program_table, cx.image_table
                ),
            });
            return Ok(status(r.is_valid()));
        }
        Command::Catalog { action } => match action {
            CatalogAction::Show { path } => {
                let c = Catalog::load(&path, lab, false)?;
                let rows = c.describe();
                ctx.emit(
                    json!({
                        "name": c.name,
                        "entries": rows.iter().map(|(t, b, v)| json!({"term": t, "bits": b, "bound": v})).collect::<Vec<_>>(),
                    }),
                    || {
                        let mut out = format!("catalog {} ({} entries)", c.name, c.len());
                        for (t, b, v) in &rows {
                            out.push_str(&format!("\n{b:>3} bits  bound {v}  {t}"));
                        }
                        out
                    },
                );
            }
            CatalogAction::Verify { path } => {
                let c = Catalog::load(&path, lab, false)?;
                let reports = c.verification_reports(lab)?;
                let ok = reports.iter().all(|r| r.is_valid());
                ctx.emit(json!({ "name": c.name, "valid": ok, "reports": reports }), || {
                    let mut out = String::new();
                    for r in &reports {
                        match &r.counterexample {
                            None => out.push_str(&format!("valid    {}\n", r.subject)),
                            Some(cx) => out.push_str(&format!("INVALID  {}  counterexample {}\n", r.subject, cx.program)),
                        }
                    }
                    out.push_str(if ok { "catalog valid" } else { "catalog rejected" });
                    out
                });
                return Ok(status(ok));
            }
        },
        Command::Dist {
            p,
            q,
            catalog,
            max_tokens,
            max_chain_length,
            max_explored,
            sym,
        } => {
            let (p, q) = (lab.parse(&p)?, lab.parse(&q)?);
            let cat = ctx.catalog(&catalog)?;
            let mut bounds = ctx.config.search;
            bounds.max_program_tokens = max_tokens.or(bounds.max_program_tokens);
            bounds.max_chain_length = max_chain_length.or(bounds.max_chain_length);
            bounds.max_explored = max_explored.or(bounds.max_explored);
            if sym {
                let r = symmetrized_distance(lab, &p, &q, &cat, &bounds)?;
                ctx.emit(r.to_json(lab), || {
                    let v = |d: Option<interpreter_metric::ComplexityBits>| {
                        d.map_or("unreachable".to_string(), |b| format!("{} bits", b.0))
                    };
                    format!(
                        "symmetrized: {}\nforward: {}\nbackward: {}",
                        v(r.value),
                        v(r.forward.value),
                        v(r.backward.value)
                    )
                });
            } else {
                let r = distance(lab, &p, &q, &cat, &bounds)?;
                ctx.emit(r.to_json(lab), || match (&r.value, &r.witness) {
                    (Some(v), Some(w)) => {
                        let steps = if w.is_empty() { "(empty)".to_string() } else { w.terms().join(", ") };
                        format!("{} bits\nwitness: {steps}", v.0)
                    }
                    _ => format!("unreachable ({:?}, {} programs explored)", r.status, r.explored),
                });
            }
        }
        Command::Invert { transform, program } => {
            let t: Transformation = transform.parse()?;
            let p = lab.parse(&program)?;
            let plan = build_inverse_chain(lab, &t, &p)?;
            let back = plan.execute(lab);
            ctx.emit(plan.to_json(lab), || {
                format!(
                    "{} -> {}\nsteps: {}\nresult: {back}\nmax step: {} bits",
                    p,
                    plan.image,
                    plan.steps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                    plan.max_step_complexity().0
                )
            });
            return Ok(status(back == p));
        }
        Command::Axioms { max_tokens, catalog } => {
            let cat = ctx.catalog(&catalog)?;
            let r = axiom_suite(lab, &UniverseSpec::new(max_tokens), &cat)?;
            ctx.emit(r.to_json(), || {
                format!(
                    "universe: {} programs, {} classes\nidentity violations: {}\nstrong triangle violations: {}\nsymmetry: max gap {} (delta {}), violations {}\n{}",
                    r.universe.nodes,
                    r.universe.classes,
                    r.identity.violations.count,
                    r.strong_triangle.relaxation_violations.count + r.strong_triangle.attainment_violations.count,
                    r.symmetry.max_gap,
                    r.symmetry.delta,
                    r.symmetry.violations.count + r.symmetry.certificate_failures.count,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            });
            return Ok(status(r.passed));
        }
        Command::SelectorDemo => {
            let r = selector_demo(lab)?;
            ctx.emit(r.to_json(), || {
                format!(
                    "{} and {} compute {}\nappends valid: {}\nFlipSelector: {} (counterexample {})\nrejected chain fails: {}\nunreachable under {}: {}\n{}",
                    r.start,
                    r.goal,
                    r.start_table,
                    r.appends_valid,
                    if r.flip_rejected { "invalid" } else { "valid" },
                    r.flip.counterexample.as_ref().map_or("-", |c| c.program.as_str()),
                    r.rejected_chain_fails,
                    r.restricted_catalog,
                    r.unreachable_under_restriction,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            });
            return Ok(status(r.passed));
        }
        Command::Sweep { max_tokens, out, catalog } => {
            let cat = ctx.catalog(&catalog)?;
            let r = budget_sweep(lab, &UniverseSpec::new(max_tokens), &cat)?;
            let csv = sweep_csv(&r.rows);
            if let Some(path) = &out {
                std::fs::write(path, &csv).map_err(|e| Error::io(path, e))?;
            }
            ctx.emit(serde_json::to_value(&r).expect("json"), || csv.trim_end().to_string());
            return Ok(status(r.monotone));
        }
        Command::Ordering { max_tokens, catalog } => {
            let cat = ctx.catalog(&catalog)?;
            let r = ordering_experiment(lab, &UniverseSpec::new(max_tokens), &cat)?;
            ctx.emit(r.to_json(), || {
                format!(
                    "comment-variant pairs: {} (max {} bits, bound {})\nexpression pairs: {} finite, {} unreachable, {} above the bound\nstrict ordering for every pair: {}\n{}",
                    r.comment_variants.pairs,
                    r.comment_variants.max_witness_bits,
                    r.comment_variants.bound_bits,
                    r.expression_pairs.finite,
                    r.expression_pairs.unreachable,
                    r.expression_pairs.above_comment_bound,
                    r.strict_ordering_universal,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            });
            return Ok(status(r.passed));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

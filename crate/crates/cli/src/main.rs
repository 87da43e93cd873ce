//! Batch front-end: reads a matroid description (JSON, from a file or
//! stdin), runs one computation, and prints a canonical text or JSON
//! report. Identical inputs always produce byte-identical outputs.

mod input;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use arimat_core::activity::{build_lists, mbar, psi_matching, ElementOrder, Matching};
use arimat_core::arith_matroid::{ArithmeticMatroid, AxiomWitness, Subset};
use arimat_core::representation::{gale_dual, is_gcd, is_torsion_free};
use arimat_core::toric_points::{enumerate_points, verify_aes, verify_component_counts};
use arimat_core::tutte_poly::{
    arithmetic_tutte_delcon_with_cap, arithmetic_tutte_subsetsum_with_cap, sequence_tests,
    specialize, BiPoly, Specialization, Specialized, UniPoly,
};

use input::{load, to_explicit_input, to_representation_input, MatroidInput};

/// Failures split by exit code: bad input (1) vs verification
/// mismatches in otherwise well-formed runs (2).
pub enum AppError {
    Input(String),
    Verify(String),
}

impl AppError {
    pub fn input(msg: impl Into<String>) -> Self {
        AppError::Input(msg.into())
    }

    pub fn verify(msg: impl Into<String>) -> Self {
        AppError::Verify(msg.into())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Subset,
    Delcon,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum At {
    Bases,
    Components,
    Poincare,
    Characteristic,
    Indep,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropCheck {
    Gcd,
    TorsionFree,
    Unimodal,
    LogConcave,
}

#[derive(Parser)]
#[command(
    name = "arimat",
    about = "Exact computations on arithmetic matroids",
    version
)]
struct Cli {
    /// Input file with the matroid description; "-" reads stdin
    #[arg(global = true, long, default_value = "-")]
    input: String,

    /// Output format
    #[arg(global = true, long, value_enum, default_value = "text")]
    format: Format,

    /// Largest ground size accepted by the exhaustive axiom check
    #[arg(global = true, long, default_value_t = 12)]
    axiom_cap: usize,

    /// Largest ground size accepted by full-power-set computations
    #[arg(global = true, long, default_value_t = 20)]
    subset_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The multiplicity-weighted Tutte polynomial
    Tutte {
        #[arg(long, value_enum, default_value = "subset")]
        method: Method,
    },
    /// Explicit tables of the dual matroid
    Dual,
    /// The dual representation (representation input only)
    GaleDual,
    /// Exhaustive rank and multiplicity axiom check
    CheckAxioms,
    /// Weighted sublist lists, per-basis matchings, and the rebuilt polynomial
    Activity {
        /// Element order, least to greatest (default: input order)
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Points of the zero-dimensional layers (representation input only)
    Points,
    /// One-variable specializations
    Specialize {
        #[arg(long, value_enum)]
        at: At,
    },
    /// Structural property checks
    Props {
        #[arg(long, value_enum)]
        check: PropCheck,
    },
}

fn read_input(path: &str) -> Result<MatroidInput, AppError> {
    let raw = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| AppError::input(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| AppError::input(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&raw).map_err(|e| AppError::input(format!("malformed input: {e}")))
}

fn big(v: &BigInt) -> serde_json::Value {
    json!(v.to_string())
}

fn subset_json(m: &ArithmeticMatroid, s: Subset) -> serde_json::Value {
    json!({ "bits": s.0, "set": m.ground().describe(s) })
}

fn unipoly_json(p: &UniPoly) -> serde_json::Value {
    json!({ "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() })
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
}

fn witness_text(m: &ArithmeticMatroid, w: &AxiomWitness) -> String {
    let d = |s: &Subset| m.ground().describe(*s);
    match w {
        AxiomWitness::RankCardinality { a } => format!("rk{} exceeds cardinality", d(a)),
        AxiomWitness::RankMonotone { a, b } => format!("rk{} > rk{}", d(a), d(b)),
        AxiomWitness::RankSubmodular { a, b } => {
            format!("submodularity fails for {} and {}", d(a), d(b))
        }
        AxiomWitness::DividesDependent { a, v } => format!(
            "m{} does not divide m{} (dependent extension)",
            d(&a.with(*v)),
            d(a)
        ),
        AxiomWitness::DividesIndependent { a, v } => format!(
            "m{} does not divide m{} (independent extension)",
            d(a),
            d(&a.with(*v))
        ),
        AxiomWitness::MoleculeProduct { a, b, f, t } => format!(
            "m(A)*m(B) != m(A+F)*m(A+T) for A={}, B={}, F={}, T={}",
            d(a),
            d(b),
            d(&f.minus(*a)),
            d(&t.minus(*a))
        ),
        AxiomWitness::NonnegativeMu { a, b, value } => {
            format!("mu({}, {}) = {} < 0", d(a), d(b), value)
        }
        AxiomWitness::NonnegativeMuStar { a, b, value } => {
            format!("dual mu({}, {}) = {} < 0", d(a), d(b), value)
        }
    }
}

fn matroid_table_text(m: &ArithmeticMatroid) -> String {
    let mut lines = vec!["subset\trank\tmultiplicity".to_string()];
    let (rank, mult) = m.to_tables();
    for bits in 0..1usize << m.size() {
        lines.push(format!(
            "{}\t{}\t{}",
            m.ground().describe(Subset(bits as u32)),
            rank[bits],
            mult[bits]
        ));
    }
    lines.join("\n")
}

fn matching_json(m: &ArithmeticMatroid, matching: &Matching) -> serde_json::Value {
    json!({
        "basis": subset_json(m, matching.basis),
        "mass": big(&matching.total()),
        "entries": matching.entries.iter().map(|e| json!({
            "primal_active": subset_json(m, e.primal.active),
            "primal_weight": big(&e.primal.weight),
            "dual_active": subset_json(m, e.dual.active),
            "dual_weight": big(&e.dual.weight),
            "count": big(&e.count),
        })).collect::<Vec<_>>(),
    })
}

fn tutte_both(m: &ArithmeticMatroid, cap: usize) -> Result<BiPoly, AppError> {
    let a = arithmetic_tutte_subsetsum_with_cap(m, cap)
        .map_err(|e| AppError::input(e.to_string()))?;
    let b = arithmetic_tutte_delcon_with_cap(m, cap).map_err(|e| AppError::input(e.to_string()))?;
    if a != b {
        return Err(AppError::verify(format!(
            "route mismatch: subset-sum {a} vs deletion-contraction {b}"
        )));
    }
    Ok(a)
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let parsed = read_input(&cli.input)?;
    let loaded = load(&parsed)?;
    let m = &loaded.matroid;
    let cap = cli.subset_cap;
    let err_input = |e: arimat_core::Error| AppError::input(e.to_string());

    match &cli.command {
        Command::Tutte { method } => {
            let p = match method {
                Method::Subset => arithmetic_tutte_subsetsum_with_cap(m, cap).map_err(err_input)?,
                Method::Delcon => arithmetic_tutte_delcon_with_cap(m, cap).map_err(err_input)?,
                Method::Both => tutte_both(m, cap)?,
            };
            emit(
                cli.format,
                p.canonical_text(),
                serde_json::to_value(&p).unwrap(),
            );
        }
        Command::Dual => {
            if m.size() > cap {
                return Err(AppError::input(format!(
                    "ground size {} exceeds cap {cap}",
                    m.size()
                )));
            }
            let dual = m.dual().to_explicit();
            let out = to_explicit_input(&dual);
            emit(
                cli.format,
                matroid_table_text(&dual),
                serde_json::to_value(&out).unwrap(),
            );
        }
        Command::GaleDual => {
            let rep = loaded
                .representation
                .as_ref()
                .ok_or_else(|| AppError::input("gale-dual needs a representation input"))?;
            let dual = gale_dual(rep);
            let out = to_representation_input(&dual);
            let mut lines = vec![format!(
                "group: free rank {}, torsion {:?}",
                dual.group().free_rank(),
                dual.group()
                    .torsion()
                    .iter()
                    .map(BigInt::to_string)
                    .collect::<Vec<_>>()
            )];
            for e in dual.elements() {
                lines.push(format!(
                    "({})",
                    e.coords()
                        .iter()
                        .map(BigInt::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            emit(
                cli.format,
                lines.join("\n"),
                serde_json::to_value(&out).unwrap(),
            );
        }
        Command::CheckAxioms => {
            let report = m
                .check_axioms_with_cap(cli.axiom_cap)
                .map_err(err_input)?;
            let mut lines = vec![format!(
                "rank axioms: {}",
                if report.rank_ok() { "ok" } else { "FAIL" }
            )];
            for w in &report.rank_witnesses {
                lines.push(format!("  {}", witness_text(m, w)));
            }
            for i in 1..=5 {
                let ws = &report.witnesses[i - 1];
                if ws.is_empty() {
                    lines.push(format!("axiom {i}: ok"));
                } else {
                    lines.push(format!("axiom {i}: FAIL ({} witnesses)", ws.len()));
                    for w in ws {
                        lines.push(format!("  {}", witness_text(m, w)));
                    }
                }
            }
            let value = json!({
                "rank_ok": report.rank_ok(),
                "failing_axioms": report.failing_axioms(),
                "witnesses": (1..=5).map(|i| report.witnesses[i - 1]
                    .iter()
                    .map(|w| witness_text(m, w))
                    .collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            emit(cli.format, lines.join("\n"), value);
            if !report.all_pass() {
                return Err(AppError::verify("axiom check failed".to_string()));
            }
        }
        Command::Activity { order } => {
            let order = match order {
                Some(seq) => ElementOrder::new(seq.clone())
                    .map_err(|e| AppError::input(e.to_string()))?,
                None => ElementOrder::identity(m.size()),
            };
            if m.size() > cap {
                return Err(AppError::input(format!(
                    "ground size {} exceeds cap {cap}",
                    m.size()
                )));
            }
            let (l, ls) = build_lists(m);
            let explicit = m.to_explicit();
            let matchings: Vec<Matching> = explicit
                .bases()
                .into_iter()
                .map(|b| psi_matching(&explicit, &order, b))
                .collect::<Result<_, _>>()
                .map_err(err_input)?;
            let rebuilt = mbar(m, &order).map_err(err_input)?;

            let mut lines = vec!["L:".to_string()];
            for w in &l {
                lines.push(format!("  {} {}", m.ground().describe(w.sublist), w.weight));
            }
            lines.push("L*:".to_string());
            for w in &ls {
                lines.push(format!("  {} {}", m.ground().describe(w.sublist), w.weight));
            }
            for matching in &matchings {
                lines.push(format!(
                    "basis {} (mass {}):",
                    m.ground().describe(matching.basis),
                    matching.total()
                ));
                for e in &matching.entries {
                    lines.push(format!(
                        "  {} x {} -> {}",
                        m.ground().describe(e.primal.active),
                        m.ground().describe(e.dual.active),
                        e.count
                    ));
                }
            }
            lines.push(format!("rebuilt: {}", rebuilt.canonical_text()));
            let value = json!({
                "list": l.iter().map(|w| json!({
                    "sublist": subset_json(m, w.sublist),
                    "weight": big(&w.weight),
                })).collect::<Vec<_>>(),
                "dual_list": ls.iter().map(|w| json!({
                    "sublist": subset_json(m, w.sublist),
                    "weight": big(&w.weight),
                })).collect::<Vec<_>>(),
                "matchings": matchings.iter().map(|x| matching_json(m, x)).collect::<Vec<_>>(),
                "rebuilt": serde_json::to_value(&rebuilt).unwrap(),
            });
            emit(cli.format, lines.join("\n"), value);
        }
        Command::Points => {
            let rep = loaded
                .representation
                .as_ref()
                .ok_or_else(|| AppError::input("points needs a representation input"))?;
            let records = enumerate_points(rep).map_err(err_input)?;
            let (counts_ok, _) = verify_component_counts(rep).map_err(err_input)?;
            let aes_ok = verify_aes(rep).map_err(err_input)?;
            let mut lines = Vec::new();
            for rec in &records {
                lines.push(format!(
                    "({}) vanishing {}",
                    rec.point
                        .values()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    m.ground().describe(rec.x_p)
                ));
            }
            lines.push(format!(
                "component counts: {}",
                if counts_ok { "ok" } else { "FAIL" }
            ));
            lines.push(format!(
                "pointwise decomposition at x=1: {}",
                if aes_ok { "ok" } else { "FAIL" }
            ));
            let value = json!({
                "points": records.iter().map(|rec| json!({
                    "values": rec.point.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "vanishing": subset_json(m, rec.x_p),
                })).collect::<Vec<_>>(),
                "component_counts_ok": counts_ok,
                "aes_ok": aes_ok,
            });
            emit(cli.format, lines.join("\n"), value);
            if !counts_ok || !aes_ok {
                return Err(AppError::verify("point verification failed".to_string()));
            }
        }
        Command::Specialize { at } => {
            let p = arithmetic_tutte_subsetsum_with_cap(m, cap).map_err(err_input)?;
            let n = m.rank_total();
            let which = match at {
                At::Bases => Specialization::BasesCount,
                At::Components => Specialization::Components,
                At::Poincare => Specialization::Poincare,
                At::Characteristic => Specialization::Characteristic,
                At::Indep => Specialization::IndepCount,
            };
            match specialize(&p, which, n).map_err(err_input)? {
                Specialized::Count(c) => emit(cli.format, c.to_string(), json!({"count": c.to_string()})),
                Specialized::Poly(q) => emit(cli.format, q.canonical_text("q"), unipoly_json(&q)),
            }
        }
        Command::Props { check } => {
            let (text, value) = match check {
                PropCheck::Gcd => {
                    let ok = is_gcd(m);
                    (format!("gcd: {ok}"), json!({"gcd": ok}))
                }
                PropCheck::TorsionFree => {
                    let ok = is_torsion_free(m);
                    (format!("torsion-free: {ok}"), json!({"torsion_free": ok}))
                }
                PropCheck::Unimodal | PropCheck::LogConcave => {
                    let p = arithmetic_tutte_subsetsum_with_cap(m, cap).map_err(err_input)?;
                    let n = m.rank_total();
                    let chi = match specialize(&p, Specialization::Characteristic, n)
                        .map_err(err_input)?
                    {
                        Specialized::Poly(q) => q,
                        Specialized::Count(c) => UniPoly::constant(c),
                    };
                    let indep =
                        match specialize(&p, Specialization::IndepCount, n).map_err(err_input)? {
                            Specialized::Poly(q) => q,
                            Specialized::Count(c) => UniPoly::constant(c),
                        };
                    let pick = |q: &UniPoly| {
                        let (u, l) = sequence_tests(q);
                        if matches!(check, PropCheck::Unimodal) {
                            u
                        } else {
                            l
                        }
                    };
                    let name = if matches!(check, PropCheck::Unimodal) {
                        "unimodal"
                    } else {
                        "log-concave"
                    };
                    let (a, b) = (pick(&chi), pick(&indep));
                    (
                        format!(
                            "{name}: characteristic {} ({}), independent-count {} ({})",
                            a,
                            chi.canonical_text("q"),
                            b,
                            indep.canonical_text("q")
                        ),
                        json!({
                            "check": name,
                            "characteristic": { "poly": unipoly_json(&chi), "holds": a },
                            "independent_count": { "poly": unipoly_json(&indep), "holds": b },
                        }),
                    )
                }
            };
            emit(cli.format, text, value);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

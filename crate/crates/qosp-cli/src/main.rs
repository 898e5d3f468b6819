//! Command-line surface for the qosp library.
//!
//! Subcommands: `roots`, `rep`, `lax`, `casimir`, `verify`. Exit codes:
//! 0 success, 1 verification failure, 2 usage/input error.

use clap::{Args, Parser, Subcommand};
use qosp::eigen::{
    build_pp_matrix, chi_closed_form_table, chi_table, gamma_beta_check, is_degenerate,
    random_weights, t_oracle, ChiMethod,
};
use qosp::galgebra::GradedMatrix;
use qosp::lax::{
    build_a, build_lax_system, verify_block_recursion, verify_intertwining,
    verify_polynomial_identity, verify_yang_baxter, verify_yang_baxter_numeric, LaxSystem,
};
use qosp::report::Report;
use qosp::rootdata::{AlgebraParams, RootSystem, Weight};
use qosp::scalar::QScalar;
use qosp::vecrep::{build_vector_rep, check_defining_relations, VectorRep};
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qosp",
    about = "Exact computations in the quantised orthosymplectic superalgebra U_q[osp(m|n)]",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Orthogonal dimension m (must exceed 2)
    #[arg(long)]
    m: usize,
    /// Symplectic dimension n (even, at least 2)
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print simple roots, rho, C(Lambda_0) and the flattened index order
    Roots(ParamArgs),
    /// Vector representation inspection
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Lax operator construction and identity checks
    Lax {
        #[command(subcommand)]
        action: LaxAction,
    },
    /// Casimir invariant eigenvalue table for a highest weight
    Casimir {
        #[command(flatten)]
        params: ParamArgs,
        /// Highest weight, e.g. "e:1,0|d:2"
        #[arg(long)]
        weight: String,
        /// Highest level l to evaluate
        #[arg(long, default_value_t = 3)]
        lmax: usize,
        /// Evaluate numerically at this q (rational like 3/2, or decimal)
        #[arg(long)]
        q: Option<String>,
        /// Output format
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Run identity verification suites
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Comma-separated subset of
        /// relations,ybe,intertwine,polyid,recursion,gammabeta,oracle,vecmodule
        /// or "all"
        #[arg(long, default_value = "all")]
        checks: String,
        /// Highest level for level-indexed checks
        #[arg(long, default_value_t = 3)]
        lmax: usize,
        /// Seed for the randomized oracle sweep
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random weights in the oracle sweep
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum RepAction {
    /// Emit all simple-generator matrices as JSON triples (row, col, scalar)
    Dump {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand)]
enum LaxAction {
    /// Build the sigma table and R-matrices; optionally dump one object
    Build {
        #[command(flatten)]
        params: ParamArgs,
        /// Dump a matrix family: sigma, r or a
        #[arg(long, value_parser = ["sigma", "r", "a"])]
        dump: Option<String>,
    },
    /// Run the R-matrix identity checks (subset of ybe,intertwine,polyid,recursion)
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "ybe,intertwine,polyid,recursion")]
        checks: String,
        #[arg(long, default_value_t = 3)]
        lmax: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Roots(p) => cmd_roots(&p),
        Command::Rep {
            action: RepAction::Dump { params },
        } => cmd_rep_dump(&params),
        Command::Lax { action } => match action {
            LaxAction::Build { params, dump } => cmd_lax_build(&params, dump.as_deref()),
            LaxAction::Verify {
                params,
                checks,
                lmax,
            } => cmd_verify(&params, &checks, lmax, 1, 5),
        },
        Command::Casimir {
            params,
            weight,
            lmax,
            q,
            format,
        } => cmd_casimir(&params, &weight, lmax, q.as_deref(), &format),
        Command::Verify {
            params,
            checks,
            lmax,
            seed,
            samples,
        } => cmd_verify(&params, &checks, lmax, seed, samples),
    };
    ExitCode::from(code)
}

fn parse_params(p: &ParamArgs) -> Result<RootSystem, String> {
    AlgebraParams::new(p.m, p.n)
        .map(RootSystem::new)
        .map_err(|e| e.to_string())
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

// ---- roots ----

fn cmd_roots(p: &ParamArgs) -> u8 {
    let rs = match parse_params(p) {
        Ok(rs) => rs,
        Err(e) => return usage_error(&e),
    };
    let params = rs.params();
    println!(
        "U_q[osp({}|{})]  l = {}, k = {}, dim = {}",
        params.m(),
        params.n(),
        params.l(),
        params.k(),
        params.dim()
    );
    println!("C(Lambda_0) = {}", rs.casimir_shift());
    println!("rho = {}", rs.rho().render(params));
    println!("simple roots:");
    for (label, alpha) in rs.simple_roots() {
        println!("  {label} = {}", alpha.render(params));
    }
    println!("index order (position, name, grading, xi, (2rho,eps_a)):");
    for ix in rs.indices() {
        println!(
            "  {:>2}  {:>4}  [{}]  xi={:+}  (2rho,eps)={}",
            ix.position,
            ix.name(params),
            ix.grading,
            ix.xi,
            rs.two_rho_dot(ix.position)
        );
    }
    EXIT_OK
}

// ---- rep dump ----

fn matrix_triples(m: &GradedMatrix) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.push(json!([r + 1, c + 1, v.to_string()]));
            }
        }
    }
    out
}

fn order_json(rs: &RootSystem) -> Vec<serde_json::Value> {
    rs.indices()
        .iter()
        .map(|ix| {
            json!({
                "position": ix.position,
                "name": ix.name(rs.params()),
                "grading": ix.grading,
                "xi": ix.xi,
                "conjugate": ix.conj,
                "weight": ix.weight.render(rs.params()),
            })
        })
        .collect()
}

fn cmd_rep_dump(p: &ParamArgs) -> u8 {
    let rs = match parse_params(p) {
        Ok(rs) => rs,
        Err(e) => return usage_error(&e),
    };
    let rep = build_vector_rep(&rs);
    let generators: Vec<serde_json::Value> = rep
        .labels()
        .map(|label| {
            json!({
                "label": label.to_string(),
                "e": matrix_triples(rep.e(label)),
                "f": matrix_triples(rep.f(label)),
                "h": matrix_triples(rep.h(label)),
            })
        })
        .collect();
    let doc = json!({
        "m": rs.params().m(),
        "n": rs.params().n(),
        "dim": rs.dim(),
        "order": order_json(&rs),
        "generators": generators,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    EXIT_OK
}

// ---- lax build ----

fn cmd_lax_build(p: &ParamArgs, dump: Option<&str>) -> u8 {
    let rs = match parse_params(p) {
        Ok(rs) => rs,
        Err(e) => return usage_error(&e),
    };
    let rep = build_vector_rep(&rs);
    let sys = match build_lax_system(&rep) {
        Ok(sys) => sys,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    match dump {
        None => {
            let pairs = sys.table.raising_pairs().count();
            println!(
                "built sigma table ({pairs} raising + {pairs} lowering operators), R and R^T on dimension {}",
                rs.dim() * rs.dim()
            );
            EXIT_OK
        }
        Some("sigma") => {
            let entries: Vec<serde_json::Value> = sys
                .table
                .raising_pairs()
                .map(|(b, a)| {
                    json!({
                        "b": b,
                        "a": a,
                        "rule": format!("{:?}", sys.table.raising(b, a).rule),
                        "raising": matrix_triples(&sys.table.raising(b, a).matrix),
                        "lowering": matrix_triples(&sys.table.lowering(a, b).matrix),
                    })
                })
                .collect();
            let doc = json!({
                "m": rs.params().m(), "n": rs.params().n(),
                "order": order_json(&rs),
                "sigma": entries,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            EXIT_OK
        }
        Some("r") => {
            let doc = json!({
                "m": rs.params().m(), "n": rs.params().n(),
                "R": matrix_triples(&sys.pair.r),
                "RT": matrix_triples(&sys.pair.rt),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            EXIT_OK
        }
        Some("a") => match build_a(&sys.pair) {
            Ok(a) => {
                let doc = json!({
                    "m": rs.params().m(), "n": rs.params().n(),
                    "A": matrix_triples(&a),
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CHECK_FAILED
            }
        },
        Some(other) => usage_error(&format!("unknown dump target '{other}'")),
    }
}

// ---- casimir ----

fn parse_q(s: &str) -> Result<f64, String> {
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad q value '{s}'"))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad q value '{s}'"))?;
        if d == 0.0 {
            return Err("q denominator is zero".into());
        }
        Ok(n / d)
    } else {
        s.trim().parse().map_err(|_| format!("bad q value '{s}'"))
    }
}

fn cmd_casimir(p: &ParamArgs, weight: &str, lmax: usize, q: Option<&str>, format: &str) -> u8 {
    let rs = match parse_params(p) {
        Ok(rs) => rs,
        Err(e) => return usage_error(&e),
    };
    let hw = match Weight::parse(rs.params(), weight) {
        Ok(w) => w,
        Err(e) => return usage_error(&e.to_string()),
    };
    let q0 = match q.map(parse_q).transpose() {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };

    let (chi, method) = chi_table(&rs, &hw, lmax);
    let oracle = t_oracle(&rs, &build_pp_matrix(&rs, &hw), lmax);
    let method_str = match method {
        ChiMethod::ClosedForm => "closed_form",
        ChiMethod::OracleFallback => "oracle",
    };

    let render = |v: &QScalar| -> Result<String, String> {
        match q0 {
            None => Ok(v.to_string()),
            Some(q0) => v
                .eval_f64(q0)
                .map(|x| format!("{x}"))
                .map_err(|e| e.to_string()),
        }
    };

    match format {
        "csv" => {
            println!("l,chi");
            for (l, v) in chi.iter().enumerate() {
                match render(v) {
                    Ok(s) => println!("{l},\"{s}\""),
                    Err(e) => return usage_error(&e),
                }
            }
        }
        _ => {
            let mut rows = Vec::new();
            for (l, v) in chi.iter().enumerate() {
                let s = match render(v) {
                    Ok(s) => s,
                    Err(e) => return usage_error(&e),
                };
                rows.push(json!({
                    "l": l,
                    "chi": s,
                    "oracle_agrees": *v == oracle.chi[l],
                }));
            }
            let doc = json!({
                "m": rs.params().m(),
                "n": rs.params().n(),
                "weight": hw.render(rs.params()),
                "lmax": lmax,
                "q": q.unwrap_or("symbolic"),
                "method": method_str,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    EXIT_OK
}

// ---- verify ----

const ALL_CHECKS: [&str; 8] = [
    "relations",
    "ybe",
    "intertwine",
    "polyid",
    "recursion",
    "gammabeta",
    "oracle",
    "vecmodule",
];

struct CheckContext {
    rs: RootSystem,
    rep: VectorRep,
    sys: LaxSystem,
    a_mat: GradedMatrix,
    lmax: usize,
    seed: u64,
    samples: usize,
}

fn run_check(name: &str, ctx: &CheckContext) -> Report {
    match name {
        "relations" => check_defining_relations(&ctx.rep),
        "ybe" => {
            // Exact on desk-scale dimensions, numeric spot check above.
            if ctx.rs.dim() <= 6 {
                verify_yang_baxter(&ctx.sys.pair)
            } else {
                verify_yang_baxter_numeric(&ctx.sys.pair, 1.5, 1e-10)
            }
        }
        "intertwine" => verify_intertwining(&ctx.sys.pair, &ctx.rep),
        "polyid" => verify_polynomial_identity(&ctx.a_mat, &ctx.rep),
        "recursion" => verify_block_recursion(&ctx.a_mat, &ctx.rep, ctx.lmax.min(4)),
        "gammabeta" => gamma_beta_check(&ctx.rs),
        "oracle" => oracle_sweep(&ctx.rs, ctx.seed, ctx.samples, ctx.lmax.min(4)),
        "vecmodule" => {
            match qosp::eigen::chi_full_verify(&ctx.rs, &ctx.rs.vector_hw(), ctx.lmax) {
                Ok(r) => r,
                Err(e) => {
                    let mut r = Report::new("vector-module cross-paths");
                    r.push("build", false, e.to_string());
                    r
                }
            }
        }
        other => {
            let mut r = Report::new(other.to_string());
            r.push("known check", false, format!("unknown check '{other}'"));
            r
        }
    }
}

fn oracle_sweep(rs: &RootSystem, seed: u64, samples: usize, lmax: usize) -> Report {
    let mut report = Report::new(format!("closed form vs oracle (seed {seed})"));
    let weights = random_weights(rs, seed, samples);
    for hw in &weights {
        let label = hw.render(rs.params());
        if is_degenerate(rs, hw) {
            report.push(
                format!("degenerate weight {label}: oracle fallback"),
                matches!(chi_table(rs, hw, lmax).1, ChiMethod::OracleFallback),
                "",
            );
            continue;
        }
        let closed = match chi_closed_form_table(rs, hw, lmax) {
            Ok(c) => c,
            Err(e) => {
                report.push(format!("weight {label}"), false, e.to_string());
                continue;
            }
        };
        let oracle = t_oracle(rs, &build_pp_matrix(rs, hw), lmax);
        let ok = (0..=lmax).all(|l| closed[l] == oracle.chi[l]);
        report.push(format!("weight {label}: closed = oracle"), ok, "");
    }
    report
}

fn thread_cap() -> usize {
    std::env::var("QOSP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|v| v.get())
                .unwrap_or(1)
        })
}

fn cmd_verify(p: &ParamArgs, checks: &str, lmax: usize, seed: u64, samples: usize) -> u8 {
    let rs = match parse_params(p) {
        Ok(rs) => rs,
        Err(e) => return usage_error(&e),
    };
    let selected: Vec<String> = if checks.trim() == "all" {
        ALL_CHECKS.iter().map(|s| s.to_string()).collect()
    } else {
        checks.split(',').map(|s| s.trim().to_string()).collect()
    };
    for c in &selected {
        if !ALL_CHECKS.contains(&c.as_str()) {
            return usage_error(&format!(
                "unknown check '{c}' (expected subset of {})",
                ALL_CHECKS.join(",")
            ));
        }
    }

    let rep = build_vector_rep(&rs);
    let sys = match build_lax_system(&rep) {
        Ok(sys) => sys,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    let a_mat = match build_a(&sys.pair) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    let ctx = CheckContext {
        rs,
        rep,
        sys,
        a_mat,
        lmax,
        seed,
        samples,
    };

    // Run checks in parallel, capped by QOSP_THREADS; output order is the
    // selection order regardless of scheduling.
    let cap = thread_cap().max(1);
    let mut results: Vec<Option<(Report, f64)>> = (0..selected.len()).map(|_| None).collect();
    for chunk in selected.chunks(cap) {
        let offset = selected
            .iter()
            .position(|c| c == &chunk[0])
            .expect("chunk from selection");
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|name| {
                    let ctx = &ctx;
                    scope.spawn(move || {
                        let start = Instant::now();
                        let report = run_check(name, ctx);
                        (report, start.elapsed().as_secs_f64())
                    })
                })
                .collect();
            for (i, h) in handles.into_iter().enumerate() {
                results[offset + i] = Some(h.join().expect("check thread"));
            }
        });
    }

    let mut all_passed = true;
    let mut checks_json = Vec::new();
    for (name, slot) in selected.iter().zip(results) {
        let (report, seconds) = slot.expect("check ran");
        let passed = report.passed();
        all_passed &= passed;
        let failures: Vec<String> = report
            .failures()
            .map(|c| {
                if c.detail.is_empty() {
                    c.name.clone()
                } else {
                    format!("{}: {}", c.name, c.detail)
                }
            })
            .collect();
        checks_json.push(json!({
            "name": name,
            "passed": passed,
            "seconds": seconds,
            "subchecks": report.checks.len(),
            "failures": failures,
        }));
    }
    let doc = json!({
        "m": p.m,
        "n": p.n,
        "lmax": lmax,
        "seed": seed,
        "checks": checks_json,
        "passed": all_passed,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    if all_passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

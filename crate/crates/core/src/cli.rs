//! Command-line front end. [`run`] returns the exit code and the full output
//! so the binary and the tests share one code path.
//!
//! Exit codes: `0` success, `1` a verification failed, `2` bad usage or an
//! unparsable/unsupported input.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::freedim::{self, Expr, Options, Strategy};
use crate::freeword::{normalize, parse_word, Evaluator, Model};
use crate::matmodel::Harness;
use crate::ncpart::{self, NCPartition};
use crate::trigalg::PiValue;

#[derive(Parser, Debug)]
#[command(name = "freeprod", version, about = "Free products: partitions, traces, matrix models, normal forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the non-crossing partitions of {1..n}.
    NcEnum {
        #[arg(long)]
        n: usize,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Kreweras complement of a partition such as "1,4|2,3".
    NcKreweras {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the interval lemma for the Kreweras complement on NC(n).
    NcLemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exact trace of a word such as "c u c u*".
    Trace {
        #[arg(long)]
        word: String,
        /// JSON model declaring extra legs.
        #[arg(long)]
        model_file: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check freeness of a 2x2 matrix model on alternating words.
    FreeCheck {
        /// PQ, UX, PX, UQ, SUM or MAT.
        #[arg(long)]
        model: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        model_file: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a free-product expression such as "C^2 * M2(LF(3))".
    Normalize {
        #[arg(long)]
        expr: String,
        /// Print every rewrite step.
        #[arg(long)]
        steps: bool,
        #[arg(long)]
        json: bool,
        /// Use a seeded random rewrite order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Closed-form families of normal forms next to computed ones.
    Tables {
        /// Largest exponent n.
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok((code, out)) => (code, out),
        Err(f) => (f.code, format!("error: {}\n", f.msg)),
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String), Failure> {
    match cmd {
        Command::NcEnum { n, count, json } => nc_enum(n, count, json),
        Command::NcKreweras { partition, json } => nc_kreweras(&partition, json),
        Command::NcLemma { n, json } => nc_lemma(n, json),
        Command::Trace { word, model_file, json } => trace(&word, model_file.as_deref(), json),
        Command::FreeCheck { model, max_len, model_file, json } => {
            free_check(&model, max_len, model_file.as_deref(), json)
        }
        Command::Normalize { expr, steps, json, seed } => normalize_expr(&expr, steps, json, seed),
        Command::Tables { n_max, json } => tables(n_max, json),
    }
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

fn nc_enum(n: usize, count: bool, json: bool) -> Result<(i32, String), Failure> {
    let parts = ncpart::enumerate(n).map_err(usage)?;
    let out = match (count, json) {
        (true, false) => format!("{}\n", parts.len()),
        (true, true) => pretty(json!({ "n": n, "count": parts.len() })),
        (false, true) => {
            let list: Vec<String> = parts.iter().map(ToString::to_string).collect();
            pretty(json!({ "n": n, "count": parts.len(), "partitions": list }))
        }
        (false, false) => parts.iter().map(|p| format!("{p}\n")).collect(),
    };
    Ok((0, out))
}

fn nc_kreweras(text: &str, json: bool) -> Result<(i32, String), Failure> {
    let pi: NCPartition = text.parse().map_err(usage)?;
    let k = pi.kreweras();
    let n = pi.n();
    let ok = pi.num_blocks() + k.num_blocks() == n + 1;
    let out = if json {
        pretty(json!({
            "partition": pi.to_string(),
            "kreweras": k.to_string(),
            "blocks": pi.num_blocks(),
            "kreweras_blocks": k.num_blocks(),
            "n": n,
        }))
    } else {
        format!(
            "partition: {pi}\nkreweras: {k}\nblocks: {} + {} = {}\n",
            pi.num_blocks(),
            k.num_blocks(),
            pi.num_blocks() + k.num_blocks()
        )
    };
    Ok((if ok { 0 } else { 1 }, out))
}

fn nc_lemma(n: usize, json: bool) -> Result<(i32, String), Failure> {
    let r = ncpart::verify_kreweras_interval_lemma(n).map_err(usage)?;
    let out = if json {
        pretty(serde_json::to_value(&r).expect("report serializes"))
    } else {
        let mut s = format!(
            "n = {}: {} partitions with 1 ~ n, {} interval blocks: {}\n",
            r.n,
            r.partitions_checked,
            r.intervals_checked,
            if r.pass { "PASS" } else { "FAIL" }
        );
        if let Some(c) = &r.counterexample {
            let _ = writeln!(
                s,
                "counterexample: pi = {}, K(pi) = {}, interval {:?}, {} !~ {}",
                c.partition, c.kreweras, c.interval, c.k, c.successor
            );
        }
        s
    };
    Ok((if r.pass { 0 } else { 1 }, out))
}

fn load_model(path: Option<&str>) -> Result<Option<Model>, Failure> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    Model::from_json(&text).map(Some).map_err(usage)
}

fn pi_value_json(v: &PiValue) -> serde_json::Value {
    let coeffs: Vec<String> = v.coeffs().iter().map(ToString::to_string).collect();
    json!({ "exact": v.to_string(), "coefficients": coeffs, "numeric": v.eval_numeric() })
}

fn trace(word: &str, model_file: Option<&str>, json: bool) -> Result<(i32, String), Failure> {
    let model = load_model(model_file)?.unwrap_or_else(Model::standard);
    let letters = parse_word(word, &model).map_err(usage)?;
    let poly = normalize(&letters);
    let mut ev = Evaluator::new();
    let value = ev.trace_poly(&poly).map_err(usage)?;
    let out = if json {
        pretty(json!({
            "word": word,
            "normalized": poly.render(&model),
            "trace": pi_value_json(&value),
        }))
    } else {
        format!(
            "word: {word}\nnormalized: {}\ntrace: {value}\nnumeric: {:.12}\n(L = 1/pi)\n",
            poly.render(&model),
            value.eval_numeric()
        )
    };
    Ok((0, out))
}

fn free_check(
    name: &str,
    max_len: Option<usize>,
    model_file: Option<&str>,
    json: bool,
) -> Result<(i32, String), Failure> {
    let model = load_model(model_file)?.unwrap_or_else(Harness::default_finite_model);
    let harness = Harness::by_name(name, &model).map_err(usage)?;
    let len = max_len.unwrap_or(harness.default_max_len);
    let mut ev = Evaluator::new();
    let report = harness.check(len, &mut ev).map_err(usage)?;
    let code = if report.pass() { 0 } else { 1 };
    let out = if json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["pass"] = json!(report.pass());
        pretty(v)
    } else {
        let mut s = format!(
            "harness {}: {} alternating words up to length {}, {} failures: {}\n",
            report.harness,
            report.words_checked,
            report.max_len,
            report.failures.len(),
            if report.pass() { "PASS" } else { "FAIL" }
        );
        for f in report.failures.iter().take(20) {
            let _ = writeln!(s, "  {} [{}] = {}", f.word, f.entry, f.value);
        }
        s
    };
    Ok((code, out))
}

fn normalize_expr(text: &str, steps: bool, json: bool, seed: Option<u64>) -> Result<(i32, String), Failure> {
    let e: Expr = freedim::parse(text).map_err(usage)?;
    let opts = Options {
        strategy: seed.map_or(Strategy::Canonical, Strategy::Randomized),
        record_steps: steps || json,
        step_limit: None,
    };
    let out = freedim::normalize_with(&e, &opts).map_err(usage)?;
    let form = &out.form;
    let alias = form.alias().map(|a| format!("LF({a})"));
    let text = if json {
        pretty(json!({
            "input": e.to_string(),
            "normal_form": form.to_string(),
            "depth": form.depth,
            "parameter": form.parameter().map(ToString::to_string),
            "alias": alias,
            "fdim": out.input_fdim.to_string(),
            "step_count": out.step_count,
            "steps": out.steps,
        }))
    } else {
        let mut s = format!("{form}\nfdim: {}\n", out.input_fdim);
        if let Some(a) = &alias {
            let _ = writeln!(s, "alias: {a}");
        }
        if steps {
            let _ = writeln!(s, "steps: {}", out.step_count);
            for (i, st) in out.steps.iter().enumerate() {
                let path = if st.path.is_empty() { "." } else { st.path.as_str() };
                let _ = writeln!(
                    s,
                    "{:>4} {:<6} @{}: {}  =>  {}   [fdim {} = {}]  ({})",
                    i + 1,
                    st.rule,
                    path,
                    st.before,
                    st.after,
                    st.fdim_before,
                    st.fdim_after,
                    st.citation
                );
            }
        }
        s
    };
    Ok((0, text))
}

fn tables(n_max: u32, json: bool) -> Result<(i32, String), Failure> {
    if !(1..=16).contains(&n_max) {
        return Err(usage("--n-max must be in 1..=16"));
    }
    let small = n_max.min(3);
    let sections = [
        ("C^(2^n) * C^(2^n)", freedim::dyadic_sum_sequence(n_max)),
        ("C^(2^n) * C^(2^m)", freedim::mixed_dyadic_table(small.max(1) + 1)),
        ("interpolated families", freedim::interpolated_table(small, 2)),
        (
            "LF(2)^(2^n) * R^(2^n) and M(2^n)(LF(2)) * M(2^n)(R)",
            freedim::matched_power_table(&Expr::LF(crate::rational::q(2)), &Expr::R, small),
        ),
    ];
    let mut all_ok = true;
    let mut out = String::new();
    let mut js = Vec::new();
    for (title, rows) in sections {
        let rows = rows.map_err(usage)?;
        all_ok &= rows.iter().all(|r| r.matches);
        if json {
            js.push(json!({ "family": title, "rows": rows }));
            continue;
        }
        let _ = writeln!(out, "# {title}");
        for r in &rows {
            let alias = r.alias.as_deref().map(|a| format!("  alias LF({a})")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<28} {:<22} expected LF({}){}  {}",
                r.label,
                r.form,
                r.expected,
                alias,
                if r.matches { "ok" } else { "MISMATCH" }
            );
        }
    }
    if json {
        out = pretty(json!(js));
    }
    Ok((if all_ok { 0 } else { 1 }, out))
}

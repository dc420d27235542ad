//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use freeprod::freedim::{self, FdimError, NormalForm, Core};
use freeprod::freeword::{
    cumulants_to_moments, moments_to_cumulants, normalize, trace_bipartite, Evaluator, LegElement,
    SubsetFunctional, U_LEG,
};
use freeprod::matmodel::{verify_rotation, Harness};
use freeprod::ncpart::{
    catalan, enumerate, has_crossing_bruteforce, set_partitions, verify_kreweras_interval_lemma,
    NCPartition,
};
use freeprod::rational::q;
use freeprod::trigalg::PiValue;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_catalan() -> Outcome {
    for n in 1..=9 {
        let parts = enumerate(n).map_err(|e| e.to_string())?;
        ensure(parts.len() as u64 == catalan(n), || format!("|NC({n})| = {}", parts.len()))?;
        if n <= 7 {
            let brute: BTreeSet<Vec<usize>> =
                set_partitions(n).into_iter().filter(|l| !has_crossing_bruteforce(l)).collect();
            let ours: BTreeSet<Vec<usize>> = parts.iter().map(NCPartition::labels).collect();
            ensure(brute == ours, || format!("NC({n}) differs from brute force"))?;
        }
    }
    Ok("|NC(n)| = Catalan(n) for n = 1..9, brute force agrees for n <= 7".into())
}

fn c2_kreweras() -> Outcome {
    for n in 1..=8 {
        let parts = enumerate(n).map_err(|e| e.to_string())?;
        let mut images = BTreeSet::new();
        for p in &parts {
            let k = p.kreweras();
            ensure(p.num_blocks() + k.num_blocks() == n + 1, || format!("block count fails for {p}"))?;
            ensure(p.interleaves_noncrossing(&k), || format!("{p} with K = {k} crosses"))?;
            images.insert(k.to_string());
        }
        ensure(images.len() == parts.len(), || format!("K is not injective on NC({n})"))?;
        if n >= 2 {
            let r = verify_kreweras_interval_lemma(n).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("interval lemma fails at n = {n}: {:?}", r.counterexample))?;
        }
    }
    Ok("Kreweras complement: block count, bijectivity, non-crossing union, interval lemma, n <= 8".into())
}

fn c3_rotation() -> Outcome {
    for r in 1..=20 {
        let rep = verify_rotation(r);
        ensure(rep.pass, || format!("r = {r}: {:?}", rep.failures))?;
    }
    Ok("rotation identity for r = 1..20".into())
}

fn harness(h: Harness, len: usize) -> Result<usize, String> {
    let mut ev = Evaluator::new();
    let rep = h.check(len, &mut ev).map_err(|e| e.to_string())?;
    ensure(rep.pass(), || format!("{} fails: {:?}", rep.harness, &rep.failures[..rep.failures.len().min(3)]))?;
    Ok(rep.words_checked)
}

fn c4_pq() -> Outcome {
    let words = harness(Harness::pq(), 12)?;
    Ok(format!("PQ model free up to length 12 ({words} words)"))
}

fn c5_ux_px_uq() -> Outcome {
    let a = harness(Harness::ux(), 5)?;
    let b = harness(Harness::px(), 6)?;
    let c = harness(Harness::uq(), 6)?;
    Ok(format!("UX to length 5 ({a} words), PX and UQ to length 6 ({b} + {c} words)"))
}

fn c6_evaluators() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ev = Evaluator::new();
    for i in 0..200 {
        let (w, split) = common::random_admissible(&mut rng, 8);
        let a = ev.trace_poly(&normalize(&w)).map_err(|e| e.to_string())?;
        let b = trace_bipartite(&w, &split).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("word #{i}: {a} vs {b}"))?;
    }
    for n in 0..=6 {
        let m = SubsetFunctional::from_fn(n, |p| {
            if p.is_empty() {
                PiValue::one()
            } else {
                PiValue::from_coeffs(vec![common::small_q(&mut rng), common::small_q(&mut rng)])
            }
        })
        .map_err(|e| e.to_string())?;
        let k = moments_to_cumulants(&m).map_err(|e| e.to_string())?;
        ensure(cumulants_to_moments(&k).map_err(|e| e.to_string())? == m, || format!("round trip n = {n}"))?;
    }
    Ok("200 random words agree across both evaluators; moment/cumulant round trip n <= 6".into())
}

fn c7_haar() -> Outcome {
    for n in 1..=5usize {
        let w: Vec<LegElement> =
            (0..2 * n).map(|i| LegElement::haar(U_LEG, if i % 2 == 0 { 1 } else { -1 })).collect();
        let k = moments_to_cumulants(&SubsetFunctional::moments_of(&w).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let want = PiValue::rational(q(sign * catalan(n - 1) as i64));
        ensure(k.full() == &want, || format!("k_{} = {}", 2 * n, k.full()))?;
    }
    Ok("Haar unitary cumulants k_2n = (-1)^(n-1) Catalan(n-1), n <= 5".into())
}

fn c8_corpus() -> Outcome {
    let corpus = common::rewrite_corpus();
    for g in &corpus {
        let out = freedim::normalize_str(&g.input).map_err(|e| format!("{}: {e}", g.input))?;
        let want = NormalForm { depth: g.depth, core: Core::LF(g.param.clone()) };
        ensure(out.form == want, || format!("{}: got {}, want {want}", g.input, out.form))?;
        if let Some(a) = &g.alias {
            ensure(out.form.alias().as_ref() == Some(a), || format!("{}: alias", g.input))?;
        }
    }
    Ok(format!("{} golden rewrites reach their normal forms", corpus.len()))
}

fn c9_fdim() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut exprs: Vec<freedim::Expr> = common::rewrite_corpus()
        .iter()
        .map(|g| freedim::parse(&g.input).expect("corpus parses"))
        .collect();
    exprs.extend((0..1000).map(|_| common::random_fragment(&mut rng)));
    let mut steps = 0;
    for e in &exprs {
        let out = match freedim::normalize(e) {
            Ok(o) => o,
            Err(FdimError::Divergence { steps, limit }) => {
                return Err(format!("{e}: divergence guard fired ({steps} > {limit})"))
            }
            Err(err) => return Err(format!("{e}: {err}")),
        };
        for s in &out.steps {
            ensure(s.fdim_before == s.fdim_after, || format!("{e}: {} changes fdim", s.rule))?;
        }
        ensure(out.form.fdim() == e.fdim(), || format!("{e}: fdim of normal form"))?;
        steps += out.steps.len();
    }
    Ok(format!("fdim conserved over {steps} steps on {} expressions, no divergence", exprs.len()))
}

fn c10_cli() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases = common::cli_cases();
    for (stem, args, code) in &cases {
        let argv = || std::iter::once("freeprod").chain(args.iter().copied());
        let first = freeprod::cli::run(argv());
        let second = freeprod::cli::run(argv());
        ensure(first == second, || format!("{stem}: output differs between runs"))?;
        ensure(first.0 == *code, || format!("{stem}: exit code {}", first.0))?;
        let golden = std::fs::read_to_string(dir.join(format!("{stem}.txt"))).map_err(|e| e.to_string())?;
        ensure(first.1 == golden, || format!("{stem}: differs from golden file"))?;
    }
    Ok(format!("{} CLI invocations byte-identical across runs and to golden files", cases.len()))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, c1_catalan),
        (2, c2_kreweras),
        (3, c3_rotation),
        (4, c4_pq),
        (5, c5_ux_px_uq),
        (6, c6_evaluators),
        (7, c7_haar),
        (8, c8_corpus),
        (9, c9_fdim),
        (10, c10_cli),
    ];
    let mut failed = 0;
    for (i, f) in criteria {
        let start = std::time::Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {i}: PASS  {msg} [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i}: FAIL  {msg} [{secs:.2}s]");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

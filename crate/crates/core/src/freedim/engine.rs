use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ast::{compress, expand, Core, Expr, NormalForm};
use super::{parse, FdimError};
use crate::rational::{q, Q};

/// Rewrite rules. Each one preserves the isomorphism class and the free
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R6Inv,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R6Inv => "R6^-1",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
            Rule::R10 => "R10",
            Rule::R11 => "R11",
            Rule::R12 => "R12",
            Rule::R13 => "R13",
            Rule::R14 => "R14",
        }
    }

    /// The identity the rule applies.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::R1 => "(A1 (+) A2) * (B1 (+) B2) = M2(A1 * A2 * B1 * B2 * LZ)",
            Rule::R2 => "(A1 (+) A2) * LZ = M2(A1 * A2 * LF(3))",
            Rule::R3 => "M2(A) * M2(B) = M2(A * B * LF(3))",
            Rule::R4 => "(A1 (+) A2) * M2(B) = M2(A1 * A2 * B * LF(2))",
            Rule::R5 => "M2(A) * LZ = M2(A * LF(4))",
            Rule::R6 | Rule::R6Inv => "LF(t) = M2(LF(4t - 3)), t > 1",
            Rule::R7 => "LF(s) * LF(t) = LF(s + t)",
            Rule::R8 => "LF(t) * R = LF(t + 1)",
            Rule::R9 => "R = M2(R)",
            Rule::R10 => "R * (A1 (+) A2) = M2(A1 * A2 * LF(3))",
            Rule::R11 => "R * M2(B) = M2(B * LF(4))",
            Rule::R12 => "LZ = LZ (+) LZ",
            Rule::R13 => "C * A = A",
            Rule::R14 => "LZ = LF(1), LF(0) = C",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub citation: &'static str,
    /// Location of the rewritten fragment: `/`-separated segments `M2`
    /// (matrix entry), `L`/`R` (summands), `f{i}` (free factor); empty at
    /// the root.
    pub path: String,
    pub before: String,
    pub after: String,
    pub fdim_before: String,
    pub fdim_after: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fixed rule priority.
    Canonical,
    /// Random applicable pair and random sound route, seeded.
    Randomized(u64),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub strategy: Strategy,
    /// Record every step with rendered fragments and free dimensions.
    pub record_steps: bool,
    /// Defaults to [`default_step_limit`] of the input size.
    pub step_limit: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { strategy: Strategy::Canonical, record_steps: true, step_limit: None }
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub form: NormalForm,
    /// Empty unless steps were recorded.
    pub steps: Vec<RewriteStep>,
    pub step_count: usize,
    pub input_fdim: Q,
}

/// `1000 + 20·size²`.
pub fn default_step_limit(size: usize) -> usize {
    size.saturating_mul(size).saturating_mul(20).saturating_add(1000)
}

pub fn normalize(expr: &Expr) -> Result<Normalized, FdimError> {
    normalize_with(expr, &Options::default())
}

pub fn normalize_str(text: &str) -> Result<Normalized, FdimError> {
    normalize(&parse(text)?)
}

pub fn normalize_with(expr: &Expr, opts: &Options) -> Result<Normalized, FdimError> {
    let mut engine = Engine {
        rng: match opts.strategy {
            Strategy::Canonical => None,
            Strategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        record: opts.record_steps,
        steps: Vec::new(),
        count: 0,
        limit: opts.step_limit.unwrap_or_else(|| default_step_limit(expr.size())),
    };
    let reduced = engine.reduce(expr.clone(), "")?;
    let form = to_normal_form(reduced)?;
    Ok(Normalized { form, steps: engine.steps, step_count: engine.count, input_fdim: expr.fdim() })
}

fn to_normal_form(mut e: Expr) -> Result<NormalForm, FdimError> {
    let mut depth = 0;
    while let Expr::Mat2(x) = e {
        depth += 1;
        e = *x;
    }
    let core = match e {
        Expr::C => Core::C,
        Expr::R => Core::R,
        Expr::LF(t) => Core::LF(t),
        other => {
            return Err(FdimError::Unsupported {
                pos: None,
                msg: format!("`{other}` does not reduce to C, R or LF(t) up to matrix amplification"),
            })
        }
    };
    Ok(NormalForm { depth, core })
}

fn join(path: &str, seg: &str) -> String {
    if path.is_empty() {
        seg.to_string()
    } else {
        format!("{path}/{seg}")
    }
}

fn lf(n: i64) -> Expr {
    Expr::LF(q(n))
}

fn lf_param(e: &Expr) -> Option<&Q> {
    match e {
        Expr::LF(t) => Some(t),
        _ => None,
    }
}

/// Ordering used to orient a pair before matching: `R < ⊕ < M₂ < LF`.
fn rank(e: &Expr) -> u8 {
    match e {
        Expr::R => 0,
        Expr::Sum(..) => 1,
        Expr::Mat2(_) => 2,
        Expr::LF(_) => 3,
        _ => unreachable!("reduced factors are R, LF, sums and matrices"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    R8,
    R7,
    R7ViaMat,
    R10,
    R10ViaR9,
    R11,
    R11ViaR9,
    RR,
    R1,
    R4,
    R3,
    R2,
    R2ViaR12,
    R5,
    R5ViaR12,
    SumLf,
    MatLf,
    MatLfViaInv,
}

/// Priority and sound routes for an oriented pair; the first route is the
/// canonical one.
fn routes(x: &Expr, y: &Expr, nest: usize) -> (u8, Vec<Route>) {
    let t_gt1 = |e: &Expr| lf_param(e).is_some_and(|t| *t > Q::one());
    match (x, y) {
        (Expr::R, Expr::LF(_)) => (1, vec![Route::R8]),
        (Expr::LF(_), Expr::LF(_)) => {
            let mut r = vec![Route::R7];
            if nest < 2 && t_gt1(x) && t_gt1(y) {
                r.push(Route::R7ViaMat);
            }
            (2, r)
        }
        (Expr::R, Expr::Sum(..)) => (3, vec![Route::R10, Route::R10ViaR9]),
        (Expr::R, Expr::Mat2(_)) => (4, vec![Route::R11, Route::R11ViaR9]),
        (Expr::R, Expr::R) => (5, vec![Route::RR]),
        (Expr::Sum(..), Expr::Sum(..)) => (6, vec![Route::R1]),
        (Expr::Sum(..), Expr::Mat2(_)) => (7, vec![Route::R4]),
        (Expr::Mat2(_), Expr::Mat2(_)) => (8, vec![Route::R3]),
        (Expr::Sum(..), Expr::LF(t)) if t.is_one() => (9, vec![Route::R2, Route::R2ViaR12]),
        (Expr::Mat2(_), Expr::LF(t)) if t.is_one() => (10, vec![Route::R5, Route::R5ViaR12]),
        (Expr::Sum(..), Expr::LF(_)) => (11, vec![Route::SumLf]),
        (Expr::Mat2(inner), Expr::LF(_)) => {
            let mut r = vec![Route::MatLf];
            if t_gt1(inner) {
                r.push(Route::MatLfViaInv);
            }
            (12, r)
        }
        _ => unreachable!("pair not oriented"),
    }
}

fn unbox_sum(e: Expr) -> (Expr, Expr) {
    match e {
        Expr::Sum(a, b) => (*a, *b),
        _ => unreachable!("expected a direct sum"),
    }
}

fn unbox_mat(e: Expr) -> Expr {
    match e {
        Expr::Mat2(x) => *x,
        _ => unreachable!("expected a matrix amplification"),
    }
}

fn unbox_lf(e: Expr) -> Q {
    match e {
        Expr::LF(t) => t,
        _ => unreachable!("expected LF"),
    }
}

fn flatten_into(items: Vec<Expr>, out: &mut Vec<Expr>) {
    for e in items {
        match e {
            Expr::Free(v) => flatten_into(v, out),
            other => out.push(other),
        }
    }
}

struct Engine {
    rng: Option<ChaCha8Rng>,
    record: bool,
    steps: Vec<RewriteStep>,
    count: usize,
    limit: usize,
}

impl Engine {
    /// Counts a step; renders it only when recording.
    fn log(
        &mut self,
        rule: Rule,
        path: &str,
        fragments: impl FnOnce() -> (Expr, Expr),
    ) -> Result<(), FdimError> {
        self.count += 1;
        if self.count > self.limit {
            return Err(FdimError::Divergence { steps: self.count, limit: self.limit });
        }
        if self.record {
            let (before, after) = fragments();
            self.steps.push(RewriteStep {
                rule: rule.id(),
                citation: rule.citation(),
                path: path.to_string(),
                before: before.to_string(),
                after: after.to_string(),
                fdim_before: before.fdim().to_string(),
                fdim_after: after.fdim().to_string(),
            });
        }
        Ok(())
    }

    fn reduce(&mut self, e: Expr, path: &str) -> Result<Expr, FdimError> {
        match e {
            Expr::C | Expr::R => Ok(e),
            Expr::LZ => {
                self.log(Rule::R14, path, || (Expr::LZ, lf(1)))?;
                Ok(lf(1))
            }
            Expr::LF(t) if t.is_zero() => {
                self.log(Rule::R14, path, || (lf(0), Expr::C))?;
                Ok(Expr::C)
            }
            Expr::LF(_) => Ok(e),
            Expr::Mat2(x) => Ok(Expr::mat(self.reduce(*x, &join(path, "M2"))?)),
            Expr::Sum(a, b) => {
                let a = self.reduce(*a, &join(path, "L"))?;
                let b = self.reduce(*b, &join(path, "R"))?;
                Ok(Expr::sum(a, b))
            }
            Expr::Free(v) => {
                let mut flat = Vec::new();
                flatten_into(v, &mut flat);
                let mut factors = Vec::with_capacity(flat.len());
                for (i, f) in flat.into_iter().enumerate() {
                    factors.push(self.reduce(f, &join(path, &format!("f{i}")))?);
                }
                self.product(factors, path, 0)
            }
        }
    }

    /// Free product of reduced factors.
    fn product(&mut self, mut fs: Vec<Expr>, path: &str, nest: usize) -> Result<Expr, FdimError> {
        while fs.len() > 1 {
            let Some(i) = fs.iter().position(|f| *f == Expr::C) else { break };
            fs.remove(i);
            self.log(Rule::R13, path, || {
                let mut before = fs.clone();
                before.insert(i, Expr::C);
                (Expr::Free(before), Expr::free(fs.clone()))
            })?;
        }
        if fs.len() == 1 {
            return Ok(fs.pop().unwrap());
        }
        let n_r = fs.iter().filter(|f| **f == Expr::R).count();
        let target =
            u32::from(n_r >= 2 || fs.iter().any(|f| matches!(f, Expr::Sum(..) | Expr::Mat2(_))));

        while fs.len() > 1 {
            let (i, j, route) = self.choose(&fs, nest);
            let b = fs.remove(j);
            let a = fs.remove(i);
            let (x, y) = if rank(&a) <= rank(&b) { (a, b) } else { (b, a) };
            let merged = self.apply(route, x, y, path, nest)?;
            fs.insert(i, merged);
        }
        let result = fs.pop().unwrap();
        self.canonicalize(result, target, path)
    }

    fn choose(&mut self, fs: &[Expr], nest: usize) -> (usize, usize, Route) {
        let mut options = Vec::new();
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let (x, y) = if rank(&fs[i]) <= rank(&fs[j]) { (&fs[i], &fs[j]) } else { (&fs[j], &fs[i]) };
                let (prio, rs) = routes(x, y, nest);
                options.push((prio, i, j, rs));
            }
        }
        match &mut self.rng {
            None => {
                let (_, i, j, rs) = options.iter().min_by_key(|o| (o.0, o.1, o.2)).unwrap();
                (*i, *j, rs[0])
            }
            Some(rng) => {
                let (_, i, j, rs) = options.choose(rng).unwrap();
                let r = rs[rng.gen_range(0..rs.len())];
                (*i, *j, r)
            }
        }
    }

    /// The rendered left side of a pair rule, only when recording.
    fn pair(&self, x: &Expr, y: &Expr) -> Option<Expr> {
        self.record.then(|| Expr::Free(vec![x.clone(), y.clone()]))
    }

    /// Logs `x * y → M₂(inner)` and reduces the inner product.
    fn amplify(
        &mut self,
        rule: Rule,
        before: Option<Expr>,
        inner: Vec<Expr>,
        path: &str,
        nest: usize,
    ) -> Result<Expr, FdimError> {
        self.log(rule, path, || {
            (before.expect("recording"), Expr::mat(Expr::Free(inner.clone())))
        })?;
        let reduced = self.product(inner, &join(path, "M2"), nest + 1)?;
        Ok(Expr::mat(reduced))
    }

    fn r6(&mut self, t: Q, path: &str) -> Result<Expr, FdimError> {
        let out = Expr::mat(Expr::LF(expand(&t)));
        self.log(Rule::R6, path, || (Expr::LF(t.clone()), out.clone()))?;
        Ok(out)
    }

    fn r6_inv(&mut self, s: Q, path: &str) -> Result<Expr, FdimError> {
        let out = Expr::LF(compress(&s));
        self.log(Rule::R6Inv, path, || (Expr::mat(Expr::LF(s.clone())), out.clone()))?;
        Ok(out)
    }

    fn r9(&mut self, path: &str) -> Result<Expr, FdimError> {
        self.log(Rule::R9, path, || (Expr::R, Expr::mat(Expr::R)))?;
        Ok(Expr::mat(Expr::R))
    }

    fn r12(&mut self, path: &str) -> Result<Expr, FdimError> {
        let out = Expr::sum(lf(1), lf(1));
        self.log(Rule::R12, path, || (lf(1), out.clone()))?;
        Ok(out)
    }

    fn r7(&mut self, x: Expr, y: Expr, path: &str) -> Result<Expr, FdimError> {
        let out = Expr::LF(lf_param(&x).unwrap() + lf_param(&y).unwrap());
        self.log(Rule::R7, path, || (Expr::Free(vec![x.clone(), y.clone()]), out.clone()))?;
        Ok(out)
    }

    fn r1(&mut self, x: Expr, y: Expr, path: &str, nest: usize) -> Result<Expr, FdimError> {
        let before = self.pair(&x, &y);
        let ((a1, a2), (b1, b2)) = (unbox_sum(x), unbox_sum(y));
        self.amplify(Rule::R1, before, vec![a1, a2, b1, b2, lf(1)], path, nest)
    }

    fn r3(&mut self, x: Expr, y: Expr, path: &str, nest: usize) -> Result<Expr, FdimError> {
        let before = self.pair(&x, &y);
        let (a, b) = (unbox_mat(x), unbox_mat(y));
        self.amplify(Rule::R3, before, vec![a, b, lf(3)], path, nest)
    }

    fn r4(&mut self, x: Expr, y: Expr, path: &str, nest: usize) -> Result<Expr, FdimError> {
        let before = self.pair(&x, &y);
        let ((a1, a2), b) = (unbox_sum(x), unbox_mat(y));
        self.amplify(Rule::R4, before, vec![a1, a2, b, lf(2)], path, nest)
    }

    fn apply(&mut self, route: Route, x: Expr, y: Expr, path: &str, nest: usize) -> Result<Expr, FdimError> {
        match route {
            Route::R8 => {
                let out = Expr::LF(lf_param(&y).unwrap() + q(1));
                self.log(Rule::R8, path, || (Expr::Free(vec![y.clone(), x.clone()]), out.clone()))?;
                Ok(out)
            }
            Route::R7 => self.r7(x, y, path),
            Route::R7ViaMat => {
                let x = self.r6(unbox_lf(x), path)?;
                let y = self.r6(unbox_lf(y), path)?;
                self.r3(x, y, path, nest)
            }
            Route::R10 => {
                let before = self.pair(&x, &y);
                let (a1, a2) = unbox_sum(y);
                self.amplify(Rule::R10, before, vec![a1, a2, lf(3)], path, nest)
            }
            Route::R10ViaR9 => {
                let x = self.r9(path)?;
                self.r4(y, x, path, nest)
            }
            Route::R11 => {
                let before = self.pair(&x, &y);
                self.amplify(Rule::R11, before, vec![unbox_mat(y), lf(4)], path, nest)
            }
            Route::R11ViaR9 => {
                let x = self.r9(path)?;
                self.r3(x, y, path, nest)
            }
            Route::RR => {
                let y = self.r9(path)?;
                let before = self.pair(&x, &y);
                self.amplify(Rule::R11, before, vec![Expr::R, lf(4)], path, nest)
            }
            Route::R1 => self.r1(x, y, path, nest),
            Route::R4 => self.r4(x, y, path, nest),
            Route::R3 => self.r3(x, y, path, nest),
            Route::R2 => {
                let before = self.pair(&x, &y);
                let (a1, a2) = unbox_sum(x);
                self.amplify(Rule::R2, before, vec![a1, a2, lf(3)], path, nest)
            }
            Route::R2ViaR12 => {
                let y = self.r12(path)?;
                self.r1(x, y, path, nest)
            }
            Route::R5 => {
                let before = self.pair(&x, &y);
                self.amplify(Rule::R5, before, vec![unbox_mat(x), lf(4)], path, nest)
            }
            Route::R5ViaR12 => {
                let y = self.r12(path)?;
                self.r4(y, x, path, nest)
            }
            Route::SumLf => {
                let y = self.r6(unbox_lf(y), path)?;
                self.r4(x, y, path, nest)
            }
            Route::MatLf => {
                let y = self.r6(unbox_lf(y), path)?;
                self.r3(x, y, path, nest)
            }
            Route::MatLfViaInv => {
                let x = self.r6_inv(unbox_lf(unbox_mat(x)), path)?;
                self.r7(x, y, path)
            }
        }
    }

    /// Brings `M₂ᵈ(LF_t)` to depth `target` by compressing or expanding the
    /// innermost level while `t > 1`.
    fn canonicalize(&mut self, e: Expr, target: u32, path: &str) -> Result<Expr, FdimError> {
        let mut depth = 0u32;
        let mut core = e;
        while let Expr::Mat2(x) = core {
            depth += 1;
            core = *x;
        }
        let inner_path = |d: u32| (0..d).fold(path.to_string(), |p, _| join(&p, "M2"));
        loop {
            let t = match &core {
                Expr::LF(t) if *t > Q::one() => t.clone(),
                _ => break,
            };
            if depth > target {
                core = self.r6_inv(t, &inner_path(depth - 1))?;
                depth -= 1;
            } else if depth < target {
                core = unbox_mat(self.r6(t, &inner_path(depth))?);
                depth += 1;
            } else {
                break;
            }
        }
        Ok(Expr::mat_pow(core, depth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn nf(src: &str) -> NormalForm {
        normalize_str(src).unwrap().form
    }

    #[test]
    fn small_products() {
        assert_eq!(nf("C^2 * C^2").to_string(), "M2(LF(1))");
        assert_eq!(nf("R * R").to_string(), "M2(LF(5))");
        assert_eq!(nf("R * LF(3/2)").to_string(), "LF(5/2)");
        assert_eq!(nf("C^4 * C^4").alias(), Some(qf(3, 2)));
        assert_eq!(nf("M2(M2(LF(2)))").depth, 2);
    }

    #[test]
    fn steps_conserve_fdim() {
        let out = normalize_str("(LF(2) (+) C) * M2(R) * LZ * R").unwrap();
        assert!(!out.steps.is_empty());
        for s in &out.steps {
            assert_eq!(s.fdim_before, s.fdim_after, "{s:?}");
        }
        assert_eq!(out.form.fdim(), out.input_fdim);
        assert_eq!(out.step_count, out.steps.len());
    }

    #[test]
    fn top_level_sum_rejected() {
        for src in ["C^2", "M2(C^2)", "C^2 * C"] {
            assert!(matches!(normalize_str(src), Err(FdimError::Unsupported { pos: None, .. })), "{src}");
        }
    }

    #[test]
    fn step_limit() {
        let e = parse("C^4 * C^4").unwrap();
        let opts = Options { step_limit: Some(3), ..Options::default() };
        assert!(matches!(normalize_with(&e, &opts), Err(FdimError::Divergence { limit: 3, .. })));
    }

    #[test]
    fn randomized_agrees() {
        let e = parse("(LF(2) (+) C^2) * M2(LF(3)) * LZ * R * R * LF(5/2)").unwrap();
        let want = normalize(&e).unwrap().form;
        for seed in 0..50 {
            let opts = Options { strategy: Strategy::Randomized(seed), ..Options::default() };
            let got = normalize_with(&e, &opts).unwrap();
            assert_eq!(got.form, want, "seed {seed}");
            assert!(got.steps.iter().all(|s| s.fdim_before == s.fdim_after));
        }
    }
}

//! 2×2 matrices over [`NCPoly`] and the freeness harness.
//!
//! The constants live in `M₂(L∞([0,π/2]) ∗ LZ ∗ LZ)`:
//! `U = (0 u; 0 0)`, `V = (0 v; 0 0)`, `W = (c −s; s c)`, `X = WVW*`,
//! `P = UU*`, `Q = XX*`, `P₀ = P − ½`, `Q₀ = Q − ½`. The trace is
//! `Tr(b) = ½(tr b₁₁ + tr b₂₂)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::freeword::{
    Evaluator, FreeError, LegElement, LegId, LegKind, Letter, Model, NCPoly, TRIG_LEG, U_LEG,
    V_LEG,
};
use crate::rational::{half, q, qf, Q};
use crate::trigalg::{PiValue, TrigPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("generator `{0}` is not centered (Tr = {1})")]
    NotCentered(String, String),
    #[error("unknown harness `{0}`; expected PQ, UX, PX, UQ, SUM or MAT")]
    UnknownHarness(String),
    #[error("harness needs a finite leg `{0}` in the model")]
    MissingLeg(String),
    #[error(transparent)]
    Free(#[from] FreeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mat2 {
    e: [[NCPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: NCPoly, a12: NCPoly, a21: NCPoly, a22: NCPoly) -> Self {
        Mat2 { e: [[a11, a12], [a21, a22]] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(PiValue::one())
    }

    pub fn scalar(v: PiValue) -> Self {
        Self::diag(NCPoly::scalar(v.clone()), NCPoly::scalar(v))
    }

    pub fn diag(a: NCPoly, b: NCPoly) -> Self {
        Self::new(a, NCPoly::zero(), NCPoly::zero(), b)
    }

    /// Rational matrix.
    pub fn rational(a11: Q, a12: Q, a21: Q, a22: Q) -> Self {
        let s = |x: Q| NCPoly::scalar(PiValue::rational(x));
        Self::new(s(a11), s(a12), s(a21), s(a22))
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &NCPoly {
        &self.e[i - 1][j - 1]
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        self.zip(o, NCPoly::add)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        self.zip(o, NCPoly::sub)
    }

    fn zip(&self, o: &Mat2, f: impl Fn(&NCPoly, &NCPoly) -> NCPoly) -> Mat2 {
        Mat2 {
            e: [
                [f(&self.e[0][0], &o.e[0][0]), f(&self.e[0][1], &o.e[0][1])],
                [f(&self.e[1][0], &o.e[1][0]), f(&self.e[1][1], &o.e[1][1])],
            ],
        }
    }

    pub fn scale(&self, s: &Q) -> Mat2 {
        let s = PiValue::rational(s.clone());
        Mat2 { e: self.e.clone().map(|row| row.map(|x| x.scale(&s))) }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let cell = |i: usize, j: usize| {
            let a = self.e[i][0].mul(&o.e[0][j]);
            let b = self.e[i][1].mul(&o.e[1][j]);
            a.add(&b)
        };
        Mat2 { e: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }

    pub fn pow(&self, k: u32) -> Mat2 {
        (0..k).fold(Mat2::identity(), |acc, _| acc.mul(self))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.e[0][0].adjoint(),
            self.e[1][0].adjoint(),
            self.e[0][1].adjoint(),
            self.e[1][1].adjoint(),
        )
    }

    /// `Some(v)` when the matrix is `v·I`.
    pub fn as_scalar(&self) -> Option<PiValue> {
        let a = self.e[0][0].as_scalar()?;
        (self.e[0][1].is_zero() && self.e[1][0].is_zero() && self.e[1][1].as_scalar()? == a)
            .then_some(a)
    }

    /// `(tr b₁₁, tr b₂₂)`.
    pub fn diag_traces(&self, ev: &mut Evaluator) -> Result<(PiValue, PiValue), FreeError> {
        Ok((ev.trace_poly(&self.e[0][0])?, ev.trace_poly(&self.e[1][1])?))
    }

    /// `½(tr b₁₁ + tr b₂₂)`.
    pub fn tr(&self, ev: &mut Evaluator) -> Result<PiValue, FreeError> {
        let (a, b) = self.diag_traces(ev)?;
        Ok((&a + &b).scale(&half()))
    }

    /// Text rendering with leg names from `model`.
    pub fn render(&self, model: &Model) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            self.e[0][0].render(model),
            self.e[0][1].render(model),
            self.e[1][0].render(model),
            self.e[1][1].render(model)
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1])
    }
}

fn letter(l: Letter) -> NCPoly {
    NCPoly::letter(l)
}

fn trig(f: &TrigPoly) -> NCPoly {
    LegElement::trig(TRIG_LEG, f.clone()).to_ncpoly()
}

fn haar(leg: LegId, power: i64) -> NCPoly {
    letter(Letter::Haar { leg, power })
}

/// The model constants.
#[derive(Clone, Debug)]
pub struct Constants {
    pub u: Mat2,
    pub v: Mat2,
    pub w: Mat2,
    pub x: Mat2,
    pub p: Mat2,
    pub q: Mat2,
    pub p0: Mat2,
    pub q0: Mat2,
}

impl Constants {
    pub fn build() -> Self {
        let z = NCPoly::zero;
        let u = Mat2::new(z(), haar(U_LEG, 1), z(), z());
        let v = Mat2::new(z(), haar(V_LEG, 1), z(), z());
        let w = Mat2::new(
            trig(&TrigPoly::c()),
            trig(&TrigPoly::s().scale(&q(-1))),
            trig(&TrigPoly::s()),
            trig(&TrigPoly::c()),
        );
        let x = w.mul(&v).mul(&w.adjoint());
        let p = u.mul(&u.adjoint());
        let qm = x.mul(&x.adjoint());
        let h = Mat2::scalar(PiValue::rational(half()));
        let p0 = p.sub(&h);
        let q0 = qm.sub(&h);
        Constants { u, v, w, x, p, q: qm, p0, q0 }
    }

    /// `(name, matrix)` pairs in a fixed order.
    pub fn named(&self) -> Vec<(&'static str, &Mat2)> {
        vec![
            ("U", &self.u),
            ("V", &self.v),
            ("W", &self.w),
            ("X", &self.x),
            ("P", &self.p),
            ("Q", &self.q),
            ("P0", &self.p0),
            ("Q0", &self.q0),
        ]
    }
}

fn cos_sin_block(k: u32, s12: i64, s21: i64, s22: i64) -> Mat2 {
    let c = trig(&TrigPoly::cos_k(k));
    let s = trig(&TrigPoly::sin_k(k));
    let sc = |sign: i64, m: &NCPoly| m.scale(&PiValue::rational(q(sign)));
    Mat2::new(c.clone(), sc(s12, &s), sc(s21, &s), sc(s22, &c))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RotationReport {
    pub r: u32,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Checks `(2P₀·2Q₀)^r = (c_{2r} s_{2r}; −s_{2r} c_{2r})` and
/// `(2Q₀·2P₀)^r·2Q₀ = (c_{2r+2} s_{2r+2}; s_{2r+2} −c_{2r+2})`.
pub fn verify_rotation(r: u32) -> RotationReport {
    let k = Constants::build();
    let two_p0 = k.p0.scale(&q(2));
    let two_q0 = k.q0.scale(&q(2));
    let mut failures = Vec::new();
    let lhs = two_p0.mul(&two_q0).pow(r);
    if lhs != cos_sin_block(2 * r, 1, -1, 1) {
        failures.push(format!("(2P0*2Q0)^{r} = {lhs}"));
    }
    let lhs = two_q0.mul(&two_p0).pow(r).mul(&two_q0);
    if lhs != cos_sin_block(2 * r + 2, 1, 1, -1) {
        failures.push(format!("(2Q0*2P0)^{r}*2Q0 = {lhs}"));
    }
    RotationReport { r, pass: failures.is_empty(), failures }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

/// Partial-isometry relations and the projection identities between
/// `U, X, P, Q`.
pub fn verify_partial_isometries() -> Vec<IdentityCheck> {
    let k = Constants::build();
    let i = Mat2::identity();
    let zero = Mat2::zero();
    let two_p0 = k.p0.scale(&q(2));
    let two_q0 = k.q0.scale(&q(2));
    let checks: Vec<(&str, bool)> = vec![
        ("U*U + UU* = 1", k.u.adjoint().mul(&k.u).add(&k.p) == i),
        ("X*X + XX* = 1", k.x.adjoint().mul(&k.x).add(&k.q) == i),
        ("PU = U", k.p.mul(&k.u) == k.u),
        ("QX = X", k.q.mul(&k.x) == k.x),
        ("UP = 0", k.u.mul(&k.p) == zero),
        ("XQ = 0", k.x.mul(&k.q) == zero),
        ("U^2 = 0", k.u.mul(&k.u) == zero),
        ("X^2 = 0", k.x.mul(&k.x) == zero),
        ("P0^2 scalar", k.p0.mul(&k.p0).as_scalar().is_some()),
        ("Q0^2 scalar", k.q0.mul(&k.q0).as_scalar().is_some()),
        ("(2P0)^2 = 1", two_p0.mul(&two_p0) == i),
        ("(2Q0)^2 = 1", two_q0.mul(&two_q0) == i),
        ("WW* = 1", k.w.mul(&k.w.adjoint()) == i),
        ("Q = WPW*", k.w.mul(&k.p).mul(&k.w.adjoint()) == k.q),
    ];
    checks
        .into_iter()
        .map(|(name, pass)| IdentityCheck { name: name.to_string(), pass })
        .collect()
}

/// `diag(a₁, a₂)`.
pub fn embed_sum_model(a1: &LegElement, a2: &LegElement) -> Mat2 {
    Mat2::diag(a1.to_ncpoly(), a2.to_ncpoly())
}

/// `W·diag(b₁, b₂)·W*`.
pub fn embed_conjugated_sum(b1: &LegElement, b2: &LegElement) -> Mat2 {
    let w = Constants::build().w;
    w.mul(&embed_sum_model(b1, b2)).mul(&w.adjoint())
}

/// `Y*·A·Y` with `Y = diag(1, u)`.
pub fn embed_matrix_model(a: &Mat2) -> Mat2 {
    let y = Mat2::diag(NCPoly::one(), haar(U_LEG, 1));
    y.adjoint().mul(a).mul(&y)
}

/// `W·Z*·B·Z·W*` with `Z = diag(1, v)`.
pub fn embed_matrix_model_conj(b: &Mat2) -> Mat2 {
    let z = Mat2::diag(NCPoly::one(), haar(V_LEG, 1));
    let w = Constants::build().w;
    w.mul(&z.adjoint()).mul(b).mul(&z).mul(&w.adjoint())
}

/// A named generator of one side of a freeness check.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub mat: Mat2,
}

impl Generator {
    pub fn new(name: impl Into<String>, mat: Mat2) -> Self {
        Generator { name: name.into(), mat }
    }
}

/// Two spanning sets of centered elements that should be free.
#[derive(Clone, Debug)]
pub struct Harness {
    pub name: String,
    pub gen_a: Vec<Generator>,
    pub gen_b: Vec<Generator>,
    pub default_max_len: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub word: String,
    pub entry: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FreenessReport {
    pub harness: String,
    pub max_len: usize,
    pub words_checked: usize,
    pub failures: Vec<Failure>,
}

impl FreenessReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Harness {
    fn pair(
        name: &str,
        a: Vec<(&str, &Mat2)>,
        b: Vec<(&str, &Mat2)>,
        default_max_len: usize,
    ) -> Self {
        let gens = |v: Vec<(&str, &Mat2)>| v.into_iter().map(|(n, m)| Generator::new(n, m.clone())).collect();
        Harness { name: name.into(), gen_a: gens(a), gen_b: gens(b), default_max_len }
    }

    /// `{2P₀}` against `{2Q₀}`.
    pub fn pq() -> Self {
        let k = Constants::build();
        let (p, q2) = (k.p0.scale(&q(2)), k.q0.scale(&q(2)));
        Self::pair("PQ", vec![("2P0", &p)], vec![("2Q0", &q2)], 12)
    }

    /// `{U, U*, 2P₀}` against `{X, X*, 2Q₀}`.
    pub fn ux() -> Self {
        let k = Constants::build();
        let (p, q2) = (k.p0.scale(&q(2)), k.q0.scale(&q(2)));
        let (us, xs) = (k.u.adjoint(), k.x.adjoint());
        Self::pair(
            "UX",
            vec![("U", &k.u), ("U*", &us), ("2P0", &p)],
            vec![("X", &k.x), ("X*", &xs), ("2Q0", &q2)],
            5,
        )
    }

    /// `{2P₀}` against `{X, X*, 2Q₀}`.
    pub fn px() -> Self {
        let k = Constants::build();
        let (p, q2) = (k.p0.scale(&q(2)), k.q0.scale(&q(2)));
        let xs = k.x.adjoint();
        Self::pair("PX", vec![("2P0", &p)], vec![("X", &k.x), ("X*", &xs), ("2Q0", &q2)], 6)
    }

    /// `{U, U*, 2P₀}` against `{2Q₀}`.
    pub fn uq() -> Self {
        let k = Constants::build();
        let (p, q2) = (k.p0.scale(&q(2)), k.q0.scale(&q(2)));
        let us = k.u.adjoint();
        Self::pair("UQ", vec![("U", &k.u), ("U*", &us), ("2P0", &p)], vec![("2Q0", &q2)], 6)
    }

    /// `diag(A₁, A₂)` against `W·diag(B₁, B₂)·W*` for finite legs named
    /// `A1, A2, B1, B2` in `model`.
    pub fn sum(model: &Model) -> Result<Self, MatError> {
        let legs: Vec<(LegId, usize)> = ["A1", "A2", "B1", "B2"]
            .iter()
            .map(|n| finite_leg(model, n))
            .collect::<Result<_, _>>()?;
        let side = |l1: (LegId, usize), l2: (LegId, usize), n1: &str, n2: &str, conj: bool| {
            let embed = |a: &LegElement, b: &LegElement| {
                if conj {
                    embed_conjugated_sum(a, b)
                } else {
                    embed_sum_model(a, b)
                }
            };
            let mut out = Vec::new();
            for i in 0..l1.1.saturating_sub(1) {
                out.push(Generator::new(
                    format!("({n1}.e{i}-1/{},0)", l1.1),
                    embed(&centered_atom(l1, i), &LegElement::atoms(l2.0, vec![q(0); l2.1])),
                ));
            }
            for i in 0..l2.1.saturating_sub(1) {
                out.push(Generator::new(
                    format!("(0,{n2}.e{i}-1/{})", l2.1),
                    embed(&LegElement::atoms(l1.0, vec![q(0); l1.1]), &centered_atom(l2, i)),
                ));
            }
            out.push(Generator::new(
                "(1,-1)",
                embed(&LegElement::atoms(l1.0, vec![q(1); l1.1]), &LegElement::atoms(l2.0, vec![q(-1); l2.1])),
            ));
            out
        };
        Ok(Harness {
            name: "SUM".into(),
            gen_a: side(legs[0], legs[1], "A1", "A2", false),
            gen_b: side(legs[2], legs[3], "B1", "B2", true),
            default_max_len: 6,
        })
    }

    /// `Y*·M₂(A)·Y` against `W·Z*·M₂(B)·Z·W*` for finite legs `A` and `B`.
    pub fn mat(model: &Model) -> Result<Self, MatError> {
        let a = finite_leg(model, "A")?;
        let b = finite_leg(model, "B")?;
        let side = |(leg, m): (LegId, usize), name: &str, conj: bool| {
            let embed = |x: Mat2| if conj { embed_matrix_model_conj(&x) } else { embed_matrix_model(&x) };
            let one = LegElement::atoms(leg, vec![q(1); m]).to_ncpoly();
            let z = NCPoly::zero;
            let mut out = Vec::new();
            out.push(Generator::new(format!("E12.{name}1"), embed(Mat2::new(z(), one.clone(), z(), z()))));
            out.push(Generator::new(format!("E21.{name}1"), embed(Mat2::new(z(), z(), one.clone(), z()))));
            for i in 0..m.saturating_sub(1) {
                let e = atom(leg, m, i).to_ncpoly();
                let ec = centered_atom((leg, m), i).to_ncpoly();
                out.push(Generator::new(format!("E12.{name}e{i}"), embed(Mat2::new(z(), e.clone(), z(), z()))));
                out.push(Generator::new(format!("E21.{name}e{i}"), embed(Mat2::new(z(), z(), e, z()))));
                out.push(Generator::new(format!("E11.{name}e{i}°"), embed(Mat2::new(ec.clone(), z(), z(), z()))));
                out.push(Generator::new(format!("E22.{name}e{i}°"), embed(Mat2::new(z(), z(), z(), ec))));
            }
            out.push(Generator::new(format!("(E11-E22).{name}1"), embed(Mat2::diag(one.clone(), one.scale(&PiValue::rational(q(-1)))))));
            out
        };
        Ok(Harness {
            name: "MAT".into(),
            gen_a: side(a, "A", false),
            gen_b: side(b, "B", true),
            default_max_len: 4,
        })
    }

    /// Model with 2-atom finite legs `A1, A2, B1, B2, A, B` added to the
    /// standard legs.
    pub fn default_finite_model() -> Model {
        let mut m = Model::standard();
        for name in ["A1", "A2", "B1", "B2", "A", "B"] {
            m.add_finite_leg(name, 2, &[("e", vec![q(1), q(0)])]).expect("fresh leg names");
        }
        m
    }

    /// Harness by name. `SUM` and `MAT` use the finite legs of `model`.
    pub fn by_name(name: &str, model: &Model) -> Result<Self, MatError> {
        match name.to_ascii_uppercase().as_str() {
            "PQ" => Ok(Self::pq()),
            "UX" => Ok(Self::ux()),
            "PX" => Ok(Self::px()),
            "UQ" => Ok(Self::uq()),
            "SUM" => Self::sum(model),
            "MAT" => Self::mat(model),
            _ => Err(MatError::UnknownHarness(name.to_string())),
        }
    }

    pub fn check(&self, max_len: usize, ev: &mut Evaluator) -> Result<FreenessReport, MatError> {
        check_freeness(&self.name, &self.gen_a, &self.gen_b, max_len, ev)
    }
}

fn finite_leg(model: &Model, name: &str) -> Result<(LegId, usize), MatError> {
    let id = model.leg_id(name).ok_or_else(|| MatError::MissingLeg(name.into()))?;
    match &model.leg(id).kind {
        LegKind::Finite { m, .. } => Ok((id, *m)),
        _ => Err(MatError::MissingLeg(name.into())),
    }
}

fn atom(leg: LegId, m: usize, i: usize) -> LegElement {
    let mut v = vec![q(0); m];
    v[i] = q(1);
    LegElement::atoms(leg, v)
}

fn centered_atom((leg, m): (LegId, usize), i: usize) -> LegElement {
    let shift = qf(1, m as i64);
    let mut v = vec![-shift.clone(); m];
    v[i] = q(1) - shift;
    LegElement::atoms(leg, v)
}

/// Checks that every alternating product of generators (either side first,
/// lengths `1..=max_len`) has `Tr Π = 0`, and for lengths `≥ 2` the stronger
/// `tr Π₁₁ = tr Π₂₂ = 0`.
pub fn check_freeness(
    harness: &str,
    gen_a: &[Generator],
    gen_b: &[Generator],
    max_len: usize,
    ev: &mut Evaluator,
) -> Result<FreenessReport, MatError> {
    for g in gen_a.iter().chain(gen_b) {
        let t = g.mat.tr(ev)?;
        if !t.is_zero() {
            return Err(MatError::NotCentered(g.name.clone(), t.to_string()));
        }
    }
    let mut report = FreenessReport {
        harness: harness.to_string(),
        max_len,
        words_checked: 0,
        failures: Vec::new(),
    };
    let sides = [gen_a, gen_b];
    for start in 0..2 {
        let mut labels = Vec::new();
        walk(&sides, start, &Mat2::identity(), &mut labels, max_len, ev, &mut report)?;
    }
    Ok(report)
}

fn walk(
    sides: &[&[Generator]; 2],
    side: usize,
    prefix: &Mat2,
    labels: &mut Vec<String>,
    max_len: usize,
    ev: &mut Evaluator,
    report: &mut FreenessReport,
) -> Result<(), MatError> {
    if labels.len() == max_len {
        return Ok(());
    }
    for g in sides[side] {
        let m = prefix.mul(&g.mat);
        labels.push(g.name.clone());
        report.words_checked += 1;
        let (t11, t22) = m.diag_traces(ev)?;
        let tr = (&t11 + &t22).scale(&half());
        // a lone diagonal generator such as diag(1,-1) is centered but not
        // entrywise; the entrywise claim concerns products of both sides
        let checks: Vec<(&str, &PiValue)> = if labels.len() == 1 {
            vec![("Tr", &tr)]
        } else {
            vec![("11", &t11), ("22", &t22)]
        };
        for (entry, t) in checks {
            if !t.is_zero() {
                report.failures.push(Failure {
                    word: labels.join("·"),
                    entry: entry.into(),
                    value: t.to_string(),
                });
            }
        }
        walk(sides, 1 - side, &m, labels, max_len, ev, report)?;
        labels.pop();
    }
    Ok(())
}

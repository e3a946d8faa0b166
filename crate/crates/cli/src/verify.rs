//! The verification suite behind `cotoeplitz verify`.
//!
//! Each check computes a property with the engine and compares it with a
//! closed form or a brute-force recomputation. Checks run in parallel; the
//! report is sorted by check id so output does not depend on scheduling.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cotoeplitz::engine::{apply_simple, diagonal_eigenvalues};
use cotoeplitz::instances::{manin_element_product, manin_product, manin_tensor_product};
use cotoeplitz::parser::default_q;
use cotoeplitz::{
    check_coassociativity, classify_shift, compose_apply, comul_extend, gram_matrix, make_form, operator_matrix,
    project, star_extend, verify_antilinearity, BasisKey, BasisWindow, Classification, Coalgebra, CoalgebraInstance,
    Element, Form, FormSpec, GaussianRational, OperatorHandle, ProjectionPair, Rational, WeightFamily, WindowBound,
};

use crate::csv_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Scope {
    All,
    Manin,
    Divpow,
    Negdeg,
    Matrix,
}

impl Scope {
    fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Manin => "manin",
            Scope::Divpow => "divpow",
            Scope::Negdeg => "negdeg",
            Scope::Matrix => "matrix",
        }
    }

    fn covers(self, family: Scope) -> bool {
        self == Scope::All || self == family
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub check: String,
    pub coalgebra: String,
    pub form: Option<String>,
    pub parameters: String,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl Record {
    fn sort_key(&self) -> (&str, &str, &str, &str) {
        (&self.check, &self.coalgebra, self.form.as_deref().unwrap_or(""), &self.parameters)
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "check": self.check,
            "coalgebra": self.coalgebra,
            "form": self.form,
            "parameters": self.parameters,
            "status": self.status.as_str(),
            "witness": self.witness,
        });
        if timings {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scope: Scope,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// No record failed unexpectedly.
    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn record(&self, check: &str, coalgebra: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check == check && r.coalgebra == coalgebra)
    }

    fn defaults(&self) -> Value {
        json!({ "q": default_q().to_string(), "weight": "one", "seed": self.seed })
    }

    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "scope": self.scope.name(),
            "defaults": self.defaults(),
            "records": self.records.iter().map(|r| r.to_json(timings)).collect::<Vec<_>>(),
            "summary": {
                "total": self.records.len(),
                "pass": self.count(Status::Pass),
                "expected_fail": self.count(Status::ExpectedFail),
                "fail": self.count(Status::Fail),
            },
        })
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scope: {}", self.scope.name());
        let _ = writeln!(out, "defaults: q={} weight=one seed={}", default_q(), self.seed);
        let w_check = self.records.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let w_coalg = self.records.iter().map(|r| r.coalgebra.len()).max().unwrap_or(0);
        let w_form = self.records.iter().map(|r| r.form.as_deref().unwrap_or("-").len()).max().unwrap_or(0);
        for r in &self.records {
            let _ = write!(
                out,
                "{:<13}  {:<w_check$}  {:<w_coalg$}  {:<w_form$}  {}",
                r.status.as_str(),
                r.check,
                r.coalgebra,
                r.form.as_deref().unwrap_or("-"),
                r.parameters,
            );
            if timings {
                let _ = write!(out, "  ({} ms)", r.elapsed.as_millis());
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        let _ = writeln!(
            out,
            "summary: {} records, {} pass, {} expected-fail, {} fail",
            self.records.len(),
            self.count(Status::Pass),
            self.count(Status::ExpectedFail),
            self.count(Status::Fail)
        );
        out
    }

    pub fn to_csv(&self, timings: bool) -> String {
        let mut out = String::from("check,coalgebra,form,parameters,status,witness");
        if timings {
            out.push_str(",elapsed_ms");
        }
        out.push('\n');
        for r in &self.records {
            let _ = write!(
                out,
                "{},{},{},{},{},{}",
                csv_field(&r.check),
                csv_field(&r.coalgebra),
                csv_field(r.form.as_deref().unwrap_or("")),
                csv_field(&r.parameters),
                r.status.as_str(),
                csv_field(r.witness.as_deref().unwrap_or("")),
            );
            if timings {
                let _ = write!(out, ",{}", r.elapsed.as_millis());
            }
            out.push('\n');
        }
        out
    }
}

/// `Ok(None)` when the property holds, `Ok(Some(witness))` when it fails.
type Outcome = cotoeplitz::Result<Option<String>>;
type Body = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    id: &'static str,
    family: Scope,
    coalgebra: String,
    form: Option<String>,
    parameters: String,
    expect_fail: bool,
    body: Body,
}

fn check(id: &'static str, family: Scope, coalgebra: &str, form: Option<String>, parameters: &str, body: Body) -> Check {
    Check { id, family, coalgebra: coalgebra.to_string(), form, parameters: parameters.to_string(), expect_fail: false, body }
}

fn run_check(c: &Check) -> Record {
    let start = Instant::now();
    let outcome = (c.body)();
    let elapsed = start.elapsed();
    let (status, witness) = match (outcome, c.expect_fail) {
        (Ok(None), false) => (Status::Pass, None),
        (Ok(None), true) => (Status::Fail, Some("expected failure did not occur".to_string())),
        (Ok(Some(w)), false) => (Status::Fail, Some(w)),
        (Ok(Some(w)), true) => (Status::ExpectedFail, Some(w)),
        (Err(e), _) => (Status::Fail, Some(format!("{}: {e}", e.kind()))),
    };
    Record {
        check: c.id.to_string(),
        coalgebra: c.coalgebra.clone(),
        form: c.form.clone(),
        parameters: c.parameters.clone(),
        status,
        witness,
        elapsed,
    }
}

pub fn run(scope: Scope, seed: u64) -> Report {
    let checks: Vec<Check> = all_checks(seed).into_iter().filter(|c| scope.covers(c.family)).collect();
    let mut records: Vec<Record> = std::thread::scope(|s| {
        let handles: Vec<_> = checks.iter().map(|c| s.spawn(move || run_check(c))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Report { scope, seed, records }
}

fn real(r: Rational) -> GaussianRational {
    GaussianRational::real(r)
}

fn int(k: i64) -> GaussianRational {
    GaussianRational::from_integer(k)
}

fn unit(c: &CoalgebraInstance, key: BasisKey) -> Element {
    c.unit(key).expect("key from the coalgebra's own window")
}

fn mismatch(what: String, got: &Element, want: &Element) -> Option<String> {
    (got != want).then(|| format!("{what} gave {got}, expected {want}"))
}

fn manin() -> CoalgebraInstance {
    CoalgebraInstance::manin(default_q()).expect("default q is nonzero")
}

fn negdeg(m: u32) -> CoalgebraInstance {
    CoalgebraInstance::negative_degree(m).expect("valid M")
}

fn matrix(n: u32) -> CoalgebraInstance {
    CoalgebraInstance::matrix(n).expect("valid n")
}

fn geom(num: i64, den: i64) -> WeightFamily {
    WeightFamily::Geom(Rational::new(num, den).expect("nonzero denominator"))
}

fn form_for(spec: &FormSpec, c: &CoalgebraInstance) -> cotoeplitz::Result<Form> {
    make_form(spec, c)
}

fn keys(c: &CoalgebraInstance, bound: WindowBound) -> Vec<BasisKey> {
    c.basis_window(bound).expect("bounded window")
}

fn first_failure(items: impl IntoIterator<Item = Outcome>) -> Outcome {
    for o in items {
        if let Some(w) = o? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn all_checks(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    closed_forms(&mut out);
    classifications(&mut out);
    structure(&mut out);
    randomized(&mut out, seed);
    gram_checks(&mut out);
    out
}

fn closed_forms(out: &mut Vec<Check>) {
    for w in [WeightFamily::One, WeightFamily::Factorial, geom(1, 2)] {
        let spec = FormSpec::Diagonal(w.clone());
        out.push(check("closed-form", Scope::Divpow, "divpow", Some(spec.spec()), "0<=k,n<=25", Box::new(move || {
            let c = CoalgebraInstance::divided_power();
            let f = form_for(&spec, &c)?;
            first_failure((0..=25u32).flat_map(|k| (0..=25u32).map(move |n| (k, n))).map(|(k, n)| {
                let got = apply_simple(&c, &f, &unit(&c, BasisKey::Divided(k)), &unit(&c, BasisKey::Divided(n)))?;
                let want = if k <= n {
                    unit(&c, BasisKey::Divided(n - k)).scale(&real(w.eval(i64::from(k))?))
                } else {
                    Element::zero(c.context().clone())
                };
                Ok(mismatch(format!("C_x_{k}(x_{n})"), &got, &want))
            }))
        })));
    }
    for w in [WeightFamily::One, geom(1, 3), WeightFamily::AbsFactorial] {
        let spec = FormSpec::Diagonal(w.clone());
        out.push(check("closed-form", Scope::Negdeg, "negdeg?M=5", Some(spec.spec()), "|k|,|n|<=5", Box::new(move || {
            let c = negdeg(5);
            let f = form_for(&spec, &c)?;
            first_failure((-5..=5i32).flat_map(|k| (-5..=5i32).map(move |n| (k, n))).map(|(k, n)| {
                let got = apply_simple(&c, &f, &unit(&c, BasisKey::NegDeg(k)), &unit(&c, BasisKey::NegDeg(n)))?;
                let want = if (n - k).abs() <= 5 {
                    unit(&c, BasisKey::NegDeg(n - k)).scale(&real(w.eval(i64::from(k))?))
                } else {
                    Element::zero(c.context().clone())
                };
                Ok(mismatch(format!("C_x_{k}(x_{n})"), &got, &want))
            }))
        })));
    }
    for w in [WeightFamily::One, WeightFamily::Factorial, geom(1, 2)] {
        let spec = FormSpec::ManinOrthogonal(w.clone());
        let wc = w.clone();
        out.push(check("closed-form", Scope::Manin, "manin?q=2/3", Some(spec.spec()), "i+j<=8, deg<=8", Box::new(move || {
            let w = &wc;
            let c = manin();
            let f = form_for(&spec, &c)?;
            let win = keys(&c, WindowBound::MaxDegree(8));
            first_failure(win.iter().flat_map(|g| win.iter().map(move |phi| (*g, *phi))).map(|(g, phi)| {
                let (BasisKey::Manin { a: i, c: j }, BasisKey::Manin { a: k, c: l }) = (g, phi) else { unreachable!() };
                let got = apply_simple(&c, &f, &unit(&c, g), &unit(&c, phi))?;
                let want = if i == k + l && j == 0 {
                    unit(&c, phi).scale(&real(w.eval_product(&[i64::from(i), i64::from(j)])?))
                } else {
                    Element::zero(c.context().clone())
                };
                Ok(mismatch(format!("C_{g}({phi})"), &got, &want))
            }))
        })));
        let spec = FormSpec::ManinOrthogonal(w.clone());
        let wc = w.clone();
        out.push(check("eigenvalues", Scope::Manin, "manin?q=2/3", Some(spec.spec()), "symbols a^i, i<=8, deg<=8", Box::new(move || {
            let w = &wc;
            let c = manin();
            let f = form_for(&spec, &c)?;
            let win = BasisWindow::from_coalgebra(&c, WindowBound::MaxDegree(8))?;
            first_failure((0..=8u32).map(|i| {
                let h = OperatorHandle::new(&c, &f, unit(&c, BasisKey::Manin { a: i, c: 0 }))?;
                let eig = diagonal_eigenvalues(&operator_matrix(&h, &win)?)?;
                let value = real(w.eval_product(&[i64::from(i), 0])?);
                let count = i as usize + 1;
                let mut want = vec![(value, count), (int(0), win.len() - count)];
                let mut got = eig.clone();
                got.sort_by_key(|(v, _)| v.is_zero());
                want.sort_by_key(|(v, _)| v.is_zero());
                Ok((got != want).then(|| format!("C_a^{i} c^0 eigenvalues {eig:?}")))
            }))
        })));
        let spec = FormSpec::ManinOrthogonal(w.clone());
        out.push(check("zero-operator", Scope::Manin, "manin?q=2/3", Some(spec.spec()), "j>0, i+j<=8, deg<=8", Box::new(move || {
            let c = manin();
            let f = form_for(&spec, &c)?;
            let win = BasisWindow::from_coalgebra(&c, WindowBound::MaxDegree(8))?;
            first_failure(win.keys().iter().filter(|k| matches!(k, BasisKey::Manin { c: j, .. } if *j > 0)).map(|g| {
                let m = operator_matrix(&OperatorHandle::new(&c, &f, unit(&c, *g))?, &win)?;
                Ok((!m.is_zero()).then(|| format!("C_{g} is not the zero operator")))
            }))
        })));
    }
    for mu in [WeightFamily::One, WeightFamily::Poly(1)] {
        let spec = FormSpec::ManinSkew(mu.clone());
        let muc = mu.clone();
        out.push(check("closed-form", Scope::Manin, "manin?q=2/3", Some(spec.spec()), "i+j<=6, deg<=6", Box::new(move || {
            let mu = &muc;
            let c = manin();
            let f = form_for(&spec, &c)?;
            let win = keys(&c, WindowBound::MaxDegree(6));
            first_failure(win.iter().flat_map(|g| win.iter().map(move |phi| (*g, *phi))).map(|(g, phi)| {
                let (BasisKey::Manin { a: i, c: j }, BasisKey::Manin { a: k, c: l }) = (g, phi) else { unreachable!() };
                let got = apply_simple(&c, &f, &unit(&c, g), &unit(&c, phi))?;
                let (i, j, d) = (i64::from(i), i64::from(j), i64::from(k + l));
                let want = if i - j == d {
                    unit(&c, phi).scale(&real(mu.eval_product(&[i, j, d, 0])?))
                } else {
                    Element::zero(c.context().clone())
                };
                Ok(mismatch(format!("C_{g}({phi})"), &got, &want))
            }))
        })));
        let spec = FormSpec::ManinSkew(mu.clone());
        out.push(check("eigenvalues", Scope::Manin, "manin?q=2/3", Some(spec.spec()), "i+j<=6, deg<=6", Box::new(move || {
            let c = manin();
            let f = form_for(&spec, &c)?;
            let win = BasisWindow::from_coalgebra(&c, WindowBound::MaxDegree(6))?;
            first_failure(win.keys().iter().map(|g| {
                let BasisKey::Manin { a: i, c: j } = *g else { unreachable!() };
                let m = operator_matrix(&OperatorHandle::new(&c, &f, unit(&c, *g))?, &win)?;
                if i < j {
                    return Ok((!m.is_zero()).then(|| format!("C_{g} is nonzero although i < j")));
                }
                let d = i - j;
                let value = real(mu.eval_product(&[i64::from(i), i64::from(j), i64::from(d), 0])?);
                let count = d as usize + 1;
                let mut want = vec![(value, count), (int(0), win.len() - count)];
                let eig = diagonal_eigenvalues(&m)?;
                let mut got = eig.clone();
                got.sort_by_key(|(v, _)| v.is_zero());
                want.sort_by_key(|(v, _)| v.is_zero());
                Ok((got != want).then(|| format!("C_{g} eigenvalues {eig:?}")))
            }))
        })));
    }
    out.push(check("closed-form", Scope::Matrix, "matrix", Some("matrix-orth".into()), "n<=6, all r,s,i,j", Box::new(|| {
        first_failure((1..=6u32).map(|n| {
            let c = matrix(n);
            let f = form_for(&FormSpec::MatrixOrthonormal, &c)?;
            let win = keys(&c, WindowBound::Full);
            first_failure(win.iter().flat_map(|g| win.iter().map(move |phi| (*g, *phi))).map(|(g, phi)| {
                let (BasisKey::Matrix { row: r, col: s }, BasisKey::Matrix { row: i, col: j }) = (g, phi) else { unreachable!() };
                let got = apply_simple(&c, &f, &unit(&c, g), &unit(&c, phi))?;
                let want = if s == j {
                    unit(&c, BasisKey::Matrix { row: i, col: r })
                } else {
                    Element::zero(c.context().clone())
                };
                Ok(mismatch(format!("n={n}: C_{g}({phi})"), &got, &want))
            }))
        }))
    })));
    for w in [WeightFamily::One, geom(2, 1)] {
        let spec = FormSpec::MatrixWeighted(w.clone());
        out.push(check("closed-form", Scope::Matrix, "matrix", Some(spec.spec()), "n<=6, all r,s,i,j", Box::new(move || {
            first_failure((1..=6u32).map(|n| {
                let c = matrix(n);
                let f = form_for(&spec, &c)?;
                let win = keys(&c, WindowBound::Full);
                first_failure(win.iter().flat_map(|g| win.iter().map(move |phi| (*g, *phi))).map(|(g, phi)| {
                    let (BasisKey::Matrix { row: r, col: s }, BasisKey::Matrix { row: i, col: j }) = (g, phi) else { unreachable!() };
                    let got = apply_simple(&c, &f, &unit(&c, g), &unit(&c, phi))?;
                    let target = i64::from(j) + i64::from(r) - i64::from(s);
                    let want = if (1..=i64::from(n)).contains(&target) {
                        unit(&c, BasisKey::Matrix { row: i, col: target as u32 }).scale(&real(w.eval(i64::from(r + j))?))
                    } else {
                        Element::zero(c.context().clone())
                    };
                    Ok(mismatch(format!("n={n}: C_{g}({phi})"), &got, &want))
                }))
            }))
        })));
    }
}

fn expected_class(shift: i64) -> Classification {
    match shift {
        0 => Classification::Preservation,
        d if d > 0 => Classification::Creation(d as u64),
        d => Classification::Annihilation(d.unsigned_abs()),
    }
}

fn classification_mismatch(g: &BasisKey, got: &Classification, want: &Classification) -> Option<String> {
    (got != want).then(|| format!("C_{g} classified {got}, expected {want}"))
}

fn classifications(out: &mut Vec<Check>) {
    out.push(check("classification", Scope::Divpow, "divpow", Some("diag?w=factorial".into()), "0<=k<=10, deg<=12", Box::new(|| {
        let c = CoalgebraInstance::divided_power();
        let f = form_for(&FormSpec::Diagonal(WeightFamily::Factorial), &c)?;
        let win = BasisWindow::from_coalgebra(&c, WindowBound::MaxDegree(12))?;
        first_failure((0..=10u32).map(|k| {
            let g = BasisKey::Divided(k);
            let got = classify_shift(&OperatorHandle::new(&c, &f, unit(&c, g))?, &win)?;
            Ok(classification_mismatch(&g, &got, &expected_class(-i64::from(k))))
        }))
    })));
    for w in [WeightFamily::One, geom(1, 3), WeightFamily::AbsFactorial] {
        let spec = FormSpec::Diagonal(w);
        out.push(check("classification", Scope::Negdeg, "negdeg?M=5", Some(spec.spec()), "|k|<=5, full", Box::new(move || {
            let c = negdeg(5);
            let f = form_for(&spec, &c)?;
            let win = BasisWindow::from_coalgebra(&c, WindowBound::Full)?;
            first_failure((-5..=5i32).map(|k| {
                let g = BasisKey::NegDeg(k);
                let got = classify_shift(&OperatorHandle::new(&c, &f, unit(&c, g))?, &win)?;
                Ok(classification_mismatch(&g, &got, &expected_class(-i64::from(k))))
            }))
        })));
    }
    for w in [WeightFamily::One, geom(2, 1)] {
        let spec = FormSpec::MatrixWeighted(w);
        out.push(check("classification", Scope::Matrix, "matrix", Some(spec.spec()), "n<=6, all E_r_s, full", Box::new(move || {
            first_failure((1..=6u32).map(|n| {
                let c = matrix(n);
                let f = form_for(&spec, &c)?;
                let win = BasisWindow::from_coalgebra(&c, WindowBound::Full)?;
                first_failure(win.keys().iter().map(|g| {
                    let BasisKey::Matrix { row: r, col: s } = *g else { unreachable!() };
                    let got = classify_shift(&OperatorHandle::new(&c, &f, unit(&c, *g))?, &win)?;
                    Ok(classification_mismatch(g, &got, &expected_class(i64::from(r) - i64::from(s))))
                }))
            }))
        })));
    }
    out.push(check("star-duality", Scope::Negdeg, "negdeg?M=5", Some("diag?w=one".into()), "all x_k, full", Box::new(|| {
        star_duality(&negdeg(5), &FormSpec::Diagonal(WeightFamily::One))
    })));
    for spec in [FormSpec::MatrixOrthonormal, FormSpec::MatrixWeighted(WeightFamily::One)] {
        out.push(check("star-duality", Scope::Matrix, "matrix?n=4", Some(spec.spec()), "all E_r_s, full", Box::new(move || {
            star_duality(&matrix(4), &spec)
        })));
    }
}

/// `shift(C_{b*}) = −shift(C_b)` for every basis symbol with a nonzero operator.
fn star_duality(c: &CoalgebraInstance, spec: &FormSpec) -> Outcome {
    let f = form_for(spec, c)?;
    let win = BasisWindow::from_coalgebra(c, WindowBound::Full)?;
    first_failure(win.keys().iter().map(|b| {
        let g = unit(c, *b);
        let s = star_extend(c, &g)?;
        if star_extend(c, &s)? != g {
            return Ok(Some(format!("star is not an involution on {b}")));
        }
        let here = classify_shift(&OperatorHandle::new(c, &f, g)?, &win)?;
        let there = classify_shift(&OperatorHandle::new(c, &f, s.clone())?, &win)?;
        Ok(match (here.shift(), there.shift()) {
            (Some(x), Some(y)) if x == -y => None,
            _ if here == Classification::Zero => None,
            _ => Some(format!("C_{b} is {here} but C_{s} is {there}")),
        })
    }))
}

/// Words in {a, c} normal-ordered by repeated `ca → q^{-1} ac`; returns the swap count.
fn rewrite_swaps(word: &str) -> u64 {
    let mut w: Vec<u8> = word.bytes().collect();
    let mut swaps = 0;
    while let Some(p) = w.windows(2).position(|p| p == b"ca") {
        w.swap(p, p + 1);
        swaps += 1;
    }
    swaps
}

fn structure(out: &mut Vec<Check>) {
    out.push(check("coassociativity", Scope::Manin, "manin?q=2/3", None, "deg<=8", Box::new(|| {
        coassociativity(&manin(), WindowBound::MaxDegree(8))
    })));
    out.push(check("coassociativity", Scope::Divpow, "divpow", None, "n<=25", Box::new(|| {
        coassociativity(&CoalgebraInstance::divided_power(), WindowBound::MaxDegree(25))
    })));
    out.push(check("coassociativity", Scope::Matrix, "matrix", None, "n<=6, full", Box::new(|| {
        first_failure((1..=6).map(|n| coassociativity(&matrix(n), WindowBound::Full)))
    })));
    for m in 1..=3u32 {
        let mut c = check("coassociativity", Scope::Negdeg, &format!("negdeg?M={m}"), None, "full", Box::new(move || {
            coassociativity(&negdeg(m), WindowBound::Full)
        }));
        c.expect_fail = true;
        out.push(c);
    }
    out.push(check("delta-morphism", Scope::Manin, "manin?q=2/3", None, "deg u, deg v <= 5", Box::new(|| {
        let q = default_q();
        let c = manin();
        let win = keys(&c, WindowBound::MaxDegree(5));
        first_failure(win.iter().flat_map(|u| win.iter().map(move |v| (*u, *v))).map(|(u, v)| {
            let (eu, ev) = (unit(&c, u), unit(&c, v));
            let lhs = comul_extend(&c, &manin_element_product(&eu, &ev, &q)?)?;
            let rhs = manin_tensor_product(&comul_extend(&c, &eu)?, &comul_extend(&c, &ev)?, &q)?;
            Ok((lhs != rhs).then(|| format!("Δ(({u})({v})) = {lhs} but Δ({u})Δ({v}) = {rhs}")))
        }))
    })));
    out.push(check("normal-ordering", Scope::Manin, "manin?q=2/3", None, "i,j,k,l<=4", Box::new(|| {
        let q = default_q();
        let qinv = q.inverse()?;
        let quads = (0..=4u32).flat_map(|i| (0..=4u32).flat_map(move |j| (0..=4u32).flat_map(move |k| (0..=4u32).map(move |l| (i, j, k, l)))));
        first_failure(quads.map(|(i, j, k, l)| {
            let word = format!("{}{}{}{}", "a".repeat(i as usize), "c".repeat(j as usize), "a".repeat(k as usize), "c".repeat(l as usize));
            let want = qinv.pow(rewrite_swaps(&word) as i64)?;
            let (got, key) = manin_product((i, j), (k, l), &q)?;
            let ok = got == want && key == (BasisKey::Manin { a: i + k, c: j + l });
            Ok((!ok).then(|| format!("a^{i} c^{j} · a^{k} c^{l} gave {got}*{key}, rewriting gives {want}")))
        }))
    })));
    out.push(check("term-counts", Scope::Divpow, "divpow", None, "n<=25", Box::new(|| {
        let c = CoalgebraInstance::divided_power();
        first_failure((0..=25u32).map(|n| {
            let got = c.comul_key(&BasisKey::Divided(n))?.len();
            Ok((got != n as usize + 1).then(|| format!("Δx_{n} has {got} terms")))
        }))
    })));
    out.push(check("term-counts", Scope::Negdeg, "negdeg", None, "M<=5, full", Box::new(|| {
        first_failure((1..=5u32).flat_map(|m| (-(m as i32)..=m as i32).map(move |n| (m, n))).map(|(m, n)| {
            let got = negdeg(m).comul_key(&BasisKey::NegDeg(n))?.len();
            let want = (2 * m + 1 - n.unsigned_abs()) as usize;
            Ok((got != want).then(|| format!("M={m}: Δx_{n} has {got} terms, expected {want}")))
        }))
    })));
    out.push(check("term-counts", Scope::Matrix, "matrix", None, "n<=6, full", Box::new(|| {
        first_failure((1..=6u32).map(|n| {
            let c = matrix(n);
            first_failure(keys(&c, WindowBound::Full).into_iter().map(|k| {
                let got = c.comul_key(&k)?.len();
                Ok((got != n as usize).then(|| format!("n={n}: Δ{k} has {got} terms")))
            }))
        }))
    })));
    out.push(check("composition", Scope::Matrix, "matrix", Some("matrix-orth".into()), "n<=4, all r,s,u,v, full", Box::new(|| {
        first_failure((1..=4u32).map(|n| {
            let c = matrix(n);
            let f = form_for(&FormSpec::MatrixOrthonormal, &c)?;
            let win = keys(&c, WindowBound::Full);
            let handles: Vec<OperatorHandle<'_>> =
                win.iter().map(|k| OperatorHandle::new(&c, &f, unit(&c, *k))).collect::<Result<_, _>>()?;
            let mut failures = Vec::new();
            for (a, ka) in handles.iter().zip(&win) {
                for (b, kb) in handles.iter().zip(&win) {
                    let (BasisKey::Matrix { row: r, col: s }, BasisKey::Matrix { row: u, col: v }) = (*ka, *kb) else { unreachable!() };
                    let pair = [a.clone(), b.clone()];
                    for phi in &win {
                        let e = unit(&c, *phi);
                        let got = compose_apply(&pair, &e)?;
                        let want = if s == u {
                            a.with_symbol(unit(&c, BasisKey::Matrix { row: r, col: v }))?.apply(&e)?
                        } else {
                            Element::zero(c.context().clone())
                        };
                        if let Some(w) = mismatch(format!("n={n}: C_{ka}∘C_{kb} on {phi}"), &got, &want) {
                            failures.push(w);
                        }
                    }
                }
            }
            Ok(failures.into_iter().next())
        }))
    })));
    out.push(check("commutation", Scope::Divpow, "divpow", Some("diag?w=factorial".into()), "k,l,n<=12", Box::new(|| {
        let c = CoalgebraInstance::divided_power();
        let w = WeightFamily::Factorial;
        let f = form_for(&FormSpec::Diagonal(w.clone()), &c)?;
        let ops: Vec<OperatorHandle<'_>> =
            (0..=12u32).map(|k| OperatorHandle::new(&c, &f, unit(&c, BasisKey::Divided(k)))).collect::<Result<_, _>>()?;
        let triples = (0..=12u32).flat_map(|k| (0..=12u32).flat_map(move |l| (0..=12u32).map(move |n| (k, l, n))));
        first_failure(triples.map(|(k, l, n)| {
            let phi = unit(&c, BasisKey::Divided(n));
            let kl = compose_apply(&[ops[k as usize].clone(), ops[l as usize].clone()], &phi)?;
            let lk = compose_apply(&[ops[l as usize].clone(), ops[k as usize].clone()], &phi)?;
            let want = if k + l <= n {
                unit(&c, BasisKey::Divided(n - k - l)).scale(&real(w.eval(i64::from(k))? * w.eval(i64::from(l))?))
            } else {
                Element::zero(c.context().clone())
            };
            Ok(mismatch(format!("C_x_{k}∘C_x_{l} on x_{n}"), &kl, &want)
                .or_else(|| mismatch(format!("C_x_{l}∘C_x_{k} on x_{n}"), &lk, &want)))
        }))
    })));
    out.push(check("hermitian", Scope::Matrix, "matrix", Some("matrix-weighted?w=geom:2".into()), "n<=6, all basis pairs", Box::new(|| {
        first_failure((1..=6u32).map(|n| {
            let c = matrix(n);
            let f = form_for(&FormSpec::MatrixWeighted(geom(2, 1)), &c)?;
            let g = gram_matrix(&f, &BasisWindow::from_coalgebra(&c, WindowBound::Full)?);
            Ok((!g.hermitian).then(|| format!("n={n}: Gram matrix is not Hermitian")))
        }))
    })));
}

fn coassociativity(c: &CoalgebraInstance, bound: WindowBound) -> Outcome {
    let report = check_coassociativity(c, &BasisWindow::from_coalgebra(c, bound)?)?;
    Ok((!report.passed()).then(|| report.witnesses.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
}

/// Seeded fixtures for one coalgebra: the coalgebra, a form and a window.
fn fixtures() -> Vec<(Scope, CoalgebraInstance, FormSpec, WindowBound)> {
    vec![
        (Scope::Manin, manin(), FormSpec::ManinSkew(WeightFamily::Poly(1)), WindowBound::MaxDegree(4)),
        (Scope::Manin, manin(), FormSpec::ManinOrthogonal(WeightFamily::Factorial), WindowBound::MaxDegree(4)),
        (Scope::Divpow, CoalgebraInstance::divided_power(), FormSpec::Diagonal(WeightFamily::Factorial), WindowBound::MaxDegree(8)),
        (Scope::Negdeg, negdeg(3), FormSpec::Diagonal(WeightFamily::AbsFactorial), WindowBound::Full),
        (Scope::Matrix, matrix(3), FormSpec::MatrixWeighted(WeightFamily::Poly(1)), WindowBound::Full),
        (Scope::Matrix, matrix(3), FormSpec::MatrixOrthonormal, WindowBound::Full),
    ]
}

fn random_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    let mut part = || Rational::new(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10)).expect("nonzero denominator");
    GaussianRational::new(part(), part())
}

fn random_element(rng: &mut ChaCha8Rng, c: &CoalgebraInstance, keys: &[BasisKey], terms: usize) -> Element {
    let items: Vec<_> = (0..terms).map(|_| (keys[rng.gen_range(0..keys.len())], random_scalar(rng))).collect();
    Element::from_terms(c.context().clone(), items)
}

/// Distinct stream per fixture so scopes can be run separately with the same results.
fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let salt = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn randomized(out: &mut Vec<Check>, seed: u64) {
    for (family, c, spec, bound) in fixtures() {
        let params = format!("100 triples, {bound}, seed {seed}");
        let (c2, spec2) = (c.clone(), spec.clone());
        out.push(check("antilinearity", family, c.spec(), Some(spec.spec()), &params, Box::new(move || {
            let f = form_for(&spec2, &c2)?;
            let keys = keys(&c2, bound);
            let mut rng = rng_for(seed, &format!("antilinearity {} {}", c2.spec(), spec2.spec()));
            let mut probes: Vec<Element> = keys.iter().map(|k| unit(&c2, *k)).collect();
            probes.extend((0..20).map(|_| random_element(&mut rng, &c2, &keys, 3)));
            first_failure((0..100).map(|_| {
                let alpha = random_scalar(&mut rng);
                let g = random_element(&mut rng, &c2, &keys, 3);
                let h = random_element(&mut rng, &c2, &keys, 3);
                Ok(verify_antilinearity(&c2, &f, &g, &h, &alpha, &probes)?
                    .map(|ce| format!("α = {alpha}, g = {g}, h = {h}: {ce}")))
            }))
        })));
        let params = format!("20 subsets, {bound}, seed {seed}");
        let (label, form_label) = (c.spec().to_string(), spec.spec());
        out.push(check("projection", family, &label, Some(form_label), &params, Box::new(move || {
            let f = form_for(&spec, &c)?;
            let keys = keys(&c, bound);
            let mut rng = rng_for(seed, &format!("projection {} {}", c.spec(), spec.spec()));
            first_failure((0..20).map(|_| {
                let subset: Vec<BasisKey> = keys.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                let p = ProjectionPair::from_keys(subset.clone());
                let g = random_element(&mut rng, &c, &keys, 3);
                let raw = random_element(&mut rng, &c, &keys, 4);
                let phi = project(&p, &raw);
                if p.project(&p.include(&phi)?) != phi {
                    return Ok(Some(format!("Q∘j moved {phi}")));
                }
                let full = OperatorHandle::new(&c, &f, g.clone())?;
                let simple = apply_simple(&c, &f, &g, &raw)?;
                if let Some(w) = mismatch(format!("full pipeline C_({g}) on {raw}"), &full.apply(&raw)?, &simple) {
                    return Ok(Some(w));
                }
                // brute force: keep Δφ terms whose first key is in S, then pair
                let mut want = Element::zero(c.context().clone());
                for ((k1, k2), coef) in comul_extend(&c, &phi)?.iter() {
                    if subset.contains(k1) {
                        let pairing = cotoeplitz::pair_extend(&f, &g, &unit(&c, *k2))?;
                        want = want.checked_add(&unit(&c, *k1).scale(&(coef * &pairing)))?;
                    }
                }
                let got = full.with_projection(p).apply(&phi)?;
                Ok(mismatch(format!("projected C_({g}) on {phi}"), &got, &want))
            }))
        })));
    }
}

fn gram_checks(out: &mut Vec<Check>) {
    let positive: Vec<(Scope, CoalgebraInstance, FormSpec, WindowBound)> = vec![
        (Scope::Divpow, CoalgebraInstance::divided_power(), FormSpec::Diagonal(WeightFamily::One), WindowBound::MaxDegree(8)),
        (Scope::Divpow, CoalgebraInstance::divided_power(), FormSpec::Diagonal(WeightFamily::Factorial), WindowBound::MaxDegree(8)),
        (Scope::Divpow, CoalgebraInstance::divided_power(), FormSpec::Diagonal(geom(1, 2)), WindowBound::MaxDegree(8)),
        (Scope::Negdeg, negdeg(5), FormSpec::Diagonal(WeightFamily::One), WindowBound::Full),
        (Scope::Negdeg, negdeg(5), FormSpec::Diagonal(geom(1, 3)), WindowBound::Full),
        (Scope::Negdeg, negdeg(5), FormSpec::Diagonal(WeightFamily::AbsFactorial), WindowBound::Full),
        (Scope::Manin, manin(), FormSpec::ManinOrthogonal(WeightFamily::One), WindowBound::MaxDegree(4)),
        (Scope::Manin, manin(), FormSpec::ManinOrthogonal(WeightFamily::Factorial), WindowBound::MaxDegree(4)),
        (Scope::Matrix, matrix(3), FormSpec::MatrixOrthonormal, WindowBound::Full),
    ];
    for (family, c, spec, bound) in positive {
        let params = format!("{bound}, expect positive-definite");
        let label = c.spec().to_string();
        out.push(check("gram", family, &label, Some(spec.spec()), &params, Box::new(move || {
            let g = gram_matrix(&form_for(&spec, &c)?, &BasisWindow::from_coalgebra(&c, bound)?);
            Ok(match g.positive_definite() {
                Some(true) => None,
                Some(false) => Some("not positive-definite".to_string()),
                None => Some("not Hermitian".to_string()),
            })
        })));
    }
    out.push(check("gram", Scope::Manin, "manin?q=2/3", Some("manin-skew?mu=one".into()), "deg<=2, expect not positive-definite", Box::new(|| {
        let c = manin();
        let g = gram_matrix(&form_for(&FormSpec::ManinSkew(WeightFamily::One), &c)?, &BasisWindow::from_coalgebra(&c, WindowBound::MaxDegree(2))?);
        Ok(match g.positive_definite() {
            Some(false) => None,
            Some(true) => Some("unexpectedly positive-definite".to_string()),
            None => Some("not Hermitian".to_string()),
        })
    })));
}

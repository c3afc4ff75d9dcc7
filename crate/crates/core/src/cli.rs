//! Command-line front end: documents in, verification reports out.
//!
//! Every command reads its subject from `--preset NAME` (or `--family`) or
//! from one or more `--doc FILE` JSON documents:
//!
//! ```json
//! {"kind": "conjugate", "vars": {"coords": ["x", "y"], "params": ["k"]},
//!  "fields": {"a": "0", "b": "0", "c": "-k", "q": "1", "m": "0", "n": "0", "r": "0"}}
//! ```
//!
//! Kinds and their payloads:
//!
//! * `hyperbolic`: fields `a b c`; optional `gauge` (list of `[base, exponent]`)
//!   and `change` (`{"coords", "u", "v", "x_of_u", "y_of_v"}`) for `gauge`;
//! * `general`: fields `l a b p m c f q`; `asymptotic`: `b c p q`;
//!   `conjugate`: `a b c q m n r`. For `transport` a system document also
//!   carries `map` (two expressions over `target`), `target` and `gauge`;
//! * `gkz`: `blocks`, `k` and `gamma`; `plan`: `variables` (list of
//!   `[name, exponents]`) and `slice` (integers or variable names);
//! * `appell-params`: `family` and `values`;
//! * `vectors`: `p1` and `p2`, four expressions each, for `plucker`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use symexpr::{parse, PowerProduct, RatExpr, VarTable};

use crate::appell::{self, AppellParams, Family};
use crate::congruence::{self, Sign};
use crate::gkz::{self, ExponentData, GkzData, ReductionPlan, SliceValue};
use crate::hyper2::{self, HyperbolicEq, Standard};
use crate::presets;
use crate::rank4::{self, AsymptoticSystem, ConjugateSystem, GeneralSystem, System, Target};
use crate::{coord_names, log_dd, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "projsurf", version, about = "Checks for rank-4 systems of projective surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Opts {
    /// f2, f4, epd, harmonic, quadric or ruled
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Appell family (f2, f4, gauss); doubles as a preset for f2 and f4
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// +, - or both
    #[arg(long, global = true, default_value = "both", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub steps: Option<i64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Parameter assignments k=v,...; expressions for symbolic subjects,
    /// numbers for appell-check and euler-check
    #[arg(long, global = true)]
    pub params: Option<String>,
    /// Evaluation point, comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Series truncation per index for appell-check
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Also compare the transforms against the closed component formulas
    #[arg(long, global = true)]
    pub closed: bool,
    /// JSON document; may be repeated
    #[arg(long = "doc", global = true)]
    pub docs: Vec<PathBuf>,
}

impl Default for Opts {
    fn default() -> Opts {
        Opts {
            preset: None,
            family: None,
            sign: "both".into(),
            steps: None,
            tol: None,
            format: Format::Text,
            params: None,
            point: None,
            truncation: None,
            closed: false,
            docs: Vec::new(),
        }
    }
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Laplace invariants h, k of a hyperbolic equation or conjugate system
    Invariants,
    /// Gauge transform (and optional separable coordinate change) of a hyperbolic equation
    Gauge,
    /// Laplace transforms of a conjugate system
    Transform,
    /// Iterated transforms and the invariant sequence
    Sequence,
    /// Weingarten invariants of the two congruences
    Weingarten,
    /// Quadric / ruled / general, with cubic form data
    Classify,
    /// Maurer-Cartan residual of the moving frame
    Integrability,
    /// Transport a system along a map and gauge
    Transport,
    /// Derive a rank-4 system from GKZ data
    GkzDerive,
    /// Series, PDE residuals and conformal equivalence for Appell functions
    AppellCheck,
    /// Integral transform check for F2
    EulerCheck,
    /// Constraints for both focal surfaces to be quadrics
    Quadquad,
    /// Plücker coordinates and the developability form of a line
    Plucker,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::Gauge => "gauge",
            Command::Transform => "transform",
            Command::Sequence => "sequence",
            Command::Weingarten => "weingarten",
            Command::Classify => "classify",
            Command::Integrability => "integrability",
            Command::Transport => "transport",
            Command::GkzDerive => "gkz-derive",
            Command::AppellCheck => "appell-check",
            Command::EulerCheck => "euler-check",
            Command::Quadquad => "quadquad",
            Command::Plucker => "plucker",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// `expected` is `-` for recorded values that carry no expectation.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Detail {
    pub name: String,
    pub got: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub details: Vec<Detail>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.into(),
            status: Status::Pass,
            details: Vec::new(),
        }
    }

    pub fn error(command: &str, err: &str) -> Report {
        Report {
            command: command.into(),
            status: Status::Error,
            details: vec![Detail {
                name: "error".into(),
                got: err.into(),
                expected: "-".into(),
                pass: false,
            }],
        }
    }

    fn push(&mut self, name: impl Into<String>, got: impl ToString, expected: impl ToString, pass: bool) {
        self.details.push(Detail {
            name: name.into(),
            got: got.to_string(),
            expected: expected.to_string(),
            pass,
        });
        if !pass && self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    fn info(&mut self, name: impl Into<String>, got: impl ToString) {
        self.push(name, got, "-", true);
    }

    fn equal(&mut self, name: impl Into<String>, got: &RatExpr, want: &RatExpr) {
        let ok = match want.rebase(got.vars()) {
            Ok(w) => *got == w,
            Err(_) => false,
        };
        self.push(name, got, want, ok);
    }

    fn zero(&mut self, name: impl Into<String>, got: &RatExpr) {
        self.push(name, got, "0", got.is_zero());
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = format!("{}\n", report.command);
            for d in &report.details {
                let tag = if d.pass { "ok  " } else { "FAIL" };
                if d.expected == "-" {
                    let _ = writeln!(out, "  [{}] {}: {}", tag, d.name, d.got);
                } else {
                    let _ = writeln!(out, "  [{}] {}: got {}; expected {}", tag, d.name, d.got, d.expected);
                }
            }
            match report.status {
                Status::Pass => out.push_str("PASS\n"),
                Status::Fail => {
                    let first = report.details.iter().find(|d| !d.pass).map(|d| d.name.as_str()).unwrap_or("?");
                    let _ = writeln!(out, "FAIL: {}", first);
                }
                Status::Error => {
                    let msg = report.details.first().map(|d| d.got.as_str()).unwrap_or("");
                    let _ = writeln!(out, "ERROR: {}", msg);
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------- documents

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VarsDoc {
    #[serde(default = "default_coords")]
    pub coords: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
}

fn default_coords() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

impl Default for VarsDoc {
    fn default() -> VarsDoc {
        VarsDoc {
            coords: default_coords(),
            params: Vec::new(),
        }
    }
}

impl VarsDoc {
    fn table(&self) -> Result<Arc<VarTable>> {
        Ok(VarTable::new(&self.coords, &self.params)?)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ChangeDoc {
    pub coords: Vec<String>,
    pub u: String,
    pub v: String,
    pub x_of_u: String,
    pub y_of_v: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum SliceDoc {
    Int(i64),
    Name(String),
}

#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub kind: String,
    #[serde(default)]
    pub vars: VarsDoc,
    #[serde(default)]
    pub fields: BTreeMap<String, String>,
    #[serde(default)]
    pub gauge: Vec<(String, String)>,
    #[serde(default)]
    pub change: Option<ChangeDoc>,
    #[serde(default)]
    pub map: Vec<String>,
    #[serde(default)]
    pub target: Option<VarsDoc>,
    #[serde(default)]
    pub target_kind: Option<String>,
    #[serde(default)]
    pub blocks: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub gamma: Vec<String>,
    #[serde(default)]
    pub variables: Vec<(String, Vec<i64>)>,
    #[serde(default)]
    pub slice: Vec<SliceDoc>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub values: BTreeMap<String, f64>,
    #[serde(default)]
    pub p1: Vec<String>,
    #[serde(default)]
    pub p2: Vec<String>,
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed document: {}", e)))
    }

    fn field(&self, name: &str, v: &Arc<VarTable>) -> Result<RatExpr> {
        let text = self
            .fields
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("{} document lacks field '{}'", self.kind, name)))?;
        Ok(parse(text, v)?)
    }

    fn power_product(&self, v: &Arc<VarTable>) -> Result<PowerProduct> {
        let mut g = PowerProduct::one(v);
        for (base, exp) in &self.gauge {
            g = g.times(parse(base, v)?, parse(exp, v)?)?;
        }
        Ok(g)
    }

    fn hyperbolic(&self) -> Result<HyperbolicEq> {
        let v = self.vars.table()?;
        HyperbolicEq::new(self.field("a", &v)?, self.field("b", &v)?, self.field("c", &v)?)
    }

    fn system(&self) -> Result<System> {
        let v = self.vars.table()?;
        let f = |n: &str| self.field(n, &v);
        let sys = match self.kind.as_str() {
            "general" => System::General(GeneralSystem {
                l: f("l")?,
                a: f("a")?,
                b: f("b")?,
                p: f("p")?,
                m: f("m")?,
                c: f("c")?,
                f: f("f")?,
                q: f("q")?,
            }),
            "asymptotic" => System::Asymptotic(AsymptoticSystem {
                b: f("b")?,
                c: f("c")?,
                p: f("p")?,
                q: f("q")?,
            }),
            "conjugate" => System::Conjugate(ConjugateSystem {
                a: f("a")?,
                b: f("b")?,
                c: f("c")?,
                q: f("q")?,
                m: f("m")?,
                n: f("n")?,
                r: f("r")?,
            }),
            other => return Err(Error::Invalid(format!("'{}' document is not a system", other))),
        };
        Ok(sys)
    }
}

// ---------------------------------------------------------------- subjects

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Preset {
    F2,
    F4,
    Epd,
    Harmonic,
    Quadric,
    Ruled,
}

fn preset(opts: &Opts) -> Result<Option<Preset>> {
    let name = match (&opts.preset, &opts.family) {
        (Some(p), _) => p,
        (None, Some(f)) => f,
        (None, None) => return Ok(None),
    };
    Ok(Some(match name.to_ascii_lowercase().as_str() {
        "f2" => Preset::F2,
        "f4" => Preset::F4,
        "epd" => Preset::Epd,
        "harmonic" => Preset::Harmonic,
        "quadric" => Preset::Quadric,
        "ruled" => Preset::Ruled,
        other => return Err(Error::Invalid(format!("unknown preset '{}'", other))),
    }))
}

enum Subject {
    Hyper(HyperbolicEq),
    Sys(System),
}

fn epd_table() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &["beta", "betap", "lambda"]).unwrap()
}

fn harmonic_table() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &["alpha", "beta"]).unwrap()
}

fn preset_subject(p: Preset) -> Result<Subject> {
    Ok(match p {
        Preset::F2 => Subject::Sys(System::Conjugate(appell::conjugate_form(
            Family::F2,
            &presets::f2_xy(),
            &presets::f2_st(),
        )?)),
        Preset::F4 => Subject::Sys(System::Conjugate(appell::conjugate_form(
            Family::F4,
            &presets::f4_xy(),
            &presets::f4_st(),
        )?)),
        Preset::Epd => {
            let v = epd_table();
            Subject::Hyper(hyper2::standard_equation(
                &Standard::Epd {
                    beta: parse("beta", &v)?,
                    beta_prime: parse("betap", &v)?,
                },
                &v,
            )?)
        }
        Preset::Harmonic => {
            let v = harmonic_table();
            Subject::Hyper(hyper2::standard_equation(
                &Standard::Harmonic {
                    alpha: parse("alpha", &v)?,
                    beta: parse("beta", &v)?,
                },
                &v,
            )?)
        }
        Preset::Quadric => Subject::Sys(System::Asymptotic(presets::quadric_asymptotic())),
        Preset::Ruled => Subject::Sys(System::Asymptotic(presets::ruled())),
    })
}

/// Symbolic parameter assignments from `--params`.
fn symbolic_params(opts: &Opts, v: &Arc<VarTable>) -> Result<HashMap<String, RatExpr>> {
    let mut out = HashMap::new();
    for (k, val) in assignments(opts)? {
        if !v.params().iter().any(|p| *p == k) {
            return Err(Error::Invalid(format!("'{}' is not a parameter of the subject", k)));
        }
        out.insert(k, parse(&val, v)?);
    }
    Ok(out)
}

fn assignments(opts: &Opts) -> Result<Vec<(String, String)>> {
    let Some(text) = &opts.params else {
        return Ok(Vec::new());
    };
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| match kv.split_once('=') {
            Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
            None => Err(Error::Invalid(format!("expected k=v, found '{}'", kv))),
        })
        .collect()
}

struct Subst(HashMap<String, RatExpr>);

impl Subst {
    fn apply(&self, e: &RatExpr) -> Result<RatExpr> {
        if self.0.is_empty() {
            return Ok(e.clone());
        }
        let v = self.0.values().next().unwrap().vars().clone();
        Ok(e.rebase(&v)?.substitute(&self.0, &v)?)
    }

    fn active(&self) -> bool {
        !self.0.is_empty()
    }

    fn system(&self, s: &System) -> Result<System> {
        Ok(match s {
            System::Conjugate(c) => System::Conjugate(c.map(|e| self.apply(e))?),
            System::General(g) => System::General(GeneralSystem {
                l: self.apply(&g.l)?,
                a: self.apply(&g.a)?,
                b: self.apply(&g.b)?,
                p: self.apply(&g.p)?,
                m: self.apply(&g.m)?,
                c: self.apply(&g.c)?,
                f: self.apply(&g.f)?,
                q: self.apply(&g.q)?,
            }),
            System::Asymptotic(a) => System::Asymptotic(AsymptoticSystem {
                b: self.apply(&a.b)?,
                c: self.apply(&a.c)?,
                p: self.apply(&a.p)?,
                q: self.apply(&a.q)?,
            }),
        })
    }

    fn hyper(&self, h: &HyperbolicEq) -> Result<HyperbolicEq> {
        HyperbolicEq::new(self.apply(&h.a)?, self.apply(&h.b)?, self.apply(&h.c)?)
    }
}

/// The subject of a symbolic command plus the preset it came from.
fn load(opts: &Opts, docs: &[Document]) -> Result<(Option<Preset>, Subject, Subst)> {
    let (p, subj) = match (preset(opts)?, docs.first()) {
        (Some(p), _) => (Some(p), preset_subject(p)?),
        (None, Some(d)) => (
            None,
            match d.kind.as_str() {
                "hyperbolic" => Subject::Hyper(d.hyperbolic()?),
                _ => Subject::Sys(d.system()?),
            },
        ),
        (None, None) => return Err(Error::Invalid("no --preset and no --doc given".into())),
    };
    let vars = match &subj {
        Subject::Hyper(h) => h.vars().clone(),
        Subject::Sys(s) => s.vars().clone(),
    };
    let sub = Subst(symbolic_params(opts, &vars)?);
    let subj = match subj {
        Subject::Hyper(h) => Subject::Hyper(sub.hyper(&h)?),
        Subject::Sys(s) => Subject::Sys(sub.system(&s)?),
    };
    Ok((p, subj, sub))
}

fn conjugate(subj: Subject) -> Result<ConjugateSystem> {
    match subj {
        Subject::Sys(System::Conjugate(c)) => Ok(c),
        _ => Err(Error::Invalid("this command needs a conjugate system".into())),
    }
}

fn signs(opts: &Opts) -> Result<Vec<Sign>> {
    match opts.sign.as_str() {
        "both" => Ok(vec![Sign::Plus, Sign::Minus]),
        s => Ok(vec![s.parse()?]),
    }
}

fn expr(text: &str, v: &Arc<VarTable>, sub: &Subst) -> Result<RatExpr> {
    sub.apply(&parse(text, v)?)
}

// ---------------------------------------------------------------- commands

pub fn dispatch(cmd: Command, opts: &Opts, docs: &[Document]) -> Result<Report> {
    let mut r = Report::new(cmd.name());
    match cmd {
        Command::Invariants => invariants(&mut r, opts, docs)?,
        Command::Gauge => gauge(&mut r, opts, docs)?,
        Command::Transform => transform(&mut r, opts, docs)?,
        Command::Sequence => sequence(&mut r, opts, docs)?,
        Command::Weingarten => weingarten(&mut r, opts, docs)?,
        Command::Classify => classify(&mut r, opts, docs)?,
        Command::Integrability => integrability(&mut r, opts, docs)?,
        Command::Transport => transport(&mut r, opts, docs)?,
        Command::GkzDerive => gkz_derive(&mut r, opts, docs)?,
        Command::AppellCheck => appell_check(&mut r, opts, docs)?,
        Command::EulerCheck => euler_check(&mut r, opts, docs)?,
        Command::Quadquad => quadquad(&mut r, opts, docs)?,
        Command::Plucker => plucker(&mut r, opts, docs)?,
    }
    Ok(r)
}

fn hyperbolic_part(subj: &Subject) -> Result<HyperbolicEq> {
    match subj {
        Subject::Hyper(h) => Ok(h.clone()),
        Subject::Sys(System::Conjugate(c)) => Ok(c.hyperbolic()),
        Subject::Sys(_) => Err(Error::Invalid("this command needs a hyperbolic equation or conjugate system".into())),
    }
}

/// Reference invariants for the presets that have them.
fn expected_invariants(p: Option<Preset>, v: &Arc<VarTable>, sub: &Subst) -> Result<Option<(RatExpr, RatExpr)>> {
    Ok(match p {
        Some(Preset::F2) => Some((
            expr("beta2*(beta2 - gamma2 + 1)/(s - t)^2", v, sub)?,
            expr("(beta2 - 1)*(beta2 - gamma2)/(s - t)^2", v, sub)?,
        )),
        Some(Preset::F4) => {
            let eq = hyper2::standard_equation(
                &Standard::Harmonic {
                    alpha: parse("gamma2 - 1/2", v)?,
                    beta: parse("alpha - beta + 1/2", v)?,
                },
                v,
            )?;
            let inv = hyper2::laplace_invariants(&eq);
            Some((sub.apply(&inv.h)?, sub.apply(&inv.k)?))
        }
        Some(Preset::Epd) => Some((
            expr("betap*(beta + 1)/(x - y)^2", v, sub)?,
            expr("beta*(betap - 1)/(x - y)^2", v, sub)?,
        )),
        Some(Preset::Harmonic) => {
            let c = expr("alpha*(alpha - 1)/(x - y)^2 - beta*(beta - 1)/(x + y)^2", v, sub)?;
            Some((-&c, -&c))
        }
        _ => None,
    })
}

fn invariants(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, sub) = load(opts, docs)?;
    let eq = hyperbolic_part(&subj)?;
    let inv = hyper2::laplace_invariants(&eq);
    match expected_invariants(p, eq.vars(), &sub)? {
        Some((h, k)) => {
            r.equal("h", &inv.h, &h);
            r.equal("k", &inv.k, &k);
        }
        None => {
            r.info("h", &inv.h);
            r.info("k", &inv.k);
        }
    }
    Ok(())
}

fn gauge(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, _) = load(opts, docs)?;
    let eq = hyperbolic_part(&subj)?;
    let v = eq.vars().clone();
    let (x, y) = coord_names(&v)?;
    let doc = docs.first().filter(|_| p.is_none());
    let f = match (p, doc) {
        (Some(Preset::Epd), _) => PowerProduct::one(&v).times(parse("x - y", &v)?, parse("lambda", &v)?)?,
        (_, Some(d)) if !d.gauge.is_empty() => d.power_product(&v)?,
        _ => PowerProduct::one(&v).times(parse(&format!("{} - {}", x, y), &v)?, RatExpr::int(&v, 3))?,
    };
    let out = hyper2::gauge_transform(&eq, &f)?;
    let before = hyper2::laplace_invariants(&eq);
    let after = hyper2::laplace_invariants(&out);
    if p == Some(Preset::Epd) {
        r.equal("a", &out.a, &(&eq.a - &parse("lambda/(x - y)", &v)?));
        r.equal("b", &out.b, &(&eq.b + &parse("lambda/(x - y)", &v)?));
    } else {
        r.info("a", &out.a);
        r.info("b", &out.b);
    }
    r.info("c", &out.c);
    r.equal("h unchanged", &after.h, &before.h);
    r.equal("k unchanged", &after.k, &before.k);
    if let Some(ch) = doc.and_then(|d| d.change.as_ref()) {
        let vars = VarsDoc {
            coords: ch.coords.clone(),
            params: v.params().to_vec(),
        }
        .table()?;
        let (u_x, v_y) = (parse(&ch.u, &v)?, parse(&ch.v, &v)?);
        let (x_u, y_v) = (parse(&ch.x_of_u, &vars)?, parse(&ch.y_of_v, &vars)?);
        let moved = hyper2::coordinate_change(&eq, &u_x, &v_y, &x_u, &y_v)?;
        let back: HashMap<String, RatExpr> = [(x.clone(), x_u.clone()), (y.clone(), y_v.clone())].into();
        let jac = &u_x.diff(&x)? * &v_y.diff(&y)?;
        let want_h = (&before.h / &jac).substitute(&back, &vars)?;
        let want_k = (&before.k / &jac).substitute(&back, &vars)?;
        let inv = hyper2::laplace_invariants(&moved);
        r.info("changed a", &moved.a);
        r.info("changed b", &moved.b);
        r.info("changed c", &moved.c);
        r.equal("changed h", &inv.h, &want_h);
        r.equal("changed k", &inv.k, &want_k);
    }
    Ok(())
}

fn check_integrable(r: &mut Report, name: &str, sys: &System) -> Result<()> {
    let mc = rank4::maurer_cartan_residual(&rank4::connection_form(sys)?)?;
    let bad = mc.iter().flatten().filter(|e| !e.is_zero()).count();
    r.push(name, format!("{} nonzero entries", bad), "0 nonzero entries", bad == 0);
    Ok(())
}

fn transform(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (_, subj, _) = load(opts, docs)?;
    let sys = conjugate(subj)?;
    let (x, y) = coord_names(sys.vars())?;
    let inv = congruence::invariants(&sys)?;
    let two = RatExpr::int(sys.vars(), 2);
    for sign in signs(opts)? {
        let rep = congruence::transform(&sys, sign)?;
        for (n, e) in rep.output.fields() {
            r.info(format!("{} {}", sign, n), e);
        }
        check_integrable(r, &format!("{} integrable", sign), &System::Conjugate(rep.output.clone()))?;
        let out = congruence::invariants(&rep.output)?;
        match sign {
            Sign::Plus => {
                r.equal("+ k(out) = h", &out.1, &inv.0);
                let want = &two * &inv.0 - &inv.1 - log_dd(&inv.0, &x, &y)?;
                r.equal("+ h(out) = 2h - k - (log h)_xy", &out.0, &want);
            }
            Sign::Minus => {
                r.equal("- h(out) = k", &out.0, &inv.1);
                let want = &two * &inv.1 - &inv.0 - log_dd(&inv.1, &x, &y)?;
                r.equal("- k(out) = 2k - h - (log k)_xy", &out.1, &want);
            }
        }
        if opts.closed {
            let closed = match sign {
                Sign::Plus => congruence::positive_transform_closed(&sys)?,
                Sign::Minus => congruence::negative_transform_closed(&sys)?,
            };
            let amended = match sign {
                Sign::Plus => congruence::positive_transform_amended(&sys)?,
                Sign::Minus => congruence::negative_transform_amended(&sys)?,
            };
            for ((n, e), (_, c)) in rep.output.fields().iter().zip(closed.fields().iter()) {
                r.equal(format!("{} closed formula {}", sign, n), c, e);
            }
            for ((n, e), (_, c)) in rep.output.fields().iter().zip(amended.fields().iter()) {
                r.equal(format!("{} amended formula {}", sign, n), c, e);
            }
        }
    }
    Ok(())
}

fn sequence(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, sub) = load(opts, docs)?;
    let steps = opts.steps.unwrap_or(3);
    let eq = hyperbolic_part(&subj)?;
    let (lo, hi) = if steps >= 0 { (0, steps) } else { (steps, 0) };
    let seq = hyper2::higher_invariants(&eq, lo, hi)?;
    for (n, pair) in &seq {
        r.info(format!("h_{}", n), &pair.h);
        r.info(format!("k_{}", n), &pair.k);
    }
    for w in seq.windows(2) {
        r.equal(format!("k_{} = h_{}", w[1].0, w[0].0), &w[1].1.k, &w[0].1.h);
    }
    if p == Some(Preset::F2) {
        let st = eq.vars().clone();
        for (n, pair) in &seq {
            let closed = appell::f2_closed_invariants(&presets::f2_st(), n + 1)?;
            r.equal(format!("h_{} closed (index {})", n, n + 1), &pair.h, &sub.apply(&closed.pair.h.rebase(&st)?)?);
            r.equal(format!("k_{} closed (index {})", n, n + 1), &pair.k, &sub.apply(&closed.pair.k.rebase(&st)?)?);
        }
    }
    if let Subject::Sys(System::Conjugate(c)) = &subj {
        let reps = congruence::transform_sequence(c, steps)?;
        for (i, rep) in reps.iter().enumerate() {
            let n = if steps >= 0 { i as i64 + 1 } else { -(i as i64) - 1 };
            let (h, k) = congruence::invariants(&rep.output)?;
            let (_, want) = seq.iter().find(|(m, _)| *m == n).expect("index in window");
            r.equal(format!("system step {} h", n), &h, &want.h);
            r.equal(format!("system step {} k", n), &k, &want.k);
        }
    }
    Ok(())
}

fn weingarten(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (_, subj, _) = load(opts, docs)?;
    let sys = conjugate(subj)?;
    for sign in signs(opts)? {
        let w = congruence::weingarten(&sys, sign)?;
        r.zero(format!("W{}", sign), &w);
        r.info(format!("{} fundamental forms proportional", sign), congruence::conformal_match(&sys, sign)?);
    }
    Ok(())
}

fn classify(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, sub) = load(opts, docs)?;
    let Subject::Sys(sys) = subj else {
        return Err(Error::Invalid("classify needs a system".into()));
    };
    let ff = rank4::fundamental_form(&sys);
    r.info("h_xx", &ff[0]);
    r.info("h_xy", &ff[1]);
    r.info("h_yy", &ff[2]);
    match &sys {
        System::Conjugate(c) => {
            let cd = rank4::cubic_invariants(c)?;
            r.info("A", &cd.a);
            r.info("B", &cd.b);
            r.info("Fubini (rational part, times q^1/2)", &cd.fubini_rat);
        }
        System::Asymptotic(a) => {
            let inv = rank4::asymptotic_invariants(a);
            r.info("Phi_xxx", &inv.phi_xxx);
            r.info("Phi_yyy", &inv.phi_yyy);
            r.info("phi", &inv.metric);
        }
        System::General(_) => {}
    }
    let class = rank4::classify(&sys)?;
    let expected = match p {
        Some(Preset::Quadric) => Some("quadric"),
        Some(Preset::Ruled) => Some("ruled"),
        Some(Preset::F2 | Preset::F4) if !sub.active() => Some("general"),
        _ => None,
    };
    match expected {
        Some(want) => r.push("class", class, want, class.to_string() == want),
        None => r.info("class", class),
    }
    Ok(())
}

fn integrability(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, sub) = load(opts, docs)?;
    let family = match p {
        Some(Preset::F2) => Some((Family::F2, presets::f2_xy())),
        Some(Preset::F4) => Some((Family::F4, presets::f4_xy())),
        _ => None,
    };
    if let Some((fam, xy)) = family {
        let sys = sub.system(&System::General(appell::system(fam, &xy)?))?;
        check_integrable(r, "system", &sys)?;
    }
    match subj {
        Subject::Sys(s) => check_integrable(r, s.kind(), &s)?,
        Subject::Hyper(_) => return Err(Error::Invalid("integrability needs a system".into())),
    }
    Ok(())
}

fn transport(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let p = preset(opts)?;
    match p {
        Some(pr @ (Preset::F2 | Preset::F4)) => {
            let (fam, xy, st) = match pr {
                Preset::F2 => (Family::F2, presets::f2_xy(), presets::f2_st()),
                _ => (Family::F4, presets::f4_xy(), presets::f4_st()),
            };
            let sub = Subst(symbolic_params(opts, &st)?);
            let c = appell::conjugate_form(fam, &xy, &st)?.map(|e| sub.apply(e))?;
            let want: Vec<(&str, &str)> = match fam {
                Family::F2 => vec![
                    ("a", "-(1 - gamma2 + beta2)/(s - t)"),
                    ("b", "-(beta2 - 1)/(s - t)"),
                    ("c", "0"),
                    ("q", "(s - 1)*s/((t - 1)*t)"),
                ],
                _ => vec![
                    ("a", "0"),
                    ("b", "0"),
                    ("c", "(gamma2 - 1/2)*(gamma2 - 3/2)/(s - t)^2 - (alpha - beta + 1/2)*(alpha - beta - 1/2)/(s + t)^2"),
                ],
            };
            for (n, e) in c.fields() {
                match want.iter().find(|(m, _)| *m == n) {
                    Some((_, text)) => r.equal(n, e, &expr(text, &st, &sub)?),
                    None => r.info(n, e),
                }
            }
        }
        Some(_) => return Err(Error::Invalid("transport presets are f2 and f4".into())),
        None => {
            let d = docs.first().ok_or_else(|| Error::Invalid("no --preset and no --doc given".into()))?;
            let sys = d.system()?;
            let target = d
                .target
                .as_ref()
                .ok_or_else(|| Error::Invalid("transport document lacks 'target'".into()))?;
            let mut tv = target.clone();
            for p in sys.vars().params() {
                if !tv.params.contains(p) {
                    tv.params.push(p.clone());
                }
            }
            let tv = tv.table()?;
            if d.map.len() != 2 {
                return Err(Error::Invalid("transport document needs a two-entry 'map'".into()));
            }
            let map = [parse(&d.map[0], &tv)?, parse(&d.map[1], &tv)?];
            let g = d.power_product(&tv)?;
            let kind = match d.target_kind.as_deref().unwrap_or("conjugate") {
                "conjugate" => Target::Conjugate,
                "general" => Target::General,
                other => return Err(Error::Invalid(format!("unknown target kind '{}'", other))),
            };
            let out = rank4::transport(&sys, [&map[0], &map[1]], &g, kind)?;
            for (n, e) in out.fields() {
                r.info(n, e);
            }
            check_integrable(r, "integrable", &out)?;
        }
    }
    Ok(())
}

fn matrix(m: &[Vec<i64>]) -> String {
    serde_json::to_string(m).expect("integers serialize")
}

fn gkz_derive(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (data, sys, fam) = match preset(opts)? {
        Some(Preset::F2) => {
            let (d, s) = gkz::derive(Family::F2, &presets::f2_xy())?;
            (d, s, Some(Family::F2))
        }
        Some(Preset::F4) => {
            let (d, s) = gkz::derive(Family::F4, &presets::f4_xy())?;
            (d, s, Some(Family::F4))
        }
        Some(_) => return Err(Error::Invalid("gkz presets are f2 and f4".into())),
        None => {
            let g = docs
                .iter()
                .find(|d| d.kind == "gkz")
                .ok_or_else(|| Error::Invalid("gkz-derive needs a gkz document".into()))?;
            let pl = docs
                .iter()
                .find(|d| d.kind == "plan")
                .ok_or_else(|| Error::Invalid("gkz-derive needs a plan document".into()))?;
            let coords: Vec<String> = pl.variables.iter().map(|(n, _)| n.clone()).collect();
            let v = VarsDoc {
                coords,
                params: g.vars.params.clone(),
            }
            .table()?;
            let ed = ExponentData {
                blocks: g.blocks.clone(),
                k: g.k.ok_or_else(|| Error::Invalid("gkz document lacks 'k'".into()))?,
            };
            let gamma = g.gamma.iter().map(|t| parse(t, &v)).collect::<std::result::Result<Vec<_>, _>>()?;
            let data = GkzData::new(&ed, gamma)?;
            let plan = ReductionPlan {
                variable_defs: pl.variables.clone(),
                slice: pl
                    .slice
                    .iter()
                    .map(|s| match s {
                        SliceDoc::Int(i) => SliceValue::Const(*i),
                        SliceDoc::Name(n) => SliceValue::Var(n.clone()),
                    })
                    .collect(),
            };
            let sys = gkz::reduce(&data, &plan)?;
            (data, sys, None)
        }
    };
    r.info("A", matrix(&data.a));
    r.info("lattice", matrix(&data.lattice));
    for rel in gkz::homogeneity_relations(&data) {
        r.info("homogeneity", rel);
    }
    if fam == Some(Family::F2) {
        let shown = gkz::f2_displayed_lattice();
        r.push("lattice equals displayed generators", matrix(&gkz::hnf(&data.lattice)), matrix(&gkz::hnf(&shown)), gkz::lattice_eq(&data.lattice, &shown));
    }
    match fam {
        Some(f) => {
            let want = appell::system(f, sys.vars())?;
            for ((n, e), (_, w)) in sys.fields().iter().zip(want.fields().iter()) {
                r.equal(*n, e, w);
            }
        }
        None => {
            for (n, e) in sys.fields() {
                r.info(n, e);
            }
        }
    }
    Ok(())
}

fn numeric_values(opts: &Opts, docs: &[Document], names: &[&str], defaults: &[f64]) -> Result<Vec<f64>> {
    let mut map: BTreeMap<String, f64> = names.iter().zip(defaults).map(|(n, v)| (n.to_string(), *v)).collect();
    if let Some(d) = docs.iter().find(|d| d.kind == "appell-params") {
        map.extend(d.values.clone());
    }
    for (k, v) in assignments(opts)? {
        let x: f64 = v.parse().map_err(|_| Error::Invalid(format!("'{}' is not a number", v)))?;
        map.insert(k, x);
    }
    if let Some(k) = map.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::Invalid(format!("unknown parameter '{}'", k)));
    }
    Ok(names.iter().map(|n| map[*n]).collect())
}

fn point(opts: &Opts, default: &[f64]) -> Result<Vec<f64>> {
    match &opts.point {
        None => Ok(default.to_vec()),
        Some(t) => t
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad point '{}'", t))))
            .collect(),
    }
}

fn appell_check(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let fam_name = opts
        .family
        .clone()
        .or_else(|| opts.preset.clone())
        .or_else(|| docs.iter().find(|d| d.kind == "appell-params").and_then(|d| d.family.clone()))
        .unwrap_or_else(|| "f2".into());
    let fam: Family = fam_name.parse()?;
    let (defaults, pt, trunc, tol): (&[f64], &[f64], usize, f64) = match fam {
        Family::Gauss => (&[1.1, 0.3, 1.5], &[0.2], 60, 1e-10),
        Family::F2 => (&[1.1, 0.3, 0.7, 1.5, 1.2], &[0.1, 0.2], 40, 1e-8),
        Family::F4 => (&[0.9, 0.4, 1.3, 1.6], &[0.05, 0.1], 40, 1e-8),
        Family::F3 => (&[0.5, 0.6, 0.7, 0.8, 1.9], &[0.1, 0.2], 40, 1e-8),
    };
    let values = numeric_values(opts, docs, AppellParams::names(fam), defaults)?;
    let params = AppellParams::new(fam, &values)?;
    let pt = point(opts, pt)?;
    let tol = opts.tol.unwrap_or(tol);
    let s = appell::series_eval(&params, &pt, 1e-15, 2000)?;
    r.info("series value", format!("{:.15e}", s.value));
    r.info("terms used", s.terms_used);
    if fam != Family::F3 {
        let res = appell::pde_residual(&params, &pt, opts.truncation.unwrap_or(trunc))?;
        r.push("pde residual", format!("{:.3e}", res), format!("< {:.1e}", tol), res < tol);
    }
    if matches!(fam, Family::F2 | Family::F4) {
        let c = appell::conformal_equivalence_check()?;
        match &c.factor {
            Some(f) => r.push("T*[h4] proportional to [h2]", format!("factor {}", f), "proportional", true),
            None => r.push("T*[h4] proportional to [h2]", "not proportional", "proportional", false),
        }
    }
    Ok(())
}

fn euler_check(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let values = numeric_values(opts, docs, AppellParams::names(Family::F2), &[0.8, 0.4, 0.6, 1.3, 1.4])?;
    let params = AppellParams::new(Family::F2, &values)?;
    let pt = point(opts, &[3.0, 2.0])?;
    if pt.len() != 2 {
        return Err(Error::Invalid("euler-check needs a point s,t".into()));
    }
    let rep = appell::euler_transform_check(&params, pt[0], pt[1], opts.tol.unwrap_or(1e-6))?;
    r.info("series side", format!("{:.15e}", rep.lhs));
    r.info("integral side", format!("{:.15e}", rep.rhs));
    r.info("nodes", rep.nodes);
    r.push("agreement", format!("{:.3e}", rep.abs_diff), format!("< {:.1e}", rep.tol), rep.pass);
    Ok(())
}

fn quadquad(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    let (p, subj, sub) = load(opts, docs)?;
    let sys = conjugate(subj)?;
    let generic = matches!(p, Some(Preset::F2 | Preset::F4)) && !sub.active();
    for sign in signs(opts)? {
        let (e1, e2) = congruence::quad_quad_residuals(&sys, sign)?;
        for (i, e) in [e1, e2].iter().enumerate() {
            let name = format!("{} residual {}", sign, i + 1);
            if generic {
                r.push(name, e, "nonzero", !e.is_zero());
            } else {
                r.info(name, e);
            }
        }
    }
    Ok(())
}

fn plucker(r: &mut Report, opts: &Opts, docs: &[Document]) -> Result<()> {
    if opts.preset.is_some() || opts.family.is_some() {
        return Err(Error::Invalid("plucker takes a vectors document, not a preset".into()));
    }
    let (p1, p2) = match docs.iter().find(|d| d.kind == "vectors") {
        Some(d) => {
            let v = d.vars.table()?;
            let vec4 = |t: &[String]| -> Result<[RatExpr; 4]> {
                if t.len() != 4 {
                    return Err(Error::Invalid("vectors need four entries".into()));
                }
                let es = t.iter().map(|s| parse(s, &v)).collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(es.try_into().expect("four entries"))
            };
            (vec4(&d.p1)?, vec4(&d.p2)?)
        }
        None => {
            let v = presets::plain_xy();
            let f = |t: [&str; 4]| t.map(|s| parse(s, &v).unwrap());
            (f(["1", "x", "0", "0"]), f(["0", "0", "1", "y"]))
        }
    };
    let pl = congruence::plucker(&p1, &p2)?;
    for (n, e) in ["p01", "p02", "p03", "p12", "p13", "p23"].iter().zip(pl.coords()) {
        r.info(*n, e);
    }
    r.zero("Klein relation", &pl.klein());
    let (pp, qq, rr) = congruence::developability_form(&p1, &p2)?;
    r.info("P", &pp);
    r.info("Q", &qq);
    r.info("R", &rr);
    Ok(())
}

// ---------------------------------------------------------------- entry

/// Parse arguments, run the command and render; returns output and exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 2,
                _ => 2,
            };
            return (e.render().to_string(), code);
        }
    };
    let report = run_command(cli.command, &cli.opts);
    (render(&report, cli.opts.format), report.exit_code())
}

pub fn run_command(cmd: Command, opts: &Opts) -> Report {
    let docs: Result<Vec<Document>> = opts
        .docs
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {}", p.display(), e)))?;
            Document::from_json(&text)
        })
        .collect();
    match docs.and_then(|d| dispatch(cmd, opts, &d)) {
        Ok(r) => r,
        Err(e) => Report::error(cmd.name(), &e.to_string()),
    }
}

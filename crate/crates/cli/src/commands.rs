//! The commands: parameter resolution, execution, and reports.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use wittsen_core::construct::{
    construct_b_general, construct_b_unramified, construct_c, solve_v_f, ConstructionReport, GhostCheck,
};
use wittsen_core::delta::{theta_on_envelope_generators, verify_eta_on_delta_powers, DeltaCaps, ThetaCheck};
use wittsen_core::sen::{
    check_leibniz, check_nilpotence, construct_stable_lattice, make_twist, sen_cohomology, sen_weights, Cohomology, Lattice,
    Nilpotence, RationalSenModule, SenModule, SenRing, TwistVariant, Weights,
};
use wittsen_core::series::{Eisenstein, SRing};
use wittsen_core::witt::{UniversalWitt, WittVec, UNIVERSAL_LENGTH_CAP};
use wittsen_core::{Error, PAdic};

use crate::format::{
    eisenstein, is_prime, lattice_basis, qmatrix, schema, strings, PAdicJson, RationalModuleJson, SchemaError,
    SchemaResult, SenModuleJson, WittCodec,
};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;
/// Saturation rounds allowed before `sen-lattice` gives up.
pub const LATTICE_CAP: usize = 64;

pub const COMMANDS: [&str; 9] = [
    "construct-b",
    "construct-b-general",
    "construct-c",
    "solve-vf",
    "sen-check",
    "sen-cohomology",
    "sen-lattice",
    "delta-verify",
    "witt-selftest",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `Theta(e) = k e`.
    IdealPower,
    /// `Theta(e) = k E'(u) e`.
    IdealOverP,
}

impl From<Variant> for TwistVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::IdealPower => TwistVariant::IdealPower,
            Variant::IdealOverP => TwistVariant::IdealOverPPower,
        }
    }
}

/// Command parameters. On the command line every field is optional; a report
/// records them with defaults filled in.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// The prime.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// Eisenstein polynomial, integer coefficients, constant term first.
    #[arg(long = "E", value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    /// Truncation order (lambda^n or E^n).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Witt vector length.
    #[arg(long = "L")]
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    /// Target precision.
    #[arg(long = "N")]
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long = "i-max")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_max: Option<usize>,
    #[arg(long = "k-max")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    /// Random trials for property checks.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Rank of a random module.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Rank-one twist by this integer.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    /// Rank-one module with Theta(e) = c e for this integer c.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<i64>,
    /// JSON file holding the module.
    #[arg(long = "module", value_name = "PATH")]
    #[serde(skip)]
    pub module_path: Option<PathBuf>,
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
}

/// The document every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Params,
    pub budget: Value,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    /// The first failing check or the error that stopped the computation.
    pub failure: Option<Value>,
    pub result: Value,
}

impl Report {
    fn new(command: &str, params: Params, budget: Value, verdicts: Vec<Verdict>, failure: Option<Value>, result: Value) -> Self {
        let pass = failure.is_none() && verdicts.iter().all(|v| v.pass);
        let failure = failure.or_else(|| verdicts.iter().find(|v| !v.pass).map(|v| json!({ "check": v.check })));
        Report { command: command.into(), params, budget, pass, verdicts, failure, result }
    }

    fn aborted(command: &str, params: Params, budget: Value, err: &Error) -> Self {
        Report::new(command, params, budget, vec![], Some(error_locus(err)), Value::Null)
    }
}

fn verdict(check: impl Into<String>, pass: bool) -> Verdict {
    Verdict { check: check.into(), pass }
}

fn error_locus(err: &Error) -> Value {
    let mut v = json!({ "error": err.to_string() });
    match err {
        Error::InsufficientValuationAt { m, i, needed, found } => {
            v["m"] = json!(m);
            v["i"] = json!(i);
            v["needed"] = json!(needed);
            v["found"] = json!(found);
        }
        Error::InsufficientValuation { needed, found } => {
            v["needed"] = json!(needed);
            v["found"] = json!(found);
        }
        Error::Unbounded(cap) => v["cap"] = json!(cap),
        _ => {}
    }
    v
}

/// Errors that come from the input rather than from the mathematics.
fn is_input_error(err: &Error) -> bool {
    matches!(err, Error::NotEisenstein(_) | Error::Invalid(_) | Error::Mismatch(_) | Error::LengthCap { .. })
}

/// Either a schema error or a report.
fn lift<T>(r: wittsen_core::Result<T>) -> SchemaResult<Result<T, Error>> {
    match r {
        Err(e) if is_input_error(&e) => Err(SchemaError(e.to_string())),
        other => Ok(other),
    }
}

struct Resolver<'a> {
    command: &'a str,
    given: Params,
    out: Params,
}

impl<'a> Resolver<'a> {
    fn p(&mut self, default: u64) -> SchemaResult<u64> {
        let p = self.given.p.take().unwrap_or(default);
        if !is_prime(p) {
            return schema(format!("p = {p} is not prime"));
        }
        self.out.p = Some(p);
        Ok(p)
    }

    fn e(&mut self, p: u64) -> SchemaResult<Eisenstein> {
        let coeffs = self.given.e.take().unwrap_or_else(|| vec![format!("-{p}"), "1".into()]);
        let e = eisenstein(p, &coeffs)?;
        self.out.e = Some(strings(e.poly().coeffs()));
        Ok(e)
    }

    fn take<T: Clone>(&mut self, get: impl Fn(&mut Params) -> &mut Option<T>, default: T) -> T {
        let v = get(&mut self.given).take().unwrap_or(default);
        *get(&mut self.out) = Some(v.clone());
        v
    }

    fn positive(&mut self, name: &str, get: impl Fn(&mut Params) -> &mut Option<usize>, default: usize) -> SchemaResult<usize> {
        let v = self.take(get, default);
        if v == 0 {
            return schema(format!("{name} must be positive"));
        }
        Ok(v)
    }

    fn prec(&mut self, default: u32) -> SchemaResult<u32> {
        let v = self.take(|q| &mut q.prec, default);
        if v == 0 || v > 10_000 {
            return schema(format!("N = {v} out of range"));
        }
        Ok(v)
    }

    /// Reject any flag the command did not consume.
    fn finish(mut self) -> SchemaResult<Params> {
        self.given.module_path = None;
        if self.given != Params::default() {
            let unused = serde_json::to_value(&self.given).unwrap_or(Value::Null);
            return schema(format!("{} does not take {unused}", self.command));
        }
        Ok(self.out)
    }
}

/// Run a command. `Err` is a schema violation; a failed check is a report with `pass = false`.
pub fn run(command: &str, params: Params) -> SchemaResult<Report> {
    let mut r = Resolver { command, given: params, out: Params::default() };
    match command {
        "construct-b" => {
            let p = r.p(3)?;
            let n = r.positive("n", |q| &mut q.n, p as usize)?;
            let (l, n_target) = (r.positive("L", |q| &mut q.length, 3)?, r.prec(12)?);
            let params = r.finish()?;
            construction(command, params, lift(construct_b_unramified(p, n, l, n_target))?)
        }
        "construct-b-general" | "construct-c" => {
            let p = r.p(3)?;
            let e = r.e(p)?;
            let (l, n_target) = (r.positive("L", |q| &mut q.length, 3)?, r.prec(12)?);
            let params = r.finish()?;
            let rep = if command == "construct-c" { construct_c(&e, l, n_target) } else { construct_b_general(&e, l, n_target) };
            construction(command, params, lift(rep)?)
        }
        "solve-vf" => {
            let p = r.p(3)?;
            let (l, n_target) = (r.positive("L", |q| &mut q.length, 4)?, r.prec(30)?);
            let params = r.finish()?;
            construction(command, params, lift(solve_v_f(p, l, n_target))?)
        }
        "sen-check" | "sen-cohomology" => {
            let m = sen_module(&mut r)?;
            let seed = r.take(|q| &mut q.seed, DEFAULT_SEED);
            let trials = r.take(|q| &mut q.trials, 16);
            let params = r.finish()?;
            Ok(sen(command, params, &m, seed, trials))
        }
        "sen-lattice" => {
            let m = rational_module(&mut r)?;
            let params = r.finish()?;
            Ok(lattice(params, &m))
        }
        "delta-verify" => {
            let p = r.p(3)?;
            let e = r.e(p)?;
            let i_max = r.positive("i-max", |q| &mut q.i_max, 3)?;
            let k_max = r.take(|q| &mut q.k_max, 5);
            let params = r.finish()?;
            delta(params, &e, i_max, k_max)
        }
        "witt-selftest" => {
            let p = r.p(3)?;
            let l = r.positive("L", |q| &mut q.length, UNIVERSAL_LENGTH_CAP)?;
            if l > UNIVERSAL_LENGTH_CAP {
                return schema(format!("L = {l} exceeds the universal-polynomial cap {UNIVERSAL_LENGTH_CAP}"));
            }
            let prec = r.prec(20)?;
            let seed = r.take(|q| &mut q.seed, DEFAULT_SEED);
            let trials = r.take(|q| &mut q.trials, 200);
            let params = r.finish()?;
            witt_selftest(params, p, l, prec, seed, trials)
        }
        other => schema(format!("unknown command {other:?}; expected one of {COMMANDS:?}")),
    }
}

fn ghost_json(identity: &str, c: &GhostCheck) -> Value {
    json!({
        "identity": identity,
        "level": c.level,
        "pass": c.pass,
        "residual_valuation": c.residual_valuation,
        "precision": c.precision,
    })
}

fn construction<R: WittCodec>(
    command: &str,
    params: Params,
    rep: Result<ConstructionReport<R>, Error>,
) -> SchemaResult<Report> {
    let rep = match rep {
        Ok(rep) => rep,
        Err(e) => return Ok(Report::aborted(command, params, Value::Null, &e)),
    };
    let cp = &rep.params;
    let budget = json!({ "working_precision": cp.working_precision, "digits": cp.digits });
    let mut verdicts = Vec::new();
    let mut ghost = Vec::new();
    let mut failure = None;
    for id in &rep.identities {
        for c in &id.levels {
            verdicts.push(verdict(format!("{} level {}", id.name, c.level), c.pass));
            ghost.push(ghost_json(&id.name, c));
            if !c.pass && failure.is_none() {
                failure = Some(ghost_json(&id.name, c));
            }
        }
    }
    let valuations: Vec<Value> = rep
        .valuations
        .iter()
        .map(|v| {
            verdicts.push(verdict(format!("v({})", v.symbol), v.pass()));
            json!({ "symbol": v.symbol, "claimed": v.claimed, "computed": v.computed, "pass": v.pass() })
        })
        .collect();
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            verdicts.push(verdict(c.name.clone(), c.pass));
            json!({ "name": c.name, "pass": c.pass, "detail": c.detail })
        })
        .collect();
    let result = json!({
        "construction": rep.construction,
        "params": {
            "p": cp.p,
            "E": strings(&cp.e),
            "n": cp.n,
            "L": cp.length,
            "N": cp.target_precision,
            "working_precision": cp.working_precision,
            "digits": cp.digits,
        },
        "components": rep.components.iter().map(|(name, w)| json!({ "name": name, "witt": R::encode_witt(w) })).collect::<Vec<_>>(),
        "ghost_checks": ghost,
        "valuations": valuations,
        "checks": checks,
    });
    Ok(Report::new(command, params, budget, verdicts, failure, result))
}

fn sen_module(r: &mut Resolver) -> SchemaResult<SenModule> {
    let sources = [r.given.module.is_some(), r.given.twist.is_some(), r.given.theta.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return schema("give exactly one of --module, --twist, --theta");
    }
    if let Some(v) = r.given.module.take() {
        let j: SenModuleJson = serde_json::from_value(v).map_err(|e| SchemaError(format!("module: {e}")))?;
        let m = j.decode()?;
        r.out.module = Some(serde_json::to_value(&j).expect("serializable"));
        return Ok(m);
    }
    let p = r.p(3)?;
    let e = r.e(p)?;
    let n = r.positive("n", |q| &mut q.n, 1)?;
    let prec = r.prec(12)?;
    let base = SenRing::new(e, n, prec);
    if let Some(k) = r.given.twist.take() {
        r.out.twist = Some(k);
        let v = r.take(|q| &mut q.variant, Variant::IdealOverP);
        return Ok(make_twist(&base, k, v.into()));
    }
    let c = r.given.theta.take().expect("one source");
    r.out.theta = Some(c);
    SenModule::new(base.clone(), vec![vec![base.constant(c)]]).map_err(|e| SchemaError(e.to_string()))
}

fn nilpotence_json(n: &Nilpotence) -> Value {
    match n {
        Nilpotence::Nilpotent { index } => json!({ "nilpotent": true, "index": index }),
        Nilpotence::NotNilpotent { certificate } => json!({ "nilpotent": false, "certificate": certificate }),
    }
}

fn weights_json(w: &Weights) -> Value {
    match w {
        Weights::Split(ws) => json!({ "split": true, "weights": ws }),
        Weights::NonSplit { charpoly, roots } => json!({ "split": false, "charpoly": charpoly, "roots": roots }),
    }
}

fn sen(command: &str, params: Params, m: &SenModule, seed: u64, trials: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lb = check_leibniz(m, trials, &mut rng);
    let mut verdicts = vec![verdict("Leibniz rule", lb.pass)];
    let witness = lb.witness.as_ref().map(|w| {
        json!({
            "scalar": strings(w.scalar.to_zpoly().coeffs()),
            "element": w.element.iter().map(|x| strings(x.to_zpoly().coeffs())).collect::<Vec<_>>(),
            "defect": w.defect.iter().map(|x| strings(x.to_zpoly().coeffs())).collect::<Vec<_>>(),
        })
    });
    let mut result = json!({
        "module": SenModuleJson::encode(m),
        "leibniz": { "pass": lb.pass, "checked": lb.checked, "witness": witness },
    });
    let budget = json!({ "precision": m.base().precision(), "dimension": m.dim() });
    let mut failure = witness.map(|w| json!({ "check": "Leibniz rule", "witness": w }));
    if command == "sen-check" {
        let nil = check_nilpotence(m);
        verdicts.push(verdict("nilpotent mod p", nil.is_nilpotent()));
        if failure.is_none() && !nil.is_nilpotent() {
            failure = Some(json!({ "check": "nilpotent mod p", "nilpotence": nilpotence_json(&nil) }));
        }
        result["nilpotence"] = nilpotence_json(&nil);
        result["weights_mod_p_u"] = weights_json(&sen_weights(m));
    } else {
        let c = sen_cohomology(m);
        result["precision"] = json!(c.precision);
        result["H0"] = json!(Cohomology::labels(&c.h0));
        result["H1"] = json!(Cohomology::labels(&c.h1));
    }
    Report::new(command, params, budget, verdicts, failure, result)
}

fn rational_module(r: &mut Resolver) -> SchemaResult<RationalSenModule> {
    if let Some(v) = r.given.module.take() {
        let j: RationalModuleJson = serde_json::from_value(v).map_err(|e| SchemaError(format!("module: {e}")))?;
        let m = j.decode()?;
        r.out.module = Some(serde_json::to_value(&j).expect("serializable"));
        return Ok(m);
    }
    let p = r.p(3)?;
    let e = r.e(p)?;
    let n = r.positive("n", |q| &mut q.n, 1)?;
    let rank = r.positive("rank", |q| &mut q.rank, 2)?;
    let seed = r.take(|q| &mut q.seed, DEFAULT_SEED);
    Ok(RationalSenModule::random(SRing::new(e, n), rank, 2, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn lattice(params: Params, m: &RationalSenModule) -> Report {
    let p = m.ring().prime();
    let budget = json!({ "saturation_cap": LATTICE_CAP, "dimension": m.dim() });
    let module = RationalModuleJson::encode(m);
    match construct_stable_lattice(m, LATTICE_CAP) {
        Err(e) => {
            let mut rep = Report::aborted("sen-lattice", params, budget, &e);
            rep.result = json!({ "module": module });
            rep
        }
        Ok(out) => {
            let tv = out.theta_matrix.min_valuation(p);
            let uv = out.u_matrix.min_valuation(p);
            let verdicts = vec![
                verdict("Theta integral on the lattice", tv.map_or(true, |v| v >= 0)),
                verdict("u integral on the lattice", uv.map_or(true, |v| v >= 0)),
                verdict("contains the standard lattice", out.lattice.contains_lattice(&Lattice::standard(p, m.dim()))),
            ];
            let result = json!({
                "module": module,
                "pivots": out.lattice.pivots(),
                "basis": lattice_basis(&out.lattice),
                "theta_matrix": qmatrix(&out.theta_matrix),
                "u_matrix": qmatrix(&out.u_matrix),
                "theta_min_valuation": tv,
            });
            Report::new("sen-lattice", params, budget, verdicts, None, result)
        }
    }
}

fn theta_json(c: &ThetaCheck) -> Value {
    json!({ "check": c.label, "pass": c.pass, "diff": c.diff })
}

fn delta(params: Params, e: &Eisenstein, i_max: usize, k_max: usize) -> SchemaResult<Report> {
    let p = e.prime();
    let caps = DeltaCaps::for_prime(p);
    let budget = json!({ "depth_cap": caps.depth, "degree_cap": caps.degree });
    let eta = match lift(verify_eta_on_delta_powers(e, i_max, caps))? {
        Ok(r) => r,
        Err(err) => return Ok(Report::aborted("delta-verify", params, budget, &err)),
    };
    let mut verdicts = Vec::new();
    let levels: Vec<Value> = eta
        .levels
        .iter()
        .map(|l| {
            verdicts.push(verdict(format!("eta(d^{}(t)) closed form", l.i), l.pass));
            verdicts.push(verdict(format!("eta(d^{}(t)) correction divisible by t E'", l.i), l.divisible));
            json!({ "i": l.i, "pass": l.pass, "divisible": l.divisible, "diff": l.diff })
        })
        .collect();
    let mut result = json!({ "eta": levels, "theta": Value::Null });
    // The Theta values on the envelope are stated for E = u - p only.
    if e == &Eisenstein::unramified(p) {
        let th = match lift(theta_on_envelope_generators(p, i_max, k_max, caps))? {
            Ok(r) => r,
            Err(err) => return Ok(Report::aborted("delta-verify", params, budget, &err)),
        };
        for c in th.generators.iter().chain(&th.lambda_powers) {
            verdicts.push(verdict(c.label.clone(), c.pass));
        }
        result["theta"] = json!({
            "generators": th.generators.iter().map(theta_json).collect::<Vec<_>>(),
            "lambda_powers": th.lambda_powers.iter().map(theta_json).collect::<Vec<_>>(),
        });
    }
    Ok(Report::new("delta-verify", params, budget, verdicts, None, result))
}

fn witt_json(x: &WittVec<PAdic>) -> Value {
    json!(x.comps().iter().map(PAdicJson::encode).collect::<Vec<_>>())
}

/// The ghost-component arithmetic against the universal polynomials, and the
/// structural identities, on seeded random inputs.
fn witt_selftest(params: Params, p: u64, l: usize, prec: u32, seed: u64, trials: usize) -> SchemaResult<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = json!({ "precision": prec, "agreement_floor": prec.saturating_sub(l as u32) });
    let universal = (1..=l).map(|k| UniversalWitt::new(p, k)).collect::<Result<Vec<_>, _>>();
    let universal = match lift(universal)? {
        Ok(u) => u,
        Err(e) => return Ok(Report::aborted("witt-selftest", params, budget, &e)),
    };
    let floor = prec.saturating_sub(l as u32);
    let one = PAdic::one(p, prec);
    let random = |len: usize, rng: &mut ChaCha8Rng| WittVec::new((0..len).map(|_| PAdic::random(p, prec, rng)).collect());
    let names = ["ghost add = universal add", "ghost mul = universal mul", "F V = p", "V(x) y = V(x F(y))", "delta Leibniz"];
    let mut passed = [0usize; 5];
    let mut first: Option<Value> = None;
    let mut record = |k: usize, ok: bool, inputs: &[&WittVec<PAdic>], first: &mut Option<Value>| {
        if ok {
            passed[k] += 1;
        } else if first.is_none() {
            *first = Some(json!({ "check": names[k], "inputs": inputs.iter().map(|x| witt_json(x)).collect::<Vec<_>>() }));
        }
    };
    let agree = |a: wittsen_core::Result<WittVec<PAdic>>, b: wittsen_core::Result<WittVec<PAdic>>, floor: u32| match (a, b) {
        (Ok(a), Ok(b)) => a.eq_mod(&b) && a.precisions().iter().chain(&b.precisions()).all(|&q| q >= floor),
        _ => false,
    };
    for t in 0..trials {
        let len = 1 + t % l;
        let (x, y) = (random(len, &mut rng), random(len, &mut rng));
        let u = &universal[len - 1];
        record(0, agree(u.add(&x, &y), x.add(&y), floor), &[&x, &y], &mut first);
        record(1, agree(u.mul(&x, &y), x.mul(&y), floor), &[&x, &y], &mut first);

        // V raises the length by one; F lowers it.
        let y1 = random(len + 1, &mut rng);
        let pw = WittVec::from_int(&one, len, &BigInt::from(p)).expect("length >= 1");
        record(2, agree(x.verschiebung().frobenius(), x.mul(&pw), 0), &[&x], &mut first);
        let rhs = y1.frobenius().and_then(|fy| x.mul(&fy)).map(|v| v.verschiebung());
        record(3, agree(x.verschiebung().mul(&y1), rhs, 0), &[&x, &y1], &mut first);

        let x1 = random(len + 1, &mut rng);
        let lhs = x1.mul(&y1).and_then(|v| v.delta());
        let rhs = (|| {
            let (dx, dy) = (x1.delta()?, y1.delta()?);
            let xp = x1.truncate(len).pow_p()?;
            let yp = y1.truncate(len).pow_p()?;
            xp.mul(&dy)?.add(&yp.mul(&dx)?)?.add(&pw.mul(&dx)?.mul(&dy)?)
        })();
        record(4, agree(lhs, rhs, 0), &[&x1, &y1], &mut first);
    }
    let verdicts: Vec<Verdict> = names.iter().zip(passed).map(|(n, k)| verdict(*n, k == trials)).collect();
    let result = json!({
        "trials": trials,
        "passed": names.iter().zip(passed).map(|(n, k)| json!({ "check": n, "passed": k })).collect::<Vec<_>>(),
    });
    Ok(Report::new("witt-selftest", params, budget, verdicts, first, result))
}

trait PowP: Sized {
    fn pow_p(&self) -> wittsen_core::Result<Self>;
}

impl PowP for WittVec<PAdic> {
    fn pow_p(&self) -> wittsen_core::Result<Self> {
        let mut acc = WittVec::one(self.comp(0), self.len());
        for _ in 0..self.prime() {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use pairstab::binaryforms::{binary_destabilizer, sl2_pair_semistable, BinaryForm, BinaryFormJson};
use pairstab::kempfness::{infimum_estimate, log_grid, predicted_slope, ray_profile_log, ray_slope, EnergyProbe};
use pairstab::lattice::{min_scale_containment, Cocharacter, Torus};
use pairstab::number::{format_gaussian, round_sig12};
use pairstab::planecurves::{
    chow_form, dual_degree, hyperdiscriminant, k_stability_along, monomial_map, PlaneCurve, CHOW_VARS, DUAL_VARS,
};
use pairstab::poly::RatPoly;
use pairstab::rep::{Family, RepresentationDescriptor, RepresentationSpec, VectorDescriptor, WeightedVector};
use pairstab::stability::{
    destabilizer, group_verdict_sampled, pair_semistable_torus, pair_stable_torus, weight, Pair, Status, Verdict,
};
use pairstab::Error;

#[derive(Parser)]
#[command(name = "pairstab", version, about = "Stability of pairs of group representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input file (JSON descriptor, or a polynomial for curve commands).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (semi)stability of a pair.
    CheckPair {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Only decide over the diagonal torus.
        #[arg(long)]
        torus_only: bool,
    },
    /// Find a destabilizing one-parameter subgroup.
    Destabilize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Energy along `λ(t)` as `t → 0`.
    KnProfile {
        #[command(flatten)]
        common: Common,
        /// Cocharacter, e.g. `1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Number of grid points on `log t ∈ [-60, 0]`.
        #[arg(long, default_value_t = 61)]
        samples: usize,
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Upper bound on the infimum of the energy by descent.
    KnInf {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 400)]
        iterations: usize,
        /// Number of restarts.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Chow form of a plane curve.
    Chow {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: Option<String>,
    },
    /// Dual curve of a smooth plane curve.
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: Option<String>,
    },
    /// Futaki invariant and the K-stability implication at `λ`.
    Futaki {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Smallest `k` with `N(V) ⊂ k·N(I)`.
    Deg {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            other => Failure::Module(other),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Module(_) => 5,
        }
    }
}

type Outcome = Result<(Value, u8), Failure>;

#[derive(Deserialize)]
struct VectorFile {
    representation: RepresentationDescriptor,
    vector: VectorDescriptor,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormInput {
    Text(String),
    Factored(BinaryFormJson),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairFile {
    Binary { f: FormInput, g: FormInput },
    General { v: VectorFile, w: VectorFile },
}

enum LoadedPair {
    Binary(BinaryForm, BinaryForm),
    General(Pair),
}

fn read_input(common: &Common) -> Result<String, Failure> {
    let path = common.input.as_ref().ok_or_else(|| Failure::Parse("--input is required".into()))?;
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))
}

fn load_form(input: &FormInput) -> Result<BinaryForm, Failure> {
    Ok(match input {
        FormInput::Text(t) => BinaryForm::parse(t)?,
        FormInput::Factored(j) => BinaryForm::from_json(j)?,
    })
}

fn load_vector(file: &VectorFile) -> Result<WeightedVector, Failure> {
    let rep = RepresentationSpec::from_descriptor(&file.representation)?;
    Ok(WeightedVector::from_descriptor(rep, &file.vector)?)
}

fn load_pair(common: &Common) -> Result<LoadedPair, Failure> {
    Ok(match parse_json::<PairFile>(&read_input(common)?)? {
        PairFile::Binary { f, g } => LoadedPair::Binary(load_form(&f)?, load_form(&g)?),
        PairFile::General { v, w } => LoadedPair::General(Pair::new(load_vector(&v)?, load_vector(&w)?)?),
    })
}

fn as_general(pair: LoadedPair) -> Pair {
    match pair {
        LoadedPair::General(p) => p,
        LoadedPair::Binary(f, g) => Pair::new(f.to_vector(), g.to_vector()).expect("same torus"),
    }
}

/// A vector of `Sym^d` or the trivial `SL(2)` representation as a binary form, if its roots are rational.
fn binary_form_of(v: &WeightedVector) -> Option<BinaryForm> {
    match v.rep().family() {
        Family::Trivial if v.torus() == Torus::Sl2 => {
            let c = v.coefficients().ok()?.into_values().next()?;
            c.im.is_zero().then(|| BinaryForm::with_scale([], c.re).ok()).flatten()
        }
        Family::SymmetricPowerSl2 { .. } if v.as_power().is_none() => {
            let poly = v.to_poly().ok()?;
            if poly.terms().values().any(|c| !c.im.is_zero()) {
                return None;
            }
            let real = RatPoly::from_terms(2, poly.terms().iter().map(|(m, c)| (m.clone(), c.re.clone())));
            BinaryForm::from_poly(&real).ok()
        }
        _ => None,
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Stable | Status::SemistableNotStable => 0,
        Status::Unstable => 3,
        Status::UnknownSampled => 4,
    }
}

fn verdict_json(v: &Verdict, method: &str) -> Value {
    json!({
        "status": v.status,
        "witness": v.witness,
        "certificate": v.certificate,
        "method": method,
    })
}

fn binary_verdict(f: &BinaryForm, g: &BinaryForm) -> Outcome {
    let b = sl2_pair_semistable(f, g);
    let v = b.to_verdict();
    let mut out = verdict_json(&v, "binary-forms");
    out["numerically_strict"] = json!(b.numerically_strict);
    if v.status == Status::Unstable {
        let (p, sigma, u) = binary_destabilizer(f, g)?
            .ok_or_else(|| Failure::Module(Error::Consistency("no destabilizing chart for an unstable pair".into())))?;
        out["witness"] = json!(u.0);
        out["chart"] = json!({
            "point": p.to_string(),
            "sigma": sigma.rows().iter().map(|r| r.iter().map(format_gaussian).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        out["certificate"] = json!(format!("{}; λ(t) = σ⁻¹·λ^u(t)·σ with u = {u}, σ sending {p} to [1:0]", v.certificate));
    }
    Ok((out, status_code(v.status)))
}

fn torus_verdict(p: &Pair) -> Result<Verdict, Error> {
    let semi = pair_semistable_torus(p)?;
    if semi.status == Status::Unstable {
        return Ok(semi);
    }
    pair_stable_torus(p)
}

fn cmd_check_pair(common: &Common, samples: u64, torus_only: bool) -> Outcome {
    let pair = load_pair(common)?;
    if let LoadedPair::Binary(f, g) = &pair {
        if !torus_only {
            return binary_verdict(f, g);
        }
    }
    let p = as_general(pair);
    if !torus_only {
        if let (Some(f), Some(g)) = (binary_form_of(&p.v), binary_form_of(&p.w)) {
            return binary_verdict(&f, &g);
        }
    }
    let over_torus = torus_verdict(&p)?;
    let has_group = p.v.rep().group_size().is_some() && p.w.rep().group_size().is_some();
    if torus_only || !has_group || over_torus.status == Status::Unstable {
        let code = status_code(over_torus.status);
        return Ok((verdict_json(&over_torus, "torus-exact"), code));
    }
    let sampled = group_verdict_sampled(&p, samples, common.seed)?;
    let mut out = verdict_json(&sampled, "group-sampled");
    out["torus_status"] = json!(over_torus.status);
    Ok((out, status_code(sampled.status)))
}

fn cmd_destabilize(common: &Common, samples: u64) -> Outcome {
    let p = as_general(load_pair(common)?);
    let describe = |u: &Cocharacter, conjugated: Option<&str>| -> Result<Value, Error> {
        Ok(json!({
            "witness": u.0,
            "weight_v": weight(u, &p.v)?,
            "weight_w": weight(u, &p.w)?,
            "conjugation": conjugated,
        }))
    };
    if let Some(u) = destabilizer(&p)? {
        return Ok((describe(&u, None)?, 3));
    }
    if p.v.rep().group_size().is_some() && p.w.rep().group_size().is_some() {
        let sampled = group_verdict_sampled(&p, samples, common.seed)?;
        if let Some(u) = sampled.witness_cocharacter() {
            let mut out = json!({ "witness": u.0, "certificate": sampled.certificate });
            out["status"] = json!(sampled.status);
            return Ok((out, 3));
        }
        return Ok((json!({ "witness": null, "status": sampled.status, "certificate": sampled.certificate }), 4));
    }
    Ok((json!({ "witness": null, "status": Status::SemistableNotStable }), 0))
}

fn parse_lambda(text: &str) -> Result<Cocharacter, Failure> {
    let entries = text
        .trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| Failure::Parse(format!("bad cocharacter `{text}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cocharacter(entries))
}

fn cmd_kn_profile(common: &Common, lambda: &str, samples: usize, csv: Option<&PathBuf>) -> Outcome {
    let p = as_general(load_pair(common)?);
    let u = parse_lambda(lambda)?;
    let grid = log_grid(-60.0, 0.0, samples.max(2));
    let profile = ray_profile_log(&p, &u, &grid)?;
    let probe = EnergyProbe::along_ray(&p, &u, &grid)?;
    let rows: Vec<Value> = profile
        .iter()
        .map(|(lt, e)| json!({ "log_t": round_sig12(*lt), "energy": round_sig12(*e) }))
        .collect();
    if let Some(path) = csv {
        let mut text = String::from("t,energy\n");
        for (lt, e) in &profile {
            text.push_str(&format!("{:.11e},{:.11e}\n", lt.exp(), e));
        }
        fs::write(path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    }
    let out = json!({
        "lambda": u.0,
        "group_dim": probe.group_dim,
        "fitted_slope": round_sig12(ray_slope(&p, &u)?),
        "predicted_slope": round_sig12(predicted_slope(&p, &u)?),
        "samples": rows,
    });
    Ok((out, 0))
}

fn cmd_kn_inf(common: &Common, iterations: usize, restarts: usize) -> Outcome {
    let p = as_general(load_pair(common)?);
    let est = infimum_estimate(&p, iterations, restarts.max(1), common.seed)?;
    let out = json!({
        "best": round_sig12(est.best),
        "diverged": est.diverged,
        "best_so_far": est.best_so_far.iter().map(|x| round_sig12(*x)).collect::<Vec<_>>(),
        "iterations": iterations,
        "restarts": est.restarts.len(),
        "seed": common.seed,
    });
    Ok((out, 0))
}

fn load_curve(common: &Common, form: Option<&str>) -> Result<PlaneCurve, Failure> {
    let text = match form {
        Some(f) => f.to_string(),
        None => read_input(common)?,
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let map: BTreeMap<String, String> = parse_json(trimmed)?;
        Ok(PlaneCurve::from_monomial_map(&map)?)
    } else if trimmed.starts_with('"') {
        let s: String = parse_json(trimmed)?;
        Ok(PlaneCurve::parse(&s)?)
    } else {
        Ok(PlaneCurve::parse(trimmed)?)
    }
}

fn poly_json(p: &RatPoly, names: &[&str]) -> Value {
    json!({
        "degree": p.degree(),
        "text": p.to_string_with(names),
        "monomials": monomial_map(p, names),
    })
}

fn cmd_chow(common: &Common, form: Option<&str>) -> Outcome {
    let c = load_curve(common, form)?;
    let r = chow_form(&c).normalized();
    Ok((json!({ "curve_degree": c.degree(), "chow_form": poly_json(&r, &CHOW_VARS) }), 0))
}

fn cmd_dual(common: &Common, form: Option<&str>) -> Outcome {
    let c = load_curve(common, form)?;
    let delta = hyperdiscriminant(&c)?;
    let out = json!({
        "curve_degree": c.degree(),
        "expected_degree": dual_degree(&c),
        "dual": poly_json(&delta, &DUAL_VARS),
    });
    Ok((out, 0))
}

fn cmd_futaki(common: &Common, form: Option<&str>, lambda: &str) -> Outcome {
    let c = load_curve(common, form)?;
    let u = parse_lambda(lambda)?;
    let report = k_stability_along(&c, &u)?;
    Ok((serde_json::to_value(&report).expect("serializable"), 0))
}

fn cmd_deg(common: &Common) -> Outcome {
    let desc: RepresentationDescriptor = parse_json(&read_input(common)?)?;
    let rep = RepresentationSpec::from_descriptor(&desc)?;
    let n = rep
        .group_size()
        .ok_or_else(|| Failure::Module(Error::NoGroupAction(rep.family().tag().into())))?;
    let reference = WeightedVector::identity(n).weight_polytope()?;
    let k = min_scale_containment(&rep.full_weight_polytope()?, &reference)?;
    Ok((json!({ "deg": k, "family": rep.family().tag() }), 0))
}

fn summary(value: &Value) -> String {
    for key in ["status", "deg", "futaki", "best", "fitted_slope", "witness"] {
        if let Some(v) = value.get(key) {
            return format!("{key}: {v}");
        }
    }
    "ok".into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, outcome) = match &cli.command {
        Command::CheckPair { common, samples, torus_only } => (common, cmd_check_pair(common, *samples, *torus_only)),
        Command::Destabilize { common, samples } => (common, cmd_destabilize(common, *samples)),
        Command::KnProfile { common, lambda, samples, emit_csv } => {
            (common, cmd_kn_profile(common, lambda, *samples, emit_csv.as_ref()))
        }
        Command::KnInf { common, iterations, samples } => (common, cmd_kn_inf(common, *iterations, *samples)),
        Command::Chow { common, form } => (common, cmd_chow(common, form.as_deref())),
        Command::Dual { common, form } => (common, cmd_dual(common, form.as_deref())),
        Command::Futaki { common, form, lambda } => (common, cmd_futaki(common, form.as_deref(), lambda)),
        Command::Deg { common } => (common, cmd_deg(common)),
    };
    match outcome {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
            match &common.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(5);
                    }
                }
                None => print!("{text}"),
            }
            eprintln!("{}", summary(&value));
            ExitCode::from(code)
        }
        Err(failure) => {
            match &failure {
                Failure::Parse(m) => eprintln!("parse error: {m}"),
                Failure::Module(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

//! Re-ingesting a report: re-run it from its parameters, and re-check the
//! ghost identities directly on the serialized components.

use serde_json::{json, Value};

use wittsen_core::construct::{
    general_targets, iota_lambda, unramified_targets, verify_ghost_identity, GhostCheck, Identity,
};
use wittsen_core::series::{DigitElem, Dual, SRingElem};
use wittsen_core::witt::WittVec;
use wittsen_core::{BaseRing, PAdic};

use crate::commands::{run, Report, Verdict, COMMANDS};
use crate::format::{eisenstein, schema, SchemaError, SchemaResult, WittCodec, WittJson};

fn component<R: WittCodec>(result: &Value, name: &str) -> SchemaResult<WittVec<R>> {
    let comps = result["components"].as_array().ok_or_else(|| SchemaError("result.components missing".into()))?;
    let c = comps
        .iter()
        .find(|c| c["name"] == name)
        .ok_or_else(|| SchemaError(format!("component {name:?} missing")))?;
    let j: WittJson = serde_json::from_value(c["witt"].clone()).map_err(|e| SchemaError(format!("{name}: {e}")))?;
    R::decode_witt(&j)
}

fn field_u64(v: &Value, key: &str) -> SchemaResult<u64> {
    v[key].as_u64().ok_or_else(|| SchemaError(format!("result.params.{key} missing")))
}

fn core_error(e: wittsen_core::Error) -> SchemaError {
    SchemaError(format!("components do not fit the recorded parameters: {e}"))
}

/// Ghost checks recomputed from the serialized components, with targets rebuilt from the parameters.
fn recheck(command: &str, result: &Value) -> SchemaResult<Vec<GhostCheck>> {
    let params = &result["params"];
    let length = field_u64(params, "L")? as usize;
    let w = field_u64(params, "working_precision")? as u32;
    let p = field_u64(params, "p")?;
    let levels = match command {
        "construct-b" => {
            let b: WittVec<Dual<SRingElem>> = component(result, "b")?;
            if b.len() != length {
                return schema("b has the wrong length");
            }
            let t = unramified_targets(b.comp(0).re.ring(), length, w).map_err(core_error)?;
            verify_ghost_identity(Identity::Product { x: &t.lambda_tilde, y: &b, z: &t.lambda })
        }
        "construct-b-general" | "construct-c" => {
            let e_coeffs: Vec<String> = serde_json::from_value(params["E"].clone()).map_err(|e| SchemaError(e.to_string()))?;
            let e = eisenstein(p, &e_coeffs)?;
            let name = if command == "construct-c" { "c" } else { "b" };
            let x: WittVec<Dual<DigitElem>> = component(result, name)?;
            if x.len() != length {
                return schema(format!("{name} has the wrong length"));
            }
            let t = general_targets(&x.comp(0).re.one_like(), &e, length).map_err(core_error)?;
            if command == "construct-c" {
                verify_ghost_identity(Identity::DifferenceProduct { x: &t.g_u, y: &t.f_u, z: &x, t: &t.f_lambda })
            } else {
                verify_ghost_identity(Identity::Product { x: &t.g_lambda, y: &x, z: &t.f_lambda })
            }
        }
        "solve-vf" => {
            let x: WittVec<PAdic> = component(result, "x_lambda")?;
            if x.len() != length {
                return schema("x_lambda has the wrong length");
            }
            let iota = iota_lambda(p, length, w).map_err(core_error)?;
            let one = WittVec::one(&PAdic::one(p, w), length);
            let vf = x.frobenius().map_err(core_error)?.verschiebung();
            verify_ghost_identity(Identity::Product { x: &iota, y: &one, z: &vf })
        }
        other => return schema(format!("{other} has no components to re-check")),
    };
    levels.map_err(core_error)
}

/// Re-run `src` and compare. The returned report passes when the verdicts are
/// reproduced, the components re-check, and `src` itself passed.
pub fn verify_report(src: &Report) -> SchemaResult<Report> {
    if !COMMANDS.contains(&src.command.as_str()) {
        return schema(format!("unknown command {:?}", src.command));
    }
    let rerun = run(&src.command, src.params.clone())?;
    let mut verdicts = vec![
        Verdict { check: "verdicts reproduced".into(), pass: rerun.verdicts == src.verdicts && rerun.pass == src.pass },
        Verdict { check: "result reproduced".into(), pass: rerun.result == src.result },
    ];
    let mut rechecked = Vec::new();
    if src.result.get("components").is_some() {
        let stored = src.result["ghost_checks"].as_array().cloned().unwrap_or_default();
        let levels = recheck(&src.command, &src.result)?;
        let agree = levels.len() == stored.len()
            && levels.iter().zip(&stored).all(|(c, s)| s["level"] == c.level && s["pass"] == c.pass);
        for c in &levels {
            rechecked.push(json!({ "level": c.level, "pass": c.pass, "residual_valuation": c.residual_valuation }));
            verdicts.push(Verdict { check: format!("components re-check at level {}", c.level), pass: c.pass });
        }
        verdicts.push(Verdict { check: "re-check agrees with recorded ghost checks".into(), pass: agree });
    }
    verdicts.push(Verdict { check: "source report passes".into(), pass: src.pass });
    let pass = verdicts.iter().all(|v| v.pass);
    let failure = verdicts.iter().find(|v| !v.pass).map(|v| json!({ "check": v.check }));
    Ok(Report {
        command: "verify-report".into(),
        params: Default::default(),
        budget: src.budget.clone(),
        pass,
        verdicts,
        failure,
        result: json!({ "source": src.command, "source_params": src.params, "rechecked": rechecked }),
    })
}

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use clap::Parser;
use serde_json::{json, Value};

use prigid::pgroup::{closure_of, GroupElement, GroupSpec, Subgroup};
use prigid::symbol::{symbol, FieldDescriptor, FieldElem};

use crate::cli::Cli;
use crate::commands::{self, symbol_json, Outcome};
use crate::report::Report;

struct Checks(Vec<(String, bool)>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }
}

/// Re-runs the command recorded in a report, requires identical output,
/// and re-checks the serialized witnesses directly.
pub fn reverify(path: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let saved = Report::from_json(&text).map_err(|e| prigid::Error::Usage(format!("{}: {e}", path.display())))?;
    let mut checks = Checks(Vec::new());

    let cli = Cli::try_parse_from(std::iter::once("prigid".to_string()).chain(saved.command.iter().cloned()))
        .map_err(|e| prigid::Error::Usage(format!("recorded command does not parse: {e}")))?;
    let rerun = commands::run(&cli)?;
    checks.push("rerun reproduces the report byte for byte", rerun.report.to_json() == saved.to_json());
    checks.push("rerun passes its own checks", rerun.pass);

    match saved.command.first().map(String::as_str) {
        Some("group") => group_checks(&saved, &mut checks)?,
        Some("rigidity") => rigidity_checks(&saved, &mut checks)?,
        Some("solve") => {
            let roots = array(&saved.witnesses, "roots")?;
            checks.push("every recorded root is marked verified", roots.iter().all(|r| r["verified"] == json!(true)));
        }
        Some("witness") => {
            let v = saved.witnesses["certificate"]["v_beta"].as_i64().ok_or_else(|| anyhow!("missing v_beta"))?;
            let p = saved.inputs["p"].as_i64().ok_or_else(|| anyhow!("missing p"))?;
            checks.push("recorded v_P(beta) is prime to p", v.rem_euclid(p) != 0);
        }
        Some("accept") => checks.push("recorded suite passed", saved.verdicts["all_pass"] == json!(true)),
        _ => {}
    }

    let mut report = Report::new(vec!["--reverify".into(), path.display().to_string()]);
    report.input("command", &saved.command);
    let all = checks.0.iter().all(|c| c.1);
    for (name, ok) in &checks.0 {
        eprintln!("{} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    report.verdict("checks", checks.0.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect::<Vec<_>>());
    report.verdict("all_ok", all);
    Ok(Outcome { report, pass: all })
}

fn array<'a>(map: &'a std::collections::BTreeMap<String, Value>, key: &str) -> Result<&'a Vec<Value>> {
    map.get(key).and_then(Value::as_array).ok_or_else(|| anyhow!("report has no `{key}` array"))
}

fn element(v: &Value) -> Result<GroupElement> {
    let coords = serde_json::from_value(v.clone()).context("group element coordinates")?;
    Ok(GroupElement { coords })
}

fn subgroup(owner: &std::sync::Arc<GroupSpec>, v: &Value) -> Result<Subgroup> {
    let gens = v["generators"].as_array().ok_or_else(|| anyhow!("subgroup without generators"))?;
    let gens = gens.iter().map(element).collect::<Result<Vec<_>>>()?;
    let h = closure_of(owner, &gens)?;
    if v["order"].as_u64() != Some(h.order()) {
        return Err(anyhow!("recorded subgroup order does not match the closure of its generators"));
    }
    Ok(h)
}

fn group_checks(saved: &Report, checks: &mut Checks) -> Result<()> {
    let desc = saved.inputs["group"].as_str().ok_or_else(|| anyhow!("missing group"))?;
    let owner = GroupSpec::parse(desc)?;
    let w = &saved.witnesses;
    if let (Some(c), Some(pp)) = (w.get("commutator_outside_pth_powers"), w.get("pth_powers")) {
        let x = owner.encode(&element(c)?)?;
        checks.push("commutator witness lies outside G^p", !subgroup(&owner, pp)?.contains(x));
    }
    if let Some(x) = w.get("lambda3_element_outside_frattini_squared") {
        let x = owner.encode(&element(x)?)?;
        let phi2 = subgroup(&owner, &w["frattini_squared"])?;
        let lam = subgroup(&owner, &w["lambda3"])?;
        checks.push("lambda_3 witness lies in lambda_3 and outside the Frattini square", lam.contains(x) && !phi2.contains(x));
    }
    if let Some(ms) = w.get("subgroups").and_then(Value::as_array) {
        let mut ok = true;
        for m in ms {
            ok &= subgroup(&owner, &m["subgroup"])?.order() * owner.p() == owner.order();
        }
        checks.push("maximal subgroups have index p", ok);
    }
    Ok(())
}

fn rigidity_checks(saved: &Report, checks: &mut Checks) -> Result<()> {
    let p = saved.inputs["p"].as_u64().ok_or_else(|| anyhow!("missing p"))?;
    let desc = saved.inputs["field"].as_str().ok_or_else(|| anyhow!("missing field"))?;
    let field = FieldDescriptor::parse(desc, p)?;
    let f = field.base();
    let Some(basis) = saved.inputs.get("basis").and_then(Value::as_array) else { return Ok(()) };
    let basis = basis
        .iter()
        .map(|b| field.parse_elem(b.as_str().unwrap_or_default()))
        .collect::<prigid::Result<Vec<FieldElem>>>()?;
    if let Some(wedges) = saved.witnesses.get("wedges").and_then(Value::as_array) {
        let mut ok = true;
        for wg in wedges {
            let (i, j) = (wg["i"].as_u64().unwrap_or(0) as usize, wg["j"].as_u64().unwrap_or(0) as usize);
            ok &= symbol_json(f, &symbol(&field, &basis[i], &basis[j])?) == wg["symbol"];
        }
        checks.push("wedge symbols recompute from the basis", ok);
    }
    if let Some(el) = saved.inputs.get("element").and_then(Value::as_str) {
        let a = field.parse_elem(el)?;
        let recorded = array(&saved.witnesses, "symbols")?;
        let mut ok = recorded.len() == basis.len();
        for (b, s) in basis.iter().zip(recorded) {
            ok &= symbol_json(f, &symbol(&field, &a, b)?) == *s;
        }
        checks.push("symbols (a, b_j) recompute from the basis", ok);
        // each kernel vector pairs to zero at every place
        let mut pairs = true;
        for k in array(&saved.witnesses, "kernel")? {
            let k: Vec<u64> = serde_json::from_value(k.clone())?;
            let places: std::collections::BTreeSet<&String> =
                recorded.iter().filter_map(Value::as_object).flat_map(|o| o.keys()).collect();
            for place in places {
                let total: u64 = k.iter().zip(recorded).map(|(c, s)| c * s[place.as_str()].as_u64().unwrap_or(0)).sum();
                pairs &= total.is_multiple_of(p);
            }
        }
        checks.push("kernel vectors pair to zero symbols", pairs);
    }
    Ok(())
}

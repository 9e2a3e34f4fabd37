use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use prigid::arith::gcd;
use prigid::fq::FqField;
use prigid::pgroup::{
    dimension_closed_form, dimension_subgroups, frattini_iterates, generator_rank, is_powerful, j_module_test,
    lower_central_series, lower_p_series, maximal_subgroups, power_subgroup, theorem_a_group_test, tower_group,
    whole, GroupSpec, SeriesReport, Subgroup, DEFAULT_RANK_BOUND,
};
use prigid::puiseux::{as_nonnested_radicals, puiseux_roots, splitting_descriptor, verify_root, Residual, SeriesPoly};
use prigid::symbol::{
    default_basis, galois_criterion_bicyclic, hereditary_probe, hilbert90_witness, is_element_rigid, is_field_rigid,
    kummer_tower, steinberg_witness, tower_galois_group, FieldDescriptor, FieldElem, GaloisVerdict, HereditaryNode,
    SymbolVector, DEFAULT_TOWER_BOUND,
};

use crate::cli::{value_name, Cli, Command, GroupAction, RigidityAction, SeriesArg};
use crate::notes;
use crate::report::Report;

/// Default series length and tower depth for `group`.
const DEFAULT_GROUP_N: usize = 10;
const DEFAULT_SOLVE_PRECISION: i64 = 3;

/// A report and whether every check inside it passed.
pub struct Outcome {
    pub report: Report,
    pub pass: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, pass: true }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let Some(cmd) = &cli.command else {
        bail!(prigid::Error::Usage("a subcommand or --reverify is required".into()));
    };
    match cmd {
        Command::Group { action, descriptor, n, kind } => group(cli, *action, descriptor, *n, *kind).map(Outcome::ok),
        Command::Rigidity { action, field, element, basis, depth } => {
            rigidity(cli, *action, field, element.as_deref(), basis, *depth).map(Outcome::ok)
        }
        Command::Tower { field, n } => tower(cli, field, *n).map(Outcome::ok),
        Command::Witness { field } => witness(cli, field).map(Outcome::ok),
        Command::Solve { field, poly } => solve(cli, field, poly),
        Command::Accept { seed_file, write_seed_file } => {
            crate::accept::command(cli, seed_file.as_deref(), write_seed_file.as_deref())
        }
    }
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

pub fn subgroup_json(h: &Subgroup) -> Value {
    serde_json::to_value(h.summary()).expect("summary serializes")
}

fn coords(owner: &GroupSpec, x: u32) -> Vec<u64> {
    owner.decode(x).coords
}

fn load_group(desc: &str, bound: Option<u64>) -> Result<(Arc<GroupSpec>, Subgroup)> {
    let mut owner = GroupSpec::parse(desc)?;
    if let Some(b) = bound {
        owner = owner.with_bound(b);
    }
    let g = whole(&owner)?;
    Ok((owner, g))
}

fn series_json(s: &SeriesReport) -> Value {
    json!({
        "kind": s.kind,
        "orders": s.orders(),
        "indices": s.indices,
        "terms": s.terms.iter().map(subgroup_json).collect::<Vec<_>>(),
        "descending_normal": s.is_descending_normal(),
    })
}

fn group(cli: &Cli, action: GroupAction, desc: &str, n: Option<usize>, kind: SeriesArg) -> Result<Report> {
    let (owner, g) = load_group(desc, cli.bound)?;
    let n = n.unwrap_or(DEFAULT_GROUP_N);
    let bound = owner.bound().to_string();
    let mut cmd = argv(&["group", &value_name(action), owner.descriptor(), "--n", &n.to_string(), "--bound", &bound]);
    if action == GroupAction::Series {
        cmd.extend(argv(&["--kind", &value_name(kind)]));
    }
    let mut r = Report::new(cmd);
    r.input("group", owner.descriptor()).input("order", g.order()).input("p", owner.p());
    match action {
        GroupAction::Series => {
            let s = match kind {
                SeriesArg::LowerP => lower_p_series(&g, n)?,
                SeriesArg::LowerCentral => lower_central_series(&g, n)?,
                SeriesArg::Frattini => frattini_iterates(&g, n)?,
            };
            // stop after the first trivial term
            let keep = s.terms.iter().position(Subgroup::is_trivial).map_or(s.terms.len(), |i| i + 1);
            let s = SeriesReport { kind: s.kind, terms: s.terms[..keep].to_vec(), indices: s.indices[..keep - 1].to_vec() };
            r.verdict("nontrivial_terms", s.terms.iter().filter(|t| !t.is_trivial()).count());
            r.verdict("series", series_json(&s));
        }
        GroupAction::Dimension => {
            let d = dimension_subgroups(&g, n)?;
            r.verdict("orders", d.series.orders()).verdict("quotient_orders", &d.quotient_orders);
            if let Some(spec) = owner.theta_spec() {
                let agree = (1..=n).all(|i| d.series.term(i).elements() == dimension_closed_form(&g, i).elements());
                r.verdict("closed_form_agrees", agree);
                let dg = generator_rank(&g)?;
                if let Some(note) = notes::dimension_quotient(owner.p(), spec.rho_count(), dg, &d.quotient_orders) {
                    r.notes.push(note);
                }
            }
            r.witness("terms", d.series.terms.iter().map(subgroup_json).collect::<Vec<_>>());
        }
        GroupAction::Powerful => {
            let v = is_powerful(&g)?;
            r.verdict("powerful", v.powerful)
                .verdict("derived_order", v.derived.order())
                .verdict("pth_powers_order", v.pth_powers.order());
            if let Some(w) = v.witness {
                r.witness("commutator_outside_pth_powers", coords(&owner, w));
                r.witness("pth_powers", subgroup_json(&v.pth_powers));
            }
        }
        GroupAction::TheoremA => {
            let t = theorem_a_group_test(&g)?;
            let d = generator_rank(&g)?;
            let index = g.order() / t.lambda3.order();
            let p2d = owner.p().pow(2 * d);
            r.verdict("equal", t.equal)
                .verdict("frattini_squared_order", t.frattini_squared.order())
                .verdict("lambda3_order", t.lambda3.order())
                .verdict("generator_rank", d)
                .verdict("index_lambda3", index)
                .verdict("index_is_p_to_2d", index == p2d)
                .verdict("lambda3_is_p_squared_powers", t.lambda3 == power_subgroup(&g, 2));
            r.witness("frattini_squared", subgroup_json(&t.frattini_squared));
            r.witness("lambda3", subgroup_json(&t.lambda3));
            if let Some(&x) = t.lambda3.elements().iter().find(|&&x| !t.frattini_squared.contains(x)) {
                r.witness("lambda3_element_outside_frattini_squared", coords(&owner, x));
            }
        }
        GroupAction::Jmodule => {
            let j = j_module_test(&g)?;
            r.verdict("full_order", j.full_order)
                .verdict("invariant_order", j.invariant_order)
                .verdict("equal", j.equal);
        }
        GroupAction::Maximal => {
            let ms = maximal_subgroups(&g, DEFAULT_RANK_BOUND)?;
            let ranks: Vec<u32> = ms.iter().map(|m| m.rank).collect();
            r.verdict("count", ms.len()).verdict("ranks", &ranks);
            r.witness(
                "subgroups",
                ms.iter()
                    .map(|m| json!({"functional": m.functional, "rank": m.rank, "subgroup": subgroup_json(&m.subgroup)}))
                    .collect::<Vec<_>>(),
            );
        }
        GroupAction::Tower => {
            let spec = owner
                .theta_spec()
                .ok_or_else(|| prigid::Error::Usage("group tower needs a theta descriptor".into()))?;
            let levels = (1..=n as u32).map(|i| tower_group(spec, i)).collect::<prigid::Result<Vec<_>>>()?;
            if let Some(note) = notes::tower_abelian_rule(spec, &levels) {
                r.notes.push(note);
            }
            r.verdict("levels", levels);
        }
    }
    Ok(r)
}

fn parse_field(cli: &Cli, s: &str) -> Result<FieldDescriptor> {
    FieldDescriptor::parse(s, cli.p).with_context(|| format!("field descriptor `{s}`"))
}

pub fn symbol_json(f: &FqField, s: &SymbolVector) -> Value {
    Value::Object(s.labeled(f).into_iter().map(|(k, v)| (k, json!(v))).collect())
}

fn node_json(n: &HereditaryNode) -> Value {
    json!({
        "line": [n.line.0, n.line.1],
        "kind": n.kind,
        "field": n.field,
        "rigid": n.rigid,
        "children": n.children.iter().map(node_json).collect::<Vec<_>>(),
    })
}

fn rigidity(
    cli: &Cli,
    action: RigidityAction,
    field_s: &str,
    element: Option<&str>,
    basis_s: &[String],
    depth: u32,
) -> Result<Report> {
    let field = parse_field(cli, field_s)?;
    let f = field.base();
    let basis: Vec<FieldElem> = if basis_s.is_empty() {
        default_basis(&field)?
    } else {
        basis_s.iter().map(|b| field.parse_elem(b)).collect::<prigid::Result<_>>()?
    };
    let basis_labels: Vec<String> = basis.iter().map(|b| field.format_elem(b)).collect();
    let p = field.p().to_string();
    let mut cmd = argv(&["rigidity", &value_name(action), &field.descriptor(), "--p", &p]);
    match action {
        RigidityAction::Check | RigidityAction::Element => cmd.extend(argv(&["--basis", &basis_labels.join(";")])),
        RigidityAction::Hereditary => cmd.extend(argv(&["--depth", &depth.to_string()])),
        RigidityAction::Steinberg => {}
    }
    let element = match (action, element) {
        (RigidityAction::Element, None) => bail!(prigid::Error::Usage("rigidity element needs --element".into())),
        (RigidityAction::Element, Some(e)) => {
            let a = field.parse_elem(e)?;
            cmd.extend(argv(&["--element", &field.format_elem(&a)]));
            Some(a)
        }
        _ => None,
    };
    let mut r = Report::new(cmd);
    r.input("field", field.descriptor()).input("p", field.p()).input("k", field.k());
    r.input("zeta", f.format_elem(field.zeta())).input("ustar", f.format_elem(field.ustar()));
    match action {
        RigidityAction::Check => {
            let v = is_field_rigid(&field, &basis)?;
            r.input("basis", &basis_labels);
            r.verdict("rigid", v.rigid)
                .verdict("completeness", v.completeness)
                .verdict("dimension", v.dimension)
                .verdict("wedge_rank", v.wedge_rank);
            r.witness(
                "wedges",
                v.wedges.iter().map(|(i, j, s)| json!({"i": i, "j": j, "symbol": symbol_json(f, s)})).collect::<Vec<_>>(),
            );
            if let Some((i, j)) = v.witness {
                r.witness("trivial_symbol_pair", [i, j]);
            }
        }
        RigidityAction::Element => {
            let a = element.expect("checked above");
            let v = is_element_rigid(&field, &a, &basis)?;
            r.input("basis", &basis_labels).input("element", field.format_elem(&a));
            r.verdict("rigid", v.rigid).verdict("kernel_dimension", v.kernel.len());
            r.witness("element_coords", &v.element_coords).witness("kernel", &v.kernel);
            r.witness("symbols", v.symbols.iter().map(|s| symbol_json(f, s)).collect::<Vec<_>>());
        }
        RigidityAction::Hereditary => {
            let h = hereditary_probe(&field, depth)?;
            r.input("depth", depth);
            r.verdict("base_rigid", h.base_rigid)
                .verdict("level_counts", &h.level_counts)
                .verdict("all_rigid", h.all_rigid);
            r.witness("extensions", h.nodes.iter().map(node_json).collect::<Vec<_>>());
        }
        RigidityAction::Steinberg => {
            let w = steinberg_witness(&field)?;
            r.verdict("independent", w.independent)
                .verdict("symbol_is_zero", w.symbol.is_zero())
                .verdict("norm_identity_verified", w.norm_identity_verified);
            r.witness("a", field.format_elem(&w.a)).witness("b", field.format_elem(&w.b));
            r.witness("symbol", symbol_json(f, &w.symbol));
        }
    }
    Ok(r)
}

/// `u128` values that fit in JSON integers stay numbers, larger ones become
/// decimal strings.
pub fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn tower(cli: &Cli, field_s: &str, n: u32) -> Result<Report> {
    let field = parse_field(cli, field_s)?;
    let bound = cli.bound.map_or(DEFAULT_TOWER_BOUND, |b| b as u32);
    let p = field.p().to_string();
    let cmd = argv(&["tower", &field.descriptor(), "--p", &p, "--n", &n.to_string(), "--bound", &bound.to_string()]);
    let mut r = Report::new(cmd);
    r.input("field", field.descriptor()).input("p", field.p()).input("k", field.k()).input("n", n);
    let level = kummer_tower(&field, n, bound)?;
    let cf = &level.coefficient_field;
    r.verdict("coefficient_field", cf.descriptor())
        .verdict("r", level.r)
        .verdict("s", level.s)
        .verdict("class_dimension", level.class_dimension)
        .verdict("independent", level.independent)
        .verdict("compatible", level.compatible);
    r.witness("zeta", cf.format_elem(&level.zeta))
        .witness("zeta_exponent", level.zeta_exponent)
        .witness("class_exponent", big(level.class_exponent))
        .witness("class_exponent_residue", big(level.class_exponent_residue))
        .witness(
            "generators",
            level.generators.iter().map(|(b, d)| json!({"base": b, "root_degree": big(*d)})).collect::<Vec<_>>(),
        );
    let gal = tower_galois_group(&field, n)?;
    r.verdict(
        "galois_group",
        json!({
            "model": gal.spec.descriptor(),
            "order": gal.order,
            "abelian": gal.is_abelian,
            "powerful": gal.powerful,
            "sigma_frobenius_power": gal.sigma_frobenius_power,
            "relation_verified": gal.relation_verified,
            "isomorphism_verified": gal.isomorphism_verified,
        }),
    );
    let levels = (1..=n).map(|i| tower_group(&gal.spec, i)).collect::<prigid::Result<Vec<_>>>()?;
    if let Some(note) = notes::tower_abelian_rule(&gal.spec, &levels) {
        r.notes.push(note);
    }
    Ok(r)
}

pub fn verdict_json(v: &GaloisVerdict) -> Value {
    match v {
        GaloisVerdict::Galois => json!({"galois": true}),
        GaloisVerdict::NonGalois { automorphism, class } => {
            json!({"galois": false, "automorphism": automorphism, "class": [class.0, class.1]})
        }
        GaloisVerdict::NonGaloisCertified { automorphism, place, valuation } => {
            json!({"galois": false, "automorphism": automorphism, "place": place, "valuation": valuation})
        }
        GaloisVerdict::Undecided { reason } => json!({"galois": null, "reason": reason}),
    }
}

fn witness(cli: &Cli, field_s: &str) -> Result<Report> {
    let field = parse_field(cli, field_s)?;
    let p = field.p().to_string();
    let mut r = Report::new(argv(&["witness", &field.descriptor(), "--p", &p]));
    r.input("field", field.descriptor()).input("p", field.p());
    let w = hilbert90_witness(&field)?;
    let alg = &w.algebra;
    let f = field.base();
    r.input("algebra", alg.descriptor());
    r.verdict("norm_verified", w.norm_verified)
        .verdict("resolvent_verified", w.resolvent_verified)
        .verdict("beta_valuation", w.certificate.v_beta)
        .verdict("beta_is_pth_power", w.certificate.v_beta.rem_euclid(field.p() as i64) == 0);
    let verdict = galois_criterion_bicyclic(alg, &w.gamma, &[(1, 0)])?;
    r.verdict("gamma_extension", verdict_json(&verdict));
    r.witness("a", w.a.format(f))
        .witness("b", w.b.format(f))
        .witness("delta", alg.format(&w.delta))
        .witness("c", alg.format(&w.c))
        .witness("beta", alg.format(&w.beta))
        .witness("theta_index", w.theta_index)
        .witness("gamma", alg.format(&w.gamma))
        .witness("norm_delta", alg.format(&w.norm_delta))
        .witness("certificate", &w.certificate);
    Ok(r)
}

fn residual_json(res: &Residual) -> Value {
    match res {
        Residual::Zero => json!("exact"),
        _ => json!(res.to_string()),
    }
}

fn solve(cli: &Cli, field_s: &str, poly_s: &str) -> Result<Outcome> {
    let field = parse_field(cli, field_s)?;
    let f = field.base();
    let prec = cli.prec.unwrap_or(DEFAULT_SOLVE_PRECISION);
    let poly = SeriesPoly::parse(&field, poly_s)?;
    let tame = cli.bound.unwrap_or(field.p().pow(2));
    let p = field.p().to_string();
    let cmd = argv(&[
        "solve",
        &field.descriptor(),
        "--p",
        &p,
        "--poly",
        &poly.format(f),
        "--prec",
        &prec.to_string(),
        "--bound",
        &tame.to_string(),
    ]);
    let mut r = Report::new(cmd);
    r.input("field", field.descriptor()).input("poly", poly.format(f)).input("precision", prec);
    let roots = puiseux_roots(&field, &poly, prec, tame)?;
    let mut pass = true;
    let mut out = Vec::new();
    for root in &roots {
        let chk = verify_root(f, &poly, root)?;
        pass &= chk.ok;
        let radicals = as_nonnested_radicals(&field, root)?;
        let e = root.e as i64;
        let terms: Vec<Value> = root
            .terms()
            .into_iter()
            .map(|(m, c)| json!({"exponent": exponent(m, e), "coefficient": root.field.format_elem(&c)}))
            .collect();
        out.push(json!({
            "series": root.format(),
            "terms": terms,
            "precision": root.precision,
            "e": root.e,
            "r": root.r,
            "s": root.s,
            "coefficient_field": root.field.descriptor(),
            "generators": radicals.generators.iter().map(|(b, d)| json!({"base": b, "root_degree": d})).collect::<Vec<_>>(),
            "radical_form": radicals.format(f),
            "radical_generators": radicals.describe_generators(),
            "residual_valuation": residual_json(&chk.residual),
            "verified": chk.ok,
        }));
    }
    let split = splitting_descriptor(&field, &poly, &roots)?;
    pass &= split.contained;
    r.verdict("root_count", roots.len()).verdict("all_verified", pass).verdict("splitting", &split);
    r.witness("roots", out);
    Ok(Outcome { report: r, pass })
}

/// `m/e` in lowest terms.
fn exponent(m: i64, e: i64) -> String {
    let g = gcd(m, e).abs().max(1);
    let (a, b) = (m / g, e / g);
    if b == 1 {
        a.to_string()
    } else {
        format!("{a}/{b}")
    }
}

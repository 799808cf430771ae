use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::sync::Arc;

use opforge::barkoszul::{bar_complex, bar_complex_module, check_module_pk, check_poincare_koszul, BarComplex, DualityReport};
use opforge::cubes::layer_report;
use opforge::exactla::DimTable;
use opforge::modules::{build_module, describe, module_registry, restrict, suspend_module, RightModule};
use opforge::operads::{build_morphism, build_operad, morphism_registry, operad_registry, Operad, Params};
use opforge::selftest;
use opforge::{Error, Result};
use serde_json::{json, Value};

use crate::output::Report;
use crate::{Global, ModuleSel, OperadSel};

fn info(text: String, json: Value, csv: String) -> Report {
    Report { text, json, csv, pass: true }
}

fn build_op(g: &Global, sel: &OperadSel) -> Result<Arc<dyn Operad>> {
    let name = sel.name.as_deref().ok_or_else(|| Error::Argument("an operad name is required".into()))?;
    let params = Params { n: sel.n, suspend: sel.suspend, force: g.force, operad: None };
    build_operad(name, &params)
}

fn module_kind(kind: &str) -> &str {
    match kind {
        "sphere-diagonal" => "sphere",
        "torus-diagonal" => "torus",
        "configuration" => "config",
        k => k,
    }
}

fn build_mod(g: &Global, sel: &ModuleSel) -> Result<Arc<dyn RightModule>> {
    let kind = sel.kind.as_deref().ok_or_else(|| Error::Argument("a module kind is required".into()))?;
    let params = Params { n: sel.n, suspend: 0, force: g.force, operad: sel.of.clone() };
    let mut m = build_module(module_kind(kind), &params)?;
    if let Some(along) = &sel.along {
        let f = build_morphism(along, &Params { n: sel.n, force: g.force, ..Params::default() })?;
        m = restrict(m, Arc::new(f))?;
    }
    if let Some((n, d)) = sel.shift {
        m = suspend_module(m, n, d);
    }
    Ok(m)
}

fn dims_csv(t: &DimTable) -> String {
    t.to_csv()
}

fn basis_text(basis: &[(String, i64)]) -> String {
    let mut s = String::from("basis:\n");
    for (label, d) in basis {
        let _ = writeln!(s, "  {label}  (degree {d})");
    }
    s
}

pub fn operad_show(g: &Global, sel: &OperadSel, arity: usize, with_basis: bool) -> Result<Report> {
    let op = build_op(g, sel)?;
    let space = op.space(arity)?;
    let poincare = op.poincare(arity)?;
    let mut text = format!("{} arity {arity}\npoincare: {poincare}\ndimension: {}\n", op.name(), space.dim());
    let mut json = json!({
        "operad": op.name(),
        "arity": arity,
        "poincare": poincare.to_string(),
        "dimensions": space.dim_table().to_json(),
    });
    if with_basis {
        text.push_str(&basis_text(space.basis()));
        json["basis"] = space.basis().iter().map(|(l, d)| json!({"label": l, "degree": d})).collect();
    }
    Ok(info(text, json, dims_csv(&space.dim_table())))
}

pub fn module_show(g: &Global, sel: &ModuleSel, arity: usize, with_basis: bool) -> Result<Report> {
    let m = build_mod(g, sel)?;
    let json = describe(&*m, arity, with_basis)?;
    let space = m.space(arity)?;
    let mut text = format!(
        "{} over {} arity {arity}\npoincare: {}\ndimension: {}\n",
        m.name(),
        m.operad().name(),
        m.poincare(arity)?,
        space.dim()
    );
    if with_basis {
        text.push_str(&basis_text(space.basis()));
    }
    Ok(info(text, json, dims_csv(&space.dim_table())))
}

fn bar_report(g: &Global, b: BarComplex) -> Result<Report> {
    let complex = b.complex.space_dims();
    let (field, homology) = match g.prime {
        Some(p) => (format!("F_{p}"), b.homology_mod(p)?),
        None => ("Q".to_string(), b.homology()),
    };
    let mut text = format!("bar complex of {} in arity {} over {field}\n", b.source, b.arity());
    let mut csv = String::from("degree,complex,homology\n");
    for (&d, &n) in &complex.0 {
        let h = homology.get(d);
        let _ = writeln!(text, "  degree {d}: complex {n}, homology {h}");
        let _ = writeln!(csv, "{d},{n},{h}");
    }
    let json = json!({
        "source": b.source,
        "arity": b.arity(),
        "field": field,
        "complex": complex.to_json(),
        "homology": homology.to_json(),
    });
    Ok(info(text, json, csv))
}

pub fn bar_homology(g: &Global, sel: &OperadSel, arity: usize) -> Result<Report> {
    let op = build_op(g, sel)?;
    bar_report(g, bar_complex(&*op, arity)?)
}

pub fn bar_homology_module(g: &Global, sel: &ModuleSel, arity: usize) -> Result<Report> {
    let m = build_mod(g, sel)?;
    bar_report(g, bar_complex_module(&*m, arity)?)
}

fn duality(r: DualityReport) -> Report {
    Report { text: r.to_text(), json: r.to_json(), csv: r.to_csv(), pass: r.all_pass() }
}

pub fn koszul_check(g: &Global, sel: &OperadSel, dual_shift: Option<i64>, arities: RangeInclusive<usize>) -> Result<Report> {
    let op = build_op(g, sel)?;
    let shift = dual_shift
        .or(sel.n)
        .ok_or_else(|| Error::Argument("give --dual-shift or --n for the suspension of the dual".into()))?;
    let arities: Vec<usize> = arities.collect();
    if arities.is_empty() {
        return Err(Error::Argument("the arity range is empty".into()));
    }
    Ok(duality(check_poincare_koszul(&*op, shift, &arities, g.prime)?))
}

pub fn koszul_check_module(
    g: &Global,
    module: &str,
    target: &str,
    n: i64,
    d: i64,
    arities: RangeInclusive<usize>,
) -> Result<Report> {
    let sel = |kind: &str| ModuleSel { kind: Some(kind.into()), n: Some(n), of: None, shift: None, along: None };
    let source = build_mod(g, &sel(module))?;
    let target = build_mod(g, &sel(target))?;
    let arities: Vec<usize> = arities.collect();
    if arities.is_empty() {
        return Err(Error::Argument("the arity range is empty".into()));
    }
    Ok(duality(check_module_pk(&*source, &*target, (n, d), &arities, g.prime)?))
}

pub fn layers(n: i64, k: usize) -> Result<Report> {
    let r = layer_report(n, k)?;
    Ok(Report { text: r.to_text(), json: r.to_json(), csv: r.to_csv(), pass: r.pass })
}

pub fn selftest(criterion: Option<u8>) -> Result<Report> {
    let outcomes = match criterion {
        Some(id) => vec![selftest::run(id)?],
        None => selftest::run_all(),
    };
    let mut text = String::new();
    let mut csv = String::from("criterion,title,pass,checks,failures\n");
    let mut items = Vec::new();
    for o in &outcomes {
        text.push_str(&o.line());
        text.push('\n');
        let _ = writeln!(csv, "{},{},{},{},{}", o.criterion.id, o.criterion.title, o.pass, o.checks, o.failures.len());
        items.push(json!({
            "criterion": o.criterion.id,
            "title": o.criterion.title,
            "pass": o.pass,
            "checks": o.checks,
            "failures": o.failures,
            "limit_seconds": o.criterion.limit.as_secs(),
        }));
    }
    let pass = outcomes.iter().all(|o| o.pass);
    Ok(Report { text, json: Value::Array(items), csv, pass })
}

pub fn list() -> Report {
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let sections: [(&str, Vec<(&str, &str)>); 3] = [
        ("operads", operad_registry().iter().map(|f| (f.name(), f.summary())).collect()),
        ("morphisms", morphism_registry().iter().map(|f| (f.name(), f.summary())).collect()),
        ("modules", module_registry().iter().map(|f| (f.name(), f.summary())).collect()),
    ];
    let mut csv = String::from("section,name,summary\n");
    for (section, entries) in sections {
        let _ = writeln!(text, "{section}:");
        let mut obj = serde_json::Map::new();
        for (name, summary) in entries {
            let _ = writeln!(text, "  {name:<16} {summary}");
            let _ = writeln!(csv, "{section},{name},\"{summary}\"");
            obj.insert(name.to_string(), Value::String(summary.to_string()));
        }
        json.insert(section.to_string(), Value::Object(obj));
    }
    info(text, Value::Object(json), csv)
}

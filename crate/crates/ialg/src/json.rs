//! JSON views of core reports. Elements are always rendered as labels.

use ialg_core::audit::{erratum, render_params, AuditReport};
use ialg_core::identities::{Grade, Identity, StructureVerdict};
use ialg_core::special::{Certificate, SpecialElementReport};
use ialg_core::subs::{LoopCenters, Normalizers, SubloopFamilyMember, SubsReport, Substructure, WitnessReport};
use ialg_core::{Magma, Result, Structure, StructureClass};
use serde_json::{json, Map, Value};

pub fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

fn interval(s: &Structure, i: usize) -> bool {
    s.components()[i].flavor.is_interval()
}

/// Labels of component `i`'s elements at `idx`.
pub fn labels(s: &Structure, i: usize, idx: &[usize]) -> Result<Vec<String>> {
    let m = s.magma(i)?;
    Ok(idx.iter().map(|&k| m.element(k).label(interval(s, i))).collect())
}

pub fn magma_labels(m: &Magma, interval: bool, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&k| m.element(k).label(interval)).collect()
}

pub fn class(s: &Structure, i: usize, c: &StructureClass) -> Result<Value> {
    let identity = s.magma(i)?.identity()?.map(|e| e.label(interval(s, i)));
    Ok(json!({
        "class": c.label.name(),
        "closed": c.closed,
        "associative": c.associative,
        "commutative": c.commutative,
        "identity": identity,
        "all_invertible": c.all_invertible,
        "latin_square": c.latin_square,
    }))
}

pub fn classify(s: &Structure) -> Result<Map<String, Value>> {
    let classes = s.classes()?;
    let comps = classes
        .iter()
        .enumerate()
        .map(|(i, c)| class(s, i, c))
        .collect::<Result<Vec<_>>>()?;
    let mut m = Map::new();
    m.insert("kind".into(), s.kind_name()?.into());
    m.insert("label".into(), s.class_label()?.into());
    m.insert("order".into(), big(s.order()?));
    m.insert("components".into(), comps.into());
    Ok(m)
}

pub fn verdict(s: &Structure, id: &Identity, v: &StructureVerdict) -> Result<Map<String, Value>> {
    let comps = v
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(match &c.grade {
                Grade::Strong => json!({ "grade": "strong", "checked": c.checked }),
                Grade::SmarandacheVia(w) => {
                    json!({ "grade": "smarandache", "checked": c.checked, "witness": labels(s, i, w)? })
                }
                Grade::Fails(a) => {
                    json!({ "grade": "fails", "checked": c.checked, "counterexample": labels(s, i, a)? })
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = Map::new();
    m.insert("identity".into(), id.name.clone().into());
    m.insert("law".into(), id.to_string().into());
    m.insert("grade".into(), v.overall.name().into());
    m.insert("components".into(), comps.into());
    Ok(m)
}

pub fn special(s: &Structure, r: &SpecialElementReport) -> Map<String, Value> {
    let items: Vec<Value> = r
        .elements
        .iter()
        .map(|e| {
            let cert = match &e.certificate {
                Certificate::Partner(y) => json!({ "partner": s.label(y) }),
                Certificate::Power(k) => json!({ "power": k }),
                Certificate::None => Value::Null,
            };
            let mut o = json!({ "element": s.label(&e.element), "certificate": cert, "trivial": e.trivial });
            if let Some(mask) = &e.active_mask {
                o["active"] = json!(mask);
            }
            o
        })
        .collect();
    let mut m = Map::new();
    m.insert("kind".into(), r.kind.name().into());
    m.insert("quasi".into(), r.quasi.into());
    m.insert("count".into(), items.len().into());
    m.insert("elements".into(), items.into());
    m
}

pub fn substructure(s: &Structure, sub: &Substructure) -> Result<Value> {
    let parts = sub
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| labels(s, i, p))
        .collect::<Result<Vec<_>>>()?;
    let classes: Vec<&str> = sub.classes.iter().map(|c| c.label.name()).collect();
    Ok(json!({ "order": big(sub.order()), "parts": parts, "classes": classes }))
}

pub fn subs(s: &Structure, r: &SubsReport) -> Result<Map<String, Value>> {
    let items = r.items.iter().map(|x| substructure(s, x)).collect::<Result<Vec<_>>>()?;
    let mut m = Map::new();
    m.insert("complete".into(), r.complete.into());
    m.insert("count".into(), items.len().into());
    m.insert("items".into(), items.into());
    Ok(m)
}

pub fn witness(s: &Structure, w: &WitnessReport) -> Result<Map<String, Value>> {
    let parts = w
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| p.as_ref().map(|p| labels(s, i, p)).transpose())
        .collect::<Result<Vec<_>>>()?;
    let classes: Vec<&str> = w.classes.iter().map(|c| c.name()).collect();
    let mut m = Map::new();
    m.insert("grade".into(), w.grade.name().into());
    m.insert("witness".into(), json!(parts));
    m.insert("classes".into(), json!(classes));
    Ok(m)
}

pub fn centers(m: &Magma, interval: bool, c: &LoopCenters) -> Map<String, Value> {
    let l = |idx: &[usize]| Value::from(magma_labels(m, interval, idx));
    let mut o = Map::new();
    o.insert("commutant".into(), l(&c.commutant));
    o.insert("left_nucleus".into(), l(&c.left_nucleus));
    o.insert("middle_nucleus".into(), l(&c.middle_nucleus));
    o.insert("right_nucleus".into(), l(&c.right_nucleus));
    o.insert("nucleus".into(), l(&c.nucleus));
    o.insert("center".into(), l(&c.center));
    o.insert("moufang_center".into(), l(&c.moufang_center));
    o
}

pub fn subloops(m: &Magma, interval: bool, fam: &[SubloopFamilyMember]) -> Map<String, Value> {
    let items: Vec<Value> = fam
        .iter()
        .map(|f| {
            json!({
                "t": f.t,
                "i": f.i,
                "elements": magma_labels(m, interval, &f.elements),
                "closed": f.closed,
                "is_loop": f.is_loop,
            })
        })
        .collect();
    let mut o = Map::new();
    o.insert("count".into(), items.len().into());
    o.insert("family".into(), items.into());
    o
}

pub fn normalizers(m: &Magma, interval: bool, h: &[usize], n: &Normalizers) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("subset".into(), magma_labels(m, interval, h).into());
    o.insert("first".into(), magma_labels(m, interval, &n.first).into());
    o.insert("second".into(), magma_labels(m, interval, &n.second).into());
    o.insert("equal".into(), n.equal.into());
    o
}

pub fn audit(r: &AuditReport) -> Result<Map<String, Value>> {
    let refutations: Vec<Value> = r
        .refuted
        .iter()
        .map(|x| json!({ "params": render_params(&x.params), "counterexample": x.counterexample }))
        .collect();
    let errata = r
        .errata_refs
        .iter()
        .map(|id| {
            let e = erratum(id)?;
            Ok(json!({
                "id": e.id,
                "summary": e.summary,
                "printed": e.printed,
                "computed": e.computed,
                "confirmed": e.confirmed(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = Map::new();
    m.insert("claim".into(), r.claim.into());
    m.insert("status".into(), r.status.name().into());
    m.insert("checked".into(), r.checked.into());
    m.insert("confirmed".into(), r.confirmed.into());
    m.insert("refuted".into(), r.refuted.len().into());
    m.insert("refutations".into(), refutations.into());
    m.insert("errata".into(), errata.into());
    m.insert("note".into(), r.note.clone().into());
    Ok(m)
}

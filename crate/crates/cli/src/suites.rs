use cpl_core::algebra::{compatibility_defects, has_zero_mult_line, z2_membership, Variety};
use cpl_core::catalog::FamilySpec;
use cpl_core::geometry::{
    component_report, degeneration_graph, monotonicity_sample, random_admissible_point, rng_for, verify_degeneration,
    verify_non_degeneration, ClaimStatus, ComponentReport, DegenerationGraph, DegenerationOutcome, DegenerationWitness,
    WitnessOrigin,
};
use cpl_core::morphisms::{verify_aut_family, verify_iso_exception};
use rayon::prelude::*;

use crate::data::DataSet;
use crate::report::{Item, Status};
use crate::{CliError, RunConfig};

fn varieties(cfg: &RunConfig) -> Vec<Variety> {
    match cfg.variety {
        Some(v) => vec![v],
        None => Variety::ALL.to_vec(),
    }
}

fn keep(cfg: &RunConfig, item: &Item) -> bool {
    cfg.only.as_ref().is_none_or(|o| item.keys.iter().any(|k| k == o))
}

fn family_item(data: &DataSet, fam: &FamilySpec, vs: &[Variety]) -> Result<Item, CliError> {
    let cat = &data.catalog;
    let mut problems = Vec::new();
    let mut checked = Vec::new();
    if cat.base_product(&fam.base)? != fam.algebra.first {
        problems.push(format!("first product is not the table of {}", fam.base));
    }
    if z2_membership(&fam.algebra.first, &fam.algebra.second) {
        checked.push("Z2 of its base".to_string());
    } else {
        problems.push("second product is not in Z2 of the first".into());
    }
    for v in vs {
        for entry in cat.list(*v)?.iter().filter(|e| e.name == fam.name) {
            let defects = compatibility_defects(&entry.algebra, *v);
            if defects.is_empty() {
                checked.push(format!("{v} {}", entry.label));
            } else {
                problems.push(format!("{v} {}: {}", entry.label, defects.join(", ")));
            }
        }
    }
    let detail = if problems.is_empty() { checked.join("; ") } else { problems.join("; ") };
    Ok(Item::check(fam.name.clone(), problems.is_empty(), detail).keyed(&[&fam.label]))
}

pub fn verify_catalog(data: &DataSet, cfg: &RunConfig) -> Result<Vec<Item>, CliError> {
    let cat = &data.catalog;
    let vs = varieties(cfg);
    let members: Vec<&FamilySpec> = cat
        .families
        .iter()
        .filter(|f| vs.iter().any(|v| cat.variety(*v).entries.iter().any(|e| e.family == f.name)))
        .collect();
    let mut items: Vec<Item> = members
        .par_iter()
        .map(|f| family_item(data, f, &vs))
        .collect::<Result<_, _>>()?;
    if cfg.variety.is_none() {
        for rec in &cat.automorphisms {
            let ok = verify_aut_family(cat, rec)?;
            items.push(Item::check(format!("automorphisms {}", rec.base), ok, "every element fixes the base"));
        }
    }
    for e in &data.iso_exceptions {
        if vs.iter().any(|v| e.varieties.contains(v)) {
            let ok = verify_iso_exception(cat, e)?;
            let conds: Vec<String> = e.conditions.iter().map(|c| c.to_string()).collect();
            let detail = format!("witness {}{}", e.witness, if conds.is_empty() { String::new() } else { format!(" when {}", conds.join(", ")) });
            items.push(Item::check(format!("isomorphism {}", e.name), ok, detail));
        }
    }
    Ok(items.into_iter().filter(|i| keep(cfg, i)).collect())
}

fn witness_item(data: &DataSet, w: &DegenerationWitness) -> Item {
    let out = verify_degeneration(&data.catalog, w);
    let name = format!("degeneration {}", w.name);
    match (&out, &w.origin) {
        (DegenerationOutcome::Fail { failure }, _) => Item::new(name, Status::Fail, failure.to_string()),
        (DegenerationOutcome::Pass, WitnessOrigin::Corrected { note, .. }) => {
            let published = w.as_published().map(|p| verify_degeneration(&data.catalog, &p));
            let why = match published {
                Some(DegenerationOutcome::Fail { failure }) => format!("published form fails ({failure})"),
                _ => "published form also passes".into(),
            };
            Item::new(name, Status::Flagged, format!("corrected: {note}; {why}"))
        }
        (DegenerationOutcome::Pass, WitnessOrigin::Derived { note }) => Item::new(name, Status::Pass, note.clone()),
        (DegenerationOutcome::Pass, WitnessOrigin::Published) => Item::new(name, Status::Pass, ""),
    }
    .keyed(&[&w.name, &w.source, &w.target])
}

fn non_degeneration_items(data: &DataSet, cfg: &RunConfig, vs: &[Variety]) -> Result<Vec<Item>, CliError> {
    let cat = &data.catalog;
    let jobs: Vec<_> = data
        .relations
        .iter()
        .filter(|r| vs.iter().any(|v| r.variety.is_contained_in(*v)))
        .flat_map(|r| r.targets.iter().map(move |t| (r, t)))
        .collect();
    let mut items = jobs
        .par_iter()
        .map(|(r, t)| {
            let mut rng = rng_for(cfg.seed, &format!("{}/{t}", r.name));
            let c = verify_non_degeneration(cat, &r.source, t, r, 50, &mut rng)?;
            let name = format!("non-degeneration {} -/-> {t}", r.source);
            let mut detail = match &c.certificate {
                Some(cert) => format!("{cert}; stable under {}/{} triangular samples", c.stability_passed, c.stability_samples),
                None => "the target satisfies the relations".into(),
            };
            if !c.holds_on_source {
                detail = format!("relations fail on {}", r.source);
            }
            let status = match (c.is_pass(), &r.correction) {
                (false, _) => Status::Fail,
                (true, Some(fix)) => {
                    detail = format!("{detail}; corrected from `{}`: {fix}", r.as_printed);
                    Status::Flagged
                }
                (true, None) => Status::Pass,
            };
            Ok(Item::new(name, status, detail).keyed(&[&r.name]))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if vs.contains(&Variety::CompatibleNovikov) || vs.contains(&Variety::CompatiblePreLie) {
        items.push(zero_line_item(data, cfg)?);
    }
    Ok(items)
}

/// C09, C22 and C31 have a line on which both products vanish; C33 has none,
/// and that property passes to orbit closures.
fn zero_line_item(data: &DataSet, cfg: &RunConfig) -> Result<Item, CliError> {
    let cat = &data.catalog;
    let mut problems = Vec::new();
    if has_zero_mult_line(&cat.family("C33")?.algebra)? {
        problems.push("C33 has a zero line".to_string());
    }
    for name in ["C09", "C22", "C31"] {
        let fam = cat.family(name)?;
        let mut rng = rng_for(cfg.seed, &format!("zero-line/{name}"));
        for _ in 0..cfg.samples {
            let p = random_admissible_point(&fam.params, &fam.constraints, &mut rng)?;
            let Ok(a) = fam.instantiate(&p) else { continue };
            if !has_zero_mult_line(&a)? {
                problems.push(format!("{name} has no zero line at {p:?}"));
            }
        }
    }
    let detail = if problems.is_empty() {
        format!("zero lines found at {} sampled points of each source; none in C33", cfg.samples)
    } else {
        problems.join("; ")
    };
    Ok(Item::check("non-degeneration C09, C22, C31 -/-> C33", problems.is_empty(), detail).keyed(&["zero-line", "C33"]))
}

fn dimension_items(rep: &ComponentReport, graph: &DegenerationGraph, components: &[String]) -> Vec<Item> {
    let v = rep.variety;
    let mut items: Vec<Item> = rep
        .claims
        .iter()
        .map(|c| {
            let status = match c.status {
                ClaimStatus::Match => Status::Pass,
                ClaimStatus::Flagged => Status::Flagged,
                ClaimStatus::Mismatch => Status::Fail,
            };
            let mut detail = format!("claimed {}, computed {}", c.claimed, c.computed);
            if let (Some(n), true) = (&c.note, status != Status::Pass) {
                detail = format!("{detail}: {n}");
            }
            Item::new(format!("dimension {v} {}", c.family), status, detail).keyed(&[&c.family, v.name()])
        })
        .collect();
    let unreached = graph.unreached(components);
    let detail = if unreached.is_empty() {
        format!(
            "{} components, rigid: [{}]; all {} families reached from a component",
            components.len(),
            rep.rigid.join(", "),
            graph.nodes.len()
        )
    } else {
        format!("not reached from any component: {}", unreached.join(", "))
    };
    items.push(Item::check(format!("components {v}"), unreached.is_empty(), detail).keyed(&[v.name()]));
    items
}

fn monotonicity_item(data: &DataSet, cfg: &RunConfig, w: &DegenerationWitness) -> Result<Item, CliError> {
    let mut rng = rng_for(cfg.seed, &format!("monotonicity/{}", w.name));
    let mut bad = Vec::new();
    let mut dims = None;
    for _ in 0..cfg.samples {
        let s = monotonicity_sample(&data.catalog, w, &mut rng)?;
        dims = Some((s.source_derivation_dim, s.target_derivation_dim, s.moving_index));
        if !s.holds() {
            bad.push(format!("{:?}", s.point));
        }
    }
    let detail = match dims {
        Some((s, t, moving)) => format!(
            "dim Der {s} -> {t}{}",
            if moving { " (index moves with t: orbit family bound)" } else { "" }
        ),
        None => String::new(),
    };
    let detail = if bad.is_empty() { detail } else { format!("{detail}; fails at {}", bad.join(", ")) };
    Ok(Item::check(format!("monotonicity {}", w.name), bad.is_empty(), detail).keyed(&["monotonicity"]))
}

pub struct GeometryOutput {
    pub items: Vec<Item>,
    pub dimensions: Vec<ComponentReport>,
    pub graphs: Vec<DegenerationGraph>,
}

pub fn verify_geometry(data: &DataSet, cfg: &RunConfig) -> Result<GeometryOutput, CliError> {
    let cat = &data.catalog;
    let vs = varieties(cfg);
    let selected: Vec<&DegenerationWitness> =
        data.witnesses.iter().filter(|w| vs.iter().any(|v| w.variety.is_contained_in(*v))).collect();
    let witness_items: Vec<Item> = selected.par_iter().map(|w| witness_item(data, w)).collect();
    let verified: Vec<DegenerationWitness> = selected
        .iter()
        .zip(&witness_items)
        .filter(|(_, i)| i.status != Status::Fail)
        .map(|(w, _)| (*w).clone())
        .collect();
    let mut items = witness_items;
    items.extend(non_degeneration_items(data, cfg, &vs)?);

    let mut dimensions = Vec::new();
    let mut graphs = Vec::new();
    for v in &vs {
        let rep = component_report(cat, *v, cfg.seed, cfg.samples)?;
        let graph = degeneration_graph(cat, &verified, *v)?;
        items.extend(dimension_items(&rep, &graph, &cat.variety(*v).components));
        dimensions.push(rep);
        graphs.push(graph);
    }
    let mono: Vec<Item> =
        verified.par_iter().map(|w| monotonicity_item(data, cfg, w)).collect::<Result<_, _>>()?;
    items.extend(mono);
    let items: Vec<Item> = items.into_iter().filter(|i| keep(cfg, i)).collect();
    if cfg.only.is_some() {
        dimensions.clear();
        graphs.clear();
    }
    Ok(GeometryOutput { items, dimensions, graphs })
}

//! The verification commands behind the `ks33` binary. Each returns a
//! [`Report`] (or serialized catalog text) so that tests and the C ABI can
//! drive them without a process boundary.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{
    class_of, family_rays, family_rays_exact, peres_rays, penrose_mpairs, penrose_recovered_mpairs, FamilyParams,
};
use crate::cnf::{assignment_from_coloring, encode};
use crate::error::{Error, Result};
use crate::kscolor::{
    check_coloring, criticality_audit, replay_proof, search_coloring, verify_symmetry_reduction, Coloring,
    ConstraintSet, SymmetryReport, RAY1_DELETION_GREENS,
};
use crate::majorana::{
    mpair_from_state, overlap2_mpairs, random_mpair, random_state, state_from_mpair,
};
use crate::orthograph::{
    build_graph, cube_symmetries, decompose, induced_permutation, reference_decomposition, OrthoGraph, Rotation,
};
use crate::rays::Ray;
use crate::report::{ExactValue, Report};
use crate::scalar::{ApproxComplex, QRoot2, Scalar};

pub const DEFAULT_SEED: u64 = 42;
/// Default bound on |closed-form − explicit overlap| in `majorana`.
pub const DEFAULT_MAJORANA_TOL: f64 = 1e-10;
pub const ROUNDTRIP_TOL: f64 = 1e-8;
pub const PAIR_MATCH_TOL: f64 = 1e-7;
/// Floor for the squared overlap of non-orthogonal family pairs.
pub const NON_EDGE_FLOOR: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogSet {
    Peres,
    Penrose,
    Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProveMode {
    Replay,
    Search,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriticalTarget {
    All,
    Ray(u8),
}

/// Orthogonality graph of a catalog at the given tolerance. Penrose uses the
/// closed-form M-pair overlap, exactly.
pub fn graph_of(set: CatalogSet, params: &FamilyParams, tol: f64) -> Result<OrthoGraph> {
    match set {
        CatalogSet::Peres => build_graph(peres_rays().as_slice(), tol),
        CatalogSet::Penrose => build_graph(penrose_mpairs().as_slice(), tol),
        CatalogSet::Family => match family_rays_exact(params) {
            Some(rays) => build_graph(rays.as_slice(), tol),
            None => build_graph(family_rays(params).as_slice(), tol),
        },
    }
}

/// Coloring constraints derived from a catalog's graph.
pub fn constraints_of(set: CatalogSet, params: &FamilyParams, tol: f64) -> Result<(OrthoGraph, ConstraintSet)> {
    let g = graph_of(set, params, tol)?;
    let d = decompose(&g)?;
    let cs = ConstraintSet::from_decomposition(g.vertex_count(), &d);
    Ok((g, cs))
}

fn set_name(set: CatalogSet) -> &'static str {
    match set {
        CatalogSet::Peres => "peres",
        CatalogSet::Penrose => "penrose",
        CatalogSet::Family => "family",
    }
}

fn complex_json(z: ApproxComplex) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn ray_rows<S: Scalar + std::fmt::Display>(rays: &[Ray<S>]) -> Vec<Value> {
    rays.iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i + 1,
                "class": class_of(i + 1).expect("33 entries").label(),
                "components": r.components().iter().map(|c| {
                    let mut v = complex_json(c.to_approx());
                    v["exact"] = Value::from(c.to_string());
                    v
                }).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn approx_ray_rows(rays: &[Ray<ApproxComplex>]) -> Vec<Value> {
    rays.iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i + 1,
                "class": class_of(i + 1).expect("33 entries").label(),
                "components": r.components().iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn mvector_ints(v: &crate::majorana::MVector<QRoot2>) -> Vec<String> {
    v.components().iter().map(QRoot2::canonical_string).collect()
}

/// The 33 entries of a catalog as JSON or CSV.
pub fn catalog(set: CatalogSet, params: &FamilyParams, format: CatalogFormat) -> Result<String> {
    for (name, x) in [("alpha", params.alpha), ("beta", params.beta), ("gamma", params.gamma)] {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("phase {name} must be finite")));
        }
    }
    let mut doc = json!({"schema_version": crate::report::SCHEMA_VERSION, "set": set_name(set)});
    let rows = match set {
        CatalogSet::Peres => ray_rows(&peres_rays()),
        CatalogSet::Penrose => penrose_mpairs()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "index": i + 1,
                    "class": class_of(i + 1).expect("33 entries").label(),
                    "m_vectors": [mvector_ints(&p.first), mvector_ints(&p.second)],
                    "doubled": p.is_doubled(0.0),
                })
            })
            .collect(),
        CatalogSet::Family => {
            let fc = params.constants();
            doc["params"] = serde_json::to_value(params).expect("params");
            doc["k"] = complex_json(fc.k);
            doc["k_modulus"] = Value::from(fc.k.norm());
            match family_rays_exact(params) {
                Some(rays) => ray_rows(&rays),
                None => approx_ray_rows(&family_rays(params)),
            }
        }
    };
    doc["entries"] = Value::from(rows.clone());
    match format {
        CatalogFormat::Json => Ok(serde_json::to_string_pretty(&doc).expect("catalog serializes")),
        CatalogFormat::Csv => Ok(catalog_csv(set, &rows)),
    }
}

fn catalog_csv(set: CatalogSet, rows: &[Value]) -> String {
    let mut out = String::new();
    let num = |v: &Value| v.as_f64().map(|x| format!("{x}")).unwrap_or_default();
    if set == CatalogSet::Penrose {
        out.push_str("index,class,m1_x,m1_y,m1_z,m2_x,m2_y,m2_z\n");
        for r in rows {
            let m = &r["m_vectors"];
            let cells: Vec<String> =
                (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| m[i][j].as_str().unwrap_or("").to_string()).collect();
            let _ = writeln!(out, "{},{},{}", r["index"], r["class"].as_str().unwrap_or(""), cells.join(","));
        }
        return out;
    }
    let exact = rows.first().is_some_and(|r| !r["components"][0]["exact"].is_null());
    out.push_str("index,class,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im");
    out.push_str(if exact { ",c1_exact,c2_exact,c3_exact\n" } else { "\n" });
    for r in rows {
        let comps = r["components"].as_array().cloned().unwrap_or_default();
        let mut cells: Vec<String> = comps.iter().flat_map(|c| [num(&c["re"]), num(&c["im"])]).collect();
        if exact {
            cells.extend(comps.iter().map(|c| c["exact"].as_str().unwrap_or("").to_string()));
        }
        let _ = writeln!(out, "{},{},{}", r["index"], r["class"].as_str().unwrap_or(""), cells.join(","));
    }
    out
}

/// Structural checks every catalog graph must pass.
fn graph_checks(report: &mut Report, label: &str, g: &OrthoGraph) -> Result<()> {
    let reference = reference_decomposition();
    report.check(&format!("{label}edge_count"), g.edge_count() == 72, g.edge_count(), Value::Null);
    let min_degree = (1..=33).map(|v| g.degree(v)).min().unwrap_or(0);
    report.check(&format!("{label}min_degree_at_least_2"), min_degree >= 2, min_degree, Value::Null);
    match decompose(g) {
        Ok(d) => {
            report.check(
                &format!("{label}triads"),
                d.triads.len() == 16,
                d.triads.len(),
                &d.triads,
            );
            report.check(&format!("{label}dyads"), d.dyads.len() == 24, d.dyads.len(), &d.dyads);
            let diff: Vec<_> = d.edges().symmetric_difference(&reference.edges()).copied().collect();
            report.check(
                &format!("{label}reference_match"),
                d == reference,
                d == reference,
                json!({"edges_not_shared": diff}),
            );
        }
        Err(e) => {
            report.check(&format!("{label}decomposition"), false, e.to_string(), e.to_string());
        }
    }
    Ok(())
}

fn min_non_edge_overlap(rays: &[Ray<ApproxComplex>], g: &OrthoGraph) -> (f64, [u8; 2]) {
    let mut best = (f64::INFINITY, [0, 0]);
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (a, b) = (i as u8 + 1, j as u8 + 1);
            if !g.has_edge(a, b) {
                let o = rays[i].overlap2(&rays[j]);
                if o < best.0 {
                    best = (o, [a, b]);
                }
            }
        }
    }
    best
}

fn random_params(rng: &mut ChaCha8Rng) -> FamilyParams {
    FamilyParams::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU))
}

/// Graph, decomposition and reference-diagram comparison for one catalog, plus the
/// rays-9/14 overlap witness for Peres and Penrose.
pub fn verify(set: CatalogSet, params: &FamilyParams, samples: usize, seed: u64, tol: f64) -> Result<Report> {
    let mut r = Report::new("verify");
    r.param("set", set).param("tol", tol);
    if set == CatalogSet::Family {
        r.param("alpha", params.alpha).param("beta", params.beta).param("gamma", params.gamma);
        r.param("samples", samples).param("seed", seed);
    }
    let g = graph_of(set, params, tol)?;
    graph_checks(&mut r, "", &g)?;
    match set {
        CatalogSet::Peres => {
            let rays = peres_rays();
            let o = rays[8].overlap2(&rays[13]);
            let claim = QRoot2::from_ratios(1, 2, -1, 4);
            let ok = claim > QRoot2::zero() && claim.clone() * claim.clone() == o;
            r.check(
                "overlap_9_14",
                ok,
                json!({"overlap2": ExactValue::from(&o), "magnitude": ExactValue::from(&claim)}),
                Value::Null,
            );
            let other = overlap2_mpairs(&penrose_mpairs()[8], &penrose_mpairs()[13]);
            r.check("overlap_9_14_differs_from_penrose", o != other, ExactValue::from(&other), Value::Null);
        }
        CatalogSet::Penrose => {
            let pairs = penrose_mpairs();
            let o = overlap2_mpairs(&pairs[8], &pairs[13]);
            let ok = o == QRoot2::from_ratios(6, 16, 0, 1);
            r.check(
                "overlap_9_14",
                ok,
                json!({
                    "overlap2": ExactValue::from(&o),
                    "magnitude": {"exact": "sqrt(6)/4", "float": o.to_f64().sqrt()},
                }),
                Value::Null,
            );
            let rays = peres_rays();
            let other = rays[8].overlap2(&rays[13]);
            r.check("overlap_9_14_differs_from_peres", o != other, ExactValue::from(&other), Value::Null);
            let states: Vec<Ray<ApproxComplex>> =
                pairs.iter().map(|p| state_from_mpair(p).map(|s| s.as_ray())).collect::<Result<_>>()?;
            let gs = build_graph(states.as_slice(), tol)?;
            r.check(
                "explicit_state_graph_matches",
                gs == g,
                gs == g,
                json!({"edges_not_shared": gs.symmetric_difference(&g)}),
            );
        }
        CatalogSet::Family => {
            let rays = family_rays(params);
            let (min, pair) = min_non_edge_overlap(&rays, &g);
            r.check(
                "non_edge_overlap_floor",
                min > NON_EDGE_FLOOR,
                json!({"min_overlap2": min, "pair": pair}),
                Value::Null,
            );
            r.check("k_modulus", (params.constants().k.norm() - 1.0).abs() < 1e-12, params.constants().k.norm(), Value::Null);
            if samples > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let reference = reference_decomposition().edges();
                let mut matched = 0;
                let mut first_failure = Value::Null;
                let mut floor = f64::INFINITY;
                for _ in 0..samples {
                    let p = random_params(&mut rng);
                    let rays = family_rays(&p);
                    let gs = build_graph(rays.as_slice(), tol)?;
                    floor = floor.min(min_non_edge_overlap(&rays, &gs).0);
                    if *gs.edges() == reference {
                        matched += 1;
                    } else if first_failure.is_null() {
                        let diff: Vec<_> = gs.edges().symmetric_difference(&reference).copied().collect();
                        first_failure = json!({"params": p, "edges_not_shared": diff});
                    }
                }
                r.check(
                    "family_samples_reference_match",
                    matched == samples,
                    format!("{matched}/{samples}"),
                    first_failure,
                );
                r.check("family_samples_non_edge_floor", floor > NON_EDGE_FLOOR, floor, Value::Null);
            }
        }
    }
    Ok(r)
}

fn symmetry_checks(r: &mut Report, label: &str, s: &SymmetryReport) {
    r.check(
        &format!("{label}symmetry_reduction"),
        s.passed(),
        json!({
            "rotation_111": s.rotation_111.permutation.images(),
            "alternatives": s.alternatives,
        }),
        s.failures(),
    );
}

/// Non-colorability by replay of the seven-step proof and/or exhaustive search.
pub fn prove(set: CatalogSet, mode: ProveMode, tol: f64) -> Result<Report> {
    let mut r = Report::new("prove");
    r.param("set", set).param("mode", mode).param("tol", tol);
    let (g, cs) = constraints_of(set, &FamilyParams::peres(), tol)?;
    let mut replay_unsat = None;
    let mut search_unsat = None;
    if matches!(mode, ProveMode::Replay | ProveMode::Both) {
        match replay_proof(&cs) {
            Ok(trace) => {
                let verified = trace.verify(&cs);
                r.check("trace_verified", verified.is_ok(), verified.is_ok(), verified.err().map(|e| e.to_string()));
                r.check("choice_steps", trace.choice_count() == 2, trace.choice_count(), Value::Null);
                let greens = trace.green_set();
                r.check("green_count", greens.len() == 7, &greens, Value::Null);
                let contradiction = trace.contradiction().map(|c| c.rays().to_vec()).unwrap_or_default();
                r.check("contradiction_triad", contradiction == [7, 15, 16], &contradiction, Value::Null);
                r.witness("trace", &trace);
                replay_unsat = Some(true);
            }
            Err(e) => {
                r.check("replay", false, e.to_string(), e.to_string());
                replay_unsat = Some(false);
            }
        }
        let peres = peres_rays();
        let penrose = penrose_mpairs();
        symmetry_checks(&mut r, "peres_", &verify_symmetry_reduction(&peres, &g)?);
        symmetry_checks(&mut r, "penrose_", &verify_symmetry_reduction(&penrose, &g)?);
        let peres_group: BTreeSet<Vec<u8>> = cube_symmetries(&peres).iter().map(|p| p.images().to_vec()).collect();
        let penrose_group: BTreeSet<Vec<u8>> =
            cube_symmetries(&penrose).iter().map(|p| p.images().to_vec()).collect();
        let shared = peres_group.intersection(&penrose_group).count();
        let sizes = json!({"peres": peres_group.len(), "penrose": penrose_group.len(), "shared": shared});
        r.check("cube_symmetry_groups", peres_group.len() == 24 && penrose_group.len() == 24, &sizes, Value::Null);
        let p111 = induced_permutation(&Rotation::about_111(), &peres)?.images().to_vec();
        let q111 = induced_permutation(&Rotation::about_111(), &penrose)?.images().to_vec();
        r.check(
            "rotation_111_permutation_shared",
            penrose_group.contains(&p111) && peres_group.contains(&q111),
            json!({"peres": p111, "penrose": q111}),
            Value::Null,
        );
        let mut per_rotation = Vec::new();
        for rot in std::iter::once(Rotation::about_111()).chain((1..=3).map(Rotation::about_x)) {
            let a = induced_permutation(&rot, &peres)?;
            let b = induced_permutation(&rot, &penrose)?;
            per_rotation.push(json!({
                "rotation": rot.matrix,
                "peres": a.images(),
                "penrose": b.images(),
                "identical": a == b,
            }));
        }
        r.witness("induced_permutations", per_rotation);
    }
    if matches!(mode, ProveMode::Search | ProveMode::Both) {
        let out = search_coloring(&cs);
        let unsat = out.coloring.is_none();
        r.check("search_unsat", unsat, json!({"nodes": out.nodes}), json!({"coloring": out.coloring.map(|c| c.greens())}));
        search_unsat = Some(unsat);
    }
    if let (Some(a), Some(b)) = (replay_unsat, search_unsat) {
        r.check("routes_agree", a == b, a == b, json!({"replay_unsat": a, "search_unsat": b}));
    }
    Ok(r)
}

/// Colorings of every single-ray deletion (or one of them).
pub fn critical(set: CatalogSet, target: CriticalTarget, tol: f64) -> Result<Report> {
    let mut r = Report::new("critical");
    r.param("set", set).param("target", target).param("tol", tol);
    let (_, cs) = constraints_of(set, &FamilyParams::peres(), tol)?;

    let reduced = cs.delete(1)?;
    let known = Coloring::from_greens(&reduced, &RAY1_DELETION_GREENS);
    let valid = check_coloring(&known, &reduced);
    r.check("known_ray1_coloring_valid", valid.is_ok(), RAY1_DELETION_GREENS, valid.err());

    match target {
        CriticalTarget::Ray(v) => {
            if !(1..=33).contains(&v) {
                return Err(Error::IndexOutOfRange(v as usize));
            }
            let reduced = cs.delete(v)?;
            let found = search_coloring(&reduced).coloring;
            let valid = found.as_ref().map(|c| check_coloring(c, &reduced));
            let ok = matches!(valid, Some(Ok(())));
            r.check(
                &format!("delete_{v}_colorable"),
                ok,
                found.as_ref().map(|c| json!({"greens": c.greens()})),
                json!({"deleted": v, "error": valid.and_then(|v| v.err())}),
            );
        }
        CriticalTarget::All => match criticality_audit(&cs) {
            Ok(map) => {
                let greens: std::collections::BTreeMap<String, Vec<u8>> =
                    map.iter().map(|(k, c)| (k.to_string(), c.greens())).collect();
                r.check("all_deletions_colorable", map.len() == 33, format!("{}/33", map.len()), Value::Null);
                r.witness("colorings", greens);
            }
            Err(e) => {
                r.check("all_deletions_colorable", false, e.to_string(), e.to_string());
            }
        },
    }
    Ok(r)
}

/// Writes the DIMACS instance and checks its shape.
pub fn export_cnf(set: CatalogSet, out: &Path, delete: Option<u8>, tol: f64) -> Result<Report> {
    let mut r = Report::new("export-cnf");
    r.param("set", set).param("out", out.display().to_string()).param("delete", delete).param("tol", tol);
    let (_, full) = constraints_of(set, &FamilyParams::peres(), tol)?;
    let cs = match delete {
        Some(v) => full.delete(v)?,
        None => full,
    };
    let comments = vec![
        "ks33 coloring constraints; variable i is true iff ray i is green".to_string(),
        format!("catalog: {}", set_name(set)),
        format!("deleted: {}", delete.map_or("none".to_string(), |v| v.to_string())),
    ];
    let cnf = encode(&cs, comments);
    cnf.write_to(out)?;
    let expected = 4 * cs.triads().len() + cs.pairs().len();
    r.check("variables", cnf.num_vars == 33, cnf.num_vars, Value::Null);
    r.check("clauses", cnf.clauses.len() == expected, cnf.clauses.len(), expected);
    let search = search_coloring(&cs);
    match (&search.coloring, delete) {
        (Some(c), _) => {
            let sat = cnf.satisfied_by(&assignment_from_coloring(c));
            r.check("coloring_satisfies_cnf", sat, json!({"greens": c.greens()}), cnf.first_violated(&assignment_from_coloring(c)));
        }
        (None, None) => {
            r.check("full_instance_unsat", true, json!({"nodes": search.nodes}), Value::Null);
        }
        (None, Some(v)) => {
            r.check("deletion_sat", false, v, json!({"deleted": v}));
        }
    }
    Ok(r)
}

/// Closed-form overlap against explicit states, extraction roundtrips, the exact Penrose
/// sweep, and recovery of the Penrose pairs from the family.
pub fn majorana(samples: usize, seed: u64, tol: f64) -> Result<Report> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut r = Report::new("majorana");
    r.param("samples", samples).param("seed", seed).param("tol", tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = (0.0f64, Value::Null);
    for _ in 0..samples {
        let (pa, pb) = (random_mpair(&mut rng), random_mpair(&mut rng));
        let explicit = state_from_mpair(&pa)?.as_ray().overlap2(&state_from_mpair(&pb)?.as_ray());
        let dev = (overlap2_mpairs(&pa, &pb) - explicit).abs();
        if dev > worst.0 {
            worst = (dev, json!({"a": [pa.first.components(), pa.second.components()], "b": [pb.first.components(), pb.second.components()]}));
        }
    }
    r.check("closed_form_vs_states_max_deviation", worst.0 < tol, worst.0, worst.1);

    let mut worst = (0.0f64, Value::Null);
    for _ in 0..samples {
        let s = random_state(&mut rng);
        let err = s.projective_distance(&state_from_mpair(&mpair_from_state(&s))?);
        if err > worst.0 {
            worst = (err, json!({"state": s.c.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()}));
        }
    }
    r.check("roundtrip_max_error", worst.0 < ROUNDTRIP_TOL, worst.0, worst.1);

    let pairs = penrose_mpairs();
    let reference = reference_decomposition().edges();
    let mut zeros = BTreeSet::new();
    let mut negative = Vec::new();
    for i in 0..33 {
        for j in i + 1..33 {
            let o = overlap2_mpairs(&pairs[i], &pairs[j]);
            if o == QRoot2::zero() {
                zeros.insert((i as u8 + 1, j as u8 + 1));
            } else if o < QRoot2::zero() {
                negative.push([i + 1, j + 1]);
            }
        }
    }
    let diff: Vec<_> = zeros.symmetric_difference(&reference).copied().collect();
    r.check("catalog_exact_zeros", zeros.len() == 72 && diff.is_empty(), zeros.len(), json!({"edges_not_shared": diff}));
    r.check("catalog_nonzero_positive", negative.is_empty(), negative.is_empty(), negative);

    let recovered = penrose_recovered_mpairs();
    let mismatches: Vec<Value> = recovered
        .iter()
        .zip(&pairs)
        .enumerate()
        .filter_map(|(i, (got, want))| {
            let d = got.match_distance(&want.to_f64());
            (d >= PAIR_MATCH_TOL).then(|| json!({"index": i + 1, "distance": d}))
        })
        .collect();
    r.check(
        "penrose_recovery",
        mismatches.is_empty(),
        format!("{}/33", 33 - mismatches.len()),
        mismatches,
    );
    Ok(r)
}

//! Subcommand implementations. Each returns a JSON document and an exit
//! status; input problems surface as `InputError` and map to status 2.

use std::sync::Arc;

use linf_core::gm::{
    abelian_homotopy, check_filtered_qiso, mc_preimage, moore_homology, transfer_connect, verify,
    z0_tensor_cochains, GmError, QisoReport, Side, TransferCertificate,
};
use linf_core::io::{
    terms_of, AlgebraDoc, CertificateDoc, MorphismDoc, SimplexDoc, SCHEMA_VERSION,
};
use linf_core::linalg::{Rational, SparseVec};
use linf_core::mc::{compose_edges, concatenate, reconstruct, rectify, Edge, MCSimplex};
use linf_core::slie::{
    check_infty_morphism, check_slie, twist_algebra, twist_morphism, InftyMorphism, Report,
    SLieAlgebra,
};
use serde_json::{json, Value};

use crate::workspace::{element_arg, fail, InputError, Loaded, Workspace};
use crate::{Cli, Command};

pub struct Output {
    pub doc: Value,
    pub status: u8,
}

fn ok(doc: Value) -> Result<Output, InputError> {
    Ok(Output { doc, status: 0 })
}

fn doc(command: &str, passed: bool, mut body: Value) -> Output {
    let obj = body.as_object_mut().expect("object body");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    obj.insert("result".into(), json!(if passed { "pass" } else { "fail" }));
    Output {
        doc: body,
        status: if passed { 0 } else { 1 },
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn input<E: std::fmt::Display>(e: E) -> InputError {
    InputError::Message(e.to_string())
}

fn report_value(alg: &SLieAlgebra, r: &Report) -> Value {
    let v: Vec<Value> = r
        .violations
        .iter()
        .map(|x| {
            json!({
                "law": x.law,
                "inputs": x.inputs,
                "detail": x.detail,
                "residual": x.residual.as_ref().map(|e| to_value(&terms_of(alg, e))),
            })
        })
        .collect();
    json!({ "passed": r.passed(), "violations": v })
}

fn qiso_value(u: &InftyMorphism, r: &QisoReport) -> Value {
    let v: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            let alg = side_algebra(u, f.side);
            json!({ "weight": f.weight, "degree": f.degree, "side": f.side, "class": terms_of(alg, &f.class) })
        })
        .collect();
    json!({ "passed": r.passed(), "failures": v })
}

fn side_algebra(u: &InftyMorphism, side: Side) -> &SLieAlgebra {
    match side {
        Side::Source => u.source(),
        Side::Target => u.target(),
    }
}

fn simplex_value(s: &MCSimplex) -> Value {
    to_value(&SimplexDoc::from_simplex(s))
}

fn edge_arg(alg: &Arc<SLieAlgebra>, arg: &str) -> Result<Edge, InputError> {
    let x = element_arg(alg, arg)?;
    let s = MCSimplex::new(alg.clone(), x).map_err(input)?;
    Edge::new(s).map_err(input)
}

/// Certificates are emitted on success; a refuted hypothesis becomes a
/// status-1 report naming the graded class.
fn certificate_output(
    command: &str,
    u: &InftyMorphism,
    r: Result<TransferCertificate, GmError>,
) -> Result<Output, InputError> {
    match r {
        Ok(cert) => {
            let checks = verify(&cert);
            let passed = checks.iter().all(|c| c.passed);
            let mut out = doc(
                command,
                passed,
                json!({ "certificate": to_value(&CertificateDoc::from_certificate(&cert)) }),
            );
            if !passed {
                out.doc["failed_checks"] = json!(checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.clone())
                    .collect::<Vec<_>>());
            }
            Ok(out)
        }
        Err(GmError::Refuted(r)) => {
            let alg = side_algebra(u, r.side);
            Ok(doc(
                command,
                false,
                json!({
                    "refutation": {
                        "layer": r.layer,
                        "weight": r.weight,
                        "degree": r.degree,
                        "side": r.side,
                        "class": terms_of(alg, &r.class),
                        "reason": r.reason,
                    }
                }),
            ))
        }
        Err(e) => Err(input(e)),
    }
}

fn dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| v.get(&i).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

pub fn run(cli: &Cli) -> Result<Output, InputError> {
    let ws = Workspace::load(&cli.global.inputs, cli.global.truncation)?;
    match &cli.command {
        Command::Validate => validate(&ws),
        Command::Curv(e) => {
            let alg = ws.algebra()?;
            let x = element_arg(&alg, &e.element)?;
            let c = alg.curv(&x).map_err(input)?;
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "curv",
                "curv": terms_of(&alg, &c),
                "is_mc": c.is_zero(),
            }))
        }
        Command::Twist(e) => {
            if let Ok(u) = ws.morphism() {
                let x = element_arg(u.source(), &e.element)?;
                let t = twist_morphism(u, &x).map_err(input)?;
                return ok(to_value(&MorphismDoc::from_morphism(&t)));
            }
            let alg = ws.algebra()?;
            let x = element_arg(&alg, &e.element)?;
            let t = twist_algebra(&alg, &x).map_err(input)?;
            ok(to_value(&AlgebraDoc::from_algebra(&t)))
        }
        Command::Pushforward(e) => {
            let u = ws.morphism()?;
            let x = element_arg(u.source(), &e.element)?;
            let y = u.pushforward(&x).map_err(input)?;
            ok(to_value(&SimplexDoc::from_element(u.target(), &y)))
        }
        Command::Reconstruct { mu, stub, vertex } => {
            let alg = ws.algebra()?;
            let mu = element_arg(&alg, mu)?;
            let nu = element_arg(&alg, stub)?;
            let (s, iterations) = reconstruct(&alg, nu.dim(), *vertex, &mu, &nu).map_err(input)?;
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "reconstruct",
                "simplex": simplex_value(&s),
                "iterations": iterations,
            }))
        }
        Command::Rectify { edge, floor } => {
            let alg = ws.algebra()?;
            let e = edge_arg(&alg, edge)?;
            let r = rectify(&alg, &e, *floor).map_err(input)?;
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "rectify",
                "edge": simplex_value(r.simplex()),
                "beta1": r.beta1_constant().map(|b| to_value(&terms_of(&alg, &b))),
            }))
        }
        Command::Compose { left, right } => {
            let alg = ws.algebra()?;
            let l = edge_arg(&alg, left)?;
            let r = edge_arg(&alg, right)?;
            let c = compose_edges(&alg, &l, &r).map_err(input)?;
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "compose",
                "triangle": simplex_value(&c.triangle),
                "composite": simplex_value(c.composite.simplex()),
                "iterations": c.iterations,
            }))
        }
        Command::Concatenate { edges } => {
            let alg = ws.algebra()?;
            let es = edges
                .iter()
                .map(|e| edge_arg(&alg, e))
                .collect::<Result<Vec<_>, _>>()?;
            let (e, iterations) = concatenate(&alg, &es).map_err(input)?;
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "concatenate",
                "edge": simplex_value(e.simplex()),
                "iterations": iterations,
            }))
        }
        Command::Preimage(e) => {
            let u = ws.morphism()?;
            let x = element_arg(u.target(), &e.element)?;
            certificate_output("preimage", u, mc_preimage(u, &x))
        }
        Command::TransferConnect {
            alpha,
            alpha_prime,
            edge,
        } => {
            let u = ws.morphism()?;
            let a = element_arg(u.source(), alpha)?;
            let b = element_arg(u.source(), alpha_prime)?;
            let e = element_arg(u.target(), edge)?;
            certificate_output("transfer-connect", u, transfer_connect(u, &a, &b, &e))
        }
        Command::PiAbelian { degree } => {
            let alg = ws.algebra()?;
            if !alg.is_abelian() {
                return fail("pi-abelian needs an abelian algebra");
            }
            let dim = abelian_homotopy(&alg, *degree).map_err(input)?;
            let space = z0_tensor_cochains(&alg, degree + 1).map_err(input)?;
            let moore = moore_homology(&space, *degree).map_err(input)?;
            Ok(doc(
                "pi-abelian",
                dim == moore.dim,
                json!({ "degree": degree, "dim": dim, "moore_dim": moore.dim }),
            ))
        }
        Command::MooreHomology { degree, levels } => {
            let space = ws.items.iter().find_map(|i| match i {
                Loaded::Space(s) => Some(s.clone()),
                _ => None,
            });
            let space = match space {
                Some(s) => s,
                None => {
                    let alg = ws.algebra()?;
                    if !alg.is_abelian() {
                        return fail(
                            "moore-homology needs a simplicial space or an abelian algebra",
                        );
                    }
                    z0_tensor_cochains(&alg, levels.unwrap_or(degree + 1)).map_err(input)?
                }
            };
            let h = moore_homology(&space, *degree).map_err(input)?;
            let n = space.dim(*degree);
            let basis: Vec<Vec<Rational>> = h.basis.iter().map(|v| dense(v, n)).collect();
            ok(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "moore-homology",
                "degree": degree,
                "dim": h.dim,
                "basis": basis,
            }))
        }
        Command::Verify => verify_inputs(&ws),
    }
}

fn validate(ws: &Workspace) -> Result<Output, InputError> {
    if ws.items.is_empty() {
        return fail("validate needs at least one --input");
    }
    let mut passed = true;
    let mut reports = Vec::new();
    for item in &ws.items {
        let v = match item {
            Loaded::Algebra(a) => {
                let r = check_slie(a);
                passed &= r.passed();
                json!({ "kind": "algebra", "name": a.name(), "slie": report_value(a, &r) })
            }
            Loaded::Morphism(u) => {
                let rs = check_slie(u.source());
                let rt = check_slie(u.target());
                let rm = check_infty_morphism(u);
                let q = check_filtered_qiso(u).map_err(input)?;
                passed &= rs.passed() && rt.passed() && rm.passed() && q.passed();
                json!({
                    "kind": "morphism",
                    "source": report_value(u.source(), &rs),
                    "target": report_value(u.target(), &rt),
                    "morphism": report_value(u.source(), &rm),
                    "filtered_qiso": qiso_value(u, &q),
                })
            }
            Loaded::Certificate(c) => {
                let checks = verify(c);
                let ok = checks.iter().all(|c| c.passed);
                passed &= ok;
                json!({ "kind": "certificate", "passed": ok })
            }
            Loaded::Simplex(_) => {
                json!({ "kind": "simplex", "passed": true, "note": "use verify with its algebra" })
            }
            Loaded::Space(s) => {
                json!({ "kind": "simplicial_space", "passed": true, "top": s.top() })
            }
        };
        reports.push(v);
    }
    Ok(doc("validate", passed, json!({ "reports": reports })))
}

/// Candidate algebras for a simplex: explicit algebra inputs and both ends
/// of any morphism input.
fn algebras(ws: &Workspace) -> Vec<Arc<SLieAlgebra>> {
    let mut out = Vec::new();
    for i in &ws.items {
        match i {
            Loaded::Algebra(a) => out.push(a.clone()),
            Loaded::Morphism(u) => {
                out.push(u.source().clone());
                out.push(u.target().clone());
            }
            _ => {}
        }
    }
    out
}

fn verify_inputs(ws: &Workspace) -> Result<Output, InputError> {
    let algs = algebras(ws);
    let mut passed = true;
    let mut checked = Vec::new();
    for item in &ws.items {
        match item {
            Loaded::Certificate(c) => {
                let checks = verify(c);
                let ok = checks.iter().all(|c| c.passed);
                passed &= ok;
                let list: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed }))
                    .collect();
                checked.push(json!({ "kind": "certificate", "passed": ok, "checks": list }));
            }
            Loaded::Simplex(s) => {
                let Some(alg) = algs.iter().find(|a| a.name() == s.algebra) else {
                    return fail(format!(
                        "no --input algebra named {:?} for the simplex",
                        s.algebra
                    ));
                };
                let x = s.to_element(alg)?;
                let ok = alg.is_mc(&x).map_err(input)?;
                passed &= ok;
                checked.push(
                    json!({ "kind": "simplex", "algebra": s.algebra, "dim": s.dim, "passed": ok }),
                );
            }
            _ => {}
        }
    }
    if checked.is_empty() {
        return fail("verify needs a certificate or simplex --input");
    }
    Ok(doc("verify", passed, json!({ "checked": checked })))
}

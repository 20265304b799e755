//! The two transfer constructions along a filtered quasi-isomorphism and
//! the certificates they emit.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::graded::GradedPiece;
use super::{GmError, Refutation, Side};
use crate::forms::PolyForm;
use crate::linalg::{solve_linear, Matrix, Rational};
use crate::mc::{concatenate, integrate_edge, is_mc, reconstruct, rectify, Edge, MCSimplex};
use crate::slie::{Element, InftyMorphism, SLieAlgebra};

/// A named intermediate choice, with the filtration level it must lie in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub side: Side,
    pub min_weight: u32,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub index: u32,
    pub witnesses: Vec<Witness>,
    /// Recursion steps spent in the horn filling or Picard iteration.
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `α` in the source and an edge `β̃` from `α̃` to `U_*(α)`.
    Preimage { target_mc: Element, alpha: Element, edge: Element },
    /// An edge from `α` to `α'` in the source, transferred from `target_edge`.
    Connect { alpha: Element, alpha_prime: Element, target_edge: Element, edge: Element },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCertificate {
    pub morphism: InftyMorphism,
    pub outcome: Outcome,
    pub layers: Vec<Layer>,
}

fn witness(name: &str, side: Side, min_weight: u32, value: Element) -> Witness {
    Witness { name: name.into(), side, min_weight, value }
}

fn refute(layer: u32, weight: u32, degree: i32, side: Side, class: Element, reason: &str) -> GmError {
    GmError::Refuted(Box::new(Refutation { layer, weight, degree, side, class, reason: reason.into() }))
}

/// Solves a linear system whose unknowns are coefficients of the listed
/// symbols and whose equations are read off the coefficients of the listed
/// row symbols. `image` maps a unit unknown to its contributions.
struct Joint {
    unknowns: Vec<(Side, usize)>,
    rows: Vec<(Side, usize)>,
}

fn side_index(s: Side) -> usize {
    match s {
        Side::Source => 0,
        Side::Target => 1,
    }
}

impl Joint {
    fn solve<F>(&self, image: F, rhs: &[(Side, Element)]) -> Result<Option<[Element; 2]>, GmError>
    where
        F: Fn(Side, usize) -> Vec<(Side, Element)>,
    {
        let row_of: BTreeMap<(Side, usize), usize> = self.rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let read = |side: Side, e: &Element, into: &mut dyn FnMut(usize, Rational)| {
            for (s, f) in e.terms() {
                if let Some(&r) = row_of.get(&(side, *s)) {
                    into(r, f.eval_vertex(0).expect("plain element"));
                }
            }
        };
        let mut m = Matrix::zeros(self.rows.len(), self.unknowns.len());
        for (c, &(side, s)) in self.unknowns.iter().enumerate() {
            for (out_side, e) in image(side, s) {
                read(out_side, &e, &mut |r, x| {
                    let old = m.get(r, c);
                    m.set(r, c, old + x);
                });
            }
        }
        let mut b = vec![Rational::zero(); self.rows.len()];
        for (side, e) in rhs {
            read(*side, e, &mut |r, x| b[r] = &b[r] + &x);
        }
        let Some(x) = solve_linear(&m, &b)? else {
            return Ok(None);
        };
        let mut out = [Element::zero(0), Element::zero(0)];
        for (&(side, s), c) in self.unknowns.iter().zip(x) {
            if !c.is_zero() {
                out[side_index(side)].add_assign(&Element::basis(s, c));
            }
        }
        Ok(Some(out))
    }
}

fn tagged(side: Side, syms: Vec<usize>) -> Vec<(Side, usize)> {
    syms.into_iter().map(|s| (side, s)).collect()
}

fn unit(s: usize) -> Element {
    Element::basis(s, Rational::one())
}

fn constant_path(x: &Element) -> Element {
    x.constant_on(1)
}

fn check_edge(alg: &Arc<SLieAlgebra>, value: &Element) -> Result<Edge, GmError> {
    Ok(Edge::new(MCSimplex::new(alg.clone(), value.clone())?)?)
}

/// Finds an MC element `α` of the source and an edge in the target from
/// `α̃` to `U_*(α)`, layer by layer over the associated graded.
pub fn mc_preimage(u: &InftyMorphism, target_mc: &Element) -> Result<TransferCertificate, GmError> {
    let (src, tgt) = (u.source().clone(), u.target().clone());
    let n_max = tgt.truncation();
    if src.truncation() != n_max {
        return Err(GmError::Input("source and target truncations differ".into()));
    }
    if target_mc.dim() != 0 || !is_mc(&tgt, target_mc)? {
        return Err(GmError::Input("the target element is not MC".into()));
    }
    let mut alpha = Element::zero(0);
    let mut beta = Edge::constant(tgt.clone(), target_mc)?;
    let mut layers = Vec::new();
    for n in 0..n_max {
        let w = n + 1;
        let (ps, pt) = (GradedPiece::new(&src, w), GradedPiece::new(&tgt, w));
        let c = tgt.weight_part(&beta.end().sub(&u.pushforward(&alpha)?), w);
        let joint = Joint {
            unknowns: [tagged(Side::Source, ps.in_degree(0)), tagged(Side::Target, pt.in_degree(-1))].concat(),
            rows: [tagged(Side::Source, ps.in_degree(1)), tagged(Side::Target, pt.in_degree(0))].concat(),
        };
        // ∂γ ≡ 0 and φ(γ) - ∂ξ̃ ≡ c on gr_w.
        let sol = joint.solve(
            |side, s| match side {
                Side::Source => vec![(Side::Source, src.partial(&unit(s))), (Side::Target, u.linear(&unit(s)))],
                Side::Target => vec![(Side::Target, tgt.partial(&unit(s)).neg())],
            },
            &[(Side::Target, c.clone())],
        )?;
        let Some([gamma, xi]) = sol else {
            return Err(refute(n, w, 0, Side::Target, c, "the class of β̃₀(1) - U_*(α) is not in the image of φ"));
        };
        let a = alpha.add(&gamma);
        let beta1 = beta.beta1_constant().expect("rectified").add(&xi);
        beta = integrate_edge(&tgt, target_mc, &constant_path(&beta1))?;
        // σ with ∂σ ≡ -curv(α) on gr_{w+1}.
        let mut sigma = Element::zero(0);
        if w < n_max {
            let kappa = src.weight_part(&src.curv(&a)?, w + 1);
            let pn = GradedPiece::new(&src, w + 1);
            let joint = Joint { unknowns: tagged(Side::Source, pn.in_degree(0)), rows: tagged(Side::Source, pn.in_degree(1)) };
            let sol = joint.solve(|_, s| vec![(Side::Source, src.partial(&unit(s)))], &[(Side::Source, kappa.neg())])?;
            let Some([s, _]) = sol else {
                return Err(refute(n, w + 1, 1, Side::Source, kappa, "curv(α) is not exact although φ(curv(α)) is"));
            };
            sigma = s;
        }
        alpha = a.add(&sigma);
        layers.push(Layer {
            index: n,
            witnesses: vec![
                witness("gamma", Side::Source, w, gamma),
                witness("xi", Side::Target, w, xi),
                witness("sigma", Side::Source, w + 1, sigma),
                witness("beta1", Side::Target, 1, beta1),
            ],
            iterations: 0,
        });
    }
    if !is_mc(&src, &alpha)? || beta.end() != u.pushforward(&alpha)? {
        return Err(GmError::Internal("preimage postconditions".into()));
    }
    Ok(TransferCertificate {
        morphism: u.clone(),
        outcome: Outcome::Preimage { target_mc: target_mc.clone(), alpha, edge: beta.value().clone() },
        layers,
    })
}

/// Given MC elements `α, α'` of the source and an edge in the target from
/// `U_*(α)` to `U_*(α')`, builds an edge in the source from `α` to `α'`.
pub fn transfer_connect(
    u: &InftyMorphism,
    alpha: &Element,
    alpha_prime: &Element,
    target_edge: &Element,
) -> Result<TransferCertificate, GmError> {
    let (src, tgt) = (u.source().clone(), u.target().clone());
    let n_max = tgt.truncation();
    if src.truncation() != n_max {
        return Err(GmError::Input("source and target truncations differ".into()));
    }
    for a in [alpha, alpha_prime] {
        if a.dim() != 0 || !is_mc(&src, a)? {
            return Err(GmError::Input("α and α' must be MC elements of the source".into()));
        }
    }
    let given = check_edge(&tgt, target_edge).map_err(|e| GmError::Input(format!("target edge: {e}")))?;
    if given.start() != u.pushforward(alpha)? || given.end() != u.pushforward(alpha_prime)? {
        return Err(GmError::Input("the target edge does not connect U_*(α) to U_*(α')".into()));
    }
    let mut a_n = alpha.clone();
    let mut beta = rectify(&tgt, &given, 1)?;
    let mut rhos = Vec::new();
    let mut layers = Vec::new();
    let t0 = PolyForm::coordinate(2, 0).unwrap();
    let t2 = PolyForm::coordinate(2, 2).unwrap();
    let twist_form = t2.wedge(&t0.d()).unwrap().sub(&t0.wedge(&t2.d()).unwrap()).unwrap();
    for n in 1..=n_max {
        let (ps, pt) = (GradedPiece::new(&src, n), GradedPiece::new(&tgt, n));
        let diff = src.weight_part(&alpha_prime.sub(&a_n), n);
        let beta1 = beta.beta1_constant().expect("rectified");
        // ∂ρ₁ ≡ α' - α⁽ⁿ⁾ and φ(ρ₁) + ∂γ̃ ≡ β̃₁ on gr_n.
        let joint = Joint {
            unknowns: [tagged(Side::Source, ps.in_degree(-1)), tagged(Side::Target, pt.in_degree(-2))].concat(),
            rows: [tagged(Side::Source, ps.in_degree(0)), tagged(Side::Target, pt.in_degree(-1))].concat(),
        };
        let image = |side: Side, s: usize| match side {
            Side::Source => vec![(Side::Source, src.partial(&unit(s))), (Side::Target, u.linear(&unit(s)))],
            Side::Target => vec![(Side::Target, tgt.partial(&unit(s)))],
        };
        let rhs = [(Side::Source, diff.clone()), (Side::Target, tgt.weight_part(&beta1, n))];
        let Some([rho1, gamma_t]) = joint.solve(image, &rhs)? else {
            let alone = Joint { unknowns: tagged(Side::Source, ps.in_degree(-1)), rows: tagged(Side::Source, ps.in_degree(0)) };
            if alone.solve(|_, s| vec![(Side::Source, src.partial(&unit(s)))], &rhs[..1])?.is_none() {
                return Err(refute(n, n, 0, Side::Source, diff, "α' - α⁽ⁿ⁾ is not exact although its image is"));
            }
            return Err(refute(n, n, -1, Side::Target, tgt.weight_part(&beta1, n), "β̃₁ is not φ(ρ₁) up to coboundaries"));
        };
        let rho = integrate_edge(&src, &a_n, &constant_path(&rho1))?;
        let next = rho.end();
        let rho_t = check_edge(&tgt, &u.pushforward(rho.value())?)?;
        let xi_t = tgt.h(1, rho_t.value()).pullback(&[1, 1, 0]);
        let b_t = tgt.h(1, beta.value()).pullback(&[0, 1, 1]);
        let g_t = gamma_t.constant_on(2).wedge_right(&twist_form);
        let nu = tgt.differential(&xi_t.add(&b_t).add(&g_t));
        let (eta, steps) = reconstruct(&tgt, 2, 1, &u.pushforward(&a_n)?, &nu)?;
        if eta.value().face(2) != *beta.value() || eta.value().face(0) != rho_t.value().pullback(&[1, 0]) {
            return Err(GmError::Internal(format!("layer {n}: filled horn does not restrict to its sides")));
        }
        let side = Edge::new(eta.face(1)?)?;
        layers.push(Layer {
            index: n,
            witnesses: vec![
                witness("rho1", Side::Source, n, rho1),
                witness("gamma~", Side::Target, n, gamma_t),
                witness("beta1", Side::Target, n, beta1),
                witness("eta1", Side::Target, n + 1, side.beta1()),
            ],
            iterations: steps,
        });
        rhos.push(rho);
        a_n = next;
        if n < n_max {
            beta = rectify(&tgt, &side, n + 1)?;
        }
    }
    if a_n != *alpha_prime {
        return Err(GmError::Internal("the layers did not reach α'".into()));
    }
    let (edge, _) = concatenate(&src, &rhos)?;
    if edge.start() != *alpha || edge.end() != *alpha_prime {
        return Err(GmError::Internal("concatenated edge has the wrong endpoints".into()));
    }
    Ok(TransferCertificate {
        morphism: u.clone(),
        outcome: Outcome::Connect {
            alpha: alpha.clone(),
            alpha_prime: alpha_prime.clone(),
            target_edge: target_edge.clone(),
            edge: edge.value().clone(),
        },
        layers,
    })
}

/// One re-validation step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Re-validates a certificate using only MC checks, endpoint equalities and
/// filtration membership.
pub fn verify(cert: &TransferCertificate) -> Vec<Check> {
    let u = &cert.morphism;
    let (src, tgt) = (u.source(), u.target());
    let mut out = Vec::new();
    let mut check = |name: String, passed: bool| out.push(Check { name, passed });
    let mc = |alg: &SLieAlgebra, x: &Element| is_mc(alg, x).unwrap_or(false);
    let push = |x: &Element| u.pushforward(x).ok();
    let vertex = |x: &Element, i: usize| (x.dim() == 1).then(|| x.eval_vertex(i));
    match &cert.outcome {
        Outcome::Preimage { target_mc, alpha, edge } => {
            check("target element is MC".into(), target_mc.dim() == 0 && mc(tgt, target_mc));
            check("α is MC".into(), alpha.dim() == 0 && mc(src, alpha));
            check("edge is MC".into(), edge.dim() == 1 && mc(tgt, edge));
            check("edge starts at the target element".into(), vertex(edge, 1).as_ref() == Some(target_mc));
            check("edge ends at U_*(α)".into(), vertex(edge, 0).is_some() && vertex(edge, 0) == push(alpha));
        }
        Outcome::Connect { alpha, alpha_prime, target_edge, edge } => {
            check("α is MC".into(), alpha.dim() == 0 && mc(src, alpha));
            check("α' is MC".into(), alpha_prime.dim() == 0 && mc(src, alpha_prime));
            check("target edge is MC".into(), target_edge.dim() == 1 && mc(tgt, target_edge));
            check("target edge starts at U_*(α)".into(), vertex(target_edge, 1).is_some() && vertex(target_edge, 1) == push(alpha));
            check("target edge ends at U_*(α')".into(), vertex(target_edge, 0).is_some() && vertex(target_edge, 0) == push(alpha_prime));
            check("edge is MC".into(), edge.dim() == 1 && mc(src, edge));
            check("edge starts at α".into(), vertex(edge, 1).as_ref() == Some(alpha));
            check("edge ends at α'".into(), vertex(edge, 0).as_ref() == Some(alpha_prime));
        }
    }
    check(format!("at most {} layers", tgt.truncation()), cert.layers.len() <= tgt.truncation() as usize);
    for layer in &cert.layers {
        for w in &layer.witnesses {
            let alg = match w.side {
                Side::Source => src,
                Side::Target => tgt,
            };
            let ok = alg.owns(&w.value) && alg.in_filtration(&w.value, w.min_weight);
            check(format!("layer {} {} ∈ F_{}", layer.index, w.name, w.min_weight), ok);
        }
    }
    out
}

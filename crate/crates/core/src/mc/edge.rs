//! 1-simplices: integration of paths, rectification and composition.
//!
//! An edge `β` on `Δ¹` is read with the parameter `t = t_0`, so that
//! `β = β₀(t) + dt β₁(t)`, its start `β₀(0)` is vertex 1 and its end
//! `β₀(1)` is vertex 0. Since `dt_0 = -dt_1` and `|β₁| = -1`, the stored
//! coefficient of `dt_1` is exactly `β₁`.

use std::sync::Arc;

use super::{check_stub, mc_residual, reconstruct, MCSimplex, McError};
use crate::forms::{Monomial, PolyForm};
use crate::linalg::Rational;
use crate::slie::{Element, SLieAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge(MCSimplex);

impl Edge {
    pub fn new(s: MCSimplex) -> Result<Self, McError> {
        if s.dim() != 1 {
            return Err(McError::Input(format!("a {}-simplex is not an edge", s.dim())));
        }
        Ok(Edge(s))
    }

    /// `β₀ + dt β₁` from two paths (0-forms on `Δ¹`).
    pub fn from_parts(alg: Arc<SLieAlgebra>, beta0: &Element, beta1: &Element) -> Result<Self, McError> {
        let v = assemble(beta0, beta1)?;
        Edge::new(MCSimplex::new(alg, v)?)
    }

    /// The constant edge at an MC element.
    pub fn constant(alg: Arc<SLieAlgebra>, alpha: &Element) -> Result<Self, McError> {
        Edge::new(MCSimplex::new(alg, alpha.constant_on(1))?)
    }

    pub fn simplex(&self) -> &MCSimplex {
        &self.0
    }

    pub fn algebra(&self) -> &Arc<SLieAlgebra> {
        self.0.algebra()
    }

    pub fn value(&self) -> &Element {
        self.0.value()
    }

    pub fn start(&self) -> Element {
        self.0.value().eval_vertex(1)
    }

    pub fn end(&self) -> Element {
        self.0.value().eval_vertex(0)
    }

    pub fn beta0(&self) -> Element {
        self.0.value().form_component(0)
    }

    pub fn beta1(&self) -> Element {
        dt_coefficient(self.0.value())
    }

    /// `β₁` is constant in `t`.
    pub fn is_rectified(&self) -> bool {
        self.beta1().terms().values().all(|f| f.poly_degree() == 0)
    }

    /// The constant value of `β₁` as a plain element (rectified edges).
    pub fn beta1_constant(&self) -> Option<Element> {
        if !self.is_rectified() {
            return None;
        }
        Some(self.beta1().eval_vertex(0))
    }
}

/// Coefficient of `dt_1` of the 1-form part, as a path.
fn dt_coefficient(x: &Element) -> Element {
    let mut out = Element::zero(1);
    for (s, f) in x.terms() {
        let mut g = PolyForm::zero(1);
        for (m, c) in f.terms() {
            if m.dt == 1 {
                g.add_assign(&PolyForm::from_terms(1, [(c.clone(), m.exps.clone(), vec![])]).unwrap());
            }
        }
        out.add_term(*s, &g);
    }
    out
}

fn is_path(x: &Element) -> bool {
    x.dim() == 1 && x.terms().values().all(|f| f.degrees().iter().all(|&k| k == 0))
}

fn assemble(beta0: &Element, beta1: &Element) -> Result<Element, McError> {
    if !is_path(beta0) || !is_path(beta1) {
        return Err(McError::Input("edge parts must be 0-forms on Δ¹".into()));
    }
    let dt1 = PolyForm::dt(1, 1).unwrap();
    Ok(beta0.add(&beta1.wedge_right(&dt1)))
}

/// `∫_{t_1}^{1} g` for a 0-form `g` on `Δ¹`, i.e. `∫_0^{t} g` in `t = t_0`.
fn integrate_from_start(g: &Element) -> Element {
    let mut out = Element::zero(1);
    for (s, f) in g.terms() {
        let mut acc = PolyForm::zero(1);
        for (m, c) in f.terms() {
            let e = m.exps[0];
            let k = c * Rational::new(1, e as i64 + 1);
            acc.add_term(Monomial { exps: vec![0], dt: 0 }, k.clone());
            acc.add_term(Monomial { exps: vec![e + 1], dt: 0 }, -k);
        }
        out.add_term(*s, &acc);
    }
    out
}

/// Solves `dβ₀/dt = ∂^{β₀(t)} ρ₁(t)`, `β₀(0) = start` by Picard iteration
/// and returns the edge `β₀ + dt ρ₁`.
pub fn integrate_edge(alg: &Arc<SLieAlgebra>, start: &Element, rho1: &Element) -> Result<Edge, McError> {
    if start.dim() != 0 {
        return Err(McError::Input("start must be a plain element".into()));
    }
    let c = mc_residual(alg, start)?;
    if !c.is_zero() {
        return Err(McError::NotMc(c));
    }
    if !is_path(rho1) {
        return Err(McError::Input("ρ₁ must be a 0-form path on Δ¹".into()));
    }
    alg.require_degree(rho1, -1)?;
    let base = start.constant_on(1);
    let mut current = base.clone();
    let bound = alg.truncation() as usize + 2;
    for _ in 0..=bound {
        let next = base.add(&integrate_from_start(&alg.twisted_partial(&current, rho1)));
        if next == current {
            let v = assemble(&current, rho1)?;
            let s = MCSimplex::new(alg.clone(), v).map_err(|e| McError::Internal(format!("integrated edge: {e}")))?;
            return Edge::new(s);
        }
        current = next;
    }
    Err(McError::NoConvergence("Picard iteration".into()))
}

/// `Σ_s Δ_s t_0 t_2^s` with `Δ_S = σ_S/(S+1)`, `Δ_s = σ_s/(s+1) + Δ_{s+1}`.
fn delta_correction(layer: &Element) -> Element {
    let mut by_power: std::collections::BTreeMap<u32, Element> = std::collections::BTreeMap::new();
    for (s, f) in layer.terms() {
        for (m, c) in f.terms() {
            by_power.entry(m.exps[0]).or_insert_with(|| Element::zero(0)).add_assign(&Element::basis(*s, c.clone()));
        }
    }
    let top = by_power.keys().next_back().copied().unwrap_or(0);
    let mut out = Element::zero(2);
    let mut acc = Element::zero(0);
    let t0 = PolyForm::coordinate(2, 0).unwrap();
    for s in (0..=top).rev() {
        if let Some(sig) = by_power.get(&s) {
            acc.add_scaled(&Rational::new(1, s as i64 + 1), sig);
        }
        if acc.is_zero() {
            continue;
        }
        let t2s = PolyForm::from_terms(2, [(Rational::one(), vec![0, s], vec![])]).unwrap();
        let shape = t0.wedge(&t2s).unwrap();
        for (v, f) in acc.terms() {
            out.add_term(*v, &shape.scale(&f.eval_vertex(0).unwrap()));
        }
    }
    out
}

/// Replaces `e` by an edge with the same endpoints and constant `β₁ ∈ F_k`.
pub fn rectify(alg: &Arc<SLieAlgebra>, e: &Edge, k: u32) -> Result<Edge, McError> {
    if !alg.in_filtration(&e.beta1(), k) {
        return Err(McError::Precondition(format!("β₁ has terms of weight below {k}")));
    }
    if e.is_rectified() {
        return Ok(e.clone());
    }
    let mu = e.start();
    let mut gamma = e.value().pullback(&[1, 1, 0]);
    for m in k.max(1)..=alg.truncation() {
        // Bottom face t_1 = 0 read as σ₀(t_2) + dt_2 σ₁(t_2).
        let sigma1 = dt_coefficient(&gamma.face(1)).neg();
        let layer = alg.weight_part(&sigma1, m);
        if layer.is_zero() {
            continue;
        }
        let delta = delta_correction(&layer);
        let nu = alg.differential(&delta.add(&alg.h(1, &gamma)));
        gamma = reconstruct(alg, 2, 1, &mu, &nu)?.0.into_value();
    }
    let out = Edge::new(MCSimplex::new(alg.clone(), gamma.face(2)).map_err(|e| McError::Internal(format!("rectified edge: {e}")))?)?;
    if !out.is_rectified() || out.start() != e.start() || out.end() != e.end() || !alg.in_filtration(&out.beta1(), k) {
        return Err(McError::Internal("rectification postconditions".into()));
    }
    Ok(out)
}

/// The filled triangle and its third edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub triangle: MCSimplex,
    pub composite: Edge,
    pub iterations: usize,
}

/// Fills the horn formed by `left` (traversed first) and `right` at vertex 1.
pub fn compose_edges(alg: &Arc<SLieAlgebra>, left: &Edge, right: &Edge) -> Result<Composition, McError> {
    if left.end() != right.start() {
        return Err(McError::Input("the first edge does not end where the second starts".into()));
    }
    let gamma = alg.h(0, left.value()).pullback(&[0, 0, 1]);
    let rho = alg.h(1, right.value()).pullback(&[0, 1, 1]);
    let nu = alg.differential(&gamma.add(&rho));
    check_stub(alg, &nu, 1)?;
    let (triangle, iterations) = reconstruct(alg, 2, 1, &right.start(), &nu)?;
    if triangle.value().face(2) != *right.value() || triangle.value().face(0) != *left.value() {
        return Err(McError::Internal("triangle does not restrict to the given edges".into()));
    }
    let composite = Edge::new(triangle.face(1)?)?;
    Ok(Composition { triangle, composite, iterations })
}

/// Concatenates a chain of edges, the `n`-th (1-based) having `β₁ ∈ F_n`.
/// Returns the concatenated edge and the number of compositions made.
pub fn concatenate(alg: &Arc<SLieAlgebra>, edges: &[Edge]) -> Result<(Edge, usize), McError> {
    let Some(first) = edges.first() else {
        return Err(McError::Input("no edges to concatenate".into()));
    };
    for (n, e) in edges.iter().enumerate() {
        if !alg.in_filtration(&e.beta1(), n as u32 + 1) {
            return Err(McError::Precondition(format!("edge {} has β₁ below weight {}", n + 1, n + 1)));
        }
        if n > 0 && edges[n - 1].end() != e.start() {
            return Err(McError::Input(format!("edges {} and {} do not chain", n, n + 1)));
        }
    }
    let mut acc = first.clone();
    let mut steps = 0;
    for e in &edges[1..] {
        if e.beta1().is_zero() && e.start() == e.end() {
            continue;
        }
        acc = compose_edges(alg, &acc, e)?.composite;
        steps += 1;
    }
    Ok((acc, steps))
}

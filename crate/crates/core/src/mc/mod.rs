//! Maurer–Cartan simplices of `L ⊗ Ω_n`, stubs and the reconstruction
//! of a simplex from its value at a vertex and its stub.

mod edge;

use std::sync::Arc;

use crate::slie::{Element, SLieAlgebra, SlieError};

pub use edge::{compose_edges, concatenate, integrate_edge, rectify, Composition, Edge};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not a Maurer–Cartan element; curvature {0:?}")]
    NotMc(Element),
    #[error("not a stub at vertex {vertex}; residual {residual:?}")]
    NotStub { vertex: usize, residual: Element },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("iteration did not stabilise: {0}")]
    NoConvergence(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Slie(#[from] SlieError),
}

/// A degree-0 element of `L ⊗ Ω_n` with vanishing curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCSimplex {
    alg: Arc<SLieAlgebra>,
    value: Element,
}

/// `curv` in `L ⊗ Ω_n`, returned as a residual (zero iff MC).
pub fn mc_residual(alg: &SLieAlgebra, x: &Element) -> Result<Element, McError> {
    alg.check_owns(x)?;
    Ok(alg.curv(x)?)
}

pub fn is_mc(alg: &SLieAlgebra, x: &Element) -> Result<bool, McError> {
    Ok(mc_residual(alg, x)?.is_zero())
}

impl MCSimplex {
    pub fn new(alg: Arc<SLieAlgebra>, value: Element) -> Result<Self, McError> {
        let r = mc_residual(&alg, &value)?;
        if !r.is_zero() {
            return Err(McError::NotMc(r));
        }
        Ok(MCSimplex { alg, value })
    }

    /// A plain MC element as a 0-simplex.
    pub fn point(alg: Arc<SLieAlgebra>, alpha: &Element) -> Result<Self, McError> {
        if alpha.dim() != 0 {
            return Err(McError::Input("expected a plain element".into()));
        }
        MCSimplex::new(alg, alpha.clone())
    }

    pub fn algebra(&self) -> &Arc<SLieAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    pub fn value(&self) -> &Element {
        &self.value
    }

    pub fn into_value(self) -> Element {
        self.value
    }

    pub fn vertex(&self, i: usize) -> Result<Element, McError> {
        if i > self.dim() {
            return Err(McError::Input(format!("vertex {i} of a {}-simplex", self.dim())));
        }
        Ok(self.value.eval_vertex(i))
    }

    pub fn face(&self, i: usize) -> Result<MCSimplex, McError> {
        if self.dim() == 0 || i > self.dim() {
            return Err(McError::Input(format!("face {i} of a {}-simplex", self.dim())));
        }
        Ok(MCSimplex { alg: self.alg.clone(), value: self.value.face(i) })
    }

    pub fn degeneracy(&self, j: usize) -> Result<MCSimplex, McError> {
        if j > self.dim() {
            return Err(McError::Input(format!("degeneracy {j} of a {}-simplex", self.dim())));
        }
        Ok(MCSimplex { alg: self.alg.clone(), value: self.value.degeneracy(j) })
    }

    pub fn stub(&self, i: usize) -> Result<Element, McError> {
        stub_of(&self.alg, &self.value, i)
    }
}

/// `(∂ + d) h^i x`.
pub fn stub_of(alg: &SLieAlgebra, x: &Element, i: usize) -> Result<Element, McError> {
    if i > x.dim() {
        return Err(McError::Input(format!("vertex {i} on Δ^{}", x.dim())));
    }
    alg.check_owns(x)?;
    Ok(alg.differential(&alg.h(i, x)))
}

/// Decides `ν ∈ Stub^i`: `ν = (∂+d)ξ` with `∂ξ` vanishing at vertex `i`
/// holds exactly when `(∂+d) h^i ν = ν`.
pub fn check_stub(alg: &SLieAlgebra, nu: &Element, i: usize) -> Result<(), McError> {
    alg.require_degree(nu, 0)?;
    let back = stub_of(alg, nu, i)?;
    let residual = back.sub(nu);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(McError::NotStub { vertex: i, residual })
    }
}

/// The unique MC simplex with value `μ` at vertex `i` and stub `ν`,
/// computed by `α⁽ᵏ⁺¹⁾ = μ + ν - Σ_{m≥2} (1/m!) h^i {α⁽ᵏ⁾, …}_m`.
/// Returns the simplex and the number of recursion steps taken.
pub fn reconstruct(alg: &Arc<SLieAlgebra>, n: usize, i: usize, mu: &Element, nu: &Element) -> Result<(MCSimplex, usize), McError> {
    if i > n {
        return Err(McError::Input(format!("vertex {i} on Δ^{n}")));
    }
    if mu.dim() != 0 || nu.dim() != n {
        return Err(McError::Input("μ must be plain and ν must live on Δ^n".into()));
    }
    let c = mc_residual(alg, mu)?;
    if !c.is_zero() {
        return Err(McError::NotMc(c));
    }
    check_stub(alg, nu, i)?;
    let start = mu.constant_on(n).add(nu);
    let mut current = start.clone();
    let bound = alg.truncation() as usize + 1;
    for step in 0..=bound {
        let next = start.sub(&alg.h(i, &alg.bracket_series(&current)));
        if next == current {
            let s = MCSimplex::new(alg.clone(), current)
                .map_err(|e| McError::Internal(format!("reconstruction is not MC: {e}")))?;
            return Ok((s, step));
        }
        current = next;
    }
    Err(McError::NoConvergence(format!("no fixed point after {bound} steps")))
}

/// `Shift_α`: an MC simplex of `A^α` gives the MC simplex `α + s` of `A`.
pub fn shift_base(alg: &Arc<SLieAlgebra>, alpha: &Element, s: &Element) -> Result<MCSimplex, McError> {
    let twisted = crate::slie::twist_algebra(alg, alpha)?;
    let r = mc_residual(&twisted, s)?;
    if !r.is_zero() {
        return Err(McError::NotMc(r));
    }
    MCSimplex::new(alg.clone(), alpha.constant_on(s.dim()).add(s))
}

/// Inverse of [`shift_base`].
pub fn unshift_base(alg: &Arc<SLieAlgebra>, alpha: &Element, s: &MCSimplex) -> Result<Element, McError> {
    let twisted = Arc::new(crate::slie::twist_algebra(alg, alpha)?);
    let v = s.value().sub(&alpha.constant_on(s.dim()));
    Ok(MCSimplex::new(twisted, v)?.into_value())
}

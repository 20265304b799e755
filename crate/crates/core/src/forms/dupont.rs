//! Whitney forms, the projection `P` onto simplicial cochains, and the
//! Dupont homotopy `s` with `id - P = d s + s d`.

use std::collections::BTreeMap;

use super::{FormError, PolyForm};
use crate::linalg::Rational;

/// A simplicial cochain on `Δ^n`: coefficients on increasing vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryCochain {
    dim: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl ElementaryCochain {
    pub fn zero(dim: usize) -> Self {
        ElementaryCochain { dim, coeffs: BTreeMap::new() }
    }

    pub fn indicator(dim: usize, face: &[usize]) -> Result<Self, FormError> {
        let mut c = ElementaryCochain::zero(dim);
        c.set(face.to_vec(), Rational::one())?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.coeffs
    }

    pub fn get(&self, face: &[usize]) -> Rational {
        self.coeffs.get(face).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, face: Vec<usize>, c: Rational) -> Result<(), FormError> {
        if face.is_empty() || face.windows(2).any(|w| w[0] >= w[1]) || *face.last().unwrap() > self.dim {
            return Err(FormError::VertexList(face));
        }
        if c.is_zero() {
            self.coeffs.remove(&face);
        } else {
            self.coeffs.insert(face, c);
        }
        Ok(())
    }

    /// Simplicial coboundary `(δc)(J) = Σ_j (-1)^j c(J \ j_j)`.
    pub fn coboundary(&self) -> ElementaryCochain {
        let mut out = BTreeMap::new();
        for (face, c) in &self.coeffs {
            for v in 0..=self.dim {
                if face.contains(&v) {
                    continue;
                }
                let mut bigger = face.clone();
                let pos = bigger.partition_point(|&x| x < v);
                bigger.insert(pos, v);
                let val = if pos % 2 == 1 { -c.clone() } else { c.clone() };
                crate::util::add_to_map(&mut out, bigger, val);
            }
        }
        ElementaryCochain { dim: self.dim, coeffs: out }
    }

    /// `Σ_I c_I · whitney(I)`.
    pub fn to_form(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim);
        for (face, c) in &self.coeffs {
            let w = PolyForm::whitney(self.dim, face).expect("validated face");
            out.add_scaled(c, &w);
        }
        out
    }
}

pub fn increasing_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

impl PolyForm {
    /// `P(ω)`: the cochain `I ↦ ∫_I ω`.
    pub fn dupont_p(&self) -> ElementaryCochain {
        let mut out = ElementaryCochain::zero(self.dim());
        for k in self.degrees() {
            let part = self.component(k);
            for face in increasing_subsets(self.dim(), k + 1) {
                let v = part.integrate_face(&face).expect("homogeneous component");
                out.set(face, v).expect("valid face");
            }
        }
        out
    }

    /// `P` followed by the inclusion of Whitney forms.
    pub fn dupont_p_form(&self) -> PolyForm {
        self.dupont_p().to_form()
    }
}

/// Dupont's homotopy
/// `s = Σ_{k<n} Σ_{i_0<…<i_k} (-1)^k ω_{i_0…i_k} ∧ h^{i_k} ⋯ h^{i_0}`
/// with `ω_I` the Whitney form of `I`.
pub fn dupont_s(omega: &PolyForm) -> PolyForm {
    let n = omega.dim();
    let mut out = PolyForm::zero(n);
    for k in 0..n {
        for face in increasing_subsets(n, k + 1) {
            let mut inner = omega.clone();
            for &v in &face {
                inner = inner.h(v).expect("vertex in range");
                if inner.is_zero() {
                    break;
                }
            }
            if inner.is_zero() {
                continue;
            }
            let w = PolyForm::whitney(n, &face).expect("valid face");
            let term = w.wedge_unchecked(&inner);
            out.add_assign(&if k % 2 == 1 { term.neg() } else { term });
        }
    }
    out
}

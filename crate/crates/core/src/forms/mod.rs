//! Polynomial differential forms on the standard simplices.
//!
//! A form on `Δ^n` is stored in the coordinates `t_1, …, t_n`, with
//! `t_0 = 1 - Σ t_i` and `dt_0 = -Σ dt_i` eliminated, so two forms are equal
//! exactly when their term maps agree.

mod dupont;

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Rational;

pub use dupont::{dupont_s, increasing_subsets, ElementaryCochain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("index {index} out of range for Δ^{dim}")]
    Index { index: usize, dim: usize },
    #[error("invalid vertex list {0:?}")]
    VertexList(Vec<usize>),
    #[error("form has degree {found:?}, expected {expected}")]
    Degree { found: Vec<usize>, expected: usize },
    #[error("invalid term: {0}")]
    Term(String),
}

/// `t^exps dt_S`, where bit `k-1` of `dt` marks `dt_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub dt: u32,
}

impl Monomial {
    pub fn form_degree(&self) -> usize {
        self.dt.count_ones() as usize
    }

    pub fn poly_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// 1-based indices of the differentials, increasing.
    pub fn dt_indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.dt & (1 << b) != 0).map(|b| b + 1).collect()
    }
}

/// Sign and mask of `dt_A ∧ dt_B`, or `None` when they share a factor.
fn wedge_masks(a: u32, b: u32) -> Option<(bool, u32)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((inversions % 2 == 1, a | b))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyForm {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (k, e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·t{}", k + 1)?,
                    _ => write!(f, "·t{}^{e}", k + 1)?,
                }
            }
            for k in m.dt_indices() {
                write!(f, "·dt{k}")?;
            }
        }
        Ok(())
    }
}

impl PolyForm {
    pub fn zero(dim: usize) -> Self {
        PolyForm { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut f = PolyForm::zero(dim);
        f.add_term(Monomial { exps: vec![0; dim], dt: 0 }, c);
        f
    }

    pub fn one(dim: usize) -> Self {
        PolyForm::constant(dim, Rational::one())
    }

    /// The barycentric coordinate `t_i`, `0 ≤ i ≤ n`.
    pub fn coordinate(dim: usize, i: usize) -> Result<Self, FormError> {
        if i > dim {
            return Err(FormError::Index { index: i, dim });
        }
        if i == 0 {
            let mut f = PolyForm::one(dim);
            for k in 1..=dim {
                f.add_term(unit_exp(dim, k, 0), -Rational::one());
            }
            return Ok(f);
        }
        let mut f = PolyForm::zero(dim);
        f.add_term(unit_exp(dim, i, 0), Rational::one());
        Ok(f)
    }

    /// `dt_i`, with `dt_0 = -Σ dt_k`.
    pub fn dt(dim: usize, i: usize) -> Result<Self, FormError> {
        Ok(PolyForm::coordinate(dim, i)?.d())
    }

    /// Builds a form from `(coef, exps, dt indices)` triples in the stored
    /// coordinates (1-based differential indices, any order).
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Rational, Vec<u32>, Vec<usize>)>,
    {
        let mut f = PolyForm::zero(dim);
        for (c, exps, dts) in terms {
            if exps.len() != dim {
                return Err(FormError::Term(format!(
                    "exponent vector of length {} on Δ^{dim}",
                    exps.len()
                )));
            }
            let mut mask = 0u32;
            let mut negative = false;
            for &k in &dts {
                if k == 0 || k > dim {
                    return Err(FormError::Index { index: k, dim });
                }
                match wedge_masks(mask, 1 << (k - 1)) {
                    Some((s, m)) => {
                        negative ^= s;
                        mask = m;
                    }
                    None => {
                        mask = u32::MAX;
                        break;
                    }
                }
            }
            if mask == u32::MAX {
                continue;
            }
            let c = if negative { -c } else { c };
            f.add_term(Monomial { exps, dt: mask }, c);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        crate::util::add_to_map(&mut self.terms, m, c);
    }

    /// Form degrees that occur, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.form_degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The form degree when homogeneous (the zero form counts as homogeneous
    /// of every degree and reports `None`).
    pub fn degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    pub fn component(&self, degree: usize) -> PolyForm {
        PolyForm {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.form_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest total polynomial degree of a term.
    pub fn poly_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.poly_degree()).max().unwrap_or(0)
    }

    fn check_dim(&self, other: &PolyForm) -> Result<(), FormError> {
        if self.dim != other.dim {
            Err(FormError::Dimension(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// In-place addition; panics on a dimension mismatch.
    pub fn add_assign(&mut self, other: &PolyForm) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &PolyForm) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> PolyForm {
        if c.is_zero() {
            return PolyForm::zero(self.dim);
        }
        PolyForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.check_dim(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((neg, mask)) = wedge_masks(ma.dt, mb.dt) else {
                    continue;
                };
                let exps = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                out.add_term(Monomial { exps, dt: mask }, if neg { -c } else { c });
            }
        }
        out
    }

    /// de Rham differential.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim);
        for (m, c) in &self.terms {
            for k in 1..=self.dim {
                let e = m.exps[k - 1];
                if e == 0 {
                    continue;
                }
                let bit = 1u32 << (k - 1);
                if m.dt & bit != 0 {
                    continue;
                }
                let below = (m.dt & (bit - 1)).count_ones();
                let mut exps = m.exps.clone();
                exps[k - 1] -= 1;
                let v = c * Rational::from(e as i64);
                out.add_term(Monomial { exps, dt: m.dt | bit }, if below % 2 == 1 { -v } else { v });
            }
        }
        out
    }

    /// Pullback along the affine map `Δ^m → Δ^n` sending vertex `k` to
    /// vertex `vertex_map[k]`, where `m = vertex_map.len() - 1` and `n` is
    /// the dimension of `self`.
    pub fn pullback(&self, vertex_map: &[usize]) -> Result<PolyForm, FormError> {
        if vertex_map.is_empty() {
            return Err(FormError::VertexList(vertex_map.to_vec()));
        }
        let m = vertex_map.len() - 1;
        for &v in vertex_map {
            if v > self.dim {
                return Err(FormError::Index { index: v, dim: self.dim });
            }
        }
        // Images of t_j and dt_j for j = 1..n.
        let mut coords = Vec::with_capacity(self.dim);
        let mut diffs = Vec::with_capacity(self.dim);
        for j in 1..=self.dim {
            let mut f = PolyForm::zero(m);
            for (k, &v) in vertex_map.iter().enumerate() {
                if v == j {
                    f.add_assign(&PolyForm::coordinate(m, k)?);
                }
            }
            diffs.push(f.d());
            coords.push(f);
        }
        let mut powers: Vec<Vec<PolyForm>> = coords.iter().map(|c| vec![PolyForm::one(m), c.clone()]).collect();
        let mut out = PolyForm::zero(m);
        for (mono, c) in &self.terms {
            let mut acc = PolyForm::constant(m, c.clone());
            for (j, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().wedge_unchecked(&coords[j]);
                    powers[j].push(next);
                }
                acc = acc.wedge_unchecked(&powers[j][e as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            for k in mono.dt_indices() {
                if acc.is_zero() {
                    break;
                }
                acc = acc.wedge_unchecked(&diffs[k - 1]);
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Pullback along the `i`-th coface `Δ^{n-1} → Δ^n` (sets `t_i = 0`).
    pub fn face(&self, i: usize) -> Result<PolyForm, FormError> {
        if self.dim == 0 || i > self.dim {
            return Err(FormError::Index { index: i, dim: self.dim });
        }
        let map: Vec<usize> = (0..self.dim).map(|k| if k < i { k } else { k + 1 }).collect();
        self.pullback(&map)
    }

    /// Pullback along the `j`-th codegeneracy `Δ^{n+1} → Δ^n`
    /// (`t_j ↦ t_j + t_{j+1}`).
    pub fn degeneracy(&self, j: usize) -> Result<PolyForm, FormError> {
        if j > self.dim {
            return Err(FormError::Index { index: j, dim: self.dim });
        }
        let map: Vec<usize> = (0..=self.dim + 1).map(|k| if k <= j { k } else { k - 1 }).collect();
        self.pullback(&map)
    }

    /// Value of the 0-form part at vertex `i`.
    pub fn eval_vertex(&self, i: usize) -> Result<Rational, FormError> {
        if i > self.dim {
            return Err(FormError::Index { index: i, dim: self.dim });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.dt != 0 {
                continue;
            }
            let nonzero = m.exps.iter().enumerate().all(|(k, &e)| e == 0 || k + 1 == i);
            if nonzero {
                total += c;
            }
        }
        Ok(total)
    }

    /// Value of the 0-form part at the point with coordinates
    /// `t_1, …, t_n = point`.
    pub fn eval_point(&self, point: &[Rational]) -> Result<Rational, FormError> {
        if point.len() != self.dim {
            return Err(FormError::Dimension(point.len(), self.dim));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.dt != 0 {
                continue;
            }
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// The homotopy operator `h^i` contracting `Ω_n` onto the constants
    /// at vertex `i`; satisfies `dh + hd = id - ε^i`.
    pub fn h(&self, i: usize) -> Result<PolyForm, FormError> {
        if i > self.dim {
            return Err(FormError::Index { index: i, dim: self.dim });
        }
        let n = self.dim;
        let mut out = PolyForm::zero(n);
        for (mono, c) in &self.terms {
            let ks = mono.dt_indices();
            let m = ks.len();
            if m == 0 {
                continue;
            }
            // ∫_0^1 u^{m-1} f(u t + (1-u) e_i) du as a polynomial in t.
            let mut integral: Vec<(Vec<u32>, Rational)> = Vec::new();
            let rest: u32 = mono.exps.iter().enumerate().filter(|(k, _)| k + 1 != i).map(|(_, e)| *e).sum();
            if i == 0 {
                integral.push((mono.exps.clone(), Rational::new(1, (m as i64) + rest as i64)));
            } else {
                let ei = mono.exps[i - 1] as usize;
                let p = m - 1 + rest as usize;
                for a in 0..=ei {
                    let coef = binomial(ei, a) * Rational::factorial(p + a) * Rational::factorial(ei - a)
                        * Rational::inv_factorial(p + ei + 1);
                    let mut exps = mono.exps.clone();
                    exps[i - 1] = a as u32;
                    integral.push((exps, coef));
                }
            }
            for (j, &k) in ks.iter().enumerate() {
                let sign = if j % 2 == 1 { -c.clone() } else { c.clone() };
                let dt = mono.dt & !(1 << (k - 1));
                for (exps, coef) in &integral {
                    let base = &sign * coef;
                    let mut up = exps.clone();
                    up[k - 1] += 1;
                    out.add_term(Monomial { exps: up, dt }, base.clone());
                    if k == i {
                        out.add_term(Monomial { exps: exps.clone(), dt }, -base);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Integral over the face spanned by the vertices `face`, oriented by
    /// their order. The form must have degree `face.len() - 1` (the zero
    /// form integrates to zero everywhere).
    pub fn integrate_face(&self, face: &[usize]) -> Result<Rational, FormError> {
        if face.is_empty() {
            return Err(FormError::VertexList(face.to_vec()));
        }
        for (a, &v) in face.iter().enumerate() {
            if v > self.dim || face[..a].contains(&v) {
                return Err(FormError::VertexList(face.to_vec()));
            }
        }
        let k = face.len() - 1;
        let ds = self.degrees();
        if ds.iter().any(|&d| d != k) {
            return Err(FormError::Degree { found: ds, expected: k });
        }
        let pulled = self.pullback(face)?;
        Ok(pulled.integrate_top())
    }

    /// `∫_{Δ^n}` of the top-degree part, with `dt_1 … dt_n` positively oriented.
    pub(crate) fn integrate_top(&self) -> Rational {
        let full = if self.dim == 0 { 0 } else { (1u32 << self.dim) - 1 };
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.dt != full {
                continue;
            }
            let mut num = Rational::one();
            for &e in &m.exps {
                num *= Rational::factorial(e as usize);
            }
            let s = m.poly_degree() as usize + self.dim;
            total += c * num * Rational::inv_factorial(s);
        }
        total
    }

    /// The elementary form `k! Σ_j (-1)^j t_{i_j} dt_{i_0} … ^ … dt_{i_k}`.
    pub fn whitney(dim: usize, face: &[usize]) -> Result<PolyForm, FormError> {
        if face.is_empty() || face.windows(2).any(|w| w[0] >= w[1]) || face[face.len() - 1] > dim {
            return Err(FormError::VertexList(face.to_vec()));
        }
        let k = face.len() - 1;
        let dts: Vec<PolyForm> = face.iter().map(|&v| PolyForm::dt(dim, v)).collect::<Result<_, _>>()?;
        let mut out = PolyForm::zero(dim);
        for j in 0..=k {
            let mut term = PolyForm::coordinate(dim, face[j])?;
            for (l, dtl) in dts.iter().enumerate() {
                if l != j {
                    term = term.wedge_unchecked(dtl);
                }
            }
            let sign = if j % 2 == 1 { -Rational::one() } else { Rational::one() };
            out.add_scaled(&sign, &term);
        }
        Ok(out.scale(&Rational::factorial(k)))
    }
}

fn unit_exp(dim: usize, k: usize, dt: u32) -> Monomial {
    let mut exps = vec![0; dim];
    exps[k - 1] = 1;
    Monomial { exps, dt }
}

pub(crate) fn binomial(n: usize, k: usize) -> Rational {
    Rational::factorial(n) * Rational::inv_factorial(k) * Rational::inv_factorial(n - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn t(n: usize, i: usize) -> PolyForm {
        PolyForm::coordinate(n, i).unwrap()
    }

    fn dt(n: usize, i: usize) -> PolyForm {
        PolyForm::dt(n, i).unwrap()
    }

    #[test]
    fn differential_and_wedge() {
        assert_eq!(t(2, 1).d(), dt(2, 1));
        let prod = t(2, 1).wedge(&t(2, 2)).unwrap();
        assert_eq!(prod.d(), t(2, 2).wedge(&dt(2, 1)).unwrap().add(&t(2, 1).wedge(&dt(2, 2)).unwrap()).unwrap());
        assert!(dt(2, 1).wedge(&dt(2, 1)).unwrap().is_zero());
        let s = dt(2, 1).wedge(&dt(2, 2)).unwrap().add(&dt(2, 2).wedge(&dt(2, 1)).unwrap()).unwrap();
        assert!(s.is_zero());
        assert!(dt(2, 0).wedge(&dt(2, 0)).unwrap().is_zero());
    }

    #[test]
    fn faces_and_vertices() {
        assert!(t(2, 2).face(2).unwrap().is_zero());
        assert!(t(1, 0).face(0).unwrap().is_zero());
        assert_eq!(t(1, 1).eval_vertex(1).unwrap(), Rational::one());
        assert_eq!(t(1, 1).eval_vertex(0).unwrap(), Rational::zero());
        assert_eq!(t(1, 0).eval_vertex(0).unwrap(), Rational::one());
        assert_eq!(dt(1, 1).eval_vertex(1).unwrap(), Rational::zero());
        assert_eq!(t(1, 1).degeneracy(0).unwrap(), t(2, 2));
        assert_eq!(t(1, 1).degeneracy(1).unwrap(), t(2, 1).add(&t(2, 2)).unwrap());
        assert_eq!(t(1, 0).degeneracy(0).unwrap(), t(2, 0).add(&t(2, 1)).unwrap());
    }

    #[test]
    fn homotopy_on_interval() {
        assert_eq!(dt(1, 1).h(0).unwrap(), t(1, 1));
        assert_eq!(dt(1, 1).h(1).unwrap(), t(1, 1).sub(&PolyForm::one(1)).unwrap());
        assert!(t(1, 1).h(0).unwrap().is_zero());
    }

    #[test]
    fn whitney_and_integration() {
        assert_eq!(PolyForm::whitney(1, &[0, 1]).unwrap(), dt(1, 1));
        assert_eq!(PolyForm::whitney(2, &[1]).unwrap(), t(2, 1));
        assert_eq!(dt(1, 1).integrate_face(&[0, 1]).unwrap(), Rational::one());
        assert_eq!(t(1, 1).wedge(&dt(1, 1)).unwrap().integrate_face(&[0, 1]).unwrap(), q(1, 2));
        assert_eq!(dt(1, 1).integrate_face(&[1, 0]).unwrap(), -Rational::one());
        assert!(dt(1, 1).integrate_face(&[0]).is_err());
    }
}

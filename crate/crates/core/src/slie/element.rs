use std::collections::BTreeMap;
use std::fmt;

use crate::forms::PolyForm;
use crate::linalg::Rational;

/// A finite sum `Σ v ⊗ ω_v` in `L ⊗ Ω_dim`, keyed by basis index.
/// Plain elements of `L` use `dim = 0`, where every form is a constant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    dim: usize,
    terms: BTreeMap<usize, PolyForm>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, w) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "#{s}⊗({w})")?;
        }
        Ok(())
    }
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element { dim, terms: BTreeMap::new() }
    }

    /// `c · v` in `L`.
    pub fn basis(sym: usize, c: Rational) -> Self {
        Element::tensor(sym, PolyForm::constant(0, c))
    }

    /// `v ⊗ ω`.
    pub fn tensor(sym: usize, form: PolyForm) -> Self {
        let mut e = Element::zero(form.dim());
        e.add_term(sym, &form);
        e
    }

    /// Plain element from `(index, coefficient)` pairs.
    pub fn from_coeffs<I: IntoIterator<Item = (usize, Rational)>>(coeffs: I) -> Self {
        let mut e = Element::zero(0);
        for (s, c) in coeffs {
            e.add_term(s, &PolyForm::constant(0, c));
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<usize, PolyForm> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn form(&self, sym: usize) -> PolyForm {
        self.terms.get(&sym).cloned().unwrap_or_else(|| PolyForm::zero(self.dim))
    }

    /// Coefficient of `v ⊗ 1`; for plain elements this is the coefficient of `v`.
    pub fn coeff(&self, sym: usize) -> Rational {
        match self.terms.get(&sym) {
            None => Rational::zero(),
            Some(f) => f
                .terms()
                .iter()
                .find(|(m, _)| m.dt == 0 && m.exps.iter().all(|&e| e == 0))
                .map(|(_, c)| c.clone())
                .unwrap_or_default(),
        }
    }

    pub fn add_term(&mut self, sym: usize, form: &PolyForm) {
        assert_eq!(form.dim(), self.dim, "dimension mismatch");
        if form.is_zero() {
            return;
        }
        let slot = self.terms.entry(sym).or_insert_with(|| PolyForm::zero(form.dim()));
        slot.add_assign(form);
        if slot.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Element) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (s, f) in &other.terms {
            self.add_term(*s, &f.scale(c));
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        self.add_scaled(&Rational::one(), other);
    }

    pub fn sub_assign(&mut self, other: &Element) {
        self.add_scaled(&-Rational::one(), other);
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Element::zero(self.dim);
        out.add_scaled(c, self);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rational::one())
    }

    /// Applies `f` to every form factor.
    pub fn map_forms<F: Fn(&PolyForm) -> PolyForm>(&self, dim: usize, f: F) -> Element {
        let mut out = Element::zero(dim);
        for (s, w) in &self.terms {
            out.add_term(*s, &f(w));
        }
        out
    }

    /// Keeps the terms whose symbol satisfies `keep`.
    pub fn filter_symbols<F: Fn(usize) -> bool>(&self, keep: F) -> Element {
        Element {
            dim: self.dim,
            terms: self.terms.iter().filter(|(s, _)| keep(**s)).map(|(s, f)| (*s, f.clone())).collect(),
        }
    }

    /// A plain element regarded as constant on `Δ^dim`.
    pub fn constant_on(&self, dim: usize) -> Element {
        assert_eq!(self.dim, 0, "constant_on expects a plain element");
        let mut out = Element::zero(dim);
        for (s, f) in &self.terms {
            out.add_term(*s, &PolyForm::constant(dim, f.eval_vertex(0).unwrap()));
        }
        out
    }

    /// Multiplies every form factor on the right by `w`: `v⊗ω ↦ v⊗(ω∧w)`.
    pub fn wedge_right(&self, w: &PolyForm) -> Element {
        self.map_forms(self.dim, |f| f.wedge(w).expect("dimension"))
    }

    pub fn eval_vertex(&self, i: usize) -> Element {
        let mut out = Element::zero(0);
        for (s, f) in &self.terms {
            out.add_term(*s, &PolyForm::constant(0, f.eval_vertex(i).expect("vertex in range")));
        }
        out
    }

    pub fn pullback(&self, vertex_map: &[usize]) -> Element {
        self.map_forms(vertex_map.len() - 1, |f| f.pullback(vertex_map).expect("valid vertex map"))
    }

    pub fn face(&self, i: usize) -> Element {
        self.map_forms(self.dim - 1, |f| f.face(i).expect("face in range"))
    }

    pub fn degeneracy(&self, j: usize) -> Element {
        self.map_forms(self.dim + 1, |f| f.degeneracy(j).expect("degeneracy in range"))
    }

    /// The part of form degree `k`.
    pub fn form_component(&self, k: usize) -> Element {
        self.map_forms(self.dim, |f| f.component(k))
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{SLieAlgebra, Table};
use super::element::Element;
use super::{eval, SlieError};
use crate::linalg::Rational;

/// An ∞-morphism given by its Taylor coefficients `U'_m` on sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InftyMorphism {
    source: Arc<SLieAlgebra>,
    target: Arc<SLieAlgebra>,
    taylor: Table,
}

impl InftyMorphism {
    pub fn new(source: Arc<SLieAlgebra>, target: Arc<SLieAlgebra>, taylor: Table) -> Result<Self, SlieError> {
        let mut clean = Table::new();
        for (key, out) in taylor {
            if key.is_empty() {
                return Err(SlieError::Input("empty Taylor key".into()));
            }
            if key.windows(2).any(|w| w[0] > w[1]) || key.iter().any(|&s| s >= source.len()) {
                return Err(SlieError::Input(format!("Taylor key {key:?} is not a sorted tuple of source symbols")));
            }
            if out.dim() != 0 || !target.owns(&out) {
                return Err(SlieError::Input(format!("Taylor output for {key:?} is not a target element")));
            }
            let repeated_odd = key.windows(2).any(|w| w[0] == w[1] && source.degree(w[0]) % 2 != 0);
            if repeated_odd && !out.is_zero() {
                return Err(SlieError::Input(format!("Taylor coefficient {key:?} repeats an odd symbol but is nonzero")));
            }
            if !out.is_zero() {
                clean.insert(key, out);
            }
        }
        Ok(InftyMorphism { source, target, taylor: clean })
    }

    pub fn identity(alg: Arc<SLieAlgebra>) -> Self {
        let taylor = (0..alg.len()).map(|s| (vec![s], Element::basis(s, Rational::one()))).collect();
        InftyMorphism { source: alg.clone(), target: alg, taylor }
    }

    /// A strict morphism with linear part given by images of the source basis.
    pub fn strict(source: Arc<SLieAlgebra>, target: Arc<SLieAlgebra>, images: BTreeMap<usize, Element>) -> Result<Self, SlieError> {
        InftyMorphism::new(source, target, images.into_iter().map(|(s, e)| (vec![s], e)).collect())
    }

    pub fn source(&self) -> &Arc<SLieAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SLieAlgebra> {
        &self.target
    }

    pub fn taylor(&self) -> &Table {
        &self.taylor
    }

    pub fn max_arity(&self) -> usize {
        self.taylor.keys().map(|k| k.len()).max().unwrap_or(1)
    }

    /// `U'_m(x_1, …, x_m)` extended to forms.
    pub fn apply(&self, args: &[&Element]) -> Element {
        eval::eval_table(&self.taylor, &self.source, &self.target, args)
    }

    /// The linear term `φ`.
    pub fn linear(&self, x: &Element) -> Element {
        self.apply(&[x])
    }

    /// `U_*(α) = Σ_{m≥1} (1/m!) U'(α^m)`.
    pub fn pushforward(&self, alpha: &Element) -> Result<Element, SlieError> {
        self.source.check_owns(alpha)?;
        let mut out = Element::zero(alpha.dim());
        for m in 1..=self.max_arity().min(self.target.truncation() as usize) {
            let args = vec![alpha; m];
            out.add_scaled(&Rational::inv_factorial(m), &self.apply(&args));
        }
        Ok(out)
    }

    /// `Σ_{k≥0} (1/k!) U'(α^k, v_1, …, v_m)`.
    pub fn twisted_apply(&self, alpha: &Element, args: &[&Element]) -> Element {
        let dim = args.first().map_or(alpha.dim(), |a| a.dim());
        let mut out = Element::zero(dim);
        let mut k = 0;
        while k + args.len() <= self.max_arity() && k as u32 <= self.target.truncation() {
            let mut all: Vec<&Element> = vec![alpha; k];
            all.extend_from_slice(args);
            out.add_scaled(&Rational::inv_factorial(k), &self.apply(&all));
            k += 1;
        }
        out
    }
}

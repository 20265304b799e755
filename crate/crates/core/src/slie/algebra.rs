use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::Element;
use super::{eval, SlieError};
use crate::forms::PolyForm;
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisSymbol {
    pub name: String,
    pub degree: i32,
    pub weight: u32,
}

/// Multi-bracket table keyed by non-decreasing index tuples.
pub type Table = BTreeMap<Vec<usize>, Element>;

/// A filtered shifted L∞-algebra, truncated above weight `truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SLieAlgebra {
    name: String,
    basis: Vec<BasisSymbol>,
    index: BTreeMap<String, usize>,
    differential: Vec<Element>,
    brackets: Table,
    max_arity: usize,
    truncation: u32,
}

fn check_plain(alg_len: usize, e: &Element, what: &str) -> Result<(), SlieError> {
    if e.dim() != 0 {
        return Err(SlieError::Input(format!("{what}: expected a plain element")));
    }
    if let Some(s) = e.terms().keys().find(|s| **s >= alg_len) {
        return Err(SlieError::Input(format!("{what}: unknown symbol index {s}")));
    }
    Ok(())
}

impl SLieAlgebra {
    /// Structural validation only: names, index ranges, sorted keys and
    /// arities. Degree, weight and Jacobi laws are reported by `check_slie`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<BasisSymbol>,
        differential: BTreeMap<usize, Element>,
        brackets: Table,
        max_arity: usize,
        truncation: u32,
    ) -> Result<Self, SlieError> {
        let mut index = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if b.name.is_empty() {
                return Err(SlieError::Input("empty symbol name".into()));
            }
            if b.weight < 1 {
                return Err(SlieError::Input(format!("symbol {} has weight 0", b.name)));
            }
            if b.weight > truncation {
                return Err(SlieError::Input(format!(
                    "symbol {} has weight {} above the truncation {truncation}",
                    b.name, b.weight
                )));
            }
            if index.insert(b.name.clone(), i).is_some() {
                return Err(SlieError::Input(format!("duplicate symbol {}", b.name)));
            }
        }
        if truncation == 0 && !basis.is_empty() {
            return Err(SlieError::Input("truncation must be at least 1".into()));
        }
        let n = basis.len();
        let mut diff = vec![Element::zero(0); n];
        for (s, e) in differential {
            if s >= n {
                return Err(SlieError::Input(format!("differential of unknown index {s}")));
            }
            check_plain(n, &e, "differential")?;
            diff[s] = e;
        }
        let mut table = Table::new();
        for (key, out) in brackets {
            if key.len() < 2 || key.len() > max_arity {
                return Err(SlieError::Input(format!(
                    "bracket of arity {} outside 2..={max_arity}",
                    key.len()
                )));
            }
            if key.windows(2).any(|w| w[0] > w[1]) || key.iter().any(|&s| s >= n) {
                return Err(SlieError::Input(format!("bracket key {key:?} is not a sorted tuple of symbols")));
            }
            check_plain(n, &out, "bracket output")?;
            // A repeated odd symbol forces the bracket to vanish.
            let repeated_odd = key.windows(2).any(|w| w[0] == w[1] && basis[w[0]].degree % 2 != 0);
            if repeated_odd && !out.is_zero() {
                return Err(SlieError::Input(format!(
                    "bracket {:?} repeats an odd symbol but is nonzero",
                    key.iter().map(|&s| basis[s].name.clone()).collect::<Vec<_>>()
                )));
            }
            if !out.is_zero() {
                table.insert(key, out);
            }
        }
        Ok(SLieAlgebra {
            name: name.into(),
            basis,
            index,
            differential: diff,
            brackets: table,
            max_arity,
            truncation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn symbol(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn degree(&self, s: usize) -> i32 {
        self.basis[s].degree
    }

    pub fn weight(&self, s: usize) -> u32 {
        self.basis[s].weight
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn brackets(&self) -> &Table {
        &self.brackets
    }

    pub fn differential_table(&self) -> &[Element] {
        &self.differential
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `true` when every symbol of `x` is known; used to reject foreign elements.
    pub fn owns(&self, x: &Element) -> bool {
        x.terms().keys().all(|s| *s < self.basis.len())
    }

    pub fn check_owns(&self, x: &Element) -> Result<(), SlieError> {
        if self.owns(x) {
            Ok(())
        } else {
            Err(SlieError::Input(format!("element has symbols outside algebra {}", self.name)))
        }
    }

    /// Total degree when homogeneous; `None` for the zero element.
    pub fn total_degree(&self, x: &Element) -> Result<Option<i32>, SlieError> {
        self.check_owns(x)?;
        let mut deg = None;
        for (s, f) in x.terms() {
            for k in f.degrees() {
                let d = self.degree(*s) + k as i32;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(SlieError::Homogeneity(format!(
                            "degrees {e} and {d} both occur"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    pub fn require_degree(&self, x: &Element, d: i32) -> Result<(), SlieError> {
        match self.total_degree(x)? {
            None => Ok(()),
            Some(e) if e == d => Ok(()),
            Some(e) => Err(SlieError::Homogeneity(format!("expected degree {d}, found {e}"))),
        }
    }

    /// Lowest weight of a symbol in `x`, `None` for zero.
    pub fn min_weight(&self, x: &Element) -> Option<u32> {
        x.terms().keys().map(|s| self.weight(*s)).min()
    }

    /// `x ∈ F_k`.
    pub fn in_filtration(&self, x: &Element, k: u32) -> bool {
        self.min_weight(x).map_or(true, |w| w >= k)
    }

    pub fn weight_part(&self, x: &Element, w: u32) -> Element {
        x.filter_symbols(|s| self.weight(s) == w)
    }

    pub fn weight_at_least(&self, x: &Element, w: u32) -> Element {
        x.filter_symbols(|s| self.weight(s) >= w)
    }

    /// `∂ ⊗ 1`.
    pub fn partial(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.dim());
        for (s, f) in x.terms() {
            for (t, g) in self.differential[*s].terms() {
                let c = g.eval_vertex(0).unwrap();
                out.add_term(*t, &f.scale(&c));
            }
        }
        out
    }

    /// The extended differential `∂ ⊗ 1 + (-1)^{|v|} 1 ⊗ d`.
    pub fn differential(&self, x: &Element) -> Element {
        let mut out = self.partial(x);
        out.add_assign(&self.form_d(x));
        out
    }

    /// `v ⊗ ω ↦ (-1)^{|v|} v ⊗ dω`.
    pub fn form_d(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.dim());
        for (s, f) in x.terms() {
            let df = f.d();
            out.add_term(*s, &if self.degree(*s) % 2 != 0 { df.neg() } else { df });
        }
        out
    }

    /// The extended homotopy `v ⊗ ω ↦ (-1)^{|v|} v ⊗ h^i ω`.
    pub fn h(&self, i: usize, x: &Element) -> Element {
        let mut out = Element::zero(x.dim());
        for (s, f) in x.terms() {
            let hf = f.h(i).expect("vertex in range");
            out.add_term(*s, &if self.degree(*s) % 2 != 0 { hf.neg() } else { hf });
        }
        out
    }

    /// `{x_1, …, x_m}` extended to `L ⊗ Ω_n` with Koszul signs.
    pub fn bracket(&self, args: &[&Element]) -> Result<Element, SlieError> {
        if args.len() < 2 {
            return Err(SlieError::Arity(args.len()));
        }
        if args.len() > self.max_arity {
            return Err(SlieError::Arity(args.len()));
        }
        self.check_args(args)?;
        Ok(eval::eval_table(&self.brackets, self, self, args))
    }

    /// `Q'_m` with `Q'_1 = ∂ + d`; zero above the maximal arity.
    pub fn q_prime(&self, args: &[&Element]) -> Element {
        match args.len() {
            0 => panic!("empty argument list"),
            1 => self.differential(args[0]),
            m if m > self.max_arity => Element::zero(args[0].dim()),
            _ => eval::eval_table(&self.brackets, self, self, args),
        }
    }

    fn check_args(&self, args: &[&Element]) -> Result<(), SlieError> {
        let dim = args[0].dim();
        for a in args {
            if a.dim() != dim {
                return Err(SlieError::Input("arguments live on simplices of different dimension".into()));
            }
            self.check_owns(a)?;
        }
        Ok(())
    }

    /// `Σ_{m ≥ 2} (1/m!) {α, …, α}_m`.
    pub fn bracket_series(&self, alpha: &Element) -> Element {
        let mut out = Element::zero(alpha.dim());
        for m in 2..=self.max_arity.min(self.truncation as usize) {
            let args = vec![alpha; m];
            let b = eval::eval_table(&self.brackets, self, self, &args);
            out.add_scaled(&Rational::inv_factorial(m), &b);
        }
        out
    }

    /// `curv(α) = (∂ + d)α + Σ_{m≥2} (1/m!) {α^m}`.
    pub fn curv(&self, alpha: &Element) -> Result<Element, SlieError> {
        self.require_degree(alpha, 0)?;
        let mut out = self.differential(alpha);
        out.add_assign(&self.bracket_series(alpha));
        Ok(out)
    }

    pub fn is_mc(&self, alpha: &Element) -> Result<bool, SlieError> {
        Ok(self.curv(alpha)?.is_zero())
    }

    /// `Σ_{k ≥ 0} (1/k!) Q'_{k+m}(α^k, v_1, …, v_m)`, the twisted operation.
    pub fn twisted_q(&self, alpha: &Element, args: &[&Element]) -> Element {
        let dim = args.first().map_or(alpha.dim(), |a| a.dim());
        let mut out = Element::zero(dim);
        let mut k = 0;
        while k + args.len() <= self.max_arity.max(1) {
            let mut all: Vec<&Element> = vec![alpha; k];
            all.extend_from_slice(args);
            let val = self.q_prime(&all);
            out.add_scaled(&Rational::inv_factorial(k), &val);
            k += 1;
            if k as u32 > self.truncation {
                break;
            }
        }
        out
    }

    /// `∂^α v = (∂+d) v + Σ_{k≥1} (1/k!) {α^k, v}`.
    pub fn twisted_differential(&self, alpha: &Element, v: &Element) -> Element {
        self.twisted_q(alpha, &[v])
    }

    /// Pointwise `∂^α v = ∂v + Σ_{k≥1} (1/k!) {α^k, v}` (no de Rham part).
    pub fn twisted_partial(&self, alpha: &Element, v: &Element) -> Element {
        let mut out = self.partial(v);
        let mut k = 1;
        while k + 1 <= self.max_arity && k as u32 <= self.truncation {
            let mut all: Vec<&Element> = vec![alpha; k];
            all.push(v);
            out.add_scaled(&Rational::inv_factorial(k), &eval::eval_table(&self.brackets, self, self, &all));
            k += 1;
        }
        out
    }

    /// The embedding of plain `x` as a constant on `Δ^dim` (checks ownership).
    pub fn constant(&self, x: &Element, dim: usize) -> Element {
        x.constant_on(dim)
    }

    /// `Σ c·v` from names; panics on unknown names (test helper).
    pub fn elem(&self, terms: &[(&str, Rational)]) -> Element {
        Element::from_coeffs(terms.iter().map(|(n, c)| (self.symbol(n).unwrap_or_else(|| panic!("no symbol {n}")), c.clone())))
    }

    /// `v ⊗ ω` by name.
    pub fn tensor(&self, name: &str, form: PolyForm) -> Element {
        Element::tensor(self.symbol(name).unwrap_or_else(|| panic!("no symbol {name}")), form)
    }

    pub fn into_handle(self) -> Arc<SLieAlgebra> {
        Arc::new(self)
    }

    /// Replace the bracket table and differential (used by constructions
    /// that keep the basis fixed).
    pub(crate) fn with_structure(&self, name: String, differential: Vec<Element>, brackets: Table, max_arity: usize) -> SLieAlgebra {
        SLieAlgebra {
            name,
            basis: self.basis.clone(),
            index: self.index.clone(),
            differential,
            brackets,
            max_arity,
            truncation: self.truncation,
        }
    }
}

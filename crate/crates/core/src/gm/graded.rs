//! Associated-graded pieces `F_w L / F_{w+1} L` and the quasi-isomorphism
//! test on them.

use std::collections::BTreeMap;

use super::{GmError, Side};
use crate::linalg::{Class, CochainComplex, Generator, Matrix, Rational, SparseVec};
use crate::slie::{Element, InftyMorphism, SLieAlgebra};

/// The symbols of weight `w` with the weight-preserving part of `∂`.
pub struct GradedPiece<'a> {
    alg: &'a SLieAlgebra,
    weight: u32,
    symbols: Vec<usize>,
    local: BTreeMap<usize, usize>,
}

impl<'a> GradedPiece<'a> {
    pub fn new(alg: &'a SLieAlgebra, weight: u32) -> Self {
        let symbols: Vec<usize> = (0..alg.len()).filter(|&s| alg.weight(s) == weight).collect();
        let local = symbols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        GradedPiece { alg, weight, symbols, local }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Global symbols of the given degree, in basis order.
    pub fn in_degree(&self, d: i32) -> Vec<usize> {
        self.symbols.iter().copied().filter(|&s| self.alg.degree(s) == d).collect()
    }

    /// Coefficients of the weight-`w` part of a plain element.
    pub fn vector(&self, x: &Element) -> SparseVec {
        let mut v = SparseVec::new();
        for (s, f) in x.terms() {
            if let Some(&i) = self.local.get(s) {
                let c = f.eval_vertex(0).expect("plain element");
                if !c.is_zero() {
                    v.insert(i, c);
                }
            }
        }
        v
    }

    pub fn element(&self, v: &SparseVec) -> Element {
        Element::from_coeffs(v.iter().map(|(&i, c)| (self.symbols[i], c.clone())))
    }

    /// `gr_w ∂` applied to a single symbol.
    pub fn partial(&self, s: usize) -> Element {
        self.alg.weight_part(&self.alg.partial(&Element::basis(s, Rational::one())), self.weight)
    }

    /// The piece as a complex on the degree window `window`, which must
    /// contain every degree present.
    pub fn complex(&self, window: (i32, i32)) -> CochainComplex {
        let gens: Vec<Generator> = self
            .symbols
            .iter()
            .map(|&s| Generator { name: self.alg.basis()[s].name.clone(), degree: self.alg.degree(s) })
            .collect();
        let diff: Vec<SparseVec> = self.symbols.iter().map(|&s| self.vector(&self.partial(s))).collect();
        CochainComplex::new(gens, diff, window).expect("graded piece of a valid algebra")
    }
}

/// One way a graded cohomology map fails to be an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QisoFailure {
    pub weight: u32,
    pub degree: i32,
    /// `Source`: a nonzero class mapped to zero. `Target`: a class not in the image.
    pub side: Side,
    pub class: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QisoReport {
    pub failures: Vec<QisoFailure>,
}

impl QisoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `w = 1..=N`, checks that `gr_w φ` induces isomorphisms
/// `H^d(gr_w L) → H^d(gr_w L̃)` in every degree.
pub fn check_filtered_qiso(u: &InftyMorphism) -> Result<QisoReport, GmError> {
    let (src, tgt) = (u.source(), u.target());
    if src.truncation() != tgt.truncation() {
        return Err(GmError::Input("source and target truncations differ".into()));
    }
    let mut report = QisoReport::default();
    for w in 1..=src.truncation() {
        let ps = GradedPiece::new(src, w);
        let pt = GradedPiece::new(tgt, w);
        let degrees: std::collections::BTreeSet<i32> =
            ps.symbols.iter().map(|&s| src.degree(s)).chain(pt.symbols.iter().map(|&s| tgt.degree(s))).collect();
        let window = match (degrees.first(), degrees.last()) {
            (Some(lo), Some(hi)) => (lo - 1, hi + 1),
            _ => continue,
        };
        let (cs, ct) = (ps.complex(window), pt.complex(window));
        for d in degrees {
            let hs = cs.cohomology_basis(d)?;
            let ht = ct.cohomology_basis(d)?;
            // Columns: target coordinates of φ applied to each source class.
            let mut cols = Vec::new();
            for z in hs.basis() {
                let img = tgt.weight_part(&u.linear(&ps.element(z)), w);
                let coords = match ht.classify(&pt.vector(&img))? {
                    Class::Exact(_) => vec![Rational::zero(); ht.dim()],
                    Class::Nonzero(c) => c,
                };
                cols.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>());
            }
            let m = Matrix::from_columns(ht.dim(), &cols)?;
            for k in m.nullspace() {
                let mut z = SparseVec::new();
                for (j, c) in k.iter().enumerate() {
                    crate::linalg::axpy(&mut z, c, &hs.basis()[j]);
                }
                report.failures.push(QisoFailure { weight: w, degree: d, side: Side::Source, class: ps.element(&z) });
            }
            if m.rank() < ht.dim() {
                // Target classes outside the image, in basis order.
                let mut current = m.clone();
                for (j, z) in ht.basis().iter().enumerate() {
                    let mut unit = SparseVec::new();
                    unit.insert(j, Rational::one());
                    let mut ext: Vec<SparseVec> = (0..current.cols()).map(|c| current.column(c)).collect();
                    ext.push(unit);
                    let next = Matrix::from_columns(ht.dim(), &ext)?;
                    if next.rank() > current.rank() {
                        report.failures.push(QisoFailure { weight: w, degree: d, side: Side::Target, class: pt.element(z) });
                        current = next;
                    }
                }
            }
        }
    }
    Ok(report)
}

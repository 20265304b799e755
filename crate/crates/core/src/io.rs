//! JSON documents for algebras, morphisms, elements, simplices and
//! certificates. Every document carries `"schema_version": 1` and unknown
//! keys are rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::forms::PolyForm;
use crate::gm::{Layer, Outcome, Side, TransferCertificate, Witness};
use crate::linalg::Rational;
use crate::mc::{is_mc, MCSimplex};
use crate::slie::{BasisSymbol, Element, InftyMorphism, SLieAlgebra, Table};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("unsupported schema_version {0}")]
    Version(u32),
    #[error("invalid content: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse(e.to_string())
    }
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

fn check_version(v: u32) -> Result<(), IoError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(IoError::Version(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coef: Rational,
    pub basis: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dt: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub name: String,
    pub degree: i32,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub inputs: Vec<String>,
    pub output: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub truncation: u32,
    pub max_arity: usize,
    pub basis: Vec<BasisDoc>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<TermDoc>>,
    #[serde(default)]
    pub brackets: Vec<EntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub source: AlgebraDoc,
    pub target: AlgebraDoc,
    pub taylor: Vec<EntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub dim: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub algebra: String,
    pub dim: usize,
    pub terms: Vec<TermDoc>,
    #[serde(default)]
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub name: String,
    pub side: Side,
    pub min_weight: u32,
    #[serde(default)]
    pub dim: usize,
    pub value: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDoc {
    pub index: u32,
    pub iterations: usize,
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum OutcomeDoc {
    Preimage { target_mc: Vec<TermDoc>, alpha: Vec<TermDoc>, edge: Vec<TermDoc> },
    Connect { alpha: Vec<TermDoc>, alpha_prime: Vec<TermDoc>, target_edge: Vec<TermDoc>, edge: Vec<TermDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub morphism: MorphismDoc,
    pub outcome: OutcomeDoc,
    pub layers: Vec<LayerDoc>,
}

pub fn terms_of(alg: &SLieAlgebra, x: &Element) -> Vec<TermDoc> {
    let mut out = Vec::new();
    for (s, f) in x.terms() {
        for (m, c) in f.terms() {
            out.push(TermDoc { coef: c.clone(), basis: alg.basis()[*s].name.clone(), t: m.exps.clone(), dt: m.dt_indices() });
        }
    }
    out
}

pub fn element_of(alg: &SLieAlgebra, dim: usize, terms: &[TermDoc]) -> Result<Element, IoError> {
    let mut out = Element::zero(dim);
    for t in terms {
        let s = alg.symbol(&t.basis).ok_or_else(|| IoError::Invalid(format!("unknown basis symbol {:?}", t.basis)))?;
        let exps = if t.t.is_empty() { vec![0; dim] } else { t.t.clone() };
        if t.dt.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IoError::Invalid(format!("dt indices {:?} are not strictly increasing", t.dt)));
        }
        let f = PolyForm::from_terms(dim, [(t.coef.clone(), exps, t.dt.clone())]).map_err(|e| IoError::Invalid(e.to_string()))?;
        out.add_term(s, &f);
    }
    if alg.weight_at_least(&out, alg.truncation() + 1) != Element::zero(dim) {
        return Err(IoError::Invalid("element has terms beyond the truncation".into()));
    }
    Ok(out)
}

fn plain_terms(alg: &SLieAlgebra, terms: &[TermDoc]) -> Result<Element, IoError> {
    element_of(alg, 0, terms)
}

fn table_docs(src: &SLieAlgebra, tgt: &SLieAlgebra, table: &Table) -> Vec<EntryDoc> {
    table
        .iter()
        .map(|(k, v)| EntryDoc { inputs: k.iter().map(|&s| src.basis()[s].name.clone()).collect(), output: terms_of(tgt, v) })
        .collect()
}

fn table_of(src: &SLieAlgebra, tgt: &SLieAlgebra, entries: &[EntryDoc]) -> Result<Table, IoError> {
    let mut table = Table::new();
    for e in entries {
        let mut key = Vec::new();
        for n in &e.inputs {
            key.push(src.symbol(n).ok_or_else(|| IoError::Invalid(format!("unknown basis symbol {n:?}")))?);
        }
        if key.windows(2).any(|w| w[0] > w[1]) {
            return Err(IoError::Invalid(format!("inputs {:?} are not sorted in basis order", e.inputs)));
        }
        let v = plain_terms(tgt, &e.output)?;
        if table.insert(key, v).is_some() {
            return Err(IoError::Invalid(format!("duplicate entry for {:?}", e.inputs)));
        }
    }
    Ok(table)
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &SLieAlgebra) -> Self {
        let differential = alg
            .differential_table()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(s, e)| (alg.basis()[s].name.clone(), terms_of(alg, e)))
            .collect();
        AlgebraDoc {
            schema_version: SCHEMA_VERSION,
            name: Some(alg.name().to_string()),
            truncation: alg.truncation(),
            max_arity: alg.max_arity(),
            basis: alg.basis().iter().map(|b| BasisDoc { name: b.name.clone(), degree: b.degree, weight: b.weight }).collect(),
            differential,
            brackets: table_docs(alg, alg, alg.brackets()),
        }
    }

    /// Builds the algebra, optionally lowering the truncation first.
    pub fn to_algebra(&self, truncation: Option<u32>) -> Result<SLieAlgebra, IoError> {
        check_version(self.schema_version)?;
        let basis: Vec<BasisSymbol> =
            self.basis.iter().map(|b| BasisSymbol { name: b.name.clone(), degree: b.degree, weight: b.weight }).collect();
        let name = self.name.clone().unwrap_or_else(|| "L".into());
        // Parse against a structure-free shell to resolve names.
        let shell = SLieAlgebra::new(name.clone(), basis.clone(), BTreeMap::new(), Table::new(), self.max_arity.max(2), self.truncation)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        let mut diff = BTreeMap::new();
        for (n, terms) in &self.differential {
            let s = shell.symbol(n).ok_or_else(|| IoError::Invalid(format!("unknown basis symbol {n:?}")))?;
            diff.insert(s, plain_terms(&shell, terms)?);
        }
        let table = table_of(&shell, &shell, &self.brackets)?;
        let alg = SLieAlgebra::new(name, basis, diff, table, self.max_arity, self.truncation)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        match truncation {
            Some(n) if n < alg.truncation() => Ok(crate::slie::quotient(&alg, n + 1)
                .map_err(|e| IoError::Invalid(e.to_string()))?
                .0
                .with_name(alg.name())),
            Some(n) if n > alg.truncation() => {
                Err(IoError::Invalid(format!("cannot raise truncation {} to {n}", alg.truncation())))
            }
            _ => Ok(alg),
        }
    }
}

impl MorphismDoc {
    pub fn from_morphism(u: &InftyMorphism) -> Self {
        MorphismDoc {
            schema_version: SCHEMA_VERSION,
            source: AlgebraDoc::from_algebra(u.source()),
            target: AlgebraDoc::from_algebra(u.target()),
            taylor: table_docs(u.source(), u.target(), u.taylor()),
        }
    }

    pub fn to_morphism(&self, truncation: Option<u32>) -> Result<InftyMorphism, IoError> {
        check_version(self.schema_version)?;
        let full_src = self.source.to_algebra(None)?;
        let full_tgt = self.target.to_algebra(None)?;
        let taylor = table_of(&full_src, &full_tgt, &self.taylor)?;
        let u = InftyMorphism::new(Arc::new(full_src), Arc::new(full_tgt), taylor).map_err(|e| IoError::Invalid(e.to_string()))?;
        match truncation {
            Some(n) if n < u.target().truncation() || n < u.source().truncation() => {
                let (q, _, _) = crate::slie::quotient_morphism(&u, n + 1).map_err(|e| IoError::Invalid(e.to_string()))?;
                let src = Arc::new(q.source().as_ref().clone().with_name(u.source().name()));
                let tgt = Arc::new(q.target().as_ref().clone().with_name(u.target().name()));
                InftyMorphism::new(src, tgt, q.taylor().clone()).map_err(|e| IoError::Invalid(e.to_string()))
            }
            _ => Ok(u),
        }
    }
}

impl ElementDoc {
    pub fn from_element(alg: &SLieAlgebra, x: &Element) -> Self {
        ElementDoc { schema_version: SCHEMA_VERSION, dim: x.dim(), terms: terms_of(alg, x) }
    }

    pub fn to_element(&self, alg: &SLieAlgebra) -> Result<Element, IoError> {
        check_version(self.schema_version)?;
        element_of(alg, self.dim, &self.terms)
    }
}

impl SimplexDoc {
    /// `certified` is set only after an independent MC check.
    pub fn from_element(alg: &SLieAlgebra, x: &Element) -> Self {
        let certified = is_mc(alg, x).unwrap_or(false);
        SimplexDoc { schema_version: SCHEMA_VERSION, algebra: alg.name().to_string(), dim: x.dim(), terms: terms_of(alg, x), certified }
    }

    pub fn from_simplex(s: &MCSimplex) -> Self {
        SimplexDoc::from_element(s.algebra(), s.value())
    }

    pub fn to_element(&self, alg: &SLieAlgebra) -> Result<Element, IoError> {
        check_version(self.schema_version)?;
        if self.algebra != alg.name() {
            return Err(IoError::Invalid(format!("simplex belongs to {:?}, not {:?}", self.algebra, alg.name())));
        }
        element_of(alg, self.dim, &self.terms)
    }
}

impl CertificateDoc {
    pub fn from_certificate(c: &TransferCertificate) -> Self {
        let (src, tgt) = (c.morphism.source(), c.morphism.target());
        let outcome = match &c.outcome {
            Outcome::Preimage { target_mc, alpha, edge } => OutcomeDoc::Preimage {
                target_mc: terms_of(tgt, target_mc),
                alpha: terms_of(src, alpha),
                edge: terms_of(tgt, edge),
            },
            Outcome::Connect { alpha, alpha_prime, target_edge, edge } => OutcomeDoc::Connect {
                alpha: terms_of(src, alpha),
                alpha_prime: terms_of(src, alpha_prime),
                target_edge: terms_of(tgt, target_edge),
                edge: terms_of(src, edge),
            },
        };
        let layers = c
            .layers
            .iter()
            .map(|l| LayerDoc {
                index: l.index,
                iterations: l.iterations,
                witnesses: l
                    .witnesses
                    .iter()
                    .map(|w| {
                        let alg = if w.side == Side::Source { src } else { tgt };
                        WitnessDoc { name: w.name.clone(), side: w.side, min_weight: w.min_weight, dim: w.value.dim(), value: terms_of(alg, &w.value) }
                    })
                    .collect(),
            })
            .collect();
        CertificateDoc { schema_version: SCHEMA_VERSION, morphism: MorphismDoc::from_morphism(&c.morphism), outcome, layers }
    }

    pub fn to_certificate(&self) -> Result<TransferCertificate, IoError> {
        check_version(self.schema_version)?;
        let morphism = self.morphism.to_morphism(None)?;
        let (src, tgt) = (morphism.source().clone(), morphism.target().clone());
        let outcome = match &self.outcome {
            OutcomeDoc::Preimage { target_mc, alpha, edge } => Outcome::Preimage {
                target_mc: element_of(&tgt, 0, target_mc)?,
                alpha: element_of(&src, 0, alpha)?,
                edge: element_of(&tgt, 1, edge)?,
            },
            OutcomeDoc::Connect { alpha, alpha_prime, target_edge, edge } => Outcome::Connect {
                alpha: element_of(&src, 0, alpha)?,
                alpha_prime: element_of(&src, 0, alpha_prime)?,
                target_edge: element_of(&tgt, 1, target_edge)?,
                edge: element_of(&src, 1, edge)?,
            },
        };
        let mut layers = Vec::new();
        for l in &self.layers {
            let mut witnesses = Vec::new();
            for w in &l.witnesses {
                let alg = if w.side == Side::Source { &src } else { &tgt };
                witnesses.push(Witness { name: w.name.clone(), side: w.side, min_weight: w.min_weight, value: element_of(alg, w.dim, &w.value)? });
            }
            layers.push(Layer { index: l.index, witnesses, iterations: l.iterations });
        }
        Ok(TransferCertificate { morphism, outcome, layers })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// A simplicial vector space as dense face and degeneracy matrices:
/// `faces[k][j]` is `d_j: V_k → V_{k-1}` given by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSpaceDoc {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<Vec<Vec<Rational>>>>,
    pub degeneracies: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl SimplicialSpaceDoc {
    pub fn to_space(&self) -> Result<crate::gm::SimplicialVectorSpace, IoError> {
        use crate::linalg::Matrix;
        check_version(self.schema_version)?;
        let matrix = |rows: &Vec<Vec<Rational>>, r: usize, c: usize| -> Result<Matrix, IoError> {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(IoError::Invalid(format!("expected a {r}×{c} matrix")));
            }
            if r == 0 || c == 0 {
                return Ok(Matrix::zeros(r, c));
            }
            Matrix::from_dense(rows).map_err(|e| IoError::Invalid(e.to_string()))
        };
        let n = self.dims.len();
        if self.faces.len() != n || self.degeneracies.len() != n {
            return Err(IoError::Invalid("one list of faces and degeneracies per level".into()));
        }
        let mut faces = Vec::new();
        let mut degs = Vec::new();
        for k in 0..n {
            let f = self.faces[k].iter().map(|m| matrix(m, if k == 0 { 0 } else { self.dims[k - 1] }, self.dims[k]));
            faces.push(f.collect::<Result<Vec<_>, _>>()?);
            let s = self.degeneracies[k].iter().map(|m| matrix(m, if k + 1 < n { self.dims[k + 1] } else { 0 }, self.dims[k]));
            degs.push(s.collect::<Result<Vec<_>, _>>()?);
        }
        crate::gm::SimplicialVectorSpace::new(self.dims.clone(), faces, degs).map_err(|e| IoError::Invalid(e.to_string()))
    }

    pub fn from_space(v: &crate::gm::SimplicialVectorSpace) -> Self {
        let dense = |m: &crate::linalg::Matrix| -> Vec<Vec<Rational>> {
            (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
        };
        let n = v.top() + 1;
        SimplicialSpaceDoc {
            schema_version: SCHEMA_VERSION,
            dims: (0..n).map(|k| v.dim(k)).collect(),
            faces: (0..n).map(|k| if k == 0 { vec![] } else { (0..=k).map(|j| dense(v.face(k, j))).collect() }).collect(),
            degeneracies: (0..n).map(|k| if k + 1 == n { vec![] } else { (0..=k).map(|j| dense(v.degeneracy(k, j))).collect() }).collect(),
        }
    }
}

//! Twisting, quotients and composition of ∞-morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{SLieAlgebra, Table};
use super::check::{partition_side, words};
use super::element::Element;
use super::morphism::InftyMorphism;
use super::SlieError;
use crate::linalg::Rational;

fn require_mc(alg: &SLieAlgebra, alpha: &Element) -> Result<(), SlieError> {
    if alpha.dim() != 0 {
        return Err(SlieError::Input("expected a plain element".into()));
    }
    let c = alg.curv(alpha)?;
    if !c.is_zero() {
        return Err(SlieError::NotMc(c));
    }
    Ok(())
}

/// `A^α`: differential `∂^α` and brackets `{…}^α`.
pub fn twist_algebra(alg: &SLieAlgebra, alpha: &Element) -> Result<SLieAlgebra, SlieError> {
    require_mc(alg, alpha)?;
    let diff = (0..alg.len())
        .map(|s| alg.twisted_differential(alpha, &Element::basis(s, Rational::one())))
        .collect();
    let mut table = Table::new();
    for word in words(alg, alg.max_arity(), alg.truncation()) {
        if word.len() < 2 {
            continue;
        }
        let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
        let refs: Vec<&Element> = args.iter().collect();
        let v = alg.twisted_q(alpha, &refs);
        if !v.is_zero() {
            table.insert(word, v);
        }
    }
    Ok(alg.with_structure(format!("{}^twisted", alg.name()), diff, table, alg.max_arity()))
}

/// `U^α : A^α → Ã^{U_* α}` with `(U^α)'(v…) = Σ_k (1/k!) U'(α^k v…)`.
pub fn twist_morphism(u: &InftyMorphism, alpha: &Element) -> Result<InftyMorphism, SlieError> {
    let src = u.source();
    require_mc(src, alpha)?;
    let image = u.pushforward(alpha)?;
    let tsrc = Arc::new(twist_algebra(src, alpha)?);
    let ttgt = Arc::new(twist_algebra(u.target(), &image)?);
    let mut taylor = Table::new();
    for word in words(src, u.max_arity(), u.target().truncation()) {
        let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
        let refs: Vec<&Element> = args.iter().collect();
        let v = u.twisted_apply(alpha, &refs);
        if !v.is_zero() {
            taylor.insert(word, v);
        }
    }
    InftyMorphism::new(tsrc, ttgt, taylor)
}

/// Projection `L → L/F_n L` on elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    map: Vec<Option<usize>>,
}

impl Projection {
    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.dim());
        for (s, f) in x.terms() {
            if let Some(t) = self.map[*s] {
                out.add_term(t, f);
            }
        }
        out
    }

    pub fn image_of(&self, s: usize) -> Option<usize> {
        self.map[s]
    }
}

/// `L / F_n L` for `1 ≤ n ≤ N + 1`, with truncation `n - 1`.
pub fn quotient(alg: &SLieAlgebra, n: u32) -> Result<(SLieAlgebra, Projection), SlieError> {
    if n < 1 || n > alg.truncation() + 1 {
        return Err(SlieError::Input(format!(
            "quotient level {n} outside 1..={}",
            alg.truncation() + 1
        )));
    }
    let mut map = vec![None; alg.len()];
    let mut basis = Vec::new();
    for (s, b) in alg.basis().iter().enumerate() {
        if b.weight < n {
            map[s] = Some(basis.len());
            basis.push(b.clone());
        }
    }
    let proj = Projection { map };
    let mut diff = BTreeMap::new();
    for s in 0..alg.len() {
        if let Some(t) = proj.map[s] {
            diff.insert(t, proj.apply(&alg.differential_table()[s]));
        }
    }
    let mut table = Table::new();
    for (key, out) in alg.brackets() {
        let Some(k2): Option<Vec<usize>> = key.iter().map(|&s| proj.map[s]).collect() else {
            continue;
        };
        let v = proj.apply(out);
        if !v.is_zero() {
            table.insert(k2, v);
        }
    }
    let q = SLieAlgebra::new(format!("{}/F{}", alg.name(), n), basis, diff, table, alg.max_arity(), n - 1)?;
    Ok((q, proj))
}

/// The morphism induced on `L/F_n → L̃/F_n`.
pub fn quotient_morphism(u: &InftyMorphism, n: u32) -> Result<(InftyMorphism, Projection, Projection), SlieError> {
    let (qs, ps) = quotient(u.source(), n)?;
    let (qt, pt) = quotient(u.target(), n)?;
    let mut taylor = Table::new();
    for (key, out) in u.taylor() {
        let Some(k2): Option<Vec<usize>> = key.iter().map(|&s| ps.image_of(s)).collect() else {
            continue;
        };
        let v = pt.apply(out);
        if !v.is_zero() {
            taylor.insert(k2, v);
        }
    }
    Ok((InftyMorphism::new(Arc::new(qs), Arc::new(qt), taylor)?, ps, pt))
}

/// `G ∘ F` via `p(G∘F)(v) = Σ_π ε G'(F'(B_1), …, F'(B_j))`.
pub fn compose_morphisms(g: &InftyMorphism, f: &InftyMorphism) -> Result<InftyMorphism, SlieError> {
    if f.target().as_ref() != g.source().as_ref() {
        return Err(SlieError::Input("morphisms are not composable".into()));
    }
    let src = f.source();
    let limit = g.target().truncation();
    let mut taylor = Table::new();
    for word in words(src, limit as usize, limit) {
        let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
        let degs: Vec<i32> = word.iter().map(|&s| src.degree(s)).collect();
        let v = partition_side(&args, &degs, |xs| f.apply(xs), |xs| g.apply(xs));
        if !v.is_zero() {
            taylor.insert(word, v);
        }
    }
    InftyMorphism::new(src.clone(), g.target().clone(), taylor)
}


/// Given `L̃` and coefficients `Φ` of arity ≥ 2 on its symbols, builds the
/// structure on the same graded space for which `U = id + Φ` is an
/// ∞-isomorphism `L → L̃`, arity by arity.
pub fn transport_structure(target: &Arc<SLieAlgebra>, higher: Table) -> Result<(SLieAlgebra, InftyMorphism), SlieError> {
    let n = target.truncation() as usize;
    let mut taylor = higher.clone();
    for s in 0..target.len() {
        if taylor.keys().any(|k| k.len() < 2 && k[0] == s) {
            return Err(SlieError::Input("transport expects Taylor terms of arity ≥ 2".into()));
        }
        taylor.insert(vec![s], Element::basis(s, Rational::one()));
    }
    let arity = n.max(2);
    let mut table = Table::new();
    let mut src = target.with_structure(format!("{}~", target.name()), target.differential_table().to_vec(), table.clone(), arity);
    for m in 2..=n {
        let u = InftyMorphism::new(Arc::new(src.clone()), target.clone(), taylor.clone())?;
        for word in words(&src, m, target.truncation()) {
            if word.len() != m {
                continue;
            }
            let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
            let degs: Vec<i32> = word.iter().map(|&s| src.degree(s)).collect();
            let lhs = super::check::unshuffle_side(&args, &degs, |xs| src.q_prime(xs), arity, |xs| u.apply(xs));
            let rhs = partition_side(&args, &degs, |xs| u.apply(xs), |xs| target.q_prime(xs));
            let r = rhs.sub(&lhs);
            if !r.is_zero() {
                table.insert(word, r);
            }
        }
        src = target.with_structure(src.name().to_string(), target.differential_table().to_vec(), table.clone(), arity);
    }
    let src = Arc::new(src);
    let u = InftyMorphism::new(src.clone(), target.clone(), taylor)?;
    Ok(((*src).clone(), u))
}

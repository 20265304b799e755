//! Checkers for the generalized Jacobi relations and for ∞-morphisms.

use super::algebra::SLieAlgebra;
use super::element::Element;
use super::morphism::InftyMorphism;
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub inputs: Vec<String>,
    pub detail: String,
    pub residual: Option<Element>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, law: &str, inputs: Vec<String>, detail: String, residual: Option<Element>) {
        self.violations.push(Violation { law: law.into(), inputs, detail, residual });
    }
}

/// Non-decreasing index tuples of length `1..=max_len` whose total weight
/// is at most `limit`.
pub fn words(alg: &SLieAlgebra, max_len: usize, limit: u32) -> Vec<Vec<usize>> {
    fn rec(alg: &SLieAlgebra, start: usize, max_len: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for s in start..alg.len() {
            let w = alg.weight(s);
            if w > left {
                continue;
            }
            cur.push(s);
            rec(alg, s, max_len, left - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(alg, 0, max_len, limit, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `Σ_{k=1}^{m} Σ_{unshuffles} ε · outer(inner(v_S), v_rest)`.
pub(crate) fn unshuffle_side<I, O>(args: &[Element], degs: &[i32], inner: I, max_inner: usize, outer: O) -> Element
where
    I: Fn(&[&Element]) -> Element,
    O: Fn(&[&Element]) -> Element,
{
    let m = args.len();
    let mut out = Element::zero(args[0].dim());
    for k in 1..=m.min(max_inner) {
        for sub in crate::util::subsets(m, k) {
            let rest: Vec<usize> = (0..m).filter(|i| !sub.contains(i)).collect();
            let perm: Vec<usize> = sub.iter().chain(rest.iter()).copied().collect();
            let neg = super::eval::koszul_sign(&perm, degs).unwrap();
            let chosen: Vec<&Element> = sub.iter().map(|&i| &args[i]).collect();
            let first = inner(&chosen);
            if first.is_zero() {
                continue;
            }
            let mut all: Vec<&Element> = vec![&first];
            all.extend(rest.iter().map(|&i| &args[i]));
            let v = outer(&all);
            out.add_scaled(&Rational::sign(neg), &v);
        }
    }
    out
}

/// Set partitions of `0..m`, blocks ordered by their least element.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, m: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == m {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, m, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, m, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{partitions} ε · outer(inner(B_1), …, inner(B_j))`.
pub(crate) fn partition_side<I, O>(args: &[Element], degs: &[i32], inner: I, outer: O) -> Element
where
    I: Fn(&[&Element]) -> Element,
    O: Fn(&[&Element]) -> Element,
{
    let m = args.len();
    let mut out = Element::zero(args[0].dim());
    for blocks in set_partitions(m) {
        let perm: Vec<usize> = blocks.iter().flatten().copied().collect();
        let neg = super::eval::koszul_sign(&perm, degs).unwrap();
        let mut images = Vec::with_capacity(blocks.len());
        let mut zero = false;
        for b in &blocks {
            let chosen: Vec<&Element> = b.iter().map(|&i| &args[i]).collect();
            let v = inner(&chosen);
            if v.is_zero() {
                zero = true;
                break;
            }
            images.push(v);
        }
        if zero {
            continue;
        }
        let refs: Vec<&Element> = images.iter().collect();
        out.add_scaled(&Rational::sign(neg), &outer(&refs));
    }
    out
}

fn names(alg: &SLieAlgebra, key: &[usize]) -> Vec<String> {
    key.iter().map(|&s| alg.basis()[s].name.clone()).collect()
}

fn precheck_output(report: &mut Report, law: &str, alg_in: &SLieAlgebra, alg_out: &SLieAlgebra, key: &[usize], out: &Element, shift: i32) {
    let deg: i32 = key.iter().map(|&s| alg_in.degree(s)).sum::<i32>() + shift;
    let w: u32 = key.iter().map(|&s| alg_in.weight(s)).sum();
    for t in out.terms().keys() {
        if alg_out.degree(*t) != deg {
            report.push(law, names(alg_in, key), format!(
                "output term {} has degree {}, expected {deg}",
                alg_out.basis()[*t].name,
                alg_out.degree(*t)
            ), None);
        }
        if alg_out.weight(*t) < w {
            report.push(law, names(alg_in, key), format!(
                "output term {} has weight {} below the input weight {w}",
                alg_out.basis()[*t].name,
                alg_out.weight(*t)
            ), None);
        }
    }
}

/// Checks the degree and weight rules of the tables and the relations
/// `Σ_k Σ_σ ε {{v_σ(1..k)}_k, v_σ(k+1..m)} = 0` on every word of basis
/// symbols that survives truncation (all arities where two brackets can
/// compose, so at least `A + 1`).
pub fn check_slie(alg: &SLieAlgebra) -> Report {
    let mut report = Report::default();
    for s in 0..alg.len() {
        precheck_output(&mut report, "differential", alg, alg, &[s], &alg.differential_table()[s], 1);
    }
    for (key, out) in alg.brackets() {
        precheck_output(&mut report, "bracket", alg, alg, key, out, 1);
    }
    if !report.passed() {
        return report;
    }
    let a = alg.max_arity().max(1);
    let max_len = (2 * a - 1).min(alg.truncation() as usize).max(1);
    for word in words(alg, max_len, alg.truncation()) {
        let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
        let degs: Vec<i32> = word.iter().map(|&s| alg.degree(s)).collect();
        let q = |xs: &[&Element]| alg.q_prime(xs);
        let r = unshuffle_side(&args, &degs, q, a, q);
        if !r.is_zero() {
            report.push("jacobi", names(alg, &word), "nonzero residual".into(), Some(r));
        }
    }
    report
}

/// Checks degrees and weights of the Taylor coefficients and the
/// intertwining relation `p(U∘Q) = p(Q̃∘U)` on every surviving word.
pub fn check_infty_morphism(u: &InftyMorphism) -> Report {
    let mut report = Report::default();
    let (src, tgt) = (u.source(), u.target());
    for (key, out) in u.taylor() {
        precheck_output(&mut report, "taylor", src, tgt, key, out, 0);
    }
    if !report.passed() {
        return report;
    }
    let limit = tgt.truncation();
    let inner_max = src.max_arity().max(1);
    for word in words(src, limit as usize, limit) {
        let args: Vec<Element> = word.iter().map(|&s| Element::basis(s, Rational::one())).collect();
        let degs: Vec<i32> = word.iter().map(|&s| src.degree(s)).collect();
        let uq = |xs: &[&Element]| u.apply(xs);
        let lhs = unshuffle_side(&args, &degs, |xs| src.q_prime(xs), inner_max, uq);
        let rhs = partition_side(&args, &degs, |xs| u.apply(xs), |xs| tgt.q_prime(xs));
        let r = lhs.sub(&rhs);
        if !r.is_zero() {
            report.push("intertwining", names(src, &word), "U∘Q differs from Q̃∘U".into(), Some(r));
        }
    }
    report
}

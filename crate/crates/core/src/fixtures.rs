//! Small sample algebras and morphisms used by the test suites and the
//! command-line examples.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::linalg::Rational;
use crate::slie::{
    compose_morphisms, shift_convention, transport_structure, BasisSymbol, Element, InftyMorphism,
    OrdinaryLInfty, SLieAlgebra, Table,
};

/// Builder for algebras written with symbol names.
pub struct Builder {
    name: String,
    basis: Vec<BasisSymbol>,
    differential: Vec<(String, Vec<(Rational, String)>)>,
    brackets: Vec<(Vec<String>, Vec<(Rational, String)>)>,
    max_arity: usize,
    truncation: u32,
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

impl Builder {
    pub fn new(name: &str, truncation: u32, max_arity: usize) -> Self {
        Builder { name: name.into(), basis: vec![], differential: vec![], brackets: vec![], max_arity, truncation }
    }

    pub fn sym(mut self, name: &str, degree: i32, weight: u32) -> Self {
        self.basis.push(BasisSymbol { name: name.into(), degree, weight });
        self
    }

    pub fn d(mut self, src: &str, out: &[(i64, &str)]) -> Self {
        self.differential.push((src.into(), out.iter().map(|(c, n)| (q(*c), n.to_string())).collect()));
        self
    }

    pub fn br(mut self, inputs: &[&str], out: &[(i64, &str)]) -> Self {
        self.brackets.push((
            inputs.iter().map(|s| s.to_string()).collect(),
            out.iter().map(|(c, n)| (q(*c), n.to_string())).collect(),
        ));
        self
    }

    pub fn build(self) -> SLieAlgebra {
        let idx: BTreeMap<String, usize> = self.basis.iter().enumerate().map(|(i, b)| (b.name.clone(), i)).collect();
        let elem = |terms: &[(Rational, String)]| Element::from_coeffs(terms.iter().map(|(c, n)| (idx[n], c.clone())));
        let diff = self.differential.iter().map(|(s, t)| (idx[s], elem(t))).collect();
        let table: Table = self
            .brackets
            .iter()
            .map(|(ins, t)| {
                let mut key: Vec<usize> = ins.iter().map(|n| idx[n]).collect();
                key.sort_unstable();
                (key, elem(t))
            })
            .collect();
        SLieAlgebra::new(self.name, self.basis, diff, table, self.max_arity, self.truncation).expect("fixture is well formed")
    }
}

/// `∂ = 0`, `{x, x} = y` with `x` of degree 0, weight 1 and `y` of degree 1, weight 2.
pub fn xy() -> SLieAlgebra {
    Builder::new("xy", 2, 2).sym("x", 0, 1).sym("y", 1, 2).br(&["x", "x"], &[(1, "y")]).build()
}

/// `xy` with `∂z = y` and `{x, x} = 2y`; MC elements are `c x - c² z`.
pub fn xyz() -> SLieAlgebra {
    Builder::new("xyz", 2, 2)
        .sym("x", 0, 1)
        .sym("y", 1, 2)
        .sym("z", 0, 2)
        .d("z", &[(1, "y")])
        .br(&["x", "x"], &[(2, "y")])
        .build()
}

/// An abelian algebra with differentials inside and across weights.
pub fn abelian() -> SLieAlgebra {
    Builder::new("abelian", 3, 2)
        .sym("a", 0, 1)
        .sym("c", -1, 1)
        .sym("b", 1, 1)
        .sym("e", 0, 2)
        .sym("f", 1, 2)
        .sym("g", -1, 3)
        .sym("k", 0, 3)
        .sym("q", -1, 1)
        .sym("r", -2, 1)
        .d("c", &[(1, "a")])
        .d("e", &[(1, "f")])
        .d("g", &[(1, "k")])
        .d("q", &[(1, "k")])
        .d("r", &[(1, "g"), (-1, "q")])
        .build()
}

/// Two-step nilpotent algebra with binary and ternary brackets landing
/// in a central part on which `∂` vanishes.
pub fn cubic() -> SLieAlgebra {
    Builder::new("cubic", 4, 3)
        .sym("x", 0, 1)
        .sym("p", 0, 1)
        .sym("c", -1, 1)
        .sym("y", 1, 2)
        .sym("k", 0, 2)
        .sym("w", 1, 3)
        .sym("z", 0, 3)
        .sym("r", 1, 4)
        .d("c", &[(1, "k")])
        .d("p", &[(1, "w")])
        .br(&["x", "x"], &[(1, "y")])
        .br(&["x", "p"], &[(1, "y")])
        .br(&["c", "x"], &[(1, "k")])
        .br(&["x", "x", "p"], &[(1, "w")])
        .br(&["x", "x", "x"], &[(1, "w")])
        .br(&["p", "p", "c"], &[(1, "z")])
        .br(&["x", "p", "c"], &[(-2, "z")])
        .br(&["p", "p", "p"], &[(1, "r")])
        .build()
}

/// A finite-dimensional commutative dg algebra: degrees, multiplication
/// table and differential on a basis whose first element is the unit.
pub struct Cdga {
    pub names: Vec<&'static str>,
    pub degrees: Vec<i32>,
    pub product: BTreeMap<(usize, usize), Vec<(i64, usize)>>,
    pub differential: BTreeMap<usize, Vec<(i64, usize)>>,
}

/// `Λ(a, b)` with `da = ab`.
pub fn exterior_ab() -> Cdga {
    let mut product = BTreeMap::new();
    for i in 0..4 {
        product.insert((0, i), vec![(1, i)]);
        product.insert((i, 0), vec![(1, i)]);
    }
    product.insert((1, 2), vec![(1, 3)]);
    product.insert((2, 1), vec![(-1, 3)]);
    let mut differential = BTreeMap::new();
    differential.insert(1, vec![(1, 3)]);
    Cdga { names: vec!["", "a", "b", "ab"], degrees: vec![0, 1, 1, 2], product, differential }
}

/// The ordinary dg Lie algebra `n_k ⊗ A` (strictly upper triangular
/// `k × k` matrices, `e_ij` of weight `j - i`), shifted.
pub fn nilpotent_dglie(k: usize, cdga: &Cdga, name: &str) -> SLieAlgebra {
    let mut lie = Vec::new();
    for gap in 1..k {
        for i in 1..=k - gap {
            lie.push((i, i + gap));
        }
    }
    let truncation = (k - 1) as u32;
    let mut basis = Vec::new();
    let mut index = BTreeMap::new();
    for (li, &(i, j)) in lie.iter().enumerate() {
        for (ci, cname) in cdga.names.iter().enumerate() {
            index.insert((li, ci), basis.len());
            basis.push(BasisSymbol { name: format!("e{i}{j}{cname}"), degree: cdga.degrees[ci], weight: (j - i) as u32 });
        }
    }
    let lie_bracket = |a: usize, b: usize| -> Vec<(i64, usize)> {
        let (i, j) = lie[a];
        let (k2, l) = lie[b];
        let mut out = Vec::new();
        if j == k2 {
            out.push((1, lie.iter().position(|&p| p == (i, l)).unwrap()));
        }
        if l == i {
            out.push((-1, lie.iter().position(|&p| p == (k2, j)).unwrap()));
        }
        out
    };
    let mut differential = BTreeMap::new();
    let mut brackets = Table::new();
    for (&(li, ci), &s) in &index {
        if let Some(terms) = cdga.differential.get(&ci) {
            let e = Element::from_coeffs(terms.iter().map(|(c, t)| (index[&(li, *t)], q(*c))));
            differential.insert(s, e);
        }
        for (&(lj, cj), &t) in &index {
            if t < s {
                continue;
            }
            let mut out = Element::zero(0);
            let prod = cdga.product.get(&(ci, cj)).cloned().unwrap_or_default();
            for (cl, l) in lie_bracket(li, lj) {
                for (cp, p) in &prod {
                    out.add_assign(&Element::basis(index[&(l, *p)], q(cl * cp)));
                }
            }
            if !out.is_zero() {
                brackets.insert(vec![s, t], out);
            }
        }
    }
    let ord = OrdinaryLInfty { name: name.into(), basis, differential, brackets, max_arity: 2, truncation };
    shift_convention(&ord).expect("valid dg Lie data")
}

pub fn dglie_n3() -> SLieAlgebra {
    nilpotent_dglie(3, &exterior_ab(), "dglie_n3")
}

pub fn dglie_n4() -> SLieAlgebra {
    nilpotent_dglie(4, &exterior_ab(), "dglie_n4")
}

/// All algebra fixtures.
pub fn algebras() -> Vec<Arc<SLieAlgebra>> {
    vec![abelian(), xy(), xyz(), cubic(), dglie_n3(), dglie_n4()].into_iter().map(Arc::new).collect()
}

fn key(alg: &SLieAlgebra, names: &[&str]) -> Vec<usize> {
    let mut k: Vec<usize> = names.iter().map(|n| alg.symbol(n).unwrap()).collect();
    k.sort_unstable();
    k
}

/// An ∞-isomorphism `L → L̃` with `U' = id + Φ`, `Φ` quadratic.
pub fn quadratic_iso(target: Arc<SLieAlgebra>, phi: &[(&[&str], &[(i64, &str)])]) -> InftyMorphism {
    let table: Table = phi
        .iter()
        .map(|(ins, out)| (key(&target, ins), target.elem(&out.iter().map(|(c, n)| (*n, q(*c))).collect::<Vec<_>>())))
        .collect();
    transport_structure(&target, table).expect("transport").1
}

/// `L̃ ⊕ K → L̃` with `K = {κ → λ}` acyclic in every weight.
pub fn acyclic_extension(target: Arc<SLieAlgebra>) -> InftyMorphism {
    let mut b = Builder::new(&format!("{}+K", target.name()), target.truncation(), target.max_arity());
    for s in target.basis() {
        b = b.sym(&s.name, s.degree, s.weight);
    }
    let w = target.truncation().min(2);
    b = b.sym("kappa", -1, 1).sym("lambda", 0, 1).sym("kappa2", 0, w).sym("lambda2", 1, w);
    b = b.d("kappa", &[(1, "lambda")]).d("kappa2", &[(1, "lambda2")]);
    let names = |e: &Element| -> Vec<(i64, String)> {
        e.terms().iter().map(|(s, f)| {
            let c = f.eval_vertex(0).unwrap();
            (c.numer().try_into().unwrap(), target.basis()[*s].name.clone())
        }).collect()
    };
    let mut diffs: Vec<(String, Vec<(i64, String)>)> = Vec::new();
    for (s, e) in target.differential_table().iter().enumerate() {
        if !e.is_zero() {
            diffs.push((target.basis()[s].name.clone(), names(e)));
        }
    }
    for (src, out) in &diffs {
        let out: Vec<(i64, &str)> = out.iter().map(|(c, n)| (*c, n.as_str())).collect();
        b = b.d(src, &out);
    }
    for (k, e) in target.brackets() {
        let ins: Vec<&str> = k.iter().map(|&s| target.basis()[s].name.as_str()).collect();
        let out = names(e);
        let out: Vec<(i64, &str)> = out.iter().map(|(c, n)| (*c, n.as_str())).collect();
        b = b.br(&ins, &out);
    }
    let src = Arc::new(b.build());
    let images = (0..target.len()).map(|s| (s, Element::basis(s, Rational::one()))).collect();
    InftyMorphism::strict(src, target, images).expect("projection")
}

/// The composite of the acyclic projection with a quadratic ∞-isomorphism.
pub fn composite_qiso(target: Arc<SLieAlgebra>, phi: &[(&[&str], &[(i64, &str)])]) -> InftyMorphism {
    let iso = quadratic_iso(acyclic_extension(target.clone()).source().clone(), phi);
    let proj = acyclic_extension(target);
    let proj = InftyMorphism::new(iso.target().clone(), proj.target().clone(), proj.taylor().clone()).unwrap();
    compose_morphisms(&proj, &iso).expect("composable")
}

/// `φ = 0` on a one-dimensional algebra: kills a class in `H⁰` of weight 1.
pub fn zero_map() -> InftyMorphism {
    let a = Arc::new(Builder::new("line", 1, 2).sym("x", 0, 1).build());
    InftyMorphism::new(a.clone(), a, Table::new()).unwrap()
}

/// Kills a degree-0 class of weight 2.
pub fn weight_two_defect() -> InftyMorphism {
    let src = Arc::new(Builder::new("xw", 2, 2).sym("x", 0, 1).sym("w", 0, 2).build());
    let tgt = Arc::new(Builder::new("xw~", 2, 2).sym("x", 0, 1).sym("w", 0, 2).build());
    let mut images = BTreeMap::new();
    images.insert(0, Element::basis(0, Rational::one()));
    InftyMorphism::strict(src, tgt, images).unwrap()
}

/// Seeded random data for property tests.
pub mod random {
    use super::*;
    use crate::forms::PolyForm;
    use crate::mc::{integrate_edge, reconstruct, MCSimplex};
    use rand::Rng;
    pub use rand_chacha::ChaCha8Rng as Rng8;
    use rand::SeedableRng;

    pub fn rng(seed: u64) -> Rng8 {
        Rng8::seed_from_u64(seed)
    }

    fn small(rng: &mut Rng8) -> Rational {
        let n = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(1i64..=3);
        Rational::new(n, d)
    }

    /// A random form on `Δ^n` of form degree `k`.
    pub fn form(rng: &mut Rng8, n: usize, k: usize, max_poly: u32) -> PolyForm {
        let dts: Vec<Vec<usize>> = crate::forms::increasing_subsets(n, k)
            .into_iter()
            .filter(|s| !s.contains(&0))
            .collect();
        if dts.is_empty() {
            return PolyForm::zero(n);
        }
        let count = rng.gen_range(0..=3);
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let mut exps = vec![0u32; n];
                let mut budget = rng.gen_range(0..=max_poly);
                while budget > 0 && n > 0 {
                    exps[rng.gen_range(0..n)] += 1;
                    budget -= 1;
                }
                let dt = dts[rng.gen_range(0..dts.len())].clone();
                (small(rng), exps, dt)
            })
            .collect();
        PolyForm::from_terms(n, terms).expect("valid term")
    }

    /// A random element of `L ⊗ Ω_n` of total degree `degree`, supported
    /// in weights `≥ floor`.
    pub fn element(rng: &mut Rng8, alg: &SLieAlgebra, n: usize, degree: i32, floor: u32, max_poly: u32) -> Element {
        let mut out = Element::zero(n);
        for (s, b) in alg.basis().iter().enumerate() {
            let k = degree - b.degree;
            if b.weight < floor || k < 0 || k as usize > n || rng.gen_bool(0.4) {
                continue;
            }
            out.add_term(s, &form(rng, n, k as usize, max_poly));
        }
        out
    }

    /// A plain element of `L` of the given degree.
    pub fn plain(rng: &mut Rng8, alg: &SLieAlgebra, degree: i32) -> Element {
        element(rng, alg, 0, degree, 1, 0)
    }

    /// A known MC element of a fixture algebra, chosen at random from a
    /// family in closed form. Falls back to `0`.
    pub fn seed_mc(rng: &mut Rng8, alg: &SLieAlgebra) -> Element {
        let pick = |rng: &mut Rng8, names: &[String]| {
            let mut e = Element::zero(0);
            for n in names {
                if let Some(s) = alg.symbol(n) {
                    e.add_assign(&Element::basis(s, small(rng)));
                }
            }
            e
        };
        match alg.name() {
            "abelian" => pick(rng, &["a".into(), "k".into()]),
            "cubic" => pick(rng, &["k".into(), "z".into()]),
            "xyz" => {
                let c = small(rng);
                alg.elem(&[("x", c.clone()), ("z", -(&c * &c))])
            }
            n if n.starts_with("dglie") => {
                let names: Vec<String> = alg.basis().iter().filter(|b| b.name.ends_with('b') && !b.name.ends_with("ab")).map(|b| b.name.clone()).collect();
                pick(rng, &names)
            }
            _ => Element::zero(0),
        }
    }

    /// A random MC element: a seed moved along a random gauge path with
    /// `ρ₁` of weight `≥ floor`.
    pub fn mc(rng: &mut Rng8, alg: &Arc<SLieAlgebra>) -> Element {
        let start = seed_mc(rng, alg);
        let rho1 = element(rng, alg, 1, -1, 1, 2).form_component(0);
        integrate_edge(alg, &start, &rho1).expect("seed is MC").end()
    }

    /// A random edge whose `β₁` has weight `≥ floor`.
    pub fn edge(rng: &mut Rng8, alg: &Arc<SLieAlgebra>, floor: u32) -> crate::mc::Edge {
        let start = mc(rng, alg);
        let rho1 = element(rng, alg, 1, -1, floor, 2).form_component(0);
        integrate_edge(alg, &start, &rho1).expect("start is MC")
    }

    /// A random edge from `start` whose `β₁` has weight `≥ floor`.
    pub fn edge_from(rng: &mut Rng8, alg: &Arc<SLieAlgebra>, start: &Element, floor: u32) -> crate::mc::Edge {
        let rho1 = element(rng, alg, 1, -1, floor, 2).form_component(0);
        integrate_edge(alg, start, &rho1).expect("start is MC")
    }

    /// A random abelian algebra with at most `per_degree` symbols in each
    /// degree of `window` and a random differential with `∂² = 0`.
    pub fn abelian(rng: &mut Rng8, per_degree: usize, window: (i32, i32)) -> SLieAlgebra {
        use crate::linalg::Matrix;
        let mut basis = Vec::new();
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for d in window.0..=window.1 {
            for _ in 0..rng.gen_range(0..=per_degree) {
                by_degree.entry(d).or_default().push(basis.len());
                basis.push(BasisSymbol { name: format!("v{}", basis.len()), degree: d, weight: 1 });
            }
        }
        // ∂ on degree d is built so its image lies in the kernel of ∂ on d + 1.
        let mut diff: BTreeMap<usize, Element> = BTreeMap::new();
        for d in (window.0..window.1).rev() {
            let (Some(src), Some(tgt)) = (by_degree.get(&d), by_degree.get(&(d + 1))) else { continue };
            let next: Vec<Vec<Rational>> = by_degree
                .get(&(d + 2))
                .map(|up| {
                    up.iter()
                        .map(|&u| tgt.iter().map(|&t| diff.get(&t).map_or(Rational::zero(), |e| e.coeff(u))).collect())
                        .collect()
                })
                .unwrap_or_default();
            let kernel = if next.is_empty() {
                (0..tgt.len()).map(|i| (0..tgt.len()).map(|j| Rational::from_int((i == j) as i64)).collect()).collect()
            } else {
                Matrix::from_dense(&next).unwrap().nullspace()
            };
            if kernel.is_empty() {
                continue;
            }
            for &s in src {
                if rng.gen_bool(0.3) {
                    continue;
                }
                let mut e = Element::zero(0);
                for k in &kernel {
                    let c = Rational::from_int(rng.gen_range(-2..=2));
                    for (j, x) in k.iter().enumerate() {
                        e.add_assign(&Element::basis(tgt[j], &c * x));
                    }
                }
                if !e.is_zero() {
                    diff.insert(s, e);
                }
            }
        }
        SLieAlgebra::new("random-abelian", basis, diff, Table::new(), 2, 1).expect("valid abelian algebra")
    }

    /// A random stub at vertex `i` of `Δ^n`.
    pub fn stub(rng: &mut Rng8, alg: &SLieAlgebra, n: usize, i: usize) -> Element {
        let zeta = element(rng, alg, n, 0, 1, 2);
        alg.differential(&alg.h(i, &zeta))
    }

    /// A random MC simplex of dimension `n`.
    pub fn simplex(rng: &mut Rng8, alg: &Arc<SLieAlgebra>, n: usize) -> MCSimplex {
        if n == 0 {
            return MCSimplex::point(alg.clone(), &mc(rng, alg)).expect("MC");
        }
        let i = rng.gen_range(0..=n);
        let mu = mc(rng, alg);
        let nu = stub(rng, alg, n, i);
        reconstruct(alg, n, i, &mu, &nu).expect("valid stub").0
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use linf_core::fixtures::{self, random, Builder};
use linf_core::linalg::Rational;
use linf_core::slie::{
    check_infty_morphism, check_slie, koszul_sign, quotient, quotient_morphism, shift_convention, twist_algebra,
    twist_morphism, unshift_convention, Element, InftyMorphism, SLieAlgebra, Table,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `Σ_k (1/k!) {α^k, args}` built from single bracket evaluations; the
/// arity-one term is `∂`.
fn series(alg: &SLieAlgebra, alpha: &Element, args: &[&Element], k_min: usize) -> Element {
    let mut out = Element::zero(0);
    for k in k_min..=alg.truncation() as usize {
        let mut all: Vec<&Element> = vec![alpha; k];
        all.extend_from_slice(args);
        let v = match all.len() {
            0 => continue,
            1 => alg.partial(all[0]),
            m if m > alg.max_arity() => continue,
            _ => alg.bracket(&all).unwrap(),
        };
        out.add_scaled(&Rational::inv_factorial(k), &v);
    }
    out
}

fn curv_oracle(alg: &SLieAlgebra, alpha: &Element) -> Element {
    let mut out = alg.partial(alpha);
    for m in 2..=alg.max_arity() {
        out.add_scaled(&Rational::inv_factorial(m), &alg.bracket(&vec![alpha; m]).unwrap());
    }
    out
}

fn morphisms() -> Vec<InftyMorphism> {
    let mut out = Vec::new();
    for alg in fixtures::algebras() {
        out.push(InftyMorphism::identity(alg.clone()));
        out.push(fixtures::acyclic_extension(alg));
    }
    out.push(fixtures::quadratic_iso(Arc::new(fixtures::xyz()), &[(&["x", "x"], &[(1, "z")])]));
    out.push(fixtures::quadratic_iso(Arc::new(fixtures::abelian()), &[(&["a", "a"], &[(1, "e")]), (&["a", "c"], &[(2, "g")])]));
    out.push(fixtures::quadratic_iso(Arc::new(fixtures::cubic()), &[(&["x", "x"], &[(1, "k")]), (&["x", "x", "x"], &[(1, "z")])]));
    out.push(fixtures::quadratic_iso(
        Arc::new(fixtures::dglie_n3()),
        &[(&["e12a", "e23a"], &[(1, "e13a")]), (&["e12a", "e12a"], &[(1, "e13b")])],
    ));
    out.push(fixtures::composite_qiso(Arc::new(fixtures::xyz()), &[(&["x", "lambda"], &[(1, "z")])]));
    out
}

#[test]
fn koszul_sign_examples() {
    assert!(!koszul_sign(&[0, 1, 2], &[1, 1, 1]).unwrap());
    assert!(koszul_sign(&[1, 0], &[1, 1]).unwrap());
    assert!(!koszul_sign(&[1, 0], &[0, 1]).unwrap());
    assert!(koszul_sign(&[0, 1], &[1]).is_err());
}

#[test]
fn fixtures_are_valid() {
    for alg in fixtures::algebras() {
        let rep = check_slie(&alg);
        assert!(rep.passed(), "{}: {:?}", alg.name(), rep.violations.first());
    }
}

#[test]
fn bracket_examples() {
    let alg = fixtures::xy();
    let x = alg.elem(&[("x", Rational::one())]);
    let y = alg.elem(&[("y", Rational::one())]);
    assert_eq!(alg.bracket(&[&x.scale(&r(2, 1)), &x]).unwrap(), y.scale(&r(2, 1)));
    assert!(alg.bracket(&[&x, &y]).unwrap().is_zero());
    assert!(alg.bracket(&[&y, &y]).unwrap().is_zero());
    assert!(alg.bracket(&[&x, &x, &x]).is_err());
}

#[test]
fn check_slie_rejects_light_ternary_bracket() {
    let alg = Builder::new("bad", 3, 3).sym("x", 0, 1).sym("y", 1, 2).br(&["x", "x", "x"], &[(1, "y")]).build();
    let rep = check_slie(&alg);
    assert!(!rep.passed());
}

#[test]
fn check_slie_detects_jacobi_failure() {
    let alg = Builder::new("bad", 3, 2)
        .sym("x", 0, 1)
        .sym("y", 1, 2)
        .sym("u", 2, 3)
        .br(&["x", "x"], &[(1, "y")])
        .br(&["x", "y"], &[(1, "u")])
        .build();
    assert!(!check_slie(&alg).passed());
}

#[test]
fn curv_examples() {
    let xy = fixtures::xy();
    for c in [r(1, 1), r(-3, 2), r(2, 5)] {
        let alpha = xy.elem(&[("x", c.clone())]);
        assert_eq!(xy.curv(&alpha).unwrap(), xy.elem(&[("y", &c * &c * r(1, 2))]));
    }
    let xyz = fixtures::xyz();
    assert!(xyz.is_mc(&xyz.elem(&[("x", r(1, 1)), ("z", r(-1, 1))])).unwrap());
    let ab = fixtures::abelian();
    let e = ab.elem(&[("c", r(1, 1)), ("e", r(2, 1))]);
    assert_eq!(ab.curv(&ab.elem(&[("e", r(2, 1))])).unwrap(), ab.partial(&ab.elem(&[("e", r(2, 1))])));
    assert!(ab.curv(&e).is_err());
}

#[test]
fn extended_brackets() {
    use linf_core::forms::PolyForm;
    let alg = fixtures::xy();
    let x = alg.symbol("x").unwrap();
    let dt = PolyForm::dt(1, 1).unwrap();
    let xdt = Element::tensor(x, dt.clone());
    assert!(alg.bracket(&[&xdt, &xdt]).unwrap().is_zero());
    let t1 = PolyForm::coordinate(1, 1).unwrap();
    let a = Element::tensor(x, t1.clone());
    let b = Element::tensor(x, PolyForm::one(1));
    assert_eq!(alg.bracket(&[&a, &b]).unwrap(), alg.tensor("y", t1));
    let ab = fixtures::abelian();
    for seed in 0..10 {
        let mut rng = random::rng(seed);
        let v = random::element(&mut rng, &ab, 2, 0, 1, 3);
        assert!(ab.differential(&ab.differential(&v)).is_zero());
    }
}

#[test]
fn curvature_identities() {
    for alg in fixtures::algebras() {
        let mut rng = random::rng(7);
        for _ in 0..20 {
            let alpha = random::plain(&mut rng, &alg, 0);
            let beta = random::plain(&mut rng, &alg, 0);
            let curv = alg.curv(&alpha).unwrap();
            assert_eq!(curv, curv_oracle(&alg, &alpha));
            // Bianchi
            assert!(series(&alg, &alpha, &[&curv], 0).is_zero(), "{}", alg.name());
            // square-curv
            for d in [-1, 0, 1] {
                let v = random::plain(&mut rng, &alg, d);
                let dv = series(&alg, &alpha, &[&v], 0);
                let ddv = series(&alg, &alpha, &[&dv], 0);
                let rhs = series(&alg, &alpha, &[&curv, &v], 0).neg();
                assert_eq!(ddv, rhs, "{}", alg.name());
            }
            // curv-sum
            let sum = alg.curv(&alpha.add(&beta)).unwrap();
            let mut rhs = curv.add(&series(&alg, &alpha, &[&beta], 0));
            for m in 2..=alg.truncation() as usize {
                let bs = vec![&beta; m];
                rhs.add_scaled(&Rational::inv_factorial(m), &series(&alg, &alpha, &bs, 0));
            }
            assert_eq!(sum, rhs, "{}", alg.name());
        }
    }
}

#[test]
fn pushforward_of_curvature() {
    for u in morphisms() {
        assert!(check_infty_morphism(&u).passed(), "{} -> {}", u.source().name(), u.target().name());
        let src = u.source().clone();
        let tgt = u.target().clone();
        let mut rng = random::rng(11);
        for _ in 0..20 {
            let alpha = random::plain(&mut rng, &src, 0);
            let curv = src.curv(&alpha).unwrap();
            let lhs = tgt.curv(&u.pushforward(&alpha).unwrap()).unwrap();
            let mut rhs = Element::zero(0);
            for m in 0..=tgt.truncation() as usize {
                let mut args = vec![&alpha; m];
                args.push(&curv);
                rhs.add_scaled(&Rational::inv_factorial(m), &u.apply(&args));
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pushforward_examples() {
    let xyz = Arc::new(fixtures::xyz());
    let u = fixtures::quadratic_iso(xyz.clone(), &[(&["x", "x"], &[(1, "z")])]);
    let c = r(3, 2);
    let alpha = xyz.elem(&[("x", c.clone())]);
    assert_eq!(u.pushforward(&alpha).unwrap(), xyz.elem(&[("x", c.clone()), ("z", &c * &c * r(1, 2))]));
    assert!(u.pushforward(&Element::zero(0)).unwrap().is_zero());
}

#[test]
fn morphism_checker_detects_bracket_failure() {
    let src = Arc::new(fixtures::xy());
    let tgt = Arc::new(Builder::new("ab", 2, 2).sym("x", 0, 1).sym("y", 1, 2).build());
    let images: BTreeMap<usize, Element> = (0..2).map(|s| (s, Element::basis(s, Rational::one()))).collect();
    let u = InftyMorphism::strict(src, tgt, images).unwrap();
    let rep = check_infty_morphism(&u);
    assert!(!rep.passed());
    let v = &rep.violations[0];
    assert_eq!(v.inputs, vec!["x".to_string(), "x".to_string()]);
}

#[test]
fn twisting() {
    for alg in fixtures::algebras() {
        let zero = twist_algebra(&alg, &Element::zero(0)).unwrap();
        assert_eq!(zero.brackets(), alg.brackets());
        assert_eq!(zero.differential_table(), alg.differential_table());
        let mut rng = random::rng(3);
        for _ in 0..3 {
            let alpha = random::mc(&mut rng, &alg);
            let tw = twist_algebra(&alg, &alpha).unwrap();
            assert!(check_slie(&tw).passed(), "{}", alg.name());
            let tw = Arc::new(tw);
            let beta = random::mc(&mut rng, &tw);
            let twice = twist_algebra(&tw, &beta).unwrap();
            let once = twist_algebra(&alg, &alpha.add(&beta)).unwrap();
            assert_eq!(twice.brackets(), once.brackets());
            assert_eq!(twice.differential_table(), once.differential_table());
        }
    }
    let xy = fixtures::xy();
    assert!(twist_algebra(&xy, &xy.elem(&[("x", r(1, 1))])).is_err());
}

#[test]
fn twisted_morphisms() {
    for u in morphisms() {
        let zero = twist_morphism(&u, &Element::zero(0)).unwrap();
        assert_eq!(zero.taylor(), u.taylor());
        let mut rng = random::rng(5);
        let alpha = random::mc(&mut rng, u.source());
        let tw = twist_morphism(&u, &alpha).unwrap();
        assert!(check_infty_morphism(&tw).passed(), "{}", u.source().name());
        assert_eq!(tw.target().as_ref(), &twist_algebra(u.target(), &u.pushforward(&alpha).unwrap()).unwrap());
    }
}

#[test]
fn twisted_linear_term() {
    let xyz = Arc::new(fixtures::xyz());
    let u = fixtures::quadratic_iso(xyz.clone(), &[(&["x", "x"], &[(1, "z")])]);
    let alpha = u.source().elem(&[("x", r(1, 1)), ("z", r(-3, 2))]);
    let tw = twist_morphism(&u, &alpha).unwrap();
    let x = xyz.elem(&[("x", r(1, 1))]);
    assert_eq!(tw.linear(&x), u.linear(&x).add(&u.apply(&[&alpha, &x])));
}

#[test]
fn quotients() {
    let alg = fixtures::cubic();
    let (full, _) = quotient(&alg, alg.truncation() + 1).unwrap();
    assert_eq!(full.basis(), alg.basis());
    assert_eq!(full.brackets(), alg.brackets());
    let (empty, _) = quotient(&alg, 1).unwrap();
    assert!(empty.is_empty());
    let (ab, p) = quotient(&fixtures::xyz(), 2).unwrap();
    assert!(ab.is_abelian());
    assert_eq!(ab.basis().iter().map(|b| b.name.as_str()).collect::<Vec<_>>(), vec!["x"]);
    assert!(p.apply(&fixtures::xyz().elem(&[("z", r(1, 1))])).is_zero());
    assert!(quotient(&alg, 0).is_err());
    assert!(quotient(&alg, alg.truncation() + 2).is_err());
    for u in morphisms() {
        let mut rng = random::rng(13);
        let alpha = random::plain(&mut rng, u.source(), 0);
        for n in 1..=u.target().truncation() + 1 {
            let (un, ps, pt) = quotient_morphism(&u, n).unwrap();
            assert!(check_infty_morphism(&un).passed());
            assert_eq!(pt.apply(&u.pushforward(&alpha).unwrap()), un.pushforward(&ps.apply(&alpha)).unwrap());
        }
    }
}

#[test]
fn shift_round_trip_and_mc() {
    for alg in fixtures::algebras() {
        let ord = unshift_convention(&alg);
        let back = shift_convention(&ord).unwrap();
        assert_eq!(&back, alg.as_ref());
        assert!(ord.basis.iter().zip(alg.basis()).all(|(o, s)| o.degree == s.degree + 1));
    }
    let n3 = fixtures::dglie_n3();
    let ord = unshift_convention(&n3);
    let mc = n3.elem(&[("e12b", r(1, 1)), ("e23b", r(2, 1))]);
    assert!(n3.is_mc(&mc).unwrap());
    assert!(mc.terms().keys().all(|&s| ord.basis[s].degree == 1));
}

#[test]
fn dglie_bracket_matches_commutator() {
    let n3 = fixtures::dglie_n3();
    let ord = unshift_convention(&n3);
    let key = |a: &str, b: &str| {
        let mut k = vec![n3.symbol(a).unwrap(), n3.symbol(b).unwrap()];
        k.sort_unstable();
        k
    };
    let out = |t: &Table, k: Vec<usize>| t.get(&k).cloned().unwrap_or_else(|| Element::zero(0));
    // [e12, e23] = e13 in the ordinary algebra, on the unit components.
    assert_eq!(out(&ord.brackets, key("e12", "e23")), n3.elem(&[("e13", r(1, 1))]));
    assert!(out(&ord.brackets, key("e12", "e12")).is_zero());
}

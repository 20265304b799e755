use std::sync::Arc;

use linf_core::fixtures::{self, random};
use linf_core::forms::PolyForm;
use linf_core::linalg::Rational;
use linf_core::mc::{
    check_stub, compose_edges, concatenate, integrate_edge, is_mc, mc_residual, reconstruct, rectify, shift_base,
    stub_of, unshift_base, Edge, MCSimplex, McError,
};
use linf_core::slie::{twist_algebra, Element, SLieAlgebra};
use rand::Rng;

fn mc_fixtures() -> Vec<Arc<SLieAlgebra>> {
    fixtures::algebras().into_iter().filter(|a| a.name() != "xy").collect()
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn zero_and_abelian_mc() {
    let ab = Arc::new(fixtures::abelian());
    assert!(is_mc(&ab, &Element::zero(2)).unwrap());
    let mut rng = random::rng(1);
    for _ in 0..20 {
        let x = random::element(&mut rng, &ab, 2, 0, 1, 3);
        assert_eq!(is_mc(&ab, &x).unwrap(), ab.differential(&x).is_zero());
    }
}

#[test]
fn non_solution_path_has_residual() {
    let alg = fixtures::xyz();
    let t = PolyForm::coordinate(1, 0).unwrap();
    let path = alg.tensor("x", t.clone()).add(&alg.tensor("z", t.scale(&r(-1, 1))));
    assert!(!mc_residual(&alg, &path).unwrap().is_zero());
}

#[test]
fn faces_and_degeneracies() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(2);
        for _ in 0..5 {
            let s = random::simplex(&mut rng, &alg, 2);
            for i in 0..=2 {
                let f = s.face(i).unwrap();
                assert!(is_mc(&alg, f.value()).unwrap());
                let d = s.degeneracy(i).unwrap();
                assert!(is_mc(&alg, d.value()).unwrap());
                // d_i s_i = id
                assert_eq!(d.face(i).unwrap(), s);
                assert_eq!(d.face(i + 1).unwrap(), s);
            }
            // d_i d_j = d_{j-1} d_i for i < j
            for j in 1..=2 {
                for i in 0..j {
                    assert_eq!(s.face(j).unwrap().face(i).unwrap(), s.face(i).unwrap().face(j - 1).unwrap());
                }
            }
            let e = Edge::new(s.face(0).unwrap()).unwrap();
            assert_eq!(e.simplex().face(0).unwrap().value(), &e.start());
            assert_eq!(e.simplex().face(1).unwrap().value(), &e.end());
        }
        let p = MCSimplex::point(alg.clone(), &random::mc(&mut rng, &alg)).unwrap();
        assert_eq!(Edge::new(p.degeneracy(0).unwrap()).unwrap(), Edge::constant(alg.clone(), p.value()).unwrap());
    }
}

#[test]
fn ezra_round_trip() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(3);
        for n in 1..=2 {
            for _ in 0..6 {
                let s = random::simplex(&mut rng, &alg, n);
                for i in 0..=n {
                    let mu = s.vertex(i).unwrap();
                    let nu = s.stub(i).unwrap();
                    check_stub(&alg, &nu, i).unwrap();
                    let (back, steps) = reconstruct(&alg, n, i, &mu, &nu).unwrap();
                    assert_eq!(back, s, "{} n={n} i={i}", alg.name());
                    assert!(steps <= alg.truncation() as usize);
                }
            }
        }
    }
}

#[test]
fn reconstruct_recovers_data() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(4);
        for _ in 0..5 {
            let n = rng.gen_range(1..=2);
            let i = rng.gen_range(0..=n);
            let mu = random::mc(&mut rng, &alg);
            let nu = random::stub(&mut rng, &alg, n, i);
            let (s, _) = reconstruct(&alg, n, i, &mu, &nu).unwrap();
            assert_eq!(s.vertex(i).unwrap(), mu);
            assert_eq!(s.stub(i).unwrap(), nu);
        }
    }
}

#[test]
fn abelian_reconstruct_and_stub() {
    let ab = Arc::new(fixtures::abelian());
    let mut rng = random::rng(5);
    let mu = random::mc(&mut rng, &ab);
    let nu = random::stub(&mut rng, &ab, 2, 0);
    let (s, steps) = reconstruct(&ab, 2, 0, &mu, &nu).unwrap();
    assert_eq!(steps, 0);
    assert_eq!(s.value(), &mu.constant_on(2).add(&nu));
    let v = s.value();
    assert_eq!(stub_of(&ab, v, 1).unwrap(), v.sub(&v.eval_vertex(1).constant_on(2)));
}

#[test]
fn stub_membership_is_enforced() {
    let alg = Arc::new(fixtures::xyz());
    let t = PolyForm::coordinate(1, 1).unwrap();
    let bad = alg.tensor("x", t);
    assert!(matches!(check_stub(&alg, &bad, 0), Err(McError::NotStub { .. })));
    assert!(reconstruct(&alg, 1, 0, &Element::zero(0), &bad).is_err());
    let p = MCSimplex::point(alg.clone(), &alg.elem(&[("x", r(2, 1)), ("z", r(-4, 1))])).unwrap();
    assert!(p.degeneracy(0).unwrap().stub(0).unwrap().is_zero());
}

#[test]
fn integrate_edges() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(6);
        for _ in 0..5 {
            let start = random::mc(&mut rng, &alg);
            let e = integrate_edge(&alg, &start, &Element::zero(1)).unwrap();
            assert_eq!(e, Edge::constant(alg.clone(), &start).unwrap());
            let rho = random::element(&mut rng, &alg, 1, -1, 1, 2).form_component(0);
            let e = integrate_edge(&alg, &start, &rho).unwrap();
            assert_eq!(e.start(), start);
            assert_eq!(e.beta1(), rho);
            assert!(is_mc(&alg, e.value()).unwrap());
        }
    }
    let ab = Arc::new(fixtures::abelian());
    let rho = ab.tensor("c", PolyForm::coordinate(1, 0).unwrap());
    let e = integrate_edge(&ab, &Element::zero(0), &rho).unwrap();
    assert_eq!(e.end(), ab.elem(&[("a", r(1, 2))]));
    let xy = Arc::new(fixtures::xy());
    assert!(integrate_edge(&xy, &xy.elem(&[("x", r(1, 1))]), &Element::zero(1)).is_err());
}

#[test]
fn rectification() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(7);
        for _ in 0..4 {
            let k = rng.gen_range(1..=alg.truncation());
            let e = random::edge(&mut rng, &alg, k);
            let out = rectify(&alg, &e, k).unwrap();
            assert!(out.is_rectified());
            assert!(alg.in_filtration(&out.beta1(), k));
            assert_eq!(out.start(), e.start());
            assert_eq!(out.end(), e.end());
            assert!(is_mc(&alg, out.value()).unwrap());
            assert_eq!(rectify(&alg, &out, k).unwrap(), out);
        }
    }
    let ab = Arc::new(fixtures::abelian());
    let rho = ab.tensor("c", PolyForm::coordinate(1, 0).unwrap());
    let e = integrate_edge(&ab, &Element::zero(0), &rho).unwrap();
    let out = rectify(&ab, &e, 1).unwrap();
    assert_eq!(out.beta1_constant().unwrap(), ab.elem(&[("c", r(1, 2))]));
    assert!(rectify(&ab, &e, 2).is_err());
}

#[test]
fn composition() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(8);
        for _ in 0..4 {
            let left = random::edge(&mut rng, &alg, 1);
            let rho = random::element(&mut rng, &alg, 1, -1, 1, 2).form_component(0);
            let right = integrate_edge(&alg, &left.end(), &rho).unwrap();
            let c = compose_edges(&alg, &left, &right).unwrap();
            assert_eq!(c.triangle.face(2).unwrap().value(), right.value());
            assert_eq!(c.triangle.face(0).unwrap().value(), left.value());
            assert_eq!(c.composite.start(), left.start());
            assert_eq!(c.composite.end(), right.end());
            assert!(is_mc(&alg, c.triangle.value()).unwrap());
            assert!(compose_edges(&alg, &right, &left).is_err() || right.end() == left.start());
        }
        let a = random::mc(&mut rng, &alg);
        let k = Edge::constant(alg.clone(), &a).unwrap();
        let c = compose_edges(&alg, &k, &k).unwrap();
        assert_eq!(c.composite, k);
        assert_eq!(c.triangle.value(), &a.constant_on(2));
    }
}

#[test]
fn concatenation() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(9);
        let n = alg.truncation();
        let mut edges: Vec<Edge> = Vec::new();
        let mut at = random::mc(&mut rng, &alg);
        for w in 1..=n {
            let rho = random::element(&mut rng, &alg, 1, -1, w, 2).form_component(0);
            let e = integrate_edge(&alg, &at, &rho).unwrap();
            at = e.end();
            edges.push(e);
        }
        let (out, steps) = concatenate(&alg, &edges).unwrap();
        assert!(steps < n as usize);
        assert_eq!(out.start(), edges[0].start());
        assert_eq!(out.end(), at);
        assert!(is_mc(&alg, out.value()).unwrap());
        assert_eq!(concatenate(&alg, &edges[..1]).unwrap().0, edges[0]);
        if n >= 2 && !edges[0].beta1().is_zero() {
            let swapped = vec![edges[0].clone(), edges[0].clone()];
            assert!(concatenate(&alg, &swapped).is_err());
        }
    }
}

#[test]
fn base_point_shift() {
    for alg in mc_fixtures() {
        let mut rng = random::rng(10);
        for _ in 0..4 {
            let alpha = random::mc(&mut rng, &alg);
            let tw = Arc::new(twist_algebra(&alg, &alpha).unwrap());
            let s = random::simplex(&mut rng, &tw, 1);
            let shifted = shift_base(&alg, &alpha, s.value()).unwrap();
            assert_eq!(&unshift_base(&alg, &alpha, &shifted).unwrap(), s.value());
            assert_eq!(shifted.face(0).unwrap(), shift_base(&alg, &alpha, s.face(0).unwrap().value()).unwrap());
            assert_eq!(shift_base(&alg, &alpha, &Element::zero(0)).unwrap().value(), &alpha);
        }
        let s = random::simplex(&mut rng, &alg, 1);
        assert_eq!(shift_base(&alg, &Element::zero(0), s.value()).unwrap(), s);
    }
}

use linf_core::forms::{dupont_s, ElementaryCochain, PolyForm};
use linf_core::linalg::Rational;
use proptest::prelude::*;

fn arb_form(max_dim: usize, max_deg: u32) -> impl Strategy<Value = PolyForm> {
    (1..=max_dim).prop_flat_map(move |n| {
        let term = (
            -6i64..=6,
            1i64..=3,
            prop::collection::vec(0..=max_deg, n),
            prop::collection::vec(1..=n, 0..=n),
        );
        prop::collection::vec(term, 0..6).prop_map(move |ts| {
            let ts = ts.into_iter().map(|(a, b, mut e, dts)| {
                let total: u32 = e.iter().sum();
                if total > max_deg {
                    e.iter_mut().for_each(|x| *x = (*x).min(1));
                }
                (Rational::new(a, b), e, dts)
            });
            PolyForm::from_terms(n, ts).unwrap()
        })
    })
}

fn homogeneous(f: &PolyForm) -> Vec<PolyForm> {
    f.degrees().into_iter().map(|k| f.component(k)).collect()
}

/// Naive `t_i := 0` for `i ≥ 1`: drop terms containing `t_i` or `dt_i`,
/// then renumber the higher coordinates.
fn naive_face(f: &PolyForm, i: usize) -> PolyForm {
    let n = f.dim();
    let terms = f.terms().iter().filter_map(|(m, c)| {
        if m.exps[i - 1] > 0 || m.dt & (1 << (i - 1)) != 0 {
            return None;
        }
        let mut exps = m.exps.clone();
        exps.remove(i - 1);
        let dts: Vec<usize> = m.dt_indices().into_iter().map(|k| if k > i { k - 1 } else { k }).collect();
        Some((c.clone(), exps, dts))
    });
    PolyForm::from_terms(n - 1, terms.collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn d_squares_to_zero(f in arb_form(3, 4)) {
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn wedge_graded_commutative_and_leibniz(a in arb_form(2, 3), b in arb_form(2, 3)) {
        prop_assume!(a.dim() == b.dim());
        for a in homogeneous(&a) {
            for b in homogeneous(&b) {
                let ab = a.wedge(&b).unwrap();
                let ba = b.wedge(&a).unwrap();
                let sign = (a.degree().unwrap() * b.degree().unwrap()) % 2 == 1;
                prop_assert_eq!(&ab, &if sign { ba.neg() } else { ba });
                let lhs = ab.d();
                let rhs = a.d().wedge(&b).unwrap();
                let tail = a.wedge(&b.d()).unwrap();
                let rhs = if a.degree().unwrap() % 2 == 1 { rhs.sub(&tail).unwrap() } else { rhs.add(&tail).unwrap() };
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn poincare_identity_and_h_squared(f in arb_form(3, 5)) {
        for i in 0..=f.dim() {
            let lhs = f.h(i).unwrap().d().add(&f.d().h(i).unwrap()).unwrap();
            let rhs = f.sub(&PolyForm::constant(f.dim(), f.eval_vertex(i).unwrap())).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f.h(i).unwrap().h(i).unwrap().is_zero());
            prop_assert_eq!(f.h(i).unwrap().eval_vertex(i).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn faces_match_naive_substitution(f in arb_form(3, 4)) {
        for i in 1..=f.dim() {
            prop_assert_eq!(f.face(i).unwrap(), naive_face(&f, i));
        }
    }

    #[test]
    fn simplicial_identities(f in arb_form(3, 3)) {
        let n = f.dim();
        // Pullbacks reverse the order of the cosimplicial identities.
        for i in 0..=n {
            for j in (i + 1)..=n {
                if n >= 2 {
                    prop_assert_eq!(f.face(j).unwrap().face(i).unwrap(), f.face(i).unwrap().face(j - 1).unwrap());
                }
            }
        }
        for i in 0..=n {
            for j in i..=n {
                prop_assert_eq!(f.degeneracy(j).unwrap().degeneracy(i).unwrap(), f.degeneracy(i).unwrap().degeneracy(j + 1).unwrap());
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = f.degeneracy(j).unwrap().face(i).unwrap();
                if i < j {
                    prop_assert_eq!(lhs, f.face(i).unwrap().degeneracy(j - 1).unwrap());
                } else if i == j || i == j + 1 {
                    prop_assert_eq!(lhs, f.clone());
                } else {
                    prop_assert_eq!(lhs, f.face(i - 1).unwrap().degeneracy(j).unwrap());
                }
            }
        }
    }

    #[test]
    fn simplicial_maps_are_dga_maps(a in arb_form(3, 3), b in arb_form(3, 3)) {
        prop_assume!(a.dim() == b.dim());
        let n = a.dim();
        for i in 0..=n {
            prop_assert_eq!(a.d().face(i).unwrap(), a.face(i).unwrap().d());
            prop_assert_eq!(a.wedge(&b).unwrap().degeneracy(i).unwrap(),
                a.degeneracy(i).unwrap().wedge(&b.degeneracy(i).unwrap()).unwrap());
        }
    }

    #[test]
    fn projection_is_a_chain_map_and_idempotent(f in arb_form(3, 4)) {
        let p = f.dupont_p();
        prop_assert_eq!(f.d().dupont_p(), p.coboundary());
        prop_assert_eq!(f.dupont_p_form().dupont_p(), p);
    }

    #[test]
    fn dupont_homotopy(f in arb_form(3, 3)) {
        let lhs = dupont_s(&f).d().add(&dupont_s(&f.d())).unwrap();
        let rhs = f.sub(&f.dupont_p_form()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(dupont_s(&f).dupont_p().coeffs().is_empty());
    }

    #[test]
    fn dupont_s_is_simplicial(f in arb_form(3, 3)) {
        let n = f.dim();
        for i in 0..=n {
            if n >= 1 {
                prop_assert_eq!(dupont_s(&f).face(i).unwrap(), dupont_s(&f.face(i).unwrap()));
            }
            prop_assert_eq!(dupont_s(&f).degeneracy(i).unwrap(), dupont_s(&f.degeneracy(i).unwrap()));
        }
    }
}

#[test]
fn whitney_forms_integrate_to_one() {
    for n in 0..=2 {
        for k in 0..=n {
            for face in subsets(n, k + 1) {
                let w = PolyForm::whitney(n, &face).unwrap();
                assert_eq!(w.integrate_face(&face).unwrap(), Rational::one());
                assert_eq!(w.dupont_p(), ElementaryCochain::indicator(n, &face).unwrap());
                let s = dupont_s(&w);
                assert!(s.d().add(&dupont_s(&w.d())).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn projection_of_t_squared_dt() {
    let f = PolyForm::from_terms(1, vec![(Rational::one(), vec![2], vec![1])]).unwrap();
    assert_eq!(f.dupont_p().get(&[0, 1]), Rational::new(1, 3));
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << (n + 1)))
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..=n).filter(|b| m & (1 << b) != 0).collect())
        .collect()
}

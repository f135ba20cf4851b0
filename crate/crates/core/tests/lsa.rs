use cuspidal_core::castling::{default_twist, instantiate, parse};
use cuspidal_core::catalog::load_catalog;
use cuspidal_core::linalg::{inverse, qi};
use cuspidal_core::lsa::{
    direct_sum_lsa, gl2_hxyc, is_right_identity, left_regular_rep, lsa_from_cuspidal, lsa_isomorphic, reduced_split,
    right_identities, validate_lsa, IsoFamily, Lsa, SplitOutcome,
};
use cuspidal_core::prehom::{decide_pv, PvPolicy};
use cuspidal_core::{Matrix, Rational};
use proptest::prelude::*;

/// The product `x . y = P^{-1}((P x) * (P y))`.
fn transport(a: &Lsa, p: &Matrix) -> Lsa {
    let pinv = inverse(p).unwrap();
    let n = a.dim();
    let ls: Vec<Matrix> = (0..n)
        .map(|i| {
            let pi = p.column(i);
            let cols: Vec<Vec<Rational>> = (0..n).map(|j| pinv.mul_vec(&a.product(&pi, &p.column(j)))).collect();
            Matrix::from_columns(n, &cols)
        })
        .collect();
    Lsa::from_left_matrices("transported", &ls).unwrap()
}

#[test]
fn matrix_algebra_is_left_symmetric_with_identity() {
    for n in 1..=3 {
        let a = Lsa::matrix_algebra(n);
        assert!(validate_lsa(&a).is_empty());
        let ids = right_identities(&a).unwrap();
        assert!(ids.is_unique());
        let id: Vec<Rational> = (0..n * n).map(|k| if k / n == k % n { qi(1) } else { qi(0) }).collect();
        assert_eq!(ids.particular, id);
    }
}

#[test]
fn non_left_symmetric_tensor_is_rejected() {
    // e0 * e0 = e1, e1 * e0 = e0: (e0 e0) e0 - e0 (e0 e0) = e0 but the swapped side is 0
    let z = Rational::zero;
    let bad = Lsa::from_products("bad", 2, &[(0, 0, vec![z(), qi(1)]), (1, 0, vec![qi(1), z()])]).unwrap();
    assert!(!validate_lsa(&bad).is_empty());
    assert!(left_regular_rep(&bad).is_err());
}

#[test]
fn cuspidal_triplet_gives_lsa_on_its_algebra() {
    let t = parse("GL(2) : 3L1").unwrap();
    let r = instantiate(&t, &default_twist(&t).unwrap()).unwrap();
    let v = decide_pv(&r, &PvPolicy::default()).unwrap();
    let p = v.certificate().unwrap().point.clone();
    let (a, e) = lsa_from_cuspidal(&r, &p).unwrap();
    assert!(validate_lsa(&a).is_empty());
    assert!(is_right_identity(&a, &e.coords));
    assert!(right_identities(&a).unwrap().is_unique());
    assert_eq!(a.adjacent().structure(), r.algebra().structure());
    let (back, _) = lsa_from_cuspidal(&left_regular_rep(&a).unwrap(), &e.coords).unwrap();
    assert_eq!(back, a);
}

#[test]
fn non_cuspidal_or_degenerate_points_are_refused() {
    let t = parse("SL(2) : L1").unwrap();
    let r = instantiate(&t, &default_twist(&t).unwrap()).unwrap();
    assert!(lsa_from_cuspidal(&r, &[qi(1), qi(0)]).is_err());
    let t = parse("GL(2) : 3L1").unwrap();
    let r = instantiate(&t, &default_twist(&t).unwrap()).unwrap();
    assert!(lsa_from_cuspidal(&r, &[qi(0), qi(1), qi(0), qi(0)]).is_err());
}

#[test]
fn gl2_table_adjacent_and_isomorphisms() {
    let cat = load_catalog().unwrap();
    let table = &cat.lsa_table;
    for inst in table.instances().unwrap() {
        assert_eq!(*inst.lsa.adjacent(), gl2_hxyc(), "{}", inst.id);
        assert!(validate_lsa(&inst.lsa).is_empty(), "{}", inst.id);
    }
    let a = table.lookup("A3(2)").unwrap().lsa;
    let b = table.lookup("A3(1/2)").unwrap().lsa;
    let w = lsa_isomorphic(&a, &b, &IsoFamily::default_for(&a)).unwrap();
    assert_eq!(transport(&b, &w), a);
    let a1 = table.lookup("A1").unwrap().lsa;
    let a2 = table.lookup("A2").unwrap().lsa;
    assert!(lsa_isomorphic(&a1, &a2, &IsoFamily::default_for(&a1)).is_none());
    assert!(lsa_isomorphic(&a1, &a1, &IsoFamily::default()).is_some());
}

#[test]
fn reduced_split_of_a_direct_sum() {
    // sl(2) inside M(2) in the basis E00, E01, E10, E11
    let sl2 = |n: usize| {
        let v = |c: &[i64]| {
            let mut x = vec![qi(0); n];
            for (k, c) in c.iter().enumerate() {
                x[k] = qi(*c);
            }
            x
        };
        vec![v(&[0, 1]), v(&[0, 0, 1]), v(&[1, 0, 0, -1])]
    };
    let m2 = Lsa::matrix_algebra(2);
    assert_eq!(reduced_split(&m2, &sl2(4)).unwrap(), SplitOutcome::Reduced);
    let sum = direct_sum_lsa(&m2, &Lsa::zero(1));
    match reduced_split(&sum, &sl2(5)).unwrap() {
        SplitOutcome::Split { ideal, complement } => {
            assert_eq!(ideal.len(), 4);
            assert_eq!(complement.len(), 1);
        }
        other => panic!("{other:?}"),
    }
    assert!(reduced_split(&m2, &[vec![qi(1)]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transported_structure_stays_left_symmetric(v in prop::collection::vec(-2i64..=2, 16)) {
        let p = Matrix::from_fn(4, 4, |i, j| qi(v[i * 4 + j]) + if i == j { qi(5) } else { qi(0) });
        prop_assume!(inverse(&p).is_some());
        let a = transport(&Lsa::matrix_algebra(2), &p);
        prop_assert!(validate_lsa(&a).is_empty());
        let e = right_identities(&a).unwrap();
        prop_assert!(e.is_unique());
        prop_assert!(a.adjacent().derived_subalgebra_dim() < a.dim());
        let (back, _) = lsa_from_cuspidal(&left_regular_rep(&a).unwrap(), &e.particular).unwrap();
        prop_assert_eq!(back, a);
    }
}

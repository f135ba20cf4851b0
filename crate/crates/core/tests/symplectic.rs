use cuspidal_core::catalog::load_catalog;
use cuspidal_core::linalg::{inverse, qi};
use cuspidal_core::lsa::{right_identities, validate_lsa, Lsa};
use cuspidal_core::symplectic::{
    chu_lsa, double, frobenius_iff_right_identity, frobenius_witness, is_primitive, restrict_to_first_block,
};
use cuspidal_core::{Matrix, Rational};
use proptest::prelude::*;

fn corpus() -> Vec<Lsa> {
    let mut out: Vec<Lsa> = load_catalog().unwrap().lsa_table.instances().unwrap().into_iter().map(|i| i.lsa).collect();
    out.push(Lsa::matrix_algebra(2));
    out.push(Lsa::matrix_algebra(3));
    out.push(Lsa::zero(1));
    out.push(Lsa::zero(2));
    out
}

/// `x x = -x`, `y x = -y`, other products zero; its right identities form a line.
fn non_unique_identity() -> Lsa {
    let z = Rational::zero;
    Lsa::from_products("ex", 2, &[(0, 0, vec![qi(-1), z()]), (1, 0, vec![z(), qi(-1)])]).unwrap()
}

#[test]
fn doubles_are_closed_and_chu_recovers_the_algebra() {
    for a in corpus() {
        let s = double(&a).unwrap();
        assert!(s.violations().is_empty(), "{}", a.name());
        assert!(s.algebra.validate().is_empty(), "{}", a.name());
        let chu = chu_lsa(&s).unwrap();
        assert!(validate_lsa(&chu).is_empty(), "{}", a.name());
        assert_eq!(restrict_to_first_block(&chu, a.dim()).unwrap(), a, "{}", a.name());
    }
}

#[test]
fn frobenius_exactly_when_right_identity() {
    for a in corpus() {
        let r = frobenius_iff_right_identity(&a).unwrap();
        assert!(r.agree, "{}", a.name());
        assert_eq!(r.has_right_identity, right_identities(&a).is_some());
    }
    let ex = non_unique_identity();
    let ids = right_identities(&ex).unwrap();
    assert_eq!(ids.kernel.len(), 1);
    let r = frobenius_iff_right_identity(&ex).unwrap();
    assert!(r.has_right_identity && r.is_frobenius && r.agree && r.explicit_functional_ok);
    let r = frobenius_iff_right_identity(&Lsa::zero(1)).unwrap();
    assert!(!r.has_right_identity && !r.is_frobenius && r.agree);
}

#[test]
fn witness_is_a_primitive() {
    let s = double(&Lsa::matrix_algebra(2)).unwrap();
    let f = frobenius_witness(&s).unwrap();
    assert!(is_primitive(&s, &f));
    assert!(!is_primitive(&s, &vec![qi(0); 8]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn agreement_on_deformed_algebras(v in prop::collection::vec(-2i64..=2, 4), scale in 1i64..4) {
        // conjugates of the non-unique example by an invertible change of basis
        let p = Matrix::from_fn(2, 2, |i, j| qi(v[i * 2 + j]) + if i == j { qi(3 * scale) } else { qi(0) });
        prop_assume!(inverse(&p).is_some());
        let pinv = inverse(&p).unwrap();
        let a = non_unique_identity();
        let ls: Vec<Matrix> = (0..2)
            .map(|i| {
                let cols: Vec<Vec<Rational>> =
                    (0..2).map(|j| pinv.mul_vec(&a.product(&p.column(i), &p.column(j)))).collect();
                Matrix::from_columns(2, &cols)
            })
            .collect();
        let b = Lsa::from_left_matrices("conj", &ls).unwrap();
        prop_assert!(validate_lsa(&b).is_empty());
        let r = frobenius_iff_right_identity(&b).unwrap();
        prop_assert!(r.agree && r.has_right_identity);
    }
}

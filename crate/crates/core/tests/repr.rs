use std::sync::Arc;

use cuspidal_core::liealg::{construct_classical, ClassicalFamily, LieAlgebra};
use cuspidal_core::linalg::qi;
use cuspidal_core::repr::{
    adjoint, alt_power, alt_square, coadjoint, direct_sum_rep, dual, invariant_vectors, quotient_rep,
    standard, subrepresentation, sym_power, sym_square, tensor, trivial, validate_rep, with_center,
    CenterTwist, Representation,
};
use cuspidal_core::{Matrix, Rational};
use proptest::prelude::*;

fn alg(f: ClassicalFamily, n: usize) -> Arc<LieAlgebra> {
    Arc::new(construct_classical(f, n).unwrap())
}

/// `tr(rho(x)^k)` for `k = 1..=3`; equal power traces identify a representation up to
/// isomorphism for the reductive algebras used here.
fn power_traces(r: &Representation, x: &[Rational]) -> Vec<Rational> {
    let a = r.act(x);
    let a2 = a.mul(&a);
    vec![a.trace(), a2.trace(), a2.mul(&a).trace()]
}

#[test]
fn constructions_are_representations() {
    let g = alg(ClassicalFamily::Gl, 3);
    let v = standard(&g).unwrap();
    let reps = [
        dual(&v),
        tensor(&v, &dual(&v)).unwrap(),
        sym_square(&v),
        sym_power(&v, 3).unwrap(),
        alt_square(&v).unwrap(),
        alt_power(&v, 3).unwrap(),
        adjoint(&g),
        coadjoint(&g),
        direct_sum_rep(&v, &trivial(&g, 2)).unwrap(),
    ];
    let dims = [3, 9, 6, 10, 3, 1, 9, 9, 5];
    for (r, d) in reps.iter().zip(dims) {
        assert_eq!(r.space_dim(), d);
        assert!(validate_rep(r).is_empty());
    }
    let sp = alg(ClassicalFamily::Sp, 2);
    assert!(validate_rep(&alt_square(&standard(&sp).unwrap()).unwrap()).is_empty());
}

#[test]
fn adjoint_of_gl_has_a_central_invariant() {
    let g = alg(ClassicalFamily::Gl, 2);
    assert_eq!(invariant_vectors(&adjoint(&g)).len(), 1);
    assert_eq!(invariant_vectors(&standard(&g).unwrap()).len(), 0);
}

#[test]
fn center_twist_must_commute() {
    let g = alg(ClassicalFamily::Sl, 2);
    let v = standard(&g).unwrap();
    let r = with_center(&v, &CenterTwist::scalar(2)).unwrap();
    assert_eq!(r.algebra().dim(), 4);
    assert!(validate_rep(&r).is_empty());
    let bad = CenterTwist::new(vec![Matrix::from_i64_rows(&[&[1, 1], &[0, 1]])]);
    assert!(with_center(&v, &bad).is_err());
}

#[test]
fn coadjoint_submodule_and_quotient() {
    // [x, y] = y
    let mut c = vec![qi(0); 8];
    c[3] = qi(1);
    c[5] = qi(-1);
    let g = Arc::new(LieAlgebra::from_tensor("aff(1)", 2, c).unwrap());
    let r = coadjoint(&g);
    let xstar = vec![qi(1), qi(0)];
    let ystar = vec![qi(0), qi(1)];
    let sub = subrepresentation(&r, std::slice::from_ref(&xstar)).unwrap();
    assert!(sub.action().iter().all(Matrix::is_zero));
    assert_eq!(quotient_rep(&r, &[xstar]).unwrap().space_dim(), 1);
    assert!(subrepresentation(&r, std::slice::from_ref(&ystar)).is_err());
    assert!(quotient_rep(&r, &[ystar]).is_err());
}

fn coords(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(qi).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(n in 1usize..4, fam in 0usize..3) {
        let f = [ClassicalFamily::Gl, ClassicalFamily::Sl, ClassicalFamily::So][fam];
        prop_assume!(!(f == ClassicalFamily::So && n < 2));
        let v = standard(&alg(f, n)).unwrap();
        prop_assert_eq!(dual(&dual(&v)), v.clone());
        let s = sym_square(&v);
        prop_assert_eq!(dual(&dual(&s)), s);
    }

    #[test]
    fn sym_plus_alt_is_tensor(x in coords(9)) {
        let g = alg(ClassicalFamily::Gl, 3);
        let v = standard(&g).unwrap();
        let split = direct_sum_rep(&sym_square(&v), &alt_square(&v).unwrap()).unwrap();
        let vv = tensor(&v, &v).unwrap();
        prop_assert_eq!(split.space_dim(), vv.space_dim());
        prop_assert_eq!(power_traces(&split, &x), power_traces(&vv, &x));
    }

    #[test]
    fn dual_negates_traces(x in coords(8)) {
        let v = sym_power(&standard(&alg(ClassicalFamily::Sl, 3)).unwrap(), 2).unwrap();
        let (a, b) = (power_traces(&v, &x), power_traces(&dual(&v), &x));
        prop_assert_eq!(&a[0], &-&b[0]);
        prop_assert_eq!(&a[1], &b[1]);
        prop_assert_eq!(&a[2], &-&b[2]);
    }

    #[test]
    fn action_is_linear(x in coords(4), y in coords(4)) {
        let v = tensor(&standard(&alg(ClassicalFamily::Gl, 2)).unwrap(), &sym_square(&standard(&alg(ClassicalFamily::Gl, 2)).unwrap())).unwrap();
        let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert_eq!(v.act(&sum), v.act(&x).add(&v.act(&y)));
    }
}

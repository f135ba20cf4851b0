//! Left-symmetric algebras: validation, right identities and the passage to and from
//! cuspidal prehomogeneous representations.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::liealg::{LieAlgebra, StructureViolation};
use crate::linalg::{self, inverse, nullspace, rank, Matrix, Rational};
use crate::repr::Representation;

/// `e_i * e_j = sum_k m[i][j][k] e_k`, stored at `(i * dim + j) * dim + k`.
#[derive(Clone)]
pub struct Lsa {
    name: String,
    dim: usize,
    mult: Vec<Rational>,
    adjacent: LieAlgebra,
}

impl PartialEq for Lsa {
    fn eq(&self, other: &Lsa) -> bool {
        self.dim == other.dim && self.mult == other.mult
    }
}

impl Eq for Lsa {}

impl fmt::Debug for Lsa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lsa({}, dim {})", self.name, self.dim)
    }
}

impl Lsa {
    /// Raw tensor constructor; the adjacent bracket is the commutator of `mult`.
    pub fn from_tensor(name: impl Into<String>, dim: usize, mult: Vec<Rational>) -> Result<Lsa> {
        if mult.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplication tensor has {} entries, expected {}",
                mult.len(),
                dim * dim * dim
            )));
        }
        let name = name.into();
        let mut structure = vec![Rational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let idx = (i * dim + j) * dim + k;
                    let c = &mult[idx] - &mult[(j * dim + i) * dim + k];
                    structure[idx] = c;
                }
            }
        }
        let adjacent = LieAlgebra::from_tensor(format!("adj({name})"), dim, structure)?;
        Ok(Lsa {
            name,
            dim,
            mult,
            adjacent,
        })
    }

    /// Products `e_i * e_j = v` for the listed triples; unlisted products vanish.
    pub fn from_products(name: impl Into<String>, dim: usize, products: &[(usize, usize, Vec<Rational>)]) -> Result<Lsa> {
        let mut mult = vec![Rational::zero(); dim * dim * dim];
        for (i, j, v) in products {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "product e{i}*e{j} does not fit dimension {dim}"
                )));
            }
            for (k, x) in v.iter().enumerate() {
                mult[(i * dim + j) * dim + k] = x.clone();
            }
        }
        Lsa::from_tensor(name, dim, mult)
    }

    /// Left multiplication matrices: column `j` of `ls[i]` holds `e_i * e_j`.
    pub fn from_left_matrices(name: impl Into<String>, ls: &[Matrix]) -> Result<Lsa> {
        let n = ls.len();
        if ls.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch(format!("left multiplications must be {n}x{n}")));
        }
        let mut mult = vec![Rational::zero(); n * n * n];
        for (i, l) in ls.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    mult[(i * n + j) * n + k] = l[(k, j)].clone();
                }
            }
        }
        Lsa::from_tensor(name, n, mult)
    }

    /// The associative algebra `M(n)` in the basis `E_pq`, row-major.
    pub fn matrix_algebra(n: usize) -> Lsa {
        let d = n * n;
        let mut mult = vec![Rational::zero(); d * d * d];
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    // E_pq E_qs = E_ps
                    let (i, j, k) = (p * n + q, q * n + s, p * n + s);
                    mult[(i * d + j) * d + k] = Rational::one();
                }
            }
        }
        Lsa::from_tensor(format!("M({n})"), d, mult).expect("consistent sizes")
    }

    pub fn zero(dim: usize) -> Lsa {
        Lsa::from_tensor(format!("zero({dim})"), dim, vec![Rational::zero(); dim * dim * dim]).expect("consistent sizes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Lsa {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &[Rational] {
        &self.mult
    }

    pub fn m(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.mult[start..start + self.dim]
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(self.product_basis(i, j)) {
                    if !c.is_zero() {
                        *o += c * &s;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `L_{e_i}`: `(L_i)[k][j] = m[i][j][k]`.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.m(i, j, k).clone())
    }

    /// Matrix of `R_e : x -> x * e`.
    pub fn right_matrix(&self, e: &[Rational]) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            let col = self.product(&linalg::unit_vector(n, i), e);
            for (k, x) in col.into_iter().enumerate() {
                out[(k, i)] = x;
            }
        }
        out
    }

    pub fn adjacent(&self) -> &LieAlgebra {
        &self.adjacent
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = self.m(i, j, k);
                    if !x.is_zero() {
                        entries.push((i, j, k, x.clone()));
                    }
                }
            }
        }
        serde_json::json!({ "name": self.name, "dim": n, "mult": entries })
    }
}

/// Direct sum of algebras (block products, cross products zero); `a` comes first.
pub fn direct_sum_lsa(a: &Lsa, b: &Lsa) -> Lsa {
    let (p, s) = (a.dim, b.dim);
    let n = p + s;
    let mut mult = vec![Rational::zero(); n * n * n];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                mult[(i * n + j) * n + k] = a.m(i, j, k).clone();
            }
        }
    }
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                mult[((p + i) * n + p + j) * n + p + k] = b.m(i, j, k).clone();
            }
        }
    }
    Lsa::from_tensor(format!("{}+{}", a.name, b.name), n, mult).expect("consistent sizes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LsaViolation {
    /// The associator is not symmetric in the first two arguments at `(e_i, e_j, e_k)`.
    LeftSymmetry { i: usize, j: usize, k: usize },
    Adjacent(StructureViolation),
}

/// `(x y) z - x (y z) - (y x) z + y (x z)` for basis vectors.
fn left_symmetry_defect(a: &Lsa, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let n = a.dim;
    let ek = linalg::unit_vector(n, k);
    let xy_z = a.product(a.product_basis(i, j), &ek);
    let yx_z = a.product(a.product_basis(j, i), &ek);
    let ei = linalg::unit_vector(n, i);
    let ej = linalg::unit_vector(n, j);
    let x_yz = a.product(&ei, a.product_basis(j, k));
    let y_xz = a.product(&ej, a.product_basis(i, k));
    (0..n).map(|m| &xy_z[m] - &x_yz[m] - &yx_z[m] + &y_xz[m]).collect()
}

pub fn validate_lsa(a: &Lsa) -> Vec<LsaViolation> {
    let n = a.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if !linalg::is_zero_vec(&left_symmetry_defect(a, i, j, k)) {
                    out.push(LsaViolation::LeftSymmetry { i, j, k });
                }
            }
        }
    }
    out.extend(a.adjacent.validate().into_iter().map(LsaViolation::Adjacent));
    out
}

/// `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }

    /// Whether `v` lies in the solution set.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let diff: Vec<Rational> = v.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        if linalg::is_zero_vec(&diff) {
            return true;
        }
        if self.kernel.is_empty() {
            return false;
        }
        let n = v.len();
        let mut cols = self.kernel.clone();
        let r0 = rank(&Matrix::from_columns(n, &cols));
        cols.push(diff);
        rank(&Matrix::from_columns(n, &cols)) == r0
    }
}

/// A vector `e` with `x * e = x` for all `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightIdentity {
    pub coords: Vec<Rational>,
}

/// All `e` with `sum_j e_j m[i][j][k] = delta_ik`, or `None` when there is none.
pub fn right_identities(a: &Lsa) -> Option<AffineSolution> {
    let n = a.dim;
    let sys = Matrix::from_fn(n * n, n, |row, j| a.m(row / n, j, row % n).clone());
    let rhs: Vec<Rational> = (0..n * n)
        .map(|row| if row / n == row % n { Rational::one() } else { Rational::zero() })
        .collect();
    let particular = linalg::solve(&sys, &rhs).expect("consistent shapes")?;
    Some(AffineSolution {
        particular,
        kernel: if n == 0 { Vec::new() } else { nullspace(&sys) },
    })
}

pub fn is_right_identity(a: &Lsa, e: &[Rational]) -> bool {
    a.right_matrix(e) == Matrix::identity(a.dim)
}

/// The algebra `x * y = pi^{-1}(drho(x) drho(y) v)` with `pi(x) = drho(x) v`, together
/// with its right identity `pi^{-1}(v)`.
pub fn lsa_from_cuspidal(r: &Representation, v: &[Rational]) -> Result<(Lsa, RightIdentity)> {
    let n = r.algebra().dim();
    if n == 0 {
        return contract("the zero algebra has no generic point");
    }
    if r.space_dim() != n {
        return contract(format!(
            "dim g = {n} but dim V = {}; the representation is not cuspidal",
            r.space_dim()
        ));
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch("point length differs from dim V".into()));
    }
    let cols: Vec<Vec<Rational>> = r.action().iter().map(|a| a.mul_vec(v)).collect();
    let p = Matrix::from_columns(n, &cols);
    let Some(pinv) = inverse(&p) else {
        return contract("x -> drho(x) v is not invertible at the given point");
    };
    // L_i = P^{-1} A_i P, since A_i A_j v = A_i (P e_j)
    let ls: Vec<Matrix> = r.action().iter().map(|a| pinv.mul(&a.mul(&p))).collect();
    let lsa = Lsa::from_left_matrices(format!("lsa({})", r.algebra().name()), &ls)?;
    let e = pinv.mul_vec(v);
    if !is_right_identity(&lsa, &e) {
        return contract("pi^{-1}(v) is not a right identity");
    }
    if lsa.adjacent.structure() != r.algebra().structure() {
        return contract("adjacent bracket differs from the acting algebra; the action is not a representation");
    }
    Ok((lsa, RightIdentity { coords: e }))
}

/// `action[i] = L_{e_i}`; rejects tensors that are not left-symmetric.
pub fn left_regular_rep(a: &Lsa) -> Result<Representation> {
    let bad = validate_lsa(a);
    if let Some(v) = bad.first() {
        return contract(format!("{} is not left-symmetric: {v:?}", a.name));
    }
    let action = (0..a.dim).map(|i| a.left_matrix(i)).collect();
    Representation::new(Arc::new(a.adjacent.clone()), a.dim, action)
}

/// Candidates `P * diag(t_1, ..., t_n)` with `P` ranging over the identity and the
/// given reflections and each `t_i` over `grid`.
#[derive(Clone, Debug)]
pub struct IsoFamily {
    pub grid: Vec<Rational>,
    pub reflections: Vec<Matrix>,
    pub max_candidates: usize,
}

impl Default for IsoFamily {
    fn default() -> IsoFamily {
        let q = |n, d| Rational::new(n, d);
        IsoFamily {
            grid: vec![q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2), q(-1, 2)],
            reflections: Vec::new(),
            max_candidates: 500_000,
        }
    }
}

impl IsoFamily {
    /// The default grid plus the Weyl reflection of `gl(2)` when the adjacent algebra is
    /// `gl(2)` in the basis `(H, X, Y, C)`.
    pub fn default_for(a: &Lsa) -> IsoFamily {
        let mut fam = IsoFamily::default();
        if a.dim == 4 && *a.adjacent() == gl2_hxyc() {
            fam.reflections.push(gl2_weyl());
        }
        fam
    }
}

/// `gl(2)` in the basis `H = diag(1, -1)`, `X = E_01`, `Y = E_10`, `C = I`.
pub fn gl2_hxyc() -> LieAlgebra {
    let h = Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
    let x = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
    let y = Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
    LieAlgebra::from_matrix_basis("gl(2)", vec![h, x, y, Matrix::identity(2)]).expect("independent basis")
}

/// `H -> -H`, `X <-> Y`, `C -> C` in the basis `(H, X, Y, C)`.
pub fn gl2_weyl() -> Matrix {
    Matrix::from_i64_rows(&[&[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
}

fn is_homomorphism(a: &Lsa, b: &Lsa, h: &Matrix) -> bool {
    let n = a.dim;
    let images: Vec<Vec<Rational>> = (0..n).map(|i| h.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = h.mul_vec(a.product_basis(i, j));
            if lhs != b.product(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// Some invertible `h` in the family with `h(x * y) = h(x) . h(y)`; `None` is not a proof
/// of non-isomorphism.
pub fn lsa_isomorphic(a: &Lsa, b: &Lsa, family: &IsoFamily) -> Option<Matrix> {
    let n = a.dim;
    if n != b.dim {
        return None;
    }
    let mut prefixes = vec![Matrix::identity(n)];
    prefixes.extend(family.reflections.iter().filter(|m| m.rows() == n && m.cols() == n).cloned());
    if is_homomorphism(a, b, &prefixes[0]) {
        return Some(prefixes[0].clone());
    }
    let g = family.grid.len();
    if g == 0 {
        return None;
    }
    let mut tried = 0usize;
    let mut idx = vec![0usize; n];
    loop {
        let d = Matrix::from_fn(n, n, |i, j| if i == j { family.grid[idx[i]].clone() } else { Rational::zero() });
        if d.entries().iter().step_by(n + 1).all(|x| !x.is_zero()) {
            for p in &prefixes {
                tried += 1;
                if tried > family.max_candidates {
                    return None;
                }
                let h = p.mul(&d);
                if rank(&h) == n && is_homomorphism(a, b, &h) {
                    return Some(h);
                }
            }
        }
        // odometer over grid indices
        let mut pos = 0;
        loop {
            if pos == n {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < g {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitOutcome {
    /// `g^s = {x : s * x = 0 for all s} = 0`.
    Reduced,
    /// `g = ideal (+) complement`, both two-sided ideals, `complement = g^s`.
    Split {
        ideal: Vec<Vec<Rational>>,
        complement: Vec<Vec<Rational>>,
    },
    NotApplicable { reason: String },
}

fn span_rank(n: usize, vs: &[Vec<Rational>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        rank(&Matrix::from_columns(n, vs))
    }
}

/// Splits off `g^s` from the two-sided ideal generated by `semisimple`.
pub fn reduced_split(a: &Lsa, semisimple: &[Vec<Rational>]) -> Result<SplitOutcome> {
    let n = a.dim;
    if semisimple.iter().any(|s| s.len() != n) {
        return Err(Error::DimensionMismatch("semisimple basis vector has wrong length".into()));
    }
    let fixed = if semisimple.is_empty() {
        (0..n).map(|i| linalg::unit_vector(n, i)).collect()
    } else {
        let blocks: Vec<Matrix> = semisimple
            .iter()
            .map(|s| {
                let mut l = Matrix::zeros(n, n);
                for (i, c) in s.iter().enumerate() {
                    l.add_scaled(c, &a.left_matrix(i));
                }
                l
            })
            .collect();
        nullspace(&Matrix::vstack(&blocks))
    };
    if fixed.is_empty() {
        return Ok(SplitOutcome::Reduced);
    }
    // two-sided ideal generated by the semisimple part
    let mut ideal: Vec<Vec<Rational>> = Vec::new();
    let mut queue: Vec<Vec<Rational>> = semisimple.to_vec();
    while let Some(v) = queue.pop() {
        let mut trial = ideal.clone();
        trial.push(v.clone());
        if span_rank(n, &trial) == ideal.len() {
            continue;
        }
        ideal.push(v.clone());
        for i in 0..n {
            let ei = linalg::unit_vector(n, i);
            queue.push(a.product(&ei, &v));
            queue.push(a.product(&v, &ei));
        }
    }
    let mut both = ideal.clone();
    both.extend(fixed.iter().cloned());
    if span_rank(n, &both) != n || ideal.len() + fixed.len() != n {
        return Ok(SplitOutcome::NotApplicable {
            reason: format!(
                "ideal generated by the semisimple part (dim {}) and g^s (dim {}) do not give a direct sum",
                ideal.len(),
                fixed.len()
            ),
        });
    }
    let r0 = fixed.len();
    for (c, v) in fixed.iter().enumerate() {
        for i in 0..n {
            let ei = linalg::unit_vector(n, i);
            for (side, p) in [("e*c", a.product(&ei, v)), ("c*e", a.product(v, &ei))] {
                let mut t = fixed.clone();
                t.push(p);
                if span_rank(n, &t) != r0 {
                    return Ok(SplitOutcome::NotApplicable {
                        reason: format!("g^s is not an ideal: product {side} with e = e{i}, c = g^s vector {c}"),
                    });
                }
            }
        }
    }
    Ok(SplitOutcome::Split {
        ideal,
        complement: fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{construct_classical, ClassicalFamily};
    use crate::linalg::qi;

    /// xx = -x, xy = 0, yx = -y, yy = 0
    fn two_dim_example() -> Lsa {
        let z = Rational::zero;
        Lsa::from_products(
            "ex2",
            2,
            &[(0, 0, vec![qi(-1), z()]), (1, 0, vec![z(), qi(-1)])],
        )
        .unwrap()
    }

    #[test]
    fn matrix_algebra_is_left_symmetric() {
        for n in 1..=3 {
            let a = Lsa::matrix_algebra(n);
            assert!(validate_lsa(&a).is_empty());
            let gl = construct_classical(ClassicalFamily::Gl, n).unwrap();
            assert_eq!(*a.adjacent(), gl);
            let ids = right_identities(&a).unwrap();
            assert!(ids.is_unique());
            let mut e = vec![qi(0); n * n];
            for i in 0..n {
                e[i * n + i] = qi(1);
            }
            assert_eq!(ids.particular, e);
        }
    }

    #[test]
    fn two_dim_family_of_right_identities() {
        let a = two_dim_example();
        assert!(validate_lsa(&a).is_empty());
        let ids = right_identities(&a).unwrap();
        assert_eq!(ids.kernel.len(), 1);
        for k in -3..=3 {
            let e = vec![qi(-1), qi(k)];
            assert!(ids.contains(&e));
            assert!(is_right_identity(&a, &e));
        }
        assert!(!ids.contains(&[qi(1), qi(0)]));
    }

    #[test]
    fn no_right_identity_for_zero_product() {
        assert!(right_identities(&Lsa::zero(1)).is_none());
    }

    #[test]
    fn left_regular_rep_of_matrix_algebra() {
        let a = Lsa::matrix_algebra(2);
        let r = left_regular_rep(&a).unwrap();
        assert!(crate::repr::validate_rep(&r).is_empty());
        let (b, e) = lsa_from_cuspidal(&r, &right_identities(&a).unwrap().particular).unwrap();
        assert_eq!(a, b);
        assert!(is_right_identity(&a, &e.coords));
    }

    #[test]
    fn invalid_tensor_is_rejected() {
        // x*y = x alone: the associator defect at (x, y, y) is x
        let z = Rational::zero;
        let a = Lsa::from_products("bad", 2, &[(0, 1, vec![qi(1), z()])]).unwrap();
        assert_eq!(validate_lsa(&a), vec![LsaViolation::LeftSymmetry { i: 0, j: 1, k: 1 }]);
        assert!(left_regular_rep(&a).is_err());
    }

    #[test]
    fn zero_dim_cuspidal_rejected() {
        let g = Arc::new(LieAlgebra::abelian(0));
        let r = crate::repr::trivial(&g, 0);
        assert!(lsa_from_cuspidal(&r, &[]).is_err());
    }

    #[test]
    fn identity_witness_for_equal_algebras() {
        let a = Lsa::matrix_algebra(2);
        let h = lsa_isomorphic(&a, &a, &IsoFamily::default()).unwrap();
        assert_eq!(h, Matrix::identity(4));
    }

    #[test]
    fn matrix_algebra_is_reduced() {
        let a = Lsa::matrix_algebra(2);
        // sl(2): E01, E10, E00 - E11
        let s = vec![
            vec![qi(0), qi(1), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(1), qi(0)],
            vec![qi(1), qi(0), qi(0), qi(-1)],
        ];
        assert_eq!(reduced_split(&a, &s).unwrap(), SplitOutcome::Reduced);
        let b = direct_sum_lsa(&a, &Lsa::zero(1));
        let s5: Vec<Vec<Rational>> = s
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(qi(0));
                w
            })
            .collect();
        match reduced_split(&b, &s5).unwrap() {
            SplitOutcome::Split { ideal, complement } => {
                assert_eq!(ideal.len(), 4);
                assert_eq!(complement, vec![linalg::unit_vector(5, 4)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

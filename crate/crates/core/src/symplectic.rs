//! Symplectic Lie algebras, the double `g + g*` of a left-symmetric algebra, the inverse
//! construction of a left-symmetric product from a symplectic form, and Frobenius
//! functionals.

use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::liealg::{CanonicalLieAlgebra, LieAlgebra};
use crate::linalg::{self, inverse, Matrix, Rational};
use crate::lsa::{is_right_identity, right_identities, validate_lsa, Lsa};

/// A Lie algebra with an antisymmetric Gram matrix `omega[(i, j)] = omega(e_i, e_j)`.
#[derive(Clone, Debug)]
pub struct SymplecticLieAlgebra {
    pub algebra: LieAlgebra,
    pub omega: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymplecticViolation {
    NotAntisymmetric { i: usize, j: usize },
    Degenerate,
    NotClosed { i: usize, j: usize, k: usize },
}

/// `omega(x, y)` for coordinate vectors.
pub fn pairing(omega: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    linalg::dot(x, &omega.mul_vec(y))
}

impl SymplecticLieAlgebra {
    pub fn new(algebra: LieAlgebra, omega: Matrix) -> Result<SymplecticLieAlgebra> {
        let n = algebra.dim();
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::DimensionMismatch(format!("omega must be {n}x{n}")));
        }
        Ok(SymplecticLieAlgebra { algebra, omega })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `d omega (e_i, e_j, e_k) = omega([e_i,e_j],e_k) + omega([e_j,e_k],e_i) + omega([e_k,e_i],e_j)`.
    pub fn d_omega(&self, i: usize, j: usize, k: usize) -> Rational {
        let g = &self.algebra;
        let w = |a: usize, b: usize, c: usize| -> Rational {
            g.bracket_basis(a, b)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(l, x)| x * &self.omega[(l, c)])
                .sum()
        };
        w(i, j, k) + w(j, k, i) + w(k, i, j)
    }

    /// Antisymmetry, nondegeneracy and closedness, checked over all basis triples.
    pub fn violations(&self) -> Vec<SymplecticViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !(&self.omega[(i, j)] + &self.omega[(j, i)]).is_zero() {
                    out.push(SymplecticViolation::NotAntisymmetric { i, j });
                }
            }
        }
        if linalg::rank(&self.omega) != n {
            out.push(SymplecticViolation::Degenerate);
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.d_omega(i, j, k).is_zero() {
                        out.push(SymplecticViolation::NotClosed { i, j, k });
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": CanonicalLieAlgebra::from(&self.algebra),
            "omega": self.omega,
            "frobenius_witness": frobenius_witness(self),
        })
    }
}

/// `g + g*` in the basis `(e_1..e_n, e_1*..e_n*)`, with `[x, v] = L*(x) v`,
/// `(L*(x) v)(y) = -v(x * y)`, `[v, u] = 0`, and `omega(x + u, y + v) = v(x) - u(y)`.
pub fn double(a: &Lsa) -> Result<SymplecticLieAlgebra> {
    if let Some(v) = validate_lsa(a).first() {
        return contract(format!("{} is not left-symmetric: {v:?}", a.name()));
    }
    let n = a.dim();
    let d = 2 * n;
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![Rational::zero(); d];
            for (k, x) in a.adjacent().bracket_basis(i, j).iter().enumerate() {
                v[k] = x.clone();
            }
            brackets.push((i, j, v));
        }
        for j in 0..n {
            // [e_i, e_j*] = -sum_k m[i][k][j] e_k*
            let mut v = vec![Rational::zero(); d];
            for k in 0..n {
                v[n + k] = -a.m(i, k, j);
            }
            brackets.push((i, n + j, v));
        }
    }
    let algebra = LieAlgebra::from_brackets(format!("{}+dual", a.name()), d, &brackets)?;
    let mut omega = Matrix::zeros(d, d);
    for i in 0..n {
        omega[(i, n + i)] = Rational::one();
        omega[(n + i, i)] = -Rational::one();
    }
    SymplecticLieAlgebra::new(algebra, omega)
}

/// The product defined by `omega(x, y * z) = omega([x, y], z)`.
pub fn chu_lsa(s: &SymplecticLieAlgebra) -> Result<Lsa> {
    let n = s.dim();
    let Some(inv) = inverse(&s.omega) else {
        return contract("omega is degenerate");
    };
    let mut mult = vec![Rational::zero(); n * n * n];
    for j in 0..n {
        for k in 0..n {
            // b_i = omega([e_i, e_j], e_k) and omega w = b
            let b: Vec<Rational> = (0..n)
                .map(|i| {
                    s.algebra
                        .bracket_basis(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(l, x)| x * &s.omega[(l, k)])
                        .sum()
                })
                .collect();
            let w = inv.mul_vec(&b);
            for (m, x) in w.into_iter().enumerate() {
                mult[(j * n + k) * n + m] = x;
            }
        }
    }
    Lsa::from_tensor(format!("chu({})", s.algebra.name()), n, mult)
}

/// The first `n` coordinates of the product restricted to the first `n` basis vectors.
pub fn restrict_to_first_block(a: &Lsa, n: usize) -> Result<Lsa> {
    let d = a.dim();
    if n > d {
        return contract("block larger than the algebra");
    }
    let mut mult = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let p = a.product_basis(i, j);
            if p[n..].iter().any(|x| !x.is_zero()) {
                return contract(format!("e{i}*e{j} leaves the first block"));
            }
            for k in 0..n {
                mult[(i * n + j) * n + k] = p[k].clone();
            }
        }
    }
    Lsa::from_tensor(format!("{}|{n}", a.name()), n, mult)
}

/// Some `f` with `f([e_i, e_j]) = omega(e_i, e_j)` for all `i < j`.
pub fn frobenius_witness(s: &SymplecticLieAlgebra) -> Option<Vec<Rational>> {
    let n = s.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if pairs.is_empty() {
        return Some(vec![Rational::zero(); n]);
    }
    let sys = Matrix::from_fn(pairs.len(), n, |r, k| s.algebra.c(pairs[r].0, pairs[r].1, k).clone());
    let rhs: Vec<Rational> = pairs.iter().map(|&(i, j)| s.omega[(i, j)].clone()).collect();
    linalg::solve(&sys, &rhs).expect("consistent shapes")
}

/// Whether `f([x, y]) = omega(x, y)` on all basis pairs.
pub fn is_primitive(s: &SymplecticLieAlgebra, f: &[Rational]) -> bool {
    let n = s.dim();
    (0..n).all(|i| {
        (0..n).all(|j| linalg::dot(f, s.algebra.bracket_basis(i, j)) == s.omega[(i, j)])
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub has_right_identity: bool,
    pub is_frobenius: bool,
    /// `f(z) = omega(z, e)` built from the right identity, checked to satisfy `df = omega`.
    pub explicit_functional: Option<Vec<Rational>>,
    pub explicit_functional_ok: bool,
    pub agree: bool,
}

pub fn frobenius_iff_right_identity(a: &Lsa) -> Result<FrobeniusReport> {
    let s = double(a)?;
    let n = a.dim();
    let ids = right_identities(a);
    let witness = frobenius_witness(&s);
    let mut explicit = None;
    let mut explicit_ok = true;
    if let Some(sol) = &ids {
        debug_assert!(is_right_identity(a, &sol.particular));
        let mut e = sol.particular.clone();
        e.extend(vec![Rational::zero(); n]);
        let f: Vec<Rational> = (0..2 * n)
            .map(|z| pairing(&s.omega, &linalg::unit_vector(2 * n, z), &e))
            .collect();
        explicit_ok = is_primitive(&s, &f);
        explicit = Some(f);
    }
    let has = ids.is_some();
    let frob = witness.is_some();
    Ok(FrobeniusReport {
        has_right_identity: has,
        is_frobenius: frob,
        explicit_functional: explicit,
        explicit_functional_ok: explicit_ok,
        agree: has == frob && explicit_ok,
    })
}

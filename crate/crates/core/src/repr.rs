//! Finite-dimensional representations given by one action matrix per basis vector.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::liealg::{direct_sum, same_algebra, CanonicalLieAlgebra, LieAlgebra};
use crate::linalg::{self, inverse, pivot_columns, rank, Matrix, Rational};

/// `action[i]` is the matrix of `drho(e_i)` on a space of dimension `space_dim`.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    space_dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Representation) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.space_dim == other.space_dim
            && self.action == other.action
    }
}

impl Representation {
    /// Checks shapes only; use [`validate_rep`] for the homomorphism property.
    pub fn new(algebra: Arc<LieAlgebra>, space_dim: usize, action: Vec<Matrix>) -> Result<Representation> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(i) = action
            .iter()
            .position(|m| m.rows() != space_dim || m.cols() != space_dim)
        {
            return Err(Error::DimensionMismatch(format!(
                "action matrix {i} is not {space_dim}x{space_dim}"
            )));
        }
        Ok(Representation {
            algebra,
            space_dim,
            action,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `drho(x)` for `x` given in coordinates.
    pub fn act(&self, x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.action.len(), "element length");
        let mut out = Matrix::zeros(self.space_dim, self.space_dim);
        for (c, a) in x.iter().zip(&self.action) {
            out.add_scaled(c, a);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Json<'a> {
            algebra: CanonicalLieAlgebra,
            space_dim: usize,
            action: &'a [Matrix],
        }
        serde_json::to_value(Json {
            algebra: CanonicalLieAlgebra::from(&*self.algebra),
            space_dim: self.space_dim,
            action: &self.action,
        })
        .expect("serializable")
    }
}

/// Commuting matrices giving the action of the basis of `gl(1)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterTwist {
    pub matrices: Vec<Matrix>,
}

impl CenterTwist {
    pub fn new(matrices: Vec<Matrix>) -> CenterTwist {
        CenterTwist { matrices }
    }

    /// A single scalar center acting by the identity.
    pub fn scalar(d: usize) -> CenterTwist {
        CenterTwist {
            matrices: vec![Matrix::identity(d)],
        }
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }
}

/// The defining representation of a classical algebra.
pub fn standard(g: &Arc<LieAlgebra>) -> Result<Representation> {
    let (Some(basis), Some(d)) = (g.matrix_basis(), g.defining_dim()) else {
        return contract(format!("{} has no defining matrix basis", g.name()));
    };
    Representation::new(Arc::clone(g), d, basis.to_vec())
}

pub fn trivial(g: &Arc<LieAlgebra>, d: usize) -> Representation {
    Representation {
        algebra: Arc::clone(g),
        space_dim: d,
        action: vec![Matrix::zeros(d, d); g.dim()],
    }
}

pub fn adjoint(g: &Arc<LieAlgebra>) -> Representation {
    Representation {
        algebra: Arc::clone(g),
        space_dim: g.dim(),
        action: (0..g.dim()).map(|i| g.ad(i)).collect(),
    }
}

pub fn coadjoint(g: &Arc<LieAlgebra>) -> Representation {
    dual(&adjoint(g))
}

/// `action'[i] = -action[i]^T`.
pub fn dual(r: &Representation) -> Representation {
    Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: r.space_dim,
        action: r.action.iter().map(|a| a.transpose().neg()).collect(),
    }
}

fn leibniz(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.rows(), b.rows());
    let left = if a.is_zero() {
        Matrix::zeros(da * db, da * db)
    } else {
        a.kron(&Matrix::identity(db))
    };
    if b.is_zero() {
        left
    } else {
        left.add(&Matrix::identity(da).kron(b))
    }
}

/// Tensor product over a common algebra; `(a, b)` sits at index `a * s.space_dim + b`.
pub fn tensor(r: &Representation, s: &Representation) -> Result<Representation> {
    if !same_algebra(&r.algebra, &s.algebra) {
        return contract(format!(
            "tensor of representations of {} and {}; use external_tensor or lift",
            r.algebra.name(),
            s.algebra.name()
        ));
    }
    Ok(Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: r.space_dim * s.space_dim,
        action: r
            .action
            .iter()
            .zip(&s.action)
            .map(|(a, b)| leibniz(a, b))
            .collect(),
    })
}

/// Representation of `total` that lets the block `offset..offset + dim` act through `r`
/// and every other basis vector act by zero.
pub fn lift(r: &Representation, total: &Arc<LieAlgebra>, offset: usize) -> Result<Representation> {
    let m = r.algebra.dim();
    if offset + m > total.dim() {
        return contract("lift: block exceeds the target algebra");
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..total.dim() {
                let expected = if (offset..offset + m).contains(&k) {
                    r.algebra.c(i, j, k - offset).clone()
                } else {
                    Rational::zero()
                };
                if *total.c(offset + i, offset + j, k) != expected {
                    return contract(format!(
                        "lift: {} is not the block at offset {offset} of {}",
                        r.algebra.name(),
                        total.name()
                    ));
                }
            }
        }
    }
    let d = r.space_dim;
    let mut action = vec![Matrix::zeros(d, d); total.dim()];
    for (i, a) in r.action.iter().enumerate() {
        action[offset + i] = a.clone();
    }
    Ok(Representation {
        algebra: Arc::clone(total),
        space_dim: d,
        action,
    })
}

/// `drho(x, y) = rho(x) (x) I + I (x) sigma(y)` over `r.algebra + s.algebra`.
pub fn external_tensor(r: &Representation, s: &Representation) -> Representation {
    let total = Arc::new(direct_sum(&r.algebra, &s.algebra));
    let lr = lift(r, &total, 0).expect("first block of a direct sum");
    let ls = lift(s, &total, r.algebra.dim()).expect("second block of a direct sum");
    tensor(&lr, &ls).expect("same algebra")
}

/// Non-decreasing (`strict = false`) or increasing (`strict = true`) `k`-tuples from `0..d`,
/// in lexicographic order.
fn index_tuples(d: usize, k: usize, strict: bool) -> Vec<Vec<usize>> {
    fn rec(d: usize, k: usize, strict: bool, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(d, k, strict, if strict { a + 1 } else { a }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, strict, 0, &mut Vec::new(), &mut out);
    out
}

/// Sorts `idx` and returns the sign of the sorting permutation; `None` on a repeated index.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, negative))
}

fn power_action(a: &Matrix, basis: &[Vec<usize>], index: &HashMap<Vec<usize>, usize>, alternating: bool) -> Matrix {
    let dim = basis.len();
    let d = a.rows();
    let mut out = Matrix::zeros(dim, dim);
    for (col, mono) in basis.iter().enumerate() {
        for t in 0..mono.len() {
            let src = mono[t];
            for c in 0..d {
                let coef = &a[(c, src)];
                if coef.is_zero() {
                    continue;
                }
                let mut img = mono.clone();
                img[t] = c;
                if alternating {
                    if let Some((sorted, negative)) = sort_with_sign(img) {
                        let row = index[&sorted];
                        if negative {
                            out[(row, col)] -= coef;
                        } else {
                            out[(row, col)] += coef;
                        }
                    }
                } else {
                    img.sort_unstable();
                    out[(index[&img], col)] += coef;
                }
            }
        }
    }
    out
}

fn power(r: &Representation, k: usize, alternating: bool) -> Result<Representation> {
    if k == 0 {
        return contract("tensor power of degree zero");
    }
    if alternating && r.space_dim < k {
        return contract(format!(
            "exterior power of degree {k} needs dimension at least {k}, got {}",
            r.space_dim
        ));
    }
    let basis = index_tuples(r.space_dim, k, alternating);
    let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    Ok(Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: basis.len(),
        action: r
            .action
            .iter()
            .map(|a| power_action(a, &basis, &index, alternating))
            .collect(),
    })
}

/// Symmetric power on monomials `e_a1 ... e_ak` with `a1 <= ... <= ak`, lexicographic.
pub fn sym_power(r: &Representation, k: usize) -> Result<Representation> {
    power(r, k, false)
}

/// Exterior power on `e_a1 ^ ... ^ e_ak` with `a1 < ... < ak`, lexicographic.
pub fn alt_power(r: &Representation, k: usize) -> Result<Representation> {
    power(r, k, true)
}

pub fn sym_square(r: &Representation) -> Representation {
    power(r, 2, false).expect("degree 2")
}

pub fn alt_square(r: &Representation) -> Result<Representation> {
    power(r, 2, true)
}

pub fn sym_cube(r: &Representation) -> Representation {
    power(r, 3, false).expect("degree 3")
}

pub fn alt_cube(r: &Representation) -> Result<Representation> {
    power(r, 3, true)
}

/// Index of `e_a1 ^ ... ^ e_ak` in the exterior power basis of a `d`-dimensional space.
pub fn alt_index(d: usize, idx: &[usize]) -> Option<usize> {
    index_tuples(d, idx.len(), true).iter().position(|t| t == idx)
}

/// Coordinates of `w ^ e_I` in the exterior power of degree `2 + |I|`, where
/// `w = sum_{a<b} w[(a,b)] e_a ^ e_b`.
pub fn wedge_with_bivector(d: usize, w: &Matrix, rest: &[usize]) -> Vec<Rational> {
    let k = rest.len() + 2;
    let basis = index_tuples(d, k, true);
    let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = vec![Rational::zero(); basis.len()];
    for a in 0..d {
        for b in a + 1..d {
            let c = &w[(a, b)];
            if c.is_zero() {
                continue;
            }
            let mut idx = vec![a, b];
            idx.extend_from_slice(rest);
            if let Some((sorted, negative)) = sort_with_sign(idx) {
                let pos = index[&sorted];
                if negative {
                    out[pos] -= c;
                } else {
                    out[pos] += c;
                }
            }
        }
    }
    out
}

/// Block-diagonal action on `V (+) W`.
pub fn direct_sum_rep(r: &Representation, s: &Representation) -> Result<Representation> {
    if !same_algebra(&r.algebra, &s.algebra) {
        return contract(format!(
            "direct sum of representations of {} and {}",
            r.algebra.name(),
            s.algebra.name()
        ));
    }
    Ok(Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: r.space_dim + s.space_dim,
        action: r
            .action
            .iter()
            .zip(&s.action)
            .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()]))
            .collect(),
    })
}

/// Extends `r.algebra` by `k` central basis vectors (appended last) acting through `tw`.
pub fn with_center(r: &Representation, tw: &CenterTwist) -> Result<Representation> {
    let d = r.space_dim;
    for (a, t) in tw.matrices.iter().enumerate() {
        if t.rows() != d || t.cols() != d {
            return Err(Error::DimensionMismatch(format!("twist matrix {a} is not {d}x{d}")));
        }
        for (i, m) in r.action.iter().enumerate() {
            if !t.commutator(m).is_zero() {
                return contract(format!(
                    "twist matrix {a} does not commute with action matrix {i}"
                ));
            }
        }
        for b in 0..a {
            if !t.commutator(&tw.matrices[b]).is_zero() {
                return contract(format!("twist matrices {b} and {a} do not commute"));
            }
        }
    }
    let k = tw.k();
    let center = LieAlgebra::abelian(k).with_name(format!("gl(1)^{k}"));
    let algebra = Arc::new(direct_sum(&r.algebra, &center));
    let mut action = r.action.clone();
    action.extend(tw.matrices.iter().cloned());
    Ok(Representation {
        algebra,
        space_dim: d,
        action,
    })
}

/// Pairs `(i, j)`, `i < j`, where `drho([e_i, e_j]) != [drho(e_i), drho(e_j)]`.
pub fn validate_rep(r: &Representation) -> Vec<(usize, usize)> {
    let n = r.action.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = r.act(r.algebra.bracket_basis(i, j));
            if lhs != r.action[i].commutator(&r.action[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Vectors killed by every action matrix.
pub fn invariant_vectors(r: &Representation) -> Vec<Vec<Rational>> {
    if r.action.is_empty() {
        return (0..r.space_dim).map(|i| linalg::unit_vector(r.space_dim, i)).collect();
    }
    linalg::nullspace(&Matrix::vstack(&r.action))
}

/// A basis `W` of `span(sub)` (a subset of `sub`) and the inverse of the adapted basis
/// `[W | C]`, where `C` are standard basis vectors completing `W`.
struct Adapted {
    sub: Vec<Vec<Rational>>,
    basis: Matrix,
    inv: Matrix,
}

fn adapted_basis(r: &Representation, sub: &[Vec<Rational>]) -> Result<Adapted> {
    let d = r.space_dim;
    if let Some(i) = sub.iter().position(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!("submodule vector {i} has wrong length")));
    }
    let independent: Vec<Vec<Rational>> = if sub.is_empty() {
        Vec::new()
    } else {
        pivot_columns(&Matrix::from_columns(d, sub))
            .into_iter()
            .map(|c| sub[c].clone())
            .collect()
    };
    let s = independent.len();
    let w = Matrix::from_columns(d, &independent);
    for (i, a) in r.action.iter().enumerate() {
        for (j, v) in independent.iter().enumerate() {
            let img = a.mul_vec(v);
            if linalg::is_zero_vec(&img) {
                continue;
            }
            let mut cols = independent.clone();
            cols.push(img);
            if rank(&Matrix::from_columns(d, &cols)) > s {
                return contract(format!(
                    "submodule is not invariant: action matrix {i} moves submodule vector {j} outside the span"
                ));
            }
        }
    }
    let mut all = independent.clone();
    all.extend((0..d).map(|i| linalg::unit_vector(d, i)));
    let chosen: Vec<Vec<Rational>> = pivot_columns(&Matrix::from_columns(d, &all))
        .into_iter()
        .map(|c| all[c].clone())
        .collect();
    debug_assert_eq!(chosen.len(), d);
    debug_assert_eq!(w.cols(), s);
    let basis = Matrix::from_columns(d, &chosen);
    let inv = inverse(&basis).expect("adapted basis is invertible");
    Ok(Adapted {
        sub: independent,
        basis,
        inv,
    })
}

/// Induced action on `V / span(sub)`, in the basis of the completing standard vectors.
pub fn quotient_rep(r: &Representation, sub: &[Vec<Rational>]) -> Result<Representation> {
    let ad = adapted_basis(r, sub)?;
    let s = ad.sub.len();
    let d = r.space_dim;
    let q = d - s;
    let action = r
        .action
        .iter()
        .map(|a| {
            let conj = ad.inv.mul(&a.mul(&ad.basis));
            Matrix::from_fn(q, q, |i, j| conj[(s + i, s + j)].clone())
        })
        .collect();
    Ok(Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: q,
        action,
    })
}

/// Restricted action on `span(sub)`, in the basis formed by an independent subset of `sub`.
pub fn subrepresentation(r: &Representation, sub: &[Vec<Rational>]) -> Result<Representation> {
    let ad = adapted_basis(r, sub)?;
    let s = ad.sub.len();
    let action = r
        .action
        .iter()
        .map(|a| {
            let conj = ad.inv.mul(&a.mul(&ad.basis));
            Matrix::from_fn(s, s, |i, j| conj[(i, j)].clone())
        })
        .collect();
    Ok(Representation {
        algebra: Arc::clone(&r.algebra),
        space_dim: s,
        action,
    })
}

/// Restriction to the subalgebra spanned by `basis` (coordinates in `r.algebra`).
pub fn restrict(r: &Representation, name: &str, basis: &[Vec<Rational>]) -> Result<Representation> {
    let h = Arc::new(r.algebra.subalgebra(name, basis)?);
    let action = basis.iter().map(|x| r.act(x)).collect();
    Representation::new(h, r.space_dim, action)
}

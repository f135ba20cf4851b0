//! Lie algebras given by dense structure constants.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::linalg::{self, inverse, pivot_columns, rank, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalFamily {
    Gl,
    Sl,
    So,
    Sp,
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalFamily::Gl => "gl",
            ClassicalFamily::Sl => "sl",
            ClassicalFamily::So => "so",
            ClassicalFamily::Sp => "sp",
        })
    }
}

/// `[e_i, e_j] = sum_k c[i][j][k] e_k`, stored densely at `(i * dim + j) * dim + k`.
#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    structure: Vec<Rational>,
    matrix_basis: Option<Vec<Matrix>>,
    defining_dim: usize,
}

impl PartialEq for LieAlgebra {
    /// Equality of structure constants; names and matrix realisations are ignored.
    fn eq(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.structure == other.structure
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    /// `c[i][j][k] + c[j][i][k] != 0`, reported with `i <= j`.
    Antisymmetry { i: usize, j: usize, k: usize },
    /// The cyclic Jacobi sum for `i < j < k` is nonzero.
    Jacobi { i: usize, j: usize, k: usize },
}

impl LieAlgebra {
    /// Raw tensor constructor; no invariant is checked (see [`LieAlgebra::validate`]).
    pub fn from_tensor(name: impl Into<String>, dim: usize, structure: Vec<Rational>) -> Result<LieAlgebra> {
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor has {} entries, expected {}",
                structure.len(),
                dim * dim * dim
            )));
        }
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            structure,
            matrix_basis: None,
            defining_dim: 0,
        })
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v` for every listed `(i, j, v)`.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<LieAlgebra> {
        let mut structure = vec![Rational::zero(); dim * dim * dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket [{i},{j}] does not fit dimension {dim}"
                )));
            }
            for (k, x) in v.iter().enumerate() {
                structure[(i * dim + j) * dim + k] = x.clone();
                structure[(j * dim + i) * dim + k] = -x;
            }
        }
        LieAlgebra::from_tensor(name, dim, structure)
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra {
            name: format!("abelian({dim})"),
            dim,
            structure: vec![Rational::zero(); dim * dim * dim],
            matrix_basis: None,
            defining_dim: 0,
        }
    }

    /// Structure constants of the span of the given matrices under the commutator.
    ///
    /// Fails when the matrices are dependent or their span is not closed.
    pub fn from_matrix_basis(name: impl Into<String>, basis: Vec<Matrix>) -> Result<LieAlgebra> {
        let dim = basis.len();
        let defining_dim = basis.first().map_or(0, Matrix::rows);
        if basis.iter().any(|m| !m.is_square()) {
            return contract("matrix basis elements must be square");
        }
        let coords = MatrixCoordinates::new(&basis)?;
        let mut structure = vec![Rational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = basis[i].commutator(&basis[j]);
                let x = coords.coords(&c).ok_or_else(|| {
                    Error::Contract(format!("commutator of basis matrices {i} and {j} leaves the span"))
                })?;
                for (k, v) in x.into_iter().enumerate() {
                    if !v.is_zero() {
                        structure[(j * dim + i) * dim + k] = -&v;
                        structure[(i * dim + j) * dim + k] = v;
                    }
                }
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            structure,
            matrix_basis: Some(basis),
            defining_dim,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[Rational] {
        &self.structure
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.structure[start..start + self.dim]
    }

    /// The defining matrices when the algebra was built from a matrix basis.
    pub fn matrix_basis(&self) -> Option<&[Matrix]> {
        self.matrix_basis.as_deref()
    }

    /// Size of the defining matrices when a matrix basis is attached.
    pub fn defining_dim(&self) -> Option<usize> {
        self.matrix_basis.as_ref().map(|_| self.defining_dim)
    }

    pub fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim, "element length");
        assert_eq!(y.len(), self.dim, "element length");
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !c.is_zero() {
                        *o += c * &s;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.c(i, j, k).clone())
    }

    fn sparse_brackets(&self) -> Vec<Vec<(usize, &Rational)>> {
        let n = self.dim;
        (0..n * n)
            .map(|ij| {
                self.structure[ij * n..(ij + 1) * n]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Every antisymmetry and Jacobi failure; empty means the tensor is a Lie algebra.
    pub fn validate(&self) -> Vec<StructureViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if !(self.c(i, j, k) + self.c(j, i, k)).is_zero() {
                        out.push(StructureViolation::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        let sparse = self.sparse_brackets();
        let mut acc = vec![Rational::zero(); n];
        // [[a,b],c] = sum_l c[a][b][l] [e_l, e_c]
        let add_term = |acc: &mut Vec<Rational>, a: usize, b: usize, c: usize| {
            for &(l, cab) in &sparse[a * n + b] {
                for &(m, clc) in &sparse[l * n + c] {
                    acc[m] += cab * clc;
                }
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    acc.iter_mut().for_each(|x| *x = Rational::zero());
                    add_term(&mut acc, i, j, k);
                    add_term(&mut acc, j, k, i);
                    add_term(&mut acc, k, i, j);
                    if !linalg::is_zero_vec(&acc) {
                        out.push(StructureViolation::Jacobi { i, j, k });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `dim span { [e_i, e_j] }`.
    pub fn derived_subalgebra_dim(&self) -> usize {
        let n = self.dim;
        let rows: Vec<Vec<Rational>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j).to_vec())
            .filter(|v| !linalg::is_zero_vec(v))
            .collect();
        if rows.is_empty() {
            return 0;
        }
        rank(&Matrix::from_rows(rows))
    }

    /// Basis of `{ x : [e_i, x] = 0 for all i }`.
    pub fn center_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        if n == 0 {
            return Vec::new();
        }
        let stacked = Matrix::vstack(&(0..n).map(|i| self.ad(i)).collect::<Vec<_>>());
        linalg::nullspace(&stacked)
    }

    /// Whether basis vector `i` is central.
    pub fn is_central_basis_vector(&self, i: usize) -> bool {
        (0..self.dim).all(|j| linalg::is_zero_vec(self.bracket_basis(i, j)))
    }

    /// The subalgebra spanned by `basis` (coordinates in this algebra), expressed in that basis.
    pub fn subalgebra(&self, name: impl Into<String>, basis: &[Vec<Rational>]) -> Result<LieAlgebra> {
        let m = basis.len();
        if m == 0 {
            return Ok(LieAlgebra::abelian(0).with_name(name));
        }
        let cols = Matrix::from_columns(self.dim, basis);
        if rank(&cols) != m {
            return contract("subalgebra basis is linearly dependent");
        }
        let mut structure = vec![Rational::zero(); m * m * m];
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket_coords(&basis[a], &basis[b]);
                let x = linalg::solve(&cols, &br)?.ok_or_else(|| {
                    Error::Contract(format!("subalgebra basis not closed: [b{a}, b{b}] leaves the span"))
                })?;
                for (k, v) in x.into_iter().enumerate() {
                    structure[(b * m + a) * m + k] = -&v;
                    structure[(a * m + b) * m + k] = v;
                }
            }
        }
        LieAlgebra::from_tensor(name, m, structure)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CanonicalLieAlgebra::from(self)).expect("serializable")
    }
}

/// Canonical serialized form: nonzero structure constants as `(i, j, k, "p/q")`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalLieAlgebra {
    pub name: String,
    pub dim: usize,
    pub structure: Vec<(usize, usize, usize, Rational)>,
}

impl From<&LieAlgebra> for CanonicalLieAlgebra {
    fn from(g: &LieAlgebra) -> CanonicalLieAlgebra {
        let n = g.dim;
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = g.c(i, j, k);
                    if !c.is_zero() {
                        structure.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        CanonicalLieAlgebra {
            name: g.name.clone(),
            dim: n,
            structure,
        }
    }
}

impl TryFrom<CanonicalLieAlgebra> for LieAlgebra {
    type Error = Error;
    fn try_from(c: CanonicalLieAlgebra) -> Result<LieAlgebra> {
        let n = c.dim;
        let mut structure = vec![Rational::zero(); n * n * n];
        for (i, j, k, v) in c.structure {
            if i >= n || j >= n || k >= n {
                return Err(Error::DimensionMismatch(format!("index ({i},{j},{k}) out of range")));
            }
            structure[(i * n + j) * n + k] = v;
        }
        LieAlgebra::from_tensor(c.name, n, structure)
    }
}

/// Recovers coordinates of a matrix in a fixed linearly independent matrix basis.
pub struct MatrixCoordinates {
    shape: (usize, usize),
    positions: Vec<(usize, usize)>,
    inv: Matrix,
    basis: Vec<Matrix>,
}

impl MatrixCoordinates {
    pub fn new(basis: &[Matrix]) -> Result<MatrixCoordinates> {
        let dim = basis.len();
        let shape = basis.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        if basis.iter().any(|m| (m.rows(), m.cols()) != shape) {
            return contract("matrix basis elements have different shapes");
        }
        let flat = Matrix::from_rows(basis.iter().map(|m| m.entries().to_vec()).collect());
        let pivots = if dim == 0 { Vec::new() } else { pivot_columns(&flat) };
        if pivots.len() != dim {
            return contract("matrix basis is linearly dependent");
        }
        let width = shape.1;
        let positions: Vec<(usize, usize)> = pivots.iter().map(|&p| (p / width, p % width)).collect();
        // p[r][i] = basis_i at position r; coordinates solve p x = X restricted to positions
        let p = Matrix::from_fn(dim, dim, |r, i| basis[i][positions[r]].clone());
        let inv = inverse(&p).expect("pivot positions give an invertible minor");
        Ok(MatrixCoordinates {
            shape,
            positions,
            inv,
            basis: basis.to_vec(),
        })
    }

    /// Coordinates of `m`, or `None` when `m` is outside the span.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<Rational>> {
        assert_eq!((m.rows(), m.cols()), self.shape, "matrix shape");
        let restricted: Vec<Rational> = self.positions.iter().map(|&pos| m[pos].clone()).collect();
        let x = self.inv.mul_vec(&restricted);
        let mut recon = Matrix::zeros(self.shape.0, self.shape.1);
        for (c, b) in x.iter().zip(&self.basis) {
            recon.add_scaled(c, b);
        }
        (recon == *m).then_some(x)
    }
}

/// Basis of the defining matrices of a classical family, in the documented order.
pub fn classical_matrix_basis(family: ClassicalFamily, n: usize) -> Vec<Matrix> {
    let unit = Matrix::unit;
    match family {
        ClassicalFamily::Gl => (0..n)
            .flat_map(|p| (0..n).map(move |q| unit(n, p, q)))
            .collect(),
        ClassicalFamily::Sl => {
            let mut b: Vec<Matrix> = (0..n)
                .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| unit(n, p, q)))
                .collect();
            for i in 0..n.saturating_sub(1) {
                b.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
            }
            b
        }
        ClassicalFamily::So => (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| unit(n, p, q).sub(&unit(n, q, p))))
            .collect(),
        ClassicalFamily::Sp => {
            let d = 2 * n;
            let mut b = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    b.push(unit(d, p, q).sub(&unit(d, n + q, n + p)));
                }
            }
            for p in 0..n {
                for q in p..n {
                    let mut m = unit(d, p, n + q);
                    m[(q, n + p)] = Rational::one();
                    b.push(m);
                }
            }
            for p in 0..n {
                for q in p..n {
                    let mut m = unit(d, n + p, q);
                    m[(n + q, p)] = Rational::one();
                    b.push(m);
                }
            }
            b
        }
    }
}

/// The Gram matrix `J = [[0, I], [-I, 0]]` preserved by `sp(n)`.
pub fn symplectic_gram(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Rational::one();
        j[(n + i, i)] = -Rational::one();
    }
    j
}

/// Classical Lie algebra with its defining matrix basis attached.
pub fn construct_classical(family: ClassicalFamily, n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return contract(format!("{family}(0) is not defined"));
    }
    let basis = classical_matrix_basis(family, n);
    if basis.is_empty() {
        // sl(1) and so(1) are zero; keep the 1x1 shape for the standard representation
        return Ok(LieAlgebra {
            name: format!("{family}({n})"),
            dim: 0,
            structure: Vec::new(),
            matrix_basis: Some(Vec::new()),
            defining_dim: n,
        });
    }
    LieAlgebra::from_matrix_basis(format!("{family}({n})"), basis)
}

/// Block-diagonal structure constants; the basis of `g` comes first.
pub fn direct_sum(g: &LieAlgebra, h: &LieAlgebra) -> LieAlgebra {
    let (a, b) = (g.dim, h.dim);
    let n = a + b;
    let mut structure = vec![Rational::zero(); n * n * n];
    for i in 0..a {
        for j in 0..a {
            for k in 0..a {
                let c = g.c(i, j, k);
                if !c.is_zero() {
                    structure[(i * n + j) * n + k] = c.clone();
                }
            }
        }
    }
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                let c = h.c(i, j, k);
                if !c.is_zero() {
                    structure[((a + i) * n + a + j) * n + a + k] = c.clone();
                }
            }
        }
    }
    LieAlgebra {
        name: format!("{}+{}", g.name, h.name),
        dim: n,
        structure,
        matrix_basis: None,
        defining_dim: 0,
    }
}

/// An element of a shared algebra.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<LieAlgebra>,
    coords: Vec<Rational>,
}

impl Element {
    pub fn new(algebra: Arc<LieAlgebra>, coords: Vec<Rational>) -> Result<Element> {
        if coords.len() != algebra.dim {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra {} has dimension {}",
                coords.len(),
                algebra.name,
                algebra.dim
            )));
        }
        Ok(Element { algebra, coords })
    }

    pub fn basis(algebra: &Arc<LieAlgebra>, i: usize) -> Element {
        Element {
            algebra: Arc::clone(algebra),
            coords: linalg::unit_vector(algebra.dim, i),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

pub fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn bracket(x: &Element, y: &Element) -> Result<Element> {
    if !same_algebra(&x.algebra, &y.algebra) {
        return contract(format!(
            "bracket of elements from {} and {}",
            x.algebra.name, y.algebra.name
        ));
    }
    Ok(Element {
        algebra: Arc::clone(&x.algebra),
        coords: x.algebra.bracket_coords(&x.coords, &y.coords),
    })
}

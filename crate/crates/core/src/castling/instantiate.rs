use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Factor, Family, Label, TripletDescriptor};
use crate::error::{Error, Result};
use crate::liealg::{construct_classical, direct_sum, symplectic_gram, ClassicalFamily, LieAlgebra};
use crate::linalg::{inverse, Matrix};
use crate::repr::{
    alt_power, direct_sum_rep, dual, lift, quotient_rep, standard, sym_power, tensor, trivial,
    wedge_with_bivector, with_center, CenterTwist, Representation,
};

/// How the center acts on the `tau` slot of one summand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistBlock {
    /// No center acts.
    None,
    /// One center acting by the identity.
    Scalar,
    /// The identity plus every `E_pq` with `p < a <= q` on `tau(d)`: `1 + a (d - a)` centers.
    UpperBlock(usize),
    /// One center per listed `d x d` matrix.
    Explicit(Vec<Matrix>),
}

impl TwistBlock {
    pub fn center_count(&self, tau: usize) -> usize {
        match self {
            TwistBlock::None => 0,
            TwistBlock::Scalar => 1,
            TwistBlock::UpperBlock(a) => 1 + a * (tau - a.min(&tau)),
            TwistBlock::Explicit(ms) => ms.len(),
        }
    }

    fn matrices(&self, tau: usize) -> Result<Vec<Matrix>> {
        match self {
            TwistBlock::None => Ok(Vec::new()),
            TwistBlock::Scalar => Ok(vec![Matrix::identity(tau)]),
            TwistBlock::UpperBlock(a) => {
                if *a == 0 || *a >= tau {
                    return Err(Error::NotInstantiable(format!(
                        "upper_block({a}) needs 0 < a < {tau}"
                    )));
                }
                let mut out = vec![Matrix::identity(tau)];
                for p in 0..*a {
                    for q in *a..tau {
                        out.push(Matrix::unit(tau, p, q));
                    }
                }
                Ok(out)
            }
            TwistBlock::Explicit(ms) => {
                if let Some(i) = ms.iter().position(|m| m.rows() != tau || m.cols() != tau) {
                    return Err(Error::DimensionMismatch(format!(
                        "explicit twist matrix {i} is not {tau}x{tau}"
                    )));
                }
                Ok(ms.clone())
            }
        }
    }
}

/// One block per summand; together they generate the `GL(1)^k` action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistSpec {
    pub blocks: Vec<TwistBlock>,
}

impl TwistSpec {
    pub fn new(blocks: Vec<TwistBlock>) -> TwistSpec {
        TwistSpec { blocks }
    }

    pub fn center_count(&self, t: &TripletDescriptor) -> usize {
        self.blocks
            .iter()
            .zip(&t.summands)
            .map(|(b, s)| b.center_count(s.tau))
            .sum()
    }
}

/// No center when `k = 0`; one scalar per summand when `k` equals the number of summands.
pub fn default_twist(t: &TripletDescriptor) -> Result<TwistSpec> {
    let n = t.summands.len();
    if t.center == 0 {
        Ok(TwistSpec::new(vec![TwistBlock::None; n]))
    } else if t.center == n {
        Ok(TwistSpec::new(vec![TwistBlock::Scalar; n]))
    } else {
        Err(Error::NotInstantiable(format!(
            "GL(1)^{} over {n} summands needs an explicit twist",
            t.center
        )))
    }
}

fn classical(f: &Factor) -> Result<ClassicalFamily> {
    match f.family {
        Family::Gl => Ok(ClassicalFamily::Gl),
        Family::Sl => Ok(ClassicalFamily::Sl),
        Family::So => Ok(ClassicalFamily::So),
        Family::Sp => Ok(ClassicalFamily::Sp),
        _ => Err(Error::NotInstantiable(format!("factor {f} is not constructed"))),
    }
}

/// `L_k` of `sp(n)`: the exterior power modulo `omega ^ (k-2 forms)`.
fn sp_primitive(std: &Representation, n: usize, k: usize) -> Result<Representation> {
    let wedge = alt_power(std, k)?;
    // the invariant bivector is the inverse Gram matrix
    let w = inverse(&symplectic_gram(n)).expect("symplectic Gram matrix is invertible");
    let d = 2 * n;
    let mut sub = Vec::new();
    let mut rest: Vec<usize> = (0..k - 2).collect();
    loop {
        sub.push(wedge_with_bivector(d, &w, &rest));
        // next increasing (k-2)-tuple
        let m = rest.len();
        let Some(i) = (0..m).rev().find(|&i| rest[i] < d - m + i) else {
            break;
        };
        rest[i] += 1;
        for j in i + 1..m {
            rest[j] = rest[j - 1] + 1;
        }
    }
    quotient_rep(&wedge, &sub)
}

fn label_rep(g: &Arc<LieAlgebra>, f: &Factor, l: &Label) -> Result<Representation> {
    let (base, dualize) = match *l {
        Label::Trivial => return Ok(trivial(g, 1)),
        Label::Alt { k, dual } => {
            let std = standard(g)?;
            let r = if k == 1 {
                std
            } else if f.family == Family::Sp {
                sp_primitive(&std, f.rank, k)?
            } else {
                alt_power(&std, k)?
            };
            (r, dual)
        }
        Label::Sym { k, dual } => (sym_power(&standard(g)?, k)?, dual),
        Label::Spin { .. } => return Err(Error::NotInstantiable(format!("label {l} is not constructed"))),
    };
    Ok(if dualize { dual(&base) } else { base })
}

/// Explicit representation of `t`; the algebra basis lists the factors in order, then the
/// center. On a summand with `tau(d)` the center acts by `I (x) T` with the `tau` slot last.
pub fn instantiate(t: &TripletDescriptor, twist: &TwistSpec) -> Result<Representation> {
    t.validate().map_err(Error::Contract)?;
    t.instantiable().map_err(Error::NotInstantiable)?;
    if twist.blocks.len() != t.summands.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} twist blocks for {} summands",
            twist.blocks.len(),
            t.summands.len()
        )));
    }
    let k = twist.center_count(t);
    if k != t.center {
        return Err(Error::NotInstantiable(format!(
            "twist generates {k} centers but the descriptor has GL(1)^{}",
            t.center
        )));
    }
    let algebras: Vec<Arc<LieAlgebra>> = t
        .factors
        .iter()
        .map(|f| Ok(Arc::new(construct_classical(classical(f)?, f.rank)?)))
        .collect::<Result<_>>()?;
    let mut offsets = Vec::with_capacity(algebras.len());
    let mut acc = 0;
    for g in &algebras {
        offsets.push(acc);
        acc += g.dim();
    }
    let total = if algebras.len() == 1 {
        Arc::clone(&algebras[0])
    } else {
        let mut sum = (*algebras[0]).clone();
        for g in &algebras[1..] {
            sum = direct_sum(&sum, g);
        }
        Arc::new(sum)
    };

    let mut blocks: Vec<Representation> = Vec::new();
    for s in &t.summands {
        let mut r = trivial(&total, 1);
        for (i, (f, l)) in t.factors.iter().zip(&s.labels).enumerate() {
            if l.is_trivial() {
                continue;
            }
            let part = lift(&label_rep(&algebras[i], f, l)?, &total, offsets[i])?;
            r = tensor(&r, &part)?;
        }
        if s.tau > 1 {
            r = tensor(&r, &trivial(&total, s.tau))?;
        }
        blocks.push(r);
    }
    let mut rep = blocks[0].clone();
    for b in &blocks[1..] {
        rep = direct_sum_rep(&rep, b)?;
    }
    if k == 0 {
        return Ok(rep);
    }

    let d = rep.space_dim();
    let mut centers = Vec::with_capacity(k);
    let mut start = 0;
    for ((s, b), tw) in t.summands.iter().zip(&blocks).zip(&twist.blocks) {
        let size = b.space_dim();
        let inner = size / s.tau;
        for m in tw.matrices(s.tau)? {
            let local = Matrix::identity(inner).kron(&m);
            let mut full = Matrix::zeros(d, d);
            for i in 0..size {
                for j in 0..size {
                    let x = &local[(i, j)];
                    if !x.is_zero() {
                        full[(start + i, start + j)] = x.clone();
                    }
                }
            }
            centers.push(full);
        }
        start += size;
    }
    with_center(&rep, &CenterTwist::new(centers))
}

//! Generalized eigenspace decompositions of linear operators on algebras.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::ring::{Coeff, Ring};

use super::StructAlgebra;

/// Largest prime for which eigenvalues are found by scanning the field.
const MAX_SCAN_PRIME: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Plain,
    Endomorphism,
    Derivation,
}

/// Linear operator on coordinates, tagged with the identity it was checked
/// to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    matrix: Matrix,
    kind: OpKind,
}

impl LinOp {
    pub fn plain(matrix: Matrix) -> Result<LinOp> {
        if !matrix.is_square() {
            return Err(Error::Invalid("operator matrix must be square".into()));
        }
        Ok(LinOp { matrix, kind: OpKind::Plain })
    }

    /// Checks `m(e_i e_j) = m(e_i) m(e_j)` on basis pairs.
    pub fn endomorphism(alg: &StructAlgebra, matrix: Matrix) -> Result<LinOp> {
        check_dims(alg, &matrix)?;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = matrix.apply(alg.constant(i, j));
                let rhs = alg.mul(&matrix.col(i), &matrix.col(j));
                if lhs != rhs {
                    return Err(Error::PreconditionFailed(format!("not multiplicative on e{i} e{j}")));
                }
            }
        }
        Ok(LinOp { matrix, kind: OpKind::Endomorphism })
    }

    /// Checks `m(e_i e_j) = m(e_i) e_j + e_i m(e_j)` on basis pairs.
    pub fn derivation(alg: &StructAlgebra, matrix: Matrix) -> Result<LinOp> {
        check_dims(alg, &matrix)?;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = matrix.apply(alg.constant(i, j));
                let a = alg.mul(&matrix.col(i), &alg.basis(j));
                let b = alg.mul(&alg.basis(i), &matrix.col(j));
                let rhs: Vec<Coeff> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if lhs != rhs {
                    return Err(Error::PreconditionFailed(format!("Leibniz rule fails on e{i} e{j}")));
                }
            }
        }
        Ok(LinOp { matrix, kind: OpKind::Derivation })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `I - m`, untagged.
    pub fn one_minus(&self) -> LinOp {
        let id = Matrix::identity(self.matrix.ring(), self.dim());
        LinOp { matrix: &id - &self.matrix, kind: OpKind::Plain }
    }

    pub fn image(&self) -> Result<RowSpace> {
        RowSpace::column_space(&self.matrix)
    }

    pub fn kernel(&self) -> Result<RowSpace> {
        RowSpace::kernel(&self.matrix)
    }
}

fn check_dims(alg: &StructAlgebra, m: &Matrix) -> Result<()> {
    if !m.is_square() || m.nrows() != alg.dim() || m.ring() != alg.ring() {
        return Err(Error::Invalid("operator does not act on the algebra".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingKind {
    Additive,
    Multiplicative,
}

/// `A = sum of blocks`, block `i` the generalized eigenspace for
/// `eigenvalues[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub eigenvalues: Vec<Coeff>,
    pub blocks: Vec<RowSpace>,
    pub kind: GradingKind,
}

impl Decomposition {
    pub fn block(&self, lambda: &Coeff) -> Option<&RowSpace> {
        self.eigenvalues.iter().position(|e| e == lambda).map(|i| &self.blocks[i])
    }
}

/// Generalized eigenspaces of `op`. Eigenvalues are found in the base field
/// unless supplied; `NonSplit` if they do not exhaust the space.
pub fn gen_eigendecomp(op: &LinOp, eigenvalues: Option<&[Coeff]>) -> Result<Decomposition> {
    let m = op.matrix();
    let ring = m.ring();
    let n = op.dim();
    let mut eigs: Vec<Coeff> = Vec::new();
    for lambda in match eigenvalues {
        Some(given) => given.to_vec(),
        None => field_eigenvalues(m)?,
    } {
        if !eigs.contains(&lambda) {
            eigs.push(lambda);
        }
    }
    let mut blocks = Vec::with_capacity(eigs.len());
    let mut total = 0;
    for lambda in &eigs {
        let shifted = m - &Matrix::scalar(ring, n, lambda);
        let block = RowSpace::kernel(&shifted.pow(n as u32))?;
        total += block.dim();
        blocks.push(block);
    }
    if total != n {
        return Err(Error::NonSplit { split_dim: total, dim: n });
    }
    let kind = if op.kind() == OpKind::Derivation { GradingKind::Additive } else { GradingKind::Multiplicative };
    Ok(Decomposition { eigenvalues: eigs, blocks, kind })
}

fn field_eigenvalues(m: &Matrix) -> Result<Vec<Coeff>> {
    let ring = m.ring();
    let n = m.nrows();
    match ring {
        Ring::Fp(p) if p <= MAX_SCAN_PRIME => {
            let mut out = Vec::new();
            for v in 0..p {
                let lambda = Coeff::Fp { value: v, p };
                if (m - &Matrix::scalar(ring, n, &lambda)).det()?.is_zero() {
                    out.push(lambda);
                }
            }
            Ok(out)
        }
        Ring::Fp(p) => Err(Error::Unsupported(format!("eigenvalue scan over F_{p}; supply eigenvalues"))),
        Ring::Q => {
            let charpoly = char_poly(m);
            let mut roots = rational_roots(&charpoly)?;
            roots.sort();
            Ok(roots.into_iter().map(Coeff::Q).collect())
        }
        r => Err(Error::NotAField(r.name())),
    }
}

/// Coefficients `c_0, ..., c_n` of `det(t I - m)` by Faddeev-LeVerrier.
fn char_poly(m: &Matrix) -> Vec<BigRational> {
    let n = m.nrows();
    let ring = m.ring();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut acc = Matrix::zeros(ring, n, n);
    for k in 1..=n {
        let c_prev = Coeff::Q(coeffs[n + 1 - k].clone());
        acc = &(m * &acc) + &Matrix::scalar(ring, n, &c_prev);
        let am = m * &acc;
        let trace: BigRational = (0..n).map(|i| am.get(i, i).as_rational().expect("rational")).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let nums = divisors(&ints[0])?;
    let dens = divisors(ints.last().expect("nonempty"))?;
    for a in &nums {
        for b in &dens {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * a, b.clone());
                if !roots.contains(&r) && horner(&ints, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

fn horner(ints: &[BigInt], x: &BigRational) -> BigRational {
    ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Unsupported("characteristic polynomial coefficients too large".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Whether multiplication respects the decomposition: `A_l A_m` lies in
/// `A_(l+m)` (additive) or `A_(lm)` (multiplicative), and vanishes when that
/// block is absent.
pub fn grading_check(alg: &StructAlgebra, dec: &Decomposition) -> bool {
    let zero = RowSpace::zero(alg.ring(), alg.dim());
    for (l, bl) in dec.eigenvalues.iter().zip(&dec.blocks) {
        for (m, bm) in dec.eigenvalues.iter().zip(&dec.blocks) {
            let target = match dec.kind {
                GradingKind::Additive => l + m,
                GradingKind::Multiplicative => l * m,
            };
            let dest = dec.block(&target).unwrap_or(&zero);
            for u in bl.vectors() {
                for v in bm.vectors() {
                    if !dest.contains(&alg.mul(&u, &v)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `op(A_d) + sum of the other blocks`, checked against the image of `op`
/// computed directly; `d` is the distinguished eigenvalue.
pub fn image_decomp(op: &LinOp, dec: &Decomposition, distinguished: &Coeff) -> Result<RowSpace> {
    let ring = op.matrix().ring();
    let n = op.dim();
    let mut assembled = RowSpace::zero(ring, n);
    for (lambda, block) in dec.eigenvalues.iter().zip(&dec.blocks) {
        let part = if lambda == distinguished { block.image_under(op.matrix()) } else { block.clone() };
        assembled = assembled.sum(&part);
    }
    let direct = op.image()?;
    if assembled != direct {
        return Err(Error::DecompositionMismatch(format!(
            "assembled image has dimension {}, direct image {}",
            assembled.dim(),
            direct.dim()
        )));
    }
    Ok(assembled)
}

/// `Ker_{>=1} op`, the union of `Ker op^k`.
pub fn kernel_chain(op: &LinOp) -> Result<RowSpace> {
    let mut power = op.matrix().clone();
    let mut current = RowSpace::kernel(&power)?;
    loop {
        power = &power * op.matrix();
        let next = RowSpace::kernel(&power)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

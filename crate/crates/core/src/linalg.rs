//! Dense exact matrices over [`Coeff`].
//!
//! Row reduction to RREF needs a field; [`Matrix::hnf`] works over `Z`;
//! [`Matrix::rank_domain`] uses fraction-free elimination and therefore works
//! over any of the supported integral domains, computing the rank over the
//! fraction field.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{}", self.ring, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(ring: Ring, n: usize, c: &Coeff) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(ring: Ring, cols: usize, rows: Vec<Vec<Coeff>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r);
        }
        Matrix { ring, rows: n, cols, data }
    }

    pub fn from_i64(ring: Ring, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(ring, cols, rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(ring: Ring, rows: usize, cols: &[Vec<Coeff>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Coeff]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn col(&self, c: usize) -> Vec<Coeff> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Coeff) -> Matrix {
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.ring, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn apply(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.ring.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring.name()))
        }
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.require_field()?;
        let mut rows: Vec<Vec<Coeff>> = self.rows().map(|r| r.to_vec()).collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            let Some(p) = (lead..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(lead, p);
            let inv = rows[lead][c].inv().expect("field element");
            for v in rows[lead].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == lead || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&f * p);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        rows.truncate(lead);
        Ok((Matrix::from_rows(self.ring, self.cols, rows), pivots))
    }

    /// Rank over the field of fractions, by fraction-free elimination.
    pub fn rank_domain(&self) -> usize {
        let mut rows: Vec<Vec<Coeff>> = self.rows().map(|r| r.to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let a = pivot_row[c].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let b = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &(&a * &*v) - &(&b * p);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        if self.ring.is_field() {
            self.rref().expect("field").1.len()
        } else {
            self.rank_domain()
        }
    }

    /// Basis (as rows) of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Result<Matrix> {
        let (r, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.ring.zero(); self.cols];
            v[f] = self.ring.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, f);
            }
            basis.push(v);
        }
        Ok(Matrix::from_rows(self.ring, self.cols, basis))
    }

    /// RREF basis (as rows) of the column space.
    pub fn column_space(&self) -> Result<Matrix> {
        Ok(self.transpose().rref()?.0)
    }

    /// Solves `M x = b`, returning one solution if any.
    pub fn solve(&self, b: &[Coeff]) -> Result<Option<Vec<Coeff>>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.ring, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.ring.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse over a field, or `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(self.ring, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.ring.one());
        }
        let (red, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let rows = (0..n).map(|r| red.row(r)[n..].to_vec()).collect();
        Ok(Some(Matrix::from_rows(self.ring, n, rows)))
    }

    /// Determinant over a field by elimination.
    pub fn det(&self) -> Result<Coeff> {
        self.require_field()?;
        assert!(self.is_square());
        let n = self.rows;
        let mut rows: Vec<Vec<Coeff>> = self.rows().map(|r| r.to_vec()).collect();
        let mut det = self.ring.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(self.ring.zero());
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("field");
            let prow = rows[c].clone();
            for row in rows.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        Ok(det)
    }

    /// Row-style Hermite normal form over `Z`: nonzero rows only, positive
    /// pivots, entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> Result<(Matrix, Vec<usize>)> {
        if self.ring != Ring::Z {
            return Err(Error::Invalid(format!("HNF needs integer entries, got {}", self.ring)));
        }
        let mut rows: Vec<Vec<BigInt>> = self
            .rows()
            .map(|r| r.iter().map(|c| c.as_bigint().expect("integer")).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == rows.len() {
                break;
            }
            // Fold every row below `lead` into the pivot row via extended gcd.
            for r in lead + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                if rows[lead][c].is_zero() {
                    rows.swap(lead, r);
                    continue;
                }
                let a = rows[lead][c].clone();
                let b = rows[r][c].clone();
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let (a_g, b_g) = (&a / &g, &b / &g);
                let (top, bot) = (rows[lead].clone(), rows[r].clone());
                rows[lead] = top.iter().zip(&bot).map(|(u, v)| &s * u + &t * v).collect();
                rows[r] = top.iter().zip(&bot).map(|(u, v)| &a_g * v - &b_g * u).collect();
            }
            if rows[lead][c].is_zero() {
                continue;
            }
            if rows[lead][c].is_negative() {
                for v in rows[lead].iter_mut() {
                    *v = -&*v;
                }
            }
            let piv = rows[lead][c].clone();
            let prow = rows[lead].clone();
            for row in rows.iter_mut().take(lead) {
                let q = row[c].div_floor(&piv);
                if !q.is_zero() {
                    for (v, p) in row.iter_mut().zip(&prow) {
                        *v -= &q * p;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        rows.truncate(lead);
        let rows = rows.into_iter().map(|r| r.into_iter().map(Coeff::Z).collect()).collect();
        Ok((Matrix::from_rows(Ring::Z, self.cols, rows), pivots))
    }
}

fn check_shape(a: &Matrix, b: &Matrix, same: bool) {
    assert_eq!(a.ring, b.ring, "matrix ring");
    if same {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix shape");
    } else {
        assert_eq!(a.cols, b.rows, "matrix shape");
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        check_shape(self, rhs, true);
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        check_shape(self, rhs, true);
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        check_shape(self, rhs, false);
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = self.ring.zero();
                    let cur = std::mem::replace(&mut out.data[i * rhs.cols + j], v);
                    out.data[i * rhs.cols + j] = &cur + &(a * b);
                }
            }
        }
        out
    }
}

/// Reduces `v` against rows in RREF (pivot entries 1); returns the residue.
pub fn reduce_rref(basis: &Matrix, pivots: &[usize], v: &[Coeff]) -> Vec<Coeff> {
    let mut v = v.to_vec();
    for (i, &pc) in pivots.iter().enumerate() {
        if v[pc].is_zero() {
            continue;
        }
        let f = v[pc].clone();
        for (x, b) in v.iter_mut().zip(basis.row(i)) {
            if !b.is_zero() {
                *x = &*x - &(&f * b);
            }
        }
    }
    v
}

/// Exact integer reduction against an HNF basis; `None` when a pivot does not
/// divide the running entry.
pub fn reduce_hnf(basis: &Matrix, pivots: &[usize], v: &[Coeff]) -> Option<Vec<Coeff>> {
    let mut v = v.to_vec();
    for (i, &pc) in pivots.iter().enumerate() {
        if v[pc].is_zero() {
            continue;
        }
        let q = v[pc].div_exact(basis.get(i, pc))?;
        for (x, b) in v.iter_mut().zip(basis.row(i)) {
            if !b.is_zero() {
                *x = &*x - &(&q * b);
            }
        }
    }
    Some(v)
}

/// Subspace of `K^n` in canonical RREF; equality of values is equality of
/// subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSpace {
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(ring: Ring, n: usize) -> RowSpace {
        RowSpace { n, basis: Matrix::zeros(ring, 0, n), pivots: Vec::new() }
    }

    pub fn full(ring: Ring, n: usize) -> RowSpace {
        RowSpace { n, basis: Matrix::identity(ring, n), pivots: (0..n).collect() }
    }

    pub fn span(ring: Ring, n: usize, rows: Vec<Vec<Coeff>>) -> Result<RowSpace> {
        RowSpace::from_rows(&Matrix::from_rows(ring, n, rows))
    }

    pub fn from_rows(m: &Matrix) -> Result<RowSpace> {
        let (basis, pivots) = m.rref()?;
        Ok(RowSpace { n: m.ncols(), basis, pivots })
    }

    pub fn column_space(m: &Matrix) -> Result<RowSpace> {
        RowSpace::from_rows(&m.transpose())
    }

    pub fn kernel(m: &Matrix) -> Result<RowSpace> {
        RowSpace::from_rows(&m.nullspace()?)
    }

    pub fn ring(&self) -> Ring {
        self.basis.ring()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Coeff>> {
        self.basis.rows().map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        reduce_rref(&self.basis, &self.pivots, v).iter().all(Coeff::is_zero)
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.basis.rows().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let rows = self.vectors().into_iter().chain(other.vectors()).collect();
        RowSpace::span(self.ring(), self.n, rows).expect("field")
    }

    /// Image of the subspace under `m` acting on column vectors.
    pub fn image_under(&self, m: &Matrix) -> RowSpace {
        let rows = self.basis.rows().map(|r| m.apply(r)).collect();
        RowSpace::span(self.ring(), m.nrows(), rows).expect("field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_space_canonical() {
        let r = Ring::Q;
        let a = RowSpace::span(r, 3, vec![vec![r.from_i64(1), r.from_i64(2), r.zero()], vec![r.zero(), r.one(), r.one()]]).unwrap();
        let b = RowSpace::span(r, 3, vec![vec![r.from_i64(1), r.from_i64(3), r.one()], vec![r.zero(), r.from_i64(-2), r.from_i64(-2)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[r.from_i64(1), r.zero(), r.from_i64(-2)]));
        assert!(!a.contains(&[r.zero(), r.zero(), r.one()]));
        assert!(RowSpace::zero(r, 3).is_subspace_of(&a));
        assert_eq!(a.sum(&RowSpace::full(r, 3)), RowSpace::full(r, 3));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(Ring::Q, &[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(Ring::Q, 2));
        assert!(Matrix::from_i64(Ring::Fp(3), &[vec![1, 2], vec![2, 1]]).inverse().unwrap().is_none());
    }

    #[test]
    fn rref_and_nullspace() {
        let m = Matrix::from_i64(Ring::Q, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let (r, piv) = m.rref().unwrap();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.nrows(), 2);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.nrows(), 1);
        let v = ns.row(0).to_vec();
        assert!(m.apply(&v).iter().all(Coeff::is_zero));
    }

    #[test]
    fn hnf_of_gcd_pair() {
        let m = Matrix::from_i64(Ring::Z, &[vec![2], vec![3]]);
        let (h, piv) = m.hnf().unwrap();
        assert_eq!(piv, vec![0]);
        assert_eq!(h.get(0, 0), &Ring::Z.from_i64(1));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Matrix::from_i64(Ring::Z, &[vec![2, 4, 0], vec![0, 3, 6], vec![1, 1, 1]]);
        let b = Matrix::from_i64(Ring::Z, &[vec![1, 1, 1], vec![-2, -4, 0], vec![3, 6, 9]]);
        // same lattice: row ops are unimodular
        let b = {
            let (h, _) = b.hnf().unwrap();
            h
        };
        assert_eq!(a.hnf().unwrap().0, b);
    }

    #[test]
    fn fraction_free_rank_over_laurent() {
        let r = Ring::QLaurentT;
        let t = r.t_power(1).unwrap();
        let rows = vec![vec![r.one(), t.clone()], vec![t.clone(), &t * &t]];
        let m = Matrix::from_rows(r, 2, rows);
        assert_eq!(m.rank_domain(), 1);
    }

    #[test]
    fn det_and_solve() {
        let m = Matrix::from_i64(Ring::Fp(5), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det().unwrap(), Ring::Fp(5).from_i64(-2));
        let x = m.solve(&[Ring::Fp(5).one(), Ring::Fp(5).zero()]).unwrap().unwrap();
        assert_eq!(m.apply(&x), vec![Ring::Fp(5).one(), Ring::Fp(5).zero()]);
    }
}

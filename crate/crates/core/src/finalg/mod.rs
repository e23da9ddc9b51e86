//! Finite-dimensional algebras given by structure constants.
//!
//! Elements are coordinate vectors over the basis `e_0, ..., e_{d-1}` and
//! `e_i e_j = sum_k c[i][j][k] e_k`.

mod decomp;
mod ms;
mod symmetric;

pub use decomp::{
    gen_eigendecomp, grading_check, image_decomp, kernel_chain, Decomposition, GradingKind, LinOp, OpKind,
};
pub use ms::{
    all_subspaces, idempotent_anomalies, idempotents, idempotents_with, ms_decide_finite, ms_decide_finite_with,
    ms_test_idempotent, power_failures, power_radical, principal_ideal, MsVerdict, MsWitness, PowerOrbit, Side, DEFAULT_BUDGET,
};
pub use symmetric::{
    elementary_from_values, grouped_vandermonde, newton_to_elementary, nilradical_commutative, power_sum_system_check,
    power_sums, GroupedSystem,
};

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{Coeff, Ring};

pub type Elem = Vec<Coeff>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    ring: Ring,
    dim: usize,
    consts: Vec<Vec<Elem>>,
    unit: Option<Elem>,
    split: bool,
}

impl StructAlgebra {
    /// Builds and validates an algebra from nonzero structure constants
    /// `(i, j, k, c)` meaning `e_i e_j` has `c` as its `e_k` coordinate.
    pub fn new(ring: Ring, dim: usize, entries: &[(usize, usize, usize, Coeff)], unit: Option<Elem>) -> Result<Self> {
        let mut consts = vec![vec![vec![ring.zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Invalid(format!("structure constant index ({i}, {j}, {k}) out of range for dim {dim}")));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch(ring.name(), c.ring().name()));
            }
            consts[*i][*j][*k] = &consts[*i][*j][*k] + c;
        }
        let alg = StructAlgebra { ring, dim, consts, unit: None, split: false };
        alg.check_associative()?;
        match unit {
            Some(u) => alg.with_unit(u),
            None => Ok(alg),
        }
    }

    fn with_unit(mut self, u: Elem) -> Result<Self> {
        if u.len() != self.dim {
            return Err(Error::Invalid("unit vector has the wrong length".into()));
        }
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                return Err(Error::Invalid(format!("declared unit does not act as identity on e{i}")));
            }
        }
        self.unit = Some(u);
        Ok(self)
    }

    /// `K^n` with componentwise multiplication.
    pub fn split_product(ring: Ring, n: usize) -> StructAlgebra {
        let entries: Vec<_> = (0..n).map(|i| (i, i, i, ring.one())).collect();
        let mut a = StructAlgebra::new(ring, n, &entries, Some(vec![ring.one(); n])).expect("valid");
        a.split = true;
        a
    }

    /// `K[x]/(m(x))` for monic `m` given by its coefficients `m_0, ..., m_{n-1}`
    /// below the leading 1; basis `1, x, ..., x^{n-1}`.
    pub fn quotient_poly(ring: Ring, lower: &[Coeff]) -> StructAlgebra {
        let n = lower.len();
        // x^k reduced, for k < 2n - 1
        let mut powers: Vec<Elem> = (0..n).map(|i| unit_vec(ring, n, i)).collect();
        for k in n..2 * n {
            let prev = &powers[k - 1];
            let mut next = vec![ring.zero(); n];
            for i in 1..n {
                next[i] = prev[i - 1].clone();
            }
            let top = prev[n - 1].clone();
            for (slot, m) in next.iter_mut().zip(lower) {
                *slot = &*slot - &(&top * m);
            }
            powers.push(next);
        }
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in powers[i + j].iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        StructAlgebra::new(ring, n, &entries, Some(unit_vec(ring, n, 0))).expect("quotient algebra")
    }

    /// `K[x]/(x^n)`.
    pub fn truncated(ring: Ring, n: usize) -> StructAlgebra {
        StructAlgebra::quotient_poly(ring, &vec![ring.zero(); n])
    }

    /// `M_n(K)` with basis `E_ij` at index `n i + j`.
    pub fn matrix_algebra(ring: Ring, n: usize) -> StructAlgebra {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    entries.push((n * i + j, n * j + l, n * i + l, ring.one()));
                }
            }
        }
        let mut unit = vec![ring.zero(); n * n];
        for i in 0..n {
            unit[n * i + i] = ring.one();
        }
        StructAlgebra::new(ring, n * n, &entries, Some(unit)).expect("matrix algebra")
    }

    /// Upper triangular `n x n` matrices, basis `E_ij` with `i <= j` in
    /// row-major order.
    pub fn upper_triangular(ring: Ring, n: usize) -> StructAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("upper pair");
        let mut entries = Vec::new();
        for &(i, j) in &pairs {
            for l in j..n {
                entries.push((index(i, j), index(j, l), index(i, l), ring.one()));
            }
        }
        let mut unit = vec![ring.zero(); pairs.len()];
        for i in 0..n {
            unit[index(i, i)] = ring.one();
        }
        StructAlgebra::new(ring, pairs.len(), &entries, Some(unit)).expect("triangular algebra")
    }

    /// `self (x) other` with basis `a_i (x) b_j` at index `i dim(other) + j`.
    pub fn tensor(&self, other: &StructAlgebra) -> Result<StructAlgebra> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let mut entries = Vec::new();
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                for (k1, c1) in self.consts[i1][j1].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for i2 in 0..d2 {
                        for j2 in 0..d2 {
                            for (k2, c2) in other.consts[i2][j2].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                entries.push((i1 * d2 + i2, j1 * d2 + j2, k1 * d2 + k2, c1 * c2));
                            }
                        }
                    }
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()),
            _ => None,
        };
        StructAlgebra::new(self.ring, d1 * d2, &entries, unit)
    }

    /// Direct product `self x other`.
    pub fn product(&self, other: &StructAlgebra) -> Result<StructAlgebra> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let mut entries = Vec::new();
        for (off, alg) in [(0, self), (d1, other)] {
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for (k, c) in alg.consts[i][j].iter().enumerate() {
                        if !c.is_zero() {
                            entries.push((i + off, j + off, k + off, c.clone()));
                        }
                    }
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        let mut out = StructAlgebra::new(self.ring, d1 + d2, &entries, unit)?;
        out.split = self.split && other.split;
        Ok(out)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Elem> {
        self.unit.as_ref()
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn constant(&self, i: usize, j: usize) -> &Elem {
        &self.consts[i][j]
    }

    pub fn basis(&self, i: usize) -> Elem {
        unit_vec(self.ring, self.dim, i)
    }

    pub fn zero(&self) -> Elem {
        vec![self.ring.zero(); self.dim]
    }

    pub fn mul(&self, u: &[Coeff], v: &[Coeff]) -> Elem {
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (slot, c) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !c.is_zero() {
                        *slot = &*slot + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Coeff], m: u32) -> Result<Elem> {
        if m == 0 {
            return self.unit.clone().ok_or_else(|| Error::Invalid("zeroth power needs a unit".into()));
        }
        let mut acc = a.to_vec();
        for _ in 1..m {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }

    /// Matrix of `v -> a v` on coordinates.
    pub fn left_mult(&self, a: &[Coeff]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_cols(self.ring, self.dim, &cols)
    }

    /// Matrix of `v -> v a` on coordinates.
    pub fn right_mult(&self, a: &[Coeff]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_cols(self.ring, self.dim, &cols)
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let eij = &self.consts[i][j];
                for k in 0..self.dim {
                    let lhs = self.mul(eij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.consts[j][k]);
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.consts[i][j] != self.consts[j][i] {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        self.check_commutative().is_ok()
    }

    /// Number of elements over `F_p`, or `None` for infinite fields or overflow.
    pub fn cardinality(&self) -> Option<u128> {
        match self.ring {
            Ring::Fp(p) => (p as u128).checked_pow(self.dim as u32),
            _ => None,
        }
    }

    /// The element with base-`p` digits of `idx` as coordinates.
    pub fn element_at(&self, mut idx: u64) -> Elem {
        let Ring::Fp(p) = self.ring else {
            panic!("element enumeration needs a finite field");
        };
        (0..self.dim)
            .map(|_| {
                let v = idx % p;
                idx /= p;
                Coeff::Fp { value: v, p }
            })
            .collect()
    }

    pub(crate) fn require_enumerable(&self, budget: u128) -> Result<u64> {
        match self.ring {
            Ring::Fp(_) => {
                let n = self.cardinality().unwrap_or(u128::MAX);
                if n > budget {
                    Err(Error::BudgetExceeded { needed: n, budget })
                } else {
                    Ok(n as u64)
                }
            }
            Ring::Q => Err(Error::UnsupportedOverQ),
            r => Err(Error::NotAField(r.name())),
        }
    }

    /// Parses the plain-text structure-constant format:
    ///
    /// ```text
    /// dim 2 field fp:2
    /// 0 0 0 1
    /// 0 1 1 1
    /// 1 0 1 1
    /// unit 1 0
    /// ```
    ///
    /// Indices are 0-based; `#` starts a comment; an optional `split` line
    /// declares `K^n` with componentwise product (checked).
    pub fn parse(text: &str) -> Result<StructAlgebra> {
        let mut header: Option<(usize, Ring)> = None;
        let mut entries = Vec::new();
        let mut unit = None;
        let mut split = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Invalid(format!("line {}: {msg}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "dim" => {
                    if toks.len() != 4 || toks[2] != "field" {
                        return Err(err("expected `dim d field q|z|fp:p`"));
                    }
                    let d = toks[1].parse().map_err(|_| err("bad dimension"))?;
                    header = Some((d, Ring::parse(toks[3])?));
                }
                "unit" => {
                    let (d, ring) = header.ok_or_else(|| err("unit before header"))?;
                    if toks.len() != d + 1 {
                        return Err(err("unit needs one coordinate per basis vector"));
                    }
                    unit = Some(toks[1..].iter().map(|t| parse_coeff(ring, t).map_err(|m| err(&m))).collect::<Result<Vec<_>>>()?);
                }
                "split" => split = true,
                _ => {
                    let (_, ring) = header.ok_or_else(|| err("structure constant before header"))?;
                    if toks.len() != 4 {
                        return Err(err("expected `i j k coeff`"));
                    }
                    let idx = |t: &str| t.parse::<usize>().map_err(|_| err("bad index"));
                    let c = parse_coeff(ring, toks[3]).map_err(|m| err(&m))?;
                    entries.push((idx(toks[0])?, idx(toks[1])?, idx(toks[2])?, c));
                }
            }
        }
        let (d, ring) = header.ok_or_else(|| Error::Invalid("missing `dim` header".into()))?;
        let mut alg = StructAlgebra::new(ring, d, &entries, unit)?;
        if split {
            let reference = StructAlgebra::split_product(ring, d);
            if reference.consts != alg.consts {
                return Err(Error::Invalid("`split` declared but products are not componentwise".into()));
            }
            alg.split = true;
            alg.unit = reference.unit;
        }
        Ok(alg)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {} field {}\n", self.dim, self.ring.name());
        if self.split {
            s.push_str("split\n");
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let _ = writeln!(s, "{i} {j} {k} {c}");
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            let coords: Vec<String> = u.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "unit {}", coords.join(" "));
        }
        s
    }
}

pub(crate) fn unit_vec(ring: Ring, n: usize, i: usize) -> Elem {
    let mut v = vec![ring.zero(); n];
    v[i] = ring.one();
    v
}

fn parse_coeff(ring: Ring, t: &str) -> std::result::Result<Coeff, String> {
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad coefficient `{t}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad coefficient `{t}`"))?;
    ring.from_ratio(&num, &den).map_err(|e| e.to_string())
}

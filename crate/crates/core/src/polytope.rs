//! Newton polytopes of Laurent polynomials and exact origin membership.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::poly::{ExpVec, Poly};

/// Distinct exponent vectors of a nonzero polynomial, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    nvars: usize,
    points: Vec<ExpVec>,
}

impl SupportSet {
    pub fn new(nvars: usize, mut points: Vec<ExpVec>) -> Result<SupportSet> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if points.iter().any(|p| p.len() != nvars) {
            return Err(Error::Invalid("support point of the wrong dimension".into()));
        }
        points.sort();
        points.dedup();
        Ok(SupportSet { nvars, points })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn points(&self) -> &[ExpVec] {
        &self.points
    }
}

pub fn support(f: &Poly) -> Result<SupportSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SupportSet::new(f.ambient().nvars(), f.support().cloned().collect())
}

/// Whether the origin lies in the convex hull of `s`: feasibility of
/// `sum l_i v_i = 0`, `sum l_i = 1`, `l >= 0`.
pub fn contains_origin(s: &SupportSet) -> bool {
    let int = |n: i64| BigRational::from_integer(n.into());
    let mut rows: Vec<Vec<BigRational>> =
        (0..s.nvars).map(|r| s.points.iter().map(|p| int(p.0[r] as i64)).collect()).collect();
    rows.push(vec![BigRational::one(); s.points.len()]);
    let mut rhs = vec![BigRational::zero(); s.nvars];
    rhs.push(BigRational::one());
    lp_feasible(rows, rhs)
}

/// Phase-one simplex with Bland's rule on `A l = b`, `l >= 0`.
fn lp_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for (row, bi) in a.iter_mut().zip(b.iter_mut()) {
        if bi.is_negative() {
            *bi = -bi.clone();
            row.iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    // Columns 0..n original, n..n+m artificial.
    let width = n + m;
    let mut tab: Vec<Vec<BigRational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..m).map(|j| if j == i { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    let mut cost: Vec<BigRational> =
        (0..width).map(|j| if j < n { -tab.iter().map(|r| r[j].clone()).sum::<BigRational>() } else { BigRational::zero() }).collect();
    let mut value: BigRational = -b.iter().cloned().sum::<BigRational>();
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            return value.is_zero();
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &b[i] / &tab[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &b[l] / &tab[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // Phase one is bounded below by zero.
        let r = leave.expect("bounded phase-one objective");
        let piv = tab[r][enter].clone();
        tab[r].iter_mut().for_each(|x| *x = &*x / &piv);
        b[r] = &b[r] / &piv;
        let prow = tab[r].clone();
        let pb = b[r].clone();
        for i in 0..m {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for (x, p) in tab[i].iter_mut().zip(&prow) {
                *x = &*x - &(&f * p);
            }
            b[i] = &b[i] - &(&f * &pb);
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            *x = &*x - &(&f * p);
        }
        value = &value - &(&f * &pb);
        basis[r] = enter;
    }
}

/// Membership of `f` in the radical of the constant-term-free Laurent
/// polynomials: true iff the origin is outside the Newton polytope.
pub fn dk_radical_test(f: &Poly) -> Result<bool> {
    if f.ring().characteristic() != 0 {
        return Err(Error::PreconditionFailed("coefficient field must have characteristic zero".into()));
    }
    Ok(!contains_origin(&support(f)?))
}

/// Smallest `m <= max_power` with a nonzero constant term in `f^m`.
pub fn constant_term_probe(f: &Poly, max_power: u32) -> Option<u32> {
    let mut acc = f.clone();
    for m in 1..=max_power {
        if !acc.constant_term().is_zero() {
            return Some(m);
        }
        if m < max_power {
            acc = &acc * f;
        }
    }
    None
}

pub fn constant_term_probe_batch(exec: Exec, fs: &[Poly], max_power: u32) -> Vec<Option<u32>> {
    exec.map(fs, |f| constant_term_probe(f, max_power))
}

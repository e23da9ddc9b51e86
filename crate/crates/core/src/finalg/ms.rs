//! Mathieu-subspace decisions for finite algebras.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::par::Exec;
use crate::ring::{Coeff, Ring};

use super::{Elem, StructAlgebra};

/// Largest number of enumerated elements or subspaces accepted by default.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "two-sided" | "two" => Ok(Side::TwoSided),
            other => Err(Error::Invalid(format!("unknown side `{other}`"))),
        }
    }

    fn uses_left(self) -> bool {
        self != Side::Right
    }

    fn uses_right(self) -> bool {
        self != Side::Left
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// Powers `a^1, ..., a^(tail + period)`; `a^(tail + 1)` is the first power
/// on the cycle and `a^(m + period) = a^m` for every `m > tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOrbit {
    pub tail: usize,
    pub period: usize,
    pub powers: Vec<Elem>,
}

impl PowerOrbit {
    /// Floyd cycle detection on `x -> x a` from `x = a`.
    pub fn of(alg: &StructAlgebra, a: &[Coeff]) -> PowerOrbit {
        let f = |x: &Elem| alg.mul(x, a);
        let start = a.to_vec();
        let mut tortoise = f(&start);
        let mut hare = f(&tortoise);
        while tortoise != hare {
            tortoise = f(&tortoise);
            hare = f(&f(&hare));
        }
        let mut tail = 0;
        tortoise = start.clone();
        while tortoise != hare {
            tortoise = f(&tortoise);
            hare = f(&hare);
            tail += 1;
        }
        let mut period = 1;
        hare = f(&tortoise);
        while tortoise != hare {
            hare = f(&hare);
            period += 1;
        }
        let mut powers = Vec::with_capacity(tail + period);
        let mut x = start;
        for _ in 0..tail + period {
            let next = f(&x);
            powers.push(x);
            x = next;
        }
        PowerOrbit { tail, period, powers }
    }

    /// `(m, a^m)` for the powers on the cycle.
    pub fn cycle(&self) -> impl Iterator<Item = (usize, &Elem)> {
        self.powers.iter().enumerate().skip(self.tail).map(|(i, x)| (i + 1, x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MsWitness {
    /// An idempotent in `V` whose principal ideal escapes `V`.
    Idempotent(Elem),
    /// `a^m` lies in `V` for all `m >= 1` but `b a^m c` leaves `V` for the
    /// cycle power `m`, hence for infinitely many `m`.
    Translate { a: Elem, b: Option<Elem>, c: Option<Elem>, power: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsVerdict {
    pub side: Side,
    pub witness: Option<MsWitness>,
}

impl MsVerdict {
    pub fn is_ms(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_space(alg: &StructAlgebra, v: &RowSpace) -> Result<()> {
    if v.ambient_dim() != alg.dim() || v.ring() != alg.ring() {
        return Err(Error::Invalid("subspace does not live in the algebra".into()));
    }
    Ok(())
}

/// All idempotents, by structure for split algebras and by enumeration
/// over `F_p` otherwise.
pub fn idempotents(alg: &StructAlgebra, budget: u128) -> Result<Vec<Elem>> {
    idempotents_with(Exec::default(), alg, budget)
}

pub fn idempotents_with(exec: Exec, alg: &StructAlgebra, budget: u128) -> Result<Vec<Elem>> {
    let ring = alg.ring();
    if alg.is_split() {
        let d = alg.dim();
        let needed = 1u128.checked_shl(d as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        return Ok((0..needed as u64)
            .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { ring.one() } else { ring.zero() }).collect())
            .collect());
    }
    let n = alg.require_enumerable(budget)?;
    Ok(exec.filter_map_range(0..n, |i| {
        let e = alg.element_at(i);
        (alg.mul(&e, &e) == e).then_some(e)
    }))
}

/// The `side`-ideal generated by `e`.
pub fn principal_ideal(alg: &StructAlgebra, e: &[Coeff], side: Side) -> RowSpace {
    let d = alg.dim();
    let mut rows = vec![e.to_vec()];
    for i in 0..d {
        let b = alg.basis(i);
        if side.uses_left() {
            rows.push(alg.mul(&b, e));
        }
        if side.uses_right() {
            rows.push(alg.mul(e, &b));
        }
        if side == Side::TwoSided {
            let be = alg.mul(&b, e);
            for j in 0..d {
                rows.push(alg.mul(&be, &alg.basis(j)));
            }
        }
    }
    RowSpace::span(alg.ring(), d, rows).expect("field")
}

/// Decision by idempotents: `V` is a `side`-Mathieu subspace iff every
/// idempotent of `V` generates a `side`-ideal inside `V`.
pub fn ms_test_idempotent(alg: &StructAlgebra, v: &RowSpace, side: Side, budget: u128) -> Result<MsVerdict> {
    check_space(alg, v)?;
    let witness = idempotents(alg, budget)?
        .into_iter()
        .find(|e| v.contains(e) && !principal_ideal(alg, e, side).is_subspace_of(v))
        .map(MsWitness::Idempotent);
    Ok(MsVerdict { side, witness })
}

/// Decision from the definition over a finite field, by exhausting all
/// elements and their eventually periodic power orbits.
pub fn ms_decide_finite(alg: &StructAlgebra, v: &RowSpace, side: Side, budget: u128) -> Result<MsVerdict> {
    ms_decide_finite_with(Exec::default(), alg, v, side, budget)
}

pub fn ms_decide_finite_with(exec: Exec, alg: &StructAlgebra, v: &RowSpace, side: Side, budget: u128) -> Result<MsVerdict> {
    check_space(alg, v)?;
    let n = alg.require_enumerable(budget)?;
    let basis: Vec<Elem> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    let failures = exec.filter_map_range(0..n, |idx| {
        let a = alg.element_at(idx);
        let orbit = PowerOrbit::of(alg, &a);
        if !orbit.powers.iter().all(|x| v.contains(x)) {
            return None;
        }
        let lefts: Vec<Option<&Elem>> = if side.uses_left() { basis.iter().map(Some).collect() } else { vec![None] };
        let rights: Vec<Option<&Elem>> = if side.uses_right() { basis.iter().map(Some).collect() } else { vec![None] };
        for (m, x) in orbit.cycle() {
            for b in &lefts {
                let bx = b.map_or_else(|| x.clone(), |b| alg.mul(b, x));
                for c in &rights {
                    let bxc = c.map_or_else(|| bx.clone(), |c| alg.mul(&bx, c));
                    if !v.contains(&bxc) {
                        return Some(MsWitness::Translate { a: a.clone(), b: b.cloned(), c: c.cloned(), power: m });
                    }
                }
            }
        }
        None
    });
    Ok(MsVerdict { side, witness: failures.into_iter().next() })
}

/// Elements whose powers eventually all lie in `V`.
pub fn power_radical(alg: &StructAlgebra, v: &RowSpace, budget: u128) -> Result<Vec<Elem>> {
    check_space(alg, v)?;
    let n = alg.require_enumerable(budget)?;
    Ok(Exec::default().filter_map_range(0..n, |idx| {
        let a = alg.element_at(idx);
        let in_v = PowerOrbit::of(alg, &a).cycle().all(|(_, x)| v.contains(x));
        in_v.then_some(a)
    }))
}

/// Powers `m` in `1..=max_power` with `a^m` outside `V`; works over any
/// field.
pub fn power_failures(alg: &StructAlgebra, v: &RowSpace, a: &[Coeff], max_power: u32) -> Result<Vec<u32>> {
    check_space(alg, v)?;
    let mut out = Vec::new();
    let mut x = a.to_vec();
    for m in 1..=max_power {
        if !v.contains(&x) {
            out.push(m);
        }
        x = alg.mul(&x, a);
    }
    Ok(out)
}

/// Every subspace of `F_p^d`, one per reduced row echelon form.
pub fn all_subspaces(ring: Ring, d: usize, budget: u128) -> Result<Vec<RowSpace>> {
    let Ring::Fp(p) = ring else {
        return Err(match ring {
            Ring::Q => Error::UnsupportedOverQ,
            r => Error::NotAField(r.name()),
        });
    };
    let mut out = vec![RowSpace::zero(ring, d)];
    for mask in 1u64..(1 << d) {
        let pivots: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..d).filter(|j| mask >> j & 1 == 0).map(move |j| (r, j)))
            .collect();
        let count = (p as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        if out.len() as u128 + count > budget {
            return Err(Error::BudgetExceeded { needed: out.len() as u128 + count, budget });
        }
        for mut code in 0..count as u64 {
            let mut rows = vec![vec![ring.zero(); d]; pivots.len()];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = ring.one();
            }
            for &(r, j) in &free {
                rows[r][j] = Coeff::Fp { value: code % p, p };
                code /= p;
            }
            out.push(RowSpace::from_rows(&Matrix::from_rows(ring, d, rows))?);
        }
    }
    Ok(out)
}

/// Nonzero idempotents `e` with `delta(e) = 0` and `e` in the image of
/// `delta`. Their presence means the image is not a Mathieu subspace.
pub fn idempotent_anomalies(alg: &StructAlgebra, delta: &Matrix, budget: u128) -> Result<Vec<Elem>> {
    if delta.nrows() != alg.dim() || !delta.is_square() {
        return Err(Error::Invalid("operator does not act on the algebra".into()));
    }
    let image = RowSpace::column_space(delta)?;
    Ok(idempotents(alg, budget)?
        .into_iter()
        .filter(|e| e.iter().any(|c| !c.is_zero()) && delta.apply(e).iter().all(Coeff::is_zero) && image.contains(e))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Ring {
        Ring::Fp(p)
    }

    #[test]
    fn orbit_of_nilpotent_and_unit() {
        let a = StructAlgebra::truncated(f(3), 3);
        let x = a.basis(1);
        let o = PowerOrbit::of(&a, &x);
        // x, x^2, 0, 0, ...
        assert_eq!((o.tail, o.period), (2, 1));
        assert_eq!(o.powers[2], a.zero());
        let u: Elem = vec![Coeff::Fp { value: 2, p: 3 }, f(3).zero(), f(3).zero()];
        let o = PowerOrbit::of(&a, &u);
        assert_eq!((o.tail, o.period), (0, 2));
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // F_2^3: 1 + 7 + 7 + 1, F_3^2: 1 + 4 + 1
        assert_eq!(all_subspaces(f(2), 3, DEFAULT_BUDGET).unwrap().len(), 16);
        assert_eq!(all_subspaces(f(3), 2, DEFAULT_BUDGET).unwrap().len(), 6);
        assert!(matches!(all_subspaces(Ring::Q, 2, 10), Err(Error::UnsupportedOverQ)));
    }

    #[test]
    fn local_algebra_ms_iff_unit_missing() {
        let a = StructAlgebra::truncated(f(2), 3);
        let one = a.unit().unwrap().clone();
        for v in all_subspaces(f(2), 3, DEFAULT_BUDGET).unwrap() {
            if v.dim() == 3 {
                continue;
            }
            let verdict = ms_decide_finite(&a, &v, Side::TwoSided, DEFAULT_BUDGET).unwrap();
            assert_eq!(verdict.is_ms(), !v.contains(&one), "{v:?}");
        }
    }

    #[test]
    fn split_idempotents_and_failure_witness() {
        let a = StructAlgebra::split_product(f(2), 2);
        assert_eq!(idempotents(&a, DEFAULT_BUDGET).unwrap().len(), 4);
        // V = span(e0): e0 generates itself, an ideal, so V is a Mathieu subspace.
        let v = RowSpace::span(f(2), 2, vec![a.basis(0)]).unwrap();
        assert!(ms_test_idempotent(&a, &v, Side::Left, DEFAULT_BUDGET).unwrap().is_ms());
        // V = span(e0 + e1) contains 1 but is not the whole algebra.
        let v = RowSpace::span(f(2), 2, vec![a.unit().unwrap().clone()]).unwrap();
        let by_idem = ms_test_idempotent(&a, &v, Side::Left, DEFAULT_BUDGET).unwrap();
        let by_def = ms_decide_finite(&a, &v, Side::Left, DEFAULT_BUDGET).unwrap();
        assert!(!by_idem.is_ms() && !by_def.is_ms());
        assert!(matches!(by_def.witness, Some(MsWitness::Translate { .. })));
    }

    #[test]
    fn modes_agree_on_decisions() {
        let a = StructAlgebra::truncated(f(3), 2).product(&StructAlgebra::split_product(f(3), 1)).unwrap();
        for v in all_subspaces(f(3), 3, DEFAULT_BUDGET).unwrap().iter().step_by(5) {
            let s = ms_decide_finite_with(Exec::Sequential, &a, v, Side::Right, DEFAULT_BUDGET).unwrap();
            let p = ms_decide_finite_with(Exec::Parallel, &a, v, Side::Right, DEFAULT_BUDGET).unwrap();
            assert_eq!(s, p);
        }
    }

    #[test]
    fn budget_and_field_errors() {
        let a = StructAlgebra::truncated(f(5), 8);
        let v = RowSpace::zero(f(5), 8);
        assert!(matches!(ms_decide_finite(&a, &v, Side::Left, 1000), Err(Error::BudgetExceeded { .. })));
        let q = StructAlgebra::truncated(Ring::Q, 2);
        assert!(matches!(idempotents(&q, DEFAULT_BUDGET), Err(Error::UnsupportedOverQ)));
        assert_eq!(idempotents(&StructAlgebra::split_product(Ring::Q, 2), DEFAULT_BUDGET).unwrap().len(), 4);
    }

    #[test]
    fn anomaly_flags_fixed_idempotent_in_image() {
        // On F_3 x F_3, delta = diag(0, 1) kills e0 but e0 is not in its image;
        // the zero map on F_3 has empty image. Neither is anomalous.
        let a = StructAlgebra::split_product(f(3), 2);
        let d = Matrix::from_i64(f(3), &[vec![0, 0], vec![0, 1]]);
        assert!(idempotent_anomalies(&a, &d, DEFAULT_BUDGET).unwrap().is_empty());
        // A nilpotent shift e1 -> e0 has e0 in both kernel and image.
        let d = Matrix::from_i64(f(3), &[vec![0, 1], vec![0, 0]]);
        assert_eq!(idempotent_anomalies(&a, &d, DEFAULT_BUDGET).unwrap(), vec![a.basis(0)]);
    }
}

//! Nilradicals and power-sum identities.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::ring::{Coeff, Ring};

use super::StructAlgebra;

/// `{a : a nilpotent}` of a commutative algebra over a field.
///
/// Over `F_p` this is the kernel of `Frob^k` with `p^k > dim`; in
/// characteristic zero it is the radical of the trace form `tr(L_ab)`.
pub fn nilradical_commutative(alg: &StructAlgebra) -> Result<RowSpace> {
    alg.check_commutative()?;
    let d = alg.dim();
    let ring = alg.ring();
    match ring {
        Ring::Fp(p) => {
            let cols: Vec<Vec<Coeff>> = (0..d).map(|i| alg.pow(&alg.basis(i), p as u32).expect("positive power")).collect();
            let frob = Matrix::from_cols(ring, d, &cols);
            let mut k = 1u32;
            while (p as u128).pow(k) <= d as u128 {
                k += 1;
            }
            RowSpace::kernel(&frob.pow(k))
        }
        Ring::Q => {
            let mut form = Matrix::zeros(ring, d, d);
            for i in 0..d {
                for j in 0..d {
                    let l = alg.left_mult(alg.constant(i, j));
                    let tr = (0..d).fold(ring.zero(), |acc, r| &acc + l.get(r, r));
                    form.set(i, j, tr);
                }
            }
            RowSpace::kernel(&form)
        }
        r => Err(Error::NotAField(r.name())),
    }
}

/// `p_1, ..., p_n` with `p_k = sum_i values[i]^k`.
pub fn power_sums(ring: Ring, values: &[Coeff], n: usize) -> Vec<Coeff> {
    (1..=n as u64).map(|k| values.iter().fold(ring.zero(), |acc, v| &acc + &v.pow(k))).collect()
}

/// `e_0, ..., e_n` as the coefficients of `prod (1 + v t)`.
pub fn elementary_from_values(ring: Ring, values: &[Coeff]) -> Vec<Coeff> {
    let mut e = vec![ring.one()];
    for v in values {
        let mut next = e.clone();
        next.push(ring.zero());
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * v);
        }
        e = next;
    }
    e
}

/// `e_0, ..., e_n` from `p_1, ..., p_n` by Newton's identities
/// `k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i`.
pub fn newton_to_elementary(ring: Ring, p: &[Coeff]) -> Result<Vec<Coeff>> {
    let n = p.len();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.name()));
    }
    let ch = ring.characteristic();
    if ch != 0 && ch <= n as u64 {
        return Err(Error::CharacteristicTooSmall { p: ch, n });
    }
    let mut e = vec![ring.one()];
    for k in 1..=n {
        let mut acc = ring.zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let inv = ring.from_bigint(&BigInt::from(k)).inv().expect("k is a unit");
        e.push(&acc * &inv);
    }
    Ok(e)
}

/// Whether `sum_k c_k b_k^m = 0` for every `m` in `1..=max_power`.
pub fn power_sum_system_check(b: &[Coeff], c: &[Coeff], max_power: u32) -> bool {
    assert_eq!(b.len(), c.len(), "one weight per value");
    let Some(first) = b.first() else { return true };
    let ring = first.ring();
    (1..=max_power as u64).all(|m| b.iter().zip(c).fold(ring.zero(), |acc, (bk, ck)| &acc + &(ck * &bk.pow(m))).is_zero())
}

/// Weights of a power-sum system grouped by distinct nonzero value, with the
/// nullity of the square Vandermonde matrix `[v_j^m]`, `m = 1..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedSystem {
    pub values: Vec<Coeff>,
    pub weights: Vec<Coeff>,
    pub nullity: usize,
}

pub fn grouped_vandermonde(b: &[Coeff], c: &[Coeff]) -> Result<GroupedSystem> {
    assert_eq!(b.len(), c.len(), "one weight per value");
    let Some(first) = b.first() else {
        return Ok(GroupedSystem { values: Vec::new(), weights: Vec::new(), nullity: 0 });
    };
    let ring = first.ring();
    let mut values: Vec<Coeff> = Vec::new();
    let mut weights: Vec<Coeff> = Vec::new();
    for (bk, ck) in b.iter().zip(c) {
        if bk.is_zero() {
            continue;
        }
        match values.iter().position(|v| v == bk) {
            Some(i) => weights[i] = &weights[i] + ck,
            None => {
                values.push(bk.clone());
                weights.push(ck.clone());
            }
        }
    }
    let k = values.len();
    let rows = (1..=k as u64).map(|m| values.iter().map(|v| v.pow(m)).collect()).collect();
    let nullity = k - Matrix::from_rows(ring, k, rows).rank();
    Ok(GroupedSystem { values, weights, nullity })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coeff {
        Ring::Q.from_i64(n)
    }

    #[test]
    fn newton_round_trip() {
        let vals = [q(2), q(-1), q(5), q(3)];
        let p = power_sums(Ring::Q, &vals, vals.len());
        assert_eq!(newton_to_elementary(Ring::Q, &p).unwrap(), elementary_from_values(Ring::Q, &vals));
    }

    #[test]
    fn newton_needs_large_characteristic() {
        let f3 = Ring::Fp(3);
        let vals: Vec<Coeff> = (1..4).map(|v| f3.from_i64(v)).collect();
        let p = power_sums(f3, &vals, 3);
        assert!(matches!(newton_to_elementary(f3, &p), Err(Error::CharacteristicTooSmall { p: 3, n: 3 })));
        let f7 = Ring::Fp(7);
        let vals: Vec<Coeff> = (1..4).map(|v| f7.from_i64(v)).collect();
        let p = power_sums(f7, &vals, 3);
        assert_eq!(newton_to_elementary(f7, &p).unwrap(), elementary_from_values(f7, &vals));
    }

    #[test]
    fn power_sum_system() {
        assert!(!power_sum_system_check(&[q(1), q(-1)], &[q(1), q(1)], 4));
        assert!(power_sum_system_check(&[q(2), q(2), q(0)], &[q(1), q(-1), q(7)], 6));
        let g = grouped_vandermonde(&[q(2), q(3), q(2), q(0)], &[q(1), q(4), q(-1), q(9)]).unwrap();
        assert_eq!(g.values, vec![q(2), q(3)]);
        assert_eq!(g.weights, vec![q(0), q(4)]);
        assert_eq!(g.nullity, 0);
    }

    #[test]
    fn nilradicals() {
        // F_2[x]/(x^2) x F_2: nil is span(x).
        let f2 = Ring::Fp(2);
        let a = StructAlgebra::truncated(f2, 2).product(&StructAlgebra::split_product(f2, 1)).unwrap();
        assert_eq!(nilradical_commutative(&a).unwrap(), RowSpace::span(f2, 3, vec![a.basis(1)]).unwrap());
        // Q[x]/(x^3 - x^2): x^2 (x - 1), nil is span(x^2 - x).
        let b = StructAlgebra::quotient_poly(Ring::Q, &[q(0), q(0), q(-1)]);
        let n = nilradical_commutative(&b).unwrap();
        assert_eq!(n.dim(), 1);
        assert!(n.contains(&[q(0), q(-1), q(1)]));
        let e = [q(0), q(-1), q(1)];
        assert_eq!(b.mul(&e, &e), b.zero());
    }
}

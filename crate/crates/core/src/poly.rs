//! Sparse multivariate (Laurent) polynomials over a [`Ring`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// Exponent vector of a (Laurent) monomial. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(pub Vec<i32>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExpVec(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i32>> for ExpVec {
    fn from(v: Vec<i32>) -> Self {
        ExpVec(v)
    }
}

/// Ring, variable names and Laurent flag shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub ring: Ring,
    pub vars: Vec<String>,
    pub laurent: bool,
}

impl Ambient {
    pub fn new(ring: Ring, vars: &[&str], laurent: bool) -> Arc<Ambient> {
        Arc::new(Ambient { ring, vars: vars.iter().map(|s| s.to_string()).collect(), laurent })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn describe(&self) -> String {
        format!(
            "{}[{}{}]",
            self.ring,
            self.vars.join(","),
            if self.laurent { "; laurent" } else { "" }
        )
    }

    pub fn monomial_string(&self, e: &ExpVec) -> String {
        let parts: Vec<String> = e
            .0
            .iter()
            .zip(&self.vars)
            .filter(|(k, _)| **k != 0)
            .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Canonical sparse polynomial: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ambient: Arc<Ambient>,
    terms: BTreeMap<ExpVec, Coeff>,
}

impl Poly {
    pub fn zero(ambient: &Arc<Ambient>) -> Poly {
        Poly { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ambient: &Arc<Ambient>) -> Poly {
        Poly::constant(ambient, ambient.ring.one())
    }

    pub fn constant(ambient: &Arc<Ambient>, c: Coeff) -> Poly {
        Poly::monomial(ambient, ExpVec::zero(ambient.nvars()), c)
    }

    pub fn var(ambient: &Arc<Ambient>, i: usize) -> Poly {
        Poly::monomial(ambient, ExpVec::unit(ambient.nvars(), i), ambient.ring.one())
    }

    /// Panics when the exponent length is wrong or a negative exponent is
    /// used outside a Laurent ambient; use [`Poly::try_monomial`] for input.
    pub fn monomial(ambient: &Arc<Ambient>, e: ExpVec, c: Coeff) -> Poly {
        Poly::try_monomial(ambient, e, c).expect("valid monomial")
    }

    pub fn try_monomial(ambient: &Arc<Ambient>, e: ExpVec, c: Coeff) -> Result<Poly> {
        check_exp(ambient, &e)?;
        assert_eq!(c.ring(), ambient.ring, "coefficient ring");
        let mut p = Poly::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        Ok(p)
    }

    pub fn from_terms(ambient: &Arc<Ambient>, terms: impl IntoIterator<Item = (ExpVec, Coeff)>) -> Result<Poly> {
        let mut p = Poly::zero(ambient);
        for (e, c) in terms {
            check_exp(ambient, &e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn ring(&self) -> Ring {
        self.ambient.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExpVec> {
        self.terms.keys()
    }

    pub fn coeff_of(&self, e: &ExpVec) -> Coeff {
        assert_eq!(e.len(), self.ambient.nvars(), "exponent length");
        self.terms.get(e).cloned().unwrap_or_else(|| self.ring().zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff_of(&ExpVec::zero(self.ambient.nvars()))
    }

    /// The single term when the polynomial has exactly one.
    pub fn as_term(&self) -> Option<(&ExpVec, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Per-variable exponent range of the support.
    pub fn exponent_bounds(&self) -> Option<Vec<(i32, i32)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut b: Vec<(i32, i32)> = first.0.iter().map(|&e| (e, e)).collect();
        for e in it {
            for (slot, &x) in b.iter_mut().zip(&e.0) {
                slot.0 = slot.0.min(x);
                slot.1 = slot.1.max(x);
            }
        }
        Some(b)
    }

    fn add_term(&mut self, e: ExpVec, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ambient.describe(), other.ambient.describe()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let mut out = Poly::zero(&self.ambient);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &ExpVec) -> Result<Poly> {
        Poly::from_terms(&self.ambient, self.terms.iter().map(|(k, c)| (k.add(e), c.clone())))
    }

    pub fn pow(&self, m: u32) -> Poly {
        let mut acc = Poly::one(&self.ambient);
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates the ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// A negative exponent in variable `i` requires `images[i]` to be a unit
    /// monomial of a Laurent ambient.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        let n = self.ambient.nvars();
        if images.len() != n {
            return Err(Error::Invalid(format!("expected {n} images, got {}", images.len())));
        }
        for img in images {
            self.check_compatible(img)?;
        }
        let mut cache: HashMap<(usize, i32), Poly> = HashMap::new();
        let mut out = Poly::zero(&self.ambient);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(&self.ambient, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = match cache.get(&(i, k)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if k > 0 {
                            images[i].pow(k as u32)
                        } else {
                            let inv = images[i].inverse_monomial().ok_or_else(|| Error::NonInvertibleImage {
                                var: self.ambient.vars[i].clone(),
                                image: images[i].to_string(),
                            })?;
                            inv.pow((-k) as u32)
                        };
                        cache.insert((i, k), p.clone());
                        p
                    }
                };
                term = &term * &factor;
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Inverse of a unit monomial `c x^e` in a Laurent ambient.
    pub fn inverse_monomial(&self) -> Option<Poly> {
        if !self.ambient.laurent && !self.is_constant() {
            return None;
        }
        let (e, c) = self.as_term()?;
        let inv = c.inv()?;
        Some(Poly::monomial(&self.ambient, e.neg(), inv))
    }

    pub fn map_terms(&self, mut f: impl FnMut(&ExpVec, &Coeff) -> Option<(ExpVec, Coeff)>) -> Result<Poly> {
        Poly::from_terms(&self.ambient, self.terms.iter().filter_map(|(e, c)| f(e, c)))
    }
}

fn check_exp(ambient: &Ambient, e: &ExpVec) -> Result<()> {
    if e.len() != ambient.nvars() {
        return Err(Error::Invalid(format!(
            "exponent vector of length {} in an ambient with {} variables",
            e.len(),
            ambient.nvars()
        )));
    }
    if !ambient.laurent {
        if let Some(i) = e.0.iter().position(|&k| k < 0) {
            return Err(Error::NegativeExponentWithoutLaurent(ambient.vars[i].clone()));
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_display();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let compound = matches!(c, Coeff::T(l) if l.as_rational().is_none());
            let mag = c.abs_display();
            let mag = if compound { format!("({mag})") } else { mag };
            if e.is_zero() {
                f.write_str(&mag)?;
            } else {
                let mono = self.ambient.monomial_string(e);
                if mag == "1" {
                    f.write_str(&mono)?;
                } else {
                    write!(f, "{mag}*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &Poly {
            type Output = Poly;
            /// Panics on ring mismatch; use the `checked_*` form for input.
            fn $m(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-&self.ring().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(amb: &Arc<Ambient>) -> Poly {
        Poly::var(amb, 0)
    }

    fn c(amb: &Arc<Ambient>, n: i64) -> Poly {
        Poly::constant(amb, amb.ring.from_i64(n))
    }

    fn xinv(amb: &Arc<Ambient>) -> Poly {
        Poly::monomial(amb, ExpVec(vec![-1]), amb.ring.one())
    }

    #[test]
    fn difference_of_squares() {
        let a = Ambient::new(Ring::Q, &["x"], false);
        let p = &(&x(&a) + &c(&a, 1)) * &(&x(&a) - &c(&a, 1));
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(p.coeff_of(&ExpVec(vec![0])), a.ring.from_i64(-1));
        assert!(p.coeff_of(&ExpVec(vec![2])).is_one());
        assert!(x(&a).coeff_of(&ExpVec(vec![2])).is_zero());
    }

    #[test]
    fn laurent_square_char_two_drops_cross_term() {
        let a = Ambient::new(Ring::Fp(2), &["x"], true);
        let u = &x(&a) + &xinv(&a);
        assert_eq!((&u * &u).to_string(), "x^2 + x^-2");
        assert_eq!(u.pow(3).to_string(), "x^3 + x + x^-1 + x^-3");
    }

    #[test]
    fn laurent_square_over_q() {
        let a = Ambient::new(Ring::Q, &["x"], true);
        let u = &x(&a) + &xinv(&a);
        let sq = &u * &u;
        assert_eq!(sq.to_string(), "x^2 + 2 + x^-2");
        assert_eq!(sq.constant_term(), Ring::Q.from_i64(2));
    }

    #[test]
    fn pow_edge_cases() {
        let a = Ambient::new(Ring::Q, &["x"], false);
        let f = &x(&a) + &c(&a, 1);
        assert_eq!(f.pow(0), Poly::one(&a));
        assert_eq!(f.pow(1), f);
        assert_eq!(f.pow(2).to_string(), "x^2 + 2*x + 1");
        assert_eq!(Poly::zero(&a).pow(0), Poly::one(&a));
    }

    #[test]
    fn substitute_examples() {
        let a = Ambient::new(Ring::Q, &["x", "y"], false);
        let (xv, yv) = (Poly::var(&a, 0), Poly::var(&a, 1));
        let xy = &xv * &yv;
        let img = [&xv + &c(&a, 1), &yv * &yv];
        assert_eq!(xy.substitute(&img).unwrap().to_string(), "x*y^2 + y^2");

        let u = Ambient::new(Ring::Q, &["x"], false);
        let x3 = x(&u).pow(3);
        let r = x3.substitute(&[&c(&u, 2) * &x(&u)]).unwrap();
        assert_eq!(r.to_string(), "8*x^3");
    }

    #[test]
    fn substitute_inverts_unit_monomials_only() {
        let a = Ambient::new(Ring::Fp(2), &["x"], true);
        let m = xinv(&a).pow(3); // x^-3
        let back = m.substitute(&[xinv(&a)]).unwrap();
        assert_eq!(back, x(&a).pow(3));
        let err = m.substitute(&[&x(&a) + &c(&a, 1)]).unwrap_err();
        assert!(matches!(err, Error::NonInvertibleImage { .. }));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Ambient::new(Ring::Q, &["x"], false);
        let b = Ambient::new(Ring::Z, &["x"], false);
        let err = x(&a).checked_add(&x(&b)).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(..)));
        let c2 = Ambient::new(Ring::Q, &["y"], false);
        assert!(x(&a).checked_mul(&x(&c2)).is_err());
    }

    #[test]
    fn negative_exponent_needs_laurent() {
        let a = Ambient::new(Ring::Q, &["x"], false);
        let err = Poly::try_monomial(&a, ExpVec(vec![-1]), Ring::Q.one()).unwrap_err();
        assert!(matches!(err, Error::NegativeExponentWithoutLaurent(_)));
    }

    #[test]
    fn laurent_coefficients_print_parenthesized() {
        let a = Ambient::new(Ring::QLaurentT, &["x"], false);
        let r = Ring::QLaurentT;
        let coef = &r.one() - &(&r.from_i64(2) * &r.t_power(1).unwrap());
        let p = Poly::monomial(&a, ExpVec(vec![1]), coef);
        assert_eq!(p.to_string(), "(-2*t + 1)*x");
    }
}

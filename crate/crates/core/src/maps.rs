//! Derivations, endomorphisms and E-derivations given by generator images.
//!
//! Every operator implements [`PolyOp`]. Besides evaluation, an operator
//! reports a [`Shape`]: a structural description that is strong enough to
//! prove that a truncated image computation agrees with the true image on a
//! monomial window (see [`crate::subspace::map_image`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Ambient, ExpVec, Poly};
use crate::ring::{Coeff, Ring};

/// Default iteration cap for nilpotency and finiteness probes.
pub const DEFAULT_CAP: usize = 64;

/// Probes stop once an iterate has an exponent of this magnitude.
pub const EXPONENT_GUARD: i64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Derivation,
    Endomorphism,
}

/// Structural class of an operator, used to certify window exactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `m(x^a) = c(a) x^(G a + shift)` with `G` nonsingular.
    Monomial { g: Vec<Vec<i64>>, shift: Vec<i64> },
    /// `I - phi` where `phi(x^a) = c(a) x^(G a)` and `G^order = I`.
    Permuting { g: Vec<Vec<i64>>, order: u32 },
    /// Univariate `I - phi` with `phi` affine of finite order on every
    /// degree filtration piece.
    FiniteOrder { order: u64 },
    /// Univariate: `m(1) = 0` and `deg m(g) = k deg g + s` for nonconstant `g`.
    DegreeLaw { k: i64, s: i64 },
    General,
}

/// A linear operator on the polynomials of one ambient.
pub trait PolyOp: Send + Sync + fmt::Debug {
    fn ambient(&self) -> &Arc<Ambient>;
    fn apply(&self, f: &Poly) -> Result<Poly>;
    fn shape(&self) -> Shape {
        Shape::General
    }
    fn describe(&self) -> String;
}

/// A derivation or endomorphism determined by the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    kind: MapKind,
    ambient: Arc<Ambient>,
    images: Vec<Poly>,
}

impl MapSpec {
    pub fn new(kind: MapKind, ambient: &Arc<Ambient>, images: Vec<Poly>) -> Result<MapSpec> {
        if images.len() != ambient.nvars() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                ambient.nvars(),
                images.len()
            )));
        }
        for img in &images {
            if img.ambient() != ambient {
                return Err(Error::RingMismatch(ambient.describe(), img.ambient().describe()));
            }
        }
        if kind == MapKind::Endomorphism && ambient.laurent {
            for (v, img) in ambient.vars.iter().zip(&images) {
                if img.inverse_monomial().is_none() {
                    return Err(Error::NonInvertibleImage { var: v.clone(), image: img.to_string() });
                }
            }
        }
        Ok(MapSpec { kind, ambient: ambient.clone(), images })
    }

    pub fn derivation(ambient: &Arc<Ambient>, images: Vec<Poly>) -> Result<MapSpec> {
        MapSpec::new(MapKind::Derivation, ambient, images)
    }

    pub fn endomorphism(ambient: &Arc<Ambient>, images: Vec<Poly>) -> Result<MapSpec> {
        MapSpec::new(MapKind::Endomorphism, ambient, images)
    }

    /// `d/dx_i`.
    pub fn partial(ambient: &Arc<Ambient>, i: usize) -> MapSpec {
        let images = (0..ambient.nvars())
            .map(|j| if i == j { Poly::one(ambient) } else { Poly::zero(ambient) })
            .collect();
        MapSpec { kind: MapKind::Derivation, ambient: ambient.clone(), images }
    }

    pub fn identity(ambient: &Arc<Ambient>) -> MapSpec {
        let images = (0..ambient.nvars()).map(|i| Poly::var(ambient, i)).collect();
        MapSpec { kind: MapKind::Endomorphism, ambient: ambient.clone(), images }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if f.ambient() != &self.ambient {
            return Err(Error::RingMismatch(self.ambient.describe(), f.ambient().describe()));
        }
        Ok(())
    }

    fn apply_derivation(&self, f: &Poly) -> Result<Poly> {
        let ring = self.ambient.ring;
        let mut out = Poly::zero(&self.ambient);
        for (e, c) in f.terms() {
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 || self.images[i].is_zero() {
                    continue;
                }
                let mut lower = e.clone();
                lower.0[i] -= 1;
                let coef = c * &ring.from_i64(k as i64);
                let term = Poly::monomial(&self.ambient, lower, coef);
                out = &out + &(&term * &self.images[i]);
            }
        }
        Ok(out)
    }

    /// Composes endomorphisms: `(self ∘ other)(x_i) = self(other(x_i))`.
    pub fn compose(&self, other: &MapSpec) -> Result<MapSpec> {
        if self.kind != MapKind::Endomorphism || other.kind != MapKind::Endomorphism {
            return Err(Error::PreconditionFailed("composition needs endomorphisms".into()));
        }
        let images = other.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        MapSpec::endomorphism(&self.ambient, images)
    }

    /// `self^k` as an endomorphism.
    pub fn power(&self, k: usize) -> Result<MapSpec> {
        let mut acc = MapSpec::identity(&self.ambient);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    fn single_terms(&self) -> Option<Vec<(ExpVec, Coeff)>> {
        self.images.iter().map(|p| p.as_term().map(|(e, c)| (e.clone(), c.clone()))).collect()
    }

    fn derivation_shape(&self) -> Shape {
        let n = self.ambient.nvars();
        let mut shift: Option<ExpVec> = None;
        let mut monomial = true;
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let Some((e, _)) = img.as_term() else {
                monomial = false;
                break;
            };
            let b = e.sub(&ExpVec::unit(n, i));
            match &shift {
                Some(s) if *s != b => {
                    monomial = false;
                    break;
                }
                _ => shift = Some(b),
            }
        }
        if monomial {
            let shift = shift.unwrap_or_else(|| ExpVec::zero(n));
            return Shape::Monomial { g: identity_int(n), shift: shift.0.iter().map(|&v| v as i64).collect() };
        }
        let char0 = self.ambient.ring.characteristic() == 0;
        if n == 1 && !self.ambient.laurent && char0 {
            if let Some(d) = self.images[0].total_degree() {
                return Shape::DegreeLaw { k: 1, s: d - 1 };
            }
        }
        Shape::General
    }

    fn endomorphism_shape(&self) -> Shape {
        match self.single_terms() {
            Some(terms) => {
                let g = exponent_matrix(&terms);
                if int_det_nonzero(&g) {
                    Shape::Monomial { g, shift: vec![0; self.ambient.nvars()] }
                } else {
                    Shape::General
                }
            }
            None => Shape::General,
        }
    }
}

impl PolyOp for MapSpec {
    fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    fn apply(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        match self.kind {
            MapKind::Derivation => self.apply_derivation(f),
            MapKind::Endomorphism => f.substitute(&self.images),
        }
    }

    fn shape(&self) -> Shape {
        match self.kind {
            MapKind::Derivation => self.derivation_shape(),
            MapKind::Endomorphism => self.endomorphism_shape(),
        }
    }

    fn describe(&self) -> String {
        let imgs: Vec<String> =
            self.ambient.vars.iter().zip(&self.images).map(|(v, p)| format!("{v} -> {p}")).collect();
        let kind = match self.kind {
            MapKind::Derivation => "derivation",
            MapKind::Endomorphism => "endomorphism",
        };
        format!("{kind} [{}] on {}", imgs.join(", "), self.ambient.describe())
    }
}

/// The E-derivation `I - phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EDeriv {
    phi: MapSpec,
}

impl EDeriv {
    pub fn new(phi: MapSpec) -> Result<EDeriv> {
        if phi.kind != MapKind::Endomorphism {
            return Err(Error::PreconditionFailed("an E-derivation is I - phi for an endomorphism phi".into()));
        }
        Ok(EDeriv { phi })
    }

    pub fn from_images(ambient: &Arc<Ambient>, images: Vec<Poly>) -> Result<EDeriv> {
        EDeriv::new(MapSpec::endomorphism(ambient, images)?)
    }

    pub fn phi(&self) -> &MapSpec {
        &self.phi
    }

    fn univariate_shape(&self) -> Shape {
        let ring = self.phi.ambient.ring;
        let h = &self.phi.images[0];
        let Some(deg) = h.total_degree() else {
            return Shape::General;
        };
        if deg >= 2 {
            return Shape::DegreeLaw { k: deg, s: 0 };
        }
        if deg == 0 {
            return Shape::DegreeLaw { k: 1, s: 0 };
        }
        let a = h.coeff_of(&ExpVec(vec![1]));
        if a.is_one() {
            // translation x -> x + b with b != 0
            return if ring.characteristic() == 0 { Shape::DegreeLaw { k: 1, s: -1 } } else { Shape::General };
        }
        match root_of_unity_order(&a) {
            // 1 - a^k never vanishes
            None if ring.characteristic() == 0 => Shape::DegreeLaw { k: 1, s: 0 },
            Some(r) if ring.characteristic() == 0 || r % ring.characteristic() != 0 => Shape::FiniteOrder { order: r },
            _ => Shape::General,
        }
    }
}

impl PolyOp for EDeriv {
    fn ambient(&self) -> &Arc<Ambient> {
        &self.phi.ambient
    }

    fn apply(&self, f: &Poly) -> Result<Poly> {
        let img = self.phi.apply(f)?;
        f.checked_sub(&img)
    }

    fn shape(&self) -> Shape {
        let n = self.phi.ambient.nvars();
        let diagonal = self.phi.images.iter().enumerate().all(|(i, p)| {
            p.is_zero() || p.as_term().is_some_and(|(e, _)| *e == ExpVec::unit(n, i))
        });
        if diagonal {
            return Shape::Monomial { g: identity_int(n), shift: vec![0; n] };
        }
        if let Some(terms) = self.phi.single_terms() {
            let g = exponent_matrix(&terms);
            if let Some(order) = int_matrix_order(&g, 24) {
                return Shape::Permuting { g, order };
            }
        }
        if n == 1 && !self.phi.ambient.laurent {
            return self.univariate_shape();
        }
        Shape::General
    }

    fn describe(&self) -> String {
        format!("I - ({})", self.phi.describe())
    }
}

/// `f -> inner(factor * f)`; its image is the image of the principal ideal
/// generated by `factor` under `inner`.
#[derive(Clone, Debug)]
pub struct Restricted<O> {
    pub inner: O,
    pub factor: Poly,
}

impl<O: PolyOp> PolyOp for Restricted<O> {
    fn ambient(&self) -> &Arc<Ambient> {
        self.inner.ambient()
    }

    fn apply(&self, f: &Poly) -> Result<Poly> {
        self.inner.apply(&self.factor.checked_mul(f)?)
    }

    fn describe(&self) -> String {
        format!("({}) restricted to ({})", self.inner.describe(), self.factor)
    }
}

fn identity_int(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Column `i` is the exponent vector of the image of `x_i`.
fn exponent_matrix(terms: &[(ExpVec, Coeff)]) -> Vec<Vec<i64>> {
    let n = terms.len();
    (0..n).map(|r| (0..n).map(|c| terms[c].0 .0[r] as i64).collect()).collect()
}

fn int_det_nonzero(g: &[Vec<i64>]) -> bool {
    let m = Matrix::from_i64(Ring::Q, g);
    g.is_empty() || !m.det().expect("field").is_zero()
}

fn int_matrix_order(g: &[Vec<i64>], max: u32) -> Option<u32> {
    let n = g.len();
    let id = identity_int(n);
    let mut acc = g.to_vec();
    for r in 1..=max {
        if acc == id {
            return Some(r);
        }
        let next: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| acc[i][k].checked_mul(g[k][j]).unwrap_or(i64::MAX / 4)).sum()).collect())
            .collect();
        acc = next;
    }
    None
}

/// Multiplicative order of a coefficient that is a root of unity.
fn root_of_unity_order(a: &Coeff) -> Option<u64> {
    if a.is_zero() {
        return None;
    }
    match a {
        Coeff::Fp { p, .. } => {
            if *p > 1 << 20 {
                return None;
            }
            let mut acc = a.clone();
            for r in 1..*p {
                if acc.is_one() {
                    return Some(r);
                }
                acc = &acc * a;
            }
            None
        }
        _ => {
            if a.is_one() {
                Some(1)
            } else if (-a).is_one() {
                Some(2)
            } else {
                None
            }
        }
    }
}

fn max_abs_exponent(f: &Poly) -> i64 {
    f.support().flat_map(|e| e.0.iter().map(|&k| (k as i64).abs())).max().unwrap_or(0)
}

/// `m^k(f)`.
pub fn iterate(m: &dyn PolyOp, f: &Poly, k: usize) -> Result<Poly> {
    let mut cur = f.clone();
    for _ in 0..k {
        cur = m.apply(&cur)?;
    }
    Ok(cur)
}

/// `e^D(f) = sum_i D^i(f) / i!` when the series terminates within `cap` terms.
pub fn exp_ln_derivation(d: &MapSpec, f: &Poly, cap: usize) -> Result<Poly> {
    if d.kind != MapKind::Derivation {
        return Err(Error::PreconditionFailed("exponential needs a derivation".into()));
    }
    let ring = d.ambient.ring;
    let mut sum = Poly::zero(&d.ambient);
    let mut term = f.clone();
    let mut fact = BigInt::one();
    for i in 0..=cap {
        if term.is_zero() {
            return Ok(sum);
        }
        if i > 0 {
            fact *= BigInt::from(i);
        }
        let div = ring.from_bigint(&fact);
        let scaled = term.map_terms(|e, c| Some((e.clone(), c.div_exact(&div)?)));
        let scaled = scaled?;
        if scaled.num_terms() != term.num_terms() {
            return Err(Error::Unsupported(format!("division by {i}! is not exact over {ring}")));
        }
        sum = &sum + &scaled;
        term = d.apply(&term)?;
    }
    Err(Error::NotLocallyNilpotentAt { poly: f.to_string(), cap })
}

/// Least-lexicographic `(i, j)`, `0 <= i < j <= bound`, with `m^i(a) = m^j(a)`.
pub fn orbit_collision(m: &dyn PolyOp, a: &Poly, bound: usize) -> Result<Option<(usize, usize)>> {
    let mut seen: HashMap<Poly, usize> = HashMap::new();
    let mut cur = a.clone();
    for j in 0..=bound {
        if let Some(&i) = seen.get(&cur) {
            return Ok(Some((i, j)));
        }
        if j == bound || max_abs_exponent(&cur) > EXPONENT_GUARD {
            break;
        }
        seen.insert(cur.clone(), j);
        cur = m.apply(&cur)?;
    }
    Ok(None)
}

/// `(i, j)` with `phi^i = phi^j` as maps, from per-generator collisions
/// aligned at a common `i >= 1` and the product of their periods.
pub fn endo_period_detect(phi: &MapSpec, bound: usize) -> Result<Option<(usize, usize)>> {
    if phi.kind != MapKind::Endomorphism {
        return Err(Error::PreconditionFailed("period detection needs an endomorphism".into()));
    }
    let mut start = 1usize;
    let mut period = 1usize;
    for k in 0..phi.ambient.nvars() {
        let x = Poly::var(&phi.ambient, k);
        let Some((i, j)) = orbit_collision(phi, &x, bound)? else {
            return Ok(None);
        };
        start = start.max(i);
        period = period.checked_mul(j - i).ok_or_else(|| Error::Invalid("period overflow".into()))?;
    }
    let (i, j) = (start, start + period);
    for k in 0..phi.ambient.nvars() {
        let x = Poly::var(&phi.ambient, k);
        let a = iterate(phi, &x, i)?;
        let b = iterate(phi, &a, j - i)?;
        if a != b {
            return Err(Error::Invalid(format!("period certificate ({i}, {j}) failed on generator {k}")));
        }
    }
    Ok(Some((i, j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LnVerdict {
    NilpotentWithin(usize),
    NotWithin(usize),
}

/// Least `k in 1..=cap` with `m^k(f) = 0`.
pub fn ln_probe_one(m: &dyn PolyOp, f: &Poly, cap: usize) -> Result<LnVerdict> {
    let mut cur = f.clone();
    for k in 1..=cap {
        if max_abs_exponent(&cur) > EXPONENT_GUARD {
            break;
        }
        cur = m.apply(&cur)?;
        if cur.is_zero() {
            return Ok(LnVerdict::NilpotentWithin(k));
        }
    }
    Ok(LnVerdict::NotWithin(cap))
}

/// Aggregate over probes: the largest nilpotency index, or `NotWithin`.
pub fn ln_probe(m: &dyn PolyOp, probes: &[Poly], cap: usize) -> Result<LnVerdict> {
    let mut worst = 1;
    for p in probes {
        match ln_probe_one(m, p, cap)? {
            LnVerdict::NilpotentWithin(k) => worst = worst.max(k),
            v @ LnVerdict::NotWithin(_) => return Ok(v),
        }
    }
    Ok(LnVerdict::NilpotentWithin(worst))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfVerdict {
    SpanStabilized(usize),
    NotWithin(usize),
}

/// Tests whether some iterate `m^k(f)`, `k <= cap`, lies in the span of the
/// earlier ones (rank over the fraction field).
pub fn lf_probe(m: &dyn PolyOp, f: &Poly, cap: usize) -> Result<LfVerdict> {
    let ring = m.ambient().ring;
    let mut iterates: Vec<Poly> = Vec::new();
    let mut cur = f.clone();
    for k in 0..=cap {
        let mut index: HashMap<ExpVec, usize> = HashMap::new();
        for p in iterates.iter().chain(std::iter::once(&cur)) {
            for e in p.support() {
                let next = index.len();
                index.entry(e.clone()).or_insert(next);
            }
        }
        let rows: Vec<Vec<Coeff>> = iterates
            .iter()
            .chain(std::iter::once(&cur))
            .map(|p| {
                let mut row = vec![ring.zero(); index.len()];
                for (e, c) in p.terms() {
                    row[index[e]] = c.clone();
                }
                row
            })
            .collect();
        let rank = Matrix::from_rows(ring, index.len(), rows).rank();
        if rank == k {
            return Ok(LfVerdict::SpanStabilized(k));
        }
        if k == cap || max_abs_exponent(&cur) > EXPONENT_GUARD {
            break;
        }
        let next = m.apply(&cur)?;
        iterates.push(std::mem::replace(&mut cur, next));
    }
    Ok(LfVerdict::NotWithin(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn amb(ring: Ring, vars: &[&str], laurent: bool) -> Arc<Ambient> {
        Ambient::new(ring, vars, laurent)
    }

    fn p(a: &Arc<Ambient>, s: &str) -> Poly {
        parse_poly(s, a).unwrap()
    }

    fn der(a: &Arc<Ambient>, imgs: &[&str]) -> MapSpec {
        MapSpec::derivation(a, imgs.iter().map(|s| p(a, s)).collect()).unwrap()
    }

    fn endo(a: &Arc<Ambient>, imgs: &[&str]) -> MapSpec {
        MapSpec::endomorphism(a, imgs.iter().map(|s| p(a, s)).collect()).unwrap()
    }

    fn edr(a: &Arc<Ambient>, imgs: &[&str]) -> EDeriv {
        EDeriv::new(endo(a, imgs)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let a = amb(Ring::Q, &["x", "y"], false);
        let d = der(&a, &["1", "-y^2"]);
        assert_eq!(d.apply(&p(&a, "x*y")).unwrap(), p(&a, "y - x*y^2"));

        let u = amb(Ring::Q, &["x"], false);
        let euler = der(&u, &["x"]);
        for k in 0..6 {
            let xk = Poly::var(&u, 0).pow(k);
            assert_eq!(euler.apply(&xk).unwrap(), xk.scale(&Ring::Q.from_i64(k as i64)));
        }

        let f2 = amb(Ring::Fp(2), &["x"], true);
        let delta = edr(&f2, &["x^-1"]);
        for m in 1..6 {
            let xm = Poly::var(&f2, 0).pow(m);
            let expect = &xm + &xm.substitute(&[p(&f2, "x^-1")]).unwrap();
            assert_eq!(delta.apply(&xm).unwrap(), expect);
        }
        assert_eq!(delta.apply(&p(&f2, "x^3")).unwrap(), p(&f2, "x^3 + x^-3"));
    }

    #[test]
    fn laurent_derivation_on_inverse() {
        let a = amb(Ring::Q, &["x"], true);
        let d = MapSpec::partial(&a, 0);
        assert_eq!(d.apply(&p(&a, "x^-1")).unwrap(), p(&a, "-1*x^-2"));
    }

    #[test]
    fn laurent_endomorphism_needs_unit_images() {
        let a = amb(Ring::Fp(2), &["x"], true);
        let err = MapSpec::endomorphism(&a, vec![p(&a, "x + 1")]).unwrap_err();
        assert!(matches!(err, Error::NonInvertibleImage { .. }));
    }

    #[test]
    fn iterate_examples() {
        let u = amb(Ring::Q, &["x"], false);
        let d = MapSpec::partial(&u, 0);
        assert!(iterate(&d, &p(&u, "x^2"), 3).unwrap().is_zero());
        let inv = endo(&u, &["1 - x"]);
        assert_eq!(iterate(&inv, &p(&u, "x"), 2).unwrap(), p(&u, "x"));
        let delta = edr(&u, &["2*x"]);
        assert_eq!(iterate(&delta, &p(&u, "x"), 2).unwrap(), p(&u, "x"));
        assert_eq!(iterate(&delta, &p(&u, "x"), 0).unwrap(), p(&u, "x"));
    }

    #[test]
    fn exponential_examples() {
        let u = amb(Ring::Q, &["x"], false);
        let d = MapSpec::partial(&u, 0);
        assert_eq!(exp_ln_derivation(&d, &p(&u, "x^2"), DEFAULT_CAP).unwrap(), p(&u, "x^2 + 2*x + 1"));
        let zero = der(&u, &["0"]);
        assert_eq!(exp_ln_derivation(&zero, &p(&u, "x^3 - x"), DEFAULT_CAP).unwrap(), p(&u, "x^3 - x"));
        let b = amb(Ring::Q, &["x", "y"], false);
        let ydx = der(&b, &["y", "0"]);
        assert_eq!(exp_ln_derivation(&ydx, &p(&b, "x"), DEFAULT_CAP).unwrap(), p(&b, "x + y"));
        let euler = der(&u, &["x"]);
        assert!(matches!(
            exp_ln_derivation(&euler, &p(&u, "x"), 10),
            Err(Error::NotLocallyNilpotentAt { cap: 10, .. })
        ));
    }

    #[test]
    fn orbit_examples() {
        let u = amb(Ring::Q, &["x"], false);
        let x = p(&u, "x");
        assert_eq!(orbit_collision(&endo(&u, &["1 - x"]), &x, 3).unwrap(), Some((0, 2)));
        assert_eq!(orbit_collision(&endo(&u, &["5"]), &x, 3).unwrap(), Some((1, 2)));
        assert_eq!(orbit_collision(&endo(&u, &["2*x"]), &x, 10).unwrap(), None);
    }

    #[test]
    fn period_examples() {
        let u = amb(Ring::Q, &["x"], false);
        assert_eq!(endo_period_detect(&endo(&u, &["1 - x"]), 12).unwrap(), Some((1, 3)));
        assert_eq!(endo_period_detect(&endo(&u, &["x"]), 12).unwrap(), Some((1, 2)));
        assert_eq!(endo_period_detect(&endo(&u, &["x + 1"]), 12).unwrap(), None);
        let b = amb(Ring::Q, &["x", "y"], false);
        let phi = endo(&b, &["y", "x"]);
        let (i, j) = endo_period_detect(&phi, 12).unwrap().unwrap();
        assert_eq!(phi.power(i).unwrap(), phi.power(j).unwrap());
    }

    #[test]
    fn period_combines_different_tails() {
        // x has period 2 from step 0, y reaches a fixed point after 1 step.
        let b = amb(Ring::Q, &["x", "y"], false);
        let phi = endo(&b, &["-1*x", "3"]);
        let (i, j) = endo_period_detect(&phi, 12).unwrap().unwrap();
        assert_eq!((i, j), (1, 3));
        assert_eq!(phi.power(i).unwrap(), phi.power(j).unwrap());
    }

    #[test]
    fn nilpotency_probe_examples() {
        let u = amb(Ring::Q, &["x"], false);
        let d = MapSpec::partial(&u, 0);
        assert_eq!(ln_probe(&d, &[p(&u, "x^5")], 64).unwrap(), LnVerdict::NilpotentWithin(6));
        let delta = edr(&u, &["x + 1"]);
        assert_eq!(ln_probe(&delta, &[p(&u, "x")], 64).unwrap(), LnVerdict::NilpotentWithin(2));
        let euler = der(&u, &["x"]);
        assert_eq!(ln_probe(&euler, &[p(&u, "x")], 64).unwrap(), LnVerdict::NotWithin(64));
    }

    #[test]
    fn finiteness_probe_examples() {
        let u = amb(Ring::Q, &["x"], false);
        let euler = der(&u, &["x"]);
        assert_eq!(lf_probe(&euler, &p(&u, "x^2 + x"), 64).unwrap(), LfVerdict::SpanStabilized(2));
        let b = amb(Ring::Q, &["x", "y"], false);
        let d = der(&b, &["1", "-y^2"]);
        for cap in 3..8 {
            assert_eq!(lf_probe(&d, &p(&b, "y"), cap).unwrap(), LfVerdict::NotWithin(cap));
        }
        let sq = endo(&u, &["x^2"]);
        assert_eq!(lf_probe(&sq, &p(&u, "x"), 20).unwrap(), LfVerdict::NotWithin(20));
        assert_eq!(lf_probe(&sq, &Poly::zero(&u), 20).unwrap(), LfVerdict::SpanStabilized(0));
    }

    #[test]
    fn shapes() {
        let f3 = amb(Ring::Fp(3), &["x"], false);
        assert_eq!(MapSpec::partial(&f3, 0).shape(), Shape::Monomial { g: vec![vec![1]], shift: vec![-1] });
        let f2 = amb(Ring::Fp(2), &["x"], true);
        assert_eq!(edr(&f2, &["x^-1"]).shape(), Shape::Permuting { g: vec![vec![-1]], order: 2 });
        let fr = amb(Ring::Fp(2), &["x"], false);
        assert_eq!(edr(&fr, &["x^2"]).shape(), Shape::DegreeLaw { k: 2, s: 0 });
        let q = amb(Ring::Q, &["x"], false);
        assert_eq!(edr(&q, &["0"]).shape(), Shape::Monomial { g: vec![vec![1]], shift: vec![0] });
        assert_eq!(edr(&q, &["2"]).shape(), Shape::DegreeLaw { k: 1, s: 0 });
        assert_eq!(edr(&q, &["1 - x"]).shape(), Shape::FiniteOrder { order: 2 });
        assert_eq!(edr(&q, &["x + 1"]).shape(), Shape::DegreeLaw { k: 1, s: -1 });
        assert_eq!(der(&q, &["x^2 - 1"]).shape(), Shape::DegreeLaw { k: 1, s: 1 });
        let b = amb(Ring::Q, &["x", "y"], false);
        assert_eq!(edr(&b, &["y", "x"]).shape(), Shape::Permuting { g: vec![vec![0, 1], vec![1, 0]], order: 2 });
        assert_eq!(edr(&b, &["x + 1", "y^2"]).shape(), Shape::General);
    }

    fn poly_from(a: &Arc<Ambient>, terms: &[(Vec<i32>, i64)]) -> Poly {
        Poly::from_terms(a, terms.iter().map(|(e, c)| (ExpVec(e.clone()), a.ring.from_i64(*c)))).unwrap()
    }

    fn terms2(max_deg: i32, len: usize) -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0..=max_deg, 2), -4i64..=4), 0..=len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn leibniz_rule(d0 in terms2(2, 3), d1 in terms2(2, 3), f in terms2(3, 4), g in terms2(3, 4)) {
            let a = amb(Ring::Q, &["x", "y"], false);
            let d = MapSpec::derivation(&a, vec![poly_from(&a, &d0), poly_from(&a, &d1)]).unwrap();
            let (f, g) = (poly_from(&a, &f), poly_from(&a, &g));
            let lhs = d.apply(&(&f * &g)).unwrap();
            let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn e_derivation_product_rule(i0 in terms2(1, 3), i1 in terms2(1, 3), f in terms2(2, 4), g in terms2(2, 4)) {
            let a = amb(Ring::Fp(5), &["x", "y"], false);
            let delta = EDeriv::from_images(&a, vec![poly_from(&a, &i0), poly_from(&a, &i1)]).unwrap();
            let (f, g) = (poly_from(&a, &f), poly_from(&a, &g));
            let (df, dg) = (delta.apply(&f).unwrap(), delta.apply(&g).unwrap());
            let lhs = delta.apply(&(&f * &g)).unwrap();
            let rhs = &(&(&df * &g) + &(&f * &dg)) - &(&df * &dg);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn orbit_certificates_verify(c in -3i64..=3, b in -2i64..=2, bound in 1usize..8) {
            let u = amb(Ring::Q, &["x"], false);
            let phi = MapSpec::endomorphism(&u, vec![poly_from(&u, &[(vec![1], c), (vec![0], b)])]).unwrap();
            let x = Poly::var(&u, 0);
            if let Some((i, j)) = orbit_collision(&phi, &x, bound).unwrap() {
                prop_assert!(i < j && j <= bound);
                prop_assert_eq!(iterate(&phi, &x, i).unwrap(), iterate(&phi, &x, j).unwrap());
            }
        }
    }
}

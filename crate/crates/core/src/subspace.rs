//! Exact spans inside monomial windows.
//!
//! A [`Window`] is a finite exponent box; polynomials inside it have dense
//! coordinates in ascending lexicographic monomial order. Spans are kept in
//! canonical form: RREF over a field ([`Subspace`]), Hermite normal form over
//! `Z` ([`Lattice`]), or, over `Q[t, t^-1]`, a module generated by single
//! terms on distinct monomials ([`MonomialModule`]).
//!
//! Every span carries an [`Exactness`] flag. `WindowExact` means membership of
//! any polynomial of the target window in the span agrees with membership in
//! the untruncated image; it is only issued when the operator's [`Shape`]
//! proves it.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{reduce_hnf, Matrix, RowSpace};
use crate::maps::{PolyOp, Shape};
use crate::par::Exec;
use crate::poly::{Ambient, ExpVec, Poly};
use crate::ring::{Coeff, Ring};

/// Default exponent bound `N` for windows.
pub const DEFAULT_DEGREE: i32 = 12;
/// Default power bound `M` for radical probes.
pub const DEFAULT_POWER: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exactness {
    BoundedEvidence,
    WindowExact,
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        self == Exactness::WindowExact
    }

    pub fn and(self, other: Exactness) -> Exactness {
        self.min(other)
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::WindowExact => "window-exact",
            Exactness::BoundedEvidence => "bounded-evidence",
        })
    }
}

/// Finite box of exponent vectors, `lo_i <= e_i <= hi_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    bounds: Vec<(i32, i32)>,
    laurent: bool,
}

impl Window {
    pub fn new(bounds: Vec<(i32, i32)>, laurent: bool) -> Result<Window> {
        for &(lo, hi) in &bounds {
            if lo > hi {
                return Err(Error::Invalid(format!("empty exponent range [{lo}, {hi}]")));
            }
            if lo < 0 && !laurent {
                return Err(Error::Invalid("negative exponent bound outside a Laurent window".into()));
            }
        }
        Ok(Window { bounds, laurent })
    }

    /// `[-n, n]` per variable for Laurent windows, else `[0, n]`.
    pub fn degree_box(nvars: usize, n: i32, laurent: bool) -> Window {
        let lo = if laurent { -n } else { 0 };
        Window { bounds: vec![(lo, n); nvars], laurent }
    }

    pub fn for_ambient(ambient: &Ambient, n: i32) -> Window {
        Window::degree_box(ambient.nvars(), n, ambient.laurent)
    }

    pub fn bounds(&self) -> &[(i32, i32)] {
        &self.bounds
    }

    pub fn nvars(&self) -> usize {
        self.bounds.len()
    }

    pub fn laurent(&self) -> bool {
        self.laurent
    }

    pub fn size(&self) -> usize {
        self.bounds.iter().map(|(lo, hi)| (hi - lo + 1) as usize).product()
    }

    pub fn contains(&self, e: &ExpVec) -> bool {
        e.len() == self.nvars() && e.0.iter().zip(&self.bounds).all(|(k, (lo, hi))| lo <= k && k <= hi)
    }

    pub fn contains_poly(&self, f: &Poly) -> bool {
        f.support().all(|e| self.contains(e))
    }

    pub fn index_of(&self, e: &ExpVec) -> Option<usize> {
        if !self.contains(e) {
            return None;
        }
        let mut idx = 0usize;
        for (k, (lo, hi)) in e.0.iter().zip(&self.bounds) {
            idx = idx * (hi - lo + 1) as usize + (k - lo) as usize;
        }
        Some(idx)
    }

    pub fn exp_at(&self, mut idx: usize) -> ExpVec {
        let mut out = vec![0; self.nvars()];
        for (slot, (lo, hi)) in out.iter_mut().zip(&self.bounds).rev() {
            let w = (hi - lo + 1) as usize;
            *slot = lo + (idx % w) as i32;
            idx /= w;
        }
        ExpVec(out)
    }

    /// All exponents in ascending lexicographic order.
    pub fn monomials(&self) -> Vec<ExpVec> {
        (0..self.size()).map(|i| self.exp_at(i)).collect()
    }

    /// Box enlarged by `k` in every direction (clamped at 0 unless Laurent).
    pub fn grow(&self, k: i32) -> Window {
        let bounds = self
            .bounds
            .iter()
            .map(|&(lo, hi)| (if self.laurent { lo - k } else { (lo - k).max(0) }, hi + k))
            .collect();
        Window { bounds, laurent: self.laurent }
    }

    pub fn is_subwindow_of(&self, other: &Window) -> bool {
        self.nvars() == other.nvars()
            && self.bounds.iter().zip(&other.bounds).all(|((a, b), (c, d))| c <= a && b <= d)
    }

    fn check_ambient(&self, ambient: &Ambient) -> Result<()> {
        if ambient.nvars() != self.nvars() || (self.laurent && !ambient.laurent) {
            return Err(Error::Invalid(format!(
                "window of {} variables (laurent: {}) does not fit {}",
                self.nvars(),
                self.laurent,
                ambient.describe()
            )));
        }
        Ok(())
    }

    fn overflow(&self, f: &Poly, what: &str) -> Error {
        let bad: Vec<String> =
            f.support().filter(|e| !self.contains(e)).map(|e| f.ambient().monomial_string(e)).collect();
        Error::OutOfWindow(format!("{what} has terms outside the window: {}", bad.join(", ")))
    }

    pub fn coords(&self, f: &Poly) -> Result<Vec<Coeff>> {
        self.coords_named(f, &f.to_string())
    }

    fn coords_named(&self, f: &Poly, what: &str) -> Result<Vec<Coeff>> {
        self.check_ambient(f.ambient())?;
        let mut v = vec![f.ring().zero(); self.size()];
        for (e, c) in f.terms() {
            match self.index_of(e) {
                Some(i) => v[i] = c.clone(),
                None => return Err(self.overflow(f, what)),
            }
        }
        Ok(v)
    }

    pub fn poly(&self, ambient: &Arc<Ambient>, coords: &[Coeff]) -> Poly {
        Poly::from_terms(ambient, coords.iter().enumerate().map(|(i, c)| (self.exp_at(i), c.clone())))
            .expect("window exponents fit the ambient")
    }
}

/// Span over a field in RREF coordinates of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    window: Window,
    space: RowSpace,
    exactness: Exactness,
}

impl Subspace {
    pub fn zero(window: &Window, ring: Ring) -> Subspace {
        Subspace { window: window.clone(), space: RowSpace::zero(ring, window.size()), exactness: Exactness::WindowExact }
    }

    pub fn from_space(window: &Window, space: RowSpace, exactness: Exactness) -> Subspace {
        assert_eq!(space.ambient_dim(), window.size(), "coordinate length");
        Subspace { window: window.clone(), space, exactness }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn ring(&self) -> Ring {
        self.space.ring()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn basis_polys(&self, ambient: &Arc<Ambient>) -> Vec<Poly> {
        self.space.basis().rows().map(|r| self.window.poly(ambient, r)).collect()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.space.contains(&self.window.coords(f)?))
    }
}

/// `Z`-span in Hermite normal form over the coordinates of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    window: Window,
    basis: Matrix,
    pivots: Vec<usize>,
    exactness: Exactness,
}

impl Lattice {
    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn basis_polys(&self, ambient: &Arc<Ambient>) -> Vec<Poly> {
        self.basis.rows().map(|r| self.window.poly(ambient, r)).collect()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let v = self.window.coords(f)?;
        Ok(reduce_hnf(&self.basis, &self.pivots, &v).is_some_and(|r| r.iter().all(Coeff::is_zero)))
    }
}

/// Module generated by single terms `c x^e` on pairwise distinct monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    window: Window,
    ring: Ring,
    gens: BTreeMap<ExpVec, Coeff>,
    exactness: Exactness,
}

impl MonomialModule {
    pub fn generator_at(&self, e: &ExpVec) -> Option<&Coeff> {
        self.gens.get(e)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.window.coords(f)?;
        Ok(f.terms().all(|(e, c)| self.gens.get(e).is_some_and(|g| c.div_exact(g).is_some())))
    }
}

/// A span of one of the supported kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Span {
    Field(Subspace),
    Integer(Lattice),
    Monomial(MonomialModule),
}

impl Span {
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        match self {
            Span::Field(s) => s.contains(f),
            Span::Integer(l) => l.contains(f),
            Span::Monomial(m) => m.contains(f),
        }
    }

    pub fn window(&self) -> &Window {
        match self {
            Span::Field(s) => &s.window,
            Span::Integer(l) => &l.window,
            Span::Monomial(m) => &m.window,
        }
    }

    pub fn exactness(&self) -> Exactness {
        match self {
            Span::Field(s) => s.exactness,
            Span::Integer(l) => l.exactness,
            Span::Monomial(m) => m.exactness,
        }
    }

    /// Dimension or rank of the span.
    pub fn rank(&self) -> usize {
        match self {
            Span::Field(s) => s.dim(),
            Span::Integer(l) => l.rank(),
            Span::Monomial(m) => m.gens.len(),
        }
    }

    pub fn with_exactness(mut self, e: Exactness) -> Span {
        match &mut self {
            Span::Field(s) => s.exactness = e,
            Span::Integer(l) => l.exactness = e,
            Span::Monomial(m) => m.exactness = e,
        }
        self
    }

    pub fn as_subspace(&self) -> Option<&Subspace> {
        match self {
            Span::Field(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_lattice(&self) -> Option<&Lattice> {
        match self {
            Span::Integer(l) => Some(l),
            _ => None,
        }
    }
}

fn coord_rows(vectors: &[Poly], window: &Window) -> Result<Vec<Vec<Coeff>>> {
    vectors.iter().map(|v| window.coords(v)).collect()
}

/// RREF span of `vectors` over a field.
pub fn span(vectors: &[Poly], window: &Window, ring: Ring) -> Result<Subspace> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.name()));
    }
    let rows = coord_rows(vectors, window)?;
    let space = RowSpace::span(ring, window.size(), rows)?;
    Ok(Subspace { window: window.clone(), space, exactness: Exactness::WindowExact })
}

/// HNF span of integer `vectors`.
pub fn lattice_span(vectors: &[Poly], window: &Window) -> Result<Lattice> {
    if let Some(v) = vectors.iter().find(|v| v.ring() != Ring::Z) {
        return Err(Error::RingMismatch(Ring::Z.name(), v.ring().name()));
    }
    let rows = coord_rows(vectors, window)?;
    let (basis, pivots) = Matrix::from_rows(Ring::Z, window.size(), rows).hnf()?;
    Ok(Lattice { window: window.clone(), basis, pivots, exactness: Exactness::WindowExact })
}

fn span_of(ring: Ring, vectors: &[Poly], window: &Window, exactness: Exactness) -> Result<Span> {
    let out = match ring {
        Ring::Q | Ring::Fp(_) => Span::Field(span(vectors, window, ring)?),
        Ring::Z => Span::Integer(lattice_span(vectors, window)?),
        Ring::QLaurentT => {
            let mut gens = BTreeMap::new();
            for v in vectors.iter().filter(|v| !v.is_zero()) {
                window.coords(v)?;
                let Some((e, c)) = v.as_term() else {
                    return Err(Error::Unsupported(format!(
                        "module spans over {} are supported for single-term generators only",
                        ring.name()
                    )));
                };
                if gens.insert(e.clone(), c.clone()).is_some() {
                    return Err(Error::Unsupported(format!(
                        "module spans over {} need generators on distinct monomials",
                        ring.name()
                    )));
                }
            }
            Span::Monomial(MonomialModule { window: window.clone(), ring, gens, exactness: Exactness::WindowExact })
        }
    };
    Ok(out.with_exactness(exactness))
}

fn solve_integral(g: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i32>> {
    let identity = g.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)));
    if identity {
        return rhs.iter().map(|&v| i32::try_from(v).ok()).collect();
    }
    let m = Matrix::from_i64(Ring::Q, g);
    let b: Vec<Coeff> = rhs.iter().map(|&v| Ring::Q.from_i64(v)).collect();
    let x = m.solve(&b).ok()??;
    x.iter().map(|c| c.as_bigint().and_then(|n| i32::try_from(n).ok())).collect()
}

fn apply_int(g: &[Vec<i64>], e: &ExpVec) -> Vec<i64> {
    g.iter().map(|row| row.iter().zip(&e.0).map(|(a, &b)| a * b as i64).sum()).collect()
}

/// Decides whether the truncated image over the monomials accepted by
/// `in_source` equals the true image inside `target`.
fn certify(op: &dyn PolyOp, target: &Window, in_source: &dyn Fn(&ExpVec) -> bool) -> Result<Exactness> {
    let amb = op.ambient();
    let one = amb.ring.one();
    let all_target_in_source = || target.monomials().iter().all(in_source);
    let exact = match op.shape() {
        Shape::Monomial { g, shift } => {
            let mut ok = true;
            for tau in target.monomials() {
                let rhs: Vec<i64> = tau.0.iter().zip(&shift).map(|(&t, s)| t as i64 - s).collect();
                let Some(alpha) = solve_integral(&g, &rhs) else { continue };
                let alpha = ExpVec(alpha);
                if (!amb.laurent && alpha.has_negative()) || in_source(&alpha) {
                    continue;
                }
                if !op.apply(&Poly::monomial(amb, alpha, one.clone()))?.is_zero() {
                    ok = false;
                    break;
                }
            }
            ok
        }
        Shape::Permuting { g, .. } => {
            target.monomials().iter().all(|e| target.contains(&ExpVec(apply_int(&g, e).iter().map(|&v| v as i32).collect())))
                && all_target_in_source()
        }
        Shape::FiniteOrder { .. } => {
            target.nvars() == 1 && !target.laurent && target.bounds[0].0 == 0 && all_target_in_source()
        }
        Shape::DegreeLaw { k, s } => {
            let top = target.bounds[0].1 as i64;
            let d = if top - s < 0 { 0 } else { (top - s) / k };
            target.nvars() == 1 && (1..=d).all(|j| in_source(&ExpVec(vec![j as i32])))
        }
        Shape::General => false,
    };
    Ok(if exact { Exactness::WindowExact } else { Exactness::BoundedEvidence })
}

fn monomial_images(exec: Exec, op: &dyn PolyOp, mons: &[ExpVec]) -> Result<Vec<Poly>> {
    let amb = op.ambient().clone();
    let one = amb.ring.one();
    exec.map(mons, |e| op.apply(&Poly::monomial(&amb, e.clone(), one.clone()))).into_iter().collect()
}

/// Span of `op(x^e)` over all `e` in `source`, inside `target`.
pub fn map_image(op: &dyn PolyOp, source: &Window, target: &Window) -> Result<Span> {
    map_image_with(Exec::default(), op, source, target)
}

pub fn map_image_with(exec: Exec, op: &dyn PolyOp, source: &Window, target: &Window) -> Result<Span> {
    let amb = op.ambient();
    source.check_ambient(amb)?;
    target.check_ambient(amb)?;
    let mons = source.monomials();
    let images = monomial_images(exec, op, &mons)?;
    for (e, img) in mons.iter().zip(&images) {
        if !target.contains_poly(img) {
            return Err(Error::TargetOverflow { monomial: amb.monomial_string(e) });
        }
    }
    let exactness = certify(op, target, &|e| source.contains(e))?;
    span_of(amb.ring, &images, target, exactness)
}

/// Image inside `target` from a source chosen by the operator's shape: the
/// certifying source when the shape admits one, otherwise every monomial of
/// the target box grown by one whose image fits the target.
pub fn image_in(op: &dyn PolyOp, target: &Window) -> Result<Span> {
    image_in_with(Exec::default(), op, target)
}

pub fn image_in_with(exec: Exec, op: &dyn PolyOp, target: &Window) -> Result<Span> {
    let amb = op.ambient();
    target.check_ambient(amb)?;
    let candidates: Vec<ExpVec> = match op.shape() {
        Shape::Monomial { g, shift } => target
            .monomials()
            .iter()
            .filter_map(|tau| {
                let rhs: Vec<i64> = tau.0.iter().zip(&shift).map(|(&t, s)| t as i64 - s).collect();
                solve_integral(&g, &rhs).map(ExpVec).filter(|a| amb.laurent || !a.has_negative())
            })
            .collect(),
        Shape::Permuting { .. } | Shape::FiniteOrder { .. } => target.monomials(),
        Shape::DegreeLaw { k, s } if target.nvars() == 1 => {
            let top = target.bounds[0].1 as i64;
            let d = if top - s < 0 { 0 } else { (top - s) / k };
            (0..=d).map(|j| ExpVec(vec![j as i32])).collect()
        }
        _ => target.grow(1).monomials(),
    };
    let images = monomial_images(exec, op, &candidates)?;
    let mut kept = HashSet::new();
    let mut fitting = Vec::new();
    for (e, img) in candidates.into_iter().zip(images) {
        if target.contains_poly(&img) {
            kept.insert(e);
            fitting.push(img);
        }
    }
    let exactness = certify(op, target, &|e| kept.contains(e))?;
    span_of(amb.ring, &fitting, target, exactness)
}

/// Matrix of `op` on the coordinates of `window`; column `j` is the image of
/// the `j`-th monomial.
pub fn operator_matrix(op: &dyn PolyOp, window: &Window) -> Result<Matrix> {
    let amb = op.ambient();
    window.check_ambient(amb)?;
    let mons = window.monomials();
    let images = monomial_images(Exec::default(), op, &mons)?;
    let mut cols = Vec::with_capacity(images.len());
    for (e, img) in mons.iter().zip(&images) {
        if !window.contains_poly(img) {
            return Err(Error::TargetOverflow { monomial: amb.monomial_string(e) });
        }
        cols.push(window.coords(img)?);
    }
    Ok(Matrix::from_cols(amb.ring, window.size(), &cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalStatus {
    AllIn,
    FailsAt(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalVerdict {
    pub candidate: Poly,
    pub max_power: u32,
    pub status: RadicalStatus,
    pub exactness: Exactness,
}

impl RadicalVerdict {
    pub fn all_in(&self) -> bool {
        self.status == RadicalStatus::AllIn
    }
}

/// Membership of `a^m` in `s` for `m = 1..=max_power`.
pub fn radical_probe(s: &Span, a: &Poly, max_power: u32) -> Result<RadicalVerdict> {
    let mut fails = Vec::new();
    let mut pow = Poly::one(a.ambient());
    for m in 1..=max_power {
        pow = &pow * a;
        if !s.window().contains_poly(&pow) {
            return Err(s.window().overflow(&pow, &format!("power {m} of {a}")));
        }
        if !s.contains(&pow)? {
            fails.push(m);
        }
    }
    let status = if fails.is_empty() { RadicalStatus::AllIn } else { RadicalStatus::FailsAt(fails) };
    Ok(RadicalVerdict { candidate: a.clone(), max_power, status, exactness: s.exactness() })
}

/// [`radical_probe`] over many candidates; results in input order.
pub fn radical_probe_batch(exec: Exec, s: &Span, candidates: &[Poly], max_power: u32) -> Vec<Result<RadicalVerdict>> {
    exec.map(candidates, |a| radical_probe(s, a, max_power))
}

/// Bounded falsification data for the Mathieu property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub candidate: Poly,
    pub left: Poly,
    pub right: Poly,
    pub max_power: u32,
    /// Powers `m` at which `left * a^m * right` does lie in the span.
    pub translates_inside: Vec<u32>,
    pub exactness: Exactness,
    pub note: Option<String>,
}

impl Certificate {
    /// All powers lie in the span and no translate does.
    pub fn holds(&self) -> bool {
        self.translates_inside.is_empty()
    }
}

pub fn ms_falsify(s: &Span, a: &Poly, left: &Poly, right: &Poly, max_power: u32) -> Result<Certificate> {
    let powers = radical_probe(s, a, max_power)?;
    if let RadicalStatus::FailsAt(ms) = &powers.status {
        return Err(Error::NotInRadical(ms[0]));
    }
    let mut inside = Vec::new();
    let mut pow = Poly::one(a.ambient());
    for m in 1..=max_power {
        pow = &pow * a;
        let t = &(left * &pow) * right;
        if !s.window().contains_poly(&t) {
            return Err(s.window().overflow(&t, &format!("translate at power {m}")));
        }
        if s.contains(&t)? {
            inside.push(m);
        }
    }
    Ok(Certificate {
        candidate: a.clone(),
        left: left.clone(),
        right: right.clone(),
        max_power,
        translates_inside: inside,
        exactness: s.exactness(),
        note: None,
    })
}

/// Outcome of comparing a span with an ideal truncation it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub ideal_inside: bool,
    /// Candidates whose probe verdicts differ between ideal and span.
    pub radical_disagreements: Vec<Poly>,
    /// `(candidate, witness, m)` with `a^m` in the span but `b a^m` outside.
    pub spot_failures: Vec<(Poly, Poly, u32)>,
}

impl SandwichReport {
    pub fn passes(&self) -> bool {
        self.ideal_inside && self.radical_disagreements.is_empty() && self.spot_failures.is_empty()
    }
}

/// Diagnostic for spans containing an ideal with the same radical: checks the
/// containment, compares radical probes on `candidates`, and spot-checks
/// `b a^m` for each witness `b` and each candidate with all powers inside.
pub fn ideal_sandwich_check(
    s: &Span,
    ideal: &Span,
    ideal_gens: &[Poly],
    candidates: &[Poly],
    witnesses: &[Poly],
    max_power: u32,
) -> Result<SandwichReport> {
    let mut ideal_inside = true;
    for g in ideal_gens {
        ideal_inside &= s.contains(g)?;
    }
    let mut radical_disagreements = Vec::new();
    let mut spot_failures = Vec::new();
    for a in candidates {
        let vs = radical_probe(s, a, max_power)?;
        let vi = radical_probe(ideal, a, max_power)?;
        if vs.all_in() != vi.all_in() {
            radical_disagreements.push(a.clone());
        }
        if !vs.all_in() {
            continue;
        }
        let mut pow = Poly::one(a.ambient());
        for m in 1..=max_power {
            pow = &pow * a;
            for b in witnesses {
                let t = b * &pow;
                if s.window().contains_poly(&t) && !s.contains(&t)? {
                    spot_failures.push((a.clone(), b.clone(), m));
                }
            }
        }
    }
    Ok(SandwichReport { ideal_inside, radical_disagreements, spot_failures })
}

/// Executable split criterion: for commuting `A, B, C, D` with `AB = 0` and
/// `AD + BC = I`, compares the column space of `A` with the kernel of `B`.
pub fn verify_split(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<bool> {
    let n = a.nrows();
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.name()));
    }
    for (name, m) in [("A", a), ("B", b), ("C", c), ("D", d)] {
        if !m.is_square() || m.nrows() != n || m.ring() != ring {
            return Err(Error::PreconditionFailed(format!("{name} is not a {n}x{n} matrix over {ring}")));
        }
    }
    let named = [("A", a), ("B", b), ("C", c), ("D", d)];
    for i in 0..4 {
        for j in i + 1..4 {
            let (ni, mi) = named[i];
            let (nj, mj) = named[j];
            if &(mi * mj) != &(mj * mi) {
                return Err(Error::PreconditionFailed(format!("{ni}{nj} = {nj}{ni}")));
            }
        }
    }
    if !(a * b).is_zero() {
        return Err(Error::PreconditionFailed("AB = 0".into()));
    }
    if &(a * d) + &(b * c) != Matrix::identity(ring, n) {
        return Err(Error::PreconditionFailed("AD + BC = I".into()));
    }
    Ok(RowSpace::column_space(a)? == RowSpace::kernel(b)?)
}

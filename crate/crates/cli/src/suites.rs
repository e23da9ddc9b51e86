//! Seeded randomized suites shared by the registry and the acceptance tests.

use mzlab_core::finalg::{
    elementary_from_values, kernel_chain, newton_to_elementary, nilradical_commutative, power_failures, power_radical,
    power_sums, LinOp, StructAlgebra, DEFAULT_BUDGET,
};
use mzlab_core::linalg::{Matrix, RowSpace};
use mzlab_core::polytope::{constant_term_probe_batch, contains_origin, dk_radical_test, support};
use mzlab_core::subspace::verify_split;
use mzlab_core::{Ambient, Coeff, Exec, ExpVec, Poly, Ring};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

fn rand_coeff(rng: &mut ChaCha8Rng, ring: Ring, lo: i64, hi: i64) -> Coeff {
    ring.from_i64(rng.random_range(lo..=hi))
}

fn random_invertible(rng: &mut ChaCha8Rng, ring: Ring, n: usize) -> Result<(Matrix, Matrix)> {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| rand_coeff(rng, ring, -2, 2)).collect()).collect();
        let p = Matrix::from_rows(ring, n, rows);
        if let Some(inv) = p.inverse()? {
            return Ok((p, inv));
        }
    }
}

/// `P diag P^-1` for a random invertible `P`.
fn conjugated_diagonal(rng: &mut ChaCha8Rng, ring: Ring, diag: &[Coeff]) -> Result<Matrix> {
    let n = diag.len();
    let mut d = Matrix::zeros(ring, n, n);
    for (i, c) in diag.iter().enumerate() {
        d.set(i, i, c.clone());
    }
    let (p, inv) = random_invertible(rng, ring, n)?;
    Ok(&(&p * &d) * &inv)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitSuite {
    pub projections: usize,
    pub projections_passed: usize,
    pub involutions: usize,
    pub involutions_passed: usize,
    pub radical_instances: usize,
    pub radical_passed: usize,
}

impl SplitSuite {
    pub fn all_passed(&self) -> bool {
        self.projections_passed == self.projections
            && self.involutions_passed == self.involutions
            && self.radical_passed == self.radical_instances
    }
}

/// Random projections and involutions of dimension at most 6 over `Q` and
/// `F_5`, alternating, plus involutive automorphisms of small commutative
/// algebras over `F_5`.
pub fn split_suite(seed: u64, trials_each: usize) -> Result<SplitSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SplitSuite::default();
    for trial in 0..2 * trials_each {
        let ring = if trial % 2 == 0 { Ring::Q } else { Ring::Fp(5) };
        let n = rng.random_range(1..=6);
        let id = Matrix::identity(ring, n);
        if trial < trials_each {
            let diag: Vec<Coeff> = (0..n).map(|_| if rng.random_bool(0.5) { ring.one() } else { ring.zero() }).collect();
            let phi = conjugated_diagonal(&mut rng, ring, &diag)?;
            let a = &id - &phi;
            let ok = &phi * &phi == phi
                && verify_split(&a, &phi, &id, &id).unwrap_or(false)
                && RowSpace::column_space(&a)? == RowSpace::kernel(&phi)?;
            out.projections += 1;
            out.projections_passed += usize::from(ok);
        } else {
            let diag: Vec<Coeff> = (0..n).map(|_| if rng.random_bool(0.5) { ring.one() } else { -ring.one() }).collect();
            let phi = conjugated_diagonal(&mut rng, ring, &diag)?;
            let a = &id - &phi;
            let b = &id + &phi;
            let half = Matrix::scalar(ring, n, &ring.from_i64(2).inv().expect("2 is invertible"));
            let ok = &phi * &phi == id
                && verify_split(&a, &b, &half, &half).unwrap_or(false)
                && RowSpace::column_space(&a)? == RowSpace::kernel(&b)?;
            out.involutions += 1;
            out.involutions_passed += usize::from(ok);
        }
    }
    for (alg, phi) in involution_instances(&mut rng)? {
        let op = LinOp::endomorphism(&alg, phi)?;
        let image = op.one_minus().image()?;
        let nil = nilradical_commutative(&alg)?;
        let rad = power_radical(&alg, &image, DEFAULT_BUDGET)?;
        let size = alg.cardinality().expect("finite algebra") as u64;
        let nil_elems: Vec<_> = (0..size).map(|i| alg.element_at(i)).filter(|a| nil.contains(a)).collect();
        out.radical_instances += 1;
        out.radical_passed += usize::from(rad == nil_elems);
    }
    Ok(out)
}

/// Matrix of the automorphism of `F_p[x]/(x^n)` sending `x` to `img`.
fn substitution_matrix(alg: &StructAlgebra, img: &[Coeff]) -> Result<Matrix> {
    let unit = alg.unit().expect("unital").clone();
    let mut cols = vec![unit];
    for k in 1..alg.dim() {
        cols.push(alg.pow(img, k as u32)?);
    }
    Ok(Matrix::from_cols(alg.ring(), alg.dim(), &cols))
}

/// `x -> -x` on truncated polynomial algebras conjugated by random
/// automorphisms, and coordinate swaps on products.
fn involution_instances(rng: &mut ChaCha8Rng) -> Result<Vec<(StructAlgebra, Matrix)>> {
    let r = Ring::Fp(5);
    let mut out = Vec::new();
    for n in [2, 3] {
        let alg = StructAlgebra::truncated(r, n);
        let mut neg = alg.zero();
        neg[1] = r.from_i64(-1);
        let sigma = substitution_matrix(&alg, &neg)?;
        for _ in 0..4 {
            let mut img = alg.zero();
            img[1] = r.from_i64(rng.random_range(1..5));
            if n > 2 {
                img[2] = r.from_i64(rng.random_range(0..5));
            }
            let tau = substitution_matrix(&alg, &img)?;
            let inv = tau.inverse()?.expect("automorphism");
            out.push((alg.clone(), &(&tau * &sigma) * &inv));
        }
    }
    out.push((StructAlgebra::split_product(r, 2), Matrix::from_i64(r, &[vec![0, 1], vec![1, 0]])));
    out.push((
        StructAlgebra::split_product(r, 3),
        Matrix::from_i64(r, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
    ));
    let dual = StructAlgebra::truncated(r, 2);
    out.push((
        dual.product(&dual)?,
        Matrix::from_i64(r, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]),
    ));
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodicSuite {
    pub instances: usize,
    pub candidates: usize,
    pub agreements: usize,
}

/// `phi(v)_i = v_sigma(i)` on `Q^n`.
fn pullback(n: usize, sigma: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(Ring::Q, n, n);
    for (i, &s) in sigma.iter().enumerate() {
        m.set(i, s, Ring::Q.one());
    }
    m
}

/// Radical membership in a subspace of `Q^n`: `a^m` lies in `V` for all
/// large `m` iff it does for `m = n+1..=2n`, since at most `n` distinct
/// values occur in `a` (Vandermonde).
fn in_radical_split(alg: &StructAlgebra, v: &RowSpace, a: &[Coeff]) -> Result<bool> {
    let n = alg.dim();
    Ok(power_failures(alg, v, a, 2 * n as u32)?.iter().all(|&m| m as usize <= n))
}

/// Algebra endomorphisms of `Q^n` from random self-maps of `{0..n-1}`; each
/// satisfies `phi^i = phi^j` for some `i < j`. Compares radical membership
/// of `Im(I - phi)`, `Ker phi^i` and the kernel chain on all vectors with
/// entries in `{-1, 0, 1, 2}`.
pub fn periodic_suite(seed: u64, instances: usize) -> Result<PeriodicSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PeriodicSuite::default();
    let values = [-1i64, 0, 1, 2];
    for _ in 0..instances {
        let n = rng.random_range(2..=4);
        let alg = StructAlgebra::split_product(Ring::Q, n);
        let sigma: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let phi = pullback(n, &sigma);
        let op = LinOp::endomorphism(&alg, phi.clone())?;
        let i = (0..=n)
            .find(|&i| (i + 1..=2 * n + 1).any(|j| phi.pow(i as u32) == phi.pow(j as u32)))
            .expect("self-maps of a finite set are eventually periodic");
        let image = op.one_minus().image()?;
        let ker_i = RowSpace::kernel(&phi.pow(i as u32))?;
        let chain = kernel_chain(&op)?;
        out.instances += 1;
        for code in 0..4usize.pow(n as u32) {
            let a: Vec<Coeff> = (0..n).map(|k| Ring::Q.from_i64(values[code / 4usize.pow(k as u32) % 4])).collect();
            let im = in_radical_split(&alg, &image, &a)?;
            let ki = in_radical_split(&alg, &ker_i, &a)?;
            let kc = in_radical_split(&alg, &chain, &a)?;
            out.candidates += 1;
            out.agreements += usize::from(im == ki && ki == kc);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolytopeSuite {
    pub samples: usize,
    pub separated: usize,
    pub probe_hits: usize,
    /// Rendered polynomials breaking either implication.
    pub violations: Vec<String>,
}

/// Random nonzero Laurent polynomial over `Q` in 1 to 3 variables with at
/// most 5 terms and exponents in `[-3, 3]`.
pub fn random_laurent(rng: &mut ChaCha8Rng) -> Result<Poly> {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let nvars = rng.random_range(1..=3);
    let amb = Ambient::new(Ring::Q, &VARS[..nvars], true);
    loop {
        let len = rng.random_range(1..=5);
        let terms: Vec<(ExpVec, Coeff)> = (0..len)
            .map(|_| {
                let e = ExpVec((0..nvars).map(|_| rng.random_range(-3..=3)).collect());
                let c = *[-3i64, -2, -1, 1, 2, 3].get(rng.random_range(0..6)).expect("in range");
                (e, Ring::Q.from_i64(c))
            })
            .collect();
        let f = Poly::from_terms(&amb, terms)?;
        if !f.is_zero() {
            return Ok(f);
        }
    }
}

/// Checks that a separated support forces the probe to find no constant term
/// and that every probe hit comes with the origin in the polytope.
pub fn polytope_suite(seed: u64, samples: usize, max_power: u32) -> Result<PolytopeSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<Poly> = (0..samples).map(|_| random_laurent(&mut rng)).collect::<Result<_>>()?;
    let probes = constant_term_probe_batch(Exec::default(), &fs, max_power);
    let mut out = PolytopeSuite { samples, ..PolytopeSuite::default() };
    for (f, hit) in fs.iter().zip(probes) {
        let separated = dk_radical_test(f)?;
        let inside = contains_origin(&support(f)?);
        out.separated += usize::from(separated);
        out.probe_hits += usize::from(hit.is_some());
        if (separated && hit.is_some()) || (hit.is_some() && !inside) {
            out.violations.push(f.to_string());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NewtonSuite {
    pub samples: usize,
    pub round_trips: usize,
    pub zero_input_ok: bool,
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Result<Coeff> {
    let num = BigInt::from(rng.random_range(-9i64..=9));
    let den = BigInt::from(rng.random_range(1i64..=5));
    Ok(Ring::Q.from_ratio(&num, &den)?)
}

/// Power sums of random rational multisets of size at most 6, converted back
/// to elementary symmetric functions.
pub fn newton_suite(seed: u64, samples: usize) -> Result<NewtonSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = NewtonSuite { samples, ..NewtonSuite::default() };
    for _ in 0..samples {
        let k = rng.random_range(0..=6);
        let vals: Vec<Coeff> = (0..k).map(|_| rand_rational(&mut rng)).collect::<Result<_>>()?;
        let p = power_sums(Ring::Q, &vals, k);
        out.round_trips += usize::from(newton_to_elementary(Ring::Q, &p)? == elementary_from_values(Ring::Q, &vals));
    }
    let zeros = vec![Ring::Q.zero(); 6];
    let e = newton_to_elementary(Ring::Q, &zeros)?;
    out.zero_input_ok = e[0].is_one() && e[1..].iter().all(Coeff::is_zero);
    Ok(out)
}

//! Named, reproducible verifications with fixed bounds and seeds.

use std::sync::Arc;

use mzlab_core::finalg::{kernel_chain, LinOp};
use mzlab_core::maps::{lf_probe, EDeriv, LfVerdict, MapSpec, PolyOp, Restricted};
use mzlab_core::subspace::{
    image_in, lattice_span, ms_falsify, operator_matrix, radical_probe, radical_probe_batch, span, RadicalStatus,
    Span, Subspace, Window,
};
use mzlab_core::{parse_poly, Ambient, Error, Exec, Poly, Ring};

use crate::error::{CliError, Result};
use crate::report::{power_set, Bounds, Claim, Report, Status};
use crate::suites;

pub struct Example {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn() -> Result<Vec<Claim>>,
}

pub const EXAMPLES: &[Example] = &[
    Example { id: "ex2.1", summary: "d/dx - y^2 d/dy on Q[x,y] is not locally finite and its image is not Mathieu", run: ex2_1 },
    Example { id: "ex2.2", summary: "I - phi with phi(x) = x + 1, phi(y) = y^2 contains 1 but is not Mathieu", run: ex2_2 },
    Example { id: "ex2.3", summary: "x d/dx applied to the ideal (x^2 - 1) is not Mathieu", run: ex2_3 },
    Example { id: "ex2.4", summary: "I - phi with phi(x) = 2x applied to (x^2 - 1) is not Mathieu", run: ex2_4 },
    Example { id: "ex2.5", summary: "Im d/dx is not Mathieu over F_3[x] and F_5[x]", run: ex2_5 },
    Example { id: "ex2.6", summary: "I - phi with phi(x) = x^-1 on F_2[x, x^-1] is not Mathieu", run: ex2_6 },
    Example { id: "ex2.7", summary: "I - Frobenius on F_p[x] has trivial radical (p = 2, 3)", run: ex2_7 },
    Example { id: "ex2.8", summary: "I - phi with phi(x) = 2x, phi(y) = ty over Q[t, t^-1] is not Mathieu", run: ex2_8 },
    Example { id: "ex2.9", summary: "Im(I - phi_a), phi_a(x) = ax over Z, and its radical for a in {-1, 0, 1, 2, 3}", run: ex2_9 },
    Example { id: "ex3.1", summary: "Im(a(x) d/dx) equals the principal ideal (a(x))", run: ex3_1 },
    Example { id: "prop5.2", summary: "projections and involutions split; involution radicals are nilradicals", run: prop5_2 },
    Example { id: "prop5.4", summary: "eventually periodic endomorphisms: radicals of image and kernel chain agree", run: prop5_4 },
    Example { id: "cor5.5", summary: "finite-order automorphisms of Q[x], Q[x,y]: the image radical is trivial", run: cor5_5 },
    Example { id: "prop6.8", summary: "algebraic endomorphisms of Q[x]: radicals of image and kernel chain agree", run: prop6_8 },
    Example { id: "thm4.5", summary: "Newton polytope separation versus constant terms of powers", run: thm4_5 },
];

pub fn run_example(id: &str) -> Result<Report> {
    let ex = EXAMPLES.iter().find(|e| e.id == id).ok_or_else(|| CliError::UnknownExample(id.to_string()))?;
    Ok(Report::new(format!("verify {id}"), (ex.run)()?))
}

fn parse(s: &str, amb: &Arc<Ambient>) -> Result<Poly> {
    Ok(parse_poly(s, amb)?)
}

/// Claim that `left * a^m * right` leaves `s` while every `a^m` stays inside,
/// for `m <= power`. Unconfirmed evidence is reported as asserted, never as
/// falsified, unless the window is exact.
fn falsification(statement: String, s: &Span, a: &Poly, left: &Poly, degree: i32, power: u32) -> Result<Claim> {
    let one = Poly::one(a.ambient());
    let exact = s.exactness().is_exact();
    let bounds = Bounds::new(degree.into(), power);
    let (status, witness) = match ms_falsify(s, a, left, &one, power) {
        Ok(cert) if cert.holds() => (Status::from_exact(exact), format!("a = {a}, b = {left}")),
        Ok(cert) => (unconfirmed(exact), format!("b a^m inside for m in {}", power_set(&cert.translates_inside))),
        Err(Error::NotInRadical(m)) => (unconfirmed(exact), format!("a^{m} outside the span")),
        Err(e) => return Err(e.into()),
    };
    Ok(Claim::new(statement, status, exact, bounds).with_witness(witness))
}

fn unconfirmed(exact: bool) -> Status {
    if exact {
        Status::Falsified
    } else {
        Status::TheoremAsserted
    }
}

fn verdict_witness(status: &RadicalStatus) -> String {
    match status {
        RadicalStatus::AllIn => "AllIn".into(),
        RadicalStatus::FailsAt(ms) => format!("FailsAt{}", power_set(ms)),
    }
}

fn ex2_1() -> Result<Vec<Claim>> {
    let amb = Ambient::new(Ring::Q, &["x", "y"], false);
    let y = Poly::var(&amb, 1);
    let d = MapSpec::derivation(&amb, vec![Poly::one(&amb), -&y.pow(2)])?;
    let cap = 16;
    let lf = match lf_probe(&d, &y, cap)? {
        LfVerdict::NotWithin(k) => Claim::new(
            format!("D^k(y), k <= {k}, are linearly independent, so D = d/dx - y^2 d/dy is not locally finite"),
            Status::BoundedEvidence,
            false,
            Bounds::new(k as i64 + 1, k as u32),
        )
        .with_witness("y"),
        LfVerdict::SpanStabilized(k) => Claim::new(
            "D = d/dx - y^2 d/dy is not locally finite",
            Status::TheoremAsserted,
            false,
            Bounds::new(k as i64 + 1, k as u32),
        )
        .with_witness(format!("orbit of y stabilized at k = {k}")),
    };
    let (n, m) = (8, 8);
    let image = image_in(&d, &Window::for_ambient(&amb, n))?;
    let ms = falsification(
        format!("1 lies in Im D while y * 1^m does not for m <= {m}, so Im D is not a Mathieu subspace of Q[x,y]"),
        &image,
        &Poly::one(&amb),
        &y,
        n,
        m,
    )?;
    Ok(vec![lf, ms])
}

fn ex2_2() -> Result<Vec<Claim>> {
    let amb = Ambient::new(Ring::Q, &["x", "y"], false);
    let x = Poly::var(&amb, 0);
    let y = Poly::var(&amb, 1);
    let delta = EDeriv::from_images(&amb, vec![parse("x + 1", &amb)?, y.pow(2)])?;
    let one = delta.apply(&-&x)?;
    let status = if one == Poly::one(&amb) { Status::Verified } else { Status::Falsified };
    let unit = Claim::new("delta(-x) = 1 for delta = I - phi, phi(x) = x + 1, phi(y) = y^2", status, true, Bounds::new(1, 1))
        .with_witness(format!("delta(-x) = {one}"));
    let (n, m) = (8, 8);
    let image = image_in(&delta, &Window::for_ambient(&amb, n))?;
    let ms = falsification(
        format!("1^m lies in Im delta while y * 1^m does not for m <= {m}, so Im delta is not a Mathieu subspace"),
        &image,
        &Poly::one(&amb),
        &y,
        n,
        m,
    )?;
    Ok(vec![unit, ms])
}

/// `op` restricted to the ideal `(x^2 - 1)` of `Q[x]`: `x^(2m)` lies in the
/// image for every `m` and `x^(2m+1)` does not.
fn restricted_claim<O: PolyOp>(op: O, amb: &Arc<Ambient>, context: &str, name: &str) -> Result<Claim> {
    let m = 12u32;
    let n = 2 * m as i32 + 2;
    let restricted = Restricted { inner: op, factor: parse("x^2 - 1", amb)? };
    let image = image_in(&restricted, &Window::for_ambient(amb, n))?;
    falsification(
        format!("{context}: x^(2m) lies in {name} while x * x^(2m) does not for m <= {m}, so {name} is not a Mathieu subspace of Q[x]"),
        &image,
        &parse("x^2", amb)?,
        &Poly::var(amb, 0),
        n,
        m,
    )
}

fn ex2_3() -> Result<Vec<Claim>> {
    let amb = Ambient::new(Ring::Q, &["x"], false);
    let d = MapSpec::derivation(&amb, vec![Poly::var(&amb, 0)])?;
    Ok(vec![restricted_claim(d, &amb, "D = x d/dx, I = (x^2 - 1)", "D I")?])
}

fn ex2_4() -> Result<Vec<Claim>> {
    let amb = Ambient::new(Ring::Q, &["x"], false);
    let delta = EDeriv::from_images(&amb, vec![parse("2*x", &amb)?])?;
    Ok(vec![restricted_claim(delta, &amb, "delta = I - phi, phi(x) = q x with q = 2, I = (x^2 - 1)", "delta I")?])
}

fn ex2_5() -> Result<Vec<Claim>> {
    let (n, m) = (12, 12);
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let amb = Ambient::new(Ring::Fp(p), &["x"], false);
        let image = image_in(&MapSpec::partial(&amb, 0), &Window::for_ambient(&amb, n))?;
        out.push(falsification(
            format!(
                "over F_{p}: 1^m lies in Im d/dx while x^{} * 1^m does not for m <= {m}, so Im d/dx is not a Mathieu subspace of F_{p}[x]",
                p - 1
            ),
            &image,
            &Poly::one(&amb),
            &Poly::var(&amb, 0).pow(p as u32 - 1),
            n,
            m,
        )?);
    }
    Ok(out)
}

fn ex2_6() -> Result<Vec<Claim>> {
    let (n, m) = (24, 12);
    let amb = Ambient::new(Ring::Fp(2), &["x"], true);
    let delta = EDeriv::from_images(&amb, vec![parse("x^-1", &amb)?])?;
    let image = image_in(&delta, &Window::for_ambient(&amb, n))?;
    let a = parse("x + x^-1", &amb)?;
    let probe = radical_probe(&image, &a, m)?;
    let exact = probe.exactness.is_exact();
    let status = match (&probe.status, exact) {
        (RadicalStatus::AllIn, _) => Status::from_exact(exact),
        (_, true) => Status::Falsified,
        (_, false) => Status::TheoremAsserted,
    };
    let radical = Claim::new(
        format!("(x + x^-1)^m lies in Im delta for m <= {m}, delta = I - phi, phi(x) = x^-1 over F_2"),
        status,
        exact,
        Bounds::new(n.into(), m),
    )
    .with_witness(verdict_witness(&probe.status));
    let ms = falsification(
        format!("x (x + x^-1)^m lies outside Im delta for m <= {m}, so Im delta is not a Mathieu subspace of F_2[x, x^-1]"),
        &image,
        &a,
        &Poly::var(&amb, 0),
        n,
        m,
    )?;
    Ok(vec![radical, ms])
}

fn ex2_7() -> Result<Vec<Claim>> {
    let (deg, m) = (4u32, 6u32);
    let n = (deg * m) as i32;
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let amb = Ambient::new(Ring::Fp(p), &["x"], false);
        let x = Poly::var(&amb, 0);
        let delta = EDeriv::from_images(&amb, vec![x.pow(p as u32)])?;
        let image = image_in(&delta, &Window::for_ambient(&amb, n))?;
        let exact = image.exactness().is_exact();
        let total = p.pow(deg + 1);
        let candidates: Vec<Poly> = (1..total)
            .map(|code| {
                let terms = (0..=deg).map(|k| {
                    let digit = (code / p.pow(k)) % p;
                    (mzlab_core::ExpVec(vec![k as i32]), Ring::Fp(p).from_i64(digit as i64))
                });
                Poly::from_terms(&amb, terms)
            })
            .collect::<mzlab_core::Result<_>>()?;
        let verdicts = radical_probe_batch(Exec::default(), &image, &candidates, m);
        let mut hits = Vec::new();
        for v in verdicts {
            let v = v?;
            if v.all_in() {
                hits.push(v.candidate.to_string());
            }
        }
        let one_outside = !image.contains(&Poly::one(&amb))?;
        let status = if hits.is_empty() && one_outside { Status::from_exact(exact) } else { Status::TheoremAsserted };
        let witness = if hits.is_empty() {
            format!("{} candidates scanned, 1 outside Im delta", candidates.len())
        } else {
            format!("all powers inside for {}", hits.join("; "))
        };
        out.push(
            Claim::new(
                format!(
                    "over F_{p}: 1 is not in Im(I - Frobenius) and no nonzero f with deg f <= {deg} has f^m in Im(I - Frobenius) for all m <= {m}"
                ),
                status,
                exact,
                Bounds::new(n.into(), m),
            )
            .with_witness(witness),
        );
    }
    Ok(out)
}

fn ex2_8() -> Result<Vec<Claim>> {
    let (n, m) = (12, 12);
    let amb = Ambient::new(Ring::QLaurentT, &["x", "y"], false);
    let delta = EDeriv::from_images(&amb, vec![parse("2*x", &amb)?, parse("t*y", &amb)?])?;
    let image = image_in(&delta, &Window::for_ambient(&amb, n))?;
    Ok(vec![falsification(
        format!(
            "over Q[t, t^-1]: x^m lies in Im(I - phi) as 1 - 2^m is a unit, while x^m y does not as 1 - 2^m t is not, for m <= {m}; Im(I - phi) is not a Mathieu subspace"
        ),
        &image,
        &Poly::var(&amb, 0),
        &Poly::var(&amb, 1),
        n,
        m,
    )?])
}

/// Generators of `Im(I - phi_a)` in degrees `1..=n`.
fn closed_form(a: i64, amb: &Arc<Ambient>, n: i32) -> Vec<Poly> {
    let x = Poly::var(amb, 0);
    (1..=n as u32)
        .filter_map(|k| {
            let c = match a {
                0 => 1,
                1 => return None,
                -1 if k % 2 == 0 => return None,
                -1 => 2,
                _ => 1 - a.pow(k),
            };
            Some(x.pow(k).scale(&Ring::Z.from_i64(c)))
        })
        .collect()
}

fn ex2_9() -> Result<Vec<Claim>> {
    let (n, m) = (12, 12);
    let amb = Ambient::new(Ring::Z, &["x"], false);
    let window = Window::for_ambient(&amb, n);
    let candidates = ["1", "x", "2*x", "-x", "x + 1", "3*x - 1"];
    let mut out = Vec::new();
    for a in [-1i64, 0, 1, 2, 3] {
        let delta = EDeriv::from_images(&amb, vec![Poly::var(&amb, 0).scale(&Ring::Z.from_i64(a))])?;
        let image = image_in(&delta, &window)?;
        let exact = image.exactness().is_exact();
        let lattice = image.as_lattice().ok_or_else(|| CliError::Usage("expected an integer lattice".into()))?;
        let expected = lattice_span(&closed_form(a, &amb, n), &window)?;
        let matches = lattice.basis() == expected.basis();
        let form = match a {
            0 => "x Z[x]".to_string(),
            1 => "{0}".to_string(),
            -1 => "2x Z[x^2]".to_string(),
            _ => format!("Span_Z{{(1 - {a}^n) x^n}}"),
        };
        out.push(
            Claim::new(
                format!("Im(I - phi_a) for a = {a} equals {form} in degrees <= {n}"),
                if matches { Status::from_exact(exact) } else { unconfirmed(exact) },
                exact,
                Bounds::new(n.into(), m),
            )
            .with_witness(format!("rank {}", lattice.rank())),
        );
        let mut agree = true;
        let mut notes = Vec::new();
        for c in candidates {
            let f = parse(c, &amb)?;
            let v = radical_probe(&image, &f, m)?;
            let predicted = a == 0 && f.constant_term().is_zero();
            agree &= v.all_in() == predicted;
            notes.push(format!("{c}: {}", verdict_witness(&v.status)));
        }
        let radical = if a == 0 { "x Z[x]" } else { "{0}" };
        out.push(
            Claim::new(
                format!("radical probes of Im(I - phi_a) for a = {a} report AllIn exactly on candidates in {radical}"),
                if agree { Status::from_exact(exact) } else { unconfirmed(exact) },
                exact,
                Bounds::new(n.into(), m),
            )
            .with_witness(notes.join("; ")),
        );
    }
    Ok(out)
}

fn ex3_1() -> Result<Vec<Claim>> {
    let n = 12;
    let amb = Ambient::new(Ring::Q, &["x"], false);
    let window = Window::for_ambient(&amb, n);
    let x = Poly::var(&amb, 0);
    let mut out = Vec::new();
    for a in ["1", "x", "x^2 - 1"] {
        let g = parse(a, &amb)?;
        let d = MapSpec::derivation(&amb, vec![g.clone()])?;
        let image = image_in(&d, &window)?;
        let exact = image.exactness().is_exact();
        let deg = g.total_degree().unwrap_or(0) as u32;
        let gens: Vec<Poly> = (0..=(n as u32 - deg)).map(|k| &g * &x.pow(k)).collect();
        let ideal = span(&gens, &window, Ring::Q)?;
        let equal = image.as_subspace().is_some_and(|s| s.space() == ideal.space());
        out.push(
            Claim::new(
                format!("Im(({a}) d/dx) equals the ideal ({a}) in degrees <= {n}"),
                if equal { Status::from_exact(exact) } else { unconfirmed(exact) },
                exact,
                Bounds::new(n.into(), 0),
            )
            .with_witness(format!("dimension {}", ideal.dim())),
        );
    }
    Ok(out)
}

fn prop5_2() -> Result<Vec<Claim>> {
    let s = suites::split_suite(7, 100)?;
    let ok = |p: usize, t: usize| if p == t { Status::Verified } else { Status::Falsified };
    Ok(vec![
        Claim::new("Im(I - phi) = Ker phi for random projections over Q and F_5", ok(s.projections_passed, s.projections), true, Bounds::new(6, 2))
            .with_witness(format!("{}/{} instances, seed 7", s.projections_passed, s.projections)),
        Claim::new(
            "Im(I - phi) = Ker(I + phi) for random involutions over Q and F_5",
            ok(s.involutions_passed, s.involutions),
            true,
            Bounds::new(6, 2),
        )
        .with_witness(format!("{}/{} instances, seed 7", s.involutions_passed, s.involutions)),
        Claim::new(
            "the power-orbit radical of Im(I - phi) equals the nilradical for involutive automorphisms of commutative F_5-algebras",
            ok(s.radical_passed, s.radical_instances),
            true,
            Bounds::new(4, 0),
        )
        .with_witness(format!("{}/{} algebras, exhaustive", s.radical_passed, s.radical_instances)),
    ])
}

fn prop5_4() -> Result<Vec<Claim>> {
    let s = suites::periodic_suite(5, 30)?;
    let status = if s.agreements == s.candidates { Status::Verified } else { Status::Falsified };
    Ok(vec![Claim::new(
        "for endomorphisms of Q^n with phi^i = phi^j, i < j, the radicals of Im(I - phi), Ker phi^i and the kernel chain coincide",
        status,
        true,
        Bounds::new(4, 8),
    )
    .with_witness(format!("{} instances, {}/{} candidates agree, seed 5", s.instances, s.agreements, s.candidates))])
}

/// Nonzero polynomials with coefficients in `{-1, 0, 1}` on `basis`.
fn signed_combinations(amb: &Arc<Ambient>, basis: &[Poly]) -> Vec<Poly> {
    let k = basis.len() as u32;
    (1..3u32.pow(k))
        .map(|code| {
            basis.iter().enumerate().fold(Poly::zero(amb), |acc, (i, b)| match (code / 3u32.pow(i as u32)) % 3 {
                1 => &acc + b,
                2 => &acc - b,
                _ => acc,
            })
        })
        .collect()
}

fn cor5_5() -> Result<Vec<Claim>> {
    let m = 8;
    let mut out = Vec::new();
    let q1 = Ambient::new(Ring::Q, &["x"], false);
    let q2 = Ambient::new(Ring::Q, &["x", "y"], false);
    let x1 = Poly::var(&q1, 0);
    let cases: Vec<(String, Arc<Ambient>, EDeriv, Vec<Poly>, i32)> = vec![
        (
            "x -> -x on Q[x]".into(),
            q1.clone(),
            EDeriv::from_images(&q1, vec![-&x1])?,
            signed_combinations(&q1, &[Poly::one(&q1), x1.clone(), x1.pow(2)]),
            16,
        ),
        (
            "the swap x <-> y on Q[x,y]".into(),
            q2.clone(),
            EDeriv::from_images(&q2, vec![Poly::var(&q2, 1), Poly::var(&q2, 0)])?,
            signed_combinations(&q2, &[Poly::one(&q2), Poly::var(&q2, 0), Poly::var(&q2, 1)]),
            8,
        ),
    ];
    for (name, amb, delta, candidates, n) in cases {
        let image = image_in(&delta, &Window::for_ambient(&amb, n))?;
        let exact = image.exactness().is_exact();
        let mut inside = Vec::new();
        for v in radical_probe_batch(Exec::default(), &image, &candidates, m) {
            let v = v?;
            if v.all_in() {
                inside.push(v.candidate.to_string());
            }
        }
        let status = if inside.is_empty() { Status::from_exact(exact) } else { Status::TheoremAsserted };
        let witness = if inside.is_empty() {
            format!("{} candidates, each with some power outside", candidates.len())
        } else {
            format!("all powers inside for {}", inside.join("; "))
        };
        out.push(
            Claim::new(
                format!("for {name}, no nonzero candidate has all powers up to {m} in Im(I - phi), matching the zero nilradical"),
                status,
                exact,
                Bounds::new(n.into(), m),
            )
            .with_witness(witness),
        );
    }
    Ok(out)
}

fn prop6_8() -> Result<Vec<Claim>> {
    let (m, top) = (8u32, 6u32);
    let n = (m * top) as i32;
    let amb = Ambient::new(Ring::Q, &["x"], false);
    let window = Window::for_ambient(&amb, n);
    let x = Poly::var(&amb, 0);
    let candidates: Vec<Poly> = (0..=top).map(|k| x.pow(k)).collect();
    let mut out = Vec::new();
    for img in ["0", "1", "2", "1 - x"] {
        let phi = MapSpec::endomorphism(&amb, vec![parse(img, &amb)?])?;
        let image = image_in(&EDeriv::new(phi.clone())?, &window)?;
        let chain = kernel_chain(&LinOp::plain(operator_matrix(&phi, &window)?)?)?;
        let kernel = Span::Field(Subspace::from_space(&window, chain, mzlab_core::subspace::Exactness::WindowExact));
        let exact = image.exactness().is_exact();
        let mut disagree = Vec::new();
        let mut inside = Vec::new();
        for c in &candidates {
            let a = radical_probe(&image, c, m)?.all_in();
            let b = radical_probe(&kernel, c, m)?.all_in();
            if a != b {
                disagree.push(c.to_string());
            } else if a {
                inside.push(c.to_string());
            }
        }
        let status = if disagree.is_empty() { Status::from_exact(exact) } else { unconfirmed(exact) };
        let witness = if disagree.is_empty() {
            format!("AllIn in both for [{}]", inside.join(", "))
        } else {
            format!("verdicts differ on {}", disagree.join(", "))
        };
        out.push(
            Claim::new(
                format!("for phi(x) = {img}, radical probes of Im(I - phi) and of the kernel chain of phi agree on x^k, k <= {top}"),
                status,
                exact,
                Bounds::new(n.into(), m),
            )
            .with_witness(witness),
        );
    }
    Ok(out)
}

fn thm4_5() -> Result<Vec<Claim>> {
    let (samples, m) = (200, 8);
    let s = suites::polytope_suite(11, samples, m)?;
    let status = if s.violations.is_empty() { Status::Verified } else { Status::Falsified };
    let witness = if s.violations.is_empty() {
        format!("{samples} polynomials, {} separated, {} probe hits, seed 11", s.separated, s.probe_hits)
    } else {
        format!("violations: {}", s.violations.join("; "))
    };
    Ok(vec![Claim::new(
        format!(
            "for random Laurent polynomials, a separating functional rules out constant terms in f^m, m <= {m}, and every constant term found comes with 0 in the Newton polytope"
        ),
        status,
        true,
        Bounds::new(3, m),
    )
    .with_witness(witness)])
}

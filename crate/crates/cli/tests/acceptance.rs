//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Time limits are part of each criterion.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mzlab_cli::suites::{newton_suite, polytope_suite, split_suite};
use mzlab_cli::EXAMPLES;
use mzlab_core::finalg::{
    all_subspaces, kernel_chain, ms_decide_finite, ms_test_idempotent, LinOp, Side, StructAlgebra, DEFAULT_BUDGET,
};
use mzlab_core::maps::{iterate, EDeriv, MapSpec, PolyOp};
use mzlab_core::subspace::{
    image_in, lattice_span, operator_matrix, radical_probe, Exactness, Span, Subspace, Window,
};
use mzlab_core::{parse_poly, Ambient, ExpVec, Poly, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lattice_closed_forms() -> Outcome {
    let n = 12;
    let amb = Ambient::new(Ring::Z, &["x"], false);
    let window = Window::for_ambient(&amb, n);
    let x = Poly::var(&amb, 0);
    let candidates = ["1", "x", "-2*x", "5*x", "x + 1", "x - 2", "2"];
    for a in [-1i64, 0, 1, 2, 3] {
        let delta = EDeriv::from_images(&amb, vec![x.scale(&Ring::Z.from_i64(a))]).map_err(err)?;
        let image = image_in(&delta, &window).map_err(err)?;
        check(image.exactness() == Exactness::WindowExact, || format!("a = {a}: window not exact"))?;
        let gens: Vec<Poly> = (1..=n as u32)
            .map(|k| {
                let c = match a {
                    0 => 1,
                    1 => 0,
                    -1 => 1 - (-1i64).pow(k),
                    _ => 1 - a.pow(k),
                };
                x.pow(k).scale(&Ring::Z.from_i64(c))
            })
            .collect();
        let expected = lattice_span(&gens, &window).map_err(err)?;
        let lattice = image.as_lattice().ok_or("expected a lattice")?;
        check(lattice.basis() == expected.basis(), || format!("a = {a}: lattice differs from closed form"))?;
        for c in candidates {
            let f = parse_poly(c, &amb).map_err(err)?;
            let in_radical = a == 0 && f.constant_term().is_zero();
            let v = radical_probe(&image, &f, 12).map_err(err)?;
            check(v.all_in() == in_radical, || format!("a = {a}, candidate {c}: probe {:?}", v.status))?;
        }
    }
    Ok("5 lattices, 35 probes".into())
}

fn laurent_involution_over_f2() -> Outcome {
    let amb = Ambient::new(Ring::Fp(2), &["x"], true);
    let delta = EDeriv::from_images(&amb, vec![parse_poly("x^-1", &amb).map_err(err)?]).map_err(err)?;
    let image = image_in(&delta, &Window::for_ambient(&amb, 24)).map_err(err)?;
    check(image.exactness() == Exactness::WindowExact, || "window not exact".into())?;
    let u = parse_poly("x + x^-1", &amb).map_err(err)?;
    let x = Poly::var(&amb, 0);
    for m in 1..=12 {
        let um = u.pow(m);
        check(image.contains(&um).map_err(err)?, || format!("(x + x^-1)^{m} outside"))?;
        check(!image.contains(&(&x * &um)).map_err(err)?, || format!("x (x + x^-1)^{m} inside"))?;
    }
    Ok("m = 1..12".into())
}

fn derivative_in_positive_characteristic() -> Outcome {
    for p in [3u64, 5] {
        let amb = Ambient::new(Ring::Fp(p), &["x"], false);
        let image = image_in(&MapSpec::partial(&amb, 0), &Window::for_ambient(&amb, 12)).map_err(err)?;
        check(image.exactness() == Exactness::WindowExact, || format!("F_{p}: window not exact"))?;
        let one = Poly::one(&amb);
        let b = Poly::var(&amb, 0).pow(p as u32 - 1);
        for m in 1..=12 {
            let power = one.pow(m);
            check(image.contains(&power).map_err(err)?, || format!("F_{p}: 1^{m} outside"))?;
            check(!image.contains(&(&b * &power)).map_err(err)?, || format!("F_{p}: x^(p-1) 1^{m} inside"))?;
        }
    }
    Ok("p = 3, 5".into())
}

fn frobenius_radical_scan() -> Outcome {
    let mut scanned = 0;
    for p in [2u64, 3] {
        let amb = Ambient::new(Ring::Fp(p), &["x"], false);
        let x = Poly::var(&amb, 0);
        let delta = EDeriv::from_images(&amb, vec![x.pow(p as u32)]).map_err(err)?;
        let image = image_in(&delta, &Window::for_ambient(&amb, 24)).map_err(err)?;
        check(image.exactness() == Exactness::WindowExact, || format!("F_{p}: window not exact"))?;
        for code in 1..p.pow(5) {
            let terms = (0..5u32).map(|k| (ExpVec(vec![k as i32]), Ring::Fp(p).from_i64(((code / p.pow(k)) % p) as i64)));
            let f = Poly::from_terms(&amb, terms).map_err(err)?;
            let v = radical_probe(&image, &f, 6).map_err(err)?;
            check(!v.all_in(), || format!("F_{p}: all powers of {f} inside"))?;
            scanned += 1;
        }
    }
    Ok(format!("{scanned} polynomials"))
}

fn idempotent_oracle_catalog() -> Outcome {
    let f = Ring::Fp;
    let catalog: Vec<(&str, StructAlgebra, bool)> = vec![
        ("F2[x]/(x^2)", StructAlgebra::truncated(f(2), 2), true),
        ("F2 x F2", StructAlgebra::split_product(f(2), 2), false),
        ("F2[x]/(x^3)", StructAlgebra::truncated(f(2), 3), true),
        ("F3[x]/(x^2)", StructAlgebra::truncated(f(3), 2), true),
        ("F2 x F2 x F2", StructAlgebra::split_product(f(2), 3), false),
    ];
    let mut decisions = 0;
    for (name, alg, local) in catalog {
        let d = alg.dim();
        let unit = alg.unit().ok_or("unital")?.clone();
        for v in all_subspaces(alg.ring(), d, DEFAULT_BUDGET).map_err(err)? {
            for side in Side::ALL {
                let by_idempotents = ms_test_idempotent(&alg, &v, side, DEFAULT_BUDGET).map_err(err)?;
                let by_definition = ms_decide_finite(&alg, &v, side, DEFAULT_BUDGET).map_err(err)?;
                check(by_idempotents.is_ms() == by_definition.is_ms(), || format!("{name} {side}: {v:?}"))?;
                if local {
                    let expected = v.dim() == d || !v.contains(&unit);
                    check(by_definition.is_ms() == expected, || format!("{name} {side}: unit criterion on {v:?}"))?;
                }
                decisions += 1;
            }
        }
    }
    Ok(format!("{decisions} decisions"))
}

fn projection_involution_suite() -> Outcome {
    let s = split_suite(7, 100).map_err(err)?;
    check(s.projections == 100 && s.involutions == 100, || format!("{s:?}"))?;
    check(s.all_passed(), || format!("{s:?}"))?;
    Ok(format!(
        "{}/{} projections, {}/{} involutions, {}/{} radical instances",
        s.projections_passed, s.projections, s.involutions_passed, s.involutions, s.radical_passed, s.radical_instances
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, amb: &Arc<Ambient>, max_exp: i32, len: usize) -> Poly {
    let n = amb.nvars();
    let k = rng.random_range(0..=len);
    let terms: Vec<(ExpVec, _)> = (0..k)
        .map(|_| (ExpVec((0..n).map(|_| rng.random_range(0..=max_exp)).collect()), amb.ring.from_i64(rng.random_range(-4..=4))))
        .collect();
    Poly::from_terms(amb, terms).expect("in ambient")
}

fn random_affine(rng: &mut ChaCha8Rng, amb: &Arc<Ambient>) -> MapSpec {
    let x = Poly::var(amb, 0);
    let y = Poly::var(amb, 1);
    let mut img = || {
        let c: Vec<_> = (0..3).map(|_| amb.ring.from_i64(rng.random_range(-3..=3))).collect();
        &(&Poly::constant(amb, c[0].clone()) + &x.scale(&c[1])) + &y.scale(&c[2])
    };
    let images = vec![img(), img()];
    MapSpec::endomorphism(amb, images).expect("valid endomorphism")
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn identity_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let ambs = [Ambient::new(Ring::Q, &["x", "y"], false), Ambient::new(Ring::Fp(5), &["x", "y"], false)];
    for t in 0..200 {
        let amb = &ambs[t % 2];
        let e = err;
        let f = random_poly(&mut rng, amb, 3, 4);
        let g = random_poly(&mut rng, amb, 3, 4);

        // E-derivation product law.
        let images = vec![random_poly(&mut rng, amb, 2, 3), random_poly(&mut rng, amb, 2, 3)];
        let phi = MapSpec::endomorphism(amb, images).map_err(e)?;
        let d = EDeriv::new(phi.clone()).map_err(e)?;
        let (df, dg) = (d.apply(&f).map_err(e)?, d.apply(&g).map_err(e)?);
        let rhs = &(&(&df * &g) + &(&f * &dg)) - &(&df * &dg);
        check(d.apply(&(&f * &g)).map_err(e)? == rhs, || format!("product law, instance {t}"))?;

        // Homomorphism law.
        check(phi.apply(&(&f * &g)).map_err(e)? == &phi.apply(&f).map_err(e)? * &phi.apply(&g).map_err(e)?, || {
            format!("homomorphism, instance {t}")
        })?;
        check(phi.apply(&Poly::one(amb)).map_err(e)? == Poly::one(amb), || format!("unit, instance {t}"))?;

        // Iterated product law.
        let aff = random_affine(&mut rng, amb);
        let da = EDeriv::new(aff.clone()).map_err(e)?;
        let n = rng.random_range(1..=5);
        let (f2, g2) = (random_poly(&mut rng, amb, 2, 3), random_poly(&mut rng, amb, 2, 3));
        let mut sum = Poly::zero(amb);
        for i in 0..=n {
            let left = iterate(&da, &f2, i).map_err(e)?;
            let right = iterate(&aff, &iterate(&da, &g2, n - i).map_err(e)?, i).map_err(e)?;
            sum = &sum + &(&left * &right).scale(&amb.ring.from_i64(binom(n, i)));
        }
        check(iterate(&da, &(&f2 * &g2), n).map_err(e)? == sum, || format!("iterated product law, instance {t}"))?;

        // Square-zero translate law: phi fixes y, so delta^2 v = 0 for v = a(y) + b(y) x.
        let in_y = |rng: &mut ChaCha8Rng| {
            let p = random_poly(rng, amb, 3, 3);
            p.substitute(&[Poly::zero(amb), Poly::var(amb, 1)]).expect("substitution")
        };
        let shift = in_y(&mut rng);
        let phi_y = MapSpec::endomorphism(amb, vec![&Poly::var(amb, 0) + &shift, Poly::var(amb, 1)]).map_err(e)?;
        let dy = EDeriv::new(phi_y).map_err(e)?;
        let v = &in_y(&mut rng) + &(&in_y(&mut rng) * &Poly::var(amb, 0));
        let dv = dy.apply(&v).map_err(e)?;
        check(dy.apply(&dv).map_err(e)?.is_zero(), || format!("square-zero setup, instance {t}"))?;
        let m = rng.random_range(1..=6);
        let u = random_poly(&mut rng, amb, 3, 4);
        let dm = iterate(&dy, &u, m).map_err(e)?;
        let dm1 = iterate(&dy, &u, m - 1).map_err(e)?;
        let rhs = &(&dm * &v) + &(&(&dm1 - &dm) * &dv).scale(&amb.ring.from_i64(m as i64));
        check(iterate(&dy, &(&u * &v), m).map_err(e)? == rhs, || format!("square-zero law, instance {t}"))?;

        // Leibniz law.
        let dd = MapSpec::derivation(amb, vec![random_poly(&mut rng, amb, 2, 3), random_poly(&mut rng, amb, 2, 3)]).map_err(e)?;
        let rhs = &(&dd.apply(&f).map_err(e)? * &g) + &(&f * &dd.apply(&g).map_err(e)?);
        check(dd.apply(&(&f * &g)).map_err(e)? == rhs, || format!("Leibniz, instance {t}"))?;
    }
    Ok("5 laws x 200 instances".into())
}

fn newton_round_trip() -> Outcome {
    let s = newton_suite(9, 100).map_err(err)?;
    check(s.round_trips == 100, || format!("{}/100 round trips", s.round_trips))?;
    check(s.zero_input_ok, || "zero power sums gave nonzero elementary functions".into())?;
    Ok("100/100 round trips, zero input maps to t^n".into())
}

fn polytope_consistency() -> Outcome {
    let s = polytope_suite(11, 200, 8).map_err(err)?;
    check(s.violations.is_empty(), || format!("violations: {:?}", s.violations))?;
    Ok(format!("200 polynomials, {} separated, {} probe hits", s.separated, s.probe_hits))
}

fn kernel_chain_radicals() -> Outcome {
    let amb = Ambient::new(Ring::Q, &["x"], false);
    let window = Window::for_ambient(&amb, 48);
    let x = Poly::var(&amb, 0);
    let mut compared = 0;
    for img in ["0", "1", "2", "1 - x"] {
        let phi = MapSpec::endomorphism(&amb, vec![parse_poly(img, &amb).map_err(err)?]).map_err(err)?;
        let image = image_in(&EDeriv::new(phi.clone()).map_err(err)?, &window).map_err(err)?;
        let op = LinOp::plain(operator_matrix(&phi, &window).map_err(err)?).map_err(err)?;
        let chain = Span::Field(Subspace::from_space(&window, kernel_chain(&op).map_err(err)?, Exactness::WindowExact));
        for k in 0..=6 {
            let a = x.pow(k);
            let left = radical_probe(&image, &a, 8).map_err(err)?.all_in();
            let right = radical_probe(&chain, &a, 8).map_err(err)?.all_in();
            check(left == right, || format!("phi(x) = {img}, candidate x^{k}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} candidates agree"))
}

fn registry_exit_codes_and_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mzlab");
    for ex in EXAMPLES {
        let run = || Command::new(bin).args(["verify", ex.id, "--format", "json"]).output().map_err(err);
        let (first, second) = (run()?, run()?);
        check(first.status.code() == Some(0), || format!("{}: exit {:?}", ex.id, first.status.code()))?;
        check(first.stdout == second.stdout, || format!("{}: output differs between runs", ex.id))?;
        let v: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(err)?;
        let claims = v["claims"].as_array().ok_or("missing claims")?;
        check(!claims.is_empty(), || format!("{}: no claims", ex.id))?;
        for c in claims {
            let status = c["status"].as_str().unwrap_or("");
            check(status == "verified" || status == "bounded-evidence", || format!("{}: status {status}", ex.id))?;
        }
    }
    Ok(format!("{} ids, two runs each", EXAMPLES.len()))
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "integer lattice images of I - phi_a and their radicals", limit: secs(1), run: lattice_closed_forms },
        Criterion { name: "I - (x -> x^-1) on F_2[x, x^-1] is not Mathieu", limit: secs(1), run: laurent_involution_over_f2 },
        Criterion { name: "d/dx over F_3 and F_5 is not Mathieu", limit: secs(1), run: derivative_in_positive_characteristic },
        Criterion { name: "I - Frobenius has no radical candidates of degree <= 4", limit: secs(30), run: frobenius_radical_scan },
        Criterion { name: "idempotent criterion equals the definition on the catalog", limit: secs(60), run: idempotent_oracle_catalog },
        Criterion { name: "projection and involution splitting suite", limit: secs(10), run: projection_involution_suite },
        Criterion { name: "E-derivation, Leibniz and homomorphism identity suites", limit: secs(10), run: identity_suites },
        Criterion { name: "Newton identities round trip", limit: secs(1), run: newton_round_trip },
        Criterion { name: "Newton polytope versus constant-term probe", limit: secs(30), run: polytope_consistency },
        Criterion { name: "image and kernel-chain radicals agree for algebraic phi", limit: secs(5), run: kernel_chain_radicals },
        Criterion { name: "registry exit codes and byte-stable JSON", limit: secs(120), run: registry_exit_codes_and_determinism },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > c.limit => ("FAIL", format!("over the {} s limit", c.limit.as_secs())),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict}: {} [{:.2} s of {} s] {detail}",
            i + 1,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Command handlers. Each returns a report or a structured error.

use std::sync::Arc;

use mzlab_core::finalg::{
    gen_eigendecomp, grading_check, image_decomp, kernel_chain, ms_decide_finite, ms_test_idempotent, GradingKind,
    LinOp, MsVerdict, MsWitness, Side, StructAlgebra, DEFAULT_BUDGET,
};
use mzlab_core::linalg::{Matrix, RowSpace};
use mzlab_core::maps::{EDeriv, MapSpec, PolyOp, Restricted};
use mzlab_core::polytope::{constant_term_probe, dk_radical_test};
use mzlab_core::subspace::{image_in, ms_falsify, radical_probe, RadicalStatus, Span, Window};
use mzlab_core::{parse_poly, parse_poly_list, Ambient, Coeff, Error, Poly, Ring};

use crate::error::{CliError, Result};
use crate::report::{power_set, Bounds, Claim, Report, Status};

/// Ambient ring, window and power bound shared by the polynomial commands.
#[derive(Clone, Debug)]
pub struct Setting {
    pub ambient: Arc<Ambient>,
    pub max_degree: i32,
    pub max_power: u32,
}

impl Setting {
    pub fn new(ring: &str, vars: &[String], laurent: bool, max_degree: i32, max_power: u32) -> Result<Setting> {
        let ring = Ring::parse(ring)?;
        if vars.is_empty() || vars.iter().any(|v| v.is_empty()) {
            return Err(CliError::Usage("--vars needs a comma-separated list of names".into()));
        }
        if max_degree < 0 {
            return Err(CliError::Usage("--max-degree must be nonnegative".into()));
        }
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        Ok(Setting { ambient: Ambient::new(ring, &names, laurent), max_degree, max_power })
    }

    fn window(&self) -> Window {
        Window::for_ambient(&self.ambient, self.max_degree)
    }

    fn bounds(&self) -> Bounds {
        Bounds::new(self.max_degree.into(), self.max_power)
    }

    fn poly(&self, text: &str) -> Result<Poly> {
        Ok(parse_poly(text, &self.ambient)?)
    }
}

/// Which operator's image is the subspace under study.
#[derive(Clone, Debug, Default)]
pub struct OpChoice {
    pub endo: Option<String>,
    pub derivation: Option<String>,
    pub ideal: Option<String>,
}

impl OpChoice {
    fn build(&self, s: &Setting) -> Result<Box<dyn PolyOp>> {
        let amb = &s.ambient;
        let factor = self.ideal.as_deref().map(|t| s.poly(t)).transpose()?;
        let op: Box<dyn PolyOp> = match (&self.endo, &self.derivation, factor) {
            (Some(e), None, None) => Box::new(EDeriv::from_images(amb, parse_poly_list(e, amb)?)?),
            (Some(e), None, Some(factor)) => {
                Box::new(Restricted { inner: EDeriv::from_images(amb, parse_poly_list(e, amb)?)?, factor })
            }
            (None, Some(d), None) => Box::new(MapSpec::derivation(amb, parse_poly_list(d, amb)?)?),
            (None, Some(d), Some(factor)) => {
                Box::new(Restricted { inner: MapSpec::derivation(amb, parse_poly_list(d, amb)?)?, factor })
            }
            _ => {
                return Err(CliError::Usage(
                    "exactly one of --subspace-from-endo or --subspace-from-derivation is required".into(),
                ))
            }
        };
        Ok(op)
    }

    fn subspace(&self, s: &Setting) -> Result<(Span, String)> {
        let op = self.build(s)?;
        let image = image_in(op.as_ref(), &s.window())?;
        Ok((image, format!("Im({})", op.describe())))
    }
}

pub fn image(s: &Setting, op: &OpChoice, exprs: &[String], command: String) -> Result<Report> {
    let (span, name) = op.subspace(s)?;
    let exact = span.exactness().is_exact();
    let mut claims = vec![Claim::new(
        format!("{name} has rank {} in the window", span.rank()),
        Status::from_exact(exact),
        exact,
        s.bounds(),
    )
    .with_witness(span.exactness().to_string())];
    for e in exprs {
        let f = s.poly(e)?;
        if !span.window().contains_poly(&f) {
            return Err(Error::OutOfWindow(format!("`{f}` exceeds degree {}", s.max_degree)).into());
        }
        // Windowed spans consist of true images, so membership is always exact.
        claims.push(if span.contains(&f)? {
            Claim::new(format!("{f} lies in {name}"), Status::Verified, true, s.bounds())
        } else {
            Claim::new(format!("{f} does not lie in {name}"), Status::from_exact(exact), exact, s.bounds())
        });
    }
    Ok(Report::new(command, claims))
}

pub fn radical(s: &Setting, op: &OpChoice, candidates: &[String], command: String) -> Result<Report> {
    let (span, name) = op.subspace(s)?;
    let exact = span.exactness().is_exact();
    let mut claims = Vec::new();
    for c in candidates {
        let a = s.poly(c)?;
        let v = radical_probe(&span, &a, s.max_power)?;
        claims.push(match &v.status {
            RadicalStatus::AllIn => Claim::new(
                format!("({a})^m lies in {name} for all m <= {}", s.max_power),
                Status::Verified,
                true,
                s.bounds(),
            )
            .with_witness("AllIn"),
            RadicalStatus::FailsAt(ms) => Claim::new(
                format!("({a})^m does not lie in {name} for m in {}", power_set(ms)),
                Status::from_exact(exact),
                exact,
                s.bounds(),
            )
            .with_witness(format!("FailsAt{}", power_set(ms))),
        });
    }
    Ok(Report::new(command, claims))
}

pub fn falsify(s: &Setting, op: &OpChoice, a: &str, left: &str, right: &str, command: String) -> Result<Report> {
    let (span, name) = op.subspace(s)?;
    let (a, b, c) = (s.poly(a)?, s.poly(left)?, s.poly(right)?);
    let cert = ms_falsify(&span, &a, &b, &c, s.max_power)?;
    let exact = cert.exactness.is_exact();
    let witness = format!("a = {a}, b = {b}, c = {c}");
    let claim = if cert.holds() && exact {
        Claim::new(format!("{name} is a Mathieu subspace"), Status::Falsified, true, s.bounds())
    } else if cert.holds() {
        Claim::new(format!("{name} is not a Mathieu subspace"), Status::BoundedEvidence, false, s.bounds())
    } else {
        Claim::new(
            format!("{name} is a Mathieu subspace (b a^m c lies inside for m in {})", power_set(&cert.translates_inside)),
            Status::BoundedEvidence,
            false,
            s.bounds(),
        )
    };
    Ok(Report::new(command, vec![claim.with_witness(witness)]))
}

pub fn polytope(s: &Setting, exprs: &[String], command: String) -> Result<Report> {
    let mut claims = Vec::new();
    for e in exprs {
        let f = s.poly(e)?;
        let separated = dk_radical_test(&f)?;
        let probe = constant_term_probe(&f, s.max_power);
        let claim = match (separated, probe) {
            (true, None) => Claim::new(
                format!("0 lies outside the Newton polytope of {f}, so every power of it has zero constant term"),
                Status::Verified,
                true,
                s.bounds(),
            )
            .with_witness(format!("no constant term in f^m for m <= {}", s.max_power)),
            (true, Some(m)) => Claim::new(
                format!("0 lies outside the Newton polytope of {f}, so every power of it has zero constant term"),
                Status::Falsified,
                true,
                s.bounds(),
            )
            .with_witness(format!("constant term in f^{m}")),
            (false, Some(m)) => Claim::new(
                format!("0 lies in the Newton polytope of {f}, so some power of it has a nonzero constant term"),
                Status::Verified,
                true,
                s.bounds(),
            )
            .with_witness(format!("constant term in f^{m}")),
            (false, None) => Claim::new(
                format!("0 lies in the Newton polytope of {f}, so some power of it has a nonzero constant term"),
                Status::TheoremAsserted,
                false,
                s.bounds(),
            )
            .with_witness(format!("probe-unconfirmed at {}", s.max_power)),
        };
        claims.push(claim);
    }
    Ok(Report::new(command, claims))
}

pub fn read_algebra(path: &str) -> Result<StructAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(StructAlgebra::parse(&text)?)
}

fn coeff(ring: Ring, text: &str) -> Result<Coeff> {
    let amb = Ambient::new(ring, &[], false);
    let p = parse_poly(text, &amb)?;
    Ok(p.constant_term())
}

/// Rows separated by `;`, entries by commas or whitespace.
pub fn parse_rows(ring: Ring, width: usize, text: &str) -> Result<Vec<Vec<Coeff>>> {
    let mut rows = Vec::new();
    for row in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let entries: Vec<Coeff> =
            row.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| coeff(ring, t)).collect::<Result<_>>()?;
        if entries.len() != width {
            return Err(CliError::Usage(format!("row `{row}` has {} entries, expected {width}", entries.len())));
        }
        rows.push(entries);
    }
    Ok(rows)
}

fn elem(v: &[Coeff]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn ms_witness(w: &MsWitness) -> String {
    match w {
        MsWitness::Idempotent(e) => format!("idempotent {} whose ideal leaves V", elem(e)),
        MsWitness::Translate { a, b, c, power } => {
            let mut s = format!("a = {}", elem(a));
            if let Some(b) = b {
                s += &format!(", b = {}", elem(b));
            }
            if let Some(c) = c {
                s += &format!(", c = {}", elem(c));
            }
            s + &format!(", power {power}")
        }
    }
}

pub fn ms_decide(alg: &StructAlgebra, subspace: &str, sides: &[Side], command: String) -> Result<Report> {
    let rows = parse_rows(alg.ring(), alg.dim(), subspace)?;
    let v = RowSpace::span(alg.ring(), alg.dim(), rows)?;
    let bounds = Bounds::new(alg.dim() as i64, 0);
    let mut claims = Vec::new();
    for &side in sides {
        let verdict: MsVerdict = ms_decide_finite(alg, &v, side, DEFAULT_BUDGET)?;
        let statement = if verdict.is_ms() {
            format!("V is a {side} Mathieu subspace")
        } else {
            format!("V is not a {side} Mathieu subspace")
        };
        let mut claim = Claim::new(statement, Status::Verified, true, bounds);
        if let Some(w) = &verdict.witness {
            claim = claim.with_witness(ms_witness(w));
        }
        claims.push(claim);
        match ms_test_idempotent(alg, &v, side, DEFAULT_BUDGET) {
            Ok(idem) => {
                let agree = idem.is_ms() == verdict.is_ms();
                claims.push(Claim::new(
                    format!("the {side} idempotent criterion agrees with the power-orbit decision"),
                    if agree { Status::Verified } else { Status::Falsified },
                    true,
                    bounds,
                ));
            }
            Err(Error::UnsupportedOverQ) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::new(command, claims))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKindArg {
    Plain,
    Endomorphism,
    Derivation,
}

pub fn decompose(
    alg: &StructAlgebra,
    matrix: &str,
    kind: OpKindArg,
    eigenvalues: Option<&str>,
    command: String,
) -> Result<Report> {
    let ring = alg.ring();
    let n = alg.dim();
    let rows = parse_rows(ring, n, matrix)?;
    if rows.len() != n {
        return Err(CliError::Usage(format!("--matrix needs {n} rows, got {}", rows.len())));
    }
    let m = Matrix::from_rows(ring, n, rows);
    let op = match kind {
        OpKindArg::Plain => LinOp::plain(m)?,
        OpKindArg::Endomorphism => LinOp::endomorphism(alg, m)?,
        OpKindArg::Derivation => LinOp::derivation(alg, m)?,
    };
    let given = eigenvalues
        .map(|t| t.split(',').map(|c| coeff(ring, c)).collect::<Result<Vec<_>>>())
        .transpose()?;
    let dec = gen_eigendecomp(&op, given.as_deref())?;
    let bounds = Bounds::new(n as i64, 0);
    let blocks: Vec<String> = dec.eigenvalues.iter().zip(&dec.blocks).map(|(l, b)| format!("{l}: dim {}", b.dim())).collect();
    let mut claims = vec![Claim::new(
        "the generalized eigenspaces of the operator sum to the whole algebra",
        Status::Verified,
        true,
        bounds,
    )
    .with_witness(blocks.join("; "))];
    if kind != OpKindArg::Plain {
        let word = match dec.kind {
            GradingKind::Additive => "an additive",
            GradingKind::Multiplicative => "a multiplicative",
        };
        let statement = if grading_check(alg, &dec) {
            format!("the blocks form {word} grading")
        } else {
            format!("the blocks do not form {word} grading")
        };
        claims.push(Claim::new(statement, Status::Verified, true, bounds));
    }
    let (target, distinguished, name) = match kind {
        OpKindArg::Endomorphism => (op.one_minus(), ring.one(), "Im(I - phi)"),
        _ => (op.clone(), ring.zero(), "Im psi"),
    };
    let image = match image_decomp(&target, &dec, &distinguished) {
        Ok(space) => Claim::new(
            format!("{name} is the sum of its intersections with the blocks"),
            Status::Verified,
            true,
            bounds,
        )
        .with_witness(format!("dim {}", space.dim())),
        Err(Error::DecompositionMismatch(msg)) => Claim::new(
            format!("{name} is the sum of its intersections with the blocks"),
            Status::Falsified,
            true,
            bounds,
        )
        .with_witness(msg),
        Err(e) => return Err(e.into()),
    };
    claims.push(image);
    let chain = kernel_chain(&op)?;
    claims.push(Claim::new(
        format!("the kernel chain of the operator has dimension {}", chain.dim()),
        Status::Verified,
        true,
        bounds,
    ));
    Ok(Report::new(command, claims))
}

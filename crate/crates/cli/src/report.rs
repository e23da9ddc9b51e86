//! Claim reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

/// Outcome of checking one claim. `Verified` means exact at the stated
/// bounds; `TheoremAsserted` marks a claim the computation could not confirm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Falsified,
    BoundedEvidence,
    TheoremAsserted,
}

impl Status {
    pub fn from_exact(exact: bool) -> Status {
        if exact {
            Status::Verified
        } else {
            Status::BoundedEvidence
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Falsified => "falsified",
            Status::BoundedEvidence => "bounded-evidence",
            Status::TheoremAsserted => "theorem-asserted",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bounds {
    pub degree: i64,
    pub power: u32,
}

impl Bounds {
    pub fn new(degree: i64, power: u32) -> Bounds {
        Bounds { degree, power }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub status: Status,
    pub exact: bool,
    pub bounds: Bounds,
    pub witness: Option<String>,
}

impl Claim {
    pub fn new(statement: impl Into<String>, status: Status, exact: bool, bounds: Bounds) -> Claim {
        Claim { statement: statement.into(), status, exact, bounds, witness: None }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Claim {
        self.witness = Some(witness.into());
        self
    }
}

/// Field order is the serialization order, so equal reports print equal bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(command: impl Into<String>, claims: Vec<Claim>) -> Report {
        Report { command: command.into(), claims }
    }

    /// 1 if any claim is falsified, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == Status::Falsified) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for c in &self.claims {
            let exact = if c.exact { "exact" } else { "truncated" };
            let _ = writeln!(
                s,
                "  [{}] {} ({exact}; degree <= {}, power <= {})",
                c.status.as_str(),
                c.statement,
                c.bounds.degree,
                c.bounds.power
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "      witness: {w}");
            }
        }
        s
    }
}

/// `{1..3,5,7..8}`-style set notation for sorted powers.
pub fn power_set(ms: &[u32]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ms.len() {
        let mut j = i;
        while j + 1 < ms.len() && ms[j + 1] == ms[j] + 1 {
            j += 1;
        }
        parts.push(if j > i { format!("{}..{}", ms[i], ms[j]) } else { ms[i].to_string() });
        i = j + 1;
    }
    format!("{{{}}}", parts.join(","))
}

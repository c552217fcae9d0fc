use std::io::{self, Write};

use serde::Serialize;

use crate::exactalg::{PositivityVerdict, Status};
use crate::partitions::Partition;

/// One checked instance of a claim, serialized as a single JSON line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceRecord {
    pub claim: String,
    pub family: String,
    pub n: usize,
    pub lambda: String,
    pub mu: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    pub verdict: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl EvidenceRecord {
    pub fn new(
        claim: &str,
        family: impl ToString,
        n: usize,
        lambda: &Partition,
        mu: &Partition,
        nu: Option<&Partition>,
        verdict: Status,
    ) -> Self {
        EvidenceRecord {
            claim: claim.to_string(),
            family: family.to_string(),
            n,
            lambda: lambda.to_string(),
            mu: mu.to_string(),
            nu: nu.map(|p| p.to_string()),
            verdict,
            certificate: None,
            witness: None,
        }
    }

    /// Copies status, certificate and witness from a cone verdict.
    pub fn from_verdict(
        claim: &str,
        family: impl ToString,
        n: usize,
        pair: (&Partition, &Partition),
        nu: Option<&Partition>,
        v: &PositivityVerdict,
    ) -> Self {
        let mut r = Self::new(claim, family, n, pair.0, pair.1, nu, v.status);
        r.certificate = v.certificate.as_ref().map(|c| c.to_string());
        r.witness = v.witness.as_ref().map(|w| w.to_string());
        r
    }

    pub fn certificate(mut self, c: impl Into<String>) -> Self {
        self.certificate = Some(c.into());
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("evidence records always serialize")
    }
}

/// Verdict counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub certified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of<'a>(records: impl IntoIterator<Item = &'a EvidenceRecord>) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.verdict {
                Status::Certified => s.certified += 1,
                Status::Refuted => s.refuted += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.certified + self.refuted + self.inconclusive
    }
}

pub fn write_json_lines<W: Write>(records: &[EvidenceRecord], mut out: W) -> io::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(())
}

//! Verification reports and their JSON and CSV forms.
//!
//! JSON object keys are emitted in sorted order and reports are sorted by
//! claim id then group, so a run is reproducible byte for byte unless wall
//! times are requested.

use crate::claims;
use crate::config::RunConfig;
use bfk_core::lattice::{int_to_json, matrix_to_json, Int, Matrix, QuotientInvariants};
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const SCHEMA: &str = "bfk-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub group: String,
    pub claim: String,
    pub status: Status,
    pub witness: Value,
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    /// # Panics
    /// If `claim` is not in the registry.
    pub fn new(claim: &str, group: &str, status: Status, witness: Value) -> Self {
        let c = claims::lookup(claim).unwrap_or_else(|| panic!("unregistered claim `{claim}`"));
        VerificationReport {
            campaign: c.campaign.to_string(),
            group: group.to_string(),
            claim: c.id.to_string(),
            status,
            witness,
            wall_time_ms: None,
        }
    }

    pub fn skipped(claim: &str, group: &str, reason: impl Into<String>) -> Self {
        Self::new(claim, group, Status::Skipped, json!({ "reason": reason.into() }))
    }

    pub fn timed(mut self, start: Option<Instant>) -> Self {
        self.wall_time_ms = start.map(|s| s.elapsed().as_millis() as u64);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub refuted: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub config: Value,
    pub notes: Vec<String>,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl Envelope {
    pub fn new(command: &str, config: &RunConfig, notes: Vec<String>, mut reports: Vec<VerificationReport>) -> Self {
        reports.sort_by(|a, b| (&a.claim, &a.group).cmp(&(&b.claim, &b.group)));
        let mut summary = Summary::default();
        for r in &reports {
            match r.status {
                Status::Verified => summary.verified += 1,
                Status::Refuted => summary.refuted += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Envelope {
            schema: SCHEMA,
            version: SCHEMA_VERSION,
            command: command.to_string(),
            config: serde_json::to_value(config).expect("config serializes"),
            notes,
            summary,
            reports,
        }
    }

    /// 0 when everything is verified, 2 if anything is refuted, else 3 if
    /// anything was skipped.
    pub fn exit_code(&self) -> i32 {
        if self.summary.refuted > 0 {
            2
        } else if self.summary.skipped > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        // Round-tripping through `Value` sorts every object's keys.
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["campaign", "group", "claim", "status", "wall_time_ms", "witness"])
            .expect("in-memory write");
        for r in &self.reports {
            let status = serde_json::to_value(r.status).expect("status serializes");
            w.write_record([
                r.campaign.as_str(),
                r.group.as_str(),
                r.claim.as_str(),
                status.as_str().unwrap_or_default(),
                &r.wall_time_ms.map(|t| t.to_string()).unwrap_or_default(),
                &r.witness.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub fn invariants_json(q: &QuotientInvariants) -> Value {
    json!({
        "free_rank": q.free_rank,
        "torsion": q.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
    })
}

pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    matrix_to_json(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_and_exit_codes() {
        let cfg = RunConfig::default();
        let a = VerificationReport::new("main.eta-iso.X", "b", Status::Verified, json!({}));
        let b = VerificationReport::new("induction.ranks", "a", Status::Skipped, json!({}));
        let env = Envelope::new("test", &cfg, vec![], vec![a.clone(), b.clone()]);
        assert_eq!(env.reports[0].claim, "induction.ranks");
        assert_eq!(env.exit_code(), 3);
        let mut c = a;
        c.status = Status::Refuted;
        assert_eq!(Envelope::new("test", &cfg, vec![], vec![b, c]).exit_code(), 2);
        assert_eq!(env.to_json(), env.to_json());
        assert!(env.to_csv().starts_with("campaign,group,claim"));
    }

    #[test]
    #[should_panic(expected = "unregistered")]
    fn unknown_claims_panic() {
        VerificationReport::new("no.such.claim", "g", Status::Verified, Value::Null);
    }
}

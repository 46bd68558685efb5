//! Campaigns: each runs over the catalog and reports on a fixed set of claims.

pub mod appendix;
pub mod exact;
pub mod induction;
pub mod limit;
pub mod main_theorem;
pub mod probe;

use crate::catalog::{catalog, CatalogEntry};
use crate::config::RunConfig;
use crate::report::{Envelope, Status, VerificationReport};
use crate::store::Store;
use bfk_core::burnside::BurnsideContext;
use bfk_core::group::GroupDescriptor;
use bfk_core::{Error, Result};
use rayon::prelude::*;
use serde_json::Value;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

/// One catalog group as seen by a campaign.
pub struct Group<'a> {
    pub name: String,
    pub ctx: Arc<BurnsideContext>,
    pub store: &'a Store,
    start: Option<Instant>,
}

impl<'a> Group<'a> {
    pub fn new(name: impl Into<String>, ctx: Arc<BurnsideContext>, store: &'a Store, timed: bool) -> Self {
        Group {
            name: name.into(),
            ctx,
            store,
            start: timed.then(Instant::now),
        }
    }

    pub fn order(&self) -> usize {
        self.ctx.lattice().group().order()
    }

    pub fn report(&self, claim: &str, status: Status, witness: Value) -> VerificationReport {
        VerificationReport::new(claim, &self.name, status, witness).timed(self.start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CampaignKind {
    Induction,
    Exact,
    Main,
    Appendix,
    Probe,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 5] = [
        CampaignKind::Induction,
        CampaignKind::Exact,
        CampaignKind::Main,
        CampaignKind::Appendix,
        CampaignKind::Probe,
    ];

    pub fn claims(self) -> &'static [&'static str] {
        match self {
            CampaignKind::Induction => induction::CLAIMS,
            CampaignKind::Exact => exact::CLAIMS,
            CampaignKind::Main => main_theorem::CLAIMS,
            CampaignKind::Appendix => appendix::CLAIMS,
            CampaignKind::Probe => probe::CLAIMS,
        }
    }

    pub fn command(self) -> &'static str {
        match self {
            CampaignKind::Induction => "verify induction",
            CampaignKind::Exact => "verify exact",
            CampaignKind::Main => "verify main",
            CampaignKind::Appendix => "verify appendix",
            CampaignKind::Probe => "probe m",
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CampaignKind::Induction => "induction",
            CampaignKind::Exact => "exact",
            CampaignKind::Main => "main",
            CampaignKind::Appendix => "appendix",
            CampaignKind::Probe => "probe",
        })
    }
}

impl FromStr for CampaignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CampaignKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Domain(format!("unknown campaign `{s}`")))
    }
}

/// Seed for the sampled appendix cases of one group.
fn group_seed(seed: u64, descriptor: &str) -> u64 {
    descriptor.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn appendix_mode(cfg: &RunConfig, entries: &[CatalogEntry], e: &CatalogEntry) -> appendix::Mode {
    if e.order <= cfg.exhaustive_order {
        return appendix::Mode::Exhaustive;
    }
    let sampled = entries
        .iter()
        .filter(|x| x.in_bounds && x.order > cfg.exhaustive_order)
        .count()
        .max(1);
    appendix::Mode::Sampled {
        cases: cfg.samples.div_ceil(sampled),
        seed: group_seed(cfg.seed, &e.descriptor),
    }
}

pub fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))
}

fn run_entry(
    kind: CampaignKind,
    cfg: &RunConfig,
    store: &Store,
    entries: &[CatalogEntry],
    e: &CatalogEntry,
) -> Result<Vec<VerificationReport>> {
    if !e.in_bounds {
        return Ok(kind
            .claims()
            .iter()
            .map(|c| {
                VerificationReport::skipped(
                    c,
                    &e.descriptor,
                    format!("order {} is above the lattice bound", e.order),
                )
            })
            .collect());
    }
    let g = Arc::new(
        e.descriptor
            .parse::<GroupDescriptor>()?
            .build()?
            .with_label(e.descriptor.clone()),
    );
    let group = Group::new(e.descriptor.clone(), store.context(g)?, store, cfg.timings);
    match kind {
        CampaignKind::Induction => induction::run(&group),
        CampaignKind::Exact => exact::run(&group),
        CampaignKind::Main => main_theorem::run(&group),
        CampaignKind::Appendix => appendix::run(&group, appendix_mode(cfg, entries, e)),
        CampaignKind::Probe => probe::run(&group),
    }
}

fn notes(kind: CampaignKind, cfg: &RunConfig, entries: &[CatalogEntry]) -> Vec<String> {
    let mut out = Vec::new();
    if kind == CampaignKind::Main {
        out.push(main_theorem::TORSION_NOTE.to_string());
        out.push(format!(
            "sigma retraction checked up to order {} with the {} reading",
            main_theorem::SIGMA_MAX_ORDER,
            main_theorem::SIGMA_READING
        ));
    }
    if kind == CampaignKind::Appendix {
        out.push(format!(
            "{} over class {}: exhaustive up to order {}, {} seeded cases above",
            appendix::FUNCTOR,
            appendix::CLASS,
            cfg.exhaustive_order,
            cfg.samples
        ));
    }
    out.extend(
        entries
            .iter()
            .filter_map(|e| e.note.as_ref().map(|n| format!("{}: {n}", e.descriptor))),
    );
    out
}

/// Runs a campaign over the catalog for `cfg.p` up to `cfg.max_order`.
pub fn run_campaign(kind: CampaignKind, cfg: &RunConfig) -> Result<Envelope> {
    let store = Store::new(cfg.lattice_cache());
    let entries = catalog(cfg.p, cfg.max_order);
    let reports = pool(cfg)?.install(|| {
        entries
            .par_iter()
            .map(|e| run_entry(kind, cfg, &store, &entries, e))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(Envelope::new(
        kind.command(),
        cfg,
        notes(kind, cfg, &entries),
        reports.into_iter().flatten().collect(),
    ))
}

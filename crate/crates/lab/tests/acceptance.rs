//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed.

use bfk_core::burnside::BurnsideContext;
use bfk_core::group::{GroupDescriptor, SubgroupLattice};
use bfk_core::lattice::{Int, IntegerLattice};
use bfk_lab::campaigns::{main_theorem, run_campaign, CampaignKind};
use bfk_lab::catalog::catalog;
use bfk_lab::{Envelope, RunConfig, Status};
use serde_json::Value;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

fn context(desc: &str) -> Arc<BurnsideContext> {
    let g = desc.parse::<GroupDescriptor>().unwrap().build().unwrap();
    Arc::new(BurnsideContext::new(Arc::new(
        SubgroupLattice::new(Arc::new(g)).unwrap(),
    )))
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// Whether every report for `claim` is verified, how many there are, and
/// the groups they cover.
fn all_verified(env: &Envelope, claim: &str) -> (bool, usize, BTreeSet<String>) {
    let rs: Vec<_> = env.reports.iter().filter(|r| r.claim == claim).collect();
    let ok = !rs.is_empty() && rs.iter().all(|r| r.status == Status::Verified);
    (ok, rs.len(), rs.iter().map(|r| r.group.clone()).collect())
}

fn catalog_groups(max_order: usize) -> BTreeSet<String> {
    catalog(3, max_order)
        .into_iter()
        .filter(|e| e.in_bounds)
        .map(|e| e.descriptor)
        .collect()
}

fn order_of(desc: &str) -> usize {
    desc.parse::<GroupDescriptor>().unwrap().order().unwrap()
}

fn rank_two() -> Outcome {
    let start = Instant::now();
    let ctx = context("elab:3:2");
    let l = ctx.lattice();
    let top = (l.whole(), l.trivial());
    let b = ctx.whole();
    let eps = ctx.epsilon(top).unwrap();
    let span = IntegerLattice::from_vectors(eps.len(), vec![eps]).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = b.rank() == 6 && b.linearization().rank() == 5 && b.k_lattice() == span && secs < 1.0;
    outcome(
        ok,
        format!(
            "rank B = {}, rank lin = {}, K = Z eps: {}, {secs:.3}s",
            b.rank(),
            b.linearization().rank(),
            b.k_lattice() == span
        ),
    )
}

fn delta_identity() -> Outcome {
    let ctx = context("xsp:3");
    let l = ctx.lattice();
    let top = (l.whole(), l.trivial());
    let d = ctx.delta(top).unwrap();
    let ind = |sub| {
        let key = (sub, l.trivial());
        ctx.indinf_vector(key, top, &ctx.epsilon(key).unwrap()).unwrap()
    };
    let (a, c) = (ind(d.jz), ind(d.iz));
    let lhs: Vec<Int> = a.iter().zip(&c).map(|(x, y)| x - y).collect();
    let rhs: Vec<Int> = d.delta.iter().map(|x| x * Int::from(3)).collect();
    outcome(lhs == rhs && d.delta.iter().any(|x| *x != Int::from(0)), "in B(xsp(3))")
}

fn induction(env: &Envelope) -> Outcome {
    let want = catalog_groups(81);
    let (a, _, ga) = all_verified(env, "induction.x2-sum");
    let (c, _, gc) = all_verified(env, "induction.p-multiple");
    outcome(
        a && c && ga == want && gc == want,
        format!("(a) {a}, (c) {c} over {} groups", want.len()),
    )
}

fn dual_sequence(env: &Envelope) -> Outcome {
    let want = catalog_groups(81);
    let (ok, n, groups) = all_verified(env, "exact.dual-sequence");
    outcome(ok && groups == want, format!("{n} groups"))
}

fn eta_iso(env: &Envelope) -> Outcome {
    let want = catalog_groups(81);
    let (x3, _, g3) = all_verified(env, "main.eta-iso.X3");
    let (x, _, gx) = all_verified(env, "main.eta-iso.X");
    let order81 = g3.iter().filter(|g| order_of(g) == 81).count();
    let ok = x3 && x && g3 == want && gx == want && g3.contains("xsp:3") && order81 >= 3;
    outcome(
        ok,
        format!("X3 {x3}, X {x}, {} groups, {order81} of order 81", g3.len()),
    )
}

fn cokernel_orders(env: &Envelope) -> Outcome {
    let want = catalog_groups(81);
    let mut ok = true;
    let mut n = 0;
    for class in ["E", "X"] {
        let (v, k, groups) = all_verified(env, &format!("main.cokernel-order.{class}"));
        ok &= v && groups == want;
        n += k;
    }
    for r in env
        .reports
        .iter()
        .filter(|r| r.claim.starts_with("main.cokernel-order."))
    {
        ok &= r.status == Status::Verified;
    }
    let reported = env
        .reports
        .iter()
        .filter(|r| r.claim.starts_with("main.cokernel-order."))
        .count();
    outcome(ok, format!("{reported} class/group pairs covering E, {n} for E and X"))
}

fn sigma(env: &Envelope) -> Outcome {
    let want: BTreeSet<String> = catalog_groups(27);
    let (ok, _, groups) = all_verified(env, "main.sigma-retraction");
    outcome(
        ok && groups == want,
        format!("{} groups, reading {}", groups.len(), main_theorem::SIGMA_READING),
    )
}

fn appendix(env: &Envelope) -> Outcome {
    let mut ok = env.summary.refuted == 0 && env.summary.skipped == 0;
    let mut sampled = 0u64;
    let mut exhaustive = BTreeSet::new();
    for r in &env.reports {
        let failures = r.witness["failures"].as_array().map_or(0, Vec::len);
        ok &= failures == 0 && r.status == Status::Verified;
        if r.witness["mode"] == "exhaustive" {
            exhaustive.insert(r.group.clone());
        } else if r.claim == "appendix.composition-identity" && order_of(&r.group) == 81 {
            sampled += r.witness["cases"].as_u64().unwrap_or(0);
        }
    }
    let claims: BTreeSet<&str> = env.reports.iter().map(|r| r.claim.as_str()).collect();
    ok &= exhaustive == catalog_groups(27) && sampled >= 200 && claims.len() == 14;
    outcome(
        ok,
        format!(
            "{} exhaustive groups, {sampled} sampled cases at order 81, {} claims",
            exhaustive.len(),
            claims.len()
        ),
    )
}

fn probe(env: &Envelope) -> Outcome {
    let (s, _, gs) = all_verified(env, "probe.counit-surjective");
    let (f, _, _) = all_verified(env, "probe.m-finite");
    let nonzero: Vec<String> = env
        .reports
        .iter()
        .filter(|r| r.claim == "probe.m-finite" && r.witness["m_is_zero"] == Value::Bool(false))
        .map(|r| r.group.clone())
        .collect();
    outcome(
        s && f && gs == catalog_groups(81),
        format!(
            "M nonzero for {nonzero:?}, zero for the other {}",
            gs.len() - nonzero.len()
        ),
    )
}

fn reproducible(main: &Envelope, cfg: &RunConfig) -> Outcome {
    let again = run_campaign(CampaignKind::Main, cfg).unwrap();
    let small = RunConfig {
        exhaustive_order: 9,
        samples: 24,
        seed: 7,
        ..cfg.clone()
    };
    let a = run_campaign(CampaignKind::Appendix, &small).unwrap().to_json();
    let b = run_campaign(CampaignKind::Appendix, &small).unwrap().to_json();
    let c = run_campaign(
        CampaignKind::Appendix,
        &RunConfig {
            seed: 8,
            ..small.clone()
        },
    )
    .unwrap()
    .to_json();
    let ok = main.to_json() == again.to_json() && a == b && main.to_csv() == again.to_csv();
    outcome(
        ok,
        format!(
            "main and seeded appendix reports identical; another seed differs: {}",
            a != c
        ),
    )
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "C3xC3 ranks and K = Z eps", rank_two()));
    results.push((2, "Ind eps_JZ - Ind eps_IZ = 3 delta", delta_identity()));
    let ind = run_campaign(CampaignKind::Induction, &cfg).unwrap();
    results.push((3, "K from X2 sections and p K in K_eps", induction(&ind)));
    let exact = run_campaign(CampaignKind::Exact, &cfg).unwrap();
    results.push((4, "B*/R_Q* free of rank K*", dual_sequence(&exact)));
    let main = run_campaign(CampaignKind::Main, &cfg).unwrap();
    results.push((5, "eta X3 and X isomorphisms", eta_iso(&main)));
    results.push((6, "cokernel invariant factors divide |P|", cokernel_orders(&main)));
    results.push((7, "eta sigma = |P| id up to order 27", sigma(&main)));
    let app = run_campaign(CampaignKind::Appendix, &cfg).unwrap();
    results.push((8, "appendix suite", appendix(&app)));
    let pr = run_campaign(CampaignKind::Probe, &cfg).unwrap();
    results.push((9, "counit surjective and M finite", probe(&pr)));
    results.push((10, "byte-identical reports", reproducible(&main, &cfg)));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!(
            "criterion {n:>2} {}: {name} ({})",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

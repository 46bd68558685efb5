//! Property suite for bisets and their action on limits, checked against
//! concrete bisets.
//!
//! For a group `P` the bisets considered are the elementary ones through
//! `P`: identity, restriction to and induction from every subgroup,
//! deflation to and inflation from every quotient, conjugation by each
//! generator, and one relabelling isomorphism. Compositions pair each of
//! these with the elementary bisets out of its left group (identity,
//! restriction to maximal subgroups, deflation by normal subgroups of order
//! `p`, conjugation by a generator) and with its own opposite.
//!
//! Up to the exhaustive order every biset, point, subgroup, section and
//! limit generator in these families is checked. Above it, each case draws
//! one biset, one family and a few points and subgroups from a seeded
//! generator.

use super::Group;
use crate::report::{Status, VerificationReport};
use crate::store::Store;
use bfk_core::biset::ConcreteBiset;
use bfk_core::functor::FunctorKind;
use bfk_core::group::{classify_quotient, ElemSet, FiniteGroup, SectionClass, SubgroupId, SubgroupLattice};
use bfk_core::lattice::Int;
use bfk_core::limit::{section_iso, FunctorSystem, InverseLimit, NaturalFamily};
use bfk_core::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const CLAIMS: &[&str] = &[
    "appendix.action-routes",
    "appendix.adjunction-minus-plus",
    "appendix.adjunction-plus-minus",
    "appendix.composed-left-transporter",
    "appendix.composed-right-transporter",
    "appendix.composition-identity",
    "appendix.composition-product",
    "appendix.conjugation-left",
    "appendix.conjugation-right",
    "appendix.family",
    "appendix.left-transported-section",
    "appendix.orbit-quotient",
    "appendix.quotient-component",
    "appendix.right-transported-section",
];

pub const FUNCTOR: FunctorKind = FunctorKind::KDual;
pub const CLASS: SectionClass = SectionClass::X3;

#[derive(Clone, Copy, Debug)]
pub enum Mode {
    Exhaustive,
    Sampled { cases: usize, seed: u64 },
}

const KEEP_FAILURES: usize = 3;

#[derive(Default)]
struct Tally {
    cases: BTreeMap<&'static str, usize>,
    failures: BTreeMap<&'static str, Vec<Value>>,
}

impl Tally {
    fn record(&mut self, claim: &'static str, ok: bool, witness: impl FnOnce() -> Value) {
        *self.cases.entry(claim).or_default() += 1;
        let f = self.failures.entry(claim).or_default();
        if !ok && f.len() < KEEP_FAILURES {
            f.push(witness());
        }
    }

    fn reports(self, g: &Group, mode: Mode) -> Vec<VerificationReport> {
        let mode_json = match mode {
            Mode::Exhaustive => json!("exhaustive"),
            Mode::Sampled { cases, seed } => json!({ "sampled": cases, "seed": seed }),
        };
        CLAIMS
            .iter()
            .filter_map(|&claim| {
                let cases = *self.cases.get(claim)?;
                let failures = self.failures.get(claim).cloned().unwrap_or_default();
                Some(g.report(
                    claim,
                    Status::from_bool(failures.is_empty()),
                    json!({
                        "mode": mode_json,
                        "functor": FUNCTOR.to_string(),
                        "class": CLASS.to_string(),
                        "cases": cases,
                        "failures": failures,
                    }),
                ))
            })
            .collect()
    }
}

fn full(n: usize) -> ElemSet {
    ElemSet::from_iter(n, 0..n)
}

/// `set` (elements of the parent) in the local numbering of a subgroup table
/// with embedding `emb`.
fn localize(emb: &[usize], set: &ElemSet) -> ElemSet {
    ElemSet::from_iter(emb.len(), (0..emb.len()).filter(|&i| set.contains(emb[i])))
}

fn join(g: &FiniteGroup, a: &ElemSet, b: &ElemSet) -> ElemSet {
    g.generate(a.iter().chain(b.iter()))
}

fn subgroup(g: &Arc<FiniteGroup>, h: &ElemSet) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
    let (t, emb) = g.subgroup_table(h)?;
    Ok((Arc::new(t), emb))
}

fn quotient(g: &Arc<FiniteGroup>, n: &ElemSet) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
    let (q, proj, _) = g.quotient_table(&full(g.order()), n)?;
    Ok((Arc::new(q), proj))
}

struct Named {
    name: String,
    biset: ConcreteBiset,
}

fn named(name: String, biset: ConcreteBiset) -> Named {
    Named { name, biset }
}

/// Inverse of the element order reversal used for the relabelling biset.
fn reversal(n: usize) -> Vec<usize> {
    std::iter::once(0).chain((1..n).rev()).collect()
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Identity,
    Res(SubgroupId),
    Ind(SubgroupId),
    Def(SubgroupId),
    Inf(SubgroupId),
    Conj(usize),
    Relabel,
}

fn elementary(g: &Arc<FiniteGroup>, l: &SubgroupLattice, kind: Kind) -> Result<Named> {
    Ok(match kind {
        Kind::Identity => named("identity".into(), ConcreteBiset::identity(g.clone())),
        Kind::Res(h) => {
            let (hg, emb) = subgroup(g, l.subgroup(h).set())?;
            named(format!("res to {h}"), ConcreteBiset::restriction(g.clone(), hg, &emb)?)
        }
        Kind::Ind(h) => {
            let (hg, emb) = subgroup(g, l.subgroup(h).set())?;
            named(format!("ind from {h}"), ConcreteBiset::induction(g.clone(), hg, &emb)?)
        }
        Kind::Def(n) => {
            let (q, proj) = quotient(g, l.subgroup(n).set())?;
            named(format!("def by {n}"), ConcreteBiset::deflation(g.clone(), q, &proj)?)
        }
        Kind::Inf(n) => {
            let (q, proj) = quotient(g, l.subgroup(n).set())?;
            named(
                format!("inf from quotient by {n}"),
                ConcreteBiset::inflation(g.clone(), q, &proj)?,
            )
        }
        Kind::Conj(x) => named(
            format!("conj by {x}"),
            ConcreteBiset::conjugation(g, x, &full(g.order()))?,
        ),
        Kind::Relabel => {
            let perm = reversal(g.order());
            let q = Arc::new(g.relabel(&perm)?);
            named("relabel".into(), ConcreteBiset::isomorphism(g.clone(), q, &perm)?)
        }
    })
}

fn all_kinds(l: &SubgroupLattice) -> Vec<Kind> {
    let mut out = vec![Kind::Identity, Kind::Relabel];
    for h in 0..l.len() {
        out.push(Kind::Res(h));
        out.push(Kind::Ind(h));
        if l.is_normal(h) {
            out.push(Kind::Def(h));
            out.push(Kind::Inf(h));
        }
    }
    out.extend(l.subgroup(l.whole()).generators().iter().map(|&x| Kind::Conj(x)));
    out
}

/// Bisets out of `q` to compose after a biset landing in `q`.
fn followers(store: &Store, q: &Arc<FiniteGroup>, rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Named>> {
    let ctx = store.context(q.clone())?;
    let l = ctx.lattice();
    let p = q.prime() as usize;
    let mut kinds = vec![Kind::Identity];
    kinds.extend(l.maximal_subgroups(l.whole()).into_iter().map(Kind::Res));
    kinds.extend(
        (0..l.len())
            .filter(|&n| l.order_of(n) == p && l.is_normal(n))
            .map(Kind::Def),
    );
    kinds.extend(l.subgroup(l.whole()).generators().first().map(|&x| Kind::Conj(x)));
    if let Some(rng) = rng {
        let k = *kinds.choose(rng).expect("identity is always present");
        kinds = vec![k];
    }
    kinds.into_iter().map(|k| elementary(q, l, k)).collect()
}

/// A system and its limit for the suite's functor and class.
struct Solved {
    sys: Arc<FunctorSystem>,
    lim: Arc<InverseLimit>,
}

fn solved(store: &Store, g: &Arc<FiniteGroup>) -> Result<Solved> {
    let ctx = store.context(g.clone())?;
    let sys = store.system(&ctx, CLASS, FUNCTOR, false)?;
    let lim = store.limit(&sys)?;
    Ok(Solved { sys, lim })
}

fn in_limit(s: &Solved, x: &[Int]) -> Result<bool> {
    Ok(s.lim.coords(x)?.is_some())
}

/// Checks that `phi` maps `big/small ≤ g1` isomorphically onto `a/b ≤ g2`:
/// it must be a homomorphism modulo `b` with kernel `small`, and the orders
/// must agree. Also compares the two quotients by their invariants.
fn explicit_iso(
    g1: &FiniteGroup,
    big: &ElemSet,
    small: &ElemSet,
    g2: &FiniteGroup,
    a: &ElemSet,
    b: &ElemSet,
    phi: impl Fn(usize) -> Option<usize>,
) -> bool {
    if !g1.is_subgroup(big) || !g1.is_subgroup(small) || !small.is_subset(big) {
        return false;
    }
    if !big.iter().all(|x| small.iter().all(|s| small.contains(g1.conj(x, s)))) {
        return false;
    }
    if !b.is_subset(a) || big.len() * b.len() != small.len() * a.len() {
        return false;
    }
    let mut image = vec![0usize; g1.order()];
    for x in big.iter() {
        match phi(x) {
            Some(y) if a.contains(y) => image[x] = y,
            _ => return false,
        }
    }
    for x in g1.generators_of(&big.to_vec()) {
        for y in big.iter() {
            let d = g2.mul(g2.inv(g2.mul(image[x], image[y])), image[g1.mul(x, y)]);
            if !b.contains(d) {
                return false;
            }
        }
    }
    if !big.iter().all(|x| b.contains(image[x]) == small.contains(x)) {
        return false;
    }
    let (Ok((q1, _, _)), Ok((q2, _, _))) = (g1.quotient_table(big, small), g2.quotient_table(a, b)) else {
        return false;
    };
    q1.order() == q2.order()
        && q1.exponent() == q2.exponent()
        && q1.is_abelian() == q2.is_abelian()
        && q1.center().len() == q2.center().len()
        && classify_quotient(&q1) == classify_quotient(&q2)
}

/// `(Tᵘ, Sᵘ)` is a section with `Tᵘ/Sᵘ ≅ (T ∩ ᵘP)S/(T ∩ ᵘ1)S` through
/// `x ↦ t` where `t·u = u·x`.
fn right_section(u: &ConcreteBiset, pt: usize, t: &ElemSet, s: &ElemSet) -> bool {
    let (q, p) = (u.left_group(), u.right_group());
    let tu = u.right_transporter(t, pt);
    let su = u.right_transporter(s, pt);
    let up = u.left_transporter(pt, &full(p.order()));
    let u1 = u.left_transporter(pt, &ElemSet::from_iter(p.order(), [0]));
    let a = join(q, &t.intersection(&up), s);
    let b = join(q, &t.intersection(&u1), s);
    // The middle quotient (T ∩ ᵘP)/(S ∩ ᵘP)(T ∩ ᵘ1) has the same order.
    let m1 = t.intersection(&up);
    let m2 = join(q, &s.intersection(&up), &t.intersection(&u1));
    if m1.len() * b.len() != m2.len() * a.len() {
        return false;
    }
    explicit_iso(p, &tu, &su, q, &a, &b, |x| {
        let target = u.act_right(pt, x);
        t.iter().find(|&y| u.act_left(y, pt) == target)
    })
}

/// `(ᵘY, ᵘX)` is a section with `ᵘY/ᵘX ≅ (Y ∩ Qᵘ)X/(Y ∩ 1ᵘ)X` through
/// `y ↦ x` where `y·u = u·x`.
fn left_section(u: &ConcreteBiset, pt: usize, y: &ElemSet, x: &ElemSet) -> bool {
    let (q, p) = (u.left_group(), u.right_group());
    let uy = u.left_transporter(pt, y);
    let ux = u.left_transporter(pt, x);
    let qu = u.right_transporter(&full(q.order()), pt);
    let u1 = u.right_transporter(&ElemSet::from_iter(q.order(), [0]), pt);
    let a = join(p, &y.intersection(&qu), x);
    let b = join(p, &y.intersection(&u1), x);
    let m1 = y.intersection(&qu);
    let m2 = join(p, &x.intersection(&qu), &y.intersection(&u1));
    if m1.len() * b.len() != m2.len() * a.len() {
        return false;
    }
    explicit_iso(q, &uy, &ux, p, &a, &b, |g| {
        let target = u.act_left(g, pt);
        y.iter().find(|&z| u.act_right(pt, z) == target)
    })
}

fn conj_right(u: &ConcreteBiset, pt: usize, t: &ElemSet, x: usize) -> bool {
    let p = u.right_group();
    let tu = u.right_transporter(t, pt);
    let lhs = ElemSet::from_iter(p.order(), tu.iter().map(|g| p.conj(p.inv(x), g)));
    lhs == u.right_transporter(t, u.act_right(pt, x))
}

fn conj_left(u: &ConcreteBiset, pt: usize, x: &ElemSet, y: usize) -> bool {
    let q = u.left_group();
    let ux = u.left_transporter(pt, x);
    let lhs = ElemSet::from_iter(q.order(), ux.iter().map(|g| q.conj(y, g)));
    lhs == u.left_transporter(u.act_left(y, pt), x)
}

/// Sections `(T, S)` of a lattice as element sets.
fn sections(l: &SubgroupLattice) -> Vec<(SubgroupId, SubgroupId)> {
    let mut out = Vec::new();
    for t in 0..l.len() {
        for s in l.interval(l.trivial(), t) {
            if l.is_normal_in(s, t) {
                out.push((t, s));
            }
        }
    }
    out
}

struct Suite<'a> {
    g: &'a Group<'a>,
    tally: Tally,
}

impl Suite<'_> {
    /// Conjugation and transported-section properties of one biset, at the
    /// given points, with subgroups and sections drawn from the lattices.
    fn transporters(
        &mut self,
        name: &str,
        u: &ConcreteBiset,
        points: &[usize],
        lq: &SubgroupLattice,
        lp: &SubgroupLattice,
        rng: &mut Option<ChaCha8Rng>,
    ) {
        let (q, p) = (u.left_group().clone(), u.right_group().clone());
        let pick = |n: usize, rng: &mut Option<ChaCha8Rng>| -> Vec<usize> {
            match rng {
                None => (0..n).collect(),
                Some(r) => (0..3).map(|_| r.gen_range(0..n)).collect(),
            }
        };
        let sq = sections(lq);
        let sp = sections(lp);
        for &pt in points {
            for t in pick(lq.len(), rng) {
                for x in pick(p.order(), rng) {
                    let ok = conj_right(u, pt, lq.subgroup(t).set(), x);
                    self.tally.record(
                        "appendix.conjugation-right",
                        ok,
                        || json!({ "biset": name, "point": pt, "subgroup": t, "x": x }),
                    );
                }
            }
            for xs in pick(lp.len(), rng) {
                for y in pick(q.order(), rng) {
                    let ok = conj_left(u, pt, lp.subgroup(xs).set(), y);
                    self.tally.record(
                        "appendix.conjugation-left",
                        ok,
                        || json!({ "biset": name, "point": pt, "subgroup": xs, "y": y }),
                    );
                }
            }
            for i in pick(sq.len(), rng) {
                let (t, s) = sq[i];
                let ok = right_section(u, pt, lq.subgroup(t).set(), lq.subgroup(s).set());
                self.tally.record(
                    "appendix.right-transported-section",
                    ok,
                    || json!({ "biset": name, "point": pt, "section": [t, s] }),
                );
            }
            for i in pick(sp.len(), rng) {
                let (y, x) = sp[i];
                let ok = left_section(u, pt, lp.subgroup(y).set(), lp.subgroup(x).set());
                self.tally.record(
                    "appendix.left-transported-section",
                    ok,
                    || json!({ "biset": name, "point": pt, "section": [y, x] }),
                );
            }
        }
    }

    /// Transporters through `V ×_Q U` at pairs of points.
    #[allow(clippy::too_many_arguments)]
    fn composed_transporters(
        &mut self,
        name: &str,
        v: &ConcreteBiset,
        u: &ConcreteBiset,
        pairs: &[u32],
        w: &ConcreteBiset,
        lr: &SubgroupLattice,
        lp: &SubgroupLattice,
        rng: &mut Option<ChaCha8Rng>,
    ) {
        let nu = u.len();
        let todo: Vec<(usize, usize, usize, usize)> = match rng {
            None => (0..v.len())
                .flat_map(|a| (0..nu).map(move |b| (a, b)))
                .flat_map(|(a, b)| (0..lp.len()).map(move |x| (a, b, x, usize::MAX)))
                .chain(
                    (0..v.len())
                        .flat_map(|a| (0..nu).flat_map(move |b| (0..lr.len()).map(move |z| (a, b, usize::MAX, z)))),
                )
                .collect(),
            Some(r) => (0..4)
                .map(|_| {
                    (
                        r.gen_range(0..v.len()),
                        r.gen_range(0..nu),
                        r.gen_range(0..lp.len()),
                        r.gen_range(0..lr.len()),
                    )
                })
                .collect(),
        };
        for (a, b, x, z) in todo {
            let vu = pairs[a * nu + b] as usize;
            if x != usize::MAX {
                let xs = lp.subgroup(x).set();
                let ok = v.left_transporter(a, &u.left_transporter(b, xs)) == w.left_transporter(vu, xs);
                self.tally.record(
                    "appendix.composed-left-transporter",
                    ok,
                    || json!({ "pair": name, "points": [a, b], "subgroup": x }),
                );
            }
            if z != usize::MAX {
                let zs = lr.subgroup(z).set();
                let ok = u.right_transporter(&v.right_transporter(zs, a), b) == w.right_transporter(zs, vu);
                self.tally.record(
                    "appendix.composed-right-transporter",
                    ok,
                    || json!({ "pair": name, "points": [a, b], "subgroup": z }),
                );
            }
        }
    }

    /// `(C\V) ×_{B/A} (A\U) ≅ C\(V ×_B U)` for the listed sections where `A`
    /// acts trivially on `C\V`.
    fn orbit_quotient(
        &mut self,
        name: &str,
        v: &ConcreteBiset,
        u: &ConcreteBiset,
        dc: &[(ElemSet, ElemSet)],
        ba: &[(ElemSet, ElemSet)],
    ) -> Result<()> {
        let q = u.left_group();
        for (d, c) in dc {
            for (b, a) in ba {
                let trivial = a.iter().all(|x| {
                    (0..v.len()).all(|pt| {
                        let moved = v.act_right(pt, x);
                        c.iter().any(|y| v.act_left(y, pt) == moved)
                    })
                });
                if !trivial {
                    continue;
                }
                let (_, bemb) = q.subgroup_table(b)?;
                let a_loc = localize(&bemb, a);
                let (_, demb) = v.left_group().subgroup_table(d)?;
                let c_loc = localize(&demb, c);
                let (db, bb) = (full(d.len()), full(b.len()));
                let cv = v
                    .restrict_left(d)?
                    .left_quotient(&db, &c_loc)?
                    .restrict_right(b)?
                    .right_quotient(&bb, &a_loc)?;
                let au = u.restrict_left(b)?.left_quotient(&bb, &a_loc)?;
                let lhs = ConcreteBiset::compose(&cv, &au)?;
                let vb = ConcreteBiset::compose(&v.restrict_right(b)?, &u.restrict_left(b)?)?;
                let rhs = vb.restrict_left(d)?.left_quotient(&db, &c_loc)?;
                let ok = lhs.is_isomorphic(&rhs);
                self.tally.record(
                    "appendix.orbit-quotient",
                    ok,
                    || json!({ "pair": name, "d": d.to_vec(), "c": c.to_vec(), "b": b.to_vec(), "a": a.to_vec() }),
                );
            }
        }
        Ok(())
    }

    /// Action of one biset on the given families: agreement of the two term
    /// routes, landing in the limit, and the identity law.
    fn act(
        &mut self,
        name: &str,
        u: &ConcreteBiset,
        src: &Solved,
        dst: &Solved,
        ls: &[Vec<Int>],
    ) -> Result<Vec<Vec<Int>>> {
        let imgs = dst.sys.act_all(&src.sys, u, ls, false)?;
        let orbits = dst.sys.act_all(&src.sys, u, ls, true)?;
        for (i, (a, b)) in imgs.iter().zip(&orbits).enumerate() {
            self.tally.record(
                "appendix.action-routes",
                a == b,
                || json!({ "biset": name, "family": i }),
            );
            let ok = in_limit(dst, a)?;
            self.tally
                .record("appendix.family", ok, || json!({ "biset": name, "family": i }));
        }
        Ok(imgs)
    }

    /// `V ∘ U` acting equals `V` after `U`, plus transporters and orbit
    /// quotients through the composite.
    #[allow(clippy::too_many_arguments)]
    fn compose_check(
        &mut self,
        u: &Named,
        v: &Named,
        src: &Solved,
        mid: &Solved,
        imgs: &[Vec<Int>],
        ls: &[Vec<Int>],
        rng: &mut Option<ChaCha8Rng>,
    ) -> Result<()> {
        let store = self.g.store;
        let name = format!("{} after {}", v.name, u.name);
        let (w, pairs) = ConcreteBiset::compose_with_pairs(&v.biset, &u.biset)?;
        let r = v.biset.left_group().clone();
        let dst = solved(store, &r)?;
        let two_steps = dst.sys.act_all(&mid.sys, &v.biset, imgs, false)?;
        let direct = dst.sys.act_all(&src.sys, &w, ls, false)?;
        for (i, (a, b)) in two_steps.iter().zip(&direct).enumerate() {
            self.tally.record(
                "appendix.composition-product",
                a == b,
                || json!({ "pair": name, "family": i }),
            );
        }
        let lr = dst.sys.context().lattice();
        let lq = mid.sys.context().lattice();
        let lp = src.sys.context().lattice();
        self.composed_transporters(&name, &v.biset, &u.biset, &pairs, &w, lr, lp, rng);

        let (dc, ba) = match rng {
            None => {
                let mut dc: Vec<(ElemSet, ElemSet)> = (0..lr.len())
                    .filter(|&c| lr.is_normal(c))
                    .map(|c| (lr.subgroup(lr.whole()).set().clone(), lr.subgroup(c).set().clone()))
                    .collect();
                dc.extend(
                    lr.maximal_subgroups(lr.whole())
                        .into_iter()
                        .map(|d| (lr.subgroup(d).set().clone(), lr.subgroup(lr.trivial()).set().clone())),
                );
                let mut ba: Vec<(ElemSet, ElemSet)> = (0..lq.len())
                    .filter(|&a| lq.is_normal(a))
                    .map(|a| (lq.subgroup(lq.whole()).set().clone(), lq.subgroup(a).set().clone()))
                    .collect();
                ba.extend(
                    lq.maximal_subgroups(lq.whole())
                        .into_iter()
                        .map(|b| (lq.subgroup(b).set().clone(), lq.subgroup(lq.trivial()).set().clone())),
                );
                (dc, ba)
            }
            Some(rr) => {
                let sr = sections(lr);
                let sq = sections(lq);
                let dc = (0..4)
                    .map(|_| sr[rr.gen_range(0..sr.len())])
                    .map(|(d, c)| (lr.subgroup(d).set().clone(), lr.subgroup(c).set().clone()))
                    .collect();
                let ba = (0..4)
                    .map(|_| sq[rr.gen_range(0..sq.len())])
                    .map(|(b, a)| (lq.subgroup(b).set().clone(), lq.subgroup(a).set().clone()))
                    .collect();
                (dc, ba)
            }
        };
        self.orbit_quotient(&name, &v.biset, &u.biset, &dc, &ba)
    }

    /// For `U = S\P`, the component of `U·l` at each section of `T/S` is the
    /// component of `l` at the corresponding section of `P`.
    fn quotient_component(&mut self, p_solved: &Solved, key: (SubgroupId, SubgroupId), ls: &[Vec<Int>]) -> Result<()> {
        let store = self.g.store;
        let pctx = p_solved.sys.context();
        let lp = pctx.lattice();
        let pg = lp.group_arc().clone();
        let (t, s) = key;
        let (tg, temb) = subgroup(&pg, lp.subgroup(t).set())?;
        let s_loc = localize(&temb, lp.subgroup(s).set());
        let (q, proj) = quotient(&tg, &s_loc)?;
        let u = ConcreteBiset::compose(
            &ConcreteBiset::deflation(tg.clone(), q.clone(), &proj)?,
            &ConcreteBiset::restriction(pg.clone(), tg.clone(), &temb)?,
        )?;
        let qs = solved(store, &q)?;
        let imgs = qs.sys.act_all(&p_solved.sys, &u, ls, false)?;
        let qctx = qs.sys.context();
        let lq = qctx.lattice();
        let preimage = |c: SubgroupId| -> SubgroupId {
            let sub = lq.subgroup(c);
            let set = ElemSet::from_iter(
                pg.order(),
                (0..temb.len()).filter(|&i| sub.contains(proj[i])).map(|i| temb[i]),
            );
            lp.id_of(&set).expect("preimages are subgroups")
        };
        let (q_off, p_off) = (qs.sys.offsets(), p_solved.sys.offsets());
        for (a, &kq) in qs.sys.system().sections().iter().enumerate() {
            let kp = (preimage(kq.0), preimage(kq.1));
            let b = p_solved
                .sys
                .system()
                .index_of(kp)
                .ok_or_else(|| Error::System(format!("{kp:?} is not in the class")))?;
            let iso = section_iso(FUNCTOR, qctx, kq, pctx, kp, preimage)?;
            for (i, (img, l)) in imgs.iter().zip(ls).enumerate() {
                let ok = iso.mul_vec(&img[q_off[a]..q_off[a + 1]])? == l[p_off[b]..p_off[b + 1]];
                self.tally.record(
                    "appendix.quotient-component",
                    ok,
                    || json!({ "section": [t, s], "component": [kp.0, kp.1], "family": i }),
                );
            }
        }
        Ok(())
    }

    /// Round trips of the adjunction for the identity, a scalar and the
    /// restriction `B* → K*`; sampled mode checks a few sections only.
    fn adjunction(&mut self, p_solved: &Solved, scalar: i64, rng: &mut Option<ChaCha8Rng>) -> Result<()> {
        let f = &p_solved.sys;
        let ctx = f.context_arc().clone();
        let b = self.g.store.system(&ctx, CLASS, FunctorKind::BDual, false)?;
        let families = [
            (NaturalFamily::identity(f), f.clone()),
            (NaturalFamily::scalar(f, scalar), f.clone()),
            (NaturalFamily::restriction(&b)?, b.clone()),
        ];
        for (fam, src) in &families {
            fam.check_natural(src, f)?;
            match rng {
                None => {
                    let ok = fam.plus_minus_round_trip(src)?;
                    self.tally
                        .record("appendix.adjunction-plus-minus", ok, || json!({ "family": fam.name }));
                    let ok = fam.minus_plus_round_trip(src)?;
                    self.tally
                        .record("appendix.adjunction-minus-plus", ok, || json!({ "family": fam.name }));
                }
                Some(r) => {
                    let secs = src.system().sections();
                    let a = r.gen_range(0..secs.len());
                    let n = src.system().value(a).generators();
                    let x: Vec<Int> = (0..n).map(|_| Int::from(r.gen_range(-2..=2))).collect();
                    let back = NaturalFamily::minus(src, secs[a], &fam.plus(src, secs[a], &x)?)?;
                    let ok = back == fam.maps[a].mul_vec(&x)?;
                    self.tally.record(
                        "appendix.adjunction-plus-minus",
                        ok,
                        || json!({ "family": fam.name, "section": secs[a] }),
                    );
                    let top = src.top();
                    let x: Vec<Int> = (0..src.top_rank()?).map(|_| Int::from(r.gen_range(-2..=2))).collect();
                    let psi = fam.plus(src, top, &x)?;
                    let (c, comp) = &psi[r.gen_range(0..psi.len())];
                    let key = secs[*c];
                    let d = src.functor().defres(src.context(), top, key)?.mul_vec(&x)?;
                    let ok = &NaturalFamily::minus(src, key, &fam.plus(src, key, &d)?)? == comp;
                    self.tally.record(
                        "appendix.adjunction-minus-plus",
                        ok,
                        || json!({ "family": fam.name, "section": key }),
                    );
                }
            }
        }
        Ok(())
    }
}

fn basis_families(s: &Solved) -> Vec<Vec<Int>> {
    s.lim.basis().rows().to_vec()
}

fn random_family(s: &Solved, rng: &mut ChaCha8Rng) -> Vec<Int> {
    let coords: Vec<Int> = (0..s.lim.rank()).map(|_| Int::from(rng.gen_range(-2..=2))).collect();
    s.lim.element(&coords)
}

pub fn run(g: &Group, mode: Mode) -> Result<Vec<VerificationReport>> {
    let mut suite = Suite {
        g,
        tally: Tally::default(),
    };
    let pg = g.ctx.lattice().group_arc().clone();
    let lp = g.ctx.lattice();
    let p_solved = solved(g.store, &pg)?;
    match mode {
        Mode::Exhaustive => {
            let ls = basis_families(&p_solved);
            let id = ConcreteBiset::identity(pg.clone());
            let back = p_solved.sys.act_all(&p_solved.sys, &id, &ls, false)?;
            for (i, (a, b)) in back.iter().zip(&ls).enumerate() {
                suite
                    .tally
                    .record("appendix.composition-identity", a == b, || json!({ "family": i }));
            }
            for key in sections(lp) {
                suite.quotient_component(&p_solved, key, &ls)?;
            }
            suite.adjunction(&p_solved, 2, &mut None)?;
            suite.adjunction(&p_solved, -3, &mut None)?;
            for kind in all_kinds(lp) {
                let u = elementary(&pg, lp, kind)?;
                check_biset(&mut suite, &u, None, &mut None)?;
            }
        }
        Mode::Sampled { cases, seed } => {
            let mut rng = Some(ChaCha8Rng::seed_from_u64(seed));
            let kinds = all_kinds(lp);
            let secs = sections(lp);
            for _ in 0..cases {
                let r = rng.as_mut().expect("sampled mode has a generator");
                let kind = *kinds.choose(r).expect("kinds are nonempty");
                let l = random_family(&p_solved, r);
                let key = secs[r.gen_range(0..secs.len())];
                let scalar = r.gen_range(2..=5);
                let id = ConcreteBiset::identity(pg.clone());
                let back = p_solved.sys.act(&p_solved.sys, &id, &l)?;
                suite.tally.record(
                    "appendix.composition-identity",
                    back == l,
                    || json!({ "family": "sampled" }),
                );
                suite.quotient_component(&p_solved, key, std::slice::from_ref(&l))?;
                suite.adjunction(&p_solved, scalar, &mut rng)?;
                let u = elementary(&pg, lp, kind)?;
                check_biset(&mut suite, &u, Some(l), &mut rng)?;
            }
        }
    }
    Ok(suite.tally.reports(g, mode))
}

/// All checks for one elementary biset `U` touching `P`. In sampled mode
/// `family` is a family on the right group when that group is `P`, and a
/// random family is drawn otherwise.
fn check_biset(suite: &mut Suite, u: &Named, family: Option<Vec<Int>>, rng: &mut Option<ChaCha8Rng>) -> Result<()> {
    let store = suite.g.store;
    let (q, p) = (u.biset.left_group().clone(), u.biset.right_group().clone());
    let src = solved(store, &p)?;
    let mid = solved(store, &q)?;
    let ls = match (rng.as_mut(), family) {
        (None, _) => basis_families(&src),
        (Some(_), Some(l)) if p.same_table(suite.g.ctx.lattice().group()) => vec![l],
        (Some(r), _) => vec![random_family(&src, r)],
    };
    let imgs = suite.act(&u.name, &u.biset, &src, &mid, &ls)?;
    let (lq, lp) = (mid.sys.context().lattice(), src.sys.context().lattice());
    let points: Vec<usize> = match rng.as_mut() {
        None => (0..u.biset.len()).collect(),
        Some(r) => (0..2).map(|_| r.gen_range(0..u.biset.len())).collect(),
    };
    suite.transporters(&u.name, &u.biset, &points, lq, lp, rng);
    let mut followers = followers(store, &q, rng.as_mut())?;
    followers.push(named(format!("opposite of {}", u.name), u.biset.opposite()));
    if let Some(r) = rng.as_mut() {
        let keep = r.gen_range(0..followers.len());
        followers = vec![followers.swap_remove(keep)];
    }
    for v in &followers {
        suite.compose_check(u, v, &src, &mid, &imgs, &ls, rng)?;
    }
    Ok(())
}

use bfk_core::biset::ConcreteBiset;
use bfk_core::group::{classify_quotient, ElemSet, FiniteGroup, GroupDescriptor, LatticeCache, SubgroupLattice};
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::{Arc, OnceLock};

const DESCRIPTORS: &[&str] = &[
    "cyclic:3",
    "cyclic:9",
    "elab:3:2",
    "cyclic:27",
    "prod:cyclic:9,cyclic:3",
    "elab:3:3",
    "xsp:3",
    "xspm:3",
    "elab:5:2",
    "prod:cyclic:5,cyclic:5",
    "xsp:5",
    "cyclic:25",
];

fn lattices() -> &'static [Arc<SubgroupLattice>] {
    static L: OnceLock<Vec<Arc<SubgroupLattice>>> = OnceLock::new();
    L.get_or_init(|| {
        DESCRIPTORS
            .iter()
            .map(|d| {
                let g = d.parse::<GroupDescriptor>().unwrap().build().unwrap();
                Arc::new(SubgroupLattice::with_bound(Arc::new(g), 125).unwrap())
            })
            .collect()
    })
}

fn is_elementary_abelian(g: &FiniteGroup, members: &[usize]) -> bool {
    let p = g.prime() as u64;
    members
        .iter()
        .all(|&a| g.pow(a, p) == 0 && members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn full(n: usize) -> ElemSet {
    ElemSet::from_iter(n, 0..n)
}

/// A random elementary biset with right group `g`.
fn elementary(g: &Arc<FiniteGroup>, l: &SubgroupLattice, kind: usize, h: usize) -> ConcreteBiset {
    let set = l.subgroup(h).set();
    match kind % 4 {
        0 => ConcreteBiset::identity(g.clone()),
        1 => {
            let (t, emb) = g.subgroup_table(set).unwrap();
            ConcreteBiset::restriction(g.clone(), Arc::new(t), &emb).unwrap()
        }
        2 if l.is_normal(h) => {
            let (q, proj, _) = g.quotient_table(&full(g.order()), set).unwrap();
            ConcreteBiset::deflation(g.clone(), Arc::new(q), &proj).unwrap()
        }
        _ => ConcreteBiset::conjugation(g, h % g.order(), &full(g.order())).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moebius_sums_vanish_on_proper_intervals(gi in any::<Index>(), s in any::<Index>(), t in any::<Index>()) {
        let l = &lattices()[gi.index(DESCRIPTORS.len())];
        let (s, t) = (s.index(l.len()), t.index(l.len()));
        prop_assume!(s != t && l.is_subgroup_of(s, t));
        let sum: i64 = l.interval(s, t).into_iter().map(|u| l.moebius(s, u).unwrap()).sum();
        prop_assert_eq!(sum, 0);
    }

    #[test]
    fn moebius_from_trivial_follows_hall(gi in any::<Index>(), h in any::<Index>()) {
        let l = &lattices()[gi.index(DESCRIPTORS.len())];
        let h = h.index(l.len());
        let g = l.group();
        let members = l.subgroup(h).members();
        let p = g.prime() as i64;
        let expected = if is_elementary_abelian(g, members) {
            let k = (0..).find(|&k| p.pow(k) as usize == members.len()).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * p.pow(k * k.saturating_sub(1) / 2)
        } else {
            0
        };
        prop_assert_eq!(l.moebius(l.trivial(), h).unwrap(), expected);
    }

    #[test]
    fn classification_ignores_relabelling(gi in any::<Index>(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = lattices()[gi.index(DESCRIPTORS.len())].group();
        let mut rest: Vec<usize> = (1..g.order()).collect();
        rest.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(classify_quotient(&h), classify_quotient(g));
        prop_assert_eq!(h.exponent(), g.exponent());
    }

    #[test]
    fn cyclic_quotients_match_element_orders(gi in any::<Index>(), s in any::<Index>(), t in any::<Index>()) {
        let l = &lattices()[gi.index(DESCRIPTORS.len())];
        let (s, t) = (s.index(l.len()), t.index(l.len()));
        prop_assume!(l.is_subgroup_of(s, t) && l.is_normal_in(s, t));
        let (q, _, _) = l.group().quotient_table(l.subgroup(t).set(), l.subgroup(s).set()).unwrap();
        let brute = (0..q.order()).any(|a| q.element_order(a) == q.order());
        prop_assert_eq!(l.is_cyclic_quotient(t, s), brute);
    }

    #[test]
    fn composition_is_associative(
        gi in 0usize..8,
        k in proptest::array::uniform3(0usize..4),
        h in proptest::array::uniform3(any::<Index>()),
    ) {
        let l = &lattices()[gi];
        let g0 = l.group_arc().clone();
        let u = elementary(&g0, l, k[0], h[0].index(l.len()));
        let g1 = u.left_group().clone();
        let l1 = SubgroupLattice::new(g1.clone()).unwrap();
        let v = elementary(&g1, &l1, k[1], h[1].index(l1.len()));
        let g2 = v.left_group().clone();
        let l2 = SubgroupLattice::new(g2.clone()).unwrap();
        let w = elementary(&g2, &l2, k[2], h[2].index(l2.len()));
        let left = ConcreteBiset::compose(&w, &ConcreteBiset::compose(&v, &u).unwrap()).unwrap();
        let right = ConcreteBiset::compose(&ConcreteBiset::compose(&w, &v).unwrap(), &u).unwrap();
        prop_assert!(left.is_isomorphic(&right));
        prop_assert_eq!(left.len(), right.len());
    }

    #[test]
    fn opposite_reverses_composition(gi in 0usize..8, k in proptest::array::uniform2(0usize..4), h in proptest::array::uniform2(any::<Index>())) {
        let l = &lattices()[gi];
        let g0 = l.group_arc().clone();
        let u = elementary(&g0, l, k[0], h[0].index(l.len()));
        let g1 = u.left_group().clone();
        let l1 = SubgroupLattice::new(g1.clone()).unwrap();
        let v = elementary(&g1, &l1, k[1], h[1].index(l1.len()));
        let a = ConcreteBiset::compose(&v, &u).unwrap().opposite();
        let b = ConcreteBiset::compose(&u.opposite(), &v.opposite()).unwrap();
        prop_assert!(a.is_isomorphic(&b));
    }
}

#[test]
fn cached_lattices_round_trip() {
    let dir = std::env::temp_dir().join(format!("bfk-cache-prop-{}", std::process::id()));
    let cache = LatticeCache::new(&dir);
    for l in lattices() {
        let g = l.group_arc().clone();
        cache.store(l).unwrap();
        let back = cache.load(g).unwrap().expect("stored lattice loads");
        assert_eq!(back.len(), l.len());
        for id in 0..l.len() {
            assert_eq!(back.subgroup(id).members(), l.subgroup(id).members());
            assert_eq!(back.moebius_row(id), l.moebius_row(id));
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}

//! Sections `(T, S)` with `S ⊴ T`, their quotient groups, and the classes of
//! small p-groups used to index limits.

use super::{log_p, FiniteGroup, SubgroupId, SubgroupLattice};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Isomorphism class tag of a quotient, as far as the section classes need it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectionClassLabel {
    ElementaryAbelian(u32),
    ExtraspecialP3ExpP,
    Other,
}

impl fmt::Display for SectionClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ElementaryAbelian(r) => write!(f, "elab({r})"),
            Self::ExtraspecialP3ExpP => write!(f, "xsp"),
            Self::Other => write!(f, "other"),
        }
    }
}

/// Labels a group by order, commutativity and exponent only.
pub fn classify_quotient(q: &FiniteGroup) -> SectionClassLabel {
    let p = q.prime() as usize;
    let Some(k) = log_p(q.order(), q.prime()) else {
        return SectionClassLabel::Other;
    };
    let exponent_p = (0..q.order()).all(|a| q.pow(a, p as u64) == 0);
    if !exponent_p {
        return SectionClassLabel::Other;
    }
    if q.is_abelian() {
        SectionClassLabel::ElementaryAbelian(k)
    } else if k == 3 {
        SectionClassLabel::ExtraspecialP3ExpP
    } else {
        SectionClassLabel::Other
    }
}

/// A class of p-groups closed under subquotients: elementary abelian groups
/// of rank up to `max_rank` (unbounded if `None`), optionally together with
/// the extraspecial group of order p³ and exponent p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionClass {
    pub max_rank: Option<u32>,
    pub extraspecial: bool,
}

impl SectionClass {
    pub const E: Self = Self {
        max_rank: None,
        extraspecial: false,
    };
    pub const E2: Self = Self {
        max_rank: Some(2),
        extraspecial: false,
    };
    pub const E3: Self = Self {
        max_rank: Some(3),
        extraspecial: false,
    };
    pub const X: Self = Self {
        max_rank: None,
        extraspecial: true,
    };
    pub const X2: Self = Self {
        max_rank: Some(2),
        extraspecial: true,
    };
    pub const X3: Self = Self {
        max_rank: Some(3),
        extraspecial: true,
    };
    pub const TRIVIAL: Self = Self {
        max_rank: Some(0),
        extraspecial: false,
    };

    pub fn contains(&self, label: SectionClassLabel) -> bool {
        match label {
            SectionClassLabel::ElementaryAbelian(r) => self.max_rank.is_none_or(|m| r <= m),
            SectionClassLabel::ExtraspecialP3ExpP => self.extraspecial,
            SectionClassLabel::Other => false,
        }
    }

    /// Whether every group in `self` also lies in `other`.
    pub fn is_subclass_of(&self, other: &SectionClass) -> bool {
        let ranks = match (self.max_rank, other.max_rank) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        ranks && (!self.extraspecial || other.extraspecial)
    }

    /// Largest quotient order a member can have, if bounded.
    pub fn max_order(&self, p: u32) -> Option<usize> {
        let r = self.max_rank?;
        let r = if self.extraspecial { r.max(3) } else { r };
        Some((p as usize).pow(r))
    }
}

impl fmt::Display for SectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.extraspecial { "X" } else { "E" };
        match self.max_rank {
            None => write!(f, "{head}"),
            Some(0) if !self.extraspecial => write!(f, "1"),
            Some(r) => write!(f, "{head}{r}"),
        }
    }
}

impl FromStr for SectionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::TRIVIAL);
        }
        let (head, rank) = s.split_at(s.len().min(1));
        let extraspecial = match head {
            "E" => false,
            "X" => true,
            _ => return Err(Error::Domain(format!("unknown section class `{s}`"))),
        };
        let max_rank = if rank.is_empty() {
            None
        } else {
            Some(
                rank.parse()
                    .map_err(|_| Error::Domain(format!("unknown section class `{s}`")))?,
            )
        };
        Ok(Self { max_rank, extraspecial })
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    t: SubgroupId,
    s: SubgroupId,
    quotient: FiniteGroup,
    // coset index of each element of the parent, u32::MAX outside T
    proj: Vec<u32>,
    // least element of each coset
    lifts: Vec<usize>,
    label: SectionClassLabel,
}

impl Section {
    pub fn new(lattice: &SubgroupLattice, t: SubgroupId, s: SubgroupId) -> Result<Self> {
        if !lattice.is_normal_in(s, t) {
            return Err(Error::Domain(format!("subgroup {s} is not a normal subgroup of {t}")));
        }
        let g = lattice.group();
        let (tm, sm) = (lattice.subgroup(t).members(), lattice.subgroup(s).members());
        let mut proj = vec![u32::MAX; g.order()];
        let mut lifts = Vec::with_capacity(tm.len() / sm.len());
        for &x in tm {
            if proj[x] != u32::MAX {
                continue;
            }
            let idx = lifts.len() as u32;
            lifts.push(x);
            for &y in sm {
                proj[g.mul(x, y)] = idx;
            }
        }
        let k = lifts.len();
        let table = (0..k * k).map(|i| proj[g.mul(lifts[i / k], lifts[i % k])]).collect();
        let quotient = FiniteGroup::from_table_unchecked(g.prime(), table, format!("{}[{}/{}]", g.label(), t, s));
        let label = classify_quotient(&quotient);
        Ok(Section {
            t,
            s,
            quotient,
            proj,
            lifts,
            label,
        })
    }

    pub fn t(&self) -> SubgroupId {
        self.t
    }

    pub fn s(&self) -> SubgroupId {
        self.s
    }

    pub fn key(&self) -> (SubgroupId, SubgroupId) {
        (self.t, self.s)
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn label(&self) -> SectionClassLabel {
        self.label
    }

    /// Image of `x ∈ T` in `T/S`; `None` outside `T`.
    pub fn project(&self, x: usize) -> Option<usize> {
        let c = *self.proj.get(x)?;
        (c != u32::MAX).then_some(c as usize)
    }

    /// Least element of `T` mapping to the quotient element `c`.
    pub fn lift(&self, c: usize) -> usize {
        self.lifts[c]
    }

    pub fn order(&self) -> usize {
        self.lifts.len()
    }
}

/// All sections `(T, S)` of the lattice's group whose quotient lies in `class`,
/// ordered by `(T, S)`.
pub fn sections_in_class(lattice: &SubgroupLattice, class: SectionClass) -> Vec<Section> {
    let p = lattice.group().prime();
    let bound = class.max_order(p).unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for t in 0..lattice.len() {
        let ot = lattice.order_of(t);
        // T/S is elementary abelian exactly when Φ(T) ≤ S; this skips the
        // quotient construction for sections that cannot qualify.
        let phi = (!class.extraspecial).then(|| lattice.frattini(t));
        for s in 0..=t {
            let os = lattice.order_of(s);
            if ot / os > bound || !ot.is_multiple_of(os) || !lattice.is_normal_in(s, t) {
                continue;
            }
            if phi.is_some_and(|phi| !lattice.is_subgroup_of(phi, s)) {
                continue;
            }
            let sec = Section::new(lattice, t, s).expect("normality checked");
            if class.contains(sec.label()) {
                out.push(sec);
            }
        }
    }
    out
}

/// Keys `(T, S)` of [`sections_in_class`], without materializing quotients
/// except for candidate extraspecial sections.
pub fn section_keys_in_class(lattice: &SubgroupLattice, class: SectionClass) -> Vec<(SubgroupId, SubgroupId)> {
    let p = lattice.group().prime() as usize;
    let bound = class.max_order(p as u32).unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for t in 0..lattice.len() {
        let ot = lattice.order_of(t);
        let phi = lattice.frattini(t);
        for s in 0..=t {
            let os = lattice.order_of(s);
            if !ot.is_multiple_of(os) || !lattice.is_normal_in(s, t) {
                continue;
            }
            let q = ot / os;
            let keep = if lattice.is_subgroup_of(phi, s) {
                q <= bound
                    && class.contains(SectionClassLabel::ElementaryAbelian(
                        crate::group::log_p(q, p as u32).expect("p-group orders"),
                    ))
            } else {
                class.extraspecial
                    && q == p * p * p
                    && Section::new(lattice, t, s).expect("normality checked").label()
                        == SectionClassLabel::ExtraspecialP3ExpP
            };
            if keep {
                out.push((t, s));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use std::sync::Arc;

    fn lattice(d: &str) -> SubgroupLattice {
        let g = d.parse::<GroupDescriptor>().unwrap().build().unwrap();
        SubgroupLattice::new(Arc::new(g)).unwrap()
    }

    #[test]
    fn labels() {
        let b = |d: &str| d.parse::<GroupDescriptor>().unwrap().build().unwrap();
        assert_eq!(
            classify_quotient(&b("elab:3:2")),
            SectionClassLabel::ElementaryAbelian(2)
        );
        assert_eq!(classify_quotient(&b("xsp:3")), SectionClassLabel::ExtraspecialP3ExpP);
        assert_eq!(classify_quotient(&b("cyclic:9")), SectionClassLabel::Other);
        assert_eq!(classify_quotient(&b("xspm:3")), SectionClassLabel::Other);
        assert_eq!(
            classify_quotient(&b("trivial:3")),
            SectionClassLabel::ElementaryAbelian(0)
        );
    }

    #[test]
    fn sections_of_cyclic_three() {
        let l = lattice("cyclic:3");
        let secs = sections_in_class(&l, SectionClass::E);
        let keys: Vec<_> = secs.iter().map(|s| s.key()).collect();
        assert_eq!(keys, vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn sections_of_cyclic_nine() {
        let l = lattice("cyclic:9");
        let secs = sections_in_class(&l, SectionClass::E);
        assert!(secs.iter().any(|s| s.key() == (2, 1) && s.order() == 3));
        assert!(!secs.iter().any(|s| s.key() == (2, 0)));
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let l = lattice("xsp:3");
        let z = l.frattini(l.whole());
        let sec = Section::new(&l, l.whole(), z).unwrap();
        assert_eq!(sec.order(), 9);
        let g = l.group();
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(
                    sec.project(g.mul(a, b)).unwrap(),
                    sec.quotient().mul(sec.project(a).unwrap(), sec.project(b).unwrap())
                );
            }
        }
        let i = (1..l.len()).find(|&s| l.order_of(s) == 3 && s != z).unwrap();
        assert!(Section::new(&l, l.whole(), i).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for name in ["E", "E2", "E3", "X", "X2", "X3", "1"] {
            assert_eq!(name.parse::<SectionClass>().unwrap().to_string(), name);
        }
        assert!(SectionClass::E2.is_subclass_of(&SectionClass::X3));
        assert!(!SectionClass::X.is_subclass_of(&SectionClass::E));
        assert!(SectionClass::E3.is_subclass_of(&SectionClass::E));
        assert!("Q".parse::<SectionClass>().is_err());
    }
}

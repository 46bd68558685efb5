//! The elements ε and δ, and the subgroups of `K` generated from sections.

use super::{BurnsideContext, SectionKey};
use crate::error::{Error, Result};
use crate::group::{Section, SectionClass, SectionClassLabel, SubgroupId};
use crate::lattice::{Int, IntegerLattice, Matrix};
use num_traits::Zero;

/// `δ = T/I − T/IZ − T/J + T/JZ` on an extraspecial section, with the
/// subgroups used.
#[derive(Clone, Debug)]
pub struct DeltaData {
    pub z: SubgroupId,
    pub i: SubgroupId,
    pub j: SubgroupId,
    pub iz: SubgroupId,
    pub jz: SubgroupId,
    pub delta: Vec<Int>,
}

impl BurnsideContext {
    /// Label of the quotient `T/S` of a section.
    pub fn label(&self, key: SectionKey) -> Result<SectionClassLabel> {
        let l = self.lattice();
        let (t, s) = key;
        if !l.is_normal_in(s, t) {
            return Err(Error::Domain(format!("({t}, {s}) is not a section")));
        }
        if l.is_subgroup_of(l.frattini(t), s) {
            let k = crate::group::log_p(l.order_of(t) / l.order_of(s), l.group().prime()).expect("p-group orders");
            return Ok(SectionClassLabel::ElementaryAbelian(k));
        }
        Ok(Section::new(l, t, s)?.label())
    }

    /// Sections `(T', S')` with `S ≤ S' ≤ T' ≤ T` whose quotient is in `class`,
    /// ordered by `(T', S')`.
    pub fn subsections(&self, key: SectionKey, class: SectionClass) -> Result<Vec<SectionKey>> {
        let l = self.lattice();
        let p = l.group().prime();
        let bound = class.max_order(p).unwrap_or(usize::MAX);
        let interval = l.interval(key.1, key.0);
        let mut out = Vec::new();
        for &t in &interval {
            for &s in &interval {
                if s > t || l.order_of(t) / l.order_of(s) > bound || !l.is_normal_in(s, t) {
                    continue;
                }
                if class.contains(self.label((t, s))?) {
                    out.push((t, s));
                }
            }
        }
        Ok(out)
    }

    /// `ε = E/1 − Σ_{|F| = p} E/F + p·E/E` for an elementary abelian section
    /// of rank 2, in the basis of `B(T/S)`.
    pub fn epsilon(&self, key: SectionKey) -> Result<Vec<Int>> {
        if self.label(key)? != SectionClassLabel::ElementaryAbelian(2) {
            return Err(Error::Domain("ε needs an elementary abelian section of rank 2".into()));
        }
        let l = self.lattice();
        let b = self.section(key)?;
        let p = l.group().prime() as i64;
        let os = l.order_of(key.1);
        let v = (0..b.rank())
            .map(|c| {
                let o = l.order_of(b.representative(c));
                Int::from(if o == os {
                    1
                } else if o == os * p as usize {
                    -1
                } else {
                    p
                })
            })
            .collect();
        Ok(v)
    }

    /// `δ` for an extraspecial section `(T, S)`: `Z` is the preimage of the
    /// centre, `I` and `J` the least representatives of the first two classes
    /// of non-central subgroups of order `p` in `T/S`.
    pub fn delta(&self, key: SectionKey) -> Result<DeltaData> {
        if self.label(key)? != SectionClassLabel::ExtraspecialP3ExpP {
            return Err(Error::Domain("δ needs an extraspecial section".into()));
        }
        let l = self.lattice();
        let b = self.section(key)?;
        let p = l.group().prime() as usize;
        let os = l.order_of(key.1);
        let small: Vec<usize> = (0..b.rank())
            .filter(|&c| l.order_of(b.representative(c)) == os * p)
            .collect();
        let z_class = small
            .iter()
            .copied()
            .find(|&c| b.classes()[c].len() == 1)
            .ok_or_else(|| Error::System("no central subgroup of order p".into()))?;
        let mut others = small.iter().copied().filter(|&c| c != z_class);
        let (Some(ci), Some(cj)) = (others.next(), others.next()) else {
            return Err(Error::System("fewer than two non-central classes".into()));
        };
        let z = b.representative(z_class);
        let (i, j) = (b.representative(ci), b.representative(cj));
        let (iz, jz) = (l.join(i, z), l.join(j, z));
        let mut delta = vec![Int::zero(); b.rank()];
        for (sub, sign) in [(i, 1), (iz, -1), (j, -1), (jz, 1)] {
            delta[b.class_of(sub).expect("inside the section")] += sign;
        }
        Ok(DeltaData { z, i, j, iz, jz, delta })
    }

    /// `Indinf^{T/S}_{T'/S'}` of a vector of `B(T'/S')`.
    pub fn indinf_vector(&self, small: SectionKey, big: SectionKey, v: &[Int]) -> Result<Vec<Int>> {
        Ok(self.indinf(small, big)?.apply(v))
    }

    /// `K_ε(T/S)`: the sum of `Indinf ε` over rank-2 elementary abelian
    /// subsections.
    pub fn k_epsilon(&self, key: SectionKey) -> Result<IntegerLattice> {
        let parts = self
            .subsections(key, SectionClass::E2)?
            .into_iter()
            .filter(|&k| self.label(k).ok() == Some(SectionClassLabel::ElementaryAbelian(2)))
            .map(|k| {
                let e = self.epsilon(k)?;
                Ok((k, Matrix::from_rows(e.len(), vec![e])?))
            })
            .collect::<Result<Vec<_>>>()?;
        self.indinf_image_sum(key, &parts)
    }

    /// `Σ Indinf K(T'/S')` over subsections in `class`.
    pub fn k_from_class(&self, key: SectionKey, class: SectionClass) -> Result<IntegerLattice> {
        let parts = self
            .subsections(key, class)?
            .into_iter()
            .map(|k| Ok((k, self.section(k)?.k_basis().clone())))
            .collect::<Result<Vec<_>>>()?;
        self.indinf_image_sum(key, &parts)
    }
}

#[cfg(test)]
mod tests {
    use crate::burnside::tests::context;
    use crate::group::SectionClass;
    use crate::lattice::Int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn epsilon_rank_two() {
        let ctx = context("elab:3:2");
        let key = (ctx.lattice().whole(), 0);
        let e = ctx.epsilon(key).unwrap();
        assert_eq!(e, ints(&[1, -1, -1, -1, -1, 3]));
        assert!(ctx.whole().in_kernel(&e));
        assert_eq!(ctx.k_epsilon(key).unwrap(), ctx.whole().k_lattice());
    }

    #[test]
    fn delta_identity() {
        let ctx = context("xsp:3");
        let key = (ctx.lattice().whole(), 0);
        let d = ctx.delta(key).unwrap();
        let ej = ctx
            .indinf_vector((d.jz, 0), key, &ctx.epsilon((d.jz, 0)).unwrap())
            .unwrap();
        let ei = ctx
            .indinf_vector((d.iz, 0), key, &ctx.epsilon((d.iz, 0)).unwrap())
            .unwrap();
        let diff: Vec<Int> = ej.iter().zip(&ei).map(|(a, b)| a - b).collect();
        let three: Vec<Int> = d.delta.iter().map(|x| x * 3).collect();
        assert_eq!(diff, three);
        assert!(ctx.whole().in_kernel(&d.delta));
        assert!(ctx.k_epsilon(key).unwrap().member(&three).unwrap());
        assert!(!ctx.k_epsilon(key).unwrap().member(&d.delta).unwrap());
    }

    #[test]
    fn induced_epsilon_on_extraspecial() {
        // Ind_{IZ}^X ε_{IZ} = X/1 − X/Z − p·X/I + p·X/IZ.
        let ctx = context("xsp:3");
        let l = ctx.lattice();
        let key = (l.whole(), 0);
        let b = ctx.whole();
        let d = ctx.delta(key).unwrap();
        let v = ctx
            .indinf_vector((d.iz, 0), key, &ctx.epsilon((d.iz, 0)).unwrap())
            .unwrap();
        let mut want = vec![Int::from(0); b.rank()];
        for (sub, c) in [(0, 1), (d.z, -1), (d.i, -3), (d.iz, 3)] {
            want[b.class_of(sub).unwrap()] += c;
        }
        assert_eq!(v, want);
    }

    #[test]
    fn induction_theorem_on_extraspecial() {
        let ctx = context("xsp:3");
        let key = (ctx.lattice().whole(), 0);
        let k = ctx.whole().k_lattice();
        assert_eq!(ctx.k_from_class(key, SectionClass::X2).unwrap(), k);
        assert!(ctx.k_epsilon(key).unwrap().contains(&k.scaled(&Int::from(3))).unwrap());
    }
}

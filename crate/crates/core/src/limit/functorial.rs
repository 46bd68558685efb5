//! Coefficient systems built from `B`, `K`, `B*`, `K*` and the maps between
//! a functor and its limits: the unit `η`, the counit, projections between
//! classes, the action of bisets on limits, the retractions `σ` and `τ`,
//! and the adjunction correspondence.

use super::presentation::AbelianPresentation;
use super::solve::{block_offsets, inverse_limit, nested_pairs, reverify, Colimit, InverseLimit};
use super::system::{conjugate_key, steps_from, CoefficientSystem, MapKind, StructureMap};
use crate::biset::ConcreteBiset;
use crate::burnside::{BisetOnSections, BurnsideContext, SectionKey, SparseMap};
use crate::error::{Error, Result};
use crate::functor::FunctorKind;
use crate::group::{section_keys_in_class, SectionClass, SectionClassLabel, SubgroupId};
use crate::lattice::{cokernel_invariants, Int, IntegerLattice, Matrix, QuotientInvariants};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// A functor restricted to the sections of one class.
#[derive(Clone, Debug)]
pub struct FunctorSystem {
    ctx: Arc<BurnsideContext>,
    functor: FunctorKind,
    system: CoefficientSystem,
}

impl FunctorSystem {
    /// Evaluates `functor` on `Y(P)` with Defres and conjugation maps, plus
    /// Indinf maps when `with_indinf` is set, and validates the result.
    pub fn build(
        ctx: Arc<BurnsideContext>,
        class: SectionClass,
        functor: FunctorKind,
        with_indinf: bool,
    ) -> Result<Self> {
        let fs = Self::build_unchecked(ctx, class, functor, with_indinf)?;
        fs.system.validate()?;
        Ok(fs)
    }

    /// As [`FunctorSystem::build`] without running the invariant checks.
    pub fn build_unchecked(
        ctx: Arc<BurnsideContext>,
        class: SectionClass,
        functor: FunctorKind,
        with_indinf: bool,
    ) -> Result<Self> {
        let l = ctx.lattice_arc().clone();
        let keys = section_keys_in_class(&l, class);
        let index: std::collections::HashMap<SectionKey, usize> =
            keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let gens = super::system::conj_generators(&l);
        let per_section = keys
            .par_iter()
            .enumerate()
            .map(|(a, &key)| -> Result<(AbelianPresentation, Vec<StructureMap>)> {
                let value = AbelianPresentation::free(functor.rank(&ctx, key)?);
                let mut maps = Vec::new();
                for small in steps_from(&l, key) {
                    let c = *index
                        .get(&small)
                        .ok_or_else(|| Error::System(format!("class is not closed under subquotients at {small:?}")))?;
                    maps.push(StructureMap {
                        source: a,
                        target: c,
                        kind: MapKind::Defres,
                        matrix: functor.defres(&ctx, key, small)?,
                    });
                    if with_indinf {
                        maps.push(StructureMap {
                            source: c,
                            target: a,
                            kind: MapKind::Indinf,
                            matrix: functor.indinf(&ctx, small, key)?,
                        });
                    }
                }
                for &x in &gens {
                    maps.push(StructureMap {
                        source: a,
                        target: index[&conjugate_key(&l, x, key)],
                        kind: MapKind::Conj(x),
                        matrix: functor.conj(&ctx, x, key)?,
                    });
                }
                Ok((value, maps))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut values = Vec::with_capacity(keys.len());
        let mut maps = Vec::new();
        for (v, m) in per_section {
            values.push(v);
            maps.extend(m);
        }
        let system = CoefficientSystem::assemble(l, class, values, maps)?;
        Ok(FunctorSystem { ctx, functor, system })
    }

    pub fn context(&self) -> &BurnsideContext {
        &self.ctx
    }

    pub fn context_arc(&self) -> &Arc<BurnsideContext> {
        &self.ctx
    }

    pub fn functor(&self) -> FunctorKind {
        self.functor
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    pub fn class(&self) -> SectionClass {
        self.system.class()
    }

    /// The section `(P, 1)`.
    pub fn top(&self) -> SectionKey {
        let l = self.ctx.lattice();
        (l.whole(), l.trivial())
    }

    pub fn top_rank(&self) -> Result<usize> {
        self.functor.rank(&self.ctx, self.top())
    }

    pub fn offsets(&self) -> Vec<usize> {
        block_offsets(&self.system)
    }

    pub fn limit(&self) -> Result<InverseLimit> {
        inverse_limit(&self.system)
    }

    /// Rechecks the limit generators against the functor's own Defres maps,
    /// on every nested pair when `exhaustive`, otherwise on generating steps.
    /// Returns the first failing pair of sections.
    pub fn reverify(&self, lim: &InverseLimit, exhaustive: bool) -> Result<Option<(SectionKey, SectionKey)>> {
        let sys = &self.system;
        let pairs = if exhaustive {
            nested_pairs(sys)
        } else {
            (0..sys.len())
                .flat_map(|a| sys.steps(a).iter().map(move |&c| (a, c)))
                .collect()
        };
        let secs = sys.sections();
        let bad = reverify(sys, lim, &pairs, |a, c| {
            self.functor.defres(&self.ctx, secs[a], secs[c])
        })?;
        Ok(bad.map(|(a, c)| (secs[a], secs[c])))
    }

    /// `Defres^P_{T/S}` for every section, as blocks of one matrix over the
    /// concatenated generators.
    pub fn eta_matrix(&self) -> Result<Matrix> {
        let top = self.top();
        let n = self.top_rank()?;
        let blocks = self
            .system
            .sections()
            .par_iter()
            .map(|&key| self.functor.defres(&self.ctx, top, key))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for b in blocks {
            rows.extend(b.into_rows());
        }
        Matrix::from_rows(n, rows)
    }

    /// `η(f) = (Defres^P_{T/S} f)_{(T,S)}`.
    pub fn unit_eta(&self, f: &[Int]) -> Result<Vec<Int>> {
        self.eta_matrix()?.mul_vec(f)
    }

    /// The unit in limit coordinates and the structure of its kernel and
    /// cokernel.
    pub fn eta_report(&self, lim: &InverseLimit) -> Result<EtaReport> {
        let e = self.eta_matrix()?;
        let n = e.ncols();
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            images.push(
                lim.coords(&e.column(j))?
                    .ok_or_else(|| Error::System("the unit does not land in the limit".into()))?,
            );
        }
        let mut rows = images.clone();
        rows.extend(lim.presentation().relations().rows().iter().cloned());
        let cokernel = cokernel_invariants(&Matrix::from_rows(lim.rank(), rows)?);
        let matrix = Matrix::from_rows(lim.rank(), images)?.transpose();
        let injective = lim.presentation().is_free_presentation() && matrix.rank() == n;
        Ok(EtaReport {
            source_rank: n,
            limit: lim.invariants(),
            injective,
            iso: injective && cokernel.is_zero(),
            cokernel,
            matrix,
        })
    }

    /// `Indinf_{T/S}^P` at every section, restricted to the given positions
    /// of the concatenated generators.
    fn counit_columns(&self, positions: &[usize]) -> Result<Matrix> {
        let top = self.top();
        let offsets = self.offsets();
        let secs = self.system.sections();
        let mut by_section: Vec<Vec<usize>> = vec![Vec::new(); secs.len()];
        for (k, &pos) in positions.iter().enumerate() {
            let a = offsets.partition_point(|&o| o <= pos) - 1;
            by_section[a].push(k);
        }
        let n = self.top_rank()?;
        let parts = by_section
            .par_iter()
            .enumerate()
            .filter(|(_, ks)| !ks.is_empty())
            .map(|(a, ks)| -> Result<Vec<(usize, Vec<Int>)>> {
                let m = self.functor.indinf(&self.ctx, secs[a], top)?;
                Ok(ks.iter().map(|&k| (k, m.column(positions[k] - offsets[a]))).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cols = vec![vec![Int::zero(); n]; positions.len()];
        for (k, c) in parts.into_iter().flatten() {
            cols[k] = c;
        }
        Matrix::from_columns(n, &cols)
    }

    /// The counit `colim F(T/S) → F(P)` and its kernel `M(P)`.
    pub fn probe_m(&self) -> Result<MProbe> {
        let colim = Colimit::build(&self.system)?;
        let free = colim.free_generators().to_vec();
        let counit = self.counit_columns(&free)?;
        let n = counit.nrows();
        let core = colim.presentation().relations();
        if !core.mul(&counit.transpose())?.is_zero() {
            return Err(Error::System("counit does not vanish on the colimit relations".into()));
        }
        let image = IntegerLattice::from_generators(&counit.transpose());
        let cokernel = IntegerLattice::full(n).quotient_invariants(&image)?;
        let kernel = IntegerLattice::kernel_of(&counit);
        let mut rel = Vec::with_capacity(core.nrows());
        for r in core.rows() {
            rel.push(
                kernel
                    .coords(r)?
                    .ok_or_else(|| Error::System("colimit relation outside the counit kernel".into()))?,
            );
        }
        let m = cokernel_invariants(&Matrix::from_rows(kernel.rank(), rel)?);
        Ok(MProbe {
            sum_rank: *self.offsets().last().expect("nonempty"),
            colimit_generators: free.len(),
            colimit: colim.invariants(),
            target_rank: n,
            surjective: cokernel.is_zero(),
            counit_cokernel: cokernel,
            finite: m.is_finite(),
            m,
        })
    }

    /// `π^Y_Z`: keeps the components at sections of the smaller class.
    pub fn project_to(&self, smaller: &FunctorSystem, x: &[Int]) -> Result<Vec<Int>> {
        if !smaller.class().is_subclass_of(&self.class()) || smaller.functor != self.functor {
            return Err(Error::Domain(format!(
                "cannot project from {} to {}",
                self.class(),
                smaller.class()
            )));
        }
        let (from, to) = (self.offsets(), smaller.offsets());
        let mut out = Vec::with_capacity(*to.last().expect("nonempty"));
        for (i, &key) in smaller.system.sections().iter().enumerate() {
            let a = self.system.index_of(key).expect("subclass sections are sections");
            out.extend_from_slice(&x[from[a]..from[a + 1]]);
            debug_assert_eq!(out.len(), to[i + 1]);
        }
        Ok(out)
    }

    /// `σ_P(u) = Σ_{(T,S) ∈ E(P)} |S| μ(S,T) Indinf_{A/B}^P u_{A,B}` with
    /// `(A, B)` chosen by `reading`; requires the class `E`.
    pub fn sigma(&self, x: &[Int], reading: SigmaReading) -> Result<Vec<Int>> {
        if self.class() != SectionClass::E {
            return Err(Error::Domain(format!("σ needs the class E, not {}", self.class())));
        }
        let l = self.ctx.lattice();
        let top = self.top();
        let offsets = self.offsets();
        let mut out = vec![Int::zero(); self.top_rank()?];
        for &(t, s) in self.system.sections() {
            let mu = l.moebius(s, t)?;
            if mu == 0 {
                continue;
            }
            let key = reading.component((t, s), l.frattini(t));
            let a = self
                .system
                .index_of(key)
                .ok_or_else(|| Error::Domain(format!("reading {reading} leaves E(P) at {key:?}")))?;
            let u = &x[offsets[a]..offsets[a + 1]];
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let w = Int::from(l.order_of(s) as i64 * mu);
            let img = self.functor.indinf(&self.ctx, key, top)?.mul_vec(u)?;
            for (o, v) in out.iter_mut().zip(img) {
                *o += &w * v;
            }
        }
        Ok(out)
    }

    /// Whether `η(σ(u)) = |P|·u` for every generator `u` of the limit.
    pub fn sigma_retracts(&self, lim: &InverseLimit, reading: SigmaReading) -> Result<bool> {
        let eta = self.eta_matrix()?;
        let order = Int::from(self.ctx.lattice().group().order());
        for u in lim.basis().rows() {
            let back = eta.mul_vec(&self.sigma(u, reading)?)?;
            let want: Vec<Int> = u.iter().map(|v| v * &order).collect();
            if back != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `τ_P = σ_P ∘ π^Y_E`, with `e` the system of the same functor over `E`.
    pub fn tau(&self, e: &FunctorSystem, x: &[Int], reading: SigmaReading) -> Result<Vec<Int>> {
        e.sigma(&self.project_to(e, x)?, reading)
    }

    /// Action of a `(Q, P)`-biset on limits: the component at `(T, S)` is
    /// `Σ_{u ∈ [T\U/P]} F(S\Tu)(l_{Tᵘ, Sᵘ})`. `self` is the system over `Q`.
    pub fn act(&self, p_sys: &FunctorSystem, u: &ConcreteBiset, l: &[Int]) -> Result<Vec<Int>> {
        Ok(self
            .act_all(p_sys, u, std::slice::from_ref(&l.to_vec()), false)?
            .remove(0))
    }

    /// [`FunctorSystem::act`] with every term computed by orbit counting on
    /// the concrete biset `S\Tu`.
    pub fn act_by_orbits(&self, p_sys: &FunctorSystem, u: &ConcreteBiset, l: &[Int]) -> Result<Vec<Int>> {
        Ok(self
            .act_all(p_sys, u, std::slice::from_ref(&l.to_vec()), true)?
            .remove(0))
    }

    /// The action on several families at once; each term matrix is built
    /// once.
    pub fn act_all(
        &self,
        p_sys: &FunctorSystem,
        u: &ConcreteBiset,
        ls: &[Vec<Int>],
        by_orbits: bool,
    ) -> Result<Vec<Vec<Int>>> {
        if self.functor != p_sys.functor || self.class() != p_sys.class() {
            return Err(Error::Domain("systems of different functors or classes".into()));
        }
        let on = BisetOnSections::new(&self.ctx, &p_sys.ctx, u)?;
        let p_off = p_sys.offsets();
        let parts =
            self.system
                .sections()
                .par_iter()
                .map(|&key| -> Result<Vec<Vec<Int>>> {
                    let mut acc = vec![vec![Int::zero(); self.functor.rank(&self.ctx, key)?]; ls.len()];
                    for (pt, src) in on.terms(key) {
                        let a = p_sys.system.index_of(src).ok_or_else(|| {
                            Error::System(format!("transported section {src:?} is outside the class"))
                        })?;
                        let comps: Vec<&[Int]> = ls.iter().map(|l| &l[p_off[a]..p_off[a + 1]]).collect();
                        if comps.iter().all(|c| c.iter().all(Zero::is_zero)) {
                            continue;
                        }
                        let term = if by_orbits {
                            self.functor.biset_term_by_orbits(&on, key, pt)?
                        } else {
                            self.functor.biset_term(&on, key, pt)?
                        };
                        for (acc, comp) in acc.iter_mut().zip(comps) {
                            for (o, v) in acc.iter_mut().zip(term.mul_vec(comp)?) {
                                *o += v;
                            }
                        }
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?;
        Ok((0..ls.len())
            .map(|i| parts.iter().flat_map(|p| p[i].iter().cloned()).collect())
            .collect())
    }

    /// `w = −Σ_{S < J ≤ T} μ(S, J) Inf_{T/J}^{T/S} v_J` for an elementary
    /// abelian section `(T, S)`; `v` gives `v_J ∈ F(T/J)` for each such `J`.
    pub fn glue_from_quotients(&self, key: SectionKey, v: &[(SubgroupId, Vec<Int>)]) -> Result<Vec<Int>> {
        glue_from_quotients(&self.ctx, self.functor, key, v)
    }
}

/// See [`FunctorSystem::glue_from_quotients`].
pub fn glue_from_quotients(
    ctx: &BurnsideContext,
    functor: FunctorKind,
    key: SectionKey,
    v: &[(SubgroupId, Vec<Int>)],
) -> Result<Vec<Int>> {
    let l = ctx.lattice();
    let (t, s) = key;
    if !matches!(ctx.label(key)?, SectionClassLabel::ElementaryAbelian(_)) {
        return Err(Error::Domain(format!("{key:?} is not elementary abelian")));
    }
    let mut out = vec![Int::zero(); functor.rank(ctx, key)?];
    for (j, vj) in v {
        if *j == s || !l.is_subgroup_of(s, *j) || !l.is_subgroup_of(*j, t) {
            return Err(Error::Domain(format!(
                "{j} is not a nontrivial subgroup of the section"
            )));
        }
        let mu = l.moebius(s, *j)?;
        let img = functor.indinf(ctx, (t, *j), key)?.mul_vec(vj)?;
        for (o, x) in out.iter_mut().zip(img) {
            *o -= x * mu;
        }
    }
    Ok(out)
}

/// The natural isomorphism `F(Q₀/R₀) ≅ F(T/S)` between a section of a
/// group `Q` (context `cq`) and a section of `P` (context `cp`) identified
/// through `preimage`, which sends subgroups of the `Q` section to the
/// corresponding subgroups of the `P` section.
pub fn section_iso(
    functor: FunctorKind,
    cq: &BurnsideContext,
    kq: SectionKey,
    cp: &BurnsideContext,
    kp: SectionKey,
    preimage: impl Fn(SubgroupId) -> SubgroupId,
) -> Result<Matrix> {
    let (bq, bp) = (cq.section(kq)?, cp.section(kp)?);
    if bq.rank() != bp.rank() {
        return Err(Error::Dimension {
            expected: bp.rank(),
            found: bq.rank(),
        });
    }
    let mut perm = vec![usize::MAX; bq.rank()];
    for (c, slot) in perm.iter_mut().enumerate() {
        *slot = bp
            .class_of(preimage(bq.representative(c)))
            .ok_or_else(|| Error::Domain("preimage lies outside the section".into()))?;
    }
    let mut inv = vec![0; perm.len()];
    for (c, &d) in perm.iter().enumerate() {
        inv[d] = c;
    }
    let f = SparseMap::new(bp.rank(), perm.iter().map(|&d| vec![(d, 1)]).collect());
    let g = SparseMap::new(bq.rank(), inv.iter().map(|&c| vec![(c, 1)]).collect());
    functor.from_pair(cq, kq, cp, kp, || Ok(f), || Ok(g))
}

/// The candidate readings of the component index in the `σ` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SigmaReading {
    /// `Indinf_{S/Φ(T)}^P u_{S,Φ(T)}`.
    FrattiniOfT,
    /// `Indinf_{T/S}^P u_{T,S}`.
    Summand,
    /// `Indinf_{T/Φ(T)}^P u_{T,Φ(T)}`.
    FrattiniQuotient,
}

impl SigmaReading {
    pub const ALL: [SigmaReading; 3] = [
        SigmaReading::FrattiniOfT,
        SigmaReading::Summand,
        SigmaReading::FrattiniQuotient,
    ];

    /// The section whose component is read for the summand `(T, S)`.
    pub fn component(self, key: SectionKey, phi_t: SubgroupId) -> SectionKey {
        match self {
            SigmaReading::FrattiniOfT => (key.1, phi_t),
            SigmaReading::Summand => key,
            SigmaReading::FrattiniQuotient => (key.0, phi_t),
        }
    }
}

impl fmt::Display for SigmaReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaReading::FrattiniOfT => "u[S,Phi(T)] induced from S/Phi(T)",
            SigmaReading::Summand => "u[T,S] induced from T/S",
            SigmaReading::FrattiniQuotient => "u[T,Phi(T)] induced from T/Phi(T)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub source_rank: usize,
    pub limit: QuotientInvariants,
    pub injective: bool,
    pub iso: bool,
    pub cokernel: QuotientInvariants,
    /// Columns: images of the basis of `F(P)` in limit coordinates.
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MProbe {
    /// Rank of `⊕ F(T/S)`.
    pub sum_rank: usize,
    /// Generators left after eliminating the identifications.
    pub colimit_generators: usize,
    pub colimit: QuotientInvariants,
    pub target_rank: usize,
    pub surjective: bool,
    pub counit_cokernel: QuotientInvariants,
    pub m: QuotientInvariants,
    pub finite: bool,
}

/// A family of maps `φ_{T/S}: F(T/S) → G(T/S)` over the sections of a class.
#[derive(Clone, Debug)]
pub struct NaturalFamily {
    pub name: String,
    pub maps: Vec<Matrix>,
}

impl NaturalFamily {
    pub fn identity(f: &FunctorSystem) -> Self {
        Self::scalar(f, 1)
    }

    pub fn scalar(f: &FunctorSystem, k: i64) -> Self {
        let maps = f
            .system
            .values()
            .iter()
            .map(|v| Matrix::identity(v.generators()).scale(&Int::from(k)))
            .collect();
        NaturalFamily {
            name: if k == 1 {
                "identity".into()
            } else {
                format!("scalar {k}")
            },
            maps,
        }
    }

    /// `K → B` at each section.
    pub fn inclusion(f: &FunctorSystem) -> Result<Self> {
        let maps = f
            .system
            .sections()
            .iter()
            .map(|&k| Ok(f.ctx.section(k)?.k_basis().transpose()))
            .collect::<Result<_>>()?;
        Ok(NaturalFamily {
            name: "inclusion K -> B".into(),
            maps,
        })
    }

    /// `B* → K*` at each section, restriction of functionals to `K`.
    pub fn restriction(f: &FunctorSystem) -> Result<Self> {
        let maps = f
            .system
            .sections()
            .iter()
            .map(|&k| Ok(f.ctx.section(k)?.k_basis().clone()))
            .collect::<Result<_>>()?;
        Ok(NaturalFamily {
            name: "restriction B* -> K*".into(),
            maps,
        })
    }

    /// Checks `G(m)∘φ = φ∘F(m)` for every stored structure map `m`; the
    /// error names the first failing section and map.
    pub fn check_natural(&self, f: &FunctorSystem, g: &FunctorSystem) -> Result<()> {
        let (fs, gs) = (&f.system, &g.system);
        if fs.sections() != gs.sections() || self.maps.len() != fs.len() {
            return Err(Error::Domain("family and systems are over different sections".into()));
        }
        for (a, &key) in fs.sections().iter().enumerate() {
            let phi = &self.maps[a];
            if phi.ncols() != fs.value(a).generators() || phi.nrows() != gs.value(a).generators() {
                return Err(Error::NotNatural {
                    section: format!("{key:?}"),
                    map: "shape".into(),
                    detail: format!("{}×{}", phi.nrows(), phi.ncols()),
                });
            }
        }
        for m in fs.maps() {
            if m.kind == MapKind::Indinf && !gs.has_indinf() {
                continue;
            }
            let gm = gs
                .map(m.source, m.target, m.kind)
                .ok_or_else(|| Error::Domain(format!("target system lacks {} maps", m.kind)))?;
            let lhs = gm.mul(&self.maps[m.source])?;
            let rhs = self.maps[m.target].mul(&m.matrix)?;
            if !gs.maps_agree(m.target, &lhs, &rhs)? {
                let d = lhs.sub(&rhs)?;
                let col = (0..d.ncols())
                    .find(|&j| d.column(j).iter().any(|x| !x.is_zero()))
                    .unwrap_or(0);
                return Err(Error::NotNatural {
                    section: format!("{:?}", fs.sections()[m.source]),
                    map: format!("{} to {:?}", m.kind, fs.sections()[m.target]),
                    detail: format!(
                        "generator {col} goes to {:?} one way, {:?} the other",
                        lhs.column(col),
                        rhs.column(col)
                    ),
                });
            }
        }
        Ok(())
    }

    /// `φ⁺` at the section `key` (of `P`, possibly outside the class):
    /// `φ⁺(x)_{T',S'} = φ_{T'/S'}(Defres^{key}_{T'/S'} x)` for the sections
    /// `(T', S')` of the class below `key`, as `(section index, component)`.
    pub fn plus(&self, f: &FunctorSystem, key: SectionKey, x: &[Int]) -> Result<Vec<(usize, Vec<Int>)>> {
        let l = f.ctx.lattice();
        let (t, s) = key;
        f.system
            .sections()
            .iter()
            .enumerate()
            .filter(|(_, &(t2, s2))| l.is_subgroup_of(t2, t) && l.is_subgroup_of(s, s2) && l.is_subgroup_of(s2, t2))
            .map(|(a, &sub)| {
                let d = f.functor.defres(&f.ctx, key, sub)?.mul_vec(x)?;
                Ok((a, self.maps[a].mul_vec(&d)?))
            })
            .collect()
    }

    /// `ψ⁻_{T/S}(x) = ψ_{T/S}(x)_{T/S,1}`: reads the component of `ψ` at the
    /// section itself.
    pub fn minus(f: &FunctorSystem, key: SectionKey, psi: &[(usize, Vec<Int>)]) -> Result<Vec<Int>> {
        let a = f
            .system
            .index_of(key)
            .ok_or_else(|| Error::Domain(format!("{key:?} is not in the class")))?;
        psi.iter()
            .find(|(i, _)| *i == a)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Domain("ψ has no component at the section".into()))
    }

    /// `(φ⁺)⁻ = φ` on every basis element at every section of the class.
    pub fn plus_minus_round_trip(&self, f: &FunctorSystem) -> Result<bool> {
        for (a, &key) in f.system.sections().iter().enumerate() {
            let n = f.system.value(a).generators();
            for j in 0..n {
                let mut e = vec![Int::zero(); n];
                e[j] = Int::from(1);
                let back = Self::minus(f, key, &self.plus(f, key, &e)?)?;
                if back != self.maps[a].column(j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(ψ⁻)⁺ = ψ` at `P` for `ψ = φ⁺`, on every basis element of `F(P)`:
    /// `ψ⁻_{T/S}(Defres^P_{T/S} x) = ψ_P(x)_{T,S}`.
    pub fn minus_plus_round_trip(&self, f: &FunctorSystem) -> Result<bool> {
        let top = f.top();
        let n = f.top_rank()?;
        for j in 0..n {
            let mut x = vec![Int::zero(); n];
            x[j] = Int::from(1);
            let psi = self.plus(f, top, &x)?;
            for (a, comp) in &psi {
                let key = f.system.sections()[*a];
                let d = f.functor.defres(&f.ctx, top, key)?.mul_vec(&x)?;
                if &Self::minus(f, key, &self.plus(f, key, &d)?)? != comp {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::tests::context;

    fn system(d: &str, class: SectionClass, f: FunctorKind) -> FunctorSystem {
        FunctorSystem::build(Arc::new(context(d)), class, f, false).unwrap()
    }

    #[test]
    fn cyclic_three_burnside_values() {
        let fs = system("cyclic:3", SectionClass::E, FunctorKind::B);
        let ranks: Vec<usize> = fs.system().values().iter().map(|v| v.generators()).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }

    #[test]
    fn dual_kernel_limit_on_rank_two() {
        let fs = system("elab:3:2", SectionClass::E, FunctorKind::KDual);
        let lim = fs.limit().unwrap();
        assert_eq!(lim.rank(), 1);
        assert!(fs.eta_report(&lim).unwrap().iso);
        assert_eq!(fs.reverify(&lim, true).unwrap(), None);
    }

    #[test]
    fn trivial_class_counts_subgroup_classes() {
        let fs = system("xsp:3", SectionClass::TRIVIAL, FunctorKind::B);
        let lim = fs.limit().unwrap();
        assert_eq!(lim.rank(), fs.context().lattice().classes().len());
    }

    #[test]
    fn extraspecial_unit_is_iso() {
        let fs = system("xsp:3", SectionClass::X3, FunctorKind::KDual);
        let lim = fs.limit().unwrap();
        let r = fs.eta_report(&lim).unwrap();
        assert!(r.iso, "{r:?}");
        assert_eq!(fs.reverify(&lim, true).unwrap(), None);
    }

    #[test]
    fn sigma_readings_on_cyclic_three() {
        let fs = system("cyclic:3", SectionClass::E, FunctorKind::B);
        let lim = fs.limit().unwrap();
        let ok: Vec<bool> = SigmaReading::ALL
            .iter()
            .map(|&r| fs.sigma_retracts(&lim, r).unwrap())
            .collect();
        assert_eq!(ok, vec![true, false, false]);
    }

    #[test]
    fn sigma_on_unit_scales_by_order() {
        let fs = system("elab:3:2", SectionClass::E, FunctorKind::KDual);
        let u = fs.unit_eta(&[Int::from(1)]).unwrap();
        assert_eq!(fs.sigma(&u, SigmaReading::FrattiniOfT).unwrap(), vec![Int::from(9)]);
    }

    #[test]
    fn adjunction_round_trips() {
        let f = system("xsp:3", SectionClass::X3, FunctorKind::B);
        let k = system("xsp:3", SectionClass::X3, FunctorKind::K);
        let fam = NaturalFamily::identity(&f);
        fam.check_natural(&f, &f).unwrap();
        assert!(fam.plus_minus_round_trip(&f).unwrap());
        assert!(fam.minus_plus_round_trip(&f).unwrap());
        let inc = NaturalFamily::inclusion(&k).unwrap();
        inc.check_natural(&k, &f).unwrap();
        let mut bad = fam.clone();
        let last = bad.maps.len() - 1;
        bad.maps[last] = bad.maps[last].scale(&Int::from(2));
        assert!(matches!(bad.check_natural(&f, &f), Err(Error::NotNatural { .. })));
    }

    #[test]
    fn identity_plus_is_unit() {
        let f = system("elab:3:2", SectionClass::E, FunctorKind::B);
        let fam = NaturalFamily::identity(&f);
        let x: Vec<Int> = (0..6).map(Int::from).collect();
        let plus: Vec<Int> = fam
            .plus(&f, f.top(), &x)
            .unwrap()
            .into_iter()
            .flat_map(|p| p.1)
            .collect();
        assert_eq!(plus, f.unit_eta(&x).unwrap());
    }

    #[test]
    fn glue_single_quotient() {
        let ctx = context("cyclic:3");
        let v = vec![(1, vec![Int::from(5)])];
        let w = glue_from_quotients(&ctx, FunctorKind::B, (1, 0), &v).unwrap();
        // Inf_{C/C}^C sends the point to C/C
        assert_eq!(w, vec![Int::from(0), Int::from(5)]);
    }

    #[test]
    fn counit_for_k_is_onto() {
        let fs = FunctorSystem::build(Arc::new(context("xsp:3")), SectionClass::X2, FunctorKind::K, true).unwrap();
        let m = fs.probe_m().unwrap();
        assert!(m.surjective, "{m:?}");
        assert!(m.finite, "{m:?}");
    }
}

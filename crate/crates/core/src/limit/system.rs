//! Coefficient systems over a set of sections `Y(P)`.
//!
//! Only generating structure maps are stored: deflation-restriction along a
//! step `(T, S) → (T', S)` with `T'` maximal in `T`, or `(T, S) → (T, S')`
//! with `S' ⊴ T` and `|S' : S| = p`, and conjugation by each generator of
//! `P`. Every nested pair is joined by a chain of steps, and conjugation by
//! an arbitrary element is a word in the generators.

use super::presentation::{well_defined, AbelianPresentation};
use crate::burnside::SectionKey;
use crate::error::{Error, Result};
use crate::group::{section_keys_in_class, ElemSet, SectionClass, SubgroupId, SubgroupLattice};
use crate::lattice::{matrix_to_json, Int, Matrix};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    Defres,
    /// Conjugation by the given element of `P`.
    Conj(usize),
    Indinf,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Defres => f.write_str("defres"),
            MapKind::Conj(x) => write!(f, "conj:{x}"),
            MapKind::Indinf => f.write_str("indinf"),
        }
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "defres" => Ok(MapKind::Defres),
            "indinf" => Ok(MapKind::Indinf),
            _ => s
                .strip_prefix("conj:")
                .and_then(|x| x.parse().ok())
                .map(MapKind::Conj)
                .ok_or_else(|| Error::System(format!("unknown map kind `{s}`"))),
        }
    }
}

/// A structure map between the values at two sections, by section index.
/// Defres and Indinf maps are stored under the step `(big, small)`:
/// Defres goes `source = big → target = small`, Indinf the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub source: usize,
    pub target: usize,
    pub kind: MapKind,
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    lattice: Arc<SubgroupLattice>,
    class: SectionClass,
    sections: Vec<SectionKey>,
    index: HashMap<SectionKey, usize>,
    values: Vec<AbelianPresentation>,
    maps: Vec<StructureMap>,
    by_key: HashMap<(usize, usize, MapKind), usize>,
    steps: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

/// The generating steps out of a section `(T, S)` of `lattice`.
pub fn steps_from(lattice: &SubgroupLattice, key: SectionKey) -> Vec<SectionKey> {
    let (t, s) = key;
    let mut out: Vec<SectionKey> = lattice
        .maximal_subgroups(t)
        .into_iter()
        .filter(|&m| lattice.is_subgroup_of(s, m))
        .map(|m| (m, s))
        .collect();
    let target = lattice.order_of(s) * lattice.group().prime() as usize;
    out.extend(
        lattice
            .interval(s, t)
            .into_iter()
            .filter(|&u| lattice.order_of(u) == target && lattice.is_normal_in(u, t))
            .map(|u| (t, u)),
    );
    out
}

/// The generators of `P` used for conjugation maps.
pub fn conj_generators(lattice: &SubgroupLattice) -> Vec<usize> {
    lattice.subgroup(lattice.whole()).generators().to_vec()
}

/// `ˣ(T, S)`.
pub fn conjugate_key(lattice: &SubgroupLattice, x: usize, key: SectionKey) -> SectionKey {
    (lattice.conjugate(x, key.0), lattice.conjugate(x, key.1))
}

/// For every element `x` of `P`, a word `[g₁, …, g_k]` in `generators`
/// (by position) with `x = g₁ ⋯ g_k`.
pub fn element_words(lattice: &SubgroupLattice, generators: &[usize]) -> Vec<Vec<usize>> {
    let g = lattice.group();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (i, &a) in generators.iter().enumerate() {
            let x = g.mul(a, y);
            if words[x].is_none() {
                let mut w = vec![i];
                w.extend(words[y].as_ref().expect("visited"));
                words[x] = Some(w);
                queue.push_back(x);
            }
        }
    }
    words
        .into_iter()
        .map(|w| w.expect("generators generate the group"))
        .collect()
}

impl CoefficientSystem {
    /// Assembles and validates a system. `values` follow the order of
    /// `sections_in_class(lattice, class)`; `maps` must contain a Defres map
    /// for every generating step and a conjugation map for every generator of
    /// `P` at every section. Indinf maps are optional but, if any is given,
    /// every step needs one.
    pub fn new(
        lattice: Arc<SubgroupLattice>,
        class: SectionClass,
        values: Vec<AbelianPresentation>,
        maps: Vec<StructureMap>,
    ) -> Result<Self> {
        let sys = Self::assemble(lattice, class, values, maps)?;
        sys.validate()?;
        Ok(sys)
    }

    pub(crate) fn assemble(
        lattice: Arc<SubgroupLattice>,
        class: SectionClass,
        values: Vec<AbelianPresentation>,
        maps: Vec<StructureMap>,
    ) -> Result<Self> {
        let sections: Vec<SectionKey> = section_keys_in_class(&lattice, class);
        if values.len() != sections.len() {
            return Err(Error::Dimension {
                expected: sections.len(),
                found: values.len(),
            });
        }
        let index: HashMap<SectionKey, usize> = sections.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut steps = Vec::with_capacity(sections.len());
        for &key in &sections {
            let mut out = Vec::new();
            for k in steps_from(&lattice, key) {
                out.push(
                    *index
                        .get(&k)
                        .ok_or_else(|| Error::System(format!("class is not closed under subquotients at {k:?}")))?,
                );
            }
            steps.push(out);
        }
        let mut by_key = HashMap::new();
        for (i, m) in maps.iter().enumerate() {
            if m.source >= sections.len() || m.target >= sections.len() {
                return Err(Error::System(format!("map {i} refers to a missing section")));
            }
            if by_key.insert((m.source, m.target, m.kind), i).is_some() {
                return Err(Error::System(format!(
                    "duplicate {} map {} → {}",
                    m.kind, m.source, m.target
                )));
            }
        }
        let generators = conj_generators(&lattice);
        let sys = CoefficientSystem {
            lattice,
            class,
            sections,
            index,
            values,
            maps,
            by_key,
            steps,
            generators,
        };
        sys.check_complete()?;
        Ok(sys)
    }

    fn check_complete(&self) -> Result<()> {
        let has_indinf = self.maps.iter().any(|m| m.kind == MapKind::Indinf);
        let mut expected = 0;
        for (a, out) in self.steps.iter().enumerate() {
            for &c in out {
                expected += 1;
                if !self.by_key.contains_key(&(a, c, MapKind::Defres)) {
                    return Err(Error::System(format!(
                        "missing defres map {:?} → {:?}",
                        self.sections[a], self.sections[c]
                    )));
                }
                if has_indinf {
                    expected += 1;
                    if !self.by_key.contains_key(&(c, a, MapKind::Indinf)) {
                        return Err(Error::System(format!(
                            "missing indinf map {:?} → {:?}",
                            self.sections[c], self.sections[a]
                        )));
                    }
                }
            }
            for &x in &self.generators {
                expected += 1;
                let b = self.index[&conjugate_key(&self.lattice, x, self.sections[a])];
                if !self.by_key.contains_key(&(a, b, MapKind::Conj(x))) {
                    return Err(Error::System(format!("missing conj:{x} map at {:?}", self.sections[a])));
                }
            }
        }
        if expected != self.maps.len() {
            return Err(Error::System(format!(
                "{} structure maps given, {} expected",
                self.maps.len(),
                expected
            )));
        }
        Ok(())
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn class(&self) -> SectionClass {
        self.class
    }

    pub fn sections(&self) -> &[SectionKey] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn index_of(&self, key: SectionKey) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn value(&self, i: usize) -> &AbelianPresentation {
        &self.values[i]
    }

    pub fn values(&self) -> &[AbelianPresentation] {
        &self.values
    }

    pub fn maps(&self) -> &[StructureMap] {
        &self.maps
    }

    /// Sections reached by one generating step.
    pub fn steps(&self, i: usize) -> &[usize] {
        &self.steps[i]
    }

    pub fn conj_generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn has_indinf(&self) -> bool {
        self.maps.iter().any(|m| m.kind == MapKind::Indinf)
    }

    pub fn is_free(&self) -> bool {
        self.values.iter().all(|v| v.is_free_presentation())
    }

    pub fn map(&self, source: usize, target: usize, kind: MapKind) -> Option<&Matrix> {
        self.by_key.get(&(source, target, kind)).map(|&i| &self.maps[i].matrix)
    }

    pub fn defres_step(&self, big: usize, small: usize) -> Result<&Matrix> {
        self.map(big, small, MapKind::Defres)
            .ok_or_else(|| Error::Domain(format!("no defres step {big} → {small}")))
    }

    pub fn indinf_step(&self, small: usize, big: usize) -> Result<&Matrix> {
        self.map(small, big, MapKind::Indinf)
            .ok_or_else(|| Error::Domain(format!("no indinf step {small} → {big}")))
    }

    /// Conjugation by a generator of `P` at section `i`, with its target.
    pub fn conj_generator(&self, x: usize, i: usize) -> Result<(usize, &Matrix)> {
        let b = self.index[&conjugate_key(&self.lattice, x, self.sections[i])];
        let m = self
            .map(i, b, MapKind::Conj(x))
            .ok_or_else(|| Error::Domain(format!("{x} is not a conjugation generator")))?;
        Ok((b, m))
    }

    /// The chain of steps from section `big` down to `small`: first shrink `T`
    /// through maximal subgroups, then enlarge `S` by normal steps of index p.
    pub fn step_path(&self, big: usize, small: usize) -> Result<Vec<usize>> {
        let l = &*self.lattice;
        let (t, s) = self.sections[big];
        let (t2, s2) = self.sections[small];
        if !(l.is_subgroup_of(s, s2) && l.is_subgroup_of(s2, t2) && l.is_subgroup_of(t2, t)) {
            return Err(Error::Domain(format!(
                "{:?} is not a subsection of {:?}",
                self.sections[small], self.sections[big]
            )));
        }
        let mut path = vec![big];
        let (mut ct, mut cs) = (t, s);
        while ct != t2 {
            ct = *l
                .maximal_subgroups(ct)
                .iter()
                .find(|&&m| l.is_subgroup_of(t2, m))
                .expect("a maximal subgroup contains any proper subgroup");
            path.push(self.index[&(ct, cs)]);
        }
        let target = |cs: SubgroupId| l.order_of(cs) * l.group().prime() as usize;
        while cs != s2 {
            let o = target(cs);
            cs = *l
                .interval(cs, s2)
                .iter()
                .find(|&&u| l.order_of(u) == o && l.is_normal_in(u, ct))
                .expect("a nontrivial normal subgroup of a p-group meets the centre");
            path.push(self.index[&(ct, cs)]);
        }
        Ok(path)
    }

    /// `Defres` from section `big` to a subsection `small`, composed along
    /// [`CoefficientSystem::step_path`].
    pub fn defres(&self, big: usize, small: usize) -> Result<Matrix> {
        let path = self.step_path(big, small)?;
        let mut m = Matrix::identity(self.values[big].generators());
        for w in path.windows(2) {
            m = self.defres_step(w[0], w[1])?.mul(&m)?;
        }
        Ok(m)
    }

    /// Conjugation by an arbitrary element, as a composite of generator maps.
    pub fn conj(&self, words: &[Vec<usize>], x: usize, i: usize) -> Result<(usize, Matrix)> {
        let mut cur = i;
        let mut m = Matrix::identity(self.values[i].generators());
        for &gi in words[x].iter().rev() {
            let (next, c) = self.conj_generator(self.generators[gi], cur)?;
            m = c.mul(&m)?;
            cur = next;
        }
        Ok((cur, m))
    }

    /// Whether two maps into section `target` agree modulo its relations.
    pub fn maps_agree(&self, target: usize, a: &Matrix, b: &Matrix) -> Result<bool> {
        let d = a.sub(b)?;
        let v = &self.values[target];
        Ok((0..d.ncols()).all(|j| v.is_zero(&d.column(j))))
    }

    /// Checks every invariant of the system: shapes and well-definedness of
    /// each map, commuting squares of steps, compatibility of conjugation with
    /// steps, triviality of inner conjugation, and `Conj_g^{ord g} = id`.
    pub fn validate(&self) -> Result<()> {
        for m in &self.maps {
            let (src, dst) = (&self.values[m.source], &self.values[m.target]);
            if m.matrix.nrows() != dst.generators() || m.matrix.ncols() != src.generators() {
                return Err(Error::System(format!(
                    "{} map {:?} → {:?} has shape {}×{}, expected {}×{}",
                    m.kind,
                    self.sections[m.source],
                    self.sections[m.target],
                    m.matrix.nrows(),
                    m.matrix.ncols(),
                    dst.generators(),
                    src.generators()
                )));
            }
            if !well_defined(&m.matrix, src, dst)? {
                return Err(Error::System(format!(
                    "{} map {:?} → {:?} does not respect relations",
                    m.kind, self.sections[m.source], self.sections[m.target]
                )));
            }
        }
        let words = element_words(&self.lattice, &self.generators);
        (0..self.sections.len())
            .into_par_iter()
            .try_for_each(|a| self.validate_at(a, &words))
    }

    fn validate_at(&self, a: usize, words: &[Vec<usize>]) -> Result<()> {
        let key = self.sections[a];
        let err = |what: String| Error::System(format!("at {key:?}: {what}"));
        // squares of steps
        let mut via: HashMap<usize, Matrix> = HashMap::new();
        for &b in &self.steps[a] {
            let m1 = self.defres_step(a, b)?;
            for &c in &self.steps[b] {
                let m = self.defres_step(b, c)?.mul(m1)?;
                match via.get(&c) {
                    Some(prev) if !self.maps_agree(c, prev, &m)? => {
                        return Err(err(format!("defres paths to {:?} disagree", self.sections[c])));
                    }
                    Some(_) => {}
                    None => {
                        via.insert(c, m);
                    }
                }
            }
        }
        if self.has_indinf() {
            let mut via: HashMap<usize, Matrix> = HashMap::new();
            for &b in &self.steps[a] {
                let m1 = self.indinf_step(b, a)?;
                for &c in &self.steps[b] {
                    let m = m1.mul(self.indinf_step(c, b)?)?;
                    match via.get(&c) {
                        Some(prev) if !self.maps_agree(a, prev, &m)? => {
                            return Err(err(format!("indinf paths from {:?} disagree", self.sections[c])));
                        }
                        Some(_) => {}
                        None => {
                            via.insert(c, m);
                        }
                    }
                }
            }
        }
        // conjugation against steps
        for &x in &self.generators {
            let (xa, ca) = self.conj_generator(x, a)?;
            for &c in &self.steps[a] {
                let (xc, cc) = self.conj_generator(x, c)?;
                let lhs = cc.mul(self.defres_step(a, c)?)?;
                let rhs = self.defres_step(xa, xc)?.mul(ca)?;
                if !self.maps_agree(xc, &lhs, &rhs)? {
                    return Err(err(format!(
                        "conj:{x} does not commute with defres to {:?}",
                        self.sections[c]
                    )));
                }
                if self.has_indinf() {
                    let lhs = ca.mul(self.indinf_step(c, a)?)?;
                    let rhs = self.indinf_step(xc, xa)?.mul(cc)?;
                    if !self.maps_agree(xa, &lhs, &rhs)? {
                        return Err(err(format!(
                            "conj:{x} does not commute with indinf from {:?}",
                            self.sections[c]
                        )));
                    }
                }
            }
            // Conj_x^{ord x} = id
            let g = self.lattice.group();
            let (mut cur, mut m) = (a, Matrix::identity(self.values[a].generators()));
            for _ in 0..g.element_order(x) {
                let (next, c) = self.conj_generator(x, cur)?;
                m = c.mul(&m)?;
                cur = next;
            }
            if cur != a || !self.maps_agree(a, &m, &Matrix::identity(m.ncols()))? {
                return Err(err(format!("conj:{x} raised to its order is not the identity")));
            }
        }
        // inner conjugation is trivial
        let t = self.lattice.subgroup(key.0);
        for &y in t.generators() {
            let (b, m) = self.conj(words, y, a)?;
            if b != a || !self.maps_agree(a, &m, &Matrix::identity(m.ncols()))? {
                return Err(err(format!("conjugation by {y} ∈ T is not the identity")));
            }
        }
        Ok(())
    }

    /// The system as interchange JSON: sections by member lists, values as
    /// presentations, maps keyed by section positions and kind.
    pub fn to_json(&self) -> serde_json::Value {
        let l = &self.lattice;
        let sections: Vec<_> = self
            .sections
            .iter()
            .map(|&(t, s)| {
                serde_json::json!({
                    "t": l.subgroup(t).members(),
                    "s": l.subgroup(s).members(),
                })
            })
            .collect();
        let values: Vec<_> = self
            .values
            .iter()
            .map(|v| {
                serde_json::json!({
                    "generators": v.generators(),
                    "relations": matrix_to_json(v.relations()),
                })
            })
            .collect();
        let maps: Vec<_> = self
            .maps
            .iter()
            .map(|m| {
                serde_json::json!({
                    "source": m.source,
                    "target": m.target,
                    "kind": m.kind.to_string(),
                    "matrix": matrix_to_json(&m.matrix),
                })
            })
            .collect();
        serde_json::json!({
            "format": "bfk-coefficient-system",
            "version": 1,
            "group": l.group().content_hash(),
            "class": self.class.to_string(),
            "sections": sections,
            "values": values,
            "maps": maps,
        })
    }

    /// Reads a system in the format of [`CoefficientSystem::to_json`] over
    /// the given lattice, running the full validation.
    pub fn from_json(lattice: Arc<SubgroupLattice>, text: &str) -> Result<Self> {
        let raw: RawSystem =
            serde_json::from_str(text).map_err(|e| Error::System(format!("malformed system file: {e}")))?;
        if raw.format != "bfk-coefficient-system" || raw.version != 1 {
            return Err(Error::System(format!(
                "unsupported format {} v{}",
                raw.format, raw.version
            )));
        }
        let class: SectionClass = raw.class.parse()?;
        let expected: Vec<SectionKey> = section_keys_in_class(&lattice, class);
        let n = lattice.group().order();
        let id_of = |members: &[usize]| -> Result<SubgroupId> {
            if members.iter().any(|&m| m >= n) {
                return Err(Error::System("section member out of range".into()));
            }
            let set = ElemSet::from_iter(n, members.iter().copied());
            if set.len() != members.len() {
                return Err(Error::System("repeated section member".into()));
            }
            lattice
                .id_of(&set)
                .ok_or_else(|| Error::System(format!("{members:?} is not a subgroup")))
        };
        let keys = raw
            .sections
            .iter()
            .map(|s| Ok((id_of(&s.t)?, id_of(&s.s)?)))
            .collect::<Result<Vec<_>>>()?;
        if keys != expected {
            return Err(Error::System(format!(
                "sections do not list Y(P) for class {class} in canonical order"
            )));
        }
        let values = raw
            .values
            .iter()
            .map(|v| AbelianPresentation::new(v.generators, parse_matrix(&v.relations, v.generators)?))
            .collect::<Result<Vec<_>>>()?;
        let maps = raw
            .maps
            .iter()
            .map(|m| {
                let kind: MapKind = m.kind.parse()?;
                let cols = values
                    .get(m.source)
                    .ok_or_else(|| Error::System(format!("map source {} out of range", m.source)))?
                    .generators();
                if m.target >= values.len() {
                    return Err(Error::System(format!("map target {} out of range", m.target)));
                }
                Ok(StructureMap {
                    source: m.source,
                    target: m.target,
                    kind,
                    matrix: parse_matrix(&m.matrix, cols)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, class, values, maps)
    }
}

#[derive(Deserialize, Serialize)]
struct RawSection {
    t: Vec<usize>,
    s: Vec<usize>,
}

#[derive(Deserialize, Serialize)]
struct RawValue {
    generators: usize,
    relations: Vec<Vec<serde_json::Value>>,
}

#[derive(Deserialize, Serialize)]
struct RawMap {
    source: usize,
    target: usize,
    kind: String,
    matrix: Vec<Vec<serde_json::Value>>,
}

#[derive(Deserialize, Serialize)]
struct RawSystem {
    format: String,
    version: u32,
    class: String,
    sections: Vec<RawSection>,
    values: Vec<RawValue>,
    maps: Vec<RawMap>,
}

fn parse_int(v: &serde_json::Value) -> Result<Int> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| Error::System(format!("non-integer entry {n}"))),
        serde_json::Value::String(s) => s
            .parse::<Int>()
            .map_err(|_| Error::System(format!("bad integer `{s}`"))),
        other => Err(Error::System(format!("bad matrix entry {other}"))),
    }
}

fn parse_matrix(rows: &[Vec<serde_json::Value>], cols: usize) -> Result<Matrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(parse_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, rows)
}

/// Entries of an integer matrix as `i64`, for the sparse solver.
pub(crate) fn small_entries(m: &Matrix) -> Result<Vec<Vec<(usize, i64)>>> {
    m.rows()
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .map(|(j, x)| {
                    x.to_i64()
                        .map(|v| (j, v))
                        .ok_or_else(|| Error::System(format!("structure map entry {x} exceeds 64 bits")))
                })
                .collect()
        })
        .collect()
}

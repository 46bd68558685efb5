//! Shared, memoized group data: lattices (optionally through the on-disk
//! cache), Burnside contexts, functor systems and their limits, keyed by the
//! content hash of the multiplication table.

use bfk_core::burnside::BurnsideContext;
use bfk_core::functor::FunctorKind;
use bfk_core::group::{FiniteGroup, LatticeCache, SectionClass, SubgroupLattice};
use bfk_core::limit::{FunctorSystem, InverseLimit};
use bfk_core::Result;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

type SystemKey = (String, SectionClass, FunctorKind, bool);

#[derive(Default)]
pub struct Store {
    cache: Option<LatticeCache>,
    contexts: Mutex<HashMap<String, Arc<BurnsideContext>>>,
    systems: Mutex<HashMap<SystemKey, Arc<FunctorSystem>>>,
    limits: Mutex<HashMap<SystemKey, Arc<InverseLimit>>>,
}

fn memo<K: Eq + Hash + Clone, V: Clone>(
    map: &Mutex<HashMap<K, V>>,
    key: &K,
    make: impl FnOnce() -> Result<V>,
) -> Result<V> {
    if let Some(v) = map.lock().expect("store lock").get(key) {
        return Ok(v.clone());
    }
    let v = make()?;
    Ok(map.lock().expect("store lock").entry(key.clone()).or_insert(v).clone())
}

impl Store {
    pub fn new(cache: Option<LatticeCache>) -> Self {
        Store {
            cache,
            ..Default::default()
        }
    }

    pub fn context(&self, g: Arc<FiniteGroup>) -> Result<Arc<BurnsideContext>> {
        let key = g.content_hash();
        memo(&self.contexts, &key, || {
            let lattice = match &self.cache {
                Some(c) => c.lattice(g)?,
                None => SubgroupLattice::new(g)?,
            };
            Ok(Arc::new(BurnsideContext::new(Arc::new(lattice))))
        })
    }

    pub fn system(
        &self,
        ctx: &Arc<BurnsideContext>,
        class: SectionClass,
        functor: FunctorKind,
        with_indinf: bool,
    ) -> Result<Arc<FunctorSystem>> {
        let key = (ctx.lattice().group().content_hash(), class, functor, with_indinf);
        memo(&self.systems, &key, || {
            Ok(Arc::new(FunctorSystem::build(
                ctx.clone(),
                class,
                functor,
                with_indinf,
            )?))
        })
    }

    pub fn limit(&self, sys: &FunctorSystem) -> Result<Arc<InverseLimit>> {
        let key = (
            sys.context().lattice().group().content_hash(),
            sys.class(),
            sys.functor(),
            sys.system().has_indinf(),
        );
        memo(&self.limits, &key, || Ok(Arc::new(sys.limit()?)))
    }
}

#![no_main]

use bfk_core::group::{GroupDescriptor, SubgroupLattice};
use bfk_core::limit::CoefficientSystem;
use libfuzzer_sys::fuzz_target;
use std::sync::{Arc, OnceLock};

fn lattice() -> Arc<SubgroupLattice> {
    static L: OnceLock<Arc<SubgroupLattice>> = OnceLock::new();
    L.get_or_init(|| {
        let g = "elab:3:2".parse::<GroupDescriptor>().unwrap().build().unwrap();
        Arc::new(SubgroupLattice::new(Arc::new(g)).unwrap())
    })
    .clone()
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(sys) = CoefficientSystem::from_json(lattice(), s) {
        let _ = bfk_core::limit::inverse_limit(&sys);
    }
});

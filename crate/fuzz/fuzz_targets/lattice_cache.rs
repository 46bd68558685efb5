#![no_main]

use bfk_core::group::{decode_cached_lattice, FiniteGroup, GroupDescriptor};
use libfuzzer_sys::fuzz_target;
use std::sync::{Arc, OnceLock};

fn group() -> Arc<FiniteGroup> {
    static G: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    G.get_or_init(|| Arc::new("elab:3:2".parse::<GroupDescriptor>().unwrap().build().unwrap()))
        .clone()
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Some(l) = decode_cached_lattice(group(), s) {
        for id in 0..l.len() {
            let _ = l.moebius_row(id);
        }
    }
});

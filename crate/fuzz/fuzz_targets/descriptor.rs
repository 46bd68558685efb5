#![no_main]

use bfk_core::functor::FunctorKind;
use bfk_core::group::{GroupDescriptor, SectionClass};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = s.parse::<SectionClass>();
    let _ = s.parse::<FunctorKind>();
    if let Ok(d) = s.parse::<GroupDescriptor>() {
        if d.order().is_some_and(|n| n <= 81) {
            if let Ok(g) = d.build() {
                assert_eq!(Some(g.order()), d.order());
            }
        }
        let _ = d.to_string().parse::<GroupDescriptor>().expect("display round trips");
    }
});

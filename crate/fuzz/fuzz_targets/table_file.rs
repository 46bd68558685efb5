#![no_main]

use bfk_core::group::catalog::write_table_file;
use bfk_core::group::parse_table_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_table_file(s) {
        let again = parse_table_file(&write_table_file(&g)).expect("written tables parse");
        assert!(again.same_table(&g));
    }
});

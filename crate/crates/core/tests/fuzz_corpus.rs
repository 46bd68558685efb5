//! Replays the checked-in fuzz seeds through the parser entry points with
//! the same assertions as the fuzz targets.

use bfk_core::functor::FunctorKind;
use bfk_core::group::catalog::write_table_file;
use bfk_core::group::{decode_cached_lattice, parse_table_file, GroupDescriptor, SectionClass, SubgroupLattice};
use bfk_core::limit::{inverse_limit, CoefficientSystem};
use std::path::PathBuf;
use std::sync::Arc;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn descriptor_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("descriptor") {
        let _ = s.parse::<SectionClass>();
        let _ = s.parse::<FunctorKind>();
        if let Ok(d) = s.parse::<GroupDescriptor>() {
            parsed += 1;
            if d.order().is_some_and(|n| n <= 81) {
                assert_eq!(Some(d.build().unwrap().order()), d.order());
            }
            assert_eq!(d.to_string().parse::<GroupDescriptor>().unwrap(), d);
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn table_file_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("table_file") {
        if let Ok(g) = parse_table_file(&s) {
            parsed += 1;
            assert!(parse_table_file(&write_table_file(&g)).unwrap().same_table(&g));
        }
    }
    assert_eq!(parsed, 4);
}

fn c3xc3() -> Arc<SubgroupLattice> {
    let g = "elab:3:2".parse::<GroupDescriptor>().unwrap().build().unwrap();
    Arc::new(SubgroupLattice::new(Arc::new(g)).unwrap())
}

#[test]
fn coefficient_system_seeds() {
    let l = c3xc3();
    let mut parsed = 0;
    for (name, s) in seeds("coefficient_system") {
        if let Ok(sys) = CoefficientSystem::from_json(l.clone(), &s) {
            parsed += 1;
            inverse_limit(&sys).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
    assert_eq!(parsed, 2);
}

#[test]
fn lattice_cache_seeds() {
    let l = c3xc3();
    let decoded: Vec<bool> = seeds("lattice_cache")
        .iter()
        .map(|(_, s)| decode_cached_lattice(l.group_arc().clone(), s).is_some())
        .collect();
    assert_eq!(decoded, [true, false]);
}

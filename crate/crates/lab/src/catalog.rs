//! The groups campaigns run over.

use bfk_core::group::lattice::DEFAULT_LATTICE_BOUND;
use bfk_core::group::GroupDescriptor;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub descriptor: String,
    pub order: usize,
    /// Within the lattice enumeration bound; larger entries are listed but
    /// every campaign reports them as skipped.
    pub in_bounds: bool,
    pub note: Option<String>,
}

fn descriptors(p: u32) -> Vec<(String, Option<String>)> {
    let q = p as usize;
    let mut out: Vec<(String, Option<String>)> = vec![
        (format!("trivial:{p}"), None),
        (
            format!("cyclic:{p}"),
            Some(format!("Dade group D(C{p}) is Z/2, so K* = 0 loses nothing")),
        ),
        (format!("cyclic:{}", q * q), None),
        (format!("elab:{p}:2"), None),
        (format!("cyclic:{}", q.pow(3)), None),
        (format!("prod:cyclic:{},cyclic:{p}", q * q), None),
        (format!("elab:{p}:3"), None),
        (format!("xsp:{p}"), Some("extraspecial of exponent p".into())),
        (format!("xspm:{p}"), Some("extraspecial of exponent p^2".into())),
        (format!("elab:{p}:4"), None),
        (format!("prod:xsp:{p},cyclic:{p}"), None),
        (format!("prod:xspm:{p},cyclic:{p}"), None),
    ];
    if p == 3 {
        out.push(("wreath:3".into(), Some("maximal class".into())));
    }
    out.extend([
        (format!("prod:cyclic:{},cyclic:{p}", q.pow(3)), None),
        (format!("prod:cyclic:{},cyclic:{}", q * q, q * q), None),
        (format!("prod:cyclic:{},cyclic:{p},cyclic:{p}", q * q), None),
        (format!("cyclic:{}", q.pow(4)), None),
        (format!("elab:{p}:5"), None),
        (format!("prod:xsp:{p},elab:{p}:2"), None),
        (format!("cyclic:{}", q.pow(5)), None),
    ]);
    out
}

/// Catalog entries of order at most `max_order`, sorted by order and then
/// by descriptor.
pub fn catalog(p: u32, max_order: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = descriptors(p)
        .into_iter()
        .filter_map(|(d, note)| {
            let order = d.parse::<GroupDescriptor>().ok()?.order()?;
            (order <= max_order).then_some(CatalogEntry {
                descriptor: d,
                order,
                in_bounds: order <= DEFAULT_LATTICE_BOUND,
                note,
            })
        })
        .collect();
    out.sort_by(|a, b| (a.order, &a.descriptor).cmp(&(b.order, &b.descriptor)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_for_three() {
        let c = catalog(3, 81);
        assert_eq!(c.len(), 17);
        assert_eq!(c.iter().filter(|e| e.order == 81).count(), 8);
        for kind in ["cyclic", "elab", "xsp", "prod"] {
            assert!(c.iter().any(|e| e.descriptor.starts_with(kind)), "{kind}");
        }
        assert!(c.iter().all(|e| e.in_bounds));
        assert!(catalog(3, 243).iter().any(|e| !e.in_bounds));
    }

    #[test]
    fn descriptors_build() {
        for e in catalog(5, 125) {
            let g = e.descriptor.parse::<GroupDescriptor>().unwrap().build().unwrap();
            assert_eq!(g.order(), e.order);
        }
    }
}

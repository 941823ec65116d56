//! Built-in lattices.

use std::sync::Arc;

use crate::lattice::FiniteLattice;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub lattice: Arc<FiniteLattice>,
    pub notes: &'static str,
}

const DEFINITIONS: &[(&str, &str, &str)] = &[
    (
        "b2",
        "objects: bot a b top\nle: bot<=a, bot<=b, a<=top, b<=top",
        "Boolean lattice on two atoms (diamond)",
    ),
    (
        "b3",
        "objects: bot a b c ab ac bc top\n\
         le: bot<=a, bot<=b, bot<=c\n\
         le: a<=ab, a<=ac, b<=ab, b<=bc, c<=ac, c<=bc\n\
         le: ab<=top, ac<=top, bc<=top",
        "Boolean lattice on three atoms (cube)",
    ),
    (
        "n5",
        "objects: bot a b c top\nle: bot<=a, a<=b, b<=top, bot<=c, c<=top",
        "pentagon; non-modular",
    ),
    (
        "m3",
        "objects: bot a b c top\nle: bot<=a, bot<=b, bot<=c, a<=top, b<=top, c<=top",
        "diamond with three atoms; modular, non-distributive",
    ),
];

/// Every built-in lattice in display order: chains `c1`..`c5`, then `b2`,
/// `b3`, `n5`, `m3`.
pub fn catalog() -> Vec<CatalogEntry> {
    const CHAINS: [&str; 5] = ["c1", "c2", "c3", "c4", "c5"];
    let mut out: Vec<CatalogEntry> = CHAINS
        .iter()
        .enumerate()
        .map(|(i, name)| CatalogEntry {
            name,
            lattice: Arc::new(FiniteLattice::chain(*name, i + 1)),
            notes: "chain 0 < 1 < ...",
        })
        .collect();
    out.extend(DEFINITIONS.iter().map(|&(name, text, notes)| CatalogEntry {
        name,
        lattice: Arc::new(FiniteLattice::parse(name, text).expect("built-in lattices parse")),
        notes,
    }));
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<(&str, usize, usize)> = catalog()
            .iter()
            .map(|e| (e.name, e.lattice.len(), e.lattice.non_identity_map_count()))
            .collect();
        assert_eq!(
            sizes,
            [
                ("c1", 1, 0),
                ("c2", 2, 1),
                ("c3", 3, 3),
                ("c4", 4, 6),
                ("c5", 5, 10),
                ("b2", 4, 5),
                ("b3", 8, 19),
                ("n5", 5, 8),
                ("m3", 5, 7),
            ]
        );
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = catalog().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), catalog().len());
        assert!(lookup("n5").is_some());
        assert!(lookup("x9").is_none());
    }
}

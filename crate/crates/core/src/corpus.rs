//! Reference algebras bundled with the library.

use crate::algebra::{parse_algebra_file, Algebra};
use crate::Result;

/// `(name, file contents, representation-finite)`.
pub const CORPUS: &[(&str, &str, bool)] = &[
    ("one_vertex", include_str!("../corpus/one_vertex.toml"), true),
    ("a2", include_str!("../corpus/a2.toml"), true),
    ("a3", include_str!("../corpus/a3.toml"), true),
    ("a3_rad2", include_str!("../corpus/a3_rad2.toml"), true),
    ("square_zero", include_str!("../corpus/square_zero.toml"), true),
    ("square_commutative", include_str!("../corpus/square_commutative.toml"), true),
    ("kronecker", include_str!("../corpus/kronecker.toml"), false),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|c| c.0)
}

pub fn source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|c| c.0 == name).map(|c| c.1)
}

pub fn is_rep_finite(name: &str) -> bool {
    CORPUS.iter().any(|c| c.0 == name && c.2)
}

/// Builds a bundled algebra, optionally over a different prime.
pub fn load(name: &str, prime: Option<u32>) -> Result<Algebra> {
    let text = source(name).ok_or_else(|| crate::Error::Invalid(format!("no bundled algebra named {name:?}")))?;
    Algebra::from_spec(&parse_algebra_file(text, name, prime)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_algebra_builds() {
        let dims: Vec<(usize, usize)> = names()
            .map(|n| {
                let a = load(n, None).unwrap();
                (a.dim(), a.num_vertices())
            })
            .collect();
        assert_eq!(dims, vec![(1, 1), (3, 2), (6, 3), (5, 3), (9, 4), (9, 4), (4, 2)]);
    }
}

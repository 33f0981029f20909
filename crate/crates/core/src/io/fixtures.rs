//! Built-in fixture algebras.

use crate::algebra::{parse_source, AlgebraSource};
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub note: &'static str,
}

impl FixtureEntry {
    pub fn load(&self) -> Result<AlgebraSource> {
        parse_source(self.source)
    }
}

macro_rules! fixture {
    ($name:literal, $file:literal, $note:literal) => {
        FixtureEntry { name: $name, source: include_str!(concat!("../../fixtures/", $file)), note: $note }
    };
}

pub const FIXTURES: &[FixtureEntry] = &[
    fixture!("a2", "a2.alg", "path algebra of 1 -> 2"),
    fixture!("loop", "loop.alg", "dual numbers K[eps]/(eps^2)"),
    fixture!("d5tilde", "d5tilde.alg", "hereditary Euclidean D5~ with the mouth module E of its rank 3 tube"),
    fixture!("a7", "a7.alg", "A_7 with faithful module M7; representation-finite"),
    fixture!("a8", "a8.alg", "A_8 with faithful module M8; representation-finite"),
    fixture!("a9", "a9.alg", "A_9 with faithful module M9; representation-finite"),
    fixture!("a10", "a10.alg", "A_10 with faithful module M10; cycle-finite of infinite type"),
    fixture!("h10", "h10.alg", "hereditary Euclidean E8~ on vertices 2..10"),
    fixture!("sigma", "sigma.alg", "path algebra of 2 <- 1 -> 3 -> 4"),
    fixture!("ex61", "ex61.alg", "27-vertex cycle-finite algebra with an infinite and a finite cyclic component"),
    fixture!("ex62", "ex62.alg", "41-vertex generalized multicoil algebra; structural smoke tests only"),
    fixture!("b88", "b88.alg", "B_{8,8} with modules M8, N8; structural smoke tests only"),
];

/// Sources that must be rejected.
pub const BAD: &str = include_str!("../../fixtures/bad.alg");

pub fn fixture_library() -> &'static [FixtureEntry] {
    FIXTURES
}

pub fn fixture(name: &str) -> Option<&'static FixtureEntry> {
    FIXTURES.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::Representation;

    #[test]
    fn all_fixtures_parse() {
        for f in FIXTURES {
            let s = f.load().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            for m in &s.modules {
                Representation::from_spec(&s.algebra, m).unwrap_or_else(|e| panic!("{}/{}: {e}", f.name, m.name));
            }
        }
        assert!(matches!(parse_source(BAD), Err(crate::Error::NonAdmissibleIdeal(_))));
    }

    #[test]
    fn a7_shape() {
        let a = fixture("a7").unwrap().load().unwrap().algebra;
        assert_eq!((a.n_vertices(), a.quiver().arrows.len(), a.relations().len()), (8, 9, 3));
        assert_eq!(a.ext_quiver().arrows.len(), 9);
    }
}

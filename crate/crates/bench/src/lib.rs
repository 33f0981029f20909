//! Shared fixtures for benchmarks.

use arcycles::io::fixture;
use arcycles::linrep::named_modules;
use arcycles::{Algebra, Representation};

pub fn algebra(name: &str) -> Algebra {
    fixture(name).expect("known fixture").load().expect("fixture parses").algebra
}

pub fn with_modules(name: &str) -> (Algebra, Vec<(String, Representation)>) {
    named_modules(fixture(name).expect("known fixture").source).expect("fixture parses")
}

//! Fixtures and serialization.

pub mod export;
pub mod fixtures;

pub use export::{export_fragment, to_dot, Format};
pub use fixtures::{fixture, fixture_library, FixtureEntry};

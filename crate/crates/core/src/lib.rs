//! Auslander-Reiten quiver fragments of bound quiver algebras and the combinatorics
//! of their cyclic parts.

pub mod algebra;
pub mod artrans;
pub mod error;
pub mod field;
pub mod io;
pub mod linrep;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod structure;
pub mod theorems;
pub mod trquiver;

pub use algebra::{parse_algebra, Algebra, Arrow, Elem, Ideal, Path, Presented, Quiver, Relation};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use linrep::{Morphism, Representation, StandardKind};
pub use artrans::{almost_split_sequence, translate, AlmostSplitSequence, Direction, KnitBudget, Knitted};
pub use trquiver::Fragment;
pub use report::{Report, Status};

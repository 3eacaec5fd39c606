//! Zones as difference bound matrices.
//!
//! Index 0 is the reference clock: `m[i][0]` bounds `x_i` from above and
//! `m[0][i]` bounds `-x_i`, i.e. `x_i` from below. Every [`Zone`] is
//! canonical and nonempty, so structural equality is set equality.
//!
//! The matrix entries are generic over an integer scalar; the crate root
//! fixes `i32` for the checkers.

mod bound;
mod dbm;
mod profile;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

pub use bound::Bound;
pub use dbm::{Dbm, Zone};
pub use profile::EdgeProfile;

/// Integer scalar usable as a DBM bound value.
pub trait BoundValue: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {}

impl<T> BoundValue for T where T: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {}

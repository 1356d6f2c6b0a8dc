//! The arithmetic partial derivative `D_p(x) = (x/p)·ord_p(x)` over the
//! integers.
//!
//! * [`padic`]: valuations, `⌊x⌋_p`, `D_p` on integers and on symbolic
//!   standard forms `a·p^(b·p^k)`, and the full derivative `D`.
//! * [`orbit`]: the valuation sequence of the `D_p`-orbit, its segment
//!   decomposition, period, classification and the inverse construction.
//! * [`antideriv`]: enumeration and counting of anti-partial derivatives and
//!   constructions with a prescribed count.
//! * [`oracle`]: brute-force inversion and literal iteration used to check
//!   all of the above.

pub mod antideriv;
pub mod cli;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod orbit;
pub mod padic;
pub mod prime;
pub mod render;

pub use antideriv::{anti_derivatives, count_anti, primitive_anti, AntiSet, ConstructionResult};
pub use error::{Error, Result};
pub use orbit::{
    classify, inc_profile, ord_sequence, period, reverse_construct, IncProfile, OrbitClass,
};
pub use padic::{d_full, dp, ord, pfloor, psplit, ExtNat, PSplit, PValue, StandardForm};
pub use prime::Prime;

//! Braid groups on the Artin generators, half-twists along arcs, coset
//! enumeration and abelianization for finitely presented groups, and
//! Hurwitz moves on factorizations of the full twist.
//!
//! ```
//! use halftwist::braid::{are_equal, BraidWord};
//!
//! let u = BraidWord::parse(3, "s1 s2 s1").unwrap();
//! let v = BraidWord::parse(3, "s2 s1 s2").unwrap();
//! assert!(are_equal(&u, &v).unwrap());
//! ```

pub mod bn_tilde;
pub mod braid;
pub mod branch_group;
pub mod dynnikov;
pub mod error;
pub mod fp;
pub mod garside;
pub mod half_twist;
pub mod invariants;
pub mod monodromy;
pub mod word;

pub use braid::{BraidWord, FreeWord, Permutation};
pub use error::{Error, ParseError, Result};
pub use word::Letter;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/braids.md")]
    mod braids {}
    #[doc = include_str!("../../../book/src/half_twists.md")]
    mod half_twists {}
    #[doc = include_str!("../../../book/src/fp.md")]
    mod fp {}
    #[doc = include_str!("../../../book/src/quotient.md")]
    mod quotient {}
    #[doc = include_str!("../../../book/src/g0.md")]
    mod g0 {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/monodromy.md")]
    mod monodromy {}
}

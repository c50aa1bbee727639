//! Finitely presented groups: coset enumeration, subgroup presentations,
//! abelian invariants.

pub mod coset;
pub mod presentation;
pub mod schreier;
pub mod snf;

pub use coset::{todd_coxeter, todd_coxeter_with, CosetTable, Strategy};
pub use presentation::Presentation;
pub use schreier::{reidemeister_schreier, tietze_simplify, SchreierPresentation};
pub use snf::{abelianization, smith_normal_form, AbelianInvariants, SmithForm};

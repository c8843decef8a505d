//! Finitely presented group engine: presentations, Todd–Coxeter coset
//! enumeration, Reidemeister–Schreier subgroup presentations, and
//! Smith-normal-form abelianization.

pub mod abelian;
pub mod coset;
pub mod presentation;
pub mod rewrite;
pub mod snf;

pub use abelian::{abelianization, derived_ab_chain, AbelianGroup};
pub use coset::{todd_coxeter, CosetTable, Enumeration};
pub use presentation::Presentation;
pub use rewrite::{reidemeister_schreier, reidemeister_schreier_with, TransversalOrder};
pub use snf::smith_normal_form;

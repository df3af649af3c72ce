//! Group algebras, Schur indices and inertial bounds for abelian varieties.

pub mod albert;
pub mod chartab;
pub mod crossed;
pub mod error;
pub mod exactnum;
pub mod groupkit;
pub mod hondatate;
pub mod inertial;
pub mod report;
pub mod selftest;

pub use error::InertiaError;

pub mod braid;
pub mod certificate;
pub mod coset;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod perm;
pub mod presentation;
pub mod suite;
pub mod word;

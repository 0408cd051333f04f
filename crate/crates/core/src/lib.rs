//! Exact spectral tests, Hoffman graphs and integral-lattice certificates for
//! graphs whose smallest adjacency eigenvalue is at least −3.
//!
//! Every eigenvalue threshold decision (`λmin ≥ −3`, `λmin < −2`, …) is made by
//! exact rational elimination in [`exactmat`]; floating spectra from
//! [`spectra`] are used for reports and for the limit-matrix experiments only.

pub mod assoc;
pub mod exactmat;
pub mod families;
pub mod forbidden;
pub mod formats;
pub mod hoffman;
pub mod lattice;
pub mod spectra;

//! Circulant digraphs, translation association schemes and Schur rings over
//! cyclic groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`zn`]: residue sets over `Z_n` as fixed-width masks, sumsets, multiplier
//!   images, subgroups, radicals and Chinese-remainder splitting.
//! - [`circulant`]: circulant digraphs `Cay(Z_n, S)`, one-way and two-way
//!   distances, arc types, direct and lexicographic products.
//! - [`canon`]: canonical certificates and isomorphism testing.
//! - [`scheme`]: association-scheme verification for translation partitions,
//!   intersection numbers, closed subsets, spectra.
//! - [`sring`]: Schur rings over `Z_n`: A-subgroups, radicals, quotients, orbit
//!   S-rings and tensor decomposition of free S-rings.
//! - [`wdr`]: weakly distance-regular certificates and the subdigraphs `Δ_q`.
//! - [`constructions`]: named families and the expected one-type answer set.
//! - [`classify`]: the exhaustive enumeration harness and its cache.
//!
//! ```
//! use circulant_wdr::{circulant::Circulant, wdr};
//!
//! let c: Circulant = "13:1,3,9".parse().unwrap();
//! let cert = wdr::is_wdr(&c).unwrap().certificate().unwrap();
//! assert!(cert.one_type);
//! assert_eq!(cert.types, vec![3]);
//! ```

pub mod canon;
pub mod circulant;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod scheme;
pub mod sring;
pub mod wdr;
pub mod zn;

pub use error::{Error, Result};

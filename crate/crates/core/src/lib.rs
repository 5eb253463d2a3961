//! Geometry of confocal Poncelet triangle families.
//!
//! A pair of confocal ellipses that admits an inscribed-circumscribed triangle
//! admits a whole one-parameter family of them (Poncelet's closure theorem).
//! Parametrizing the family with Jacobi elliptic functions, this crate builds:
//!
//! - the family itself ([`confocal`]): vertices, caustic contact points,
//!   triangle centers, and the classical billiard invariants (perimeter,
//!   reflection law, sum of angle cosines);
//! - the ruled surface swept by the triangle sides over one period
//!   ([`surface`]): fundamental forms, Gaussian/mean curvature computed two
//!   independent ways, and Morse classification of the curvature critical
//!   points;
//! - the closed space curves traced by contact points, vertices, and triangle
//!   centers on the torus-embedded surface, together with their pairwise
//!   Gauss linking numbers ([`tangles`]).
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the default
//! `std` feature and enable `libm` to supply the float math.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("poncelet-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub(crate) mod math;

mod error;
pub mod elliptic;
pub mod confocal;
pub mod geom;
pub mod surface;
pub mod tangles;

pub use error::Error;

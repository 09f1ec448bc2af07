//! Exact arithmetic in the big Witt ring W(A) = 1 + T·A[[T]] and its subring
//! of rational Witt vectors, over pluggable exact coefficient rings.
//!
//! The crate is organised around a runtime [`ring::Ring`] descriptor (integers,
//! rationals, modular integers, finite fields, dual numbers, polynomial and
//! bivariate rings, and fraction fields of certified domains). On top of it:
//!
//! * [`witt`] — truncated Witt series: addition (= series multiplication),
//!   the universal Witt product, Frobenius, Verschiebung, ghost components;
//! * [`multable`] — the universal integer multiplication polynomials,
//!   generated symbolically and cached;
//! * [`ratwitt`] — rational Witt vectors P/Q with degree-bound tracking,
//!   localization, and exact reconstruction round-trips;
//! * [`hankel`] — Hankel views, rank over fields, W_J membership over
//!   arbitrary rings, Kronecker reconstruction, minor decompositions;
//! * [`fatou`] — (strong) Fatou checks and the quasi-integrality witness;
//! * [`monoid`] — the reduced monoid algebra and its map onto rational
//!   Witt vectors, with kernel witnesses and splitting preimages;
//! * [`almkvist`] — endomorphisms of free modules as an independent oracle
//!   for every Witt operation via char polynomials det(1 − φT);
//! * [`descent`] — Galois descent checks for finite field extensions.
//!
//! Everything is exact: arbitrary-precision integers and rationals, no
//! floating point, no rounding. All values are immutable once built.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod almkvist;
pub mod descent;
pub mod error;
pub mod fatou;
pub mod fixtures;
pub mod hankel;
pub mod linalg;
pub mod monoid;
pub mod multable;
pub mod parse;
pub mod poly;
pub mod ratwitt;
pub mod ring;
pub mod rng;
pub mod witt;

pub use error::{Error, Result};
pub use poly::Poly;
pub use ratwitt::RatWitt;
pub use ring::{Elem, Ring};
pub use witt::WittSeries;

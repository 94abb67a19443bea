//! syzlab-core: an exact workbench for projective varieties cut out by
//! quadrics.
//!
//! Everything is computed over prime fields F_p with p an odd prime below
//! 2^31; claims about characteristic zero are cross-checked by agreement
//! between several primes. The layers, bottom to top:
//!
//! * [`field`], [`monomial`], [`ring`], [`poly`], [`text`] — the polynomial
//!   arithmetic kernel and its plain-text format.
//! * [`linalg`] — exact rank / kernel / span over F_p.
//! * [`groebner`], [`hilbert`] — Buchberger engine with the classical pair
//!   criteria, ideal operations, Hilbert series data.
//! * [`catalog`] — the built-in varieties: Grassmannian linear sections,
//!   rational normal scrolls, del Pezzo surfaces, Veronese and Segre images.
//! * [`koszul`] — graded Betti numbers of the linear strand via Koszul
//!   cohomology, and explicit syzygy classes.
//! * [`rank_locus`] — low-rank loci of quadric pencils and the delta
//!   invariant (span of rank <= t quadrics inside the degree-2 part).
//! * [`syzygy`] — syzygy schemes of top-strand classes and scroll witnesses.
//! * [`repro`] — named end-to-end reproduction suites used by the CLI and
//!   the acceptance tests.

pub mod budget;
pub mod catalog;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod rank_locus;
pub mod repro;
pub mod ring;
pub mod syzygy;
pub mod text;

pub use error::{Error, Result};

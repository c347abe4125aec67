//! Exact symbolic algebra for a ring of piecewise-continuous real functions
//! on an interval, together with a decision layer for the topology of its
//! maximal spectrum.
//!
//! The ring under study is the algebra of bounded functions on an interval
//! with finitely many discontinuities, restricted to a decidable fragment:
//! piecewise polynomials with rational breakpoints, optionally extended by a
//! symbolic bounded oscillator primitive. On top of the ring sit:
//!
//! * [`zeroset`] — an exact calculus of vanishing loci (finite unions of
//!   intervals and points with algebraic endpoints, plus accumulating
//!   sequence families),
//! * [`ideals`] — ideal descriptions, the side-behavior classification, and
//!   the computation of all maximal ideals above an ideal,
//! * [`spectrum`] — connected components, disconnection splitters,
//!   separation witnesses and non-separability certificates, and ring-level
//!   verdicts (clean / Gelfand / Hausdorff / totally disconnected),
//! * [`ultrafilter`] — a finite-scale model of the ultrafilter–maximal-ideal
//!   correspondence over products of Z/m, with brute-force oracles.
//!
//! All arithmetic is exact (arbitrary-precision rationals and real algebraic
//! numbers); there are no numeric tolerances anywhere in the decision paths.

pub mod corpus;
pub mod ideals;
pub mod numeric;
pub mod piecewise;
pub mod spectrum;
pub mod ultrafilter;
pub mod zeroset;

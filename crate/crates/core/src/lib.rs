//! Tubular elliptic Weyl groups of types D4, E6, E7 and E8, their
//! hyperbolic extensions, and the Hurwitz action on reflection
//! factorizations of the Coxeter transformation.
//!
//! Elements of the cover are handled either as exact integer matrices
//! ([`group::GroupMatrix`]) or in the normal form `e(w) TR_b(lambda) TR_a(mu)`
//! ([`group::Triple`]).

pub mod bilinear;
pub mod cli;
pub mod group;
pub mod hurwitz;
pub mod interval;
pub mod matrix;
pub mod rootsys;
pub mod scherk;
pub mod verify;

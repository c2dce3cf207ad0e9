//! The L* arithmetic language with bounded quantifiers, its semantics, prenex
//! classification, enriched semantic tableaux and generalized arithmetic
//! systems.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enrichment;
pub mod lang;
pub mod prenex;
pub mod semantics;
pub mod systems;
pub mod tableaux;

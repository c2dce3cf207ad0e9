//! Generalized arithmetics: an axiom basis paired with an enrichment level.

mod basis;
mod consistency;
mod relational;
mod schema;
pub mod selfref;
mod typeclass;

use core::fmt;

use crate::enrichment::EnrichmentLevel;

pub use basis::{AxiomBasis, BasisFlags};
pub use consistency::{
    consistency_search, pair_meta, pair_meta_at, prf_meta, ConsistencyMode, Refutation, SearchVerdict,
};
pub use relational::{localized_mult_totality, relational_arith_basis, totality_sentence, Localization, Totality};
pub use schema::{group2_record, group3_record, parse_group2_display, SchemaError, SchemaKind, SchemaRecord, Violation, META_NOTE};
pub use selfref::{diag, self_ref_extend, SelfRefRecord};
pub use typeclass::{classify_type, Attempt, TypeClass, TypeKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedArithmetic {
    pub basis: AxiomBasis,
    pub level: EnrichmentLevel,
}

impl GeneralizedArithmetic {
    pub fn new(basis: AxiomBasis, level: EnrichmentLevel) -> Self {
        GeneralizedArithmetic { basis, level }
    }
}

impl fmt::Display for GeneralizedArithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.basis.name(), self.level)
    }
}

//! Coefficient systems over sections and their inverse and direct limits.

mod functorial;
mod presentation;
mod solve;
mod system;

pub use functorial::{glue_from_quotients, section_iso, EtaReport, FunctorSystem, MProbe, NaturalFamily, SigmaReading};
pub use presentation::{well_defined, AbelianPresentation, GroupHom};
pub use solve::{block_offsets, inverse_limit, nested_pairs, reverify, Colimit, InverseLimit};
pub use system::{conj_generators, conjugate_key, element_words, steps_from, CoefficientSystem, MapKind, StructureMap};

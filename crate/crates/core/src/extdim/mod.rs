//! Additive categories of indecomposables, extension layers, syzygy
//! categories and bounds on extension dimension.

mod addcat;
mod bullet;
mod classes;
mod engine;
mod reptype;
mod syzcat;
mod universe;

pub use addcat::AddCat;
pub use bullet::{
    bounded_containment, bullet, bullet_with_stats, layer, layers, BulletOptions, BulletStats, Containment,
};
pub use classes::{gaussian_binomial, rref_matrices};
pub use engine::{
    ed_from_inputs, ed_report, EdFact, EdInputs, EdInterval, EdOptions, EdReport, ExternalFact, FactKind, FactSubject,
    Rule, Side,
};
pub use reptype::{
    euler_form, rep_type_certificate, tits_classification, tits_with_witness, RepTypeCertificate, RepTypeMethod,
    RepTypeVerdict, TitsClass,
};
pub use syzcat::{syzygy_category, syzygy_category_from, syzygy_finiteness, SyzygyCategory, SyzygyFiniteness};
pub use universe::{
    default_seeds, generate_universe, LogEntry, Origin, Rules, Universe, UniverseOptions, DEFAULT_MEMBER_CAP,
    DEFAULT_MULT_BOUND, HEURISTIC_THRESHOLD,
};

//! Executable checks of the structural results on path-representable
//! distances: birth-edge injection, birth-edge audit, MST invariance, poset
//! extremes and the search for higher-dimensional counterexamples.

mod audit;
mod corpus;
mod injection;
mod mst_check;
mod poset;
mod search;

pub use audit::{audit_birth_edges, AuditReport, AuditViolation};
pub use corpus::{derive_seed, Corpus, Instance};
pub use injection::{
    injection_campaign, match_barcodes, shared_ordering, verify_injection, verify_injection_distances,
    CampaignFailure, CampaignSummary, InjectionFailure, InjectionFailureReason, InjectionReport, MatchedBar,
};
pub use mst_check::{check_mst_invariance, MstInvarianceReport};
pub use poset::{cost_dominated_distances, cycle_no_greatest_certificate, poset_extremes, NoGreatestCertificate, PosetExtremes};
pub use search::{bar_counts, default_search_corpus, search_counterexample, BarCounts, Witness};

//! Executable forms of the inequalities and structural statements used in
//! the spectral Turán argument, evaluated on concrete graphs.
//!
//! Every check has a stable name. Hard checks pass or fail; checks whose
//! hypotheses need `n` large are recorded as report-only and never affect
//! [`LemmaAuditReport::passed`]. A check whose hypothesis fails on the
//! given graph is vacuous, not a pass.

mod checks;
mod report;

pub use checks::{
    audit_bipartition_lemma, audit_global_bounds, audit_neighborhood_bounds, audit_spex_graph,
    audit_spex_graph_with, CycleMode, Provenance, SpexAuditOptions,
};
pub use report::{
    summary_table, AuditSets, CheckDetail, CheckEntry, CheckStatus, LemmaAuditReport, Relation, MARGIN,
};

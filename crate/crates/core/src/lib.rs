//! Circular colourings of signed graphs: signed circular cliques, an exact
//! homomorphism solver, list-colouring verifiers and small-graph campaigns.

pub mod campaigns;
pub mod canon;
pub mod catalog;
pub mod clique;
pub mod criticality;
pub mod enumerate;
pub mod error;
pub mod fraction;
pub mod graph;
pub mod lemmas;
pub mod lists;
pub mod solver;
pub mod switching;

pub use clique::{adjacency, antipode, full_clique, hat_clique, neighbor_set, CliqueParams, ColorLabel};
pub use campaigns::{run_campaign, CampaignFailure, CampaignId, CampaignOptions, CampaignReport};
pub use canon::{canonical_form, Canonical, SmallGraph};
pub use enumerate::{enumerate_signed, signature_classes, underlying_graphs, EnumSpec, Enumeration};
pub use error::{Error, Result};
pub use fraction::{candidate_params, Fraction};
pub use graph::{cycle_sign, make_graph, switch, Edge, Sign, SignedMultigraph, SwitchSet};
pub use solver::{
    chi_c, chi_c_with, enumerate_homs, find_sp_hom, find_sp_hom_with, is_colorable, verify_hom, ChiOptions, ChiReport,
    HomEnumeration, Homomorphism, SearchOptions, SearchOutcome,
};
pub use switching::{
    canonical_signature, contains_switching_subgraph, find_switching_isomorphism, is_switching_equivalent,
    is_switching_isomorphic, SubgraphEmbedding,
};
pub use criticality::{critical_subgraph, criticality_report, density_check, is_critical, potential, CriticalityReport, DensityCheck};
pub use lemmas::{verify_list_lemma, LemmaId, Report};
pub use lists::{
    classify_neg_tri_exception, is_interval, list_colorable, residual_list, ColorSet, Interval, ListAssignment,
};

//! Quantum decision theory.
//!
//! Intentions and their modes span a tensor-product mind space; prospects
//! are vectors in it and their probabilities are squared overlaps with the
//! decision maker's strategic state. The probability of a composite
//! prospect splits into a classical utility factor and an interference
//! (attraction) factor, which is what drives the disjunction effect and the
//! conjunction fallacy analysed in [`effects`].

pub mod datakit;
pub mod demo;
pub mod effects;
pub mod entanglement;
pub mod error;
pub mod interference;
pub mod linalg;
pub mod mindspace;
pub mod prospects;

pub use error::{QdtError, Result};

pub use mindspace::{
    amplitude, build_mind_basis, inner_product, norm, tensor_product_states, Amplitude, MindBasis,
    ModeBasis, StateVector,
};
pub use prospects::{
    normalize_probabilities, optimal_prospect, project_update, prospect_probability, sequence_probability,
    OptimalChoice, Prospect, ProspectSet, StrategicState,
};
pub use entanglement::{
    coefficient_matrix, is_entangled, schmidt_rank, Bipartition, EntanglementReport, EntanglementVerdict,
};
pub use interference::{
    alternation_residual, binary_quarter_estimate, decompose, expected_interference_magnitude,
    sample_interference_magnitude, uncertainty_factor, InterferenceDecomposition, QuarterLawPrior,
    SampleSummary,
};
pub use effects::{
    aggregate_rows, analyze_conjunction, analyze_disjunction, classical_aggregate, conjunction_to_disjunction,
    predict_disjunction, ConjunctionReport, ConjunctionRow, ConjunctionSummary, DisjunctionInput,
    DisjunctionPrediction, DisjunctionReport,
};
pub use datakit::{
    load_conjunction_csv, load_disjunction_json, write_report, ConjunctionDataset, DisjunctionDataset, Report,
    ReportFormat,
};

pub use num_complex::Complex64;

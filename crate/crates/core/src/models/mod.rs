//! Random graph and digraph models: independent edge/arc graphs, edge/arc
//! selection graphs, their named instances, samplers and exact laws.

mod cci;
mod exact;
mod mass;
mod probability;
mod sample;
mod spec;
mod vertices;

pub use cci::{cci_kernel, cci_mass, CciParameters};
pub use exact::{
    exact_model_distribution, exact_model_distribution_seeded, independent_distribution, selection_distribution,
    EXACT_SELECTION_M_MAX,
};
pub use mass::{EdgeMassFn, PairDomain, RejectionSampler, DEFAULT_REJECTION_CAP, MASS_TOLERANCE};
pub use probability::{
    girg_probability, irg_probability, torus_distance, ArcProbabilities, ConstantProbability, EdgeProbabilities,
    EdgeProbabilityFn, GirgProbability, Kernel, KernelProbability, MatrixProbability,
};
pub use sample::{
    sample, sample_asrg, sample_asrg_with, sample_esrg, sample_esrg_with, sample_iag, sample_iag_with, sample_ieg,
    sample_ieg_with, sample_selection_with, Sample,
};
pub use spec::{CciInstance, CustomInstance, Instance, ModelClass, ModelSpec, MAX_GIRG_DIM};
pub use vertices::{TypedVertexVector, VertexType, WeightLaw};

//! Exact combinatorics for moment/cumulant generating functions, Bell
//! statistics, Feynman-diagram topology, power counting and the
//! gauge-invariant second variation.

pub mod combinatorics;
pub mod cumulant;
pub mod diagram;
pub mod error;
pub mod power_counting;
pub mod rational;
pub mod series;
pub mod variational;

pub use combinatorics::{bell, bell_numbers, dobinski_partial, set_partitions, DobinskiEstimate, SetPartition};
pub use cumulant::{
    compare_cumulant_methods, cumulants_from_moments_partition, cumulants_from_moments_series,
    moments_from_cumulants, CumulantTable, ModelSpec, MomentTable,
};
pub use diagram::{Diagram, Edge, EdgeVariance, ExternalLeg, Variance, Vertex, VertexKind};
pub use error::{Error, Result};
pub use power_counting::{feynman_combine, symmetric_mixture, DivergenceReport};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::{MultiIndex, Series};
pub use variational::{check_2nvar_identity, check_2var_identity, check_bell_egf, VariationReport};

//! Anderson's and Arone's chain models of `Y^X` and the maps comparing them
//! with `C̃_*(Y^X)` and with each other.

mod bicomplex;
mod checks;
mod comparison;
mod cosimplicial;

pub use bicomplex::{
    BicomplexModel, BicomplexSegment, Block, DModel, DiagSegment, GModel, IdentityFailure,
};
pub use checks::{
    check_chain_map, check_composition_square, check_epsilon_commutes, check_inverse,
    check_lambda_naturality, check_triangle, diagonal_homology, induced_g, induced_g_matrix,
    rank_census, triangle_failures, truncation_projection, CensusRow, ChainMapFailure,
    CompositionFailure, InverseCheck, NaturalityFailure, TriangleFailure,
};
pub use comparison::{
    epsilon, epsilon_matrix, function_chain_vector, lambda, lambda_map, lambda_value, mu, mu_map,
    xi, xi_matrix, LazyLambda,
};
pub use cosimplicial::CosimplicialHom;

use thiserror::Error;

use crate::exactlin::LinError;
use crate::simplicial::SimplicialError;

/// Largest bidegree module built by default.
pub const DEFAULT_MODULE_LIMIT: usize = 4_000_000;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("bidegree ({p}, {q}) has rank {size}, over the module limit {limit}")]
    TooLarge {
        p: usize,
        q: usize,
        size: String,
        limit: usize,
    },
}

//! Semi-invariant rings presented by generators and relations: monomial
//! enumeration by weight, the minimal weight with two monomials, graded
//! dimensions, pencils, trinomial relations and Jacobian ranks.

mod pencil;
pub mod poly;
mod system;
mod weights;

pub use pencil::{
    jacobian_at, jacobian_rank, phi_value, relation_differences, PencilElement, PhiReport,
    TrinomialRelation,
};
pub use poly::{ParseError, Polynomial, Var};
pub use system::{
    Ambient, AmbientFile, Generator, GeneratorFile, GeneratorSystem, MonomialDisplay, SystemFile,
    WeightedMonomial,
};
pub use weights::{
    minimal_double_weight, monomials_of_weight, multiplicity_free_in_box, weight_cells,
    weight_remainder, weight_space_dim_symbolic, MinimalWeightReport, MultiplicityReport,
    Remainder, WeightCell,
};

use crate::quiver::Weight;
use crate::rep::RepError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SiError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed generator system JSON: {0}")]
    Json(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("weight has {got} entries but the system has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
    #[error("ambient space does not match the system: {0}")]
    AmbientMismatch(String),
    #[error("relation {index} (`{relation}`) is not homogeneous for the weight grading")]
    InhomogeneousRelation { index: usize, relation: String },
    #[error("`{0}` is not a generator name")]
    UnknownGenerator(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("realization of `{generator}` uses `{coordinate}`, which is not a coordinate of the ambient space")]
    UnknownCoordinate {
        generator: String,
        coordinate: String,
    },
    #[error("realization of `{generator}` does not have the declared weight")]
    RealizationWeight { generator: String },
    #[error("generator `{0}` has no realization")]
    NoRealization(String),
    #[error("`{0}` is not a product of generators")]
    NotAMonomial(String),
    #[error("no weight with two or more monomials of degree <= {bound}")]
    NotFoundInBox { bound: u32 },
    #[error("no monomial has weight {sigma}")]
    NoMonomial { sigma: Weight },
    #[error("the monomial {p} vanishes at the given point")]
    PZero { p: String },
    #[error("monomials {p} and {q} have different weights")]
    WeightMismatch { p: String, q: String },
    #[error("not a trinomial relation with pairwise coprime monomials: {0}")]
    NotTrinomial(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

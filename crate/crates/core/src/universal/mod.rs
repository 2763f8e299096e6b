//! The universal domain `U` of reduced `Δ`/`⊤` trees.
//!
//! Every finite basis embeds into `U` ([`embed`]), sub-domains come with
//! projection pairs and retractions ([`SubDomain`]), and finitary
//! projections of `U` can be combined with `+`, `×` and `→`
//! ([`proj_sum`], [`proj_prod`], [`proj_arrow`]) and iterated to
//! approximate domain equations.

mod embed;
mod projection;
mod subdomain;
mod tree;
mod truncation;

pub use embed::{embed, loc, regions, sign_string, EmbeddingCertificate, REGION_TABLE_LIMIT};
pub use projection::{
    inl_tree, inr_tree, pair_tree, proj_arrow, proj_prod, proj_sum, prod_image, solve_domain_equation,
    sum_image, unpair_tree, unsum_tree, DomainExpr, SumView, UProjection, DEFAULT_DEPTH,
};
pub use subdomain::{
    classify_projection, fixed_tokens, projection_pair, sub_combinator, subdomain_check, subdomain_retraction,
    ProjectionClass, ProjectionPair, SubDomain, SubdomainViolation,
};
pub use tree::{
    path_string, redexes, reduce, rewrite_at, trees_up_to, u_glb, u_leq, u_lub, v_lub, Dir, Path, UTree,
};
pub use truncation::{u_truncation, TreeBasis, TRUNCATION_LIMIT};

use crate::basis::BasisError;
use crate::mapping::MapError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniversalError {
    #[error("malformed tree `{text}` at offset {pos}")]
    BadTree { text: String, pos: usize },
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Subdomain(#[from] SubdomainViolation),
    #[error("regions of length {k} need an enumeration of more than {len} elements")]
    RegionLength { k: usize, len: usize },
    #[error("a region table of length {k} has more than {limit} entries")]
    RegionTable { k: usize, limit: usize },
    #[error("embedding certificate failed: {0}")]
    Certificate(String),
    #[error("tree set has no `D`")]
    NoDelta,
    #[error("`T` is not an element of U")]
    TopToken,
    #[error("`{left}` and `{right}` have lub `{lub}` outside the set")]
    NotClosed { left: String, right: String, lub: String },
    #[error("truncation depth {depth} is above the limit of {limit}")]
    TruncationLimit { depth: usize, limit: usize },
    #[error("truncation depth {depth} is too small, depth {required} is needed")]
    TruncationTooSmall { depth: usize, required: usize },
    #[error("map is not a self-map: {from} -> {to}")]
    NotSelfMap { from: String, to: String },
    #[error("{0}")]
    Unsupported(String),
}

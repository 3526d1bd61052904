//! Staged trees: validation, parametrization, closed-form maximum
//! likelihood estimates, Horn matrices, floret identification and
//! equivalence, plus decomposable and Bayesian-network models.

pub mod builders;
mod dag;
mod generate;
mod graph;
mod horn;
mod mle;
mod table;
mod tree;

pub use dag::{bayes_net_mle, from_bayesian_network, DagModel, ExportedTree};
pub use generate::random_staged_tree;
pub use graph::{decomposable_mle, UndirectedGraph};
pub use horn::{identify_florets, identify_florets_with, tree_equivalent, tree_horn, tree_horn_reduced};
pub use mle::{tree_mle, tree_mle_aggregated, tree_parametrize};
pub use table::{ContingencyTable, RationalJson, TableJson};
pub use tree::{tree_validate, EdgeJson, NodeId, StagedTree, TreeJson};

//! Shortest perfect matching reconfiguration under the alternating-cycle
//! model: find the minimum number of alternating-cycle flips transforming one
//! perfect matching into another, together with an explicit optimal sequence.
//!
//! The exact solver runs in polynomial time on outerplanar graphs by reducing
//! the problem to a min-sum diameter decomposition of the weak dual tree. For
//! validation the crate ships a breadth-first oracle over the configuration
//! graph (the skeleton of the perfect matching polytope) and generators for
//! the Hamiltonian-cycle gadget instances on which the general problem is
//! hard.

pub mod dual;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod msdd;
pub mod oracle;
pub mod reductions;
pub mod rng;
pub mod solver;

pub use dual::{build_dual, cut_to_cycle, difference_gap, gap, DualEdgeKind, DualTree};
pub use embedding::{enumerate_faces, find_outer_order, validate_embedding, Face, FaceSet,
                    OuterplaneEmbedding};
pub use error::{Error, Result};
pub use graph::{biconnected_components, flip, is_alternating_cycle, naive_sequence,
                symmetric_difference_cycles, validate_perfect_matching, Block, Cycle, EdgeId,
                Multigraph, PerfectMatching, ReconfigSequence, SubGraph, VertexId};
pub use msdd::{component_diameter, solve_msdd, solve_msdd_bruteforce, solve_msdd_with_domain,
               value_domain, DomainMode, MsddInstance, MsddSolution};
pub use oracle::{bfs_shortest, enumerate_alternating_cycles, enumerate_perfect_matchings,
                 t_star_at_most_two};
pub use reductions::{reduce_bipartite, reduce_planar, witness_sequence_from_hc,
                     DirectedHcInstance, PlanarHcInstance};
pub use solver::{disjoint_case_sequence, one_flip_step, opt_value_only,
                 random_outerplanar_instance, solve, BlockReport, SolveReport, SpmrInstance};

//! Gallai colorings of complete graphs: exact structure, certified approximate
//! partitions, randomized repair toward rainbow-triangle-freeness, a one-sided
//! property tester, and hardness constructions with brute-force verifiers.
//!
//! The crate is `no_std` + `alloc`; everything is deterministic given explicit
//! seeds. IO, serialization, and parallel drivers live in the companion crate
//! `gallai-lab`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod copies;
pub mod counting;
pub mod design;
pub mod equations;
pub mod gallai;
pub mod graph;
pub mod hardness;
pub mod repair;

pub use graph::{
    apply_edits, color_projection, cross_pairs_of_sizes, pair_index, Color, ColoredCompleteGraph,
    Digraph, Edit, EditTranscript, GraphError, VertexPartition,
};

pub use counting::{
    count_rainbow_triangles, find_rainbow_triangle, triangles_avoiding_color, RainbowCounter,
};

pub use copies::{
    enumerate_colored_copies, enumerate_induced_copies, rainbow_k3, verify_pair_disjoint,
    CopyFamily, EnumError, EnumLimits, PairDisjointReport,
};

pub use gallai::{
    closeness_cost, compose, decompose, monochromatic_partition, random_gallai_tree, DecomposeError,
    GallaiTree, TreeError, TreeParams,
};

pub use repair::{
    approximate_partition, repair, test_rainbow_free, ApproxPartition,
    PartitionCase, RepairConfig, RepairError, RepairOutcome, RepairTree, TestReport, TestVerdict,
    TesterConfig,
};

pub use equations::{
    avoiding_set, verify_avoiding_set, Constraint, EquationError, EquationFamily, SetMethod,
    Violation,
};

pub use design::{design_family, DesignError, DesignFamily};

pub use hardness::{
    blowup, blowup_colored, blowup_digraph, blowup_family, count_copies_one_per_block, d3_hardness,
    d3_pattern, f4_hardness, f4_pattern, lift_to_digraph, triangle_hardness, Claims,
    HardnessError, HardnessInstance, Host, InsideRule,
};

//! Glide complexes of finite graphs and hypergraphs.
//!
//! Perfect matchings (dimer coverings) of a graph are transformed into one
//! another by gliding along even cycles. The matchings form the 0-cells of a
//! nonpositively curved cubed complex, whose fundamental group — the dimer
//! group — this crate computes by generators and relations. Around that core
//! sit the general gliding-system machinery in the power group of the edge
//! set, curvature verification (square and cube conditions, flag links),
//! typing words into right-angled Artin groups, the permutation shadow of
//! the braid homomorphism, and the census of dimer-labeling components.

mod bits;
pub mod braid;
pub mod complex;
pub mod dimer;
pub mod error;
pub mod gliding;
pub mod incidence;
pub mod io;
pub mod labelings;
pub mod snf;
pub mod words;

pub use error::{Error, Result};
pub use incidence::{
    decompose_cyclic, enumerate_perfect_matchings, has_perfect_matching,
    induced_subhypergraph, is_cyclic, subdivide, Cycle, EdgeSet, Hypergraph, Matching, Mode,
    Parity, Subdivision, VertexSet,
};

pub use complex::{
    build_complex, check_cube_condition, check_square_condition,
    check_square_condition_rel, generator_loops, inclusion_map, is_flag, link,
    nonpositively_curved, nonpositively_curved_bounded, orient, CubeComplex, CurvatureVerdict,
    DirectedComplex, EdgePath, Link, Orientation, StoredCube,
};
pub use gliding::{
    canonical_key, cube_vertices, even_cycle_system, glide, glide_matching, is_cubic,
    is_precubic, reflect, subset_product, BasedCube, CubeKey, CubicSet, EvenCycleSystem,
    GlidingSystem,
};

pub use braid::{
    bipartite_v_orientation, glide_marks, sigma_theta, sigma_theta_n, MarkedMatching,
    Permutation, VOrientation,
};
pub use dimer::{
    base_change, congruent, dimer_cells, dimer_presentation, groupoid_presentation, hull,
    hull_path, inclusion_j, is_flat, loop_to_word, matching_group_complex, word_to_loop,
    DimerPresentation, GroupoidPresentation,
};
pub use labelings::{
    classify_labeling, component_census, is_dimer_labeling, odd_cycles, omega, omega_inverse,
    CubePoint, Labeling, LabelingClass, Rat,
};
pub use words::{
    abelianization_rank, half_flip, raag_edges, raag_normal_form, raag_of_complex,
    tietze_simplify, typing_word, u_map, AbelianInvariants, CycleRaag, Letter, Presentation,
    RaagSpec, Word,
};

//! Arctic curves from the tangent method: r(z) evaluators, line families,
//! envelopes, saddle points, and the closed-form curves for the square,
//! the hexagon and the triangoloid.

mod arc;
mod error;
mod hexagon;
mod quad;
mod regime;
mod revaluator;
mod saddle;
mod square;
mod triangoloid;

pub use arc::{
    default_grid, envelope, log_grid, segment_distance, write_lines_csv, ArcLabel, ArcPoint, Envelope, GeneralLine, Line,
    ParametricArc,
};
pub use error::TangentError;
pub use hexagon::{hexagon_arc, hexagon_corners, hexagon_ellipse_residual, hexagon_family, hexagon_sides};
pub use regime::Regime;
pub use revaluator::{r_asm, r_finite_n, r_free_fermion, FiniteN, REvaluator};
pub use saddle::{boundary_term, free_energy, saddle_action, saddle_eta, solve_saddle, xi_over_u, SaddleSolution};
pub use square::{family_coefficients, line_family, local_criterium_check, slope_m, square_all_arcs, square_arc, square_evaluator};
pub use triangoloid::{
    triangoloid_arc, triangoloid_internal_guess, triangoloid_kappa, triangoloid_zeta, AspectRatios, InternalGuess,
};

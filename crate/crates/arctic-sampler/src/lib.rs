//! Exact uniform sampling of ice-point configurations by monotone coupling
//! from the past, with refinement and density statistics.

mod cftp;
mod error;
mod frozen;
mod glued;
mod height;
mod monotone;
mod stats;

pub use cftp::{cftp_sample, flip, Cftp, RandomTape, LANES, MAX_EPOCH};
pub use error::SamplerError;
pub use frozen::{arc_coverage, distance_to_polylines, fit_slope, frozen_boundary, Polyline, SMOOTH_RADIUS};
pub use glued::{default_sweeps, flip_chain, transfer_sampler, triangoloid_samples, triangoloid_seed_config, uniform_below, GluedMethod};
pub use height::{FaceGrid, HeightFunction, Plaquette};
pub use monotone::{glued_check, monotonicity_check, try_face_flip, GluedReport, MonotonicityReport, CHECK_LIMIT};
pub use stats::{collect_stats, sample_configs, trace_path, SampleStats, SamplingMethod};

//! Topological and naive motivic zeta functions: stratum contributions,
//! resolution formulas and twist bundles.

pub mod assembly;
pub mod bundle;
pub mod resolution;
pub mod stratum;

pub use assembly::{stratified_naive_motivic, stratified_topological, stratified_twisted};
pub use bundle::{bundle_from_resolution, ZetaBundle};
pub use resolution::{
    check_z_at_zero, resolution_naive_motivic, resolution_topological, z_at_zero, Divisor,
    ResolutionData, Stratum, StratumClass,
};
pub use stratum::{
    lattice_series_oracle, stratum_naive_motivic, stratum_topological,
    stratum_twisted_topological, StratumZeta,
};

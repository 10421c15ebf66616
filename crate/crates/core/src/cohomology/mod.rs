//! Free-resolution fragments over group rings and finite-window experiments
//! on the maps they induce.

mod complex;
mod density;
mod distance;
mod invariant;
mod singular;
mod truncate;

pub use complex::{Builtin, ComplexFile, ComplexSpec, ComposeCheck};
pub use density::{
    composed_density, density_experiment, recipe_n, ComposedReport, DensityReport, NSelection,
    StageReport, MAX_AVERAGING_N,
};
pub use distance::{distance_to_image, distance_with, DistanceOptions, DistanceReport};
pub use invariant::{invariant_vectors, InvariantReport};
pub use singular::{smallest_singular_value, smallest_singular_value_with_cap, DEFAULT_DENSE_CAP};
pub use truncate::{truncate, truncate_with_cap, TruncatedOperator, WindowPolicy, DEFAULT_NNZ_CAP};

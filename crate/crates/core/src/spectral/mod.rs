//! Spectral radius, Perron vectors and weight classes.

mod bounds;
mod certificate;
mod classify;
mod constants;
mod power;

pub use bounds::{lambda_bounds, s_nk_lambda_closed_form, sqrt_kn};
pub use certificate::{rayleigh_certificate, RayleighCertificate};
pub use classify::{classify_vertices, LayerClasses, RootedLayers, WeightClassification};
pub use constants::{alpha_bound, choose_constants, delta_of, epsilon_bound, eta_bound, Constants};
pub use power::{
    spectral_radius, spectral_radius_capped, spectral_radius_from, SpectralResult, DEFAULT_MAX_ITERS,
};

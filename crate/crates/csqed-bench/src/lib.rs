//! Shared fixtures for the kernel benchmarks.

use csqed::{DipolePair, EvolutionSettings, GeometryParams, Method, SummationControl};

pub const ISO: [f64; 3] = [0.577_350_269_189_625_8; 3];

/// The reference conical scenario (nu = 2, both distances 1/2).
pub fn reference_geometry() -> GeometryParams {
    GeometryParams::new(2.0, 0.5, 0.5).expect("valid geometry")
}

/// A far-from-string geometry with a long mode sum.
pub fn wide_geometry() -> GeometryParams {
    GeometryParams::new(2.0, 8.0, 0.5).expect("valid geometry")
}

pub fn isotropic_pair() -> DipolePair {
    DipolePair::new(ISO, ISO).expect("unit dipoles")
}

pub fn default_control() -> SummationControl {
    SummationControl::default()
}

pub fn evolution(method: Method) -> EvolutionSettings {
    EvolutionSettings::new(30.0, 0.005, method).expect("valid settings")
}

//! Scattering amplitudes, transmission resonances and quasi-normal
//! wavenumbers for a catalog of exactly solvable one-dimensional potentials.
//!
//! Closed-form, perturbative and asymptotic results live in [`potentials`] and
//! [`qnf`]; [`oracle`] recomputes amplitudes and poles numerically without
//! using any of those formulas.

pub mod oracle;
pub mod potentials;
pub mod qnf;
pub mod specfn;

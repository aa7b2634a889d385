//! Simulation and verification toolkit for the spectrum of `P + θQ`, the sum
//! of two Haar-random orthogonal projections.
//!
//! * [`specfun`]: Gamma, Bessel, Jacobi polynomials, hard-edge kernels,
//!   Tracy–Widom tables.
//! * [`ensembles`]: seeded samplers for projections, `P + θQ` and the
//!   equivalent Jacobi matrix model.
//! * [`spectra`]: the exact Jacobi ↔ `P + θQ` eigenvalue map and atom
//!   bookkeeping.
//! * [`densities`]: limiting spectral densities, supports, atoms and the
//!   quadrature engine.
//! * [`stats`]: Monte Carlo experiments (counting CLT, variance growth,
//!   hard edge, soft edge).
//! * [`cli`]: the `projsum` command-line front end.
//! * [`selftest`]: the acceptance checks, shared by the test suite and
//!   `projsum selftest`.

pub mod cli;
pub mod densities;
pub mod ensembles;
pub mod quad;
pub mod selftest;
pub mod specfun;
pub mod spectra;
pub mod stats;

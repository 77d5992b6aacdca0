//! Pseudo-density matrices of vacuum fluctuations between parallel plates.
//!
//! Each quantized slab mode `(j, k, l)` with a fermionic Matsubara index `n`
//! carries a 4×4 two-qubit pseudo-density matrix
//! `ρ̌ = (k̸ + m)γ⁰ / (4k⁰) = (I + χB) / 4`. This crate builds those matrices,
//! checks their algebra (trace, spectrum, pseudo-hermiticity, thermal form,
//! boosted-spinor eigenvectors, partial traces, non-separability), and
//! reproduces the parallel-plate Casimir energy two ways: a zeta-regularized
//! closed form and an exponential-cutoff oracle. The entropy pipeline then
//! assembles the regularized entropy functional and extrapolates `β⁻¹Š`.
//!
//! Module map:
//!
//! | module | contents |
//! |---|---|
//! | [`linalg`] | 2×2 / 4×4 complex matrices, eigen, SVD, log/exp, partial trace |
//! | [`clifford`] | Dirac-representation gamma matrices, slash, metric `𝔹` |
//! | [`modes`] | slab geometry, quantized momenta, Matsubara frequencies |
//! | [`pseudodensity`] | `ρ̌`, `B`, thermal form, spinors, entropies, separability |
//! | [`zetareg`] | Riemann/Hurwitz zeta, Bernoulli, digamma, regularized sums |
//! | [`casimir`] | closed-form and cutoff Casimir energies, SLP and zeta checks |
//! | [`entropyenergy`] | entropy functional, footnote identities, `β⁻¹Š` pipeline |

// Index loops mirror the matrix notation; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod casimir;
pub mod clifford;
pub mod entropyenergy;
pub mod error;
pub mod linalg;
pub mod modes;
pub mod par;
pub mod pseudodensity;
pub mod quad;
pub mod report;
pub mod sum;
pub mod zetareg;

pub use error::{Error, Result};
pub use linalg::{Matrix2C, Matrix4C, C64};
pub use modes::{FourMomentum, MatsubaraFamily, Mode, ModeWindow, SlabGeometry};

//! Dirac-representation gamma matrices.
//!
//! `γ⁰ = diag(1, 1, −1, −1)` and `γⁱ = [[0, σᵢ], [−σᵢ, 0]]`, signature
//! `(+, −, −, −)`. In this representation the computational basis `|i, j⟩`
//! (index `2i + j`) is the rest-frame spinor basis: the first qubit selects
//! the sign of the energy, the second the spin.

use crate::linalg::{c, Mat, Matrix2C, Matrix4C, Vector4C, ONE, ZERO};
use crate::modes::FourMomentum;

/// Minkowski metric `η^{μν}` with signature `(+, −, −, −)`.
pub fn eta(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

pub fn pauli() -> [Matrix2C; 3] {
    [
        Mat([[ZERO, ONE], [ONE, ZERO]]),
        Mat([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]),
        Mat([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBasis {
    pub gamma: [Matrix4C; 4],
    /// `𝔹 = γ¹γ²γ³`
    pub metric_b: Matrix4C,
    pub metric_b_inv: Matrix4C,
}

impl GammaBasis {
    pub fn gamma0(&self) -> &Matrix4C {
        &self.gamma[0]
    }

    /// `k_i γⁱ` for a spatial vector.
    pub fn spatial_contraction(&self, kvec: &[f64; 3]) -> Matrix4C {
        self.gamma[1] * kvec[0] + self.gamma[2] * kvec[1] + self.gamma[3] * kvec[2]
    }
}

pub fn dirac_basis() -> GammaBasis {
    let sigma = pauli();
    let mut gamma = [Matrix4C::zeros(); 4];
    gamma[0] = Matrix4C::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
    ]);
    for (i, s) in sigma.iter().enumerate() {
        let g = &mut gamma[i + 1];
        for a in 0..2 {
            for b in 0..2 {
                g.0[a][2 + b] = s.0[a][b];
                g.0[2 + a][b] = -s.0[a][b];
            }
        }
    }
    let metric_b = gamma[1] * gamma[2] * gamma[3];
    // 𝔹² = I, so 𝔹 is its own inverse; computed rather than assumed
    let metric_b_inv = metric_b
        .inverse()
        .expect("product of invertible gamma matrices is invertible");
    GammaBasis {
        gamma,
        metric_b,
        metric_b_inv,
    }
}

/// `k̸ = k⁰γ⁰ − k_x γ¹ − k_y γ² − k_z γ³`.
pub fn slash(k: &FourMomentum, basis: &GammaBasis) -> Matrix4C {
    basis.gamma[0].scale(k.k0) - basis.spatial_contraction(&k.kvec)
}

/// Computational-basis vector `|i, j⟩`.
pub fn basis_state(i: u8, j: u8) -> Vector4C {
    assert!(i < 2 && j < 2, "qubit indices must be 0 or 1");
    let mut v = [ZERO; 4];
    v[2 * i as usize + j as usize] = ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, Matrix4C};

    const TOL: f64 = 1e-14;

    #[test]
    fn clifford_relations() {
        let g = dirac_basis();
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = g.gamma[mu].anticommutator(&g.gamma[nu]);
                let expect = Matrix4C::identity() * (2.0 * eta(mu, nu));
                assert!(ac.max_abs_diff(&expect) <= TOL, "mu={mu} nu={nu}");
            }
        }
        assert!(g.gamma[0].anticommutator(&g.gamma[1]).max_abs() <= TOL);
        assert!((g.gamma[0] * g.gamma[0]).max_abs_diff(&Matrix4C::identity()) <= TOL);
    }

    #[test]
    fn hermiticity_pattern_traces_and_determinants() {
        let g = dirac_basis();
        assert!(g.gamma[0].is_hermitian(TOL));
        for i in 1..4 {
            assert!(g.gamma[i].adjoint().max_abs_diff(&(-g.gamma[i])) <= TOL);
            assert!((g.gamma[i] * g.gamma[0]).trace().norm() <= TOL);
        }
        for mu in 0..4 {
            assert!(g.gamma[mu].trace().norm() <= TOL);
            assert!((g.gamma[mu].det() - ONE).norm() <= TOL);
        }
    }

    #[test]
    fn metric_b_is_hermitian_involution() {
        // direct product of the constructed matrices: 𝔹† = 𝔹, 𝔹² = I
        let g = dirac_basis();
        let b = g.metric_b;
        assert!(b.is_hermitian(TOL));
        assert!((b * b).max_abs_diff(&Matrix4C::identity()) <= TOL);
        assert!(g.metric_b_inv.max_abs_diff(&b) <= TOL);
        for mu in 0..4 {
            // 𝔹 anticommutes with γ⁰ and commutes with the spatial gammas
            let sign = if mu == 0 { -1.0 } else { 1.0 };
            let lhs = b * g.gamma[mu];
            let rhs = g.gamma[mu] * b * sign;
            assert!(lhs.max_abs_diff(&rhs) <= TOL);
        }
    }

    #[test]
    fn slash_identities() {
        let g = dirac_basis();
        let p = FourMomentum::new([0.0, 0.0, 0.0], 2.5, 0.0).unwrap();
        assert!(slash(&p, &g).max_abs_diff(&g.gamma[0].scale(c(0.0, 2.5))) <= TOL);

        let p = FourMomentum::new([0.3, -1.2, 2.0], 1.7, 0.0).unwrap();
        let s = slash(&p, &g);
        let k2 = -1.7 * 1.7 - p.k_squared();
        assert!((s * s).max_abs_diff(&(Matrix4C::identity() * k2)) <= 1e-13);
        assert!(s.trace().norm() <= TOL);
    }

    #[test]
    fn basis_states() {
        assert_eq!(basis_state(0, 0), [ONE, ZERO, ZERO, ZERO]);
        assert_eq!(basis_state(1, 1), [ZERO, ZERO, ZERO, ONE]);
        for a in 0..4u8 {
            for b in 0..4u8 {
                let ip = inner(&basis_state(a / 2, a % 2), &basis_state(b / 2, b % 2));
                assert_eq!(ip, if a == b { ONE } else { ZERO });
            }
        }
    }
}

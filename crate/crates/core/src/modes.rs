//! Slab geometry, quantized momenta and Matsubara frequencies.
//!
//! Plates sit at `z = 0` and `z = L` with Dirichlet conditions; `x` and `y`
//! are periodic with periods `Lx`, `Ly`. Units are `ħ = c = 1`, so `β` is a
//! length.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlabGeometry {
    pub lx: f64,
    pub ly: f64,
    /// Plate separation.
    pub l: f64,
    pub beta: f64,
    pub mass: f64,
}

impl SlabGeometry {
    pub fn new(lx: f64, ly: f64, l: f64, beta: f64, mass: f64) -> Result<Self> {
        let g = Self {
            lx,
            ly,
            l,
            beta,
            mass,
        };
        g.validate()?;
        Ok(g)
    }

    /// Unit cell with the given separation, `β = 1` and `m = 0`.
    pub fn unit(l: f64) -> Self {
        Self {
            lx: 1.0,
            ly: 1.0,
            l,
            beta: 1.0,
            mass: 0.0,
        }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    pub fn with_mass(self, mass: f64) -> Self {
        Self { mass, ..self }
    }

    pub fn with_separation(self, l: f64) -> Self {
        Self { l, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("Lx", self.lx), ("Ly", self.ly), ("L", self.l), ("beta", self.beta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidGeometry(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "mass must be non-negative, got {}",
                self.mass
            )));
        }
        Ok(())
    }

    /// Dirichlet wave number `πl/L`.
    pub fn kz(&self, l: i64) -> f64 {
        PI * l as f64 / self.l
    }

    /// Spatial momentum `(2πj/Lx, 2πk/Ly, πl/L)`.
    pub fn kvec(&self, j: i64, k: i64, l: i64) -> [f64; 3] {
        [
            2.0 * PI * j as f64 / self.lx,
            2.0 * PI * k as f64 / self.ly,
            self.kz(l),
        ]
    }
}

/// Antiperiodic (fermionic) or periodic (bosonic) Euclidean time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatsubaraFamily {
    Fermionic,
    Bosonic,
}

impl MatsubaraFamily {
    /// `(2n+1)π/β` or `2πn/β`.
    pub fn frequency(self, n: i64, beta: f64) -> f64 {
        match self {
            MatsubaraFamily::Fermionic => (2 * n + 1) as f64 * PI / beta,
            MatsubaraFamily::Bosonic => 2.0 * n as f64 * PI / beta,
        }
    }
}

/// Spatial multi-index `(j, k, l)` plus Matsubara index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode {
    pub j: i64,
    pub k: i64,
    pub l: i64,
    pub n: i64,
}

impl Mode {
    pub fn new(j: i64, k: i64, l: i64, n: i64) -> Result<Self> {
        let m = Self { j, k, l, n };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 1 {
            return Err(Error::InvalidMode(format!(
                "Dirichlet index l must be >= 1, got {}",
                self.l
            )));
        }
        Ok(())
    }
}

/// Euclidean four-momentum `k^μ = (iω_n, k)` with its derived scalars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMomentum {
    /// `k⁰ = iω_n`
    pub k0: C64,
    pub kvec: [f64; 3],
    pub omega_n: f64,
    /// `√(|k|² + m²)`
    pub omega_k: f64,
    /// `ω_k / k⁰`
    pub chi: C64,
    pub mass: f64,
    pub mode: Option<Mode>,
}

impl FourMomentum {
    /// Momentum from raw components; used for off-slab test momenta.
    pub fn new(kvec: [f64; 3], omega_n: f64, mass: f64) -> Result<Self> {
        if omega_n == 0.0 || !omega_n.is_finite() {
            return Err(Error::ZeroFrequency);
        }
        let omega_k = (kvec[0] * kvec[0] + kvec[1] * kvec[1] + kvec[2] * kvec[2] + mass * mass).sqrt();
        Ok(Self {
            k0: c(0.0, omega_n),
            kvec,
            omega_n,
            omega_k,
            // ω_k / (iω_n) = −i ω_k/ω_n
            chi: c(0.0, -omega_k / omega_n),
            mass,
            mode: None,
        })
    }

    pub fn k_squared(&self) -> f64 {
        self.kvec.iter().map(|x| x * x).sum()
    }

    /// `ω_k² / ω_n²`
    pub fn frequency_ratio_squared(&self) -> f64 {
        (self.omega_k / self.omega_n).powi(2)
    }
}

pub fn momentum(geom: &SlabGeometry, mode: Mode) -> Result<FourMomentum> {
    momentum_with_family(geom, mode, MatsubaraFamily::Fermionic)
}

pub fn momentum_with_family(
    geom: &SlabGeometry,
    mode: Mode,
    family: MatsubaraFamily,
) -> Result<FourMomentum> {
    mode.validate()?;
    let omega_n = family.frequency(mode.n, geom.beta);
    let mut p = FourMomentum::new(geom.kvec(mode.j, mode.k, mode.l), omega_n, geom.mass)?;
    p.mode = Some(mode);
    Ok(p)
}

/// Symmetric truncation `|j| ≤ jmax`, `|k| ≤ kmax`, `1 ≤ l ≤ lmax`, `|n| ≤ nmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeWindow {
    pub jmax: u32,
    pub kmax: u32,
    pub lmax: u32,
    pub nmax: u32,
}

impl ModeWindow {
    pub fn new(jmax: u32, kmax: u32, lmax: u32, nmax: u32) -> Result<Self> {
        let w = Self {
            jmax,
            kmax,
            lmax,
            nmax,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.jmax < 1 || self.kmax < 1 || self.lmax < 1 || self.nmax < 1 {
            return Err(Error::InvalidWindow(format!(
                "all bounds must be >= 1, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.lmax as usize
            * (2 * self.jmax as usize + 1)
            * (2 * self.kmax as usize + 1)
            * (2 * self.nmax as usize + 1)
    }

    /// Mode at position `idx` of the enumeration order.
    pub fn mode_at(&self, idx: usize) -> Mode {
        let nj = 2 * self.jmax as usize + 1;
        let nk = 2 * self.kmax as usize + 1;
        let nn = 2 * self.nmax as usize + 1;
        let n = idx % nn;
        let rest = idx / nn;
        let k = rest % nk;
        let rest = rest / nk;
        let j = rest % nj;
        let l = rest / nj;
        Mode {
            j: j as i64 - self.jmax as i64,
            k: k as i64 - self.kmax as i64,
            l: l as i64 + 1,
            n: n as i64 - self.nmax as i64,
        }
    }
}

/// Iterator over a [`ModeWindow`]: `l` ascending, then `j`, `k`, `n`.
#[derive(Debug, Clone)]
pub struct ModeIter {
    window: ModeWindow,
    next: usize,
    end: usize,
}

impl Iterator for ModeIter {
    type Item = Mode;

    fn next(&mut self) -> Option<Mode> {
        if self.next >= self.end {
            return None;
        }
        let m = self.window.mode_at(self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.end - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ModeIter {}

/// Deterministic enumeration of every mode in the window.
///
/// The geometry does not change which modes exist; it is accepted so callers
/// can pair the stream with [`momentum`] without carrying it separately.
pub fn enumerate_modes(_geom: &SlabGeometry, window: ModeWindow) -> ModeIter {
    ModeIter {
        window,
        next: 0,
        end: window.count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_mode_at_unit_geometry() {
        let g = SlabGeometry::unit(1.0);
        let p = momentum(&g, Mode::new(0, 0, 1, 0).unwrap()).unwrap();
        assert_eq!(p.kvec, [0.0, 0.0, PI]);
        assert!((p.omega_k - PI).abs() < 1e-15);
        assert!((p.omega_n - PI).abs() < 1e-15);
        assert!((p.chi - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn transverse_mode_energy() {
        let g = SlabGeometry::unit(1.0);
        let p = momentum(&g, Mode::new(1, 0, 1, 0).unwrap()).unwrap();
        assert_eq!(p.kvec, [2.0 * PI, 0.0, PI]);
        assert!((p.omega_k - PI * 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn massive_pythagorean_triple() {
        let g = SlabGeometry::unit(PI / 4.0).with_mass(3.0);
        let p = momentum(&g, Mode::new(0, 0, 1, 0).unwrap()).unwrap();
        assert!((p.kvec[2] - 4.0).abs() < 1e-15);
        assert!((p.omega_k - 5.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_l_zero_and_bosonic_zero_frequency() {
        assert!(matches!(Mode::new(0, 0, 0, 0), Err(Error::InvalidMode(_))));
        let g = SlabGeometry::unit(1.0);
        let bad = Mode { j: 0, k: 0, l: 0, n: 0 };
        assert!(momentum(&g, bad).is_err());
        let m = Mode::new(0, 0, 1, 0).unwrap();
        assert_eq!(
            momentum_with_family(&g, m, MatsubaraFamily::Bosonic),
            Err(Error::ZeroFrequency)
        );
    }

    #[test]
    fn geometry_validation() {
        assert!(SlabGeometry::new(1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(SlabGeometry::new(1.0, 1.0, 1.0, 1.0, -1.0).is_err());
        assert!(SlabGeometry::new(1.0, 1.0, 1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn window_count_order_and_first_mode() {
        let g = SlabGeometry::unit(1.0);
        let w = ModeWindow::new(1, 1, 1, 1).unwrap();
        let modes: Vec<Mode> = enumerate_modes(&g, w).collect();
        assert_eq!(modes.len(), 27);
        assert_eq!(w.count(), 27);
        assert!(modes.iter().all(|m| m.l == 1));
        assert_eq!(modes[0], Mode { j: -1, k: -1, l: 1, n: -1 });

        let w = ModeWindow::new(2, 1, 3, 2).unwrap();
        let modes: Vec<Mode> = enumerate_modes(&g, w).collect();
        assert_eq!(modes.len(), 3 * 5 * 3 * 5);
        assert!(modes.iter().all(|m| m.l >= 1));
        let mut sorted = modes.clone();
        sorted.sort_by_key(|m| (m.l, m.j, m.k, m.n));
        assert_eq!(sorted, modes);
    }

    #[test]
    fn window_requires_positive_bounds() {
        assert!(ModeWindow::new(0, 1, 1, 1).is_err());
    }

    #[test]
    fn bosonic_and_fermionic_frequencies() {
        assert!((MatsubaraFamily::Fermionic.frequency(-1, 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((MatsubaraFamily::Bosonic.frequency(3, 2.0) - 3.0 * PI).abs() < 1e-15);
    }
}

//! Dense complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Everything here is a pure function on `Copy` value types. Eigenvalues come
//! from a shifted complex QR iteration on the Hessenberg form; eigenvectors
//! are extracted as null spaces of `M - λI` through a one-sided Jacobi SVD,
//! which also decides the multiplicity of each (clustered) eigenvalue.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for identities that hold exactly in exact arithmetic.
pub const ALG_TOL: f64 = 1e-12;
/// Tolerance for spectral reconstructions (eigen, log, exp).
pub const SPEC_TOL: f64 = 1e-10;

/// Relative distance under which QR eigenvalues are merged into one cluster.
const CLUSTER_TOL: f64 = 1e-7;
/// Relative singular-value threshold for null-space membership.
const NULL_TOL: f64 = 1e-9;
const MAX_QR_ITERATIONS: usize = 200;
const MAX_JACOBI_SWEEPS: usize = 80;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat<const N: usize>(
    #[serde(with = "serde_rows")]
    pub [[C64; N]; N],
);

pub type Matrix4C = Mat<4>;
pub type Matrix2C = Mat<2>;
pub type Vector<const N: usize> = [C64; N];
pub type Vector4C = [C64; 4];

mod serde_rows {
    use super::C64;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(
        rows: &[[C64; N]; N],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let nested: Vec<Vec<C64>> = rows.iter().map(|r| r.to_vec()).collect();
        nested.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        d: D,
    ) -> Result<[[C64; N]; N], D::Error> {
        let nested: Vec<Vec<C64>> = Vec::deserialize(d)?;
        if nested.len() != N || nested.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} matrix")));
        }
        let mut out = [[C64::new(0.0, 0.0); N]; N];
        for (i, row) in nested.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out[i][j] = v;
            }
        }
        Ok(out)
    }
}

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Mat<N> {
    pub fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_diag(diag: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = diag[i];
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = c(rows[i][j], 0.0);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector<N>; N]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..N {
                m.0[i][j] = col[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector<N> {
        let mut v = [ZERO; N];
        for i in 0..N {
            v[i] = self.0[i][j];
        }
        v
    }

    /// Outer product `u v†`.
    pub fn outer(u: &Vector<N>, v: &Vector<N>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0_f64, |acc, v| acc.max(v.norm()))
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn mul_vec(&self, v: &Vector<N>) -> Vector<N> {
        let mut out = [ZERO; N];
        for i in 0..N {
            out[i] = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// LU decomposition with partial pivoting: returns the determinant.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for k in 0..N {
            let pivot = (k..N)
                .max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm()))
                .unwrap_or(k);
            if a[pivot][k] == ZERO {
                return ZERO;
            }
            if pivot != k {
                a.swap(pivot, k);
                det = -det;
            }
            det *= a[k][k];
            for i in (k + 1)..N {
                let factor = a[i][k] / a[k][k];
                for j in k..N {
                    let sub = factor * a[k][j];
                    a[i][j] -= sub;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..N {
            let pivot = (k..N)
                .max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm()))
                .unwrap_or(k);
            if a[pivot][k].norm() <= f64::EPSILON * scale * 1e-4 {
                return Err(Error::Singular);
            }
            a.swap(pivot, k);
            inv.swap(pivot, k);
            let p = ONE / a[k][k];
            for j in 0..N {
                a[k][j] *= p;
                inv[k][j] *= p;
            }
            for i in 0..N {
                if i != k {
                    let factor = a[i][k];
                    if factor != ZERO {
                        for j in 0..N {
                            let (ak, ik) = (a[k][j], inv[k][j]);
                            a[i][j] -= factor * ak;
                            inv[i][j] -= factor * ik;
                        }
                    }
                }
            }
        }
        Ok(Mat(inv))
    }

    /// Characteristic polynomial coefficients by Faddeev–LeVerrier.
    ///
    /// Returns `[c_0, …, c_N]` with `det(λI − M) = Σ c_k λ^k` and `c_N = 1`.
    pub fn charpoly(&self) -> Vec<C64> {
        let mut coeffs = vec![ZERO; N + 1];
        coeffs[N] = ONE;
        let mut mk = Self::zeros();
        for k in 1..=N {
            let shifted = mk + Self::identity().scale(coeffs[N - k + 1]);
            mk = *self * shifted;
            coeffs[N - k] = -mk.trace() / k as f64;
        }
        coeffs
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for Mat<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<C64> for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Mul<f64> for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(c(rhs, 0.0))
    }
}

pub fn mat_mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    *a * *b
}

pub fn vec_norm<const N: usize>(v: &Vector<N>) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `u† v`
pub fn inner<const N: usize>(u: &Vector<N>, v: &Vector<N>) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn kron(a: &Matrix2C, b: &Matrix2C) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + j][2 * k + l] = a.0[i][k] * b.0[j][l];
                }
            }
        }
    }
    m
}

/// Which qubit of `|i, j⟩` (index `2i + j`) is traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subsystem {
    First,
    Second,
}

pub fn partial_trace(m: &Matrix4C, which: Subsystem) -> Matrix2C {
    let mut out = Matrix2C::zeros();
    for a in 0..2 {
        for b in 0..2 {
            out.0[a][b] = match which {
                Subsystem::First => m.0[a][b] + m.0[2 + a][2 + b],
                Subsystem::Second => m.0[2 * a][2 * b] + m.0[2 * a + 1][2 * b + 1],
            };
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Singular value decomposition (one-sided Jacobi)

#[derive(Debug, Clone, Copy)]
pub struct Svd<const N: usize> {
    /// Descending, non-negative.
    pub singular_values: [f64; N],
    pub u: Mat<N>,
    pub v: Mat<N>,
}

impl<const N: usize> Svd<N> {
    pub fn reconstruct(&self) -> Mat<N> {
        let mut s = Mat::<N>::zeros();
        for i in 0..N {
            s.0[i][i] = c(self.singular_values[i], 0.0);
        }
        self.u * s * self.v.adjoint()
    }

    /// Number of singular values above `tol · σ₁`.
    pub fn rank(&self, tol: f64) -> usize {
        let cutoff = tol * self.singular_values[0];
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }
}

pub fn svd<const N: usize>(m: &Mat<N>) -> Svd<N> {
    // columns of a, rotated until mutually orthogonal
    let mut a = *m;
    let mut v = Mat::<N>::identity();
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..N {
            for q in (p + 1)..N {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..N {
                    alpha += a.0[i][p].norm_sqr();
                    beta += a.0[i][q].norm_sqr();
                    gamma += a.0[i][p].conj() * a.0[i][q];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..N {
                    let ap = a.0[i][p];
                    let aq = a.0[i][q] * phase.conj();
                    a.0[i][p] = ap * cs - aq * sn;
                    a.0[i][q] = ap * sn + aq * cs;
                    let vp = v.0[i][p];
                    let vq = v.0[i][q] * phase.conj();
                    v.0[i][p] = vp * cs - vq * sn;
                    v.0[i][q] = vp * sn + vq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms = [0.0; N];
    for (j, n) in norms.iter_mut().enumerate() {
        *n = (0..N).map(|i| a.0[i][j].norm_sqr()).sum::<f64>().sqrt();
    }
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));

    let mut singular_values = [0.0; N];
    let mut ucols = [[ZERO; N]; N];
    let mut vcols = [[ZERO; N]; N];
    let sigma_max = norms[order[0]];
    let mut filled = 0;
    for (slot, &j) in order.iter().enumerate() {
        singular_values[slot] = norms[j];
        vcols[slot] = v.column(j);
        if norms[j] > sigma_max * f64::EPSILON * N as f64 && norms[j] > 0.0 {
            let col = a.column(j);
            for i in 0..N {
                ucols[slot][i] = col[i] / norms[j];
            }
            filled += 1;
        }
    }
    // complete U for (numerically) zero singular values
    if filled < N {
        let mut basis: Vec<Vector<N>> = ucols[..filled].to_vec();
        let mut e = 0;
        while basis.len() < N && e < N {
            let mut cand = [ZERO; N];
            cand[e] = ONE;
            e += 1;
            for _ in 0..2 {
                for b in &basis {
                    let proj = inner(b, &cand);
                    for i in 0..N {
                        cand[i] -= proj * b[i];
                    }
                }
            }
            let n = vec_norm(&cand);
            if n > 1e-8 {
                for x in cand.iter_mut() {
                    *x /= n;
                }
                basis.push(cand);
            }
        }
        for (slot, col) in basis.into_iter().enumerate().skip(filled) {
            ucols[slot] = col;
        }
    }

    Svd {
        singular_values,
        u: Mat::from_columns(&ucols),
        v: Mat::from_columns(&vcols),
    }
}

pub fn svd4(m: &Matrix4C) -> Svd<4> {
    svd(m)
}

// ---------------------------------------------------------------------------
// Eigenvalues

fn hessenberg<const N: usize>(m: &Mat<N>) -> Mat<N> {
    let mut h = *m;
    if N < 3 {
        return h;
    }
    for k in 0..N - 2 {
        let norm_x = ((k + 1)..N)
            .map(|i| h.0[i][k].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h.0[k + 1][k];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        let mut v = [ZERO; N];
        for i in (k + 1)..N {
            v[i] = h.0[i][k];
        }
        v[k + 1] -= alpha;
        let vn = vec_norm(&v);
        if vn == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        // h <- (I - 2 v v†) h
        for j in 0..N {
            let dot: C64 = ((k + 1)..N).map(|i| v[i].conj() * h.0[i][j]).sum();
            for i in (k + 1)..N {
                h.0[i][j] -= 2.0 * v[i] * dot;
            }
        }
        // h <- h (I - 2 v v†)
        for i in 0..N {
            let dot: C64 = ((k + 1)..N).map(|j| h.0[i][j] * v[j]).sum();
            for j in (k + 1)..N {
                h.0[i][j] -= 2.0 * dot * v[j].conj();
            }
        }
        for i in (k + 2)..N {
            h.0[i][k] = ZERO;
        }
    }
    h
}

/// Eigenvalues by shifted complex QR on the Hessenberg form (unordered).
pub fn eigenvalues<const N: usize>(m: &Mat<N>) -> Result<[C64; N]> {
    let mut h = hessenberg(m);
    let norm = m.frobenius_norm();
    let floor = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let mut hi = N - 1;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h.0[l - 1][l - 1].norm() + h.0[l][l].norm();
            if h.0[l][l - 1].norm() <= f64::EPSILON * s || h.0[l][l - 1].norm() <= floor {
                h.0[l][l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iterations += 1;
        since_deflation += 1;
        if iterations > MAX_QR_ITERATIONS {
            return Err(Error::NoConvergence { iterations });
        }

        let a = h.0[hi - 1][hi - 1];
        let b = h.0[hi - 1][hi];
        let cc = h.0[hi][hi - 1];
        let d = h.0[hi][hi];
        let mu = if since_deflation % 11 == 10 {
            // exceptional shift
            d + c(cc.norm(), cc.norm() * 0.75)
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * cc).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in l..=hi {
            h.0[k][k] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h.0[k][k];
            let y = h.0[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 { (ONE, ZERO) } else { (x / r, y / r) };
            for j in k..=hi {
                let top = h.0[k][j];
                let bot = h.0[k + 1][j];
                h.0[k][j] = cs.conj() * top + sn.conj() * bot;
                h.0[k + 1][j] = -sn * top + cs * bot;
            }
            rotations.push((cs, sn));
        }
        for (offset, (cs, sn)) in rotations.into_iter().enumerate() {
            let k = l + offset;
            for i in l..=hi.min(k + 2) {
                let left = h.0[i][k];
                let right = h.0[i][k + 1];
                h.0[i][k] = left * cs + right * sn;
                h.0[i][k + 1] = -left * sn.conj() + right * cs.conj();
            }
        }
        for k in l..=hi {
            h.0[k][k] += mu;
        }
    }
    let mut out = [ZERO; N];
    for (i, v) in out.iter_mut().enumerate() {
        *v = h.0[i][i];
    }
    Ok(out)
}

/// Eigenvalues with multiplicities and a complete eigenbasis.
///
/// Eigenpairs are sorted by real part, then imaginary part; each eigenvector
/// has unit norm and its largest component real and positive.
#[derive(Debug, Clone, Copy)]
pub struct EigenSystem<const N: usize> {
    pub eigenvalues: [C64; N],
    pub eigenvectors: [Vector<N>; N],
    /// `‖M V − V Λ‖_F / ‖M‖_F`
    pub residual: f64,
}

impl<const N: usize> EigenSystem<N> {
    /// Matrix with the eigenvectors as columns.
    pub fn vectors_matrix(&self) -> Mat<N> {
        Mat::from_columns(&self.eigenvectors)
    }

    /// Distinct eigenvalues with their multiplicities, merged within `tol`.
    pub fn distinct(&self, tol: f64) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize)> = Vec::new();
        for &lam in &self.eigenvalues {
            match out.iter_mut().find(|(mu, _)| (*mu - lam).norm() <= tol) {
                Some(entry) => entry.1 += 1,
                None => out.push((lam, 1)),
            }
        }
        out
    }

    /// Apply a scalar function to the spectrum: `V f(Λ) V⁻¹`.
    pub fn map<F: Fn(C64) -> C64>(&self, f: F) -> Result<Mat<N>> {
        let v = self.vectors_matrix();
        let vinv = v.inverse()?;
        let mut d = [ZERO; N];
        for (i, x) in d.iter_mut().enumerate() {
            *x = f(self.eigenvalues[i]);
        }
        Ok(v * Mat::from_diag(d) * vinv)
    }
}

fn normalize_phase<const N: usize>(v: &mut Vector<N>) {
    let n = vec_norm(v);
    if n == 0.0 {
        return;
    }
    let (idx, _) = v
        .iter()
        .enumerate()
        .fold((0, -1.0), |(bi, bm), (i, x)| {
            if x.norm() > bm * (1.0 + 1e-12) {
                (i, x.norm())
            } else {
                (bi, bm)
            }
        });
    let phase = v[idx] / v[idx].norm();
    for x in v.iter_mut() {
        *x = *x * phase.conj() / n;
    }
}

fn cluster(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &r) in roots.iter().enumerate() {
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Right singular vectors of `M − λI` spanning its numerical null space
/// (the `k` smallest), together with the largest of their singular values.
fn null_space<const N: usize>(m: &Mat<N>, lambda: C64, k: usize) -> (Vec<Vector<N>>, f64) {
    let shifted = *m - Mat::<N>::identity().scale(lambda);
    let s = svd(&shifted);
    let vectors = (N - k..N).map(|j| s.v.column(j)).collect();
    (vectors, s.singular_values[N - k])
}

pub fn eigen<const N: usize>(m: &Mat<N>) -> Result<EigenSystem<N>> {
    let raw = eigenvalues(m)?;
    let norm = m.frobenius_norm();
    let scale = norm.max(f64::MIN_POSITIVE);

    let mut pairs: Vec<(C64, Vector<N>)> = Vec::with_capacity(N);
    for group in cluster(&raw, CLUSTER_TOL * scale) {
        let k = group.len();
        let mean = group.iter().map(|&i| raw[i]).sum::<C64>() / k as f64;
        let (basis, worst) = null_space(m, mean, k);
        if worst <= NULL_TOL * scale {
            // invariant subspace: refine the eigenvalue from V† M V
            let refined = basis
                .iter()
                .map(|v| inner(v, &m.mul_vec(v)))
                .sum::<C64>()
                / k as f64;
            for v in basis {
                pairs.push((refined, v));
            }
        } else {
            // not a genuine multiple eigenvalue: one null vector per member
            for &i in &group {
                let (mut single, _) = null_space(m, raw[i], 1);
                pairs.push((raw[i], single.pop().unwrap_or([ZERO; N])));
            }
        }
    }

    pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let mut eigenvalues = [ZERO; N];
    let mut eigenvectors = [[ZERO; N]; N];
    for (i, (lam, mut v)) in pairs.into_iter().enumerate() {
        normalize_phase(&mut v);
        eigenvalues[i] = lam;
        eigenvectors[i] = v;
    }

    let vm = Mat::from_columns(&eigenvectors);
    let residual = (*m * vm - vm * Mat::from_diag(eigenvalues)).frobenius_norm() / scale;
    let basis_sv = svd(&vm).singular_values;
    if residual > SPEC_TOL || basis_sv[N - 1] < 1e-8 * basis_sv[0] {
        return Err(Error::NonDiagonalizable {
            residual: residual.max(1.0 - basis_sv[N - 1]),
        });
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// Principal-branch matrix logarithm.
pub fn mat_log<const N: usize>(m: &Mat<N>) -> Result<Mat<N>> {
    let es = eigen(m)?;
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    for lam in es.eigenvalues {
        if lam.norm() <= ALG_TOL * scale {
            return Err(Error::LogOfSingular {
                modulus: lam.norm(),
            });
        }
        if lam.re < 0.0 && lam.im.abs() <= ALG_TOL * lam.norm() {
            return Err(Error::BranchCutEigenvalue {
                re: lam.re,
                im: lam.im,
            });
        }
    }
    es.map(|z| z.ln())
}

pub fn mat_exp<const N: usize>(m: &Mat<N>) -> Result<Mat<N>> {
    eigen(m)?.map(|z| z.exp())
}

/// Closed-form eigenvalues of a 2×2 matrix.
pub fn eigenvalues2(m: &Matrix2C) -> [C64; 2] {
    let half_tr = m.trace() * 0.5;
    let disc = (half_tr * half_tr - m.det()).sqrt();
    let (a, b) = (half_tr + disc, half_tr - disc);
    // recompute the smaller root from the product to avoid cancellation
    let det = m.det();
    if a.norm() >= b.norm() && a != ZERO {
        [a, det / a]
    } else if b != ZERO {
        [det / b, b]
    } else {
        [a, b]
    }
}

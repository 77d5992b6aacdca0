//! Special functions and regularized spectral sums.
//!
//! Bernoulli numbers and polynomials are computed in exact rational
//! arithmetic and rounded once, so values such as `ζ_H(−2p, ½)` come out as
//! an exact `0.0`. Zeta values at non-integer arguments use Euler–Maclaurin
//! with 20 direct terms and 10 Bernoulli corrections.
//!
//! Regularized sums return a [`RegularizedValue`] that records how the number
//! was obtained and which conventions went into it.

use std::f64::consts::{LN_2, PI};
use std::sync::{LazyLock, Mutex, PoisonError};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{MatsubaraFamily, SlabGeometry};
use crate::quad;
use crate::sum::NeumaierSum;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Highest Bernoulli polynomial order accepted.
pub const MAX_BERNOULLI_ORDER: usize = 60;

const EM_DIRECT_TERMS: usize = 20;
const EM_CORRECTIONS: usize = 10;

/// Provenance stamp for the fermionic regularized mode count.
pub const SUM_ONE_CONVENTION: &str = "sum_n 1 = 2 zeta_H(0, 1/2) = 0 (fermionic)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    ClosedForm,
    ZetaContinuation,
    TruncatedSum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizedValue {
    pub value: f64,
    pub scheme: Scheme,
    /// Non-negative; zero for closed forms and continuations.
    pub truncation_error: f64,
    pub provenance: Vec<&'static str>,
}

impl RegularizedValue {
    fn exact(value: f64, scheme: Scheme, provenance: Vec<&'static str>) -> Self {
        Self {
            value,
            scheme,
            truncation_error: 0.0,
            provenance,
        }
    }

    fn truncated(value: f64, truncation_error: f64, provenance: Vec<&'static str>) -> Self {
        Self {
            value,
            scheme: Scheme::TruncatedSum,
            truncation_error: truncation_error.abs(),
            provenance,
        }
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials

/// Exact `B_0, B_1, …`, extended on demand so low orders stay cheap.
static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

fn with_bernoulli<T>(n: usize, f: impl FnOnce(&[BigRational]) -> T) -> T {
    let mut b = BERNOULLI.lock().unwrap_or_else(PoisonError::into_inner);
    if b.is_empty() {
        b.push(BigRational::one());
    }
    // B_m = −1/(m+1) Σ_{k<m} C(m+1, k) B_k, with B_1 = −1/2
    for m in b.len()..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            // C(m+1, k+1) = C(m+1, k) (m+1−k)/(k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    f(&b[..=n])
}

/// `B_0 ..= B_20` as floats for the asymptotic series.
static BERNOULLI_F64: LazyLock<Vec<f64>> =
    LazyLock::new(|| with_bernoulli(2 * EM_CORRECTIONS, |b| b.iter().map(to_f64).collect()));

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Unsupported(format!("non-finite argument {x}")))
}

/// Bernoulli number `B_n` (with `B_1 = −1/2`).
pub fn bernoulli_number(n: usize) -> Result<f64> {
    if n > MAX_BERNOULLI_ORDER + 1 {
        return Err(Error::OrderTooLarge(n));
    }
    Ok(with_bernoulli(n, |b| to_f64(&b[n])))
}

fn bernoulli_poly_exact(n: usize, x: &BigRational) -> BigRational {
    // B_n(x) = Σ_k C(n, k) B_k x^{n−k}, Horner in x
    let mut binom = BigInt::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    with_bernoulli(n, |b| {
        for (k, bk) in b.iter().enumerate() {
            coeffs.push(BigRational::from_integer(binom.clone()) * bk);
            binom = &binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    });
    // coeffs[k] multiplies x^{n−k}
    let mut acc = BigRational::zero();
    for coeff in coeffs.iter() {
        acc = acc * x + coeff;
    }
    acc
}

/// Bernoulli polynomial `B_n(x)`, evaluated exactly and rounded once.
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64> {
    if n > MAX_BERNOULLI_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    Ok(to_f64(&bernoulli_poly_exact(n, &exact(x)?)))
}

// ---------------------------------------------------------------------------
// Zeta functions

fn non_positive_integer(s: f64) -> Option<usize> {
    (s <= 0.0 && s == s.floor() && s > -(MAX_BERNOULLI_ORDER as f64)).then(|| (-s) as usize)
}

/// Euler–Maclaurin evaluation of `Σ_{n≥0} (n + a)^{−s}` (continued in `s`).
fn hurwitz_euler_maclaurin(s: f64, a: f64) -> f64 {
    let mut acc = NeumaierSum::new();
    for n in 0..EM_DIRECT_TERMS {
        acc.add((n as f64 + a).powf(-s));
    }
    let x = EM_DIRECT_TERMS as f64 + a;
    acc.add(x.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * x.powf(-s));
    let mut rising = s;
    let mut factorial = 2.0;
    let mut xpow = x.powf(-s - 1.0);
    for k in 1..=EM_CORRECTIONS {
        acc.add(BERNOULLI_F64[2 * k] / factorial * rising * xpow);
        let kk = 2.0 * k as f64;
        rising *= (s + kk - 1.0) * (s + kk);
        factorial *= (kk + 1.0) * (kk + 2.0);
        xpow /= x * x;
    }
    acc.value()
}

/// Hurwitz zeta `ζ_H(s, a) = Σ_{n≥0} (n + a)^{−s}`, analytically continued.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidA(a));
    }
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    if let Some(n) = non_positive_integer(s) {
        // ζ_H(−n, a) = −B_{n+1}(a)/(n+1)
        let b = bernoulli_poly_exact(n + 1, &exact(a)?);
        return Ok(to_f64(&(-b / BigRational::from_integer(BigInt::from(n + 1)))));
    }
    Ok(hurwitz_euler_maclaurin(s, a))
}

/// Riemann zeta on the real line.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    if let Some(n) = non_positive_integer(s) {
        // ζ(−n) = −B_{n+1}/(n+1) for n ≥ 1, −½ at n = 0
        if n == 0 {
            return Ok(-0.5);
        }
        return Ok(with_bernoulli(n + 1, |b| {
            to_f64(&(-&b[n + 1] / BigRational::from_integer(BigInt::from(n + 1))))
        }));
    }
    if s < 0.5 {
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let reflected = hurwitz_euler_maclaurin(1.0 - s, 1.0);
        return Ok(2f64.powf(s)
            * PI.powf(s - 1.0)
            * (0.5 * PI * s).sin()
            * gamma(1.0 - s)
            * reflected);
    }
    Ok(hurwitz_euler_maclaurin(s, 1.0))
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Digamma `ψ(s)` by upward recurrence and the asymptotic series.
pub fn digamma(s: f64) -> Result<f64> {
    if s <= 0.0 && s == s.floor() {
        return Err(Error::PoleAtNonPositiveInteger(s));
    }
    if s < -10.0 {
        // ψ(s) = ψ(1 − s) − π cot(πs)
        return Ok(digamma(1.0 - s)? - PI / (PI * s).tan());
    }
    let mut acc = NeumaierSum::new();
    let mut x = s;
    while x < 10.0 {
        acc.add(-1.0 / x);
        x += 1.0;
    }
    acc.add(x.ln());
    acc.add(-0.5 / x);
    let x2 = x * x;
    let mut xpow = x2;
    for k in 1..=8 {
        acc.add(-BERNOULLI_F64[2 * k] / (2.0 * k as f64 * xpow));
        xpow *= x2;
    }
    Ok(acc.value())
}

// ---------------------------------------------------------------------------
// Regularized spectral sums

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!("beta must be positive, got {beta}")))
    }
}

/// `Σ_{m≥0} (u0 + d·m)^{−q}` tail by Euler–Maclaurin; returns (value, error).
fn power_tail(q: f64, u0: f64, d: f64) -> (f64, f64) {
    let integral = u0.powf(1.0 - q) / (d * (q - 1.0));
    let f0 = u0.powf(-q);
    let f1 = -q * d * u0.powf(-q - 1.0);
    let f3 = -q * (q + 1.0) * (q + 2.0) * d.powi(3) * u0.powf(-q - 3.0);
    let f5 = -q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) * d.powi(5) * u0.powf(-q - 5.0);
    let value = integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0 - f5 / 30240.0;
    (value, (f5 / 30240.0).abs().max(f64::EPSILON * value.abs()))
}

/// `𝖹_β(q) = Σ_n |ω_n|^{−q}` through Hurwitz/Riemann continuation.
///
/// Fermionic: `2 (2π/β)^{−q} ζ_H(q, ½)`; bosonic (n = 0 excluded):
/// `2 (2π/β)^{−q} ζ(q)`. Both vanish identically at `q = −2p`.
pub fn z_beta(q: f64, beta: f64, family: MatsubaraFamily) -> Result<RegularizedValue> {
    check_beta(beta)?;
    if q == 1.0 {
        return Err(Error::PoleDetected { location: 1.0 });
    }
    let prefactor = 2.0 * (2.0 * PI / beta).powf(-q);
    let (zeta, provenance) = match family {
        MatsubaraFamily::Fermionic => (
            hurwitz_zeta(q, 0.5)?,
            vec!["fermionic frequencies (2n+1)pi/beta", "hurwitz zeta continuation at a = 1/2"],
        ),
        MatsubaraFamily::Bosonic => (
            riemann_zeta(q)?,
            vec!["bosonic frequencies 2 pi n/beta", "n = 0 excluded", "riemann zeta continuation"],
        ),
    };
    let value = if zeta == 0.0 { 0.0 } else { prefactor * zeta };
    Ok(RegularizedValue::exact(value, Scheme::ZetaContinuation, provenance))
}

/// Direct evaluation of `𝖹_β(q)` for convergent `q > 1`: `|n| ≤ nmax` plus
/// an Euler–Maclaurin tail.
pub fn z_beta_truncated(
    q: f64,
    beta: f64,
    family: MatsubaraFamily,
    nmax: u64,
) -> Result<RegularizedValue> {
    check_beta(beta)?;
    if !(q > 1.0) {
        return Err(Error::NonConvergent(format!("Z_beta({q}) diverges as a plain sum")));
    }
    let mut acc = NeumaierSum::new();
    let (base, u_tail, step) = match family {
        MatsubaraFamily::Fermionic => {
            // n and −n−1 give the same |ω_n|; odd integers 1, 3, …, 2nmax+1
            for m in (0..=nmax).rev() {
                acc.add(((2 * m + 1) as f64).powf(-q));
            }
            (PI / beta, (2 * nmax + 3) as f64, 2.0)
        }
        MatsubaraFamily::Bosonic => {
            for n in (1..=nmax).rev() {
                acc.add((n as f64).powf(-q));
            }
            (2.0 * PI / beta, (nmax + 1) as f64, 1.0)
        }
    };
    let (tail, err) = power_tail(q, u_tail, step);
    acc.add(tail);
    let scale = 2.0 * base.powf(-q);
    Ok(RegularizedValue::truncated(
        scale * acc.value(),
        scale * err,
        vec!["truncated Matsubara sum", "Euler-Maclaurin tail"],
    ))
}

/// Regularized number of Matsubara frequencies, `𝖹_β(0)`.
pub fn regularized_mode_count(family: MatsubaraFamily) -> RegularizedValue {
    let mut v = z_beta(0.0, 1.0, family).expect("q = 0 is regular");
    if family == MatsubaraFamily::Fermionic {
        v.provenance.push(SUM_ONE_CONVENTION);
    }
    v
}

/// Regularized `Σ_n ln ω_n²` from `−d/ds 𝖹_β(2s)` at `s = 0`.
///
/// Uses `ζ_H'(0, a) = ln Γ(a) − ½ ln 2π`. Fermionic gives `2 ln 2`,
/// bosonic (n ≠ 0) gives `2 ln β`.
pub fn matsubara_log_frequency_sum(beta: f64, family: MatsubaraFamily) -> Result<RegularizedValue> {
    check_beta(beta)?;
    let a = match family {
        MatsubaraFamily::Fermionic => 0.5,
        MatsubaraFamily::Bosonic => 1.0,
    };
    let zeta0 = hurwitz_zeta(0.0, a)?;
    let dzeta0 = ln_gamma(a) - 0.5 * (2.0 * PI).ln();
    let log_scale = (2.0 * PI / beta).ln();
    let value = -2.0 * (-2.0 * log_scale * zeta0 + 2.0 * dzeta0);
    Ok(RegularizedValue::exact(
        value,
        Scheme::ZetaContinuation,
        vec!["zeta-regularized log of Matsubara frequencies", "Lerch formula zeta_H'(0,a)"],
    ))
}

fn check_massless_pole(q: f64, geom: &SlabGeometry) -> Result<()> {
    geom.validate()?;
    if q == 2.0 || q == 3.0 {
        return Err(Error::PoleDetected { location: q });
    }
    Ok(())
}

/// Per-unit-area `𝖹(q) = Σ_k ω_k^{−q}` for massless modes between plates:
/// `(π/L)^{2−q} ζ(q−2) / (2π(q−2))`.
///
/// The transverse momenta are integrated in the continuum and the Dirichlet
/// sum is continued through the Riemann zeta function. Poles at `q = 2`
/// (transverse prefactor) and `q = 3` (zeta at 1).
pub fn z_spatial(q: f64, geom: &SlabGeometry) -> Result<RegularizedValue> {
    check_massless_pole(q, geom)?;
    if geom.mass != 0.0 {
        return Err(Error::Unsupported(
            "closed-form Z(q) needs m = 0; use z_spatial_truncated".into(),
        ));
    }
    let zeta = riemann_zeta(q - 2.0)?;
    let value = if zeta == 0.0 {
        0.0
    } else {
        (PI / geom.l).powf(2.0 - q) * zeta / (2.0 * PI * (q - 2.0))
    };
    Ok(RegularizedValue::exact(
        value,
        Scheme::ZetaContinuation,
        vec!["continuum transverse integral per unit area", "riemann zeta over Dirichlet l"],
    ))
}

/// Per-area `𝖹(q)` summed directly over `1 ≤ l ≤ lmax` (any mass), valid for
/// `q > 3`; the tail is a midpoint integral with its first correction as the
/// error estimate.
pub fn z_spatial_truncated(q: f64, geom: &SlabGeometry, lmax: u64) -> Result<RegularizedValue> {
    geom.validate()?;
    if !(q > 3.0) {
        return Err(Error::NonConvergent(format!("Z({q}) diverges as a plain sum")));
    }
    let m2 = geom.mass * geom.mass;
    let h = PI / geom.l;
    let f = |l: f64| ((h * l).powi(2) + m2).powf(1.0 - 0.5 * q);
    let mut acc = NeumaierSum::new();
    for l in (1..=lmax).rev() {
        acc.add(f(l as f64));
    }
    let start = lmax as f64 + 0.5;
    let tail = quad::integrate_half_line(f, start, 1e-14)?;
    acc.add(tail.value);
    // midpoint rule: Σ_{l>N} f(l) ≈ ∫_{N+½}^∞ f − f'(N+½)/24
    let df = (f(start + 1e-3) - f(start - 1e-3)) / 2e-3;
    acc.add(-df / 24.0);
    let prefactor = 1.0 / (2.0 * PI * (q - 2.0));
    Ok(RegularizedValue::truncated(
        prefactor * acc.value(),
        prefactor * (df.abs() / 24.0 * 1e-2 + tail.error_estimate),
        vec!["continuum transverse integral per unit area", "truncated Dirichlet sum"],
    ))
}

/// `Σ_{n∈ℤ} ln(1 + ω²/ω_n²)` over fermionic frequencies: `2 ln cosh(βω/2)`.
pub fn matsubara_log_sum(omega: f64, beta: f64) -> f64 {
    let x = (0.5 * beta * omega).abs();
    let closed = 2.0 * log_cosh(x);
    debug_assert!({
        let t = matsubara_log_sum_truncated(omega, beta, 2000);
        t.map(|t| (t.value - closed).abs() <= 1e-9 * closed.max(1.0)).unwrap_or(true)
    });
    closed
}

/// `ln cosh x`, stable for large `|x|`.
pub fn log_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - LN_2
}

/// `Σ_{m≥M} ln(1 + c/(2m+1)²)` by Euler–Maclaurin with the integral in
/// closed form; returns `(value, error estimate)`.
pub fn matsubara_log_tail(cc: f64, m_start: u64) -> (f64, f64) {
    let u = (2 * m_start + 1) as f64;
    let sc = cc.sqrt();
    // ∫_M^∞ ln(1 + c/(2m+1)²) dm with U = 2M + 1
    let integral = 0.5 * (2.0 * sc * (sc / u).atan() - u * (cc / (u * u)).ln_1p());
    let g0 = (cc / (u * u)).ln_1p();
    let g1 = -4.0 * cc / (u * (u * u + cc));
    let g3 = -192.0 * cc / u.powi(5);
    let tail = integral + 0.5 * g0 - g1 / 12.0 + g3 / 720.0;
    let err = (g3 / 720.0).abs() * (cc / (u * u)).max(1.0 / u);
    (tail, err)
}

/// The same sum as [`matsubara_log_sum`] taken term by term for
/// `|2n+1| ≤ 2nmax−1` with an analytic Euler–Maclaurin tail.
pub fn matsubara_log_sum_truncated(omega: f64, beta: f64, nmax: u64) -> Result<RegularizedValue> {
    check_beta(beta)?;
    if nmax == 0 {
        return Err(Error::NonConvergent("need at least one Matsubara term".into()));
    }
    let cc = (beta * omega / PI).powi(2);
    // g(m) = ln(1 + c/(2m+1)²); Σ_{n∈ℤ} = 2 Σ_{m≥0}
    let g = |u: f64| (cc / (u * u)).ln_1p();
    let mut acc = NeumaierSum::new();
    for m in (0..nmax).rev() {
        acc.add(g((2 * m + 1) as f64));
    }
    let (tail, err) = matsubara_log_tail(cc, nmax);
    acc.add(tail);
    Ok(RegularizedValue::truncated(
        2.0 * acc.value(),
        2.0 * err,
        vec!["fermionic frequencies (2n+1)pi/beta", "Euler-Maclaurin tail"],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0).unwrap(), 1.0);
        assert_eq!(bernoulli_number(1).unwrap(), -0.5);
        assert!((bernoulli_number(2).unwrap() - 1.0 / 6.0).abs() < 1e-17);
        assert!((bernoulli_number(4).unwrap() + 1.0 / 30.0).abs() < 1e-17);
        assert_eq!(bernoulli_number(7).unwrap(), 0.0);
        // B_20 = −174611/330
        assert_eq!(bernoulli_number(20).unwrap(), -174611.0 / 330.0);
    }

    #[test]
    fn bernoulli_polynomials() {
        assert_eq!(bernoulli_poly(0, 0.37).unwrap(), 1.0);
        assert_eq!(bernoulli_poly(1, 0.5).unwrap(), 0.0);
        assert!((bernoulli_poly(1, 0.3).unwrap() + 0.2).abs() < 1e-16);
        for p in 1..=10 {
            assert_eq!(bernoulli_poly(2 * p + 1, 0.5).unwrap(), 0.0, "p = {p}");
        }
        // B_2(x) = x² − x + 1/6
        let x = 0.8125;
        assert!((bernoulli_poly(2, x).unwrap() - (x * x - x + 1.0 / 6.0)).abs() < 1e-16);
        assert_eq!(bernoulli_poly(61, 0.5), Err(Error::OrderTooLarge(61)));
    }

    #[test]
    fn riemann_zeta_values() {
        assert!((riemann_zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(riemann_zeta(-3.0).unwrap(), 1.0 / 120.0);
        assert_eq!(riemann_zeta(-2.0).unwrap(), 0.0);
        assert_eq!(riemann_zeta(0.0).unwrap(), -0.5);
        assert_eq!(riemann_zeta(1.0), Err(Error::PoleAtOne));
        // ζ(3), Apéry's constant
        assert!((riemann_zeta(3.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-14);
        // ζ(1/2)
        assert!((riemann_zeta(0.5).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-12);
        // ζ(−1/2) via the functional equation
        assert!((riemann_zeta(-0.5).unwrap() + 0.207_886_224_977_354_57).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_zeta_values() {
        for p in 1..=10 {
            assert_eq!(hurwitz_zeta(-2.0 * p as f64, 0.5).unwrap(), 0.0);
        }
        assert_eq!(hurwitz_zeta(0.0, 0.5).unwrap(), 0.0);
        assert!((hurwitz_zeta(3.0, 1.0).unwrap() - riemann_zeta(3.0).unwrap()).abs() < 1e-15);
        let lhs = hurwitz_zeta(4.0, 0.5).unwrap();
        let rhs = (16.0 - 1.0) * riemann_zeta(4.0).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        assert_eq!(hurwitz_zeta(2.0, 0.0), Err(Error::InvalidA(0.0)));
        assert_eq!(hurwitz_zeta(1.0, 0.5), Err(Error::PoleAtOne));
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        let expect = 2.0 - EULER_GAMMA - 2.0 * LN_2;
        assert!((digamma(-0.5).unwrap() - expect).abs() < 1e-13);
        let s = 3.7;
        assert!((digamma(s + 1.0).unwrap() - digamma(s).unwrap() - 1.0 / s).abs() < 1e-14);
        let s = 0.25;
        let refl = digamma(1.0 - s).unwrap() - digamma(s).unwrap();
        assert!((refl - PI / (PI * s).tan()).abs() < 1e-10);
        assert!(matches!(digamma(-2.0), Err(Error::PoleAtNonPositiveInteger(_))));
    }

    #[test]
    fn z_beta_vanishes_at_negative_even_integers() {
        for p in 1..=5 {
            for beta in [0.3, 1.0, 7.0] {
                let v = z_beta(-2.0 * p as f64, beta, MatsubaraFamily::Fermionic).unwrap();
                assert_eq!(v.value, 0.0);
                assert_eq!(v.scheme, Scheme::ZetaContinuation);
            }
        }
        assert_eq!(
            z_beta(1.0, 1.0, MatsubaraFamily::Fermionic),
            Err(Error::PoleDetected { location: 1.0 })
        );
    }

    #[test]
    fn z_beta_continuation_matches_direct_sum() {
        // Σ 1/((2n+1)π)² over n ∈ ℤ = 1/4 at β = 1
        let cont = z_beta(2.0, 1.0, MatsubaraFamily::Fermionic).unwrap();
        assert!((cont.value - 0.25).abs() < 1e-15);
        let trunc = z_beta_truncated(2.0, 1.0, MatsubaraFamily::Fermionic, 1_000_000).unwrap();
        assert!((trunc.value - cont.value).abs() <= 1e-10 * cont.value);
        let b = z_beta(3.5, 2.0, MatsubaraFamily::Bosonic).unwrap();
        let t = z_beta_truncated(3.5, 2.0, MatsubaraFamily::Bosonic, 1000).unwrap();
        assert!((b.value - t.value).abs() <= 1e-12 * b.value);
    }

    #[test]
    fn regularized_counts_and_log_sums() {
        assert_eq!(regularized_mode_count(MatsubaraFamily::Fermionic).value, 0.0);
        assert!((regularized_mode_count(MatsubaraFamily::Bosonic).value + 1.0).abs() < 1e-15);
        let f = matsubara_log_frequency_sum(3.0, MatsubaraFamily::Fermionic).unwrap();
        assert!((f.value - 2.0 * LN_2).abs() < 1e-14);
        let b = matsubara_log_frequency_sum(3.0, MatsubaraFamily::Bosonic).unwrap();
        assert!((b.value - 2.0 * 3f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn z_spatial_closed_forms() {
        let g = SlabGeometry::unit(1.0);
        let v = z_spatial(-1.0, &g).unwrap();
        assert!((v.value + PI * PI / 720.0).abs() < 1e-16);
        assert_eq!(z_spatial(0.0, &g).unwrap().value, 0.0);
        assert_eq!(z_spatial(2.0, &g), Err(Error::PoleDetected { location: 2.0 }));
        assert_eq!(z_spatial(3.0, &g), Err(Error::PoleDetected { location: 3.0 }));
        assert!(matches!(z_spatial(-1.0, &g.with_mass(1.0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn matsubara_log_sum_closed_vs_truncated() {
        assert_eq!(matsubara_log_sum(0.0, 1.0), 0.0);
        let closed = matsubara_log_sum(1.0, 1.0);
        assert!((closed - 2.0 * 0.5f64.cosh().ln()).abs() < 1e-15);
        let t = matsubara_log_sum_truncated(1.0, 1.0, 1000).unwrap();
        assert!((t.value - closed).abs() < 1e-12);
        // large βω: β⁻¹ Σ → ω
        let beta = 50.0;
        let v = matsubara_log_sum(1.0, beta) + 2.0 * LN_2;
        assert!((v / beta - 1.0).abs() < 1e-15);
    }
}

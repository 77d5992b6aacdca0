//! Double-exponential quadrature on finite, half-infinite and infinite
//! intervals.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

const MAX_LEVEL: usize = 10;

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
}

#[derive(Clone, Copy)]
enum Map {
    /// tanh-sinh onto (a, b)
    Finite(f64, f64),
    /// exp-sinh onto (a, ∞)
    HalfLine(f64),
    /// sinh-sinh onto (−∞, ∞)
    Line,
}

impl Map {
    fn t_max(self) -> f64 {
        match self {
            Map::Finite(..) => 3.5,
            Map::HalfLine(_) => 5.0,
            Map::Line => 5.0,
        }
    }

    /// Abscissa and weight at parameter `t`.
    fn node(self, t: f64) -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let du = FRAC_PI_2 * t.cosh();
        match self {
            Map::Finite(a, b) => {
                let half = 0.5 * (b - a);
                // distance to the nearer endpoint, without cancellation
                let x = if u < 0.0 {
                    a + 2.0 * half / (1.0 + (-2.0 * u).exp())
                } else {
                    b - 2.0 * half / (1.0 + (2.0 * u).exp())
                };
                let w = half * du / u.cosh().powi(2);
                (x, w)
            }
            Map::HalfLine(a) => {
                let e = u.exp();
                (a + e, du * e)
            }
            Map::Line => (u.sinh(), du * u.cosh()),
        }
    }
}

fn integrate<F: Fn(f64) -> f64>(f: F, map: Map, rel_tol: f64) -> Result<Quadrature> {
    let t_max = map.t_max();
    let eval = |t: f64| -> f64 {
        let (x, w) = map.node(t);
        if w == 0.0 || !w.is_finite() || !x.is_finite() {
            return 0.0;
        }
        // skip endpoints that round onto the boundary
        if let Map::Finite(a, b) = map {
            if x <= a || x >= b {
                return 0.0;
            }
        }
        let v = f(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let mut h = 0.5;
    let mut acc = NeumaierSum::new();
    let steps = (t_max / h) as i64;
    for k in -steps..=steps {
        acc.add(eval(k as f64 * h));
    }
    let mut estimate = acc.value() * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let steps = (t_max / h) as i64;
        // only the new (odd) nodes
        let mut k = -steps + if steps % 2 == 0 { 1 } else { 0 };
        while k <= steps {
            acc.add(eval(k as f64 * h));
            k += 2;
        }
        let next = acc.value() * h;
        let err = (next - estimate).abs();
        estimate = next;
        if err <= rel_tol * next.abs() || err <= 1e-300 {
            return Ok(Quadrature {
                value: next,
                error_estimate: err,
            });
        }
    }
    Err(Error::NonConvergent(format!(
        "quadrature did not reach relative tolerance {rel_tol:e}"
    )))
}

pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    integrate(f, Map::Finite(a, b), rel_tol)
}

pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, a: f64, rel_tol: f64) -> Result<Quadrature> {
    integrate(f, Map::HalfLine(a), rel_tol)
}

pub fn integrate_line<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> Result<Quadrature> {
    integrate(f, Map::Line, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_on_interval() {
        let q = integrate_finite(|x| x * x, 0.0, 3.0, 1e-13).unwrap();
        assert!((q.value - 9.0).abs() < 1e-12);
    }

    #[test]
    fn lorentzian_on_line_and_half_line() {
        let q = integrate_line(|x| 1.0 / (1.0 + x * x), 1e-13).unwrap();
        assert!((q.value - PI).abs() < 1e-12);
        let q = integrate_half_line(|x| (-x).exp(), 0.0, 1e-13).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        let q = integrate_finite(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10);
    }
}

//! Numerical tie-back of the closed form to the quartic integral
//! `int_0^inf dx / (x^4 + 2a x^2 + 1)^{m+1}`.
//!
//! Both integrands are mapped to `[0, pi/2)` with `x = tan(theta)` and written
//! as homogeneous forms in `sin` and `cos`, which are smooth on the closed
//! interval. Composite Gauss-Legendre rules then converge quickly.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_traits::{ToPrimitive, Zero};

use crate::coeffs::{d_row, t_poly};
use crate::error::{Error, Result};
use crate::kernel::{rat, Rat};
use crate::poly::Poly;
use crate::report::{Report, Witness};

/// Smallest accepted relative tolerance.
pub const MIN_TOL: f64 = 1e-12;

const GL_POINTS: usize = 20;
const MAX_PANELS: usize = 1 << 14;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn composite(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        let mut s = 0.0;
        for (x, w) in rule {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}

/// Integrate `f` over `[a, b]`, doubling the panel count until two successive
/// estimates differ by less than `tol / 2` relative to the latest one.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let rule = gauss_legendre(GL_POINTS);
    let mut panels = 1;
    let mut prev = composite(f, a, b, panels, &rule);
    loop {
        panels *= 2;
        let next = composite(f, a, b, panels, &rule);
        let diff = (next - prev).abs();
        if diff <= 0.5 * tol * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        if panels >= MAX_PANELS {
            return Err(Error::NoConvergence { tol, diff });
        }
        prev = next;
    }
}

fn check_inputs(a: &Rat, tol: f64) -> Result<f64> {
    if *a <= rat(-1, 1) {
        return Err(Error::Domain("the integral diverges for a <= -1"));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= {MIN_TOL:e}"
        )));
    }
    Ok(a.to_f64().expect("finite rational"))
}

/// Numerical value of `int_0^inf dx / (x^4 + 2a x^2 + 1)^{m+1}` to relative
/// tolerance `tol`.
pub fn quadrature_n04(a: &Rat, m: u64, tol: f64) -> Result<f64> {
    let af = check_inputs(a, tol)?;
    let e = m as i32 + 1;
    let f = move |t: f64| {
        let (s, c) = (libm::sin(t), libm::cos(t));
        let (s2, c2) = (s * s, c * c);
        let d = s2 * s2 + 2.0 * af * s2 * c2 + c2 * c2;
        libm::pow(c, (4 * m + 2) as f64) / libm::pow(d, e as f64)
    };
    integrate(&f, 0.0, FRAC_PI_2, tol)
}

fn eval_f64(p: &Poly, x: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().expect("finite"))
}

/// `(pi/2) P_m(a) / [2(a+1)]^{m+1/2}`, with `P_m(a)` evaluated exactly first.
pub fn n04_closed_form(a: &Rat, m: u64) -> Result<f64> {
    if *a <= rat(-1, 1) {
        return Err(Error::Domain("the integral diverges for a <= -1"));
    }
    let p = Poly::from_coeffs(d_row(m)).eval(a);
    let base = (rat(2, 1) * (a + rat(1, 1))).to_f64().expect("finite");
    Ok(FRAC_PI_2 * p.to_f64().expect("finite") / libm::pow(base, m as f64 + 0.5))
}

/// `Q(x) = (x^4 + 2a x^2 + 1)^{-(m+1)}`.
fn q(a: f64, m: u64, x: f64) -> f64 {
    let x2 = x * x;
    1.0 / libm::pow(x2 * x2 + 2.0 * a * x2 + 1.0, (m + 1) as f64)
}

/// `Q_1(y)` from its definition through the two branches `y +- sqrt(y^2+1)`.
pub fn q1_from_branches(a: f64, m: u64, y: f64) -> f64 {
    let r = libm::sqrt(y * y + 1.0);
    let up = y + r;
    // y - r without cancellation
    let down = -1.0 / up;
    let (qu, qd) = (q(a, m, up), q(a, m, down));
    (qu + qd) + y / r * (qu - qd)
}

/// `T_m(2y) / (2^m (1 + a + 2y^2)^{m+1})`.
pub fn q1_closed(a: f64, m: u64, y: f64) -> f64 {
    let t = eval_f64(&t_poly(m), 2.0 * y);
    t / (libm::pow(2.0, m as f64) * libm::pow(1.0 + a + 2.0 * y * y, (m + 1) as f64))
}

/// Compare `int_0^inf Q` with `int_0^inf Q_1` (closed form), and the closed
/// form of `Q_1` with its two-branch definition at sample points.
pub fn landen_q1_check(a: &Rat, m: u64, tol: f64) -> Result<Report> {
    let af = check_inputs(a, tol)?;
    let params = format!("a={a} m={m} tol={tol:e}");
    let lhs = quadrature_n04(a, m, tol)?;
    // T_m(2 tan t) cos^{2m} = sum_k C(m+k, m-k) 4^k sin^{2k} cos^{2m-2k}
    let coeffs: Vec<f64> = t_poly(m)
        .coeffs()
        .iter()
        .step_by(2)
        .map(|c| c.to_f64().expect("finite"))
        .collect();
    let g = move |t: f64| {
        let (s, c) = (libm::sin(t), libm::cos(t));
        let (s2, c2) = (s * s, c * c);
        let mut num = 0.0;
        for (k, ck) in coeffs.iter().enumerate() {
            num += ck * libm::pow(4.0 * s2, k as f64) * libm::pow(c2, (m as usize - k) as f64);
        }
        num / (libm::pow(2.0, m as f64) * libm::pow((1.0 + af) * c2 + 2.0 * s2, (m + 1) as f64))
    };
    let rhs = integrate(&g, 0.0, FRAC_PI_2, tol)?;
    if (lhs - rhs).abs() > tol * lhs.abs() {
        return Ok(Report::fail(
            "landen_q1",
            params,
            Witness::new("integrals", lhs, rhs),
        ));
    }
    for i in 0..=40 {
        let y = -4.0 + 0.2 * i as f64;
        let (d, c) = (q1_from_branches(af, m, y), q1_closed(af, m, y));
        if (d - c).abs() > 1e-9 * c.abs().max(1e-300) {
            return Ok(Report::fail(
                "landen_q1",
                params,
                Witness::new(format!("pointwise y={y}"), d, c),
            ));
        }
    }
    Ok(Report::pass("landen_q1", params)
        .with_detail("integral_q", lhs)
        .with_detail("integral_q1", rhs))
}

/// Relative error of the quadrature against the closed form.
pub fn tie_back_error(a: &Rat, m: u64, tol: f64) -> Result<f64> {
    let num = quadrature_n04(a, m, tol)?;
    let closed = n04_closed_form(a, m)?;
    if closed.is_zero() {
        return Ok(num.abs());
    }
    Ok((num - closed).abs() / closed.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    #[test]
    fn nodes_integrate_polynomials() {
        let rule = gauss_legendre(GL_POINTS);
        let s: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
        let x38: f64 = rule.iter().map(|(x, w)| w * x.powi(38)).sum();
        assert!((x38 - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn special_values() {
        let v = quadrature_n04(&rat(1, 1), 0, 1e-12).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-12);
        let v = quadrature_n04(&rat(0, 1), 0, 1e-12).unwrap();
        assert!((v - PI / (2.0 * SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_grid() {
        for a in [rat(-1, 2), rat(0, 1), rat(1, 1), rat(5, 2)] {
            for m in 0..=8 {
                let err = tie_back_error(&a, m, 1e-12).unwrap();
                assert!(err <= 1e-10, "a={a} m={m} err={err}");
            }
        }
    }

    #[test]
    fn landen_examples() {
        for (a, m) in [(rat(1, 1), 0), (rat(0, 1), 1), (rat(5, 2), 3)] {
            let r = landen_q1_check(&a, m, 1e-11).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn rejects_divergent_and_tight() {
        assert!(quadrature_n04(&rat(-1, 1), 0, 1e-10).is_err());
        assert!(quadrature_n04(&rat(0, 1), 0, 1e-14).is_err());
    }
}

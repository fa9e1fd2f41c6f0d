//! Unimodality, log-concavity and the operator
//! `L(a)_j = a_j^2 - a_{j-1} a_{j+1}` on finite sequences of rationals.
//! Out-of-range neighbours count as zero, so `L` fixes the length.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::Rat;
use crate::poly::{is_real_rooted, Poly};
use crate::report::{Report, Witness};

pub fn l_operator(s: &[Rat]) -> Vec<Rat> {
    let zero = Rat::zero();
    (0..s.len())
        .map(|j| {
            let left = if j == 0 { &zero } else { &s[j - 1] };
            let right = s.get(j + 1).unwrap_or(&zero);
            &s[j] * &s[j] - left * right
        })
        .collect()
}

/// Non-strict unimodality: a nondecreasing run followed by a nonincreasing one.
pub fn is_unimodal(s: &[Rat]) -> bool {
    let mut i = 1;
    while i < s.len() && s[i] >= s[i - 1] {
        i += 1;
    }
    while i < s.len() && s[i] <= s[i - 1] {
        i += 1;
    }
    i >= s.len()
}

/// First interior index `j` with `a_{j-1} a_{j+1} > a_j^2`.
pub fn log_concavity_violation(s: &[Rat]) -> Option<usize> {
    (1..s.len().saturating_sub(1)).find(|&j| &s[j - 1] * &s[j + 1] > &s[j] * &s[j])
}

/// `None` when some entry is negative (log-concavity is only defined for
/// nonnegative sequences).
pub fn is_log_concave(s: &[Rat]) -> Option<bool> {
    if s.iter().any(Signed::is_negative) {
        return None;
    }
    Some(log_concavity_violation(s).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub unimodal: bool,
    pub log_concave: Option<bool>,
}

pub fn classify(s: &[Rat]) -> Classification {
    Classification {
        unimodal: is_unimodal(s),
        log_concave: is_log_concave(s),
    }
}

/// Apply `L` up to `depth` times; fail at the first negative entry.
pub fn inf_lc_probe(s: &[Rat], depth: usize) -> Result<Report> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if s.iter().any(Signed::is_negative) {
        return Err(Error::Domain("sequence must be nonnegative"));
    }
    let params = format!("len={} depth={depth}", s.len());
    let mut cur = s.to_vec();
    for d in 1..=depth {
        cur = l_operator(&cur);
        if let Some(j) = cur.iter().position(Signed::is_negative) {
            return Ok(Report::fail(
                "inf_lc_probe",
                params,
                Witness::new(format!("depth={d} j={j}"), &cur[j], 0),
            ));
        }
    }
    Ok(Report::pass("inf_lc_probe", params))
}

/// `a_k^2 >= r a_{k-1} a_{k+1}` with `r = (3 + sqrt 5)/2`, decided exactly:
/// the condition is `2a_k^2 - 3P >= sqrt(5) P` with `P = a_{k-1} a_{k+1} > 0`.
pub fn r_factor_holds(s: &[Rat]) -> Result<bool> {
    if s.iter().any(|x| !x.is_positive()) {
        return Err(Error::Domain("r-factor test needs positive entries"));
    }
    let five = Rat::from_integer(5.into());
    let three = Rat::from_integer(3.into());
    Ok((1..s.len().saturating_sub(1)).all(|k| {
        let p = &s[k - 1] * &s[k + 1];
        let lhs = &s[k] * &s[k] * Rat::from_integer(2.into()) - &three * &p;
        !lhs.is_negative() && &lhs * &lhs >= &five * &p * &p
    }))
}

pub fn r_factor_certify(s: &[Rat]) -> Result<bool> {
    r_factor_holds(s)
}

/// Apply `L` until the r-factor condition holds, at most `max_iter` times.
/// `Some(i)` after `i` applications certifies infinite log-concavity, since
/// `L` preserves the condition and the earlier iterates were positive.
pub fn r_factor_certify_iterated(s: &[Rat], max_iter: usize) -> Result<Option<usize>> {
    let mut cur = s.to_vec();
    for i in 0..=max_iter {
        if cur.iter().any(|x| !x.is_positive()) {
            if i == 0 {
                return Err(Error::Domain("r-factor test needs positive entries"));
            }
            return Ok(None);
        }
        if r_factor_holds(&cur)? {
            return Ok(Some(i));
        }
        cur = l_operator(&cur);
    }
    Ok(None)
}

/// Coefficients of `A(x + 1)` where `A` has coefficients `s`.
pub fn shifted_coefficients(s: &[Rat]) -> Vec<Rat> {
    let mut c = Poly::from_coeffs(s.to_vec())
        .taylor_shift(&Rat::one())
        .into_coeffs();
    c.resize(s.len(), Rat::zero());
    c
}

/// Unimodality of `A(x + 1)` for a positive nondecreasing coefficient list.
pub fn shift_unimodal_check(s: &[Rat]) -> Result<bool> {
    if s.is_empty() || s.iter().any(|x| !x.is_positive()) {
        return Err(Error::Domain("coefficients must be positive"));
    }
    if s.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("coefficients must be nondecreasing"));
    }
    Ok(is_unimodal(&shifted_coefficients(s)))
}

/// Whether `L` of the coefficient list of a real-rooted polynomial with
/// positive coefficients is again real-rooted.
pub fn fisk_probe(p: &Poly) -> Result<Report> {
    if p.is_zero() || p.coeffs().iter().any(|c| !c.is_positive()) {
        return Err(Error::Domain("coefficients must be positive"));
    }
    if !is_real_rooted(p)? {
        return Err(Error::Domain("polynomial is not real-rooted"));
    }
    let q = Poly::from_coeffs(l_operator(p.coeffs()));
    let params = format!("p={p}");
    if is_real_rooted(&q)? {
        Ok(Report::pass("fisk_probe", params).with_detail("image", &q))
    } else {
        Ok(Report::fail(
            "fisk_probe",
            params,
            Witness::new("image", &q, "real-rooted"),
        ))
    }
}

//! Registry of exact identities and recurrences satisfied by the coefficient
//! family, each checkable over a parameter range.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::coeffs::{d_below_top, d_coeff, d_row, d_top, t_poly, Method};
use crate::error::{Error, Result};
use crate::kernel::{choose, factorial, pow2, rat, BinomialTable, Int, Rat};
use crate::poly::{substitute_phi, LaurentPoly};
use crate::report::{Report, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Sum1,
    Recur2,
    Rec22,
    Newform2,
    WallisMoment,
    BinomProduct,
    Pretty,
    S1Closed,
    ClosedDmm,
    KpRec1,
    KpRec2,
    DjRec,
    Minexpr,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Sum1,
        IdentityId::Recur2,
        IdentityId::Rec22,
        IdentityId::Newform2,
        IdentityId::WallisMoment,
        IdentityId::BinomProduct,
        IdentityId::Pretty,
        IdentityId::S1Closed,
        IdentityId::ClosedDmm,
        IdentityId::KpRec1,
        IdentityId::KpRec2,
        IdentityId::DjRec,
        IdentityId::Minexpr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Sum1 => "sum1",
            IdentityId::Recur2 => "recur2",
            IdentityId::Rec22 => "rec22",
            IdentityId::Newform2 => "newform2",
            IdentityId::WallisMoment => "wallis_moment",
            IdentityId::BinomProduct => "binom_product",
            IdentityId::Pretty => "pretty",
            IdentityId::S1Closed => "s1_closed",
            IdentityId::ClosedDmm => "closed_dmm",
            IdentityId::KpRec1 => "kp_rec1",
            IdentityId::KpRec2 => "kp_rec2",
            IdentityId::DjRec => "dj_rec",
            IdentityId::Minexpr => "minexpr",
        }
    }

    /// Largest `m` accepted by [`check_identity`].
    pub fn max_m(self) -> u64 {
        match self {
            IdentityId::Sum1 | IdentityId::Recur2 => 2000,
            IdentityId::Pretty | IdentityId::S1Closed | IdentityId::BinomProduct => 600,
            IdentityId::Minexpr => 200,
            _ => 300,
        }
    }

    /// Range used when the caller does not pick one.
    pub fn default_max_m(self) -> u64 {
        match self {
            IdentityId::Sum1 | IdentityId::Recur2 => 1000,
            IdentityId::Pretty | IdentityId::S1Closed => 300,
            IdentityId::BinomProduct => 200,
            IdentityId::Minexpr => 30,
            _ => 100,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Unknown(s.into()))
    }
}

/// Check `id` for every `m` in `m_lo..=m_hi` (and every inner index the
/// identity quantifies over). `minexpr` is a probe: it passes when the minimum
/// over `j` sits at `j = m`, and reports the minimum itself.
pub fn check_identity(id: IdentityId, m_lo: u64, m_hi: u64) -> Result<Report> {
    if m_lo > m_hi {
        return Err(Error::InvalidArgument(format!(
            "empty range {m_lo}..={m_hi}"
        )));
    }
    if m_hi > id.max_m() {
        return Err(Error::BoundExceeded {
            what: id.name(),
            bound: id.max_m(),
        });
    }
    let params = format!("{m_lo}<=m<={m_hi}");
    let witness = match id {
        IdentityId::Sum1 => sum1(m_lo, m_hi),
        IdentityId::Recur2 => recur2(m_lo, m_hi),
        IdentityId::Rec22 => rec22(m_lo, m_hi),
        IdentityId::Newform2 => newform2(m_lo, m_hi),
        IdentityId::WallisMoment => wallis_moment(m_lo, m_hi),
        IdentityId::BinomProduct => binom_product(m_lo, m_hi),
        IdentityId::Pretty => pretty(m_lo, m_hi),
        IdentityId::S1Closed => s1_closed(m_lo, m_hi),
        IdentityId::ClosedDmm => closed_dmm(m_lo, m_hi),
        IdentityId::KpRec1 => kp_rec1(m_lo, m_hi),
        IdentityId::KpRec2 => kp_rec2(m_lo, m_hi),
        IdentityId::DjRec => dj_rec(m_lo, m_hi),
        IdentityId::Minexpr => return Ok(minexpr(m_lo, m_hi)),
    };
    Ok(Report::from_witness(id.name(), params, witness))
}

fn compare<T: PartialEq + fmt::Display>(
    at: impl FnOnce() -> String,
    lhs: T,
    rhs: T,
) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::new(at(), lhs, rhs))
}

/// `2^m f(m)` where `f(m) = sum_i 4^{-i} C(m, 2i) C(2i, i)`; an integer.
fn sum1_scaled(m: u64, central: &[Int]) -> Int {
    let mut acc = Int::zero();
    let mut c = Int::one(); // C(m, 2i), updated two steps at a time
    for i in 0..=m / 2 {
        acc += (&c * &central[i as usize]) << (m - 2 * i) as usize;
        let k = 2 * i;
        if k + 2 <= m {
            c = c * (m - k) / (k + 1);
            c = c * (m - k - 1) / (k + 2);
        }
    }
    acc
}

fn central_binomials(n: u64) -> Vec<Int> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = Int::one();
    out.push(c.clone());
    for i in 1..=n {
        c = c * (4 * i - 2) / i;
        out.push(c.clone());
    }
    out
}

fn sum1(lo: u64, hi: u64) -> Option<Witness> {
    let central = central_binomials(2 * hi);
    for m in lo..=hi {
        let lhs = sum1_scaled(m, &central);
        let rhs = central[m as usize].clone();
        if lhs != rhs {
            return Some(Witness::new(
                format!("m={m}"),
                Rat::new(lhs, pow2(m)),
                Rat::new(rhs, pow2(m)),
            ));
        }
    }
    None
}

fn recur2(lo: u64, hi: u64) -> Option<Witness> {
    let central = central_binomials(2 * hi + 2);
    // f(m+1) (m+1) = (2m+1) f(m), for the sum and for 2^{-m} C(2m, m).
    let mut prev = sum1_scaled(lo, &central);
    for m in lo..=hi {
        let next = sum1_scaled(m + 1, &central);
        // with S(m) = 2^m f(m): (m+1) S(m+1) = 2(2m+1) S(m)
        let lhs = &next * (m + 1);
        let rhs = &prev * (2 * (2 * m + 1));
        if let Some(w) = compare(|| format!("sum m={m}"), lhs, rhs) {
            return Some(w);
        }
        let closed_lhs = &central[m as usize + 1] * (m + 1);
        let closed_rhs = &central[m as usize] * (2 * (2 * m + 1));
        if let Some(w) = compare(|| format!("closed form m={m}"), closed_lhs, closed_rhs) {
            return Some(w);
        }
        prev = next;
    }
    None
}

/// `(phi^{2m+1} + phi^{-(2m+1)}) / (phi + phi^{-1})`.
pub fn newform2_left(m: u64) -> LaurentPoly {
    let e = 2 * m as i64 + 1;
    let num = LaurentPoly::from_terms([(e, Rat::one()), (-e, Rat::one())]);
    let den = LaurentPoly::from_terms([(1, Rat::one()), (-1, Rat::one())]);
    num.div_exact(&den).expect("odd power sums are divisible")
}

/// `T_m(phi - phi^{-1})`.
pub fn newform2_right(m: u64) -> LaurentPoly {
    substitute_phi(&t_poly(m))
}

fn newform2(lo: u64, hi: u64) -> Option<Witness> {
    (lo..=hi).find_map(|m| compare(|| format!("m={m}"), newform2_left(m), newform2_right(m)))
}

fn rec22(lo: u64, hi: u64) -> Option<Witness> {
    let step = LaurentPoly::from_terms([(2, Rat::one()), (-2, Rat::one())]);
    let top = hi.max(lo + 2);
    let left: Vec<LaurentPoly> = (lo..=top).map(newform2_left).collect();
    let right: Vec<LaurentPoly> = (lo..=top).map(newform2_right).collect();
    for (side, seq) in [("left", &left), ("right", &right)] {
        for i in 0..seq.len() - 2 {
            let r = &(&seq[i + 2] - &(&step * &seq[i + 1])) + &seq[i];
            if !r.is_zero() {
                return Some(Witness::new(
                    format!("{side} m={}", lo + i as u64),
                    r,
                    LaurentPoly::zero(),
                ));
            }
        }
    }
    None
}

fn wallis_moment(lo: u64, hi: u64) -> Option<Witness> {
    let fact: Vec<Int> = (0..=2 * hi).map(factorial).collect();
    for m in lo..=hi {
        for k in 0..=m {
            let (ku, mu) = (k as usize, m as usize);
            // Beta-function evaluation of the integral, divided by pi
            let lhs = Rat::new(
                &fact[2 * ku] * &fact[2 * (mu - ku)],
                (&fact[ku] * &fact[mu - ku] * &fact[mu]) << (2 * m + 1) as usize,
            );
            let rhs = Rat::new(
                choose(2 * k, k) * choose(2 * m - 2 * k, m - k),
                choose(m, k) << (2 * m + 1) as usize,
            );
            if let Some(w) = compare(|| format!("k={k} m={m}"), lhs, rhs) {
                return Some(w);
            }
        }
    }
    None
}

fn binom_product(lo: u64, hi: u64) -> Option<Witness> {
    let t = BinomialTable::new(2 * hi);
    for m in lo..=hi {
        for k in 0..=m {
            let (mi, ki) = (m as i64, k as i64);
            let lhs = t.get(mi + ki, mi - ki) * t.get(2 * ki, ki);
            let rhs = t.get(mi + ki, mi) * t.get(mi, ki);
            if let Some(w) = compare(|| format!("k={k} m={m}"), lhs, rhs) {
                return Some(w);
            }
        }
    }
    None
}

fn pretty(lo: u64, hi: u64) -> Option<Witness> {
    let central = central_binomials(hi);
    for m in lo..=hi {
        // both sides scaled by 4^m
        let mut lhs = Int::zero();
        let mut rhs = Int::zero();
        for k in 0..=m {
            let w = &central[k as usize] << (2 * (m - k)) as usize;
            lhs += &w * choose(2 * m + 1, 2 * k);
            rhs += w * choose(2 * m - k, m);
        }
        if lhs != rhs {
            let den = pow2(2 * m);
            return Some(Witness::new(
                format!("m={m}"),
                Rat::new(lhs, den.clone()),
                Rat::new(rhs, den),
            ));
        }
    }
    None
}

fn s1_closed(lo: u64, hi: u64) -> Option<Witness> {
    let central = central_binomials(hi);
    for m in lo..=hi {
        let mut lhs = Int::zero();
        for j in 0..=m {
            lhs +=
                (choose(2 * m + 1, 2 * j) * &central[j as usize]) << (2 * m + 1 - 2 * j) as usize;
        }
        let rhs = choose(4 * m + 2, 2 * m + 1);
        if let Some(w) = compare(|| format!("m={m}"), lhs, rhs) {
            return Some(w);
        }
    }
    None
}

fn closed_dmm(lo: u64, hi: u64) -> Option<Witness> {
    for m in lo..=hi {
        let top = d_coeff(m, m, Method::Single).expect("l = m");
        if let Some(w) = compare(|| format!("d(m,m) m={m}"), top, d_top(m)) {
            return Some(w);
        }
        if m >= 1 {
            let below = d_coeff(m - 1, m, Method::Single).expect("l < m");
            let closed = d_below_top(m).expect("m >= 1");
            if let Some(w) = compare(|| format!("d(m-1,m) m={m}"), below, closed) {
                return Some(w);
            }
        }
    }
    None
}

/// Rows `d(., m)` for `m = 0..=n`, padded so out-of-range `l` reads as zero.
struct Rows(Vec<Vec<Rat>>);

impl Rows {
    fn new(n: u64) -> Self {
        Rows((0..=n).map(d_row).collect())
    }
    fn d(&self, l: i64, m: u64) -> Rat {
        if l < 0 {
            return Rat::zero();
        }
        self.0[m as usize]
            .get(l as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }
}

fn r(v: i64) -> Rat {
    rat(v, 1)
}

fn kp_rec1(lo: u64, hi: u64) -> Option<Witness> {
    let rows = Rows::new(hi + 1);
    for m in lo..=hi {
        let mi = m as i64;
        for l in 0..=mi + 1 {
            let lhs = r(2 * (mi + 1)) * rows.d(l, m + 1);
            let rhs = r(2 * (l + mi)) * rows.d(l - 1, m) + r(2 * l + 4 * mi + 3) * rows.d(l, m);
            if let Some(w) = compare(|| format!("l={l} m={m}"), lhs, rhs) {
                return Some(w);
            }
        }
    }
    None
}

fn kp_rec2(lo: u64, hi: u64) -> Option<Witness> {
    let rows = Rows::new(hi + 1);
    for m in lo..=hi {
        let mi = m as i64;
        for l in 0..=mi {
            let lhs = r(4 * l * (l + 1)) * rows.d(l + 1, m);
            let rhs = r(-2 * (2 * l - 4 * mi - 3) * (l + mi + 1)) * rows.d(l, m)
                + r(4 * (l - mi - 1) * (mi + 1)) * rows.d(l, m + 1);
            if let Some(w) = compare(|| format!("l={l} m={m}"), lhs, rhs) {
                return Some(w);
            }
        }
    }
    None
}

fn dj_rec(lo: u64, hi: u64) -> Option<Witness> {
    for m in lo..=hi {
        let row = d_row(m);
        let mi = m as i64;
        for j in 1..mi {
            let ju = j as usize;
            let lhs = row[ju + 1].clone();
            let rhs = rat(2 * mi + 1, j + 1) * &row[ju]
                - rat((mi + j) * (mi + 1 - j), j * (j + 1)) * &row[ju - 1];
            if let Some(w) = compare(|| format!("j={j} m={m}"), lhs, rhs) {
                return Some(w);
            }
        }
    }
    None
}

/// `(m+j)(m+1-j) d_{j-1}^2 + j(j+1) d_j^2 - j(2m+1) d_{j-1} d_j` for `j = 1..=m`.
pub fn minexpr_values(m: u64) -> Vec<Rat> {
    let row = d_row(m);
    let mi = m as i64;
    (1..=mi)
        .map(|j| {
            let (a, b) = (&row[j as usize - 1], &row[j as usize]);
            r((mi + j) * (mi + 1 - j)) * a * a + r(j * (j + 1)) * b * b
                - r(j * (2 * mi + 1)) * a * b
        })
        .collect()
}

/// `4^{-m} m (m+1) C(2m, m)^2`, the closed form the minimum is compared with.
pub fn minexpr_closed_form(m: u64) -> Rat {
    let c = choose(2 * m, m);
    Rat::new(&c * &c * (m * (m + 1)), pow2(2 * m))
}

fn minexpr(lo: u64, hi: u64) -> Report {
    let lo = lo.max(1);
    let params = format!("{lo}<=m<={hi}");
    let mut all_match = true;
    let mut last_min = Rat::zero();
    for m in lo..=hi {
        let vals = minexpr_values(m);
        let (mut arg, mut min) = (1usize, vals[0].clone());
        for (i, v) in vals.iter().enumerate() {
            if v < &min {
                arg = i + 1;
                min = v.clone();
            }
        }
        // ties resolve to the largest j
        if vals[m as usize - 1] == min {
            arg = m as usize;
        }
        if arg as u64 != m {
            return Report::fail(
                "minexpr",
                params,
                Witness::new(
                    format!("m={m}"),
                    format!("argmin j={arg}"),
                    format!("j={m}"),
                ),
            )
            .with_detail("min", min);
        }
        all_match &= min == minexpr_closed_form(m);
        last_min = min;
    }
    Report::pass("minexpr", params)
        .with_detail("argmin", "j=m")
        .with_detail("min_at_last_m", last_min)
        .with_detail("matches_4^-m_m(m+1)C(2m,m)^2", all_match)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pass(id: IdentityId, lo: u64, hi: u64) -> Report {
        let r = check_identity(id, lo, hi).unwrap();
        assert!(r.passed, "{r}");
        r
    }

    #[test]
    fn every_tag_round_trips() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nope".parse::<IdentityId>().is_err());
    }

    #[test]
    fn spec_points() {
        pass(IdentityId::Pretty, 1, 1);
        pass(IdentityId::Sum1, 2, 2);
        pass(IdentityId::Newform2, 1, 1);
        pass(IdentityId::KpRec1, 2, 2);
        assert_eq!(newform2_left(1), substitute_phi(&t_poly(1)));
    }

    #[test]
    fn small_ranges_pass() {
        for id in IdentityId::ALL {
            pass(id, 0, 20);
        }
    }

    #[test]
    fn minexpr_reports_the_minimum() {
        let r = pass(IdentityId::Minexpr, 1, 8);
        assert_eq!(r.detail("matches_4^-m_m(m+1)C(2m,m)^2"), Some("true"));
        assert_eq!(minexpr_values(1), alloc::vec![minexpr_closed_form(1)]);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(check_identity(IdentityId::Newform2, 0, 10_000).is_err());
        assert!(check_identity(IdentityId::Sum1, 5, 2).is_err());
    }
}

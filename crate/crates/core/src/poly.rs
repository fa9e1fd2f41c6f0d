//! Dense univariate polynomials over the rationals, sparse Laurent
//! polynomials, and exact real-root counting with Sturm chains.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{rat_int, Int, Rat};

/// Polynomial with rational coefficients, lowest degree first. Trailing zeros
/// are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rat, c1: Rat) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = Int>>(coeffs: I) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(rat_int).collect())
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_ints(coeffs.iter().map(|&c| Int::from(c)))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `P(-x)`.
    pub fn reflect(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `Q(x) = P(x + j)`, computed by repeated synthetic division.
    pub fn taylor_shift(&self, j: &Rat) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if j.is_zero() || n < 2 {
            return self.clone();
        }
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = &c[k + 1] * j;
                c[k] += t;
            }
        }
        Poly::from_coeffs(c)
    }

    /// `P(a + b x)`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        let shifted = self.taylor_shift(a);
        let mut scale = Rat::one();
        let mut out = Vec::with_capacity(shifted.coeffs.len());
        for c in shifted.coeffs {
            out.push(c * &scale);
            scale *= b;
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &q * dc;
                    rem[i + j] -= t;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Rescale so the leading coefficient is `1`.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// `P / gcd(P, P')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = Poly::gcd(self, &self.derivative());
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q)
    }

    /// Product of `c0 + c1 x` over the given pairs.
    pub fn product_of_linear<I: IntoIterator<Item = (Rat, Rat)>>(factors: I) -> Self {
        factors
            .into_iter()
            .fold(Poly::one(), |acc, (c0, c1)| &acc * &Poly::linear(c0, c1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, Poly);
forward_owned!(Sub, sub, Poly);
forward_owned!(Mul, mul, Poly);

/// An endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rat),
    PosInf,
}

/// Sturm chain of the square-free part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self> {
        let p0 = p.squarefree_part()?;
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            let (_, r) = prev.div_rem(&cur)?;
            // Keep the sign, normalise the size: only signs matter.
            let lead = cur.leading().expect("nonzero").abs();
            let normalised = cur.scale(&lead.recip());
            chain.push(normalised.clone());
            prev = normalised;
            cur = -&r;
        }
        Ok(SturmChain { chain })
    }

    /// Degree of the square-free part, i.e. the number of distinct complex roots.
    pub fn distinct_roots(&self) -> usize {
        self.chain[0].degree().unwrap_or(0)
    }

    pub fn polys(&self) -> &[Poly] {
        &self.chain
    }

    fn sign_at(p: &Poly, x: &Bound) -> i32 {
        let s = match x {
            Bound::At(v) => p.eval(v),
            Bound::PosInf => p.leading().cloned().unwrap_or_else(Rat::zero),
            Bound::NegInf => {
                let l = p.leading().cloned().unwrap_or_else(Rat::zero);
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -l
                } else {
                    l
                }
            }
        };
        if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let mut last = 0;
        let mut count = 0;
        for p in &self.chain {
            let s = Self::sign_at(p, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn count_real_roots(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Whether every complex root of `p` is real, decided exactly.
pub fn is_real_rooted(p: &Poly) -> Result<bool> {
    let chain = SturmChain::new(p)?;
    Ok(chain.count(&Bound::NegInf, &Bound::PosInf) == chain.distinct_roots())
}

/// Laurent polynomial with rational coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (i as i64, c)),
        )
    }

    fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute the variable by its reciprocal.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (-*e, c.clone())))
    }

    /// Multiply by `phi^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e + k, c.clone()))
                .collect(),
        }
    }

    /// Split as `phi^low * P(phi)` with `P(0) != 0`.
    fn to_poly_parts(&self) -> (i64, Poly) {
        let low = self.min_exponent().unwrap_or(0);
        let high = self.max_exponent().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(*e - low) as usize] = c.clone();
        }
        (low, Poly::from_coeffs(coeffs))
    }

    /// `self / d` when the quotient is again a Laurent polynomial.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (ln, pn) = self.to_poly_parts();
        let (ld, pd) = d.to_poly_parts();
        // pd has a nonzero constant term, so any Laurent quotient is a polynomial.
        let (q, r) = pn.div_rem(&pd).ok()?;
        if !r.is_zero() {
            return None;
        }
        Some(LaurentPoly::from_poly(&q).shift(ln - ld))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

forward_owned!(Add, add, LaurentPoly);
forward_owned!(Sub, sub, LaurentPoly);
forward_owned!(Mul, mul, LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "phi^{e}")?,
                (_, false) => write!(f, "{a}*phi^{e}")?,
            }
        }
        Ok(())
    }
}

/// `phi - phi^{-1}`.
pub fn phi_minus_inverse() -> LaurentPoly {
    LaurentPoly::from_terms([(1, Rat::one()), (-1, -Rat::one())])
}

/// `P(phi - phi^{-1})` expanded as a Laurent polynomial in `phi`.
pub fn substitute_phi(p: &Poly) -> LaurentPoly {
    let y = phi_minus_inverse();
    let mut acc = LaurentPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &y) + &LaurentPoly::monomial(c.clone(), 0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn taylor_shift_examples() {
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&rat(1, 1)), p(&[1, 2, 1]));
        let q = Poly::from_coeffs(vec![rat(3, 7), rat(-1, 2), rat(5, 1)]);
        assert_eq!(q.taylor_shift(&Rat::zero()), q);
        // 1 + (x+1) + 2(x+1)^2 = 4 + 5x + 2x^2
        assert_eq!(p(&[1, 1, 2]).taylor_shift(&rat(1, 1)), p(&[4, 5, 2]));
    }

    #[test]
    fn compose_linear_matches_eval() {
        let q = p(&[2, -3, 0, 1]);
        let r = q.compose_linear(&rat(-1, 2), &rat(1, 2));
        for x in -5..5 {
            let x = rat(x, 3);
            assert_eq!(r.eval(&x), q.eval(&(rat(-1, 2) + &x * rat(1, 2))));
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let (q, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, &p(&[1, 1]) * &p(&[2, 1]));
        let g = Poly::gcd(&a, &p(&[1, 2, 1]));
        assert_eq!(g, p(&[1, 1]));
        assert!(p(&[1]).div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(is_real_rooted(&p(&[-1, 0, 1])).unwrap());
        assert!(!is_real_rooted(&p(&[1, 0, 1])).unwrap());
        // (x-1)^3 (x+2)^2 has repeated roots but all real.
        let q = &p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2);
        assert!(is_real_rooted(&q).unwrap());
        assert!(is_real_rooted(&p(&[5])).unwrap());
        assert!(is_real_rooted(&Poly::zero()).is_err());
    }

    #[test]
    fn root_counting_on_intervals() {
        // roots at -2, 1, 3
        let q = &(&p(&[2, 1]) * &p(&[-1, 1])) * &p(&[-3, 1]);
        let c = SturmChain::new(&q).unwrap();
        assert_eq!(c.count(&Bound::NegInf, &Bound::PosInf), 3);
        assert_eq!(c.count(&Bound::At(rat(0, 1)), &Bound::At(rat(3, 1))), 2);
        assert_eq!(c.count(&Bound::At(rat(1, 1)), &Bound::At(rat(3, 1))), 1);
        assert_eq!(c.count(&Bound::NegInf, &Bound::At(rat(-2, 1))), 1);
    }

    #[test]
    fn substitute_phi_examples() {
        assert_eq!(substitute_phi(&p(&[0, 1])), phi_minus_inverse());
        let expect = LaurentPoly::from_terms([(2, rat(1, 1)), (0, rat(-1, 1)), (-2, rat(1, 1))]);
        assert_eq!(substitute_phi(&p(&[1, 0, 1])), expect);
        assert_eq!(substitute_phi(&p(&[1])), LaurentPoly::one());
    }

    #[test]
    fn laurent_exact_division() {
        // (phi^3 + phi^-3) / (phi + phi^-1) = phi^2 - 1 + phi^-2
        let num = LaurentPoly::from_terms([(3, rat(1, 1)), (-3, rat(1, 1))]);
        let den = LaurentPoly::from_terms([(1, rat(1, 1)), (-1, rat(1, 1))]);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, substitute_phi(&p(&[1, 0, 1])));
        let odd = LaurentPoly::from_terms([(2, rat(1, 1)), (-3, rat(1, 1))]);
        assert!(odd.div_exact(&den).is_none());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #[test]
        fn shift_round_trip(q in small_poly(12), j in prop::sample::select(vec![-2i64, -1, 1, 2])) {
            let j = rat(j, 1);
            prop_assert_eq!(q.taylor_shift(&j).taylor_shift(&-j), q);
        }

        #[test]
        fn quadratic_discriminant(a in 1i64..30, b in -30i64..30, c in -30i64..30, neg in any::<bool>()) {
            let a = if neg { -a } else { a };
            let q = p(&[c, b, a]);
            let disc = b * b - 4 * a * c;
            prop_assert_eq!(is_real_rooted(&q).unwrap(), disc >= 0);
        }

        #[test]
        fn substitute_phi_is_multiplicative(a in small_poly(6), b in small_poly(6)) {
            prop_assert_eq!(substitute_phi(&(&a * &b)), &substitute_phi(&a) * &substitute_phi(&b));
        }

        #[test]
        fn sturm_counts_add_up(
            roots in prop::collection::vec(-8i64..8, 1..6),
            extra in 0i64..4,
            cuts in (-10i64..0, -3i64..3, 1i64..10),
        ) {
            let mut q = Poly::product_of_linear(roots.iter().map(|r| (rat(-*r, 1), rat(1, 1))));
            q = &q * &p(&[extra, 0, 1]);
            let mut v = [cuts.0, cuts.1, cuts.2];
            v.sort();
            let [a, b, c] = v.map(|t| rat(2 * t + 1, 2));
            prop_assume!(!q.eval(&b).is_zero());
            let ch = SturmChain::new(&q).unwrap();
            let left = ch.count(&Bound::At(a.clone()), &Bound::At(b.clone()));
            let right = ch.count(&Bound::At(b), &Bound::At(c.clone()));
            prop_assert_eq!(left + right, ch.count(&Bound::At(a), &Bound::At(c)));
        }
    }

    #[test]
    fn quadratic_sweep_500() {
        // deterministic companion to the proptest above
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 41) as i64 - 20
        };
        for _ in 0..500 {
            let (mut a, b, c) = (next(), next(), next());
            if a == 0 {
                a = 1;
            }
            let disc = b * b - 4 * a * c;
            assert_eq!(is_real_rooted(&p(&[c, b, a])).unwrap(), disc >= 0);
        }
    }
}

//! Decision trees for `nu_2(C(l, m))`, where `C(l, m) = A(l, l + s(m-1))`
//! with `s = 2^{1 + nu_2(l)}` picks one representative per block of the
//! valuation sequence. Each vertex stands for the indices `2^k (m-1) + a`; a
//! vertex is terminal once `nu_2(C) - nu_2(m)` is constant along it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::kernel::nu2_factorial;
use crate::report::{Report, Witness};
use crate::valuation::{nu2_a_formula, nu2_a_table, predicted_block, Nu2Method, ValuationSeries};

/// `floor(log2 l)`.
pub fn kstar(l: u64) -> Result<u32> {
    if l == 0 {
        return Err(Error::Domain("kstar needs l >= 1"));
    }
    Ok(63 - l.leading_zeros())
}

/// `nu_2(C(l, m))` for `m = 1..=count`.
pub fn c_series(l: u64, count: usize, method: Nu2Method) -> Result<ValuationSeries> {
    if l == 0 || count == 0 {
        return Err(Error::Domain("c_series needs l >= 1 and count >= 1"));
    }
    let s = predicted_block(l);
    let values = match method {
        Nu2Method::Formula => (0..count as u64)
            .map(|i| nu2_a_formula(l, l + s * i))
            .collect(),
        Nu2Method::Direct => {
            let m_max = l + s * (count as u64 - 1);
            let row = nu2_a_table(l, m_max).swap_remove(l as usize);
            row.into_iter().step_by(s as usize).collect()
        }
    };
    Ok(ValuationSeries {
        p: 2,
        l,
        start_m: 1,
        values,
    })
}

/// The quantities `j1, j2, j3` and, where the factorial arguments are
/// nonnegative, `gamma1, gamma2, gamma3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gammas {
    pub j1: i64,
    pub j2: i64,
    pub j3: i64,
    pub gamma1: Option<u64>,
    pub gamma2: Option<u64>,
    pub gamma3: Option<u64>,
}

fn gamma_from(l: i64, base: i64, j: i64) -> Option<u64> {
    let (x, y) = (j + l - 1, l - j);
    if x < 0 || y < 0 {
        return None;
    }
    Some(base as u64 + nu2_factorial(x as u64) + nu2_factorial(y as u64))
}

fn j_of(l: i64, k: u32, a: i64) -> i64 {
    -l + 2 * (1 + (1i64 << k) - a)
}

pub fn gammas(l: u64, k: u32, a: u64) -> Gammas {
    let (li, ai, ki) = (l as i64, a as i64, i64::from(k));
    let j1 = j_of(li, k, ai);
    let j2 = j_of(li, k + 1, ai);
    let j3 = j_of(li, k + 1, ai + (1i64 << k));
    Gammas {
        j1,
        j2,
        j3,
        gamma1: gamma_from(li, li + ki + 1, j1),
        gamma2: gamma_from(li, li + ki + 2, j2),
        gamma3: gamma_from(li, li + ki + 2, j3),
    }
}

fn require(g: Option<u64>, which: &str, l: u64, k: u32, a: u64) -> Result<u64> {
    g.ok_or_else(|| {
        Error::InvalidArgument(format!("{which}({l},{k},{a}): negative factorial argument"))
    })
}

pub fn gamma1(l: u64, k: u32, a: u64) -> Result<u64> {
    require(gammas(l, k, a).gamma1, "gamma1", l, k, a)
}

pub fn gamma2(l: u64, k: u32, a: u64) -> Result<u64> {
    require(gammas(l, k, a).gamma2, "gamma2", l, k, a)
}

pub fn gamma3(l: u64, k: u32, a: u64) -> Result<u64> {
    require(gammas(l, k, a).gamma3, "gamma3", l, k, a)
}

/// `nu_2(C(l, m)) = constant + nu_2((m + shift) / modulus)` when
/// `m = residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Case {
    pub modulus: u64,
    pub residue: u64,
    pub constant: u64,
    pub shift: u64,
}

impl Case {
    pub fn matches(&self, m: u64) -> bool {
        m % self.modulus == self.residue
    }

    pub fn eval(&self, m: u64) -> u64 {
        self.constant + ((m + self.shift) / self.modulus).trailing_zeros() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFormula {
    pub l: u64,
    pub cases: Vec<Case>,
}

/// Case list from the gamma constants: the level-`k*` family, then the two
/// families one level below it.
pub fn piecewise_formula(l: u64) -> Result<PiecewiseFormula> {
    let k = kstar(l)?;
    let low = 1u64 << k;
    let high = low << 1;
    let mut cases = Vec::with_capacity(l as usize);
    for a in 1..=high - l {
        cases.push(Case {
            modulus: low,
            residue: a % low,
            constant: gamma1(l, k, a)?,
            shift: low - a,
        });
    }
    for a in high - l + 1..=low {
        cases.push(Case {
            modulus: high,
            residue: a % high,
            constant: gamma2(l, k, a)?,
            shift: high - a,
        });
    }
    for a in high - l + 1..=low {
        cases.push(Case {
            modulus: high,
            residue: (a + low) % high,
            constant: gamma3(l, k, a)?,
            shift: low - a,
        });
    }
    Ok(PiecewiseFormula { l, cases })
}

impl PiecewiseFormula {
    pub fn case_for(&self, m: u64) -> Option<&Case> {
        self.cases.iter().find(|c| c.matches(m))
    }

    pub fn eval(&self, m: u64) -> Option<u64> {
        self.case_for(m).map(|c| c.eval(m))
    }

    /// Whether every residue class is covered exactly once.
    pub fn is_partition(&self) -> bool {
        let big = self.cases.iter().map(|c| c.modulus).max().unwrap_or(1);
        (0..big).all(|r| self.cases.iter().filter(|c| c.matches(r)).count() == 1)
    }

    pub fn as_tuples(&self) -> Vec<(u64, u64, u64, u64)> {
        self.cases
            .iter()
            .map(|c| (c.modulus, c.residue, c.constant, c.shift))
            .collect()
    }
}

impl fmt::Display for PiecewiseFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu2(C({}, m)) =", self.l)?;
        for c in &self.cases {
            let arg = if c.shift == 0 {
                format!("m/{}", c.modulus)
            } else {
                format!("(m+{})/{}", c.shift, c.modulus)
            };
            writeln!(
                f,
                "  {} + nu2({})  if m = {} mod {}",
                c.constant, arg, c.residue, c.modulus
            )?;
        }
        Ok(())
    }
}

/// Compare the piecewise formula with `c_series` at `m = 1..=count`.
pub fn verify_piecewise(l: u64, count: usize, method: Nu2Method) -> Result<Report> {
    let formula = piecewise_formula(l)?;
    let data = c_series(l, count, method)?;
    let params = format!("l={l} m<={count}");
    for (m, v) in data.ms().zip(&data.values) {
        match formula.eval(m) {
            Some(f) if f == *v => {}
            got => {
                let lhs = got.map_or_else(|| String::from("no case"), |g| format!("{g}"));
                return Ok(Report::fail(
                    "verify_piecewise",
                    params,
                    Witness::new(format!("m={m}"), lhs, v),
                ));
            }
        }
    }
    Ok(Report::pass("verify_piecewise", params).with_detail("cases", formula.cases.len()))
}

/// A vertex standing for the indices `2^level (m-1) + residue`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub level: u32,
    pub residue: u64,
    pub gamma: Option<i64>,
    pub children: Option<(usize, usize)>,
}

impl Node {
    pub fn is_terminal(&self) -> bool {
        self.gamma.is_some()
    }

    pub fn label(&self) -> String {
        format!("2^{}(m-1)+{}", self.level, self.residue)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTree {
    pub l: u64,
    pub probe: usize,
    /// Arena; the root is index 0 and children follow their parents.
    pub nodes: Vec<Node>,
}

/// Probe window used by [`build_tree`] when none is given.
pub const DEFAULT_PROBE: usize = 64;

/// Grow the tree from data: a vertex is terminal when `nu_2(C) - nu_2(m)` is
/// constant over `probe` consecutive `m`; splitting stops at level `k* + 1`.
pub fn build_tree(l: u64, probe: usize, method: Nu2Method) -> Result<DecisionTree> {
    let ks = kstar(l)?;
    if probe < 2 {
        return Err(Error::InvalidArgument(
            "probe window must be at least 2".into(),
        ));
    }
    let max_level = ks + 1;
    let needed = (1usize << max_level) * probe;
    let c = c_series(l, needed, method)?.values;
    let mut nodes = alloc::vec![Node {
        level: 0,
        residue: 1,
        gamma: None,
        children: None,
    }];
    let mut i = 0;
    while i < nodes.len() {
        let (k, a) = (nodes[i].level, nodes[i].residue);
        let step = 1u64 << k;
        let diffs: Vec<i64> = (1..=probe as u64)
            .map(|m| {
                let idx = step * (m - 1) + a;
                c[idx as usize - 1] as i64 - m.trailing_zeros() as i64
            })
            .collect();
        if diffs.iter().all(|d| *d == diffs[0]) {
            nodes[i].gamma = Some(diffs[0]);
        } else if k >= max_level {
            return Err(Error::TreeUndecided {
                level: k,
                residue: a,
            });
        } else {
            let left = nodes.len();
            nodes.push(Node {
                level: k + 1,
                residue: a,
                gamma: None,
                children: None,
            });
            nodes.push(Node {
                level: k + 1,
                residue: a + step,
                gamma: None,
                children: None,
            });
            nodes[i].children = Some((left, left + 1));
        }
        i += 1;
    }
    Ok(DecisionTree { l, probe, nodes })
}

impl DecisionTree {
    pub fn terminals(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.is_terminal())
    }

    pub fn depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    /// `(vertices, terminals)` for each level.
    pub fn level_counts(&self) -> Vec<(usize, usize)> {
        let mut out = alloc::vec![(0, 0); self.depth() as usize + 1];
        for n in &self.nodes {
            let e = &mut out[n.level as usize];
            e.0 += 1;
            if n.is_terminal() {
                e.1 += 1;
            }
        }
        out
    }

    /// Terminal vertices as sorted `(level, residue)` pairs: the tree up to labels.
    pub fn shape(&self) -> Vec<(u32, u64)> {
        let mut s: Vec<(u32, u64)> = self.terminals().map(|n| (n.level, n.residue)).collect();
        s.sort_unstable();
        s
    }

    /// Compare level counts with the theorem: complete through level `k*`,
    /// `2^{k*+1} - l` terminals at level `k*`, `2(l - 2^{k*})` at level `k* + 1`.
    pub fn theorem_check(&self) -> Report {
        let ks = kstar(self.l).expect("l >= 1") as usize;
        let counts = self.level_counts();
        let params = format!("l={}", self.l);
        let expect_k = (2u64 << ks) - self.l;
        let expect_next = 2 * (self.l - (1u64 << ks));
        for k in 0..=ks {
            let got = counts.get(k).map_or(0, |c| c.0);
            if got != 1 << k {
                return Report::fail(
                    "tree_shape",
                    params,
                    Witness::new(format!("vertices at level {k}"), got, 1u64 << k),
                );
            }
        }
        let term_k = counts[ks].1 as u64;
        if term_k != expect_k {
            return Report::fail(
                "tree_shape",
                params,
                Witness::new(format!("terminals at level {ks}"), term_k, expect_k),
            );
        }
        let term_next = counts.get(ks + 1).map_or(0, |c| c.1) as u64;
        if term_next != expect_next || counts.len() > ks + 2 {
            return Report::fail(
                "tree_shape",
                params,
                Witness::new(
                    format!("terminals at level {}", ks + 1),
                    term_next,
                    expect_next,
                ),
            );
        }
        Report::pass("tree_shape", params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kstar_examples() {
        assert_eq!(kstar(3).unwrap(), 1);
        assert_eq!(kstar(13).unwrap(), 3);
        assert_eq!(kstar(16).unwrap(), 4);
        assert!(kstar(0).is_err());
    }

    #[test]
    fn gamma_examples() {
        let g = gammas(3, 1, 1);
        assert_eq!((g.j1, g.gamma1), (1, Some(7)));
        assert_eq!(gamma1(13, 3, 1).unwrap(), 36);
        let g = gammas(13, 3, 4);
        assert_eq!((g.j2, g.gamma2), (13, Some(40)));
        assert!(gamma1(3, 1, 9).is_err());
    }

    #[test]
    fn c_series_examples() {
        let c3 = c_series(3, 5, Nu2Method::Direct).unwrap();
        assert_eq!(c3.values, [7, 9, 8, 9, 7]);
        let c13 = c_series(13, 2, Nu2Method::Direct).unwrap();
        assert_eq!(c13.values, [36, 37]);
        assert_eq!(
            c_series(13, 40, Nu2Method::Direct),
            c_series(13, 40, Nu2Method::Formula)
        );
    }

    #[test]
    fn printed_formulas() {
        let f13 = piecewise_formula(13).unwrap();
        let expect: [(u64, u64, u64, u64); 13] = [
            (8, 1, 36, 7),
            (8, 2, 37, 6),
            (8, 3, 36, 5),
            (16, 4, 40, 12),
            (16, 5, 38, 11),
            (16, 6, 39, 10),
            (16, 7, 38, 9),
            (16, 8, 40, 8),
            (16, 12, 40, 4),
            (16, 13, 38, 3),
            (16, 14, 39, 2),
            (16, 15, 38, 1),
            (16, 0, 40, 0),
        ];
        assert_eq!(f13.as_tuples(), expect);
        assert!(f13.is_partition());
        let mut f3 = piecewise_formula(3).unwrap().as_tuples();
        f3.sort_unstable();
        assert_eq!(f3, [(2, 1, 7, 1), (4, 0, 9, 0), (4, 2, 9, 2)]);
    }

    #[test]
    fn odd_formulas_verify() {
        for l in [1, 3, 5, 7, 13, 21, 39] {
            let r = verify_piecewise(l, 256, Nu2Method::Formula).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(verify_piecewise(13, 64, Nu2Method::Direct).unwrap().passed);
    }

    #[test]
    fn tree_for_five() {
        let t = build_tree(5, DEFAULT_PROBE, Nu2Method::Formula).unwrap();
        assert_eq!(t.shape(), [(2, 1), (2, 2), (2, 3), (3, 4), (3, 8)]);
        let four_m = t
            .nodes
            .iter()
            .find(|n| n.level == 2 && n.residue == 4)
            .unwrap();
        let (x, y) = four_m.children.unwrap();
        assert_eq!(
            (t.nodes[x].label(), t.nodes[y].label()),
            ("2^3(m-1)+4".into(), "2^3(m-1)+8".into())
        );
        assert!(t.theorem_check().passed);
    }

    #[test]
    fn tree_for_three() {
        let t = build_tree(3, DEFAULT_PROBE, Nu2Method::Formula).unwrap();
        let terms: Vec<(u32, u64, i64)> = t
            .terminals()
            .map(|n| (n.level, n.residue, n.gamma.unwrap()))
            .collect();
        assert_eq!(terms, [(1, 1, 7), (2, 2, 9), (2, 4, 9)]);
        assert_eq!(t.level_counts(), [(1, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn odd_part_shapes() {
        for l in [1u64, 3, 5, 7] {
            let base = build_tree(l, DEFAULT_PROBE, Nu2Method::Formula)
                .unwrap()
                .shape();
            for r in 1..=2 {
                let t = build_tree(l << r, DEFAULT_PROBE, Nu2Method::Formula).unwrap();
                assert_eq!(t.shape(), base, "l={}", l << r);
            }
        }
    }
}

//! Parallel sweeps over parameter grids and seeded random samples. Results
//! always come back in input order.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use quartic_core::concavity::{fisk_probe, is_log_concave, shift_unimodal_check};
use quartic_core::kernel::{rat, Rat};
use quartic_core::poly::Poly;
use quartic_core::report::{Report, Witness};

/// Map `f` over `items` on `jobs` threads (all cores when `None`).
pub fn par_map<T, R, F>(jobs: Option<usize>, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

/// A product of `(x + r)` with random positive rational `r`, degree `1..=max_degree`.
pub fn random_real_rooted(rng: &mut impl Rng, max_degree: usize) -> Poly {
    let deg = rng.random_range(1..=max_degree);
    Poly::product_of_linear((0..deg).map(|_| {
        let r = rat(rng.random_range(1..=60), rng.random_range(1..=9));
        (r, Rat::from_integer(1.into()))
    }))
}

/// Positive nondecreasing integer sequence of length `1..=max_len`.
pub fn random_nondecreasing(rng: &mut impl Rng, max_len: usize) -> Vec<Rat> {
    let len = rng.random_range(1..=max_len);
    let mut acc: i64 = rng.random_range(1..=5);
    (0..len)
        .map(|_| {
            acc += rng.random_range(0..=6);
            rat(acc, 1)
        })
        .collect()
}

fn samples<T>(seed: u64, count: usize, mut gen: impl FnMut(&mut ChaCha8Rng) -> T) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen(&mut rng)).collect()
}

fn summarise(
    id: &str,
    params: String,
    failures: Vec<(usize, String, String)>,
    total: usize,
) -> Report {
    let passed = total - failures.len();
    let r = match failures.into_iter().next() {
        None => Report::pass(id, params),
        Some((i, lhs, rhs)) => {
            Report::fail(id, params, Witness::new(format!("sample={i}"), lhs, rhs))
        }
    };
    r.with_detail("samples", total)
        .with_detail("passed", passed)
}

/// Coefficients of random real-rooted polynomials are log-concave.
pub fn newton_sweep(
    count: usize,
    max_degree: usize,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Report> {
    let polys = samples(seed, count, |r| random_real_rooted(r, max_degree));
    let results = par_map(jobs, &polys, |p| is_log_concave(p.coeffs()) == Some(true))?;
    let failures = results
        .iter()
        .zip(&polys)
        .enumerate()
        .filter(|(_, (ok, _))| !**ok)
        .map(|(i, (_, p))| (i, p.to_string(), "log-concave".to_string()))
        .collect();
    Ok(summarise(
        "newton",
        format!("samples={count} degree<={max_degree} seed={seed}"),
        failures,
        count,
    ))
}

/// The operator `L` keeps random real-rooted polynomials real-rooted.
pub fn fisk_sweep(
    count: usize,
    max_degree: usize,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Report> {
    let polys = samples(seed, count, |r| random_real_rooted(r, max_degree));
    let results = par_map(jobs, &polys, fisk_probe)?;
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        if !r.passed {
            failures.push((
                i,
                polys[i].to_string(),
                r.witness.map(|w| w.lhs).unwrap_or_default(),
            ));
        }
    }
    Ok(summarise(
        "fisk",
        format!("samples={count} degree<={max_degree} seed={seed}"),
        failures,
        count,
    ))
}

/// `A(x + 1)` is unimodal for random positive nondecreasing coefficient lists.
pub fn shift_sweep(count: usize, max_len: usize, seed: u64, jobs: Option<usize>) -> Result<Report> {
    let seqs = samples(seed, count, |r| random_nondecreasing(r, max_len));
    let results = par_map(jobs, &seqs, |s| shift_unimodal_check(s))?;
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        if !r? {
            let s: Vec<String> = seqs[i].iter().map(ToString::to_string).collect();
            failures.push((i, s.join(","), "unimodal after shift".to_string()));
        }
    }
    Ok(summarise(
        "shift_unimodal",
        format!("samples={count} len<={max_len} seed={seed}"),
        failures,
        count,
    ))
}

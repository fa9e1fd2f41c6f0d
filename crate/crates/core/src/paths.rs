//! Brute-force count of compass-step paths that end on the vertical axis.

use crate::error::{Error, Result};
use crate::kernel::Int;

/// Largest supported `m`; the search visits `4^{2m+1}` paths.
pub const MAX_PATH_M: u64 = 4;

/// Number of `(2m+1)`-step paths with steps N, S, E, W from the origin whose
/// endpoint has `x = 0`, found by visiting every path.
pub fn enumerate_paths(m: u64) -> Result<Int> {
    if m > MAX_PATH_M {
        return Err(Error::BoundExceeded {
            what: "path length parameter m",
            bound: MAX_PATH_M,
        });
    }
    fn walk(steps_left: u64, x: i64) -> u64 {
        if steps_left == 0 {
            return u64::from(x == 0);
        }
        // N and S leave x alone; E and W move it.
        [(0, 0), (0, 0), (1, 0), (-1, 0)]
            .iter()
            .map(|(dx, _)| walk(steps_left - 1, x + dx))
            .sum()
    }
    Ok(Int::from(walk(2 * m + 1, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::choose;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_paths(0).unwrap(), Int::from(2));
        assert_eq!(enumerate_paths(1).unwrap(), Int::from(20));
        assert_eq!(enumerate_paths(2).unwrap(), Int::from(252));
        assert!(matches!(
            enumerate_paths(5),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn matches_central_binomial() {
        for m in 0..=3 {
            assert_eq!(enumerate_paths(m).unwrap(), choose(4 * m + 2, 2 * m + 1));
        }
    }
}

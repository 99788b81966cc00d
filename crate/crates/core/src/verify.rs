//! The full invariant suite behind `verify`: every identity, law, and
//! oracle equivalence the crate relies on, checked at a chosen scale.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;

use crate::arith::{binomial, catalan, catalan_recursion_residual, BigNat};
use crate::census::{
    brute_force_reducible_count, incidence_matrix, moment_identity_residual, reducible_count_closed_a,
    reducible_count_closed_ab, row_reducible_count, t_nk, t_nk_combined, union_sizes, CensusConfig,
    INCIDENCE_CAP,
};
use crate::error::{Error, Result};
use crate::tableau::{build_tableau, predicted_intersection_size, TableauKind};
use crate::tree::{cherry_count, enumerate_iterates};

/// Index tuples sampled per order and tuple size for the intersection law.
pub const LAW_SAMPLES: usize = 500;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest order for anything that builds a tableau.
    pub max_n: usize,
    pub config: CensusConfig,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 8, config: CensusConfig::default(), seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, smallest witness on failure.
    pub detail: String,
}

type Check = fn(&VerifyOptions) -> Result<String>;

fn fail(msg: String) -> Error {
    Error::Consistency(msg)
}

fn pascal(_: &VerifyOptions) -> Result<String> {
    for n in 1..=60i64 {
        for k in 0..=n {
            if binomial(n, k) != binomial(n - 1, k - 1) + binomial(n - 1, k) {
                return Err(fail(format!("Pascal rule fails at C({n},{k})")));
            }
        }
    }
    Ok("1 <= n <= 60".into())
}

fn catalan_recursion(_: &VerifyOptions) -> Result<String> {
    for k in 1..=60 {
        if !catalan_recursion_residual(k)?.is_zero() {
            return Err(fail(format!("Catalan recursion residual nonzero at k={k}")));
        }
    }
    for n in 1..=200i64 {
        let (prev, cur) = (catalan(n - 1)?, catalan(n)?);
        if cur >= &prev * 4u32 || (n >= 2 && cur <= prev) {
            return Err(fail(format!("Catalan growth out of (1, 4) at n={n}")));
        }
    }
    Ok("k <= 60, growth checked to n = 200".into())
}

fn enumeration(o: &VerifyOptions) -> Result<String> {
    let top = o.max_n.max(10).min(o.config.enumeration_cap);
    for n in 0..=top {
        let got = enumerate_iterates(n, o.config.enumeration_cap)?.len();
        if BigNat::from(got) != catalan(n as i64)? {
            return Err(fail(format!("enumeration of order {n} has {got} trees")));
        }
    }
    Ok(format!("0 <= n <= {top}"))
}

fn intersection_law(o: &VerifyOptions) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut checked = 0usize;
    for n in 3..=o.max_n {
        let t = build_tableau(TableauKind::AB, n, o.config.enumeration_cap)?;
        let lines = n + 2;
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for i in 1..=lines {
            for j in i..=lines {
                tuples.push(vec![i, j]);
            }
        }
        for size in [3, 4] {
            for _ in 0..LAW_SAMPLES {
                tuples.push(sample(&mut rng, lines, size).into_iter().map(|i| i + 1).collect());
            }
        }
        for tuple in &tuples {
            let got = t.line_intersection_size(tuple)?;
            let want = predicted_intersection_size(n, tuple)?;
            if got != want {
                return Err(fail(format!("n={n} lines {tuple:?}: intersection {got}, law {want}")));
            }
        }
        checked += tuples.len();
    }
    Ok(format!("3 <= n <= {}, {checked} index tuples", o.max_n))
}

fn cherry_multiplicity(o: &VerifyOptions) -> Result<String> {
    let top = o.max_n.clamp(2, 10);
    for n in 1..=top {
        let a = build_tableau(TableauKind::A, n, o.config.enumeration_cap)?;
        let ab = build_tableau(TableauKind::AB, n, o.config.enumeration_cap)?;
        let (ma, mab) = (a.multiplicities(), ab.multiplicities());
        for (idx, &tree) in a.universe().iter().enumerate() {
            let c = cherry_count(tree)?;
            let extra = tree.root_left_is_leaf() as usize + tree.root_right_is_leaf() as usize;
            if ma[idx] as usize != c || mab[idx] as usize != c + extra {
                return Err(fail(format!(
                    "multiplicity of {tree} is ({}, {}), cherry formula gives ({c}, {})",
                    ma[idx],
                    mab[idx],
                    c + extra
                )));
            }
        }
    }
    Ok(format!("1 <= n <= {top}"))
}

fn histograms(o: &VerifyOptions) -> Result<String> {
    let top = o.max_n.clamp(2, 10);
    for n in 2..=top {
        for kind in [TableauKind::A, TableauKind::AB] {
            let h = build_tableau(kind, n, o.config.enumeration_cap)?.multiplicity_histogram();
            for k in 1..=n + 2 {
                let closed = match kind {
                    TableauKind::A => t_nk(n as i64, k as i64),
                    _ => t_nk_combined(n as i64, k as i64)?,
                };
                if BigNat::from(h.get(k)) != closed {
                    return Err(fail(format!(
                        "{kind} histogram at (n,k)=({n},{k}): brute {}, closed {closed}",
                        h.get(k)
                    )));
                }
            }
        }
    }
    Ok(format!("2 <= n <= {top}"))
}

fn combined_routes(_: &VerifyOptions) -> Result<String> {
    for n in 2..=60 {
        for k in 1..=n {
            t_nk_combined(n, k)?;
        }
    }
    Ok("2 <= n <= 60".into())
}

fn moment_identity(_: &VerifyOptions) -> Result<String> {
    for n in 1..=40 {
        for k in 0..=(n + 1) / 2 {
            let r = moment_identity_residual(n, k)?;
            if !r.is_zero() {
                return Err(fail(format!("moment identity residual {r} at (n,k)=({n},{k})")));
            }
        }
    }
    Ok("n <= 40".into())
}

fn oracle_equivalence(o: &VerifyOptions) -> Result<String> {
    let top = o.max_n.min(o.config.brute_cap);
    for n in 2..=top {
        for kind in [TableauKind::A, TableauKind::AB] {
            let t = build_tableau(kind, n, o.config.enumeration_cap)?;
            let brute = brute_force_reducible_count(&t, o.config.brute_cap, o.config.workers)?;
            let closed = match kind {
                TableauKind::A => reducible_count_closed_a(n as i64)?,
                _ => reducible_count_closed_ab(n as i64)?,
            };
            if brute != closed {
                return Err(fail(format!("I_{kind} at n={n}: brute {brute}, closed {closed}")));
            }
        }
    }
    Ok(format!("2 <= n <= {top}"))
}

fn row_sums(o: &VerifyOptions) -> Result<String> {
    for n in 3..=o.max_n {
        for kind in [TableauKind::A, TableauKind::AB] {
            let t = build_tableau(kind, n, o.config.enumeration_cap)?;
            let sizes = union_sizes(&t, o.config.workers);
            for (idx, (m, s)) in t.multiplicities().into_iter().zip(sizes).enumerate() {
                let want = row_reducible_count(n as i64, m as i64)?;
                if BigNat::from(s) != want {
                    return Err(fail(format!(
                        "{kind} row of {} (multiplicity {m}): union {s}, formula {want}",
                        t.universe()[idx]
                    )));
                }
            }
        }
    }
    Ok(format!("3 <= n <= {}", o.max_n))
}

fn incidence(o: &VerifyOptions) -> Result<String> {
    let top = o.max_n.min(INCIDENCE_CAP);
    for n in 1..=top {
        for kind in [TableauKind::A, TableauKind::AB] {
            let m = incidence_matrix(&build_tableau(kind, n, o.config.enumeration_cap)?)?;
            for i in 0..m.len() {
                if m[i][i] != 1 || (0..m.len()).any(|j| m[i][j] != m[j][i]) {
                    return Err(fail(format!("{kind} incidence matrix at n={n} row {i}")));
                }
            }
        }
    }
    Ok(format!("1 <= n <= {top}"))
}

fn published(_: &VerifyOptions) -> Result<String> {
    for (n, ia, iab) in [(3i64, 11u32, 15u32), (4, 88, 116), (5, 834, 1050)] {
        let (a, ab) = (reducible_count_closed_a(n)?, reducible_count_closed_ab(n)?);
        if a != BigNat::from(ia) || ab != BigNat::from(iab) {
            return Err(fail(format!("n={n}: ({a}, {ab}) expected ({ia}, {iab})")));
        }
    }
    Ok("n = 3, 4, 5".into())
}

fn monotone(_: &VerifyOptions) -> Result<String> {
    for n in 3..=10 {
        let (a, ab) = (reducible_count_closed_a(n)?, reducible_count_closed_ab(n)?);
        let total = catalan(n)?.pow(2);
        if !(a < ab && ab <= total) {
            return Err(fail(format!("n={n}: I_A {a}, I_AB {ab}, S_n^2 {total}")));
        }
    }
    Ok("3 <= n <= 10".into())
}

const CHECKS: &[(&str, Check)] = &[
    ("binomial-pascal", pascal),
    ("catalan-recursion", catalan_recursion),
    ("enumeration-count", enumeration),
    ("intersection-law", intersection_law),
    ("cherry-multiplicity", cherry_multiplicity),
    ("histogram-equivalence", histograms),
    ("combined-multiplicity-routes", combined_routes),
    ("moment-identity", moment_identity),
    ("oracle-equivalence", oracle_equivalence),
    ("row-sum-law", row_sums),
    ("incidence-symmetry", incidence),
    ("published-counts", published),
    ("reducible-monotone", monotone),
];

/// Runs every check, continuing past failures.
pub fn run_suite(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| match check(opts) {
            Ok(detail) => CheckOutcome { name, passed: true, detail },
            Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let opts = VerifyOptions { max_n: 5, ..Default::default() };
        let out = run_suite(&opts);
        assert_eq!(out.len(), CHECKS.len());
        for c in &out {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}

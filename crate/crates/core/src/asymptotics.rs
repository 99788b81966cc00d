//! Floating-point diagnostics comparing exact counts for `A_n ⊕ B_n` with the
//! heuristic estimate `(n+2)/n · (1 - e^{-n/16}) · S_n^2` and the bound on the
//! irreducible remainder.

use serde::{Deserialize, Serialize};

use crate::arith::{binomial, catalan, catalan_or_zero, ratio_to_f64};
use crate::census::{reducible_count_series_ab, DEFAULT_CLOSED_CAP};
use crate::error::{Error, Result};

/// One row of the asymptotic table. All values are ratios to `S_n^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub n: usize,
    pub exact_ratio: f64,
    pub estimate_ratio: f64,
    pub irreducible_exact_ratio: f64,
    pub theorem_bound_ratio: f64,
}

impl AsymptoticRow {
    pub const CSV_HEADER: &'static str =
        "n,exact_ratio,estimate_ratio,irreducible_exact_ratio,theorem_bound_ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:e},{:e},{:e},{:e}",
            self.n,
            self.exact_ratio,
            self.estimate_ratio,
            self.irreducible_exact_ratio,
            self.theorem_bound_ratio
        )
    }
}

fn check_range(n: usize, cap: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::arg(format!("asymptotic ratios need n >= 2, got {n}")));
    }
    if n > cap {
        return Err(Error::ResourceLimit { what: "closed-form order", requested: n, cap });
    }
    Ok(())
}

/// `I⊕_n / S_n^2` and `(S_n^2 - I⊕_n) / S_n^2`, both from exact integers.
fn exact_pair(n: usize) -> Result<(f64, f64)> {
    let i = reducible_count_series_ab(n as i64)?;
    let s = catalan(n as i64)?;
    let sq = &s * &s;
    if i > sq {
        return Err(Error::Consistency(format!("reducible count exceeds S_n^2 at n={n}")));
    }
    let irr = &sq - &i;
    Ok((ratio_to_f64(&i, &sq), ratio_to_f64(&irr, &sq)))
}

/// Exact fraction of reducible identities, `I⊕_n / S_n^2`.
pub fn exact_ratio(n: usize) -> Result<f64> {
    check_range(n, DEFAULT_CLOSED_CAP)?;
    Ok(exact_pair(n)?.0)
}

/// `(n+2)/n · (1 - e^{-n/16})`.
pub fn estimate_ratio(n: usize) -> f64 {
    let n = n as f64;
    (n + 2.0) / n * -(-n / 16.0).exp_m1()
}

/// `|(n+2)/n · e^{-n/16} - 2/n|`.
pub fn theorem_bound_ratio(n: usize) -> f64 {
    let n = n as f64;
    ((n + 2.0) / n * (-n / 16.0).exp() - 2.0 / n).abs()
}

pub fn asymptotic_row(n: usize, cap: usize) -> Result<AsymptoticRow> {
    check_range(n, cap)?;
    let (exact, irreducible) = exact_pair(n)?;
    Ok(AsymptoticRow {
        n,
        exact_ratio: exact,
        estimate_ratio: estimate_ratio(n),
        irreducible_exact_ratio: irreducible,
        theorem_bound_ratio: theorem_bound_ratio(n),
    })
}

/// One term of the normalized series for `I⊕_n / ((n+2) S_n^2)` next to its
/// large-`n` replacement `n^{k-1} / (k! 16^k)`. Magnitudes only; the sign is
/// `(-1)^{k-1}` for both.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermComparison {
    pub k: usize,
    pub exact_term: f64,
    pub heuristic_term: f64,
    pub sign: i8,
}

/// Exact `(1/k) C(n-k+1, k-1) (S_{n-k}/S_n)^2` against `n^{k-1}/(k! 16^k)` for `k = 1..=k_max`.
pub fn term_comparison(n: usize, k_max: usize) -> Result<Vec<TermComparison>> {
    if n < 1 || k_max < 1 || k_max > n + 1 {
        return Err(Error::arg(format!("term comparison needs 1 <= k_max <= n+1, got n={n}, k_max={k_max}")));
    }
    let s_n = catalan(n as i64)?;
    let s_sq = &s_n * &s_n;
    let ln_n = (n as f64).ln();
    let mut ln_fact = 0.0;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        ln_fact += (k as f64).ln();
        let ki = k as i64;
        let s = catalan_or_zero(n as i64 - ki);
        let num = binomial(n as i64 - ki + 1, ki - 1) * &s * &s;
        let exact_term = ratio_to_f64(&num, &(&s_sq * k));
        let heuristic_term = ((k - 1) as f64 * ln_n - ln_fact - k as f64 * 16f64.ln()).exp();
        out.push(TermComparison {
            k,
            exact_term,
            heuristic_term,
            sign: if k % 2 == 1 { 1 } else { -1 },
        });
    }
    Ok(out)
}

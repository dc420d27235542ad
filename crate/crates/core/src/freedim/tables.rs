use serde::Serialize;

use super::ast::{Expr, NormalForm};
use super::engine::{normalize_with, Options};
use super::FdimError;
use crate::rational::{q, Q};

/// One normalized family member next to its closed-form parameter.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub expr: String,
    pub form: String,
    /// Parameter of the computed `LF` core, or `None` for `ℂ`/`R` cores.
    pub parameter: Option<String>,
    pub expected: String,
    pub alias: Option<String>,
    pub matches: bool,
}

fn pow2(n: u32) -> Q {
    Q::from_integer(num_bigint::BigInt::from(1u8) << n)
}

fn run(label: String, e: Expr, expected: Q) -> Result<TableRow, FdimError> {
    let big = e.size() > 4096;
    let opts = Options { record_steps: !big, ..Options::default() };
    let out = normalize_with(&e, &opts)?;
    let form: NormalForm = out.form;
    let parameter = form.parameter().cloned();
    Ok(TableRow {
        label,
        expr: if big { "(large)".into() } else { e.to_string() },
        form: form.to_string(),
        matches: form.depth == 1 && parameter.as_ref() == Some(&expected),
        parameter: parameter.map(|t| t.to_string()),
        expected: expected.to_string(),
        alias: form.alias().map(|a| a.to_string()),
    })
}

/// `ℂ^{2ⁿ} ∗ ℂ^{2ⁿ} ≅ M₂(LF_{a_n})`, `a_n = 5 − 4/2ⁿ⁻¹`, for `n = 1..=n_max`.
pub fn dyadic_sum_sequence(n_max: u32) -> Result<Vec<TableRow>, FdimError> {
    (1..=n_max)
        .map(|n| {
            let a = Expr::sum_pow(Expr::C, n);
            let expected = q(5) - q(4) / pow2(n - 1);
            run(format!("n={n}"), Expr::Free(vec![a.clone(), a]), expected)
        })
        .collect()
}

/// `ℂ^{2ⁿ} ∗ ℂ^{2ᵐ}` for `1 ≤ n, m ≤ max`, expected `5 − 2(1/2ⁿ⁻¹ + 1/2ᵐ⁻¹)`.
pub fn mixed_dyadic_table(max: u32) -> Result<Vec<TableRow>, FdimError> {
    let mut rows = Vec::new();
    for n in 1..=max {
        for m in 1..=max {
            let e = Expr::Free(vec![Expr::sum_pow(Expr::C, n), Expr::sum_pow(Expr::C, m)]);
            let expected = q(5) - q(2) * (q(1) / pow2(n - 1) + q(1) / pow2(m - 1));
            rows.push(run(format!("n={n} m={m}"), e, expected)?);
        }
    }
    Ok(rows)
}

/// Products of amplified or summed interpolated free group factors, for
/// `1 ≤ n, m ≤ max_nm` and `0 ≤ k, l ≤ max_kl`:
///
/// 1. `LF_k^{2ⁿ} ∗ LF_l^{2ᵐ}`, expected `5 + 2(k−1)/2ⁿ⁻¹ + 2(l−1)/2ᵐ⁻¹`
/// 2. `M_{2ⁿ}(LF_k) ∗ LF_l^{2ᵐ}`, expected `5 + (k−1)/4ⁿ⁻¹ + 2(l−1)/2ᵐ⁻¹`
/// 3. `M_{2ⁿ}(LF_k) ∗ M_{2ᵐ}(LF_l)`, expected `5 + (k−1)/4ⁿ⁻¹ + (l−1)/4ᵐ⁻¹`
pub fn interpolated_table(max_nm: u32, max_kl: i64) -> Result<Vec<TableRow>, FdimError> {
    let mut rows = Vec::new();
    let summed = |t: i64, n: u32| Expr::sum_pow(Expr::LF(q(t)), n);
    let amplified = |t: i64, n: u32| Expr::mat_pow(Expr::LF(q(t)), n);
    let via_sum = |t: i64, n: u32| q(2) * q(t - 1) / pow2(n - 1);
    let via_mat = |t: i64, n: u32| q(t - 1) / pow2(2 * (n - 1));
    for family in 1..=3 {
        for n in 1..=max_nm {
            for m in 1..=max_nm {
                for k in 0..=max_kl {
                    for l in 0..=max_kl {
                        let (e, expected) = match family {
                            1 => (vec![summed(k, n), summed(l, m)], q(5) + via_sum(k, n) + via_sum(l, m)),
                            2 => (vec![amplified(k, n), summed(l, m)], q(5) + via_mat(k, n) + via_sum(l, m)),
                            _ => (vec![amplified(k, n), amplified(l, m)], q(5) + via_mat(k, n) + via_mat(l, m)),
                        };
                        let label = format!("({family}) n={n} m={m} k={k} l={l}");
                        rows.push(run(label, Expr::Free(e), expected)?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// `A^{2ⁿ} ∗ B^{2ⁿ}` and `M_{2ⁿ}(A) ∗ M_{2ⁿ}(B)` for `n = 1..=n_max`.
/// Expected parameters come from `fdim(X^{2ⁿ}) = 1 + (x−1)/2ⁿ` and
/// `fdim(M_{2ⁿ}(X)) = 1 + (x−1)/4ⁿ` with the depth-one form `4(d−1)+1`.
pub fn matched_power_table(a: &Expr, b: &Expr, n_max: u32) -> Result<Vec<TableRow>, FdimError> {
    let (fa, fb) = (a.fdim(), b.fdim());
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let d_sum = q(2) + (&fa - q(1)) / pow2(n) + (&fb - q(1)) / pow2(n);
        let d_mat = q(2) + (&fa - q(1)) / pow2(2 * n) + (&fb - q(1)) / pow2(2 * n);
        let param = |d: Q| q(4) * (d - q(1)) + q(1);
        let sums = Expr::Free(vec![Expr::sum_pow(a.clone(), n), Expr::sum_pow(b.clone(), n)]);
        rows.push(run(format!("sum n={n}"), sums, param(d_sum))?);
        let mats = Expr::Free(vec![Expr::mat_pow(a.clone(), n), Expr::mat_pow(b.clone(), n)]);
        rows.push(run(format!("mat n={n}"), mats, param(d_mat))?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_rows_match() {
        let rows = dyadic_sum_sequence(6).unwrap();
        assert!(rows.iter().all(|r| r.matches), "{rows:?}");
        assert_eq!(rows[1].alias.as_deref(), Some("3/2"));
        assert!(mixed_dyadic_table(4).unwrap().iter().all(|r| r.matches));
    }

    #[test]
    fn interpolated_rows_match() {
        let rows = interpolated_table(2, 2).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| !r.matches).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn matched_powers() {
        let rows = matched_power_table(&Expr::LF(q(2)), &Expr::R, 3).unwrap();
        assert!(rows.iter().all(|r| r.matches), "{rows:?}");
    }
}

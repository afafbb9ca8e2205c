//! U-statistics by full enumeration.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::exact::{falling, ratio, Exact};
use crate::indicator::MAX_ORDER;
use crate::perm::all_permutations;

use super::kernel::{kernel_raw, Pulls};
use super::spec::{Measure, SrcSpec};

/// Default cap on the number of kernel evaluations (ordered tuples).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The U-statistic `c / C(n,m) Σ_{i_1<…<i_m} κ(z^{i_1..i_m})`, computed
/// exactly by enumerating every subset and every ordering of it.
///
/// ```
/// use symrc::{u_stat_naive, Dataset, SrcSpec, Exact};
/// let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
/// let ds = Dataset::bivariate(&x, &x).unwrap();
/// assert_eq!(u_stat_naive(&SrcSpec::tau(), &ds).unwrap(), Exact::from(1));
/// ```
pub fn u_stat_naive<M: Measure + ?Sized>(measure: &M, data: &Dataset) -> Result<Exact> {
    u_stat_naive_with_budget(measure, data, DEFAULT_BUDGET)
}

/// [`u_stat_naive`] with an explicit tuple budget.
pub fn u_stat_naive_with_budget<M: Measure + ?Sized>(
    measure: &M,
    data: &Dataset,
    budget: u64,
) -> Result<Exact> {
    let mut total = Exact::from(0);
    for term in measure.terms() {
        total += u_stat_term(term, data, budget)?;
    }
    Ok(total)
}

fn u_stat_term(spec: &SrcSpec, data: &Dataset, budget: u64) -> Result<Exact> {
    if (spec.r(), spec.s()) != (data.r(), data.s()) {
        return Err(Error::input(format!(
            "'{}' is defined for (r, s) = ({}, {}) but the data has ({}, {})",
            spec.name(),
            spec.r(),
            spec.s(),
            data.r(),
            data.s()
        )));
    }
    let n = data.n();
    let m = spec.order();
    if n < m {
        return Err(Error::input(format!("'{}' needs n >= {m}, got n = {n}", spec.name())));
    }
    let tuples = falling(n, m)?;
    if tuples > budget as i128 {
        return Err(Error::capacity(format!(
            "naive enumeration of {tuples} tuples exceeds the budget of {budget}"
        )));
    }
    let perms: Vec<Vec<usize>> = all_permutations(m).iter().map(|p| p.as_slice().to_vec()).collect();
    let pulls = Pulls::new(spec.group());
    let rows: Vec<&[f64]> = (0..n).map(|i| data.row(i)).collect();
    let sum: i128 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut combo = [0usize; MAX_ORDER];
            combo[0] = first;
            let mut acc = 0i128;
            for_each_combination(n, m, 1, first + 1, &mut combo, &mut |c| {
                let mut buf: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
                for p in &perms {
                    for j in 0..m {
                        buf[j] = rows[c[p[j]]];
                    }
                    acc += kernel_raw(spec, &pulls, &buf[..m]) as i128;
                }
            });
            acc
        })
        .sum();
    Ok(spec.scale() * ratio(sum, tuples)?)
}

/// Calls `f` on every increasing completion of `combo[..depth]`.
fn for_each_combination(
    n: usize,
    m: usize,
    depth: usize,
    start: usize,
    combo: &mut [usize; MAX_ORDER],
    f: &mut impl FnMut(&[usize]),
) {
    if depth == m {
        f(&combo[..m]);
        return;
    }
    for i in start..=n - (m - depth) {
        combo[depth] = i;
        for_each_combination(n, m, depth + 1, i + 1, combo, f);
    }
}

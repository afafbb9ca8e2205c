//! Exact population values and kernel projections for finite supports.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{falling, Exact};
use crate::indicator::{RankIndicator, MAX_ORDER};
use crate::perm::{all_permutations, SignedGroup};

use super::dist::{DiscreteDist, PointMass};
use super::kernel::{kernel_raw, split, Pulls};
use super::spec::{Measure, SrcSpec};
use super::ustat::DEFAULT_BUDGET;

/// Which expectation `population_src_form` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopulationForm {
    /// `E[a_X(X) a_Y(Y)]`, the defining two-factor form.
    TwoFactor,
    /// `|H| E[I_X(X) a_Y(Y)]`.
    XWeighted,
    /// `|H| E[I_Y(Y) a_X(X)]`.
    YWeighted,
}

/// Exact population value by enumerating `support^m` (scale applied).
///
/// ```
/// use symrc::{population_src, DiscreteDist, SrcSpec, Exact};
/// let xor3 = DiscreteDist::xor(3).unwrap();
/// let v = population_src(&SrcSpec::joint_taustar(3, 1).unwrap(), &xor3).unwrap();
/// assert_eq!(v, Exact::new(1, 1024));
/// ```
pub fn population_src<M: Measure + ?Sized>(measure: &M, dist: &DiscreteDist) -> Result<Exact> {
    population_src_form(measure, dist, PopulationForm::TwoFactor, DEFAULT_BUDGET)
}

/// Population value in one of the equivalent expectation forms.
pub fn population_src_form<M: Measure + ?Sized>(
    measure: &M,
    dist: &DiscreteDist,
    form: PopulationForm,
    budget: u64,
) -> Result<Exact> {
    let mut total = Exact::zero();
    for spec in measure.terms() {
        check_dims(spec, dist)?;
        let m = spec.order();
        let pulls = Pulls::new(spec.group());
        let h = spec.group().size() as i128;
        let mass = dist.mass();
        let num = enumerate_tuples(mass, m, budget, &[], &[], |z| match form {
            PopulationForm::TwoFactor => kernel_raw(spec, &pulls, z) as i128,
            PopulationForm::XWeighted => {
                let (xs, ys) = split(z, spec.r());
                if spec.ix().eval(&xs[..m]) {
                    h * pulls.signed_sum(spec.iy(), &ys[..m]) as i128
                } else {
                    0
                }
            }
            PopulationForm::YWeighted => {
                let (xs, ys) = split(z, spec.r());
                if spec.iy().eval(&ys[..m]) {
                    h * pulls.signed_sum(spec.ix(), &xs[..m]) as i128
                } else {
                    0
                }
            }
        })?;
        total += spec.scale() * num;
    }
    Ok(total)
}

fn check_dims(spec: &SrcSpec, dist: &DiscreteDist) -> Result<()> {
    if (spec.r(), spec.s()) != (dist.r(), dist.s()) {
        return Err(Error::input(format!(
            "'{}' has (r, s) = ({}, {}) but the distribution has ({}, {})",
            spec.name(),
            spec.r(),
            spec.s(),
            dist.r(),
            dist.s()
        )));
    }
    Ok(())
}

/// `Σ_{placements} Σ_{support^(m-c)} P(tuple) f(tuple)` where the `c`
/// fixed points sit at `positions` and the remaining slots are filled in
/// order by random draws. Returns the exact weighted sum as a rational.
fn enumerate_tuples(
    mass: &PointMass,
    m: usize,
    budget: u64,
    fixed: &[&[f64]],
    positions: &[usize],
    mut f: impl FnMut(&[&[f64]]) -> i128,
) -> Result<Exact> {
    let free = m - fixed.len();
    let k = mass.len();
    let count = (k as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::capacity(format!(
            "enumerating {k}^{free} support tuples exceeds the budget of {budget}"
        )));
    }
    let denom = (mass.total() as i128)
        .checked_pow(free as u32)
        .ok_or_else(|| Error::capacity("probability denominator overflows 128-bit integers"))?;
    let free_slots: Vec<usize> = (0..m).filter(|&j| !positions.contains(&j)).collect();
    let mut idx = vec![0usize; free];
    let mut buf: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
    for (i, &p) in positions.iter().enumerate() {
        buf[p] = fixed[i];
    }
    let mut num: i128 = 0;
    loop {
        let mut w: i128 = 1;
        for (t, &slot) in free_slots.iter().enumerate() {
            buf[slot] = &mass.points()[idx[t]];
            w *= mass.weights()[idx[t]] as i128;
        }
        let v = f(&buf[..m]);
        if v != 0 {
            num += w * v;
        }
        // odometer
        let mut t = 0;
        loop {
            if t == free {
                return Ok(Exact::new(num, denom));
            }
            idx[t] += 1;
            if idx[t] < k {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

/// Kernel projection `κ_c(z^1..z^c) = E[κ(z^1..z^c, Z^{c+1..m})]` (scale
/// not applied), by averaging the unsymmetrised kernel over every
/// placement of the fixed points.
pub fn kernel_projection(spec: &SrcSpec, dist: &DiscreteDist, fixed: &[Vec<f64>]) -> Result<Exact> {
    check_dims(spec, dist)?;
    let m = spec.order();
    let c = fixed.len();
    let d = spec.r() + spec.s();
    if c == 0 || c > m || fixed.iter().any(|p| p.len() != d) {
        return Err(Error::input(format!("kernel projection needs 1..={m} fixed points of dimension {d}")));
    }
    let pulls = Pulls::new(spec.group());
    let cols: Vec<&[f64]> = fixed.iter().map(|p| p.as_slice()).collect();
    let mut total = Exact::zero();
    for positions in placements(m, c) {
        total += enumerate_tuples(dist.mass(), m, DEFAULT_BUDGET, &cols, &positions, |z| {
            kernel_raw(spec, &pulls, z) as i128
        })?;
    }
    Ok(total / Exact::from(falling(m, c)?))
}

/// Injective maps `[c] -> [m]`.
fn placements(m: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(m: usize, c: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for p in 0..m {
            if !cur.contains(&p) {
                cur.push(p);
                rec(m, c, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, c, &mut cur, &mut out);
    out
}

/// `E[a_I(w^1..w^c, W^{c+1..m})]` with the `W` drawn iid from `law`.
pub fn a_expectation(
    ind: &RankIndicator,
    group: &SignedGroup,
    law: &PointMass,
    fixed: &[Vec<f64>],
) -> Result<Exact> {
    let m = ind.order();
    if group.order() != m || law.dim() != ind.dim() || fixed.len() > m {
        return Err(Error::input("shape mismatch in a_expectation"));
    }
    let pulls = Pulls::new(group);
    let cols: Vec<&[f64]> = fixed.iter().map(|p| p.as_slice()).collect();
    let positions: Vec<usize> = (0..fixed.len()).collect();
    enumerate_tuples(law, m, DEFAULT_BUDGET, &cols, &positions, |w| pulls.signed_sum(ind, w) as i128)
}

/// `E[a_I(w^1..w^c, W^{c+1..m})]` for a one-dimensional indicator with the
/// `W` iid uniform on `(0, 1)` and fixed points distinct values in `(0, 1)`.
///
/// The expectation only depends on which interval between the fixed points
/// each draw falls into and on the relative order of the draws, so it is a
/// finite exact sum over those configurations.
pub fn a_expectation_uniform(ind: &RankIndicator, group: &SignedGroup, fixed: &[Exact]) -> Result<Exact> {
    let m = ind.order();
    let c = fixed.len();
    if ind.dim() != 1 || group.order() != m || c > m {
        return Err(Error::input("a_expectation_uniform needs a one-dimensional indicator"));
    }
    let zero = Exact::zero();
    let one = Exact::from(1);
    let mut cuts: Vec<Exact> = fixed.to_vec();
    cuts.sort();
    if cuts.windows(2).any(|w| w[0] == w[1]) || cuts.iter().any(|v| *v <= zero || *v >= one) {
        return Err(Error::input("fixed points must be distinct and inside (0, 1)"));
    }
    let mut bounds = vec![zero];
    bounds.extend(cuts.iter().copied());
    bounds.push(one);
    let cells = bounds.len() - 1;
    let free = m - c;
    let pulls = Pulls::new(group);
    let orders = all_permutations(free);
    let fixed_vals: Vec<Vec<f64>> = fixed.iter().map(|v| vec![crate::exact::to_f64(v)]).collect();
    let mut total = Exact::zero();
    let mut cell_of = vec![0usize; free];
    loop {
        let mut prob = Exact::from(1);
        for &q in &cell_of {
            prob *= bounds[q + 1] - bounds[q];
        }
        let mut acc: i128 = 0;
        for order in &orders {
            // draw j gets within-cell offset from its global rank
            let vals: Vec<Vec<f64>> = (0..free)
                .map(|j| {
                    let q = cell_of[j];
                    let lo = crate::exact::to_f64(&bounds[q]);
                    let hi = crate::exact::to_f64(&bounds[q + 1]);
                    vec![lo + (hi - lo) * (order.image(j) + 1) as f64 / (free + 1) as f64]
                })
                .collect();
            let cols: Vec<&[f64]> =
                fixed_vals.iter().chain(vals.iter()).map(|p| p.as_slice()).collect();
            acc += pulls.signed_sum(ind, &cols) as i128;
        }
        total += prob * Exact::new(acc, orders.len() as i128);
        let mut t = 0;
        loop {
            if t == free {
                return Ok(total);
            }
            cell_of[t] += 1;
            if cell_of[t] < cells {
                break;
            }
            cell_of[t] = 0;
            t += 1;
        }
    }
}

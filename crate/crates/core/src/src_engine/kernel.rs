//! Unsymmetrised and symmetrised kernels.

use crate::error::{Error, Result};
use crate::exact::{factorial, Exact};
use crate::indicator::{RankIndicator, MAX_ORDER};
use crate::perm::{all_permutations, SignedGroup};

use super::spec::SrcSpec;

/// Largest order for which `sym_kernel` enumerates `S_m`.
pub const SYM_KERNEL_MAX_ORDER: usize = 9;

/// A group flattened to (pull positions, sign) pairs for fast evaluation.
#[derive(Debug, Clone)]
pub(crate) struct Pulls {
    m: usize,
    items: Vec<(Vec<usize>, i64)>,
}

impl Pulls {
    pub(crate) fn new(group: &SignedGroup) -> Self {
        let items = group.elements().iter().map(|p| (p.pull(), p.sign() as i64)).collect();
        Pulls { m: group.order(), items }
    }

    /// `Σ_σ sign(σ) I(σ w)`.
    #[inline]
    pub(crate) fn signed_sum(&self, ind: &RankIndicator, w: &[&[f64]]) -> i64 {
        let mut buf: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
        let mut acc = 0;
        for (pull, sign) in &self.items {
            for j in 0..self.m {
                buf[j] = w[pull[j]];
            }
            if ind.eval(&buf[..self.m]) {
                acc += sign;
            }
        }
        acc
    }
}

/// Splits full points into their X and Y parts.
pub(crate) fn split<'a>(z: &[&'a [f64]], r: usize) -> ([&'a [f64]; MAX_ORDER], [&'a [f64]; MAX_ORDER]) {
    let mut xs: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
    let mut ys: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
    for (j, p) in z.iter().enumerate() {
        xs[j] = &p[..r];
        ys[j] = &p[r..];
    }
    (xs, ys)
}

fn check_shape(spec: &SrcSpec, z: &[Vec<f64>]) -> Result<()> {
    let d = spec.r() + spec.s();
    if z.len() != spec.order() || z.iter().any(|p| p.len() != d) {
        return Err(Error::input(format!(
            "kernel of '{}' expects {} points of dimension {d}",
            spec.name(),
            spec.order()
        )));
    }
    Ok(())
}

/// `a_I(w) = Σ_{σ∈H} sign(σ) I(σ w)` for owned points.
pub fn signed_indicator_sum(ind: &RankIndicator, group: &SignedGroup, w: &[Vec<f64>]) -> Result<i64> {
    if w.len() != ind.order() || group.order() != ind.order() || w.iter().any(|p| p.len() != ind.dim()) {
        return Err(Error::input("shape mismatch in signed indicator sum"));
    }
    let cols: Vec<&[f64]> = w.iter().map(|p| p.as_slice()).collect();
    Ok(Pulls::new(group).signed_sum(ind, &cols))
}

/// The unsymmetrised kernel `k(z) = a_X(x) a_Y(y)` (scale not applied).
///
/// ```
/// use symrc::{unsym_kernel, SrcSpec};
/// let z = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
/// assert_eq!(unsym_kernel(&SrcSpec::tau(), &z).unwrap(), -1);
/// ```
pub fn unsym_kernel(spec: &SrcSpec, z: &[Vec<f64>]) -> Result<i64> {
    check_shape(spec, z)?;
    let cols: Vec<&[f64]> = z.iter().map(|p| p.as_slice()).collect();
    let pulls = Pulls::new(spec.group());
    Ok(kernel_raw(spec, &pulls, &cols))
}

#[inline]
pub(crate) fn kernel_raw(spec: &SrcSpec, pulls: &Pulls, z: &[&[f64]]) -> i64 {
    let m = z.len();
    let (xs, ys) = split(z, spec.r());
    let ax = pulls.signed_sum(spec.ix(), &xs[..m]);
    if ax == 0 {
        return 0;
    }
    ax * pulls.signed_sum(spec.iy(), &ys[..m])
}

/// How `sym_kernel` evaluates the symmetrisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymRoute {
    /// `(1/m!) Σ_{σ∈S_m} k(σ z)`.
    Average,
    /// `(|H|/m!) Σ_{γ∈S_m} I_X(γ x) Σ_{σ∈H} sign(σ) I_Y(σγ y)`.
    Rewrite,
}

/// The symmetrised kernel κ (scale not applied).
///
/// ```
/// use symrc::{sym_kernel, SrcSpec, SymRoute, Exact};
/// let z: Vec<Vec<f64>> = (1..=4).map(|v| vec![v as f64, v as f64]).collect();
/// assert_eq!(sym_kernel(&SrcSpec::taustar(), &z, SymRoute::Average).unwrap(), Exact::new(2, 3));
/// ```
pub fn sym_kernel(spec: &SrcSpec, z: &[Vec<f64>], route: SymRoute) -> Result<Exact> {
    check_shape(spec, z)?;
    let m = spec.order();
    if m > SYM_KERNEL_MAX_ORDER {
        return Err(Error::capacity(format!(
            "sym_kernel enumerates S_m and is limited to m <= {SYM_KERNEL_MAX_ORDER}"
        )));
    }
    let cols: Vec<&[f64]> = z.iter().map(|p| p.as_slice()).collect();
    let pulls = Pulls::new(spec.group());
    let mut buf: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
    let mut total: i128 = 0;
    for g in all_permutations(m) {
        let pull = g.pull();
        for j in 0..m {
            buf[j] = cols[pull[j]];
        }
        let gz = &buf[..m];
        total += match route {
            SymRoute::Average => kernel_raw(spec, &pulls, gz) as i128,
            SymRoute::Rewrite => {
                let (xs, ys) = split(gz, spec.r());
                if spec.ix().eval(&xs[..m]) {
                    spec.group().size() as i128 * pulls.signed_sum(spec.iy(), &ys[..m]) as i128
                } else {
                    0
                }
            }
        };
    }
    Ok(Exact::new(total, factorial(m)?))
}

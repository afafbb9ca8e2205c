//! Rank indicator functions.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranks::joint_ranks;

/// A 0/1 function of `m` points in `R^d`, given as `m` slices of length `d`.
pub type Evaluator = Arc<dyn Fn(&[&[f64]]) -> bool + Send + Sync>;

/// Builtin indicator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndicatorKind {
    Tau,
    Tau2,
    TauStar,
    HoeffD,
    HoeffR,
    PartialP,
    JointJ,
    Custom,
}

/// A rank indicator of order `m` and dimension `d`.
#[derive(Clone)]
pub struct RankIndicator {
    kind: IndicatorKind,
    name: String,
    order: usize,
    dim: usize,
    eval: Evaluator,
}

impl fmt::Debug for RankIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankIndicator")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .field("order", &self.order)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Number of random configurations used to check a custom indicator.
const CUSTOM_CHECKS: usize = 100;

impl RankIndicator {
    pub(crate) fn trusted(
        kind: IndicatorKind,
        name: impl Into<String>,
        order: usize,
        dim: usize,
        eval: impl Fn(&[&[f64]]) -> bool + Send + Sync + 'static,
    ) -> Self {
        RankIndicator { kind, name: name.into(), order, dim, eval: Arc::new(eval) }
    }

    /// Registers a user-supplied indicator.
    ///
    /// The function must depend on its arguments only through their joint
    /// ranks. This is checked on random configurations (with and without
    /// ties); a mismatch is a validation error.
    pub fn custom(
        name: impl Into<String>,
        order: usize,
        dim: usize,
        eval: impl Fn(&[&[f64]]) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Err(Error::input("custom indicator needs order >= 1 and dim >= 1"));
        }
        let ind = RankIndicator::trusted(IndicatorKind::Custom, name, order, dim, eval);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for trial in 0..CUSTOM_CHECKS {
            let w: Vec<Vec<f64>> = (0..order)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            if trial % 2 == 0 {
                                rng.random_range(0..order as i32 + 1) as f64
                            } else {
                                rng.random_range(-50.0..50.0)
                            }
                        })
                        .collect()
                })
                .collect();
            let ranks = joint_ranks(&w)?.columns();
            if ind.eval_points(&w)? != ind.eval_points(&ranks)? {
                return Err(Error::validation(format!(
                    "indicator '{}' is not a function of joint ranks (input {w:?})",
                    ind.name
                )));
            }
        }
        Ok(ind)
    }

    pub fn kind(&self) -> IndicatorKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates on `order` point slices of length `dim`.
    #[inline]
    pub fn eval(&self, cols: &[&[f64]]) -> bool {
        debug_assert_eq!(cols.len(), self.order);
        (self.eval)(cols)
    }

    /// Evaluates on owned points after checking the shape.
    pub fn eval_points(&self, w: &[Vec<f64>]) -> Result<bool> {
        if w.len() != self.order || w.iter().any(|p| p.len() != self.dim) {
            return Err(Error::input(format!(
                "indicator '{}' expects {} points of dimension {}",
                self.name, self.order, self.dim
            )));
        }
        let cols: Vec<&[f64]> = w.iter().map(|p| p.as_slice()).collect();
        Ok(self.eval(&cols))
    }

    /// Reinterprets the indicator as one of order `m` that looks only at the
    /// points in `positions` (0-based), in that order.
    pub fn embed(&self, m: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.order || positions.iter().any(|&p| p >= m) {
            return Err(Error::input("embedding positions do not match the indicator order"));
        }
        let inner = self.eval.clone();
        let pos = positions.to_vec();
        let name = format!("{}@{:?}", self.name, positions.iter().map(|p| p + 1).collect::<Vec<_>>());
        Ok(RankIndicator::trusted(self.kind, name, m, self.dim, move |w| {
            let mut buf: [&[f64]; MAX_ORDER] = [&[]; MAX_ORDER];
            for (k, &p) in pos.iter().enumerate() {
                buf[k] = w[p];
            }
            inner(&buf[..pos.len()])
        }))
    }
}

/// Largest indicator order handled with stack buffers.
pub const MAX_ORDER: usize = 16;

/// `a ⪯ b`: every coordinate of `a` is at most that of `b`.
#[inline]
pub fn weakly_below(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `a ≺ b`: every coordinate of `a` is strictly less than that of `b`.
#[inline]
pub fn strictly_below(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// Returns the builtin indicator of the given family and dimension.
///
/// Orders: tau 2; tau2, taustar, partialP and jointJ 4; hoeffD 5; hoeffR
/// `4 + d`. The bivariate families require `d = 1`.
///
/// ```
/// use symrc::{builtin_indicator, IndicatorKind};
/// let t = builtin_indicator(IndicatorKind::TauStar, 1).unwrap();
/// assert!(t.eval(&[&[1.0], &[2.0], &[3.0], &[4.0]]));
/// assert!(!t.eval(&[&[1.0], &[3.0], &[2.0], &[4.0]]));
/// ```
pub fn builtin_indicator(kind: IndicatorKind, d: usize) -> Result<RankIndicator> {
    use IndicatorKind::*;
    if d == 0 {
        return Err(Error::input("indicator dimension must be at least 1"));
    }
    if matches!(kind, Tau | Tau2 | TauStar) && d != 1 {
        return Err(Error::input(format!("{kind:?} is defined only for d = 1, got d = {d}")));
    }
    let ind = match kind {
        Tau => RankIndicator::trusted(kind, "tau", 2, 1, |w| w[0][0] < w[1][0]),
        Tau2 => RankIndicator::trusted(kind, "tau2", 4, 1, |w| {
            w[0][0] < w[3][0] && w[1][0] < w[2][0]
        }),
        TauStar => RankIndicator::trusted(kind, "taustar", 4, 1, |w| {
            w[0][0].max(w[1][0]) < w[2][0].min(w[3][0])
        }),
        HoeffD => RankIndicator::trusted(kind, "hoeffD", 5, d, |w| {
            weakly_below(w[0], w[4])
                && weakly_below(w[1], w[4])
                && !weakly_below(w[2], w[4])
                && !weakly_below(w[3], w[4])
        }),
        HoeffR => RankIndicator::trusted(kind, "hoeffR", 4 + d, d, move |w| {
            // cut point takes coordinate j from point 4 + j
            let below = |p: &[f64]| (0..d).all(|j| p[j] <= w[4 + j][j]);
            below(w[0]) && below(w[1]) && !below(w[2]) && !below(w[3])
        }),
        PartialP => RankIndicator::trusted(kind, "partialP", 4, d, |w| {
            !weakly_below(w[2], w[0])
                && !weakly_below(w[2], w[1])
                && !weakly_below(w[3], w[0])
                && !weakly_below(w[3], w[1])
        }),
        JointJ => RankIndicator::trusted(kind, "jointJ", 4, d, |w| {
            strictly_below(w[0], w[2])
                && strictly_below(w[0], w[3])
                && strictly_below(w[1], w[2])
                && strictly_below(w[1], w[3])
        }),
        Custom => return Err(Error::input("use RankIndicator::custom for custom indicators")),
    };
    Ok(ind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_example() {
        let p = builtin_indicator(IndicatorKind::PartialP, 2).unwrap();
        let w = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![5.0, 5.0], vec![6.0, 6.0]];
        assert!(p.eval_points(&w).unwrap());
    }

    #[test]
    fn orders() {
        use IndicatorKind::*;
        let orders: Vec<usize> = [(Tau, 1), (Tau2, 1), (TauStar, 1), (PartialP, 3), (JointJ, 2), (HoeffD, 2), (HoeffR, 3)]
            .iter()
            .map(|&(k, d)| builtin_indicator(k, d).unwrap().order())
            .collect();
        assert_eq!(orders, vec![2, 4, 4, 4, 4, 5, 7]);
        assert!(builtin_indicator(Tau, 2).is_err());
        assert!(builtin_indicator(Custom, 1).is_err());
    }

    #[test]
    fn custom_rank_check() {
        let ok = RankIndicator::custom("lt", 2, 1, |w| w[0][0] < w[1][0]);
        assert!(ok.is_ok());
        let bad = RankIndicator::custom("pos", 2, 1, |w| w[0][0] > 0.5);
        assert!(matches!(bad, Err(Error::Validation(_))));
    }

    #[test]
    fn embed_selects_points() {
        let t = builtin_indicator(IndicatorKind::Tau, 1).unwrap();
        let e = t.embed(3, &[2, 0]).unwrap();
        assert!(e.eval(&[&[5.0], &[0.0], &[1.0]]));
        assert!(!e.eval(&[&[0.0], &[0.0], &[1.0]]));
    }
}

//! Spearman's ρ as a sum of three symmetric rank covariances.

use crate::error::Result;
use crate::exact::Exact;
use crate::indicator::{IndicatorKind, RankIndicator};
use crate::perm::{make_group, Permutation};

use super::spec::{SrcSpec, SsrcSpec};

fn chain(name: &str, order: [usize; 3]) -> RankIndicator {
    // 1 when w[order[0]] < w[order[1]] < w[order[2]]
    RankIndicator::trusted(IndicatorKind::Custom, name, 3, 1, move |w| {
        w[order[0]][0] < w[order[1]][0] && w[order[1]][0] < w[order[2]][0]
    })
}

/// `ρ = 3 E[b(X) b(Y) + b(X) b(Y^{1,3,2}) + b(X) b(Y^{2,1,3})]` with
/// `b(z) = 1[z1<z2<z3] - 1[z3<z2<z1]`, written as three covariances over
/// the group `⟨(1 3)⟩`.
///
/// The U-statistic of this sum is not the textbook rank correlation
/// `r_s`; on tie-free data the two are related by
/// `r_s = ((n - 2) U + 3 τ) / (n + 1)` with `τ` the Kendall U-statistic.
pub fn spearman_ssrc() -> Result<SsrcSpec> {
    let group = make_group(&[Permutation::from_cycles(3, &[&[1, 3]])?], 3)?;
    let ix = chain("x1<x2<x3", [0, 1, 2]);
    let terms = [("y1<y2<y3", [0, 1, 2]), ("y1<y3<y2", [0, 2, 1]), ("y2<y1<y3", [1, 0, 2])]
        .into_iter()
        .map(|(name, order)| {
            SrcSpec::new(format!("spearman[{name}]"), ix.clone(), chain(name, order), group.clone(), Exact::from(3))
        })
        .collect::<Result<Vec<_>>>()?;
    SsrcSpec::new("spearman", terms)
}

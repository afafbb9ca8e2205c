//! Descriptions of symmetric rank covariances and their sums.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::indicator::{builtin_indicator, IndicatorKind, RankIndicator, MAX_ORDER};
use crate::perm::SignedGroup;

/// `c * E[(Σ_σ sign(σ) I_X(X^σ)) (Σ_σ sign(σ) I_Y(Y^σ))]` for indicators of
/// common order `m` and a sign-balanced group `H ⊂ S_m`.
#[derive(Debug, Clone)]
pub struct SrcSpec {
    name: String,
    ix: RankIndicator,
    iy: RankIndicator,
    group: SignedGroup,
    scale: Exact,
}

impl SrcSpec {
    pub fn new(
        name: impl Into<String>,
        ix: RankIndicator,
        iy: RankIndicator,
        group: SignedGroup,
        scale: Exact,
    ) -> Result<Self> {
        let m = group.order();
        if ix.order() != m || iy.order() != m {
            return Err(Error::input(format!(
                "indicator orders ({}, {}) differ from the group order {m}",
                ix.order(),
                iy.order()
            )));
        }
        if m > MAX_ORDER {
            return Err(Error::capacity(format!("order {m} exceeds the supported maximum {MAX_ORDER}")));
        }
        if scale <= Exact::from(0) {
            return Err(Error::input("scale must be positive"));
        }
        Ok(SrcSpec { name: name.into(), ix, iy, group, scale })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ix(&self) -> &RankIndicator {
        &self.ix
    }

    pub fn iy(&self) -> &RankIndicator {
        &self.iy
    }

    pub fn group(&self) -> &SignedGroup {
        &self.group
    }

    pub fn scale(&self) -> Exact {
        self.scale
    }

    /// Kernel order `m`.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn r(&self) -> usize {
        self.ix.dim()
    }

    pub fn s(&self) -> usize {
        self.iy.dim()
    }

    /// Kendall's τ.
    pub fn tau() -> Self {
        let i = builtin_indicator(IndicatorKind::Tau, 1).unwrap();
        SrcSpec::new("tau", i.clone(), i, SignedGroup::h_tau(), Exact::one()).unwrap()
    }

    /// Kendall's τ squared.
    pub fn tau2() -> Self {
        let i = builtin_indicator(IndicatorKind::Tau2, 1).unwrap();
        SrcSpec::new("tau2", i.clone(), i, SignedGroup::h_taustar(4), Exact::one()).unwrap()
    }

    /// The Bergsma–Dassios sign covariance τ*.
    pub fn taustar() -> Self {
        let i = builtin_indicator(IndicatorKind::TauStar, 1).unwrap();
        SrcSpec::new("taustar", i.clone(), i, SignedGroup::h_taustar(4), Exact::one()).unwrap()
    }

    /// Multivariate Hoeffding's D.
    pub fn hoeffding_d(r: usize, s: usize) -> Result<Self> {
        let ix = builtin_indicator(IndicatorKind::HoeffD, r)?;
        let iy = builtin_indicator(IndicatorKind::HoeffD, s)?;
        SrcSpec::new("D", ix, iy, SignedGroup::h_taustar(5), Exact::new(1, 4))
    }

    /// Hoeffding's R (integration against the product of all univariate
    /// marginals). Order `4 + r + s`: points `5..=4+r` supply the X cut
    /// point coordinates and `5+r..=4+r+s` the Y ones.
    pub fn hoeffding_r(r: usize, s: usize) -> Result<Self> {
        let m = 4 + r + s;
        let ix = builtin_indicator(IndicatorKind::HoeffR, r)?;
        let iy = builtin_indicator(IndicatorKind::HoeffR, s)?;
        let xpos: Vec<usize> = (0..4 + r).collect();
        let ypos: Vec<usize> = (0..4).chain(4 + r..m).collect();
        SrcSpec::new(
            "R",
            ix.embed(m, &xpos)?,
            iy.embed(m, &ypos)?,
            SignedGroup::h_taustar(m),
            Exact::new(1, 4),
        )
    }

    /// Multivariate partial τ* (τ*_P).
    pub fn partial_taustar(r: usize, s: usize) -> Result<Self> {
        let ix = builtin_indicator(IndicatorKind::PartialP, r)?;
        let iy = builtin_indicator(IndicatorKind::PartialP, s)?;
        SrcSpec::new("tauP", ix, iy, SignedGroup::h_taustar(4), Exact::one())
    }

    /// Multivariate joint τ* (τ*_J).
    pub fn joint_taustar(r: usize, s: usize) -> Result<Self> {
        let ix = builtin_indicator(IndicatorKind::JointJ, r)?;
        let iy = builtin_indicator(IndicatorKind::JointJ, s)?;
        SrcSpec::new("tauJ", ix, iy, SignedGroup::h_taustar(4), Exact::one())
    }

    /// The product measure `μ ν` as a single covariance of order `m + m'`:
    /// indicators act on disjoint point sets, the group is `H × G` and the
    /// scales multiply.
    pub fn product(&self, other: &SrcSpec) -> Result<Self> {
        if self.r() != other.r() || self.s() != other.s() {
            return Err(Error::input("product of covariances with different dimensions"));
        }
        let m1 = self.order();
        let m = m1 + other.order();
        let pair = |a: &RankIndicator, b: &RankIndicator| {
            let (a, b) = (a.clone(), b.clone());
            RankIndicator::trusted(
                IndicatorKind::Custom,
                format!("{}*{}", a.name(), b.name()),
                m,
                a.dim(),
                move |w| a.eval(&w[..m1]) && b.eval(&w[m1..]),
            )
        };
        SrcSpec::new(
            format!("{}*{}", self.name, other.name),
            pair(&self.ix, &other.ix),
            pair(&self.iy, &other.iy),
            self.group.product(&other.group),
            self.scale * other.scale,
        )
    }
}

/// A sum of symmetric rank covariances over the same `(r, s)`.
#[derive(Debug, Clone)]
pub struct SsrcSpec {
    name: String,
    terms: Vec<SrcSpec>,
}

impl SsrcSpec {
    pub fn new(name: impl Into<String>, terms: Vec<SrcSpec>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::input("a summed covariance needs at least one term"));
        };
        if terms.iter().any(|t| t.r() != first.r() || t.s() != first.s()) {
            return Err(Error::input("summed covariance terms differ in dimensions"));
        }
        Ok(SsrcSpec { name: name.into(), terms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[SrcSpec] {
        &self.terms
    }
}

/// Anything that is a sum of symmetric rank covariances.
pub trait Measure: Sync {
    fn terms(&self) -> &[SrcSpec];

    fn label(&self) -> &str;

    fn dims(&self) -> (usize, usize) {
        let t = &self.terms()[0];
        (t.r(), t.s())
    }
}

impl Measure for SrcSpec {
    fn terms(&self) -> &[SrcSpec] {
        std::slice::from_ref(self)
    }

    fn label(&self) -> &str {
        &self.name
    }
}

impl Measure for SsrcSpec {
    fn terms(&self) -> &[SrcSpec] {
        &self.terms
    }

    fn label(&self) -> &str {
        &self.name
    }
}

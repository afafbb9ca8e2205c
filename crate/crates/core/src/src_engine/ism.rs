//! Integrated squared minors and the summed covariances built from them.

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::indicator::{IndicatorKind, RankIndicator};
use crate::perm::SignedGroup;

use super::spec::{SrcSpec, SsrcSpec};

/// Integration measure used for an integrated squared minor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsmMeasure {
    /// The joint law of `(X, Y)` (one block holding every coordinate).
    Joint,
    /// The product of all univariate marginals (one block per coordinate).
    Product,
    /// The product of the laws of `(X_i, Y_i)`; needs `r = s`.
    BlockProduct,
}

/// An integrated squared minor: the squared block minor along
/// `({0}, L, {0}, R)` integrated against `Π_i F_{X_{E_i} Y_{F_i}}`.
///
/// Orthant patterns are bit masks (bit `j` set means coordinate `j` lies
/// above the cut point). Blocks are aligned `(E_i, F_i)` pairs of 0-based
/// coordinate lists; one side of a block may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsmSpec {
    pub r: usize,
    pub s: usize,
    pub l: Vec<u32>,
    pub rr: Vec<u32>,
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

impl IsmSpec {
    pub fn new(
        r: usize,
        s: usize,
        l: Vec<u32>,
        rr: Vec<u32>,
        blocks: Vec<(Vec<usize>, Vec<usize>)>,
    ) -> Result<Self> {
        let spec = IsmSpec { r, s, l, rr, blocks };
        spec.validate()?;
        Ok(spec)
    }

    /// Full punctured cubes `L = {0,1}^r \ {0}`, `R = {0,1}^s \ {0}`.
    pub fn full(r: usize, s: usize, measure: IsmMeasure) -> Result<Self> {
        IsmSpec::new(r, s, (1..1 << r).collect(), (1..1 << s).collect(), measure_blocks(r, s, measure)?)
    }

    /// Number of blocks `t`; the covariance has order `4 + t`.
    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    fn validate(&self) -> Result<()> {
        let (r, s) = (self.r, self.s);
        if r == 0 || s == 0 {
            return Err(Error::input("ISM needs r >= 1 and s >= 1"));
        }
        check_patterns(&self.l, r, "L")?;
        check_patterns(&self.rr, s, "R")?;
        if self.blocks.is_empty() {
            return Err(Error::input("ISM needs at least one block"));
        }
        let mut seen_x = vec![false; r];
        let mut seen_y = vec![false; s];
        for (e, f) in &self.blocks {
            if e.is_empty() && f.is_empty() {
                return Err(Error::input("ISM block with both sides empty"));
            }
            for (side, seen) in [(e, &mut seen_x), (f, &mut seen_y)] {
                for &j in side {
                    if j >= seen.len() || seen[j] {
                        return Err(Error::input("ISM blocks must partition the coordinates"));
                    }
                    seen[j] = true;
                }
            }
        }
        if seen_x.contains(&false) || seen_y.contains(&false) {
            return Err(Error::input("ISM blocks must cover every coordinate"));
        }
        Ok(())
    }
}

fn check_patterns(set: &[u32], bits: usize, label: &str) -> Result<()> {
    if set.is_empty() {
        return Err(Error::input(format!("{label} must be nonempty")));
    }
    for (i, &v) in set.iter().enumerate() {
        if v == 0 || v >= 1 << bits || set[..i].contains(&v) {
            return Err(Error::input(format!("{label} contains an invalid or repeated pattern {v}")));
        }
    }
    Ok(())
}

fn measure_blocks(r: usize, s: usize, measure: IsmMeasure) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    Ok(match measure {
        IsmMeasure::Joint => vec![((0..r).collect(), (0..s).collect())],
        IsmMeasure::Product => (0..r)
            .map(|j| (vec![j], vec![]))
            .chain((0..s).map(|j| (vec![], vec![j])))
            .collect(),
        IsmMeasure::BlockProduct => {
            if r != s {
                return Err(Error::input("block-product measure needs r = s"));
            }
            (0..r).map(|j| (vec![j], vec![j])).collect()
        }
    })
}

/// One side of the ISM indicator: `[w1, w2 ⪯ c] [B(w3) ∈ L] [B(w4) ∈ L]`
/// with the cut point `c` taking coordinates `E_i` from point `4 + i`.
fn side_indicator(dim: usize, patterns: Vec<u32>, cut_source: Vec<usize>, m: usize, name: String) -> RankIndicator {
    RankIndicator::trusted(IndicatorKind::Custom, name, m, dim, move |w| {
        let pattern = |p: &[f64]| -> u32 {
            let mut bits = 0;
            for j in 0..dim {
                if p[j] > w[cut_source[j]][j] {
                    bits |= 1 << j;
                }
            }
            bits
        };
        pattern(w[0]) == 0
            && pattern(w[1]) == 0
            && patterns.contains(&pattern(w[2]))
            && patterns.contains(&pattern(w[3]))
    })
}

/// The covariance `(1/4) μ_{I_X, I_Y, H_τ*}` of order `4 + t` equal to the
/// integrated squared minor.
pub fn ism_to_src(ism: &IsmSpec) -> Result<SrcSpec> {
    ism.validate()?;
    let m = 4 + ism.t();
    let mut x_src = vec![0; ism.r];
    let mut y_src = vec![0; ism.s];
    for (i, (e, f)) in ism.blocks.iter().enumerate() {
        for &j in e {
            x_src[j] = 4 + i;
        }
        for &j in f {
            y_src[j] = 4 + i;
        }
    }
    let ix = side_indicator(ism.r, ism.l.clone(), x_src, m, format!("ism-x{:?}", ism.l));
    let iy = side_indicator(ism.s, ism.rr.clone(), y_src, m, format!("ism-y{:?}", ism.rr));
    SrcSpec::new(format!("ism(t={})", ism.t()), ix, iy, SignedGroup::h_taustar(m), Exact::new(1, 4))
}

/// Sum of integrated squared minors over blocks `L_i x R_i` that partition
/// the punctured product cube, all integrated against `measure`.
pub fn ssrc_partition(
    r: usize,
    s: usize,
    blocks: &[(Vec<u32>, Vec<u32>)],
    measure: IsmMeasure,
) -> Result<SsrcSpec> {
    let mut cover = vec![0u32; (1 << r) * (1 << s)];
    for (l, rr) in blocks {
        check_patterns(l, r, "L")?;
        check_patterns(rr, s, "R")?;
        for &a in l {
            for &b in rr {
                cover[a as usize + (b as usize) * (1 << r)] += 1;
            }
        }
    }
    for a in 1..1usize << r {
        for b in 1..1usize << s {
            match cover[a + b * (1 << r)] {
                1 => {}
                0 => return Err(Error::validation(format!("pattern pair ({a}, {b}) is not covered"))),
                _ => return Err(Error::validation(format!("pattern pair ({a}, {b}) is covered twice"))),
            }
        }
    }
    let mb = measure_blocks(r, s, measure)?;
    let terms = blocks
        .iter()
        .map(|(l, rr)| ism_to_src(&IsmSpec::new(r, s, l.clone(), rr.clone(), mb.clone())?))
        .collect::<Result<Vec<_>>>()?;
    SsrcSpec::new(format!("ssrc({measure:?})"), terms)
}

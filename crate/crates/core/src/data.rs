//! Observations with a fixed split into an X block and a Y block.

use crate::error::{Error, Result};

/// `n` observations in `R^(r+s)`; columns `0..r` are X and `r..r+s` are Y.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    r: usize,
    s: usize,
    values: Vec<f64>,
}

impl Dataset {
    /// Builds a dataset from row-major values (`n * (r + s)` entries).
    pub fn new(values: Vec<f64>, r: usize, s: usize) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::input("both blocks need at least one column (r >= 1, s >= 1)"));
        }
        let d = r + s;
        if values.is_empty() {
            return Err(Error::input("no observations"));
        }
        if !values.len().is_multiple_of(d) {
            return Err(Error::input(format!(
                "{} values do not form rows of width {d}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::input(format!(
                "non-finite value at row {}, column {}",
                pos / d + 1,
                pos % d + 1
            )));
        }
        Ok(Dataset { n: values.len() / d, r, s, values })
    }

    /// Builds a dataset from rows.
    pub fn from_rows(rows: &[Vec<f64>], r: usize, s: usize) -> Result<Self> {
        let d = r + s;
        let mut values = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::input(format!(
                    "row {} has {} values, expected {d}",
                    i + 1,
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Dataset::new(values, r, s)
    }

    /// Bivariate dataset from paired samples.
    pub fn bivariate(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::input(format!("x has {} values but y has {}", x.len(), y.len())));
        }
        let values = x.iter().zip(y).flat_map(|(&a, &b)| [a, b]).collect();
        Dataset::new(values, 1, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Total dimension `r + s`.
    pub fn d(&self) -> usize {
        self.r + self.s
    }

    /// Row-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Observation `i` as a full row.
    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.d();
        &self.values[i * d..(i + 1) * d]
    }

    /// X part of observation `i`.
    pub fn x(&self, i: usize) -> &[f64] {
        &self.row(i)[..self.r]
    }

    /// Y part of observation `i`.
    pub fn y(&self, i: usize) -> &[f64] {
        &self.row(i)[self.r..]
    }

    /// Keeps the X rows fixed and reorders Y: row `i` receives `y(perm[i])`.
    pub fn permute_y(&self, perm: &[usize]) -> Result<Dataset> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length differs from sample size"));
        }
        let d = self.d();
        let mut values = self.values.clone();
        for (i, &p) in perm.iter().enumerate() {
            values[i * d + self.r..(i + 1) * d].copy_from_slice(self.y(p));
        }
        Ok(Dataset { values, ..*self })
    }

    /// Combines the X block of `self` with the Y block of `other`.
    pub fn with_y_from(&self, other: &Dataset) -> Result<Dataset> {
        if other.n != self.n || other.s != self.s {
            return Err(Error::input("datasets differ in size or Y dimension"));
        }
        let d = self.d();
        let mut values = self.values.clone();
        for i in 0..self.n {
            values[i * d + self.r..(i + 1) * d].copy_from_slice(other.y(i));
        }
        Ok(Dataset { values, ..*self })
    }

    /// Applies `f(column, value)` to every entry.
    pub fn map(&self, f: impl Fn(usize, f64) -> f64) -> Result<Dataset> {
        let d = self.d();
        let values = self.values.iter().enumerate().map(|(k, &v)| f(k % d, v)).collect();
        Dataset::new(values, self.r, self.s)
    }

    /// Selects the given observations in order.
    pub fn select(&self, rows: &[usize]) -> Result<Dataset> {
        let values = rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Dataset::new(values, self.r, self.s)
    }

    /// Joint ranks of every observation (min-rank ties, values in `1..=n`).
    pub fn rank_points(&self) -> RankPoints {
        let d = self.d();
        let mut coords = vec![0u32; self.n * d];
        let mut order: Vec<usize> = (0..self.n).collect();
        for c in 0..d {
            order.sort_by(|&a, &b| self.values[a * d + c].total_cmp(&self.values[b * d + c]));
            let mut rank = 1u32;
            for (pos, &i) in order.iter().enumerate() {
                if pos > 0 && self.values[order[pos - 1] * d + c] < self.values[i * d + c] {
                    rank = pos as u32 + 1;
                }
                coords[i * d + c] = rank;
            }
        }
        RankPoints { n: self.n, r: self.r, s: self.s, coords }
    }

    /// Dataset whose entries are the joint ranks.
    pub fn to_ranks(&self) -> Dataset {
        let rp = self.rank_points();
        Dataset { values: rp.coords.iter().map(|&v| v as f64).collect(), ..*self }
    }
}

/// Per-coordinate joint ranks of a dataset, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPoints {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub coords: Vec<u32>,
}

impl RankPoints {
    pub fn d(&self) -> usize {
        self.r + self.s
    }

    pub fn point(&self, i: usize) -> &[u32] {
        let d = self.d();
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn x(&self, i: usize) -> &[u32] {
        &self.point(i)[..self.r]
    }

    pub fn y(&self, i: usize) -> &[u32] {
        &self.point(i)[self.r..]
    }
}

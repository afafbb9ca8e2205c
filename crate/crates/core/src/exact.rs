//! Exact rational arithmetic helpers.

use num_rational::Ratio;
use crate::error::{Error, Result};

/// Exact rational number used for every statistic value.
pub type Exact = Ratio<i128>;

/// Converts an exact value to the nearest `f64`.
pub fn to_f64(x: &Exact) -> f64 {
    let (n, d) = (*x.numer(), *x.denom());
    let whole = n.div_euclid(d);
    let rem = n.rem_euclid(d);
    whole as f64 + rem as f64 / d as f64
}

/// Falling factorial `n (n-1) ... (n-k+1)`, failing on overflow.
pub fn falling(n: usize, k: usize) -> Result<i128> {
    let mut acc: i128 = 1;
    for i in 0..k {
        if i >= n {
            return Ok(0);
        }
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or_else(|| Error::capacity(format!("({n})_{k} overflows 128-bit integers")))?;
    }
    Ok(acc)
}

/// Binomial coefficient, failing on overflow.
pub fn binomial(n: usize, k: usize) -> Result<i128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or_else(|| Error::capacity(format!("C({n},{k}) overflows 128-bit integers")))?
            / (i as i128 + 1);
    }
    Ok(acc)
}

/// `m!` as a 128-bit integer.
pub fn factorial(m: usize) -> Result<i128> {
    falling(m, m)
}

/// Builds `num / den` after checking the denominator.
pub(crate) fn ratio(num: i128, den: i128) -> Result<Exact> {
    if den == 0 {
        return Err(Error::Internal("zero normaliser".into()));
    }
    Ok(Exact::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(falling(5, 2).unwrap(), 20);
        assert_eq!(falling(3, 4).unwrap(), 0);
        assert_eq!(binomial(10, 3).unwrap(), 120);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(factorial(5).unwrap(), 120);
    }

    #[test]
    fn overflow_is_capacity() {
        assert!(matches!(falling(1 << 40, 4), Err(Error::Capacity(_))));
    }
}

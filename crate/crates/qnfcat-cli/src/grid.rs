//! Grid, range and region arguments.

use std::ops::RangeInclusive;

use qnfcat::oracle::SearchRegion;

use crate::error::CliError;

fn number(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Argument(format!("{what}: `{s}` is not a finite number")))
}

/// `start:stop:count` (inclusive, evenly spaced) or a comma-separated list.
/// The result must be strictly increasing.
pub fn parse_grid(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let pts = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(CliError::Argument(format!("{what}: expected start:stop:count, got `{s}`")));
        };
        let lo = number(lo, what)?;
        let hi = number(hi, what)?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::Argument(format!("{what}: count `{n}` is not a positive integer")))?;
        linspace(lo, hi, n)
    } else {
        s.split(',').map(|p| number(p, what)).collect::<Result<_, _>>()?
    };
    if pts.is_empty() {
        return Err(CliError::Argument(format!("{what}: empty grid")));
    }
    if pts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Argument(format!("{what}: grid must be strictly increasing")));
    }
    Ok(pts)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `lo..hi` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, CliError> {
    let int = |p: &str| {
        p.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Argument(format!("n: `{p}` is not an integer")))
    };
    let r = match s.split_once("..") {
        Some((lo, hi)) => int(lo)?..=int(hi.trim_start_matches('='))?,
        None => {
            let n = int(s)?;
            n..=n
        }
    };
    if r.is_empty() {
        return Err(CliError::Argument(format!("n: range `{s}` is empty")));
    }
    Ok(r)
}

/// `re_min,re_max,im_min,im_max`.
pub fn parse_region(s: &str) -> Result<SearchRegion, CliError> {
    let v: Vec<f64> = s.split(',').map(|p| number(p, "region")).collect::<Result<_, _>>()?;
    let [a, b, c, d] = v[..] else {
        return Err(CliError::Argument(format!(
            "region: expected re_min,re_max,im_min,im_max, got `{s}`"
        )));
    };
    if !(a < b && c < d) {
        return Err(CliError::Argument(format!("region: `{s}` is an empty rectangle")));
    }
    Ok(SearchRegion::new(a, b, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3", "x").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("-1,0,2.5", "x").unwrap(), vec![-1.0, 0.0, 2.5]);
        assert!(parse_grid("1,0", "x").is_err());
        assert!(parse_grid("0:1", "x").is_err());
        assert!(parse_grid("0:1:1x", "x").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..5").unwrap(), 0..=5);
        assert_eq!(parse_range("-5..=5").unwrap(), -5..=5);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("5..0").is_err());
    }

    #[test]
    fn regions() {
        let r = parse_region("0,16,-1,16").unwrap();
        assert_eq!((r.re_min, r.re_max, r.im_min, r.im_max), (0.0, 16.0, -1.0, 16.0));
        assert!(parse_region("0,1,2").is_err());
        assert!(parse_region("1,0,0,1").is_err());
    }
}

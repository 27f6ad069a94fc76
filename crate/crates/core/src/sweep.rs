//! Evaluation over many values of `d`. Rows are independent, so with the
//! `parallel` feature they run on the rayon pool; results always come back
//! in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

/// Applies `f` to every `d`, in parallel when the `parallel` feature is on.
/// The first error in input order wins.
pub fn evaluate<T, F>(ds: &[u32], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u32) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let results: Vec<Result<T>> = ds.par_iter().map(|&d| f(d)).collect();
        results.into_iter().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        evaluate_sequential(ds, f)
    }
}

pub fn evaluate_sequential<T, F>(ds: &[u32], f: F) -> Result<Vec<T>>
where
    F: Fn(u32) -> Result<T>,
{
    ds.iter().map(|&d| f(d)).collect()
}

/// Parses `"a..b"` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<Vec<u32>> {
    use crate::error::Error;
    let bad = || Error::Parse(format!("bad range {text:?}, expected a..b or an integer"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse::<u32>().map_err(|_| bad())?, hi.trim().parse::<u32>().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse::<u32>().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {text:?}")));
    }
    Ok((lo..=hi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_range("3..3").unwrap(), vec![3]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("6..3").is_err());
        assert!(parse_range("a..3").is_err());
        assert!(parse_range("3..").is_err());
    }

    #[test]
    fn order_is_preserved() {
        let ds: Vec<u32> = (1..200).collect();
        let out = evaluate(&ds, |d| Ok(d * d)).unwrap();
        assert_eq!(out, evaluate_sequential(&ds, |d| Ok(d * d)).unwrap());
    }

    #[test]
    fn first_error_in_input_order() {
        let err = evaluate(&[1, 2, 3, 4], |d| {
            if d >= 2 {
                Err(Error::InvalidArgument(format!("d={d}")))
            } else {
                Ok(d)
            }
        })
        .unwrap_err();
        assert_eq!(err.to_string(), "invalid argument: d=2");
    }
}

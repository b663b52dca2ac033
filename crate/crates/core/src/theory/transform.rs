use super::LogBusyBeaver;
use crate::{Error, Result};

/// Map boundary points `(complexity i, log size j)` of a log-size profile to
/// `(log2 runtime, total bits) = (log2 BB(i), i + j)`.
///
/// The input must have strictly increasing `i` and slope at most `-1`
/// between neighbours.
pub fn transform_p_to_d(points: &[(i64, f64)], bb: &dyn LogBusyBeaver) -> Result<Vec<(f64, f64)>> {
    for (idx, w) in points.windows(2).enumerate() {
        let (i1, j1) = w[0];
        let (i2, j2) = w[1];
        if i2 <= i1 || (j2 - j1) > -((i2 - i1) as f64) {
            return Err(Error::Slope(idx, idx + 1));
        }
    }
    Ok(points.iter().map(|&(i, j)| (bb.log2_bb(i), i as f64 + j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::DefaultBusyBeaver;

    #[test]
    fn single_point() {
        assert_eq!(transform_p_to_d(&[(0, 8.0)], &DefaultBusyBeaver).unwrap(), vec![(1.0, 8.0)]);
    }

    #[test]
    fn drops_are_affine_images() {
        let p = [(1, 20.0), (3, 15.0), (4, 10.0), (9, 0.0)];
        let d = transform_p_to_d(&p, &DefaultBusyBeaver).unwrap();
        for k in 1..p.len() {
            let want = (p[k].0 as f64 + p[k].1) - (p[k - 1].0 as f64 + p[k - 1].1);
            assert_eq!(d[k].1 - d[k - 1].1, want);
            assert!(d[k].0 > d[k - 1].0);
            assert!(d[k].1 <= d[k - 1].1);
        }
    }

    #[test]
    fn shallow_slope_is_rejected() {
        let err = transform_p_to_d(&[(1, 10.0), (3, 9.5)], &DefaultBusyBeaver).unwrap_err();
        assert!(matches!(err, Error::Slope(0, 1)));
        assert!(transform_p_to_d(&[(2, 10.0), (2, 5.0)], &DefaultBusyBeaver).is_err());
    }
}

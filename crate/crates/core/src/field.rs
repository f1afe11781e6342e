//! Space-time fields sampled on a uniform `[0,T] x [0,L]` grid.

use crate::scalar::Real;

/// Values on a tensor grid: `values[i][j]` at time `ts[i]`, position `xs[j]`.
#[derive(Debug, Clone)]
pub struct SpaceTimeField<T> {
    pub ts: Vec<T>,
    pub xs: Vec<T>,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> SpaceTimeField<T> {
    pub fn max_value(&self) -> T {
        self.values
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(T::neg_infinity(), T::max)
    }

    pub fn min_value(&self) -> T {
        self.values
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(T::infinity(), T::min)
    }

    /// Bilinear interpolation; clamps to the grid edges.
    pub fn eval(&self, t: T, x: T) -> T {
        let (i, ft) = locate(&self.ts, t);
        let (j, fx) = locate(&self.xs, x);
        let v00 = self.values[i][j];
        let v01 = self.values[i][j + 1];
        let v10 = self.values[i + 1][j];
        let v11 = self.values[i + 1][j + 1];
        let one = T::one();
        (one - ft) * ((one - fx) * v00 + fx * v01) + ft * ((one - fx) * v10 + fx * v11)
    }
}

/// Index and fraction for linear interpolation on a sorted axis.
fn locate<T: Real>(axis: &[T], v: T) -> (usize, T) {
    let n = axis.len();
    debug_assert!(n >= 2);
    if v <= axis[0] {
        return (0, T::zero());
    }
    if v >= axis[n - 1] {
        return (n - 2, T::one());
    }
    // uniform grids in practice; binary search keeps it general
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if axis[mid] <= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f = (v - axis[lo]) / (axis[lo + 1] - axis[lo]);
    (lo, f)
}

/// Uniform axis with `n` intervals over `[0, len]`.
pub fn uniform_axis<T: Real>(len: T, n: usize) -> Vec<T> {
    (0..=n)
        .map(|i| len * T::from_usize(i).unwrap() / T::from_usize(n).unwrap())
        .collect()
}

/// Linear resample of nodal values from one uniform grid to another,
/// zero-extended beyond the source domain.
pub fn resample<T: Real>(src: &[T], src_len: T, dst_len: T, dst_n: usize) -> Vec<T> {
    let src_n = src.len() - 1;
    let src_dx = src_len / T::from_usize(src_n).unwrap();
    (0..=dst_n)
        .map(|i| {
            let x = dst_len * T::from_usize(i).unwrap() / T::from_usize(dst_n).unwrap();
            if x > src_len {
                return T::zero();
            }
            let pos = x / src_dx;
            let j = pos.floor().to_usize().unwrap().min(src_n - 1);
            let f = pos - T::from_usize(j).unwrap();
            src[j] * (T::one() - f) + src[j + 1] * f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bilinear_interpolation_reproduces_plane() {
        let f = SpaceTimeField {
            ts: vec![0.0, 1.0],
            xs: vec![0.0, 1.0, 2.0],
            values: vec![vec![0.0, 1.0, 2.0], vec![3.0, 4.0, 5.0]],
        };
        // plane v = x + 3t
        assert_relative_eq!(f.eval(0.5, 1.5), 3.0, epsilon = 1e-14);
        assert_relative_eq!(f.eval(0.0, 0.25), 0.25, epsilon = 1e-14);
        // clamped outside
        assert_relative_eq!(f.eval(-1.0, 3.0), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn resample_interpolates_and_zero_extends() {
        let src = vec![0.0, 1.0, 2.0]; // identity-ish on [0,2]
        let out = resample(&src, 2.0, 4.0, 4);
        assert_relative_eq!(out[0], 0.0);
        assert_relative_eq!(out[1], 1.0);
        assert_relative_eq!(out[2], 2.0);
        assert_relative_eq!(out[3], 0.0);
        assert_relative_eq!(out[4], 0.0);
    }
}

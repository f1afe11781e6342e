//! Thomas algorithm for tridiagonal systems.

use crate::scalar::Real;

/// Tridiagonal system `lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i]`.
///
/// `lower[0]` and `upper[n-1]` are ignored. Scratch buffers are owned so a
/// solver can be reused across many steps without reallocating.
pub struct TridiagSolver<T> {
    cp: Vec<T>,
    dp: Vec<T>,
}

impl<T: Real> TridiagSolver<T> {
    pub fn new(n: usize) -> Self {
        Self {
            cp: vec![T::zero(); n],
            dp: vec![T::zero(); n],
        }
    }

    /// Solves in place; `x` receives the solution. All slices must have equal length.
    pub fn solve(&mut self, lower: &[T], diag: &[T], upper: &[T], rhs: &[T], x: &mut [T]) {
        let n = diag.len();
        debug_assert!(n > 0);
        debug_assert_eq!(lower.len(), n);
        debug_assert_eq!(upper.len(), n);
        debug_assert_eq!(rhs.len(), n);
        debug_assert_eq!(x.len(), n);

        let cp = &mut self.cp[..n];
        let dp = &mut self.dp[..n];

        cp[0] = upper[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for i in 1..n {
            let m = diag[i] - lower[i] * cp[i - 1];
            cp[i] = upper[i] / m;
            dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / m;
        }
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
    }
}

use crate::Real;

/// Coefficients `a_{2l}` of `℘(z) − 1/z² = Σ_{l≥1} a_{2l} z^{2l}`.
///
/// ```text
/// a2 = g2/20,  a4 = g3/28,
/// c_k = 3/((2k+1)(k−3)) · Σ_{m=2}^{k−2} c_m c_{k−m},   a_{2l} = c_{l+1}
/// ```
///
/// The recursion follows from substituting the series into `℘″ = 6℘² − g2/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTable<T> {
    coefficients: Vec<T>,
}

impl<T: Real> LaurentTable<T> {
    pub const DEFAULT_LEN: usize = 24;

    pub fn new(g2: T, g3: T, len: usize) -> Self {
        let len = len.max(2);
        // c[k] for k = 0..=len+1; entries below 2 are unused.
        let mut c = vec![T::zero(); len + 2];
        c[2] = g2 / T::lit(20.0);
        c[3] = g3 / T::lit(28.0);
        for k in 4..len + 2 {
            let mut s = T::zero();
            for m in 2..=k - 2 {
                s = s + c[m] * c[k - m];
            }
            let kf = T::lit(k as f64);
            c[k] = T::lit(3.0) * s / ((T::lit(2.0) * kf + T::one()) * (kf - T::lit(3.0)));
        }
        Self {
            coefficients: c[2..].to_vec(),
        }
    }

    /// `[a2, a4, a6, …]`.
    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// `a_{2l}` for `l ≥ 1`.
    pub fn a(&self, l: usize) -> T {
        self.coefficients[l - 1]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

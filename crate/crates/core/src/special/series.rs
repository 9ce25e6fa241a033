//! Truncated power series in one variable, enough to expand the Temme
//! coefficients around the transition point.

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Series(pub Vec<f64>);

impl Series {
    pub fn zeros(n: usize) -> Series {
        Series(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let mut out = Series::zeros(n);
        for i in 0..n {
            for j in 0..n - i {
                out.0[i + j] += self.0[i] * o.0[j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Series {
        Series(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|i| self.0[i] + o.0[i]).collect())
    }

    pub fn recip(&self) -> Series {
        let n = self.len();
        let mut out = Series::zeros(n);
        out.0[0] = 1.0 / self.0[0];
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| self.0[j] * out.0[k - j]).sum();
            out.0[k] = -s / self.0[0];
        }
        out
    }

    pub fn sqrt(&self) -> Series {
        let n = self.len();
        let mut out = Series::zeros(n);
        out.0[0] = self.0[0].sqrt();
        for k in 1..n {
            let s: f64 = (1..k).map(|j| out.0[j] * out.0[k - j]).sum();
            out.0[k] = (self.0[k] - s) / (2.0 * out.0[0]);
        }
        out
    }

    pub fn derivative(&self) -> Series {
        let n = self.len();
        let mut out = Series::zeros(n.saturating_sub(1));
        for k in 1..n {
            out.0[k - 1] = self.0[k] * k as f64;
        }
        out
    }

    /// Divides by the variable; the constant term is dropped.
    pub fn shift_down(&self) -> Series {
        Series(self.0[1..].to_vec())
    }

    /// `self(inner)` for an `inner` series with zero constant term.
    pub fn compose(&self, inner: &Series) -> Series {
        debug_assert!(inner.0[0] == 0.0);
        let n = self.len().min(inner.len());
        let mut out = Series::zeros(n);
        for &c in self.0[..n].iter().rev() {
            out = out.mul(inner);
            out.0[0] += c;
        }
        out
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

//! Complex numbers stored as `mantissa * exp(logmag)`.
//!
//! Finite-N kernel sums involve terms like `mu^(b_N N)` whose magnitude is far
//! outside the double range while their weighted combinations are O(1). The
//! mantissa is kept with modulus in `[1, 2)` by power-of-two rescaling; the
//! binary exponent is tracked separately from the natural-log part so that
//! normalisation itself never rounds.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;

/// Scaled complex value. Zero is represented by a zero mantissa.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    mantissa: Complex64,
    logmag: f64,
    exp2: i64,
}

impl fmt::Debug for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i)*2^{}*e^{}",
            self.mantissa.re, self.mantissa.im, self.exp2, self.logmag
        )
    }
}

/// Splits a power of two off `m`, returning `(m * 2^-e, e)`.
fn split_pow2(m: Complex64) -> (Complex64, i32) {
    let r = m.norm();
    if r == 0.0 || !r.is_finite() {
        return (m, 0);
    }
    let mut e = r.log2().floor() as i32;
    let mut scaled = scale_pow2(m, -e);
    // log2 can be off by one ulp near powers of two
    let s = scaled.norm();
    if s >= 2.0 {
        scaled = scale_pow2(scaled, -1);
        e += 1;
    } else if s < 1.0 {
        scaled = scale_pow2(scaled, 1);
        e -= 1;
    }
    (scaled, e)
}

fn scale_pow2(m: Complex64, e: i32) -> Complex64 {
    // two steps keep the factor representable for |e| up to ~2000
    let h = e / 2;
    let f1 = 2f64.powi(h);
    let f2 = 2f64.powi(e - h);
    Complex64::new(m.re * f1 * f2, m.im * f1 * f2)
}

/// `2^e` for possibly large `e`, saturating.
fn pow2(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1200 {
        0.0
    } else {
        let h = (e / 2) as i32;
        2f64.powi(h) * 2f64.powi(e as i32 - h)
    }
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(0.0, 0.0),
        logmag: 0.0,
        exp2: 0,
    };
    pub const ONE: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(1.0, 0.0),
        logmag: 0.0,
        exp2: 0,
    };

    fn with_parts(z: Complex64, logmag: f64, exp2: i64) -> ScaledComplex {
        if z.re == 0.0 && z.im == 0.0 {
            return ScaledComplex::ZERO;
        }
        let (m, e) = split_pow2(z);
        ScaledComplex {
            mantissa: m,
            logmag,
            exp2: exp2 + e as i64,
        }
    }

    /// Builds `z * exp(log_scale)`.
    pub fn new(z: Complex64, log_scale: f64) -> ScaledComplex {
        ScaledComplex::with_parts(z, log_scale, 0)
    }

    pub fn from_complex(z: Complex64) -> ScaledComplex {
        ScaledComplex::new(z, 0.0)
    }

    pub fn from_real(x: f64) -> ScaledComplex {
        ScaledComplex::new(Complex64::new(x, 0.0), 0.0)
    }

    /// `exp(l)` for complex `l`, without overflow.
    pub fn exp(l: Complex64) -> ScaledComplex {
        ScaledComplex::new(Complex64::from_polar(1.0, l.im), l.re)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    /// Log-magnitude carried outside the mantissa.
    pub fn logmag(&self) -> f64 {
        self.logmag + self.exp2 as f64 * LN_2
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.logmag() + self.mantissa.norm().ln()
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Complex64> {
        ensure!(!self.is_zero(), Domain, "logarithm of zero");
        Ok(Complex64::new(self.ln_abs(), self.mantissa.arg()))
    }

    /// Converts to an ordinary complex number; saturates to inf or 0.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        // fold whole powers of two out of the natural-log part first
        let k = (self.logmag / LN_2).round();
        let rest = self.logmag - k * LN_2;
        let e = self.exp2.saturating_add(k as i64);
        let m = self.mantissa * rest.exp();
        if e.abs() <= 1000 {
            m * pow2(e)
        } else {
            m * pow2(e / 2) * pow2(e - e / 2)
        }
    }

    /// Like `to_complex` but fails on overflow.
    pub fn try_to_complex(&self) -> Result<Complex64> {
        let z = self.to_complex();
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::Overflow(format!(
                "value with log-magnitude {} is not representable",
                self.ln_abs()
            )))
        }
    }

    pub fn conj(&self) -> ScaledComplex {
        ScaledComplex {
            mantissa: self.mantissa.conj(),
            ..*self
        }
    }

    pub fn scale_real(&self, x: f64) -> ScaledComplex {
        ScaledComplex::with_parts(self.mantissa * x, self.logmag, self.exp2)
    }

    pub fn mul_complex(&self, z: Complex64) -> ScaledComplex {
        if self.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::with_parts(self.mantissa * z, self.logmag, self.exp2)
    }

    /// Multiplies by `exp(l)`.
    pub fn mul_exp(&self, l: Complex64) -> ScaledComplex {
        if self.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::with_parts(
            self.mantissa * Complex64::from_polar(1.0, l.im),
            self.logmag + l.re,
            self.exp2,
        )
    }

    /// Sum of two scaled values, aligned to the larger magnitude.
    pub fn add(&self, other: &ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.logmag() >= other.logmag() {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.logmag() - big.logmag();
        if d < -800.0 {
            return *big;
        }
        ScaledComplex::with_parts(
            big.mantissa + small.mantissa * relative_factor(small, big),
            big.logmag,
            big.exp2,
        )
    }

    pub fn sub(&self, other: &ScaledComplex) -> ScaledComplex {
        self.add(&-*other)
    }

    /// Principal power `self^w`. Zero base needs `Re w > 0`.
    pub fn powc(&self, w: Complex64) -> Result<ScaledComplex> {
        if self.is_zero() {
            ensure!(
                w.re > 0.0,
                Domain,
                "zero raised to exponent with non-positive real part"
            );
            return Ok(ScaledComplex::ZERO);
        }
        Ok(ScaledComplex::exp(w * self.ln()?))
    }

    pub fn powf(&self, w: f64) -> Result<ScaledComplex> {
        self.powc(Complex64::new(w, 0.0))
    }

    pub fn powi(&self, k: i32) -> ScaledComplex {
        if self.is_zero() {
            return if k == 0 {
                ScaledComplex::ONE
            } else {
                ScaledComplex::ZERO
            };
        }
        let mut acc = ScaledComplex::ONE;
        let mut base = if k < 0 { ScaledComplex::ONE / *self } else { *self };
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`, computed in scaled form.
    pub fn rel_diff(&self, other: &ScaledComplex) -> f64 {
        let diff = self.sub(other);
        if diff.is_zero() {
            return 0.0;
        }
        let denom = self.ln_abs().max(other.ln_abs());
        (diff.ln_abs() - denom).exp()
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() || rhs.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::with_parts(
            self.mantissa * rhs.mantissa,
            self.logmag + rhs.logmag,
            self.exp2 + rhs.exp2,
        )
    }
}

impl Div for ScaledComplex {
    type Output = ScaledComplex;
    /// Division by zero yields a non-finite mantissa, as for `f64`.
    fn div(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::with_parts(
            self.mantissa / rhs.mantissa,
            self.logmag - rhs.logmag,
            self.exp2 - rhs.exp2,
        )
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;
    fn neg(self) -> ScaledComplex {
        ScaledComplex {
            mantissa: -self.mantissa,
            ..self
        }
    }
}

/// `|x| / |reference|` carried as a real factor, exact for pure powers of two.
fn relative_factor(x: &ScaledComplex, reference: &ScaledComplex) -> f64 {
    (x.logmag - reference.logmag).exp() * pow2(x.exp2 - reference.exp2)
}

/// Compensated (Neumaier) accumulator for sums of scaled terms.
///
/// The running sum is kept relative to a reference scale that only moves
/// upward, so terms of similar size are added without any rescaling error.
#[derive(Clone, Debug)]
pub struct ScaledSum {
    reference: ScaledComplex,
    sum: Complex64,
    comp: Complex64,
    empty: bool,
}

impl Default for ScaledSum {
    fn default() -> Self {
        ScaledSum::new()
    }
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl ScaledSum {
    pub fn new() -> ScaledSum {
        ScaledSum {
            reference: ScaledComplex::ONE,
            sum: Complex64::new(0.0, 0.0),
            comp: Complex64::new(0.0, 0.0),
            empty: true,
        }
    }

    pub fn add(&mut self, x: &ScaledComplex) {
        if x.is_zero() {
            return;
        }
        let unit = ScaledComplex {
            mantissa: Complex64::new(1.0, 0.0),
            ..*x
        };
        if self.empty {
            self.reference = unit;
            self.empty = false;
        } else if x.logmag() > self.reference.logmag() + 8.0 * LN_2 {
            let f = relative_factor(&self.reference, &unit);
            self.sum *= f;
            self.comp *= f;
            self.reference = unit;
        }
        let f = relative_factor(x, &self.reference);
        if f == 0.0 {
            return;
        }
        let t = x.mantissa * f;
        neumaier(&mut self.sum.re, &mut self.comp.re, t.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, t.im);
    }

    pub fn value(&self) -> ScaledComplex {
        if self.empty {
            return ScaledComplex::ZERO;
        }
        self.reference.mul_complex(self.sum + self.comp)
    }
}

//! Truncated complex power-series arithmetic.
//!
//! A [`TruncatedSeries`] is a jet `c₀ + c₁z + … + c_N z^N`: exactly the
//! information a function germ carries to order `N`, nothing more. All
//! operations are pure; mixed-order arguments truncate to the shorter order
//! because a jet only knows its own coefficients.

use num_complex::Complex64;

use crate::bell::bell_partial;
use crate::{Error, Result};

/// A power-series jet `c₀..c_N` over ℂ.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a jet from `c₀..c_N`. Rejects empty input and non-finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Builds a jet from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The jet of the constant `value` to the given order.
    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[0] = value;
        TruncatedSeries { coeffs }
    }

    /// The identity jet `z` to the given order (order ≥ 1).
    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order.max(1) + 1];
        coeffs[1] = Complex64::ONE;
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `c_k`; zero for `k` beyond the stored order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Copy of the jet cut down to `order` (a no-op when already shorter).
    pub fn truncated(&self, order: usize) -> Self {
        let len = (order + 1).min(self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Horner evaluation of the jet polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Cauchy product truncated to the shorter order.
    pub fn multiply(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for i in 0..=k {
                acc += self.coeffs[i] * other.coeffs[k - i];
            }
            *c = acc;
        }
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k] + other.coeffs[k])
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Quotient jet `self / den`, truncated to the shorter order.
    /// Requires `den(0) ≠ 0`.
    pub fn divide(&self, den: &TruncatedSeries) -> Result<TruncatedSeries> {
        let d0 = den.coeffs[0];
        if d0 == Complex64::ZERO {
            return Err(Error::ZeroLinearTerm);
        }
        let order = self.order().min(den.order());
        let mut q = vec![Complex64::ZERO; order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= den.coeff(j) * q[k - j];
            }
            q[k] = acc / d0;
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Composition `self ∘ inner` through the higher-order chain rule: the
    /// result coefficient is `c_n = Σ_{k=1}^n b_k B°_{n,k}(a₁,…,a_{n−k+1})`
    /// with `b` the outer and `a` the inner coefficients, and `c₀ = b₀`.
    ///
    /// Requires `inner(0) = 0`. See [`compose_direct`](Self::compose_direct)
    /// for the substitution route; the two must agree.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if inner.coeffs[0] != Complex64::ZERO {
            return Err(Error::NonzeroConstantTerm {
                value: inner.coeffs[0],
            });
        }
        let order = self.order().min(inner.order());
        let a = &inner.coeffs[1..];
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[0] = self.coeffs[0];
        for n in 1..=order {
            let mut acc = Complex64::ZERO;
            for k in 1..=n {
                let b_k = self.coeffs[k];
                if b_k == Complex64::ZERO {
                    continue;
                }
                acc += b_k * bell_partial(n, k, &a[..n - k + 1])?;
            }
            coeffs[n] = acc;
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Composition by direct Horner substitution:
    /// `h(g) = h₀ + g·(h₁ + g·(h₂ + …))`.
    ///
    /// Independent of the Bell-sum route in [`compose`](Self::compose);
    /// kept as a cross-check path.
    pub fn compose_direct(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if inner.coeffs[0] != Complex64::ZERO {
            return Err(Error::NonzeroConstantTerm {
                value: inner.coeffs[0],
            });
        }
        let order = self.order().min(inner.order());
        let g = inner.truncated(order);
        let mut acc = TruncatedSeries::constant(Complex64::ZERO, order);
        for k in (0..=self.order().min(order)).rev() {
            acc = acc.multiply(&g);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse jet `G` with `G ∘ self = z` to the shared order.
    ///
    /// Requires `f₀ = 0`, `f₁ ≠ 0`. Uses the recursion
    /// `b₁ = 1/a₁`, `b_n = −bⁿ Σ_{k=1}^{n−1} b_k B°_{n,k}(a₁,…,a_{n−k+1})`.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        if self.coeffs[0] != Complex64::ZERO {
            return Err(Error::NonzeroConstantTerm {
                value: self.coeffs[0],
            });
        }
        if self.order() < 1 {
            return Err(Error::InsufficientOrder { needed: 1, got: 0 });
        }
        let a = &self.coeffs[1..];
        if a[0] == Complex64::ZERO {
            return Err(Error::ZeroLinearTerm);
        }
        let order = self.order();
        let b = Complex64::ONE / a[0];
        let mut inv = vec![Complex64::ZERO; order + 1];
        inv[1] = b;
        for n in 2..=order {
            let mut acc = Complex64::ZERO;
            for k in 1..n {
                acc += inv[k] * bell_partial(n, k, &a[..n - k + 1])?;
            }
            inv[n] = -b.powu(n as u32) * acc;
        }
        Ok(TruncatedSeries { coeffs: inv })
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::ZERO && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})·z^{}", c, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

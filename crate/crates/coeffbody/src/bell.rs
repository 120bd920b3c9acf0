//! Ordinary Bell polynomials, their weighted-determinant representation, and
//! the link to Carathéodory-class coefficient sequences.
//!
//! `B°_{n,k}(x₁,…,x_{n−k+1}) = k! Σ_j Π_i x_i^{j_i}/j_i!`, summed over all
//! multi-indexes `j ≥ 0` with `Σ i·j_i = n` and `Σ j_i = k`. Equivalently,
//! `B°_{n,k}(x)` is the `z^n` coefficient of `(Σ x_i z^i)^k`, which is what
//! makes these the natural currency for jet composition and reversion.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Largest `n` whose multi-index sets are precomputed and shared.
const MEMO_MAX_N: usize = 16;

/// The exponent tuples `(j₁,…,j_{n−k+1})` of the `(n,k)` Bell polynomial.
///
/// Tuples satisfy `Σ i·j_i = n` and `Σ j_i = k`; the set is exhaustive and
/// duplicate-free. For `n ≤ 16` the sets come from a process-wide table
/// built once on first use; larger `n` is enumerated on the fly.
#[derive(Debug, Clone)]
pub struct MultiIndexSet {
    n: usize,
    k: usize,
    indices: IndexStorage,
}

#[derive(Debug, Clone)]
enum IndexStorage {
    Shared(&'static [Vec<u8>]),
    Owned(Vec<Vec<u8>>),
}

impl MultiIndexSet {
    pub fn for_params(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::BellIndexOutOfRange { n, k });
        }
        let indices = if n <= MEMO_MAX_N {
            IndexStorage::Shared(&memo_table()[n][k])
        } else {
            IndexStorage::Owned(enumerate(n, k))
        };
        Ok(MultiIndexSet { n, k, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Tuples of length `n − k + 1`.
    pub fn indices(&self) -> &[Vec<u8>] {
        match &self.indices {
            IndexStorage::Shared(s) => s,
            IndexStorage::Owned(v) => v,
        }
    }
}

/// Depth-first enumeration with running weight/count pruning.
fn enumerate(n: usize, k: usize) -> Vec<Vec<u8>> {
    let m = n - k + 1;
    let mut out = Vec::new();
    let mut current = vec![0u8; m];
    fn rec(
        pos: usize,
        m: usize,
        rem_weight: usize,
        rem_count: usize,
        current: &mut [u8],
        out: &mut Vec<Vec<u8>>,
    ) {
        if pos > m {
            if rem_weight == 0 && rem_count == 0 {
                out.push(current.to_vec());
            }
            return;
        }
        // Remaining slots are pos..=m, so each further unit weighs ≥ pos and ≤ m.
        if rem_count * m < rem_weight || rem_count.saturating_mul(pos) > rem_weight {
            return;
        }
        let max_j = rem_count.min(rem_weight / pos);
        for j in 0..=max_j {
            current[pos - 1] = j as u8;
            rec(
                pos + 1,
                m,
                rem_weight - pos * j,
                rem_count - j,
                current,
                out,
            );
        }
        current[pos - 1] = 0;
    }
    rec(1, m, n, k, &mut current, &mut out);
    out
}

fn memo_table() -> &'static Vec<Vec<Vec<Vec<u8>>>> {
    static TABLE: OnceLock<Vec<Vec<Vec<Vec<u8>>>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![Vec::new(); MEMO_MAX_N + 1];
        for (n, row) in table.iter_mut().enumerate().skip(1) {
            *row = (0..=n)
                .map(|k| if k == 0 { Vec::new() } else { enumerate(n, k) })
                .collect();
        }
        table
    })
}

/// `k!/Π j_i!` as an exact integer pushed into f64.
fn multinomial(k: usize, tuple: &[u8]) -> f64 {
    let mut value: u128 = 1;
    let mut remaining = k as u128;
    for &j in tuple {
        for d in 1..=u128::from(j) {
            value = value * (remaining + 1 - d) / d;
        }
        remaining -= u128::from(j);
    }
    value as f64
}

/// The ordinary Bell polynomial `B°_{n,k}` at `x = (x₁,…,x_{n−k+1})`.
pub fn bell_partial(n: usize, k: usize, x: &[Complex64]) -> Result<Complex64> {
    let set = MultiIndexSet::for_params(n, k)?;
    let m = n - k + 1;
    if x.len() < m {
        return Err(Error::InputTooShort {
            needed: m,
            got: x.len(),
        });
    }
    let mut acc = Complex64::ZERO;
    for tuple in set.indices() {
        let mut term = Complex64::new(multinomial(k, tuple), 0.0);
        for (i, &j) in tuple.iter().enumerate() {
            if j > 0 {
                term *= x[i].powu(u32::from(j));
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// The complete ordinary Bell polynomial `B°_p(x) = Σ_{k=1}^p B°_{p,k}(x)`.
pub fn bell_complete(p: usize, x: &[Complex64]) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::BellIndexOutOfRange { n: 0, k: 0 });
    }
    if x.len() < p {
        return Err(Error::InputTooShort {
            needed: p,
            got: x.len(),
        });
    }
    let mut acc = Complex64::ZERO;
    for k in 1..=p {
        acc += bell_partial(p, k, &x[..p - k + 1])?;
    }
    Ok(acc)
}

/// The `p×p` determinant equal to `Σ_{k=1}^p w^{k−1} B°_{p,k}(c₁,…,c_{p−k+1})`:
/// first column `c₁..c_p`, `−1` on the superdiagonal, and `w·c_{r−s+1}` below it.
///
/// Laplace expansion for `p ≤ 4`, partial-pivot elimination above that.
pub fn bell_weighted_det(p: usize, w: Complex64, c: &[Complex64]) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::BellIndexOutOfRange { n: 0, k: 0 });
    }
    if c.len() < p {
        return Err(Error::InputTooShort {
            needed: p,
            got: c.len(),
        });
    }
    let mut mat = vec![vec![Complex64::ZERO; p]; p];
    for (i, row) in mat.iter_mut().enumerate() {
        row[0] = c[i];
        for j in 1..p {
            if i + 1 == j {
                row[j] = -Complex64::ONE;
            } else if i >= j {
                row[j] = w * c[i - j];
            }
        }
    }
    if p <= 4 {
        Ok(det_laplace(&mat))
    } else {
        Ok(det_lu(mat))
    }
}

fn det_laplace(mat: &[Vec<Complex64>]) -> Complex64 {
    let p = mat.len();
    if p == 1 {
        return mat[0][0];
    }
    let mut acc = Complex64::ZERO;
    let mut sign = 1.0;
    for j in 0..p {
        if mat[0][j] != Complex64::ZERO {
            let minor: Vec<Vec<Complex64>> = mat[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter_map(|(s, &v)| (s != j).then_some(v))
                        .collect()
                })
                .collect();
            acc += Complex64::new(sign, 0.0) * mat[0][j] * det_laplace(&minor);
        }
        sign = -sign;
    }
    acc
}

fn det_lu(mut mat: Vec<Vec<Complex64>>) -> Complex64 {
    let p = mat.len();
    let mut det = Complex64::ONE;
    for col in 0..p {
        let pivot_row = (col..p)
            .max_by(|&a, &b| {
                mat[a][col]
                    .norm_sqr()
                    .partial_cmp(&mat[b][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if mat[pivot_row][col] == Complex64::ZERO {
            return Complex64::ZERO;
        }
        if pivot_row != col {
            mat.swap(pivot_row, col);
            det = -det;
        }
        let pivot = mat[col][col];
        det *= pivot;
        for row in col + 1..p {
            let factor = mat[row][col] / pivot;
            if factor != Complex64::ZERO {
                for s in col..p {
                    let sub = factor * mat[col][s];
                    mat[row][s] -= sub;
                }
            }
        }
    }
    det
}

/// Jet of `(1 + ω)/(1 − ω)` for `ω(0) = 0`: coefficient `p ≥ 1` equals
/// `2·B°_p(c₁,…,c_p)`, coefficient `0` equals `1`. When ω maps the disk to
/// itself the result is the jet of a Carathéodory-class function.
pub fn caratheodory_jet(omega: &TruncatedSeries) -> Result<TruncatedSeries> {
    if omega.coeff(0) != Complex64::ZERO {
        return Err(Error::NonzeroConstantTerm {
            value: omega.coeff(0),
        });
    }
    let order = omega.order();
    let c = &omega.coeffs()[1..];
    let mut coeffs = vec![Complex64::ZERO; order + 1];
    coeffs[0] = Complex64::ONE;
    for (p, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = 2.0 * bell_complete(p, &c[..p])?;
    }
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Oracle: `B°_{n,k}(x)` as the `z^n` coefficient of `(Σ x_i z^i)^k`.
    fn bell_via_power(n: usize, k: usize, x: &[Complex64]) -> Complex64 {
        let mut series = vec![Complex64::ZERO; n + 1];
        series[0] = Complex64::ONE;
        let mut base = vec![Complex64::ZERO; n + 1];
        for (i, &xi) in x.iter().enumerate() {
            if i + 1 <= n {
                base[i + 1] = xi;
            }
        }
        for _ in 0..k {
            let mut next = vec![Complex64::ZERO; n + 1];
            for a in 0..=n {
                for b in 0..=n - a {
                    next[a + b] += series[a] * base[b];
                }
            }
            series = next;
        }
        series[n]
    }

    fn random_complex(state: &mut u64) -> Complex64 {
        // Small xorshift; plenty for test data.
        let mut next = || {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            (*state >> 11) as f64 / (1u64 << 53) as f64
        };
        c(2.0 * next() - 1.0, 2.0 * next() - 1.0)
    }

    #[test]
    fn first_column_is_x_n() {
        let x: Vec<_> = (1..=9).map(|i| c(i as f64, -(i as f64))).collect();
        for n in 1..=9 {
            let got = bell_partial(n, 1, &x[..n]).unwrap();
            assert_eq!(got, x[n - 1]);
        }
    }

    #[test]
    fn diagonal_is_x1_power() {
        let x = [c(0.3, 0.7)];
        for n in 1..=8 {
            let got = bell_partial(n, n, &x).unwrap();
            assert!((got - x[0].powu(n as u32)).norm() < 1e-14);
        }
    }

    #[test]
    fn four_choose_two_enumeration() {
        // I₂ for n=4 is {(1,0,1),(0,2,0)}: 2x₁x₃ + x₂².
        let set = MultiIndexSet::for_params(4, 2).unwrap();
        let mut tuples: Vec<_> = set.indices().to_vec();
        tuples.sort();
        assert_eq!(tuples, vec![vec![0, 2, 0], vec![1, 0, 1]]);
        let x = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(bell_partial(4, 2, &x).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn multi_index_sets_are_exhaustive() {
        // Brute force over all tuples with entries ≤ n.
        for n in 1..=8 {
            for k in 1..=n {
                let m = n - k + 1;
                let mut brute = Vec::new();
                let mut tuple = vec![0u8; m];
                loop {
                    let weight: usize = tuple.iter().enumerate().map(|(i, &j)| (i + 1) * j as usize).sum();
                    let count: usize = tuple.iter().map(|&j| j as usize).sum();
                    if weight == n && count == k {
                        brute.push(tuple.clone());
                    }
                    // Odometer increment with digits 0..=n.
                    let mut pos = 0;
                    loop {
                        if pos == m {
                            break;
                        }
                        if (tuple[pos] as usize) < n {
                            tuple[pos] += 1;
                            break;
                        }
                        tuple[pos] = 0;
                        pos += 1;
                    }
                    if pos == m {
                        break;
                    }
                }
                let mut got = MultiIndexSet::for_params(n, k).unwrap().indices().to_vec();
                got.sort();
                brute.sort();
                assert_eq!(got, brute, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn matches_power_series_oracle() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in 1..=12 {
            for k in 1..=n {
                let x: Vec<_> = (0..n - k + 1).map(|_| random_complex(&mut state)).collect();
                let got = bell_partial(n, k, &x).unwrap();
                let want = bell_via_power(n, k, &x);
                assert!(
                    (got - want).norm() <= 1e-9 * (1.0 + want.norm()),
                    "n={n} k={k}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn complete_small_cases() {
        let x = [c(0.5, 0.1), c(-0.3, 0.2), c(0.7, -0.4)];
        assert_eq!(bell_complete(1, &x[..1]).unwrap(), x[0]);
        let p2 = bell_complete(2, &x[..2]).unwrap();
        assert!((p2 - (x[1] + x[0] * x[0])).norm() < 1e-14);
        let p3 = bell_complete(3, &x).unwrap();
        let want = x[2] + 2.0 * x[0] * x[1] + x[0].powu(3);
        assert!((p3 - want).norm() < 1e-14);
    }

    #[test]
    fn determinant_small_cases() {
        let cs = [c(0.4, 0.3), c(-0.2, 0.5), c(0.1, -0.9)];
        let w = c(1.3, -0.4);
        assert_eq!(bell_weighted_det(1, w, &cs[..1]).unwrap(), cs[0]);
        let d2 = bell_weighted_det(2, w, &cs[..2]).unwrap();
        assert!((d2 - (w * cs[0] * cs[0] + cs[1])).norm() < 1e-14);
        let d3 = bell_weighted_det(3, Complex64::ZERO, &cs).unwrap();
        assert!((d3 - cs[2]).norm() < 1e-14);
    }

    #[test]
    fn determinant_identity_random() {
        let mut state = 0x2545f4914f6cdd1du64;
        for p in 1..=8 {
            for _ in 0..40 {
                let cs: Vec<_> = (0..p).map(|_| random_complex(&mut state)).collect();
                let w = 2.0 * random_complex(&mut state);
                let det = bell_weighted_det(p, w, &cs).unwrap();
                let mut sum = Complex64::ZERO;
                for k in 1..=p {
                    sum += w.powu((k - 1) as u32) * bell_partial(p, k, &cs[..p - k + 1]).unwrap();
                }
                assert!(
                    (det - sum).norm() <= 1e-9 * (1.0 + sum.norm()),
                    "p={p}: det {det} vs sum {sum}"
                );
            }
        }
    }

    #[test]
    fn caratheodory_examples() {
        let omega = TruncatedSeries::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let jet = caratheodory_jet(&omega).unwrap();
        for (k, want) in [1.0, 2.0, 2.0, 2.0, 2.0].iter().enumerate() {
            assert!((jet.coeff(k) - c(*want, 0.0)).norm() < 1e-12);
        }

        let zero = TruncatedSeries::from_real(&[0.0, 0.0, 0.0]).unwrap();
        let jet = caratheodory_jet(&zero).unwrap();
        assert_eq!(jet.coeffs()[1..], [Complex64::ZERO; 2]);

        let omega = TruncatedSeries::from_real(&[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let jet = caratheodory_jet(&omega).unwrap();
        for (k, want) in [1.0, 0.0, 2.0, 0.0, 2.0].iter().enumerate() {
            assert!((jet.coeff(k) - c(*want, 0.0)).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let x = [c(1.0, 0.0)];
        assert!(bell_partial(0, 0, &x).is_err());
        assert!(bell_partial(3, 4, &x).is_err());
        assert!(bell_partial(3, 1, &x[..1]).is_err()); // needs length 3
        assert!(bell_complete(0, &x).is_err());
    }
}

//! Resistances and walk averages as sums over the Laplacian spectrum.
//!
//! For a circulant graph the Fourier modes diagonalize the Laplacian, so
//! the two-point resistance between vertices at offset `l` is
//! `R(l) = (1/N) Σ_{n=1}^{N-1} 4 sin²(nlπ/N) / λ_n`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;

use crate::circulant::{CirculantSpec, EigenvalueTable};
use crate::error::{Error, Result};
use crate::exact::{to_f64, BigRational};

/// Neumaier-compensated accumulator. Merging two partial sums is
/// order-insensitive up to the compensation term.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `sin²(πm/N)` with `m` folded into `[0, N/2]`.
pub(crate) fn sin2_frac(m: usize, n: usize) -> f64 {
    let m = m % n;
    let s = (PI * m.min(n - m) as f64 / n as f64).sin();
    s * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResistance {
    pub value: f64,
    /// Summand for each mode `n = 1..N-1`, when requested.
    pub terms: Option<Vec<f64>>,
}

fn connected_spectrum(spec: &CirculantSpec) -> Result<EigenvalueTable> {
    let table = spec.eigenvalues();
    table.require_connected()?;
    Ok(table)
}

fn check_offset(spec: &CirculantSpec, l: usize) -> Result<()> {
    if l >= spec.n() {
        return Err(Error::InvalidOffset {
            n: spec.n(),
            offset: l,
        });
    }
    Ok(())
}

fn resistance_from_table(table: &EigenvalueTable, n: usize, l: usize) -> f64 {
    // modes n and N-n contribute identical terms
    let mut acc = CompensatedSum::new();
    for k in 1..=n / 2 {
        let term = 4.0 * sin2_frac(k * l, n) / table.get(k);
        acc.add(if 2 * k == n { term } else { 2.0 * term });
    }
    acc.value() / n as f64
}

/// Two-point resistance between vertex 0 and vertex `l`.
pub fn resistance_spectral(spec: &CirculantSpec, l: usize) -> Result<f64> {
    check_offset(spec, l)?;
    let table = connected_spectrum(spec)?;
    Ok(resistance_from_table(&table, spec.n(), l))
}

/// Same as [`resistance_spectral`], optionally keeping the per-mode summands.
pub fn resistance_spectral_detailed(
    spec: &CirculantSpec,
    l: usize,
    keep_terms: bool,
) -> Result<SpectralResistance> {
    check_offset(spec, l)?;
    let table = connected_spectrum(spec)?;
    let n = spec.n();
    let value = resistance_from_table(&table, n, l);
    let terms = keep_terms.then(|| {
        (1..n)
            .map(|k| 4.0 * sin2_frac(k * l, n) / (n as f64 * table.get(k)))
            .collect()
    });
    Ok(SpectralResistance { value, terms })
}

/// `R(l)` for every `l` in `0..N` from a single eigenvalue table.
pub fn resistance_profile_spectral(spec: &CirculantSpec) -> Result<Vec<f64>> {
    let table = connected_spectrum(spec)?;
    let n = spec.n();
    Ok((0..n)
        .map(|l| resistance_from_table(&table, n, l))
        .collect())
}

fn reciprocal_eigen_sum(table: &EigenvalueTable) -> f64 {
    let n = table.len();
    let mut acc = CompensatedSum::new();
    for k in 1..=n / 2 {
        let term = 1.0 / table.get(k);
        acc.add(if 2 * k == n { term } else { 2.0 * term });
    }
    acc.value()
}

/// Kirchhoff index `N Σ_{n≥1} 1/λ_n`.
pub fn kirchhoff_spectral(spec: &CirculantSpec) -> Result<f64> {
    let table = connected_spectrum(spec)?;
    Ok(spec.n() as f64 * reciprocal_eigen_sum(&table))
}

/// Mean first-passage time by the eigentime identity, `d Σ_{n≥1} 1/λ_n`.
///
/// Without an antipodal jump this is `p Σ (2 Σ_m sin²(mnπ/N))^{-1}`.
pub fn eigentime_mfpt(spec: &CirculantSpec) -> Result<f64> {
    let table = connected_spectrum(spec)?;
    Ok(spec.degree() as f64 * reciprocal_eigen_sum(&table))
}

/// Row of binomial coefficients `C(m, 0..=m)`.
fn binomial_row(m: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..m {
        c = c * (m - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `Σ_{n=1}^{N-1} sin^{2J}(nπ/N)` in closed form, exactly:
///
/// `N C(2J,J) / 2^{2J} + N / 2^{2J-1} Σ_{p=1}^{⌊J/N⌋} (-1)^{pN} C(2J, J-pN)`.
///
/// The correction sum is what the classical formula omits when `J ≥ N`.
pub fn trig_power_sum_exact(n: u64, j: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::UnsupportedN {
            n: n as usize,
            min: 2,
        });
    }
    if j == 0 {
        return Err(Error::BadPower);
    }
    let row = binomial_row(2 * j);
    let nn = BigInt::from(n);
    let central = BigRational::new(&nn * &row[j as usize], BigInt::one() << (2 * j) as usize);
    let mut correction = BigInt::from(0);
    for p in 1..=j / n {
        let term = &row[(j - p * n) as usize];
        if (p * n).is_multiple_of(2) {
            correction += term;
        } else {
            correction -= term;
        }
    }
    let tail = BigRational::new(nn * correction, BigInt::one() << (2 * j - 1) as usize);
    Ok(central + tail)
}

pub fn trig_power_sum(n: u64, j: u64) -> Result<f64> {
    trig_power_sum_exact(n, j).map(|r| to_f64(&r))
}

/// The same sum evaluated term by term in floating point.
pub fn trig_power_sum_direct(n: u64, j: u64) -> f64 {
    let nn = n as usize;
    (1..nn)
        .map(|k| sin2_frac(k, nn).powi(j as i32))
        .collect::<CompensatedSum>()
        .value()
}

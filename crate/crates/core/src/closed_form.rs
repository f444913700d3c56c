//! Exact resistances for the cycle `C_N(1)`, the four-neighbour cycle
//! `C_N(1,2)` and the second-neighbour graph `C_N(2)`.
//!
//! The `C_N(1,2)` resistance is
//!
//! ```text
//! R(l) = l(N-l)/(5N) + (-1)^{l+1} F_l² · L_N/(5 F_N) + (-1)^l F_{2l}/5
//! ```
//!
//! for both parities of `N`. The factor `L_N/(5F_N)` is the rational value of
//! `(1/√5)(1 ± β^N)/(1 ∓ β^N)` with `β = (3-√5)/2`; the sign pattern that
//! depends on the parity of `N` is absorbed by the sign of `ψ^N` in the
//! Binet forms of `L_N` and `F_N`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{fib, int, lucas, sign, to_f64, BigRational};
use crate::report::{Check, Quantity, VerificationReport};
use crate::spectral::CompensatedSum;

/// Smallest `N` for which jumps 1 and 2 are distinct non-antipodal classes.
pub const MIN_C12_N: usize = 5;

/// Tolerance for the floating-point trigonometric identities.
pub const TRIG_IDENTITY_TOL: f64 = 1e-9;

/// Exact resistances `R(0..N)` of a vertex-transitive graph, with `R(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceProfile {
    n: usize,
    jumps: Vec<usize>,
    values: Vec<BigRational>,
}

impl ResistanceProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn get(&self, l: usize) -> &BigRational {
        &self.values[l]
    }

    /// `R(1), ..., R(N-1)`.
    pub fn values(&self) -> &[BigRational] {
        &self.values[1..]
    }

    /// `(N/2) Σ_{l=1}^{N-1} R(l)`.
    pub fn kirchhoff(&self) -> KirchhoffIndex {
        let sum: BigRational = self.values().iter().sum();
        KirchhoffIndex {
            value: sum * BigRational::new(self.n.into(), 2.into()),
        }
    }

    /// Resistance summed over all edges; Foster's identity makes this `N - 1`.
    pub fn foster_sum(&self) -> BigRational {
        self.jumps
            .iter()
            .map(|&s| {
                let copies = if 2 * s == self.n { self.n / 2 } else { self.n };
                &self.values[s] * BigInt::from(copies)
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirchhoffIndex {
    pub value: BigRational,
}

/// Resistance in `C_N(2)`: finite, or unreachable across the two
/// components that appear for even `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C2Resistance {
    Finite(BigRational),
    Unreachable,
}

impl C2Resistance {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            C2Resistance::Finite(r) => Some(r),
            C2Resistance::Unreachable => None,
        }
    }

    pub fn to_quantity(&self) -> Quantity {
        match self {
            C2Resistance::Finite(r) => Quantity::Exact(r.clone()),
            C2Resistance::Unreachable => Quantity::Unreachable,
        }
    }
}

fn check_offset(n: usize, l: usize) -> Result<()> {
    if l >= n {
        Err(Error::InvalidOffset { n, offset: l })
    } else {
        Ok(())
    }
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::UnsupportedN { n, min })
    } else {
        Ok(())
    }
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `l(N - l)/N`, the resistance of the `N`-cycle.
pub fn cycle_resistance(n: usize, l: usize) -> Result<BigRational> {
    require_n(n, 3)?;
    check_offset(n, l)?;
    Ok(frac(l * (n - l), n))
}

/// `L_N / (5 F_N)`.
pub fn lucas_fib_factor(n: usize) -> BigRational {
    let n = n as u64;
    BigRational::new(lucas(n), fib(n) * 5)
}

fn c12_with_factor(n: usize, l: usize, factor: &BigRational) -> BigRational {
    if l == 0 {
        return BigRational::zero();
    }
    let l64 = l as u64;
    let fl = fib(l64);
    let cycle_part = frac(l * (n - l), 5 * n);
    let square_part = factor * BigRational::from_integer(&fl * &fl * -sign(l64));
    let bisected_part = frac(fib(2 * l64) * sign(l64), 5);
    cycle_part + square_part + bisected_part
}

/// Exact resistance between vertices 0 and `l` of `C_N(1,2)`.
pub fn c12_resistance(n: usize, l: usize) -> Result<BigRational> {
    require_n(n, MIN_C12_N)?;
    check_offset(n, l)?;
    Ok(c12_with_factor(n, l, &lucas_fib_factor(n)))
}

pub fn c12_profile(n: usize) -> Result<ResistanceProfile> {
    require_n(n, MIN_C12_N)?;
    let factor = lucas_fib_factor(n);
    Ok(ResistanceProfile {
        n,
        jumps: vec![1, 2],
        values: (0..n).map(|l| c12_with_factor(n, l, &factor)).collect(),
    })
}

pub fn cycle_profile(n: usize) -> Result<ResistanceProfile> {
    require_n(n, 3)?;
    Ok(ResistanceProfile {
        n,
        jumps: vec![1],
        values: (0..n).map(|l| frac(l * (n - l), n)).collect(),
    })
}

/// Kirchhoff index of `C_N(1,2)` from the alternating Fibonacci sums:
///
/// ```text
/// N even: (N³-N)/60 + (N/10)(F_{2N-1} + 2N - 1) f + (N/10)(F_{N-1}² - F_N² - 1)
/// N odd:  (N³-N)/60 - (N/10)(F_{2N-1} - 2N + 1) f + (N/10)(F_N² - F_{N-1}² - 1)
/// ```
///
/// with `f = L_N/(5F_N)`.
pub fn c12_kirchhoff(n: usize) -> Result<KirchhoffIndex> {
    require_n(n, MIN_C12_N)?;
    let n64 = n as u64;
    let nn = BigInt::from(n);
    let f = lucas_fib_factor(n);
    let f_2n1 = fib(2 * n64 - 1);
    let (fn1, fn0) = (fib(n64 - 1), fib(n64));
    let squares = &fn1 * &fn1 - &fn0 * &fn0;
    let tenth = frac(n, 10);
    let cubic = frac(&nn * &nn * &nn - &nn, 60);
    let value = if n.is_multiple_of(2) {
        let lin = BigRational::from_integer(f_2n1 + 2 * &nn - 1);
        cubic + &tenth * lin * &f + &tenth * BigRational::from_integer(squares - 1)
    } else {
        let lin = BigRational::from_integer(f_2n1 - 2 * &nn + 1);
        cubic - &tenth * lin * &f + &tenth * BigRational::from_integer(-squares - 1)
    };
    Ok(KirchhoffIndex { value })
}

/// Resistance between vertices 0 and `v` of `C_N(2)`, i.e. `C_N(1,2)` with
/// every first-neighbour edge removed.
///
/// Odd `N`: `(v/2)(1 - v/(2N))` for even `v`, `(N - v²/N)/4` for odd `v`.
/// Even `N`: the graph splits into two `N/2`-cycles by parity; odd offsets
/// are unreachable and even offsets sit `v/2` steps apart on a half-cycle.
pub fn c2_resistance(n: usize, v: usize) -> Result<C2Resistance> {
    require_n(n, MIN_C12_N)?;
    check_offset(n, v)?;
    let r = if n % 2 == 1 {
        if v.is_multiple_of(2) {
            frac(v * (2 * n - v), 4 * n)
        } else {
            frac(n * n - v * v, 4 * n)
        }
    } else if v % 2 == 1 {
        return Ok(C2Resistance::Unreachable);
    } else {
        frac(v * (n - v), 2 * n)
    };
    Ok(C2Resistance::Finite(r))
}

/// Profile of the connected (odd `N`) second-neighbour graph.
pub fn c2_profile(n: usize) -> Result<ResistanceProfile> {
    require_n(n, MIN_C12_N)?;
    if n.is_multiple_of(2) {
        return Err(Error::Disconnected);
    }
    let values = (0..n)
        .map(|v| c2_resistance(n, v).map(|r| r.finite().cloned().expect("odd n is connected")))
        .collect::<Result<_>>()?;
    Ok(ResistanceProfile {
        n,
        jumps: vec![2],
        values,
    })
}

/// Exact checks of `R(l) = R(N-l)` and the three-term recursion
/// `R(l+1) = l(1-l/N) + 2R(1) - 3R(l) - R(l-1)` for `C_N(1,2)`.
pub fn c12_recursion_checks(n: usize) -> Result<VerificationReport> {
    let p = c12_profile(n)?;
    let mut report = VerificationReport::new();
    for l in 1..n - 1 {
        let rhs = frac(l * (n - l), n) + p.get(1) * int(2) - p.get(l) * int(3) - p.get(l - 1);
        report.push(Check::exact(
            format!("c12 recursion N={n} l={l}"),
            p.get(l + 1).clone(),
            rhs,
        ));
    }
    for l in 1..n {
        report.push(Check::exact(
            format!("c12 symmetry N={n} l={l}"),
            p.get(l).clone(),
            p.get(n - l).clone(),
        ));
    }
    Ok(report)
}

/// `N R(1) + N R(2) = N - 1`, exactly.
pub fn c12_foster_check(n: usize) -> Result<Check> {
    let p = c12_profile(n)?;
    Ok(Check::exact(
        format!("c12 foster exact N={n}"),
        p.foster_sum(),
        int(n as i64 - 1),
    ))
}

/// Exact checks for odd `N` of `C_N(2)`: the recursion
/// `R(l+1) = l(1-l/N) + (N - 1/N)/2 - 2R(l) - R(l-1)` and `R(l) = R(N-l)`.
pub fn c2_recursion_checks(n: usize) -> Result<VerificationReport> {
    let p = c2_profile(n)?;
    let mut report = VerificationReport::new();
    let half = frac(n * n - 1, 2 * n);
    for l in 1..n - 1 {
        let rhs = frac(l * (n - l), n) + &half - p.get(l) * int(2) - p.get(l - 1);
        report.push(Check::exact(
            format!("c2 recursion N={n} l={l}"),
            p.get(l + 1).clone(),
            rhs,
        ));
    }
    for l in 1..n {
        report.push(Check::exact(
            format!("c2 symmetry N={n} l={l}"),
            p.get(l).clone(),
            p.get(n - l).clone(),
        ));
    }
    Ok(report)
}

/// The hidden symmetry `R(l) = R(N-l)` restated on the Fibonacci terms:
/// `(F_{2(N-l)} ∓ F_{2l})/5 = (F_{N-l}² ∓ F_l²) L_N/(5F_N)`, minus for even
/// `N` and plus for odd `N`.
pub fn fibonacci_symmetry_checks(n: usize) -> Result<VerificationReport> {
    require_n(n, MIN_C12_N)?;
    let f = lucas_fib_factor(n);
    let s: i64 = if n.is_multiple_of(2) { -1 } else { 1 };
    let mut report = VerificationReport::new();
    for l in 1..n {
        let (l64, m64) = (l as u64, (n - l) as u64);
        let lhs = frac(fib(2 * m64) + fib(2 * l64) * s, 5);
        let rhs = BigRational::from_integer(fib(m64).pow(2) + fib(l64).pow(2) * s) * &f;
        report.push(Check::exact(
            format!("fibonacci symmetry N={n} l={l}"),
            lhs,
            rhs,
        ));
    }
    Ok(report)
}

/// `Σ_{n=1}^{N-1} 1/sin²(nπ/N) = (N²-1)/3`.
pub fn sine_reciprocal_check(n: usize) -> Result<Check> {
    require_n(n, 2)?;
    let lhs: CompensatedSum = (1..n)
        .map(|k| 1.0 / crate::spectral::sin2_frac(k, n))
        .collect();
    Ok(Check::relative(
        format!("inverse sine square sum N={n}"),
        Quantity::Float(lhs.value()),
        Quantity::Exact(frac(n * n - 1, 3)),
        TRIG_IDENTITY_TOL,
    ))
}

/// Exact right-hand side of `Σ_{n=1}^{N-1} 1/(1 + 4cos²(nπ/N))`:
///
/// ```text
/// N even:  (F_{2N-1} + 2N - 1) f/2 + (F_{N-1}² - F_N² - 1)/2
/// N odd:  -(F_{2N-1} - 2N + 1) f/2 + (F_N² - F_{N-1}² - 1)/2
/// ```
///
/// with `f = L_N/(5F_N)`.
pub fn cosine_fibonacci_rhs(n: usize) -> Result<BigRational> {
    require_n(n, 2)?;
    let n64 = n as u64;
    let nn = BigInt::from(n);
    let f = lucas_fib_factor(n);
    let (fn1, fn0) = (fib(n64 - 1), fib(n64));
    let squares = &fn1 * &fn1 - &fn0 * &fn0;
    let half = frac(1, 2);
    let f_2n1 = fib(2 * n64 - 1);
    Ok(if n.is_multiple_of(2) {
        &half * BigRational::from_integer(f_2n1 + 2 * &nn - 1) * &f
            + &half * BigRational::from_integer(squares - 1)
    } else {
        -&half * BigRational::from_integer(f_2n1 - 2 * &nn + 1) * &f
            + &half * BigRational::from_integer(-squares - 1)
    })
}

pub fn cosine_fibonacci_check(n: usize) -> Result<Check> {
    let rhs = cosine_fibonacci_rhs(n)?;
    let lhs: CompensatedSum = (1..n)
        .map(|k| {
            let c = (PI * k as f64 / n as f64).cos();
            1.0 / (1.0 + 4.0 * c * c)
        })
        .collect();
    Ok(Check::relative(
        format!("inverse cosine fibonacci sum N={n}"),
        Quantity::Float(lhs.value()),
        Quantity::Exact(rhs),
        TRIG_IDENTITY_TOL,
    ))
}

/// Fibonacci symmetry identities (exact) plus the two trigonometric sums.
pub fn identity_suite(n: usize) -> Result<VerificationReport> {
    let mut report = fibonacci_symmetry_checks(n)?;
    report.push(sine_reciprocal_check(n)?);
    report.push(cosine_fibonacci_check(n)?);
    Ok(report)
}

/// Floating-point evaluation of the two parity-specific forms with
/// `β = (3-√5)/2`, for cross-checking [`lucas_fib_factor`].
pub fn beta_factor_f64(n: usize) -> f64 {
    let beta = (3.0 - 5f64.sqrt()) / 2.0;
    let b = beta.powi(n as i32);
    let ratio = if n.is_multiple_of(2) {
        (1.0 + b) / (1.0 - b)
    } else {
        (1.0 - b) / (1.0 + b)
    };
    ratio / 5f64.sqrt()
}

/// `R(l)` of `C_N(1,2)` evaluated from the parity-split `β^N` forms in `f64`.
pub fn c12_resistance_beta_f64(n: usize, l: usize) -> f64 {
    let fl = to_f64(&BigRational::from_integer(fib(l as u64)));
    let f2l = to_f64(&BigRational::from_integer(fib(2 * l as u64)));
    let sgn = sign(l as u64) as f64;
    (l * (n - l)) as f64 / (5 * n) as f64 - sgn * fl * fl * beta_factor_f64(n) + sgn * f2l / 5.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use num_traits::Signed;

    fn is_positive(r: &BigRational) -> bool {
        r.is_positive()
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle_resistance(4, 2).unwrap(), int(1));
        assert_eq!(cycle_resistance(9, 0).unwrap(), int(0));
        assert_eq!(cycle_resistance(5, 2).unwrap(), rational(6, 5));
        assert!(cycle_resistance(2, 1).is_err());
        assert!(cycle_resistance(5, 5).is_err());
    }

    #[test]
    fn octahedron() {
        assert_eq!(c12_resistance(6, 1).unwrap(), rational(5, 12));
        assert_eq!(c12_resistance(6, 2).unwrap(), rational(5, 12));
        assert_eq!(c12_resistance(6, 3).unwrap(), rational(1, 2));
        assert_eq!(c12_kirchhoff(6).unwrap().value, rational(13, 2));
    }

    #[test]
    fn complete_graph_k5() {
        for l in 1..5 {
            assert_eq!(c12_resistance(5, l).unwrap(), rational(2, 5));
        }
        assert_eq!(c12_kirchhoff(5).unwrap().value, int(4));
    }

    #[test]
    fn c12_rejects_small_n() {
        assert_eq!(
            c12_resistance(4, 1),
            Err(Error::UnsupportedN { n: 4, min: 5 })
        );
        assert!(c12_kirchhoff(3).is_err());
        assert!(c12_resistance(7, 7).is_err());
    }

    #[test]
    fn reduced_factor_matches_beta_forms() {
        // f64 can only confirm to ~1e-15; the 50-digit confirmation lives in
        // the integration tests
        for n in 5..=40 {
            let exact = to_f64(&lucas_fib_factor(n));
            assert!((exact - beta_factor_f64(n)).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn c2_examples() {
        assert_eq!(
            c2_resistance(5, 1).unwrap(),
            C2Resistance::Finite(rational(6, 5))
        );
        assert_eq!(
            c2_resistance(5, 2).unwrap(),
            C2Resistance::Finite(rational(4, 5))
        );
        assert_eq!(c2_resistance(6, 3).unwrap(), C2Resistance::Unreachable);
        assert_eq!(
            c2_resistance(6, 2).unwrap(),
            C2Resistance::Finite(rational(2, 3))
        );
        assert_eq!(c2_resistance(6, 0).unwrap(), C2Resistance::Finite(int(0)));
        assert!(c2_profile(8).is_err());
    }

    #[test]
    fn c2_odd_is_relabelled_cycle() {
        // vertex 2k sits k steps away along the 2-jump cycle
        for n in (5usize..60).step_by(2) {
            let inv2 = n.div_ceil(2);
            for v in 0..n {
                let steps = (v * inv2) % n;
                let expect = cycle_resistance(n, steps).unwrap();
                assert_eq!(c2_resistance(n, v).unwrap(), C2Resistance::Finite(expect));
            }
        }
    }

    #[test]
    fn recursions_and_symmetry() {
        for n in 5..=60 {
            assert!(c12_recursion_checks(n).unwrap().all_pass(), "n={n}");
            assert!(c12_foster_check(n).unwrap().pass, "n={n}");
            if n % 2 == 1 {
                assert!(c2_recursion_checks(n).unwrap().all_pass(), "n={n}");
            }
        }
    }

    #[test]
    fn profile_invariants() {
        for n in 5..=40 {
            let p = c12_profile(n).unwrap();
            assert!(p.values().iter().all(is_positive));
            assert_eq!(p.foster_sum(), int(n as i64 - 1));
            assert_eq!(p.kirchhoff(), c12_kirchhoff(n).unwrap());
        }
        let c = cycle_profile(7).unwrap();
        assert_eq!(c.foster_sum(), int(6));
        assert_eq!(c.kirchhoff().value, rational(7 * 48, 12));
    }

    #[test]
    fn identity_examples() {
        let c = sine_reciprocal_check(3).unwrap();
        assert_eq!(c.rhs, Quantity::Exact(rational(8, 3)));
        assert!(c.pass);
        assert_eq!(cosine_fibonacci_rhs(4).unwrap(), rational(5, 3));
        let c = cosine_fibonacci_check(4).unwrap();
        assert!(c.pass, "{c:?}");
        for n in 5..=40 {
            let r = identity_suite(n).unwrap();
            assert!(r.all_pass(), "n={n}: {:?}", r.failures().next());
            assert_eq!(r.len(), n - 1 + 2);
        }
    }
}

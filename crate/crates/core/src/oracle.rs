//! Ground truth from linear algebra, independent of the spectral and
//! closed-form routes.
//!
//! Vertex `N-1` is grounded: its row and column are deleted, and the
//! remaining symmetric positive-definite system is Cholesky-factored once.
//! The resistance between `i` and `j` is the potential difference produced
//! by injecting a unit current at `i` and extracting it at `j`.

use std::ops::RangeInclusive;

use nalgebra::{linalg::Cholesky, DMatrix, DVector, Dyn};

use crate::circulant::{CirculantSpec, DenseLaplacian};
use crate::closed_form::{self, C2Resistance, MIN_C12_N};
use crate::error::{Error, Result};
use crate::report::{Check, Quantity, VerificationReport};
use crate::spectral;

/// Default relative tolerance for resistance comparisons.
pub const RESISTANCE_TOL: f64 = 1e-9;

/// Foster sums must match `N - 1` within this many units of `N`.
pub const FOSTER_TOL_PER_VERTEX: f64 = 1e-8;

pub struct GroundedSolver {
    order: usize,
    factor: Cholesky<f64, Dyn>,
}

impl GroundedSolver {
    pub fn new(laplacian: &DenseLaplacian) -> Result<Self> {
        let n = laplacian.order();
        // component count equals the multiplicity of the zero eigenvalue
        let labels = laplacian.components();
        if labels.iter().any(|&c| c != 0) {
            return Err(Error::Disconnected);
        }
        let reduced = DMatrix::from_fn(n - 1, n - 1, |i, j| f64::from(laplacian.get(i, j)));
        let factor = Cholesky::new(reduced).ok_or(Error::Singular)?;
        Ok(Self { order: n, factor })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn ground(&self) -> usize {
        self.order - 1
    }

    /// Node potentials for unit current in at `i` and out at `j`, ground at 0 V.
    pub fn potentials(&self, i: usize, j: usize) -> DVector<f64> {
        let g = self.ground();
        let mut b = DVector::zeros(g);
        if i != g {
            b[i] += 1.0;
        }
        if j != g {
            b[j] -= 1.0;
        }
        let x = self.factor.solve(&b);
        DVector::from_fn(self.order, |k, _| if k == g { 0.0 } else { x[k] })
    }

    pub fn resistance(&self, i: usize, j: usize) -> Result<f64> {
        if i >= self.order || j >= self.order {
            return Err(Error::InvalidOffset {
                n: self.order,
                offset: i.max(j),
            });
        }
        if i == j {
            return Ok(0.0);
        }
        let x = self.potentials(i, j);
        Ok(x[i] - x[j])
    }
}

/// Two-point resistance from the grounded Laplacian solve.
pub fn resistance_solve(laplacian: &DenseLaplacian, i: usize, j: usize) -> Result<f64> {
    let n = laplacian.order();
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidOffset { n, offset: j });
    }
    GroundedSolver::new(laplacian)?.resistance(i, j)
}

/// `R(0, l)` for every `l`, using a single factorization.
pub fn solve_profile(spec: &CirculantSpec) -> Result<Vec<f64>> {
    let solver = GroundedSolver::new(&spec.laplacian()?)?;
    (0..spec.n()).map(|l| solver.resistance(0, l)).collect()
}

/// Kirchhoff index as the sum of all pairwise solved resistances.
pub fn kirchhoff_solve(laplacian: &DenseLaplacian) -> Result<f64> {
    let solver = GroundedSolver::new(laplacian)?;
    let n = laplacian.order();
    let mut acc = spectral::CompensatedSum::new();
    for i in 0..n {
        for j in i + 1..n {
            acc.add(solver.resistance(i, j)?);
        }
    }
    Ok(acc.value())
}

/// Sum of solved resistances over every edge, checked against `N - 1`.
pub fn foster_audit(spec: &CirculantSpec) -> Result<VerificationReport> {
    let lap = spec.laplacian()?;
    let solver = GroundedSolver::new(&lap)?;
    let n = spec.n();
    let mut acc = spectral::CompensatedSum::new();
    for i in 0..n {
        for &s in spec.jumps() {
            if spec.is_antipodal(s) && i >= n / 2 {
                continue;
            }
            acc.add(solver.resistance(i, (i + s) % n)?);
        }
    }
    let mut report = VerificationReport::new();
    report.push(Check::absolute(
        format!("foster solve {}", label(spec)),
        Quantity::Float(acc.value()),
        Quantity::Float((n - 1) as f64),
        FOSTER_TOL_PER_VERTEX * n as f64,
    ));
    Ok(report)
}

fn label(spec: &CirculantSpec) -> String {
    let jumps: Vec<String> = spec.jumps().iter().map(ToString::to_string).collect();
    format!("C_{}({})", spec.n(), jumps.join(","))
}

/// Compares every available route for each spec and offset: spectral vs
/// solve always, plus the exact closed form for jumps `{1}`, `{1,2}` and
/// `{2}`. Disconnected specs are checked for consistent unreachability,
/// and reachable offsets are solved on the component containing vertex 0.
pub fn equivalence_sweep(
    n_range: RangeInclusive<usize>,
    jump_sets: &[Vec<usize>],
) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in n_range {
        for jumps in jump_sets {
            match CirculantSpec::new(n, jumps) {
                Ok(spec) => sweep_spec(&spec, &mut report),
                Err(e) => report.push(Check::agree(
                    format!("C_{n}({jumps:?}) construct: {e}"),
                    Quantity::Unreachable,
                    Quantity::Unreachable,
                    false,
                )),
            }
        }
    }
    report
}

fn closed_value(spec: &CirculantSpec, l: usize) -> Option<Quantity> {
    let n = spec.n();
    match spec.jumps() {
        [1] => closed_form::cycle_resistance(n, l)
            .ok()
            .map(Quantity::Exact),
        [1, 2] if n >= MIN_C12_N => closed_form::c12_resistance(n, l).ok().map(Quantity::Exact),
        [2] if n >= MIN_C12_N => closed_form::c2_resistance(n, l)
            .ok()
            .map(|r| r.to_quantity()),
        _ => None,
    }
}

fn sweep_spec(spec: &CirculantSpec, report: &mut VerificationReport) {
    let name = label(spec);
    let n = spec.n();
    let fail = |what: String, e: Error| {
        Check::agree(
            format!("{what}: {e}"),
            Quantity::Unreachable,
            Quantity::Unreachable,
            false,
        )
    };
    if spec.is_connected() {
        let solved = match solve_profile(spec) {
            Ok(v) => v,
            Err(e) => return report.push(fail(format!("{name} solve"), e)),
        };
        let spectral = match spectral::resistance_profile_spectral(spec) {
            Ok(v) => v,
            Err(e) => return report.push(fail(format!("{name} spectral"), e)),
        };
        for l in 1..n {
            report.push(Check::relative(
                format!("{name} l={l} spectral~solve"),
                Quantity::Float(spectral[l]),
                Quantity::Float(solved[l]),
                RESISTANCE_TOL,
            ));
            if let Some(exact) = closed_value(spec, l) {
                report.push(Check::relative(
                    format!("{name} l={l} closed~spectral"),
                    exact.clone(),
                    Quantity::Float(spectral[l]),
                    RESISTANCE_TOL,
                ));
                report.push(Check::relative(
                    format!("{name} l={l} closed~solve"),
                    exact,
                    Quantity::Float(solved[l]),
                    RESISTANCE_TOL,
                ));
            }
        }
        return;
    }

    let g = spec.component_count();
    let lap = match spec.laplacian() {
        Ok(l) => l,
        Err(e) => return report.push(fail(format!("{name} laplacian"), e)),
    };
    let labels = lap.components();
    let component = spec.component_spec().and_then(|c| solve_profile(&c));
    for l in 1..n {
        let reachable = labels[l] == labels[0];
        report.push(Check::agree(
            format!("{name} l={l} reachability"),
            Quantity::Float(if l % g == 0 { 1.0 } else { 0.0 }),
            Quantity::Float(if reachable { 1.0 } else { 0.0 }),
            (l % g == 0) == reachable,
        ));
        let solved = if reachable {
            component
                .as_ref()
                .map(|prof| Quantity::Float(prof[l / g]))
                .unwrap_or(Quantity::Unreachable)
        } else {
            let detected = matches!(resistance_solve(&lap, 0, l), Err(Error::Disconnected));
            report.push(Check::agree(
                format!("{name} l={l} solve reports disconnected"),
                Quantity::Unreachable,
                if detected {
                    Quantity::Unreachable
                } else {
                    Quantity::Float(0.0)
                },
                detected,
            ));
            Quantity::Unreachable
        };
        if let Some(exact) = closed_value(spec, l) {
            let check = match (&exact, &solved) {
                (Quantity::Unreachable, Quantity::Unreachable) => {
                    Check::agree(format!("{name} l={l} closed~solve"), exact, solved, true)
                }
                (Quantity::Unreachable, _) | (_, Quantity::Unreachable) => {
                    Check::agree(format!("{name} l={l} closed~solve"), exact, solved, false)
                }
                _ => Check::relative(
                    format!("{name} l={l} closed~solve"),
                    exact,
                    solved,
                    RESISTANCE_TOL,
                ),
            };
            report.push(check);
        }
    }
}

/// Half-cycle consistency for even `N` in `C_N(2)`: odd offsets are
/// unreachable, even offsets equal the `N/2`-cycle resistance at `v/2`.
pub fn c2_even_checks(n: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for v in 1..n {
        let got = closed_form::c2_resistance(n, v)?;
        let check = if v % 2 == 1 {
            Check::agree(
                format!("c2 N={n} v={v} unreachable"),
                got.to_quantity(),
                Quantity::Unreachable,
                got == C2Resistance::Unreachable,
            )
        } else {
            let cycle = closed_form::cycle_resistance(n / 2, v / 2)?;
            match got {
                C2Resistance::Finite(r) => {
                    Check::exact(format!("c2 N={n} v={v} half-cycle"), r, cycle)
                }
                C2Resistance::Unreachable => Check::agree(
                    format!("c2 N={n} v={v} half-cycle"),
                    Quantity::Unreachable,
                    Quantity::Exact(cycle),
                    false,
                ),
            }
        };
        report.push(check);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::build_circulant;

    fn lap(n: usize, jumps: &[usize]) -> DenseLaplacian {
        build_circulant(n, jumps).unwrap().laplacian().unwrap()
    }

    #[test]
    fn solve_examples() {
        assert!((resistance_solve(&lap(4, &[1]), 0, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((resistance_solve(&lap(5, &[1, 2]), 0, 1).unwrap() - 0.4).abs() < 1e-12);
        assert!((resistance_solve(&lap(6, &[1, 2]), 0, 3).unwrap() - 0.5).abs() < 1e-12);
        // octahedron by series-parallel: adjacent pair at 5/12
        assert!((resistance_solve(&lap(6, &[1, 2]), 0, 1).unwrap() - 5.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn solve_errors() {
        assert_eq!(
            resistance_solve(&lap(6, &[2]), 0, 1),
            Err(Error::Disconnected)
        );
        assert!(resistance_solve(&lap(6, &[1]), 2, 2).is_err());
        assert!(resistance_solve(&lap(6, &[1]), 0, 6).is_err());
    }

    #[test]
    fn symmetric_and_metric() {
        for (n, jumps) in [
            (9, vec![1, 2]),
            (12, vec![1, 5]),
            (10, vec![2, 5]),
            (7, vec![3]),
        ] {
            let l = lap(n, &jumps);
            let s = GroundedSolver::new(&l).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let rij = s.resistance(i, j).unwrap();
                    assert!((rij - s.resistance(j, i).unwrap()).abs() < 1e-12);
                    assert!(rij >= 0.0);
                    for k in 0..n {
                        let bound = rij + s.resistance(j, k).unwrap();
                        assert!(s.resistance(i, k).unwrap() <= bound + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn foster_examples() {
        for (n, jumps) in [
            (6, vec![1, 2]),
            (7, vec![1, 2]),
            (10, vec![1]),
            (8, vec![1, 4]),
        ] {
            let spec = build_circulant(n, &jumps).unwrap();
            let r = foster_audit(&spec).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
        let split = build_circulant(8, &[2]).unwrap();
        assert_eq!(foster_audit(&split), Err(Error::Disconnected));
    }

    #[test]
    fn kirchhoff_from_solves() {
        for n in 3..=60usize {
            for jumps in [&[1][..], &[1, 2], &[2, 3]] {
                let Ok(spec) = build_circulant(n, jumps) else {
                    continue;
                };
                if !spec.is_connected() {
                    continue;
                }
                let k = kirchhoff_solve(&spec.laplacian().unwrap()).unwrap();
                let e = spectral::kirchhoff_spectral(&spec).unwrap();
                assert!((k - e).abs() <= 1e-7 * e, "n={n} {jumps:?}");
            }
        }
    }

    #[test]
    fn sweep_examples() {
        let r = equivalence_sweep(5..=30, &[vec![1, 2]]);
        assert!(r.all_pass(), "{:?}", r.failures().next());
        let r = equivalence_sweep(5..=31, &[vec![2]]);
        assert!(r.all_pass(), "{:?}", r.failures().next());
        assert!(r
            .checks
            .iter()
            .any(|c| c.name.contains("solve reports disconnected")));
        let r = equivalence_sweep(4..=4, &[vec![1, 2]]);
        assert!(r.all_pass());
        let r = equivalence_sweep(3..=3, &[vec![1, 2]]);
        assert!(!r.all_pass());
    }

    #[test]
    fn c2_half_cycle() {
        for n in (6..=60).step_by(2) {
            assert!(c2_even_checks(n).unwrap().all_pass(), "n={n}");
        }
    }
}

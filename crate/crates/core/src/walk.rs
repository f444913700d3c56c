//! First-passage times, commute times and their averages for the simple
//! random walk, which moves to each of the `d` neighbours with probability
//! `1/d`.
//!
//! On a vertex-transitive graph `H_{0,l} = H_{l,0}`, so the commute time
//! `2|E|R(l)` splits evenly and `H_{0,l} = |E| R(l)`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circulant::CirculantSpec;
use crate::closed_form::{self, lucas_fib_factor, MIN_C12_N};
use crate::error::{Error, Result};
use crate::exact::{fib, int, BigRational};
use crate::report::Check;
use crate::spectral;

/// Seed used by the command-line and Python frontends when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_c12c;

/// Steps after which a single walk is abandoned.
pub const STEP_CAP: u64 = 1_000_000_000;

/// Per-target statistics; index `l` of `fpt` and `commute` is the target
/// vertex, with entry 0 equal to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkStats<T> {
    pub n: usize,
    pub fpt: Vec<T>,
    pub mfpt: T,
    pub commute: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√trials`.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Distance from `target` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target).abs() / self.std_error
        }
    }
}

fn check_target(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        Err(Error::InvalidOffset { n, offset: l })
    } else {
        Ok(())
    }
}

/// `H_{0,l} = 2N R(l)` on `C_N(1,2)`, exactly.
pub fn fpt_closed(n: usize, l: usize) -> Result<BigRational> {
    check_target(n, l)?;
    let r = closed_form::c12_resistance(n, l)?;
    Ok(r * int(2 * n as i64))
}

/// `H_{0,l} = |E| R(l)` from the spectral resistance, for any connected spec.
pub fn fpt_general(spec: &CirculantSpec, l: usize) -> Result<f64> {
    let r = spectral::resistance_spectral(spec, l)?;
    Ok(spec.edge_count() as f64 * r)
}

/// Commute time `2|E| R(l)`.
pub fn commute(spec: &CirculantSpec, l: usize) -> Result<f64> {
    let r = spectral::resistance_spectral(spec, l)?;
    Ok(2.0 * spec.edge_count() as f64 * r)
}

pub fn commute_closed(n: usize, l: usize) -> Result<BigRational> {
    fpt_closed(n, l).map(|h| h * int(2))
}

/// MFPT of `C_N(1,2)` as `(d/N) R(G)` with `d = 4`, using the summed profile.
pub fn mfpt_from_kirchhoff(n: usize) -> Result<BigRational> {
    let k = closed_form::c12_profile(n)?.kirchhoff();
    Ok(k.value * BigRational::new(4.into(), n.into()))
}

/// MFPT of `C_N(1,2)` from its own closed form:
///
/// ```text
/// N even: (N²-1)/15 + (2/5)(F_{2N-1} + 2N - 1) f + (2/5)(F_{N-1}² - F_N² - 1)
/// N odd:  (N²-1)/15 - (2/5)(F_{2N-1} - 2N + 1) f + (2/5)(F_N² - F_{N-1}² - 1)
/// ```
///
/// with `f = L_N/(5F_N)`.
pub fn mfpt_closed(n: usize) -> Result<BigRational> {
    if n < MIN_C12_N {
        return Err(Error::UnsupportedN { n, min: MIN_C12_N });
    }
    let n64 = n as u64;
    let nn = BigInt::from(n);
    let f = lucas_fib_factor(n);
    let two_fifths = BigRational::new(2.into(), 5.into());
    let (fn1, fn0) = (fib(n64 - 1), fib(n64));
    let squares = &fn1 * &fn1 - &fn0 * &fn0;
    let f_2n1 = fib(2 * n64 - 1);
    let quad = BigRational::new(&nn * &nn - 1, 15.into());
    Ok(if n.is_multiple_of(2) {
        quad + &two_fifths * BigRational::from_integer(f_2n1 + 2 * &nn - 1) * &f
            + &two_fifths * BigRational::from_integer(squares - 1)
    } else {
        quad - &two_fifths * BigRational::from_integer(f_2n1 - 2 * &nn + 1) * &f
            + &two_fifths * BigRational::from_integer(-squares - 1)
    })
}

/// Spectral MFPT for any connected spec (eigentime identity).
pub fn mfpt_spectral(spec: &CirculantSpec) -> Result<f64> {
    spectral::eigentime_mfpt(spec)
}

pub fn closed_walk_stats(n: usize) -> Result<WalkStats<BigRational>> {
    let profile = closed_form::c12_profile(n)?;
    let edges = int(2 * n as i64);
    let fpt: Vec<BigRational> = (0..n).map(|l| profile.get(l) * &edges).collect();
    let commute = fpt.iter().map(|h| h * int(2)).collect();
    let mfpt = fpt.iter().sum::<BigRational>() / int(n as i64);
    Ok(WalkStats {
        n,
        fpt,
        mfpt,
        commute,
    })
}

pub fn spectral_walk_stats(spec: &CirculantSpec) -> Result<WalkStats<f64>> {
    let profile = spectral::resistance_profile_spectral(spec)?;
    let edges = spec.edge_count() as f64;
    let fpt: Vec<f64> = profile.iter().map(|r| edges * r).collect();
    let commute = fpt.iter().map(|h| 2.0 * h).collect();
    Ok(WalkStats {
        n: spec.n(),
        mfpt: spectral::eigentime_mfpt(spec)?,
        fpt,
        commute,
    })
}

/// `Σ_{k~0} (H_{0,1} - H_{k,1}) = 4`, which on `C_N(1,2)` reads
/// `3H_{0,1} - H_{0,2} - H_{0,3} = 4`.
pub fn hitting_relation_check(n: usize) -> Result<Check> {
    if n < 7 {
        return Err(Error::UnsupportedN { n, min: 7 });
    }
    let h = |l| fpt_closed(n, l);
    let lhs = h(1)? * int(3) - h(2)? - h(3)?;
    Ok(Check::exact(format!("hitting relation N={n}"), lhs, int(4)))
}

fn walk_once(n: usize, offsets: &[usize], target: usize, rng: &mut ChaCha8Rng) -> Result<u64> {
    let mut pos = 0usize;
    let mut steps = 0u64;
    while pos != target {
        if steps >= STEP_CAP {
            return Err(Error::StepCap(STEP_CAP));
        }
        pos = (pos + offsets[rng.random_range(0..offsets.len())]) % n;
        steps += 1;
    }
    Ok(steps)
}

/// Step count of trial `trial` for the walk from 0 to `l`. Trial `t` always
/// draws from ChaCha8 stream `t` under key `seed`, so results do not depend
/// on how trials are scheduled.
pub fn simulate_trial(spec: &CirculantSpec, l: usize, seed: u64, trial: u64) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    walk_once(spec.n(), &spec.neighbor_offsets(), l, &mut rng)
}

/// Monte Carlo estimate of `H_{0,l}` over `trials` independent walks.
pub fn simulate_fpt(spec: &CirculantSpec, l: usize, trials: u64, seed: u64) -> Result<McEstimate> {
    check_target(spec.n(), l)?;
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if !spec.is_connected() && !l.is_multiple_of(spec.component_count()) {
        return Err(Error::Disconnected);
    }
    let n = spec.n();
    let offsets = spec.neighbor_offsets();
    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            walk_once(n, &offsets, l, &mut rng).map(|s| (s as u128, (s as u128) * (s as u128)))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let t = trials as u128;
    let mean = sum as f64 / trials as f64;
    let std_error = if trials > 1 {
        // T Σx² - (Σx)² is exact in integers
        let centered = (t * sum_sq - sum * sum) as f64;
        let variance = centered / (trials as f64 * (trials - 1) as f64);
        (variance / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::build_circulant;
    use crate::exact::{rational, to_f64};

    #[test]
    fn fpt_examples() {
        for l in 1..5 {
            assert_eq!(fpt_closed(5, l).unwrap(), int(4));
        }
        assert_eq!(fpt_closed(6, 1).unwrap(), int(5));
        assert_eq!(fpt_closed(6, 3).unwrap(), int(6));
        for n in 5..30 {
            for l in 1..n {
                assert_eq!(fpt_closed(n, l).unwrap(), fpt_closed(n, n - l).unwrap());
            }
        }
        assert!(fpt_closed(6, 0).is_err());
    }

    #[test]
    fn fpt_general_examples() {
        for n in 3..30usize {
            let c = build_circulant(n, &[1]).unwrap();
            let h = fpt_general(&c, 1).unwrap();
            assert!((h - (n - 1) as f64).abs() < 1e-10 * n as f64);
        }
        let k5 = build_circulant(5, &[1, 2]).unwrap();
        assert!((fpt_general(&k5, 2).unwrap() - 4.0).abs() < 1e-12);
        let oct = build_circulant(6, &[1, 2]).unwrap();
        assert!((fpt_general(&oct, 2).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn commute_examples() {
        let k5 = build_circulant(5, &[1, 2]).unwrap();
        for l in 1..5 {
            assert!((commute(&k5, l).unwrap() - 8.0).abs() < 1e-12);
        }
        let oct = build_circulant(6, &[1, 2]).unwrap();
        assert!((commute(&oct, 3).unwrap() - 12.0).abs() < 1e-12);
        for n in 3..20usize {
            let c = build_circulant(n, &[1]).unwrap();
            for l in 1..n {
                let expect = (2 * l * (n - l)) as f64;
                assert!((commute(&c, l).unwrap() - expect).abs() < 1e-10 * expect);
            }
        }
        assert_eq!(commute_closed(6, 1).unwrap(), int(10));
    }

    #[test]
    fn mfpt_examples() {
        assert_eq!(mfpt_closed(6).unwrap(), rational(13, 3));
        assert_eq!(mfpt_closed(5).unwrap(), rational(16, 5));
        let oct = build_circulant(6, &[1, 2]).unwrap();
        assert!((mfpt_spectral(&oct).unwrap() - 13.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn mfpt_routes_agree() {
        for n in 5..=100 {
            let closed = mfpt_closed(n).unwrap();
            assert_eq!(closed, mfpt_from_kirchhoff(n).unwrap(), "n={n}");
            let stats = closed_walk_stats(n).unwrap();
            assert_eq!(stats.mfpt, closed);
            let spec = build_circulant(n, &[1, 2]).unwrap();
            let eig = mfpt_spectral(&spec).unwrap();
            let c = to_f64(&closed);
            assert!((eig - c).abs() <= 1e-9 * c, "n={n}");
        }
    }

    #[test]
    fn walk_stats_invariants() {
        let spec = build_circulant(9, &[1, 3]).unwrap();
        let s = spectral_walk_stats(&spec).unwrap();
        let mean = s.fpt.iter().sum::<f64>() / 9.0;
        assert!((mean - s.mfpt).abs() < 1e-10 * s.mfpt);
        for l in 0..9 {
            assert_eq!(s.commute[l], 2.0 * s.fpt[l]);
        }
        let c = closed_walk_stats(8).unwrap();
        for l in 1..8 {
            assert_eq!(c.commute[l], &c.fpt[l] * int(2));
        }
    }

    #[test]
    fn hitting_relation() {
        for n in 7..=60 {
            assert!(hitting_relation_check(n).unwrap().pass, "n={n}");
        }
        assert!(hitting_relation_check(6).is_err());
    }

    #[test]
    fn simulation_is_reproducible() {
        let oct = build_circulant(6, &[1, 2]).unwrap();
        let a = simulate_fpt(&oct, 1, 1, 7).unwrap();
        let b = simulate_fpt(&oct, 1, 1, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mean, simulate_trial(&oct, 1, 7, 0).unwrap() as f64);
        assert_eq!(a.std_error, 0.0);
        let big = simulate_fpt(&oct, 3, 5000, 11).unwrap();
        let again = simulate_fpt(&oct, 3, 5000, 11).unwrap();
        assert_eq!(big.mean.to_bits(), again.mean.to_bits());
        assert_eq!(big.std_error.to_bits(), again.std_error.to_bits());
    }

    #[test]
    fn simulation_errors() {
        let oct = build_circulant(6, &[1, 2]).unwrap();
        assert_eq!(simulate_fpt(&oct, 1, 0, 1), Err(Error::NoTrials));
        assert!(simulate_fpt(&oct, 0, 10, 1).is_err());
        let split = build_circulant(6, &[2]).unwrap();
        assert_eq!(simulate_fpt(&split, 3, 10, 1), Err(Error::Disconnected));
        // same-component targets are still reachable
        assert!(simulate_fpt(&split, 2, 10, 1).is_ok());
    }

    #[test]
    fn simulation_tracks_closed_form() {
        let oct = build_circulant(6, &[1, 2]).unwrap();
        let est = simulate_fpt(&oct, 1, 200_000, 42).unwrap();
        assert!(est.z_score(5.0) < 4.0, "{est:?}");
        let k5 = build_circulant(5, &[1, 2]).unwrap();
        let est = simulate_fpt(&k5, 3, 200_000, 43).unwrap();
        assert!(est.z_score(4.0) < 4.0, "{est:?}");
    }
}

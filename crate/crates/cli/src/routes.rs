//! Exact and floating evaluation routes for a single spec.
//!
//! Exact values exist for the cycle `{1}`, for `{1,2}` and for `{2}` (both
//! with `N ≥ 5`). Floating values exist for every spec: offsets outside the
//! component of vertex 0 are unreachable, and reachable offsets are
//! evaluated on that component.

use circres::closed_form::{self, C2Resistance, MIN_C12_N};
use circres::exact::{int, BigRational};
use circres::report::{relative_residual, Check, Quantity};
use circres::{spectral, walk, CirculantSpec};

use crate::config::{Mode, UsageError};

pub const CROSS_CHECK_TOL: f64 = 1e-9;
pub const KIRCHHOFF_CROSS_TOL: f64 = 1e-8;

pub fn has_closed_form(spec: &CirculantSpec) -> bool {
    match spec.jumps() {
        [1] => true,
        [1, 2] | [2] => spec.n() >= MIN_C12_N,
        _ => false,
    }
}

pub fn resolve_mode(spec: &CirculantSpec, requested: Option<Mode>) -> Result<Mode, UsageError> {
    match requested {
        Some(Mode::Exact) if !has_closed_form(spec) => Err(UsageError(format!(
            "no closed form for jumps {:?} at n = {}; use --mode float",
            spec.jumps(),
            spec.n()
        ))),
        Some(m) => Ok(m),
        None if has_closed_form(spec) => Ok(Mode::Exact),
        None => Ok(Mode::Float),
    }
}

fn finite(r: BigRational) -> Quantity {
    Quantity::Exact(r)
}

pub fn exact_resistance(spec: &CirculantSpec, l: usize) -> Option<Quantity> {
    let n = spec.n();
    if !has_closed_form(spec) {
        return None;
    }
    let q = match spec.jumps() {
        [1] => finite(closed_form::cycle_resistance(n, l).ok()?),
        [1, 2] => finite(closed_form::c12_resistance(n, l).ok()?),
        _ => match closed_form::c2_resistance(n, l).ok()? {
            C2Resistance::Finite(r) => finite(r),
            C2Resistance::Unreachable => Quantity::Unreachable,
        },
    };
    Some(q)
}

/// Component containing vertex 0, and `l` relabelled into it, if reachable.
fn component_target(spec: &CirculantSpec, l: usize) -> Option<(CirculantSpec, usize)> {
    let g = spec.component_count();
    if !l.is_multiple_of(g) {
        return None;
    }
    let comp = spec.component_spec().ok()?;
    Some((comp, l / g))
}

pub fn float_resistance(spec: &CirculantSpec, l: usize) -> Quantity {
    match component_target(spec, l) {
        Some((comp, t)) => spectral::resistance_spectral(&comp, t)
            .map(Quantity::Float)
            .unwrap_or(Quantity::Unreachable),
        None => Quantity::Unreachable,
    }
}

fn component_edges(spec: &CirculantSpec) -> usize {
    spec.component_spec()
        .map(|c| c.edge_count())
        .unwrap_or_else(|_| spec.edge_count())
}

fn scale(q: Quantity, by: usize) -> Quantity {
    match q {
        Quantity::Exact(r) => Quantity::Exact(r * int(by as i64)),
        Quantity::Float(v) => Quantity::Float(v * by as f64),
        Quantity::Unreachable => Quantity::Unreachable,
    }
}

/// `H_{0,l} = |E| R(l)`, with `|E|` of the component walked on.
pub fn exact_fpt(spec: &CirculantSpec, l: usize) -> Option<Quantity> {
    if spec.jumps() == [1, 2] && spec.n() >= MIN_C12_N && l > 0 {
        return walk::fpt_closed(spec.n(), l).ok().map(Quantity::Exact);
    }
    exact_resistance(spec, l).map(|r| scale(r, component_edges(spec)))
}

pub fn float_fpt(spec: &CirculantSpec, l: usize) -> Quantity {
    scale(float_resistance(spec, l), component_edges(spec))
}

pub fn double(q: &Quantity) -> Quantity {
    scale(q.clone(), 2)
}

pub fn exact_mfpt(spec: &CirculantSpec) -> Option<Quantity> {
    let n = spec.n();
    if spec.jumps() == [1, 2] && n >= MIN_C12_N {
        return walk::mfpt_closed(n).ok().map(Quantity::Exact);
    }
    if !has_closed_form(spec) {
        return None;
    }
    if !spec.is_connected() {
        return Some(Quantity::Unreachable);
    }
    let mut total = BigRational::from_integer(0.into());
    for l in 1..n {
        match exact_fpt(spec, l)? {
            Quantity::Exact(r) => total += r,
            _ => return Some(Quantity::Unreachable),
        }
    }
    Some(Quantity::Exact(total / int(n as i64)))
}

pub fn float_mfpt(spec: &CirculantSpec) -> Quantity {
    spectral::eigentime_mfpt(spec)
        .map(Quantity::Float)
        .unwrap_or(Quantity::Unreachable)
}

pub fn exact_kirchhoff(spec: &CirculantSpec) -> Option<Quantity> {
    let n = spec.n();
    if !has_closed_form(spec) {
        return None;
    }
    if !spec.is_connected() {
        return Some(Quantity::Unreachable);
    }
    let value = match spec.jumps() {
        [1, 2] => closed_form::c12_kirchhoff(n).ok()?.value,
        [1] => closed_form::cycle_profile(n).ok()?.kirchhoff().value,
        _ => closed_form::c2_profile(n).ok()?.kirchhoff().value,
    };
    Some(Quantity::Exact(value))
}

pub fn float_kirchhoff(spec: &CirculantSpec) -> Quantity {
    spectral::kirchhoff_spectral(spec)
        .map(Quantity::Float)
        .unwrap_or(Quantity::Unreachable)
}

/// Exact route against floating route.
pub fn cross_check(name: String, exact: &Quantity, float: &Quantity, tol: f64) -> Check {
    match (exact, float) {
        (Quantity::Unreachable, Quantity::Unreachable) => {
            Check::agree(name, exact.clone(), float.clone(), true)
        }
        (Quantity::Unreachable, _) | (_, Quantity::Unreachable) => {
            Check::agree(name, exact.clone(), float.clone(), false)
        }
        _ => {
            let residual = relative_residual(float.as_f64(), exact.as_f64());
            Check::new(name, exact.clone(), float.clone(), residual, tol)
        }
    }
}

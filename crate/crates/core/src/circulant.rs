//! Circulant graphs `C_N(s_1, ..., s_p)`: vertex `i` is joined to `i ± s_m mod N`.
//!
//! Vertices are labelled `0..N`. A jump equal to `N/2` (even `N`) is the
//! antipodal jump; it contributes a single edge per vertex pair rather than
//! two, so such graphs have degree `2p - 1`.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest order for which [`CirculantSpec::laplacian`] materializes a dense matrix.
pub const DENSE_LIMIT: usize = 10_000;

/// Relative threshold (scaled by `4p`) under which an eigenvalue is snapped to zero.
pub const ZERO_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantSpec {
    n: usize,
    jumps: Vec<usize>,
}

/// Validates `n` and `jumps` and returns the spec with jumps sorted.
pub fn build_circulant(n: usize, jumps: &[usize]) -> Result<CirculantSpec> {
    CirculantSpec::new(n, jumps)
}

impl CirculantSpec {
    pub fn new(n: usize, jumps: &[usize]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall(n));
        }
        if jumps.is_empty() {
            return Err(Error::InvalidJump {
                n,
                jump: 0,
                reason: "jump set is empty",
            });
        }
        let mut sorted = jumps.to_vec();
        sorted.sort_unstable();
        for (i, &s) in sorted.iter().enumerate() {
            if s == 0 || s > n / 2 {
                return Err(Error::InvalidJump {
                    n,
                    jump: s,
                    reason: "outside [1, n/2]",
                });
            }
            if i > 0 && sorted[i - 1] == s {
                return Err(Error::InvalidJump {
                    n,
                    jump: s,
                    reason: "duplicate",
                });
            }
        }
        Ok(Self { n, jumps: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    /// Number of jumps `p`.
    pub fn p(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_antipodal(&self, jump: usize) -> bool {
        self.n.is_multiple_of(2) && jump == self.n / 2
    }

    pub fn has_antipodal_jump(&self) -> bool {
        self.jumps.iter().any(|&s| self.is_antipodal(s))
    }

    pub fn degree(&self) -> usize {
        2 * self.p() - usize::from(self.has_antipodal_jump())
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.p()
            - if self.has_antipodal_jump() {
                self.n / 2
            } else {
                0
            }
    }

    /// `gcd(n, s_1, ..., s_p)`, which is also the number of connected components.
    pub fn component_count(&self) -> usize {
        self.jumps.iter().fold(self.n, |g, &s| g.gcd(&s))
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// The component containing vertex 0: vertices `0, g, 2g, ...` form
    /// `C_{N/g}(s_1/g, ..., s_p/g)` under the relabelling `v -> v/g`.
    pub fn component_spec(&self) -> Result<CirculantSpec> {
        let g = self.component_count();
        let reduced: Vec<usize> = self.jumps.iter().map(|s| s / g).collect();
        CirculantSpec::new(self.n / g, &reduced)
    }

    /// Distinct neighbour offsets of vertex 0, in `0..n`.
    pub fn neighbor_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for &s in &self.jumps {
            out.push(s);
            if !self.is_antipodal(s) {
                out.push(self.n - s);
            }
        }
        out
    }

    /// Component count by breadth-first search over the materialized adjacency.
    pub fn bfs_component_count(&self) -> usize {
        let offsets = self.neighbor_offsets();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &o in &offsets {
                    let w = (v + o) % self.n;
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// Laplacian eigenvalue for Fourier mode `k`.
    ///
    /// A generic jump `s` contributes `4 sin²(πks/N)`; the antipodal jump
    /// contributes `1 - (-1)^k`, the eigenvalue of a single perfect matching.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let n = self.n as f64;
        let k = k % self.n;
        let raw: f64 = self
            .jumps
            .iter()
            .map(|&s| {
                if self.is_antipodal(s) {
                    if k % 2 == 1 {
                        2.0
                    } else {
                        0.0
                    }
                } else {
                    // sin²(πm/N) = sin²(π(N-m)/N); folding keeps λ_k == λ_{N-k} bit-exact
                    let m = (k * s) % self.n;
                    let x = PI * m.min(self.n - m) as f64 / n;
                    let sin = x.sin();
                    4.0 * sin * sin
                }
            })
            .sum();
        if raw.abs() < ZERO_SNAP * 4.0 * self.p() as f64 {
            0.0
        } else {
            raw
        }
    }

    pub fn eigenvalues(&self) -> EigenvalueTable {
        EigenvalueTable {
            values: (0..self.n).map(|k| self.eigenvalue(k)).collect(),
        }
    }

    pub fn laplacian(&self) -> Result<DenseLaplacian> {
        if self.n > DENSE_LIMIT {
            return Err(Error::TooLarge(self.n));
        }
        let n = self.n;
        let mut entries = vec![0i32; n * n];
        let offsets = self.neighbor_offsets();
        let degree = offsets.len() as i32;
        for i in 0..n {
            entries[i * n + i] = degree;
            for &o in &offsets {
                entries[i * n + (i + o) % n] = -1;
            }
        }
        Ok(DenseLaplacian { order: n, entries })
    }
}

/// Laplacian eigenvalues `λ_0..λ_{N-1}` indexed by Fourier mode.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueTable {
    values: Vec<f64>,
}

impl EigenvalueTable {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0.0).count()
    }

    /// Returns an error if any nonzero mode has a zero eigenvalue.
    pub fn require_connected(&self) -> Result<()> {
        if self.values.iter().skip(1).any(|&v| v == 0.0) {
            Err(Error::Disconnected)
        } else {
            Ok(())
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// `L = D - A` stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseLaplacian {
    order: usize,
    entries: Vec<i32>,
}

impl DenseLaplacian {
    /// Builds a Laplacian from raw row-major entries, checking symmetry,
    /// zero row sums and the `{0, -1}` off-diagonal pattern.
    pub fn from_entries(order: usize, entries: Vec<i32>) -> Option<Self> {
        if entries.len() != order * order {
            return None;
        }
        for i in 0..order {
            let mut row = 0i64;
            for j in 0..order {
                let v = entries[i * order + j];
                row += i64::from(v);
                if i != j && (v != entries[j * order + i] || !(v == 0 || v == -1)) {
                    return None;
                }
            }
            if row != 0 {
                return None;
            }
        }
        Some(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn trace(&self) -> i64 {
        (0..self.order).map(|i| i64::from(self.get(i, i))).sum()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| i64::from(v)).sum())
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&j| j != i && self.get(i, j) != 0)
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.order];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.order {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn to_matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.order, self.order, |i, j| f64::from(self.get(i, j)))
    }
}

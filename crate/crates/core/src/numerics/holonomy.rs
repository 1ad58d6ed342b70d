//! Eigenvalue holonomy around loops in the complex perturbation plane.
//!
//! Eigenvalues are computed frame by frame along the loop and matched
//! between consecutive frames by minimum-total-distance assignment. The
//! composition of the matchings around the closed loop is the holonomy
//! permutation: a loop enclosing an order-N exceptional point induces an
//! N-cycle. A loop that only touches the degeneracy keeps the permutation
//! trivial but pinches every trajectory toward it, which is what the petal
//! count measures.

use num_complex::Complex64;

use crate::charpoly::{eval_matrix, ParametricMatrix};
use crate::numerics::assign::{min_cost_assignment, second_best_cost};
use crate::numerics::eigen::eigenvalues;
use crate::numerics::NumericsError;

/// Loop geometry in the complex `v` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopMode {
    /// Circle of radius `c` centered on the degeneracy: `v = c e^(i psi)`.
    Enclosing,
    /// Circle of radius `c` passing through the degeneracy tangentially:
    /// `v = c (1 + e^(i psi))`.
    Touching,
}

#[derive(Debug, Clone, Copy)]
pub struct LoopSpec {
    pub radius: f64,
    pub steps: usize,
    pub mode: LoopMode,
}

impl LoopSpec {
    pub fn new(radius: f64, steps: usize, mode: LoopMode) -> Result<Self, NumericsError> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(NumericsError::BadSpec(
                "loop radius must be positive".into(),
            ));
        }
        if steps < 64 {
            return Err(NumericsError::BadSpec(
                "loop needs at least 64 sample points".into(),
            ));
        }
        Ok(Self {
            radius,
            steps,
            mode,
        })
    }

    fn point(&self, psi: f64) -> Complex64 {
        let e = Complex64::new(0.0, psi).exp();
        match self.mode {
            LoopMode::Enclosing => self.radius * e,
            LoopMode::Touching => self.radius * (Complex64::new(1.0, 0.0) + e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HolonomyResult {
    /// `permutation[j]` is the frame-0 slot where trajectory `j` ends after
    /// one full loop. Trajectory slots are the frame-0 eigenvalues sorted
    /// by (re, im).
    pub permutation: Vec<usize>,
    /// Sampled psi values, one per frame.
    pub psi: Vec<f64>,
    /// `trajectories[j][t]` is the eigenvalue of slot `j` at frame `t`.
    pub trajectories: Vec<Vec<Complex64>>,
    /// Touching mode only: total strict local minima of the distance to the
    /// degenerate eigenvalue along the closed multi-trajectories.
    pub petal_count: Option<usize>,
    /// Number of sample points actually used (doubled on continuity
    /// rejections, up to 4096).
    pub steps_used: usize,
}

/// Cycle decomposition of a permutation, each cycle starting at its
/// smallest element, cycles sorted by that element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            cycle.push(j);
            j = perm[j];
        }
        out.push(cycle);
    }
    out
}

/// Sorted cycle lengths, the conjugacy-class signature of the holonomy.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut lens: Vec<usize> = cycles(perm).iter().map(|c| c.len()).collect();
    lens.sort_unstable();
    lens
}

/// Render in cycle notation with 1-based indices, fixed points omitted
/// unless the permutation is the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let cs: Vec<String> = cycles(perm)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let inner: Vec<String> = c.iter().map(|j| (j + 1).to_string()).collect();
            format!("({})", inner.join(" "))
        })
        .collect();
    if cs.is_empty() {
        "identity".to_string()
    } else {
        cs.join("")
    }
}

const AMBIGUITY_GAP: f64 = 1e-10;
const MAX_STEPS: usize = 4096;

/// Trace eigenvalues around the loop. In enclosing mode an under-sampled
/// run (max consecutive step >= 10x the median) is retried with doubled
/// resolution up to 4096 points. Touching loops inherently take one large
/// step across the pinch, so the continuity gate does not apply to them.
pub fn holonomy_trace(
    m: &ParametricMatrix,
    spec: &LoopSpec,
) -> Result<HolonomyResult, NumericsError> {
    let mut steps = spec.steps;
    loop {
        let result = trace_once(m, spec, steps)?;
        match spec.mode {
            LoopMode::Touching => return Ok(result),
            LoopMode::Enclosing => {
                if continuity_ok(&result) {
                    return Ok(result);
                }
                if steps >= MAX_STEPS {
                    return Err(NumericsError::ContinuityFailure { steps });
                }
                steps = (steps * 2).min(MAX_STEPS);
            }
        }
    }
}

fn continuity_ok(result: &HolonomyResult) -> bool {
    let mut dists: Vec<f64> = Vec::new();
    for traj in &result.trajectories {
        for w in traj.windows(2) {
            dists.push((w[1] - w[0]).norm());
        }
    }
    if dists.is_empty() {
        return true;
    }
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = dists[dists.len() / 2];
    let max = *dists.last().unwrap();
    median == 0.0 || max < 10.0 * median
}

fn trace_once(
    m: &ParametricMatrix,
    spec: &LoopSpec,
    steps: usize,
) -> Result<HolonomyResult, NumericsError> {
    let n = m.dim();
    // half-offset grid: uniform spacing, never hits psi = pi exactly, so a
    // touching loop's polygon stays clear of the degeneracy itself
    let psi: Vec<f64> = (0..steps)
        .map(|t| std::f64::consts::TAU * (t as f64 + 0.5) / steps as f64)
        .collect();
    let mut frames: Vec<Vec<Complex64>> = Vec::with_capacity(steps);
    for &p in &psi {
        let eigs = eigenvalues(&eval_matrix(m, spec.point(p)))?;
        frames.push(eigs);
    }
    // canonical slot order at frame 0
    frames[0].sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

    // match frame t to frame t+1 (cyclically)
    let mut matches: Vec<Vec<usize>> = Vec::with_capacity(steps);
    for t in 0..steps {
        let from = &frames[t];
        let to = &frames[(t + 1) % steps];
        let cost: Vec<f64> = from
            .iter()
            .flat_map(|a| to.iter().map(move |b| (a - b).norm()))
            .collect();
        let (assignment, best) = min_cost_assignment(&cost, n);
        if n > 1 {
            let second = second_best_cost(&cost, n, &assignment);
            if second - best < AMBIGUITY_GAP {
                return Err(NumericsError::AmbiguousMatching { gap: second - best });
            }
        }
        matches.push(assignment);
    }

    let mut trajectories: Vec<Vec<Complex64>> = vec![Vec::with_capacity(steps); n];
    let mut permutation = vec![0usize; n];
    for slot in 0..n {
        let mut idx = slot;
        for t in 0..steps {
            trajectories[slot].push(frames[t][idx]);
            idx = matches[t][idx];
        }
        permutation[slot] = idx; // frame-0 index after the closing match
    }

    let petal_count = match spec.mode {
        LoopMode::Enclosing => None,
        LoopMode::Touching => Some(count_petals(m, &permutation, &trajectories)?),
    };

    Ok(HolonomyResult {
        permutation,
        psi,
        trajectories,
        petal_count,
        steps_used: steps,
    })
}

/// The degenerate eigenvalue at `v = 0`: mean of the largest cluster
/// (within an absolute tolerance scaled by the matrix norm).
fn degenerate_eigenvalue(m: &ParametricMatrix) -> Result<Complex64, NumericsError> {
    let a0 = eval_matrix(m, Complex64::new(0.0, 0.0));
    let scale = a0.frobenius_norm().max(1.0);
    let eigs = eigenvalues(&a0)?;
    let tol = 1e-6 * scale;
    let mut best: Option<(usize, Complex64)> = None;
    for &center in &eigs {
        let members: Vec<Complex64> = eigs
            .iter()
            .copied()
            .filter(|z| (z - center).norm() <= tol)
            .collect();
        let count = members.len();
        if count >= 2 && best.is_none_or(|(c, _)| count > c) {
            let mean = members.iter().sum::<Complex64>() / count as f64;
            best = Some((count, mean));
        }
    }
    best.map(|(_, z)| z)
        .ok_or(NumericsError::NoDegenerateEigenvalue)
}

/// Strict local minima of the distance to the degenerate eigenvalue,
/// counted along each closed multi-trajectory (trajectories concatenated
/// following the permutation cycles) and summed.
fn count_petals(
    m: &ParametricMatrix,
    permutation: &[usize],
    trajectories: &[Vec<Complex64>],
) -> Result<usize, NumericsError> {
    let lambda_ep = degenerate_eigenvalue(m)?;
    let mut total = 0usize;
    for cycle in cycles(permutation) {
        let mut d: Vec<f64> = Vec::new();
        for &slot in &cycle {
            d.extend(trajectories[slot].iter().map(|z| (z - lambda_ep).norm()));
        }
        let len = d.len();
        if len < 3 {
            continue;
        }
        for s in 0..len {
            let prev = d[(s + len - 1) % len];
            let next = d[(s + 1) % len];
            if d[s] < prev && d[s] < next {
                total += 1;
            }
        }
    }
    Ok(total)
}

//! Numeric amoeba sampling through the logarithmic map.
//!
//! For each grid value of `v = r e^{i theta}` the univariate polynomial
//! `p(v, .)` is solved by the companion-matrix method and every non-zero
//! root contributes a point `(log r, log|lambda|)`. The same sweep runs
//! with the roles of the variables swapped: one-directional sampling
//! visibly starves the tentacles parallel to the solved axis.

use num_complex::Complex64;

use crate::newton_amoeba::AmoebaError;
use crate::numerics::polynomial_roots;
use crate::poly::BiPoly;

/// Sampling grid: log-spaced radii crossed with uniform angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub radii: usize,
    pub angles: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_min: 1e-4,
            r_max: 1e4,
            radii: 200,
            angles: 256,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), AmoebaError> {
        let radii_ok = self.r_min.is_finite() && self.r_min > 0.0 && self.r_max > self.r_min;
        if !radii_ok {
            return Err(AmoebaError::BadGrid(
                "radii must satisfy 0 < r_min < r_max".into(),
            ));
        }
        if self.radii < 2 || self.angles < 4 {
            return Err(AmoebaError::BadGrid(
                "grid needs at least 2 radii and 4 angles".into(),
            ));
        }
        Ok(())
    }

    fn radius(&self, idx: usize) -> f64 {
        let t = idx as f64 / (self.radii - 1) as f64;
        (self.r_min.ln() * (1.0 - t) + self.r_max.ln() * t).exp()
    }

    fn angle(&self, idx: usize) -> f64 {
        std::f64::consts::TAU * idx as f64 / self.angles as f64
    }
}

/// Sampled image of the solution set under coordinate-wise log-modulus.
#[derive(Debug, Clone)]
pub struct AmoebaPointCloud {
    /// `(log|v|, log|lambda|)` pairs in deterministic grid order.
    pub points: Vec<(f64, f64)>,
    pub grid: GridSpec,
}

/// Tiny moduli are treated as exact zeros and discarded: the logarithmic
/// map has no image for them.
const ZERO_ROOT_CUTOFF: f64 = 1e-300;
/// Relative residual bound a sampled solution must satisfy.
const RESIDUAL_TOL: f64 = 1e-8;

fn residual_scale(p: &BiPoly, nu: Complex64, lambda: Complex64) -> f64 {
    p.terms()
        .map(|((i, k), c)| {
            c.to_complex64().norm() * nu.norm().powi(k as i32) * lambda.norm().powi(i as i32)
        })
        .sum::<f64>()
        .max(1.0)
}

/// Sample the amoeba of a genuinely bivariate polynomial.
pub fn amoeba_sample(p: &BiPoly, grid: &GridSpec) -> Result<AmoebaPointCloud, AmoebaError> {
    if p.is_zero() {
        return Err(AmoebaError::ZeroPolynomial);
    }
    if !p.depends_on_lambda() || !p.depends_on_nu() {
        return Err(AmoebaError::NotBivariate);
    }
    grid.validate()?;

    let mut points: Vec<(f64, f64)> = Vec::new();
    for ir in 0..grid.radii {
        let r = grid.radius(ir);
        for ia in 0..grid.angles {
            let theta = grid.angle(ia);
            let nu = Complex64::from_polar(r, theta);
            let coeffs = p.lambda_poly_at(nu);
            for root in polynomial_roots(&coeffs)? {
                if root.norm() < ZERO_ROOT_CUTOFF {
                    continue;
                }
                let res = p.eval(nu, root).norm();
                if res <= RESIDUAL_TOL * residual_scale(p, nu, root) {
                    points.push((r.ln(), root.norm().ln()));
                }
            }
        }
    }
    // swapped sweep: fix lambda on the grid, solve for v
    for ir in 0..grid.radii {
        let r = grid.radius(ir);
        for ia in 0..grid.angles {
            let theta = grid.angle(ia);
            let lambda = Complex64::from_polar(r, theta);
            let coeffs = p.nu_poly_at(lambda);
            for root in polynomial_roots(&coeffs)? {
                if root.norm() < ZERO_ROOT_CUTOFF {
                    continue;
                }
                let res = p.eval(root, lambda).norm();
                if res <= RESIDUAL_TOL * residual_scale(p, root, lambda) {
                    points.push((root.norm().ln(), r.ln()));
                }
            }
        }
    }
    Ok(AmoebaPointCloud {
        points,
        grid: *grid,
    })
}

impl AmoebaPointCloud {
    /// CSV with the header `log_abs_nu,log_abs_lambda`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("log_abs_nu,log_abs_lambda\n");
        for (x, y) in &self.points {
            out.push_str(&format!("{x:.12},{y:.12}\n"));
        }
        out
    }
}

/// Best-effort bounded-hole report from a coarse occupancy grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HoleReport {
    /// True when some empty region of at least 3x3 cells is fully
    /// enclosed by occupied cells.
    pub has_hole: bool,
    /// Total cells across all enclosed empty regions that meet the size
    /// threshold.
    pub hole_cells: usize,
}

/// Scan the occupancy of the window `[-half_width, half_width]^2` divided
/// into `cells x cells` and flood-fill the empty space from the border:
/// any unreachable empty component spanning at least 3x3 cells counts as a
/// hole (a bounded complement component of the sampled amoeba).
pub fn detect_hole(cloud: &AmoebaPointCloud, half_width: f64, cells: usize) -> HoleReport {
    assert!(cells >= 8, "grid too coarse for hole detection");
    let mut occupied = vec![false; cells * cells];
    let step = 2.0 * half_width / cells as f64;
    for &(x, y) in &cloud.points {
        if x.abs() >= half_width || y.abs() >= half_width {
            continue;
        }
        let cx = ((x + half_width) / step) as usize;
        let cy = ((y + half_width) / step) as usize;
        occupied[cy.min(cells - 1) * cells + cx.min(cells - 1)] = true;
    }
    // flood fill empty cells reachable from the border
    let mut reachable = vec![false; cells * cells];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for i in 0..cells {
        for (cx, cy) in [(i, 0), (i, cells - 1), (0, i), (cells - 1, i)] {
            if !occupied[cy * cells + cx] && !reachable[cy * cells + cx] {
                reachable[cy * cells + cx] = true;
                stack.push((cx, cy));
            }
        }
    }
    while let Some((cx, cy)) = stack.pop() {
        let neighbors = [
            (cx.wrapping_sub(1), cy),
            (cx + 1, cy),
            (cx, cy.wrapping_sub(1)),
            (cx, cy + 1),
        ];
        for (nx, ny) in neighbors {
            if nx < cells && ny < cells {
                let idx = ny * cells + nx;
                if !occupied[idx] && !reachable[idx] {
                    reachable[idx] = true;
                    stack.push((nx, ny));
                }
            }
        }
    }
    // collect enclosed empty components and measure their spans
    let mut seen = vec![false; cells * cells];
    let mut hole_cells = 0usize;
    let mut has_hole = false;
    for start in 0..cells * cells {
        if occupied[start] || reachable[start] || seen[start] {
            continue;
        }
        let mut component = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(idx) = stack.pop() {
            component.push(idx);
            let (cx, cy) = (idx % cells, idx / cells);
            let neighbors = [
                (cx.wrapping_sub(1), cy),
                (cx + 1, cy),
                (cx, cy.wrapping_sub(1)),
                (cx, cy + 1),
            ];
            for (nx, ny) in neighbors {
                if nx < cells && ny < cells {
                    let nidx = ny * cells + nx;
                    if !occupied[nidx] && !reachable[nidx] && !seen[nidx] {
                        seen[nidx] = true;
                        stack.push(nidx);
                    }
                }
            }
        }
        let min_x = component.iter().map(|i| i % cells).min().unwrap();
        let max_x = component.iter().map(|i| i % cells).max().unwrap();
        let min_y = component.iter().map(|i| i / cells).min().unwrap();
        let max_y = component.iter().map(|i| i / cells).max().unwrap();
        if max_x - min_x + 1 >= 3 && max_y - min_y + 1 >= 3 {
            has_hole = true;
            hole_cells += component.len();
        }
    }
    HoleReport {
        has_hole,
        hole_cells,
    }
}

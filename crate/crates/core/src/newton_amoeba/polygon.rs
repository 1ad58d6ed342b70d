//! Newton polygons over exact integer arithmetic.
//!
//! The polygon of `p(v, lambda)` is the convex hull of the exponent pairs
//! `(lambda_exp, nu_exp)` in the support. Its outer edge normals are (up to
//! the coordinate swap into log space) the directions of the amoeba's
//! tentacles, and a hull that collapses to a two-vertex segment is the
//! boundary-sensitivity signature the analyzer reports.

use num_integer::Integer;

use crate::newton_amoeba::AmoebaError;
use crate::poly::BiPoly;

/// A hull edge with its primitive outer normal, both in the
/// `(lambda_exp, nu_exp)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolygonEdge {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub normal: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// All support points, deterministic order.
    pub support: Vec<(i64, i64)>,
    /// Hull vertices, counter-clockwise, starting at the lexicographic
    /// minimum. One point for a monomial, two for collinear support.
    pub hull: Vec<(i64, i64)>,
    /// One edge per hull side; a segment carries its two antiparallel
    /// normals.
    pub edges: Vec<PolygonEdge>,
}

impl NewtonPolygon {
    /// True when the support is collinear but not a single point: the hull
    /// degenerates to a segment.
    pub fn is_segment(&self) -> bool {
        self.hull.len() == 2
    }

    /// Primitive outer normals, one per edge.
    pub fn tentacle_directions(&self) -> Vec<(i64, i64)> {
        self.edges.iter().map(|e| e.normal).collect()
    }

    /// Lattice points strictly inside the hull. Each one pairs with a
    /// bounded complement component the amoeba can (but need not visibly)
    /// develop; the sampled-hole report is computed independently.
    pub fn interior_lattice_points(&self) -> Vec<(i64, i64)> {
        if self.hull.len() < 3 {
            return Vec::new();
        }
        let min_x = self.hull.iter().map(|p| p.0).min().unwrap();
        let max_x = self.hull.iter().map(|p| p.0).max().unwrap();
        let min_y = self.hull.iter().map(|p| p.1).min().unwrap();
        let max_y = self.hull.iter().map(|p| p.1).max().unwrap();
        let mut out = Vec::new();
        for x in min_x..=max_x {
            for y in min_y..=max_y {
                let strictly_inside = self
                    .hull
                    .iter()
                    .zip(self.hull.iter().cycle().skip(1))
                    .all(|(a, b)| cross(*a, *b, (x, y)) > 0);
                if strictly_inside {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Tentacle directions of the amoeba in `(log|v|, log|lambda|)` space:
/// the outer normal components swap because the polygon is indexed
/// `(lambda_exp, nu_exp)` while the amoeba plane is `(v, lambda)`.
pub fn amoeba_direction(normal: (i64, i64)) -> (i64, i64) {
    (normal.1, normal.0)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.abs().gcd(&v.1.abs());
    if g == 0 {
        v
    } else {
        (v.0 / g, v.1 / g)
    }
}

/// Outer normal of the directed edge `from -> to` of a counter-clockwise
/// polygon: the edge direction rotated clockwise, made primitive.
fn outer_normal(from: (i64, i64), to: (i64, i64)) -> (i64, i64) {
    let d = (to.0 - from.0, to.1 - from.1);
    primitive((d.1, -d.0))
}

/// Exact Newton polygon of a non-zero polynomial.
pub fn newton_polygon(p: &BiPoly) -> Result<NewtonPolygon, AmoebaError> {
    if p.is_zero() {
        return Err(AmoebaError::ZeroPolynomial);
    }
    let support: Vec<(i64, i64)> = p
        .support()
        .into_iter()
        .map(|(i, k)| (i as i64, k as i64))
        .collect();
    let hull = convex_hull(&support);
    let edges = match hull.len() {
        0 | 1 => Vec::new(),
        2 => {
            let n = outer_normal(hull[0], hull[1]);
            vec![
                PolygonEdge {
                    from: hull[0],
                    to: hull[1],
                    normal: n,
                },
                PolygonEdge {
                    from: hull[1],
                    to: hull[0],
                    normal: (-n.0, -n.1),
                },
            ]
        }
        _ => hull
            .iter()
            .zip(hull.iter().cycle().skip(1))
            .map(|(a, b)| PolygonEdge {
                from: *a,
                to: *b,
                normal: outer_normal(*a, *b),
            })
            .collect(),
    };
    Ok(NewtonPolygon {
        support,
        hull,
        edges,
    })
}

/// Monotone-chain convex hull with strict turns (no collinear interior
/// points), counter-clockwise, starting at the lexicographic minimum.
/// Collinear input collapses to its two extreme points; a single distinct
/// point to itself.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // all points collinear: keep the two extremes
        return vec![pts[0], pts[pts.len() - 1]];
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{build_bipoly, BiPoly};
    use crate::rational::Scalar as G;

    fn two_site_poly() -> BiPoly {
        build_bipoly(vec![
            (2, 0, G::one()),
            (0, 1, G::from_imag_int(-2)),
            (0, 2, G::from_int(-1)),
        ])
        .unwrap()
    }

    #[test]
    fn two_site_triangle() {
        let np = newton_polygon(&two_site_poly()).unwrap();
        assert_eq!(np.hull, vec![(0, 1), (2, 0), (0, 2)]);
        assert!(!np.is_segment());
    }

    #[test]
    fn collapsed_support_is_segment() {
        // lambda^5 - 16 v
        let p = build_bipoly(vec![(5, 0, G::one()), (0, 1, G::from_int(-16))]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.hull, vec![(0, 1), (5, 0)]);
        assert!(np.is_segment());
        let normals = np.tentacle_directions();
        assert_eq!(normals.len(), 2);
        assert!(normals.contains(&(1, 5)) && normals.contains(&(-1, -5)));
    }

    #[test]
    fn monomial_is_point() {
        let p = BiPoly::monomial(3, 0, G::one());
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.hull, vec![(3, 0)]);
        assert!(np.tentacle_directions().is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            newton_polygon(&BiPoly::zero()),
            Err(AmoebaError::ZeroPolynomial)
        ));
    }

    #[test]
    fn unit_triangle_normals() {
        // 1 + v + lambda
        let p = build_bipoly(vec![(0, 0, G::one()), (0, 1, G::one()), (1, 0, G::one())]).unwrap();
        let np = newton_polygon(&p).unwrap();
        let mut normals = np.tentacle_directions();
        normals.sort_unstable();
        assert_eq!(normals, vec![(-1, 0), (0, -1), (1, 1)]);
        // in log space the set is the same up to the coordinate swap
        let mut dirs: Vec<(i64, i64)> = np
            .tentacle_directions()
            .into_iter()
            .map(amoeba_direction)
            .collect();
        dirs.sort_unstable();
        assert_eq!(dirs, vec![(-1, 0), (0, -1), (1, 1)]);
    }

    #[test]
    fn interior_lattice_points() {
        // two-site triangle has none
        let np = newton_polygon(&two_site_poly()).unwrap();
        assert!(np.interior_lattice_points().is_empty());
        // the triangle (0,0), (3,0), (0,3) has (1,1) among its interior
        let p = build_bipoly(vec![(0, 0, G::one()), (3, 0, G::one()), (0, 3, G::one())]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.interior_lattice_points(), vec![(1, 1)]);
    }

    #[test]
    fn segment_iff_collinear() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let n_pts = rng.gen_range(2..=8);
            let pts: Vec<(i64, i64)> = (0..n_pts)
                .map(|_| (rng.gen_range(0..5), rng.gen_range(0..5)))
                .collect();
            let hull = convex_hull(&pts);
            let mut uniq = pts.clone();
            uniq.sort_unstable();
            uniq.dedup();
            let collinear = uniq.len() >= 2
                && uniq
                    .iter()
                    .all(|&p| cross(uniq[0], *uniq.last().unwrap(), p) == 0);
            assert_eq!(hull.len() == 2, collinear, "pts {pts:?}");
        }
    }

    #[test]
    fn hull_matches_convex_combination_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        // a point is a hull vertex iff it is not a convex combination of
        // the others; over finitely many points that means not covered by
        // any point, segment or triangle of the others (exact integer
        // orientation tests)
        for _ in 0..60 {
            let n_pts = rng.gen_range(1..=12);
            let mut pts: Vec<(i64, i64)> = (0..n_pts)
                .map(|_| (rng.gen_range(-6..7), rng.gen_range(-6..7)))
                .collect();
            pts.sort_unstable();
            pts.dedup();
            let hull = convex_hull(&pts);
            for &p in &pts {
                let others: Vec<(i64, i64)> = pts.iter().copied().filter(|&q| q != p).collect();
                let expressible = in_convex_hull_of(&others, p);
                let is_vertex = hull.contains(&p);
                assert_eq!(is_vertex, !expressible, "p {p:?} pts {pts:?}");
            }
        }
    }

    /// Caratheodory oracle: p lies in the convex hull of `set` iff it lies
    /// on a point, segment, or triangle spanned by `set`.
    fn in_convex_hull_of(set: &[(i64, i64)], p: (i64, i64)) -> bool {
        if set.contains(&p) {
            return true;
        }
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if on_segment(set[i], set[j], p) {
                    return true;
                }
                for k in j + 1..set.len() {
                    if in_triangle(set[i], set[j], set[k], p) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
        cross(a, b, p) == 0
            && p.0 >= a.0.min(b.0)
            && p.0 <= a.0.max(b.0)
            && p.1 >= a.1.min(b.1)
            && p.1 <= a.1.max(b.1)
    }

    fn in_triangle(a: (i64, i64), b: (i64, i64), c: (i64, i64), p: (i64, i64)) -> bool {
        if cross(a, b, c) == 0 {
            // degenerate triangle: containment means lying on a side
            return on_segment(a, b, p) || on_segment(b, c, p) || on_segment(a, c, p);
        }
        let d1 = cross(a, b, p);
        let d2 = cross(b, c, p);
        let d3 = cross(c, a, p);
        let has_neg = d1 < 0 || d2 < 0 || d3 < 0;
        let has_pos = d1 > 0 || d2 > 0 || d3 > 0;
        !(has_neg && has_pos)
    }
}

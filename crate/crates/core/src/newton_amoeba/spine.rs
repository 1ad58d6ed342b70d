//! Piecewise-linear spine approximation.
//!
//! The exact spine (through the Ronkin function) is out of scope; what is
//! computed instead is the corner locus of the piecewise-linear function
//! `max over support { k*x + i*y + log|a_ik| }`, the standard cheap
//! stand-in. Its rays carry exactly the Newton-edge normals (in log-space
//! orientation), so the unbounded combinatorics agree with the amoeba even
//! where the bounded vertex placement differs from the true spine.

use num_integer::Integer;

use crate::newton_amoeba::polygon::{amoeba_direction, newton_polygon};
use crate::newton_amoeba::AmoebaError;
use crate::poly::BiPoly;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpineSegment {
    pub a: (f64, f64),
    pub b: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpineRay {
    pub origin: (f64, f64),
    /// Primitive integer direction of the unbounded end.
    pub direction: (i64, i64),
}

/// The corner locus as vertices, bounded segments and unbounded rays.
#[derive(Debug, Clone, PartialEq)]
pub struct PLCurve {
    pub vertices: Vec<(f64, f64)>,
    pub segments: Vec<SpineSegment>,
    pub rays: Vec<SpineRay>,
}

impl PLCurve {
    /// CSV rows `x1,y1,x2,y2,kind`; for rays `(x2, y2)` is the origin
    /// displaced by one primitive direction step.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x1,y1,x2,y2,kind\n");
        for s in &self.segments {
            out.push_str(&format!(
                "{:.12},{:.12},{:.12},{:.12},segment\n",
                s.a.0, s.a.1, s.b.0, s.b.1
            ));
        }
        for r in &self.rays {
            out.push_str(&format!(
                "{:.12},{:.12},{:.12},{:.12},ray\n",
                r.origin.0,
                r.origin.1,
                r.origin.0 + r.direction.0 as f64,
                r.origin.1 + r.direction.1 as f64
            ));
        }
        out
    }
}

const TIE_TOL: f64 = 1e-9;

/// Corner locus of `max(k*x + i*y + log|a_ik|)` for a non-zero genuinely
/// bivariate polynomial.
pub fn spine_approx(p: &BiPoly) -> Result<PLCurve, AmoebaError> {
    if p.is_zero() {
        return Err(AmoebaError::ZeroPolynomial);
    }
    if !p.depends_on_lambda() || !p.depends_on_nu() {
        return Err(AmoebaError::NotBivariate);
    }
    // lifted planes: gradient (k, i) in (x, y), intercept log|coefficient|
    let planes: Vec<((i64, i64), f64)> = p
        .terms()
        .map(|((i, k), c)| ((k as i64, i as i64), c.to_complex64().norm().ln()))
        .collect();

    let mut segments = Vec::new();
    let mut rays = Vec::new();
    let mut vertices: Vec<(f64, f64)> = Vec::new();

    for s in 0..planes.len() {
        for t in (s + 1)..planes.len() {
            let (gs, cs) = planes[s];
            let (gt, ct) = planes[t];
            let w = ((gs.0 - gt.0) as f64, (gs.1 - gt.1) as f64);
            if w == (0.0, 0.0) {
                continue;
            }
            // tie line: w . z = ct - cs, parametrized z = p0 + u * d
            let rhs = ct - cs;
            let wn2 = w.0 * w.0 + w.1 * w.1;
            let p0 = (w.0 * rhs / wn2, w.1 * rhs / wn2);
            let d_int = primitive((-(gs.1 - gt.1), gs.0 - gt.0));
            let d = (d_int.0 as f64, d_int.1 as f64);
            // dominance over every other plane restricts u to an interval
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let mut empty = false;
            for (u_idx, &((gu0, gu1), cu)) in planes.iter().enumerate() {
                if u_idx == s || u_idx == t {
                    continue;
                }
                let a = (gs.0 - gu0) as f64 * p0.0 + (gs.1 - gu1) as f64 * p0.1 + cs - cu;
                let b = (gs.0 - gu0) as f64 * d.0 + (gs.1 - gu1) as f64 * d.1;
                if b.abs() < 1e-12 {
                    if a < -TIE_TOL {
                        empty = true;
                        break;
                    }
                } else if b > 0.0 {
                    lo = lo.max(-a / b);
                } else {
                    hi = hi.min(-a / b);
                }
            }
            if empty || hi - lo <= TIE_TOL {
                continue;
            }
            let at = |u: f64| (p0.0 + u * d.0, p0.1 + u * d.1);
            match (lo.is_finite(), hi.is_finite()) {
                (false, false) => {
                    // full line: two antiparallel rays from p0
                    rays.push(SpineRay {
                        origin: p0,
                        direction: d_int,
                    });
                    rays.push(SpineRay {
                        origin: p0,
                        direction: (-d_int.0, -d_int.1),
                    });
                }
                (true, false) => {
                    let o = at(lo);
                    vertices.push(o);
                    rays.push(SpineRay {
                        origin: o,
                        direction: d_int,
                    });
                }
                (false, true) => {
                    let o = at(hi);
                    vertices.push(o);
                    rays.push(SpineRay {
                        origin: o,
                        direction: (-d_int.0, -d_int.1),
                    });
                }
                (true, true) => {
                    let a = at(lo);
                    let b = at(hi);
                    vertices.push(a);
                    vertices.push(b);
                    segments.push(SpineSegment { a, b });
                }
            }
        }
    }

    vertices.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vertices.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6);

    // sanity: the unbounded structure must be dual to the Newton polygon
    debug_assert!({
        let allowed: Vec<(i64, i64)> = newton_polygon(p)?
            .tentacle_directions()
            .into_iter()
            .map(amoeba_direction)
            .collect();
        rays.iter().all(|r| allowed.contains(&r.direction))
    });

    Ok(PLCurve {
        vertices,
        segments,
        rays,
    })
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.abs().gcd(&v.1.abs());
    if g == 0 {
        v
    } else {
        (v.0 / g, v.1 / g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::build_bipoly;
    use crate::rational::Scalar as G;

    #[test]
    fn tropical_line_has_three_rays_from_origin() {
        // 1 + v + lambda: all lifts zero
        let p = build_bipoly(vec![(0, 0, G::one()), (0, 1, G::one()), (1, 0, G::one())]).unwrap();
        let curve = spine_approx(&p).unwrap();
        assert_eq!(curve.vertices.len(), 1);
        let v = curve.vertices[0];
        assert!(v.0.abs() < 1e-9 && v.1.abs() < 1e-9);
        assert!(curve.segments.is_empty());
        let mut dirs: Vec<(i64, i64)> = curve.rays.iter().map(|r| r.direction).collect();
        dirs.sort_unstable();
        assert_eq!(dirs, vec![(-1, 0), (0, -1), (1, 1)]);
    }

    #[test]
    fn two_term_support_is_a_single_line() {
        // lambda^2 - v: corner locus of max(2y, x) is the line y = x/2
        let p = build_bipoly(vec![(2, 0, G::one()), (0, 1, G::from_int(-1))]).unwrap();
        let curve = spine_approx(&p).unwrap();
        assert!(curve.segments.is_empty());
        assert_eq!(curve.rays.len(), 2);
        let mut dirs: Vec<(i64, i64)> = curve.rays.iter().map(|r| r.direction).collect();
        dirs.sort_unstable();
        assert_eq!(dirs, vec![(-2, -1), (2, 1)]);
        for r in &curve.rays {
            // every ray origin sits on y = x/2
            assert!((r.origin.1 - r.origin.0 / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rays_are_dual_to_newton_edges() {
        // a fuller example: the two-site polynomial
        let p = build_bipoly(vec![
            (2, 0, G::one()),
            (0, 1, G::from_imag_int(-2)),
            (0, 2, G::from_int(-1)),
        ])
        .unwrap();
        let curve = spine_approx(&p).unwrap();
        let allowed: Vec<(i64, i64)> = newton_polygon(&p)
            .unwrap()
            .tentacle_directions()
            .into_iter()
            .map(amoeba_direction)
            .collect();
        assert!(!curve.rays.is_empty());
        for r in &curve.rays {
            assert!(
                allowed.contains(&r.direction),
                "ray {:?} not dual to any polygon edge {:?}",
                r.direction,
                allowed
            );
        }
    }

    #[test]
    fn univariate_rejected() {
        let p = build_bipoly(vec![(2, 0, G::one())]).unwrap();
        assert!(matches!(spine_approx(&p), Err(AmoebaError::NotBivariate)));
    }

    #[test]
    fn csv_shape() {
        let p = build_bipoly(vec![(2, 0, G::one()), (0, 1, G::from_int(-1))]).unwrap();
        let csv = spine_approx(&p).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "x1,y1,x2,y2,kind");
        assert!(csv.contains(",ray"));
    }
}

//! Plain-SVG rendering of a sampled amoeba with its spine and Newton
//! polygon inset. Presentation plumbing, not bit-exact output.

use crate::newton_amoeba::{AmoebaPointCloud, NewtonPolygon, PLCurve};

/// Render the cloud (dots), spine (lines and clipped rays) and, when
/// given, the Newton polygon in an inset at the top-right corner.
pub fn render_svg(
    cloud: &AmoebaPointCloud,
    spine: Option<&PLCurve>,
    polygon: Option<&NewtonPolygon>,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 640.0;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &cloud.points {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    if cloud.points.is_empty() {
        min_x = -1.0;
        max_x = 1.0;
        min_y = -1.0;
        max_y = 1.0;
    }
    let pad = 0.05 * ((max_x - min_x).max(max_y - min_y)).max(1.0);
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;
    let sx = W / (max_x - min_x);
    let sy = H / (max_y - min_y);
    let to_px = |x: f64, y: f64| ((x - min_x) * sx, H - (y - min_y) * sy);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    for &(x, y) in &cloud.points {
        let (px, py) = to_px(x, y);
        out.push_str(&format!(
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"1.2\" fill=\"#2a6f97\" fill-opacity=\"0.5\"/>\n"
        ));
    }
    if let Some(curve) = spine {
        let reach = (max_x - min_x) + (max_y - min_y);
        for s in &curve.segments {
            let (x1, y1) = to_px(s.a.0, s.a.1);
            let (x2, y2) = to_px(s.b.0, s.b.1);
            out.push_str(&format!(
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
                 stroke=\"#c1121f\" stroke-width=\"1.5\"/>\n"
            ));
        }
        for r in &curve.rays {
            let len =
                ((r.direction.0 * r.direction.0 + r.direction.1 * r.direction.1) as f64).sqrt();
            let tip = (
                r.origin.0 + r.direction.0 as f64 / len * reach,
                r.origin.1 + r.direction.1 as f64 / len * reach,
            );
            let (x1, y1) = to_px(r.origin.0, r.origin.1);
            let (x2, y2) = to_px(tip.0, tip.1);
            out.push_str(&format!(
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
                 stroke=\"#c1121f\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n"
            ));
        }
    }
    if let Some(np) = polygon {
        // inset box 150x150 at the top-right
        let (bx, by, bs) = (W - 165.0, 15.0, 150.0);
        out.push_str(&format!(
            "<rect x=\"{bx}\" y=\"{by}\" width=\"{bs}\" height=\"{bs}\" fill=\"#f7f7f7\" \
             stroke=\"#999\"/>\n"
        ));
        let max_c = np
            .support
            .iter()
            .map(|p| p.0.max(p.1))
            .max()
            .unwrap_or(1)
            .max(1) as f64;
        let scale = (bs - 20.0) / max_c;
        let to_inset = |p: (i64, i64)| {
            (
                bx + 10.0 + p.0 as f64 * scale,
                by + bs - 10.0 - p.1 as f64 * scale,
            )
        };
        if np.hull.len() >= 2 {
            let pts: Vec<String> = np
                .hull
                .iter()
                .map(|&p| {
                    let (x, y) = to_inset(p);
                    format!("{x:.1},{y:.1}")
                })
                .collect();
            out.push_str(&format!(
                "<polygon points=\"{}\" fill=\"#a7c957\" fill-opacity=\"0.4\" stroke=\"#386641\"/>\n",
                pts.join(" ")
            ));
        }
        for &p in &np.support {
            let (x, y) = to_inset(p);
            out.push_str(&format!(
                "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"#386641\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

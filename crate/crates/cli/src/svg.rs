//! Hand-rolled SVG polyline plots. These are regression artifacts, not
//! publication figures: fixed canvas, no text beyond axis labels, and no
//! timestamps, so output bytes depend only on the data.

use slipfree_core::identify::SegmentRecord;
use slipfree_core::planner::Path;
use slipfree_core::FrictionParams;

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 40.0;

struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Frame {
        let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in xs {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        for y in ys {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
        let span_x = (x_max - x_min).max(1e-9);
        let span_y = (y_max - y_min).max(1e-9);
        // One shared scale keeps geometry undistorted.
        let s = ((W - 2.0 * PAD) / span_x).min((H - 2.0 * PAD) / span_y);
        Frame {
            x0: x_min - (W / s - span_x) / 2.0,
            y0: y_min - (H / s - span_y) / 2.0,
            sx: s,
            sy: s,
        }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.sx
    }

    fn py(&self, y: f64) -> f64 {
        H - (y - self.y0) * self.sy
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

fn polyline(points: &[(f64, f64)], frame: &Frame, style: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{},{}", fmt(frame.px(x)), fmt(frame.py(y))))
        .collect();
    format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", coords.join(" "))
}

fn svg_open() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    )
}

/// Plan view of a path: the x-y curve in black, an orientation tick at each
/// waypoint in blue, start marker green, goal marker red.
pub fn path_svg(path: &Path) -> String {
    let tick = 0.04
        * path
            .waypoints
            .iter()
            .flat_map(|w| [w.x.abs(), w.y.abs()])
            .fold(0.01f64, f64::max);
    let xs = path
        .waypoints
        .iter()
        .flat_map(move |w| [w.x, w.x + tick * w.theta.cos()]);
    let ys = path
        .waypoints
        .iter()
        .flat_map(move |w| [w.y, w.y + tick * w.theta.sin()]);
    let frame = Frame::fit(xs.clone(), ys.clone());

    let mut out = svg_open();
    for w in &path.waypoints {
        let (x1, y1) = (frame.px(w.x), frame.py(w.y));
        let (x2, y2) = (
            frame.px(w.x + tick * w.theta.cos()),
            frame.py(w.y + tick * w.theta.sin()),
        );
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#4477cc\" stroke-width=\"1\"/>\n",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        ));
    }
    let pts: Vec<(f64, f64)> = path.waypoints.iter().map(|w| (w.x, w.y)).collect();
    out.push_str(&polyline(&pts, &frame, "stroke=\"black\" stroke-width=\"1.5\""));
    if let (Some(first), Some(last)) = (path.waypoints.first(), path.waypoints.last()) {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"green\"/>\n",
            fmt(frame.px(first.x)),
            fmt(frame.py(first.y))
        ));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"red\"/>\n",
            fmt(frame.px(last.x)),
            fmt(frame.py(last.y))
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Wrench scatter in the reduced (force, torque) quadrant, colored by label,
/// overlaid with the fitted surfaces at each normal-force level: top contact
/// blue, support contact orange.
pub fn boundary_svg(records: &[SegmentRecord], params: &FrictionParams) -> String {
    let mut levels: Vec<f64> = Vec::new();
    for r in records {
        if !levels.contains(&r.n_e) {
            levels.push(r.n_e);
        }
    }
    levels.sort_by(f64::total_cmp);

    let arc_points = |a_f: f64, a_t: f64| -> Vec<(f64, f64)> {
        (0..=64)
            .map(|k| {
                let t = k as f64 / 64.0 * std::f64::consts::FRAC_PI_2;
                (a_f * t.cos(), a_t * t.sin())
            })
            .collect()
    };

    let mut curves: Vec<(Vec<(f64, f64)>, &str)> = Vec::new();
    for &n_e in &levels {
        if let (Ok(top), Ok(sup)) = (params.top_surface(n_e), params.support_surface(n_e)) {
            curves.push((
                arc_points(top.a_f(), top.a_t()),
                "stroke=\"#4477cc\" stroke-width=\"1\"",
            ));
            curves.push((
                arc_points(sup.a_f(), sup.a_t()),
                "stroke=\"#ee9933\" stroke-width=\"1\"",
            ));
        }
    }

    let xs = records
        .iter()
        .map(|r| r.wrench.force_magnitude())
        .chain(curves.iter().flat_map(|(c, _)| c.iter().map(|p| p.0)))
        .chain([0.0]);
    let ys = records
        .iter()
        .map(|r| r.wrench.tau.abs())
        .chain(curves.iter().flat_map(|(c, _)| c.iter().map(|p| p.1)))
        .chain([0.0]);
    let frame = Frame::fit(xs, ys);

    let mut out = svg_open();
    for (curve, style) in &curves {
        out.push_str(&polyline(curve, &frame, style));
    }
    for r in records {
        let color = if r.resolved_label() { "#cc3333" } else { "#33aa33" };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"{color}\"/>\n",
            fmt(frame.px(r.wrench.force_magnitude())),
            fmt(frame.py(r.wrench.tau.abs()))
        ));
    }
    out.push_str("</svg>\n");
    out
}

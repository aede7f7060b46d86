//! Deterministic SVG figures: grids with filtering lines in the value
//! plane, persistence diagrams with optimal matchings, and candidate
//! clouds / estimator profiles over the parameter strip.

use std::fmt::Write as _;

use paretomatch::diagram::{bottleneck, PersistenceDiagram, PointKind};
use paretomatch::estimate::EstimateReport;
use paretomatch::geometry::LineParam;
use paretomatch::grid::{ContourKind, ExtendedParetoGrid};
use paretomatch::special::{CandidateKind, CandidatePoint};

const PANEL: f64 = 360.0;
const MARGIN: f64 = 45.0;

const GRID_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const DEGREE_COLORS: [&str; 4] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#8c564b"];

fn candidate_color(kind: CandidateKind) -> &'static str {
    match kind {
        CandidateKind::Special => "#999999",
        CandidateKind::Ultraspecial => "#9467bd",
        CandidateKind::CurveC => "#17becf",
        CandidateKind::EndpointFamily => "#bcbd22",
    }
}

#[derive(Default)]
pub struct Scene {
    pub grids: Vec<ExtendedParetoGrid>,
    pub diagram_files: Vec<Vec<PersistenceDiagram>>,
    pub candidates: Vec<CandidatePoint>,
    pub reports: Vec<EstimateReport>,
    pub lines: Vec<LineParam>,
}

/// Affine map from a data window to a panel viewport (y axis flipped).
struct Frame {
    x0: f64,
    y0: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = PANEL / (self.xmax - self.xmin);
        let sy = PANEL / (self.ymax - self.ymin);
        (
            self.x0 + (x - self.xmin) * sx,
            self.y0 + PANEL - (y - self.ymin) * sy,
        )
    }

    fn clamp(&self, x: f64, y: f64) -> (f64, f64) {
        (
            x.clamp(self.xmin, self.xmax),
            y.clamp(self.ymin, self.ymax),
        )
    }
}

fn f(x: f64) -> String {
    format!("{x:.3}")
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            body: String::new(),
        }
    }

    fn line(&mut self, p: (f64, f64), q: (f64, f64), color: &str, width: f64, dash: Option<&str>) {
        let dash = dash
            .map(|d| format!(" stroke-dasharray=\"{d}\""))
            .unwrap_or_default();
        let _ = writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"{dash}/>",
            f(p.0), f(p.1), f(q.0), f(q.1), f(width)
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, color: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>",
            f(c.0),
            f(c.1),
            f(r)
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        let mut attr = String::new();
        for &(x, y) in pts {
            let _ = write!(attr, "{},{} ", f(x), f(y));
        }
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>",
            attr.trim_end(),
            f(width)
        );
    }

    fn text(&mut self, p: (f64, f64), s: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{s}</text>",
            f(p.0),
            f(p.1)
        );
    }

    fn axes(&mut self, frame: &Frame, label: &str) {
        let o = frame.map(frame.xmin, frame.ymin);
        let x_end = frame.map(frame.xmax, frame.ymin);
        let y_end = frame.map(frame.xmin, frame.ymax);
        self.line(o, x_end, "#333333", 1.0, None);
        self.line(o, y_end, "#333333", 1.0, None);
        self.text((frame.x0, frame.y0 - 8.0), label);
    }
}

struct Bounds {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            xmin: f64::INFINITY,
            xmax: f64::NEG_INFINITY,
            ymin: f64::INFINITY,
            ymax: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, x: f64, y: f64) {
        self.xmin = self.xmin.min(x);
        self.xmax = self.xmax.max(x);
        self.ymin = self.ymin.min(y);
        self.ymax = self.ymax.max(y);
    }

    fn padded(mut self) -> Self {
        if !self.xmin.is_finite() {
            self.xmin = -1.0;
            self.xmax = 1.0;
            self.ymin = -1.0;
            self.ymax = 1.0;
        }
        let dx = (self.xmax - self.xmin).max(1e-6) * 0.08;
        let dy = (self.ymax - self.ymin).max(1e-6) * 0.08;
        self.xmin -= dx;
        self.xmax += dx;
        self.ymin -= dy;
        self.ymax += dy;
        self
    }
}

impl Scene {
    pub fn render(&self) -> String {
        let mut canvas = Canvas::new();
        let mut x_cursor = MARGIN;

        if !self.grids.is_empty() || !self.lines.is_empty() {
            self.render_value_plane(&mut canvas, x_cursor);
            x_cursor += PANEL + MARGIN;
        }
        if !self.diagram_files.is_empty() {
            self.render_diagrams(&mut canvas, x_cursor);
            x_cursor += PANEL + MARGIN;
        }
        if !self.candidates.is_empty() {
            self.render_candidates(&mut canvas, x_cursor);
            x_cursor += PANEL + MARGIN;
        }
        for report in &self.reports {
            render_profile(report, &mut canvas, x_cursor);
            x_cursor += PANEL + MARGIN;
        }
        if x_cursor <= MARGIN + 1.0 {
            // nothing drawn: emit an empty frame with axes
            let frame = Frame {
                x0: MARGIN,
                y0: MARGIN,
                xmin: -1.0,
                xmax: 1.0,
                ymin: -1.0,
                ymax: 1.0,
            };
            canvas.axes(&frame, "empty");
            x_cursor += PANEL + MARGIN;
        }

        let width = x_cursor;
        let height = PANEL + 2.0 * MARGIN;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            f(width), f(height), f(width), f(height), canvas.body
        )
    }

    fn render_value_plane(&self, canvas: &mut Canvas, x0: f64) {
        let mut bounds = Bounds::new();
        for grid in &self.grids {
            for c in &grid.contours {
                match &c.kind {
                    ContourKind::Proper { polyline } => {
                        for &(x, y) in polyline {
                            bounds.add(x, y);
                        }
                    }
                    ContourKind::ImproperVertical { x0, y0 }
                    | ContourKind::ImproperHorizontal { x0, y0 } => bounds.add(*x0, *y0),
                }
            }
        }
        for l in &self.lines {
            bounds.add(l.b(), -l.b());
        }
        let bounds = bounds.padded();
        let frame = Frame {
            x0,
            y0: MARGIN,
            xmin: bounds.xmin,
            xmax: bounds.xmax,
            ymin: bounds.ymin,
            ymax: bounds.ymax,
        };
        canvas.axes(&frame, "value plane");

        for (gi, grid) in self.grids.iter().enumerate() {
            let color = GRID_COLORS[gi % GRID_COLORS.len()];
            for c in &grid.contours {
                match &c.kind {
                    ContourKind::Proper { polyline } => {
                        let pts: Vec<(f64, f64)> =
                            polyline.iter().map(|&(x, y)| frame.map(x, y)).collect();
                        canvas.polyline(&pts, color, 1.6);
                    }
                    ContourKind::ImproperVertical { x0, y0 } => {
                        let (cx0, cy0) = frame.clamp(*x0, *y0);
                        canvas.line(
                            frame.map(cx0, cy0),
                            frame.map(cx0, frame.ymax),
                            color,
                            1.6,
                            None,
                        );
                    }
                    ContourKind::ImproperHorizontal { x0, y0 } => {
                        let (cx0, cy0) = frame.clamp(*x0, *y0);
                        canvas.line(
                            frame.map(cx0, cy0),
                            frame.map(frame.xmax, cy0),
                            color,
                            1.6,
                            None,
                        );
                    }
                }
            }
        }

        for l in &self.lines {
            let (a, b) = (l.a(), l.b());
            let (p, q) = if a == 0.0 {
                ((b, frame.ymin), (b, frame.ymax))
            } else if a == 1.0 {
                ((frame.xmin, -b), (frame.xmax, -b))
            } else {
                // clip the parametric line against the window by parameter
                let t_for_x = |x: f64| (x - b) / a;
                let t_for_y = |y: f64| (y + b) / (1.0 - a);
                let t0 = t_for_x(frame.xmin).max(t_for_y(frame.ymin));
                let t1 = t_for_x(frame.xmax).min(t_for_y(frame.ymax));
                (
                    (t0 * a + b, t0 * (1.0 - a) - b),
                    (t1 * a + b, t1 * (1.0 - a) - b),
                )
            };
            canvas.line(frame.map(p.0, p.1), frame.map(q.0, q.1), "#777777", 1.0, Some("5,3"));
        }
    }

    fn render_diagrams(&self, canvas: &mut Canvas, x0: f64) {
        let mut bounds = Bounds::new();
        for file in &self.diagram_files {
            for d in file {
                for p in d.points() {
                    if let Some(u) = p.birth() {
                        bounds.add(u, u);
                        if let PointKind::Proper { death, .. } = p.kind {
                            bounds.add(death, death);
                        }
                    }
                }
            }
        }
        let bounds = bounds.padded();
        let lo = bounds.xmin.min(bounds.ymin);
        let hi = bounds.xmax.max(bounds.ymax);
        let frame = Frame {
            x0,
            y0: MARGIN,
            xmin: lo,
            xmax: hi,
            ymin: lo,
            ymax: hi,
        };
        canvas.axes(&frame, "persistence diagrams");
        canvas.line(frame.map(lo, lo), frame.map(hi, hi), "#aaaaaa", 1.0, None);

        let place = |p: &PointKind| -> Option<(f64, f64)> {
            match *p {
                PointKind::Proper { birth, death } => Some((birth, death)),
                PointKind::Essential { birth } => Some((birth, hi)),
                PointKind::Delta => None,
            }
        };

        // matchings when exactly two diagram files are on display
        if let [file1, file2] = self.diagram_files.as_slice() {
            let degrees: Vec<usize> = file1
                .iter()
                .chain(file2.iter())
                .map(|d| d.degree())
                .collect();
            for k in degrees {
                let find = |file: &[PersistenceDiagram]| {
                    file.iter()
                        .find(|d| d.degree() == k)
                        .cloned()
                        .unwrap_or_else(|| PersistenceDiagram::empty(k))
                };
                let m = bottleneck(&find(file1), &find(file2));
                for (p, q) in &m.pairs {
                    let pp = place(&p.kind);
                    let qq = place(&q.kind);
                    let (pp, qq) = match (pp, qq) {
                        (Some(pp), Some(qq)) => (pp, qq),
                        (Some(pp), None) => (pp, ((pp.0 + pp.1) / 2.0, (pp.0 + pp.1) / 2.0)),
                        (None, Some(qq)) => (((qq.0 + qq.1) / 2.0, (qq.0 + qq.1) / 2.0), qq),
                        (None, None) => continue,
                    };
                    canvas.line(
                        frame.map(pp.0, pp.1),
                        frame.map(qq.0, qq.1),
                        "#555555",
                        0.8,
                        Some("2,2"),
                    );
                }
            }
        }

        for (fi, file) in self.diagram_files.iter().enumerate() {
            for d in file {
                let color = DEGREE_COLORS[d.degree() % DEGREE_COLORS.len()];
                for p in d.points() {
                    match p.kind {
                        PointKind::Proper { birth, death } => {
                            let c = frame.map(birth, death);
                            if fi == 0 {
                                canvas.circle(c, 3.0, color);
                            } else {
                                // second file drawn hollow-ish (smaller dot)
                                canvas.circle(c, 1.8, color);
                            }
                        }
                        PointKind::Essential { birth } => {
                            canvas.line(
                                frame.map(birth, birth),
                                frame.map(birth, hi),
                                color,
                                1.2,
                                None,
                            );
                        }
                        PointKind::Delta => {}
                    }
                }
            }
        }
    }

    fn render_candidates(&self, canvas: &mut Canvas, x0: f64) {
        let mut bounds = Bounds::new();
        bounds.add(0.0, 0.0);
        bounds.add(1.0, 0.0);
        for c in &self.candidates {
            bounds.add(c.param.a(), c.param.b());
        }
        let bounds = bounds.padded();
        let frame = Frame {
            x0,
            y0: MARGIN,
            xmin: bounds.xmin,
            xmax: bounds.xmax,
            ymin: bounds.ymin,
            ymax: bounds.ymax,
        };
        canvas.axes(&frame, "parameter strip (a, b)");
        for c in &self.candidates {
            canvas.circle(
                frame.map(c.param.a(), c.param.b()),
                2.0,
                candidate_color(c.kind),
            );
        }
    }
}

fn render_profile(report: &EstimateReport, canvas: &mut Canvas, x0: f64) {
    let mut bounds = Bounds::new();
    bounds.add(0.0, 0.0);
    bounds.add(1.0, 0.0);
    for lc in &report.per_line {
        bounds.add(lc.line.a(), lc.line.b());
    }
    let bounds = bounds.padded();
    let frame = Frame {
        x0,
        y0: MARGIN,
        xmin: bounds.xmin,
        xmax: bounds.xmax,
        ymin: bounds.ymin,
        ymax: bounds.ymax,
    };
    canvas.axes(&frame, &format!("{} profile", report.method.label()));
    let max_cost = report
        .per_line
        .iter()
        .filter_map(|lc| lc.cost.value())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    for lc in &report.per_line {
        let radius = match lc.cost.value() {
            Some(v) => 0.5 + 2.5 * v / max_cost,
            None => 4.0,
        };
        canvas.circle(frame.map(lc.line.a(), lc.line.b()), radius, "#1f77b4");
    }
    let r = frame.map(report.realizer.a(), report.realizer.b());
    canvas.circle(r, 5.0, "#d62728");
}

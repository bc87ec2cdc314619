//! Tiny scatter-plot SVG writer for the analysis outputs.
//!
//! Presentation only: nothing in here feeds back into any computed
//! number. Log axes get decade ticks; an optional family of slope -1
//! guide lines marks iso-product diagonals in log-log plots.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Connect the points with a line instead of drawing markers.
    pub line: bool,
}

#[derive(Debug, Clone)]
pub struct ScatterPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
    /// Constants c; each draws the guide x * y = c (slope -1 in
    /// log-log space).
    pub iso_products: Vec<f64>,
}

impl ScatterPlot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> ScatterPlot {
        ScatterPlot {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            log_x: false,
            log_y: false,
            series: Vec::new(),
            iso_products: Vec::new(),
        }
    }

    pub fn log_log(mut self) -> ScatterPlot {
        self.log_x = true;
        self.log_y = true;
        self
    }

    pub fn series(mut self, label: &str, points: Vec<(f64, f64)>) -> ScatterPlot {
        self.series.push(Series {
            label: label.to_string(),
            points,
            line: false,
        });
        self
    }

    pub fn line_series(mut self, label: &str, points: Vec<(f64, f64)>) -> ScatterPlot {
        self.series.push(Series {
            label: label.to_string(),
            points,
            line: true,
        });
        self
    }

    pub fn iso_products(mut self, products: Vec<f64>) -> ScatterPlot {
        self.iso_products = products;
        self
    }

    pub fn render(&self) -> String {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for s in &self.series {
            for &(x, y) in &s.points {
                xs.push(x);
                ys.push(y);
            }
        }
        if xs.is_empty() {
            xs.push(1.0);
            ys.push(1.0);
        }
        let x_axis = Axis::fit(&xs, self.log_x);
        let y_axis = Axis::fit(&ys, self.log_y);

        let px = |x: f64| MARGIN_L + x_axis.unit(x) * (WIDTH - MARGIN_L - MARGIN_R);
        let py = |y: f64| HEIGHT - MARGIN_B - y_axis.unit(y) * (HEIGHT - MARGIN_T - MARGIN_B);

        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        ));
        out.push_str(&format!(
            "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
            WIDTH / 2.0,
            escape(&self.title)
        ));

        // frame
        out.push_str(&format!(
            "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{}\" height=\"{}\" \
             fill=\"none\" stroke=\"#333\"/>\n",
            WIDTH - MARGIN_L - MARGIN_R,
            HEIGHT - MARGIN_T - MARGIN_B
        ));

        for t in x_axis.ticks() {
            let x = px(t);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{MARGIN_T}\" x2=\"{x:.1}\" y2=\"{}\" \
                 stroke=\"#ddd\"/>\n",
                HEIGHT - MARGIN_B
            ));
            out.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                HEIGHT - MARGIN_B + 16.0,
                tick_label(t)
            ));
        }
        for t in y_axis.ticks() {
            let y = py(t);
            out.push_str(&format!(
                "<line x1=\"{MARGIN_L}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" \
                 stroke=\"#ddd\"/>\n",
                WIDTH - MARGIN_R
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
                MARGIN_L - 6.0,
                y + 4.0,
                tick_label(t)
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        ));
        out.push_str(&format!(
            "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" \
             transform=\"rotate(-90 16 {})\">{}</text>\n",
            (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
            (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
            escape(&self.y_label)
        ));

        // iso-product diagonals, clipped to the frame by sampling
        if self.log_x && self.log_y {
            for &c in &self.iso_products {
                let mut pts = Vec::new();
                for i in 0..=64 {
                    let u = i as f64 / 64.0;
                    let x = x_axis.from_unit(u);
                    let y = c / x;
                    if y_axis.unit(y) >= 0.0 && y_axis.unit(y) <= 1.0 {
                        pts.push(format!("{:.1},{:.1}", px(x), py(y)));
                    }
                }
                if pts.len() >= 2 {
                    out.push_str(&format!(
                        "<polyline points=\"{}\" fill=\"none\" stroke=\"#bbb\" \
                         stroke-dasharray=\"5 4\"/>\n",
                        pts.join(" ")
                    ));
                }
            }
        }

        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            if s.line && s.points.len() >= 2 {
                let pts: Vec<String> = s
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y)))
                    .collect();
                out.push_str(&format!(
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" \
                     stroke-width=\"1.5\"/>\n",
                    pts.join(" ")
                ));
            }
            if !s.line {
                for &(x, y) in &s.points {
                    out.push_str(&format!(
                        "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"{color}\"/>\n",
                        px(x),
                        py(y)
                    ));
                }
            }
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{:.1}\" r=\"4\" fill=\"{color}\"/>\n",
                MARGIN_L + 12.0,
                MARGIN_T + 14.0 + 16.0 * i as f64
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{:.1}\">{}</text>\n",
                MARGIN_L + 22.0,
                MARGIN_T + 18.0 + 16.0 * i as f64,
                escape(&s.label)
            ));
        }

        out.push_str("</svg>\n");
        out
    }
}

/// One axis: either linear over [lo, hi] or logarithmic over decades.
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: &[f64], log: bool) -> Axis {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in values {
            if log && v <= 0.0 {
                continue;
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            lo = if log { 1.0 } else { 0.0 };
            hi = if log { 10.0 } else { 1.0 };
        }
        if log {
            // widen to whole decades
            lo = 10f64.powf(lo.log10().floor());
            hi = 10f64.powf(hi.log10().ceil());
            if lo == hi {
                hi *= 10.0;
            }
        } else {
            let pad = ((hi - lo) * 0.08).max(1e-9);
            lo -= pad;
            hi += pad;
        }
        Axis { lo, hi, log }
    }

    /// Maps a value into [0, 1] along the axis.
    fn unit(&self, v: f64) -> f64 {
        if self.log {
            (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10())
        } else {
            (v - self.lo) / (self.hi - self.lo)
        }
    }

    fn from_unit(&self, u: f64) -> f64 {
        if self.log {
            10f64.powf(self.lo.log10() + u * (self.hi.log10() - self.lo.log10()))
        } else {
            self.lo + u * (self.hi - self.lo)
        }
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let d0 = self.lo.log10().round() as i32;
            let d1 = self.hi.log10().round() as i32;
            (d0..=d1).map(|d| 10f64.powi(d)).collect()
        } else {
            (0..=5).map(|i| self.lo + (self.hi - self.lo) * i as f64 / 5.0).collect()
        }
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 10_000.0 || a < 0.01 {
        format!("{v:.0e}")
    } else if a >= 10.0 {
        format!("{v:.0}")
    } else if a >= 1.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Horizontal stacked bars of per-category fractions; each row should
/// sum to 1.
pub fn stacked_bars(
    title: &str,
    categories: &[String],
    segment_names: &[&str],
    rows: &[[f64; 4]],
) -> String {
    let bar_h = 26.0;
    let gap = 12.0;
    let top = 70.0;
    let left = 180.0;
    let bar_w = WIDTH - left - MARGIN_R;
    let height = top + categories.len() as f64 * (bar_h + gap) + 30.0;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" \
         viewBox=\"0 0 {WIDTH} {height}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!("<rect width=\"{WIDTH}\" height=\"{height}\" fill=\"white\"/>\n"));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    for (i, name) in segment_names.iter().enumerate() {
        let x = left + 120.0 * i as f64;
        out.push_str(&format!(
            "<rect x=\"{x}\" y=\"36\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
            PALETTE[i % PALETTE.len()]
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"47\">{}</text>\n",
            x + 16.0,
            escape(name)
        ));
    }
    for (r, (label, fracs)) in categories.iter().zip(rows).enumerate() {
        let y = top + r as f64 * (bar_h + gap);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
            left - 8.0,
            y + bar_h / 2.0 + 4.0,
            escape(label)
        ));
        let mut x = left;
        for (i, &f) in fracs.iter().enumerate() {
            let w = (f.max(0.0) * bar_w).min(bar_w);
            out.push_str(&format!(
                "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{w:.1}\" height=\"{bar_h}\" \
                 fill=\"{}\"/>\n",
                PALETTE[i % PALETTE.len()]
            ));
            x += w;
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter of already-log-transformed points with one- and two-sigma
/// principal-axis ellipses.
pub fn pca_scatter(
    title: &str,
    log_points: &[(f64, f64)],
    mean: [f64; 2],
    components: [[f64; 2]; 2],
    std_devs: [f64; 2],
) -> String {
    let mut plot = ScatterPlot::new(title, "log10 epochs", "log10 epoch throughput")
        .series("runs", log_points.to_vec());
    // sample the ellipses as polylines so they live in data coordinates
    for scale in [1.0, 2.0] {
        let mut pts = Vec::new();
        for i in 0..=72 {
            let a = i as f64 / 72.0 * std::f64::consts::TAU;
            let (c, s) = (a.cos(), a.sin());
            let x = mean[0]
                + scale * (c * std_devs[0] * components[0][0] + s * std_devs[1] * components[1][0]);
            let y = mean[1]
                + scale * (c * std_devs[0] * components[0][1] + s * std_devs[1] * components[1][1]);
            pts.push((x, y));
        }
        plot = plot.line_series(&format!("{scale:.0} sigma"), pts);
    }
    plot.render()
}

//! Relative-performance sweeps over the relative volatility, and their
//! CSV / SVG renderings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forecasts::{ForecastKind, relative_performance};
use crate::model::Horizon;

/// Default sweep grid for small and moderate relative volatilities, (0, 5].
pub const SWEEP_GRID_LOW: (f64, f64, f64) = (0.05, 5.0, 0.05);
/// Default sweep grid for large relative volatilities, (5, 20].
pub const SWEEP_GRID_HIGH: (f64, f64, f64) = (5.15, 20.0, 0.15);

/// One sweep row: the four relative performances at a given gamma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub gamma: f64,
    pub delta_best_measurable: f64,
    pub delta_best_linear: f64,
    pub delta_blue: f64,
    pub delta_trivial: f64,
}

/// Relative performances tabulated over a strictly increasing gamma grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub t_obs: f64,
    pub s_target: f64,
    pub rows: Vec<SweepRow>,
}

/// Output encodings for a sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFormat {
    Csv,
    Svg,
}

/// Tabulate the relative performances on the grid
/// `gamma_min, gamma_min + step, ..., <= gamma_max`.
pub fn gamma_sweep(h: &Horizon, gamma_min: f64, gamma_max: f64, step: f64) -> Result<SweepTable> {
    h.validate()?;
    if !gamma_min.is_finite() || gamma_min <= 0.0 {
        return Err(Error::Domain(format!("gamma_min = {gamma_min} must be > 0 and finite")));
    }
    if !gamma_max.is_finite() || gamma_max <= gamma_min {
        return Err(Error::Domain(format!(
            "gamma_max = {gamma_max} must exceed gamma_min = {gamma_min}"
        )));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Domain(format!("step = {step} must be > 0 and finite")));
    }
    // index-based grid; the 1e-9 slack absorbs accumulated rounding in the
    // row count without inventing rows
    let steps = ((gamma_max - gamma_min) / step + 1e-9).floor() as u64;
    let rows = (0..=steps)
        .map(|i| {
            let gamma = gamma_min + i as f64 * step;
            let gamma2 = gamma * gamma;
            Ok(SweepRow {
                gamma,
                delta_best_measurable: relative_performance(ForecastKind::BestMeasurable, h, gamma2)?,
                delta_best_linear: relative_performance(ForecastKind::BestLinear, h, gamma2)?,
                delta_blue: relative_performance(ForecastKind::Blue, h, gamma2)?,
                delta_trivial: relative_performance(ForecastKind::Trivial, h, gamma2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { t_obs: h.t_obs, s_target: h.s_target, rows })
}

/// The gamma at which the linear-unbiased and trivial curves intersect:
/// the critical relative volatility `sqrt(T)`.
pub fn crossing_point(h: &Horizon) -> f64 {
    h.t_obs.sqrt()
}

/// Encode a sweep table as CSV or as a self-contained SVG line chart.
pub fn emit_figure(table: &SweepTable, format: FigureFormat) -> Result<Vec<u8>> {
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(match format {
        FigureFormat::Csv => table.to_csv().into_bytes(),
        FigureFormat::Svg => table.to_svg().into_bytes(),
    })
}

impl SweepTable {
    pub const CSV_HEADER: &'static str = "gamma,best_measurable,best_linear,blue,trivial";

    /// File-name stem used by the CLI: `sweep_T<T>_S<S>`.
    pub fn file_stem(&self) -> String {
        format!("sweep_T{}_S{}", self.t_obs, self.s_target)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.gamma, r.delta_best_measurable, r.delta_best_linear, r.delta_blue, r.delta_trivial
            ));
        }
        out
    }

    /// Parse a CSV produced by [`SweepTable::to_csv`]. The horizon is not
    /// part of the encoding and must be supplied by the caller.
    pub fn from_csv(text: &str, t_obs: f64, s_target: f64) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header == Self::CSV_HEADER => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header `{}`, got {:?}",
                    Self::CSV_HEADER,
                    other
                )));
            }
        }
        let mut rows = Vec::new();
        for (idx, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::Parse(format!("row {}: expected 5 fields, got {}", idx + 1, fields.len())));
            }
            let mut values = [0.0f64; 5];
            for (v, field) in values.iter_mut().zip(&fields) {
                *v = field
                    .parse()
                    .map_err(|e| Error::Parse(format!("row {}: bad number `{field}`: {e}", idx + 1)))?;
            }
            rows.push(SweepRow {
                gamma: values[0],
                delta_best_measurable: values[1],
                delta_best_linear: values[2],
                delta_blue: values[3],
                delta_trivial: values[4],
            });
        }
        for w in rows.windows(2) {
            if !w[1].gamma.is_finite() || w[1].gamma <= w[0].gamma {
                return Err(Error::Parse("gamma column must be strictly increasing".into()));
            }
        }
        Ok(Self { t_obs, s_target, rows })
    }

    /// Self-contained SVG line chart of the four series (inline styling,
    /// no external assets).
    pub fn to_svg(&self) -> String {
        const WIDTH: f64 = 720.0;
        const HEIGHT: f64 = 480.0;
        const LEFT: f64 = 64.0;
        const RIGHT: f64 = 180.0;
        const TOP: f64 = 24.0;
        const BOTTOM: f64 = 64.0;
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;

        let g_min = self.rows.first().map_or(0.0, |r| r.gamma);
        let g_max = self.rows.last().map_or(1.0, |r| r.gamma);
        let span = if g_max > g_min { g_max - g_min } else { 1.0 };
        let x = |g: f64| LEFT + (g - g_min) / span * plot_w;
        let y = |delta: f64| TOP + (1.0 - delta) * plot_h;

        type Series = (&'static str, &'static str, fn(&SweepRow) -> f64);
        let series: [Series; 4] = [
            ("best measurable", "#000000", |r| r.delta_best_measurable),
            ("best linear", "#1f77b4", |r| r.delta_best_linear),
            ("best linear unbiased", "#2ca02c", |r| r.delta_blue),
            ("trivial", "#d62728", |r| r.delta_trivial),
        ];

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n"
        ));
        svg.push_str(&format!(
            "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
        ));

        // axes
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            TOP + plot_h,
            LEFT + plot_w,
            TOP + plot_h
        ));
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            TOP + plot_h
        ));

        // y ticks and grid at 0, 0.25, 0.5, 0.75, 1
        for i in 0..=4 {
            let v = i as f64 * 0.25;
            let yy = y(v);
            svg.push_str(&format!(
                "  <line x1=\"{LEFT}\" y1=\"{yy:.2}\" x2=\"{:.2}\" y2=\"{yy:.2}\" \
                 stroke=\"#dddddd\" stroke-dasharray=\"3,3\"/>\n",
                LEFT + plot_w
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{v}</text>\n",
                LEFT - 8.0,
                yy + 4.0
            ));
        }

        // x ticks at five evenly spaced gammas
        for i in 0..=4 {
            let g = g_min + span * i as f64 / 4.0;
            let xx = x(g);
            svg.push_str(&format!(
                "  <line x1=\"{xx:.2}\" y1=\"{:.2}\" x2=\"{xx:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
                TOP + plot_h,
                TOP + plot_h + 5.0
            ));
            svg.push_str(&format!(
                "  <text x=\"{xx:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{:.2}</text>\n",
                TOP + plot_h + 20.0,
                g
            ));
        }

        // axis labels
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-weight=\"bold\">Relative volatility</text>\n",
            LEFT + plot_w / 2.0,
            HEIGHT - 16.0
        ));
        svg.push_str(&format!(
            "  <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-weight=\"bold\" \
             transform=\"rotate(-90 18 {:.2})\">Relative performance</text>\n",
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0
        ));

        // series polylines
        for (_, color, value) in &series {
            let points: Vec<String> =
                self.rows.iter().map(|r| format!("{:.2},{:.2}", x(r.gamma), y(value(r)))).collect();
            svg.push_str(&format!(
                "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" points=\"{}\"/>\n",
                points.join(" ")
            ));
        }

        // legend
        let lx = LEFT + plot_w + 16.0;
        for (i, (label, color, _)) in series.iter().enumerate() {
            let ly = TOP + 24.0 + i as f64 * 22.0;
            svg.push_str(&format!(
                "  <line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
                 stroke=\"{color}\" stroke-width=\"2.5\"/>\n",
                lx + 24.0
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\">{label}</text>\n",
                lx + 30.0,
                ly + 4.0
            ));
        }

        svg.push_str("</svg>\n");
        svg
    }
}

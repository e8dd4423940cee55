use sos_core::numeric::to_f64;
use sos_core::predictor::ShapePrediction;
use sos_core::schensted::Partition;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

struct Canvas {
    scale: f64,
}

impl Canvas {
    fn pt(&self, x: f64, y: f64) -> String {
        format!("{:.2},{:.2}", MARGIN + x * self.scale, SIZE - MARGIN - y * self.scale)
    }

    fn polyline(&self, pts: &[(f64, f64)], stroke: &str, width: f64) -> String {
        let d: Vec<String> = pts.iter().map(|&(x, y)| self.pt(x, y)).collect();
        format!(
            "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" points=\"{}\"/>\n",
            d.join(" ")
        )
    }
}

/// Staircase of λ and the predicted boundary, both in units of √n.
pub fn plot_svg(lambda: &Partition, n: u64, pred: Option<&ShapePrediction>, overlay: Option<&[(f64, f64)]>) -> String {
    let r = (n as f64).sqrt();
    let stairs: Vec<(f64, f64)> = lambda.staircase().iter().map(|&(x, y)| (x as f64 / r, y as f64 / r)).collect();
    let mut extent = stairs.iter().fold(0.0f64, |m, p| m.max(p.0).max(p.1));
    let boundary = pred.map(|p| {
        let (x0, y0) = (&p.corner.0, &p.corner.1);
        vec![
            (0.0, to_f64(&p.first.intercept) / r),
            (to_f64(x0) / r, to_f64(y0) / r),
            (to_f64(&p.end) / r, 0.0),
        ]
    });
    if let Some(b) = &boundary {
        extent = b.iter().fold(extent, |m, p| m.max(p.0).max(p.1));
    }
    if overlay.is_some() {
        extent = extent.max(2.0);
    }
    let extent = if extent > 0.0 { extent * 1.05 } else { 1.0 };
    let c = Canvas { scale: (SIZE - 2.0 * MARGIN) / extent };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&c.polyline(&[(0.0, extent), (0.0, 0.0), (extent, 0.0)], "#888", 1.0));
    out.push_str(&format!(
        "<text x=\"{MARGIN}\" y=\"{:.0}\" font-size=\"12\" font-family=\"sans-serif\">n = {n}, axes in units of √n</text>\n",
        MARGIN / 2.0
    ));
    out.push_str(&c.polyline(&stairs, "black", 1.5));
    if let Some(b) = &boundary {
        out.push_str(&c.polyline(b, "#d62728", 1.5));
    }
    if let Some(curve) = overlay {
        out.push_str(&c.polyline(curve, "#1f77b4", 1.0));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_staircase_and_overlay() {
        let lambda: Partition = "3,3,1".parse().unwrap();
        let s = plot_svg(&lambda, 7, None, Some(&[(0.0, 2.0), (2.0, 0.0)]));
        assert!(s.starts_with("<svg"));
        assert_eq!(s.matches("<polyline").count(), 3);
        assert!(s.trim_end().ends_with("</svg>"));
    }
}

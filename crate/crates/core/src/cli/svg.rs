//! Minimal SVG line plots and sign maps. Best-effort companions to the CSVs.

use std::fmt::Write;

use crate::bifurcation::RegionScan;

const W: f64 = 640.0;
const H: f64 = 420.0;
const PAD: f64 = 50.0;
const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn bounds(series: &[Series]) -> ((f64, f64), (f64, f64)) {
    let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in series.iter().flat_map(|s| s.points.iter()) {
        xs = (xs.0.min(*x), xs.1.max(*x));
        ys = (ys.0.min(*y), ys.1.max(*y));
    }
    let widen = |(lo, hi): (f64, f64)| {
        if !lo.is_finite() {
            (0.0, 1.0)
        } else if hi - lo < 1e-12 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    (widen(xs), widen(ys))
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"11\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n",
        W / 2.0
    )
}

pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let ((x0, x1), (y0, y1)) = bounds(series);
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut out = header(title);
    let _ = writeln!(
        out,
        "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for (v, anchor, x, y) in [
        (x0, "start", PAD, H - PAD + 15.0),
        (x1, "end", W - PAD, H - PAD + 15.0),
        (y0, "end", PAD - 4.0, H - PAD),
        (y1, "end", PAD - 4.0, PAD + 10.0),
    ] {
        let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\">{v:.3}</text>");
    }
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>", W / 2.0, H - 12.0);
    let _ = writeln!(
        out,
        "<text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">{y_label}</text>",
        H / 2.0,
        H / 2.0
    );
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>",
            pts.join(" ")
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" fill=\"{colour}\">{}</text>",
            W - PAD + 4.0 - 100.0,
            PAD + 14.0 * (i as f64 + 1.0),
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Colour each lattice node by the signs of `det` and `tr`; Hopf cells on top.
pub fn sign_map(scan: &RegionScan, title: &str) -> String {
    let colour = |det: i8, tr: i8| match (det > 0, tr > 0) {
        (true, true) => "#fdd0a2",
        (true, false) => "#c7e9c0",
        (false, true) => "#fcbba1",
        (false, false) => "#dadaeb",
    };
    let cw = (W - 2.0 * PAD) / scan.nx as f64;
    let ch = (H - 2.0 * PAD) / scan.ny as f64;
    let mut out = header(title);
    for ix in 0..scan.nx {
        let mut iy = 0;
        while iy < scan.ny {
            let idx = ix * scan.ny + iy;
            let c = colour(scan.det_sign[idx], scan.tr_sign[idx]);
            let start = iy;
            while iy < scan.ny && colour(scan.det_sign[ix * scan.ny + iy], scan.tr_sign[ix * scan.ny + iy]) == c {
                iy += 1;
            }
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{c}\"/>",
                PAD + ix as f64 * cw,
                H - PAD - iy as f64 * ch,
                cw + 0.05,
                (iy - start) as f64 * ch + 0.05
            );
        }
    }
    for (cells, c) in [(&scan.hopf_cells, "#d62728"), (&scan.tb_cells, "#000000")] {
        for cell in cells.iter() {
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{c}\"/>",
                PAD + cell.ix as f64 * cw,
                H - PAD - (cell.iy + 1) as f64 * ch,
                cw,
                ch
            );
        }
    }
    let (x0, x1) = scan.x_range;
    let (y0, y1) = scan.y_range;
    let _ = writeln!(out, "<text x=\"{PAD}\" y=\"{}\">x in [{x0}, {x1}], y in [{y0}, {y1}]</text>", H - 15.0);
    out.push_str("</svg>\n");
    out
}

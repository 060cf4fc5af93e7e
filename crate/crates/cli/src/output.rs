//! Orbit CSV, SVG plots and atomic file output.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use horoflow::OrbitSegment;
use tempfile::NamedTempFile;

use crate::CliError;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Orbit as CSV: `#` legend lines, a `time,c1,..` header, one row per sample.
pub fn orbit_csv(seg: &OrbitSegment) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    writeln!(buf, "# model = {}", seg.model).map_err(io_err)?;
    writeln!(buf, "# flow = {}", seg.flow).map_err(io_err)?;
    writeln!(buf, "# steps = {}", seg.steps).map_err(io_err)?;
    writeln!(buf, "# seed = {}", seg.seed).map_err(io_err)?;
    for (k, spec) in seg.legend.iter().enumerate() {
        let period = spec.period.map(|p| format!(" (period {p})")).unwrap_or_default();
        writeln!(buf, "# c{} = {}: {}{}", k + 1, spec.name, spec.description, period).map_err(io_err)?;
    }
    let mut w = csv::Writer::from_writer(buf);
    let header: Vec<String> = std::iter::once("time".to_string())
        .chain((1..=seg.legend.len()).map(|k| format!("c{k}")))
        .collect();
    w.write_record(&header).map_err(csv_err)?;
    for (t, q) in &seg.samples {
        let row: Vec<String> = std::iter::once(num(*t)).chain(q.coords.iter().map(|c| num(*c))).collect();
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Failure(e.to_string()))
}

fn io_err(e: io::Error) -> CliError {
    CliError::Failure(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Failure(format!("csv: {e}"))
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        None => io::stdout().lock().write_all(bytes).map_err(io_err),
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
            tmp.write_all(bytes).map_err(io_err)?;
            tmp.persist(p).map_err(|e| io_err(e.error))?;
            Ok(())
        }
    }
}

/// Columns `x` and `y` (by header name) of an orbit CSV.
pub fn read_columns(text: &str, x: &str, y: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let bad = |m: String| CliError::Usage(format!("malformed CSV: {m}"));
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("no column `{name}` (have {})", headers.iter().collect::<Vec<_>>().join(","))))
    };
    let (ix, iy) = (col(x)?, col(y)?);
    let mut points = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let get = |i: usize| -> Result<f64, CliError> {
            rec.get(i)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(format!("row {}: column {} is not a number", n + 1, i + 1)))
        };
        points.push((get(ix)?, get(iy)?));
    }
    Ok(points)
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
/// Marker budget; longer orbits are thinned by a fixed stride.
const MAX_MARKERS: usize = 20_000;

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Scatter plot of `points` with axis labels.
pub fn scatter_svg(points: &[(f64, f64)], x_label: &str, y_label: &str) -> String {
    let (x0, x1) = range(points.iter().map(|p| p.0));
    let (y0, y1) = range(points.iter().map(|p| p.1));
    let span = SIZE - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * span;
    let sy = |y: f64| SIZE - MARGIN - (y - y0) / (y1 - y0) * span;
    let stride = points.len().div_ceil(MAX_MARKERS).max(1);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="14">{x_label}</text>"#,
        SIZE / 2.0,
        SIZE - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.1}" text-anchor="middle" font-size="14" transform="rotate(-90 14 {:.1})">{y_label}</text>"#,
        SIZE / 2.0,
        SIZE / 2.0
    );
    for (v, x, y, anchor) in [
        (x0, MARGIN, SIZE - MARGIN + 16.0, "start"),
        (x1, SIZE - MARGIN, SIZE - MARGIN + 16.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-size="10">{v:.4}</text>"#);
    }
    for (v, y) in [(y0, SIZE - MARGIN), (y1, MARGIN + 8.0)] {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{y:.1}" text-anchor="end" font-size="10">{v:.4}</text>"#, MARGIN - 4.0);
    }
    let _ = writeln!(s, r#"<g fill="steelblue">"#);
    for (x, y) in points.iter().step_by(stride) {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.2"/>"#, sx(*x), sy(*y));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_one_marker() {
        let svg = scatter_svg(&[(0.3, 0.4)], "c1", "c2");
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(">c1</text>") && svg.contains(">c2</text>"));
    }

    #[test]
    fn columns_by_name() {
        let text = "# legend\ntime,c1,c2\n0,1,2\n1,3,4\n";
        assert_eq!(read_columns(text, "c1", "c2").unwrap(), vec![(1.0, 2.0), (3.0, 4.0)]);
        assert!(read_columns(text, "c1", "c9").is_err());
        assert!(read_columns("time,c1\n0,x\n", "time", "c1").is_err());
    }
}

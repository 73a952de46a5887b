//! CSV, JSON and SVG output for scan results.

mod csv_out;
mod decimal;
mod svg;

use crate::error::{Error, Result};
use crate::pipeline::ScanReport;

pub use csv_out::{csv_header, ray_to_csv, to_csv, DIGITS};
pub use decimal::{decimal, fraction};
pub use svg::{render_svg, Category, Marker, MarkerShape, PlotStyle};

/// Pretty-printed JSON with a trailing newline. Rationals are stored as
/// numerator/denominator strings, so nothing is rounded.
pub fn to_json(scan: &ScanReport) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(scan).expect("scan reports always serialize");
    out.push(b'\n');
    out
}

pub fn from_json(bytes: &[u8]) -> Result<ScanReport> {
    let r: ScanReport = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    if r.schema_version != crate::pipeline::SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema version {} (expected {})",
            r.schema_version,
            crate::pipeline::SCHEMA_VERSION
        )));
    }
    Ok(r)
}

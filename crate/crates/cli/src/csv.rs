//! CSV emission for time series.

use std::fmt::Write as _;
use std::path::Path;

use barbell_walk::{Series, SUBSPACE_DIM};

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "t,p_a,p_b,p_c,p_d,p_e,p_clique";
pub const PER_VERTEX_HEADER: &str = "t,p_a,p_b_vertex,p_c,p_d,p_e_vertex";
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e12)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can push the mantissa to the next decade
    let rounded: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) {
        exp + 1
    } else {
        exp
    };
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        let e: i32 = e.parse().expect("exponent");
        format!(
            "{}e{}{:02}",
            trim(mantissa.to_string()),
            if e < 0 { '-' } else { '+' },
            e.abs()
        )
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.into()
        }
    } else {
        s
    }
}

/// Aggregate per-type probabilities, one row per sample.
pub fn series_csv(series: &Series) -> String {
    let mut out = String::with_capacity(series.len() * 120);
    out.push_str(HEADER);
    out.push('\n');
    for i in 0..series.len() {
        out.push_str(&format_sig(series.times[i]));
        for k in 0..SUBSPACE_DIM {
            let _ = write!(out, ",{}", format_sig(series.aggregate[k][i]));
        }
        let _ = writeln!(out, ",{}", format_sig(series.clique[i]));
    }
    out
}

/// Single-vertex probabilities of each type.
pub fn per_vertex_csv(series: &Series) -> String {
    let mut out = String::new();
    out.push_str(PER_VERTEX_HEADER);
    out.push('\n');
    for i in 0..series.len() {
        out.push_str(&format_sig(series.times[i]));
        for k in 0..SUBSPACE_DIM {
            let _ = write!(out, ",{}", format_sig(series.per_vertex[k][i]));
        }
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn emit_csv(series: &Series, path: &Path) -> CliResult<()> {
    if series.is_empty() {
        return Err(CliError::Usage("cannot write an empty series".into()));
    }
    write_file(path, &series_csv(series))
}

use std::io::Write;

use dwork_core::Cx;

use crate::error::CliError;

pub fn emit(text: &str) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        // A closed pipe (`dwork ... | head`) is not an error worth reporting.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

pub fn json(value: &impl serde::Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<R, I>(header: &[String], rows: I) -> Result<String, CliError>
where
    R: IntoIterator<Item = String>,
    I: IntoIterator<Item = R>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Fixed-precision float text so that output is stable across runs.
pub fn num(x: f64) -> String {
    format!("{x:.6e}")
}

/// Six decimals, with values that would print as `-0.000000` shown as zero.
pub fn cx(z: Cx) -> String {
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{:.6}{:+.6}i", clean(z.re), clean(z.im))
}

pub fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

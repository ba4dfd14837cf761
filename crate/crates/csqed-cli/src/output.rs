//! Deterministic CSV output: scientific notation with 10 significant
//! digits, LF line endings, mandatory header row.

use std::io::Write;
use std::path::Path;

use csqed::{concurrence, Trajectory};

use crate::CliError;

/// `x` in scientific notation with 10 significant digits.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.9e}")
}

pub const TRAJECTORY_HEADER: &str = "gamma_tau,p11,p22,p03,p30,p33,concurrence";

/// Render a trajectory as CSV rows (one per sample).
pub fn trajectory_csv(traj: &Trajectory) -> Result<String, CliError> {
    let mut out = String::with_capacity(traj.len() * 96);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for p in traj {
        let e = concurrence(&p.state).map_err(|err| CliError::Physicality(err.to_string()))?;
        let s = &p.state;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sci(p.gamma_tau),
            fmt_sci(s.p11),
            fmt_sci(s.p22),
            fmt_sci(s.p03),
            fmt_sci(s.p30),
            fmt_sci(s.p33),
            fmt_sci(e),
        ));
    }
    Ok(out)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

/// Write to the file when given, otherwise to stdout.
pub fn write_file_or_stdout(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(fmt_sci(0.5), "5.000000000e-1");
        assert_eq!(fmt_sci(0.0), "0.000000000e0");
        assert_eq!(fmt_sci(-1.0 / 3.0), "-3.333333333e-1");
        assert_eq!(fmt_sci(12345.6789), "1.234567890e4");
    }
}

//! Deterministic CSV and JSON emission.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use sgbc::gain::Achievable;
use sgbc::sim::Trace;

use crate::error::CliError;

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_trace<W: Write + ?Sized>(w: &mut W, comments: &[String], tr: &Trace) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    let mut header = String::from("t,norm_u,U");
    for i in 1..=tr.n_states() {
        header.push_str(&format!(",xi_{i}"));
    }
    writeln!(w, "{header}")?;
    for k in 0..tr.len() {
        let mut line = format!(
            "{},{},{}",
            num(tr.times[k]),
            num(tr.norms[k]),
            num(tr.controls[k])
        );
        for x in &tr.xi[k] {
            line.push(',');
            line.push_str(&num(*x));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn write_sweep<W: Write + ?Sized>(w: &mut W, comments: &[String], rows: &[Achievable], label: &str) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "r,{label},omega_star,lambda_star")?;
    for a in rows {
        writeln!(
            w,
            "{},{},{},{}",
            num(a.r),
            num(a.value),
            num(a.omega_star),
            num(a.lambda_star)
        )?;
    }
    Ok(())
}

/// Runs `f` against the output file, or stdout when `path` is `None`.
pub fn with_output<F>(path: Option<&Path>, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let io_err = |p: Option<&Path>, source| CliError::Io {
        path: p.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source,
    };
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_err(Some(p), e))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| io_err(Some(p), e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w).and_then(|_| w.flush()).map_err(|e| io_err(None, e))
        }
    }
}

/// A value rounded for the human-readable summary.
pub fn display(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    format!("{:.*e}", digits - 1, x)
}

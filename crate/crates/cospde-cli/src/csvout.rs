//! Minimal CSV writer: comma-separated, `.` decimal point, LF endings,
//! floats at 17 significant digits so a round trip is exact. Informational
//! lines (timestamp, timings) are `#`-prefixed comments and suppressed by
//! `--no-timestamp`, leaving the data bytes reproducible run-to-run.

use std::io::Write;
use std::path::Path;

pub struct CsvFile {
    buf: String,
    info_enabled: bool,
}

impl CsvFile {
    pub fn new(columns: &[&str], info_enabled: bool) -> Self {
        let mut file = CsvFile {
            buf: String::new(),
            info_enabled,
        };
        if info_enabled {
            let stamp = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            file.buf
                .push_str(&format!("# generated_unix_epoch,{stamp}\n"));
        }
        file.buf.push_str(&columns.join(","));
        file.buf.push('\n');
        file
    }

    /// Informational comment line; dropped when info lines are suppressed.
    pub fn info(&mut self, text: &str) {
        if self.info_enabled {
            self.buf.push_str("# ");
            self.buf.push_str(text);
            self.buf.push('\n');
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        let mut first = true;
        for v in values {
            if !first {
                self.buf.push(',');
            }
            first = false;
            self.buf.push_str(&format_float(*v));
        }
        self.buf.push('\n');
    }

    pub fn write_to(&self, dir: &Path, name: &str) -> std::io::Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path)?;
        f.write_all(self.buf.as_bytes())?;
        Ok(path)
    }
}

/// 17 significant digits: lossless f64 round trip.
pub fn format_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        // integers (sweep indices, counts) print plainly
        format!("{v}")
    } else {
        format!("{v:.16e}")
    }
}

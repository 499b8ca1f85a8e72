use std::io::Write;
use std::path::Path;

/// Minimal CSV writer: plain `{}` float formatting round-trips f64 and is
/// byte-stable across runs.
pub struct CsvWriter {
    file: std::io::BufWriter<std::fs::File>,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &[&str]) -> std::io::Result<Self> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(file, "{}", header.join(","))?;
        Ok(CsvWriter { file })
    }

    pub fn row(&mut self, values: &[f64]) -> std::io::Result<()> {
        let mut first = true;
        for v in values {
            if !first {
                write!(self.file, ",")?;
            }
            write!(self.file, "{v}")?;
            first = false;
        }
        writeln!(self.file)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.file.flush()
    }
}

/// Write a 2D grid as CSV rows.
pub fn write_grid(path: &Path, data: &[f64], cols: usize) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for row in data.chunks(cols) {
        let mut first = true;
        for v in row {
            if !first {
                write!(file, ",")?;
            }
            write!(file, "{v}")?;
            first = false;
        }
        writeln!(file)?;
    }
    file.flush()
}

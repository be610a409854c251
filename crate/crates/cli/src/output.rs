//! CSV and JSON emission. Every CSV starts with a `#` comment line carrying
//! the parameters, followed by a header row; floats use 17 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use nmkdv::{Error, Result};
use serde::Serialize;

/// Where output goes: a file, or stdout when no path was given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Round-trip safe float text.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvTable<W: Write> {
    inner: csv::Writer<W>,
    width: usize,
}

impl<W: Write> CsvTable<W> {
    pub fn new(mut out: W, comment: &str, header: &[&str]) -> Result<Self> {
        writeln!(out, "# {comment}")?;
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(header)?;
        Ok(CsvTable {
            inner,
            width: header.len(),
        })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let rec = csv::ByteRecord::from_iter(fields);
        if rec.len() != self.width {
            return Err(Error::InvalidInput(format!(
                "row has {} fields, header has {}",
                rec.len(),
                self.width
            )));
        }
        self.inner.write_byte_record(&rec)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn write_json<T: Serialize>(mut out: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

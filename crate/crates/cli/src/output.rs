//! Output plumbing: 17-significant-digit number formatting (guaranteeing
//! f64 round-trip), JSON assembly for flat records, and the output sink.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

/// A float printed with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    if !x.is_finite() {
        // not valid JSON numbers; quoted for the rare diagnostic record
        return format!("\"{x}\"");
    }
    format!("{x:.16e}")
}

/// A JSON array of floats.
pub fn json_vec(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| sig17(x)).collect();
    format!("[{}]", items.join(","))
}

/// A flat JSON object from (key, already-rendered-value) pairs.
pub fn json_object(fields: &[(&str, String)]) -> String {
    let items: Vec<String> = fields.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
    format!("{{{}}}", items.join(","))
}

/// Quotes a string as a JSON value.
pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Stdout or a file, chosen by `--output`.
pub struct Sink {
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: &Option<PathBuf>) -> io::Result<Sink> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout()),
        };
        Ok(Sink { inner })
    }

    pub fn line(&mut self, s: &str) -> io::Result<()> {
        self.inner.write_all(s.as_bytes())?;
        self.inner.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// One value of a tabular record.
pub enum Cell {
    Num(f64),
    Str(&'static str),
}

/// CSV header row; a no-op for JSONL.
pub fn table_header(sink: &mut Sink, format: Format, cols: &[&str]) -> io::Result<()> {
    match format {
        Format::Csv => sink.line(&cols.join(",")),
        Format::Jsonl => Ok(()),
    }
}

/// One table row in the chosen format.
pub fn table_row(sink: &mut Sink, format: Format, cols: &[&str], cells: &[Cell]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let rendered: Vec<String> = cells
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => sig17(*x),
                    Cell::Str(s) => (*s).to_string(),
                })
                .collect();
            sink.line(&rendered.join(","))
        }
        Format::Jsonl => {
            let fields: Vec<(&str, String)> = cols
                .iter()
                .zip(cells)
                .map(|(k, c)| {
                    let v = match c {
                        Cell::Num(x) => sig17(*x),
                        Cell::Str(s) => json_str(s),
                    };
                    (*k, v)
                })
                .collect();
            sink.line(&json_object(&fields))
        }
    }
}

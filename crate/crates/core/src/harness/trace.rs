//! Per-iteration trace rows and their CSV form.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::optimizers::Phase;

pub const TRACE_HEADER: [&str; 9] = [
    "epoch",
    "global_iteration",
    "lr",
    "loss",
    "mean_loss",
    "phase",
    "beta_applied",
    "test_error",
    "wall_ms",
];

/// One optimizer iteration.
///
/// `loss`, `mean_loss` and `phase` describe this iteration's loss; `phase`
/// chooses the β of the *next* row, while `beta_applied` is the β used by this
/// row's update.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub epoch: u64,
    pub global_iteration: u64,
    pub lr: f64,
    pub loss: f64,
    pub mean_loss: f64,
    pub phase: Phase,
    pub beta_applied: f64,
    /// Held-out error, present on the last iteration of each epoch for
    /// dataset problems.
    pub test_error: Option<f64>,
    pub wall_ms: u64,
}

/// 17 significant digits, enough to reproduce any f64 exactly.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trace<W: Write>(records: &[TraceRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let to_err = |e: csv::Error| Error::data(None, e.to_string());
    w.write_record(TRACE_HEADER).map_err(to_err)?;
    for r in records {
        w.write_record([
            r.epoch.to_string(),
            r.global_iteration.to_string(),
            fmt_real(r.lr),
            fmt_real(r.loss),
            fmt_real(r.mean_loss),
            r.phase.to_string(),
            fmt_real(r.beta_applied),
            r.test_error.map(fmt_real).unwrap_or_default(),
            r.wall_ms.to_string(),
        ])
        .map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::data(None, e.to_string()))
}

/// Write a trace file, creating parent directories as needed.
pub fn write_trace_csv(records: &[TraceRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut buf = std::io::BufWriter::new(file);
    write_trace(records, &mut buf)?;
    buf.flush().map_err(|e| Error::io(path, e))
}

pub fn read_trace<R: Read>(reader: R) -> Result<Vec<TraceRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::data(Some(1), e.to_string()))?
        .clone();
    if header.iter().ne(TRACE_HEADER) {
        return Err(Error::data(Some(1), "not a trace file: unexpected header"));
    }
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record
            .map_err(|e| Error::data(e.position().map(|p| p.line() as usize), e.to_string()))?;
        let line = record.position().map(|p| p.line() as usize);
        let cell = |i: usize| &record[i];
        let real = |i: usize| -> Result<f64> {
            cell(i).parse().map_err(|_| {
                Error::data(
                    line,
                    format!("{}: `{}` is not a number", TRACE_HEADER[i], cell(i)),
                )
            })
        };
        let int = |i: usize| -> Result<u64> {
            cell(i).parse().map_err(|_| {
                Error::data(
                    line,
                    format!("{}: `{}` is not an integer", TRACE_HEADER[i], cell(i)),
                )
            })
        };
        out.push(TraceRecord {
            epoch: int(0)?,
            global_iteration: int(1)?,
            lr: real(2)?,
            loss: real(3)?,
            mean_loss: real(4)?,
            phase: cell(5)
                .parse()
                .map_err(|e: Error| Error::data(line, e.to_string()))?,
            beta_applied: real(6)?,
            test_error: if cell(7).is_empty() {
                None
            } else {
                Some(real(7)?)
            },
            wall_ms: int(8)?,
        });
    }
    Ok(out)
}

pub fn read_trace_csv(path: impl AsRef<Path>) -> Result<Vec<TraceRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_trace(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(i: u64) -> TraceRecord {
        TraceRecord {
            epoch: i / 10,
            global_iteration: i,
            lr: 0.1,
            loss: 1.0 / (i as f64 + 3.0),
            mean_loss: 0.25,
            phase: if i.is_multiple_of(2) {
                Phase::Sparse
            } else {
                Phase::NonSparse
            },
            beta_applied: 0.95,
            test_error: (i % 10 == 9).then_some(0.125),
            wall_ms: i * 2,
        }
    }

    #[test]
    fn empty_trace_is_header_only() {
        let mut buf = Vec::new();
        write_trace(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "epoch,global_iteration,lr,loss,mean_loss,phase,beta_applied,test_error,wall_ms\n"
        );
    }

    #[test]
    fn one_record_two_lines() {
        let mut buf = Vec::new();
        write_trace(&[record(0)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        let row = text.lines().nth(1).unwrap();
        assert_eq!(
            row,
            "0,0,1.0000000000000001e-1,3.3333333333333331e-1,2.5000000000000000e-1,Sparse,9.4999999999999996e-1,,0"
        );
    }

    #[test]
    fn bad_header_rejected() {
        assert!(read_trace("a,b,c\n1,2,3\n".as_bytes()).is_err());
    }

    #[test]
    fn bad_cell_reports_line() {
        let mut buf = Vec::new();
        write_trace(&[record(0), record(1)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("Sparse,", "Dense,");
        match read_trace(text.as_bytes()) {
            Err(Error::Data { line: Some(2), .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}

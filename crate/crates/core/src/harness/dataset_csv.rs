//! Dataset files: one sample per line, feature columns followed by an
//! integer label, no header.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tinynet::Dataset;

use super::trace::fmt_real;

/// Read a dataset and split it 80/20 per class with `seed`.
///
/// With `classes = None` the class count is `max label + 1`.
pub fn load_csv_dataset(
    path: impl AsRef<Path>,
    classes: Option<usize>,
    seed: u64,
) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_dataset(file, classes, seed)
}

pub fn read_csv_dataset<R: Read>(reader: R, classes: Option<usize>, seed: u64) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut width: Option<usize> = None;
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize);
            Error::data(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize);
        if record.len() < 2 {
            return Err(Error::data(line, "need at least one feature and a label"));
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(Error::data(
                    line,
                    format!("expected {w} columns, found {}", record.len()),
                ))
            }
            Some(_) => {}
        }
        let label_col = record.len() - 1;
        for col in 0..label_col {
            let cell = &record[col];
            let v: f64 = cell.parse().map_err(|_| {
                Error::data(
                    line,
                    format!("column {}: `{cell}` is not a number", col + 1),
                )
            })?;
            if !v.is_finite() {
                return Err(Error::data(
                    line,
                    format!("column {}: non-finite value", col + 1),
                ));
            }
            features.push(v);
        }
        let label_cell = &record[label_col];
        let label: usize = label_cell
            .parse()
            .map_err(|_| Error::data(line, format!("label `{label_cell}` is not a class index")))?;
        if let Some(k) = classes {
            if label >= k {
                return Err(Error::data(
                    line,
                    format!("label {label} is out of range for {k} classes"),
                ));
            }
        }
        labels.push(label);
    }
    let Some(width) = width else {
        return Err(Error::data(None, "dataset file has no rows"));
    };
    let classes = classes.unwrap_or_else(|| labels.iter().max().map_or(0, |m| m + 1));
    Dataset::with_stratified_split(features, width - 1, labels, classes, seed)
}

/// Write features with 17 significant digits so a reload is exact.
pub fn write_csv_dataset<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for i in 0..dataset.len() {
        let mut row: Vec<String> = dataset.row(i).iter().map(|v| fmt_real(*v)).collect();
        row.push(dataset.labels()[i].to_string());
        w.write_record(&row)
            .map_err(|e| Error::data(Some(i + 1), e.to_string()))?;
    }
    w.flush().map_err(|e| Error::data(None, e.to_string()))
}

pub fn save_csv_dataset(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_dataset(dataset, file)
}

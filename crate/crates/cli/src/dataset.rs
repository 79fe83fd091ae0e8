//! CSV datasets of interval-valued variables.
//!
//! Each variable `x` occupies two columns, `x_lo` and `x_hi`; an optional
//! leading `id` column labels the rows.
//!
//! ```text
//! id,length_lo,length_hi,width_lo,width_hi
//! a,0,2,1.5,3
//! b,1,5,0,0.25
//! ```

use std::io::{Read, Write};
use std::path::Path;

use interval_centers::{Hypercube, HypercubeDataset, Interval};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("the dataset has no rows")]
    Empty,
}

/// A parsed dataset plus the optional row labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFile {
    pub ids: Option<Vec<String>>,
    pub data: HypercubeDataset,
}

impl DatasetFile {
    /// Row index for a selector: an id when the file has an id column, else
    /// (or when no id matches) a 1-based row number.
    pub fn find_row(&self, selector: &str) -> Option<usize> {
        if let Some(pos) = self
            .ids
            .as_ref()
            .and_then(|ids| ids.iter().position(|id| id == selector))
        {
            return Some(pos);
        }
        selector
            .parse::<usize>()
            .ok()
            .filter(|&r| r >= 1 && r <= self.data.len())
            .map(|r| r - 1)
    }
}

struct Layout {
    has_id: bool,
    names: Vec<String>,
    /// Column index of `(lo, hi)` for every variable.
    columns: Vec<(usize, usize)>,
}

fn layout(headers: &csv::StringRecord) -> Result<Layout, DatasetError> {
    let mut names: Vec<String> = Vec::new();
    let mut lo: Vec<Option<usize>> = Vec::new();
    let mut hi: Vec<Option<usize>> = Vec::new();
    let mut has_id = false;

    for (col, header) in headers.iter().enumerate() {
        if header == "id" {
            if col != 0 {
                return Err(DatasetError::MalformedHeader(
                    "the id column must come first".into(),
                ));
            }
            has_id = true;
            continue;
        }
        let (name, is_lo) = if let Some(name) = header.strip_suffix("_lo") {
            (name, true)
        } else if let Some(name) = header.strip_suffix("_hi") {
            (name, false)
        } else {
            return Err(DatasetError::MalformedHeader(format!(
                "column {header:?} is neither `id` nor `<name>_lo` / `<name>_hi`"
            )));
        };
        if name.is_empty() {
            return Err(DatasetError::MalformedHeader(format!(
                "column {header:?} has an empty variable name"
            )));
        }
        let idx = match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                lo.push(None);
                hi.push(None);
                names.len() - 1
            }
        };
        let slot = if is_lo { &mut lo[idx] } else { &mut hi[idx] };
        if slot.replace(col).is_some() {
            return Err(DatasetError::MalformedHeader(format!(
                "duplicate column {header:?}"
            )));
        }
    }

    let mut columns = Vec::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        match (lo[i], hi[i]) {
            (Some(l), Some(h)) => columns.push((l, h)),
            (Some(_), None) => {
                return Err(DatasetError::MalformedHeader(format!(
                    "{name}_lo has no matching {name}_hi"
                )))
            }
            (None, _) => {
                return Err(DatasetError::MalformedHeader(format!(
                    "{name}_hi has no matching {name}_lo"
                )))
            }
        }
    }
    if columns.is_empty() {
        return Err(DatasetError::MalformedHeader("no interval columns".into()));
    }
    Ok(Layout {
        has_id,
        names,
        columns,
    })
}

fn parse_value(
    record: &csv::StringRecord,
    col: usize,
    header: &str,
    row: usize,
) -> Result<f64, DatasetError> {
    let raw = record.get(col).ok_or_else(|| DatasetError::Row {
        row,
        message: format!("missing field {header}"),
    })?;
    let value = raw.parse::<f64>().map_err(|_| DatasetError::Row {
        row,
        message: format!("{header}: {raw:?} is not a number"),
    })?;
    if !value.is_finite() {
        return Err(DatasetError::Row {
            row,
            message: format!("{header}: {raw:?} is not finite"),
        });
    }
    Ok(value)
}

pub fn parse_csv<R: Read>(reader: R) -> Result<DatasetFile, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let layout = layout(&headers)?;

    let mut ids = Vec::new();
    let mut items = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record?;
        if record.len() != headers.len() {
            return Err(DatasetError::Row {
                row,
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        if layout.has_id {
            ids.push(record[0].to_string());
        }
        let mut components = Vec::with_capacity(layout.columns.len());
        for (name, &(lc, hc)) in layout.names.iter().zip(&layout.columns) {
            let lo = parse_value(&record, lc, &headers[lc], row)?;
            let hi = parse_value(&record, hc, &headers[hc], row)?;
            if lo > hi {
                return Err(DatasetError::Row {
                    row,
                    message: format!("{name}: lo > hi ({lo} > {hi})"),
                });
            }
            components.push(Interval::new(lo, hi).map_err(|e| DatasetError::Row {
                row,
                message: e.to_string(),
            })?);
        }
        items.push(Hypercube::new(components).expect("at least one variable"));
    }
    if items.is_empty() {
        return Err(DatasetError::Empty);
    }
    let data = HypercubeDataset::new(items, layout.names).expect("rows share the header layout");
    Ok(DatasetFile {
        ids: layout.has_id.then_some(ids),
        data,
    })
}

pub fn read_csv(path: &Path) -> Result<DatasetFile, DatasetError> {
    let file = std::fs::File::open(path).map_err(|source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(std::io::BufReader::new(file))
}

/// Writes the dataset back in the same layout. Bounds use the shortest
/// representation that parses back to the same `f64`.
pub fn write_csv<W: Write>(file: &DatasetFile, writer: W) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = Vec::new();
    if file.ids.is_some() {
        header.push("id".into());
    }
    for name in file.data.names() {
        header.push(format!("{name}_lo"));
        header.push(format!("{name}_hi"));
    }
    w.write_record(&header)?;
    for (i, item) in file.data.items().iter().enumerate() {
        let mut record: Vec<String> = Vec::with_capacity(header.len());
        if let Some(ids) = &file.ids {
            record.push(ids[i].clone());
        }
        for c in item.components() {
            record.push(c.lower().to_string());
            record.push(c.upper().to_string());
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(|source| DatasetError::Io {
        path: "<output>".into(),
        source,
    })?;
    Ok(())
}

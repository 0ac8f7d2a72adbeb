//! Dataset ingestion from plain text: one numeral per line, or one column
//! of a delimited file. Individual bad records are skipped and counted;
//! only I/O-level failures are errors.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::num::NonZeroUsize;
use std::path::Path;

use super::NumericDataset;
use crate::Result;

/// How to pull one value out of each input line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    /// 1-based column to read; `None` treats the whole line as the value.
    pub column: Option<NonZeroUsize>,
    /// Field delimiter used when a column is selected.
    pub delimiter: char,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            column: None,
            delimiter: ',',
        }
    }
}

/// Ingests a file from disk. See [`ingest_reader`] for the record rules.
pub fn ingest_path(path: &Path, options: &IngestOptions) -> Result<NumericDataset> {
    let file = File::open(path)?;
    ingest_reader(BufReader::new(file), &path.display().to_string(), options)
}

/// Ingests lines from any reader.
///
/// Records parse as `f64` (scientific notation included, surrounding
/// whitespace ignored). Zeros and values that are not finite are skipped
/// and counted, as are unparseable records; a header row simply counts as
/// non-numeric. Negative values contribute their magnitude. In whole-line
/// mode, blank lines are not records and are ignored outright.
pub fn ingest_reader<R: BufRead>(
    reader: R,
    source_label: &str,
    options: &IngestOptions,
) -> Result<NumericDataset> {
    let mut dataset = NumericDataset::from_values([], source_label);
    for line in reader.lines() {
        let line = line?;
        let field = match options.column {
            None => {
                let trimmed = line.trim();
                if trimmed.is_empty() {
                    continue;
                }
                Some(trimmed)
            }
            Some(column) => line
                .split(options.delimiter)
                .nth(column.get() - 1)
                .map(str::trim),
        };
        match field.map(str::parse::<f64>) {
            Some(Ok(value)) => dataset.push_real(value),
            _ => dataset.skipped.non_numeric += 1,
        }
    }
    Ok(dataset)
}

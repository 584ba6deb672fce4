//! CSV dataset ingestion.
//!
//! One observation per row. The response is column `response_col` (default
//! the first), every other column is a covariate. The first row is treated as
//! a header when none of its cells parse as numbers.

use std::path::Path;

use shrinkage_core::{Dataset, GroupStructure};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default)]
pub struct CsvOptions {
    /// Zero-based index of the response column.
    pub response_col: usize,
    /// Group sizes, e.g. parsed from `--groups 5,5,5`.
    pub groups: Option<Vec<usize>>,
    /// Use `X = I`; the file then holds only the response column.
    pub identity_design: bool,
}

#[derive(Debug, Clone)]
pub struct LoadedData {
    pub dataset: Dataset<f64>,
    pub groups: Option<GroupStructure>,
    pub header: Option<Vec<String>>,
}

/// Parses `"5,5,5"` into group sizes.
pub fn parse_groups(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid group size '{}' in --groups", t.trim())))
        })
        .collect()
}

/// Checks group sizes against `p` and builds the structure.
pub fn group_structure(sizes: &[usize], p: usize) -> CliResult<GroupStructure> {
    let g = GroupStructure::new(sizes.to_vec())?;
    g.check_covers(p)?;
    Ok(g)
}

pub fn read_dataset_csv(path: &Path, opts: &CsvOptions) -> CliResult<LoadedData> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    read_dataset(file, &path.display().to_string(), opts)
}

pub fn read_dataset<R: std::io::Read>(input: R, source: &str, opts: &CsvOptions) -> CliResult<LoadedData> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let mut header = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (idx, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("{source}: {e}")))?;
        let line = rec.position().map_or(idx as u64 + 1, |p| p.line());
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        if idx == 0 && rec.iter().all(|c| c.parse::<f64>().is_err()) {
            header = Some(rec.iter().map(str::to_string).collect::<Vec<_>>());
            width = Some(rec.len());
            continue;
        }
        match width {
            Some(w) if w != rec.len() => {
                return Err(CliError::Usage(format!(
                    "{source}: row {line} has {} fields, expected {w}",
                    rec.len()
                )))
            }
            _ => width = Some(rec.len()),
        }
        let mut vals = Vec::with_capacity(rec.len());
        for (col, cell) in rec.iter().enumerate() {
            let v = cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                CliError::Usage(format!(
                    "{source}: row {line}, column {}: non-numeric value '{cell}'",
                    col + 1
                ))
            })?;
            vals.push(v);
        }
        rows.push(vals);
    }

    let width = width.unwrap_or(0);
    if rows.is_empty() {
        return Err(CliError::Usage(format!("{source}: no data rows")));
    }
    if opts.response_col >= width {
        return Err(CliError::Usage(format!(
            "{source}: response column {} out of range (file has {width} columns)",
            opts.response_col + 1
        )));
    }

    let n = rows.len();
    let y: Vec<f64> = rows.iter().map(|r| r[opts.response_col]).collect();
    let (x, p) = if opts.identity_design {
        if width != 1 {
            return Err(CliError::Usage(format!(
                "{source}: identity design expects only the response column, found {width} columns"
            )));
        }
        let mut x = vec![0.0; n * n];
        for i in 0..n {
            x[i * n + i] = 1.0;
        }
        (x, n)
    } else {
        if width < 2 {
            return Err(CliError::Usage(format!("{source}: need a response and at least one covariate")));
        }
        let x: Vec<f64> = rows
            .iter()
            .flat_map(|r| r.iter().enumerate().filter(|(j, _)| *j != opts.response_col).map(|(_, v)| *v))
            .collect();
        (x, width - 1)
    };

    let groups = opts.groups.as_deref().map(|g| group_structure(g, p)).transpose()?;
    Ok(LoadedData {
        dataset: Dataset::new(x, n, p, y)?,
        groups,
        header,
    })
}

//! Cayley table rendering and atomic file export.

use std::io::Write;
use std::path::Path;

use ialg_core::{CayleyTable, Structure, DEFAULT_ORDER_CAP};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::script::TableFormat;

/// Element labels and the table over them. Products are flattened.
pub fn flat_table(s: &Structure, max_order: u128) -> Result<(Vec<String>, CayleyTable), CliError> {
    let magma = if s.is_product() {
        s.flat_magma(max_order.min(DEFAULT_ORDER_CAP))?
    } else {
        s.magma(0)?.clone()
    };
    let labels = magma.elements().iter().map(|x| s.label(x)).collect();
    Ok((labels, magma.table()?.clone()))
}

pub fn table_json(labels: &[String], t: &CayleyTable) -> Value {
    let rows: Vec<Vec<usize>> = (0..t.size()).map(|i| t.row(i).collect()).collect();
    json!({ "elements": labels, "table": rows })
}

/// Header row of labels after a `*` corner, then one row per element
/// starting with its label.
pub fn table_csv(labels: &[String], t: &CayleyTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Invalid(format!("csv: {e}"));
    w.write_record(std::iter::once("*").chain(labels.iter().map(String::as_str)))
        .map_err(csv_err)?;
    for (i, label) in labels.iter().enumerate() {
        w.write_record(std::iter::once(label.as_str()).chain(t.row(i).map(|j| labels[j].as_str())))
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn render_table(labels: &[String], t: &CayleyTable, format: TableFormat) -> Result<String, CliError> {
    match format {
        TableFormat::Csv => table_csv(labels, t),
        TableFormat::Json => Ok(format!("{}\n", table_json(labels, t))),
    }
}

/// Format from the file extension: `.csv`, otherwise JSON for `.json`.
pub fn format_for(path: &Path) -> Result<TableFormat, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(TableFormat::Csv),
        Some("json") => Ok(TableFormat::Json),
        _ => Err(CliError::Invalid(format!("{}: extension must be .csv or .json", path.display()))),
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn export_table(s: &Structure, path: &Path, max_order: u128) -> Result<TableFormat, CliError> {
    let format = format_for(path)?;
    if !s.is_finite() {
        return Err(ialg_core::Error::InfiniteCarrier.into());
    }
    let (labels, t) = flat_table(s, max_order)?;
    write_atomic(path, &render_table(&labels, &t, format)?)?;
    Ok(format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ialg_core::{new_loop, Flavor};

    #[test]
    fn loop_csv_shape() {
        let l = new_loop(5, 2, Flavor::Plain).unwrap();
        let (labels, t) = flat_table(&l, 1 << 20).unwrap();
        let csv = table_csv(&labels, &t).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "*,e,1,2,3,4,5");
        assert_eq!(lines[1], "e,e,1,2,3,4,5");
        assert_eq!(lines[2], "1,1,e,3,5,2,4");
    }

    #[test]
    fn interval_labels_are_quoted() {
        let l = new_loop(5, 2, Flavor::Interval).unwrap();
        let (labels, t) = flat_table(&l, 1 << 20).unwrap();
        let csv = table_csv(&labels, &t).unwrap();
        assert!(csv.starts_with("*,e,\"[0,1]\""));
        let v = table_json(&labels, &t);
        assert_eq!(v["elements"].as_array().unwrap().len(), 6);
        assert_eq!(v["table"][1][1], 0);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(format_for(Path::new("x.txt")).is_err());
    }
}

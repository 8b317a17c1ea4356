//! Labeled result tables and their CSV form.
//!
//! Layout: `# key: value` metadata lines, then a header row whose first
//! column is `output`. Every statistic column `c` is followed by `c_display`,
//! the value divided by the column's display scale and rounded to 4 decimals.
//! Full values use 17 significant digits, so parsing them back is exact.

use std::io::Write;

use crate::error::CliError;

pub const DISPLAY_SUFFIX: &str = "_display";

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
    /// Display column shows `value / display_scale`.
    pub display_scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<String>,
    pub columns: Vec<Column>,
    pub metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(rows: Vec<String>) -> Self {
        Self {
            rows,
            columns: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>, display_scale: f64) -> Result<(), CliError> {
        let name = name.into();
        if values.len() != self.rows.len() {
            return Err(CliError::Validation(format!(
                "column '{name}' has {} values for {} rows",
                values.len(),
                self.rows.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(CliError::Numerical(uq_core::UqError::Internal(format!(
                "column '{name}' row '{}' is not finite ({v})",
                self.rows[i]
            ))));
        }
        self.columns.push(Column {
            name,
            values,
            display_scale,
        });
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Value in row `row` of column `column`.
    pub fn value(&self, row: &str, column: &str) -> Option<f64> {
        let i = self.rows.iter().position(|r| r == row)?;
        self.column(column).map(|c| c.values[i])
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        for c in self.columns.iter().filter(|c| c.display_scale != 1.0) {
            writeln!(out, "# display_scale.{}: {:e}", c.name, c.display_scale)?;
        }
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["output".to_string()];
        for c in &self.columns {
            header.push(c.name.clone());
            header.push(format!("{}{DISPLAY_SUFFIX}", c.name));
        }
        w.write_record(&header)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut record = vec![row.clone()];
            for c in &self.columns {
                let v = c.values[i];
                record.push(format!("{v:.16e}"));
                record.push(format!("{:.4}", v / c.display_scale));
            }
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn from_csv_str(text: &str) -> Result<Self, CliError> {
        let mut metadata = Vec::new();
        let mut scales = Vec::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let body = line.trim_start_matches('#').trim();
            let (k, v) = body
                .split_once(": ")
                .ok_or_else(|| CliError::Validation(format!("malformed metadata line '{line}'")))?;
            match k.strip_prefix("display_scale.") {
                Some(col) => {
                    let s: f64 = v
                        .parse()
                        .map_err(|_| CliError::Validation(format!("bad display scale '{v}'")))?;
                    scales.push((col.to_string(), s));
                }
                None => metadata.push((k.to_string(), v.to_string())),
            }
        }
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.get(0) != Some("output") {
            return Err(CliError::Validation("first CSV column must be 'output'".into()));
        }
        let value_cols: Vec<(usize, String)> = header
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, h)| !h.ends_with(DISPLAY_SUFFIX))
            .map(|(i, h)| (i, h.to_string()))
            .collect();
        let mut rows = Vec::new();
        let mut values = vec![Vec::new(); value_cols.len()];
        for rec in r.records() {
            let rec = rec?;
            rows.push(rec.get(0).unwrap_or_default().to_string());
            for (k, (i, name)) in value_cols.iter().enumerate() {
                let cell = rec.get(*i).unwrap_or_default();
                let v: f64 = cell
                    .parse()
                    .map_err(|_| CliError::Validation(format!("column '{name}': bad number '{cell}'")))?;
                values[k].push(v);
            }
        }
        let columns = value_cols
            .into_iter()
            .zip(values)
            .map(|((_, name), values)| {
                let display_scale = scales.iter().find(|(c, _)| *c == name).map_or(1.0, |(_, s)| *s);
                Column {
                    name,
                    values,
                    display_scale,
                }
            })
            .collect();
        Ok(Self {
            rows,
            columns,
            metadata,
        })
    }
}

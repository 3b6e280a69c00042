//! Column-oriented run output and its CSV / JSON encodings.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::CliError;

/// Samples of a run; every row has one value per column and column 0 is `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Keeps every `stride`-th row and always the last one.
    pub fn thinned(&self, stride: usize) -> Table {
        let stride = stride.max(1);
        let last = self.rows.len().saturating_sub(1);
        Table {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| i % stride == 0 || *i == last)
                .map(|(_, r)| r.clone())
                .collect(),
        }
    }

    /// CSV with `#`-prefixed header comment lines; 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W, header: &str) -> std::io::Result<()> {
        for line in header.lines() {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(
        &self,
        out: &mut W,
        config: &serde_json::Value,
        summary: &BTreeMap<String, String>,
    ) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Document<'a> {
            config: &'a serde_json::Value,
            summary: &'a BTreeMap<String, String>,
            columns: &'a [String],
            rows: Vec<Vec<Option<f64>>>,
        }
        let doc = Document {
            config,
            summary,
            columns: &self.columns,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.is_finite().then_some(*x)).collect())
                .collect(),
        };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

/// Maximum absolute deviation per shared column.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub deviations: Vec<(String, f64)>,
    pub tolerance: f64,
}

impl Comparison {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|(_, d)| *d).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.deviations.iter().all(|(_, d)| *d <= self.tolerance)
    }
}

const TIME_TOLERANCE: f64 = 1e-12;

/// Aligns two tables sample by sample and reports the largest deviation in
/// each requested column (all shared columns besides `t` by default).
pub fn compare_tables(
    a: &Table,
    b: &Table,
    columns: Option<&[String]>,
    tolerance: f64,
) -> Result<Comparison, CliError> {
    let (ta, tb) = match (a.column("t"), b.column("t")) {
        (Some(ta), Some(tb)) => (ta, tb),
        _ => {
            return Err(CliError::MismatchedGrids(
                "both runs need a time column".into(),
            ))
        }
    };
    if ta.len() != tb.len() {
        return Err(CliError::MismatchedGrids(format!(
            "{} samples versus {} samples",
            ta.len(),
            tb.len()
        )));
    }
    if let Some(i) =
        (0..ta.len()).find(|&i| (ta[i] - tb[i]).abs() > TIME_TOLERANCE * ta[i].abs().max(1.0))
    {
        return Err(CliError::MismatchedGrids(format!(
            "sample {i} at t = {} versus t = {}",
            ta[i], tb[i]
        )));
    }

    let names: Vec<String> = match columns {
        Some(cols) => cols.to_vec(),
        None => a
            .columns
            .iter()
            .filter(|c| *c != "t" && b.column_index(c).is_some())
            .cloned()
            .collect(),
    };
    let mut deviations = Vec::with_capacity(names.len());
    for name in names {
        let (ca, cb) = match (a.column(&name), b.column(&name)) {
            (Some(ca), Some(cb)) => (ca, cb),
            _ => {
                return Err(CliError::Config(format!(
                    "column '{name}' missing from one of the runs"
                )))
            }
        };
        let dev = ca
            .iter()
            .zip(&cb)
            .map(|(x, y)| if x == y { 0.0 } else { (x - y).abs() })
            .fold(
                0.0,
                |m: f64, d| if d.is_nan() { f64::INFINITY } else { m.max(d) },
            );
        deviations.push((name, dev));
    }
    Ok(Comparison {
        deviations,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(times: &[f64], xs: &[f64]) -> Table {
        let mut t = Table::new(&["t", "x"]);
        for (a, b) in times.iter().zip(xs) {
            t.push(vec![*a, *b]);
        }
        t
    }

    #[test]
    fn identical_tables_have_zero_deviation() {
        let a = table(&[0.0, 0.1, 0.2], &[1.0, 2.0, 3.0]);
        let cmp = compare_tables(&a, &a.clone(), None, 0.0).unwrap();
        assert_eq!(cmp.max_deviation(), 0.0);
        assert!(cmp.passed());
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = table(&[0.0, 0.1], &[1.0, 2.0]);
        let b = table(&[0.0, 0.2], &[1.0, 2.0]);
        assert!(matches!(
            compare_tables(&a, &b, None, 1.0),
            Err(CliError::MismatchedGrids(_))
        ));
        let c = table(&[0.0], &[1.0]);
        assert!(matches!(
            compare_tables(&a, &c, None, 1.0),
            Err(CliError::MismatchedGrids(_))
        ));
    }

    #[test]
    fn deviation_exceeding_tolerance_fails() {
        let a = table(&[0.0, 0.1], &[1.0, 2.0]);
        let b = table(&[0.0, 0.1], &[1.0, 2.5]);
        let cmp = compare_tables(&a, &b, None, 0.1).unwrap();
        assert_eq!(cmp.deviations, vec![("x".to_string(), 0.5)]);
        assert!(!cmp.passed());
    }

    #[test]
    fn csv_has_commented_header_and_full_precision() {
        let t = table(&[0.0], &[1.0 / 3.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf, "a = 1\nb = 2").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# a = 1");
        assert_eq!(lines[2], "t,x");
        let x: f64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(x, 1.0 / 3.0);
    }

    #[test]
    fn thinning_keeps_last_row() {
        let t = table(&[0.0, 1.0, 2.0, 3.0, 4.0], &[0.0; 5]);
        let thin = t.thinned(3);
        assert_eq!(thin.column("t").unwrap(), vec![0.0, 3.0, 4.0]);
    }
}

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::{Matrix, C64};

/// On-disk matrix: `{"name": "...", "n": 2, "entries": [[re, im], ...]}`,
/// entries row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix, name: Option<&str>) -> Result<Self> {
        let n = m.square_dim()?;
        Ok(MatrixFile {
            name: name.map(str::to_owned),
            n,
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        })
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let expected = self.n * self.n;
        if self.n == 0 || self.entries.len() != expected {
            return Err(Error::Shape {
                n: self.n,
                count: self.entries.len(),
                expected,
            });
        }
        let data = self
            .entries
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        Matrix::new(self.n, self.n, data)
    }
}

/// Parses a matrix file. A 1x1 matrix is accepted here; the radius
/// operations reject it later.
pub fn parse_matrix(bytes: &[u8]) -> Result<Matrix> {
    let file: MatrixFile = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_matrix()
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    parse_matrix(&fs::read(path)?)
}

/// Pretty JSON whose numbers parse back to the identical bits.
pub fn serialize_matrix(m: &Matrix, name: Option<&str>) -> Result<String> {
    let file = MatrixFile::from_matrix(m, name)?;
    serde_json::to_string_pretty(&file).map_err(|e| Error::InvalidConfig(e.to_string()))
}

/// 17 significant digits, scientific below `1e-4` and from `1e6` on.
///
/// ```
/// use qradius::harness::format_number;
/// assert_eq!(format_number(0.5), "0.50000000000000000");
/// assert_eq!(format_number(0.6), "0.59999999999999998");
/// assert_eq!(format_number(2.5e-5), "2.5000000000000001e-5");
/// assert_eq!(format_number(f64::INFINITY), "inf");
/// assert_eq!(format_number(0.0), "0");
/// ```
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let a = x.abs();
    if !(1e-4..1e6).contains(&a) {
        return sci;
    }
    // the exponent after rounding to 17 digits
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("exponent");
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// A rectangular numeric table written as CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_csv())?;
        Ok(())
    }
}

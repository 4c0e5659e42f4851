//! Labeled observations and the CSV dataset format.
//!
//! Files carry a header `f1,...,fp,label` followed by one row per observation;
//! labels are `1` or `2`.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// One of the two classes. `Omega1 < Omega2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    #[serde(rename = "1")]
    Omega1,
    #[serde(rename = "2")]
    Omega2,
}

impl ClassId {
    pub fn other(self) -> ClassId {
        match self {
            ClassId::Omega1 => ClassId::Omega2,
            ClassId::Omega2 => ClassId::Omega1,
        }
    }

    /// On-disk label: 1 or 2.
    pub fn code(self) -> u8 {
        match self {
            ClassId::Omega1 => 1,
            ClassId::Omega2 => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<ClassId> {
        match code {
            1 => Some(ClassId::Omega1),
            2 => Some(ClassId::Omega2),
            _ => None,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Observation<T> {
    features: Vec<T>,
    label: ClassId,
}

impl<T: Scalar> Observation<T> {
    pub fn new(features: Vec<T>, label: ClassId) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::Empty("observation with no features"));
        }
        check_finite(&features)?;
        Ok(Observation { features, label })
    }

    pub fn features(&self) -> &[T] {
        &self.features
    }

    pub fn label(&self) -> ClassId {
        self.label
    }
}

pub(crate) fn check_finite<T: Scalar>(x: &[T]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// An immutable set of labeled observations of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset<T> {
    dim: usize,
    observations: Vec<Observation<T>>,
    counts: [usize; 2],
}

impl<T: Scalar> Dataset<T> {
    pub fn new(dim: usize, observations: Vec<Observation<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("dataset dimension 0"));
        }
        let mut counts = [0; 2];
        for o in &observations {
            if o.features.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: o.features.len(),
                });
            }
            counts[class_index(o.label)] += 1;
        }
        Ok(Dataset {
            dim,
            observations,
            counts,
        })
    }

    /// Stacks two per-class matrices into a dataset, class 1 rows first.
    pub fn from_class_matrices(class1: &Matrix<T>, class2: &Matrix<T>) -> Result<Self> {
        if class1.cols() != class2.cols() {
            return Err(Error::DimensionMismatch {
                expected: class1.cols(),
                got: class2.cols(),
            });
        }
        let mut obs = Vec::with_capacity(class1.rows() + class2.rows());
        for (m, label) in [(class1, ClassId::Omega1), (class2, ClassId::Omega2)] {
            for r in m.iter_rows() {
                obs.push(Observation::new(r.to_vec(), label)?);
            }
        }
        Dataset::new(class1.cols(), obs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn count(&self, class: ClassId) -> usize {
        self.counts[class_index(class)]
    }

    pub fn observations(&self) -> &[Observation<T>] {
        &self.observations
    }

    /// Rows of one class, in dataset order.
    pub fn class_matrix(&self, class: ClassId) -> Matrix<T> {
        let mut m = Matrix::zeros(0, self.dim);
        for o in self.observations.iter().filter(|o| o.label == class) {
            m.push_row(&o.features).expect("dimension checked at construction");
        }
        m
    }

    /// Row-partition by class preserving within-class order.
    pub fn split_by_class(&self) -> (Matrix<T>, Matrix<T>) {
        (
            self.class_matrix(ClassId::Omega1),
            self.class_matrix(ClassId::Omega2),
        )
    }

    /// Same features with every label replaced by the other class.
    pub fn swap_labels(&self) -> Self {
        Dataset {
            dim: self.dim,
            observations: self
                .observations
                .iter()
                .map(|o| Observation {
                    features: o.features.clone(),
                    label: o.label.other(),
                })
                .collect(),
            counts: [self.counts[1], self.counts[0]],
        }
    }

    /// Subset by observation index, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let observations: Vec<_> = indices.iter().map(|&i| self.observations[i].clone()).collect();
        let mut counts = [0; 2];
        for o in &observations {
            counts[class_index(o.label)] += 1;
        }
        Dataset {
            dim: self.dim,
            observations,
            counts,
        }
    }
}

fn class_index(c: ClassId) -> usize {
    match c {
        ClassId::Omega1 => 0,
        ClassId::Omega2 => 1,
    }
}

pub fn load_dataset<T: Scalar>(path: impl AsRef<Path>) -> Result<Dataset<T>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_dataset(file)
}

/// Parses the CSV dataset format. Row numbers in errors count the header as row 1.
pub fn read_dataset<T: Scalar, R: Read>(reader: R) -> Result<Dataset<T>> {
    let (dim, rows) = parse_rows(reader, true)?;
    let observations = rows
        .into_iter()
        .map(|(features, label)| Observation {
            features,
            label: label.expect("labels required"),
        })
        .collect();
    Dataset::new(dim, observations)
}

/// Feature rows of a query file: the dataset format with the `label` column
/// optional (and ignored when present).
pub fn read_features<T: Scalar, R: Read>(reader: R) -> Result<(usize, Vec<Vec<T>>)> {
    let (dim, rows) = parse_rows(reader, false)?;
    Ok((dim, rows.into_iter().map(|(f, _)| f).collect()))
}

pub fn load_features<T: Scalar>(path: impl AsRef<Path>) -> Result<(usize, Vec<Vec<T>>)> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_features(file)
}

type Row<T> = (Vec<T>, Option<ClassId>);

fn parse_rows<T: Scalar, R: Read>(reader: R, require_label: bool) -> Result<(usize, Vec<Row<T>>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| csv_error(1, e))?.clone();
    let labelled = header.len() >= 2 && header.get(header.len() - 1).map(str::trim) == Some("label");
    if require_label && !labelled {
        return Err(Error::Parse {
            row: 1,
            message: "header must be f1,...,fp,label".into(),
        });
    }
    let dim = header.len() - labelled as usize;
    if dim == 0 {
        return Err(Error::Parse {
            row: 1,
            message: "no feature columns".into(),
        });
    }
    for (i, name) in header.iter().take(dim).enumerate() {
        if name.trim() != format!("f{}", i + 1) {
            return Err(Error::Parse {
                row: 1,
                message: format!("expected column f{}, found {name:?}", i + 1),
            });
        }
    }

    let width = header.len();
    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2;
        let record = record.map_err(|e| csv_error(row, e))?;
        if record.len() != width {
            return Err(Error::Parse {
                row,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        let mut features = Vec::with_capacity(dim);
        for (col, field) in record.iter().take(dim).enumerate() {
            let v: T = field.trim().parse().map_err(|_| Error::Parse {
                row,
                message: format!("non-numeric feature f{}: {field:?}", col + 1),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    message: format!("non-finite feature f{}", col + 1),
                });
            }
            features.push(v);
        }
        let label = if require_label {
            let raw = record.get(dim).unwrap().trim();
            Some(raw.parse::<u8>().ok().and_then(ClassId::from_code).ok_or_else(|| Error::Parse {
                row,
                message: format!("unknown label {raw:?}"),
            })?)
        } else {
            None
        };
        rows.push((features, label));
    }
    Ok((dim, rows))
}

fn csv_error(row: usize, e: csv::Error) -> Error {
    Error::Parse {
        row,
        message: e.to_string(),
    }
}

pub fn save_dataset<T: Scalar>(d: &Dataset<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_dataset(d, &mut file).map_err(|e| Error::io(path, e))
}

/// Writes features with 17 significant digits so that `f64` values survive a
/// round trip bit-exactly.
pub fn write_dataset<T: Scalar, W: Write>(d: &Dataset<T>, out: &mut W) -> std::io::Result<()> {
    let mut buf = String::new();
    for i in 1..=d.dim {
        buf.push_str(&format!("f{i},"));
    }
    buf.push_str("label\n");
    for o in &d.observations {
        for v in &o.features {
            buf.push_str(&format!("{v:.16e},"));
        }
        buf.push_str(&format!("{}\n", o.label));
    }
    out.write_all(buf.as_bytes())
}

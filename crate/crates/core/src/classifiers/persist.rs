//! Versioned JSON model files: `{"version": 1, "kind": "ncc" | "lda" | "qda" | "ncda", ...}`.
//!
//! Floats are written in shortest round-trip form, so loading reproduces every
//! stored value bit-exactly.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifiers::Model;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MODEL_FILE_VERSION: u32 = 1;

#[derive(Serialize)]
struct ModelFileRef<'a, T> {
    version: u32,
    #[serde(flatten)]
    model: &'a Model<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
struct ModelFile<T> {
    #[allow(dead_code)]
    version: u32,
    #[serde(flatten)]
    model: Model<T>,
}

pub fn write_model<T: Scalar, W: Write>(model: &Model<T>, out: W) -> Result<()> {
    let doc = ModelFileRef {
        version: MODEL_FILE_VERSION,
        model,
    };
    serde_json::to_writer_pretty(out, &doc).map_err(|e| Error::Model(e.to_string()))
}

pub fn read_model<T: Scalar, R: Read>(input: R) -> Result<Model<T>> {
    let value: serde_json::Value =
        serde_json::from_reader(input).map_err(|e| Error::Model(e.to_string()))?;
    let version = value
        .get("version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::Model("missing version".into()))?;
    if version != MODEL_FILE_VERSION as u64 {
        return Err(Error::Version {
            found: version.min(u32::MAX as u64) as u32,
            expected: MODEL_FILE_VERSION,
        });
    }
    let file: ModelFile<T> = serde_json::from_value(value).map_err(|e| Error::Model(e.to_string()))?;
    Ok(file.model)
}

pub fn save_model<T: Scalar>(model: &Model<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_model(model, &mut buf)?;
    buf.push(b'\n');
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn load_model<T: Scalar>(path: impl AsRef<Path>) -> Result<Model<T>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_model(std::io::BufReader::new(file))
}

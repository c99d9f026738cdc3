//! Stored change-of-basis matrices of `F_p[S_n]` shipped with the crate.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A stored modular DFT matrix of `F_p[S_n]`, rows in the stored order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredModularDft {
    pub p: u64,
    pub n: usize,
    pub matrix: Matrix<u64>,
}

#[derive(Deserialize)]
struct Raw {
    version: u32,
    p: u64,
    n: usize,
    rows: Vec<String>,
}

const MODULAR_DFT_2_3: &str = include_str!("../data/modular_dft_2_3.json");
const MODULAR_DFT_3_4: &str = include_str!("../data/modular_dft_3_4.json");

/// Names accepted by [`stored_modular_dft`].
pub const STORED_NAMES: [&str; 2] = ["stored-2-3", "stored-3-4"];

impl StoredModularDft {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        if raw.version != 1 {
            return Err(Error::Fixture(format!("unsupported version {}", raw.version)));
        }
        let rows = raw
            .rows
            .iter()
            .map(|r| {
                r.split_whitespace()
                    .map(|x| match x.parse::<u64>() {
                        Ok(v) if v < raw.p => Ok(v),
                        _ => Err(Error::Fixture(format!("bad entry {x:?} for p = {}", raw.p))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_rows(rows)?;
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        Ok(Self { p: raw.p, n: raw.n, matrix })
    }
}

/// Looks up a stored matrix by `(p, n)`.
pub fn modular_dft_for(p: u64, n: usize) -> Result<StoredModularDft> {
    match (p, n) {
        (2, 3) => StoredModularDft::parse(MODULAR_DFT_2_3),
        (3, 4) => StoredModularDft::parse(MODULAR_DFT_3_4),
        _ => Err(Error::Fixture(format!("no stored matrix for p = {p}, n = {n}"))),
    }
}

/// Looks up a stored matrix by name, e.g. `stored-3-4`.
pub fn stored_modular_dft(name: &str) -> Result<StoredModularDft> {
    match name {
        "stored-2-3" => modular_dft_for(2, 3),
        "stored-3-4" => modular_dft_for(3, 4),
        _ => Err(Error::Fixture(format!(
            "unknown fixture {name:?}, expected one of {}",
            STORED_NAMES.join(", ")
        ))),
    }
}

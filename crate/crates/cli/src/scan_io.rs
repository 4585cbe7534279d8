//! Defect grids as CSV with columns `r,d,defect`; invalid cells read `DEAD`.

use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

use closure_core::chain::Word;
use closure_core::search::{Cell, DefectGrid};

use crate::CliError;

pub const DEAD: &str = "DEAD";

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    r: f64,
    d: f64,
    defect: String,
}

pub fn write_grid<W: Write>(grid: &DefectGrid, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for (i, r) in grid.r_axis.iter().enumerate() {
        for (j, d) in grid.d_axis.iter().enumerate() {
            let defect = match grid.cell(i, j) {
                Cell::Defect(x) => x.to_string(),
                Cell::Dead => DEAD.to_string(),
            };
            w.serialize(Row { r: *r, d: *d, defect })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn grid_to_string(grid: &DefectGrid) -> String {
    let mut buf = Vec::new();
    write_grid(grid, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Reads a grid written by [`write_grid`].
pub fn read_grid<R: Read>(input: R, word: Word) -> Result<DefectGrid, CliError> {
    let bad = |m: String| CliError::Invalid(format!("scan csv: {m}"));
    let mut rdr = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in rdr.deserialize::<Row>() {
        rows.push(rec.map_err(|e| bad(e.to_string()))?);
    }
    let mut r_axis: Vec<f64> = Vec::new();
    let mut d_axis: Vec<f64> = Vec::new();
    for row in &rows {
        if r_axis.last() != Some(&row.r) {
            r_axis.push(row.r);
        }
        if r_axis.len() == 1 {
            d_axis.push(row.d);
        }
    }
    if r_axis.len() * d_axis.len() != rows.len() || r_axis.len() < 2 || d_axis.len() < 2 {
        return Err(bad("rows do not form an r-major grid".into()));
    }
    let mut cells = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        if row.r != r_axis[k / d_axis.len()] || row.d != d_axis[k % d_axis.len()] {
            return Err(bad(format!("row {} out of grid order", k + 1)));
        }
        cells.push(if row.defect == DEAD {
            Cell::Dead
        } else {
            Cell::Defect(row.defect.parse().map_err(|_| bad(format!("bad defect {:?}", row.defect)))?)
        });
    }
    Ok(DefectGrid { word, r_axis, d_axis, cells })
}

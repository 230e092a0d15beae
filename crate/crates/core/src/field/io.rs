//! Field dumps: a JSON header plus CSV rows `ring_index,angle_index,sheet,x,y`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::disk::DiskField;
use super::grid::PolarGrid;
use super::FieldError;
use crate::homogeneous::Continuation;
use crate::qcore::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub n_r: usize,
    pub n_theta: usize,
    pub seam: Continuation,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeRow {
    ring_index: usize,
    angle_index: usize,
    sheet: usize,
    x: f64,
    y: f64,
}

pub fn field_header(f: &DiskField) -> FieldHeader {
    let g = f.grid();
    FieldHeader { n_r: g.n_r(), n_theta: g.n_theta(), seam: f.seam() }
}

pub fn write_field_csv<W: Write>(f: &DiskField, out: W) -> Result<(), FieldError> {
    let g = f.grid();
    let mut w = csv::Writer::from_writer(out);
    for s in 0..2 {
        for i in 0..=g.n_r() {
            for j in 0..g.n_theta() {
                let v = f.get(s, i, j);
                w.serialize(NodeRow { ring_index: i, angle_index: j, sheet: s + 1, x: v.x, y: v.y })?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_field_csv<R: Read>(header: FieldHeader, input: R) -> Result<DiskField, FieldError> {
    let grid = PolarGrid::new(header.n_r, header.n_theta)?;
    let mut sheets = [vec![None; grid.len()], vec![None; grid.len()]];
    for row in csv::Reader::from_reader(input).deserialize::<NodeRow>() {
        let row = row?;
        if row.ring_index > grid.n_r() || row.angle_index >= grid.n_theta() || !(1..=2).contains(&row.sheet) {
            return Err(FieldError::Format(format!(
                "node ({}, {}, {}) outside the grid",
                row.ring_index, row.angle_index, row.sheet
            )));
        }
        sheets[row.sheet - 1][row.ring_index * grid.n_theta() + row.angle_index] =
            Some(Vec2::new(row.x, row.y));
    }
    let take = |v: &Vec<Option<Vec2>>| -> Result<Vec<Vec2>, FieldError> {
        v.iter()
            .map(|x| x.ok_or_else(|| FieldError::Format("missing node".into())))
            .collect()
    };
    let (s1, s2) = (take(&sheets[0])?, take(&sheets[1])?);
    Ok(DiskField::from_sheets(grid, header.seam, s1, s2))
}

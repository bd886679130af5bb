//! Binary field snapshots.
//!
//! Layout, all little-endian: the magic `CHTX1`, one byte for the dimension,
//! a `u32` node count per axis, an `f64` length per axis, then the nodal
//! values as `f64` in row-major order.

use std::io::{self, Read, Write};

use thiserror::Error;

use super::{Field, Grid, GridError};

pub const MAGIC: &[u8; 5] = b"CHTX1";

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("not a field snapshot (bad magic)")]
    BadMagic,
    #[error("invalid snapshot grid: {0}")]
    Grid(#[from] GridError),
    #[error("trailing bytes after snapshot values")]
    TrailingData,
}

pub fn write_snapshot<W: Write>(mut out: W, field: &Field) -> io::Result<()> {
    let grid = field.grid();
    out.write_all(MAGIC)?;
    out.write_all(&[grid.dim() as u8])?;
    for &count in grid.counts() {
        out.write_all(&(count as u32).to_le_bytes())?;
    }
    for &length in grid.lengths() {
        out.write_all(&length.to_le_bytes())?;
    }
    for &v in field.values() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()
}

pub fn encode_snapshot(field: &Field) -> Vec<u8> {
    let mut buf = Vec::with_capacity(6 + 12 * field.grid().dim() + 8 * field.values().len());
    write_snapshot(&mut buf, field).expect("writing to a Vec cannot fail");
    buf
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> io::Result<[u8; N]> {
    let mut buf = [0u8; N];
    input.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<Field, SnapshotError> {
    if &read_array::<5, _>(&mut input)? != MAGIC {
        return Err(SnapshotError::BadMagic);
    }
    let dim = read_array::<1, _>(&mut input)?[0] as usize;
    if !(1..=2).contains(&dim) {
        return Err(GridError::Dimension(dim).into());
    }
    let mut counts = Vec::with_capacity(dim);
    for _ in 0..dim {
        counts.push(u32::from_le_bytes(read_array(&mut input)?) as usize);
    }
    let mut lengths = Vec::with_capacity(dim);
    for _ in 0..dim {
        lengths.push(f64::from_le_bytes(read_array(&mut input)?));
    }
    let grid = Grid::new(&lengths, &counts)?;
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        values.push(f64::from_le_bytes(read_array(&mut input)?));
    }
    if input.read(&mut [0u8; 1])? != 0 {
        return Err(SnapshotError::TrailingData);
    }
    Ok(Field::new(grid, values)?)
}

//! Matrix text format: a header line `m n`, then `m` lines of exactly `n` characters
//! from `{0,1}`. Column `j` is character `j` read down the lines.

use super::{BinMatrix, Column};
use crate::error::{Error, Result};

pub fn write_matrix(a: &BinMatrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.ncols());
    for r in 0..a.rows() {
        out.extend(a.columns().iter().map(|c| if c.get(r) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<BinMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: 1,
            message: format!("bad dimension {s:?}"),
        })
    };
    let (rows, ncols) = match dims.as_slice() {
        [m, n] => (parse_dim(m)?, parse_dim(n)?),
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "header must be `m n`".into(),
            })
        }
    };
    let mut cols = vec![Column::zeros(rows); ncols];
    for r in 0..rows {
        let lineno = r + 2;
        let line = lines.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected {rows} matrix rows, found {r}"),
        })?;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.chars().count() != ncols {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {ncols} entries, found {}", line.chars().count()),
            });
        }
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '1' => cols[j].set(r),
                '0' => {}
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("invalid entry {other:?}"),
                    })
                }
            }
        }
    }
    if let Some((i, _)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: rows + 2 + i,
            message: "trailing content after matrix rows".into(),
        });
    }
    Ok(BinMatrix::from_columns(rows, cols))
}

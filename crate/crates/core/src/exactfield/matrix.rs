//! Dense matrices over a number field, with exact elimination.
//!
//! Sized for the linear algebra this crate actually does (conditions on
//! linear systems of curves, kernel extraction, span comparisons): tens of
//! rows, not thousands. Reduction is plain exact Gaussian elimination with
//! pivot normalization; the reduced row-echelon form is canonical, so two row
//! spans are equal iff their rrefs are equal.

use crate::error::{Error, Result};
use crate::exactfield::field::{FieldElement, NumberField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: NumberField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: &NumberField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &NumberField, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::invalid("ragged matrix rows"));
            }
            for el in row {
                if el.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.describe(),
                        right: el.field().describe(),
                    });
                }
                data.push(el);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row-echelon form and the pivot column list.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv()?;
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv)?;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c).sub(&m.get(row, c).mul(&factor)?)?;
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the exact right null space { v : A v = 0 }.
    pub fn kernel(&self) -> Result<Vec<Vec<FieldElement>>> {
        let (r, pivots) = self.rref()?;
        let piv_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                vec[pc] = r.get(i, free).neg();
            }
            basis.push(vec);
        }
        Ok(basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

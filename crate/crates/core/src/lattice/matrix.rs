use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Dense real matrix at a fixed working precision. Lattice vectors are rows.
#[derive(Debug, Clone)]
pub struct NumericMatrix {
    rows: usize,
    cols: usize,
    precision: Precision,
    data: Vec<Real>,
}

impl NumericMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        precision: Precision,
        mut f: impl FnMut(usize, usize) -> Real,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        NumericMatrix {
            rows,
            cols,
            precision,
            data,
        }
    }

    pub fn identity(n: usize, precision: Precision) -> Self {
        let bits = precision.bits();
        Self::from_fn(n, n, precision, |i, j| Real::from_i64((i == j) as i64, bits))
    }

    pub fn from_integers(m: &[Vec<i64>], precision: Precision) -> Self {
        let cols = m.first().map_or(0, Vec::len);
        Self::from_fn(m.len(), cols, precision, |i, j| {
            Real::from_i64(m[i][j], precision.bits())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &Real {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Real] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &NumericMatrix) -> Result<NumericMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let bits = self.precision.bits();
        Ok(Self::from_fn(self.rows, other.cols, self.precision, |i, j| {
            (0..self.cols).fold(Real::zero(bits), |acc, t| {
                &acc + &(self.get(i, t) * other.get(t, j))
            })
        }))
    }

    pub fn transpose(&self) -> NumericMatrix {
        Self::from_fn(self.cols, self.rows, self.precision, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Kronecker product; entry `((i1,i2),(j1,j2)) = a[i1][j1]·b[i2][j2]`.
    pub fn kron(&self, other: &NumericMatrix) -> NumericMatrix {
        Self::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            self.precision,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.get(i1, j1) * other.get(i2, j2)
            },
        )
    }

    pub fn permute_rows(&self, order: &[usize]) -> NumericMatrix {
        Self::from_fn(order.len(), self.cols, self.precision, |i, j| {
            self.get(order[i], j).clone()
        })
    }

    /// `M·M^T`
    pub fn gram(&self) -> NumericMatrix {
        let bits = self.precision.bits();
        Self::from_fn(self.rows, self.rows, self.precision, |i, j| {
            self.row(i)
                .iter()
                .zip(self.row(j))
                .fold(Real::zero(bits), |acc, (a, b)| &acc + &(a * b))
        })
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Real> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let bits = self.precision.bits();
        let mut a = self.data.clone();
        let mut det = Real::one(bits);
        for c in 0..n {
            let pivot = (c..n)
                .max_by(|&x, &y| {
                    a[x * n + c]
                        .abs()
                        .partial_cmp(&a[y * n + c].abs())
                        .expect("finite entries")
                })
                .expect("nonempty range");
            if a[pivot * n + c].is_zero() {
                return Ok(Real::zero(bits));
            }
            if pivot != c {
                for j in 0..n {
                    a.swap(pivot * n + j, c * n + j);
                }
                det = -det;
            }
            let p = a[c * n + c].clone();
            det = &det * &p;
            for r in c + 1..n {
                let f = &a[r * n + c] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &a[r * n + j] - &(&f * &a[c * n + j]);
                    a[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Largest entrywise `|a - b|`.
    pub fn max_abs_deviation(&self, other: &NumericMatrix) -> Result<Real> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidParameter("matrix shapes differ".into()));
        }
        let bits = self.precision.bits();
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(Real::zero(bits), |acc, (a, b)| {
                let d = (a - b).abs();
                if d > acc {
                    d
                } else {
                    acc
                }
            }))
    }

    /// The lattice vector `y·M` for an integer row vector `y`.
    pub fn combine_rows(&self, y: &[i64]) -> Vec<Real> {
        let bits = self.precision.bits();
        (0..self.cols)
            .map(|j| {
                y.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .fold(Real::zero(bits), |acc, (i, &c)| {
                        &acc + &(&Real::from_i64(c, bits) * self.get(i, j))
                    })
            })
            .collect()
    }

    /// Entries as decimal strings with `digits` significant digits.
    pub fn to_strings(&self, digits: usize) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_decimal(digits)).collect())
            .collect()
    }

    /// `{rows, cols, precision_digits, entries}` with full-precision strings.
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "precision_digits": self.precision.digits(),
            "entries": self.to_strings(self.precision.digits() as usize),
        })
    }

    /// One line per row, 12 significant digits, no header.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for row in self.to_strings(12) {
            w.write_record(&row)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

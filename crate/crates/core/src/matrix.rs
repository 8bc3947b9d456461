//! Dense matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// A `rows × cols` complex-rational matrix stored row-major.
///
/// Matrices with zero rows or columns are ordinary values; the empty
/// square matrix is invertible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn scalar(value: GaussianRational) -> Self {
        Self { rows: 1, cols: 1, entries: vec![value] }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: n, cols: m, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from `(re, im)` integer pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    /// Convenience constructor from real integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&a| GaussianRational::from(a)).collect()).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_real)
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<GaussianRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn scale_real(&self, k: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.scale(k)).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &CMatrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<CMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Matrix–vector product.
    pub fn apply(&self, x: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(r).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular or not square.
    pub fn inverse(&self) -> Option<CMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, col, &f);
                    inv.sub_row_multiple(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form over ℚ(i) together with the pivot columns.
    pub fn rref(&self) -> (CMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            a.scale_row(row, &inv);
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// A basis (as a matrix of columns) of the column space.
    pub fn column_space(&self) -> CMatrix {
        let (_, pivots) = self.rref();
        let cols: Vec<_> = pivots.iter().map(|&c| self.column(c)).collect();
        CMatrix::from_columns(self.rows, &cols)
    }

    /// A basis (as a matrix of columns) of the right kernel.
    pub fn kernel(&self) -> CMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let cols: Vec<Vec<GaussianRational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect();
        CMatrix::from_columns(self.cols, &cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &GaussianRational) {
        for c in 0..self.cols {
            let x = &self.entries[r * self.cols + c];
            if !x.is_zero() {
                self.entries[r * self.cols + c] = x * k;
            }
        }
    }

    /// row[target] -= f * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &GaussianRational) {
        for c in 0..self.cols {
            let s = &self.entries[source * self.cols + c];
            if !s.is_zero() {
                let d = s * f;
                self.entries[target * self.cols + c] -= &d;
            }
        }
    }

    /// Block-diagonal sum, in order.
    pub fn block_diag(blocks: &[&CMatrix]) -> CMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Assembles a matrix from a grid of blocks with consistent shapes.
    pub fn from_blocks(grid: &[Vec<CMatrix>]) -> Result<CMatrix> {
        let heights: Vec<usize> = grid.iter().map(|row| row.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = grid.first().map_or(Vec::new(), |row| row.iter().map(|b| b.cols).collect());
        let mut out = CMatrix::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (i, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::ShapeMismatch("ragged block grid".into()));
            }
            let mut c0 = 0;
            for (j, b) in row.iter().enumerate() {
                if b.shape() != (heights[i], widths[j]) {
                    return Err(Error::ShapeMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[i], widths[j]
                    )));
                }
                out.set_block(r0, c0, b);
                c0 += b.cols;
            }
            r0 += heights[i];
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        let mut out = CMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    /// Polynomial `Σ coeffs[k]·Mᵏ` with real rational coefficients (Horner).
    pub fn eval_real_poly(&self, coeffs: &[Rational]) -> CMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = CMatrix::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = &acc * self;
            if !c.is_zero() {
                for k in 0..n {
                    acc[(k, k)].re += c;
                }
            }
        }
        acc
    }

    /// JSON value `[[["re","im"], ...], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| {
                    Value::Array(
                        self.row(r)
                            .iter()
                            .map(|x| {
                                let [re, im] = x.to_strings();
                                Value::Array(vec![Value::String(re), Value::String(im)])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Parses the JSON layout of [`CMatrix::to_json`]. `shape` pins the
    /// expected dimensions; without it the column count is read from the
    /// first row (an empty array is the 0×0 matrix).
    pub fn from_json(value: &Value, shape: Option<(usize, usize)>) -> Result<CMatrix> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut entries = Vec::new();
        let mut width = None;
        for (r, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("matrix row {r} is not an array")))?;
            if let Some(w) = width {
                if w != row.len() {
                    return Err(Error::Parse(format!("matrix row {r} has {} entries, expected {w}", row.len())));
                }
            }
            width = Some(row.len());
            for (c, entry) in row.iter().enumerate() {
                entries.push(parse_entry(entry).map_err(|e| Error::Parse(format!("entry ({r},{c}): {e}")))?);
            }
        }
        let n = rows.len();
        let m = match (shape, width) {
            (Some((_, cols)), _) => cols,
            (None, Some(w)) => w,
            (None, None) => 0,
        };
        if let Some((er, ec)) = shape {
            if er != n || (n > 0 && width != Some(ec)) {
                return Err(Error::ShapeMismatch(format!(
                    "matrix is {n}x{}, expected {er}x{ec}",
                    width.unwrap_or(ec)
                )));
            }
        }
        CMatrix::new(n, m, entries)
    }
}

fn parse_entry(entry: &Value) -> Result<GaussianRational> {
    let text = |v: &Value| -> Result<String> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() => Ok(n.to_string()),
            _ => Err(Error::Parse("expected a rational string".into())),
        }
    };
    match entry {
        Value::Array(pair) if pair.len() == 2 => {
            GaussianRational::from_strings(&text(&pair[0])?, &text(&pair[1])?)
        }
        _ => Err(Error::Parse("expected a [re, im] pair".into())),
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    /// Panics on a shape mismatch; use [`CMatrix::try_mul`] for checked products.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = CMatrix::from_int_pairs(&[&[(1, 1), (2, 0)], &[(0, -1), (3, 2)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, CMatrix::identity(2));
        assert_eq!(&inv * &m, CMatrix::identity(2));
    }

    #[test]
    fn singular_and_empty() {
        let m = CMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let e = CMatrix::zeros(0, 0);
        assert_eq!(e.inverse(), Some(CMatrix::zeros(0, 0)));
        assert!(e.is_invertible());
    }

    #[test]
    fn empty_products_have_right_shape() {
        let a = CMatrix::zeros(3, 0);
        let b = CMatrix::zeros(0, 2);
        assert_eq!(&a * &b, CMatrix::zeros(3, 2));
        assert_eq!((&b * &CMatrix::zeros(2, 4)).shape(), (0, 4));
    }

    #[test]
    fn kernel_and_column_space() {
        let m = CMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.shape(), (3, 2));
        assert!((&m * &k).is_zero());
        assert_eq!(m.column_space().shape(), (2, 1));
    }

    #[test]
    fn block_layouts() {
        let a = CMatrix::from_ints(&[&[1]]);
        let b = CMatrix::from_ints(&[&[2, 3], &[4, 5]]);
        let d = CMatrix::block_diag(&[&a, &b]);
        assert_eq!(d, CMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 3], &[0, 4, 5]]));
        assert_eq!(d.block(1, 1, 2, 2), b);
        let grid = CMatrix::from_blocks(&[vec![a.clone(), CMatrix::zeros(1, 2)], vec![CMatrix::zeros(2, 1), b.clone()]]).unwrap();
        assert_eq!(grid, d);
    }

    #[test]
    fn json_round_trip_and_shapes() {
        let m = CMatrix::from_int_pairs(&[&[(1, -2), (0, 0)]]);
        assert_eq!(CMatrix::from_json(&m.to_json(), None).unwrap(), m);
        let empty = CMatrix::zeros(0, 3);
        assert_eq!(CMatrix::from_json(&empty.to_json(), Some((0, 3))).unwrap(), empty);
        let tall = CMatrix::zeros(2, 0);
        assert_eq!(CMatrix::from_json(&tall.to_json(), Some((2, 0))).unwrap(), tall);
        assert!(CMatrix::from_json(&m.to_json(), Some((2, 2))).is_err());
    }

    #[test]
    fn polynomial_evaluation() {
        let n = CMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        // 3 + 2x + x^2 at a nilpotent N is 3I + 2N
        let p = n.eval_real_poly(&[crate::scalar::int(3), crate::scalar::int(2), crate::scalar::int(1)]);
        assert_eq!(p, CMatrix::from_ints(&[&[3, 2], &[0, 3]]));
    }
}

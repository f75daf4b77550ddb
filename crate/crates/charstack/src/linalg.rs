//! Dense exact linear algebra over the rationals.
//!
//! Matrices carry arbitrary-precision rational entries kept in lowest terms.
//! Elimination is plain Gauss-Jordan with a fixed pivot rule (leftmost
//! nonzero column, then topmost nonzero row), so every derived object —
//! ranks, kernels, images, echelon bases — is a deterministic function of
//! the input. [`Subspace`] stores a reduced column-echelon basis, which is a
//! canonical form: two subspaces are equal as sets iff their stored bases
//! are identical matrices.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Shorthand for the scalar type used everywhere in this crate.
pub type Q = BigRational;

/// Parse a rational from `"p/q"` or `"p"` form.
pub fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|e| Error::DimMismatch(format!("bad rational {s:?}: {e}")))
}

/// Integer-valued rational.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// A dense rows x cols matrix of rationals, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl QMatrix {
    /// Build from an explicit entry vector, row-major. Panics on a length
    /// mismatch: that is a programming error, not a data error.
    pub fn new(rows: usize, cols: usize, entries: Vec<Q>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        QMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Q::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        QMatrix::new(rows, cols, entries)
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Parse `"1 2; 3 4"` or `"1 1/2; 0 1"`; rows split on `;`.
    /// Intended for tests and fixtures.
    pub fn parse(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for row in s.split(';') {
            let row: Vec<Q> = row
                .split_whitespace()
                .map(parse_q)
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::DimMismatch("ragged matrix literal".into()));
        }
        Ok(QMatrix::from_rows(rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * s).collect(),
        )
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "mul shape");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(r, c)] += p;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector style product with a column vector given as a slice.
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc += &self[(r, c)] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: u32) -> QMatrix {
        assert!(self.is_square(), "pow needs a square matrix");
        let mut acc = QMatrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Stack horizontally: `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        QMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        QMatrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }

    /// Assemble a block matrix from a grid of blocks. Row heights and column
    /// widths are read off the first block of each row/column; shapes must
    /// be consistent.
    pub fn block(blocks: &[Vec<&QMatrix>]) -> QMatrix {
        assert!(!blocks.is_empty());
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        for (i, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), widths.len(), "ragged block grid");
            for (j, b) in row.iter().enumerate() {
                assert_eq!(b.rows, heights[i], "block height mismatch");
                assert_eq!(b.cols, widths[j], "block width mismatch");
            }
        }
        let total_r: usize = heights.iter().sum();
        let total_c: usize = widths.iter().sum();
        let mut out = QMatrix::zeros(total_r, total_c);
        let mut r0 = 0;
        for (i, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (j, b) in row.iter().enumerate() {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                    }
                }
                c0 += widths[j];
            }
            r0 += heights[i];
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<Q>>) -> QMatrix {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.len() == rows), "column length");
        QMatrix::from_fn(rows, n, |r, c| cols[c][r].clone())
    }

    /// Select a subset of columns, preserving order.
    pub fn select_columns(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivot rule: scan columns left to right; in each column take the
    /// topmost nonzero entry at or below the current row. No magnitude
    /// heuristics — the result is fully deterministic.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    m.row_sub_scaled(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space as a canonical subspace of the column-coordinate space.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            basis.push(v);
        }
        Subspace::from_span(self.cols, QMatrix::from_columns(self.cols, basis))
    }

    /// Column span as a canonical subspace of the row-coordinate space.
    pub fn image(&self) -> Subspace {
        Subspace::from_span(self.rows, self.clone())
    }

    /// One solution of `self * x = rhs` (columns independently), or `None`
    /// if any column is inconsistent. Free variables are set to zero, so the
    /// answer is deterministic.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape");
        let (r, pivots) = self.hstack(rhs).rref();
        // Any pivot inside the rhs block signals inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = r[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&QMatrix::identity(self.rows))?;
        if self.mul(&x) == QMatrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "det needs a square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            det *= &m[(col, col)].clone();
            let inv = m[(col, col)].recip();
            m.scale_row(col, &inv);
            for r in (col + 1)..n {
                if !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    m.row_sub_scaled(r, col, &f);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> Q {
        assert!(self.is_square(), "trace needs a square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Flatten to a single column, row-major.
    pub fn vectorize(&self) -> Vec<Q> {
        self.entries.clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Q) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.entries[i].is_zero() {
                self.entries[i] *= s;
            }
        }
    }

    /// row r -= f * row src
    fn row_sub_scaled(&mut self, r: usize, src: usize, f: &Q) {
        for c in 0..self.cols {
            let v = &self.entries[src * self.cols + c];
            if !v.is_zero() {
                let delta = v * f;
                self.entries[r * self.cols + c] -= delta;
            }
        }
    }

    /// Matrix of `self` composed with the inclusion of `s`, i.e. the domain
    /// re-expressed in the basis of `s`. Shape: `rows x dim s`.
    pub fn restrict_to(&self, s: &Subspace) -> Result<QMatrix> {
        if self.cols != s.ambient_dim() {
            return Err(Error::DimMismatch(format!(
                "restrict: operator acts on dim {}, subspace ambient dim {}",
                self.cols,
                s.ambient_dim()
            )));
        }
        Ok(self.mul(s.basis()))
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        debug_assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        debug_assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        rows.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(de)?;
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(D::Error::custom("ragged matrix"));
        }
        let mut entries = Vec::with_capacity(height * width);
        for row in rows {
            for cell in row {
                entries.push(Q::from_str(cell.trim()).map_err(D::Error::custom)?);
            }
        }
        Ok(QMatrix::new(height, width, entries))
    }
}

/// A linear subspace of Q^n held in canonical form.
///
/// The basis matrix is `ambient x dim`, its columns are the basis vectors,
/// and the transpose of the basis is in reduced row echelon form. This is a
/// normal form: equality of `Subspace` values is equality of subspaces.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl Subspace {
    /// Canonicalize the column span of `vectors` inside Q^ambient.
    pub fn from_span(ambient: usize, vectors: QMatrix) -> Subspace {
        assert_eq!(vectors.rows(), ambient, "span vectors live in Q^ambient");
        let (r, pivots) = vectors.transpose().rref();
        let basis = QMatrix::from_fn(ambient, pivots.len(), |row, col| r[(col, row)].clone());
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: QMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: QMatrix::identity(ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The canonical echelon basis, columns = vectors.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Rows holding the leading 1 of some basis column.
    pub fn pivot_rows(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in 0..self.basis.cols() {
            if let Some(r) = (0..self.ambient).find(|&r| !self.basis[(r, c)].is_zero()) {
                out.push(r);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let rhs = QMatrix::from_columns(self.ambient, vec![v.to_vec()]);
        self.basis.solve(&rhs).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.solve(&other.basis).is_some()
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let rhs = QMatrix::from_columns(self.ambient, vec![v.to_vec()]);
        self.basis.solve(&rhs).map(|x| x.column(0))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::from_span(
            self.ambient,
            self.basis.hstack(&other.basis),
        ))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        // x in both spans iff B1 a = B2 b; solve [B1 | -B2] (a,b)^T = 0 and
        // read the intersection off as B1 * a.
        let k1 = self.dim();
        let stacked = self.basis.hstack(&other.basis.neg());
        let ker = stacked.kernel();
        let mut vecs = Vec::new();
        for c in 0..ker.dim() {
            let col = ker.basis().column(c);
            let a = &col[..k1];
            vecs.push(self.basis.mul_vec(a));
        }
        Ok(Subspace::from_span(
            self.ambient,
            QMatrix::from_columns(self.ambient, vecs),
        ))
    }

    /// The canonical complement spanned by standard basis vectors away from
    /// the pivot rows. `self (+) standard_complement(self) = Q^ambient`.
    pub fn standard_complement(&self) -> Subspace {
        let pivots = self.pivot_rows();
        let mut vecs = Vec::new();
        for r in 0..self.ambient {
            if !pivots.contains(&r) {
                let mut v = vec![Q::zero(); self.ambient];
                v[r] = Q::one();
                vecs.push(v);
            }
        }
        Subspace::from_span(self.ambient, QMatrix::from_columns(self.ambient, vecs))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of Q^{} {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Indices of `candidates` columns that enlarge the span of `base`.
/// Scans left to right, so the choice is deterministic.
pub fn extending_columns(base: &QMatrix, candidates: &QMatrix) -> Vec<usize> {
    assert_eq!(base.rows(), candidates.rows(), "ambient mismatch");
    let mut current = base.clone();
    let mut rank = current.rank();
    let mut chosen = Vec::new();
    for c in 0..candidates.cols() {
        let cand = candidates.select_columns(&[c]);
        let trial = current.hstack(&cand);
        let r = trial.rank();
        if r > rank {
            rank = r;
            current = trial;
            chosen.push(c);
        }
    }
    chosen
}

/// True when the square matrix is symmetric.
pub fn is_symmetric(m: &QMatrix) -> bool {
    m.is_square() && *m == m.transpose()
}

/// True when the square matrix is antisymmetric.
pub fn is_antisymmetric(m: &QMatrix) -> bool {
    m.is_square() && *m == m.transpose().neg()
}

/// Absolute value helper used by tests to keep entries small-ish.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> QMatrix {
        QMatrix::parse(s).unwrap()
    }

    #[test]
    fn parse_and_reduce_rationals() {
        assert_eq!(parse_q("4/6").unwrap(), q(2, 3));
        assert_eq!(parse_q("-3").unwrap(), q_int(-3));
        assert_eq!(parse_q("7/-2").unwrap_or(q(-7, 2)), q(-7, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q_int(5).to_string(), "5");
    }

    #[test]
    fn rref_pivot_rule_is_leftmost_topmost() {
        // Column 0 is zero; the first pivot must land in column 1 using the
        // topmost nonzero row, which is row 0.
        let a = m("0 2 4; 0 1 3; 0 0 0");
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![1, 2]);
        assert_eq!(r, m("0 1 0; 0 0 1; 0 0 0"));
    }

    #[test]
    fn rank_kernel_image_of_upper_triangular_defect() {
        // Conjugation defect of the standard 2x2 shear acting on the
        // three-dimensional space of trace-zero matrices, basis (e, h, f):
        // e -> 0, h -> 2e, f -> e - h.
        let u = m("0 2 1; 0 0 -1; 0 0 0");
        assert_eq!(u.rank(), 2);
        let ker = u.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&[q_int(1), q_int(0), q_int(0)]));
        let im = u.image();
        assert_eq!(im.dim(), 2);
        // span(e, h): echelon basis must be exactly the first two standard
        // vectors.
        assert_eq!(im, Subspace::from_span(3, m("1 0; 0 1; 0 0")));
    }

    #[test]
    fn kernel_members_are_annihilated() {
        let a = m("1 2 3; 4 5 6; 7 8 9");
        let ker = a.kernel();
        assert_eq!(ker.dim(), 1);
        for c in 0..ker.dim() {
            let v = ker.basis().column(c);
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
        assert_eq!(a.rank() + ker.dim(), 3);
    }

    #[test]
    fn subspace_canonical_form_is_representation_independent() {
        let s1 = Subspace::from_span(3, m("1 1; 1 0; 0 1"));
        // Same plane, different spanning set (second = sums/differences).
        let s2 = Subspace::from_span(3, m("2 0 1; 1 1 0; 1 -1 1"));
        assert_eq!(s1, s2);
        assert_eq!(s1.basis(), s2.basis());
    }

    #[test]
    fn intersect_and_sum_dimensions() {
        let a = Subspace::from_span(3, m("1 0; 0 1; 0 0"));
        let b = Subspace::from_span(3, m("0 0; 1 0; 0 1"));
        let cap = a.intersect(&b).unwrap();
        let sum = a.sum(&b).unwrap();
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&[q_int(0), q_int(1), q_int(0)]));
        assert_eq!(sum.dim(), 3);
        // dim(A) + dim(B) = dim(A cap B) + dim(A + B)
        assert_eq!(a.dim() + b.dim(), cap.dim() + sum.dim());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch(2, 3))));
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn restriction_to_kernel() {
        // v restricted to ker(u) for the shear defect: ker u = span(e),
        // u(e) = 0, so the restriction is the 3x1 zero map.
        let u = m("0 2 1; 0 0 -1; 0 0 0");
        let ker = u.kernel();
        let r = u.restrict_to(&ker).unwrap();
        assert_eq!(r.rows(), 3);
        assert_eq!(r.cols(), 1);
        assert!(r.is_zero());
        // Shape error surfaces as DimMismatch.
        let bad = Subspace::full(2);
        assert!(u.restrict_to(&bad).is_err());
    }

    #[test]
    fn solve_finds_particular_solutions_and_detects_inconsistency() {
        let a = m("1 2; 2 4");
        let consistent = m("3; 6");
        let x = a.solve(&consistent).unwrap();
        assert_eq!(a.mul(&x), consistent);
        let inconsistent = m("3; 7");
        assert!(a.solve(&inconsistent).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let a = m("2 1; 1 1");
        assert_eq!(a.det(), q_int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert_eq!(inv.mul(&a), QMatrix::identity(2));
        let sing = m("1 2; 2 4");
        assert_eq!(sing.det(), q_int(0));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn standard_complement_fills_out_the_space() {
        let s = Subspace::from_span(4, m("1 0; 0 1; 1 1; 0 0"));
        let c = s.standard_complement();
        assert_eq!(s.dim() + c.dim(), 4);
        assert_eq!(s.sum(&c).unwrap(), Subspace::full(4));
        assert_eq!(s.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn extending_columns_is_greedy_left_to_right() {
        let base = m("1; 0; 0");
        let cands = m("2 0 1; 0 0 1; 0 0 0");
        // col 0 is dependent on base, col 1 is zero, col 2 extends.
        assert_eq!(extending_columns(&base, &cands), vec![2]);
    }

    #[test]
    fn serde_round_trip_matches_string_format() {
        let a = m("1 1/2; 0 -3");
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[["1","1/2"],["0","-3"]]"#);
        let back: QMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_q() -> impl Strategy<Value = Q> {
            (-3i64..=3, 1i64..=3).prop_map(|(n, d)| q(n, d))
        }

        fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
            proptest::collection::vec(small_q(), rows * cols)
                .prop_map(move |v| QMatrix::new(rows, cols, v))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn rank_nullity(a in small_matrix(4, 5)) {
                prop_assert_eq!(a.rank() + a.kernel().dim(), 5);
                prop_assert_eq!(a.image().dim(), a.rank());
            }

            #[test]
            fn span_is_invariant_under_column_operations(a in small_matrix(4, 3)) {
                let s1 = Subspace::from_span(4, a.clone());
                // Mix columns by an invertible 3x3 change of basis.
                let t = QMatrix::parse("1 1 0; 0 1 1; 0 0 1").unwrap();
                let s2 = Subspace::from_span(4, a.mul(&t));
                prop_assert_eq!(s1, s2);
            }

            #[test]
            fn modular_law_dimensions(a in small_matrix(4, 2), b in small_matrix(4, 2)) {
                let sa = Subspace::from_span(4, a);
                let sb = Subspace::from_span(4, b);
                let cap = sa.intersect(&sb).unwrap();
                let sum = sa.sum(&sb).unwrap();
                prop_assert_eq!(sa.dim() + sb.dim(), cap.dim() + sum.dim());
                prop_assert!(sum.contains_subspace(&sa));
                prop_assert!(sa.contains_subspace(&cap));
            }

            #[test]
            fn solve_agrees_with_mul(a in small_matrix(3, 3), x in small_matrix(3, 2)) {
                let rhs = a.mul(&x);
                let sol = a.solve(&rhs).expect("constructed system is consistent");
                prop_assert_eq!(a.mul(&sol), rhs);
            }
        }
    }
}

//! Dense matrices over a prime field `F_p` with exact Gaussian elimination,
//! plus Jordan types and Jordan bases of nilpotent matrices.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const DEFAULT_PRIME: u64 = 32003;

/// A prime modulus. Residues are kept in `[0, p)`; `p < 2^32` so products
/// fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, x: u64) -> u64 {
        debug_assert!(!x.is_multiple_of(self.p), "inverse of zero");
        let (mut base, mut exp, mut acc) = (x % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> Self {
        f.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense `rows x cols` matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    p: u64,
    entries: Vec<u64>,
}

impl TryFrom<MatrixRepr> for ExactMatrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        ExactMatrix::new(FieldSpec::new(r.p)?, r.rows, r.cols, r.entries)
    }
}

impl From<ExactMatrix> for MatrixRepr {
    fn from(m: ExactMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            p: m.field.p,
            entries: m.entries,
        }
    }
}

impl ExactMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&x| x >= field.p) {
            return Err(Error::InvalidMatrix(format!(
                "entry {bad} not reduced mod {}",
                field.p
            )));
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from signed integer rows, reducing mod `p`.
    ///
    /// Panics on ragged input.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| field.reduce(x)).collect(),
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c) % field.p);
            }
        }
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |r, c| u64::from(r == c))
    }

    /// The `n x k` matrix `[I_k; 0]` embedding `k^k` as the first coordinates.
    pub fn inclusion(field: FieldSpec, n: usize, k: usize) -> Self {
        Self::from_fn(field, n, k, |r, c| u64::from(r == c))
    }

    pub fn random<R: Rng + ?Sized>(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        let entries = (0..rows * cols).map(|_| field.random(rng)).collect();
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Rejection-samples an invertible `n x n` matrix.
    pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.entries[r * self.cols + c] = x % self.field.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<u64>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// The block of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.field, r1 - r0, c1 - c0, |r, c| {
            self.get(r0 + r, c0 + c)
        })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let row = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x == 0 {
                    continue;
                }
                for (c, slot) in row.iter_mut().enumerate() {
                    *slot = f.add(*slot, f.mul(x, other.get(k, c)));
                }
            }
        }
        Ok(ExactMatrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        g: impl Fn(u64, u64) -> u64,
    ) -> Result<Self> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| g(x, y))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, "add", |x, y| f.add(x, y))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, "sub", |x, y| f.sub(x, y))
    }

    /// Concatenates matrices with equal row counts side by side.
    pub fn hcat(parts: &[&Self]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidMatrix("hcat of nothing".into()))?;
        for m in &parts[1..] {
            first.check_field(m)?;
            if m.rows != first.rows {
                return Err(Error::ShapeMismatch {
                    op: "hcat",
                    left: first.shape(),
                    right: m.shape(),
                });
            }
        }
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(first.field, first.rows, cols);
        let mut offset = 0;
        for m in parts {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.entries[r * cols + offset + c] = m.get(r, c);
                }
            }
            offset += m.cols;
        }
        Ok(out)
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: self.shape(),
            });
        }
        Ok(())
    }

    pub fn pow(&self, mut k: u32) -> Result<Self> {
        self.require_square("pow")?;
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pr, row);
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let x = m.get(row, c);
                m.entries[row * m.cols + c] = f.mul(x, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.entries[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as the columns of a `cols x (cols - rank)`
    /// matrix.
    pub fn kernel_basis(&self) -> Self {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.entries[pc * free.len() + k] = f.neg(r.get(i, fc));
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let aug = Self::hcat(&[self, &Self::identity(self.field, n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::NotInvertible);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    /// One solution `Y` of `self * Y = rhs`, with free variables set to zero.
    pub fn solve_right(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let aug = Self::hcat(&[self, rhs])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut y = Self::zeros(self.field, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                y.set(pc, c, r.get(i, self.cols + c));
            }
        }
        Ok(y)
    }

    /// A solution `X` of `X * self = rhs`: a particular solution plus a
    /// uniformly random element of the left kernel in each row. The result
    /// is re-multiplied and checked.
    pub fn solve<R: Rng + ?Sized>(&self, rhs: &Self, rng: &mut R) -> Result<Self> {
        self.check_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mt = self.transpose();
        let particular = mt.solve_right(&rhs.transpose())?;
        let kernel = mt.kernel_basis();
        let coeffs = Self::random(self.field, kernel.cols, rhs.rows, rng);
        let y = particular.add(&kernel.mul(&coeffs)?)?;
        let x = y.transpose();
        if x.mul(self)? != *rhs {
            return Err(Error::Internal(
                "solve: X*M != C after re-multiplication".into(),
            ));
        }
        Ok(x)
    }

    /// True iff the column spans of `self` and `other` coincide.
    pub fn same_column_space(&self, other: &Self) -> Result<bool> {
        let r = Self::hcat(&[self, other])?.rank();
        Ok(r == self.rank() && r == other.rank())
    }

    /// True iff the column span of `other` lies in that of `self`.
    pub fn column_space_contains(&self, other: &Self) -> Result<bool> {
        Ok(Self::hcat(&[self, other])?.rank() == self.rank())
    }

    /// `N^n = 0`, checked by repeated squaring.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_square("is_nilpotent")?;
        let mut m = self.clone();
        let mut exp = 1usize;
        while exp < self.rows {
            m = m.mul(&m)?;
            exp *= 2;
        }
        Ok(m.is_zero())
    }

    /// Block-diagonal nilpotent matrix with one Jordan block per part:
    /// basis vectors are the boxes of the Young diagram, first-column boxes
    /// map to zero and every other box maps to its left neighbour.
    pub fn canonical_nilpotent(eta: &Partition, field: FieldSpec) -> Self {
        let n = eta.weight();
        let mut m = Self::zeros(field, n, n);
        let mut start = 0;
        for &len in eta.parts() {
            for j in 1..len {
                m.set(start + j - 1, start + j, 1);
            }
            start += len;
        }
        m
    }

    /// Jordan type of a nilpotent matrix from the ranks of its powers:
    /// `dim ker N^j - dim ker N^(j-1)` counts the blocks of size at least `j`.
    pub fn jordan_type(&self) -> Result<Partition> {
        if !self.is_nilpotent()? {
            return Err(Error::NotNilpotent);
        }
        let n = self.rows;
        let mut counts = Vec::new();
        let mut prev_kernel = 0;
        let mut power = Self::identity(self.field, n);
        while prev_kernel < n {
            power = power.mul(self)?;
            let kernel = n - power.rank();
            counts.push(kernel - prev_kernel);
            prev_kernel = kernel;
        }
        Ok(Partition::new(counts)
            .map_err(|e| Error::Internal(format!("kernel growth not decreasing: {e}")))?
            .dual())
    }

    /// An invertible `g` with `g^-1 * N * g = canonical_nilpotent(jordan_type(N))`.
    ///
    /// Chains are chosen top-down: at height `k` new generators extend
    /// `ker N^(k-1)` plus the images of the longer chains to `ker N^k`.
    pub fn jordan_basis(&self) -> Result<Self> {
        let eta = self.jordan_type()?;
        let n = self.rows;
        let f = self.field;
        let height = eta.largest();

        let mut kernels = Vec::with_capacity(height + 1);
        let mut power = Self::identity(f, n);
        kernels.push(Self::zeros(f, n, 0));
        for _ in 0..height {
            power = power.mul(self)?;
            kernels.push(power.kernel_basis());
        }

        let apply = |v: &[u64], times: usize| -> Vec<u64> {
            let mut v = v.to_vec();
            for _ in 0..times {
                v = (0..n)
                    .map(|r| (0..n).fold(0, |acc, c| f.add(acc, f.mul(self.get(r, c), v[c]))))
                    .collect();
            }
            v
        };

        let mut generators: Vec<(Vec<u64>, usize)> = Vec::new();
        for k in (1..=height).rev() {
            let mut span = Span::new(f, n);
            for c in 0..kernels[k - 1].cols {
                span.insert(kernels[k - 1].column(c));
            }
            for (g, len) in &generators {
                span.insert(apply(g, len - k));
            }
            for c in 0..kernels[k].cols {
                let v = kernels[k].column(c);
                if span.insert(v.clone()) {
                    generators.push((v, k));
                }
            }
        }

        let mut columns = Vec::with_capacity(n);
        for (g, len) in &generators {
            for j in (0..*len).rev() {
                columns.push(apply(g, j));
            }
        }
        let basis = Self::from_columns(f, n, &columns);
        let canonical = Self::canonical_nilpotent(&eta, f);
        if basis.rank() != n || self.mul(&basis)? != basis.mul(&canonical)? {
            return Err(Error::Internal(
                "jordan_basis does not conjugate to canonical form".into(),
            ));
        }
        Ok(basis)
    }

    /// An invertible `g` with `g * other * g^-1 = self`, for nilpotent
    /// matrices of equal Jordan type.
    pub fn conjugator(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (t1, t2) = (self.jordan_type()?, other.jordan_type()?);
        if t1 != t2 {
            return Err(Error::JordanTypeMismatch {
                left: t1.into_parts(),
                right: t2.into_parts(),
            });
        }
        let g = self
            .jordan_basis()?
            .mul(&other.jordan_basis()?.inverse()?)?;
        if g.mul(other)? != self.mul(&g)? {
            return Err(Error::Internal("conjugator identity fails".into()));
        }
        Ok(g)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over F_{} [",
            self.rows, self.cols, self.field.p
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained span of vectors in `F_p^n`, kept in echelon form.
struct Span {
    field: FieldSpec,
    // (pivot index, vector normalized to 1 at the pivot)
    basis: Vec<(usize, Vec<u64>)>,
    dim: usize,
}

impl Span {
    fn new(field: FieldSpec, dim: usize) -> Self {
        Span {
            field,
            basis: Vec::new(),
            dim,
        }
    }

    /// Adds `v` if it is independent of the span so far.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        for (pivot, b) in &self.basis {
            let x = v[*pivot];
            if x != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = f.sub(*vi, f.mul(x, *bi));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]);
        for x in &mut v {
            *x = f.mul(*x, inv);
        }
        self.basis.push((pivot, v));
        true
    }
}

//! Dense exact matrices over a [`Field`](crate::field::Field), subspaces, and
//! projective-equivalence searches.

use std::collections::HashMap;
use std::fmt;

use crate::error::{precondition, Error, Result};
use crate::field::{Field, FieldRef};
use crate::limits::limits;

/// Dense row-major matrix with optional column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        if let Some(l) = &self.labels {
            writeln!(f, "  [{}]", l.join(" "))?;
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&a| self.field.display(a)).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Projective normal form: scale so the first nonzero entry is 1.
/// Returns the normalized vector and the scalar `c` with `v = c·normalized`,
/// or `None` for the zero vector.
pub fn normalize(field: &Field, v: &[u32]) -> Option<(Vec<u32>, u32)> {
    let pos = v.iter().position(|&a| a != 0)?;
    let c = v[pos];
    let ci = field.inv(c);
    Some((v.iter().map(|&a| field.mul(a, ci)).collect(), c))
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&a| a == 0)
}

/// Incremental echelon basis over a field; vectors kept with pivot entry 1.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    vecs: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis {
            vecs: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, field: &Field, v: &mut [u32]) {
        for (b, &p) in self.vecs.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    if y != 0 {
                        *x = field.sub(*x, field.mul(c, y));
                    }
                }
            }
        }
    }

    pub fn contains(&self, field: &Field, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        is_zero(&w)
    }

    /// Insert `v`; returns true when the rank grew.
    pub fn insert(&mut self, field: &Field, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        match w.iter().position(|&a| a != 0) {
            None => false,
            Some(p) => {
                let ci = field.inv(w[p]);
                for x in w.iter_mut() {
                    *x = field.mul(*x, ci);
                }
                self.vecs.push(w);
                self.pivots.push(p);
                true
            }
        }
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl Mat {
    pub fn new(field: &FieldRef, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &a in &data {
            field.check(a)?;
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
            labels: None,
        })
    }

    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
            labels: None,
        }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &FieldRef, rows: &[Vec<u32>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::new(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: &FieldRef, rows: usize, columns: &[Vec<u32>]) -> Result<Mat> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, &a) in c.iter().enumerate() {
                field.check(a)?;
                data[i * cols + j] = a;
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
            labels: None,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, a: u32) {
        self.data[i * self.cols + j] = a;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Labels, falling back to `e1, e2, …`.
    pub fn labels_or_default(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => l.clone(),
            None => (1..=self.cols).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Mat> {
        if labels.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                self.cols
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Mat {
        self.labels = None;
        self
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|x| x == label))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let cols = idx.len();
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j));
            }
        }
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
            labels: self
                .labels
                .as_ref()
                .map(|l| idx.iter().map(|&j| l[j].clone()).collect()),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        }
    }

    /// Side-by-side concatenation; labels are kept when both sides have them.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field || self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        let m = Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
            labels: None,
        };
        match labels {
            Some(l) => m.with_labels(l),
            None => Ok(m),
        }
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        })
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Mat {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
            labels: None,
        }
    }

    /// Matrix product; the result keeps `other`'s column labels.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field || self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut data = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        data[idx] = f.add(data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(Mat {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
            labels: other.labels.clone(),
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    /// Canonical reduced row-echelon form, pivoting on the leftmost nonzero.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let y = m.get(r, j);
                    if y != 0 {
                        let x = m.get(i, j);
                        m.set(i, j, f.sub(x, f.mul(factor, y)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            mat: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut b = EchelonBasis::new();
        for j in 0..self.cols {
            b.insert(&self.field, &self.column(j));
            if b.len() == self.rows {
                break;
            }
        }
        b.len()
    }

    pub fn rank_of_columns(&self, idx: &[usize]) -> usize {
        let mut b = EchelonBasis::new();
        for &j in idx {
            b.insert(&self.field, &self.column(j));
            if b.len() == self.rows {
                break;
            }
        }
        b.len()
    }

    /// Row basis: the nonzero rows of the RREF.
    pub fn row_basis(&self) -> Mat {
        let r = self.rref();
        let idx: Vec<usize> = (0..r.rank).collect();
        let mut m = r.mat.select_rows(&idx);
        m.labels = self.labels.clone();
        m
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.clone().without_labels().hstack(&Mat::identity(&self.field, n))?;
        let r = aug.rref();
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return Err(Error::Singular);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(r.mat.select_columns(&idx).without_labels())
    }

    /// Right kernel {x : M·x = 0}.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut vecs = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut x = vec![0u32; self.cols];
            x[fc] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                x[pc] = f.neg(r.mat.get(i, fc));
            }
            vecs.push(x);
        }
        Subspace::span(f, self.cols, &vecs)
    }

    /// Left kernel {y : y·M = 0}.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Map every entry through `g`, landing in `field`.
    pub fn map_entries(&self, field: &FieldRef, g: impl Fn(u32) -> u32) -> Result<Mat> {
        let data: Vec<u32> = self.data.iter().map(|&a| g(a)).collect();
        let mut m = Mat::new(field, self.rows, self.cols, data)?;
        m.labels = self.labels.clone();
        Ok(m)
    }

    /// All entries lie in the subfield of order `q`.
    pub fn in_subfield(&self, q: u32) -> bool {
        self.data.iter().all(|&a| self.field.in_subfield(a, q))
    }

    /// Scale each column by the matching scalar.
    pub fn scale_columns(&self, scalars: &[u32]) -> Result<Mat> {
        if scalars.len() != self.cols {
            return Err(Error::DimensionMismatch("one scalar per column".into()));
        }
        if let Some(j) = scalars.iter().position(|&c| c == 0) {
            return Err(Error::ZeroScalar(j));
        }
        let mut m = self.clone();
        for i in 0..m.rows {
            for (j, &c) in scalars.iter().enumerate() {
                let x = m.get(i, j);
                m.set(i, j, self.field.mul(x, c));
            }
        }
        Ok(m)
    }
}

/// Column scaling with an optional restriction to the GF(q) subfield of a
/// quadratic extension.
pub fn scale_columns(m: &Mat, scalars: &[u32], subfield_only: bool) -> Result<Mat> {
    if subfield_only {
        let (base, _, _) = m.field().extension_of().ok_or(Error::NotExtension)?;
        let q = base.order();
        if let Some(j) = scalars.iter().position(|&c| c >= q) {
            return Err(Error::NotInSubfield(format!("scalar for column {j}")));
        }
    }
    m.scale_columns(scalars)
}

/// Apply a GF(q) row transform to a matrix over GF(q²). `t` may be over the
/// base field or over the extension with subfield entries.
pub fn subfield_row_transform(m: &Mat, t: &Mat) -> Result<Mat> {
    let (base, _, _) = m.field().extension_of().ok_or(Error::NotExtension)?;
    let q = base.order();
    let t_ext = if t.field() == base {
        t.map_entries(m.field(), |a| a)?
    } else if t.field() == m.field() {
        if !t.in_subfield(q) {
            return Err(Error::NotInSubfield("row transform".into()));
        }
        t.clone()
    } else {
        return Err(Error::FieldMismatch);
    };
    if t_ext.rows() != t_ext.cols() || t_ext.cols() != m.rows() {
        return Err(Error::DimensionMismatch("row transform shape".into()));
    }
    t_ext.inverse()?;
    t_ext.mul(m)
}

/// A subspace stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Intersect,
    Sum,
    Contains,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Space(Subspace),
    Bool(bool),
}

impl Subspace {
    pub fn span(field: &FieldRef, ambient: usize, vectors: &[Vec<u32>]) -> Subspace {
        let m = Mat::from_rows(field, vectors).unwrap_or_else(|_| Mat::zeros(field, 0, ambient));
        let m = if vectors.is_empty() {
            Mat::zeros(field, 0, ambient)
        } else {
            m
        };
        Subspace {
            ambient,
            basis: m.row_basis().without_labels(),
        }
    }

    pub fn row_space(m: &Mat) -> Subspace {
        Subspace {
            ambient: m.cols(),
            basis: m.row_basis().without_labels(),
        }
    }

    pub fn zero(field: &FieldRef, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: &FieldRef, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
        }
    }

    pub fn field(&self) -> &FieldRef {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let f = self.field().clone();
        let mut w = v.to_vec();
        let pivots = self.pivots();
        for (i, &p) in pivots.iter().enumerate() {
            let c = w[p];
            if c != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    let y = self.basis.get(i, j);
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        is_zero(&w)
    }

    fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|&a| a != 0).unwrap())
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut v = self.vectors();
        v.extend(other.vectors());
        Ok(Subspace::span(self.field(), self.ambient, &v))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    /// Intersection as the kernel of the stacked complements' bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut constraints = self.perp().vectors();
        constraints.extend(other.perp().vectors());
        if constraints.is_empty() {
            return Ok(Subspace::full(self.field(), self.ambient));
        }
        let c = Mat::from_rows(self.field(), &constraints)?;
        Ok(c.kernel())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn apply(&self, op: SubspaceOp, other: &Subspace) -> Result<SubspaceOpResult> {
        Ok(match op {
            SubspaceOp::Intersect => SubspaceOpResult::Space(self.intersect(other)?),
            SubspaceOp::Sum => SubspaceOpResult::Space(self.sum(other)?),
            SubspaceOp::Contains => SubspaceOpResult::Bool(self.contains(other)?),
            SubspaceOp::Equals => {
                self.check_compatible(other)?;
                SubspaceOpResult::Bool(self == other)
            }
        })
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, t: &Mat) -> Result<Subspace> {
        let vs: Vec<Vec<u32>> = self.vectors().iter().map(|v| t.mul_vec(v)).collect();
        if t.cols() != self.ambient {
            return Err(Error::DimensionMismatch("image".into()));
        }
        Ok(Subspace::span(self.field(), t.rows(), &vs))
    }
}

/// Witness for `T·A·D = B`: an invertible `T` and the diagonal of `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveWitness {
    pub t: Mat,
    pub d: Vec<u32>,
}

impl ProjectiveWitness {
    pub fn check(&self, a: &Mat, b: &Mat) -> bool {
        let Ok(ta) = self.t.mul(&a.clone().without_labels()) else {
            return false;
        };
        let Ok(tad) = ta.scale_columns(&self.d) else {
            return false;
        };
        self.t.inverse().is_ok() && tad.data() == b.data()
    }
}

fn subfield_order(field: &Field, subfield_only: bool) -> Result<Option<u32>> {
    if !subfield_only {
        return Ok(None);
    }
    let (base, _, _) = field.extension_of().ok_or(Error::NotExtension)?;
    Ok(Some(base.order()))
}

fn scalar_choices(field: &Field, sub: Option<u32>) -> Vec<u32> {
    (1..field.order())
        .filter(|&a| sub.is_none_or(|q| field.in_subfield(a, q)))
        .collect()
}

/// Coordinates of every column of `m` in the basis `m[basis]`.
fn coordinates(m: &Mat, basis: &[usize]) -> Result<Mat> {
    let inv = m.select_columns(basis).without_labels().inverse()?;
    inv.mul(&m.clone().without_labels())
}

/// Decide whether `T·A·D = B` for some invertible `T` and nonzero diagonal
/// `D` (both over the GF(q) subfield when `subfield_only`). Searches the
/// scalings of a fixed column basis; the first witness in code order wins.
pub fn projectively_equivalent(a: &Mat, b: &Mat, subfield_only: bool) -> Result<Option<ProjectiveWitness>> {
    if a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("shapes differ".into()));
    }
    let field = a.field().clone();
    let lim = limits();
    if a.rows() > 6 || field.order() > lim.max_field {
        return Err(Error::SizeBound(format!(
            "projective equivalence is limited to 6 rows over fields of order ≤ {}",
            lim.max_field
        )));
    }
    let r = a.rows();
    let ra = a.rref();
    if ra.rank != r {
        return precondition("A must have full row rank");
    }
    let beta = ra.pivots.clone();
    let Ok(bc) = coordinates(b, &beta) else {
        return Ok(None);
    };
    let ac = coordinates(a, &beta)?;
    let sub = subfield_order(&field, subfield_only)?;
    let choices = scalar_choices(&field, sub);

    // Columns grouped by the deepest basis coordinate they involve, so each
    // is checked as soon as its scalars are all fixed.
    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); r];
    for j in 0..a.cols() {
        for i in 0..r {
            if (ac.get(i, j) == 0) != (bc.get(i, j) == 0) {
                return Ok(None);
            }
        }
        if let Some(deepest) = (0..r).rev().find(|&i| ac.get(i, j) != 0) {
            by_depth[deepest].push(j);
        }
    }

    let bbeta = b.select_columns(&beta).without_labels();
    let ainv = a.select_columns(&beta).without_labels().inverse()?;
    let search = EquivalenceSearch {
        field: &field,
        bbeta: &bbeta,
        ainv: &ainv,
        ac: &ac,
        bc: &bc,
        by_depth: &by_depth,
        choices: &choices,
        sub,
    };
    let mut e = vec![1u32];
    if !search.consistent(&e, 0) {
        return Ok(None);
    }
    let Some(e) = search.extend(&mut e) else {
        return Ok(None);
    };
    let d: Vec<u32> = (0..a.cols())
        .map(|j| search.column_scalar(&e, j).expect("checked during search"))
        .collect();
    let w = ProjectiveWitness {
        t: search.transform(&e),
        d,
    };
    if !w.check(a, b) || sub.is_some_and(|q| !w.t.in_subfield(q)) {
        return Err(Error::Internal("projective witness failed its recheck".into()));
    }
    Ok(Some(w))
}

struct EquivalenceSearch<'a> {
    field: &'a Field,
    bbeta: &'a Mat,
    ainv: &'a Mat,
    ac: &'a Mat,
    bc: &'a Mat,
    by_depth: &'a [Vec<usize>],
    choices: &'a [u32],
    sub: Option<u32>,
}

impl EquivalenceSearch<'_> {
    /// In basis coordinates `Bc[i][j] = e_i · Ac[i][j] · d_j`; returns `d_j`.
    fn column_scalar(&self, e: &[u32], j: usize) -> Option<u32> {
        let f = self.field;
        let mut d: Option<u32> = None;
        for (i, &ei) in e.iter().enumerate() {
            let x = self.ac.get(i, j);
            if x == 0 {
                continue;
            }
            let want = f.div(self.bc.get(i, j), f.mul(ei, x));
            match d {
                None => d = Some(want),
                Some(prev) if prev != want => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(1))
    }

    fn consistent(&self, e: &[u32], depth: usize) -> bool {
        self.by_depth[depth].iter().all(|&j| {
            self.column_scalar(e, j)
                .is_some_and(|d| self.sub.is_none_or(|q| self.field.in_subfield(d, q)))
        })
    }

    /// `T = B[β]·diag(e)·A[β]^{-1}`, since `d_{β_i} = 1/e_i`.
    fn transform(&self, e: &[u32]) -> Mat {
        self.bbeta
            .scale_columns(e)
            .and_then(|m| m.mul(self.ainv))
            .expect("shapes fixed by construction")
    }

    fn extend(&self, e: &mut Vec<u32>) -> Option<Vec<u32>> {
        let depth = e.len();
        if depth == self.by_depth.len() {
            let ok = self.sub.is_none_or(|q| self.transform(e).in_subfield(q));
            return ok.then(|| e.clone());
        }
        for &c in self.choices {
            e.push(c);
            if self.consistent(e, depth) {
                if let Some(found) = self.extend(e) {
                    return Some(found);
                }
            }
            e.pop();
        }
        None
    }
}

/// Witness for a relabelled projective equivalence: column `j` of `A` maps
/// to column `perm[j]` of `B` with `T·A_j·d_j = B_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub perm: Vec<usize>,
    pub t: Mat,
    pub d: Vec<u32>,
}

impl IsomorphismWitness {
    pub fn check(&self, a: &Mat, b: &Mat) -> bool {
        if self.t.inverse().is_err() || self.perm.len() != a.cols() || a.cols() != b.cols() {
            return false;
        }
        let mut used = vec![false; b.cols()];
        for j in 0..a.cols() {
            let p = self.perm[j];
            if p >= b.cols() || used[p] || self.d[j] == 0 {
                return false;
            }
            used[p] = true;
            let img: Vec<u32> = self
                .t
                .mul_vec(&a.column(j))
                .iter()
                .map(|&x| a.field().mul(x, self.d[j]))
                .collect();
            if img != b.column(p) {
                return false;
            }
        }
        true
    }
}

/// Search for a column bijection making `A` and `B` projectively equivalent.
/// Both must have full row rank and the same shape.
pub fn projective_isomorphism(a: &Mat, b: &Mat, subfield_only: bool) -> Result<Option<IsomorphismWitness>> {
    if a.field() != b.field() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("shapes differ".into()));
    }
    if a.cols() != b.cols() {
        return Ok(None);
    }
    let field = a.field().clone();
    let r = a.rows();
    let ra = a.rref();
    if ra.rank != r {
        return precondition("A must have full row rank");
    }
    if b.rank() != r {
        return Ok(None);
    }
    let sub = subfield_order(&field, subfield_only)?;
    let choices = scalar_choices(&field, sub);
    let n = a.cols();
    let mut work = (choices.len() as f64).powi(r as i32 - 1);
    for i in 0..r {
        work *= (n - i) as f64;
    }
    if work * n as f64 > 1e9 || field.order() > limits().max_field {
        return Err(Error::SizeBound("projective isomorphism search too large".into()));
    }
    let beta = ra.pivots.clone();
    let ainv = a.select_columns(&beta).without_labels().inverse()?;
    let acols: Vec<Vec<u32>> = ainv.mul(&a.clone().without_labels())?.columns();

    // Normalized column → (index, leading entry) for every column of B.
    let mut classes: HashMap<Vec<u32>, Vec<(usize, u32)>> = HashMap::new();
    let mut b_loops = Vec::new();
    for j in 0..n {
        match normalize(&field, &b.column(j)) {
            Some((v, lead)) => classes.entry(v).or_default().push((j, lead)),
            None => b_loops.push(j),
        }
    }
    let matcher = ColumnMatcher {
        field: &field,
        acols: &acols,
        classes: &classes,
        b_loops: &b_loops,
    };

    let mut found: Option<(Vec<usize>, Vec<u32>, Mat)> = None;
    let mut images = vec![0usize; r];
    choose_images(b, &field, &mut images, 0, &EchelonBasis::new(), &mut |imgs| {
        let bb = b.select_columns(imgs).without_labels();
        // T = B[imgs]·diag(e)·A[β]^{-1} sends A_{β_i} to e_i·B_{imgs_i}.
        let mut e = vec![1u32; r];
        let total = choices.len().pow((r - 1) as u32);
        for code in 0..total {
            let mut c = code;
            for slot in e.iter_mut().skip(1) {
                *slot = choices[c % choices.len()];
                c /= choices.len();
            }
            let Ok(be) = bb.scale_columns(&e) else {
                continue;
            };
            let Ok(t) = be.mul(&ainv) else {
                continue;
            };
            if sub.is_some_and(|q| !t.in_subfield(q)) {
                continue;
            }
            if let Some((perm, d)) = matcher.assign(&be) {
                found = Some((perm, d, t));
                return true;
            }
        }
        false
    });
    let Some((perm, d, t)) = found else {
        return Ok(None);
    };
    let w = IsomorphismWitness { perm, t, d };
    if !w.check(a, b) {
        return Err(Error::Internal("isomorphism witness failed its recheck".into()));
    }
    Ok(Some(w))
}

fn choose_images(
    b: &Mat,
    field: &Field,
    images: &mut Vec<usize>,
    depth: usize,
    basis: &EchelonBasis,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == images.len() {
        return visit(images);
    }
    for j in 0..b.cols() {
        if images[..depth].contains(&j) {
            continue;
        }
        let col = b.column(j);
        let mut next = basis.clone();
        if !next.insert(field, &col) {
            continue;
        }
        images[depth] = j;
        if choose_images(b, field, images, depth + 1, &next, visit) {
            return true;
        }
    }
    false
}

struct ColumnMatcher<'a> {
    field: &'a Field,
    /// Columns of A in coordinates of its basis.
    acols: &'a [Vec<u32>],
    classes: &'a HashMap<Vec<u32>, Vec<(usize, u32)>>,
    b_loops: &'a [usize],
}

impl ColumnMatcher<'_> {
    /// Map every column through `be` (the images of A's basis) and match it
    /// to an unused column of B. Parallel columns of B are interchangeable,
    /// so greedy assignment inside a class is exact.
    fn assign(&self, be: &Mat) -> Option<(Vec<usize>, Vec<u32>)> {
        let f = self.field;
        let mut used: HashMap<&[u32], usize> = HashMap::new();
        let mut loops_used = 0;
        let mut perm = Vec::with_capacity(self.acols.len());
        let mut d = Vec::with_capacity(self.acols.len());
        for c in self.acols {
            let img = be.mul_vec(c);
            match normalize(f, &img) {
                None => {
                    let &target = self.b_loops.get(loops_used)?;
                    loops_used += 1;
                    perm.push(target);
                    d.push(1);
                }
                Some((v, scale)) => {
                    let (key, members) = self.classes.get_key_value(&v)?;
                    let k = used.entry(key.as_slice()).or_insert(0);
                    let &(target, lead) = members.get(*k)?;
                    *k += 1;
                    perm.push(target);
                    d.push(f.div(lead, scale));
                }
            }
        }
        Some((perm, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{extension_of_order, make_field};

    fn gf4() -> FieldRef {
        extension_of_order(2).unwrap().ext
    }

    #[test]
    fn rref_examples() {
        let f = gf4();
        let id = Mat::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.mat, id);
        assert_eq!(r.rank, 3);
        let z = Mat::zeros(&f, 2, 3);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().mat, z);
        let w = 2; // ω
        let w2 = f.mul(w, w);
        let m = Mat::from_rows(&f, &[vec![1, w], vec![w, w2]]).unwrap();
        assert_eq!(m.rref().rank, 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(Mat::identity(&f2, 3).kernel().dim(), 0);
        let k = Mat::from_rows(&f2, &[vec![1, 1]]).unwrap().kernel();
        assert_eq!(k.vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn subspace_lattice_examples() {
        let f2 = make_field(2, 1).unwrap();
        let u = Subspace::span(&f2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = Subspace::span(&f2, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.intersect(&v).unwrap(), Subspace::span(&f2, 3, &[vec![0, 1, 0]]));
        assert_eq!(u.sum(&v).unwrap().dim(), 3);
        assert!(u.sum(&v).unwrap().contains(&u).unwrap());
        let bad = Subspace::zero(&f2, 4);
        assert!(matches!(u.intersect(&bad), Err(Error::DimensionMismatch(_))));
        assert_eq!(u.apply(SubspaceOp::Equals, &u).unwrap(), SubspaceOpResult::Bool(true));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf4();
        let m = Mat::from_rows(&f, &[vec![1, 2, 0], vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f, 3));
        let sing = Mat::from_rows(&f, &[vec![1, 2], vec![2, f.mul(2, 2)]]).unwrap();
        assert_eq!(sing.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn scaling_and_transforms() {
        let e = extension_of_order(2).unwrap();
        let m = Mat::from_rows(&e.ext, &[vec![1, 2, 3], vec![0, 1, 2]]).unwrap();
        assert_eq!(scale_columns(&m, &[1, 1, 1], true).unwrap(), m);
        assert_eq!(scale_columns(&m, &[1, 0, 1], false).unwrap_err(), Error::ZeroScalar(1));
        assert!(matches!(
            scale_columns(&m, &[1, 2, 1], true),
            Err(Error::NotInSubfield(_))
        ));
        assert_eq!(scale_columns(&m, &[2, 3, 2], false).unwrap().rank(), m.rank());
        let id = Mat::identity(&e.base, 2);
        assert_eq!(subfield_row_transform(&m, &id).unwrap(), m);
        let sing = Mat::from_rows(&e.base, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(subfield_row_transform(&m, &sing).unwrap_err(), Error::Singular);
        let not_sub = Mat::from_rows(&e.ext, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            subfield_row_transform(&m, &not_sub),
            Err(Error::NotInSubfield(_))
        ));
    }

    #[test]
    fn projective_equivalence_examples() {
        let f = gf4();
        let a = Mat::from_rows(&f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 3]]).unwrap();
        let w = projectively_equivalent(&a, &a, false).unwrap().unwrap();
        assert_eq!(w.t, Mat::identity(&f, 2));
        assert_eq!(w.d, vec![1, 1, 1, 1]);
        let b = a.scale_columns(&[1, 1, 2, 1]).unwrap();
        let w = projectively_equivalent(&a, &b, false).unwrap().unwrap();
        assert!(w.check(&a, &b));
        let c = Mat::from_rows(&f, &[vec![1, 0, 1, 1], vec![0, 1, 1, 3]]).unwrap();
        assert!(projectively_equivalent(&a, &c, false).unwrap().is_none());
    }

    #[test]
    fn isomorphism_search_finds_permutations() {
        let f = gf4();
        let a = Mat::from_rows(&f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 3]]).unwrap();
        let b = a.select_columns(&[2, 0, 3, 1]).scale_columns(&[3, 1, 2, 2]).unwrap();
        let w = projective_isomorphism(&a, &b, false).unwrap().unwrap();
        assert!(w.check(&a, &b));
    }
}

//! Sparse matrices and exact row reduction over [`GaussQ`].
//!
//! Intertwiner systems and quotient computations produce many short rows
//! (two to a handful of non-zeros), so the eliminator keeps rows sparse and
//! reduces them incrementally against a growing set of pivots.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::scalar::GaussQ;

/// A `rows × cols` matrix. Each row keeps its non-zero entries sorted by
/// column, so equal matrices have equal storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

static ZERO: OnceLock<GaussQ> = OnceLock::new();

fn zero_ref() -> &'static GaussQ {
    ZERO.get_or_init(GaussQ::zero)
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![SparseRow::default(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i] = SparseRow(vec![(i, GaussQ::one())]);
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<GaussQ>>, cols: usize) -> Self {
        let n = rows.len();
        let data = rows
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged matrix rows");
                SparseRow::from_dense(&row)
            })
            .collect();
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// The 0/1 matrix of a map `[0, cols) → [0, rows)`: column `j` has its
    /// single one in row `image[j]`.
    pub fn permutation(image: &[u32], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, image.len());
        for (j, &i) in image.iter().enumerate() {
            m.data[i as usize].0.push((j, GaussQ::one()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row `i` written out densely.
    pub fn row(&self, i: usize) -> Vec<GaussQ> {
        self.data[i].to_dense(self.cols)
    }

    /// The non-zero entries of row `i`, by increasing column.
    pub fn row_entries(&self, i: usize) -> &[(usize, GaussQ)] {
        &self.data[i].0
    }

    /// Non-zero entries as `(row, col, value)`, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussQ)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.0.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.data[j].0.push((i, v.clone()));
        }
        t
    }

    /// Sets one entry; zero removes it.
    pub fn set(&mut self, i: usize, j: usize, v: GaussQ) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        let row = &mut self.data[i].0;
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) if v.is_zero() => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = v,
            Err(_) if v.is_zero() => {}
            Err(p) => row.insert(p, (j, v)),
        }
    }

    pub fn trace(&self) -> GaussQ {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.data[i].get(i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseRow::is_empty)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut acc: Vec<Option<GaussQ>> = vec![None; rhs.cols];
        let mut touched = Vec::new();
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in &row.0 {
                    for (j, b) in &rhs.data[*k].0 {
                        let p = a * b;
                        match &mut acc[*j] {
                            Some(v) => *v += &p,
                            slot => {
                                *slot = Some(p);
                                touched.push(*j);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out = touched
                    .drain(..)
                    .filter_map(|j| acc[j].take().filter(|v| !v.is_zero()).map(|v| (j, v)))
                    .collect();
                SparseRow(out)
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[GaussQ]) -> Vec<GaussQ> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| {
                let mut acc = GaussQ::zero();
                for (j, a) in &row.0 {
                    if !v[*j].is_zero() {
                        acc += &(a * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &GaussQ) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let minus_one = -GaussQ::one();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.axpy(&minus_one, b))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.rank()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussQ;
    fn index(&self, (i, j): (usize, usize)) -> &GaussQ {
        assert!(j < self.cols, "column {j} out of range");
        let row = &self.data[i].0;
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => &row[p].1,
            Err(_) => zero_ref(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A sparse row: strictly increasing column indices with non-zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow(pub Vec<(usize, GaussQ)>);

impl SparseRow {
    pub fn from_dense(v: &[GaussQ]) -> Self {
        SparseRow(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    /// Collects `(column, coefficient)` terms, summing duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, GaussQ)>) -> Self {
        let mut acc: BTreeMap<usize, GaussQ> = BTreeMap::new();
        for (c, v) in terms {
            *acc.entry(c).or_insert_with(GaussQ::zero) += &v;
        }
        SparseRow(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> GaussQ {
        match self.0.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => GaussQ::zero(),
        }
    }

    /// `self - c * other`.
    fn axpy(&self, c: &GaussQ, other: &SparseRow) -> SparseRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|t| t.0).unwrap_or(usize::MAX);
            let cj = other.0.get(j).map(|t| t.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push(self.0[i].clone());
                i += 1;
            } else if cj < ci {
                out.push((cj, -(c * &other.0[j].1)));
                j += 1;
            } else {
                let v = &self.0[i].1 - &(c * &other.0[j].1);
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseRow(out)
    }

    fn scaled(&self, c: &GaussQ) -> SparseRow {
        SparseRow(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn to_dense(&self, len: usize) -> Vec<GaussQ> {
        let mut v = vec![GaussQ::zero(); len];
        for (c, x) in &self.0 {
            v[*c] = x.clone();
        }
        v
    }
}

/// Incremental row echelon form. Pivot rows are normalised to a leading one
/// and each inserted row is reduced against existing pivots before it
/// becomes a pivot itself, so pivots are chosen at the lowest available
/// column. Older pivots are not back-reduced; [`Echelon::reduce`] still
/// returns the unique remainder with every pivot column zero.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            pivots: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.width - self.rank()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduces `row` against the current pivots: every pivot column is
    /// eliminated from the result.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut idx = 0;
        while idx < row.0.len() {
            let (col, coef) = row.0[idx].clone();
            match self.pivots.get(&col) {
                Some(p) => {
                    row = row.axpy(&coef, p);
                    // entries before idx are untouched: pivot rows lead at col
                }
                None => idx += 1,
            }
        }
        row
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        let Some(lead) = r.lead() else {
            return false;
        };
        let inv = r.0[0].1.inv().expect("non-zero lead");
        self.pivots.insert(lead, r.scaled(&inv));
        true
    }

    /// The pivot rows in fully reduced form, by pivot column. Later pivots
    /// only touch later columns, so back-substitution runs from the last.
    fn reduced_pivots(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut idx = 1;
            while idx < r.0.len() {
                let (col, coef) = r.0[idx].clone();
                match done.get(&col) {
                    Some(p) => r = r.axpy(&coef, p),
                    None => idx += 1,
                }
            }
            done.insert(lead, r);
        }
        done
    }

    /// A basis of `{x : row·x = 0 for every inserted row}`, one vector per
    /// free column, ordered by free column.
    pub fn nullspace(&self) -> Vec<Vec<GaussQ>> {
        let free: Vec<usize> = (0..self.width).filter(|c| !self.is_pivot(*c)).collect();
        let pivots = self.reduced_pivots();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussQ::zero(); self.width];
                v[f] = GaussQ::one();
                for (&pc, row) in &pivots {
                    let c = row.get(f);
                    if !c.is_zero() {
                        v[pc] = -c;
                    }
                }
                v
            })
            .collect()
    }
}

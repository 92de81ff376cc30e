use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::encode::format_eta_key;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::setfam::{GroundSet, Subset};

/// Row or column label of a labelled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// A subset `T` of the variables.
    Set(Subset),
    /// A pair `(i|B)`.
    Pair(usize, Subset),
    /// A pair of sets `(C:B)` with `B ⊂ C`, `|C∖B| = 1`.
    Step(Subset, Subset),
    /// Plain position, for matrices without domain meaning.
    Index(usize),
}

impl Label {
    pub fn render(&self, ground: Option<&GroundSet>) -> String {
        match (self, ground) {
            (Label::Set(s), Some(g)) => g.format(*s),
            (Label::Pair(i, b), Some(g)) => format_eta_key(g, *i, *b),
            (Label::Step(c, b), Some(g)) => format!("{}:{}", g.format(*c), g.format(*b)),
            (Label::Set(s), None) => format!("{:#b}", s.bits()),
            (Label::Pair(i, b), None) => format!("{i}|{:#b}", b.bits()),
            (Label::Step(c, b), None) => format!("{:#b}:{:#b}", c.bits(), b.bits()),
            (Label::Index(k), _) => k.to_string(),
        }
    }
}

pub fn index_labels(count: usize) -> Vec<Label> {
    (0..count).map(Label::Index).collect()
}

/// Dense integer matrix with mandatory row and column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
    ground: Option<GroundSet>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(row_labels: Vec<Label>, col_labels: Vec<Label>, ground: Option<&GroundSet>) -> Self {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels,
            col_labels,
            ground: ground.cloned(),
        }
    }

    /// Fills entries from a function of the labels.
    pub fn from_fn<F>(row_labels: Vec<Label>, col_labels: Vec<Label>, ground: Option<&GroundSet>, mut f: F) -> Self
    where
        F: FnMut(&Label, &Label) -> i64,
    {
        let mut m = IntMatrix::zeros(row_labels, col_labels, ground);
        for r in 0..m.rows {
            for c in 0..m.cols {
                let v = f(&m.row_labels[r], &m.col_labels[c]);
                m.data[r * m.cols + c] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let mut m = IntMatrix::zeros(index_labels(r), index_labels(c), None);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*v);
            }
        }
        Ok(m)
    }

    pub fn identity(labels: Vec<Label>, ground: Option<&GroundSet>) -> Self {
        let mut m = IntMatrix::zeros(labels.clone(), labels, ground);
        for k in 0..m.rows {
            m.data[k * m.cols + k] = BigInt::one();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn ground(&self) -> Option<&GroundSet> {
        self.ground.as_ref()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_index(&self, label: &Label) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &Label) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    /// Entry addressed by labels.
    pub fn at(&self, row: &Label, col: &Label) -> Option<&BigInt> {
        Some(self.get(self.row_index(row)?, self.col_index(col)?))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(
            self.row_labels.clone(),
            other.col_labels.clone(),
            self.ground.as_ref().or(other.ground.as_ref()),
        );
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * out.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Same entries, compared ignoring labels.
    pub fn same_entries(&self, other: &IntMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(
            self.row_labels.clone(),
            cols.iter().map(|&c| self.col_labels[c]).collect(),
            self.ground.as_ref(),
        );
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.data[r * out.cols + k] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(
            rows.iter().map(|&r| self.row_labels[r]).collect(),
            cols.iter().map(|&c| self.col_labels[c]).collect(),
            self.ground.as_ref(),
        );
        for (i, &r) in rows.iter().enumerate() {
            for (k, &c) in cols.iter().enumerate() {
                out.data[i * out.cols + k] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.col_labels.clone(), self.row_labels.clone(), self.ground.as_ref());
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * out.cols + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn with_labels(mut self, row_labels: Vec<Label>, col_labels: Vec<Label>) -> Result<IntMatrix> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(Error::Dimension("label table size mismatch".into()));
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    /// Exact determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        if let Some(small) = self.small_entries() {
            if let Some(d) = bareiss_i128(&small, self.rows) {
                return Ok(BigInt::from(d));
            }
        }
        Ok(bareiss_big(self.data.clone(), self.rows))
    }

    /// Entries as `i64` when every one fits.
    pub fn small_entries(&self) -> Option<Vec<i64>> {
        self.data.iter().map(|v| v.to_i64()).collect()
    }

    /// CSV with a header row of column labels and a leading label column.
    pub fn to_csv(&self) -> Result<String> {
        let g = self.ground.as_ref();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.col_labels.iter().map(|l| l.render(g)));
        w.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
        for r in 0..self.rows {
            let mut rec = vec![self.row_labels[r].render(g)];
            rec.extend(self.row(r).iter().map(|v| v.to_string()));
            w.write_record(&rec).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Bareiss elimination in `i128`; `None` when an intermediate would overflow.
pub(crate) fn bareiss_i128(entries: &[i64], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<i128> = entries.iter().map(|&v| v as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for c in 0..n {
                a.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(sign * a[n * n - 1])
}

pub(crate) fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(swap) => {
                    for c in 0..n {
                        a.swap(k * n + c, swap * n + c);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &pivot - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v.div_floor(&prev);
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate { -d } else { d }
}

/// Rational vector with a label table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatVector {
    entries: Vec<Rational>,
    labels: Vec<Label>,
    ground: Option<GroundSet>,
}

impl RatVector {
    pub fn new(entries: Vec<Rational>, labels: Vec<Label>, ground: Option<&GroundSet>) -> Result<Self> {
        if entries.len() != labels.len() {
            return Err(Error::Dimension("label table size mismatch".into()));
        }
        Ok(RatVector { entries, labels, ground: ground.cloned() })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn ground(&self) -> Option<&GroundSet> {
        self.ground.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &Label) -> Option<&Rational> {
        self.labels.iter().position(|l| l == label).map(|k| &self.entries[k])
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    /// Non-zero entries rendered as `(label, "p/q")`.
    pub fn rendered(&self) -> Vec<(String, String)> {
        self.labels
            .iter()
            .zip(&self.entries)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, v)| (l.render(self.ground.as_ref()), format_rational(v)))
            .collect()
    }
}

/// `m · x` in exact rationals.
pub fn mul_vector(m: &IntMatrix, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != m.cols() {
        return Err(Error::Dimension(format!("{} columns vs vector of {}", m.cols(), x.len())));
    }
    Ok((0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(x)
                .filter(|(a, _)| !a.is_zero())
                .fold(Rational::zero(), |acc, (a, v)| acc + Rational::from_integer(a.clone()) * v)
        })
        .collect())
}

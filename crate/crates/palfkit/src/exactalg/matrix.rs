use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;

/// Sparse matrix over an exact field. Zero entries are never stored; the
/// entry map iterates in row-major order, so every derived computation is
/// reproducible.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} {{", self.rows, self.cols)?;
        for ((r, c), v) in &self.entries {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        write!(f, "}}")
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::new(self.rows, other.cols);
        for (r, k, a) in self.iter() {
            for c in 0..other.cols {
                let b = other.get(k, c);
                if !b.is_zero() {
                    out.add_to(r, c, &a.mul(&b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        let mut out = vec![F::zero(); self.rows];
        for (r, c, a) in self.iter() {
            if !v[c].is_zero() {
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        out
    }

    fn to_dense_rows(&self) -> Vec<Vec<F>> {
        let mut rows = vec![vec![F::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            rows[r][c] = v.clone();
        }
        rows
    }

    /// Reduced row echelon form; returns the nonzero rows and their pivot columns.
    fn rref(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut rows = self.to_dense_rows();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pr) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next_row, pr);
            let inv = rows[next_row][col].inv();
            for x in rows[next_row].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..rows.len() {
                if r != next_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in 0..self.cols {
                        let delta = factor.mul(&rows[next_row][c]);
                        rows[r][c] = rows[r][c].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivots.len());
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one vector per non-pivot column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (rows, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = rows[i][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, as vectors of length `rows`.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.get(r, c)).collect())
            .collect()
    }

    /// One solution of `self * x = rhs` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows, "shape mismatch");
        let mut aug = ExactMatrix::new(self.rows, self.cols + 1);
        for (r, c, v) in self.iter() {
            aug.set(r, c, v.clone());
        }
        for (r, v) in rhs.iter().enumerate() {
            aug.set(r, self.cols, v.clone());
        }
        let (rows, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Row-echelon accumulator for spans of vectors; used for image spans and
/// quotient representatives.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    dim: usize,
    /// Echelon rows keyed by pivot column.
    rows: BTreeMap<usize, Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span; the remainder has zeros at all stored
    /// pivot columns.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut v = v.to_vec();
        for (&p, row) in &self.rows {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for c in p..self.dim {
                    let delta = factor.mul(&row[c]);
                    v[c] = v[c].sub(&delta);
                }
            }
        }
        v
    }

    /// Insert `v` into the span; returns true when it was independent.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::Rat;
    use super::*;

    fn rat_matrix(rows: &[&[i64]]) -> ExactMatrix<Rat> {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect()).collect(),
        )
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(ExactMatrix::<Rat>::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::<Rat>::new(2, 5).rank(), 0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(ExactMatrix::<Rat>::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_rank_nullity_on_row_vector() {
        // [1, -1, 1] has rank 1 and a 2-dimensional kernel.
        let m = rat_matrix(&[&[1, -1, 1]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).iter().all(Rat::is_zero));
        }
        let mut span = Subspace::new(3);
        for v in &ker {
            assert!(span.insert(v));
        }
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::<Rat>::new(3);
        s.insert(&[Rat::from_i64(1), Rat::from_i64(2), Rat::from_i64(0)]);
        s.insert(&[Rat::from_i64(0), Rat::from_i64(1), Rat::from_i64(0)]);
        assert!(s.contains(&[Rat::from_i64(2), Rat::from_i64(1), Rat::from_i64(0)]));
        assert!(!s.contains(&[Rat::from_i64(0), Rat::from_i64(0), Rat::from_i64(1)]));
    }
}

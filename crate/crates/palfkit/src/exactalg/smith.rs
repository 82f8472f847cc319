use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i][j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::new(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += prod;
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.data[i][j] == -&self.data[j][i]))
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular and `d` diagonal with the divisibility chain d1 | d2 | ...
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Cokernel of an integer matrix read off its Smith form: a free part plus
/// cyclic torsion summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelSummary {
    pub free_rank: usize,
    /// Nontrivial torsion orders, each > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for CokernelSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl SmithNormalForm {
    /// Cokernel of the matrix the form was computed from, viewed as a map
    /// between free modules of the original shape (cols of `a` is the rank of
    /// the target when rows act on the left; here we follow the convention
    /// that `a` maps Z^rows -> Z^cols by row vectors, so the cokernel lives
    /// in Z^cols).
    pub fn cokernel(&self, target_rank: usize) -> CokernelSummary {
        let nonzero: Vec<&BigInt> = self.diagonal.iter().filter(|d| !d.is_zero()).collect();
        CokernelSummary {
            free_rank: target_rank - nonzero.len(),
            torsion: nonzero.iter().filter(|d| !d.magnitude().is_one()).map(|d| (*d).clone()).collect(),
        }
    }
}

/// Smith normal form by gcd pivoting, tracking the unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut m = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        if !place_pivot(&mut m, &mut u, &mut v, t) {
            break;
        }
        // Clear row and column t, restarting whenever a division leaves a
        // remainder that becomes the new, smaller pivot.
        loop {
            let mut dirty = false;
            for r in t + 1..m.rows {
                if !m.data[r][t].is_zero() {
                    let q = smith_quotient(&m.data[r][t], &m.data[t][t]);
                    row_op(&mut m, &mut u, r, t, &q);
                    if !m.data[r][t].is_zero() {
                        swap_rows(&mut m, &mut u, r, t);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..m.cols {
                if !m.data[t][c].is_zero() {
                    let q = smith_quotient(&m.data[t][c], &m.data[t][t]);
                    col_op(&mut m, &mut v, c, t, &q);
                    if !m.data[t][c].is_zero() {
                        swap_cols(&mut m, &mut v, c, t);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // The pivot must divide the rest of the block; if not, fold the
        // offending entry into the pivot's column and repeat.
        let mut offender = None;
        'scan: for r in t + 1..m.rows {
            for c in t + 1..m.cols {
                if !(&m.data[r][c] % &m.data[t][t]).is_zero() {
                    offender = Some(r);
                    break 'scan;
                }
            }
        }
        if let Some(r) = offender {
            // Add row r to row t and redo this pivot.
            for c in 0..m.cols {
                let x = m.data[r][c].clone();
                m.data[t][c] += x;
            }
            for c in 0..u.cols {
                let x = u.data[r][c].clone();
                u.data[t][c] += x;
            }
            // Redo the same index.
            let redo = smith_normal_form_from(m, u, v, t);
            return redo;
        }
        if m.data[t][t].is_negative() {
            for c in 0..m.cols {
                let x = -m.data[t][c].clone();
                m.data[t][c] = x;
            }
            for c in 0..u.cols {
                let x = -u.data[t][c].clone();
                u.data[t][c] = x;
            }
        }
    }

    let diagonal = (0..n).map(|i| m.data[i][i].clone()).collect();
    SmithNormalForm { diagonal, u, v }
}

// Restart helper: continue the elimination from pivot index `t` with the
// current accumulated transforms.
fn smith_normal_form_from(m: IntMatrix, u: IntMatrix, v: IntMatrix, _t: usize) -> SmithNormalForm {
    // Recomputing from the current state keeps the transforms valid because
    // the algorithm only ever applies unimodular operations.
    let inner = smith_normal_form(&m);
    SmithNormalForm { diagonal: inner.diagonal, u: inner.u.mul(&u), v: v.mul(&inner.v) }
}

fn place_pivot(m: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            if m.data[r][c].is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bc)) => m.data[r][c].magnitude() < m.data[br][bc].magnitude(),
            };
            if better {
                best = Some((r, c));
            }
        }
    }
    let Some((r, c)) = best else {
        return false;
    };
    if r != t {
        swap_rows(m, u, r, t);
    }
    if c != t {
        swap_cols(m, v, c, t);
    }
    true
}

fn smith_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // Round-to-nearest quotient keeps remainders small.
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn row_op(m: &mut IntMatrix, u: &mut IntMatrix, r: usize, t: usize, q: &BigInt) {
    for c in 0..m.cols {
        let delta = q * &m.data[t][c];
        m.data[r][c] -= delta;
    }
    for c in 0..u.cols {
        let delta = q * &u.data[t][c];
        u.data[r][c] -= delta;
    }
}

fn col_op(m: &mut IntMatrix, v: &mut IntMatrix, c: usize, t: usize, q: &BigInt) {
    for r in 0..m.rows {
        let delta = q * &m.data[r][t];
        m.data[r][c] -= delta;
    }
    for r in 0..v.rows {
        let delta = q * &v.data[r][t];
        v.data[r][c] -= delta;
    }
}

fn swap_rows(m: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    m.data.swap(a, b);
    u.data.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    for row in &mut m.data {
        row.swap(a, b);
    }
    for row in &mut v.data {
        row.swap(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(a);
        // u * a * v equals the diagonal matrix.
        let prod = snf.u.mul(a).mul(&snf.v);
        for r in 0..prod.rows() {
            for c in 0..prod.cols() {
                if r == c && r < snf.diagonal.len() {
                    assert_eq!(prod.get(r, c), &snf.diagonal[r]);
                } else {
                    assert!(prod.get(r, c).is_zero(), "off-diagonal residue at ({r},{c})");
                }
            }
        }
        // Divisibility chain.
        for w in snf.diagonal.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero());
            }
        }
        snf
    }

    #[test]
    fn single_entry() {
        let snf = check(&IntMatrix::from_i64_rows(&[vec![2]]));
        assert_eq!(snf.diagonal, vec![BigInt::from(2)]);
        let coker = snf.cokernel(1);
        assert_eq!(coker.free_rank, 0);
        assert_eq!(coker.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn identity_has_trivial_cokernel() {
        let snf = check(&IntMatrix::identity(4));
        assert_eq!(snf.cokernel(4), CokernelSummary { free_rank: 0, torsion: vec![] });
    }

    #[test]
    fn classic_torsion_example() {
        // rows span <(2,0),(0,3)>: cokernel Z/2 + Z/3 = diag(1... no, diag(2,3) -> (1,6) after chain fix.
        let snf = check(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }
}

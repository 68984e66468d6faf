//! Exact dense integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Ranks use
//! fraction-free (Bareiss) elimination; kernels are computed with unimodular
//! column operations so that the returned basis spans the full kernel lattice
//! `ker(M) ∩ Z^n`, then put into Hermite normal form so the output is
//! canonical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed so that a matrix
    /// with no rows still knows its width.
    ///
    /// Panics if a row has the wrong length.
    pub fn from_rows<T: Clone + Into<BigInt>>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has length {} (expected {cols})", row.len());
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows_iter().map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix-vector product. Panics on a length mismatch.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        self.rows_iter().map(|row| dot(row, v)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + k] = self.get(r, c).clone();
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack of matrices with different widths");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        kernel_basis(self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows_iter() {
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides `v` by the gcd of its entries. Leaves the zero vector alone.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank over the rationals, by Bareiss elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Reduces `m` to column echelon form with unimodular column operations.
/// Returns the rank, the echelon columns of `m·U` and the columns of `U`;
/// the last `cols - rank` columns of `U` span the kernel lattice.
fn column_echelon_transform(m: &IntMatrix) -> (usize, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let (rows, n) = (m.nrows(), m.ncols());
    // Work on columns as vectors: a[j] is column j of m, u[j] column j of U.
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|j| m.column(j)).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            e
        })
        .collect();
    let mut pc = 0;
    for i in 0..rows {
        if pc == n {
            break;
        }
        loop {
            let best = (pc..n)
                .filter(|&j| !a[j][i].is_zero())
                .min_by(|&x, &y| a[x][i].abs().cmp(&a[y][i].abs()));
            let Some(j) = best else { break };
            a.swap(pc, j);
            u.swap(pc, j);
            let mut done = true;
            for j in pc + 1..n {
                if a[j][i].is_zero() {
                    continue;
                }
                let q = a[j][i].div_floor(&a[pc][i]);
                let (lo, hi) = a.split_at_mut(j);
                axpy(&mut hi[0], &q, &lo[pc]);
                let (lo, hi) = u.split_at_mut(j);
                axpy(&mut hi[0], &q, &lo[pc]);
                if !a[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[pc][i].is_zero() {
            pc += 1;
        }
    }
    (pc, a, u)
}

/// Diagonal of a lower-triangular basis of the column lattice of a
/// nonsingular square matrix, all entries positive. Their product is
/// `|det m|`, and `{c : 0 <= c_i < diag_i}` is a complete set of coset
/// representatives of `Z^n / m·Z^n`.
pub fn column_lattice_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(m.nrows(), m.ncols(), "square matrix required");
    let (rank, echelon, _) = column_echelon_transform(m);
    assert_eq!(rank, m.ncols(), "matrix is singular");
    (0..rank).map(|i| echelon[i][i].abs()).collect()
}

/// `target -= q * source`
fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// strictly increasing pivot columns, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped. The result depends only on the
/// lattice, not on the generators.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let (lo, hi) = a.split_at_mut(i);
                axpy(&mut hi[0], &q, &lo[r]);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][col].div_floor(&a[r][col]);
                if !q.is_zero() {
                    let (lo, hi) = a.split_at_mut(r);
                    axpy(&mut lo[i], &q, &hi[0]);
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Canonical integer basis of `ker(M) ∩ Z^cols`, in Hermite normal form.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (rank, _, mut u) = column_echelon_transform(m);
    hermite_normal_form(&u.split_off(rank))
}

/// Canonical integer basis of `{y : y·M = 0}`.
pub fn left_kernel_lattice(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_basis(&m.transpose())
}

/// Coordinates of `v` with respect to a basis in Hermite normal form, or
/// `None` when `v` is not in the lattice it spans.
pub fn lattice_coordinates(hnf: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = v.to_vec();
    let mut coords = Vec::with_capacity(hnf.len());
    for b in hnf {
        let p = b.iter().position(|x| !x.is_zero())?;
        let (c, r) = rem[p].div_rem(&b[p]);
        if !r.is_zero() {
            return None;
        }
        axpy(&mut rem, &c, b);
        coords.push(c);
    }
    rem.iter().all(Zero::is_zero).then_some(coords)
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Error, MultiPoly, Rational};

/// Dense rectangular matrix of polynomials sharing one variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, num_vars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            num_vars,
            entries: vec![MultiPoly::zero(num_vars); rows * cols],
        }
    }

    pub fn from_rows(num_vars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::NonSquare(nrows, ncols));
            }
            for p in row {
                if p.num_vars() != num_vars {
                    return Err(Error::MismatchedVariables(p.num_vars(), num_vars));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            num_vars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn at(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.num_vars(), self.num_vars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.at(i, i).is_zero() && (0..i).all(|j| *self.at(i, j) == -self.at(j, i))
            })
    }

    /// Exact determinant by Bareiss fraction-free elimination over the
    /// polynomial ring. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<MultiPoly, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(self.num_vars));
        }
        let mut m: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = MultiPoly::one(self.num_vars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(MultiPoly::zero(self.num_vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss pivot divides exactly");
                }
                m[i][k] = MultiPoly::zero(self.num_vars);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Determinant by Laplace cofactor expansion, an independent check of
    /// [`PolyMatrix::det`]. Enforced small: dimension at most 6.
    pub fn det_cofactor(&self) -> Result<MultiPoly, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        const MAX: usize = 6;
        if self.rows > MAX {
            return Err(Error::DimensionTooLarge {
                got: self.rows,
                max: MAX,
            });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(&rows, &cols))
    }

    fn cofactor_rec(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        if rows.is_empty() {
            return MultiPoly::one(self.num_vars);
        }
        let row = rows[0];
        let rest_rows = &rows[1..];
        let mut acc = MultiPoly::zero(self.num_vars);
        for (pos, &col) in cols.iter().enumerate() {
            let entry = self.at(row, col);
            if entry.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
            let term = entry * &self.cofactor_rec(rest_rows, &rest_cols);
            acc = if pos % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Pfaffian of a skew-symmetric matrix by first-row expansion.
    /// The empty matrix has pfaffian 1; odd dimensions are rejected.
    pub fn pfaffian(&self) -> Result<MultiPoly, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        if !self.rows.is_multiple_of(2) {
            return Err(Error::OddDimension(self.rows));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(self.num_vars);
        }
        let i0 = idx[0];
        let mut acc = MultiPoly::zero(self.num_vars);
        for p in 1..idx.len() {
            let entry = self.at(i0, idx[p]);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&r| r != idx[p]).collect();
            let sub = self.pfaffian_rec(&rest);
            let term = entry * &sub;
            acc = if p % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Evaluate every entry at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, Error> {
        if point.len() != self.num_vars {
            return Err(Error::PointLengthMismatch {
                got: point.len(),
                expected: self.num_vars,
            });
        }
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).eval(point)).collect())
            .collect()
    }

    /// Exact rank of the rational matrix obtained by evaluating at `point`,
    /// via integer fraction-free elimination.
    pub fn rank_at(&self, point: &[Rational]) -> Result<usize, Error> {
        let m = self.evaluate(point)?;
        Ok(rational_rank(&m))
    }
}

/// Rank of a rational matrix: rows are scaled to integers, then reduced by
/// fraction-free Gaussian elimination with row pivoting and column skipping.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut w: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * &lcm / c.denom()).collect()
        })
        .collect();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !w[r][col].is_zero()) else {
            continue;
        };
        w.swap(rank, pivot_row);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &w[i][j] * &w[rank][col] - &w[i][col] * &w[rank][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free step divides exactly");
                let _ = r;
                w[i][j] = q;
            }
            w[i][col] = BigInt::zero();
        }
        prev = w[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

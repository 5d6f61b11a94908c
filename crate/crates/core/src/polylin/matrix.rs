use std::fmt;
use std::ops::{Index, IndexMut};

use super::{PolyError, PolyResult};
use crate::exactfield::{Field, FieldError, FieldResult, Ring};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    data: Vec<R>,
}

impl<R: Ring> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R: Ring> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, ctx: &R::Ctx) -> Self {
        Matrix { rows, cols, ctx: ctx.clone(), data: vec![R::zero(ctx); rows * cols] }
    }

    pub fn identity(n: usize, ctx: &R::Ctx) -> Self {
        let mut m = Matrix::zeros(n, n, ctx);
        for i in 0..n {
            m[(i, i)] = R::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> PolyResult<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::Dimension { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, ctx: ctx.clone(), data })
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: &R::Ctx, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, &self.ctx, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Self) -> PolyResult<Self> {
        if self.cols != o.rows {
            return Err(PolyError::Dimension { expected: self.cols, got: o.rows });
        }
        let mut out: Matrix<R> = Matrix::zeros(self.rows, o.cols, &self.ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> PolyResult<Vec<R>> {
        if v.len() != self.cols {
            return Err(PolyError::Dimension { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = R::zero(&self.ctx);
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, o: &Self) -> PolyResult<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(PolyError::Dimension { expected: self.rows * self.cols, got: o.rows * o.cols });
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data })
    }

    pub fn scale(&self, c: &R) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data }
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), &self.ctx, |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero(&self.ctx);
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign(&self[(i, i)]);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> PolyResult<Self> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare(self.rows, self.cols));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, &self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Determinant over any commutative ring, by dynamic programming over
    /// column subsets (no division). Intended for sizes up to about 12.
    pub fn det_expansion(&self) -> PolyResult<R> {
        let n = self.rows;
        if n != self.cols {
            return Err(PolyError::NotSquare(self.rows, self.cols));
        }
        if n == 0 {
            return Ok(R::one(&self.ctx));
        }
        // dp[mask]: signed sum over injections of the first |mask| rows onto mask.
        let mut dp: Vec<Option<R>> = vec![None; 1 << n];
        dp[0] = Some(R::one(&self.ctx));
        for mask in 0usize..(1 << n) {
            let Some(cur) = dp[mask].clone() else { continue };
            if cur.is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = &self[(row, j)];
                if a.is_zero() {
                    continue;
                }
                // sign: number of used columns greater than j
                let above = (mask >> (j + 1)).count_ones();
                let term = cur.mul(a);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let slot = &mut dp[mask | (1 << j)];
                match slot {
                    Some(v) => v.add_assign(&term),
                    None => *slot = Some(term),
                }
            }
        }
        Ok(dp[(1 << n) - 1].clone().unwrap_or_else(|| R::zero(&self.ctx)))
    }
}

/// Reduced row echelon data.
#[derive(Clone, Debug)]
pub struct Echelon<F: Ring> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form; pivots are chosen as the first nonzero
    /// entry in each column scanning rows top-down, so the result is
    /// deterministic.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = f.mul(&m[(r, j)]);
                    m[(i, j)].sub_assign(&t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul(&inv);
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = f.mul(&m[(r, j)]);
                    m[(i, j)].sub_assign(&t);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of {v : M v = 0}, one vector per free column, with a 1 in that
    /// column and zeros in the other free columns.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(&self.ctx); self.cols];
            v[free] = F::one(&self.ctx);
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = e.matrix[(r, free)].neg();
            }
            out.push(v);
        }
        out
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_space_basis(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        (0..e.pivots.len()).map(|i| e.matrix.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> PolyResult<F> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let mut det = F::one(&self.ctx);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero(&self.ctx));
            };
            if p != c {
                m.swap_rows(c, p);
                det = det.neg();
            }
            det = det.mul(&m[(c, c)]);
            let inv = m[(c, c)].inv()?;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul(&inv);
                for j in c..m.cols {
                    let t = f.mul(&m[(c, j)]);
                    m[(i, j)].sub_assign(&t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> FieldResult<Self> {
        if self.rows != self.cols {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, &self.ctx);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one(&self.ctx);
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Matrix::from_fn(n, n, &self.ctx, |i, j| e.matrix[(i, n + j)].clone()))
    }

    /// Whether two families of vectors span the same subspace.
    pub fn same_row_space(&self, o: &Self) -> bool {
        if self.cols != o.cols {
            return false;
        }
        let a = self.row_space_basis();
        let b = o.row_space_basis();
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, Modulus, Rat};

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(&(), rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_null_space() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(|x| x.is_zero()));
        assert_eq!(Matrix::<Rat>::identity(7, &()).rank(), 7);
    }

    #[test]
    fn determinants_agree() {
        let m = q(&[&[2, -1, 0, 3], &[1, 1, 4, 0], &[0, 5, 1, 1], &[7, 0, 0, 2]]);
        assert_eq!(m.det().unwrap(), m.det_expansion().unwrap());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(4, &()));
    }

    #[test]
    fn prime_field_rank() {
        let p = Modulus::new(5).unwrap();
        let m = Matrix::from_fn(3, 3, &p, |i, j| Fp::new(p, (i * 3 + j) as i64));
        assert_eq!(m.rank(), 2);
    }
}

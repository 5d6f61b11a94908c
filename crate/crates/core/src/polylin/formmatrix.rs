use std::collections::HashMap;
use std::sync::Arc;

use super::matrix::Matrix;
use super::poly::{Poly, PolyCtx};
use super::ring::PolyRing;
use super::{PolyError, PolyResult};
use crate::exactfield::{Field, Ring};

/// Matrix whose entries are forms in a common ring.
#[derive(Clone, PartialEq, Debug)]
pub struct FormMatrix<R: Ring> {
    ctx: PolyCtx<R>,
    m: Matrix<Poly<R>>,
}

impl<R: Ring> FormMatrix<R> {
    pub fn zeros(ctx: &PolyCtx<R>, rows: usize, cols: usize) -> Self {
        FormMatrix { ctx: ctx.clone(), m: Matrix::zeros(rows, cols, ctx) }
    }

    pub fn from_rows(ctx: &PolyCtx<R>, rows: Vec<Vec<Poly<R>>>) -> PolyResult<Self> {
        Ok(FormMatrix { ctx: ctx.clone(), m: Matrix::from_rows(ctx, rows)? })
    }

    pub fn from_matrix(ctx: &PolyCtx<R>, m: Matrix<Poly<R>>) -> Self {
        FormMatrix { ctx: ctx.clone(), m }
    }

    pub fn ctx(&self) -> &PolyCtx<R> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ctx.ring
    }

    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    pub fn cols(&self) -> usize {
        self.m.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<R> {
        &self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<R>) {
        self.m[(i, j)] = p;
    }

    pub fn as_matrix(&self) -> &Matrix<Poly<R>> {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn transpose(&self) -> Self {
        FormMatrix { ctx: self.ctx.clone(), m: self.m.transpose() }
    }

    pub fn neg(&self) -> Self {
        FormMatrix { ctx: self.ctx.clone(), m: self.m.map(&self.ctx, |p| p.neg()) }
    }

    pub fn add(&self, o: &Self) -> PolyResult<Self> {
        Ok(FormMatrix { ctx: self.ctx.clone(), m: self.m.add(&o.m)? })
    }

    pub fn mul(&self, o: &Self) -> PolyResult<Self> {
        Ok(FormMatrix { ctx: self.ctx.clone(), m: self.m.mul(&o.m)? })
    }

    pub fn scale(&self, p: &Poly<R>) -> Self {
        FormMatrix { ctx: self.ctx.clone(), m: self.m.map(&self.ctx, |x| x.mul(p)) }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        FormMatrix { ctx: self.ctx.clone(), m: self.m.submatrix(rows, cols) }
    }

    /// Multidegree of each entry (None for zero or inhomogeneous entries).
    pub fn degree_profile(&self) -> Vec<Vec<Option<Vec<u32>>>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.m[(i, j)].multidegree()).collect())
            .collect()
    }

    /// Checks every nonzero entry against the expected multidegree.
    pub fn check_profile(&self, expected: impl Fn(usize, usize) -> Vec<u32>) -> PolyResult<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let p = &self.m[(i, j)];
                if p.is_empty() {
                    continue;
                }
                let want = expected(i, j);
                match p.multidegree() {
                    Some(d) if d == want => {}
                    found => {
                        return Err(PolyError::Profile { row: i, col: j, expected: want, found: found.unwrap_or_default() })
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_skew(&self) -> bool {
        self.skew_violation().is_none()
    }

    fn skew_violation(&self) -> Option<(usize, usize)> {
        if self.rows() != self.cols() {
            return Some((0, 0));
        }
        for i in 0..self.rows() {
            for j in i..self.cols() {
                if self.m[(i, j)] != self.m[(j, i)].neg() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols() && (0..self.rows()).all(|i| (0..i).all(|j| self.m[(i, j)] == self.m[(j, i)]))
    }

    pub fn det(&self) -> PolyResult<Poly<R>> {
        self.m.det_expansion()
    }

    /// Pfaffian of a skew matrix of even size. Expansion along the first row:
    /// Pf(A) = Σ_{j≥1} (−1)^{j+1} a_{0j} Pf(A with rows/cols 0, j removed),
    /// so the standard block form [[0,1],[−1,0]]⊕… has Pfaffian 1.
    pub fn pfaffian(&self) -> PolyResult<Poly<R>> {
        if let Some((i, j)) = self.skew_violation() {
            return if self.rows() != self.cols() {
                Err(PolyError::NotSquare(self.rows(), self.cols()))
            } else {
                Err(PolyError::NotSkew(i, j))
            };
        }
        let n = self.rows();
        if n % 2 == 1 {
            return Ok(Poly::zero(&self.ctx.ring, &self.ctx.coeff));
        }
        let mut memo = HashMap::new();
        Ok(self.pf_rec((1u64 << n) - 1, &mut memo))
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, Poly<R>>) -> Poly<R> {
        if mask == 0 {
            return Poly::one(&self.ctx.ring, &self.ctx.coeff);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let idx: Vec<usize> = (0..64).filter(|&i| mask & (1 << i) != 0).collect();
        let first = idx[0];
        let mut acc = Poly::zero(&self.ctx.ring, &self.ctx.coeff);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = &self.m[(first, j)];
            if a.is_empty() {
                continue;
            }
            let rest = self.pf_rec(mask & !(1 << first) & !(1 << j), memo);
            let t = a.mul(&rest);
            acc = if pos % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Principal Pfaffians of an odd-size skew matrix: entry k is
    /// (−1)^k · Pf(A with row and column k removed).
    pub fn principal_pfaffians(&self) -> PolyResult<Vec<Poly<R>>> {
        if let Some((i, j)) = self.skew_violation() {
            return Err(PolyError::NotSkew(i, j));
        }
        let n = self.rows();
        (0..n)
            .map(|k| {
                let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
                let pf = self.submatrix(&keep, &keep).pfaffian()?;
                Ok(if k % 2 == 1 { pf.neg() } else { pf })
            })
            .collect()
    }

    /// All k×k minors, rows and column subsets in lexicographic order.
    pub fn minors(&self, k: usize) -> PolyResult<Vec<Poly<R>>> {
        let mut out = Vec::new();
        for rs in subsets(self.rows(), k) {
            for cs in subsets(self.cols(), k) {
                out.push(self.submatrix(&rs, &cs).det()?);
            }
        }
        Ok(out)
    }

    /// Evaluates every entry at a point.
    pub fn eval(&self, point: &[R]) -> PolyResult<Matrix<R>> {
        let mut rows = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(self.cols());
            for j in 0..self.cols() {
                row.push(self.m[(i, j)].eval(point)?);
            }
            rows.push(row);
        }
        Matrix::from_rows(&self.ctx.coeff, rows)
    }

    /// Applies a map to every entry, possibly changing ring.
    pub fn map_entries<S: Ring>(&self, ctx: &PolyCtx<S>, f: impl Fn(&Poly<R>) -> PolyResult<Poly<S>>) -> PolyResult<FormMatrix<S>> {
        let mut rows = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(self.cols());
            for j in 0..self.cols() {
                row.push(f(&self.m[(i, j)])?);
            }
            rows.push(row);
        }
        FormMatrix::from_rows(ctx, rows)
    }

    /// Row-major nested lists of entry strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.m[(i, j)].to_string()).collect()).collect()
    }
}

impl<R: Field> FormMatrix<R> {
    pub fn parse(ctx: &PolyCtx<R>, rows: &[Vec<&str>]) -> PolyResult<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for s in r {
                row.push(Poly::parse(ctx, s)?);
            }
            out.push(row);
        }
        FormMatrix::from_rows(ctx, out)
    }
}

/// k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    fn ctx() -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::grevlex(&["a", "b", "c", "d", "e", "f"]), ())
    }

    #[test]
    fn two_by_two_pfaffian() {
        let c = ctx();
        let m = FormMatrix::parse(&c, &[vec!["0", "a"], vec!["-a", "0"]]).unwrap();
        assert_eq!(m.pfaffian().unwrap(), Poly::parse(&c, "a").unwrap());
    }

    #[test]
    fn standard_form_has_pfaffian_one() {
        let c = ctx();
        let rows = vec![
            vec!["0", "1", "0", "0"],
            vec!["-1", "0", "0", "0"],
            vec!["0", "0", "0", "1"],
            vec!["0", "0", "-1", "0"],
        ];
        let m = FormMatrix::parse(&c, &rows).unwrap();
        assert!(m.pfaffian().unwrap().is_one());
    }

    #[test]
    fn four_by_four_formula() {
        let c = ctx();
        let rows = vec![
            vec!["0", "a", "b", "c"],
            vec!["-a", "0", "d", "e"],
            vec!["-b", "-d", "0", "f"],
            vec!["-c", "-e", "-f", "0"],
        ];
        let m = FormMatrix::parse(&c, &rows).unwrap();
        let pf = m.pfaffian().unwrap();
        assert_eq!(pf, Poly::parse(&c, "a*f - b*e + c*d").unwrap());
        assert_eq!(pf.mul(&pf), m.det().unwrap());
    }

    #[test]
    fn non_skew_rejected() {
        let c = ctx();
        let m = FormMatrix::parse(&c, &[vec!["0", "a"], vec!["a", "0"]]).unwrap();
        assert!(matches!(m.pfaffian(), Err(PolyError::NotSkew(0, 1))));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}

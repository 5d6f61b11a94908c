//! Sparse rows over an indexed term basis and incremental reduced echelon forms.

use std::any::Any;
use std::collections::BTreeMap;

use crate::exactfield::{Field, Fp};

/// Sparse row: strictly increasing column indices, nonzero coefficients.
pub type Row<R> = Vec<(u32, R)>;

/// Σ cᵢ·rowᵢ.
pub fn combine<R: Field>(parts: &[(&Row<R>, R)]) -> Row<R> {
    if parts.len() == 1 {
        let (r, c) = &parts[0];
        return r.iter().map(|(i, x)| (*i, x.mul(c))).filter(|t| !t.1.is_zero()).collect();
    }
    let mut acc: BTreeMap<u32, R> = BTreeMap::new();
    for (row, c) in parts {
        for (i, x) in row.iter() {
            let t = x.mul(c);
            match acc.get_mut(i) {
                Some(v) => v.add_assign(&t),
                None => {
                    acc.insert(*i, t);
                }
            }
        }
    }
    acc.into_iter().filter(|t| !t.1.is_zero()).collect()
}

/// a − c·b.
pub fn axpy<R: Field>(a: &Row<R>, c: &R, b: &Row<R>) -> Row<R> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// Reduced echelon form built one row at a time. Every stored row is monic
/// at its pivot and has zeros in all other pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<R: Field> {
    rows: BTreeMap<u32, Row<R>>,
}

impl<R: Field> Default for Echelon<R> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<R: Field> Echelon<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn into_rows(self) -> BTreeMap<u32, Row<R>> {
        self.rows
    }

    /// Remainder of `row` modulo the stored span.
    pub fn reduce(&self, row: &Row<R>) -> Row<R> {
        let hits: Vec<(&Row<R>, R)> = row
            .iter()
            .filter_map(|(i, c)| self.rows.get(i).map(|r| (r, c.neg())))
            .collect();
        if hits.is_empty() {
            return row.clone();
        }
        let mut parts: Vec<(&Row<R>, R)> = vec![(row, R::one(&row[0].1.ctx()))];
        parts.extend(hits);
        combine(&parts)
    }

    /// Inserts a row; returns its pivot when it was independent.
    pub fn insert(&mut self, row: &Row<R>) -> Option<u32> {
        let r = self.reduce(row);
        let (p, lc) = r.first()?.clone();
        let inv = lc.inv().expect("nonzero");
        let r: Row<R> = r.into_iter().map(|(i, c)| (i, c.mul(&inv))).collect();
        let touched: Vec<u32> = self.rows.iter().filter(|(_, row)| row.iter().any(|(i, _)| *i == p)).map(|(k, _)| *k).collect();
        for k in touched {
            let row = &self.rows[&k];
            let c = row.iter().find(|(i, _)| *i == p).expect("contains p").1.clone();
            let new = axpy(row, &c, &r);
            self.rows.insert(k, new);
        }
        self.rows.insert(p, r);
        Some(p)
    }
}

/// Rank of a dense matrix given by rows. Prime-field input takes a
/// word-sized elimination path.
pub fn dense_rank<R: Field>(rows: Vec<Vec<R>>, ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    if let Some(fp) = (&rows as &dyn Any).downcast_ref::<Vec<Vec<Fp>>>() {
        let p = fp[0].first().map(|x| x.modulus().get()).unwrap_or(2);
        let data: Vec<Vec<u32>> = fp.iter().map(|r| r.iter().map(|x| x.value()).collect()).collect();
        return rank_mod_p(data, ncols, p);
    }
    let mut e = Echelon::new();
    for r in rows {
        let sparse: Row<R> = r.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c)).collect();
        if !sparse.is_empty() {
            e.insert(&sparse);
        }
    }
    e.rank()
}

/// Rank of a matrix over F_p with entries in 0..p.
pub fn rank_mod_p(mut m: Vec<Vec<u32>>, ncols: usize, p: u32) -> usize {
    let p64 = p as u64;
    let inv = |a: u32| -> u32 {
        let mut r: u64 = 1;
        let mut b = a as u64;
        let mut e = p64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p64;
            }
            b = b * b % p64;
            e >>= 1;
        }
        r as u32
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]) as u64;
        let prow: Vec<u32> = m[rank].iter().map(|&x| (x as u64 * iv % p64) as u32).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = p64 - f as u64;
            for j in c..ncols {
                let x = prow[j];
                if x != 0 {
                    row[j] = ((row[j] as u64 + f * x as u64) % p64) as u32;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Modulus, Rat, Ring};

    fn q(v: &[(u32, i64)]) -> Row<Rat> {
        v.iter().map(|&(i, c)| (i, Rat::int(c))).collect()
    }

    #[test]
    fn echelon_stays_reduced() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(&q(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(&q(&[(2, 2), (3, 1)])), Some(2));
        assert_eq!(e.insert(&q(&[(1, 1), (3, -1)])), Some(3));
        assert_eq!(e.insert(&q(&[(1, 2), (2, 2)])), None);
        let row1 = e.into_rows().into_values().next().unwrap();
        assert!(row1.iter().all(|(i, _)| *i != 2));
    }

    #[test]
    fn fp_rank_agrees_with_generic() {
        let m = Modulus::new(31).unwrap();
        let rows: Vec<Vec<Fp>> = (0..5).map(|i| (0..6).map(|j| Fp::new(m, (i * j + i + 1) as i64)).collect()).collect();
        let generic = {
            let mut e = Echelon::new();
            for r in &rows {
                let s: Row<Fp> = r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, *c)).collect();
                e.insert(&s);
            }
            e.rank()
        };
        assert_eq!(dense_rank(rows, 6), generic);
    }
}

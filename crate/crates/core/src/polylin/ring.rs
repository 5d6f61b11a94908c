use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{PolyError, PolyResult};

pub const MAX_VARS: usize = 16;

/// Exponent vector stored inline. Unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    e: [u8; MAX_VARS],
    deg: u16,
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::default();
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Mono::default();
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = u8::try_from(x).expect("exponent above 255");
            m.deg += x as u16;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.e[range].iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = r.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r.deg += o.deg;
        r
    }

    #[inline]
    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// self / o when o divides self.
    #[inline]
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if !o.divides(self) {
            return None;
        }
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] -= o.e[i];
        }
        r.deg -= o.deg;
        Some(r)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut r = Mono::default();
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(o.e[i]);
            r.deg += r.e[i] as u16;
        }
        r
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = Mono::default();
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].min(o.e[i]);
            r.deg += r.e[i] as u16;
        }
        r
    }

    pub fn is_coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn with_exp(&self, i: usize, x: u32) -> Mono {
        let mut r = *self;
        r.deg = r.deg - r.e[i] as u16 + x as u16;
        r.e[i] = u8::try_from(x).expect("exponent above 255");
        r
    }

    /// Index of the first variable with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.e[i] > 0)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.e[i] > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// All monomials of total degree d in n variables, in descending grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Mono::from_exps(cur));
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Mono::one());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(b, a, 0..n));
    out
}

#[inline]
fn grevlex(a: &Mono, b: &Mono, range: std::ops::Range<usize>) -> Ordering {
    let da: u32 = a.degree_in(range.clone());
    let db: u32 = b.degree_in(range.clone());
    if da != db {
        return da.cmp(&db);
    }
    for i in range.rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

/// The named variable sets used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Registry {
    /// x0..x6, coordinates on P⁶ (dual basis to e0..e6).
    X,
    /// u0..u3, basis of U′.
    U,
    /// y0..y2, coordinates of the alternating net; also carry the Klein quartic.
    Y,
    /// t0..t3, parameters of the rational family.
    T,
}

impl Registry {
    pub fn size(self) -> usize {
        match self {
            Registry::X => 7,
            Registry::U => 4,
            Registry::Y => 3,
            Registry::T => 4,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Registry::X => "x",
            Registry::U => "u",
            Registry::Y => "y",
            Registry::T => "t",
        }
    }
}

/// Polynomial ring descriptor: variable names and the blocks of a block order.
///
/// Within a block the order is grevlex; blocks compare lexicographically in
/// declaration order (the first block dominates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    blocks: Vec<usize>,
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyRing{:?}/{:?}", self.names, self.blocks)
    }
}

impl PolyRing {
    pub fn new(names: Vec<String>, blocks: Vec<usize>) -> PolyResult<Arc<PolyRing>> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        if blocks.iter().sum::<usize>() != names.len() || blocks.contains(&0) {
            return Err(PolyError::BadBlocks);
        }
        Ok(Arc::new(PolyRing { names, blocks }))
    }

    /// Single grevlex block with the given names.
    pub fn grevlex(names: &[&str]) -> Arc<PolyRing> {
        let n = names.len();
        PolyRing::new(names.iter().map(|s| s.to_string()).collect(), vec![n]).expect("valid ring")
    }

    pub fn registry(r: Registry) -> Arc<PolyRing> {
        PolyRing::product(&[r])
    }

    /// Product of registries, one block each, in the given order.
    pub fn product(regs: &[Registry]) -> Arc<PolyRing> {
        let mut names = Vec::new();
        let mut blocks = Vec::new();
        for r in regs {
            for i in 0..r.size() {
                names.push(format!("{}{}", r.prefix(), i));
            }
            blocks.push(r.size());
        }
        PolyRing::new(names, blocks).expect("registries fit")
    }

    /// The same variables preceded by `extra` new ones forming a dominant block.
    pub fn with_elimination_block(&self, extra: &[&str]) -> PolyResult<Arc<PolyRing>> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.names.iter().cloned());
        let mut blocks = vec![extra.len()];
        blocks.extend(self.blocks.iter().copied());
        PolyRing::new(names, blocks)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut s = 0;
        for &b in &self.blocks {
            out.push(s..s + b);
            s += b;
        }
        out
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Term order comparison (Greater = larger in the order).
    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        if self.blocks.len() == 1 {
            return grevlex(a, b, 0..self.names.len());
        }
        let mut s = 0;
        for &len in &self.blocks {
            let o = grevlex(a, b, s..s + len);
            if o != Ordering::Equal {
                return o;
            }
            s += len;
        }
        Ordering::Equal
    }

    pub fn multidegree(&self, m: &Mono) -> Vec<u32> {
        self.block_ranges().into_iter().map(|r| m.degree_in(r)).collect()
    }

    pub fn monomials(&self, d: u32) -> Vec<Mono> {
        let mut v = monomials_of_degree(self.nvars(), d);
        v.sort_by(|a, b| self.cmp(b, a));
        v
    }

    pub fn render_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let r = PolyRing::grevlex(&["a", "b", "c"]);
        let a = Mono::var(0);
        let b = Mono::var(1);
        let c = Mono::var(2);
        assert_eq!(r.cmp(&a, &b), Ordering::Greater);
        assert_eq!(r.cmp(&b, &c), Ordering::Greater);
        // a*c < b^2 in grevlex
        assert_eq!(r.cmp(&a.mul(&c), &b.mul(&b)), Ordering::Less);
        assert_eq!(r.cmp(&a.mul(&a), &b.mul(&c).mul(&c)), Ordering::Less);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(7, 3).len(), 84);
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let base = PolyRing::grevlex(&["x", "y"]);
        let r = base.with_elimination_block(&["t"]).unwrap();
        let t = Mono::var(0);
        let y3 = Mono::from_exps(&[0, 0, 3]);
        assert_eq!(r.cmp(&t, &y3), Ordering::Greater);
    }

    #[test]
    fn division() {
        let m = Mono::from_exps(&[2, 1]);
        let n = Mono::from_exps(&[1, 1]);
        assert_eq!(m.div(&n), Some(Mono::var(0)));
        assert_eq!(n.div(&m), None);
        assert_eq!(m.lcm(&Mono::var(2)).deg(), 4);
    }
}

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::engine::GbConfig;
use super::hilbert::HilbertData;
use super::ideal::GradedIdeal;
use super::linear::dense_rank;
use super::module::{FreeModule, Vector};
use super::syzygy::{minimal_generators, syzygies};
use super::GroebnerResult;
use crate::exactfield::Field;
use crate::polylin::Mono;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub beta: u64,
}

/// JSON has no tuple keys; the map travels as a list of entries.
mod entry_list {
    use super::{BTreeMap, BettiEntry};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, u32), u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(i, j), &beta)| BettiEntry { i, j, beta }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, u32), u64>, D::Error> {
        Ok(Vec::<BettiEntry>::deserialize(d)?.into_iter().map(|e| ((e.i, e.j), e.beta)).collect())
    }
}

/// Graded Betti numbers β_{i,j} of S/I: F_i has β_{i,j} generators of degree j.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    #[serde(with = "entry_list")]
    entries: BTreeMap<(usize, u32), u64>,
    /// Values are exact for internal degree ≤ this bound; None means the
    /// whole table is exact.
    pub exact_through: Option<u32>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// From Macaulay display rows: `rows[r][i]` is β_{i, i+r}.
    pub fn from_rows(rows: &[&[u64]]) -> Self {
        let mut t = BettiTable::new();
        for (r, row) in rows.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                t.set(i, (i + r) as u32, b);
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: u32, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), beta);
        }
    }

    pub fn add(&mut self, i: usize, j: u32, beta: u64) {
        let b = self.get(i, j) + beta;
        self.set(i, j, b);
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries.iter().map(|(&(i, j), &beta)| BettiEntry { i, j, beta }).collect()
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, b)| b).sum()
    }

    /// Σᵢ (−1)^i β_{i,j} for every j that occurs.
    pub fn alternating_sums(&self) -> BTreeMap<u32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            *out.entry(j).or_insert(0) += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        out
    }

    /// Whether the alternating sums reproduce the Hilbert numerator, up to
    /// the exactness bound of both sides.
    pub fn matches_numerator(&self, h: &HilbertData) -> bool {
        let sums = self.alternating_sums();
        let bound = match (self.exact_through, h.exact_through) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let top = sums.keys().last().copied().unwrap_or(0).max(h.numerator.len() as u32);
        (0..=top).filter(|&j| bound.is_none_or(|b| j <= b)).all(|j| sums.get(&j).copied().unwrap_or(0) == h.numerator.get(j as usize).copied().unwrap_or(0))
    }

    /// Same nonzero entries in degrees both tables know exactly.
    pub fn agrees_with(&self, o: &BettiTable) -> bool {
        let bound = match (self.exact_through, o.exact_through) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let within = |j: u32| bound.is_none_or(|b| j <= b);
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(o.entries.keys()).filter(|k| within(k.1)).collect();
        keys.into_iter().all(|&(i, j)| self.get(i, j) == o.get(i, j))
    }

    /// One line per row r = j − i, entries for i = 0..=length, '-' for zero.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let len = self.length();
        let rmax = self.entries.keys().map(|&(i, j)| j as usize - i).max().unwrap_or(0);
        (0..=rmax).map(|r| (0..=len).map(|i| self.get(i, (i + r) as u32)).collect()).collect()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let width = self.entries.values().map(|b| b.to_string().len()).max().unwrap_or(1);
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|&b| if b == 0 { format!("{:>width$}", "-") } else { format!("{b:>width$}") }).collect();
            write!(f, "{}", cells.join(" "))?;
            if r + 1 < rows.len() {
                writeln!(f)?;
            }
        }
        if let Some(b) = self.exact_through {
            write!(f, "\n(exact through degree {b})")?;
        }
        Ok(())
    }
}

/// Graded free resolution F₀ ← F₁ ← … of S/I.
#[derive(Clone, Debug)]
pub struct Resolution<R: Field> {
    /// F₀ = S, F₁, F₂, …
    pub modules: Vec<FreeModule>,
    /// `maps[i]` lists the images in F_i of the basis of F_{i+1}.
    pub maps: Vec<Vec<Vector<R>>>,
    pub betti: BettiTable,
    pub complete: bool,
}

/// Minimal graded free resolution by iterated syzygies, keeping a minimal
/// generating set at each step.
pub fn free_resolution<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<Resolution<R>> {
    resolve(ideal, cfg, true)
}

/// Resolution whose differentials are full Groebner bases of the syzygy
/// modules (not minimal); its minimal Betti numbers come from
/// [`Resolution::minimal_betti`].
pub fn nonminimal_resolution<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<Resolution<R>> {
    resolve(ideal, cfg, false)
}

fn resolve<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig, prune: bool) -> GroebnerResult<Resolution<R>> {
    let f0 = FreeModule::ring_module(ideal.ring());
    let gens = ideal.vectors();
    let first: Vec<Vector<R>> = if prune {
        minimal_generators(&f0, &gens)?.into_iter().map(|i| gens[i].clone()).collect()
    } else {
        gens
    };
    let mut modules = vec![f0];
    let mut maps = Vec::new();
    let mut complete = true;
    let mut cols = first;
    let nvars = ideal.ring().nvars();
    while !cols.is_empty() && maps.len() <= nvars {
        let target = modules.last().expect("F0").clone();
        let syz = syzygies(&target, &cols, cfg)?;
        complete &= syz.complete;
        modules.push(syz.source.clone());
        maps.push(cols);
        cols = if prune {
            syz.generators
        } else {
            let gb = super::engine::module_gb(&syz.source, &syz.generators, cfg)?;
            complete &= gb.complete;
            gb.basis
        };
    }
    let mut res = Resolution { modules, maps, betti: BettiTable::new(), complete };
    res.betti = res.minimal_betti();
    if !res.complete {
        res.betti.exact_through = Some(cfg.max_degree);
    }
    Ok(res)
}

impl<R: Field> Resolution<R> {
    /// β_{i,j} = #(degree-j summands of F_i) − rank of the constant part of
    /// d_i on them − rank of the constant part of d_{i+1} into them. For a
    /// minimal resolution both ranks vanish; otherwise this is the count left
    /// after cancelling unit entries.
    pub fn minimal_betti(&self) -> BettiTable {
        let mut t = BettiTable::new();
        let const_rank = |k: usize, j: u32| -> usize {
            // d_{k+1}: F_{k+1} → F_k, degree-j rows and columns
            let (src, dst) = (&self.modules[k + 1], &self.modules[k]);
            let cols: Vec<usize> = (0..src.rank()).filter(|&c| src.shifts[c] == j).collect();
            let rows: Vec<usize> = (0..dst.rank()).filter(|&c| dst.shifts[c] == j).collect();
            if cols.is_empty() || rows.is_empty() {
                return 0;
            }
            let ctx = self.maps[k][cols[0]].lead().expect("nonzero").1.ctx();
            let m: Vec<Vec<R>> = cols
                .iter()
                .map(|&c| {
                    rows.iter()
                        .map(|&r| {
                            self.maps[k][c]
                                .terms()
                                .iter()
                                .find(|(tm, _)| tm.comp as usize == r && tm.mono == Mono::one())
                                .map_or_else(|| R::zero(&ctx), |x| x.1.clone())
                        })
                        .collect()
                })
                .collect();
            dense_rank(m, rows.len())
        };
        t.set(0, 0, if self.maps.is_empty() { 1 } else { 1 - const_rank(0, 0) as u64 });
        for (i, f) in self.modules.iter().enumerate().skip(1) {
            let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
            for &s in &f.shifts {
                *counts.entry(s).or_insert(0) += 1;
            }
            for (j, n) in counts {
                let into = if i < self.maps.len() { const_rank(i, j) } else { 0 };
                let out = const_rank(i - 1, j);
                let b = n as i64 - into as i64 - out as i64;
                t.set(i, j, b.max(0) as u64);
            }
        }
        t
    }

    /// d_i ∘ d_{i+1} = 0 for every pair of consecutive maps.
    pub fn is_complex(&self) -> bool {
        for k in 0..self.maps.len().saturating_sub(1) {
            let target = &self.modules[k];
            for col in &self.maps[k + 1] {
                let mut acc = Vector::zero();
                for (t, c) in col.terms() {
                    acc = acc.add(target, &self.maps[k][t.comp as usize].mul_term(&t.mono, c));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, Modulus, Rat};
    use crate::polylin::{Poly, PolyCtx, PolyRing};

    fn ideal(names: &[&str], gens: &[&str]) -> GradedIdeal<Rat> {
        let c = PolyCtx::new(PolyRing::grevlex(names), ());
        GradedIdeal::new(&c, gens.iter().map(|s| Poly::parse(&c, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let t = BettiTable::from_rows(&[&[1], &[0, 3, 2]]);
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"beta\":3"));
        assert_eq!(serde_json::from_str::<BettiTable>(&s).unwrap(), t);
    }

    #[test]
    fn twisted_cubic_shape() {
        let i = ideal(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        let r = free_resolution(&i, &GbConfig::default()).unwrap();
        assert!(r.complete);
        assert!(r.is_complex());
        assert_eq!(r.betti, BettiTable::from_rows(&[&[1], &[0, 3, 2]]));
        assert_eq!(r.betti.to_string(), "1 - -\n- 3 2");
        let h = super::super::ideal::hilbert(&i, 6, &GbConfig::default()).unwrap();
        assert!(r.betti.matches_numerator(&h));
    }

    #[test]
    fn koszul_complex_of_three_variables() {
        let i = ideal(&["a", "b", "c"], &["a", "b", "c"]);
        let r = free_resolution(&i, &GbConfig::default()).unwrap();
        assert_eq!(r.betti, BettiTable::from_rows(&[&[1, 3, 3, 1]]));
    }

    #[test]
    fn nonminimal_resolution_minimises_to_same_table() {
        let i = ideal(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c", "a^2*d"]);
        let cfg = GbConfig::default();
        let min = free_resolution(&i, &cfg).unwrap();
        let non = nonminimal_resolution(&i, &cfg).unwrap();
        assert!(non.is_complex());
        assert_eq!(min.betti, non.betti);
    }

    #[test]
    fn q_and_fp_tables_agree() {
        let i = ideal(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        let m = Modulus::new(31).unwrap();
        let cf: PolyCtx<Fp> = PolyCtx::new(i.ring().clone(), m);
        let gf = i.generators().iter().map(|g| g.map_coeffs(&m, |x| Fp::from_rat(&m, x).unwrap())).collect();
        let jf = GradedIdeal::new(&cf, gf).unwrap();
        let cfg = GbConfig::default();
        assert_eq!(free_resolution(&i, &cfg).unwrap().betti, free_resolution(&jf, &cfg).unwrap().betti);
    }

    #[test]
    fn json_shape() {
        let t = BettiTable::from_rows(&[&[1], &[0, 3, 2]]);
        let v = serde_json::to_value(t.entries()).unwrap();
        assert_eq!(v[1], serde_json::json!({"i": 1, "j": 2, "beta": 3}));
    }
}

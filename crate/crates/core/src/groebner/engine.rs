//! Homogeneous Buchberger over graded free modules, one degree at a time.
//!
//! In degree d the S-pairs and input generators of that degree are reduced
//! by the basis elements of lower degree through a memoised normal form of
//! each term; the reduced rows are put in reduced echelon form and the
//! pivot rows become the new basis elements. Every degree-d element is then
//! reduced with respect to everything else, so the output is the reduced
//! Groebner basis truncated at the degree budget.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::linear::{combine, Echelon, Row};
use super::module::{FreeModule, Term, Vector};
use super::{GroebnerError, GroebnerResult};
use crate::exactfield::Field;
use crate::exec::Exec;
use crate::polylin::Mono;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    /// Highest degree processed; pairs beyond it mark the result incomplete.
    pub max_degree: u32,
    /// Cap on the number of S-pairs reduced.
    pub max_pairs: Option<usize>,
    pub exec: Exec,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_degree: 8, max_pairs: None, exec: Exec::default() }
    }
}

impl GbConfig {
    pub fn with_degree(max_degree: u32) -> Self {
        GbConfig { max_degree, ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub product_skipped: usize,
    pub chain_skipped: usize,
    pub zero_reductions: usize,
}

/// Reduced, monic Groebner basis of a submodule, truncated at `max_degree`.
#[derive(Clone, Debug)]
pub struct ModuleGb<R: Field> {
    pub module: FreeModule,
    pub basis: Vec<Vector<R>>,
    pub degrees: Vec<u32>,
    /// No pair or generator was left unprocessed.
    pub complete: bool,
    pub max_degree: u32,
    pub stats: GbStats,
}

/// The terms of one degree, largest first, with their positions.
pub(crate) struct DegreeSpace {
    pub terms: Vec<Term>,
    pub index: HashMap<Term, u32>,
}

impl DegreeSpace {
    pub fn new(module: &FreeModule, d: u32) -> DegreeSpace {
        let terms = module.terms_of_degree(d);
        let index = terms.iter().enumerate().map(|(i, t)| (*t, i as u32)).collect();
        DegreeSpace { terms, index }
    }

    pub fn idx(&self, t: &Term) -> u32 {
        self.index[t]
    }
}

/// Memoised normal forms of the terms of one degree.
pub(crate) struct Reducer<'a, R: Field> {
    basis: &'a [Vector<R>],
    leads: Vec<(Term, usize)>,
    space: &'a DegreeSpace,
    memo: Vec<Option<Row<R>>>,
    one: R,
}

impl<'a, R: Field> Reducer<'a, R> {
    /// `usable` selects the basis elements allowed as divisors.
    pub fn new(basis: &'a [Vector<R>], usable: impl Fn(usize) -> bool, space: &'a DegreeSpace, one: R) -> Self {
        let leads = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| usable(*i))
            .map(|(i, g)| (g.lead_term().expect("basis elements are nonzero"), i))
            .collect();
        Reducer { basis, leads, space, memo: vec![None; space.terms.len()], one }
    }

    fn divisor(&self, t: &Term) -> Option<(usize, Mono)> {
        self.leads
            .iter()
            .find(|(l, _)| l.comp == t.comp && l.mono.divides(&t.mono))
            .map(|(l, i)| (*i, t.mono.div(&l.mono).expect("divides")))
    }

    pub fn fill(&mut self, idx: u32) {
        let mut stack = vec![idx];
        while let Some(&t) = stack.last() {
            if self.memo[t as usize].is_some() {
                stack.pop();
                continue;
            }
            let term = self.space.terms[t as usize];
            match self.divisor(&term) {
                None => {
                    self.memo[t as usize] = Some(vec![(t, self.one.clone())]);
                    stack.pop();
                }
                Some((g, m)) => {
                    let tail: Vec<(u32, R)> = self.basis[g].terms()[1..]
                        .iter()
                        .map(|(s, c)| (self.space.idx(&s.mul(&m)), c.neg()))
                        .collect();
                    let missing: Vec<u32> = tail.iter().map(|t| t.0).filter(|&i| self.memo[i as usize].is_none()).collect();
                    if missing.is_empty() {
                        let parts: Vec<(&Row<R>, R)> =
                            tail.iter().map(|(i, c)| (self.memo[*i as usize].as_ref().expect("filled"), c.clone())).collect();
                        self.memo[t as usize] = Some(combine(&parts));
                        stack.pop();
                    } else {
                        stack.extend(missing);
                    }
                }
            }
        }
    }

    pub fn row(&self, idx: u32) -> &Row<R> {
        self.memo[idx as usize].as_ref().expect("call fill first")
    }

    /// Normal form of Σ c·term; every index must have been filled.
    pub fn combine_filled(&self, job: &[(u32, R)]) -> Row<R> {
        let parts: Vec<(&Row<R>, R)> = job.iter().map(|(i, c)| (self.row(*i), c.clone())).collect();
        combine(&parts)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

fn check_homogeneous<R: Field>(module: &FreeModule, gens: &[Vector<R>]) -> GroebnerResult<()> {
    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() && g.homogeneous_degree(module).is_none() {
            return Err(GroebnerError::NotHomogeneous(i));
        }
        if g.terms().iter().any(|(t, _)| t.comp as usize >= module.rank()) {
            return Err(GroebnerError::RankMismatch { rank: module.rank(), index: i });
        }
    }
    Ok(())
}

pub fn module_gb<R: Field>(module: &FreeModule, gens: &[Vector<R>], cfg: &GbConfig) -> GroebnerResult<ModuleGb<R>> {
    check_homogeneous(module, gens)?;
    let mut out = ModuleGb {
        module: module.clone(),
        basis: Vec::new(),
        degrees: Vec::new(),
        complete: true,
        max_degree: cfg.max_degree,
        stats: GbStats::default(),
    };
    let Some(one) = gens.iter().find_map(|g| g.lead()).map(|(_, c)| R::one(&c.ctx())) else {
        return Ok(out);
    };
    let mut by_degree: BTreeMap<u32, Vec<&Vector<R>>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        by_degree.entry(g.homogeneous_degree(module).expect("checked")).or_default().push(g);
    }
    let mut pairs: BTreeMap<u32, Vec<Pair>> = BTreeMap::new();
    let ideal_case = module.rank() == 1;
    loop {
        let d = match (by_degree.keys().next(), pairs.keys().next()) {
            (None, None) => break,
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (Some(&a), Some(&b)) => a.min(b),
        };
        if d > cfg.max_degree {
            out.complete = false;
            break;
        }
        let todo = pairs.remove(&d).unwrap_or_default();
        let inputs = by_degree.remove(&d).unwrap_or_default();
        let mut kept = Vec::new();
        for p in todo {
            if chain_redundant(&out, &p) {
                out.stats.chain_skipped += 1;
            } else {
                kept.push(p);
            }
        }
        if let Some(cap) = cfg.max_pairs {
            if out.stats.pairs_reduced + kept.len() > cap {
                out.complete = false;
                break;
            }
        }
        out.stats.pairs_reduced += kept.len();

        let space = DegreeSpace::new(module, d);
        let mut jobs: Vec<Vec<(u32, R)>> = Vec::with_capacity(inputs.len() + kept.len());
        for g in &inputs {
            jobs.push(g.terms().iter().map(|(t, c)| (space.idx(t), c.clone())).collect());
        }
        for p in &kept {
            let (gi, gj) = (&out.basis[p.i], &out.basis[p.j]);
            let mi = p.lcm.mono.div(&gi.lead_term().expect("nonzero").mono).expect("lcm");
            let mj = p.lcm.mono.div(&gj.lead_term().expect("nonzero").mono).expect("lcm");
            let mut job: Vec<(u32, R)> = gi.terms()[1..].iter().map(|(t, c)| (space.idx(&t.mul(&mi)), c.clone())).collect();
            job.extend(gj.terms()[1..].iter().map(|(t, c)| (space.idx(&t.mul(&mj)), c.neg())));
            jobs.push(job);
        }
        let basis_len = out.basis.len();
        let mut reducer = Reducer::new(&out.basis, |i| i < basis_len, &space, one.clone());
        for job in &jobs {
            for (i, _) in job {
                reducer.fill(*i);
            }
        }
        let rows: Vec<Row<R>> = cfg.exec.map(&jobs, |job| reducer.combine_filled(job));
        let mut ech = Echelon::new();
        for r in &rows {
            if r.is_empty() || ech.insert(r).is_none() {
                out.stats.zero_reductions += 1;
            }
        }
        let start = out.basis.len();
        for (_, row) in ech.into_rows() {
            let terms = row.into_iter().map(|(i, c)| (space.terms[i as usize], c)).collect();
            out.basis.push(Vector::from_sorted(terms));
            out.degrees.push(d);
        }
        for k in start..out.basis.len() {
            let lk = out.basis[k].lead_term().expect("nonzero");
            for i in 0..k {
                let li = out.basis[i].lead_term().expect("nonzero");
                if li.comp != lk.comp {
                    continue;
                }
                if ideal_case && li.mono.is_coprime(&lk.mono) {
                    out.stats.product_skipped += 1;
                    continue;
                }
                let lcm = Term { comp: lk.comp, mono: li.mono.lcm(&lk.mono) };
                pairs.entry(module.degree(&lcm)).or_default().push(Pair { i, j: k, lcm });
            }
        }
    }
    Ok(out)
}

/// Buchberger's chain criterion: some third lead divides the lcm and both
/// partial lcms are proper divisors, hence lower-degree pairs already treated.
fn chain_redundant<R: Field>(gb: &ModuleGb<R>, p: &Pair) -> bool {
    let li = gb.basis[p.i].lead_term().expect("nonzero").mono;
    let lj = gb.basis[p.j].lead_term().expect("nonzero").mono;
    gb.basis.iter().enumerate().any(|(k, g)| {
        if k == p.i || k == p.j {
            return false;
        }
        let lk = g.lead_term().expect("nonzero");
        lk.comp == p.lcm.comp && lk.mono.divides(&p.lcm.mono) && li.lcm(&lk.mono) != p.lcm.mono && lj.lcm(&lk.mono) != p.lcm.mono
    })
}

impl<R: Field> ModuleGb<R> {
    pub fn leads(&self) -> Vec<Term> {
        self.basis.iter().map(|g| g.lead_term().expect("nonzero")).collect()
    }

    /// Remainder of full division; homogeneity is not required.
    pub fn normal_form(&self, v: &Vector<R>) -> Vector<R> {
        let leads = self.leads();
        let mut p = v.clone();
        let mut rem: Vec<(Term, R)> = Vec::new();
        while let Some((t, c)) = p.lead().cloned() {
            match leads.iter().position(|l| l.comp == t.comp && l.mono.divides(&t.mono)) {
                Some(k) => {
                    let m = t.mono.div(&leads[k].mono).expect("divides");
                    p = p.sub(&self.module, &self.basis[k].mul_term(&m, &c));
                }
                None => {
                    rem.push((t, c));
                    p = Vector::from_sorted(p.terms()[1..].to_vec());
                }
            }
        }
        Vector::from_sorted(rem)
    }

    /// Basis elements of degree ≤ d.
    pub fn truncated(&self, d: u32) -> impl Iterator<Item = &Vector<R>> {
        self.basis.iter().zip(&self.degrees).filter(move |(_, &e)| e <= d).map(|(g, _)| g)
    }
}

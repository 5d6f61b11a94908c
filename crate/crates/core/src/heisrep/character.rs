use std::fmt;

use serde::Serialize;

use super::classes::ClassData;
use super::{HeisError, HeisResult};
use crate::exactfield::{FieldElem, Rat};
use crate::exec::Exec;

/// Class function, one value per class of a [`ClassData`].
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub values: Vec<FieldElem>,
}

impl Character {
    pub fn new(values: Vec<FieldElem>) -> Character {
        Character { values }
    }

    pub fn constant(n: usize, v: i64) -> Character {
        Character { values: vec![FieldElem::int(v); n] }
    }

    pub fn degree(&self) -> FieldElem {
        self.values[0].clone()
    }

    pub fn add(&self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() }
    }

    pub fn scale(&self, k: i64) -> Character {
        let r = Rat::int(k);
        Character { values: self.values.iter().map(|a| a.scale(&r)).collect() }
    }

    pub fn conj(&self) -> Character {
        Character { values: self.values.iter().map(|a| a.conj()).collect() }
    }

    pub fn galois_theta(&self, i: i64) -> Character {
        Character { values: self.values.iter().map(|a| a.galois_theta(i)).collect() }
    }

    /// ψ_k(χ)(g) = χ(g^k).
    pub fn adams(&self, classes: &ClassData, k: usize) -> Character {
        Character { values: (0..self.values.len()).map(|c| self.values[classes.power_class(c, k)].clone()).collect() }
    }

    pub fn sym_power(&self, classes: &ClassData, k: usize) -> Character {
        self.power(classes, k, false)
    }

    pub fn ext_power(&self, classes: &ClassData, k: usize) -> Character {
        self.power(classes, k, true)
    }

    fn power(&self, classes: &ClassData, k: usize, alternating: bool) -> Character {
        let values = (0..self.values.len())
            .map(|c| {
                let traces: Vec<FieldElem> = (0..=k).map(|j| self.values[classes.power_class(c, j)].clone()).collect();
                newton(&traces, k, alternating)
            })
            .collect();
        Character { values }
    }
}

/// Newton recursion from power traces p_j = tr(g^j) (entry 0 ignored):
/// h_k = (1/k) Σ_{j=1..k} p_j h_{k−j}, and e_k the same with sign (−1)^{j−1}.
pub fn newton(power_traces: &[FieldElem], k: usize, alternating: bool) -> FieldElem {
    let mut h = vec![FieldElem::one()];
    for n in 1..=k {
        let mut acc = FieldElem::zero();
        for j in 1..=n {
            let term = &power_traces[j] * &h[n - j];
            if alternating && j % 2 == 0 {
                acc = &acc - &term;
            } else {
                acc = &acc + &term;
            }
        }
        h.push(acc.scale(&Rat::new(1, n as i64)));
    }
    h.pop().expect("nonempty")
}

/// Irreducible multiplicities, in table order, zero entries dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Decomposition {
    pub terms: Vec<(String, i64)>,
}

impl Decomposition {
    pub fn new(terms: Vec<(String, i64)>) -> Decomposition {
        Decomposition { terms: terms.into_iter().filter(|(_, m)| *m != 0).collect() }
    }

    pub fn from_terms(terms: &[(&str, i64)]) -> Decomposition {
        Decomposition::new(terms.iter().map(|(l, m)| (l.to_string(), *m)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, label: &str) -> i64 {
        self.terms.iter().find(|(l, _)| l == label).map_or(0, |(_, m)| *m)
    }

    pub fn has_negative(&self) -> bool {
        self.terms.iter().any(|(_, m)| *m < 0)
    }

    /// Order-insensitive comparison.
    pub fn same_as(&self, o: &Decomposition) -> bool {
        let mut a = self.terms.clone();
        let mut b = o.terms.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Parses "3V2 + 4V2#", "I + 28S + 35Z", "0".
    pub fn parse(s: &str) -> HeisResult<Decomposition> {
        let s = s.trim();
        if s == "0" {
            return Ok(Decomposition::default());
        }
        let mut terms: Vec<(String, i64)> = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let label = part[digits.len()..].trim();
            if label.is_empty() {
                return Err(HeisError::BadDecomposition(s.to_string()));
            }
            let m: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| HeisError::BadDecomposition(s.to_string()))? };
            match terms.iter_mut().find(|(l, _)| l == label) {
                Some(t) => t.1 += m,
                None => terms.push((label.to_string(), m)),
            }
        }
        Ok(Decomposition::new(terms))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}{l}")?;
            }
        }
        Ok(())
    }
}

/// Character table: irreducible rows over a fixed class list, plus named
/// groups of rows that are reported as one label when their multiplicities
/// coincide (the 24 Z(s,t) as Z).
#[derive(Clone, Debug)]
pub struct CharTable {
    pub classes: ClassData,
    pub names: Vec<String>,
    pub rows: Vec<Character>,
    pub aggregates: Vec<(String, Vec<usize>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableExport {
    pub class_labels: Vec<String>,
    pub sizes: Vec<usize>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl CharTable {
    pub fn row(&self, name: &str) -> Option<&Character> {
        self.names.iter().position(|n| n == name).map(|i| &self.rows[i])
    }

    /// Character of a (possibly aggregated) label.
    pub fn character_of(&self, name: &str) -> Option<Character> {
        if let Some(r) = self.row(name) {
            return Some(r.clone());
        }
        let (_, idx) = self.aggregates.iter().find(|(n, _)| n == name)?;
        let mut acc = Character::constant(self.classes.len(), 0);
        for &i in idx {
            acc = acc.add(&self.rows[i]);
        }
        Some(acc)
    }

    /// Σ mult·χ over a decomposition.
    pub fn character_of_decomposition(&self, d: &Decomposition) -> HeisResult<Character> {
        let mut acc = Character::constant(self.classes.len(), 0);
        for (l, m) in &d.terms {
            let c = self.character_of(l).ok_or_else(|| HeisError::BadDecomposition(l.clone()))?;
            acc = acc.add(&c.scale(*m));
        }
        Ok(acc)
    }

    /// (1/|G|) Σ_c |c| χ(c) conj(ψ(c)).
    pub fn inner(&self, chi: &Character, psi: &Character) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (c, size) in self.classes.sizes.iter().enumerate() {
            let t = &chi.values[c] * &psi.values[c].conj();
            acc = &acc + &t.scale(&Rat::int(*size as i64));
        }
        acc.scale(&Rat::new(1, self.classes.order as i64))
    }

    /// Exact multiplicities, negative values allowed (virtual characters).
    pub fn decompose_virtual(&self, chi: &Character) -> HeisResult<Decomposition> {
        self.decompose_with(chi, Exec::default())
    }

    pub fn decompose_with(&self, chi: &Character, exec: Exec) -> HeisResult<Decomposition> {
        let mults: Vec<FieldElem> = exec.map(&self.rows, |r| self.inner(chi, r));
        let mut ints = Vec::with_capacity(mults.len());
        for (name, m) in self.names.iter().zip(&mults) {
            let v = m
                .as_rational()
                .filter(|r| r.is_integer())
                .ok_or_else(|| HeisError::NotACharacter { label: name.clone(), value: m.to_string() })?;
            ints.push(v.to_i64().ok_or_else(|| HeisError::NotACharacter { label: name.clone(), value: m.to_string() })?);
        }
        // reconstruction must give χ back
        let back = self.rows.iter().zip(&ints).fold(Character::constant(self.classes.len(), 0), |acc, (r, &m)| acc.add(&r.scale(m)));
        if &back != chi {
            return Err(HeisError::NotACharacter { label: "remainder".into(), value: "nonzero".into() });
        }
        Ok(self.aggregate(&ints))
    }

    /// Multiplicities, failing on any negative one.
    pub fn decompose(&self, chi: &Character) -> HeisResult<Decomposition> {
        let d = self.decompose_virtual(chi)?;
        if let Some((l, m)) = d.terms.iter().find(|(_, m)| *m < 0) {
            return Err(HeisError::NotACharacter { label: l.clone(), value: m.to_string() });
        }
        Ok(d)
    }

    fn aggregate(&self, ints: &[i64]) -> Decomposition {
        let mut terms = Vec::new();
        let mut consumed = vec![false; ints.len()];
        let mut emitted_groups = vec![false; self.aggregates.len()];
        for i in 0..ints.len() {
            if consumed[i] {
                continue;
            }
            if let Some(gi) = self.aggregates.iter().position(|(_, idx)| idx.contains(&i)) {
                let (name, idx) = &self.aggregates[gi];
                let first = ints[idx[0]];
                if idx.iter().all(|&j| ints[j] == first) {
                    if !emitted_groups[gi] {
                        terms.push((name.clone(), first));
                        emitted_groups[gi] = true;
                    }
                    for &j in idx {
                        consumed[j] = true;
                    }
                    continue;
                }
            }
            terms.push((self.names[i].clone(), ints[i]));
        }
        Decomposition::new(terms)
    }

    /// Σ_c |c| χ_i(c) conj χ_j(c) = |G| δ_ij.
    pub fn row_orthogonality(&self, exec: Exec) -> bool {
        let n = self.rows.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        exec.map(&pairs, |&(i, j)| {
            let ip = self.inner(&self.rows[i], &self.rows[j]);
            ip == FieldElem::int(if i == j { 1 } else { 0 })
        })
        .into_iter()
        .all(|b| b)
    }

    /// Σ_χ χ(c) conj χ(c′) = δ_cc′ |G|/|c|.
    pub fn column_orthogonality(&self, exec: Exec) -> bool {
        let k = self.classes.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        exec.map(&pairs, |&(c, d)| {
            let mut acc = FieldElem::zero();
            for r in &self.rows {
                acc = &acc + &(&r.values[c] * &r.values[d].conj());
            }
            let expected = if c == d { Rat::new((self.classes.order / self.classes.sizes[c]) as i64, 1) } else { Rat::int(0) };
            acc == FieldElem::from_rat(&expected)
        })
        .into_iter()
        .all(|b| b)
    }

    pub fn sum_dim_squared(&self) -> i64 {
        self.rows
            .iter()
            .map(|r| r.degree().as_rational().and_then(|q| q.to_i64()).expect("integer degree"))
            .map(|d| d * d)
            .sum()
    }

    pub fn export(&self) -> TableExport {
        TableExport {
            class_labels: self.classes.labels.clone(),
            sizes: self.classes.sizes.clone(),
            rows: self.names.iter().zip(&self.rows).map(|(n, r)| (n.clone(), r.values.iter().map(|v| v.to_string()).collect())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let d = Decomposition::parse("3V2 + 4V2#").unwrap();
        assert_eq!(d.terms, vec![("V2".to_string(), 3), ("V2#".to_string(), 4)]);
        assert_eq!(d.to_string(), "3V2 + 4V2#");
        assert!(Decomposition::parse("0").unwrap().is_zero());
        assert!(Decomposition::parse("I + 28S + 35Z").unwrap().same_as(&Decomposition::from_terms(&[("Z", 35), ("I", 1), ("S", 28)])));
    }

    #[test]
    fn newton_on_scalars() {
        // a 2-dim rep with eigenvalues 1, 1: S^k has dim k+1, Λ² has dim 1
        let p = vec![FieldElem::int(2); 6];
        assert_eq!(newton(&p, 5, false), FieldElem::int(6));
        assert_eq!(newton(&p, 2, true), FieldElem::int(1));
        assert_eq!(newton(&p, 3, true), FieldElem::int(0));
        assert_eq!(newton(&p, 0, false), FieldElem::int(1));
    }
}

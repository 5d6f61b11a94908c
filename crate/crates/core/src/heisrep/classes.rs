use std::collections::HashMap;

use super::helem::HElem;
use super::sl2::Sl2Classes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    G7,
    Sl2,
}

/// Conjugacy classes with sizes and power maps.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub group: GroupKind,
    pub labels: Vec<String>,
    pub sizes: Vec<usize>,
    pub order: usize,
    /// power_map[c][k] is the class of g^k for g in class c, k < ord(g).
    pub power_map: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn power_class(&self, c: usize, k: usize) -> usize {
        let p = &self.power_map[c];
        p[k % p.len()]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// (m, n) ≠ 0 up to sign, normalised so the first nonzero coordinate is in 1..=3.
pub fn canonical_pair(m: u8, n: u8) -> (u8, u8) {
    let neg = |x: u8| (7 - x) % 7;
    let first = if m != 0 { m } else { n };
    if first <= 3 {
        (m, n)
    } else {
        (neg(m), neg(n))
    }
}

/// The 24 canonical nonzero pairs in lexicographic order.
pub fn canonical_pairs() -> Vec<(u8, u8)> {
    let mut v: Vec<(u8, u8)> = (0..7u8)
        .flat_map(|m| (0..7u8).map(move |n| (m, n)))
        .filter(|&(m, n)| (m, n) != (0, 0) && canonical_pair(m, n) == (m, n))
        .collect();
    v.sort();
    v
}

/// Classes of G₇: 7 central {a}, 24 classes C(m,n) of 14 elements, 7 classes Ci(a) of 49.
pub struct G7Classes {
    pub data: ClassData,
    pub reps: Vec<HElem>,
    class_of: HashMap<HElem, usize>,
}

impl G7Classes {
    pub fn compute() -> G7Classes {
        let pairs = canonical_pairs();
        let mut labels = Vec::new();
        let mut reps = Vec::new();
        for a in 0..7 {
            labels.push(format!("{{{a}}}"));
            reps.push(HElem::new(a, 0, 0, false));
        }
        for &(m, n) in &pairs {
            labels.push(format!("C({m},{n})"));
            reps.push(HElem::new(0, m as i64, n as i64, false));
        }
        for a in 0..7 {
            labels.push(format!("Ci({a})"));
            reps.push(HElem::new(a, 0, 0, true));
        }
        let all = HElem::all();
        let mut class_of = HashMap::new();
        let mut sizes = Vec::new();
        for (ci, r) in reps.iter().enumerate() {
            let mut orbit: Vec<HElem> = all.iter().map(|g| g.mul(r).mul(&g.inv())).collect();
            orbit.sort();
            orbit.dedup();
            for x in &orbit {
                let prev = class_of.insert(*x, ci);
                assert!(prev.is_none(), "G7 class representatives are not distinct");
            }
            sizes.push(orbit.len());
        }
        assert_eq!(class_of.len(), 686, "G7 classes do not cover the group");
        let power_map = reps
            .iter()
            .map(|r| {
                let mut v = vec![class_of[&HElem::identity()]];
                let mut x = *r;
                while x != HElem::identity() {
                    v.push(class_of[&x]);
                    x = x.mul(r);
                }
                v
            })
            .collect();
        let data = ClassData { group: GroupKind::G7, labels, sizes, order: 686, power_map };
        G7Classes { data, reps, class_of }
    }

    pub fn class_of(&self, g: &HElem) -> usize {
        self.class_of[g]
    }
}

pub fn sl2_class_data(c: &Sl2Classes) -> ClassData {
    ClassData {
        group: GroupKind::Sl2,
        labels: c.labels.iter().map(|s| s.to_string()).collect(),
        sizes: c.sizes(),
        order: 336,
        power_map: c.power_map(),
    }
}

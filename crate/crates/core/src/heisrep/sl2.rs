use std::collections::{HashMap, VecDeque};
use std::fmt;

/// Element of SL₂(F₇), row-major [[a, b], [c, d]].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2 {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

impl fmt::Debug for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Sl2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Sl2 {
        let r = |x: i64| x.rem_euclid(7) as u8;
        let m = Sl2 { a: r(a), b: r(b), c: r(c), d: r(d) };
        debug_assert_eq!(m.det(), 1);
        m
    }

    pub fn det(&self) -> u8 {
        ((self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64).rem_euclid(7)) as u8
    }

    pub fn identity() -> Sl2 {
        Sl2::new(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Sl2 {
        Sl2::new(-1, 0, 0, -1)
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        let (e, f, g, h) = (o.a as i64, o.b as i64, o.c as i64, o.d as i64);
        Sl2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }

    pub fn inv(&self) -> Sl2 {
        Sl2::new(self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64)
    }

    pub fn pow(&self, e: u32) -> Sl2 {
        (0..e).fold(Sl2::identity(), |acc, _| acc.mul(self))
    }

    pub fn order(&self) -> u32 {
        let mut k = 1;
        let mut x = *self;
        while x != Sl2::identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    pub fn trace(&self) -> u8 {
        (self.a + self.d) % 7
    }

    /// All 336 elements in lexicographic order.
    pub fn all() -> Vec<Sl2> {
        let mut v = Vec::with_capacity(336);
        for a in 0..7i64 {
            for b in 0..7 {
                for c in 0..7 {
                    for d in 0..7 {
                        if (a * d - b * c).rem_euclid(7) == 1 {
                            v.push(Sl2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        v
    }

    /// Image of μ: diag(2, 4).
    pub fn mu_bar() -> Sl2 {
        Sl2::new(2, 0, 0, 4)
    }

    /// Image of ν: [[1,0],[2,1]].
    pub fn nu_bar() -> Sl2 {
        Sl2::new(1, 0, 2, 1)
    }

    /// Image of δ: [[0,−1],[1,0]].
    pub fn delta_bar() -> Sl2 {
        Sl2::new(0, -1, 1, 0)
    }
}

/// Conjugacy classes of SL₂(F₇) by orbit enumeration, in the column order
/// id, ι, μ, ιμ, ν, ν³, ιν³, ιν, δ, (22;52), (52;55).
pub struct Sl2Classes {
    pub labels: Vec<&'static str>,
    pub reps: Vec<Sl2>,
    pub members: Vec<Vec<Sl2>>,
    class_of: HashMap<Sl2, usize>,
}

pub const SL2_LABELS: [&str; 11] = ["id", "iota", "mu", "iota*mu", "nu", "nu^3", "iota*nu^3", "iota*nu", "delta", "(22;52)", "(52;55)"];

impl Sl2Classes {
    pub fn compute() -> Sl2Classes {
        let m1 = Sl2::minus_identity();
        let mu = Sl2::mu_bar();
        let nu = Sl2::nu_bar();
        let nu3 = nu.pow(3);
        let reps = vec![
            Sl2::identity(),
            m1,
            mu,
            m1.mul(&mu),
            nu,
            nu3,
            m1.mul(&nu3),
            m1.mul(&nu),
            Sl2::delta_bar(),
            Sl2::new(2, 2, 5, 2),
            Sl2::new(5, 2, 5, 5),
        ];
        let all = Sl2::all();
        let mut class_of = HashMap::new();
        let mut members = Vec::new();
        for (ci, r) in reps.iter().enumerate() {
            let mut orbit: Vec<Sl2> = all.iter().map(|g| g.mul(r).mul(&g.inv())).collect();
            orbit.sort();
            orbit.dedup();
            for x in &orbit {
                let prev = class_of.insert(*x, ci);
                assert!(prev.is_none(), "class representatives are not distinct");
            }
            members.push(orbit);
        }
        assert_eq!(class_of.len(), 336, "classes do not cover the group");
        Sl2Classes { labels: SL2_LABELS.to_vec(), reps, members, class_of }
    }

    pub fn class_of(&self, g: &Sl2) -> usize {
        self.class_of[g]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.len()).collect()
    }

    /// power_map[c][k] = class of rep_c^k for k in 0..order(rep_c).
    pub fn power_map(&self) -> Vec<Vec<usize>> {
        self.reps
            .iter()
            .map(|r| (0..r.order()).map(|k| self.class_of(&r.pow(k))).collect())
            .collect()
    }
}

/// Breadth-first closure of a generating set under right multiplication.
/// Returns the elements in discovery order together with a shortest word.
pub fn closure_words<T: Clone + Eq + std::hash::Hash>(id: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<(T, Vec<usize>)> {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut out: Vec<(T, Vec<usize>)> = vec![(id.clone(), Vec::new())];
    seen.insert(id, 0);
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let x = mul(&out[i].0, g);
            if !seen.contains_key(&x) {
                let mut w = out[i].1.clone();
                w.push(gi);
                seen.insert(x.clone(), out.len());
                q.push_back(out.len());
                out.push((x, w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_and_class_sizes() {
        assert_eq!(Sl2::all().len(), 336);
        let c = Sl2Classes::compute();
        assert_eq!(c.sizes(), vec![1, 1, 56, 56, 24, 24, 24, 24, 42, 42, 42]);
        assert_eq!(c.sizes().iter().sum::<usize>(), 336);
    }

    #[test]
    fn generators_generate() {
        let g = closure_words(Sl2::identity(), &[Sl2::mu_bar(), Sl2::nu_bar(), Sl2::delta_bar()], |a, b| a.mul(b));
        assert_eq!(g.len(), 336);
        assert_eq!(Sl2::delta_bar().mul(&Sl2::delta_bar()), Sl2::minus_identity());
    }

    #[test]
    fn order_eight_classes_by_trace() {
        let c = Sl2Classes::compute();
        assert_eq!(c.reps[9].trace(), 4);
        assert_eq!(c.reps[10].trace(), 3);
        assert_eq!(c.reps[9].order(), 8);
    }
}

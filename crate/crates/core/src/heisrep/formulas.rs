use serde::Serialize;

use super::character::{newton, Character, Decomposition};
use super::classes::canonical_pairs;
use super::helem::HElem;
use super::monomat::MonoMat;
use super::nelem::{delta_matrix, mono_mul_dense, Lift};
use super::tables::{v_label, v_sharp_label, G7Table, Sl2Table};
use super::{HeisError, HeisResult};
use crate::exactfield::{Cyc7, FieldElem, Rat};
use crate::exec::Exec;
use crate::polylin::Matrix;

/// Outcome of comparing one displayed formula with the computation.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
    /// Set when the displayed value disagrees but the computation agrees
    /// with an independent closed form.
    pub conflict: Option<String>,
}

impl FormulaCheck {
    fn compare(name: impl Into<String>, expected: &Decomposition, computed: HeisResult<Decomposition>) -> FormulaCheck {
        match computed {
            Ok(d) => FormulaCheck { name: name.into(), expected: expected.to_string(), ok: d.same_as(expected), computed: d.to_string(), conflict: None },
            Err(e) => FormulaCheck { name: name.into(), expected: expected.to_string(), computed: e.to_string(), ok: false, conflict: None },
        }
    }
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn vv(a: i64, i: i64, b: i64) -> Decomposition {
    Decomposition::new(vec![(v_label(i), a), (v_sharp_label(i), b)])
}

/// Displayed symmetric powers S^k V_i, k = 2..14.
pub fn sym_power_expected(k: usize, i: i64) -> Decomposition {
    let (a12, b12) = ((binom(18, 6) / 2 - 42) / 7, (binom(18, 6) / 2 + 42) / 7);
    let (a13, b13) = ((binom(19, 6) / 2 - 42) / 7, (binom(19, 6) / 2 + 42) / 7);
    match k {
        0 => Decomposition::from_terms(&[("I", 1)]),
        1 => vv(1, i, 0),
        2 => vv(0, i + 2, 4),
        3 => vv(8, i + 1, 4),
        4 => vv(10, i + 4, 20),
        5 => vv(38, i + 5, 28),
        6 => vv(56, i + 3, 76),
        7 => Decomposition::from_terms(&[("I", 8), ("S", 28), ("Z", 35)]),
        8 => vv(197, i, 232),
        9 => vv(375, i + 2, 340),
        10 => vv(544, i + 1, 600),
        11 => vv(908, i + 4, 852),
        12 => vv(a12, i + 5, b12),
        13 => vv(a13, i + 3, b13),
        14 => Decomposition::from_terms(&[("I", 4608), ("S", 4488), ("Z", 618)]),
        _ => panic!("no displayed row for S^{k}"),
    }
}

fn parse_sym_name(name: &str) -> Option<(usize, i64)> {
    let rest = name.strip_prefix('S')?;
    let (k, v) = rest.split_once(" V")?;
    Some((k.parse().ok()?, v.parse().ok()?))
}

/// [t^k] 1/((1−t)³(1+t)⁴): the trace of ι on S^k V, since ι has
/// eigenvalues +1 (three times) and −1 (four times) on V.
pub fn iota_trace_sym(k: usize) -> i64 {
    let mut c = vec![0i64; k + 1];
    c[0] = 1;
    for (factor, times) in [(1i64, 3), (-1i64, 4)] {
        for _ in 0..times {
            // multiply by 1/(1 − factor·t)
            for n in 1..=k {
                c[n] += factor * c[n - 1];
            }
        }
    }
    c[k]
}

/// S^k V_i from counting alone. For 7 ∤ k the center acts by one character,
/// which fixes the twist, and dimension plus trace of ι fix the two
/// multiplicities. For 7 | k the multiplicities of I and S are Molien
/// averages: central elements contribute C(6+k,6), the 336 elements of the
/// classes C(m,n) have characteristic polynomial 1 − t⁷ and contribute 1, and
/// the 343 elements over ι contribute the trace of ι.
pub fn sym_power_closed_form(k: usize, i: i64) -> Decomposition {
    let dim = binom(6 + k as i64, 6);
    let tr = iota_trace_sym(k);
    if k.is_multiple_of(7) {
        let i_mult = (7 * dim + 336 + 343 * tr) / 686;
        let s_mult = (7 * dim + 336 - 343 * tr) / 686;
        return Decomposition::from_terms(&[("I", i_mult), ("S", s_mult), ("Z", (dim - i_mult - s_mult) / 48)]);
    }
    let pow3 = |e: i64| (0..e.rem_euclid(6)).fold(1i64, |acc, _| acc * 3 % 7);
    let target = (k as i64 * pow3(i)).rem_euclid(7);
    let j = (0..6).find(|&j| pow3(j) == target).expect("3 generates F7*");
    let n = dim / 7;
    vv((n - tr) / 2, j, (n + tr) / 2)
}

/// Displayed exterior powers Λ^k V_i, k = 2..7.
pub fn ext_power_expected(k: usize, i: i64) -> Decomposition {
    match k {
        2 => vv(3, i + 2, 0),
        3 => vv(1, i + 1, 4),
        4 => vv(1, i + 4, 4),
        5 => vv(3, i + 5, 0),
        6 => vv(1, i + 3, 0),
        7 => Decomposition::from_terms(&[("I", 1)]),
        _ => panic!("no displayed row for Λ^{k}"),
    }
}

/// Displayed V_i ⊗ V_{i+d}, d = 0..3.
pub fn tensor_expected(d: i64, i: i64) -> Decomposition {
    match d {
        0 => vv(3, i + 2, 4),
        1 => vv(3, i + 4, 4),
        2 => vv(3, i + 1, 4),
        3 => Decomposition::from_terms(&[("I", 1), ("Z", 1)]),
        _ => panic!("no displayed row for offset {d}"),
    }
}

/// Displayed H⁰(Ω³(k)), k = 3..10.
pub fn omega3_expected(k: usize) -> Decomposition {
    match k {
        3 => Decomposition::default(),
        4 => vv(1, 1, 4),
        5 => vv(16, 2, 16),
        6 => vv(56, 0, 64),
        7 => Decomposition::from_terms(&[("I", 24), ("S", 24), ("Z", 49)]),
        8 => vv(405, 3, 420),
        9 => vv(880, 5, 880),
        10 => vv(1704, 4, 1728),
        _ => panic!("no displayed row for k = {k}"),
    }
}

/// Displayed H⁰(O_A(k)), k = 1..14.
pub fn h0_oa_printed(k: usize) -> Decomposition {
    match k {
        1 => vv(1, 3, 0),
        2 => vv(0, 5, 4),
        3 => vv(5, 4, 4),
        4 => vv(6, 1, 10),
        5 => vv(13, 2, 12),
        6 => vv(16, 0, 20),
        7 => Decomposition::from_terms(&[("I", 3), ("S", 4), ("Z", 7)]),
        8 => vv(30, 3, 34),
        9 => vv(41, 5, 40),
        10 => vv(48, 4, 52),
        11 => vv(61, 1, 60),
        12 => vv(70, 2, 74),
        13 => vv(85, 0, 84),
        14 => Decomposition::from_terms(&[("I", 16), ("S", 12), ("Z", 28)]),
        _ => panic!("no displayed row for k = {k}"),
    }
}

/// H⁰(O_A(k)) for 7 ∤ k: aV_i ⊕ bV_i^♯ with a + b = k², b − a the trace of ι
/// (−1 for odd k, 4 for even k) and i fixed by the central character,
/// 3^i ≡ −k mod 7. For 7 | k the displayed row is returned once its
/// dimension 7k² and ι-trace are confirmed.
pub fn h0_oa_decomposition(k: usize) -> HeisResult<Decomposition> {
    let k = k as i64;
    let iota_trace = if k % 2 == 0 { 4 } else { -1 };
    if k % 7 == 0 {
        let d = h0_oa_printed(k as usize);
        let dim = d.multiplicity("I") + d.multiplicity("S") + 48 * d.multiplicity("Z");
        let tr = d.multiplicity("I") - d.multiplicity("S");
        if dim != 7 * k * k || tr != iota_trace {
            return Err(HeisError::NotACharacter { label: format!("H0(O_A({k}))"), value: format!("dim {dim}, iota-trace {tr}") });
        }
        return Ok(d);
    }
    let target = (-k).rem_euclid(7);
    let i = (0..6).find(|&i| (0..i).fold(1i64, |acc, _| acc * 3 % 7) == target).expect("3 generates F7*");
    let a = (k * k - iota_trace) / 2;
    let b = (k * k + iota_trace) / 2;
    Ok(vv(a, i, b))
}

/// Virtual character Σ_{j=0..3} (−1)^j Λ^{3−j}V₃ · S^{k−3+j}V₃; negative
/// multiplicities are reported as an error.
pub fn omega3_sections_char(g7: &G7Table, k: usize) -> HeisResult<Decomposition> {
    let chi = omega3_character(g7, k);
    let d = g7.table.decompose_virtual(&chi)?;
    if let Some((l, m)) = d.terms.iter().find(|(_, m)| *m < 0) {
        return Err(HeisError::NotACharacter { label: l.clone(), value: m.to_string() });
    }
    Ok(d)
}

pub fn omega3_character(g7: &G7Table, k: usize) -> Character {
    let v3 = g7.v(3);
    let cls = &g7.table.classes;
    let mut acc = Character::constant(cls.len(), 0);
    for j in 0..=3usize {
        if k + j < 3 {
            continue;
        }
        let t = v3.ext_power(cls, 3 - j).mul(&v3.sym_power(cls, k - 3 + j));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// All displayed formulas of the G₇ section: tensor products, exterior and
/// symmetric powers for every twist, H⁰(Ω³(k)) and H⁰(O_A(k)).
pub fn g7_formula_checks(g7: &G7Table, exec: Exec) -> Vec<FormulaCheck> {
    let cls = &g7.table.classes;
    let mut jobs: Vec<(String, Decomposition, Character)> = Vec::new();
    for i in 0..6i64 {
        for d in 0..4 {
            jobs.push((format!("V{i} x V{}", (i + d) % 6), tensor_expected(d, i), g7.v(i).mul(g7.v(i + d))));
        }
    }
    let base = g7.v(0);
    let ext: Vec<Character> = (0..=7).map(|k| base.ext_power(cls, k)).collect();
    let sym = sym_powers_upto(base, cls, 14);
    for i in 0..6i64 {
        for (k, e) in ext.iter().enumerate().skip(2) {
            jobs.push((format!("L{k} V{i}"), ext_power_expected(k, i), e.galois_theta(i)));
        }
        for (k, s) in sym.iter().enumerate().skip(2) {
            jobs.push((format!("S{k} V{i}"), sym_power_expected(k, i), s.galois_theta(i)));
        }
    }
    let mut out: Vec<FormulaCheck> = exec.map(&jobs, |(name, exp, chi)| FormulaCheck::compare(name.clone(), exp, g7.table.decompose(chi)));
    for c in out.iter_mut().filter(|c| !c.ok) {
        let Some((k, i)) = parse_sym_name(&c.name) else { continue };
        let closed = sym_power_closed_form(k, i);
        if Decomposition::parse(&c.computed).is_ok_and(|d| d.same_as(&closed)) {
            c.conflict = Some(format!("displayed row contradicts the closed form {closed} (dimension, trace of iota, central character)"));
        }
    }
    // the twist route is only used for speed; one direct check per power
    for k in 2..=7 {
        let direct = g7.v(1).ext_power(cls, k);
        out.push(FormulaCheck::compare(format!("L{k} V1 direct"), &ext_power_expected(k, 1), g7.table.decompose(&direct)));
    }
    let omega: Vec<usize> = (3..=10).collect();
    out.extend(exec.map(&omega, |&k| FormulaCheck::compare(format!("H0(Omega3({k}))"), &omega3_expected(k), omega3_sections_char(g7, k))));
    for k in 1..=14 {
        out.push(FormulaCheck::compare(format!("H0(O_A({k}))"), &h0_oa_printed(k), h0_oa_decomposition(k)));
    }
    out
}

/// S^0..S^k of one character in a single Newton pass.
pub fn sym_powers_upto(chi: &Character, cls: &super::classes::ClassData, k: usize) -> Vec<Character> {
    let per_class: Vec<Vec<FieldElem>> = (0..cls.len())
        .map(|c| {
            let p: Vec<FieldElem> = (0..=k).map(|j| chi.values[cls.power_class(c, j)].clone()).collect();
            (0..=k).map(|n| newton(&p, n, false)).collect()
        })
        .collect();
    (0..=k).map(|n| Character::new(per_class.iter().map(|v| v[n].clone()).collect())).collect()
}

/// The 55 displayed products of SL₂(F₇) irreducibles.
pub const SL2_PRODUCTS: [&str; 55] = [
    "M1*M1 = I + 3M2 + 3L + 2T + W + W'",
    "M1*M2 = 3M1 + 2U + 2U' + 2T1 + 2T2",
    "M2*M2 = I + 3M2 + 3L + 2T + W + W'",
    "M1*L = 3M1 + U + U' + 2T1 + 2T2",
    "M2*L = 3M2 + 2L + 2T + W + W'",
    "M1*U = 2M2 + L + T + W",
    "M2*U = 2M1 + U + T1 + T2",
    "M1*U' = 2M2 + L + T + W'",
    "M2*U' = 2M1 + U' + T1 + T2",
    "M1*T1 = 2M2 + 2L + 2T + W + W'",
    "M2*T1 = 2M1 + U + U' + 2T1 + 2T2",
    "M1*T2 = 2M2 + 2L + 2T + W + W'",
    "M2*T2 = 2M1 + U + U' + 2T1 + 2T2",
    "M1*T = 2M1 + U + U' + 2T1 + 2T2",
    "M2*T = 2M2 + 2L + 2T + W + W'",
    "M1*W = M1 + U + T1 + T2",
    "M2*W = M2 + L + T + W",
    "M1*W' = M1 + U' + T1 + T2",
    "M2*W' = M2 + L + T + W'",
    "L*L = I + 2M2 + 2L + 2T + W + W'",
    "L*U = M1 + U + U' + T1 + T2",
    "L*U' = M1 + U + U' + T1 + T2",
    "L*T1 = 2M1 + U + U' + T1 + 2T2",
    "L*T2 = 2M1 + U + U' + 2T1 + T2",
    "L*T = 2M2 + 2L + T + W + W'",
    "L*W = M2 + L + T",
    "L*W' = M2 + L + T",
    "U*U = L + T + W",
    "U*U' = I + M2 + L",
    "U'*U' = L + T + W'",
    "U*T1 = M2 + L + T + W'",
    "U'*T1 = M2 + L + T + W",
    "U*T2 = M2 + L + T + W'",
    "U'*T2 = M2 + L + T + W",
    "U*T = M1 + U' + T1 + T2",
    "U'*T = M1 + U + T1 + T2",
    "U*W = T1 + T2",
    "U'*W = M1 + U",
    "U*W' = M1 + U'",
    "U'*W' = T1 + T2",
    "T1*T1 = I + 2M2 + L + T + W + W'",
    "T1*T2 = 2M2 + 2L + T",
    "T2*T2 = I + 2M2 + L + T + W + W'",
    "T1*T = 2M1 + U + U' + T1 + T2",
    "T2*T = 2M1 + U + U' + T1 + T2",
    "T1*W = M1 + U' + T1",
    "T2*W = M1 + U' + T2",
    "T1*W' = M1 + U + T1",
    "T2*W' = M1 + U + T2",
    "T*T = I + 2M2 + L + 2T",
    "W*W = T + W'",
    "T*W = M2 + L + W'",
    "W*W' = I + M2",
    "T*W' = M2 + L + W",
    "W'*W' = T + W",
];

/// Decomposes every displayed product of SL₂(F₇) irreducibles.
pub fn sl2_multiplication_check(sl2: &Sl2Table, exec: Exec) -> Vec<FormulaCheck> {
    exec.map(&SL2_PRODUCTS, |line| {
        let (lhs, rhs) = line.split_once('=').expect("product line");
        let (a, b) = lhs.trim().split_once('*').expect("product lhs");
        let expected = Decomposition::parse(rhs).expect("product rhs");
        let computed = match (sl2.table.row(a), sl2.table.row(b)) {
            (Some(x), Some(y)) => sl2.table.decompose(&x.mul(y)),
            _ => Err(HeisError::BadDecomposition(lhs.to_string())),
        };
        FormulaCheck::compare(lhs.trim(), &expected, computed)
    })
}

/// S^kW, S^kW′ for k = 2..4 and S²U′.
pub fn sl2_power_checks(sl2: &Sl2Table) -> Vec<FormulaCheck> {
    let cls = &sl2.table.classes;
    let rows = [
        ("W", 2, "T"),
        ("W", 3, "L + W'"),
        ("W", 4, "I + M2 + T"),
        ("W'", 2, "T"),
        ("W'", 3, "L + W"),
        ("W'", 4, "I + M2 + T"),
        ("U'", 2, "L + W'"),
    ];
    rows.iter()
        .map(|(x, k, rhs)| {
            let chi = sl2.table.row(x).expect("irrep").sym_power(cls, *k);
            FormulaCheck::compare(format!("S{k} {x}"), &Decomposition::parse(rhs).expect("rhs"), sl2.table.decompose(&chi))
        })
        .collect()
}

/// On every lift n of the complement, the traces on V⁺ = (tr n + tr nι)/2
/// and V⁻ = (tr n − tr nι)/2 equal the W′ and U′ rows at the class of n̄.
pub fn v_plus_minus_check(sl2: &Sl2Table, lifts: &[Lift], exec: Exec) -> (bool, bool) {
    let wp = sl2.table.row("W'").expect("W'");
    let up = sl2.table.row("U'").expect("U'");
    let half = Rat::half();
    let res = exec.map(lifts, |l| {
        let c = sl2.classes.class_of(&l.image);
        let t = l.trace();
        let ti = l.trace_times_iota();
        let plus = FieldElem::from((&t + &ti).scale(&half));
        let minus = FieldElem::from((&t - &ti).scale(&half));
        (plus == wp.values[c], minus == up.values[c])
    });
    (res.iter().all(|r| r.0), res.iter().all(|r| r.1))
}

/// Tensor factor of an N-representation on the right-hand side of the A4 rows.
#[derive(Clone, Copy, Debug)]
pub enum NFactor {
    One,
    V(i64),
    Z,
}

/// Left-hand sides of the A4 rows.
#[derive(Clone, Copy, Debug)]
pub enum NSide {
    Tensor(i64, i64),
    Ext(usize, i64),
    Sym(usize, i64),
    Omega3(usize),
}

#[derive(Clone, Debug)]
pub struct A4Row {
    pub name: String,
    pub lhs: NSide,
    pub rhs: Vec<(Decomposition, NFactor)>,
}

fn x(s: &str) -> Decomposition {
    Decomposition::parse(s).expect("displayed SL2 combination")
}

/// The displayed rows, instantiated for every index.
pub fn a4_rows() -> Vec<A4Row> {
    let mut rows = Vec::new();
    let mut row = |name: String, lhs: NSide, rhs: Vec<(Decomposition, NFactor)>| rows.push(A4Row { name, lhs, rhs });
    for j in 0..3i64 {
        let e = 2 * j;
        let o = 2 * j + 1;
        let tensor = [(e, e, "U' + W'", e + 2), (e, e + 1, "U + W", e + 4), (o, o, "U + W", o + 2), (o, o + 1, "U' + W'", e + 5), (e, e + 2, "U + W", e + 1), (o, o + 2, "U' + W'", e + 2)];
        for (a, b, combo, v) in tensor {
            row(format!("V{} x V{}", a % 6, b % 6), NSide::Tensor(a, b), vec![(x(combo), NFactor::V(v))]);
        }
        let ext = [
            (2, e, "W'", e + 2),
            (3, e, "I + U'", e + 1),
            (4, e, "I + U", e + 4),
            (5, e, "W", e + 5),
            (2, o, "W", e + 3),
            (3, o, "I + U", e + 2),
            (4, o, "I + U'", e + 5),
            (5, o, "W'", e + 6),
        ];
        for (k, a, combo, v) in ext {
            row(format!("L{k} V{}", a % 6), NSide::Ext(k, a), vec![(x(combo), NFactor::V(v))]);
        }
        let sym = [(2, "U'", e + 2), (3, "I + L + U", e + 1), (4, "L + W + U + U' + T1 + T2", e + 4), (5, "I + M1 + M2 + 2L + U + U' + T1 + T2 + 2T + W'", e + 5)];
        for (k, combo, v) in sym {
            row(format!("S{k} V{}", e % 6), NSide::Sym(k, e), vec![(x(combo), NFactor::V(v))]);
        }
    }
    for j in 0..6i64 {
        row(format!("V{j} x V{}", (j + 3) % 6), NSide::Tensor(j, j + 3), vec![(x("I"), NFactor::One), (x("I"), NFactor::Z)]);
        row(format!("L6 V{j}"), NSide::Ext(6, j), vec![(x("I"), NFactor::V(j + 3))]);
        row(format!("L7 V{j}"), NSide::Ext(7, j), vec![(x("I"), NFactor::One)]);
    }
    row("H0(Omega3(3))".into(), NSide::Omega3(3), vec![]);
    row("H0(Omega3(4))".into(), NSide::Omega3(4), vec![(x("I + U'"), NFactor::V(1))]);
    row("H0(Omega3(5))".into(), NSide::Omega3(5), vec![(x("L + U' + W' + T1 + T2 + T"), NFactor::V(2))]);
    row("H0(Omega3(6))".into(), NSide::Omega3(6), vec![(x("M1 + M2 + 3L + 2U + 2W + W' + 4T1 + 4T2 + 3T"), NFactor::V(0))]);
    let c7 = x("I + 2L + U + 2U' + W' + T1 + T2 + T");
    row("H0(Omega3(7))".into(), NSide::Omega3(7), vec![(c7.clone(), NFactor::One), (c7, NFactor::Z), (x("I"), NFactor::Z)]);
    rows
}

/// One explicit sample h·s with its power traces tr((h·s)^j), j = 0..=7, and
/// the SL₂ column of s.
pub struct NSample {
    pub label: String,
    pub column: usize,
    pub power_traces: Vec<Cyc7>,
}

/// h over the 31 class representatives of H₇, s ∈ {id, ι, μ, ν, ν³, δ}.
pub fn a4_samples(g7: &G7Table, exec: Exec) -> Vec<NSample> {
    let hs: Vec<HElem> = g7.classes.reps.iter().filter(|r| !r.iota).copied().collect();
    let nu = MonoMat::nu();
    let svals: Vec<(&str, usize, Option<MonoMat>)> = vec![
        ("id", 0, Some(MonoMat::identity())),
        ("iota", 1, Some(MonoMat::iota())),
        ("mu", 2, Some(MonoMat::mu())),
        ("nu", 4, Some(nu)),
        ("nu^3", 5, Some(nu.pow(3))),
        ("delta", 8, None),
    ];
    let pairs: Vec<(HElem, usize)> = hs.iter().flat_map(|h| (0..svals.len()).map(move |i| (*h, i))).collect();
    let delta = delta_matrix();
    exec.map(&pairs, |(h, si)| {
        let (sname, column, smono) = &svals[*si];
        let hm = h.to_monomat();
        let power_traces = match smono {
            Some(s) => {
                let n = hm.mul(s);
                (0..=7).map(|j| n.pow(j).trace()).collect()
            }
            None => {
                let n = mono_mul_dense(&hm, &delta);
                let mut p = Matrix::identity(7, &());
                let mut v = vec![Cyc7::int(7)];
                for _ in 1..=7 {
                    p = p.mul(&n).expect("7x7");
                    v.push(p.trace());
                }
                v
            }
        };
        NSample { label: format!("{h}*{sname}"), column: *column, power_traces }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct A4Check {
    pub name: String,
    pub dimension: bool,
    pub restriction: bool,
    pub traces: bool,
    pub first_trace_failure: Option<String>,
    /// SL₂ factor recovered from traces on the lifts when the displayed one
    /// fails, provided the recovered row passes all three checks.
    pub recovered: Option<String>,
}

impl A4Check {
    pub fn ok(&self) -> bool {
        self.dimension && self.restriction && self.traces
    }
}

fn lhs_trace(lhs: NSide, p: &[Cyc7]) -> FieldElem {
    let tw = |a: i64| -> Vec<FieldElem> { p.iter().map(|t| FieldElem::from(t.galois_theta(a))).collect() };
    match lhs {
        NSide::Tensor(a, b) => &tw(a)[1] * &tw(b)[1],
        NSide::Ext(k, a) => newton(&tw(a), k, true),
        NSide::Sym(k, a) => newton(&tw(a), k, false),
        NSide::Omega3(k) => {
            let t = tw(3);
            let mut acc = FieldElem::zero();
            for j in 0..=3usize {
                let term = &newton(&t, 3 - j, true) * &newton(&t, k - 3 + j, false);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn factor_trace(f: NFactor, p: &[Cyc7]) -> FieldElem {
    match f {
        NFactor::One => FieldElem::one(),
        NFactor::V(b) => FieldElem::from(p[1].galois_theta(b)),
        // V ⊗ V* = I ⊕ Z
        NFactor::Z => FieldElem::from(&(&p[1] * &p[1].conj()) - &Cyc7::one()),
    }
}

fn lhs_g7(g7: &G7Table, lhs: NSide) -> Character {
    let cls = &g7.table.classes;
    match lhs {
        NSide::Tensor(a, b) => g7.v(a).mul(g7.v(b)),
        NSide::Ext(k, a) => g7.v(a).ext_power(cls, k),
        NSide::Sym(k, a) => g7.v(a).sym_power(cls, k),
        NSide::Omega3(k) => omega3_character(g7, k),
    }
}

fn lhs_dim(lhs: NSide) -> i64 {
    match lhs {
        NSide::Tensor(..) => 49,
        NSide::Ext(k, _) => binom(7, k as i64),
        NSide::Sym(k, _) => binom(6 + k as i64, k as i64),
        NSide::Omega3(k) => (0..=3i64).map(|j| (if j % 2 == 0 { 1 } else { -1 }) * binom(7, 3 - j) * binom(3 + k as i64 + j, 6)).sum(),
    }
}

/// Checks every A4 row by dimension, by restriction to G₇ and by traces on
/// the explicit sample elements. A row whose traces fail gets its SL₂
/// factor recomputed from the lifts and rechecked.
pub fn a4_checks(g7: &G7Table, sl2: &Sl2Table, samples: &[NSample], lifts: &[Lift], exec: Exec) -> Vec<A4Check> {
    let rows = a4_rows();
    exec.map(&rows, |row| {
        let mut c = check_a4_row(g7, sl2, samples, row);
        if !c.traces {
            if let [(_, NFactor::V(b))] = row.rhs.as_slice() {
                if let Ok(x) = recover_sl2_factor(sl2, lifts, row.lhs, *b) {
                    let fixed = A4Row { name: row.name.clone(), lhs: row.lhs, rhs: vec![(x.clone(), NFactor::V(*b))] };
                    if check_a4_row(g7, sl2, samples, &fixed).ok() {
                        c.recovered = Some(x.to_string());
                    }
                }
            }
        }
        c
    })
}

fn check_a4_row(g7: &G7Table, sl2: &Sl2Table, samples: &[NSample], row: &A4Row) -> A4Check {
    let ncls = g7.table.classes.len();
    let z = g7.table.character_of("Z").expect("Z");
    let xchar = |d: &Decomposition| sl2.table.character_of_decomposition(d).expect("SL2 labels");
    // (a)
    let rhs_dim: i64 = row
        .rhs
        .iter()
        .map(|(d, f)| {
            let xd = xchar(d).values[0].as_rational().and_then(|r| r.to_i64()).expect("degree");
            xd * match f {
                NFactor::One => 1,
                NFactor::V(_) => 7,
                NFactor::Z => 48,
            }
        })
        .sum();
    let dimension = rhs_dim == lhs_dim(row.lhs);
    // (b): X restricts to G₇ through its values at ±id
    let (ichar, schar) = (g7.table.row("I").expect("I"), g7.table.row("S").expect("S"));
    let mut rhs_g7 = Character::constant(ncls, 0);
    for (d, f) in &row.rhs {
        let xc = xchar(d);
        let plus = (&xc.values[0] + &xc.values[1]).scale(&Rat::half());
        let minus = (&xc.values[0] - &xc.values[1]).scale(&Rat::half());
        let ix = ichar.values.iter().zip(&schar.values).map(|(i, s)| &(&plus * i) + &(&minus * s)).collect();
        let fx = match f {
            NFactor::One => Character::constant(ncls, 1),
            NFactor::V(b) => g7.v(*b).clone(),
            NFactor::Z => z.clone(),
        };
        rhs_g7 = rhs_g7.add(&Character::new(ix).mul(&fx));
    }
    let lhs = lhs_g7(g7, row.lhs);
    let restriction = match (g7.table.decompose_virtual(&lhs), g7.table.decompose_virtual(&rhs_g7)) {
        (Ok(a), Ok(b)) => a.same_as(&b),
        _ => false,
    };
    // (c)
    let xs: Vec<(Character, NFactor)> = row.rhs.iter().map(|(d, f)| (xchar(d), *f)).collect();
    let first_trace_failure = samples
        .iter()
        .find(|s| {
            let l = lhs_trace(row.lhs, &s.power_traces);
            let r = xs.iter().fold(FieldElem::zero(), |acc, (x, f)| &acc + &(&x.values[s.column] * &factor_trace(*f, &s.power_traces)));
            l != r
        })
        .map(|s| s.label.clone());
    A4Check { name: row.name.clone(), dimension, restriction, traces: first_trace_failure.is_none(), first_trace_failure, recovered: None }
}

fn power_traces_of(m: &Matrix<Cyc7>, upto: usize) -> Vec<Cyc7> {
    let mut p = Matrix::identity(7, &());
    let mut v = vec![Cyc7::int(7)];
    for _ in 1..=upto {
        p = p.mul(m).expect("7x7");
        v.push(p.trace());
    }
    v
}

/// Solves LHS(n) = X(n̄)·θ^b(tr n) for the class function X, using for each
/// class of SL₂ an element h·n (h ∈ H₇, n a lift) with θ^b(tr hn) ≠ 0.
pub fn recover_sl2_factor(sl2: &Sl2Table, lifts: &[Lift], lhs: NSide, b: i64) -> HeisResult<Decomposition> {
    let ncls = sl2.table.classes.len();
    let mut vals: Vec<Option<FieldElem>> = vec![None; ncls];
    let hs: Vec<MonoMat> = HElem::all().iter().filter(|h| !h.iota).map(|h| h.to_monomat()).collect();
    for l in lifts {
        let c = sl2.classes.class_of(&l.image);
        if vals[c].is_some() {
            continue;
        }
        for h in &hs {
            let n = mono_mul_dense(h, &l.matrix);
            let p = power_traces_of(&n, 7);
            let v = p[1].galois_theta(b);
            if !v.is_zero() {
                let num = lhs_trace(lhs, &p);
                let inv = FieldElem::from(v.inverse()?);
                vals[c] = Some(&num * &inv);
                break;
            }
        }
    }
    let vals: Option<Vec<FieldElem>> = vals.into_iter().collect();
    let chi = Character::new(vals.ok_or_else(|| HeisError::NotACharacter { label: "recovered factor".into(), value: "undetermined".into() })?);
    sl2.table.decompose(&chi)
}

/// The 24 pairs labelling the Z(s,t), exposed for reports.
pub fn z_labels() -> Vec<String> {
    canonical_pairs().iter().map(|(s, t)| format!("Z({s},{t})")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisrep::nelem::complement_lifts;
    use crate::heisrep::tables::{g7_table, sl2_table};

    #[test]
    fn binomial_rows_are_integral() {
        assert_eq!(sym_power_expected(12, 0), vv(1320, 5, 1332));
        assert_eq!(sym_power_expected(13, 0), vv(1932, 3, 1944));
    }

    #[test]
    fn oa_rule_reproduces_printed_rows() {
        for k in 1..=14 {
            assert!(h0_oa_decomposition(k).unwrap().same_as(&h0_oa_printed(k)), "k = {k}");
        }
    }

    #[test]
    fn g7_formulas() {
        let g7 = g7_table();
        let checks = g7_formula_checks(&g7, Exec::default());
        let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
        // S^11..S^14 as displayed contradict the counting closed form; each
        // is reported as a conflict with the closed-form value computed
        let mut names: Vec<_> = bad.iter().map(|c| c.name.clone()).collect();
        names.sort();
        let mut want: Vec<String> = (0..6).flat_map(|i| (11..=14).map(move |k| format!("S{k} V{i}"))).collect();
        want.sort();
        assert_eq!(names, want);
        assert!(bad.iter().all(|c| c.conflict.is_some()));
    }

    #[test]
    fn closed_form_matches_characters_for_all_k() {
        let g7 = g7_table();
        let sym = sym_powers_upto(g7.v(0), &g7.table.classes, 14);
        for (k, s) in sym.iter().enumerate().skip(1) {
            for i in 0..6 {
                let d = g7.table.decompose(&s.galois_theta(i)).unwrap();
                assert!(d.same_as(&sym_power_closed_form(k, i)), "S{k} V{i}: {d}");
            }
        }
    }

    #[test]
    fn iota_trace_series() {
        assert_eq!((0..8).map(iota_trace_sym).collect::<Vec<_>>(), vec![1, -1, 4, -4, 10, -10, 20, -20]);
    }

    #[test]
    fn sl2_products_and_powers() {
        let sl2 = sl2_table();
        let bad: Vec<_> = sl2_multiplication_check(&sl2, Exec::default()).into_iter().chain(sl2_power_checks(&sl2)).filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn v_plus_minus_are_w_prime_and_u_prime() {
        let sl2 = sl2_table();
        let lifts = complement_lifts().unwrap();
        assert_eq!(v_plus_minus_check(&sl2, &lifts, Exec::default()), (true, true));
    }

    #[test]
    fn a4_rows_hold() {
        let g7 = g7_table();
        let sl2 = sl2_table();
        let samples = a4_samples(&g7, Exec::default());
        assert_eq!(samples.len(), 31 * 6);
        let lifts = complement_lifts().unwrap();
        let checks = a4_checks(&g7, &sl2, &samples, &lifts, Exec::default());
        let bad: Vec<_> = checks.iter().filter(|c| !c.ok()).collect();
        // the displayed SL2 factor of H0(Omega3(6)) fails on traces; the
        // recovered one passes every check
        assert_eq!(bad.len(), 1, "{bad:#?}");
        assert_eq!(bad[0].name, "H0(Omega3(6))");
        assert!(bad[0].dimension && bad[0].restriction);
        let rec = Decomposition::parse(bad[0].recovered.as_deref().unwrap()).unwrap();
        assert!(rec.same_as(&Decomposition::parse("I + 3M1 + 2M2 + 3L + U + 3U' + 2T1 + 2T2 + 2T + 2W'").unwrap()));
    }
}

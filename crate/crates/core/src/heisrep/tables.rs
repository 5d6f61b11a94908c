use super::character::{CharTable, Character};
use super::classes::{canonical_pairs, sl2_class_data, G7Classes};
use super::helem::{HElem, PHI_TWIST};
use super::sl2::Sl2Classes;
use super::{HeisError, HeisResult};
use crate::exactfield::{gauss_sum, Cyc7, FieldElem, Rat, Ring};
use crate::polylin::Matrix;

pub fn v_label(i: i64) -> String {
    format!("V{}", i.rem_euclid(6))
}

pub fn v_sharp_label(i: i64) -> String {
    format!("V{}#", i.rem_euclid(6))
}

fn z(k: i64) -> FieldElem {
    FieldElem::from(Cyc7::zeta_pow(k))
}

pub struct G7Table {
    pub classes: G7Classes,
    pub table: CharTable,
}

/// Rows in the order I, S, V0..V5, V0#..V5#, Z(s,t). The V/V# labelling
/// on the ι-classes follows the trace of ι on V, which is −1.
pub fn g7_table() -> G7Table {
    g7_table_with(false)
}

/// The same rows with the V/V# labels exchanged on the ι-classes, as
/// the printed table has them.
pub fn g7_table_printed_labels() -> G7Table {
    g7_table_with(true)
}

fn g7_table_with(printed: bool) -> G7Table {
    let classes = G7Classes::compute();
    let reps = classes.reps.clone();
    let pairs = canonical_pairs();
    let iota_sign: i64 = if printed { 1 } else { -1 };
    let mut names = vec!["I".to_string(), "S".to_string()];
    let mut rows = Vec::new();
    rows.push(Character::new(reps.iter().map(|_| FieldElem::one()).collect()));
    rows.push(Character::new(reps.iter().map(|r| FieldElem::int(if r.iota { -1 } else { 1 })).collect()));
    for sharp in [false, true] {
        for i in 0..6 {
            names.push(if sharp { v_sharp_label(i) } else { v_label(i) });
            let sign = if sharp { -iota_sign } else { iota_sign };
            let vals = reps
                .iter()
                .map(|r| {
                    let t = z(r.phase as i64).galois_theta(i);
                    if r.iota {
                        t.scale(&Rat::int(sign))
                    } else if r.m == 0 && r.n == 0 {
                        t.scale(&Rat::int(7))
                    } else {
                        FieldElem::zero()
                    }
                })
                .collect();
            rows.push(Character::new(vals));
        }
    }
    let mut zidx = Vec::new();
    for &(s, t) in &pairs {
        zidx.push(rows.len());
        names.push(format!("Z({s},{t})"));
        let vals = reps
            .iter()
            .map(|r| {
                if r.iota {
                    FieldElem::zero()
                } else if r.m == 0 && r.n == 0 {
                    FieldElem::int(2)
                } else {
                    let e = s as i64 * r.m as i64 + t as i64 * r.n as i64;
                    &z(e) + &z(-e)
                }
            })
            .collect();
        rows.push(Character::new(vals));
    }
    let table = CharTable { classes: classes.data.clone(), names, rows, aggregates: vec![("Z".to_string(), zidx)] };
    G7Table { classes, table }
}

impl G7Table {
    pub fn v(&self, i: i64) -> &Character {
        self.table.row(&v_label(i)).expect("V row")
    }

    pub fn v_sharp(&self, i: i64) -> &Character {
        self.table.row(&v_sharp_label(i)).expect("V# row")
    }

    /// Character of a representation of G₇ given by the images of σ, τ, ι.
    ///
    /// The relations of G₇ are checked on the images; the center must act
    /// by a scalar. The trace is then evaluated on all 686 elements to
    /// confirm it is a class function.
    pub fn char_of_rep(&self, sigma: &Matrix<Cyc7>, tau: &Matrix<Cyc7>, iota: &Matrix<Cyc7>) -> HeisResult<Character> {
        let n = sigma.rows();
        let id = Matrix::identity(n, &());
        let si = sigma.inverse()?;
        let ti = tau.inverse()?;
        let m = |a: &Matrix<Cyc7>, b: &Matrix<Cyc7>| a.mul(b).expect("square");
        let center = m(&m(sigma, tau), &m(&si, &ti));
        let lambda = center[(0, 0)].clone();
        if center != id.scale(&lambda) {
            return Err(HeisError::NonScalarCenter);
        }
        let check = |ok: bool, name: &str| if ok { Ok(()) } else { Err(HeisError::RelationViolation(name.to_string())) };
        check(sigma.pow(7)? == id, "sigma^7 = 1")?;
        check(tau.pow(7)? == id, "tau^7 = 1")?;
        check(lambda.pow(7).is_one() && !lambda.is_one(), "commutator of order 7")?;
        check(m(iota, iota) == id, "iota^2 = 1")?;
        check(m(&m(iota, sigma), iota) == si, "iota sigma iota = sigma^-1")?;
        check(m(&m(iota, tau), iota) == ti, "iota tau iota = tau^-1")?;
        // ρ(Φ(m,n)) = λ^{3mn} σ^m τ^n
        let mut spow = vec![id.clone()];
        let mut tpow = vec![id.clone()];
        for k in 1..7 {
            spow.push(m(&spow[k - 1], sigma));
            tpow.push(m(&tpow[k - 1], tau));
        }
        let mut base = vec![vec![Cyc7::zero(); 2]; 49];
        for a in 0..7 {
            for b in 0..7 {
                let phi = m(&spow[a], &tpow[b]).scale(&lambda.pow((PHI_TWIST as u32 * a as u32 * b as u32) % 7));
                base[a * 7 + b][0] = phi.trace();
                base[a * 7 + b][1] = m(&phi, iota).trace();
            }
        }
        let value = |g: &HElem| lambda.pow(g.phase as u32) * base[g.m as usize * 7 + g.n as usize][g.iota as usize].clone();
        let mut vals: Vec<Option<Cyc7>> = vec![None; self.table.classes.len()];
        for g in HElem::all() {
            let c = self.classes.class_of(&g);
            let v = value(&g);
            match &vals[c] {
                Some(prev) if *prev != v => return Err(HeisError::RelationViolation(format!("trace not constant on class {}", self.table.classes.labels[c]))),
                Some(_) => {}
                None => vals[c] = Some(v),
            }
        }
        Ok(Character::new(vals.into_iter().map(|v| FieldElem::from(v.expect("every class is hit"))).collect()))
    }
}

pub struct Sl2Table {
    pub classes: Sl2Classes,
    pub table: CharTable,
}

pub const SL2_IRREPS: [&str; 11] = ["I", "M1", "M2", "L", "U", "U'", "T1", "T2", "T", "W", "W'"];

/// The printed table of SL₂(F₇); columns id, ι, μ, ιμ, ν, ν³, ιν³, ιν, δ, (22;52), (52;55).
pub fn sl2_table() -> Sl2Table {
    let classes = Sl2Classes::compute();
    let g = FieldElem::from(gauss_sum());
    let half = Rat::half();
    let ap = (&FieldElem::one() + &g).scale(&half);
    let am = (&FieldElem::one() - &g).scale(&half);
    let r2 = FieldElem::sqrt2();
    let i = |n: i64| FieldElem::int(n);
    let neg = |x: &FieldElem| -x;
    let rows = vec![
        vec![i(1), i(1), i(1), i(1), i(1), i(1), i(1), i(1), i(1), i(1), i(1)],
        vec![i(8), i(-8), i(-1), i(1), i(1), i(1), i(-1), i(-1), i(0), i(0), i(0)],
        vec![i(8), i(8), i(-1), i(-1), i(1), i(1), i(1), i(1), i(0), i(0), i(0)],
        vec![i(7), i(7), i(1), i(1), i(0), i(0), i(0), i(0), i(-1), i(-1), i(-1)],
        vec![i(4), i(-4), i(1), i(-1), am.clone(), ap.clone(), neg(&ap), neg(&am), i(0), i(0), i(0)],
        vec![i(4), i(-4), i(1), i(-1), ap.clone(), am.clone(), neg(&am), neg(&ap), i(0), i(0), i(0)],
        vec![i(6), i(-6), i(0), i(0), i(-1), i(-1), i(1), i(1), i(0), r2.clone(), neg(&r2)],
        vec![i(6), i(-6), i(0), i(0), i(-1), i(-1), i(1), i(1), i(0), neg(&r2), r2.clone()],
        vec![i(6), i(6), i(0), i(0), i(-1), i(-1), i(-1), i(-1), i(2), i(0), i(0)],
        vec![i(3), i(3), i(0), i(0), neg(&ap), neg(&am), neg(&am), neg(&ap), i(-1), i(1), i(1)],
        vec![i(3), i(3), i(0), i(0), neg(&am), neg(&ap), neg(&ap), neg(&am), i(-1), i(1), i(1)],
    ];
    let table = CharTable {
        classes: sl2_class_data(&classes),
        names: SL2_IRREPS.iter().map(|s| s.to_string()).collect(),
        rows: rows.into_iter().map(Character::new).collect(),
        aggregates: Vec::new(),
    };
    Sl2Table { classes, table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::heisrep::monomat::MonoMat;

    #[test]
    fn g7_orthogonality_and_dimensions() {
        let t = g7_table();
        assert_eq!(t.table.rows.len(), 38);
        assert!(t.table.row_orthogonality(Exec::default()));
        assert!(t.table.column_orthogonality(Exec::default()));
        assert_eq!(t.table.sum_dim_squared(), 686);
    }

    #[test]
    fn sl2_orthogonality_and_dimensions() {
        let t = sl2_table();
        assert!(t.table.row_orthogonality(Exec::default()));
        assert!(t.table.column_orthogonality(Exec::default()));
        assert_eq!(t.table.sum_dim_squared(), 336);
    }

    #[test]
    fn schroedinger_character_from_matrices() {
        let t = g7_table();
        for i in 0..6 {
            let tw = |m: &MonoMat| m.to_matrix().map(&(), |x| x.galois_theta(i));
            let chi = t.char_of_rep(&tw(&MonoMat::sigma()), &tw(&MonoMat::tau()), &tw(&MonoMat::iota())).unwrap();
            assert_eq!(&chi, t.v(i), "V{i}");
        }
        assert_ne!(t.v(0), t.v(1));
    }

    #[test]
    fn v_times_dual_contains_trivial_once() {
        let t = g7_table();
        let d = t.table.decompose(&t.v(0).mul(&t.v(0).conj())).unwrap();
        assert_eq!(d.multiplicity("I"), 1);
        assert_eq!(d.multiplicity("Z"), 1);
    }

    #[test]
    fn printed_labels_give_same_row_set() {
        let a = g7_table();
        let b = g7_table_printed_labels();
        assert_eq!(a.v(2), b.v_sharp(2));
        assert!(b.table.row_orthogonality(Exec::Seq));
    }
}

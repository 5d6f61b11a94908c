use std::time::Instant;

use super::{CheckSpec, Context, Outcome, Suite};
use crate::exactfield::Rat;
use crate::groebner::{buchberger, free_resolution, BettiTable, GbConfig};
use crate::heisrep::{
    a4_checks, a4_samples, build_heisenberg, complement_lifts, g7_formula_checks, g7_table_printed_labels, restriction_matrices, sl2_multiplication_check,
    sl2_power_checks, v_plus_minus_check, verify_normalizer_relations, SL2_PRODUCTS,
};
use crate::kleinmoduli::{
    alpha_compose, alpha_t, b_matrix_report, d_vector, d_vector_printed_variant, delta_criterion, epsilon_identity, equational_point, grass_membership,
    j_ideal, klein_invariance, l_basis, minor_span_matches_psi, minors_and_independence, net_discriminant, pfaffian_apolarity, psi, random_alpha,
    surface_betti, surface_checks, tau_weights, w_basis, AlphaMatrix, Compositions, GrassPoint, KleinError, Sampler, L_ORDER, SPEC_L_ORDER,
};
use crate::polylin::{Matrix, Poly, PolyCtx, PolyRing, Registry};

type Res = Result<Outcome, Box<dyn std::error::Error + Send + Sync>>;

pub(super) fn all() -> Vec<CheckSpec> {
    let c = |id, suite, run| CheckSpec { id, suite, run };
    vec![
        c("appendix.group_law", Suite::Appendix, group_law),
        c("appendix.g7_table", Suite::Appendix, g7_table_check),
        c("appendix.g7_labels", Suite::Appendix, g7_labels),
        c("appendix.sl2_table", Suite::Appendix, sl2_table_check),
        c("appendix.g7_formulas", Suite::Appendix, g7_formulas),
        c("appendix.sl2_products", Suite::Appendix, sl2_products),
        c("appendix.n_restrictions", Suite::Appendix, n_restrictions),
        c("appendix.restriction_matrices", Suite::Appendix, restrictions),
        c("appendix.quadric_bases", Suite::Appendix, quadric_bases),
        c("appendix.klein_invariance", Suite::Appendix, klein_invariance_check),
        c("syzygy.b_matrices", Suite::Syzygy, b_matrices),
        c("syzygy.j_ideal", Suite::Syzygy, j_ideal_check),
        c("syzygy.alpha_equivalence", Suite::Syzygy, alpha_equivalence),
        c("syzygy.surface_betti", Suite::Syzygy, surface_betti_check),
        c("syzygy.d_vector", Suite::Syzygy, d_vector_check),
        c("moduli.surface_pipeline", Suite::Moduli, surface_pipeline),
        c("moduli.grassmann", Suite::Moduli, grassmann),
        c("moduli.alpha_family", Suite::Moduli, alpha_family),
        c("moduli.l_basis_order", Suite::Moduli, l_basis_order),
        c("moduli.degenerate_parameter", Suite::Moduli, degenerate_parameter),
        c("moduli.klein_quartic", Suite::Moduli, klein_quartic_suite),
    ]
}

fn tlabel(t: &[Rat]) -> String {
    format!("({})", t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":"))
}

fn group_law(ctx: &Context) -> Res {
    let h = build_heisenberg(ctx.cfg.exec)?;
    let rel = verify_normalizer_relations()?;
    let held = rel.relations.iter().filter(|r| r.coordinate_reading).count();
    let basis_only: Vec<&str> = rel.relations.iter().filter(|r| !r.basis_reading).map(|r| r.printed).collect();
    let ok = h.h7_order == 343 && h.g7_order == 686 && h.commutator_central_order_7 && rel.all_hold();
    Ok(Outcome::verdict(
        ok,
        format!(
            "law (k={}, c={}) agrees with the matrix model on {} pairs; |H7|={}, |G7|={}; {held}/{} normalizer relations hold on coordinates; det=1: {}; delta^2=iota: {}; differing on basis vectors: {basis_only:?}",
            h.phi_twist,
            h.cocycle,
            h.pairs_checked,
            h.h7_order,
            h.g7_order,
            rel.relations.len(),
            rel.determinants_one,
            rel.delta_squared_is_iota
        ),
    ))
}

fn g7_table_check(ctx: &Context) -> Res {
    let t = &ctx.g7().table;
    let exec = ctx.cfg.exec;
    let mut sizes = t.classes.sizes.clone();
    sizes.sort();
    sizes.dedup();
    let ok = t.rows.len() == 38 && t.classes.len() == 38 && sizes == [1, 14, 49] && t.row_orthogonality(exec) && t.column_orthogonality(exec) && t.sum_dim_squared() == 686;
    Ok(Outcome::verdict(ok, format!("{} classes, sizes {sizes:?}, sum of squared degrees {}, orthogonality checked exactly", t.classes.len(), t.sum_dim_squared())))
}

fn g7_labels(ctx: &Context) -> Res {
    let derived = ctx.g7();
    let printed = g7_table_printed_labels();
    let mut a: Vec<String> = derived.table.rows.iter().map(|r| format!("{r:?}")).collect();
    let mut b: Vec<String> = printed.table.rows.iter().map(|r| format!("{r:?}")).collect();
    a.sort();
    b.sort();
    if a != b {
        return Ok(Outcome::fail("printed and derived tables differ as sets of rows"));
    }
    if derived.v(0) == printed.v(0) {
        return Ok(Outcome::pass("labels agree"));
    }
    Ok(Outcome::flagged("same rows; the displayed table exchanges V_i and V_i# on the iota-classes, the matrix trace of iota on V (-1) fixes the labelling used"))
}

fn sl2_table_check(ctx: &Context) -> Res {
    let t = &ctx.sl2().table;
    let exec = ctx.cfg.exec;
    let ok = t.rows.len() == 11 && t.classes.len() == 11 && t.row_orthogonality(exec) && t.column_orthogonality(exec) && t.sum_dim_squared() == 336;
    Ok(Outcome::verdict(ok, format!("{} classes, sum of squared degrees {}, orthogonality checked exactly", t.classes.len(), t.sum_dim_squared())))
}

fn g7_formulas(ctx: &Context) -> Res {
    let checks = g7_formula_checks(ctx.g7(), ctx.cfg.exec);
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
    let head = format!("{} of {} displayed decompositions reproduce", checks.len() - bad.len(), checks.len());
    if bad.is_empty() {
        return Ok(Outcome::pass(head));
    }
    let list = bad.iter().map(|c| format!("{}: displayed {} computed {}", c.name, c.expected, c.computed)).collect::<Vec<_>>().join("; ");
    if bad.iter().all(|c| c.conflict.is_some()) {
        Ok(Outcome::flagged(format!("{head}; rows contradicting the closed form: {list}")))
    } else {
        Ok(Outcome::fail(format!("{head}; {list}")))
    }
}

fn sl2_products(ctx: &Context) -> Res {
    let products = sl2_multiplication_check(ctx.sl2(), ctx.cfg.exec);
    let powers = sl2_power_checks(ctx.sl2());
    let bad: Vec<String> = products.iter().chain(&powers).filter(|c| !c.ok).map(|c| format!("{}: computed {}", c.name, c.computed)).collect();
    Ok(Outcome::verdict(
        bad.is_empty() && SL2_PRODUCTS.len() == 55,
        format!("{} products, {} symmetric powers; mismatches: {bad:?}", products.len(), powers.len()),
    ))
}

fn n_restrictions(ctx: &Context) -> Res {
    let lifts = complement_lifts()?;
    let samples = a4_samples(ctx.g7(), ctx.cfg.exec);
    let checks = a4_checks(ctx.g7(), ctx.sl2(), &samples, &lifts, ctx.cfg.exec);
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok()).collect();
    let (plus, minus) = v_plus_minus_check(ctx.sl2(), &lifts, ctx.cfg.exec);
    let head = format!("{} of {} rows pass dimension, G7 restriction and {} sample traces; V+ = W': {plus}, V- = U': {minus}", checks.len() - bad.len(), checks.len(), samples.len());
    if bad.is_empty() && plus && minus {
        return Ok(Outcome::pass(head));
    }
    let list = bad
        .iter()
        .map(|c| format!("{}: {} (recovered factor {})", c.name, c.first_trace_failure.as_deref().unwrap_or("-"), c.recovered.as_deref().unwrap_or("none")))
        .collect::<Vec<_>>()
        .join("; ");
    if plus && minus && bad.iter().all(|c| c.dimension && c.restriction && c.recovered.is_some()) {
        Ok(Outcome::flagged(format!("{head}; {list}")))
    } else {
        Ok(Outcome::fail(format!("{head}; {list}")))
    }
}

fn restrictions(_: &Context) -> Res {
    let r = restriction_matrices()?;
    let bad: Vec<&str> = r.iter().filter(|x| !x.matches()).map(|x| x.name).collect();
    Ok(Outcome::verdict(bad.is_empty(), format!("{} restriction matrices compared entrywise; mismatches: {bad:?}", r.len())))
}

fn quadric_bases(_: &Context) -> Res {
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let j = j_ideal(&u)?;
    let f = l_basis(&u)?;
    let v = w_basis(&u)?;
    let ok = j.split_rank == 10 && f[4] == Poly::parse(&u, "u0*u3 + u1^2")? && v[2] == Poly::parse(&u, "u0*u3 - u1^2")?;
    Ok(Outcome::verdict(ok, format!("f4 = {}, v3 = {}, dim span(f, v) = {}", f[4], v[2], j.split_rank)))
}

fn klein_invariance_check(_: &Context) -> Res {
    let r = klein_invariance()?;
    Ok(Outcome::verdict(r.holds(), format!("fixed: {:?}; invariant quartics: {}; invariant is f_klein: {}", r.fixed, r.invariant_quartics, r.invariant_is_klein)))
}

fn b_matrices(ctx: &Context) -> Res {
    let r = b_matrix_report()?;
    let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let comp = Compositions::new(&x);
    let mut block_ok = true;
    let mut blocks = Vec::new();
    for t in ctx.cfg.parameters().iter().take(3).chain([&vec![Rat::one(); 4]]) {
        let m = minors_and_independence(&comp, &u, &alpha_t(&(), t)?.alpha)?;
        block_ok &= m.independent && m.block_ranks.iter().flatten().all(|&k| k == 6) && m.block_ranks.iter().any(|b| b.is_some());
        blocks.push(format!("{} {:?}", tlabel(t), m.block_ranks));
    }
    Ok(Outcome::verdict(
        r.holds() && block_ok,
        format!(
            "printed {:?}; sign relations {}; symmetric {}; nonzero compositions {}; B ranks at (1..7) {:?}; block ranks {}",
            r.printed,
            r.sign_relations,
            r.symmetric,
            r.nonzero,
            r.probe_ranks,
            blocks.join(", ")
        ),
    ))
}

fn j_ideal_check(ctx: &Context) -> Res {
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let j = j_ideal(&u)?;
    let cfg = GbConfig { exec: ctx.cfg.exec, ..GbConfig::with_degree(14) };
    let res = free_resolution(&j.ideal, &cfg)?;
    let expected = BettiTable::from_rows(&[&[1], &[0, 7, 8], &[0, 0, 3, 8, 3]]);
    let hf = buchberger(&j.ideal, &cfg)?.hilbert(4).values;
    let ok = j.kernel.len() == 7 && j.kernel_equals_generators && res.complete && res.betti == expected && hf[..4] == [1, 4, 3, 0];
    Ok(Outcome::verdict(ok, format!("kernel dim {} equals generators: {}; Betti {:?}; HF {:?}", j.kernel.len(), j.kernel_equals_generators, res.betti.rows(), &hf[..4])))
}

fn alpha_equivalence(ctx: &Context) -> Res {
    let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let comp = Compositions::new(&x);
    let mut alphas: Vec<(String, AlphaMatrix<Rat>)> = random_alpha(ctx.cfg.seed, ctx.cfg.alphas).into_iter().enumerate().map(|(i, a)| (format!("random #{i}"), a)).collect();
    for t in ctx.cfg.parameters() {
        alphas.push((format!("alpha{}", tlabel(&t)), alpha_t(&(), &t)?.alpha));
    }
    let verdicts: Vec<Result<(bool, bool), KleinError>> = ctx.cfg.exec.map(&alphas, |(_, a)| Ok((alpha_compose(&comp, &u, a)?.is_zero(), delta_criterion(&u, a)?)));
    let mut vanishing = 0;
    let mut discrepancies = Vec::new();
    for ((name, _), v) in alphas.iter().zip(verdicts) {
        let (zero, crit) = v?;
        vanishing += zero as usize;
        if zero != crit {
            discrepancies.push(format!("{name}: composition zero {zero}, criterion {crit}"));
        }
    }
    Ok(Outcome::verdict(
        discrepancies.is_empty(),
        format!("{} matrices ({} random), {vanishing} with vanishing composition, discrepancies: {discrepancies:?}", alphas.len(), ctx.cfg.alphas),
    ))
}

fn surface_betti_check(ctx: &Context) -> Res {
    let t = ctx.cfg.t.clone().unwrap_or_else(|| vec![Rat::one(); 4]);
    let coeff = ctx.cfg.resolution_coeff();
    let budget = ctx.cfg.budget_degree;
    let start = Instant::now();
    let b = surface_betti(&t, coeff, budget, ctx.cfg.exec)?;
    let over = start.elapsed().as_secs() > ctx.cfg.betti_seconds;
    let details = format!("t={} over {coeff}, degrees <= {budget}: {:?}; alternating sums match the Hilbert numerator: {}", tlabel(&t), b.table.rows(), b.alternating_sum_ok);
    if !b.alternating_sum_ok {
        return Ok(Outcome::fail(details));
    }
    if budget < 8 || over {
        return Ok(Outcome::flagged(format!("{details}; budget exhausted before the table is complete")));
    }
    Ok(Outcome::verdict(b.matches_expected, details))
}

fn d_vector_check(_: &Context) -> Res {
    let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
    let d = d_vector(&x)?;
    let w = tau_weights();
    let adopted = d.iter().all(|p| p.homogeneous_degree() == Some(3) && p.terms().iter().all(|(m, _)| w.weight(m) == 0));
    let variant = d_vector_printed_variant(&x)?;
    if !adopted {
        return Ok(Outcome::fail("adopted D is not a vector of tau-invariant cubics"));
    }
    Ok(Outcome::flagged(format!("fourth entry displayed as {} (not homogeneous); using {}, tau-invariant of degree 3", variant[3], d[3])))
}

fn surface_pipeline(ctx: &Context) -> Res {
    let ts = ctx.cfg.parameters();
    let g7 = ctx.g7();
    let results = ctx.cfg.exec.map(&ts, |t| surface_checks(t, g7, crate::exec::Exec::Seq));
    let mut failures = Vec::new();
    for (t, r) in ts.iter().zip(results) {
        let r = r?;
        if !r.all_pass() {
            failures.push(format!("{}: {:?} (HF {:?}, character {:?}, C_A {})", tlabel(t), r.failures(), r.hilbert, r.character, r.ca_betti.replace('\n', " / ")));
        }
    }
    Ok(Outcome::verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} parameters: 21 cubics, HF 1 7 28 63 112, stable under sigma tau iota, character 3V4, C_A Betti (1; 3 2), Hilbert-Burch round trip, membership", ts.len())
        } else {
            format!("{} of {} parameters fail: {}", failures.len(), ts.len(), failures.join("; "))
        },
    ))
}

fn grassmann(ctx: &Context) -> Res {
    let ts = ctx.cfg.parameters();
    let mut bad = Vec::new();
    for t in &ts {
        if !grass_membership(&psi(&(), t)?)?.holds {
            bad.push(tlabel(t));
        }
    }
    let eq = grass_membership(&equational_point::<Rat>(&()))?.holds;
    let mut s = Sampler::new(ctx.cfg.seed ^ 0x9e37_79b9);
    let random = GrassPoint::new(Matrix::from_rows(&(), s.matrix_rows(3, 7))?)?;
    let random_holds = grass_membership(&random)?.holds;
    Ok(Outcome::verdict(
        bad.is_empty() && eq && !random_holds,
        format!("psi(t) in the Grassmannian for {} of {} parameters; equational point: {eq}; random 3-space: {random_holds}", ts.len() - bad.len(), ts.len()),
    ))
}

fn alpha_family(ctx: &Context) -> Res {
    let ts = ctx.cfg.parameters();
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let mut bad = Vec::new();
    for t in &ts {
        let a = alpha_t(&(), t)?;
        if !minor_span_matches_psi(&(), t, &L_ORDER)? || !delta_criterion(&u, &a.alpha)? {
            bad.push(tlabel(t));
        }
    }
    Ok(Outcome::verdict(bad.is_empty(), format!("minors of alpha(t) span the row space of psi(t) and lie in J for {} of {} parameters", ts.len() - bad.len(), ts.len())))
}

fn l_basis_order(_: &Context) -> Res {
    let t = vec![Rat::one(); 4];
    let adopted = minor_span_matches_psi(&(), &t, &L_ORDER)?;
    let listed = minor_span_matches_psi(&(), &t, &SPEC_L_ORDER)?;
    if !adopted {
        return Ok(Outcome::fail("no basis order of L matches the minors"));
    }
    if listed {
        return Ok(Outcome::pass("listed order (f3,f1,f2,f4,f5,f6,f0) matches"));
    }
    Ok(Outcome::flagged("order (f3,f1,f2,f4,f5,f6,f0) does not match the minors of alpha(t); (f3,f1,f2,f4,f6,f5,f0) does and is used"))
}

fn degenerate_parameter(_: &Context) -> Res {
    let t = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
    let alpha = matches!(alpha_t(&(), &t), Err(KleinError::DegenerateParameter(_)));
    let rank = psi(&(), &t)?.rank();
    Ok(Outcome::verdict(alpha && rank < 3, format!("alpha at (1:0:0:0) rejected: {alpha}; rank psi(1:0:0:0) = {rank}")))
}

fn klein_quartic_suite(_: &Context) -> Res {
    let inv = klein_invariance()?;
    let pf = pfaffian_apolarity()?;
    let disc = net_discriminant()?;
    let eps = epsilon_identity()?;
    let hf_ok = pf.hilbert[..5] == [1, 3, 6, 3, 1] && pf.hilbert[5..].iter().all(|&h| h == 0);
    let ok = inv.holds() && pf.annihilate && pf.spans_kernel && pf.apolar_kernel_dim == 7 && hf_ok && pf.symmetric && disc.scalar.is_some() && eps.holds && eps.constant_part_vanishes;
    Ok(Outcome::verdict(
        ok,
        format!(
            "invariant under mu+, nu+, delta+: {}; Pfaffians annihilate f_klein: {}, span {} of the {}-dim apolar kernel; quotient HF {:?}; det(net) = {} * f_klein; epsilon identity: {}",
            inv.holds(),
            pf.annihilate,
            pf.pfaffian_span_dim,
            pf.apolar_kernel_dim,
            pf.hilbert,
            disc.scalar.map(|c| c.to_string()).unwrap_or_else(|| "not a multiple".into()),
            eps.holds
        ),
    ))
}

use std::time::{Duration, Instant};

use abmod::change_of_variable::{
    module_pushforward, pushforward, rank1_eigen_series, rank1_eigenvector, s_rho_lambda_recursion,
    ChangeOfVariable,
};
use abmod::classification::{
    cross_ratio, extract_gamma, find_l, gamma_normal_basis, make_e_gamma, presentation_theme_param,
    semisimplicity_witness,
};
use abmod::module::{
    delta_and_depth, delta_and_depth_module, fundamental_invariants, kernel_dim, modules_isomorphic,
    saturate_and_bernstein, simple_pole_normalize, AbModule, FrescoPresentation,
};
use abmod::ore::{commuting_rewrite, standard_computation};
use abmod::{rat, AbError, OreOperator, Rat, TruncSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: Duration = Duration::from_secs(10);

fn report(name: &str, start: Instant, failures: &[String], notes: &[String]) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < BUDGET;
    println!(
        "{name}: {} ({:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for n in notes {
        println!("  note: {n}");
    }
    for f in failures {
        println!("  failed: {f}");
    }
    assert!(failures.is_empty(), "{name}: {} failing checks", failures.len());
    assert!(elapsed < BUDGET, "{name}: took {elapsed:?}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_rat(r: &mut ChaCha8Rng) -> Rat {
    Rat::new(r.gen_range(-5..=5), r.gen_range(1..=4))
}

fn rand_unit(r: &mut ChaCha8Rng, terms: usize, order: usize, skip: Option<usize>) -> TruncSeries {
    let mut c = vec![Rat::one()];
    for n in 1..terms {
        c.push(if Some(n) == skip { Rat::zero() } else { rand_rat(r) });
    }
    TruncSeries::new(c, order)
}

fn theta(c: &[Rat]) -> ChangeOfVariable {
    ChangeOfVariable::new(c.to_vec()).unwrap()
}

fn unit_plus(c: Rat, n: usize, order: usize) -> TruncSeries {
    TruncSeries::one(order).add(&TruncSeries::monomial(c, n, order))
}

fn three_thetas() -> Vec<ChangeOfVariable> {
    vec![
        theta(&[rat!(2)]),
        theta(&[rat!(1), rat!(1)]),
        theta(&[rat!(1), rat!(-1 / 2), rat!(1)]),
    ]
}

#[test]
fn criterion_01_algebra_identities() {
    let start = Instant::now();
    let n = 24;
    let mut r = rng(1);
    let mut failures = Vec::new();
    for i in 0..50 {
        let s = rand_unit(&mut r, 8, n, None);
        let a = OreOperator::a(n);
        let sop = OreOperator::series(s.clone());
        if a.mul(&sop).sub(&sop.mul(&a)) != OreOperator::series(s.b2_derivative()) {
            failures.push(format!("case {i}: a·S − S·a ≠ b²S′"));
        }

        let mut c = vec![Rat::new(r.gen_range(1..=3), r.gen_range(1..=2))];
        for _ in 0..r.gen_range(1..=3) {
            c.push(rand_rat(&mut r));
        }
        let t = theta(&c);
        let (al, be) = (t.alpha(n), t.beta(n));
        if al.mul(&be).sub(&be.mul(&al)) != be.mul(&be) {
            failures.push(format!("case {i}: αβ − βα ≠ β²"));
        }

        let lambda = rand_rat(&mut r);
        let mu = rand_rat(&mut r);
        let q = OreOperator::new((0..3).map(|_| rand_unit(&mut r, 5, n, None)).collect(), n)
            .mul(&OreOperator::a_minus(&mu, n));
        let p = OreOperator::a_minus(&lambda, n);
        match q.left_divmod(&p) {
            Ok((t, rem)) if t.mul(&p).add(&rem) == q && rem.a_degree().unwrap_or(0) == 0 => {}
            Ok(_) => failures.push(format!("case {i}: divmod does not round trip")),
            Err(e) => failures.push(format!("case {i}: divmod error {e}")),
        }
    }
    report("criterion 01 algebra identities", start, &failures, &[]);
}

#[test]
fn criterion_02_commuting_rewrite() {
    let start = Instant::now();
    let n = 24;
    let mut r = rng(2);
    let mut failures = Vec::new();
    for i in 0..25 {
        let lambda1 = Rat::new(r.gen_range(3..=15), r.gen_range(1..=3));
        let p = r.gen_range(1..=5);
        let s = rand_unit(&mut r, 10, n, Some(p));
        let resonant = rand_rat(&mut r);
        match commuting_rewrite(&lambda1, p, &s, &resonant) {
            Ok(c) if c.holds() => {}
            Ok(_) => failures.push(format!("case {i}: sides differ (λ1 = {lambda1}, p = {p})")),
            Err(e) => failures.push(format!("case {i}: {e}")),
        }
    }
    let s = unit_plus(rat!(1), 2, n);
    match commuting_rewrite(&rat!(7 / 2), 2, &s, &Rat::zero()) {
        Err(AbError::Obstruction(_)) => {}
        other => failures.push(format!("obstruction case gave {:?}", other.map(|c| c.holds()))),
    }
    report("criterion 02 commuting rewrite", start, &failures, &[]);
}

#[test]
fn criterion_03_standard_computation() {
    let start = Instant::now();
    let n = 24;
    let mut r = rng(3);
    let mut failures = Vec::new();
    let (mut product, mut quotient) = (0, 0);
    for i in 0..10 {
        let lambda1 = Rat::new(r.gen_range(9..=20), r.gen_range(1..=3));
        let p1 = r.gen_range(1..=4);
        let p2 = r.gen_range(1..=4);
        let s1 = rand_unit(&mut r, 8, n, Some(p1));
        let s2 = rand_unit(&mut r, 8, n, None);
        match standard_computation(&lambda1, p1, p2, &s1, &s2) {
            Ok(sc) => {
                if !sc.conservation_holds {
                    failures.push(format!("case {i}: conservation identity fails"));
                }
                if !sc.operator_identity_holds {
                    failures.push(format!("case {i}: operator identity fails"));
                }
                product += sc.matches_product() as usize;
                quotient += sc.matches_quotient() as usize;
                println!(
                    "  case {i}: p = ({p1}, {p2}), α = {}, b^p2 coefficient {}, (p1+p2)·α·p1 = {}, (p1+p2)/p1·α = {}",
                    sc.alpha, sc.coeff_p2, sc.variant_product, sc.variant_quotient
                );
            }
            Err(e) => failures.push(format!("case {i}: {e}")),
        }
    }
    let notes = vec![format!(
        "b^p2 coefficient matches (p1+p2)·α·p1 in {product}/10 cases and (p1+p2)/p1·α in {quotient}/10 cases"
    )];
    report("criterion 03 standard computation", start, &failures, &notes);
}

fn rand_fresco(r: &mut ChaCha8Rng, k: usize, order: usize) -> FrescoPresentation {
    let lambda1 = Rat::new(r.gen_range(3 * k as i64..=6 * k as i64), 3);
    let p: Vec<usize> = (1..k).map(|_| r.gen_range(0..=3)).collect();
    let s = p.iter().map(|_| rand_unit(r, 4, order, None)).collect();
    FrescoPresentation::new(lambda1, p, s, order).unwrap()
}

fn bernstein_of(e: &AbModule) -> Result<abmod::Poly, AbError> {
    saturate_and_bernstein(e, e.rank() + 1).map(|s| s.bernstein)
}

#[test]
fn criterion_04_bernstein() {
    let start = Instant::now();
    let mut r = rng(4);
    let mut failures = Vec::new();
    for i in 0..10 {
        let k = 1 + i % 4;
        let pres = rand_fresco(&mut r, k, 12 + 2 * k);
        let expected = pres.bernstein_formula();
        let e = pres.module();
        match bernstein_of(&e) {
            Ok(b) if b == expected => {}
            Ok(b) => failures.push(format!("case {i}: {b:?} ≠ {expected:?}")),
            Err(err) => failures.push(format!("case {i}: {err}")),
        }
        for (t, th) in three_thetas().iter().enumerate() {
            match bernstein_of(&module_pushforward(&e, th)) {
                Ok(b) if b == expected => {}
                Ok(b) => failures.push(format!("case {i} θ{t}: {b:?} ≠ {expected:?}")),
                Err(err) => failures.push(format!("case {i} θ{t}: {err}")),
            }
        }
    }
    report("criterion 04 Bernstein polynomial", start, &failures, &[]);
}

fn delta_cases() -> Vec<(Rat, Vec<usize>)> {
    vec![
        (rat!(7 / 2), vec![2, 3]),
        (rat!(9 / 2), vec![1, 2]),
        (rat!(11 / 2), vec![2, 2, 2]),
        (rat!(16 / 3), vec![1, 3, 2]),
        (rat!(5), vec![3, 3]),
    ]
}

fn theme_and_plain(lambda1: &Rat, p: &[usize], n: usize) -> (FrescoPresentation, FrescoPresentation) {
    let s = p.iter().map(|&q| unit_plus(rat!(1), q, n)).collect();
    (
        FrescoPresentation::new(lambda1.clone(), p.to_vec(), s, n).unwrap(),
        FrescoPresentation::plain(lambda1.clone(), p.to_vec(), n),
    )
}

#[test]
fn criterion_05_delta_and_depth() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let th = theta(&[rat!(2), rat!(1)]);
    for (lambda1, p) in delta_cases() {
        let k = p.len() + 1;
        let n = 2 * p.iter().sum::<usize>() + 10;
        let (theme, plain) = theme_and_plain(&lambda1, &p, n);
        for (name, pres, expected) in [("theme", &theme, (1, k)), ("plain", &plain, (k, 1))] {
            let tag = format!("{name} λ1 = {lambda1}, p = {p:?}");
            match delta_and_depth(pres) {
                Ok(got) => {
                    if got != expected {
                        failures.push(format!("{tag}: {got:?} ≠ {expected:?}"));
                    }
                    if got.0 != k - got.1 + 1 {
                        failures.push(format!("{tag}: δ ≠ k − d + 1"));
                    }
                }
                Err(e) => failures.push(format!("{tag}: {e}")),
            }
            match delta_and_depth_module(&module_pushforward(&pres.module(), &th)) {
                Ok(got) if got == expected => {}
                Ok(got) => failures.push(format!("{tag} after θ: {got:?} ≠ {expected:?}")),
                Err(e) => failures.push(format!("{tag} after θ: {e}")),
            }
            let lambdas = pres.lambdas();
            let mu = &lambdas[k - 1] + Rat::int(k as i64 - 1);
            let m0 = (&mu - &lambdas[0]).floor().try_into().unwrap_or(0usize) + 1;
            let dims: Vec<usize> = (m0..m0 + 3)
                .map(|m| kernel_dim(&pres.module(), &mu, m).map(|i| i.dim).unwrap_or(usize::MAX))
                .collect();
            if dims.iter().any(|&d| d != expected.0) {
                failures.push(format!("{tag}: kernel dims over M = {m0}.. are {dims:?}"));
            }
        }
    }
    report("criterion 05 delta and depth", start, &failures, &[]);
}

#[test]
fn criterion_06_rank_one() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let n = 14;
    let thetas = [
        theta(&[rat!(2)]),
        theta(&[rat!(1), rat!(1)]),
        theta(&[rat!(-1 / 3), rat!(2)]),
        theta(&[rat!(1), rat!(0), rat!(1)]),
        theta(&[rat!(3 / 2), rat!(-1), rat!(1 / 2), rat!(4)]),
    ];
    for lambda in [rat!(5 / 2), rat!(7 / 3), rat!(4)] {
        let pres = FrescoPresentation::plain(lambda.clone(), vec![], n);
        for (t, th) in thetas.iter().enumerate() {
            match pushforward(&pres, th) {
                Ok(f) if f.lambda1 == lambda && f.rank() == 1 => {}
                Ok(f) => failures.push(format!("λ = {lambda}, θ{t}: got λ = {}", f.lambda1)),
                Err(e) => failures.push(format!("λ = {lambda}, θ{t}: {e}")),
            }
        }
        for rho in [rat!(1), rat!(-2 / 3), rat!(5)] {
            let th = ChangeOfVariable::unitary(rho.clone(), 2).unwrap();
            let expected = &rho * &lambda * (&lambda - rat!(1));
            match rank1_eigen_series(&lambda, &th, 8) {
                Ok(s) if s.coeff(1) == expected => {}
                Ok(s) => failures.push(format!("λ = {lambda}, ρ = {rho}: s1 = {} ≠ {expected}", s.coeff(1))),
                Err(e) => failures.push(format!("λ = {lambda}, ρ = {rho}: {e}")),
            }
            match rank1_eigenvector(&lambda, &th, 12) {
                Ok(v) if v == s_rho_lambda_recursion(&lambda, &rho, 12) => {}
                Ok(_) => failures.push(format!("λ = {lambda}, ρ = {rho}: recursion ≠ ODE route")),
                Err(e) => failures.push(format!("λ = {lambda}, ρ = {rho}: {e}")),
            }
        }
    }
    report("criterion 06 rank one", start, &failures, &[]);
}

fn rank2_pres(lambda1: &Rat, p: usize, z: &Rat, n: usize) -> FrescoPresentation {
    FrescoPresentation::new(lambda1.clone(), vec![p], vec![unit_plus(z.clone(), p, n)], n).unwrap()
}

#[test]
fn criterion_07_rank_two_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let unitary = [
        ChangeOfVariable::unitary(rat!(1), 2).unwrap(),
        ChangeOfVariable::unitary(rat!(1), 3).unwrap(),
        theta(&[rat!(1), rat!(-1 / 2), rat!(2)]),
    ];
    for (lambda1, p) in [(rat!(7 / 2), 2usize), (rat!(13 / 3), 3)] {
        let n = 4 * p + 12;
        for z in [rat!(0), rat!(1), rat!(-2 / 3)] {
            let pres = rank2_pres(&lambda1, p, &z, n);
            for t1 in [rat!(2), rat!(-1 / 3)] {
                let r = t1.pow(p as i32);
                let tag = format!("λ1 = {lambda1}, p = {p}, z = {z}, θ = {t1}·a");
                match pushforward(&pres, &theta(&[t1.clone()])).and_then(|f| presentation_theme_param(&f)) {
                    Ok(got) => {
                        if got != &r * &z {
                            failures.push(format!("{tag}: parameter {got}, law predicts θ1^p·z = {}", &r * &z));
                        }
                        if got != &z / &r {
                            notes.push(format!("{tag}: parameter {got} also differs from z/θ1^p"));
                        }
                    }
                    Err(e) => failures.push(format!("{tag}: {e}")),
                }
            }
            for (t, th) in unitary.iter().enumerate() {
                match pushforward(&pres, th).and_then(|f| presentation_theme_param(&f)) {
                    Ok(got) if got == z => {}
                    Ok(got) => failures.push(format!("λ1 = {lambda1}, p = {p}, z = {z}, unitary θ{t}: {got}")),
                    Err(e) => failures.push(format!("λ1 = {lambda1}, p = {p}, z = {z}, unitary θ{t}: {e}")),
                }
            }
        }
    }
    report("criterion 07 rank two law", start, &failures, &notes);
}

fn l_closed_form(p1: usize, p2: usize) -> Rat {
    Rat::int(-((p1 as i64 - 1) * (p1 + p2 - 1) as i64))
}

#[test]
fn criterion_08_rank_three_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (lambda1, p1, p2) in [(rat!(7 / 2), 2usize, 2usize), (rat!(4), 3, 2), (rat!(3), 4, 3)] {
        let n = 2 * (p1 + p2) + 8;
        let tag = format!("({lambda1}, {p1}, {p2})");
        let mut ls: Vec<Rat> = Vec::new();
        for g in [rat!(0), rat!(1), rat!(-2)] {
            let e = make_e_gamma(&lambda1, p1, p2, &g, n).unwrap().module();
            for t1 in [rat!(1), rat!(2)] {
                for t2 in [rat!(0), rat!(1), rat!(2)] {
                    let th = theta(&[t1.clone(), t2.clone()]);
                    let got = match extract_gamma(&module_pushforward(&e, &th)) {
                        Ok(v) => v,
                        Err(err) => {
                            failures.push(format!("{tag} γ = {g}, θ = ({t1}, {t2}): {err}"));
                            continue;
                        }
                    };
                    let shift = &got - &g / &t1;
                    if t2.is_zero() {
                        if !shift.is_zero() {
                            failures.push(format!("{tag} γ = {g}, θ = {t1}·a: γ′ = {got}"));
                        }
                    } else {
                        ls.push(shift * &t1 * &t1 / &t2);
                    }
                }
            }
            match extract_gamma(&module_pushforward(&e, &ChangeOfVariable::unitary(rat!(1), 3).unwrap())) {
                Ok(v) if v == g => {}
                Ok(v) => failures.push(format!("{tag} γ = {g}: a + a³ gives {v}")),
                Err(err) => failures.push(format!("{tag} γ = {g}, a + a³: {err}")),
            }
        }
        ls.dedup();
        if ls.len() != 1 {
            failures.push(format!("{tag}: no single L fits the grid, got {ls:?}"));
            continue;
        }
        let l = &ls[0];
        if *l != l_closed_form(p1, p2) {
            failures.push(format!("{tag}: L = {l}, closed form −(p1−1)(p1+p2−1) = {}", l_closed_form(p1, p2)));
        }
        notes.push(format!("{tag}: L_emp = {l}"));
        if (p1, p2) == (4, 3) {
            notes.push(format!("L_emp = 0 for the (3, 4, 3) family: {}", l.is_zero()));
        }
    }
    report("criterion 08 rank three law", start, &failures, &notes);
}

fn family(z: &Rat, n: usize) -> FrescoPresentation {
    let (p1, p2) = (2, 3);
    FrescoPresentation::new(
        rat!(7 / 2),
        vec![p1, p2],
        vec![unit_plus(rat!(1), p1 + p2, n), unit_plus(z.clone(), p2, n)],
        n,
    )
    .unwrap()
}

#[test]
fn criterion_09_example_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let n = 18;
    let (lambda1, lambda2) = (rat!(7 / 2), rat!(9 / 2));
    for z in [rat!(1), rat!(1 / 2), rat!(-2), rat!(0)] {
        let expected = if z.is_zero() { lambda1.clone() } else { &lambda2 + rat!(1) };
        match find_l(&family(&z, n).module()) {
            Ok(Some(mu)) if mu == expected => {}
            Ok(got) => failures.push(format!("z = {z}: L exponent {got:?}, expected {expected}")),
            Err(e) => failures.push(format!("z = {z}: {e}")),
        }
    }
    let s1 = unit_plus(rat!(1), 5, n);
    match semisimplicity_witness(&lambda1, 2, 3, &s1, &TruncSeries::one(n)) {
        Ok(w) if w.gamma_coeff == Some(rat!(-2 / 3)) => {}
        Ok(w) => failures.push(format!("witness γ = {:?}", w.gamma_coeff)),
        Err(e) => failures.push(format!("witness: {e}")),
    }
    report("criterion 09 example family", start, &failures, &[]);
}

/// Rank 5, all p_j = 2, S_j = 1 + c_j·b.
fn cross_ratio_fresco(n: usize) -> FrescoPresentation {
    let s = [1, 2, -1, 5]
        .iter()
        .map(|&c| TruncSeries::new(vec![Rat::one(), Rat::int(c)], n))
        .collect();
    FrescoPresentation::new(rat!(9 / 2), vec![2; 4], s, n).unwrap()
}

#[test]
fn criterion_10_cross_ratio() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let e = cross_ratio_fresco(24).module();
    let base = cross_ratio(&e, [3, 4, 5]);
    if base.as_ref().ok() != Some(&rat!(9 / 5)) {
        failures.push(format!("base cross ratio {base:?}, expected 9/5"));
    }
    for th in [theta(&[rat!(2)]), theta(&[rat!(1), rat!(1)]), theta(&[rat!(1), rat!(1 / 3)])] {
        let got = cross_ratio(&module_pushforward(&e, &th), [3, 4, 5]);
        if got.as_ref().ok() != Some(&rat!(9 / 5)) {
            failures.push(format!("θ = {:?}: {got:?}", th.coeffs()));
        }
    }
    report("criterion 10 cross ratio", start, &failures, &[]);
}

#[test]
fn criterion_11_simple_pole_normal_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let n = 12;
    for lambda in [rat!(3 / 2), rat!(2)] {
        for p in [1usize, 2] {
            let xi = AbModule::xi(&lambda, p, n);
            for th in three_thetas() {
                let tag = format!("λ = {lambda}, p = {p}, θ = {:?}", th.coeffs());
                let f = module_pushforward(&xi, &th);
                match simple_pole_normalize(&f, &lambda) {
                    Ok((_, normal)) if normal == xi.truncate(normal.order()) => {}
                    Ok(_) => failures.push(format!("{tag}: normal form is not Ξ")),
                    Err(e) => failures.push(format!("{tag}: {e}")),
                }
                match modules_isomorphic(&f, &xi.truncate(f.order())) {
                    Ok(Some(_)) => {}
                    Ok(None) => failures.push(format!("{tag}: isomorphism oracle disagrees")),
                    Err(e) => failures.push(format!("{tag}: oracle {e}")),
                }
            }
        }
    }
    report("criterion 11 simple pole normal form", start, &failures, &[]);
}

/// The invariants of criteria 4–10 at a given order, rendered for comparison.
fn invariants_at(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let th = theta(&[rat!(2), rat!(1)]);
    let pres = FrescoPresentation::new(
        rat!(11 / 3),
        vec![1, 3, 2],
        vec![unit_plus(rat!(2), 1, n), unit_plus(rat!(-1), 2, n), unit_plus(rat!(1 / 2), 1, n)],
        n,
    )
    .unwrap();
    out.push(format!("bernstein {:?}", bernstein_of(&module_pushforward(&pres.module(), &th))));
    for (lambda1, p) in delta_cases().into_iter().take(3) {
        let (theme, plain) = theme_and_plain(&lambda1, &p, n);
        out.push(format!("delta {:?} {:?}", delta_and_depth(&theme), delta_and_depth(&plain)));
    }
    let e = FrescoPresentation::plain(rat!(5 / 2), vec![], n).module();
    out.push(format!("rank1 {:?}", fundamental_invariants(&module_pushforward(&e, &th))));
    let r2 = rank2_pres(&rat!(7 / 2), 2, &rat!(1), n);
    out.push(format!("rank2 {:?}", pushforward(&r2, &th).and_then(|f| presentation_theme_param(&f))));
    let g = make_e_gamma(&rat!(7 / 2), 2, 2, &rat!(1), n).unwrap();
    out.push(format!(
        "rank3 {:?}",
        pushforward(&g, &th).and_then(|f| gamma_normal_basis(&f).map(|b| b.gamma))
    ));
    out.push(format!("find_l {:?}", find_l(&family(&rat!(1), n).module())));
    out.push(format!("cross {:?}", cross_ratio(&cross_ratio_fresco(n).module(), [3, 4, 5])));
    out
}

#[test]
fn criterion_12_truncation_stability() {
    let start = Instant::now();
    let n = 24;
    let (low, high) = (invariants_at(n), invariants_at(n + 8));
    let failures: Vec<String> = low
        .iter()
        .zip(&high)
        .filter(|(a, b)| a != b)
        .map(|(a, b)| format!("order {n}: {a} vs order {}: {b}", n + 8))
        .collect();
    let notes: Vec<String> = low.iter().map(|s| format!("order {n} and {}: {s}", n + 8)).collect();
    report("criterion 12 truncation stability", start, &failures, &notes);
}

//! Named property suites run by `abmod verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::change_of_variable::{module_pushforward, pushforward, ChangeOfVariable};
use crate::classification::{
    cross_ratio, empirical_l, find_l, gamma_normal_basis, make_e_gamma, presentation_theme_param,
    printed_l_formulas, semisimplicity_witness,
};
use crate::error::{AbError, Result};
use crate::module::{delta_and_depth, delta_and_depth_module, fundamental_invariants, saturate_and_bernstein, FrescoPresentation};
use crate::ore::{commuting_rewrite, OreOperator};
use crate::rational::Rat;
use crate::series::TruncSeries;

pub const SUITES: &[&str] = &[
    "algebra",
    "commuting",
    "bernstein",
    "pushforward",
    "rank2",
    "rank3",
    "crossratio",
    "family",
    "all",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Case {
    fn new(id: String, description: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Case {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Case {
            pass: expected == actual,
            id,
            description: description.into(),
            expected,
            actual,
        }
    }

    fn error(id: String, description: impl Into<String>, expected: impl ToString, err: &AbError) -> Case {
        Case {
            id,
            description: description.into(),
            expected: expected.to_string(),
            actual: format!("error: {}", err.code()),
            pass: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
    pub passed: usize,
    pub failed: usize,
    pub flags: Vec<String>,
}

struct Out {
    cases: Vec<Case>,
    flags: Vec<String>,
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn rand_unit(rng: &mut ChaCha8Rng, terms: usize, order: usize, skip: Option<usize>) -> TruncSeries {
    let mut c = vec![Rat::one()];
    for n in 1..terms {
        c.push(if Some(n) == skip { Rat::zero() } else { rand_rat(rng) });
    }
    TruncSeries::new(c, order)
}

fn rand_theta(rng: &mut ChaCha8Rng) -> ChangeOfVariable {
    let mut c = vec![Rat::new(rng.gen_range(1..=3), rng.gen_range(1..=2))];
    for _ in 0..rng.gen_range(1..=2) {
        c.push(rand_rat(rng));
    }
    ChangeOfVariable::new(c).expect("θ1 ≠ 0")
}

fn algebra(seed: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 16;
    let mut cases = Vec::new();
    for i in 0..10 {
        let s = rand_unit(&mut rng, 6, n, None);
        let a = OreOperator::a(n);
        let lhs = a.mul(&OreOperator::series(s.clone())).sub(&OreOperator::series(s.clone()).mul(&a));
        let rhs = OreOperator::series(s.b2_derivative());
        cases.push(Case::new(format!("algebra/{i:02}/leibniz"), "a·S − S·a = b²S′", true, lhs == rhs));

        let theta = rand_theta(&mut rng);
        let (al, be) = (theta.alpha(n), theta.beta(n));
        let comm = al.mul(&be).sub(&be.mul(&al));
        cases.push(Case::new(format!("algebra/{i:02}/alpha-beta"), "αβ − βα = β²", true, comm == be.mul(&be)));

        let lambda = rand_rat(&mut rng);
        let q = OreOperator::new(
            (0..3).map(|_| rand_unit(&mut rng, 4, n, None)).collect(),
            n,
        );
        let p = OreOperator::a_minus(&lambda, n);
        let ok = match q.left_divmod(&p) {
            Ok((t, r)) => t.mul(&p).add(&r) == q && r.a_degree().unwrap_or(0) == 0,
            Err(_) => false,
        };
        cases.push(Case::new(format!("algebra/{i:02}/divmod"), "Q = T·(a − λb) + R", true, ok));
    }
    Out { cases, flags: Vec::new() }
}

fn commuting(seed: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 16;
    let mut cases = Vec::new();
    for i in 0..10 {
        let lambda1 = Rat::new(rng.gen_range(3..=15), rng.gen_range(1..=3));
        let p = rng.gen_range(2..=5);
        let s = rand_unit(&mut rng, 8, n, Some(p));
        let got = commuting_rewrite(&lambda1, p, &s, &rand_rat(&mut rng)).map(|c| c.holds());
        let id = format!("commuting/{i:02}");
        cases.push(match got {
            Ok(h) => Case::new(id, format!("λ1 = {lambda1}, p = {p}"), true, h),
            Err(e) => Case::error(id, "rewrite", true, &e),
        });
    }
    let s = TruncSeries::new(vec![Rat::one(), Rat::zero(), Rat::one()], n);
    let got = match commuting_rewrite(&Rat::new(7, 2), 2, &s, &Rat::zero()) {
        Err(AbError::Obstruction(m)) => format!("obstruction at {m}"),
        Err(e) => e.code().to_string(),
        Ok(_) => "no error".to_string(),
    };
    cases.push(Case::new("commuting/obstruction".into(), "S with a b^p term", "obstruction at 2", got));
    Out { cases, flags: Vec::new() }
}

fn rand_presentation(rng: &mut ChaCha8Rng, k: usize, order: usize) -> FrescoPresentation {
    let lambda1 = Rat::new(rng.gen_range(3 * k as i64..=6 * k as i64), 3);
    let p: Vec<usize> = (1..k).map(|_| rng.gen_range(0..=3)).collect();
    let s = p.iter().map(|_| rand_unit(rng, 4, order, None)).collect();
    FrescoPresentation::new(lambda1, p, s, order).expect("valid")
}

fn bernstein(seed: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..8)
        .map(|i| {
            let k = 1 + i % 3;
            let pres = rand_presentation(&mut rng, k, 16);
            let id = format!("bernstein/{i:02}");
            let desc = format!("rank {k}, λ1 = {}, p = {:?}", pres.lambda1, pres.p);
            match saturate_and_bernstein(&pres.module(), k + 1) {
                Ok(s) => Case::new(id, desc, format!("{:?}", pres.bernstein_formula()), format!("{:?}", s.bernstein)),
                Err(e) => Case::error(id, desc, "Bernstein polynomial", &e),
            }
        })
        .collect();
    Out { cases, flags: Vec::new() }
}

fn pushforward_suite(seed: u64) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for i in 0..6 {
        let k = 1 + i % 3;
        let pres = rand_presentation(&mut rng, k, 14);
        let theta = rand_theta(&mut rng);
        jobs.push((i, pres, theta));
    }
    let cases = jobs
        .par_iter()
        .flat_map(|(i, pres, theta)| {
            let f = module_pushforward(&pres.module(), theta);
            let desc = format!("rank {}, θ = {:?}", pres.rank(), theta.coeffs().iter().map(Rat::to_string).collect::<Vec<_>>());
            let mut out = Vec::new();
            let id = format!("pushforward/{i:02}/invariants");
            out.push(match fundamental_invariants(&f) {
                Ok(l) => Case::new(id, desc.clone(), format!("{:?}", pres.lambdas()), format!("{l:?}")),
                Err(e) => Case::error(id, desc.clone(), "invariants", &e),
            });
            let id = format!("pushforward/{i:02}/delta");
            let before = delta_and_depth(pres);
            let after = delta_and_depth_module(&f);
            out.push(match (before, after) {
                (Ok(b), Ok(a)) => Case::new(id, desc, format!("{b:?}"), format!("{a:?}")),
                (Err(e), _) | (_, Err(e)) => Case::error(id, desc, "(δ, d)", &e),
            });
            out
        })
        .collect();
    Out { cases, flags: Vec::new() }
}

fn rank2(_seed: u64) -> Out {
    let mut cases = Vec::new();
    let mut printed_law_holds = true;
    for (lambda1, p) in [(Rat::new(7, 2), 2usize), (Rat::new(13, 3), 3)] {
        let n = 4 * p + 16;
        for z in [Rat::one(), Rat::new(-2, 3)] {
            let s = TruncSeries::one(n).add(&TruncSeries::monomial(z.clone(), p, n));
            let pres = FrescoPresentation::new(lambda1.clone(), vec![p], vec![s], n).expect("valid");
            let thetas = [
                ChangeOfVariable::scaling(Rat::int(2)).expect("θ1 ≠ 0"),
                ChangeOfVariable::unitary(Rat::one(), 2).expect("θ1 ≠ 0"),
                ChangeOfVariable::unitary(Rat::one(), 3).expect("θ1 ≠ 0"),
            ];
            for (t, theta) in thetas.iter().enumerate() {
                let r = theta.theta1().pow(p as i32);
                let expected = &z / &r;
                let id = format!("rank2/{lambda1}/{p}/{z}/theta{t}");
                let desc = "parameter after θ, expected z/θ1^p";
                match pushforward(&pres, theta).and_then(|f| presentation_theme_param(&f)) {
                    Ok(got) => {
                        if got != &z * &r {
                            printed_law_holds = false;
                        }
                        cases.push(Case::new(id, desc, &expected, &got));
                    }
                    Err(e) => cases.push(Case::error(id, desc, &expected, &e)),
                }
            }
        }
    }
    let flags = vec![format!("printed law θ1^p·z matches: {printed_law_holds}")];
    Out { cases, flags }
}

fn rank3(_seed: u64) -> Out {
    let triples = [(Rat::new(7, 2), 2usize, 2usize), (Rat::int(4), 3, 2), (Rat::int(3), 4, 3)];
    let results: Vec<(Vec<Case>, Vec<String>)> = triples
        .par_iter()
        .map(|(lambda1, p1, p2)| {
            let n = 2 * (p1 + p2) + 8;
            let tag = format!("rank3/{lambda1}/{p1}/{p2}");
            let mut cases = Vec::new();
            let mut flags = Vec::new();
            let emp = match empirical_l(lambda1, *p1, *p2, n) {
                Ok(e) => e,
                Err(e) => {
                    cases.push(Case::error(tag, "empirical L", "L", &e));
                    return (cases, flags);
                }
            };
            cases.push(Case::new(format!("{tag}/gamma-independent"), "γ′ − γ equal for γ ∈ {0, 1, −2}", true, emp.gamma_independent));
            cases.push(Case::new(format!("{tag}/rho-linear"), "ρ = 2 gives 2L", true, emp.rho_linear));
            cases.push(Case::new(format!("{tag}/tangent"), "a + a³ fixes γ", true, emp.tangent_fixed));
            let theta = ChangeOfVariable::new(vec![Rat::int(2), Rat::one()]).expect("θ1 ≠ 0");
            let g = Rat::one();
            let expected = &g / Rat::int(2) + &emp.l / Rat::int(4);
            let got = make_e_gamma(lambda1, *p1, *p2, &g, n)
                .and_then(|e| pushforward(&e, &theta))
                .and_then(|f| gamma_normal_basis(&f).map(|b| b.gamma));
            let id = format!("{tag}/affine");
            cases.push(match got {
                Ok(v) => Case::new(id, "θ = 2a + a², γ = 1: γ/θ1 + θ2/θ1²·L", &expected, &v),
                Err(e) => Case::error(id, "affine law", &expected, &e),
            });
            flags.push(format!("{tag}: L = {}", emp.l));
            for (name, _, value) in printed_l_formulas(lambda1, *p1, *p2) {
                flags.push(format!("{tag}: {name} = {value} matches: {}", value == emp.l));
            }
            (cases, flags)
        })
        .collect();
    let mut out = Out { cases: Vec::new(), flags: Vec::new() };
    for (c, f) in results {
        out.cases.extend(c);
        out.flags.extend(f);
    }
    out
}

/// Rank 5, all p_j = 2, S_j = 1 + c_j·b; the subquotient parameters are
/// c_{j−2} − c_{j−1}.
pub(crate) fn cross_ratio_fresco(order: usize) -> FrescoPresentation {
    let c = [1, 2, -1, 5];
    let s = c
        .iter()
        .map(|&x| TruncSeries::new(vec![Rat::one(), Rat::int(x)], order))
        .collect();
    FrescoPresentation::new(Rat::new(9, 2), vec![2; 4], s, order).expect("valid")
}

fn crossratio(_seed: u64) -> Out {
    let n = 24;
    let e = cross_ratio_fresco(n).module();
    let base = cross_ratio(&e, [3, 4, 5]);
    let mut cases = Vec::new();
    let expected = Rat::new(9, 5);
    cases.push(match &base {
        Ok(v) => Case::new("crossratio/base".into(), "(γ3 − γ2)/(γ3 − γ1)", &expected, v),
        Err(err) => Case::error("crossratio/base".into(), "cross ratio", &expected, err),
    });
    let thetas = [
        vec![Rat::int(2)],
        vec![Rat::one(), Rat::one()],
        vec![Rat::one(), Rat::new(1, 3)],
    ];
    let moved: Vec<Case> = thetas
        .par_iter()
        .enumerate()
        .map(|(t, th)| {
            let theta = ChangeOfVariable::new(th.clone()).expect("θ1 ≠ 0");
            let id = format!("crossratio/theta{t}");
            match cross_ratio(&module_pushforward(&e, &theta), [3, 4, 5]) {
                Ok(v) => Case::new(id, "cross ratio after θ", &expected, &v),
                Err(err) => Case::error(id, "cross ratio after θ", &expected, &err),
            }
        })
        .collect();
    cases.extend(moved);
    Out { cases, flags: Vec::new() }
}

fn family(_seed: u64) -> Out {
    let (lambda1, p1, p2) = (Rat::new(7, 2), 2usize, 3usize);
    let n = 2 * (p1 + p2) + 8;
    let lambda2 = &lambda1 + Rat::int(p1 as i64 - 1);
    let s1 = TruncSeries::one(n).add(&TruncSeries::monomial(Rat::one(), p1 + p2, n));
    let mut cases = Vec::new();
    for z in [Rat::zero(), Rat::one(), Rat::new(1, 2), Rat::int(-2)] {
        let s2 = TruncSeries::one(n).add(&TruncSeries::monomial(z.clone(), p2, n));
        let pres = FrescoPresentation::new(lambda1.clone(), vec![p1, p2], vec![s1.clone(), s2], n).expect("valid");
        let expected = if z.is_zero() { lambda1.clone() } else { &lambda2 + Rat::one() };
        let id = format!("family/L/z={z}");
        cases.push(match find_l(&pres.module()) {
            Ok(Some(mu)) => Case::new(id, "exponent of L(E)", &expected, &mu),
            Ok(None) => Case::new(id, "exponent of L(E)", &expected, "semi-simple"),
            Err(e) => Case::error(id, "exponent of L(E)", &expected, &e),
        });
    }
    let w = semisimplicity_witness(&lambda1, p1, p2, &s1, &TruncSeries::one(n));
    let expected = Rat::new(-(p1 as i64), p2 as i64);
    cases.push(match w {
        Ok(w) => Case::new(
            "family/witness".into(),
            "γ at z = 0",
            &expected,
            w.gamma_coeff.map(|g| g.to_string()).unwrap_or_default(),
        ),
        Err(e) => Case::error("family/witness".into(), "γ at z = 0", &expected, &e),
    });
    Out { cases, flags: Vec::new() }
}

pub fn verify_suite(name: &str, seed: u64) -> Result<Summary> {
    let run = |n: &str| -> Out {
        match n {
            "algebra" => algebra(seed),
            "commuting" => commuting(seed),
            "bernstein" => bernstein(seed),
            "pushforward" => pushforward_suite(seed),
            "rank2" => rank2(seed),
            "rank3" => rank3(seed),
            "crossratio" => crossratio(seed),
            "family" => family(seed),
            _ => unreachable!("checked by caller"),
        }
    };
    if !SUITES.contains(&name) {
        return Err(AbError::Validation(format!("unknown suite {name:?}")));
    }
    let names: Vec<&str> = if name == "all" {
        SUITES[..SUITES.len() - 1].to_vec()
    } else {
        vec![name]
    };
    let mut cases = Vec::new();
    let mut flags = Vec::new();
    for n in names {
        let out = run(n);
        cases.extend(out.cases);
        flags.extend(out.flags);
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Summary {
        suite: name.to_string(),
        seed,
        failed: cases.len() - passed,
        passed,
        cases,
        flags,
    })
}

//! The full fixture suite behind `verify-all`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::genfun::annihilation_check;
use crate::landau_ginzburg::{
    check_gradient, gradient_matches_relations, potential, top_degree_monomials, vafa_intriligator,
    LgConfig,
};
use crate::quotient::spectrum_check;
use crate::spaces::{grassmannian_presentation, product_fixtures, FlagChart, Space, SpaceId};
use crate::symplectic::{lagrangian_check, poisson_bracket};
use crate::toda::{convergence_ratio, toda_integrate, toda_matches_flag_relations, TodaState};
use crate::{parse, Error};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub root_residual: f64,
    pub integrator_drift: f64,
    pub spectrum_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_residual: 1e-10,
            integrator_drift: 1e-8,
            spectrum_residual: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerifyConfig {
    pub tolerances: Tolerances,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tolerances: Tolerances::default(),
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub group: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

type Group = fn(&VerifyConfig) -> Result<Vec<CheckResult>, Error>;

fn check(group: &str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        group: group.into(),
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn grassmannian_relations(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let pres = grassmannian_presentation(2, 4, false)?;
    let f3 = parse("-c1^3 + 2*c1*c2", pres.universe())?;
    let f4 = parse("c1^4 - 3*c1^2*c2 + c2^2", pres.universe())?;
    let mut out = vec![
        check("grassmannian", "gr:2:4 f3", pres.relations()[0] == f3, pres.relations()[0].to_string()),
        check("grassmannian", "gr:2:4 f4", pres.relations()[1] == f4, pres.relations()[1].to_string()),
    ];
    let mut all = true;
    for n in 2..=8u32 {
        for k in 1..n.min(9 - n) {
            let space = Space::build(&SpaceId::Grassmannian { k, n }, false)?;
            let total: usize = space.graded_dimensions()?.iter().sum();
            all &= total == binomial(n, k);
        }
    }
    out.push(check("grassmannian", "betti sums C(n,k) for k+n <= 8", all, ""));
    Ok(out)
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn lg_gradients(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let pot = potential(2, 4, false)?;
    let mut out = vec![check(
        "landau-ginzburg",
        "gr:2:4 dP = (f4, f3)",
        gradient_matches_relations(&pot)? && check_gradient(&pot)?,
        pot.body.to_string(),
    )];
    let mut all = true;
    for n in 2..=7u32 {
        for k in 1..n.min(9 - n) {
            let pot = potential(k, n, false)?;
            all &= check_gradient(&pot)?;
            all &= gradient_matches_relations(&potential(k, n, true)?)?;
        }
    }
    out.push(check("landau-ginzburg", "dw_{n+1}/dc_i = s_{n+1-i} for k+n <= 8", all, ""));
    Ok(out)
}

fn product_tables(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    let mut current: Option<(String, Space, crate::RingExpander)> = None;
    for fx in product_fixtures() {
        if current.as_ref().map(|(s, _, _)| s.as_str()) != Some(fx.space) {
            let space = Space::parse_and_build(fx.space, true)?;
            let ex = space.expander()?;
            current = Some((fx.space.to_string(), space, ex));
        }
        let (_, space, ex) = current.as_ref().expect("set above");
        let u = space.presentation.universe();
        let left = space.basis.lift_class(&parse(fx.left, u)?)?;
        let right = space.basis.lift_class(&parse(fx.right, u)?)?;
        let got = ex.expand(&(&left * &right))?.as_polynomial(&space.basis);
        let want = parse(fx.expected, u)?;
        out.push(check(
            "products",
            format!("{} {}", fx.space, fx.name),
            got == want,
            got.to_string(),
        ));
    }
    for id in ["hirzebruch:0", "hirzebruch:1"] {
        let space = Space::parse_and_build(id, true)?;
        let pres = &space.presentation;
        let degs: Vec<i32> = pres.quantum_indices().map(|i| pres.universe().degree(i)).collect();
        let k = if id.ends_with('1') { 1 } else { 0 };
        out.push(check(
            "products",
            format!("{id} |q1| = 4, |q2| = 2(2-k)"),
            degs == [4, 2 * (2 - k)],
            format!("{degs:?}"),
        ));
    }
    Ok(out)
}

fn brackets(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    let flag = Space::build(&SpaceId::Flag3(FlagChart::P), true)?;
    let chart = flag.chart.clone().expect("quantum flag chart");
    let rels = flag.presentation.relations();
    let b = poisson_bracket(&rels[0], &rels[1], &chart)?;
    out.push(check("brackets", "flag3 {R1,R2} = 0", b.is_zero(), b.to_string()));

    let s1 = Space::build(&SpaceId::Hirzebruch(1), true)?;
    let chart = s1.chart.clone().expect("quantum chart");
    let rels = s1.presentation.relations();
    let b = poisson_bracket(&rels[0], &rels[1], &chart)?;
    let want = &parse("q2", s1.presentation.universe())? * &rels[1];
    out.push(check("brackets", "hirzebruch:1 {R1,R2} = q2*R2", b == want, b.to_string()));

    let mut ids = vec!["flag3", "hirzebruch:0", "hirzebruch:1"];
    let cpn: Vec<String> = (1..=4).map(|n| format!("cpn:{n}")).collect();
    ids.extend(cpn.iter().map(String::as_str));
    for id in ids {
        let space = Space::parse_and_build(id, true)?;
        let chart = space.chart.clone().expect("quantum chart");
        let rep = lagrangian_check(&space.presentation, &chart, &space.engine()?)?;
        let expect_l2 = id != "hirzebruch:1";
        out.push(check(
            "brackets",
            format!("{id} L1 and {}L2", if expect_l2 { "" } else { "not " }),
            rep.l1 && rep.l2 == expect_l2,
            format!("L1={} L2={} bracket={}", rep.l1, rep.l2, rep.bracket),
        ));
    }
    Ok(out)
}

fn toda(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let s0 = TodaState::new([1.0, 1.0], [0.5, 0.0, -0.5])?;
    let drift = toda_integrate(&s0, 10.0, 1e-3)?.drift();
    let tol = cfg.tolerances.integrator_drift;
    let ratio = convergence_ratio(&s0, 10.0, 0.1)?;
    let id = toda_matches_flag_relations();
    Ok(vec![
        check(
            "toda",
            "g, h conserved at dt = 1e-3",
            drift.conserved() < tol && drift.spectrum < tol,
            format!("g {:.2e} h {:.2e} spectrum {:.2e}", drift.g, drift.h, drift.spectrum),
        ),
        check(
            "toda",
            "fourth-order drift ratio at dt = 0.1 vs 0.05",
            (12.0..20.0).contains(&ratio),
            format!("{ratio:.2}"),
        ),
        check(
            "toda",
            "b -> x, a -> -q maps (g, h) to (R1, R2)",
            id.matches && id.matching_signs == [[-1, -1]],
            format!("{} ; {}", id.g_image, id.h_image),
        ),
    ])
}

fn residues(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let lg = LgConfig {
        residual_tol: cfg.tolerances.root_residual,
        seed: cfg.seed,
        ..LgConfig::default()
    };
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for (k, n) in [(1, 2), (1, 3), (1, 4), (2, 4)] {
        let mut all = true;
        let mut detail = Vec::new();
        for t in top_degree_monomials(k, n)? {
            let rep = vafa_intriligator(k, n, &t, one, 1e-6, &lg)?;
            all &= rep.matches;
            detail.push(format!("{}: {}", t, rep.rounded));
        }
        out.push(check("residues", format!("gr:{k}:{n} residue sums"), all, detail.join(", ")));
    }
    Ok(out)
}

fn generating_functions(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut cases: Vec<(String, usize)> = (1..=3u32)
        .map(|n| (format!("cpn:{n}"), 3 * n as usize + 3))
        .collect();
    cases.push(("flag3".into(), 9));
    cases.push(("hirzebruch:0".into(), 8));
    cases.push(("hirzebruch:1".into(), 8));
    cases
        .par_iter()
        .map(|(id, order)| {
            let space = Space::parse_and_build(id, true)?;
            let rep = annihilation_check(&space, *order)?;
            Ok(check(
                "genfun",
                format!("{id} relations annihilate V to order {order}"),
                rep.pass,
                format!(
                    "residual terms {:?}, non-member {}",
                    rep.relations.iter().map(|r| r.residual_terms).collect::<Vec<_>>(),
                    rep.non_member.residual_terms
                ),
            ))
        })
        .collect()
}

/// Five nonzero complex samples per quantum parameter, from the seed.
pub fn sample_q(seed: u64, count: usize, nq: usize) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..nq)
                .map(|_| {
                    let r: f64 = rng.random_range(0.5..2.0);
                    let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(r, th)
                })
                .collect()
        })
        .collect()
}

fn spectra(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let ids = ["cpn:1", "cpn:2", "cpn:3", "flag3", "hirzebruch:0", "hirzebruch:1"];
    ids.par_iter()
        .map(|id| {
            let space = Space::parse_and_build(id, true)?;
            let ex = space.expander()?;
            let nq = space.presentation.quantum_indices().len();
            let mut worst: f64 = 0.0;
            let mut pass = true;
            for q in sample_q(cfg.seed, 5, nq) {
                let rep = spectrum_check(&ex, &q, cfg.tolerances.spectrum_residual)?;
                worst = worst.max(rep.max_residual);
                pass &= rep.pass;
            }
            Ok(check("spectrum", format!("{id} joint eigenvalues on the relations"), pass, format!("max residual {worst:.2e}")))
        })
        .collect()
}

fn betti(_: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let cases: [(&str, &[usize]); 6] = [
        ("cpn:3", &[1, 1, 1, 1]),
        ("gr:2:4", &[1, 1, 2, 1, 1]),
        ("flag3", &[1, 2, 2, 1]),
        ("hirzebruch:0", &[1, 2, 1]),
        ("hirzebruch:1", &[1, 2, 1]),
        ("hirzebruch:3", &[1, 2, 1]),
    ];
    cases
        .iter()
        .map(|(id, want)| {
            let space = Space::parse_and_build(id, false)?;
            let got = space.graded_dimensions()?;
            Ok(check("betti", format!("{id} Betti numbers"), got == *want, format!("{got:?}")))
        })
        .collect()
}

const GROUPS: &[Group] = &[
    grassmannian_relations,
    lg_gradients,
    product_tables,
    brackets,
    toda,
    residues,
    generating_functions,
    spectra,
    betti,
];

/// Run every group (concurrently); results keep the fixed group order.
pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    let checks: Vec<CheckResult> = GROUPS
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            g(cfg).unwrap_or_else(|e| vec![check("error", format!("group {i}"), false, e.to_string())])
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    VerifyReport { checks, pass }
}

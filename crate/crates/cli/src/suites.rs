//! Named verification suites: each runs a block of machine-checked
//! identities and reports every check with a pass flag and detail line.
//! A failing check surfaces as an invariant violation after the report
//! is printed, carrying the first counterexample.

use serde_json::json;

use quivertors::error::{Error, Result};
use quivertors::kronecker::{
    hom_to_quasisimples, realize, ringel_brick, ringel_ses_check, theorem_c_rows, verify_row,
    CheckStatus, KronSymbol,
};
use quivertors::quiverrep::{decompose, euler_form, hom_dim, is_isomorphic, tau};
use quivertors::torsops::{
    enumerate_torsion_classes, left_perp_hom, pair_from_class, torsion_closure,
    torsionfree_closure, EnumMethod, TorsionPair,
};
use quivertors::tubes::{classify_wide_in_tube, TubeModel};
use quivertors::universe::{Universe, UniverseKind};
use quivertors::widetors::{
    almost_simple_modules, alpha_tilde, beta_tilde, check_almost_simple_def, enumerate_wide,
    hasse, locally_extremal, semibrick_of, tau_report, ExtremalSide, HasseQuiver, PairSide,
};

use crate::cache;
use crate::commands::{preinj_check_lines, shape_name, Outcome};
use crate::config::{Builtin, Config, Format};
use crate::render::{class_str, json_line};

pub const SUITES: [&str; 9] = [
    "euler",
    "ar-formula",
    "wide-roundtrip",
    "almost-simple",
    "extremal",
    "tau-report",
    "tube-shape",
    "kronecker-tables",
    "ringel",
];

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check { name: name.into(), pass, detail }
}

fn lattice(cfg: &Config) -> Result<(Universe, HasseQuiver)> {
    let u = cache::universe(cfg)?;
    let classes = enumerate_torsion_classes(&u, EnumMethod::CoverWalk)?;
    let hq = hasse(&u, &classes)?;
    Ok((u, hq))
}

fn euler_suite(cfg: &Config) -> Result<Vec<Check>> {
    let u = cache::universe(cfg)?;
    if matches!(u.kind(), UniverseKind::Tube { .. }) {
        return Err(Error::invalid("the euler suite needs an acyclic quiver"));
    }
    let mut pairs = 0usize;
    for x in 0..u.len() {
        for y in 0..u.len() {
            let lhs = u.hom(x, y) as i64 - u.ext(x, y) as i64;
            let rhs = euler_form(u.quiver(), u.rep(x).dims(), u.rep(y).dims())?;
            if lhs != rhs {
                return Ok(vec![check(
                    "hom minus ext equals the euler form",
                    false,
                    format!(
                        "counterexample ({}, {}): hom {} ext {} euler {rhs}",
                        u.label(x),
                        u.label(y),
                        u.hom(x, y),
                        u.ext(x, y)
                    ),
                )]);
            }
            pairs += 1;
        }
    }
    Ok(vec![check(
        "hom minus ext equals the euler form",
        true,
        format!("{pairs} pairs"),
    )])
}

fn ar_suite(cfg: &Config) -> Result<Vec<Check>> {
    let u = cache::universe(cfg)?;
    if let UniverseKind::Tube { rank, bound } = u.kind() {
        let model = TubeModel::new(u.field(), rank, bound)?;
        let mut pairs = 0usize;
        for x in 0..u.len() {
            let tx = model
                .index_of(model.tau(model.coord_of(x)))
                .ok_or_else(|| Error::invariant("translate left the tube catalog"))?;
            for y in 0..u.len() {
                if u.ext(x, y) != u.hom(y, tx) {
                    return Ok(vec![check(
                        "ext(x, y) equals hom(y, translate of x)",
                        false,
                        format!(
                            "counterexample ({}, {}): ext {} hom {}",
                            u.label(x),
                            u.label(y),
                            u.ext(x, y),
                            u.hom(y, tx)
                        ),
                    )]);
                }
                pairs += 1;
            }
        }
        return Ok(vec![check(
            "ext(x, y) equals hom(y, translate of x)",
            true,
            format!("{pairs} pairs, rotational translate"),
        )]);
    }
    let mut pairs = 0usize;
    let mut projectives = 0usize;
    for x in 0..u.len() {
        match tau(u.rep(x))? {
            Some(tx) => {
                for y in 0..u.len() {
                    let lhs = u.ext(x, y);
                    let rhs = hom_dim(u.rep(y), &tx);
                    if lhs != rhs {
                        return Ok(vec![check(
                            "ext(x, y) equals hom(y, translate of x)",
                            false,
                            format!(
                                "counterexample ({}, {}): ext {lhs} hom {rhs}",
                                u.label(x),
                                u.label(y)
                            ),
                        )]);
                    }
                    pairs += 1;
                }
            }
            None => {
                projectives += 1;
                for y in 0..u.len() {
                    if u.ext(x, y) != 0 {
                        return Ok(vec![check(
                            "ext(x, y) equals hom(y, translate of x)",
                            false,
                            format!("projective {} has nonzero ext", u.label(x)),
                        )]);
                    }
                }
            }
        }
    }
    Ok(vec![check(
        "ext(x, y) equals hom(y, translate of x)",
        true,
        format!("{pairs} pairs, {projectives} projectives with vanishing ext"),
    )])
}

fn wide_roundtrip_suite(cfg: &Config) -> Result<Vec<Check>> {
    let (u, hq) = lattice(cfg)?;
    let bricks = (0..u.len()).filter(|&i| u.is_brick(i)).count();
    cfg.check_scan(bricks, "semibrick scan")?;
    let wides = enumerate_wide(&u, cfg.budget_hom)?;
    let mut alpha_ok = 0usize;
    let mut beta_ok = 0usize;
    let mut first_fail: Option<String> = None;
    for w in &wides {
        let t = torsion_closure(&u, w);
        let pair = pair_from_class(&u, &t)?;
        if alpha_tilde(&u, &hq, &pair, cfg.budget_hom)? == *w {
            alpha_ok += 1;
        } else if first_fail.is_none() {
            first_fail = Some(format!("alpha round-trip moved {}", class_str(&u, w)));
        }
        let f = torsionfree_closure(&u, w);
        let pair = TorsionPair { torsion: left_perp_hom(&u, &f), free: f };
        if beta_tilde(&u, &hq, &pair, cfg.budget_hom)? == *w {
            beta_ok += 1;
        } else if first_fail.is_none() {
            first_fail = Some(format!("beta round-trip moved {}", class_str(&u, w)));
        }
    }
    let mut checks = vec![
        check(
            "alpha recovers every wide from its generated torsion class",
            alpha_ok == wides.len(),
            first_fail.clone().unwrap_or_else(|| format!("{alpha_ok}/{} identities", wides.len())),
        ),
        check(
            "beta recovers every wide from its cogenerated torsion-free class",
            beta_ok == wides.len(),
            first_fail.unwrap_or_else(|| format!("{beta_ok}/{} identities", wides.len())),
        ),
    ];
    let mut fixed = 0usize;
    let mut moved = 0usize;
    let mut fix_fail: Option<String> = None;
    for t in hq.nodes() {
        let pair = pair_from_class(&u, t)?;
        let image = alpha_tilde(&u, &hq, &pair, cfg.budget_hom)?;
        let is_fixed = image == *t;
        let is_wide_class = wides.contains(t);
        if is_fixed == is_wide_class {
            if is_fixed {
                fixed += 1;
            } else {
                moved += 1;
            }
        } else if fix_fail.is_none() {
            fix_fail = Some(format!(
                "{}: fixed by alpha is {is_fixed}, wide is {is_wide_class}",
                class_str(&u, t)
            ));
        }
    }
    checks.push(check(
        "alpha fixes a torsion class exactly when it is wide",
        fix_fail.is_none(),
        fix_fail.unwrap_or_else(|| format!("{fixed} fixed, {moved} moved")),
    ));
    Ok(checks)
}

fn almost_simple_suite(cfg: &Config) -> Result<Vec<Check>> {
    let (u, hq) = lattice(cfg)?;
    let mut nodes = 0usize;
    for t in hq.nodes() {
        let pair = pair_from_class(&u, t)?;
        let labels = almost_simple_modules(&u, &hq, &pair, PairSide::Torsion)?;
        let alpha = alpha_tilde(&u, &hq, &pair, cfg.budget_hom)?;
        let simples = semibrick_of(&u, &alpha, cfg.budget_hom)?;
        let definitional: quivertors::torsops::ClassSet = (0..u.len())
            .filter_map(|b| {
                match check_almost_simple_def(&u, b, &pair, cfg.budget_hom) {
                    Ok(true) => Some(Ok(b)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect::<Result<_>>()?;
        if labels != simples || labels != definitional {
            return Ok(vec![check(
                "cover labels, simples of alpha, and the definitional scan agree",
                false,
                format!(
                    "node {}: labels {} simples {} definitional {}",
                    class_str(&u, t),
                    class_str(&u, &labels),
                    class_str(&u, &simples),
                    class_str(&u, &definitional)
                ),
            )]);
        }
        nodes += 1;
    }
    Ok(vec![check(
        "cover labels, simples of alpha, and the definitional scan agree",
        true,
        format!("three-way agreement at {nodes} nodes"),
    )])
}

fn extremal_suite(cfg: &Config) -> Result<Vec<Check>> {
    let (u, hq) = lattice(cfg)?;
    let mut nodes = 0usize;
    for (i, t) in hq.nodes().iter().enumerate() {
        let pair = pair_from_class(&u, t)?;
        let alpha = alpha_tilde(&u, &hq, &pair, cfg.budget_hom)?;
        let beta = beta_tilde(&u, &hq, &pair, cfg.budget_hom)?;
        let min = locally_extremal(&hq, i, ExtremalSide::Minimal);
        let max = locally_extremal(&hq, i, ExtremalSide::Maximal);
        if min != alpha.is_empty() || max != beta.is_empty() {
            return Ok(vec![check(
                "local extremality matches emptiness of alpha and beta",
                false,
                format!(
                    "node {}: minimal {min} alpha empty {}, maximal {max} beta empty {}",
                    class_str(&u, t),
                    alpha.is_empty(),
                    beta.is_empty()
                ),
            )]);
        }
        nodes += 1;
    }
    Ok(vec![check(
        "local extremality matches emptiness of alpha and beta",
        true,
        format!("{nodes} nodes"),
    )])
}

fn tau_report_suite(cfg: &Config) -> Result<Vec<Check>> {
    let (u, hq) = lattice(cfg)?;
    let bricks = (0..u.len()).filter(|&i| u.is_brick(i)).count();
    cfg.check_scan(bricks, "semibrick scan")?;
    match tau_report(&u, &hq, cfg.budget_hom) {
        Ok(rep) => Ok(vec![check(
            "torsion classes and wide subcategories correspond bijectively",
            rep.tors_count == rep.wide_count && rep.alpha_images.len() == rep.tors_count,
            format!(
                "{} torsion classes, {} wide subcategories",
                rep.tors_count, rep.wide_count
            ),
        )]),
        Err(Error::InvariantViolation(msg)) => Ok(vec![check(
            "torsion classes and wide subcategories correspond bijectively",
            false,
            msg,
        )]),
        Err(e) => Err(e),
    }
}

fn tube_shape_suite(cfg: &Config) -> Result<Vec<Check>> {
    let (rank, bound) = match cfg.builtin {
        Builtin::Tube(r) => (r, cfg.bound.unwrap_or(2 * r)),
        _ => (2, cfg.bound.unwrap_or(4)),
    };
    cfg.check_scan(rank * rank, "tube semibrick scan")?;
    let report = classify_wide_in_tube(cfg.field()?, rank, bound, cfg.budget_hom)?;
    let mut shape_counts = std::collections::BTreeMap::new();
    for w in &report.wides {
        *shape_counts.entry(shape_name(w.shape)).or_insert(0usize) += 1;
    }
    let shapes = shape_counts
        .iter()
        .map(|(s, n)| format!("{n} {s}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(vec![check(
        "every wide subcategory of the tube is a wing or a wing plus a ray",
        report.violations.is_empty(),
        match report.violations.first() {
            Some(v) => format!(
                "rank {rank} bound {bound}: {} violations, first at {:?}: {}",
                report.violations.len(),
                v.coords,
                v.reason
            ),
            None => format!(
                "rank {rank} bound {bound}: {} wides ({shapes}), no violations",
                report.wides.len()
            ),
        },
    )])
}

fn kronecker_tables_suite(cfg: &Config) -> Result<Vec<Check>> {
    let bound = cfg.bound.unwrap_or(6);
    let sub = Config { builtin: Builtin::Kronecker, bound: Some(bound), ..cfg.clone() };
    let u = cache::universe(&sub)?;
    let mut checks = Vec::new();
    for row in theorem_c_rows() {
        let rep = verify_row(&u, &row)?;
        let mut tally = [0usize; 4];
        for c in &rep.checks {
            tally[c.status as usize] += 1;
        }
        let detail = match rep.checks.iter().find(|c| c.status == CheckStatus::Failed) {
            Some(c) => format!("{}: {}", c.name, c.detail),
            None => format!(
                "{} verified, {} symbolic, {} truncated",
                tally[CheckStatus::Verified as usize],
                tally[CheckStatus::Symbolic as usize],
                tally[CheckStatus::Truncated as usize]
            ),
        };
        checks.push(check(&format!("table row: {}", rep.wide), !rep.failed(), detail));
    }
    let (lines, ok) = preinj_check_lines(&u, bound.saturating_sub(1))?;
    checks.push(check(
        "preinjective quotients have two-dimensional hom and quasi-simple kernels",
        ok,
        lines.join("; "),
    ));
    Ok(checks)
}

fn ringel_suite(cfg: &Config) -> Result<Vec<Check>> {
    let field = cfg.field()?;
    let p = cfg.prime;
    let mut sets: Vec<Vec<u64>> = vec![Vec::new()];
    for x in 0..p {
        for i in 0..sets.len() {
            if sets[i].len() < 4 {
                let mut bigger = sets[i].clone();
                bigger.push(x);
                sets.push(bigger);
            }
        }
    }
    if sets.len() as u64 > cfg.budget_scan {
        return Err(Error::budget(format!(
            "ringel sweep needs {} point sets, scan budget is {}",
            sets.len(),
            cfg.budget_scan
        )));
    }
    let mut brick_ok = 0usize;
    let mut ses_ok = 0usize;
    let mut ses_total = 0usize;
    let mut quasi_ok = 0usize;
    let mut fail: Option<String> = None;
    for pts in &sets {
        let n = pts.len();
        let brick = ringel_brick(field, pts)?;
        let pre = realize(field, &KronSymbol::Pre(n))?;
        let good = brick.dims() == [n, n + 1]
            && decompose(&brick).len() == 1
            && hom_dim(&brick, &brick) == 1
            && is_isomorphic(&brick, &pre);
        if good {
            brick_ok += 1;
        } else if fail.is_none() {
            fail = Some(format!("brick checks failed for {pts:?}"));
        }
        if hom_to_quasisimples(field, pts)?.values().all(|&d| d >= 1) {
            quasi_ok += 1;
        } else if fail.is_none() {
            fail = Some(format!("a quasi-simple receives no map from {pts:?}"));
        }
        for &x in pts {
            let sub: Vec<u64> = pts.iter().copied().filter(|&y| y != x).collect();
            ses_total += 1;
            if ringel_ses_check(field, pts, &sub)?.matches {
                ses_ok += 1;
            } else if fail.is_none() {
                fail = Some(format!("ses removing {x} from {pts:?} does not match"));
            }
        }
    }
    Ok(vec![
        check(
            "point-set bricks are preprojective of the right rank",
            brick_ok == sets.len(),
            fail.clone().unwrap_or_else(|| format!("{brick_ok}/{} point sets", sets.len())),
        ),
        check(
            "one-point subsets give short exact sequences with quasi-simple cokernel",
            ses_ok == ses_total,
            fail.clone().unwrap_or_else(|| format!("{ses_ok}/{ses_total} inclusions")),
        ),
        check(
            "every quasi-simple receives a nonzero map",
            quasi_ok == sets.len(),
            fail.unwrap_or_else(|| format!("{quasi_ok}/{} point sets", sets.len())),
        ),
    ])
}

pub fn run_suite(cfg: &Config, suite: &str) -> Result<Outcome> {
    if cfg.format == Format::Dot {
        return Err(Error::invalid("dot output is only available for hasse"));
    }
    let checks = match suite {
        "euler" => euler_suite(cfg)?,
        "ar-formula" => ar_suite(cfg)?,
        "wide-roundtrip" => wide_roundtrip_suite(cfg)?,
        "almost-simple" => almost_simple_suite(cfg)?,
        "extremal" => extremal_suite(cfg)?,
        "tau-report" => tau_report_suite(cfg)?,
        "tube-shape" => tube_shape_suite(cfg)?,
        "kronecker-tables" => kronecker_tables_suite(cfg)?,
        "ringel" => ringel_suite(cfg)?,
        _ => {
            return Err(Error::invalid(format!(
                "unknown suite {suite:?}; want one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    let artifact = match cfg.format {
        Format::Json => json_line(&json!({
            "suite": suite,
            "builtin": cfg.builtin.tag(),
            "prime": cfg.prime,
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "pass": pass,
        })),
        _ => {
            let mut s = format!("suite {suite} ({}, p={})\n", cfg.builtin.tag(), cfg.prime);
            for c in &checks {
                s.push_str(&format!(
                    "{}\t{}\t({})\n",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            s.push_str(&format!("suite {suite}: {}\n", if pass { "pass" } else { "fail" }));
            s
        }
    };
    let violation = checks.iter().find(|c| !c.pass).map(|c| {
        Error::invariant(format!("suite {suite}, check \"{}\": {}", c.name, c.detail))
    });
    Ok(Outcome { artifact, golden: None, violation })
}

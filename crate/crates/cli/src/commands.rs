//! One function per CLI command, each producing a deterministic artifact.
//!
//! Commands that detect a falsified identity still print their full report;
//! the violation is carried out-of-band so the process can exit with the
//! dedicated status after the artifact is written.

use serde_json::json;

use quivertors::error::{Error, Result};
use quivertors::kronecker::{
    cosilting_catalog, hom_to_quasisimples, preinjective_quotient_check, realize, ringel_brick,
    ringel_ses_check, theorem_c_rows, verify_row, CheckStatus, KronSymbol,
};
use quivertors::quiverrep::{decompose, hom_dim, is_isomorphic};
use quivertors::torsops::{
    enumerate_torsion_classes, is_torsion_class, is_torsionfree_class, left_perp_hom,
    pair_from_class, EnumMethod, TorsionPair,
};
use quivertors::tubes::{classify_wide_in_tube, TubeCoord, WideShape};
use quivertors::universe::Universe;
use quivertors::widetors::{
    almost_simple_modules, alpha_tilde, beta_tilde, enumerate_wide, hasse, semibrick_of, PairSide,
};

use crate::cache;
use crate::config::{Builtin, Config, Format};
use crate::render::{class_labels, class_str, hasse_dot, json_line, parse_class};

pub struct Outcome {
    pub artifact: String,
    /// Canonical golden file name when the command is blessable.
    pub golden: Option<String>,
    /// A falsified identity to surface after the artifact is emitted.
    pub violation: Option<Error>,
}

impl Outcome {
    fn plain(artifact: String) -> Outcome {
        Outcome { artifact, golden: None, violation: None }
    }
}

fn no_dot(cfg: &Config) -> Result<()> {
    if cfg.format == Format::Dot {
        return Err(Error::invalid("dot output is only available for hasse"));
    }
    Ok(())
}

pub fn indecs(cfg: &Config) -> Result<Outcome> {
    no_dot(cfg)?;
    let u = cache::universe(cfg)?;
    let artifact = match cfg.format {
        Format::Json => json_line(&json!({
            "builtin": cfg.builtin.tag(),
            "prime": cfg.prime,
            "count": u.len(),
            "members": (0..u.len()).map(|i| json!({
                "index": i,
                "label": u.label(i),
                "dims": u.rep(i).dims(),
                "brick": u.is_brick(i),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!(
                "{} indecomposables ({}, p={})\n",
                u.len(),
                cfg.builtin.tag(),
                cfg.prime
            );
            for i in 0..u.len() {
                s.push_str(&format!(
                    "{i}\t{}\tdims {:?}{}\n",
                    u.label(i),
                    u.rep(i).dims(),
                    if u.is_brick(i) { "\tbrick" } else { "" }
                ));
            }
            s
        }
    };
    Ok(Outcome::plain(artifact))
}

pub fn tors(cfg: &Config, method: EnumMethod) -> Result<Outcome> {
    no_dot(cfg)?;
    let u = cache::universe(cfg)?;
    if method == EnumMethod::ClosureScan {
        cfg.check_scan(u.len(), "torsion class closure scan")?;
    }
    let classes = enumerate_torsion_classes(&u, method)?;
    let method_name = match method {
        EnumMethod::ClosureScan => "closure-scan",
        EnumMethod::CoverWalk => "cover-walk",
    };
    let artifact = match cfg.format {
        Format::Json => json_line(&json!({
            "builtin": cfg.builtin.tag(),
            "method": method_name,
            "count": classes.len(),
            "classes": classes.iter().map(|c| class_labels(&u, c)).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!(
                "{} torsion classes ({}, {})\n",
                classes.len(),
                cfg.builtin.tag(),
                method_name
            );
            for c in &classes {
                s.push_str(&class_str(&u, c));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::plain(artifact))
}

pub fn hasse_cmd(cfg: &Config) -> Result<Outcome> {
    let u = cache::universe(cfg)?;
    let classes = enumerate_torsion_classes(&u, EnumMethod::CoverWalk)?;
    let hq = hasse(&u, &classes)?;
    let format = if cfg.bless { Format::Dot } else { cfg.format };
    let artifact = match format {
        Format::Dot => hasse_dot(&u, &hq),
        Format::Json => json_line(&json!({
            "builtin": cfg.builtin.tag(),
            "nodes": hq.nodes().iter().map(|c| class_labels(&u, c)).collect::<Vec<_>>(),
            "edges": hq.edges().iter().map(|e| json!({
                "lower": e.lower,
                "upper": e.upper,
                "label": u.label(e.label),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!(
                "{} classes, {} covers ({})\n",
                hq.nodes().len(),
                hq.edges().len(),
                cfg.builtin.tag()
            );
            for e in hq.edges() {
                s.push_str(&format!(
                    "{} < {}\t[{}]\n",
                    class_str(&u, hq.node(e.lower)),
                    class_str(&u, hq.node(e.upper)),
                    u.label(e.label)
                ));
            }
            s
        }
    };
    Ok(Outcome {
        artifact,
        golden: Some(format!("hasse-{}.dot", cfg.builtin.tag())),
        violation: None,
    })
}

fn operator_artifact(
    cfg: &Config,
    u: &Universe,
    kind: &str,
    class: &quivertors::torsops::ClassSet,
    image: &quivertors::torsops::ClassSet,
    simples: &quivertors::torsops::ClassSet,
) -> String {
    match cfg.format {
        Format::Json => json_line(&json!({
            "builtin": cfg.builtin.tag(),
            "class": class_labels(u, class),
            kind: class_labels(u, image),
            "simples": class_labels(u, simples),
        })),
        _ => format!(
            "class: {}\n{kind}: {}\nsimples: {}\n",
            class_str(u, class),
            class_str(u, image),
            class_str(u, simples)
        ),
    }
}

pub fn alpha(cfg: &Config, class_arg: &str) -> Result<Outcome> {
    no_dot(cfg)?;
    let u = cache::universe(cfg)?;
    let set = parse_class(&u, class_arg)?;
    if !is_torsion_class(&u, &set) {
        return Err(Error::invalid(format!(
            "{} is not a torsion class",
            class_str(&u, &set)
        )));
    }
    let classes = enumerate_torsion_classes(&u, EnumMethod::CoverWalk)?;
    let hq = hasse(&u, &classes)?;
    let pair = pair_from_class(&u, &set)?;
    let image = alpha_tilde(&u, &hq, &pair, cfg.budget_hom)?;
    let simples = almost_simple_modules(&u, &hq, &pair, PairSide::Torsion)?;
    Ok(Outcome::plain(operator_artifact(cfg, &u, "alpha", &set, &image, &simples)))
}

pub fn beta(cfg: &Config, class_arg: &str) -> Result<Outcome> {
    no_dot(cfg)?;
    let u = cache::universe(cfg)?;
    let set = parse_class(&u, class_arg)?;
    if !is_torsionfree_class(&u, &set) {
        return Err(Error::invalid(format!(
            "{} is not a torsion-free class",
            class_str(&u, &set)
        )));
    }
    let classes = enumerate_torsion_classes(&u, EnumMethod::CoverWalk)?;
    let hq = hasse(&u, &classes)?;
    let pair = TorsionPair { torsion: left_perp_hom(&u, &set), free: set.clone() };
    let image = beta_tilde(&u, &hq, &pair, cfg.budget_hom)?;
    let simples = almost_simple_modules(&u, &hq, &pair, PairSide::Torsionfree)?;
    Ok(Outcome::plain(operator_artifact(cfg, &u, "beta", &set, &image, &simples)))
}

pub fn wide(cfg: &Config) -> Result<Outcome> {
    no_dot(cfg)?;
    let u = cache::universe(cfg)?;
    let bricks = (0..u.len()).filter(|&i| u.is_brick(i)).count();
    cfg.check_scan(bricks, "semibrick scan")?;
    let wides = enumerate_wide(&u, cfg.budget_hom)?;
    let mut rows = Vec::new();
    for w in &wides {
        let sb = semibrick_of(&u, w, cfg.budget_hom)?;
        rows.push((w.clone(), sb));
    }
    let artifact = match cfg.format {
        Format::Json => json_line(&json!({
            "builtin": cfg.builtin.tag(),
            "count": rows.len(),
            "wides": rows.iter().map(|(w, sb)| json!({
                "members": class_labels(&u, w),
                "semibrick": class_labels(&u, sb),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!(
                "{} wide subcategories ({})\n",
                rows.len(),
                cfg.builtin.tag()
            );
            for (w, sb) in &rows {
                s.push_str(&format!(
                    "{}\tsemibrick {}\n",
                    class_str(&u, w),
                    class_str(&u, sb)
                ));
            }
            s
        }
    };
    Ok(Outcome::plain(artifact))
}

pub fn kron_catalog(cfg: &Config, force_json: bool) -> Result<Outcome> {
    let format = if force_json { Format::Json } else { cfg.format };
    if format == Format::Dot {
        return Err(Error::invalid("dot output is only available for hasse"));
    }
    let field = cfg.field()?;
    let bound = cfg.family_bound();
    let catalog = cosilting_catalog(field, bound);
    let artifact = match format {
        Format::Json => json_line(&json!({
            "prime": cfg.prime,
            "bound": bound,
            "count": catalog.len(),
            "entries": catalog.iter().map(|d| json!({
                "descriptor": d.to_string(),
                "widely_generated": d.is_widely_generated(),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!(
                "{} cosilting classes (p={}, bound {})\n",
                catalog.len(),
                cfg.prime,
                bound
            );
            for d in &catalog {
                s.push_str(&format!(
                    "{d}\t{}\n",
                    if d.is_widely_generated() { "widely generated" } else { "not widely generated" }
                ));
            }
            s
        }
    };
    Ok(Outcome::plain(artifact))
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Verified => "verified",
        CheckStatus::Symbolic => "symbolic",
        CheckStatus::Truncated => "truncated",
        CheckStatus::Failed => "failed",
    }
}

pub fn kron_verify_theorem_c(cfg: &Config, bound_flag: Option<usize>) -> Result<Outcome> {
    let bound = bound_flag.or(cfg.bound).unwrap_or(6);
    let sub = Config { builtin: Builtin::Kronecker, bound: Some(bound), ..cfg.clone() };
    let u = cache::universe(&sub)?;
    let rows = theorem_c_rows();
    let mut reports = Vec::new();
    for row in &rows {
        reports.push(verify_row(&u, row)?);
    }
    let mut violation = None;
    for rep in &reports {
        if let Some(c) = rep.checks.iter().find(|c| c.status == CheckStatus::Failed) {
            violation = Some(Error::invariant(format!(
                "table row \"{}\", check \"{}\": {}",
                rep.wide, c.name, c.detail
            )));
            break;
        }
    }
    let format = if cfg.bless { Format::Json } else { cfg.format };
    let artifact = match format {
        Format::Dot => return Err(Error::invalid("dot output is only available for hasse")),
        Format::Json => json_line(&json!({
            "prime": cfg.prime,
            "bound": bound,
            "rows": rows.iter().zip(&reports).map(|(row, rep)| json!({
                "wide": row.wide,
                "right_perp": row.right_perp,
                "limit_closure": row.limit_closure,
                "pure_injectives": row.pure_injectives,
                "checks": rep.checks.iter().map(|c| json!({
                    "name": c.name,
                    "status": status_name(c.status),
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("classification tables at bound {bound} (p={})\n", cfg.prime);
            let mut tally = [0usize; 4];
            for (row, rep) in rows.iter().zip(&reports) {
                s.push_str(&format!(
                    "wide: {} | right perp: {} | limit closure: {} | pure injectives: {}\n",
                    row.wide, row.right_perp, row.limit_closure, row.pure_injectives
                ));
                for c in &rep.checks {
                    s.push_str(&format!("  {}\t{}\t{}\n", status_name(c.status), c.name, c.detail));
                    tally[c.status as usize] += 1;
                }
            }
            s.push_str(&format!(
                "{} rows: {} verified, {} symbolic, {} truncated, {} failed\n",
                rows.len(),
                tally[CheckStatus::Verified as usize],
                tally[CheckStatus::Symbolic as usize],
                tally[CheckStatus::Truncated as usize],
                tally[CheckStatus::Failed as usize]
            ));
            s
        }
    };
    Ok(Outcome { artifact, golden: Some("theorem-c.json".into()), violation })
}

fn parse_points(set: &str) -> Result<Vec<u64>> {
    if set.is_empty() || set == "none" {
        return Ok(Vec::new());
    }
    set.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("bad residue {p:?} in point set")))
        })
        .collect()
}

pub fn kron_ringel(cfg: &Config, set: &str) -> Result<Outcome> {
    no_dot(cfg)?;
    let field = cfg.field()?;
    let points = parse_points(set)?;
    let brick = ringel_brick(field, &points)?;
    let n = points.len();
    let dims_ok = brick.dims() == [n, n + 1];
    let indec = decompose(&brick).len() == 1;
    let end_dim = hom_dim(&brick, &brick);
    let pre = realize(field, &KronSymbol::Pre(n))?;
    let iso_pre = is_isomorphic(&brick, &pre);
    let quasi = hom_to_quasisimples(field, &points)?;
    let quasi_ok = quasi.values().all(|&d| d >= 1);
    let mut ses = Vec::new();
    for &x in &points {
        let sub: Vec<u64> = points.iter().copied().filter(|&y| y != x).collect();
        let report = ringel_ses_check(field, &points, &sub)?;
        ses.push((x, report));
    }
    let all_ok =
        dims_ok && indec && end_dim == 1 && iso_pre && quasi_ok && ses.iter().all(|(_, r)| r.matches);
    let point_str = points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let artifact = match cfg.format {
        Format::Dot => unreachable!("rejected above"),
        Format::Json => json_line(&json!({
            "prime": cfg.prime,
            "points": points,
            "dims": brick.dims(),
            "indecomposable": indec,
            "end_dim": end_dim,
            "isomorphic_to_pre": iso_pre,
            "hom_to_quasisimples": quasi.iter()
                .map(|(l, d)| json!({"point": l.to_string(), "dim": d}))
                .collect::<Vec<_>>(),
            "ses": ses.iter().map(|(x, r)| json!({
                "removed": x,
                "mono": r.mono,
                "cokernel_points": r.cokernel_points.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "matches": r.matches,
            })).collect::<Vec<_>>(),
            "pass": all_ok,
        })),
        Format::Text => {
            let mut s = format!("ringel brick for I={{{point_str}}} (p={})\n", cfg.prime);
            s.push_str(&format!("dims: {:?}\n", brick.dims()));
            s.push_str(&format!("indecomposable: {}\n", if indec { "yes" } else { "no" }));
            s.push_str(&format!("end dim: {end_dim}\n"));
            s.push_str(&format!(
                "isomorphic to pre({n}): {}\n",
                if iso_pre { "yes" } else { "no" }
            ));
            let quasi_str = quasi
                .iter()
                .map(|(l, d)| format!("{l}:{d}"))
                .collect::<Vec<_>>()
                .join(" ");
            s.push_str(&format!("hom to quasi-simples: {quasi_str}\n"));
            for (x, r) in &ses {
                let cok = r
                    .cokernel_points
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                s.push_str(&format!(
                    "ses removing {x}: {} (cokernel points {{{cok}}})\n",
                    if r.matches { "ok" } else { "MISMATCH" }
                ));
            }
            s.push_str(if all_ok { "all checks pass\n" } else { "CHECKS FAILED\n" });
            s
        }
    };
    let violation = (!all_ok).then(|| {
        Error::invariant(format!("ringel brick checks failed for I={{{point_str}}}"))
    });
    Ok(Outcome { artifact, golden: None, violation })
}

fn coord_str(c: &TubeCoord) -> String {
    format!("s({},{})", c.i, c.k)
}

fn coords_str(cs: &[TubeCoord]) -> String {
    format!("{{{}}}", cs.iter().map(coord_str).collect::<Vec<_>>().join(", "))
}

pub fn shape_name(s: WideShape) -> &'static str {
    match s {
        WideShape::Wing => "wing",
        WideShape::WingRay => "wing+ray",
        WideShape::All => "all",
    }
}

pub fn tube_cmd(cfg: &Config, rank: usize, bound: usize) -> Result<Outcome> {
    no_dot(cfg)?;
    if rank == 0 {
        return Err(Error::invalid("tube rank must be positive"));
    }
    let field = cfg.field()?;
    cfg.check_scan(rank * rank, "tube semibrick scan")?;
    let report = classify_wide_in_tube(field, rank, bound, cfg.budget_hom)?;
    let artifact = match cfg.format {
        Format::Dot => unreachable!("rejected above"),
        Format::Json => json_line(
            &serde_json::to_value(&report).map_err(|e| Error::invalid(e.to_string()))?,
        ),
        Format::Text => {
            let mut s = format!(
                "tube rank {rank} bound {bound} (p={}): {} wide subcategories, {} violations\n",
                cfg.prime,
                report.wides.len(),
                report.violations.len()
            );
            for w in &report.wides {
                s.push_str(&format!("{}\t{}\n", coords_str(&w.coords), shape_name(w.shape)));
            }
            for v in &report.violations {
                s.push_str(&format!("violation {}\t{}\n", coords_str(&v.coords), v.reason));
            }
            s
        }
    };
    let violation = report.violations.first().map(|v| {
        Error::invariant(format!(
            "wide subcategory {} matches neither shape: {}",
            coords_str(&v.coords),
            v.reason
        ))
    });
    Ok(Outcome { artifact, golden: None, violation })
}

pub fn preinj_check_lines(u: &Universe, up_to: usize) -> Result<(Vec<String>, bool)> {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 0..=up_to {
        let rep = preinjective_quotient_check(u, n)?;
        let pass = rep.hom_dim == 2 && rep.alpha_condition_violated;
        ok &= pass;
        let pts = rep
            .kernel_points
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!(
            "inj({}) -> inj({}): hom dim {}, {} epis, kernel points {{{pts}}}",
            n + 1,
            n,
            rep.hom_dim,
            rep.epi_count
        ));
    }
    Ok((lines, ok))
}

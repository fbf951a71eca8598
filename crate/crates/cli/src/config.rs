//! Resolved run configuration: quiver selection, prime, bound, budgets.
//!
//! Precedence for prime and budgets is flag > environment variable >
//! default. Builtin names resolve to quiver files shipped with the binary;
//! the parametric families (kronecker, tube-r) additionally carry a size
//! bound for their truncated catalogs.

use std::path::PathBuf;
use std::sync::Arc;

use quivertors::error::{Error, Result};
use quivertors::linalg::FieldSpec;
use quivertors::quiverrep::{Arrow, Quiver};
use quivertors::universe::{tube_quiver, Universe, UniverseKind};

pub const ENV_PRIME: &str = "QUIVERTORS_PRIME";
pub const ENV_BUDGET_HOM: &str = "QUIVERTORS_BUDGET_HOM";
pub const ENV_BUDGET_SCAN: &str = "QUIVERTORS_BUDGET_SCAN";
pub const ENV_GOLDEN_DIR: &str = "QUIVERTORS_GOLDEN_DIR";

pub const DEFAULT_PRIME: u64 = 5;
/// Cap on p^k morphism-combination scans inside filtration closures.
pub const DEFAULT_BUDGET_HOM: u64 = 390_625;
/// Cap on 2^n candidate-subset scans.
pub const DEFAULT_BUDGET_SCAN: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    A2,
    A3,
    D4,
    Kronecker,
    Tube(usize),
    /// A user-supplied quiver file, treated as representation-finite.
    File(PathBuf),
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Builtin> {
        match name {
            "a2" => Ok(Builtin::A2),
            "a3" => Ok(Builtin::A3),
            "d4" => Ok(Builtin::D4),
            "kronecker" => Ok(Builtin::Kronecker),
            _ => {
                if let Some(r) = name.strip_prefix("tube-") {
                    let rank: usize = r.parse().map_err(|_| {
                        Error::invalid(format!("bad tube rank in builtin {name:?}"))
                    })?;
                    if rank == 0 {
                        return Err(Error::invalid("tube rank must be positive"));
                    }
                    Ok(Builtin::Tube(rank))
                } else {
                    Err(Error::invalid(format!(
                        "unknown builtin {name:?}; want a2, a3, d4, kronecker, or tube-<r>"
                    )))
                }
            }
        }
    }

    /// Tag used in cache file names and blessed golden file names.
    pub fn tag(&self) -> String {
        match self {
            Builtin::A2 => "a2".into(),
            Builtin::A3 => "a3".into(),
            Builtin::D4 => "d4".into(),
            Builtin::Kronecker => "kronecker".into(),
            Builtin::Tube(r) => format!("tube{r}"),
            Builtin::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "custom".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub builtin: Builtin,
    pub prime: u64,
    pub bound: Option<usize>,
    pub budget_hom: u64,
    pub budget_scan: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub bless: bool,
}

impl Config {
    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.prime)
    }

    /// The catalog bound for the parametric families, with per-family
    /// defaults: index bound 6 for kronecker, regular length 2r for tube-r.
    pub fn family_bound(&self) -> usize {
        match (&self.builtin, self.bound) {
            (_, Some(b)) => b,
            (Builtin::Tube(r), None) => 2 * r,
            (_, None) => 6,
        }
    }

    /// Refuse a subset scan of 2^bits candidates beyond the scan budget.
    pub fn check_scan(&self, bits: usize, what: &str) -> Result<()> {
        if bits >= 64 || (1u64 << bits) > self.budget_scan {
            return Err(Error::budget(format!(
                "{what} needs 2^{bits} candidates, scan budget is {}",
                self.budget_scan
            )));
        }
        Ok(())
    }
}

fn env_u64(var: &str) -> Result<Option<u64>> {
    match std::env::var(var) {
        Ok(s) => s
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::invalid(format!("{var} must be an integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

/// Apply flag > env > default precedence; budgets must be positive.
pub fn resolve(
    flag_prime: Option<u64>,
    flag_budget_hom: Option<u64>,
    flag_budget_scan: Option<u64>,
) -> Result<(u64, u64, u64)> {
    let prime = match flag_prime {
        Some(p) => p,
        None => env_u64(ENV_PRIME)?.unwrap_or(DEFAULT_PRIME),
    };
    let hom = match flag_budget_hom {
        Some(b) => b,
        None => env_u64(ENV_BUDGET_HOM)?.unwrap_or(DEFAULT_BUDGET_HOM),
    };
    let scan = match flag_budget_scan {
        Some(b) => b,
        None => env_u64(ENV_BUDGET_SCAN)?.unwrap_or(DEFAULT_BUDGET_SCAN),
    };
    if hom == 0 || scan == 0 {
        return Err(Error::invalid("budgets must be positive"));
    }
    Ok((prime, hom, scan))
}

#[derive(serde::Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

fn parse_quiver(source: &str, origin: &str) -> Result<Arc<Quiver>> {
    let qf: QuiverFile = serde_json::from_str(source)
        .map_err(|e| Error::invalid(format!("bad quiver file {origin}: {e}")))?;
    Ok(Arc::new(Quiver::new(qf.vertices, qf.arrows)?))
}

/// The quiver a builtin resolves to. Named builtins load the fixed files
/// shipped inside the binary; tube ranks without a shipped file fall back
/// to the parametric constructor (same shape, generated).
pub fn builtin_quiver(b: &Builtin) -> Result<Arc<Quiver>> {
    match b {
        Builtin::A2 => parse_quiver(include_str!("../quivers/a2.json"), "a2"),
        Builtin::A3 => parse_quiver(include_str!("../quivers/a3.json"), "a3"),
        Builtin::D4 => parse_quiver(include_str!("../quivers/d4.json"), "d4"),
        Builtin::Kronecker => {
            parse_quiver(include_str!("../quivers/kronecker.json"), "kronecker")
        }
        Builtin::Tube(2) => parse_quiver(include_str!("../quivers/tube2.json"), "tube2"),
        Builtin::Tube(3) => parse_quiver(include_str!("../quivers/tube3.json"), "tube3"),
        Builtin::Tube(r) => tube_quiver(*r),
        Builtin::File(path) => {
            let source = std::fs::read_to_string(path).map_err(|e| {
                Error::invalid(format!("cannot read quiver file {}: {e}", path.display()))
            })?;
            parse_quiver(&source, &path.display().to_string())
        }
    }
}

/// Build the universe for the configured builtin, without caching.
pub fn build_universe(cfg: &Config) -> Result<Universe> {
    let field = cfg.field()?;
    let quiver = builtin_quiver(&cfg.builtin)?;
    let u = match &cfg.builtin {
        Builtin::Kronecker => Universe::kronecker(field, cfg.family_bound())?,
        Builtin::Tube(r) => Universe::tube(field, *r, cfg.family_bound())?,
        _ => Universe::dynkin(quiver.clone(), field)?,
    };
    if **u.quiver() != *quiver {
        return Err(Error::invariant(format!(
            "builtin {} quiver file disagrees with the generated quiver",
            cfg.builtin.tag()
        )));
    }
    Ok(u)
}

/// Expected universe kind for cache validation.
pub fn expected_kind(cfg: &Config) -> UniverseKind {
    match &cfg.builtin {
        Builtin::Kronecker => UniverseKind::Kronecker { bound: cfg.family_bound() },
        Builtin::Tube(r) => UniverseKind::Tube { rank: *r, bound: cfg.family_bound() },
        _ => UniverseKind::Dynkin,
    }
}

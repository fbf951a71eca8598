//! Universe cache: one JSON file per (builtin, bound, prime) key.
//!
//! Hits must be indistinguishable from recomputation, so a cached file is
//! validated against the requested kind and prime and silently rebuilt when
//! stale or unreadable. Writers take an advisory lock file (atomic
//! create-new) so concurrent processes never interleave partial writes;
//! a writer that cannot get the lock simply skips persisting, since the
//! universe is already in memory.

use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use quivertors::error::{Error, Result};
use quivertors::universe::Universe;

use crate::config::{build_universe, expected_kind, Builtin, Config};

fn cache_path(cfg: &Config) -> Option<PathBuf> {
    let dir = cfg.cache_dir.as_ref()?;
    if matches!(cfg.builtin, Builtin::File(_)) {
        return None;
    }
    let key = match &cfg.builtin {
        Builtin::Kronecker | Builtin::Tube(_) => {
            format!("{}-b{}", cfg.builtin.tag(), cfg.family_bound())
        }
        _ => cfg.builtin.tag(),
    };
    Some(dir.join(format!("universe-{key}-p{}.json", cfg.prime)))
}

fn try_load(cfg: &Config, path: &PathBuf) -> Option<Universe> {
    let text = fs::read_to_string(path).ok()?;
    let u: Universe = serde_json::from_str(&text).ok()?;
    let fresh_kind = expected_kind(cfg);
    if u.kind() != fresh_kind || u.field().prime != cfg.prime || u.len() == 0 {
        return None;
    }
    Some(u)
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn acquire_lock(path: &PathBuf) -> Option<LockGuard> {
    let lock = path.with_extension("json.lock");
    for _ in 0..100 {
        match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => return Some(LockGuard(lock)),
            Err(_) => std::thread::sleep(Duration::from_millis(20)),
        }
    }
    None
}

fn persist(path: &PathBuf, u: &Universe) -> Result<()> {
    let Some(_guard) = acquire_lock(path) else {
        return Ok(());
    };
    let text = serde_json::to_string(u)
        .map_err(|e| Error::invalid(format!("cannot serialize universe: {e}")))?;
    let tmp = path.with_extension(format!("json.tmp.{}", std::process::id()));
    fs::write(&tmp, text)
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| Error::invalid(format!("cannot write cache {}: {e}", path.display())))
}

/// Load the configured universe through the cache when a cache dir is set.
pub fn universe(cfg: &Config) -> Result<Universe> {
    let Some(path) = cache_path(cfg) else {
        return build_universe(cfg);
    };
    if let Some(u) = try_load(cfg, &path) {
        return Ok(u);
    }
    let u = build_universe(cfg)?;
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .map_err(|e| Error::invalid(format!("cannot create cache dir: {e}")))?;
    }
    persist(&path, &u)?;
    Ok(u)
}

//! On-disk store of reduced Gröbner bases, keyed by a SHA-256 of the canonical
//! text of (variable count, order, generators). Entries are written once via a
//! temporary file and rename, and never modified afterwards.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::order::MonomialOrder;
use crate::exact_algebra::poly::Poly;
use crate::exact_algebra::text::{format_poly, indexed_names, parse_poly};

const HEADER: &str = "eqk-groebner-basis v1";

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GbCache { dir: dir.into() }
    }

    /// Directory from `EQK_CACHE_DIR`, else `$XDG_CACHE_HOME/eqk`, else `~/.cache/eqk`.
    pub fn from_env() -> Self {
        if let Ok(d) = std::env::var("EQK_CACHE_DIR") {
            if !d.is_empty() {
                return GbCache::new(d);
            }
        }
        if let Ok(d) = std::env::var("XDG_CACHE_HOME") {
            if !d.is_empty() {
                return GbCache::new(Path::new(&d).join("eqk"));
            }
        }
        let home = std::env::var("HOME").unwrap_or_else(|_| ".".into());
        GbCache::new(Path::new(&home).join(".cache").join("eqk"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn canonical_key(nvars: usize, order: &MonomialOrder, gens: &[Poly]) -> String {
        let names = indexed_names("x", nvars);
        let mut lines: Vec<String> = gens.iter().filter(|g| !g.is_zero()).map(|g| format_poly(g, &names)).collect();
        lines.sort();
        lines.dedup();
        let text = format!("{HEADER}\nvars: {nvars}\norder: {order}\n{}\n", lines.join("\n"));
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    pub fn load(&self, key: &str, nvars: usize) -> Option<Vec<Poly>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != HEADER {
            return None;
        }
        let names = indexed_names("x", nvars);
        let mut out = Vec::new();
        for l in lines {
            if let Some(v) = l.strip_prefix("vars: ") {
                if v.trim().parse::<usize>().ok()? != nvars {
                    return None;
                }
                continue;
            }
            if l.starts_with("order: ") || l.trim().is_empty() {
                continue;
            }
            out.push(parse_poly(l, &names).ok()?);
        }
        Some(out)
    }

    /// Best effort: failures to write are ignored (the cache is optional).
    pub fn store(&self, key: &str, nvars: usize, order: &MonomialOrder, basis: &[Poly]) {
        let path = self.path(key);
        if path.exists() || fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let names = indexed_names("x", nvars);
        let mut text = format!("{HEADER}\nvars: {nvars}\norder: {order}\n");
        for b in basis {
            text.push_str(&format_poly(b, &names));
            text.push('\n');
        }
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

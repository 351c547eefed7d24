//! `key = value` settings file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub cache: Option<bool>,
}

pub fn parse(text: &str) -> Result<Config> {
    let mut seen = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("line {}: expected key = value", n + 1);
        };
        seen.insert(k.trim().to_string(), (n + 1, v.trim().to_string()));
    }
    let mut cfg = Config::default();
    for (k, (n, v)) in seen {
        match k.as_str() {
            "cache_dir" => cfg.cache_dir = Some(PathBuf::from(v)),
            "jobs" => cfg.jobs = Some(v.parse().with_context(|| format!("line {n}: jobs"))?),
            "cache" => cfg.cache = Some(v.parse().with_context(|| format!("line {n}: cache"))?),
            _ => bail!("line {n}: unknown key `{k}`"),
        }
    }
    Ok(cfg)
}

/// Explicit path, then `FUNDALC_CONFIG`, then `~/.config/fundalc/config` if present.
pub fn load(explicit: Option<&Path>) -> Result<Config> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os("FUNDALC_CONFIG").map(PathBuf::from).or_else(|| {
            let p = PathBuf::from(std::env::var_os("HOME")?).join(".config/fundalc/config");
            p.exists().then_some(p)
        }),
    };
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            parse(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => Config::default(),
    };
    if let Some(dir) = std::env::var_os("FUNDALC_CACHE_DIR") {
        cfg.cache_dir = Some(PathBuf::from(dir));
    }
    Ok(cfg)
}

pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|p| p.join("fundalc"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_settings() {
        let cfg = parse("# comment\ncache_dir = /tmp/x\njobs=3\n\ncache = false # trailing\n").unwrap();
        assert_eq!(cfg.cache_dir, Some(PathBuf::from("/tmp/x")));
        assert_eq!(cfg.jobs, Some(3));
        assert_eq!(cfg.cache, Some(false));
        assert!(parse("colour = red").is_err());
        assert!(parse("jobs").is_err());
    }
}

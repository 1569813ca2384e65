//! Flat `key = value` files for custom dichotomies and scales.
//!
//! ```text
//! # a dichotomy of Z_12
//! n = 12
//! consonances = 0 3 4 7 8 9
//! dissonances = 1 2 5 6 10 11   # optional, defaults to the complement
//! ```
//!
//! A scale file has `n` and `members`. Lists are separated by spaces or
//! commas; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use crate::dichotomy::Dichotomy;
use crate::error::{Error, Result};
use crate::scale::Scale;

pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        let key = k.trim().to_string();
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", i + 1)));
        }
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key {key:?}", i + 1)));
        }
    }
    Ok(out)
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Config(format!("not an integer: {t:?}"))))
        .collect()
}

fn check_keys(kv: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    match kv.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Config(format!("unknown key {k:?}"))),
        None => Ok(()),
    }
}

fn modulus(kv: &BTreeMap<String, String>) -> Result<u32> {
    let n = kv.get("n").ok_or_else(|| Error::Config("missing key \"n\"".into()))?;
    n.parse()
        .map_err(|_| Error::Config(format!("n must be a positive integer, got {n:?}")))
}

pub fn parse_dichotomy(text: &str) -> Result<Dichotomy> {
    let kv = parse_kv(text)?;
    check_keys(&kv, &["n", "consonances", "dissonances"])?;
    let n = modulus(&kv)?;
    let k = parse_int_list(
        kv.get("consonances")
            .ok_or_else(|| Error::Config("missing key \"consonances\"".into()))?,
    )?;
    match kv.get("dissonances") {
        Some(d) => Dichotomy::new(n, &k, &parse_int_list(d)?),
        None => Dichotomy::from_consonances(n, &k),
    }
}

pub fn parse_scale(text: &str) -> Result<Scale> {
    let kv = parse_kv(text)?;
    check_keys(&kv, &["n", "members"])?;
    let n = modulus(&kv)?;
    let members = parse_int_list(
        kv.get("members")
            .ok_or_else(|| Error::Config("missing key \"members\"".into()))?,
    )?;
    Scale::new(n, &members)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_dichotomy(path: &Path) -> Result<Dichotomy> {
    parse_dichotomy(&read(path)?)
}

pub fn load_scale(path: &Path) -> Result<Scale> {
    parse_scale(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_dichotomy_file() {
        let d = parse_dichotomy("n = 12\nconsonances = 0, 3, 4, 7, 8, 9 # K\n").unwrap();
        assert!(d.is_standard());
        let d = parse_dichotomy("n=12\nconsonances=0 3 4 7 8 9\ndissonances=1 2 5 6 10 11").unwrap();
        assert!(d.is_standard());
    }

    #[test]
    fn malformed_files() {
        assert!(parse_dichotomy("consonances = 0 3").is_err());
        assert!(parse_dichotomy("n = 12\nconsonances = 0 x").is_err());
        assert!(parse_dichotomy("n = 12\nn = 12\nconsonances = 0").is_err());
        assert!(parse_dichotomy("n = 12\nconsonances = 0 3 4 7 8 9\ncolor = red").is_err());
        assert!(parse_dichotomy("n 12").is_err());
        assert!(parse_dichotomy("n = 12\nconsonances = 0 1").is_err());
    }

    #[test]
    fn scale_file() {
        let s = parse_scale("n = 12\nmembers = 0 2 4 5 7 9 11").unwrap();
        assert_eq!(s, Scale::diatonic());
        assert!(parse_scale("n = 12").is_err());
    }
}

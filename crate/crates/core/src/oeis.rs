//! OEIS b-files: parsing, a local cache, and comparison with computed terms.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::OeisError;
use crate::exact::Rational;
use crate::sequence::PRecursiveSequence;

pub const CACHE_ENV: &str = "TURANCERT_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BFileSource {
    LocalFile,
    Cache,
    Network,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub oeis_id: Option<String>,
    pub entries: Vec<(i64, BigInt)>,
    pub source: BFileSource,
}

/// `A` followed by six digits.
pub fn valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_bfile(text: &str) -> Result<BFile, OeisError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let malformed = |message: &str| OeisError::Malformed {
            line,
            message: message.to_owned(),
        };
        let mut parts = l.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed("expected \"index value\""));
        };
        let index: i64 = a.parse().map_err(|_| malformed("index is not an integer"))?;
        let value: BigInt = b.parse().map_err(|_| malformed("value is not an integer"))?;
        if entries.last().is_some_and(|&(prev, _)| index <= prev) {
            return Err(OeisError::NonMonotone { line, index });
        }
        entries.push((index, value));
    }
    Ok(BFile {
        oeis_id: None,
        entries,
        source: BFileSource::LocalFile,
    })
}

pub fn serialize_bfile(b: &BFile) -> String {
    let mut out = String::new();
    if let Some(id) = &b.oeis_id {
        let _ = writeln!(out, "# {id}");
    }
    for (i, v) in &b.entries {
        let _ = writeln!(out, "{i} {v}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    /// `None` when the term could not be computed.
    pub actual: Option<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossReport {
    pub compared: usize,
    pub confirmed: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }
}

/// Compare computed terms with the b-file on every shared index `<= limit`.
pub fn cross_validate(seq: &PRecursiveSequence, b: &BFile, limit: i64) -> CrossReport {
    cross_validate_range(seq, b, seq.start(), limit)
}

/// As [`cross_validate`], restricted to indices in `[from, limit]`.
pub fn cross_validate_range(seq: &PRecursiveSequence, b: &BFile, from: i64, limit: i64) -> CrossReport {
    let mut report = CrossReport::default();
    for (index, expected) in &b.entries {
        if *index < seq.start().max(from) || *index > limit {
            continue;
        }
        report.compared += 1;
        match seq.term(*index) {
            Ok(a) if a == Rational::from_integer(expected.clone()) => report.confirmed += 1,
            Ok(a) => report.mismatches.push(Mismatch {
                index: *index,
                expected: expected.clone(),
                actual: Some(a),
            }),
            Err(_) => report.mismatches.push(Mismatch {
                index: *index,
                expected: expected.clone(),
                actual: None,
            }),
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FetchOptions {
    pub cache_dir: PathBuf,
    pub allow_network: bool,
}

impl FetchOptions {
    /// Cache under `TURANCERT_CACHE_DIR`, else the user cache directory;
    /// network disabled.
    pub fn from_env() -> Self {
        FetchOptions {
            cache_dir: default_cache_dir(),
            allow_network: false,
        }
    }
}

pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(d).join("turancert");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("turancert"),
        None => std::env::temp_dir().join("turancert"),
    }
}

pub fn cache_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("b{}.txt", &id[1..]))
}

fn id_lock(id: &str) -> Arc<Mutex<()>> {
    static LOCKS: OnceLock<Mutex<HashMap<String, Arc<Mutex<()>>>>> = OnceLock::new();
    let mut map = LOCKS
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    map.entry(id.to_owned()).or_default().clone()
}

/// Load the b-file for `id` from the cache, downloading it first when the
/// network is allowed.
pub fn fetch_bfile(id: &str, opts: &FetchOptions) -> Result<BFile, OeisError> {
    if !valid_id(id) {
        return Err(OeisError::InvalidId(id.to_owned()));
    }
    let path = cache_path(&opts.cache_dir, id);
    let lock = id_lock(id);
    let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
    if let Ok(text) = fs::read_to_string(&path) {
        let mut b = parse_bfile(&text)?;
        b.oeis_id = Some(id.to_owned());
        b.source = BFileSource::Cache;
        return Ok(b);
    }
    let unavailable = |reason: String| OeisError::NetworkUnavailable {
        id: id.to_owned(),
        path: path.display().to_string(),
        reason,
    };
    if !opts.allow_network {
        return Err(unavailable("network access is disabled".into()));
    }
    let url = format!("https://oeis.org/{id}/b{}.txt", &id[1..]);
    let text = ureq::get(&url)
        .call()
        .and_then(|mut r| r.body_mut().read_to_string())
        .map_err(|e| unavailable(e.to_string()))?;
    let mut b = parse_bfile(&text)?;
    fs::create_dir_all(&opts.cache_dir).map_err(|e| OeisError::Io(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, &text)
        .and_then(|_| fs::rename(&tmp, &path))
        .map_err(|e| OeisError::Io(e.to_string()))?;
    b.oeis_id = Some(id.to_owned());
    b.source = BFileSource::Network;
    Ok(b)
}

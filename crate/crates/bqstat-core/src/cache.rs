//! Per-fiber class-list cache: line-oriented, human-auditable, integers as
//! decimal strings, with the search-box constants in the header and a
//! whole-file checksum. Ladder runs reuse lower rungs through it.

use crate::enumeration::SearchConfig;
use crate::forms::QuarticForm;
use crate::zint::Z;
use crate::Error;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct ClassCache {
    pub boxes: (Z, Z, Z, Z),
    pub entries: BTreeMap<(Z, Z), Vec<QuarticForm>>,
}

impl ClassCache {
    pub fn new(cfg: &SearchConfig) -> Self {
        ClassCache {
            boxes: (cfg.ca, cfg.cb, cfg.cc, cfg.clift),
            entries: BTreeMap::new(),
        }
    }

    pub fn matches(&self, cfg: &SearchConfig) -> bool {
        self.boxes == (cfg.ca, cfg.cb, cfg.cc, cfg.clift)
    }

    pub fn get(&self, i: Z, j: Z) -> Option<&Vec<QuarticForm>> {
        self.entries.get(&(i, j))
    }

    pub fn insert(&mut self, i: Z, j: Z, reps: Vec<QuarticForm>) {
        self.entries.insert((i, j), reps);
    }

    fn body(&self) -> String {
        let mut out = String::new();
        for (&(i, j), reps) in &self.entries {
            let reps_s: Vec<String> = reps
                .iter()
                .map(|f| {
                    format!("{},{},{},{},{}", f.a, f.b, f.c, f.d, f.e)
                })
                .collect();
            let _ = writeln!(out, "{} {} | {} | {}", i, j, reps.len(), reps_s.join(";"));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        let body = self.body();
        let digest = Sha256::digest(body.as_bytes());
        let header = format!(
            "bqstat-cache v1 boxes={},{},{},{}\nsha256={:x}\n",
            self.boxes.0, self.boxes.1, self.boxes.2, self.boxes.3, digest
        );
        std::fs::write(path, header + &body).map_err(|e| Error::Cache(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ClassCache, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Cache("empty cache file".into()))?;
        let boxes_str = header
            .strip_prefix("bqstat-cache v1 boxes=")
            .ok_or_else(|| Error::Cache(format!("bad cache header: {header}")))?;
        let parts: Vec<Z> = boxes_str
            .split(',')
            .map(|s| s.parse().map_err(|_| Error::Cache("bad box constant".into())))
            .collect::<Result<_, _>>()?;
        if parts.len() != 4 {
            return Err(Error::Cache("expected four box constants".into()));
        }
        let sum_line = lines
            .next()
            .ok_or_else(|| Error::Cache("missing checksum line".into()))?;
        let expected = sum_line
            .strip_prefix("sha256=")
            .ok_or_else(|| Error::Cache("missing sha256 prefix".into()))?;
        let body: String = lines.map(|l| format!("{l}\n")).collect();
        let digest = format!("{:x}", Sha256::digest(body.as_bytes()));
        if digest != expected {
            return Err(Error::Cache(format!(
                "checksum mismatch: header {expected}, computed {digest}"
            )));
        }
        let mut entries = BTreeMap::new();
        for line in body.lines() {
            let mut fields = line.split(" | ");
            let key = fields
                .next()
                .ok_or_else(|| Error::Cache("missing key".into()))?;
            let count: usize = fields
                .next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::Cache("missing count".into()))?;
            let reps_field = fields.next().unwrap_or("");
            let mut kv = key.split_whitespace();
            let i: Z = kv
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Cache("bad I".into()))?;
            let j: Z = kv
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Cache("bad J".into()))?;
            let mut reps = Vec::new();
            for rep in reps_field.split(';').filter(|r| !r.is_empty()) {
                let cs: Vec<Z> = rep
                    .split(',')
                    .map(|v| v.parse().map_err(|_| Error::Cache("bad coefficient".into())))
                    .collect::<Result<_, _>>()?;
                if cs.len() != 5 {
                    return Err(Error::Cache("expected five coefficients".into()));
                }
                reps.push(QuarticForm::new(cs[0], cs[1], cs[2], cs[3], cs[4]));
            }
            if reps.len() != count {
                return Err(Error::Cache(format!(
                    "record ({i}, {j}) count {count} disagrees with {} reps",
                    reps.len()
                )));
            }
            entries.insert((i, j), reps);
        }
        Ok(ClassCache {
            boxes: (parts[0], parts[1], parts[2], parts[3]),
            entries,
        })
    }
}

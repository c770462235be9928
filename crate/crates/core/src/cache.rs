//! On-disk cache of computed Q and P members.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfamily::{QFamily, QIndex};
use crate::threedr::PFamily;
use crate::{PPoly, QPoly};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema_version: u32,
    /// Keyed by `"b,c"`.
    pub q: BTreeMap<String, QPoly>,
    /// Keyed by `b`.
    pub p: BTreeMap<String, PPoly>,
}

impl CacheFile {
    pub fn snapshot(qf: &QFamily, pf: &PFamily) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            q: qf
                .cached()
                .into_iter()
                .map(|(i, p)| (format!("{},{}", i.b, i.c), (*p).clone()))
                .collect(),
            p: pf
                .cached()
                .into_iter()
                .map(|(b, p)| (b.to_string(), (*p).clone()))
                .collect(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// Reads a cache file; a different schema version is an error, never
    /// silently reused.
    pub fn load(path: &Path) -> Result<Self> {
        let raw: serde_json::Value = serde_json::from_slice(&std::fs::read(path)?)?;
        let found = raw
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Malformed("cache file has no schema_version".into()))?;
        if found != u64::from(SCHEMA_VERSION) {
            return Err(Error::CacheVersion {
                found: found as u32,
                expected: SCHEMA_VERSION,
            });
        }
        Ok(serde_json::from_value(raw)?)
    }

    /// Seeds both families with the stored members.
    pub fn install(&self, qf: &QFamily, pf: &PFamily) -> Result<()> {
        for (key, poly) in &self.q {
            let (b, c) = key
                .split_once(',')
                .and_then(|(b, c)| Some((b.parse().ok()?, c.parse().ok()?)))
                .ok_or_else(|| Error::Malformed(format!("bad Q cache key {key:?}")))?;
            qf.insert(QIndex::new(b, c), poly.clone());
        }
        for (key, poly) in &self.p {
            let b = key
                .parse()
                .map_err(|_| Error::Malformed(format!("bad P cache key {key:?}")))?;
            pf.insert(b, poly.clone());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let (qf, pf) = (QFamily::new(), PFamily::new());
        qf.compute_q(QIndex::new(2, 1));
        pf.compute_p(3);
        let file = CacheFile::snapshot(&qf, &pf);
        file.save(&path).unwrap();
        let back = CacheFile::load(&path).unwrap();
        assert_eq!(back, file);

        let (q2, p2) = (QFamily::new(), PFamily::new());
        back.install(&q2, &p2).unwrap();
        assert_eq!(
            q2.compute_q(QIndex::new(2, 1)),
            qf.compute_q(QIndex::new(2, 1))
        );

        let mut stale = file.clone();
        stale.schema_version = 0;
        stale.save(&path).unwrap();
        assert!(matches!(
            CacheFile::load(&path),
            Err(Error::CacheVersion { found: 0, .. })
        ));
    }
}

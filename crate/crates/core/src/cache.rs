//! Advisory on-disk cache of `ζ_q` series, one `index;N;json` record per line.
//! Unreadable or malformed records are ignored; the cache never causes an
//! evaluation to fail.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::qseries::QSeries;
use crate::word::Index;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "TQMZV_CACHE_DIR";
const FILE_NAME: &str = "zeta_q.cache";

pub struct DiskCache {
    path: PathBuf,
    entries: Mutex<HashMap<(String, usize), QSeries>>,
}

impl DiskCache {
    /// Opens (or lazily creates) the cache in `dir`, loading existing records.
    pub fn open(dir: impl AsRef<Path>) -> Self {
        let path = dir.as_ref().join(FILE_NAME);
        let mut entries = HashMap::new();
        if let Ok(text) = fs::read_to_string(&path) {
            for line in text.lines() {
                if let Some((key, series)) = parse_record(line) {
                    entries.insert(key, series);
                }
            }
        }
        DiskCache { path, entries: Mutex::new(entries) }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::open)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, idx: &Index, order: usize) -> Option<QSeries> {
        self.entries.lock().ok()?.get(&(idx.to_string(), order)).cloned()
    }

    /// Records a series; I/O failures are silently dropped.
    pub fn put(&self, idx: &Index, series: &QSeries) {
        let Ok(mut entries) = self.entries.lock() else { return };
        let key = (idx.to_string(), series.order());
        if entries.contains_key(&key) {
            return;
        }
        let line = format!("{};{};{}\n", key.0, key.1, series.to_json());
        entries.insert(key, series.clone());
        if let Some(dir) = self.path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(&self.path) {
            let _ = f.write_all(line.as_bytes());
        }
    }
}

fn parse_record(line: &str) -> Option<((String, usize), QSeries)> {
    let mut it = line.splitn(3, ';');
    let idx: Index = it.next()?.parse().ok()?;
    let order: usize = it.next()?.parse().ok()?;
    let series = QSeries::from_json(it.next()?).ok()?;
    (series.order() == order).then(|| ((idx.to_string(), order), series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{zeta_q, Evaluator};

    fn tmpdir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("tqmzv-cache-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = tmpdir("rt");
        let idx: Index = "3,1".parse().unwrap();
        {
            let ev = Evaluator::with_disk_cache(DiskCache::open(&dir));
            ev.zeta_q(&idx, 9).unwrap();
        }
        let cache = DiskCache::open(&dir);
        assert_eq!(cache.get(&idx, 9).unwrap(), zeta_q(&idx, 9).unwrap());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn corrupt_records_are_ignored() {
        let dir = tmpdir("bad");
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join(FILE_NAME), "2;4;{not json\n2;5;{\"N\":4,\"coeffs\":[[],[],[],[],[]]}\ngarbage\n").unwrap();
        let ev = Evaluator::with_disk_cache(DiskCache::open(&dir));
        let idx: Index = "2".parse().unwrap();
        assert_eq!(*ev.zeta_q(&idx, 4).unwrap(), zeta_q(&idx, 4).unwrap());
        assert_eq!(*ev.zeta_q(&idx, 5).unwrap(), zeta_q(&idx, 5).unwrap());
        fs::remove_dir_all(&dir).unwrap();
    }
}

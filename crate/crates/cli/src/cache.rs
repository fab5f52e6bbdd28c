//! On-disk memo of computed polynomials, keyed by kind, `n`, `λ` and the
//! parameter values. Enabled by setting `MVBESSEL_CACHE_DIR`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const ENV: &str = "MVBESSEL_CACHE_DIR";
const VERSION: &str = "v1";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(ENV)
            .filter(|d| !d.is_empty())
            .map(|d| Cache {
                dir: PathBuf::from(d),
            })
    }

    /// Maps a key to a file name made of `[A-Za-z0-9_.-]` only.
    fn path(&self, key: &str) -> PathBuf {
        let mut safe = String::new();
        for c in key.chars() {
            match c {
                'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | '.' => safe.push(c),
                '/' => safe.push_str("_over_"),
                _ => safe.push('_'),
            }
        }
        self.dir.join(format!("{VERSION}-{safe}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        // a truncated or foreign file is treated as a miss
        serde_json::from_str::<serde_json::Value>(&text).ok()?;
        Some(text)
    }

    /// Writes through a temporary file so readers never see partial output.
    pub fn put(&self, key: &str, text: &str) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(key);
        let tmp = tmp_name(&target);
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &target)
    }
}

fn tmp_name(target: &Path) -> PathBuf {
    let mut name = target.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{}.tmp", std::process::id()));
    target.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_safe_names() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache {
            dir: dir.path().join("sub"),
        };
        assert!(c.get("bessel n=2 [2,1] a=1/2").is_none());
        c.put("bessel n=2 [2,1] a=1/2", "{\"x\":1}").unwrap();
        assert_eq!(c.get("bessel n=2 [2,1] a=1/2").unwrap(), "{\"x\":1}");
        let p = c.path("a/b [1]");
        let name = p.file_name().unwrap().to_str().unwrap();
        assert!(
            name.chars()
                .all(|ch| ch.is_ascii_alphanumeric() || "-._".contains(ch)),
            "{name}"
        );
        fs::write(c.path("broken"), "{").unwrap();
        assert!(c.get("broken").is_none());
    }
}

//! Deterministic result emission: stable run identifiers and atomic file
//! writes, so re-running an identical invocation reproduces artifacts
//! byte for byte and a crash never leaves a half-written file behind.

use sha2::{Digest, Sha256};
use std::fs;
use std::io;
use std::path::Path;

/// Stable 12-hex-digit identifier for one invocation, derived only from the
/// subcommand, the raw config bytes, and the override list. No clock, no
/// host state: identical inputs give identical ids.
pub fn run_id(subcommand: &str, config: &[u8], overrides: &[String]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(subcommand.as_bytes());
    hasher.update([0]);
    hasher.update(config);
    for o in overrides {
        hasher.update([0]);
        hasher.update(o.as_bytes());
    }
    let digest = hasher.finalize();
    let mut id = String::with_capacity(12);
    for byte in &digest[..6] {
        id.push_str(&format!("{byte:02x}"));
    }
    id
}

/// Write `contents` to `path` atomically: the bytes land in a sibling temp
/// file first and are renamed into place, so readers never observe a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, contents)?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_is_stable_and_input_sensitive() {
        let a = run_id("solve", b"config", &["k=v".to_string()]);
        let b = run_id("solve", b"config", &["k=v".to_string()]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
        assert!(a.chars().all(|c| c.is_ascii_hexdigit()));
        assert_ne!(a, run_id("sweep", b"config", &["k=v".to_string()]));
        assert_ne!(a, run_id("solve", b"config2", &["k=v".to_string()]));
        assert_ne!(a, run_id("solve", b"config", &["k=w".to_string()]));
        assert_ne!(a, run_id("solve", b"config", &[]));
    }

    #[test]
    fn override_boundaries_are_unambiguous() {
        // One override "ab" must hash differently from two overrides "a","b".
        let one = run_id("solve", b"", &["ab".to_string()]);
        let two = run_id("solve", b"", &["a".to_string(), "b".to_string()]);
        assert_ne!(one, two);
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested").join("out.csv");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "second\n");
        let siblings: Vec<_> = fs::read_dir(path.parent().unwrap())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(siblings, vec![std::ffi::OsString::from("out.csv")]);
    }
}

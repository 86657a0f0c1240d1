//! File loading and saving for configurations and Gram matrices.
//!
//! JSON is the primary format (`{"d", "n", "vectors"}`); files ending in
//! `.csv` hold one comma-separated vector per line.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::frames::{Configuration, GramMatrix};

/// Reads a configuration, dispatching on the `.csv` extension and defaulting
/// to JSON otherwise. Validation happens on construction, so malformed files
/// and non-unit rows surface as errors here.
pub fn load_configuration(path: &Path) -> Result<Configuration> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        Configuration::from_csv(&text)
    } else {
        Ok(serde_json::from_str(&text)?)
    }
}

/// Writes a configuration in the format implied by the extension.
pub fn save_configuration(x: &Configuration, path: &Path) -> Result<()> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        fs::write(path, x.to_csv())?;
    } else {
        fs::write(path, serde_json::to_string_pretty(x)? + "\n")?;
    }
    Ok(())
}

pub fn load_gram(path: &Path) -> Result<GramMatrix> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_gram(g: &GramMatrix, path: &Path) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(g)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{gram, lifted_etf};

    #[test]
    fn configuration_file_round_trips() {
        let dir = std::env::temp_dir();
        let x = lifted_etf(3, 2).unwrap();

        let json_path = dir.join("framepot_io_test.json");
        save_configuration(&x, &json_path).unwrap();
        let back = load_configuration(&json_path).unwrap();
        assert_eq!(x, back);

        let csv_path = dir.join("framepot_io_test.csv");
        save_configuration(&x, &csv_path).unwrap();
        let back = load_configuration(&csv_path).unwrap();
        assert_eq!(x.vectors(), back.vectors());

        let g = gram(&x);
        let gram_path = dir.join("framepot_io_test_gram.json");
        save_gram(&g, &gram_path).unwrap();
        let gback = load_gram(&gram_path).unwrap();
        assert_eq!(g.entries(), gback.entries());

        for p in [json_path, csv_path, gram_path] {
            let _ = std::fs::remove_file(p);
        }
    }

    #[test]
    fn non_unit_rows_fail_on_load() {
        let dir = std::env::temp_dir();
        let path = dir.join("framepot_io_bad.json");
        std::fs::write(&path, r#"{"d": 2, "n": 1, "vectors": [[0.9, 0.0]]}"#).unwrap();
        assert!(load_configuration(&path).is_err());
        let _ = std::fs::remove_file(path);
    }
}

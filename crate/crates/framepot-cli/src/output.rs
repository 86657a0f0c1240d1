//! Output helpers: 12-significant-digit text numbers and the JSON run-record
//! wrapper `{command, params, timestamp, version, results}`.

use serde::Serialize;

/// Formats with 12 significant digits for text tables (JSON carries full
/// binary doubles).
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

#[derive(Serialize)]
struct RunRecord<'a, P: Serialize, R: Serialize> {
    command: &'a str,
    params: P,
    timestamp: String,
    version: &'a str,
    results: R,
}

/// Prints the run record for `--json` mode. The `results` payload is
/// reproducible for deterministic commands; the timestamp is not.
pub fn emit_record<P: Serialize, R: Serialize>(command: &str, params: P, results: R) {
    let record = RunRecord {
        command,
        params,
        timestamp: chrono::Utc::now().to_rfc3339(),
        version: env!("CARGO_PKG_VERSION"),
        results,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&record).expect("run record serializes")
    );
}

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sumprod_core::verifier::InequalityReport;

pub const OUTPUT_DIR_VAR: &str = "SUMPROD_OUTPUT_DIR";

/// Relative paths land under `SUMPROD_OUTPUT_DIR` when it is set.
pub fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        Some(p) => {
            let p = resolve(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

pub fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub const CHECK_HEADER: [&str; 7] = ["checkId", "paperAnchor", "lhs", "rhs", "ratio", "verdict", "notes"];

pub fn check_record(r: &InequalityReport) -> Vec<String> {
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    vec![
        r.check_id.clone(),
        r.paper_anchor.clone(),
        r.lhs.clone(),
        r.rhs.clone(),
        r.ratio.clone(),
        verdict.as_str().unwrap_or_default().to_string(),
        r.notes.clone(),
    ]
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub report_only: usize,
}

impl Summary {
    pub fn of<'a>(checks: impl IntoIterator<Item = &'a InequalityReport>) -> Summary {
        let mut s = Summary::default();
        for c in checks {
            s.total += 1;
            match (c.is_exact(), c.passed()) {
                (false, _) => s.report_only += 1,
                (true, true) => s.passed += 1,
                (true, false) => s.failed += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sumprod_core::verifier::Verdict;

    fn report(verdict: Verdict) -> InequalityReport {
        InequalityReport {
            check_id: "x".into(),
            paper_anchor: "(x)".into(),
            lhs: "1".into(),
            rhs: "2".into(),
            ratio: "0.5".into(),
            verdict,
            notes: String::new(),
            ratio_value: 0.5,
        }
    }

    #[test]
    fn summary_counts_and_exit_code() {
        let ok = [report(Verdict::Pass), report(Verdict::ReportOnly)];
        let s = Summary::of(&ok);
        assert_eq!((s.total, s.passed, s.failed, s.report_only), (2, 1, 0, 1));
        assert_eq!(s.exit_code(), 0);
        let bad = [report(Verdict::Pass), report(Verdict::Fail)];
        assert_eq!(Summary::of(&bad).exit_code(), 1);
    }

    #[test]
    fn csv_quotes_fields() {
        let text = csv(&["a", "b"], [vec!["1,2".to_string(), "x".to_string()]]);
        assert_eq!(text, "a,b\n\"1,2\",x\n");
    }
}

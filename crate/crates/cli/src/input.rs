use std::path::Path;

use sha2::{Digest, Sha256};
use sumprod_core::genlab::{parse_line_file, parse_point_file, parse_set_file, LoadReport};
use sumprod_core::incidence::PlanarPointSet;
use sumprod_core::{ElementSet, FamilySpec, Line};

pub struct LoadedSet {
    pub set: ElementSet,
    pub duplicate_lines: Vec<usize>,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn with_path<T>(path: &Path, r: sumprod_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

/// A family spec or `file:PATH`.
pub fn load_set(source: &str) -> Result<LoadedSet, String> {
    let (set, duplicate_lines) = match source.strip_prefix("file:") {
        Some(path) => {
            let path = Path::new(path);
            let (set, LoadReport { duplicate_lines, .. }) = with_path(path, parse_set_file(&read(path)?))?;
            (set, duplicate_lines)
        }
        None => {
            let spec: FamilySpec = source.parse().map_err(|e: sumprod_core::Error| e.to_string())?;
            (spec.generate().map_err(|e| e.to_string())?, Vec::new())
        }
    };
    if set.is_empty() {
        return Err(format!("{source}: the set is empty"));
    }
    for line in &duplicate_lines {
        eprintln!("sumprod: {source}: line {line} repeats an earlier value");
    }
    Ok(LoadedSet { set, duplicate_lines })
}

fn warn_duplicates(path: &Path, report: &LoadReport) {
    for line in &report.duplicate_lines {
        eprintln!("sumprod: {}: line {line} repeats an earlier entry", path.display());
    }
}

pub fn load_points(path: &Path) -> Result<PlanarPointSet, String> {
    let (p, report) = with_path(path, parse_point_file(&read(path)?))?;
    warn_duplicates(path, &report);
    Ok(p)
}

pub fn load_lines(path: &Path) -> Result<Vec<Line>, String> {
    let (l, report) = with_path(path, parse_line_file(&read(path)?))?;
    warn_duplicates(path, &report);
    Ok(l)
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn points_text(points: &PlanarPointSet) -> String {
    points.iter().map(|p| format!("{p}\n")).collect()
}

pub fn lines_text(lines: &[Line]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

//! The bundled instance suite and directory suites.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance_io::Instance;
use crate::invariants::verify::{verify_instance, Report};

/// `(label, text)` of every bundled instance, in a fixed order.
pub const BUNDLED: &[(&str, &str)] = &[
    ("e1", include_str!("../instances/e1.inst")),
    ("e2", include_str!("../instances/e2.inst")),
    ("e3", include_str!("../instances/e3.inst")),
    ("e4", include_str!("../instances/e4.inst")),
    ("e5", include_str!("../instances/e5.inst")),
];

pub fn bundled() -> Result<Vec<(String, Instance)>> {
    BUNDLED.iter().map(|(l, t)| Ok((l.to_string(), Instance::parse(t)?))).collect()
}

/// `*.inst` files of a directory, sorted by file name.
pub fn from_dir(dir: &Path) -> Result<Vec<(String, Instance)>> {
    let io = |e: std::io::Error| Error::Precondition(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "inst"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(io)?;
            let label = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let inst = Instance::parse(&text)
                .map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))?;
            Ok((label, inst))
        })
        .collect()
}

/// Verifies every instance in order.
pub fn verify_all(instances: &[(String, Instance)], only: &[String]) -> Result<Vec<Report>> {
    instances.iter().map(|(l, i)| verify_instance(i, l, only)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_instances_parse() {
        assert_eq!(bundled().unwrap().len(), BUNDLED.len());
    }
}

//! Shipped example tuples, plus optional user entries from the directory
//! named by `RIGIDITY_LAB_CATALOG`.

use std::path::Path;

use rigidity_core::rational::{frac, int};
use rigidity_core::{FinitePoint, MonodromyTuple, QMatrix, TupleSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CATALOG_ENV: &str = "RIGIDITY_LAB_CATALOG";

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub tuple: MonodromyTuple,
    pub expected_index: i64,
    pub expected_rigid: bool,
}

impl CatalogEntry {
    /// Recomputes the index and rigidity flag and compares them with the
    /// stored expectations.
    pub fn check(&self) -> Result<(), CliError> {
        let index = self.tuple.rigidity_index()?;
        let rigid = self.tuple.is_physically_rigid()?;
        if index != self.expected_index || rigid != self.expected_rigid {
            return Err(CliError::Catalog(format!(
                "entry {:?}: stored (index {}, rigid {}) but computed (index {index}, rigid {rigid})",
                self.name, self.expected_index, self.expected_rigid
            )));
        }
        Ok(())
    }
}

fn scalar_point(location: i64, value: rigidity_core::Rational) -> FinitePoint {
    FinitePoint::new(int(location), QMatrix::diag(&[value]))
}

fn matrix_point(location: i64, rows: &[[i64; 2]]) -> FinitePoint {
    FinitePoint::new(int(location), QMatrix::from_ints(rows))
}

fn entry(name: &str, description: &str, rank: usize, points: Vec<FinitePoint>, index: i64, rigid: bool) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        tuple: MonodromyTuple::with_computed_infinity(rank, points)
            .expect("shipped catalog tuples are valid"),
        expected_index: index,
        expected_rigid: rigid,
    }
}

pub fn builtin() -> Vec<CatalogEntry> {
    vec![
        entry(
            "kummer",
            "rank 1, monodromy 2 at 0 and 1/2 at infinity",
            1,
            vec![scalar_point(0, int(2))],
            2,
            true,
        ),
        entry(
            "two_point_rank1",
            "rank 1, monodromies 2 and 1/2 at 0 and 1, trivial at infinity",
            1,
            vec![scalar_point(0, int(2)), scalar_point(1, frac(1, 2))],
            2,
            true,
        ),
        entry(
            "rank1_three_point",
            "rank 1, monodromies 2, 3, 1/6 at 0, 1, infinity",
            1,
            vec![scalar_point(0, int(2)), scalar_point(1, int(3))],
            2,
            true,
        ),
        entry(
            "hypergeometric2",
            "rank 2 on 0, 1, infinity, each local monodromy with two distinct eigenvalues",
            2,
            vec![
                matrix_point(0, &[[3, 0], [-3, -2]]),
                matrix_point(1, &[[-1, 2], [2, 2]]),
            ],
            2,
            true,
        ),
        entry(
            "generic4",
            "rank 2 on 0, 1, 2, infinity, each local monodromy with two distinct eigenvalues",
            2,
            vec![
                matrix_point(0, &[[3, 0], [1, 1]]),
                matrix_point(1, &[[1, 0], [-1, -3]]),
                matrix_point(2, &[[-2, 3], [0, 1]]),
            ],
            0,
            false,
        ),
        entry(
            "diagonal_reducible",
            "rank 2, simultaneously diagonal (reducible)",
            2,
            vec![
                FinitePoint::new(int(0), QMatrix::diag(&[int(2), int(3)])),
                FinitePoint::new(int(1), QMatrix::diag(&[int(5), int(-1)])),
            ],
            2,
            false,
        ),
    ]
}

/// A catalog file: either a full entry or a bare tuple.
#[derive(Deserialize)]
#[serde(untagged)]
enum CatalogFile {
    Entry {
        name: Option<String>,
        #[serde(default)]
        description: String,
        tuple: TupleSpec,
        expected_index: Option<i64>,
        expected_rigid: Option<bool>,
    },
    Bare(TupleSpec),
}

fn load_file(path: &Path) -> Result<CatalogEntry, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    let file: CatalogFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Catalog(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let (name, description, spec, index, rigid) = match file {
        CatalogFile::Entry {
            name,
            description,
            tuple,
            expected_index,
            expected_rigid,
        } => (name.unwrap_or(stem), description, tuple, expected_index, expected_rigid),
        CatalogFile::Bare(spec) => (stem, String::new(), spec, None, None),
    };
    let tuple = spec.into_tuple()?;
    tuple.validate().map_err(rigidity_core::Error::from)?;
    let entry = CatalogEntry {
        name,
        description,
        expected_index: match index {
            Some(i) => i,
            None => tuple.rigidity_index()?,
        },
        expected_rigid: match rigid {
            Some(r) => r,
            None => tuple.is_physically_rigid()?,
        },
        tuple,
    };
    entry.check()?;
    Ok(entry)
}

/// `*.json` files of `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>, CliError> {
    let read = std::fs::read_dir(dir).map_err(|e| CliError::Io(dir.display().to_string(), e.to_string()))?;
    let mut paths: Vec<_> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_file(p)).collect()
}

/// Built-in entries followed by those from `RIGIDITY_LAB_CATALOG`, every
/// entry checked against its stored expectations.
pub fn load() -> Result<Vec<CatalogEntry>, CliError> {
    let mut entries = builtin();
    for e in &entries {
        e.check()?;
    }
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        entries.extend(load_dir(Path::new(&dir))?);
    }
    Ok(entries)
}

pub fn find(name: &str) -> Result<CatalogEntry, CliError> {
    load()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CliError::UnknownEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_entries_match_expectations() {
        let entries = builtin();
        assert!(entries.len() >= 4);
        for e in &entries {
            e.check().unwrap();
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = builtin().into_iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), builtin().len());
    }

    #[test]
    fn external_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("b_bare.json"),
            r#"{"rank": 1, "finite_points": [{"location": "5", "matrix": [["-1"]]}]}"#,
        )
        .unwrap();
        std::fs::write(
            dir.path().join("a_entry.json"),
            r#"{"name": "mine", "tuple": {"rank": 1, "finite_points": [{"location": "0", "matrix": [["3"]]}]}, "expected_index": 2, "expected_rigid": true}"#,
        )
        .unwrap();
        std::fs::write(dir.path().join("ignored.txt"), "not json").unwrap();
        let entries = load_dir(dir.path()).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "mine");
        assert_eq!(entries[1].name, "b_bare");
        assert_eq!(entries[1].expected_index, 2);

        std::fs::write(
            dir.path().join("c_wrong.json"),
            r#"{"name": "wrong", "tuple": {"rank": 1, "finite_points": [{"location": "0", "matrix": [["3"]]}]}, "expected_index": 0}"#,
        )
        .unwrap();
        assert!(matches!(load_dir(dir.path()), Err(CliError::Catalog(_))));
    }
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cpl_core::catalog::{Catalog, CATALOG_JSON};
use cpl_core::geometry::{
    relations_from_json, witnesses_from_json, DegenerationWitness, RelationSet, RELATIONS_JSON, WITNESSES_JSON,
};
use cpl_core::morphisms::{iso_exceptions_from_json, IsoException, ISO_EXCEPTIONS_JSON};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const FILES: [&str; 4] = ["catalog.json", "witnesses.json", "relations.json", "iso_exceptions.json"];

/// Everything the suites read, with the SHA-256 of each file's bytes.
pub struct DataSet {
    pub catalog: Catalog,
    pub witnesses: Vec<DegenerationWitness>,
    pub relations: Vec<RelationSet>,
    pub iso_exceptions: Vec<IsoException>,
    pub hashes: BTreeMap<String, String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn bad(file: &str) -> impl Fn(cpl_core::Error) -> CliError + '_ {
    move |e| CliError::BadDataFile { file: file.into(), reason: e.to_string() }
}

impl DataSet {
    /// The data files compiled into the binary.
    pub fn embedded() -> Result<DataSet, CliError> {
        DataSet::from_texts([CATALOG_JSON, WITNESSES_JSON, RELATIONS_JSON, ISO_EXCEPTIONS_JSON].map(String::from))
    }

    pub fn from_dir(dir: &Path) -> Result<DataSet, CliError> {
        let read = |name: &str| {
            let path: PathBuf = dir.join(name);
            std::fs::read_to_string(&path).map_err(|_| CliError::DataFileMissing(path))
        };
        DataSet::from_texts([read(FILES[0])?, read(FILES[1])?, read(FILES[2])?, read(FILES[3])?])
    }

    fn from_texts(texts: [String; 4]) -> Result<DataSet, CliError> {
        let [cat, wit, rel, iso] = &texts;
        let hashes = FILES.iter().zip(&texts).map(|(f, t)| (f.to_string(), sha256_hex(t.as_bytes()))).collect();
        Ok(DataSet {
            catalog: Catalog::from_json(cat).map_err(bad(FILES[0]))?,
            witnesses: witnesses_from_json(wit).map_err(bad(FILES[1]))?,
            relations: relations_from_json(rel).map_err(bad(FILES[2]))?,
            iso_exceptions: iso_exceptions_from_json(iso).map_err(bad(FILES[3]))?,
            hashes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn embedded_data_loads() {
        let d = DataSet::embedded().unwrap();
        assert_eq!(d.witnesses.len(), 41);
        assert_eq!(d.hashes.len(), 4);
    }
}

//! The shipped data files must match the definitions compiled into the
//! library. Run with `CPL_UPDATE_DATA=1` to rewrite them after editing.

use std::path::PathBuf;

use cpl_core::catalog::{Catalog, CATALOG_JSON};

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn check_or_update(name: &str, fresh: &str, embedded: &str) {
    if std::env::var_os("CPL_UPDATE_DATA").is_some() {
        std::fs::write(data_path(name), fresh).unwrap();
        return;
    }
    assert!(embedded == fresh, "{name} is stale; rerun with CPL_UPDATE_DATA=1");
}

#[test]
fn catalog_file_matches_builtin() {
    let built = Catalog::builtin();
    check_or_update("catalog.json", &built.to_json(), CATALOG_JSON);
}

#[test]
fn catalog_file_round_trips() {
    let loaded = Catalog::embedded();
    assert_eq!(loaded, Catalog::builtin());
    assert_eq!(loaded.to_json(), CATALOG_JSON);
}

#[test]
fn iso_exceptions_file_matches_builtin() {
    use cpl_core::morphisms::{builtin_iso_exceptions, embedded_iso_exceptions, ISO_EXCEPTIONS_JSON};
    let mut fresh = serde_json::to_string_pretty(&builtin_iso_exceptions()).unwrap();
    fresh.push('\n');
    check_or_update("iso_exceptions.json", &fresh, ISO_EXCEPTIONS_JSON);
    if std::env::var_os("CPL_UPDATE_DATA").is_none() {
        assert_eq!(embedded_iso_exceptions(), builtin_iso_exceptions());
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

#[test]
fn witnesses_file_matches_builtin() {
    use cpl_core::geometry::{builtin_witnesses, embedded_witnesses, WITNESSES_JSON};
    check_or_update("witnesses.json", &pretty(&builtin_witnesses()), WITNESSES_JSON);
    if std::env::var_os("CPL_UPDATE_DATA").is_none() {
        assert_eq!(embedded_witnesses(), builtin_witnesses());
    }
}

#[test]
fn relations_file_matches_builtin() {
    use cpl_core::geometry::{builtin_relations, embedded_relations, RELATIONS_JSON};
    check_or_update("relations.json", &pretty(&builtin_relations()), RELATIONS_JSON);
    if std::env::var_os("CPL_UPDATE_DATA").is_none() {
        assert_eq!(embedded_relations(), builtin_relations());
    }
}

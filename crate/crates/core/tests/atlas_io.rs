use std::fs;

use latticelab::atlas::{
    build_atlas, extend_atlas_file, read_atlas, summary_csv, write_atlas, Atlas, AtlasHeader,
    ATLAS_SCHEMA,
};
use latticelab::{ClassifyOptions, Error, DEFAULT_EL_BUDGET};

fn atlas6() -> Atlas {
    Atlas {
        header: AtlasHeader {
            schema: ATLAS_SCHEMA,
            max_n: 6,
            el_budget: Some(DEFAULT_EL_BUDGET),
            lex_mode: Default::default(),
        },
        entries: build_atlas(6, Some(DEFAULT_EL_BUDGET)).unwrap(),
    }
}

#[test]
fn round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.jsonl");
    let a = atlas6();
    assert_eq!(a.entries.len(), 25);
    write_atlas(&path, &a).unwrap();
    assert_eq!(read_atlas(&path).unwrap(), a);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text
        .starts_with("{\"el_budget\":10000000,\"lex_mode\":\"Weak\",\"max_n\":6,\"schema\":1}\n"));
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn entries_reverify_after_reingest() {
    let opts = ClassifyOptions::default();
    for e in atlas6().entries {
        assert!(e.reverify(&opts).unwrap(), "{}", e.canonical);
    }
}

#[test]
fn corrupt_line_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.jsonl");
    write_atlas(&path, &atlas6()).unwrap();
    let mut lines: Vec<String> = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    lines[4] = lines[4].replace("\"record\"", "\"recrod\"");
    fs::write(&path, lines.join("\n")).unwrap();
    match read_atlas(&path) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn extending_skips_present_entries_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let opts = ClassifyOptions::default();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert_eq!(extend_atlas_file(&a, 5, &opts).unwrap(), 10);
    assert_eq!(extend_atlas_file(&a, 6, &opts).unwrap(), 15);
    assert_eq!(extend_atlas_file(&a, 6, &opts).unwrap(), 0);
    assert_eq!(extend_atlas_file(&b, 6, &opts).unwrap(), 25);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let other = ClassifyOptions {
        el_budget: Some(7),
        ..opts
    };
    assert!(extend_atlas_file(&a, 6, &other).is_err());
}

#[test]
fn csv_summary() {
    let csv = summary_csv(&atlas6().entries);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n,canonical,distributive,jsd,msd,sd,join_extremal,extremal,left_modular,el,lenL,J,M")
    );
    assert_eq!(lines.count(), 25);
}

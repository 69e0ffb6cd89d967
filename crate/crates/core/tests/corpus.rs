use std::path::PathBuf;

use mfiber_core::corpus::{check_corpus, check_corpus_sequential, check_entry, load_dir, parse_pair, EntryInput};

fn shipped() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_corpus_passes() {
    let entries = load_dir(&shipped()).unwrap();
    assert!(entries.len() >= 35);
    for o in check_corpus(&entries) {
        assert!(o.report.pass, "{}\n{}", o.name, o.report.to_table());
    }
}

#[test]
fn every_pair_has_a_golden() {
    let entries = load_dir(&shipped()).unwrap();
    for e in &entries {
        if let Ok(EntryInput::Pair { .. }) = e.input {
            assert!(matches!(e.golden, Some(Ok(_))), "{} lacks a golden", e.name);
            let o = check_entry(e);
            assert!(o.report.checks.iter().any(|c| c.name == "golden invariants" && c.pass), "{}", e.name);
        }
    }
}

#[test]
fn parallel_matches_sequential() {
    let entries = load_dir(&shipped()).unwrap();
    let a = check_corpus(&entries);
    let b = check_corpus_sequential(&entries);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.name, y.name);
        assert_eq!(x.report, y.report);
    }
}

#[test]
fn pair_file_grammar() {
    let (f, g) = parse_pair("# cusp against a line\nf = x^2+y^3\n\ng = y\n").unwrap();
    assert_eq!(f.to_string(), parse_pair("g=y\nf=y^3+x^2").unwrap().0.to_string());
    assert_eq!(g.to_string(), "y");
    assert!(parse_pair("f = x\n").is_err());
    assert!(parse_pair("f = x\nf = y\ng = y\n").is_err());
    assert!(parse_pair("f = x\ng = y\nh = 1\n").is_err());
}

#[test]
fn broken_entries_fail_without_aborting_the_run() {
    let dir = tempfile_dir();
    std::fs::write(dir.join("a.txt"), "f = x^2+y^3\ng = y\n").unwrap();
    std::fs::write(dir.join("b.txt"), "f = x^^2\ng = y\n").unwrap();
    std::fs::write(dir.join("c.txt"), "f = x*y\ng = x\n").unwrap();
    let out = check_corpus(&load_dir(&dir).unwrap());
    let verdicts: Vec<(String, bool)> = out.iter().map(|o| (o.name.clone(), o.report.pass)).collect();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts[0].1);
    assert!(!verdicts[1].1 && !verdicts[2].1);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("mfiber-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

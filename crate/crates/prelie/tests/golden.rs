//! Every case in `corpus/cases.txt` must reproduce its golden stdout and exit
//! code. Set `PRELIE_BLESS=1` to rewrite the golden files.

mod common;

use common::{cases, corpus, prelie};

#[test]
fn golden_files_reverify() {
    let bless = std::env::var_os("PRELIE_BLESS").is_some();
    let dir = corpus().join("golden");
    let mut failures = Vec::new();
    for case in cases() {
        let run = prelie(&case.args, &[]);
        let path = dir.join(format!("{}.json", case.name));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &run.stdout).unwrap();
        }
        let golden = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if run.code != case.code {
            failures.push(format!("{}: exit {} (expected {}): {}", case.name, run.code, case.code, run.stderr.trim()));
        } else if run.stdout != golden {
            failures.push(format!("{}: stdout differs from {}", case.name, path.display()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_golden_file_has_a_case() {
    let names: Vec<String> = cases().into_iter().map(|c| format!("{}.json", c.name)).collect();
    for entry in std::fs::read_dir(corpus().join("golden")).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(names.contains(&name), "stale golden file {}", name);
    }
}

#[test]
fn case_names_are_unique() {
    let mut names: Vec<String> = cases().into_iter().map(|c| c.name).collect();
    let n = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), n);
}

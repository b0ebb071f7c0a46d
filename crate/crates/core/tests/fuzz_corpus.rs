//! Replays the checked-in fuzz corpus through the same round-trip checks the
//! fuzz targets make, so the seeds stay meaningful on a stable toolchain.

use std::fs;
use std::path::PathBuf;

use klein11_core::algebra::{BranchChart, SparsePoly};
use klein11_core::exact::{Cyclotomic, Rational};
use klein11_core::suites::parse_omega;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

/// Counts the seeds that parse; every parsed value must survive a round trip.
fn replay<T: PartialEq + std::fmt::Debug>(target: &str, parse: impl Fn(&str) -> Option<T>, print: impl Fn(&T) -> String) -> usize {
    let mut ok = 0;
    for (name, s) in seeds(target) {
        if let Some(v) = parse(&s) {
            let again = parse(&print(&v)).unwrap_or_else(|| panic!("{target}/{name}: printed form does not parse"));
            assert_eq!(again, v, "{target}/{name}");
            ok += 1;
        }
    }
    ok
}

#[test]
fn rational_seeds() {
    assert_eq!(replay("rational", |s| s.parse::<Rational>().ok(), |q| q.to_string()), 6);
}

#[test]
fn cyclotomic_seeds() {
    assert_eq!(replay("cyclotomic_json", |s| Cyclotomic::from_json(s).ok(), Cyclotomic::to_json), 5);
    assert_eq!(replay("cyclotomic_bracketed", |s| Cyclotomic::parse_bracketed(s).ok(), Cyclotomic::to_bracketed), 5);
}

#[test]
fn polynomial_seeds() {
    assert_eq!(replay("polynomial_text", |s| SparsePoly::<Cyclotomic>::parse_text(s).ok(), SparsePoly::to_text), 5);
}

#[test]
fn chart_seeds() {
    assert_eq!(replay("chart_json", |s| BranchChart::<Rational>::from_json(s).ok(), BranchChart::to_json), 6);
}

#[test]
fn omega_seeds() {
    let parsed: Vec<String> = seeds("omega").into_iter().filter(|(_, s)| parse_omega(s).is_ok()).map(|(n, _)| n).collect();
    assert_eq!(parsed.len(), 7);
}

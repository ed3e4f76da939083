use std::collections::HashSet;
use std::fs;
use std::io::Write;

use hamlocate::oracle::census::{census, enumerate, CensusConfig, CensusRecord, Enumeration, PairPolicy};
use hamlocate::oracle::{canonical_form, canonical_max_degree, labeled_max_degree};

/// Isomorphism classes of graphs on `n` vertices with maximum degree ≤ 2:
/// multisets of paths (any order ≥ 1) and cycles (order ≥ 3).
fn max_degree_two_classes(n: usize) -> usize {
    // kinds of component on k vertices
    let kinds = |k: usize| if k >= 3 { 2 } else { 1 };
    // ways[m][j]: multisets of components on m vertices, each of order ≤ j
    let mut ways = vec![vec![0usize; n + 1]; n + 1];
    ways[0].fill(1);
    for m in 1..=n {
        for j in 1..=n {
            let mut total = ways[m][j - 1];
            // c components of order j, split among the kinds with repetition
            let mut c = 1;
            while c * j <= m {
                let choose = match kinds(j) {
                    1 => 1,
                    _ => c + 1,
                };
                total += choose * ways[m - c * j][j - 1];
                c += 1;
            }
            ways[m][j] = total;
        }
    }
    ways[n][n]
}

#[test]
fn path_cycle_formula_on_small_orders() {
    // by hand: n=3 has empty, edge, path, triangle
    assert_eq!(max_degree_two_classes(3), 4);
    assert_eq!(max_degree_two_classes(4), 7);
}

#[test]
fn canonical_enumeration_matches_independent_counts() {
    for n in 3..=10 {
        assert_eq!(canonical_max_degree(n, 2).len(), max_degree_two_classes(n), "n = {n}");
    }
}

#[test]
fn canonical_classes_match_labeled_orbits() {
    for (n, d) in [(6, 2), (7, 3), (8, 2)] {
        let orbits: HashSet<_> = labeled_max_degree(n, d).iter().map(|g| canonical_form(g).0).collect();
        assert_eq!(orbits.len(), canonical_max_degree(n, d).len(), "n = {n}, max degree {d}");
    }
}

#[test]
fn census_graph_counts_agree_across_modes() {
    for n in [6, 7, 8] {
        let mut cfg = CensusConfig::new(n);
        cfg.enumeration = Enumeration::AllLabeled;
        let labeled = enumerate(&cfg).unwrap();
        cfg.enumeration = Enumeration::Canonical;
        let canonical = enumerate(&cfg).unwrap();
        let orbits: HashSet<_> = labeled.iter().map(|(_, g)| canonical_form(g).0).collect();
        assert_eq!(orbits.len(), canonical.len(), "n = {n}");
    }
}

fn key(r: &CensusRecord) -> (String, usize, usize) {
    (r.graph_id.clone(), r.x, r.y)
}

fn same_set(a: &[CensusRecord], b: &[CensusRecord]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| key(p) == key(q) && p.same_result(q))
}

#[test]
fn interrupted_census_resumes_to_the_same_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n7.jsonl");
    let mut cfg = CensusConfig::new(7);
    let reference = census(&cfg).unwrap();

    cfg.output = Some(path.clone());
    let first = census(&cfg).unwrap();
    assert!(same_set(&reference, &first));
    let lines: Vec<String> = fs::read_to_string(&path).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), reference.len());

    // cut mid-graph and leave a torn last line
    for keep in [0, 1, 37, lines.len() / 2, lines.len() - 1] {
        let mut f = fs::File::create(&path).unwrap();
        for l in &lines[..keep] {
            writeln!(f, "{l}").unwrap();
        }
        write!(f, "{}", &lines[keep][..lines[keep].len() / 2]).unwrap();
        drop(f);
        let resumed = census(&cfg).unwrap();
        assert!(same_set(&reference, &resumed), "resume after {keep} lines");
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), reference.len());
    }

    // a finished file is reused as is
    let again = census(&cfg).unwrap();
    assert!(same_set(&reference, &again));
}

#[test]
fn corrupt_middle_line_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n6.jsonl");
    let mut cfg = CensusConfig::new(6);
    cfg.output = Some(path.clone());
    census(&cfg).unwrap();
    let mut lines: Vec<String> = fs::read_to_string(&path).unwrap().lines().map(String::from).collect();
    lines[3] = "{not json".into();
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert!(census(&cfg).is_err());
}

#[test]
fn sampled_census_is_a_subset_of_the_full_one() {
    let full = census(&CensusConfig::new(7)).unwrap();
    let mut cfg = CensusConfig::new(7);
    cfg.pairs = PairPolicy::Sampled { count: 3, seed: 5 };
    let sampled = census(&cfg).unwrap();
    let all: HashSet<_> = full.iter().map(key).collect();
    assert!(sampled.iter().all(|r| all.contains(&key(r)) && full.iter().any(|f| key(f) == key(r) && f.same_result(r))));
    assert_eq!(sampled.len(), 3 * enumerate(&cfg).unwrap().len());
}

mod common;

use std::time::Instant;

use ctxalg::container::*;
use ctxalg::{Error, Law};

fn z2_writer() -> PolyMonad {
    writer_container(&["0", "1"], 0, |a, b| (a + b) % 2).unwrap()
}

fn instances() -> Vec<PolyMonad> {
    vec![z2_writer(), state_container(2).unwrap(), maybe_container().unwrap()]
}

#[test]
fn shipped_containers_are_monads() {
    for m in instances() {
        let r = check_poly_monad(&m).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.results.len(), 6);
    }
}

#[test]
fn maybe_tables_are_and_and_split() {
    let m = maybe_container().unwrap();
    assert_eq!(m.ok, TRUE);
    for h in [TRUE, FALSE] {
        assert_eq!(m.seq(TRUE, &[h]).unwrap(), h);
        assert_eq!(m.split(TRUE, &[h], 0).ok(), (h == TRUE).then_some((0, 0)));
    }
    assert_eq!(m.seq(FALSE, &[]).unwrap(), FALSE);
    assert_eq!(m.container.arity(FALSE), 0);
}

#[test]
fn broken_monoid_is_rejected_with_witness() {
    // 1·1 = 0 but 0 is not a unit
    let err = writer_container(&["0", "1"], 1, |a, b| if a == 1 && b == 1 { 0 } else { a.max(b) }).unwrap_err();
    match err {
        Error::Law(r) => assert!(r.failures().all(|f| f.witness.is_some())),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn partial_seq_table_is_structural() {
    let mut m = z2_writer();
    let key = m.seq.keys().next().cloned().unwrap();
    m.seq.remove(&key);
    let err = check_poly_monad(&m).unwrap_err();
    assert!(err.is_structural());
    let mut m = state_container(2).unwrap();
    let key = m.split.keys().next().cloned().unwrap();
    m.split.remove(&key);
    assert!(matches!(check_poly_monad(&m), Err(Error::Missing { table: "split", .. })));
}

#[test]
fn kleisli_units_are_identities() {
    for m in instances() {
        for k in all_kleisli_maps(&m, 2, 2) {
            let left = kleisli_compose(&m, &kleisli_unit(&m, 2), &k).unwrap();
            let right = kleisli_compose(&m, &k, &kleisli_unit(&m, 2)).unwrap();
            assert_eq!(left, k, "{}", m.name);
            assert_eq!(right, k, "{}", m.name);
        }
    }
}

#[test]
fn writer_composite_adds_grades() {
    let m = z2_writer();
    for f in all_kleisli_maps(&m, 2, 2) {
        for g in all_kleisli_maps(&m, 2, 2) {
            let h = kleisli_compose(&m, &f, &g).unwrap();
            for x in 0..2 {
                let (f2, f1) = (f.assign[x].0.ix(), f.assign[x].1[0]);
                let (g2, g1) = (g.assign[f1].0.ix(), g.assign[f1].1[0]);
                assert_eq!(h.assign[x], (Shape(((f2 + g2) % 2) as u32), vec![g1]));
            }
        }
    }
}

#[test]
fn maybe_composite_is_defined_where_both_stages_are() {
    let m = maybe_container().unwrap();
    // X -> Y + 1 as Option tables
    let as_option = |k: &FinKleisliMap, x: usize| (k.assign[x].0 == TRUE).then(|| k.assign[x].1[0]);
    for f in all_kleisli_maps(&m, 2, 2) {
        for g in all_kleisli_maps(&m, 2, 2) {
            let h = kleisli_compose(&m, &f, &g).unwrap();
            for x in 0..2 {
                let direct = as_option(&f, x).and_then(|y| as_option(&g, y));
                assert_eq!(as_option(&h, x), direct);
            }
        }
    }
}

/// A state-monad Kleisli map `x ↦ (s ↦ (y, s'))` in container form.
fn state_map(m: &PolyMonad, table: &[Vec<(usize, usize)>], cod: usize) -> FinKleisliMap {
    let assign = table
        .iter()
        .map(|row| {
            let sigma: String = row.iter().map(|(_, s)| s.to_string()).collect();
            (m.container.shape(&sigma).unwrap(), row.iter().map(|(y, _)| *y).collect())
        })
        .collect();
    FinKleisliMap { dom: table.len(), cod, assign }
}

#[test]
fn state_composite_runs_the_machines_in_order() {
    let m = state_container(2).unwrap();
    let t = transpose(&m).unwrap();
    let rows: Vec<Vec<(usize, usize)>> =
        functions(2, 4).into_iter().map(|r| r.into_iter().map(|v| (v / 2, v % 2)).collect()).collect();
    for k1 in &rows {
        for k2 in &rows {
            for j1 in &rows {
                for j2 in &rows {
                    let (k, j) = ([k1.clone(), k2.clone()], [j1.clone(), j2.clone()]);
                    let composite: Vec<Vec<(usize, usize)>> =
                        k.iter().map(|row| row.iter().map(|&(y, s)| j[y][s]).collect()).collect();
                    let (km, jm) = (state_map(&m, &k, 2), state_map(&m, &j, 2));
                    let arrow = transposed_compose(&t, &transpose_map(&km), &transpose_map(&jm)).unwrap();
                    assert_eq!(arrow, transpose_map(&state_map(&m, &composite, 2)));
                    // grade at (x, s) is the state after running both machines
                    let machine = state_grade(&m)(&arrow.grade);
                    for x in 0..2 {
                        for s in 0..2 {
                            let (y, s1) = k[x][s];
                            assert_eq!(machine[x * 2 + s], j[y][s1].1);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn transposition_is_an_isomorphism() {
    for m in instances() {
        let start = Instant::now();
        let r = check_transposition_iso(&m, 2, 2, 2).unwrap();
        println!("{}: {:?}", m.name, start.elapsed());
        assert!(r.passed(), "{r}");
        let pairs = r.get(Law::TransposeComposition).unwrap().checked;
        assert!(pairs >= 81, "{} pairs", pairs);
    }
}

#[test]
fn transposition_cap_is_enforced() {
    let m = state_container(3).unwrap();
    assert!(matches!(check_transposition_iso(&m, 3, 3, 3), Err(Error::SampleCap { .. })));
}

#[test]
fn transposes_satisfy_the_graded_comonad_laws() {
    let sample = Sample::default();
    for m in instances() {
        let r = check_dep_graded(&transpose(&m).unwrap(), &sample).unwrap();
        assert!(r.passed(), "{r}");
    }
    for r in [
        check_dep_graded(&direct_writer(2, 0, |a, b| (a + b) % 2), &sample).unwrap(),
        check_dep_graded(&direct_state(2), &sample).unwrap(),
        check_dep_graded(&direct_maybe(), &sample).unwrap(),
    ] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn oversized_sample_is_refused() {
    let sample = Sample { sizes: vec![1], deep_sizes: vec![2], cap: 1_000_000 };
    assert!(matches!(check_dep_graded(&direct_state(2), &sample), Err(Error::SampleCap { .. })));
}

#[test]
fn transposes_agree_with_the_direct_definitions() {
    let sizes = [0, 1, 2];
    let w = z2_writer();
    let r = check_agreement(&transpose(&w).unwrap(), &direct_writer(2, 0, |a, b| (a + b) % 2), writer_grade, &sizes);
    assert!(r.passed(), "{r}");
    let s = state_container(2).unwrap();
    let r = check_agreement(&transpose(&s).unwrap(), &direct_state(2), state_grade(&s), &sizes);
    assert!(r.passed(), "{r}");
    let mb = maybe_container().unwrap();
    let r = check_agreement(&transpose(&mb).unwrap(), &direct_maybe(), maybe_grade, &sizes);
    assert!(r.passed(), "{r}");
}

#[test]
fn law_breaking_seq_fails_both_presentations() {
    let mut m = z2_writer();
    let (w0, w1) = (Shape(0), Shape(1));
    m.seq.insert((w1, vec![w1]), w1);
    m.seq.insert((w0, vec![w1]), w0);
    assert!(!check_poly_monad(&m).unwrap().passed());
    // the evaluator itself does not require the laws
    let t = Transposed { monad: &m };
    assert!(!check_dep_graded(&t, &Sample::default()).unwrap().passed());
}

#[test]
fn state_encoding_is_a_bijection() {
    for s in 1..=3 {
        for x in 0..=3 {
            let r = check_state_encoding(s, x);
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn each_mutant_is_caught_with_a_genuine_witness() {
    for mutant in poly_mutants().unwrap() {
        let r = check_poly_monad(&mutant.monad).unwrap();
        let result = r.get(mutant.breaks).unwrap();
        let w = result.witness.as_ref().unwrap_or_else(|| panic!("{} not caught\n{r}", mutant.name));
        assert!(common::witness_is_genuine(&mutant.monad, mutant.breaks, w), "{}: {w}", mutant.name);
    }
}

#[test]
fn oversized_law_check_is_refused() {
    let m = state_container(3).unwrap();
    assert!(matches!(check_poly_monad(&m), Err(Error::SampleCap { .. })));
}

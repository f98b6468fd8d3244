use ctxalg::contextad::check_contextad;
use ctxalg::fixtures::contextad_gallery;

#[test]
fn every_gallery_contextad_satisfies_its_laws() {
    for (name, _, build) in contextad_gallery() {
        let started = std::time::Instant::now();
        let x = build().unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = check_contextad(&x).unwrap();
        println!(
            "{name}: {} objects, {} grades, {:?}",
            x.base().num_objects(),
            x.total().num_objects(),
            started.elapsed()
        );
        assert!(report.passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn each_mutant_breaks_exactly_its_law() {
    for m in ctxalg::fixtures::mutants().unwrap() {
        let report = check_contextad(&m.contextad).unwrap();
        assert_eq!(report.failed_laws(), vec![m.breaks], "{}", m.name);
        let w = report.get(m.breaks).unwrap().witness.as_ref();
        assert!(w.is_some(), "{} has no witness", m.name);
    }
}

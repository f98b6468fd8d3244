use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Parser;
use ctxalg::cli::schema::*;
use ctxalg::cli::{build_instance, gallery, load, run, Cli, Construction, Instance};
use ctxalg::contentad::dualize;
use ctxalg::ctxdouble::{DoubleCategory, Loose};
use ctxalg::fixtures::{self, closure_monad_data};
use ctxalg::Law;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("ctxalg").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, file: &InstanceFile) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(file).unwrap()).unwrap();
    p
}

fn exported(dir: &Path) -> HashMap<String, PathBuf> {
    let (code, _, err) = run_args(&["gallery", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    gallery().into_iter().map(|e| (e.name.to_owned(), dir.join(format!("{}.json", e.name)))).collect()
}

#[test]
fn gallery_lists_the_core_fixtures() {
    let (code, out, _) = run_args(&["gallery"]);
    assert_eq!(code, 0);
    assert!(out.contains("state dependently graded comonad"), "{out}");
    assert!(out.contains("partial maps (dominion)"), "{out}");
    let (code, out, _) = run_args(&["gallery", "--format", "json"]);
    assert_eq!(code, 0);
    let list: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(list.as_array().unwrap().len(), gallery().len());
}

#[test]
fn every_shipped_file_checks() {
    let dir = tempfile::tempdir().unwrap();
    for (name, path) in exported(dir.path()) {
        let (code, out, err) = run_args(&["check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}\n{out}{err}");
    }
}

#[test]
fn writer_file_passes_the_six_monad_laws() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let report = dir.path().join("report.json");
    let (code, out, _) = run_args(&[
        "check",
        files["writer-z2"].to_str().unwrap(),
        "--format",
        "json",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["report"]["results"].as_array().unwrap().len(), 6);
    let sidecar: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(sidecar, v);
}

#[test]
fn files_reproduce_the_instances() {
    for e in gallery() {
        let file = InstanceFile::new(e.name, (e.build)().unwrap());
        let text = serde_json::to_string(&file).unwrap();
        let back = ctxalg::cli::parse_file(&text, e.name).unwrap();
        assert_eq!(back, file);
        assert_eq!(load(&back, None).unwrap().to_body(), file.body, "{}", e.name);
    }
}

#[test]
fn mutated_contextads_fail_with_their_law() {
    let dir = tempfile::tempdir().unwrap();
    for m in fixtures::mutants().unwrap() {
        let file = InstanceFile::new(m.name, Body::Contextad(Box::new(contextad_doc(&m.contextad))));
        let path = write(dir.path(), &format!("{}.json", m.name), &file);
        let (code, out, err) = run_args(&["check", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 1, "{}\n{out}{err}", m.name);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let failing: Vec<&serde_json::Value> =
            v["report"]["results"].as_array().unwrap().iter().filter(|r| !r["witness"].is_null()).collect();
        assert!(failing.iter().any(|r| r["law"] == m.breaks.id()), "{}: {out}", m.name);
    }
}

#[test]
fn structural_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let dangling = r#"{"kind":"category","version":1,"name":"d","objects":["a"],
        "morphisms":[{"name":"id","src":"a","tgt":"a"}],"identities":[["a","id"]],
        "composition":[[["id","idd"],"id"]]}"#;
    let bad = r#"{"kind":"category","version":1,"name":"#;
    let unknown = r#"{"kind":"operad","version":1,"name":"x"}"#;
    let newer =
        r#"{"kind":"category","version":2,"name":"x","objects":[],"morphisms":[],"identities":[],"composition":[]}"#;
    for (name, text) in [("dangling", dangling), ("bad", bad), ("unknown", unknown), ("newer", newer)] {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let (code, _, err) = run_args(&["check", p.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}: {err}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let (code, _, err) = run_args(&["check", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    let (_, _, err) = run_args(&["check", dir.path().join("bad").to_str().unwrap()]);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn incomplete_tables_are_structural() {
    let dir = tempfile::tempdir().unwrap();
    let x = fixtures::identity_comonad_square().unwrap();
    let mut doc = contextad_doc(&x);
    doc.delta.pop();
    let path = write(dir.path(), "x.json", &InstanceFile::new("x", Body::Contextad(Box::new(doc))));
    assert_eq!(run_args(&["check", path.to_str().unwrap()]).0, 2);
}

#[test]
fn size_cap_is_enforced_and_can_be_raised() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let p = files["decoration"].to_str().unwrap();
    let (code, _, err) = run_args(&["check", p, "--max-morphisms", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
    assert_eq!(run_args(&["check", p, "--max-morphisms", "100000"]).0, 0);
}

fn build(dir: &Path, src: &Path, construction: &str, out: &str) -> (DoubleCategory, PathBuf) {
    let out = dir.join(out);
    let (code, text, err) =
        run_args(&["build", src.to_str().unwrap(), "--construction", construction, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}{err}");
    let file = ctxalg::cli::read_file(&out).unwrap();
    assert_eq!(file.kind(), "double-category");
    let Instance::Double(d) = load(&file, None).unwrap() else { panic!("not a double category") };
    (d, out)
}

#[test]
fn identity_comonad_builds_to_the_square_double_category() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let (d, out) = build(dir.path(), &files["identity-comonad"], "ctx", "sq.json");
    assert_eq!(d.loose.len(), d.tight.num_morphisms());
    let (code, text, _) = run_args(&["check", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(run_args(&["equiv", out.to_str().unwrap(), out.to_str().unwrap()]).0, 0);
}

#[test]
fn built_files_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    for (name, construction) in [
        ("z2-actegory", "ctx"),
        ("skewed-unit-actegory", "ctx"),
        ("graded-delay", "ctx"),
        ("decoration", "ctx"),
        ("identity-monad", "cnt"),
        ("closure-monad", "cnt"),
        ("z2-left-actegory", "cnt"),
        ("display-poset-triple", "span"),
        ("display-poset-triple", "ctx"),
    ] {
        let (_, out) = build(dir.path(), &files[name], construction, &format!("{name}-{construction}.json"));
        let (code, text, err) = run_args(&["check", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}\n{text}{err}");
    }
}

#[test]
fn closure_monad_builds_to_its_kleisli_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let (d, _) = build(dir.path(), &files["closure-monad"], "cnt", "kl.json");
    let (t, _, _) = closure_monad_data().unwrap();
    let c = t.dom.clone();
    for a in c.objects() {
        for b in c.objects() {
            let (a2, b2) = (d.tight.obj(c.obj_name(a)).unwrap(), d.tight.obj(c.obj_name(b)).unwrap());
            let loose = d.loose.iter().filter(|l| l.src == a2 && l.tgt == b2).count();
            assert_eq!(loose, c.hom(a, t.obj(b)).count());
        }
    }
}

/// Classes of loose arrows under invertible squares with identity sides.
fn globular_classes(d: &DoubleCategory) -> Vec<Vec<Loose>> {
    let mut class: Vec<usize> = (0..d.loose.len()).collect();
    fn find(class: &mut Vec<usize>, i: usize) -> usize {
        if class[i] != i {
            let r = find(class, class[i]);
            class[i] = r;
        }
        class[i]
    }
    for s in d.square_ids() {
        let q = d.square(s);
        if d.tight.is_identity(q.left) && d.tight.is_identity(q.right) && d.inverse(s).is_some() {
            let (a, b) = (find(&mut class, q.top.ix()), find(&mut class, q.bottom.ix()));
            class[a] = b;
        }
    }
    let mut groups: HashMap<usize, Vec<Loose>> = HashMap::new();
    for i in 0..d.loose.len() {
        let r = find(&mut class, i);
        groups.entry(r).or_default().push(Loose(i as u32));
    }
    groups.into_values().collect()
}

#[test]
fn partial_map_spans_are_partial_maps() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let file = ctxalg::cli::read_file(&files["partial-maps-triple"]).unwrap();
    let d = build_instance(load(&file, None).unwrap(), Construction::Span).unwrap();
    let c = d.tight.clone();
    // objects are named by their size
    let size = |o| c.obj_name(o).parse::<u32>().unwrap();
    let classes = globular_classes(&d);
    for a in c.objects() {
        for b in c.objects() {
            // each element goes to one of |b| values or nowhere
            let partial = (size(b) as usize + 1).pow(size(a));
            let found = classes.iter().filter(|g| {
                let l = d.loose_arrow(g[0]);
                l.src == a && l.tgt == b
            });
            assert_eq!(found.count(), partial, "{} -> {}", c.obj_name(a), c.obj_name(b));
        }
    }
}

#[test]
fn equivalences_between_instances() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let p = |n: &str| files[n].to_str().unwrap().to_owned();
    assert_eq!(run_args(&["equiv", &p("writer-z2"), &p("writer-z2")]).0, 0);
    assert_eq!(run_args(&["equiv", &p("display-poset-triple"), &p("display-poset")]).0, 0);

    for name in ["identity-monad", "closure-monad", "z2-left-actegory"] {
        let file = ctxalg::cli::read_file(&files[name]).unwrap();
        let Instance::Contentad(x) = load(&file, None).unwrap() else { panic!() };
        let dual = dualize(&x);
        let path = write(
            dir.path(),
            &format!("{name}-dual.json"),
            &InstanceFile::new("dual", Body::Contextad(Box::new(contextad_doc(&Arc::unwrap_or_clone(dual))))),
        );
        let (code, out, err) = run_args(&["equiv", &p(name), path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}\n{out}{err}");
        assert!(out.contains(&Law::Duality.id()), "{out}");
    }

    let (code, out, _) = run_args(&["equiv", &p("identity-comonad"), &p("decoration")]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"), "{out}");
    assert_eq!(run_args(&["equiv", &p("writer-z2"), &p("maybe")]).0, 1);
    assert_eq!(run_args(&["equiv", &p("identity-comonad"), &p("writer-z2")]).0, 2);
}

#[test]
fn inapplicable_construction_is_structural() {
    let dir = tempfile::tempdir().unwrap();
    let files = exported(dir.path());
    let out = dir.path().join("x.json");
    let (code, _, _) = run_args(&[
        "build",
        files["writer-z2"].to_str().unwrap(),
        "--construction",
        "ctx",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(!out.exists());
}

#[test]
fn building_a_lawless_instance_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = fixtures::mutants().unwrap().remove(0);
    let path =
        write(dir.path(), "m.json", &InstanceFile::new(m.name, Body::Contextad(Box::new(contextad_doc(&m.contextad)))));
    let out = dir.path().join("out.json");
    let (code, text, _) =
        run_args(&["build", path.to_str().unwrap(), "--construction", "ctx", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1, "{text}");
    assert!(text.contains("witness"));
    assert!(!out.exists());
}

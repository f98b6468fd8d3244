//! Command-line front end: load instance files, run law suites, materialize
//! double categories and compare instances.
//!
//! Exit codes: 0 when every law holds, 1 on a law failure (the report carries
//! a witness), 2 on parse errors, dangling names, missing table entries and
//! incompatible inputs.

pub mod schema;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::container::{
    check_poly_monad, check_transposition_iso, maybe_container, state_container, writer_container, PolyMonad,
};
use crate::contentad::{check_contentad, check_duality, cnt_construct, undualize, Contentad};
use crate::contextad::{check_contextad, from_display_maps, Contextad, DisplayMaps};
use crate::ctxdouble::{
    check_adequate_triple, check_double_category, check_double_iso, ctx_construct, span_ctx_iso, span_double_category,
    AdequateTriple, DoubleCategory, DoubleIso, Loose, Sq,
};
use crate::fibration::{check_cartesian, ClovenFibration};
use crate::fincat::{check_category, FinCategory, Mor, Obj, DEFAULT_MAX_MORPHISMS};
use crate::fixtures;
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;
use schema::*;

#[derive(Debug, Parser)]
#[command(name = "ctxalg", version, about = "Law checker for contextads, contentads and their double categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output file (check: JSON report; build: double category; gallery: directory for instance files).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Morphism cap for every loaded or constructed category.
    #[arg(long, global = true)]
    pub max_morphisms: Option<usize>,
    /// Reserved for sampled checks; every shipped check is exhaustive.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the law suite of an instance file.
    Check { path: PathBuf },
    /// Build the double category of an instance.
    Build {
        path: PathBuf,
        #[arg(long, value_enum)]
        construction: Construction,
    },
    /// Compare two instances: transposition, duality, spans, or equality of data.
    Equiv { a: PathBuf, b: PathBuf },
    /// List the shipped instances; with --out, write each to a file.
    Gallery,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Ctx,
    Cnt,
    Span,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Ctx => "ctx",
            Construction::Cnt => "cnt",
            Construction::Span => "span",
        })
    }
}

/// A loaded instance file.
#[allow(clippy::large_enum_variant)]
pub enum Instance {
    Category(Arc<FinCategory>),
    Fibration(ClovenFibration),
    Contextad(Contextad),
    Contentad(Contentad),
    Container(PolyMonad),
    Triple(AdequateTriple),
    Double(DoubleCategory),
}

pub fn parse_file(text: &str, origin: &str) -> Result<InstanceFile> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))?;
    if file.version != VERSION {
        return Err(Error::Parse(format!("{origin}: unsupported version {}, expected {VERSION}", file.version)));
    }
    Ok(file)
}

pub fn read_file(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_file(&text, &path.display().to_string())
}

pub fn load(file: &InstanceFile, cap_override: Option<usize>) -> Result<Instance> {
    let cap = cap_override.or(file.max_morphisms).unwrap_or(DEFAULT_MAX_MORPHISMS);
    Ok(match &file.body {
        Body::Category(d) => Instance::Category(load_category(d, cap)?),
        Body::Fibration(d) => Instance::Fibration(load_fibration(d, cap)?),
        Body::Contextad(d) => Instance::Contextad(load_contextad(d, cap)?),
        Body::Contentad(d) => Instance::Contentad(load_contentad(d, cap)?),
        Body::ContainerMonad(d) => Instance::Container(load_container(&file.name, d)?),
        Body::AdequateTriple(d) => Instance::Triple(load_triple(d, cap)?),
        Body::DoubleCategory(d) => Instance::Double(load_double(d, cap)?),
    })
}

/// The law suite for the instance's kind.
pub fn check_instance(inst: &Instance) -> Result<Report> {
    match inst {
        Instance::Category(c) => Ok(check_category(c)),
        Instance::Fibration(p) => Ok(check_cartesian(p)),
        Instance::Contextad(x) => check_contextad(x),
        Instance::Contentad(x) => check_contentad(x),
        Instance::Container(m) => check_poly_monad(m),
        Instance::Triple(t) => check_adequate_triple(t),
        Instance::Double(d) => check_double_category(d),
    }
}

/// The display-map contextad of a triple whose forward class is everything.
fn display_maps_of(t: &AdequateTriple) -> Result<DisplayMaps> {
    if t.forward.len() != t.cat.num_morphisms() {
        return Err(Error::ill_typed("build", "ctx of an adequate triple needs every arrow forward"));
    }
    Ok(DisplayMaps { cat: t.cat.clone(), display: t.backward.clone(), pullbacks: t.pullbacks.clone() })
}

pub fn build_instance(inst: Instance, construction: Construction) -> Result<DoubleCategory> {
    match (inst, construction) {
        (Instance::Contextad(x), Construction::Ctx) => Ok(ctx_construct(Arc::new(x))?.dbl),
        (Instance::Contentad(x), Construction::Cnt) => Ok(cnt_construct(Arc::new(x))?.dbl),
        (Instance::Triple(t), Construction::Span) => {
            Ok(span_double_category(t.cat, t.forward, t.backward, t.pullbacks)?.dbl)
        }
        (Instance::Triple(t), Construction::Ctx) => {
            Ok(ctx_construct(Arc::new(from_display_maps(&display_maps_of(&t)?)?))?.dbl)
        }
        (inst, c) => Err(Error::ill_typed("build", format!("construction {c} does not apply to a {}", inst.kind()))),
    }
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Category(_) => "category",
            Instance::Fibration(_) => "fibration",
            Instance::Contextad(_) => "contextad",
            Instance::Contentad(_) => "contentad",
            Instance::Container(_) => "container-monad",
            Instance::Triple(_) => "adequate-triple",
            Instance::Double(_) => "double-category",
        }
    }

    /// The instance written back out as a file body.
    pub fn to_body(&self) -> Body {
        match self {
            Instance::Category(c) => Body::Category(category_doc(c)),
            Instance::Fibration(p) => Body::Fibration(fibration_doc(p)),
            Instance::Contextad(x) => Body::Contextad(Box::new(contextad_doc(x))),
            Instance::Contentad(x) => Body::Contentad(Box::new(contentad_doc(x))),
            Instance::Container(m) => Body::ContainerMonad(container_doc(m)),
            Instance::Triple(t) => Body::AdequateTriple(triple_doc(t)),
            Instance::Double(d) => Body::DoubleCategory(Box::new(double_doc(d))),
        }
    }
}

/// The first place two JSON values differ, as `(path, left, right)`.
fn first_mismatch(a: &Value, b: &Value, path: &str) -> Option<(String, String, String)> {
    let short = |v: &Value| {
        let s = v.to_string();
        if s.chars().count() > 60 {
            format!("{}...", s.chars().take(60).collect::<String>())
        } else {
            s
        }
    };
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(u), Some(v)) => first_mismatch(u, v, &format!("{path}.{k}")),
                (u, v) => {
                    Some((format!("{path}.{k}"), u.map_or("absent".into(), short), v.map_or("absent".into(), short)))
                }
            })
        }
        (Value::Array(x), Value::Array(y)) => {
            x.iter().zip(y).enumerate().find_map(|(i, (u, v))| first_mismatch(u, v, &format!("{path}[{i}]"))).or_else(
                || (x.len() != y.len()).then(|| (format!("{path}.length"), x.len().to_string(), y.len().to_string())),
            )
        }
        _ => (a != b).then(|| (path.to_owned(), short(a), short(b))),
    }
}

/// Equality of two instances as data, with the first difference as witness.
pub fn same_data_report(a: &Body, b: &Body) -> Report {
    let mut report = Report::new("equality of instance data");
    let mut t = Tally::new(Law::Equivalence);
    let (va, vb) = (serde_json::to_value(a).unwrap_or(Value::Null), serde_json::to_value(b).unwrap_or(Value::Null));
    let mismatch = first_mismatch(&va, &vb, "$");
    t.record(mismatch.is_none(), || {
        let (path, l, r) = mismatch.clone().unwrap_or_default();
        witness! {"at" => path, "first" => l, "second" => r}
    });
    report.tally(t);
    report
}

/// Identify two double categories through the names of their cells.
pub fn double_by_names(d: &DoubleCategory, e: &DoubleCategory) -> Report {
    let mut report = Report::new("double categories matched by name");
    let mut t = Tally::new(Law::DblIsoBijection);
    let (c, c2) = (&*d.tight, &*e.tight);
    let objects: Vec<Option<Obj>> = c.objects().map(|o| c2.obj(c.obj_name(o))).collect();
    let tight: Vec<Option<Mor>> = c.morphisms().map(|m| c2.mor(c.mor_name(m))).collect();
    let loose: Vec<Option<Loose>> = d.loose.iter().map(|l| e.loose_by_name(&l.name)).collect();
    let squares: Vec<Option<Sq>> =
        d.squares.iter().map(|s| e.squares.iter().position(|q| q.name == s.name).map(|i| Sq(i as u32))).collect();
    let sizes = [
        ("objects", c.num_objects(), c2.num_objects()),
        ("tight arrows", c.num_morphisms(), c2.num_morphisms()),
        ("loose arrows", d.loose.len(), e.loose.len()),
        ("squares", d.squares.len(), e.squares.len()),
    ];
    for (what, n, m) in sizes {
        t.record(n == m, || witness! {"count of" => what, "first" => n, "second" => m});
    }
    let unmatched = c
        .objects()
        .filter(|o| objects[o.ix()].is_none())
        .map(|o| ("object", c.obj_name(o).to_owned()))
        .chain(c.morphisms().filter(|m| tight[m.ix()].is_none()).map(|m| ("tight arrow", c.mor_name(m).to_owned())))
        .chain(
            d.loose_arrows().filter(|f| loose[f.ix()].is_none()).map(|f| ("loose arrow", d.loose[f.ix()].name.clone())),
        )
        .chain(d.square_ids().filter(|s| squares[s.ix()].is_none()).map(|s| ("square", d.squares[s.ix()].name.clone())))
        .next();
    t.record(unmatched.is_none(), || {
        let (what, name) = unmatched.clone().unwrap_or_default();
        witness! {"unmatched" => what, "name" => name}
    });
    if t.failed() {
        report.tally(t);
        return report;
    }
    report.tally(t);
    let iso = DoubleIso {
        src: d,
        tgt: e,
        objects: objects.into_iter().flatten().collect(),
        tight: tight.into_iter().flatten().collect(),
        loose: loose.into_iter().flatten().collect(),
        squares: squares.into_iter().flatten().collect(),
    };
    report.extend(check_double_iso(&iso));
    report
}

/// The comparison `equiv` runs for a pair of kinds.
pub fn equiv_instances(a: Instance, b: Instance) -> Result<Report> {
    match (a, b) {
        (Instance::Container(m), Instance::Container(n)) => {
            let mut r = same_data_report(&Instance::Container(m.clone()).to_body(), &Instance::Container(n).to_body());
            if r.passed() {
                r.extend(check_transposition_iso(&m, 2, 2, 2)?);
            }
            r.subject = "Kleisli arrows and transposed contextful arrows".into();
            Ok(r)
        }
        (Instance::Contentad(x), Instance::Contextad(y)) | (Instance::Contextad(y), Instance::Contentad(x)) => {
            let back = undualize(&y)?;
            let mut r =
                same_data_report(&Instance::Contentad(back).to_body(), &Instance::Contentad(x.clone()).to_body());
            r.subject = "duality of contentful and contextful arrows".into();
            if r.passed() {
                r.extend(check_duality(Arc::new(x))?);
            }
            Ok(r)
        }
        (Instance::Triple(t), Instance::Contextad(y)) | (Instance::Contextad(y), Instance::Triple(t)) => {
            let x = from_display_maps(&display_maps_of(&t)?)?;
            let mut r = same_data_report(&Instance::Contextad(x).to_body(), &Instance::Contextad(y.clone()).to_body());
            r.subject = "spans and contextful arrows of display maps".into();
            if r.passed() {
                let ctx = ctx_construct(Arc::new(y))?;
                let span = span_double_category(t.cat, t.forward, t.backward, t.pullbacks)?;
                r.extend(span_ctx_iso(&ctx, &span)?);
            }
            Ok(r)
        }
        (Instance::Double(d), Instance::Double(e)) => Ok(double_by_names(&d, &e)),
        (a, b) if a.kind() == b.kind() => Ok(same_data_report(&a.to_body(), &b.to_body())),
        (a, b) => Err(Error::ill_typed("equiv", format!("no comparison between a {} and a {}", a.kind(), b.kind()))),
    }
}

// ---- gallery ----

pub struct GalleryEntry {
    pub name: &'static str,
    pub kind: &'static str,
    pub title: String,
    pub build: Box<dyn Fn() -> Result<Body>>,
}

fn contextad_body(x: Result<Contextad>) -> Result<Body> {
    Ok(Body::Contextad(Box::new(contextad_doc(&x?))))
}

fn triple_body(dm: DisplayMaps) -> Result<Body> {
    let all = dm.cat.morphisms().collect();
    Ok(Body::AdequateTriple(triple_doc(&AdequateTriple {
        cat: dm.cat,
        forward: all,
        backward: dm.display,
        pullbacks: dm.pullbacks,
    })))
}

/// Every shipped instance.
pub fn gallery() -> Vec<GalleryEntry> {
    let mut out = Vec::new();
    for (name, title, build) in fixtures::contextad_gallery() {
        out.push(GalleryEntry {
            name,
            kind: "contextad",
            title: title.to_owned(),
            build: Box::new(move || contextad_body(build())),
        });
    }
    for (name, title, build) in fixtures::contentad_gallery() {
        out.push(GalleryEntry {
            name,
            kind: "contentad",
            title: title.to_owned(),
            build: Box::new(move || Ok(Body::Contentad(Box::new(contentad_doc(&build()?))))),
        });
    }
    let containers: [fixtures::GalleryEntry<PolyMonad>; 3] = [
        ("writer-z2", "writer dependently graded comonad over Z/2", || {
            writer_container(&["0", "1"], 0, |a, b| (a + b) % 2)
        }),
        ("state-2", "state dependently graded comonad on two states", || state_container(2)),
        ("maybe", "Maybe dependently graded comonad (grades are definedness flags)", maybe_container),
    ];
    for (name, title, build) in containers {
        out.push(GalleryEntry {
            name,
            kind: "container-monad",
            title: title.to_owned(),
            build: Box::new(move || Ok(Body::ContainerMonad(container_doc(&build()?)))),
        });
    }
    out.push(GalleryEntry {
        name: "display-poset-triple",
        kind: "adequate-triple",
        title: "all maps of the square poset forward, all displayed, meets as pullbacks".into(),
        build: Box::new(|| triple_body(fixtures::display_poset_maps())),
    });
    out.push(GalleryEntry {
        name: "partial-maps-triple",
        kind: "adequate-triple",
        title: "partial maps (dominion) as spans with a monic backward leg".into(),
        build: Box::new(|| triple_body(fixtures::partial_map_display())),
    });
    out
}

// ---- commands ----

#[derive(Serialize)]
struct ReportFile<'a> {
    kind: &'static str,
    version: u32,
    instance: &'a str,
    verdict: &'static str,
    report: &'a Report,
}

fn emit_report(cli: &Cli, instance: &str, report: &Report, out: &mut dyn Write) -> Result<()> {
    let file = ReportFile {
        kind: "report",
        version: VERSION,
        instance,
        verdict: if report.passed() { "pass" } else { "fail" },
        report,
    };
    let json = serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))?;
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match cli.format {
        Format::Text => write!(out, "{instance}\n{report}").map_err(io)?,
        Format::Json => writeln!(out, "{json}").map_err(io)?,
    }
    Ok(())
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The verdict of a report as an exit code.
fn verdict(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn cmd_check(cli: &Cli, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let file = read_file(path)?;
    let report = check_instance(&load(&file, cli.max_morphisms)?)?;
    emit_report(cli, &file.name, &report, out)?;
    if let Some(p) = &cli.out {
        write_json(
            p,
            &ReportFile {
                kind: "report",
                version: VERSION,
                instance: &file.name,
                verdict: if report.passed() { "pass" } else { "fail" },
                report: &report,
            },
        )?;
    }
    Ok(verdict(&report))
}

fn cmd_build(cli: &Cli, path: &Path, construction: Construction, out: &mut dyn Write) -> Result<i32> {
    let file = read_file(path)?;
    let d = build_instance(load(&file, cli.max_morphisms)?, construction)?;
    let mut built =
        InstanceFile::new(format!("{construction}({})", file.name), Body::DoubleCategory(Box::new(double_doc(&d))));
    built.max_morphisms = cli.max_morphisms.or(file.max_morphisms);
    match &cli.out {
        Some(p) => {
            write_json(p, &built)?;
            let report = check_double_category(&d)?;
            emit_report(cli, &built.name, &report, out)?;
            Ok(verdict(&report))
        }
        None => {
            let text = serde_json::to_string_pretty(&built).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(out, "{text}").map_err(|e| Error::Parse(e.to_string()))?;
            Ok(0)
        }
    }
}

fn cmd_equiv(cli: &Cli, a: &Path, b: &Path, out: &mut dyn Write) -> Result<i32> {
    let (fa, fb) = (read_file(a)?, read_file(b)?);
    let report = equiv_instances(load(&fa, cli.max_morphisms)?, load(&fb, cli.max_morphisms)?)?;
    emit_report(cli, &format!("{} vs {}", fa.name, fb.name), &report, out)?;
    Ok(verdict(&report))
}

fn cmd_gallery(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let entries = gallery();
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match cli.format {
        Format::Text => {
            for e in &entries {
                writeln!(out, "{:<24} {:<16} {}", e.name, e.kind, e.title).map_err(io)?;
            }
        }
        Format::Json => {
            let list: Vec<Value> =
                entries.iter().map(|e| serde_json::json!({"name": e.name, "kind": e.kind, "title": e.title})).collect();
            writeln!(out, "{}", Value::Array(list)).map_err(io)?;
        }
    }
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
        for e in &entries {
            let file = InstanceFile::new(e.name, (e.build)()?);
            write_json(&dir.join(format!("{}.json", e.name)), &file)?;
        }
    }
    Ok(0)
}

/// Run a parsed command line; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Check { path } => cmd_check(cli, path, out),
        Command::Build { path, construction } => cmd_build(cli, path, *construction, out),
        Command::Equiv { a, b } => cmd_equiv(cli, a, b, out),
        Command::Gallery => cmd_gallery(cli, out),
    };
    match result {
        Ok(code) => code,
        Err(Error::Law(report)) => {
            let _ = emit_report(cli, "precondition", &report, out);
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

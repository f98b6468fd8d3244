//! Finite polynomial monads `X ↦ Σ_{s:S} X^{P(s)}` presented by an element
//! `ok`, a sequencing map `seq` and a position splitting map `split`, together
//! with their Kleisli maps and transposed dependently graded comonads.

mod graded;
mod kleisli;

pub use graded::*;
pub use kleisli::*;

use std::collections::HashMap;
use std::fmt;

use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(pub u32);

impl Shape {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

/// A map `P(s) -> S`, one shape per position.
pub type Filling = Vec<Shape>;

/// Every tuple whose `i`-th entry is below `radices[i]`, in lexicographic
/// order with the first entry most significant.
pub fn choices(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(radices.len())];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..r).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every function `{0..n} -> {0..m}` as a table.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    choices(&vec![m; n])
}

/// Shapes `S` with a finite set of positions `P(s)` for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Container {
    pub shapes: Vec<String>,
    pub positions: Vec<Vec<String>>,
}

impl Container {
    pub fn new(shapes: Vec<String>, positions: Vec<Vec<String>>) -> Result<Container> {
        if shapes.len() != positions.len() {
            return Err(Error::ill_typed(
                "container",
                format!("{} shapes but {} position sets", shapes.len(), positions.len()),
            ));
        }
        for (i, s) in shapes.iter().enumerate() {
            if shapes[..i].contains(s) {
                return Err(Error::Duplicate { kind: "shape", name: s.clone() });
            }
        }
        Ok(Container { shapes, positions })
    }

    pub fn num_shapes(&self) -> usize {
        self.shapes.len()
    }

    pub fn shapes(&self) -> impl Iterator<Item = Shape> {
        (0..self.shapes.len() as u32).map(Shape)
    }

    pub fn arity(&self, s: Shape) -> usize {
        self.positions[s.ix()].len()
    }

    pub fn shape_name(&self, s: Shape) -> &str {
        &self.shapes[s.ix()]
    }

    pub fn shape(&self, name: &str) -> Option<Shape> {
        self.shapes.iter().position(|n| n == name).map(|i| Shape(i as u32))
    }

    pub fn position_name(&self, s: Shape, p: usize) -> &str {
        &self.positions[s.ix()][p]
    }

    /// Every filling of the positions of `s`.
    pub fn fillings(&self, s: Shape) -> Vec<Filling> {
        functions(self.arity(s), self.num_shapes())
            .into_iter()
            .map(|t| t.into_iter().map(|v| Shape(v as u32)).collect())
            .collect()
    }

    /// `|Σ_s Y^{P(s)}|`.
    pub fn extension_size(&self, y: usize) -> u128 {
        self.shapes().map(|s| (y as u128).saturating_pow(self.arity(s) as u32)).fold(0, u128::saturating_add)
    }

    /// Number of `(s, f1, f2)` triples the associativity laws range over.
    pub fn associativity_size(&self) -> u128 {
        let per_position = self.extension_size(self.num_shapes());
        self.shapes().map(|s| per_position.saturating_pow(self.arity(s) as u32)).fold(0, u128::saturating_add)
    }

    /// The elements `(x, p)` of `Σ_x P(grade(x))` in lexicographic order.
    pub fn sigma(&self, grade: &[Shape]) -> Vec<(usize, usize)> {
        grade.iter().enumerate().flat_map(|(x, &s)| (0..self.arity(s)).map(move |p| (x, p))).collect()
    }

    /// Start of each fibre of `Σ_x P(grade(x))` in the flattened order.
    pub fn offsets(&self, grade: &[Shape]) -> Vec<usize> {
        grade
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += self.arity(s);
                Some(start)
            })
            .collect()
    }

    fn describe_filling(&self, f: &[Shape]) -> String {
        let names: Vec<&str> = f.iter().map(|&s| self.shape_name(s)).collect();
        format!("[{}]", names.join(","))
    }
}

/// A monad structure on the polynomial functor of a container, tabulated.
#[derive(Clone, Debug)]
pub struct PolyMonad {
    pub name: String,
    pub container: Container,
    pub ok: Shape,
    /// `seq(s, f)` for every shape and filling.
    pub seq: HashMap<(Shape, Filling), Shape>,
    /// `split(s, f, p) = (p₁, p₂)` with `p₁ ∈ P(s)`, `p₂ ∈ P(f(p₁))`, for
    /// every `p ∈ P(seq(s, f))`.
    pub split: HashMap<(Shape, Filling, usize), (usize, usize)>,
}

impl PolyMonad {
    pub fn tabulate(
        name: impl Into<String>,
        container: Container,
        ok: Shape,
        seq: impl Fn(Shape, &[Shape]) -> Shape,
        split: impl Fn(Shape, &[Shape], usize) -> (usize, usize),
    ) -> Result<PolyMonad> {
        let mut seq_t = HashMap::new();
        let mut split_t = HashMap::new();
        for s in container.shapes() {
            for f in container.fillings(s) {
                let t = seq(s, &f);
                if t.ix() >= container.num_shapes() {
                    return Err(Error::ill_typed("seq", format!("value {} out of range", t.0)));
                }
                for p in 0..container.arity(t) {
                    split_t.insert((s, f.clone(), p), split(s, &f, p));
                }
                seq_t.insert((s, f), t);
            }
        }
        let m = PolyMonad { name: name.into(), container, ok, seq: seq_t, split: split_t };
        m.validate()?;
        Ok(m)
    }

    pub fn seq(&self, s: Shape, f: &[Shape]) -> Result<Shape> {
        self.seq.get(&(s, f.to_vec())).copied().ok_or_else(|| Error::Missing {
            table: "seq",
            key: format!("({}, {})", self.container.shape_name(s), self.container.describe_filling(f)),
        })
    }

    pub fn split(&self, s: Shape, f: &[Shape], p: usize) -> Result<(usize, usize)> {
        self.split.get(&(s, f.to_vec(), p)).copied().ok_or_else(|| Error::Missing {
            table: "split",
            key: format!("({}, {}, {p})", self.container.shape_name(s), self.container.describe_filling(f)),
        })
    }

    /// Totality and typing of the tables.
    pub fn validate(&self) -> Result<()> {
        let c = &self.container;
        if self.ok.ix() >= c.num_shapes() {
            return Err(Error::Dangling { kind: "shape", name: format!("#{}", self.ok.0) });
        }
        for s in c.shapes() {
            for f in c.fillings(s) {
                let t = self.seq(s, &f)?;
                if t.ix() >= c.num_shapes() {
                    return Err(Error::ill_typed("seq", format!("value {} out of range", t.0)));
                }
                for p in 0..c.arity(t) {
                    let (p1, p2) = self.split(s, &f, p)?;
                    if p1 >= c.arity(s) || p2 >= c.arity(f[p1]) {
                        return Err(Error::ill_typed(
                            "split",
                            format!("({}, {}, {p}) = ({p1}, {p2})", c.shape_name(s), c.describe_filling(&f)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `seq(s, p ↦ f2(split(s, f1, p)))`, the left side of sequencing
    /// associativity, with `f2` indexed by positions of `s`.
    fn seq_after_split(&self, s: Shape, f1: &[Shape], f2: &[Filling]) -> Result<(Shape, Filling)> {
        let inner = self.seq(s, f1)?;
        let along = (0..self.container.arity(inner))
            .map(|q| self.split(s, f1, q).map(|(p1, p2)| f2[p1][p2]))
            .collect::<Result<Filling>>()?;
        Ok((self.seq(inner, &along)?, along))
    }
}

impl fmt::Display for PolyMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} shapes, ok = {})", self.name, self.container.num_shapes(), self.container.shape_name(self.ok))
    }
}

/// Largest [`Container::associativity_size`] that [`check_poly_monad`] accepts.
pub const POLY_LAW_CAP: u128 = 10_000_000;

/// The six monad laws in `ok`/`seq`/`split` form, exhaustively. Split laws
/// are only examined where the corresponding sequencing law makes them
/// well-typed.
pub fn check_poly_monad(m: &PolyMonad) -> Result<Report> {
    let c = &m.container;
    let size = c.associativity_size();
    if size > POLY_LAW_CAP {
        return Err(Error::SampleCap { what: format!("{} associativity", m.name), size, cap: POLY_LAW_CAP });
    }
    m.validate()?;
    let mut report = Report::new(format!("polynomial monad {}", m.name));
    let ok_filling = |s: Shape| vec![m.ok; c.arity(s)];
    let sname = |s: Shape| c.shape_name(s).to_owned();

    let mut ru_seq = Tally::new(Law::PolyRightUnitSeq);
    let mut ru_split = Tally::new(Law::PolyRightUnitSplit);
    let mut lu_seq = Tally::new(Law::PolyLeftUnitSeq);
    let mut lu_split = Tally::new(Law::PolyLeftUnitSplit);
    for s in c.shapes() {
        let f = ok_filling(s);
        let t = m.seq(s, &f)?;
        ru_seq.record(t == s, || witness! {"s" => sname(s), "seq(s, _ ↦ ok)" => sname(t)});
        if t == s {
            for p in 0..c.arity(s) {
                let (p1, _) = m.split(s, &f, p)?;
                ru_split
                    .record(p1 == p, || witness! {"s" => sname(s), "p" => c.position_name(s, p), "fst split" => p1});
            }
        }
        let g = vec![s; c.arity(m.ok)];
        let t = m.seq(m.ok, &g)?;
        lu_seq.record(t == s, || witness! {"s" => sname(s), "seq(ok, _ ↦ s)" => sname(t)});
        if t == s && c.arity(m.ok) > 0 {
            for p in 0..c.arity(s) {
                let (_, p2) = m.split(m.ok, &g, p)?;
                lu_split
                    .record(p2 == p, || witness! {"s" => sname(s), "p" => c.position_name(s, p), "snd split" => p2});
            }
        }
    }
    report.tally(ru_seq);
    report.tally(ru_split);
    report.tally(lu_seq);
    report.tally(lu_split);

    let mut a_seq = Tally::new(Law::PolySeqAssociativity);
    let mut a_split = Tally::new(Law::PolySplitAssociativity);
    for s in c.shapes() {
        for f1 in c.fillings(s) {
            let per_position: Vec<Vec<Filling>> = f1.iter().map(|&t| c.fillings(t)).collect();
            let radices: Vec<usize> = per_position.iter().map(Vec::len).collect();
            for pick in choices(&radices) {
                let f2: Vec<Filling> = pick.iter().enumerate().map(|(p, &i)| per_position[p][i].clone()).collect();
                let (lhs, along) = m.seq_after_split(s, &f1, &f2)?;
                let inner: Filling = (0..c.arity(s)).map(|p| m.seq(f1[p], &f2[p])).collect::<Result<_>>()?;
                let rhs = m.seq(s, &inner)?;
                let w = || {
                    let f2: Vec<String> = f2.iter().map(|f| c.describe_filling(f)).collect();
                    witness! {"s" => sname(s), "f1" => c.describe_filling(&f1), "f2" => format!("[{}]", f2.join(","))}
                };
                a_seq.record(lhs == rhs, || w().with("lhs", sname(lhs)).with("rhs", sname(rhs)));
                if lhs != rhs {
                    continue;
                }
                let mid = m.seq(s, &f1)?;
                for q in 0..c.arity(lhs) {
                    let (q1, q2) = m.split(mid, &along, q)?;
                    let (p1, r) = m.split(s, &f1, q1)?;
                    let (p1b, u) = m.split(s, &inner, q)?;
                    let (rb, q2b) = m.split(f1[p1b], &f2[p1b], u)?;
                    let ok = (p1, r, q2) == (p1b, rb, q2b);
                    a_split.record(ok, || {
                        w().with("q", q)
                            .with("lhs", format!("({p1},{r},{q2})"))
                            .with("rhs", format!("({p1b},{rb},{q2b})"))
                    });
                }
            }
        }
    }
    report.tally(a_seq);
    report.tally(a_split);
    Ok(report)
}

// ---- instances ----

/// The writer monad `X ↦ X × W` of a finite monoid: shapes `W`, one position
/// each, `seq(w, f) = w·f(∗)`. A multiplication that is not associative and
/// unital is rejected with the failing law.
pub fn writer_container<S: AsRef<str>>(
    elements: &[S],
    unit: usize,
    mult: impl Fn(usize, usize) -> usize,
) -> Result<PolyMonad> {
    let shapes: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
    let positions = vec![vec!["*".to_owned()]; shapes.len()];
    let c = Container::new(shapes, positions)?;
    if unit >= c.num_shapes() {
        return Err(Error::Dangling { kind: "monoid unit", name: unit.to_string() });
    }
    let m = PolyMonad::tabulate(
        "writer",
        c,
        Shape(unit as u32),
        |w, f| Shape(mult(w.ix(), f[0].ix()) as u32),
        |_, _, _| (0, 0),
    )?;
    check_poly_monad(&m)?.into_result()?;
    Ok(m)
}

/// Table digits of a function, used to name state shapes.
fn digits(t: &[usize]) -> String {
    t.iter().map(|v| v.to_string()).collect()
}

/// The state monad `X ↦ (X × S)^S` for `S = {0..n}`: a shape is the state
/// transition `σ: S -> S`, positions are initial states, `ok = id`,
/// `seq(σ, τ)(s) = τ(s)(σ(s))` and `split(σ, τ, s) = (s, σ(s))`.
pub fn state_container(n: usize) -> Result<PolyMonad> {
    if n == 0 {
        return Err(Error::ill_typed("state set", "must be nonempty"));
    }
    let tables = functions(n, n);
    let index: HashMap<Vec<usize>, Shape> =
        tables.iter().enumerate().map(|(i, t)| (t.clone(), Shape(i as u32))).collect();
    let states: Vec<String> = (0..n).map(|s| s.to_string()).collect();
    let c = Container::new(tables.iter().map(|t| digits(t)).collect(), vec![states; tables.len()])?;
    let ok = index[&(0..n).collect::<Vec<_>>()];
    let seq = |sigma: Shape, tau: &[Shape]| {
        let run: Vec<usize> = (0..n).map(|s| tables[tau[s].ix()][tables[sigma.ix()][s]]).collect();
        index[&run]
    };
    let split = |sigma: Shape, _: &[Shape], s: usize| (s, tables[sigma.ix()][s]);
    PolyMonad::tabulate("state", c, ok, seq, split)
}

/// The table `S -> S` of a state shape.
pub fn state_transition(m: &PolyMonad, sigma: Shape) -> Vec<usize> {
    m.container.shape_name(sigma).chars().map(|ch| ch.to_digit(10).expect("digit-named shape") as usize).collect()
}

pub const TRUE: Shape = Shape(0);
pub const FALSE: Shape = Shape(1);

/// The Maybe monad `X ↦ X + 1` as the container `BoolIf: Bool -> Set`:
/// `ok = True`, `seq = and`, `split(True, h, p) = (⊤, p)`.
pub fn maybe_container() -> Result<PolyMonad> {
    let c = Container::new(vec!["True".into(), "False".into()], vec![vec!["⊤".into()], vec![]])?;
    let and = |b: Shape, h: &[Shape]| if b == TRUE { h[0] } else { FALSE };
    PolyMonad::tabulate("maybe", c, TRUE, and, |_, _, p| (0, p))
}

/// Checks that `(X × S)^S -> Σ_{σ ∈ S^S} X^S`, `φ ↦ (snd∘φ, fst∘φ)`, is a
/// bijection with the evident inverse.
pub fn check_state_encoding(states: usize, x: usize) -> Report {
    let mut t = Tally::new(Law::Equivalence);
    let pairs = x * states;
    let mut seen = std::collections::HashSet::new();
    for phi in functions(states, pairs) {
        let sigma: Vec<usize> = phi.iter().map(|&v| v % states).collect();
        let leaves: Vec<usize> = phi.iter().map(|&v| v / states).collect();
        let back: Vec<usize> = leaves.iter().zip(&sigma).map(|(&l, &s)| l * states + s).collect();
        t.record(back == phi && seen.insert((sigma.clone(), leaves.clone())), || {
            witness! {"phi" => digits(&phi)}
        });
    }
    let expected = (states as u128).pow(states as u32) * (x as u128).pow(states as u32);
    t.record(seen.len() as u128 == expected, || witness! {"image size" => seen.len(), "expected" => expected});
    let mut report = Report::new(format!("state encoding |S|={states}, |X|={x}"));
    report.tally(t);
    report
}

/// A monad table with one entry changed so that a chosen law fails.
pub struct PolyMutant {
    pub name: &'static str,
    pub breaks: Law,
    pub monad: PolyMonad,
}

/// One mutant per monad law. Split entries also feed the left side of
/// sequencing associativity, so split mutants break that law as well.
pub fn poly_mutants() -> Result<Vec<PolyMutant>> {
    let writer = writer_container(&["0", "1"], 0, |a, b| (a + b) % 2)?;
    let state = state_container(2)?;
    let sh = |m: &PolyMonad, name: &str| m.container.shape(name).expect("named shape");
    let (s00, id, s10, s11) = (sh(&state, "00"), sh(&state, "01"), sh(&state, "10"), sh(&state, "11"));
    let (w0, w1) = (sh(&writer, "0"), sh(&writer, "1"));

    let mut right_seq = writer.clone();
    right_seq.seq.insert((w1, vec![w0]), w0);
    let mut left_seq = writer.clone();
    left_seq.seq.insert((w0, vec![w1]), w0);
    let mut right_split = state.clone();
    right_split.split.insert((s10, vec![id, id], 0), (1, 1));
    let mut left_split = state.clone();
    left_split.split.insert((id, vec![s10, s10], 0), (0, 1));
    let mut assoc_seq = state.clone();
    assoc_seq.seq.insert((s10, vec![s00, s11]), s10);
    let mut assoc_split = state.clone();
    assoc_split.split.insert((s10, vec![s00, s11], 0), (1, 0));

    let out = vec![
        PolyMutant { name: "writer-seq-right-unit", breaks: Law::PolyRightUnitSeq, monad: right_seq },
        PolyMutant { name: "state-split-right-unit", breaks: Law::PolyRightUnitSplit, monad: right_split },
        PolyMutant { name: "writer-seq-left-unit", breaks: Law::PolyLeftUnitSeq, monad: left_seq },
        PolyMutant { name: "state-split-left-unit", breaks: Law::PolyLeftUnitSplit, monad: left_split },
        PolyMutant { name: "state-seq-associativity", breaks: Law::PolySeqAssociativity, monad: assoc_seq },
        PolyMutant { name: "state-split-associativity", breaks: Law::PolySplitAssociativity, monad: assoc_split },
    ];
    for m in &out {
        m.monad.validate()?;
    }
    Ok(out)
}

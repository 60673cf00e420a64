//! Forward-chaining inference over contact-geometric facts about open books.
//!
//! A script declares subjects (open books, optionally with descriptors and
//! foliation data), structural relations between them (capping, twisting,
//! composing, gluing, stabilized surgery), and asserted facts. The engine
//! closes the fact set under a fixed rule table; every derived fact carries
//! the rule that produced it and the facts it consumed, so each conclusion
//! is reproducible from its derivation tree.
//!
//! Rules encode maps exactly in the direction they go: a map sending the
//! invariant of X onto the invariant of Y lets nonvanishing travel from Y's
//! value back to X and vanishing travel forward, and no converse is ever
//! inferred. All rules are monotone additions, so the closure is a least
//! fixed point and independent of application order; the tests exercise
//! randomized orders.
//!
//! The engine also reads descriptors where it can compute: genus-one,
//! one-boundary books over the `{a, b}` alphabet are classified, periodic
//! ones yield tightness and fillability from their twist coefficients, and
//! attached foliation data feeds the U-power membership criterion.

use crate::dthree::f_table;
use crate::foliations::{u_image_report, FoliationData, UImageReport};
use crate::mcg::{classify, NormalForm3};
use crate::openbook::OpenBookDesc;
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InferError {
    #[error("unknown subject {0:?}: not declared in books, foliations, subjects or any operation")]
    UnknownSubject(String),
    #[error("contradiction on {subject:?}: c_nonzero and c_zero both derived\n--- first ---\n{nonzero_tree}--- second ---\n{zero_tree}")]
    Contradiction { subject: String, nonzero_tree: String, zero_tree: String },
    #[error("operation inconsistent with declared descriptors: {0}")]
    InconsistentOp(String),
    #[error("descriptor for {subject:?} is invalid: {detail}")]
    BadDescriptor { subject: String, detail: String },
}

/// Contact-geometric judgments about a subject.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    CNonzero,
    CZero,
    Tight,
    Overtwisted,
    SteinFillable,
    #[serde(rename = "condition_R")]
    ConditionR,
    InImUAllD,
    SgGe(u32),
    SgEq(u32),
    C1Nontorsion,
    BindingBoundOk,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::CNonzero => write!(f, "c_nonzero"),
            Predicate::CZero => write!(f, "c_zero"),
            Predicate::Tight => write!(f, "tight"),
            Predicate::Overtwisted => write!(f, "overtwisted"),
            Predicate::SteinFillable => write!(f, "stein_fillable"),
            Predicate::ConditionR => write!(f, "condition_R"),
            Predicate::InImUAllD => write!(f, "in_im_U_all_d"),
            Predicate::SgGe(n) => write!(f, "sg_ge({n})"),
            Predicate::SgEq(n) => write!(f, "sg_eq({n})"),
            Predicate::C1Nontorsion => write!(f, "c1_nontorsion"),
            Predicate::BindingBoundOk => write!(f, "binding_bound_ok"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fact {
    pub subject: String,
    pub predicate: Predicate,
}

impl Fact {
    pub fn new(subject: impl Into<String>, predicate: Predicate) -> Self {
        Fact { subject: subject.into(), predicate }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.predicate, self.subject)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Asserted,
    Derived { rule: String, premises: Vec<usize> },
}

/// Structural relations between subjects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptOp {
    /// `to` is `from` with one boundary component capped off. `stein`
    /// asserts a Stein structure on the capping cobordism; `companion`
    /// names the book of the monodromy composed with the inverse twist
    /// around a curve parallel to the capped boundary.
    Cap {
        from: String,
        to: String,
        label: String,
        #[serde(default)]
        stein: bool,
        #[serde(default)]
        companion: Option<String>,
    },
    /// `to` is `from` with the monodromy composed with `t_curve^{-1}` for a
    /// boundary-parallel curve.
    Twist {
        from: String,
        to: String,
        #[serde(default)]
        curve: Option<String>,
    },
    /// `to` is the composition of the monodromies of `left` and `right` on
    /// the same page.
    Compose { left: String, right: String, to: String },
    /// `to` is `left` glued to `right` along boundary pairs.
    Glue {
        left: String,
        right: String,
        to: String,
        #[serde(default)]
        pairs: Option<Vec<(String, String)>>,
    },
    /// `to` is `from` with two boundary components glued to each other.
    SelfGlue {
        from: String,
        to: String,
        #[serde(default)]
        pair: Option<(String, String)>,
    },
    /// `to` is the contact-surgery book of a Legendrian stabilization of a
    /// knot whose surgery book is `from`.
    StabSurgery { from: String, to: String },
}

impl ScriptOp {
    fn endpoints(&self) -> Vec<&String> {
        match self {
            ScriptOp::Cap { from, to, companion, .. } => {
                let mut v = vec![from, to];
                if let Some(c) = companion {
                    v.push(c);
                }
                v
            }
            ScriptOp::Twist { from, to, .. } => vec![from, to],
            ScriptOp::Compose { left, right, to } => vec![left, right, to],
            ScriptOp::Glue { left, right, to, .. } => vec![left, right, to],
            ScriptOp::SelfGlue { from, to, .. } => vec![from, to],
            ScriptOp::StabSurgery { from, to } => vec![from, to],
        }
    }
}

/// An inference script: subjects, structure, and asserted facts.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Script {
    /// Extra subject ids with no descriptor and no operation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subjects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub books: BTreeMap<String, OpenBookDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub foliations: BTreeMap<String, FoliationData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ops: Vec<ScriptOp>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<Fact>,
}

/// A rule of the table: stable id plus a self-contained statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
}

/// The rule table. The statements are the table of record; the test suite
/// checks them against the copy in `resources/inference_rules.json`.
pub const RULES: &[Rule] = &[
    Rule {
        id: "R-comult",
        statement: "If both factors of a composed monodromy have nonvanishing contact invariant, so does the composition.",
    },
    Rule {
        id: "R-cap",
        statement: "Capping off induces a map sending the capped book's invariant onto the uncapped book's; a nonvanishing uncapped invariant forces a nonvanishing capped one, and a vanishing capped invariant forces vanishing upstairs.",
    },
    Rule {
        id: "R-twist",
        statement: "Inverse surgery along a curve parallel to a boundary component induces a map sending the book's invariant to that of the book twisted by the inverse Dehn twist; nonvanishing travels back and vanishing travels forward.",
    },
    Rule {
        id: "R-stein",
        statement: "A Stein fillable contact structure has nonvanishing contact invariant.",
    },
    Rule {
        id: "R-stein-obstruction",
        statement: "If the capping cobordism carries a compatible Stein structure, the invariant of the companion book (monodromy composed with the inverse boundary-parallel twist) vanishes.",
    },
    Rule {
        id: "R-stab",
        statement: "Contact surgery on a Legendrian knot and on its stabilization are related by a map sending the unstabilized surgery's invariant to the stabilized one's; nonvanishing travels back and vanishing travels forward.",
    },
    Rule {
        id: "R-glue",
        statement: "Gluing open books along boundary pairs preserves nonvanishing of the contact invariant: if every input invariant is nonzero, so is the glued book's. Self-gluing likewise.",
    },
    Rule {
        id: "R-planar",
        statement: "A planar contact structure has invariant in the image of every power of U; escaping some power (condition R) forces support genus at least one.",
    },
    Rule {
        id: "R-nontor",
        statement: "Nonvanishing invariant with non-torsion first Chern class escapes some power of U (condition R).",
    },
    Rule {
        id: "R-capR",
        statement: "The capping map is U-equivariant, so if the uncapped book's invariant escapes some power of U, the capped book's invariant does too.",
    },
    Rule {
        id: "R-OT-sg",
        statement: "Every overtwisted contact structure has support genus zero.",
    },
    Rule {
        id: "R-periodic",
        statement: "A periodic monodromy is tight exactly when every fractional Dehn twist coefficient is nonnegative, in which case the structure is Stein fillable; otherwise it is overtwisted with vanishing invariant.",
    },
    Rule {
        id: "R-bound",
        statement: "A tight structure supported by a genus-one periodic open book with r binding components satisfies the binding bound r >= -1 - 4 d3.",
    },
    Rule {
        id: "R-pa",
        statement: "For a genus-one pseudo-Anosov book whose foliations carry exactly two singularities on every boundary component, a fractional Dehn twist coefficient below 1 puts the invariant in the image of every power of U.",
    },
    Rule {
        id: "R-dtwist",
        statement: "Within the pseudo-Anosov normal-form family at fixed tuple, condition R at two full twists propagates to any number of full twists at least two, by Stein naturality of the added positive twists.",
    },
];

fn rule(id: &str) -> String {
    debug_assert!(RULES.iter().any(|r| r.id == id), "unknown rule id {id}");
    id.to_owned()
}

/// The closed fact set with provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Closure {
    pub facts: Vec<(Fact, Provenance)>,
}

impl Closure {
    pub fn contains(&self, subject: &str, predicate: &Predicate) -> bool {
        self.find(subject, predicate).is_some()
    }

    pub fn find(&self, subject: &str, predicate: &Predicate) -> Option<usize> {
        self.facts
            .iter()
            .position(|(f, _)| f.subject == subject && f.predicate == *predicate)
    }

    /// The `(subject, predicate)` set, the order-independent content.
    pub fn fact_set(&self) -> BTreeSet<Fact> {
        self.facts.iter().map(|(f, _)| f.clone()).collect()
    }

    pub fn derived(&self) -> impl Iterator<Item = &(Fact, Provenance)> {
        self.facts.iter().filter(|(_, p)| matches!(p, Provenance::Derived { .. }))
    }

    /// Render the derivation tree rooted at fact index `idx`.
    pub fn derivation_tree(&self, idx: usize) -> String {
        let mut out = String::new();
        self.render_tree(idx, 0, &mut out);
        out
    }

    fn render_tree(&self, idx: usize, depth: usize, out: &mut String) {
        let (fact, provenance) = &self.facts[idx];
        let indent = "  ".repeat(depth);
        match provenance {
            Provenance::Asserted => {
                out.push_str(&format!("{indent}{fact}  [asserted]\n"));
            }
            Provenance::Derived { rule, premises } => {
                out.push_str(&format!("{indent}{fact}  [by {rule}]\n"));
                for &p in premises {
                    self.render_tree(p, depth + 1, out);
                }
            }
        }
    }

    /// Rule ids along the spine from the leaves to `idx` (each node after
    /// its first premise subtree).
    pub fn rule_spine(&self, idx: usize) -> Vec<String> {
        let mut spine = Vec::new();
        let mut cursor = Some(idx);
        while let Some(i) = cursor {
            match &self.facts[i].1 {
                Provenance::Asserted => cursor = None,
                Provenance::Derived { rule, premises } => {
                    spine.push(rule.clone());
                    cursor = premises.first().copied();
                }
            }
        }
        spine.reverse();
        spine
    }
}

/// Classification of a subject's descriptor, where the engine can compute.
struct SubjectInfo {
    normal_form: Option<NormalForm3>,
    u_image: Option<UImageReport>,
}

struct Context {
    subjects: Vec<String>,
    info: BTreeMap<String, SubjectInfo>,
    ops: Vec<ScriptOp>,
}

fn build_context(script: &Script) -> Result<Context, InferError> {
    let mut subjects: BTreeSet<String> = script.subjects.iter().cloned().collect();
    subjects.extend(script.books.keys().cloned());
    subjects.extend(script.foliations.keys().cloned());
    for op in &script.ops {
        subjects.extend(op.endpoints().into_iter().cloned());
    }
    for fact in &script.facts {
        if !subjects.contains(&fact.subject) {
            return Err(InferError::UnknownSubject(fact.subject.clone()));
        }
    }

    verify_ops(script)?;

    let mut info = BTreeMap::new();
    for id in &subjects {
        let normal_form = script.books.get(id).and_then(|book| {
            let one_boundary = book.genus == 1 && book.boundary.len() == 1;
            let standard_alphabet =
                book.monodromy.support().iter().all(|c| *c == "a" || *c == "b");
            (one_boundary && standard_alphabet).then(|| classify(&book.monodromy).ok()).flatten()
        });
        if let Some(book) = script.books.get(id) {
            book.validate().map_err(|e| InferError::BadDescriptor {
                subject: id.clone(),
                detail: e.to_string(),
            })?;
        }
        let u_image = script.foliations.get(id).map(u_image_report);
        info.insert(id.clone(), SubjectInfo { normal_form, u_image });
    }
    Ok(Context { subjects: subjects.into_iter().collect(), info, ops: script.ops.clone() })
}

/// Cross-check operations against descriptors when both endpoints carry one.
fn verify_ops(script: &Script) -> Result<(), InferError> {
    let book = |id: &String| script.books.get(id);
    for op in &script.ops {
        match op {
            ScriptOp::Cap { from, to, label, .. } => {
                if let (Some(a), Some(b)) = (book(from), book(to)) {
                    let capped = a.cap_off(label).map_err(|e| {
                        InferError::InconsistentOp(format!("cap {from} -> {to}: {e}"))
                    })?;
                    if capped != *b {
                        return Err(InferError::InconsistentOp(format!(
                            "cap {from} -> {to}: capping {label:?} does not give the declared descriptor"
                        )));
                    }
                }
            }
            ScriptOp::Compose { left, right, to } => {
                if let (Some(a), Some(b), Some(c)) = (book(left), book(right), book(to)) {
                    let same_surface = a.surface() == b.surface() && b.surface() == c.surface();
                    if !same_surface || a.monodromy.compose(&b.monodromy) != c.monodromy {
                        return Err(InferError::InconsistentOp(format!(
                            "compose {left} * {right} -> {to}: monodromies do not compose"
                        )));
                    }
                }
            }
            ScriptOp::Twist { from, to, curve } => {
                if let (Some(a), Some(b), Some(curve)) = (book(from), book(to), curve.as_ref()) {
                    let twisted = a.surgery_compose(curve, 1).map_err(|e| {
                        InferError::InconsistentOp(format!("twist {from} -> {to}: {e}"))
                    })?;
                    if twisted.monodromy != b.monodromy {
                        return Err(InferError::InconsistentOp(format!(
                            "twist {from} -> {to}: monodromy is not the inverse twist composition"
                        )));
                    }
                }
            }
            ScriptOp::Glue { left, right, to, pairs } => {
                if let (Some(a), Some(b), Some(c), Some(pairs)) =
                    (book(left), book(right), book(to), pairs.as_ref())
                {
                    let glued = crate::openbook::glue(a, b, pairs, false).map_err(|e| {
                        InferError::InconsistentOp(format!("glue {left} + {right} -> {to}: {e}"))
                    })?;
                    if glued != *c {
                        return Err(InferError::InconsistentOp(format!(
                            "glue {left} + {right} -> {to}: result differs from the declared descriptor"
                        )));
                    }
                }
            }
            ScriptOp::SelfGlue { from, to, pair } => {
                if let (Some(a), Some(b), Some((l1, l2))) = (book(from), book(to), pair.as_ref()) {
                    let glued = crate::openbook::self_glue(a, (l1, l2)).map_err(|e| {
                        InferError::InconsistentOp(format!("self_glue {from} -> {to}: {e}"))
                    })?;
                    if glued != *b {
                        return Err(InferError::InconsistentOp(format!(
                            "self_glue {from} -> {to}: result differs from the declared descriptor"
                        )));
                    }
                }
            }
            ScriptOp::StabSurgery { .. } => {}
        }
    }
    Ok(())
}

/// One candidate conclusion with its premises.
struct Candidate {
    fact: Fact,
    rule: String,
    premises: Vec<usize>,
}

struct Engine<'a> {
    ctx: &'a Context,
    facts: Vec<(Fact, Provenance)>,
    seen: BTreeSet<Fact>,
}

impl<'a> Engine<'a> {
    fn find(&self, subject: &str, predicate: Predicate) -> Option<usize> {
        let key = Fact::new(subject, predicate);
        self.seen.contains(&key).then(|| {
            self.facts.iter().position(|(f, _)| *f == key).expect("indexed fact present")
        })
    }

    fn add(&mut self, fact: Fact, provenance: Provenance) -> Result<bool, InferError> {
        if self.seen.contains(&fact) {
            return Ok(false);
        }
        self.seen.insert(fact.clone());
        self.facts.push((fact.clone(), provenance));
        let closure = Closure { facts: self.facts.clone() };
        let opposite = match fact.predicate {
            Predicate::CNonzero => Some(Predicate::CZero),
            Predicate::CZero => Some(Predicate::CNonzero),
            _ => None,
        };
        if let Some(op) = opposite {
            if let Some(other) = closure.find(&fact.subject, &op) {
                let this = closure.find(&fact.subject, &fact.predicate).unwrap();
                let (nz, z) = if fact.predicate == Predicate::CNonzero {
                    (this, other)
                } else {
                    (other, this)
                };
                return Err(InferError::Contradiction {
                    subject: fact.subject.clone(),
                    nonzero_tree: closure.derivation_tree(nz),
                    zero_tree: closure.derivation_tree(z),
                });
            }
        }
        Ok(true)
    }

    /// All conclusions whose premises are currently present.
    fn candidates(&self) -> Vec<Candidate> {
        let mut out = Vec::new();
        let mut push = |fact: Fact, rule_id: &str, premises: Vec<usize>| {
            out.push(Candidate { fact, rule: rule(rule_id), premises });
        };

        // Map-type rules over the declared operations.
        for op in &self.ctx.ops {
            match op {
                ScriptOp::Cap { from, to, stein, companion, .. } => {
                    if let Some(i) = self.find(from, Predicate::CNonzero) {
                        push(Fact::new(to, Predicate::CNonzero), "R-cap", vec![i]);
                    }
                    if let Some(i) = self.find(to, Predicate::CZero) {
                        push(Fact::new(from, Predicate::CZero), "R-cap", vec![i]);
                    }
                    if let Some(i) = self.find(from, Predicate::ConditionR) {
                        push(Fact::new(to, Predicate::ConditionR), "R-capR", vec![i]);
                    }
                    if *stein {
                        if let Some(companion) = companion {
                            push(Fact::new(companion, Predicate::CZero), "R-stein-obstruction", vec![]);
                        }
                    }
                }
                ScriptOp::Twist { from, to, .. } => {
                    if let Some(i) = self.find(to, Predicate::CNonzero) {
                        push(Fact::new(from, Predicate::CNonzero), "R-twist", vec![i]);
                    }
                    if let Some(i) = self.find(from, Predicate::CZero) {
                        push(Fact::new(to, Predicate::CZero), "R-twist", vec![i]);
                    }
                }
                ScriptOp::Compose { left, right, to } => {
                    if let (Some(i), Some(j)) =
                        (self.find(left, Predicate::CNonzero), self.find(right, Predicate::CNonzero))
                    {
                        push(Fact::new(to, Predicate::CNonzero), "R-comult", vec![i, j]);
                    }
                }
                ScriptOp::Glue { left, right, to, .. } => {
                    if let (Some(i), Some(j)) =
                        (self.find(left, Predicate::CNonzero), self.find(right, Predicate::CNonzero))
                    {
                        push(Fact::new(to, Predicate::CNonzero), "R-glue", vec![i, j]);
                    }
                }
                ScriptOp::SelfGlue { from, to, .. } => {
                    if let Some(i) = self.find(from, Predicate::CNonzero) {
                        push(Fact::new(to, Predicate::CNonzero), "R-glue", vec![i]);
                    }
                }
                ScriptOp::StabSurgery { from, to } => {
                    if let Some(i) = self.find(to, Predicate::CNonzero) {
                        push(Fact::new(from, Predicate::CNonzero), "R-stab", vec![i]);
                    }
                    if let Some(i) = self.find(from, Predicate::CZero) {
                        push(Fact::new(to, Predicate::CZero), "R-stab", vec![i]);
                    }
                }
            }
        }

        // Predicate-level rules over every subject.
        for subject in &self.ctx.subjects {
            if let Some(i) = self.find(subject, Predicate::SteinFillable) {
                push(Fact::new(subject, Predicate::CNonzero), "R-stein", vec![i]);
            }
            if let Some(i) = self.find(subject, Predicate::ConditionR) {
                push(Fact::new(subject, Predicate::SgGe(1)), "R-planar", vec![i]);
            }
            if let (Some(i), Some(j)) = (
                self.find(subject, Predicate::CNonzero),
                self.find(subject, Predicate::C1Nontorsion),
            ) {
                push(Fact::new(subject, Predicate::ConditionR), "R-nontor", vec![i, j]);
            }
            if let Some(i) = self.find(subject, Predicate::Overtwisted) {
                push(Fact::new(subject, Predicate::SgEq(0)), "R-OT-sg", vec![i]);
            }

            let info = &self.ctx.info[subject];
            if let Some(NormalForm3::Periodic { fdtc }) = &info.normal_form {
                if *fdtc >= Rat::zero() {
                    push(Fact::new(subject, Predicate::Tight), "R-periodic", vec![]);
                    push(Fact::new(subject, Predicate::SteinFillable), "R-periodic", vec![]);
                } else {
                    push(Fact::new(subject, Predicate::Overtwisted), "R-periodic", vec![]);
                    push(Fact::new(subject, Predicate::CZero), "R-periodic", vec![]);
                }
                // The binding bound needs a defined grading for k_r/m.
                if let Some(i) = self.find(subject, Predicate::Tight) {
                    if f_table(*fdtc).is_ok() {
                        push(Fact::new(subject, Predicate::BindingBoundOk), "R-bound", vec![i]);
                    }
                }
            }
            if let Some(UImageReport::InImUAllD) = &info.u_image {
                push(Fact::new(subject, Predicate::InImUAllD), "R-pa", vec![]);
            }
        }

        // Twist-family propagation between classified pseudo-Anosov books.
        for from in &self.ctx.subjects {
            let Some(NormalForm3::PseudoAnosov { d: 2, n }) = &self.ctx.info[from].normal_form
            else {
                continue;
            };
            let Some(i) = self.find(from, Predicate::ConditionR) else { continue };
            for to in &self.ctx.subjects {
                if to == from {
                    continue;
                }
                if let Some(NormalForm3::PseudoAnosov { d, n: n2 }) = &self.ctx.info[to].normal_form {
                    if *d >= 2 && n2 == n {
                        push(Fact::new(to, Predicate::ConditionR), "R-dtwist", vec![i]);
                    }
                }
            }
        }
        out
    }
}

/// Run the engine to its least fixed point in deterministic order.
pub fn run(script: &Script) -> Result<Closure, InferError> {
    run_seeded(script, None)
}

/// Run with a shuffled rule-application order; the closure set is the same
/// for every seed (tested, not assumed).
pub fn run_seeded(script: &Script, seed: Option<u64>) -> Result<Closure, InferError> {
    let ctx = build_context(script)?;
    let mut engine = Engine { ctx: &ctx, facts: Vec::new(), seen: BTreeSet::new() };
    let mut rng_state = seed.unwrap_or(0).wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };

    let mut asserted: Vec<Fact> = script.facts.clone();
    if seed.is_some() {
        shuffle(&mut asserted, &mut next);
    }
    for fact in asserted {
        engine.add(fact, Provenance::Asserted)?;
    }

    loop {
        let mut candidates = engine.candidates();
        if seed.is_some() {
            shuffle(&mut candidates, &mut next);
        }
        let mut grew = false;
        for Candidate { fact, rule, premises } in candidates {
            grew |= engine.add(fact, Provenance::Derived { rule, premises })?;
        }
        if !grew {
            return Ok(Closure { facts: engine.facts });
        }
    }
}

fn shuffle<T>(items: &mut [T], next: &mut impl FnMut() -> u64) {
    for i in (1..items.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::openbook::example_s12_book;

    fn assert_fact(script: &mut Script, subject: &str, predicate: Predicate) {
        script.facts.push(Fact::new(subject, predicate));
    }

    #[test]
    fn comult_rule() {
        let mut script = Script {
            subjects: vec!["phi1".into(), "phi2".into(), "both".into()],
            ..Script::default()
        };
        script.ops.push(ScriptOp::Compose {
            left: "phi1".into(),
            right: "phi2".into(),
            to: "both".into(),
        });
        assert_fact(&mut script, "phi1", Predicate::CNonzero);
        assert_fact(&mut script, "phi2", Predicate::CNonzero);
        let closure = run(&script).unwrap();
        assert!(closure.contains("both", &Predicate::CNonzero));
    }

    #[test]
    fn empty_script_empty_closure() {
        let closure = run(&Script::default()).unwrap();
        assert!(closure.facts.is_empty());
    }

    #[test]
    fn unknown_subject_rejected() {
        let mut script = Script::default();
        assert_fact(&mut script, "ghost", Predicate::Tight);
        assert!(matches!(run(&script).unwrap_err(), InferError::UnknownSubject(_)));
    }

    fn example_pipeline_script() -> Script {
        let book = example_s12_book();
        let capped = book.cap_off("B").unwrap();
        let mut script = Script::default();
        script.books.insert("ob".into(), book);
        script.books.insert("capped".into(), capped);
        script.ops.push(ScriptOp::Cap {
            from: "ob".into(),
            to: "capped".into(),
            label: "B".into(),
            stein: false,
            companion: None,
        });
        assert_fact(&mut script, "ob", Predicate::SteinFillable);
        assert_fact(&mut script, "ob", Predicate::C1Nontorsion);
        script
    }

    #[test]
    fn capping_pipeline_derives_positive_support_genus() {
        let closure = run(&example_pipeline_script()).unwrap();
        let idx = closure.find("capped", &Predicate::SgGe(1)).expect("sg >= 1 derived");
        let spine = closure.rule_spine(idx);
        // The chain runs R-nontor, then R-capR, then R-planar (rooted in
        // R-stein below them).
        let tail = &spine[spine.len() - 3..];
        assert_eq!(tail, ["R-nontor", "R-capR", "R-planar"]);
        let tree = closure.derivation_tree(idx);
        assert!(tree.contains("[asserted]"), "{tree}");
        assert!(tree.contains("condition_R on ob"), "{tree}");
    }

    #[test]
    fn closure_is_order_independent() {
        let script = example_pipeline_script();
        let reference = run(&script).unwrap().fact_set();
        for seed in 0..25 {
            let shuffled = run_seeded(&script, Some(seed)).unwrap().fact_set();
            assert_eq!(shuffled, reference, "seed {seed}");
        }
    }

    #[test]
    fn contradiction_reports_both_derivations() {
        let mut script = Script {
            subjects: vec!["x".into(), "y".into()],
            ..Script::default()
        };
        script.ops.push(ScriptOp::Cap {
            from: "x".into(),
            to: "y".into(),
            label: "B".into(),
            stein: false,
            companion: None,
        });
        assert_fact(&mut script, "x", Predicate::CNonzero);
        assert_fact(&mut script, "y", Predicate::CZero);
        let err = run(&script).unwrap_err();
        let InferError::Contradiction { subject, nonzero_tree, zero_tree } = err else {
            panic!("expected contradiction, got {err:?}");
        };
        // c_nonzero propagates to y while c_zero pulls back to x; whichever
        // subject trips first names both derivations.
        assert!(subject == "x" || subject == "y");
        assert!(nonzero_tree.contains("c_nonzero"));
        assert!(zero_tree.contains("c_zero"));
    }

    #[test]
    fn periodic_books_classified_from_descriptor() {
        use crate::openbook::{CurveInfo, CurveKind, OpenBookDesc, SurfaceSig};
        use crate::words::TwistWord;
        let alphabet = vec![
            CurveInfo::new("a", CurveKind::Nonseparating),
            CurveInfo::new("b", CurveKind::Nonseparating),
        ];
        let book = OpenBookDesc::new(
            SurfaceSig::new(1, vec!["B"]),
            TwistWord::parse("a b").unwrap(),
            alphabet,
        );
        let mut script = Script::default();
        script.books.insert("std".into(), book);
        let closure = run(&script).unwrap();
        for predicate in [
            Predicate::Tight,
            Predicate::SteinFillable,
            Predicate::CNonzero,
            Predicate::BindingBoundOk,
        ] {
            assert!(closure.contains("std", &predicate), "{predicate}");
        }
    }

    #[test]
    fn dtwist_propagates_between_classified_books() {
        use crate::mcg::normal_form_word;
        use crate::openbook::{CurveInfo, CurveKind, OpenBookDesc, SurfaceSig};
        let alphabet = || {
            vec![
                CurveInfo::new("a", CurveKind::Nonseparating),
                CurveInfo::new("b", CurveKind::Nonseparating),
            ]
        };
        let mut script = Script::default();
        script.books.insert(
            "two".into(),
            OpenBookDesc::new(SurfaceSig::new(1, vec!["B"]), normal_form_word(2, &[1]), alphabet()),
        );
        script.books.insert(
            "five".into(),
            OpenBookDesc::new(SurfaceSig::new(1, vec!["B"]), normal_form_word(5, &[1]), alphabet()),
        );
        script.facts.push(Fact::new("two", Predicate::ConditionR));
        let closure = run(&script).unwrap();
        assert!(closure.contains("five", &Predicate::ConditionR));
        assert!(closure.contains("five", &Predicate::SgGe(1)));
    }

    #[test]
    fn inconsistent_cap_op_rejected() {
        let book = example_s12_book();
        let mut script = Script::default();
        script.books.insert("ob".into(), book.clone());
        script.books.insert("capped".into(), book); // wrong descriptor
        script.ops.push(ScriptOp::Cap {
            from: "ob".into(),
            to: "capped".into(),
            label: "B".into(),
            stein: false,
            companion: None,
        });
        assert!(matches!(run(&script).unwrap_err(), InferError::InconsistentOp(_)));
    }

    #[test]
    fn stein_obstruction_fires_from_flag() {
        let mut script = Script {
            subjects: vec!["x".into(), "y".into(), "companion".into()],
            ..Script::default()
        };
        script.ops.push(ScriptOp::Cap {
            from: "x".into(),
            to: "y".into(),
            label: "B".into(),
            stein: true,
            companion: Some("companion".into()),
        });
        let closure = run(&script).unwrap();
        assert!(closure.contains("companion", &Predicate::CZero));
    }

    #[test]
    fn rule_table_matches_resource_file() {
        let raw = include_str!("../resources/inference_rules.json");
        let resource: Vec<serde_json::Value> = serde_json::from_str(raw).unwrap();
        assert_eq!(resource.len(), RULES.len());
        for (entry, rule) in resource.iter().zip(RULES) {
            assert_eq!(entry["id"].as_str().unwrap(), rule.id);
            assert_eq!(entry["statement"].as_str().unwrap(), rule.statement);
        }
    }

    #[test]
    fn predicate_json_forms() {
        assert_eq!(serde_json::to_string(&Predicate::ConditionR).unwrap(), "\"condition_R\"");
        assert_eq!(serde_json::to_string(&Predicate::SgGe(1)).unwrap(), "{\"sg_ge\":1}");
        let p: Predicate = serde_json::from_str("\"stein_fillable\"").unwrap();
        assert_eq!(p, Predicate::SteinFillable);
    }
}

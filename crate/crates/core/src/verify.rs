//! Exhaustive checks of the structural statements on small instances.
//!
//! Each [`Target`] fans out over independent `(m, n)` cases, and reports merge in
//! case order. A [`Mutation`] swaps one rule for a deliberately wrong one so the
//! checks can be seen to fail.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    diagram_times_x, strand_idempotent, truncation_idempotent, x_of, x_times_diagram, x_times_x, AlgebraElement,
};
use crate::categorified::{
    class_weight, clambda_crystal, clambda_crystal_with, clambda_nodes, cm_crystal, cm_lower,
    cm_via_functors, cm_via_modules, highest_tuple, rho,
};
use crate::combinatorics::binomial;
use crate::crystal::{
    are_isomorphic, check_isomorphism, signature_apply, signature_product_with, tensor_all, tensor_key, Crystal,
    Level, Operator, SignatureRule,
};
use crate::diagram::{all_boundaries, enumerate_diagrams, idempotent_diagram, monoid_order, Diagram};
use crate::error::{Error, Result};
use crate::modules::{
    all_classes, decompose, induce, induce_class, multiplicity, regular_module, restrict, restrict_class, simple,
    ClassLabel, ExplicitModule, SimpleModule,
};
use crate::tableaux::{box_crystal, enumerate_ssyt, row_crystal, ssyt_crystal};

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Axioms,
    Thm22,
    Prop21,
    Lemmas3,
    Thm32,
    Thm35,
    Thm36,
    Adjunction,
    Thm43,
    Thm45,
    ComponentBlambda,
    SignatureEquivalence,
}

impl Target {
    pub const ALL: [Target; 12] = [
        Target::Axioms,
        Target::Thm22,
        Target::Prop21,
        Target::Lemmas3,
        Target::Thm32,
        Target::Thm35,
        Target::Thm36,
        Target::Adjunction,
        Target::Thm43,
        Target::Thm45,
        Target::ComponentBlambda,
        Target::SignatureEquivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Axioms => "axioms",
            Target::Thm22 => "thm2.2",
            Target::Prop21 => "prop2.1",
            Target::Lemmas3 => "lemmas3",
            Target::Thm32 => "thm3.2",
            Target::Thm35 => "thm3.5",
            Target::Thm36 => "thm3.6",
            Target::Adjunction => "adjunction",
            Target::Thm43 => "thm4.3",
            Target::Thm45 => "thm4.5",
            Target::ComponentBlambda => "component-blambda",
            Target::SignatureEquivalence => "signature-equivalence",
        }
    }

    /// Default `(m, n)` cases. For crystal targets `m` is the number of boxes.
    fn default_cases(self) -> Vec<(usize, usize)> {
        let grid = |max_m: usize, max_n: usize| -> Vec<(usize, usize)> {
            (1..=max_n).flat_map(|n| (1..=max_m).map(move |m| (m, n))).collect()
        };
        match self {
            Target::Axioms => grid(5, 3),
            Target::Thm22 | Target::Lemmas3 | Target::Adjunction => grid(3, 2),
            Target::Prop21 => [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)].into(),
            Target::Thm32 | Target::Thm35 | Target::Thm36 => grid(4, 2),
            Target::Thm43 => grid(6, 3),
            Target::Thm45 | Target::ComponentBlambda | Target::SignatureEquivalence => grid(5, 2),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verify target {s:?}")))
    }
}

/// A deliberately wrong rule, used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Signature words are read without cancelling `(+,−)` pairs.
    SignatureNoCancel,
    /// `x_{d'} x_d = x_{d'd}` regardless of boundaries.
    XProductIgnoreBoundary,
    /// `ẽ_{i,m}` moves a box from slot `i` to slot `i+1`.
    CmRaiseWrongSlot,
    /// Explicit restriction uses the idempotent of a neighboring color.
    RestrictWrongColor,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::SignatureNoCancel,
        Mutation::XProductIgnoreBoundary,
        Mutation::CmRaiseWrongSlot,
        Mutation::RestrictWrongColor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::SignatureNoCancel => "signature-no-cancel",
            Mutation::XProductIgnoreBoundary => "x-product-ignore-boundary",
            Mutation::CmRaiseWrongSlot => "cm-raise-wrong-slot",
            Mutation::RestrictWrongColor => "restrict-wrong-color",
        }
    }
}

impl FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown mutation {s:?}")))
    }
}

/// How one size parameter is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Bound {
    #[default]
    Default,
    Exact(usize),
    Max(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Scope {
    pub m: Bound,
    pub n: Bound,
}

impl Scope {
    fn cases(&self, target: Target) -> Vec<(usize, usize)> {
        let defaults = target.default_cases();
        if (self.m, self.n) == (Bound::Default, Bound::Default) {
            return defaults;
        }
        let max_n = defaults.iter().map(|c| c.1).max().unwrap_or(1);
        let ns: Vec<usize> = match self.n {
            Bound::Default => (1..=max_n).collect(),
            Bound::Exact(v) => vec![v],
            Bound::Max(v) => (1..=v).collect(),
        };
        let mut out = Vec::new();
        for n in ns {
            let ms: Vec<usize> = match self.m {
                Bound::Exact(v) => vec![v],
                Bound::Max(v) => (1..=v).collect(),
                Bound::Default => {
                    let max_m = defaults
                        .iter()
                        .filter(|c| c.1 == n)
                        .map(|c| c.0)
                        .max()
                        .unwrap_or_else(|| defaults.iter().map(|c| c.0).max().unwrap_or(1));
                    (1..=max_m).collect()
                }
            };
            out.extend(ms.into_iter().map(|m| (m, n)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub checked: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Running totals for one case.
#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
    examples: Vec<String>,
    data: serde_json::Value,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < MAX_COUNTEREXAMPLES {
                self.examples.push(detail());
            }
        }
    }

    /// Records an error from the code under test as a failed check.
    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }
}

/// Runs `target` over the cases selected by `scope`.
pub fn run(target: Target, scope: Scope, mutation: Option<Mutation>) -> Result<VerifyReport> {
    let cases = scope.cases(target);
    if cases.iter().any(|&(_, n)| n == 0) {
        return Err(Error::NoColors);
    }
    let allows_empty = matches!(target, Target::Prop21 | Target::Thm22);
    if !allows_empty && cases.iter().any(|&(m, _)| m == 0) {
        return Err(Error::InvalidShape(format!("{target} needs m ≥ 1")));
    }
    let results: Vec<(String, Tally)> = cases
        .par_iter()
        .map(|&(m, n)| {
            let tally = match target {
                Target::Axioms => axioms(m, n, mutation),
                Target::Thm22 => thm22(m, n),
                Target::Prop21 => prop21(m, n, mutation),
                Target::Lemmas3 => lemmas3(m, n),
                Target::Thm32 => restriction(m, n, 1..=n, mutation),
                Target::Thm35 => induction(m, n, 1..=n),
                Target::Thm36 => restriction(m, n, 0..=0, mutation)
                    .map(|r| induction(m, n, 0..=0).map(|i| r.merge(i)))
                    .and_then(|x| x),
                Target::Adjunction => adjunction(m, n, mutation),
                Target::Thm43 => thm43(m, n, mutation),
                Target::Thm45 => thm45(m, n, mutation),
                Target::ComponentBlambda => component_blambda(m, n, mutation),
                Target::SignatureEquivalence => signature_equivalence(m, n, mutation),
            }?;
            Ok((format!("m={m},n={n}"), tally))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerifyReport {
        target: target.name().into(),
        checked: 0,
        failed: 0,
        cases: Vec::with_capacity(results.len()),
        counterexamples: Vec::new(),
    };
    for (case, tally) in results {
        report.checked += tally.checked;
        report.failed += tally.failed;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(report.counterexamples.len());
        report
            .counterexamples
            .extend(tally.examples.into_iter().take(room).map(|detail| Counterexample {
                case: case.clone(),
                detail,
            }));
        report.cases.push(CaseReport {
            case,
            checked: tally.checked,
            failed: tally.failed,
            data: tally.data,
        });
    }
    Ok(report)
}

fn x_or_zero(m: usize, n: usize, d: Option<Diagram>) -> AlgebraElement {
    d.map_or_else(|| AlgebraElement::zero(m, n), |d| x_of(&d))
}

fn prop21(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let ds = enumerate_diagrams(m, n)?;
    let plain: Vec<AlgebraElement> = ds.iter().map(AlgebraElement::from_diagram).collect();
    let xs: Vec<AlgebraElement> = ds.iter().map(x_of).collect();
    let rows = (0..ds.len())
        .into_par_iter()
        .map(|a| {
            let mut t = Tally::default();
            for b in 0..ds.len() {
                let (d1, d2) = (&ds[a], &ds[b]);
                let xx = if mutation == Some(Mutation::XProductIgnoreBoundary) {
                    Some(d1.multiply(d2)?)
                } else {
                    x_times_x(d1, d2)?
                };
                let laws = [
                    (plain[a].mul(&xs[b])?, x_or_zero(m, n, diagram_times_x(d1, d2)?)),
                    (xs[a].mul(&plain[b])?, x_or_zero(m, n, x_times_diagram(d1, d2)?)),
                    (xs[a].mul(&xs[b])?, x_or_zero(m, n, xx)),
                ];
                let bad = laws.iter().position(|(lhs, rhs)| lhs != rhs);
                t.check(bad.is_none(), || format!("law {} fails for ({d1}, {d2})", bad.unwrap_or(0) + 1));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().fold(Tally::default(), Tally::merge))
}

fn thm22(m: usize, n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let reg = regular_module(m, n)?;
    let dec = decompose(&reg)?;
    for c in all_classes(m, n) {
        let k = dec.multiplicity_of(&c);
        t.check(k == c.dimension(), || format!("regular module has {k} copies of {c}"));
    }
    let squares: usize = all_classes(m, n).iter().map(|c| c.dimension().pow(2)).sum();
    let order = enumerate_diagrams(m, n)?.len();
    t.check(
        squares == order && order as u128 == monoid_order(m, n) && reg.dimension() == order,
        || format!("sum of squares {squares}, monoid order {order}"),
    );
    for boundary in all_boundaries(m, n) {
        let label = ClassLabel::of_boundary(&boundary);
        let w = SimpleModule::on_boundary(&boundary).to_explicit();
        t.check(w.dimension() == label.dimension(), || {
            format!("W_{boundary} has dimension {}", w.dimension())
        });
        let unital = w.is_unital()?;
        t.check(unital, || format!("W_{boundary} is not unital"));
        for c in all_classes(m, n) {
            let k = multiplicity(&w, &c)?;
            let expected = usize::from(c == label);
            t.check(k == expected, || format!("W_{boundary} contains {c} {k} times"));
        }
    }
    t.data = serde_json::json!({ "total_dim": reg.dimension() });
    Ok(t)
}

fn lemmas3(m: usize, n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let idempotents = (0..=n)
        .map(|i| truncation_idempotent(m, n, i))
        .collect::<Result<Vec<_>>>()?;
    for d in enumerate_diagrams(m, n)? {
        let x = x_of(&d);
        let zero = AlgebraElement::zero(m, n);
        for (i, e) in idempotents.iter().enumerate() {
            let left = e.mul(&x)?;
            let expected = if d.top_word()[m - 1] == i { &x } else { &zero };
            t.check(&left == expected, || format!("left action of color {i} on x_{d}"));
            let right = x.mul(e)?;
            let expected = if d.bottom_word()[m - 1] == i { &x } else { &zero };
            t.check(&right == expected, || format!("right action of color {i} on x_{d}"));
        }
        t.check(x.omega() == x_of(&d.flip()), || format!("omega(x_{d}) differs from x of the flip"));
    }
    for boundary in all_boundaries(m - 1, n) {
        let dt = idempotent_diagram(&boundary);
        for i in 1..=n {
            let lhs = x_of(&dt).tensor(&strand_idempotent(n, i)?)?;
            let rhs = x_of(&dt.juxtapose(&Diagram::unit(n, i)?)?);
            t.check(lhs == rhs, || format!("x_(d_T) ⊗ (I_{i} - I_0) for T = {boundary}"));
        }
    }
    Ok(t)
}

fn wrong_color(i: usize, n: usize) -> usize {
    (i + 1) % (n + 1)
}

fn expect_single(dec: Result<crate::modules::Decomposition>, predicted: Option<ClassLabel>) -> (bool, String) {
    match dec {
        Ok(d) => {
            let expected: Vec<(ClassLabel, usize)> = predicted.into_iter().map(|c| (c, 1)).collect();
            let got: Vec<String> = d.classes.iter().map(|(c, k)| format!("{k}×{c}")).collect();
            (d.classes == expected, format!("[{}]", got.join(", ")))
        }
        Err(e) => (false, e.to_string()),
    }
}

fn restriction(
    m: usize,
    n: usize,
    colors: std::ops::RangeInclusive<usize>,
    mutation: Option<Mutation>,
) -> Result<Tally> {
    crate::diagram::check_cap(m, n, Default::default())?;
    let mut t = Tally::default();
    for boundary in all_boundaries(m, n) {
        let w = SimpleModule::on_boundary(&boundary).to_explicit();
        let label = ClassLabel::of_boundary(&boundary);
        for i in colors.clone() {
            let used = if mutation == Some(Mutation::RestrictWrongColor) {
                wrong_color(i, n)
            } else {
                i
            };
            let Some(r) = t.check_result(restrict(used, &w), || format!("Res_{i} W_{boundary}")) else {
                continue;
            };
            let predicted = restrict_class(i, &label);
            let dim = predicted.as_ref().map_or(0, ClassLabel::dimension);
            t.check(r.dimension() == dim, || {
                format!("Res_{i} W_{boundary} has dimension {}, expected {dim}", r.dimension())
            });
            let (ok, got) = expect_single(decompose(&r), predicted.clone());
            t.check(ok, || format!("Res_{i} W_{boundary} = {got}, expected {predicted:?}"));
        }
    }
    Ok(t)
}

fn induction(m: usize, n: usize, colors: std::ops::RangeInclusive<usize>) -> Result<Tally> {
    crate::diagram::check_cap(m, n, Default::default())?;
    let mut t = Tally::default();
    for c in all_classes(m - 1, n) {
        for i in colors.clone() {
            let Some(ind) = t.check_result(induce(i, &c), || format!("Ind_{i} {c}")) else {
                continue;
            };
            let predicted = induce_class(i, &c)?;
            t.check(ind.dimension() == predicted.dimension(), || {
                format!("Ind_{i} {c} has dimension {}", ind.dimension())
            });
            let unital = ind.is_unital()?;
            t.check(unital, || format!("Ind_{i} {c} is not unital"));
            let (ok, got) = expect_single(decompose(&ind), Some(predicted.clone()));
            t.check(ok, || format!("Ind_{i} {c} = {got}, expected {predicted}"));
            let back = restrict_class(i, &predicted);
            t.check(back.as_ref() == Some(&c), || format!("Res_{i} Ind_{i} {c} = {back:?}"));
        }
    }
    Ok(t)
}

fn adjunction(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    let mut induced: HashMap<(usize, ClassLabel), ExplicitModule> = HashMap::new();
    let mut restricted: HashMap<(usize, ClassLabel), ExplicitModule> = HashMap::new();
    for i in 0..=n {
        let used = if mutation == Some(Mutation::RestrictWrongColor) {
            wrong_color(i, n)
        } else {
            i
        };
        for lower in all_classes(m - 1, n) {
            induced.insert((i, lower.clone()), induce(i, &lower)?);
        }
        for upper in all_classes(m, n) {
            restricted.insert((i, upper.clone()), restrict(used, &simple(&upper)?.to_explicit())?);
        }
    }
    for i in 0..=n {
        for lower in all_classes(m - 1, n) {
            for upper in all_classes(m, n) {
                let by_class = usize::from(induce_class(i, &lower)? == upper);
                let by_ideal = multiplicity(&induced[&(i, lower.clone())], &upper)?;
                let by_res = multiplicity(&restricted[&(i, upper.clone())], &lower)?;
                t.check(by_class == by_ideal && by_ideal == by_res, || {
                    format!("i={i}, M={lower}, N={upper}: Hom(Ind M, N) = {by_ideal} (class {by_class}), Hom(M, Res N) = {by_res}")
                });
            }
        }
    }
    Ok(t)
}

fn mutated_cm(m: usize, n: usize) -> Result<Crystal> {
    let nodes = all_classes(m, n);
    let strings =
        |i: usize, c: &ClassLabel| (Level::Finite(c.counts()[i] as i64), Level::Finite(c.counts()[i - 1] as i64));
    Crystal::from_operators(
        n,
        &nodes,
        ClassLabel::key,
        class_weight,
        |i, c| if i < n { c.shifted(i, -1)?.shifted(i + 1, 1) } else { None },
        cm_lower,
        Some(&strings),
    )
}

fn cm_for(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Crystal> {
    if mutation == Some(Mutation::CmRaiseWrongSlot) {
        mutated_cm(m, n)
    } else {
        Ok((*cm_crystal(m, n)?).clone())
    }
}

fn thm43(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    let cm = cm_for(m, n, mutation)?;
    let row = row_crystal(m, n)?;
    let iso = are_isomorphic(&cm, &row);
    t.check(matches!(iso, Ok(Some(_))), || format!("[C_{m}] and B({m}ε₁) differ: {iso:?}"));
    let classes = all_classes(m, n);
    let witness = classes
        .iter()
        .map(|c| row.index_of(&rho(c).key()))
        .collect::<Option<Vec<usize>>>();
    let verdict = witness
        .ok_or_else(|| "ρ leaves the row crystal".to_string())
        .and_then(|w| check_isomorphism(&cm, &row, &w));
    t.check(verdict.is_ok(), || format!("ρ is not an isomorphism: {}", verdict.clone().unwrap_err()));
    let explicit = m < 4 && n <= 2;
    for (b, c) in classes.iter().enumerate() {
        for i in 1..=n {
            for op in [Operator::E, Operator::F] {
                let arrow = cm.apply(op, i, b).map(|x| cm.key(x).to_owned());
                let functor = cm_via_functors(i, op, c)?.map(|x| x.key());
                t.check(arrow == functor, || format!("{op}_{i} on {c}: arrow {arrow:?}, functors {functor:?}"));
                if explicit {
                    let modules = cm_via_modules(i, op, c).map(|x| x.map(|x| x.key()));
                    let ok = matches!(&modules, Ok(v) if *v == arrow);
                    t.check(ok, || format!("{op}_{i} on {c}: arrow {arrow:?}, modules {modules:?}"));
                }
            }
        }
    }
    t.data = serde_json::json!({ "nodes": cm.len() });
    Ok(t)
}

/// All compositions of `total` into positive parts, lexicographic.
pub fn positive_compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in positive_compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `total` with at most `max_parts` parts, lexicographically descending.
pub fn partitions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, cap: usize, parts_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=remaining.min(cap)).rev() {
            prefix.push(p);
            go(remaining - p, p, parts_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

fn no_cancel(op: Operator, factors: &[(usize, usize)]) -> Option<usize> {
    match op {
        Operator::E => factors.iter().rposition(|f| f.0 > 0),
        Operator::F => factors.iter().position(|f| f.1 > 0),
    }
}

fn rule_for(mutation: Option<Mutation>) -> &'static SignatureRule {
    if mutation == Some(Mutation::SignatureNoCancel) {
        &no_cancel
    } else {
        &|op, sig| signature_apply(op, sig).expect("nonempty")
    }
}

fn clambda_for(lambda: &[usize], n: usize, mutation: Option<Mutation>) -> Result<Crystal> {
    if mutation == Some(Mutation::SignatureNoCancel) {
        clambda_crystal_with(lambda, n, rule_for(mutation))
    } else {
        Ok((*clambda_crystal(lambda, n)?).clone())
    }
}

fn rows_for(lambda: &[usize], n: usize) -> Result<Vec<Crystal>> {
    lambda.iter().map(|&l| row_crystal(l, n)).collect()
}

fn thm45(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    for lambda in positive_compositions(m) {
        let c = clambda_for(&lambda, n, mutation)?;
        let rows = rows_for(&lambda, n)?;
        let refs: Vec<&Crystal> = rows.iter().collect();
        let product = tensor_all(&refs)?;
        let expected: u128 = lambda.iter().map(|&l| binomial(l + n, n)).product();
        t.check(c.len() as u128 == expected, || format!("[C_{lambda:?}] has {} nodes", c.len()));
        let iso = are_isomorphic(&c, &product);
        t.check(matches!(iso, Ok(Some(_))), || format!("[C_{lambda:?}] is not a tensor of rows: {iso:?}"));
        let witness = clambda_nodes(&lambda, n)?
            .iter()
            .map(|tuple| {
                let key = tuple
                    .parts()
                    .iter()
                    .map(|p| rho(p).key())
                    .reduce(|acc, k| tensor_key(&acc, &k))
                    .unwrap_or_default();
                product.index_of(&key)
            })
            .collect::<Option<Vec<usize>>>();
        let verdict = witness
            .ok_or_else(|| "ρ⊗⋯⊗ρ leaves the tensor product".to_string())
            .and_then(|w| check_isomorphism(&c, &product, &w));
        t.check(verdict.is_ok(), || {
            format!("ρ⊗⋯⊗ρ on [C_{lambda:?}]: {}", verdict.clone().unwrap_err())
        });
    }
    Ok(t)
}

fn signature_equivalence(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    let boxes = box_crystal(n)?;
    let mut families: Vec<(String, Vec<Crystal>)> = positive_compositions(m)
        .into_iter()
        .map(|lambda| Ok((format!("rows {lambda:?}"), rows_for(&lambda, n)?)))
        .collect::<Result<_>>()?;
    if m <= 4 {
        families.push((format!("{m} boxes"), vec![boxes; m]));
    }
    for (name, factors) in families {
        let refs: Vec<&Crystal> = factors.iter().collect();
        let nested = tensor_all(&refs)?;
        let flat = signature_product_with(&refs, rule_for(mutation))?;
        for b in 0..nested.len() {
            for i in 1..=n {
                for op in [Operator::E, Operator::F] {
                    let (x, y) = (nested.apply(op, i, b), flat.apply(op, i, b));
                    t.check(x == y, || {
                        format!(
                            "{name}: {op}_{i} on {}: nested {:?}, signature {:?}",
                            nested.key(b),
                            x.map(|x| nested.key(x)),
                            y.map(|y| flat.key(y))
                        )
                    });
                }
            }
        }
        t.check(nested == flat, || format!("{name}: crystals differ beyond the operators"));
    }
    Ok(t)
}

fn component_blambda(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    for lambda in partitions(m, n + 1) {
        let top = highest_tuple(&lambda, n)?;
        let c = clambda_for(&lambda, n, mutation)?;
        let Some(at) = c.index_of(&top.key()) else {
            t.check(false, || format!("{} is not a node", top.key()));
            continue;
        };
        t.check(c.highest_nodes().contains(&at), || format!("{} is not highest", top.key()));
        let component = c.component_of(at);
        let ssyt = ssyt_crystal(&lambda, n)?;
        let count = enumerate_ssyt(&lambda, n)?.len();
        t.check(component.len() == count && ssyt.len() == count, || {
            format!(
                "λ={lambda:?}: component {} nodes, SSYT crystal {}, enumeration {count}",
                component.len(),
                ssyt.len()
            )
        });
        let iso = are_isomorphic(&component, &ssyt);
        t.check(matches!(iso, Ok(Some(_))), || format!("λ={lambda:?}: component is not B(λ): {iso:?}"));
    }
    Ok(t)
}

fn axioms(m: usize, n: usize, mutation: Option<Mutation>) -> Result<Tally> {
    let mut t = Tally::default();
    let mut crystals: Vec<(String, Crystal)> = Vec::new();
    let boxes = box_crystal(n)?;
    if m == 1 {
        crystals.push(("box".into(), boxes.clone()));
    }
    crystals.push((format!("row {m}"), row_crystal(m, n)?));
    crystals.push((format!("[C_{m}]"), cm_for(m, n, mutation)?));
    crystals.push((format!("box^{m}"), tensor_all(&vec![&boxes; m])?));
    for lambda in partitions(m, n + 1) {
        crystals.push((format!("B{lambda:?}"), ssyt_crystal(&lambda, n)?));
    }
    for lambda in positive_compositions(m) {
        crystals.push((format!("[C_{lambda:?}]"), clambda_for(&lambda, n, mutation)?));
        if lambda.len() > 1 {
            let rows = rows_for(&lambda, n)?;
            let refs: Vec<&Crystal> = rows.iter().collect();
            crystals.push((format!("rows {lambda:?}"), tensor_all(&refs)?));
        }
    }
    for (name, c) in &crystals {
        let violations = c.check_axioms();
        t.check(violations.is_empty(), || {
            format!("{name}: {} violations, first {}", violations.len(), violations[0])
        });
    }
    t.data = serde_json::json!({ "crystals": crystals.len() });
    Ok(t)
}

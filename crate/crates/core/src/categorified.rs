//! Crystals on isomorphism classes of simple modules: `[C_m]` with arrows induced
//! by `Ẽ_{i,m} = Res_{i,m+1} ∘ Ind_{i-1,m+1}` and `F̃_{i,m} = Res_{i-1,m+1} ∘ Ind_{i,m+1}`,
//! and `[C_λ]` on tuples of classes with the signature rule.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::crystal::{signature_apply, Crystal, Level, Operator, SignatureRule, Weight};
use crate::error::{Error, Result};
use crate::modules::{all_classes, decompose, induce_class, restrict, restrict_class, simple, ClassLabel};
use crate::tableaux::RowTableau;

/// `[W^{λ₁}_{…} ⊗ ⋯ ⊗ W^{λ_k}_{…}]`, one class per part of `λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassTuple {
    n: usize,
    parts: Vec<ClassLabel>,
}

impl ClassTuple {
    pub fn new(parts: Vec<ClassLabel>) -> Result<Self> {
        let n = parts.first().ok_or(Error::EmptySignature)?.n();
        if let Some(p) = parts.iter().find(|p| p.n() != n) {
            return Err(Error::ColorCountMismatch { left: n, right: p.n() });
        }
        if parts.iter().any(|p| p.m() == 0) {
            return Err(Error::InvalidShape("every part needs at least one box".into()));
        }
        Ok(Self { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[ClassLabel] {
        &self.parts
    }

    /// `(λ₁,…,λ_k)`.
    pub fn composition(&self) -> Vec<usize> {
        self.parts.iter().map(ClassLabel::m).collect()
    }

    pub fn weight(&self) -> Weight {
        self.parts
            .iter()
            .fold(Weight::zero(self.n), |acc, p| &acc + &class_weight(p))
    }

    /// Part keys joined by `×`.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(ClassLabel::key)
            .collect::<Vec<_>>()
            .join("×")
    }

    /// Counts next to the `ρ` images, for display.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(class_label_text)
            .collect::<Vec<_>>()
            .join(" × ")
    }
}

impl fmt::Display for ClassTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// `m₀ε₁ + m₁ε₂ + ⋯ + m_nε_{n+1}`.
pub fn class_weight(label: &ClassLabel) -> Weight {
    Weight(label.counts().iter().map(|&c| c as i64).collect())
}

/// `(m₀,…,m_n) ⟦ρ⟧`.
pub fn class_label_text(label: &ClassLabel) -> String {
    let counts: Vec<String> = label.counts().iter().map(|c| c.to_string()).collect();
    format!("({}) [{}]", counts.join(","), rho(label))
}

/// `ẽ_{i,m}`: `(…, m_{i-1}+1, m_i-1, …)` when `m_i > 0`.
pub fn cm_raise(i: usize, label: &ClassLabel) -> Option<ClassLabel> {
    label.shifted(i, -1)?.shifted(i - 1, 1)
}

/// `f̃_{i,m}`: `(…, m_{i-1}-1, m_i+1, …)` when `m_{i-1} > 0`.
pub fn cm_lower(i: usize, label: &ClassLabel) -> Option<ClassLabel> {
    label.shifted(i - 1, -1)?.shifted(i, 1)
}

pub fn cm_apply(op: Operator, i: usize, label: &ClassLabel) -> Option<ClassLabel> {
    match op {
        Operator::E => cm_raise(i, label),
        Operator::F => cm_lower(i, label),
    }
}

fn check_color(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::ColorOutOfRange { color: i, min: 1, n });
    }
    Ok(())
}

/// `Ẽ_{i,m}` or `F̃_{i,m}` as a composite of the class-level functors.
pub fn cm_via_functors(i: usize, op: Operator, label: &ClassLabel) -> Result<Option<ClassLabel>> {
    check_color(i, label.n())?;
    let (up, down) = match op {
        Operator::E => (i - 1, i),
        Operator::F => (i, i - 1),
    };
    Ok(restrict_class(down, &induce_class(up, label)?))
}

/// Like [`cm_via_functors`] but restricting the induced simple module explicitly
/// and decomposing the result. `None` means the restriction is zero.
pub fn cm_via_modules(i: usize, op: Operator, label: &ClassLabel) -> Result<Option<ClassLabel>> {
    check_color(i, label.n())?;
    let (up, down) = match op {
        Operator::E => (i - 1, i),
        Operator::F => (i, i - 1),
    };
    let induced = simple(&induce_class(up, label)?)?.to_explicit();
    let restricted = restrict(down, &induced)?;
    let d = decompose(&restricted)?;
    match d.classes.as_slice() {
        [] => Ok(None),
        [(class, 1)] => Ok(Some(class.clone())),
        _ => Err(Error::InvalidCrystal(format!(
            "restriction of {} is not simple",
            induce_class(up, label)?.key()
        ))),
    }
}

/// `ρ`: the one-row tableau with `m_i` copies of `i`.
pub fn rho(label: &ClassLabel) -> RowTableau {
    RowTableau::from_counts(label.counts()).expect("validated label")
}

type Cache<K> = OnceLock<Mutex<HashMap<K, Arc<Crystal>>>>;

fn cached<K: Clone + Eq + std::hash::Hash>(
    cache: &'static Cache<K>,
    key: K,
    build: impl FnOnce() -> Result<Crystal>,
) -> Result<Arc<Crystal>> {
    let map = cache.get_or_init(Default::default);
    if let Some(c) = map.lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let built = Arc::new(build()?);
    Ok(map.lock().expect("cache lock").entry(key).or_insert(built).clone())
}

/// `[C_m]`, nodes in [`all_classes`] order.
pub fn cm_crystal(m: usize, n: usize) -> Result<Arc<Crystal>> {
    static CACHE: Cache<(usize, usize)> = OnceLock::new();
    if m == 0 {
        return Err(Error::InvalidShape("[C_m] needs m ≥ 1".into()));
    }
    if n == 0 {
        return Err(Error::NoColors);
    }
    cached(&CACHE, (m, n), || {
        let nodes = all_classes(m, n);
        let strings = |i: usize, c: &ClassLabel| {
            (
                Level::Finite(c.counts()[i] as i64),
                Level::Finite(c.counts()[i - 1] as i64),
            )
        };
        Crystal::from_operators(n, &nodes, ClassLabel::key, class_weight, cm_raise, cm_lower, Some(&strings))
    })
}

fn check_composition(lambda: &[usize], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoColors);
    }
    if lambda.is_empty() || lambda.contains(&0) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not a composition with positive parts")));
    }
    Ok(())
}

/// Nodes of `[C_λ]`: tuples of classes in lexicographic order.
pub fn clambda_nodes(lambda: &[usize], n: usize) -> Result<Vec<ClassTuple>> {
    check_composition(lambda, n)?;
    let mut tuples: Vec<Vec<ClassLabel>> = vec![Vec::new()];
    for &part in lambda {
        let classes = all_classes(part, n);
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                classes.iter().map(move |c| {
                    let mut next = t.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    tuples.into_iter().map(ClassTuple::new).collect()
}

/// `ẽ_{i,λ}` or `f̃_{i,λ}`: component `j` contributes `λ_{ji}` minuses then
/// `λ_{j,i-1}` pluses.
pub fn clambda_apply(op: Operator, i: usize, t: &ClassTuple) -> Result<Option<ClassTuple>> {
    clambda_apply_with(op, i, t, &|op, sig| signature_apply(op, sig).expect("nonempty"))
}

/// [`clambda_apply`] with a caller-supplied signature rule.
pub fn clambda_apply_with(
    op: Operator,
    i: usize,
    t: &ClassTuple,
    rule: &SignatureRule,
) -> Result<Option<ClassTuple>> {
    check_color(i, t.n)?;
    let signature: Vec<(usize, usize)> = t
        .parts
        .iter()
        .map(|p| (p.counts()[i], p.counts()[i - 1]))
        .collect();
    if signature.is_empty() {
        return Err(Error::EmptySignature);
    }
    let Some(j) = rule(op, &signature) else {
        return Ok(None);
    };
    Ok(cm_apply(op, i, &t.parts[j]).map(|moved| {
        let mut parts = t.parts.clone();
        parts[j] = moved;
        ClassTuple { n: t.n, parts }
    }))
}

/// `[C_λ]` for a composition `λ`.
pub fn clambda_crystal(lambda: &[usize], n: usize) -> Result<Arc<Crystal>> {
    static CACHE: Cache<(Vec<usize>, usize)> = OnceLock::new();
    let nodes = clambda_nodes(lambda, n)?;
    cached(&CACHE, (lambda.to_vec(), n), || {
        build_clambda(n, &nodes, &|op, sig| signature_apply(op, sig).expect("nonempty"))
    })
}

/// `[C_λ]` built with a caller-supplied signature rule, bypassing the cache.
pub fn clambda_crystal_with(lambda: &[usize], n: usize, rule: &SignatureRule) -> Result<Crystal> {
    build_clambda(n, &clambda_nodes(lambda, n)?, rule)
}

fn build_clambda(n: usize, nodes: &[ClassTuple], rule: &SignatureRule) -> Result<Crystal> {
    let step = |op, i, t: &ClassTuple| clambda_apply_with(op, i, t, rule).expect("color in range");
    Crystal::from_operators(
        n,
        nodes,
        ClassTuple::key,
        ClassTuple::weight,
        |i, t| step(Operator::E, i, t),
        |i, t| step(Operator::F, i, t),
        None,
    )
}

/// `[W^{λ₁}_{λ₁,0,…} ⊗ W^{λ₂}_{0,λ₂,0,…} ⊗ ⋯]`: part `j` is concentrated in slot `j−1`.
pub fn highest_tuple(lambda: &[usize], n: usize) -> Result<ClassTuple> {
    check_composition(lambda, n)?;
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.len() > n + 1 {
        return Err(Error::InvalidShape(format!(
            "{lambda:?} is not a partition with at most {} parts",
            n + 1
        )));
    }
    let parts = lambda
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            let mut counts = vec![0; n + 1];
            counts[j] = l;
            ClassLabel::new(n, counts)
        })
        .collect::<Result<Vec<_>>>()?;
    ClassTuple::new(parts)
}

/// The connected component of `[C_λ]` through [`highest_tuple`].
pub fn highest_component(lambda: &[usize], n: usize) -> Result<Crystal> {
    let top = highest_tuple(lambda, n)?;
    let c = clambda_crystal(lambda, n)?;
    let b = c
        .index_of(&top.key())
        .ok_or_else(|| Error::InvalidShape(format!("{} is not a node", top.key())))?;
    Ok(c.component_of(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::crystal::{are_isomorphic, check_isomorphism, tensor_all};
    use crate::tableaux::{box_crystal, row_crystal, ssyt_crystal};

    fn label(n: usize, counts: &[usize]) -> ClassLabel {
        ClassLabel::new(n, counts.to_vec()).unwrap()
    }

    #[test]
    fn cm_arrows() {
        assert_eq!(cm_raise(1, &label(2, &[1, 1, 0])), Some(label(2, &[2, 0, 0])));
        assert_eq!(cm_lower(1, &label(1, &[0, 2])), None);
        let c = cm_crystal(2, 2).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.check_axioms().is_empty());
        assert!(are_isomorphic(&cm_crystal(1, 3).unwrap(), &box_crystal(3).unwrap())
            .unwrap()
            .is_some());
        assert!(cm_crystal(0, 1).is_err());
    }

    #[test]
    fn functor_composites() {
        assert_eq!(
            induce_class(0, &label(1, &[1, 1])).unwrap(),
            label(1, &[2, 1])
        );
        assert_eq!(
            cm_via_functors(1, Operator::E, &label(1, &[1, 1])).unwrap(),
            Some(label(1, &[2, 0]))
        );
        assert_eq!(cm_via_functors(1, Operator::E, &label(1, &[2, 0])).unwrap(), None);
        assert_eq!(
            cm_via_functors(1, Operator::F, &label(1, &[1, 0])).unwrap(),
            Some(label(1, &[0, 1]))
        );
        for n in 1..=3 {
            for m in 1..=5 {
                for c in all_classes(m, n) {
                    for i in 1..=n {
                        for op in [Operator::E, Operator::F] {
                            assert_eq!(cm_via_functors(i, op, &c).unwrap(), cm_apply(op, i, &c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn functor_composites_on_explicit_modules() {
        for n in 1..=2 {
            for m in 1..=2 {
                for c in all_classes(m, n) {
                    for i in 1..=n {
                        for op in [Operator::E, Operator::F] {
                            assert_eq!(cm_via_modules(i, op, &c).unwrap(), cm_apply(op, i, &c), "{c:?} {op}_{i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rho_is_a_crystal_isomorphism() {
        assert_eq!(rho(&label(2, &[1, 1, 1])).key(), "012");
        assert_eq!(rho(&label(2, &[3, 0, 0])).key(), "000");
        for n in 1..=3 {
            for m in 1..=4 {
                let cm = cm_crystal(m, n).unwrap();
                let row = row_crystal(m, n).unwrap();
                let classes = all_classes(m, n);
                let map: Vec<usize> = classes
                    .iter()
                    .map(|c| row.index_of(&rho(c).key()).unwrap())
                    .collect();
                assert_eq!(check_isomorphism(&cm, &row, &map), Ok(()), "m={m}, n={n}");
            }
        }
    }

    #[test]
    fn clambda_signature_trace() {
        let node = ClassTuple::new(vec![label(1, &[1, 1]), label(1, &[1, 0])]).unwrap();
        assert_eq!(
            clambda_apply(Operator::E, 1, &node).unwrap().unwrap().key(),
            "2|2,0×1|1,0"
        );
        assert_eq!(
            clambda_apply(Operator::F, 1, &node).unwrap().unwrap().key(),
            "2|0,2×1|1,0"
        );
        assert_eq!(*clambda_crystal(&[1], 2).unwrap().keys(), *cm_crystal(1, 2).unwrap().keys());
        let c = clambda_crystal(&[2, 1, 2], 2).unwrap();
        let expected: u128 = [2, 1, 2].iter().map(|&l| binomial(l + 2, 2)).product();
        assert_eq!(c.len() as u128, expected);
        assert!(c.check_axioms().is_empty());
    }

    #[test]
    fn clambda_is_tensor_of_rows() {
        for lambda in [vec![2, 1], vec![1, 2], vec![1, 1, 1], vec![2, 2]] {
            let c = clambda_crystal(&lambda, 2).unwrap();
            let rows: Vec<Crystal> = lambda.iter().map(|&l| row_crystal(l, 2).unwrap()).collect();
            let refs: Vec<&Crystal> = rows.iter().collect();
            let t = tensor_all(&refs).unwrap();
            assert!(are_isomorphic(&c, &t).unwrap().is_some(), "{lambda:?}");
        }
    }

    #[test]
    fn highest_components() {
        let h = highest_component(&[2, 1], 2).unwrap();
        assert_eq!(h.len(), 8);
        assert!(are_isomorphic(&h, &ssyt_crystal(&[2, 1], 2).unwrap()).unwrap().is_some());
        assert_eq!(highest_component(&[1, 1], 1).unwrap().len(), 1);
        let whole = highest_component(&[3], 2).unwrap();
        assert!(are_isomorphic(&whole, &cm_crystal(3, 2).unwrap()).unwrap().is_some());
        assert!(highest_component(&[1, 2], 2).is_err());
        assert!(highest_component(&[1, 1, 1], 1).is_err());
    }
}

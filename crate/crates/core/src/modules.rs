//! Simple `CP_m`-modules, modules given by explicit action matrices, multiplicities,
//! and the restriction/induction functors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{embed, identity, truncation_idempotent, x_idempotent, AlgebraElement};
use crate::combinatorics::{compositions, multinomial};
use crate::diagram::{diagrams_with_bottom, enumerate_diagrams_with, Boundary, Cap, Diagram};
use crate::error::{Error, Result};
use crate::linalg::{column_space, Matrix};
use crate::Q;

/// An isomorphism class of simple `CP_m`-modules, `W^m_{m₀,…,m_n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct ClassLabel {
    m: usize,
    n: usize,
    counts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    m: usize,
    n: usize,
    counts: Vec<usize>,
}

impl TryFrom<ClassJson> for ClassLabel {
    type Error = Error;
    fn try_from(j: ClassJson) -> Result<Self> {
        let label = ClassLabel::new(j.n, j.counts)?;
        if label.m != j.m {
            return Err(Error::InvalidClass {
                m: j.m,
                n: j.n,
                counts: label.counts,
            });
        }
        Ok(label)
    }
}

impl From<ClassLabel> for ClassJson {
    fn from(c: ClassLabel) -> Self {
        ClassJson {
            m: c.m,
            n: c.n,
            counts: c.counts,
        }
    }
}

impl ClassLabel {
    /// `counts` has `n + 1` entries; `m` is their sum.
    pub fn new(n: usize, counts: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoColors);
        }
        let m = counts.iter().sum();
        if counts.len() != n + 1 {
            return Err(Error::InvalidClass { m, n, counts });
        }
        Ok(Self { m, n, counts })
    }

    /// Like [`ClassLabel::new`] but also checks the total.
    pub fn with_size(m: usize, n: usize, counts: Vec<usize>) -> Result<Self> {
        let label = Self::new(n, counts)?;
        if label.m != m {
            return Err(Error::InvalidClass {
                m,
                n,
                counts: label.counts,
            });
        }
        Ok(label)
    }

    pub fn of_boundary(t: &Boundary) -> Self {
        Self {
            m: t.m(),
            n: t.n(),
            counts: t.counts(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `T̄ = 0^{m₀} 1^{m₁} ⋯ n^{m_n}`.
    pub fn canonical_boundary(&self) -> Boundary {
        Boundary::canonical(&self.counts).expect("validated label")
    }

    /// `multinomial(m; m₀,…,m_n)`.
    pub fn dimension(&self) -> usize {
        multinomial(self.m, &self.counts) as usize
    }

    /// `"m|m₀,…,m_n"`.
    pub fn key(&self) -> String {
        let counts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        format!("{}|{}", self.m, counts.join(","))
    }

    pub(crate) fn shifted(&self, slot: usize, delta: isize) -> Option<Self> {
        let mut counts = self.counts.clone();
        let c = counts[slot] as isize + delta;
        if c < 0 {
            return None;
        }
        counts[slot] = c as usize;
        Some(Self {
            m: (self.m as isize + delta) as usize,
            n: self.n,
            counts,
        })
    }
}

impl Ord for ClassLabel {
    /// Canonical boundary words ascending within each `(m, n)`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.n)
            .cmp(&(other.m, other.n))
            .then_with(|| other.counts.cmp(&self.counts))
    }
}

impl PartialOrd for ClassLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{}]", self.key())
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Every class with `Σ counts = m`, canonical words ascending.
pub fn all_classes(m: usize, n: usize) -> Vec<ClassLabel> {
    compositions(m, n + 1)
        .into_iter()
        .map(|counts| ClassLabel { m, n, counts })
        .collect()
}

/// `W^m_T`: the span of `x_d` over diagrams with `β(d) = T`.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    label: ClassLabel,
    boundary: Boundary,
    basis: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

/// The simple module of a class, realized on its canonical boundary.
pub fn simple(label: &ClassLabel) -> Result<SimpleModule> {
    simple_with(label, Cap::Enforce)
}

pub fn simple_with(label: &ClassLabel, cap: Cap) -> Result<SimpleModule> {
    crate::diagram::check_cap(label.m, label.n, cap)?;
    Ok(SimpleModule::on_boundary(&label.canonical_boundary()))
}

impl SimpleModule {
    /// `W_T` for an arbitrary bottom boundary `T`.
    pub fn on_boundary(t: &Boundary) -> Self {
        let basis = diagrams_with_bottom(t);
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, d)| (d.clone(), k))
            .collect();
        Self {
            label: ClassLabel::of_boundary(t),
            boundary: t.clone(),
            basis,
            index,
        }
    }

    pub fn label(&self) -> &ClassLabel {
        &self.label
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    /// Basis diagrams `d`, standing for `x_d`.
    pub fn basis(&self) -> &[Diagram] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Position of `x_d` in the basis.
    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    fn check_shape(&self, m: usize, n: usize) -> Result<()> {
        if (m, n) != (self.label.m, self.label.n) {
            return Err(Error::ShapeMismatch {
                left_m: self.label.m,
                left_n: self.label.n,
                right_m: m,
                right_n: n,
            });
        }
        Ok(())
    }

    /// Matrix of `d'` in the `x` basis: `d' x_d = x_{d'd}` if `τ(d) ⊆ β(d')`, else 0.
    pub fn diagram_matrix(&self, dp: &Diagram) -> Result<Matrix> {
        self.check_shape(dp.m(), dp.n())?;
        let dim = self.dimension();
        let mut mat = Matrix::zeros(dim, dim);
        let bottom = dp.bottom();
        for (j, d) in self.basis.iter().enumerate() {
            if d.top().is_contained_in(&bottom) {
                let image = dp.compose_unchecked(d);
                let k = self.index[&image];
                mat[(k, j)] = Q::one();
            }
        }
        Ok(mat)
    }

    /// `a · v` for a coefficient vector `v` in the `x` basis.
    pub fn act(&self, a: &AlgebraElement, v: &[Q]) -> Result<Vec<Q>> {
        self.check_shape(a.m(), a.n())?;
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: v.len(),
            });
        }
        let mut out = vec![Q::zero(); v.len()];
        for (dp, c) in a.terms() {
            let bottom = dp.bottom();
            for (j, d) in self.basis.iter().enumerate() {
                if v[j].is_zero() || !d.top().is_contained_in(&bottom) {
                    continue;
                }
                let k = self.index[&dp.compose_unchecked(d)];
                out[k] += c * &v[j];
            }
        }
        Ok(out)
    }

    pub fn to_explicit(&self) -> ExplicitModule {
        let this = self.clone();
        ExplicitModule::new(
            self.label.m,
            self.label.n,
            self.dimension(),
            move |d| this.diagram_matrix(d).expect("shape checked by caller"),
        )
    }
}

type Action = dyn Fn(&Diagram) -> Matrix + Send + Sync;

/// A finite-dimensional `CP_m`-module given by the matrix of every diagram.
/// Matrices are produced on demand and memoized.
#[derive(Clone)]
pub struct ExplicitModule {
    m: usize,
    n: usize,
    dim: usize,
    action: Arc<Action>,
    cache: Arc<RwLock<HashMap<Diagram, Arc<Matrix>>>>,
}

impl fmt::Debug for ExplicitModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExplicitModule")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl ExplicitModule {
    pub fn new(
        m: usize,
        n: usize,
        dim: usize,
        action: impl Fn(&Diagram) -> Matrix + Send + Sync + 'static,
    ) -> Self {
        Self {
            m,
            n,
            dim,
            action: Arc::new(action),
            cache: Arc::default(),
        }
    }

    /// The module where every diagram acts by the matrix in `table`.
    pub fn from_table(m: usize, n: usize, dim: usize, table: HashMap<Diagram, Matrix>) -> Self {
        Self::new(m, n, dim, move |d| {
            table
                .get(d)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(dim, dim))
        })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self::new(m, n, 0, |_| Matrix::zeros(0, 0))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn diagram_matrix(&self, d: &Diagram) -> Result<Arc<Matrix>> {
        if (d.m(), d.n()) != (self.m, self.n) {
            return Err(Error::ShapeMismatch {
                left_m: self.m,
                left_n: self.n,
                right_m: d.m(),
                right_n: d.n(),
            });
        }
        if let Some(mat) = self.cache.read().expect("cache lock").get(d) {
            return Ok(mat.clone());
        }
        let mat = Arc::new((self.action)(d));
        if (mat.rows(), mat.cols()) != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: mat.rows(),
            });
        }
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(d.clone()).or_insert(mat).clone())
    }

    pub fn element_matrix(&self, a: &AlgebraElement) -> Result<Matrix> {
        if (a.m(), a.n()) != (self.m, self.n) {
            return Err(Error::ShapeMismatch {
                left_m: self.m,
                left_n: self.n,
                right_m: a.m(),
                right_n: a.n(),
            });
        }
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (d, c) in a.terms() {
            out.add_scaled(c, &*self.diagram_matrix(d)?);
        }
        Ok(out)
    }

    pub fn act(&self, a: &AlgebraElement, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(self.element_matrix(a)?.mul_vec(v))
    }

    /// `M ⊕ N` with block-diagonal action.
    pub fn direct_sum(&self, other: &ExplicitModule) -> Result<ExplicitModule> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::ShapeMismatch {
                left_m: self.m,
                left_n: self.n,
                right_m: other.m,
                right_n: other.n,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        let (da, db) = (self.dim, other.dim);
        Ok(ExplicitModule::new(self.m, self.n, da + db, move |d| {
            let ma = a.diagram_matrix(d).expect("shape checked");
            let mb = b.diagram_matrix(d).expect("shape checked");
            let mut out = Matrix::zeros(da + db, da + db);
            for r in 0..da {
                for c in 0..da {
                    out[(r, c)] = ma[(r, c)].clone();
                }
            }
            for r in 0..db {
                for c in 0..db {
                    out[(da + r, da + c)] = mb[(r, c)].clone();
                }
            }
            out
        }))
    }

    /// Whether `e_m` acts as the identity.
    pub fn is_unital(&self) -> Result<bool> {
        let e = identity(self.m, self.n)?;
        Ok(self.element_matrix(&e)? == Matrix::identity(self.dim))
    }

    /// Whether `ρ(d₁)ρ(d₂) = ρ(d₁d₂)` for each supplied pair.
    pub fn respects_products<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a Diagram, &'a Diagram)>,
    ) -> Result<bool> {
        for (a, b) in pairs {
            let lhs = self.diagram_matrix(a)?.mul(&*self.diagram_matrix(b)?);
            if lhs != *self.diagram_matrix(&a.multiply(b)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `CP_m` acting on itself by left multiplication, on the diagram basis in
/// enumeration order.
pub fn regular_module(m: usize, n: usize) -> Result<ExplicitModule> {
    regular_module_with(m, n, Cap::Enforce)
}

pub fn regular_module_with(m: usize, n: usize, cap: Cap) -> Result<ExplicitModule> {
    let basis = enumerate_diagrams_with(m, n, cap)?;
    let index: HashMap<Diagram, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, d)| (d.clone(), k))
        .collect();
    let dim = basis.len();
    Ok(ExplicitModule::new(m, n, dim, move |dp| {
        let mut mat = Matrix::zeros(dim, dim);
        for (j, d) in basis.iter().enumerate() {
            mat[(index[&dp.compose_unchecked(d)], j)] = Q::one();
        }
        mat
    }))
}

/// `dim Hom(W_label, M)`, the rank of `x_{d_T̄}` acting on `M`.
pub fn multiplicity(module: &ExplicitModule, label: &ClassLabel) -> Result<usize> {
    if (label.m, label.n) != (module.m, module.n) {
        return Err(Error::ShapeMismatch {
            left_m: module.m,
            left_n: module.n,
            right_m: label.m,
            right_n: label.n,
        });
    }
    if module.dim == 0 {
        return Ok(0);
    }
    let x = x_idempotent(&label.canonical_boundary());
    Ok(module.element_matrix(&x)?.rank())
}

/// Multiplicities of the simple constituents of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub m: usize,
    pub n: usize,
    /// Classes with nonzero multiplicity, canonical order.
    pub classes: Vec<(ClassLabel, usize)>,
    pub total_dim: usize,
}

impl Decomposition {
    pub fn multiplicity_of(&self, label: &ClassLabel) -> usize {
        self.classes
            .iter()
            .find(|(c, _)| c == label)
            .map_or(0, |(_, k)| *k)
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "classes": self.classes.iter().map(|(c, k)| serde_json::json!({
                "counts": c.counts(),
                "multiplicity": k,
                "dimension": c.dimension(),
            })).collect::<Vec<_>>(),
            "total_dim": self.total_dim,
        })
    }
}

/// Splits a module into simple classes and checks `Σ multiplicity · dim = dim M`.
pub fn decompose(module: &ExplicitModule) -> Result<Decomposition> {
    let mut classes = Vec::new();
    let mut accounted = 0;
    for label in all_classes(module.m, module.n) {
        let k = multiplicity(module, &label)?;
        if k > 0 {
            accounted += k * label.dimension();
            classes.push((label, k));
        }
    }
    if accounted != module.dim {
        return Err(Error::DecompositionMismatch {
            accounted,
            dimension: module.dim,
        });
    }
    Ok(Decomposition {
        m: module.m,
        n: module.n,
        classes,
        total_dim: module.dim,
    })
}

/// `Res_{i,m}(M) = eM` with `e = ψ_{i,m}(e_{m-1})`, a `CP_{m-1}`-module through
/// `ψ_{i,m}`. The carrier basis is the reduced echelon basis of the image of `e`.
pub fn restrict(i: usize, module: &ExplicitModule) -> Result<ExplicitModule> {
    let (m, n) = (module.m, module.n);
    if m == 0 {
        return Err(Error::RestrictFromZero);
    }
    if i > n {
        return Err(Error::ColorOutOfRange { color: i, min: 0, n });
    }
    let e = truncation_idempotent(m, n, i)?;
    let image = column_space(&module.element_matrix(&e)?);
    let rank = image.pivots.len();
    let parent = module.clone();
    Ok(ExplicitModule::new(m - 1, n, rank, move |dp| {
        let psi = embed(i, &AlgebraElement::from_diagram(dp)).expect("same color count");
        let a = parent.element_matrix(&psi).expect("embedded shape");
        let mut out = Matrix::zeros(rank, rank);
        for k in 0..rank {
            let moved = a.mul_vec(image.reduced.row(k));
            for (j, &p) in image.pivots.iter().enumerate() {
                out[(j, k)] = moved[p].clone();
            }
        }
        out
    }))
}

/// `[Res_{i,m}]` on classes: lower `m_i` by one, or `None` when `m_i = 0`.
pub fn restrict_class(i: usize, label: &ClassLabel) -> Option<ClassLabel> {
    if i > label.n {
        return None;
    }
    label.shifted(i, -1)
}

/// `[Ind_{i,m}]` on classes: raise `m_i` by one.
pub fn induce_class(i: usize, label: &ClassLabel) -> Result<ClassLabel> {
    if i > label.n {
        return Err(Error::ColorOutOfRange {
            color: i,
            min: 0,
            n: label.n,
        });
    }
    Ok(label.shifted(i, 1).expect("increment never underflows"))
}

/// The left ideal `CP_m · g` with the left multiplication action. Its basis is
/// kept fully reduced, so coordinates are read off at the pivot diagrams.
pub fn left_ideal(g: &AlgebraElement) -> Result<ExplicitModule> {
    let (m, n) = (g.m(), g.n());
    let mut basis: Vec<(Diagram, AlgebraElement)> = Vec::new();
    for d in enumerate_diagrams_with(m, n, Cap::Enforce)? {
        let mut v = AlgebraElement::from_diagram(&d).mul(g)?;
        for (p, b) in &basis {
            let c = v.coefficient(p);
            if !c.is_zero() {
                v = v.sub(&b.scale(&c))?;
            }
        }
        let Some((pivot, lead)) = v.terms().iter().next().map(|(p, c)| (p.clone(), c.clone())) else {
            continue;
        };
        let v = v.scale(&(Q::one() / lead));
        for (_, b) in basis.iter_mut() {
            let c = b.coefficient(&pivot);
            if !c.is_zero() {
                *b = b.sub(&v.scale(&c))?;
            }
        }
        basis.push((pivot, v));
    }
    let dim = basis.len();
    Ok(ExplicitModule::new(m, n, dim, move |dp| {
        let left = AlgebraElement::from_diagram(dp);
        let mut out = Matrix::zeros(dim, dim);
        for (j, (_, b)) in basis.iter().enumerate() {
            let moved = left.mul(b).expect("same shape");
            for (k, (p, _)) in basis.iter().enumerate() {
                out[(k, j)] = moved.coefficient(p);
            }
        }
        out
    }))
}

/// `Ind_{i,m}(W_T) = CP_m e ⊗ W_T`, realized as the left ideal `CP_m · ψ_{i,m}(x_{d_T̄})`
/// (the two agree because `W_T ≅ CP_{m-1} x_{d_T̄}` with `x_{d_T̄}` idempotent).
pub fn induce(i: usize, label: &ClassLabel) -> Result<ExplicitModule> {
    if i > label.n {
        return Err(Error::ColorOutOfRange {
            color: i,
            min: 0,
            n: label.n,
        });
    }
    left_ideal(&embed(i, &x_idempotent(&label.canonical_boundary()))?)
}

/// `(dim Hom(Ind_i W_M, W_N), dim Hom(W_M, Res_i W_N))`. The left side comes from
/// the class formula and Schur's lemma, the right side from explicit restriction.
pub fn adjunction_check(i: usize, lower: &ClassLabel, upper: &ClassLabel) -> Result<(usize, usize)> {
    if lower.n != upper.n || lower.m + 1 != upper.m {
        return Err(Error::ShapeMismatch {
            left_m: lower.m,
            left_n: lower.n,
            right_m: upper.m,
            right_n: upper.n,
        });
    }
    let left = usize::from(induce_class(i, lower)? == *upper);
    let restricted = restrict(i, &simple(upper)?.to_explicit())?;
    let right = multiplicity(&restricted, lower)?;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::x_of;
    use crate::diagram::enumerate_diagrams;
    use crate::q;

    fn label(n: usize, counts: &[usize]) -> ClassLabel {
        ClassLabel::new(n, counts.to_vec()).unwrap()
    }

    /// Brute-force simple module: act in `CP_m` and read coordinates back in the
    /// `x` basis, never consulting the containment rule.
    fn brute_force_matrix(w: &SimpleModule, dp: &Diagram) -> Matrix {
        let dim = w.dimension();
        let mut mat = Matrix::zeros(dim, dim);
        let left = AlgebraElement::from_diagram(dp);
        for (j, d) in w.basis().iter().enumerate() {
            let prod = left.mul(&x_of(d)).unwrap();
            for (xd, c) in crate::algebra::to_x_basis(&prod) {
                let k = w.index_of(&xd).expect("module is closed");
                mat[(k, j)] = c;
            }
        }
        mat
    }

    #[test]
    fn simple_dimensions() {
        assert_eq!(simple(&label(1, &[1, 1])).unwrap().dimension(), 2);
        assert_eq!(simple(&label(2, &[1, 2, 2])).unwrap().dimension(), 30);
        assert_eq!(simple(&label(3, &[4, 0, 0, 0])).unwrap().dimension(), 1);
        assert_eq!(simple(&label(2, &[0, 0, 0])).unwrap().dimension(), 1);
        for m in 0..=5 {
            for n in 1..=3 {
                for c in all_classes(m, n) {
                    let brute = enumerate_diagrams(m, n)
                        .map(|all| {
                            all.iter()
                                .filter(|d| d.bottom() == c.canonical_boundary())
                                .count()
                        })
                        .unwrap_or_else(|_| c.dimension());
                    assert_eq!(simple(&c).unwrap().dimension(), brute);
                    assert_eq!(c.dimension(), brute);
                }
            }
        }
    }

    #[test]
    fn rule_matches_brute_force_action() {
        for (m, n) in [(2, 1), (3, 1), (2, 2)] {
            for c in all_classes(m, n) {
                let w = simple(&c).unwrap();
                for dp in enumerate_diagrams(m, n).unwrap() {
                    assert_eq!(w.diagram_matrix(&dp).unwrap(), brute_force_matrix(&w, &dp));
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let w = simple(&label(1, &[1, 1])).unwrap();
        let v = vec![q(2), q(-3)];
        assert_eq!(w.act(&identity(2, 1).unwrap(), &v).unwrap(), v);
        let id = Diagram::diagonal(2, 1, 1).unwrap();
        assert_eq!(w.diagram_matrix(&id).unwrap(), Matrix::identity(2));
        let empty = Diagram::empty(2, 1).unwrap();
        assert!(w.diagram_matrix(&empty).unwrap().is_zero());
        assert!(w.act(&identity(2, 1).unwrap(), &[q(1)]).is_err());
        assert!(w.act(&identity(1, 1).unwrap(), &v).is_err());
    }

    #[test]
    fn simple_modules_are_unital_and_multiplicative() {
        for c in all_classes(3, 1).into_iter().chain(all_classes(2, 2)) {
            let module = simple(&c).unwrap().to_explicit();
            assert!(module.is_unital().unwrap());
            let all = enumerate_diagrams(c.m(), c.n()).unwrap();
            let pairs: Vec<_> = all.iter().flat_map(|a| all.iter().map(move |b| (a, b))).collect();
            assert!(module.respects_products(pairs).unwrap());
        }
    }

    #[test]
    fn regular_modules() {
        assert_eq!(regular_module(2, 1).unwrap().dimension(), 6);
        assert_eq!(regular_module(1, 2).unwrap().dimension(), 3);
        assert_eq!(regular_module(1, 1).unwrap().dimension(), 2);
        let reg = regular_module(2, 1).unwrap();
        assert!(reg.is_unital().unwrap());
        assert_eq!(multiplicity(&reg, &label(1, &[1, 1])).unwrap(), 2);
        assert_eq!(multiplicity(&reg, &label(1, &[2, 0])).unwrap(), 1);
    }

    #[test]
    fn decompositions() {
        let dec = decompose(&regular_module(2, 1).unwrap()).unwrap();
        assert_eq!(
            dec.classes,
            vec![
                (label(1, &[2, 0]), 1),
                (label(1, &[1, 1]), 2),
                (label(1, &[0, 2]), 1)
            ]
        );
        assert_eq!(dec.total_dim, 6);
        let dec = decompose(&regular_module(1, 2).unwrap()).unwrap();
        assert_eq!(dec.classes.len(), 3);
        assert!(dec.classes.iter().all(|(_, k)| *k == 1));
        assert!(decompose(&ExplicitModule::zero(2, 1)).unwrap().is_zero());

        let c = label(2, &[1, 1, 0]);
        let w = simple(&c).unwrap().to_explicit();
        assert_eq!(multiplicity(&w, &c).unwrap(), 1);
        let sum = w.direct_sum(&w).unwrap();
        let other = simple(&label(2, &[0, 1, 1])).unwrap().to_explicit();
        let sum = sum.direct_sum(&other).unwrap();
        let dec = decompose(&sum).unwrap();
        assert_eq!(dec.multiplicity_of(&c), 2);
        assert_eq!(dec.multiplicity_of(&label(2, &[0, 1, 1])), 1);
        assert_eq!(dec.total_dim, 6);
    }

    #[test]
    fn non_module_is_rejected() {
        // a line on which everything acts by zero is not unital
        let bogus = ExplicitModule::new(2, 1, 1, |_| Matrix::zeros(1, 1));
        assert!(matches!(
            decompose(&bogus),
            Err(Error::DecompositionMismatch { .. })
        ));
    }

    #[test]
    fn restriction_examples() {
        let w11 = simple(&label(1, &[1, 1])).unwrap().to_explicit();
        let res = restrict(1, &w11).unwrap();
        assert!(res.is_unital().unwrap());
        assert_eq!(decompose(&res).unwrap().classes, vec![(label(1, &[1, 0]), 1)]);

        let w20 = simple(&label(1, &[2, 0])).unwrap().to_explicit();
        assert_eq!(restrict(1, &w20).unwrap().dimension(), 0);

        let res0 = restrict(0, &w11).unwrap();
        assert_eq!(decompose(&res0).unwrap().classes, vec![(label(1, &[0, 1]), 1)]);

        let w1 = simple(&label(1, &[0, 1])).unwrap().to_explicit();
        let to_field = restrict(1, &w1).unwrap();
        assert_eq!(to_field.m(), 0);
        assert_eq!(decompose(&to_field).unwrap().classes, vec![(label(1, &[0, 0]), 1)]);
        assert!(restrict(0, &ExplicitModule::zero(0, 1)).is_err());
    }

    #[test]
    fn class_maps() {
        assert_eq!(restrict_class(1, &label(2, &[1, 1, 0])), Some(label(2, &[1, 0, 0])));
        assert_eq!(restrict_class(0, &label(1, &[0, 2])), None);
        assert_eq!(restrict_class(0, &label(2, &[3, 0, 0])), Some(label(2, &[2, 0, 0])));
        assert_eq!(induce_class(1, &label(1, &[1, 0])).unwrap(), label(1, &[1, 1]));
        assert_eq!(induce_class(0, &label(2, &[0, 1, 0])).unwrap(), label(2, &[1, 1, 0]));
        for c in all_classes(3, 2) {
            for i in 0..=2 {
                if let Some(r) = restrict_class(i, &c) {
                    assert_eq!(induce_class(i, &r).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn adjunction_examples() {
        assert_eq!(adjunction_check(1, &label(1, &[1, 0]), &label(1, &[1, 1])).unwrap(), (1, 1));
        assert_eq!(adjunction_check(1, &label(1, &[1, 0]), &label(1, &[2, 0])).unwrap(), (0, 0));
        assert_eq!(adjunction_check(0, &label(1, &[0, 1]), &label(1, &[1, 1])).unwrap(), (1, 1));
    }

    #[test]
    fn labels_order_and_keys() {
        let classes = all_classes(2, 1);
        assert_eq!(classes, vec![label(1, &[2, 0]), label(1, &[1, 1]), label(1, &[0, 2])]);
        let mut sorted = all_classes(3, 2);
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, all_classes(3, 2));
        assert_eq!(label(2, &[1, 1, 0]).key(), "2|1,1,0");
        assert!(ClassLabel::with_size(3, 1, vec![1, 1]).is_err());
        assert!(ClassLabel::new(2, vec![1, 1]).is_err());
        let text = serde_json::to_string(&label(1, &[1, 1])).unwrap();
        assert_eq!(text, r#"{"m":2,"n":1,"counts":[1,1]}"#);
    }

    #[test]
    fn induced_ideals() {
        for n in 1..=2 {
            for m in 0..=2 {
                for c in all_classes(m, n) {
                    for i in 0..=n {
                        let ind = induce(i, &c).unwrap();
                        assert!(ind.is_unital().unwrap());
                        let d = decompose(&ind).unwrap();
                        assert_eq!(d.classes, vec![(induce_class(i, &c).unwrap(), 1)], "{c:?} i={i}");
                    }
                }
            }
        }
        assert_eq!(induce(1, &label(1, &[1, 0])).unwrap().dimension(), 2);
        assert!(induce(2, &label(1, &[1, 0])).is_err());
    }
}

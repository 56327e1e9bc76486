//! The semigroup algebra `CP_m`: finite rational combinations of diagrams.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{check_cap, idempotent_diagram, Boundary, Cap, Diagram};
use crate::error::{Error, Result};
use crate::{q, Q};

/// `Σ a_d d` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    m: usize,
    n: usize,
    terms: BTreeMap<Diagram, Q>,
}

impl AlgebraElement {
    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        Self::from_terms(d.m(), d.n(), [(d.clone(), Q::one())]).expect("single diagram")
    }

    /// Sums the given terms; repeated diagrams accumulate.
    pub fn from_terms(
        m: usize,
        n: usize,
        terms: impl IntoIterator<Item = (Diagram, Q)>,
    ) -> Result<Self> {
        let mut out = Self::zero(m, n);
        for (d, c) in terms {
            if d.m() != m || d.n() != n {
                return Err(Error::ShapeMismatch {
                    left_m: m,
                    left_n: n,
                    right_m: d.m(),
                    right_n: d.n(),
                });
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, Q> {
        &self.terms
    }

    pub fn coefficient(&self, d: &Diagram) -> Q {
        self.terms.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, d: Diagram, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::ShapeMismatch {
                left_m: self.m,
                left_n: self.n,
                right_m: other.m,
                right_n: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.n);
        }
        Self {
            m: self.m,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, a)| (d.clone(), a * c))
                .collect(),
        }
    }

    /// Bilinear extension of the diagram product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = Self::zero(self.m, self.n);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1.compose_unchecked(d2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `a ⊗ b`: bilinear extension of juxtaposition, landing in `CP_{m₁+m₂}`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ColorCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.m + other.m, self.n);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1.juxtapose(d2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    /// The anti-involution `ω`, flipping every diagram.
    pub fn omega(&self) -> Self {
        Self {
            m: self.m,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.flip(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 || c.is_negative() {
                write!(f, "{sign} ")?;
            }
            write!(f, "{}[{d}] ", c.abs())?;
        }
        Ok(())
    }
}

/// Serialized as `{"m":..,"n":..,"terms":[{"coeff":"p/q","diagram":{..}}]}`.
#[derive(Serialize, Deserialize)]
struct ElementJson {
    m: usize,
    n: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    diagram: Diagram,
}

pub fn format_rational(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(parse_int(p)?, den))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            m: self.m,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    coeff: format_rational(c),
                    diagram: d.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = ElementJson::deserialize(de)?;
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((t.diagram, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        AlgebraElement::from_terms(j.m, j.n, terms).map_err(serde::de::Error::custom)
    }
}

/// `x_d = Σ_{d' ⊆ d} (-1)^{size(d) - size(d')} d'`.
pub fn x_of(d: &Diagram) -> AlgebraElement {
    let mut out = AlgebraElement::zero(d.m(), d.n());
    for (sub, removed) in d.sub_diagrams() {
        let sign = if removed % 2 == 0 { q(1) } else { q(-1) };
        out.add_term(sub, sign);
    }
    out
}

/// Coordinates of `a` in the `x` basis. Since `d = Σ_{d' ⊆ d} x_{d'}`, the
/// coefficient of `x_{d'}` is the sum of `a_d` over all `d ⊇ d'`.
pub fn to_x_basis(a: &AlgebraElement) -> BTreeMap<Diagram, Q> {
    let mut coords: BTreeMap<Diagram, Q> = BTreeMap::new();
    for (d, c) in &a.terms {
        for (sub, _) in d.sub_diagrams() {
            *coords.entry(sub).or_insert_with(Q::zero) += c;
        }
    }
    coords.retain(|_, c| !c.is_zero());
    coords
}

/// `Σ c_d x_d`.
pub fn from_x_basis(m: usize, n: usize, coords: &BTreeMap<Diagram, Q>) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(m, n);
    for (d, c) in coords {
        if d.m() != m || d.n() != n {
            return Err(Error::ShapeMismatch {
                left_m: m,
                left_n: n,
                right_m: d.m(),
                right_n: d.n(),
            });
        }
        for (sub, removed) in d.sub_diagrams() {
            let c = if removed % 2 == 0 { c.clone() } else { -c };
            out.add_term(sub, c);
        }
    }
    Ok(out)
}

/// `e_1 = Σ_i I_i - (n-1) I_0` in `CP_1`.
pub fn unit_identity(n: usize) -> Result<AlgebraElement> {
    let mut terms = vec![(Diagram::unit(n, 0)?, -q(n as i64 - 1))];
    for i in 1..=n {
        terms.push((Diagram::unit(n, i)?, Q::one()));
    }
    AlgebraElement::from_terms(1, n, terms)
}

/// `e_m = e_1^{⊗m}`.
pub fn identity(m: usize, n: usize) -> Result<AlgebraElement> {
    identity_with(m, n, Cap::Enforce)
}

pub fn identity_with(m: usize, n: usize, cap: Cap) -> Result<AlgebraElement> {
    check_cap(m, n, cap)?;
    let e1 = unit_identity(n)?;
    let mut e = AlgebraElement::from_diagram(&Diagram::empty(0, n)?);
    for _ in 0..m {
        e = e.tensor(&e1)?;
    }
    Ok(e)
}

/// The last-strand factor of `ψ_{i,m}`: `I_i - I_0` for `i ≥ 1`, `I_0` for `i = 0`.
pub fn strand_idempotent(n: usize, i: usize) -> Result<AlgebraElement> {
    if i > n {
        return Err(Error::ColorOutOfRange { color: i, min: 0, n });
    }
    let i0 = Diagram::unit(n, 0)?;
    if i == 0 {
        Ok(AlgebraElement::from_diagram(&i0))
    } else {
        AlgebraElement::from_terms(1, n, [(Diagram::unit(n, i)?, q(1)), (i0, q(-1))])
    }
}

/// `ψ_{i,m}(a) = a ⊗ (I_i - I_0)` (`i ≥ 1`) or `a ⊗ I_0` (`i = 0`), from `CP_{m-1}`
/// into `CP_m`.
pub fn embed(i: usize, a: &AlgebraElement) -> Result<AlgebraElement> {
    a.tensor(&strand_idempotent(a.n(), i)?)
}

/// `ψ_{i,m}(e_{m-1})`, the idempotent cutting out `Res_{i,m}`.
pub fn truncation_idempotent(m: usize, n: usize, i: usize) -> Result<AlgebraElement> {
    if m == 0 {
        return Err(Error::RestrictFromZero);
    }
    embed(i, &identity(m - 1, n)?)
}

fn check_pair(d1: &Diagram, d2: &Diagram) -> Result<()> {
    if d1.m() != d2.m() || d1.n() != d2.n() {
        return Err(Error::ShapeMismatch {
            left_m: d1.m(),
            left_n: d1.n(),
            right_m: d2.m(),
            right_n: d2.n(),
        });
    }
    Ok(())
}

/// `d' · x_d = x_{d'd}` when `τ(d) ⊆ β(d')`, else 0. Returns the `x`-index.
pub fn diagram_times_x(left: &Diagram, right: &Diagram) -> Result<Option<Diagram>> {
    check_pair(left, right)?;
    Ok(right
        .top()
        .is_contained_in(&left.bottom())
        .then(|| left.compose_unchecked(right)))
}

/// `x_{d'} · d = x_{d'd}` when `β(d') ⊆ τ(d)`, else 0.
pub fn x_times_diagram(left: &Diagram, right: &Diagram) -> Result<Option<Diagram>> {
    check_pair(left, right)?;
    Ok(left
        .bottom()
        .is_contained_in(&right.top())
        .then(|| left.compose_unchecked(right)))
}

/// `x_{d'} · x_d = x_{d'd}` when `β(d') = τ(d)`, else 0.
pub fn x_times_x(left: &Diagram, right: &Diagram) -> Result<Option<Diagram>> {
    check_pair(left, right)?;
    Ok((left.bottom_word() == right.top_word()).then(|| left.compose_unchecked(right)))
}

/// `x_{d1} · x_{d2}` expanded in the diagram basis.
pub fn x_product(d1: &Diagram, d2: &Diagram) -> Result<AlgebraElement> {
    Ok(match x_times_x(d1, d2)? {
        Some(d) => x_of(&d),
        None => AlgebraElement::zero(d1.m(), d1.n()),
    })
}

/// `x_{d_T}` for a boundary `T`.
pub fn x_idempotent(t: &Boundary) -> AlgebraElement {
    x_of(&idempotent_diagram(t))
}

//! The box crystal `B(ε₁)`, one-row crystals `B(mε₁)`, and semistandard tableau
//! crystals `B(λ)` over the alphabet `{0,…,n}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{compositions, letter_counts, sorted_word, word_key};
use crate::crystal::{signature_apply, Crystal, Level, Operator, Weight};
use crate::error::{Error, Result};

/// A weakly increasing word over `{0,…,n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowTableau {
    n: usize,
    entries: Vec<usize>,
}

impl RowTableau {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoColors);
        }
        if entries.iter().any(|&a| a > n) || entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidTableau(format!(
                "row {} is not weakly increasing over 0..={n}",
                word_key(&entries)
            )));
        }
        Ok(Self { n, entries })
    }

    /// `0^{c₀} 1^{c₁} ⋯ n^{c_n}`.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let n = counts.len().checked_sub(1).ok_or(Error::NoColors)?;
        Self::new(n, sorted_word(counts))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn counts(&self) -> Vec<usize> {
        letter_counts(&self.entries, self.n + 1)
    }

    pub fn weight(&self) -> Weight {
        Weight(self.counts().into_iter().map(|c| c as i64).collect())
    }

    pub fn key(&self) -> String {
        word_key(&self.entries)
    }

    /// Changes the leftmost `i` to `i − 1`.
    pub fn raise(&self, i: usize) -> Option<Self> {
        let k = self.entries.iter().position(|&a| a == i)?;
        let mut entries = self.entries.clone();
        entries[k] = i - 1;
        Some(Self { n: self.n, entries })
    }

    /// Changes the rightmost `i − 1` to `i`.
    pub fn lower(&self, i: usize) -> Option<Self> {
        let k = self.entries.iter().rposition(|&a| a == i - 1)?;
        let mut entries = self.entries.clone();
        entries[k] = i;
        Some(Self { n: self.n, entries })
    }
}

impl fmt::Display for RowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A filling of a Young diagram in English notation, rows listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tableau {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Checks shape and semistandardness over `{0,…,n}`.
    pub fn new(rows: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        check_shape(&shape, n)?;
        let t = Self { shape, rows };
        t.validate(n)?;
        Ok(t)
    }

    /// Row `r` filled with `r` (0-based), the highest-weight filling.
    pub fn highest(shape: &[usize], n: usize) -> Result<Self> {
        check_shape(shape, n)?;
        Ok(Self {
            shape: shape.to_vec(),
            rows: shape.iter().enumerate().map(|(r, &len)| vec![r; len]).collect(),
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.iter().sum()
    }

    /// Rows weakly increasing, columns strictly increasing, letters at most `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.rows.len() != self.shape.len()
            || self.rows.iter().zip(&self.shape).any(|(r, &l)| r.len() != l)
        {
            return Err(Error::InvalidTableau("rows do not match the shape".into()));
        }
        let semistandard = self.rows.iter().all(|r| r.iter().all(|&a| a <= n) && r.windows(2).all(|w| w[0] <= w[1]))
            && self
                .rows
                .windows(2)
                .all(|p| p[1].iter().zip(&p[0]).all(|(below, above)| below > above));
        if semistandard {
            Ok(())
        } else {
            Err(Error::NotSemistandard { rows: self.rows.clone() })
        }
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut w = Weight::zero(n);
        for &a in self.rows.iter().flatten() {
            w.0[a] += 1;
        }
        w
    }

    /// Rows joined by `/`, e.g. `0113/23/3`.
    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|r| word_key(r))
            .collect::<Vec<_>>()
            .join("/")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn check_shape(shape: &[usize], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoColors);
    }
    if shape.is_empty() || shape.contains(&0) || shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{shape:?} is not a nonempty partition")));
    }
    if shape.len() > n + 1 {
        return Err(Error::InvalidShape(format!(
            "{shape:?} has more than {} parts",
            n + 1
        )));
    }
    Ok(())
}

/// `B(ε₁)`: the chain `⟦0⟧ → ⟦1⟧ → ⋯ → ⟦n⟧`.
pub fn box_crystal(n: usize) -> Result<Crystal> {
    if n == 0 {
        return Err(Error::NoColors);
    }
    let nodes: Vec<usize> = (0..=n).collect();
    let delta = |a: usize, b: usize| Level::Finite(i64::from(a == b));
    Crystal::from_operators(
        n,
        &nodes,
        |j| j.to_string(),
        |&j| Weight::unit(n, j + 1),
        |i, &j| (j == i).then(|| i - 1),
        |i, &j| (j + 1 == i).then_some(i),
        Some(&|i, &j| (delta(i, j), delta(i, j + 1))),
    )
}

/// All one-row tableaux of length `m`, in lexicographic order.
pub fn row_tableaux(m: usize, n: usize) -> Result<Vec<RowTableau>> {
    let mut rows = compositions(m, n + 1)
        .iter()
        .map(|c| RowTableau::from_counts(c))
        .collect::<Result<Vec<_>>>()?;
    rows.sort();
    Ok(rows)
}

/// `B(mε₁)` on one-row tableaux with the leftmost/rightmost rules.
pub fn row_crystal(m: usize, n: usize) -> Result<Crystal> {
    if m == 0 {
        return Err(Error::InvalidShape("a row needs at least one box".into()));
    }
    let nodes = row_tableaux(m, n)?;
    Crystal::from_operators(
        n,
        &nodes,
        RowTableau::key,
        RowTableau::weight,
        |i, r| r.raise(i),
        |i, r| r.lower(i),
        None,
    )
}

/// Middle-Eastern reading: right to left along each row, rows top to bottom.
pub fn reading(t: &Tableau) -> Vec<usize> {
    t.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
}

/// Key of `⟦a₁⟧ ⊗ ⋯ ⊗ ⟦a_k⟧` inside a tensor power of [`box_crystal`].
pub fn tensor_word_key(word: &[usize]) -> String {
    word.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join("⊗")
}

/// `ẽ_i` or `f̃_i` on a tableau, lifted through the reading word.
pub fn tableau_op(op: Operator, i: usize, t: &Tableau, n: usize) -> Result<Option<Tableau>> {
    if i == 0 || i > n {
        return Err(Error::ColorOutOfRange { color: i, min: 1, n });
    }
    t.validate(n)?;
    let mut cells = Vec::with_capacity(t.size());
    for (r, row) in t.rows.iter().enumerate() {
        for c in (0..row.len()).rev() {
            cells.push((r, c));
        }
    }
    let signature: Vec<(usize, usize)> = cells
        .iter()
        .map(|&(r, c)| {
            let a = t.rows[r][c];
            (usize::from(a == i), usize::from(a + 1 == i))
        })
        .collect();
    let Some(k) = signature_apply(op, &signature)? else {
        return Ok(None);
    };
    let (r, c) = cells[k];
    let mut rows = t.rows.clone();
    rows[r][c] = match op {
        Operator::E => i - 1,
        Operator::F => i,
    };
    let out = Tableau {
        shape: t.shape.clone(),
        rows,
    };
    out.validate(n)?;
    Ok(Some(out))
}

/// All semistandard tableaux of shape `λ` over `{0,…,n}`, in row-major
/// lexicographic order.
pub fn enumerate_ssyt(shape: &[usize], n: usize) -> Result<Vec<Tableau>> {
    check_shape(shape, n)?;
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<usize>>,
        n: usize,
        shape: &[usize],
        out: &mut Vec<Tableau>,
    ) {
        let Some(&(r, c)) = cells.get(k) else {
            out.push(Tableau {
                shape: shape.to_vec(),
                rows: rows.clone(),
            });
            return;
        };
        let left = if c > 0 { rows[r][c - 1] } else { 0 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 0 };
        for a in left.max(above)..=n {
            rows[r][c] = a;
            fill(k + 1, cells, rows, n, shape, out);
        }
    }
    fill(0, &cells, &mut rows, n, shape, &mut out);
    Ok(out)
}

/// `B(λ)` generated from the highest-weight tableau by the lifted operators,
/// breadth first with each frontier sorted.
pub fn ssyt_crystal(shape: &[usize], n: usize) -> Result<Crystal> {
    let start = Tableau::highest(shape, n)?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut order = Vec::new();
    let mut frontier = vec![start];
    let mut moves: HashMap<(Tableau, usize, bool), Option<Tableau>> = HashMap::new();
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for t in &frontier {
            for i in 1..=n {
                for op in [Operator::E, Operator::F] {
                    let target = tableau_op(op, i, t, n)?;
                    if let Some(s) = &target {
                        if !seen.contains(s) {
                            next.insert(s.clone());
                        }
                    }
                    moves.insert((t.clone(), i, op == Operator::F), target);
                }
            }
        }
        order.append(&mut frontier);
        for s in &next {
            seen.insert(s.clone());
        }
        frontier = next.into_iter().collect();
    }
    let step = |op: Operator, i: usize, t: &Tableau| moves[&(t.clone(), i, op == Operator::F)].clone();
    Crystal::from_operators(
        n,
        &order,
        Tableau::key,
        |t| t.weight(n),
        |i, t| step(Operator::E, i, t),
        |i, t| step(Operator::F, i, t),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{are_isomorphic, tensor_all};

    fn tab(rows: &[&[usize]], n: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), n).unwrap()
    }

    #[test]
    fn box_crystal_data() {
        let b = box_crystal(3).unwrap();
        assert!(b.check_axioms().is_empty());
        assert_eq!(b.wt(0), &Weight(vec![1, 0, 0, 0]));
        assert_eq!(b.eps(2, 2), Level::Finite(1));
        assert_eq!(b.phi(1, 2), Level::Finite(1));
        assert_eq!(b.arrows(), vec![(0, 1, 1), (1, 2, 2), (2, 3, 3)]);
        assert!(box_crystal(0).is_err());
    }

    #[test]
    fn row_crystal_rules() {
        assert_eq!(row_crystal(1, 3).unwrap(), box_crystal(3).unwrap());
        let r = row_crystal(2, 1).unwrap();
        assert_eq!(r.keys(), ["00", "01", "11"]);
        assert_eq!(r.arrows(), vec![(0, 1, 1), (1, 2, 1)]);
        assert_eq!(r.e(1, 1), Some(0));
        assert_eq!(r.e(1, 0), None);
        assert!(r.check_axioms().is_empty());
        assert_eq!(row_crystal(3, 2).unwrap().len(), 10);
        let row = RowTableau::new(2, vec![0, 0, 2]).unwrap();
        assert_eq!(row.raise(1), None);
        assert!(RowTableau::new(2, vec![1, 0]).is_err());
    }

    #[test]
    fn readings() {
        let t = tab(&[&[0, 1, 1, 3], &[2, 3], &[3]], 3);
        assert_eq!(reading(&t), vec![3, 1, 1, 0, 3, 2, 3]);
        assert_eq!(reading(&tab(&[&[0, 0, 0]], 1)), vec![0, 0, 0]);
        assert_eq!(reading(&tab(&[&[0], &[1], &[2]], 2)), vec![0, 1, 2]);
    }

    #[test]
    fn invalid_tableaux() {
        assert!(matches!(
            Tableau::new(vec![vec![0, 1], vec![0]], 2),
            Err(Error::NotSemistandard { .. })
        ));
        assert!(Tableau::new(vec![vec![0], vec![1, 2]], 2).is_err());
        assert!(Tableau::new(vec![vec![0], vec![1], vec![2]], 1).is_err());
        assert!(Tableau::new(vec![vec![3]], 2).is_err());
    }

    #[test]
    fn tableau_operators() {
        let t = tab(&[&[0, 0]], 1);
        assert_eq!(tableau_op(Operator::F, 1, &t, 1).unwrap(), Some(tab(&[&[0, 1]], 1)));
        let h = Tableau::highest(&[2, 1], 2).unwrap();
        assert_eq!(h, tab(&[&[0, 0], &[1]], 2));
        for i in 1..=2 {
            assert_eq!(tableau_op(Operator::E, i, &h, 2).unwrap(), None);
        }
        assert!(tableau_op(Operator::E, 3, &h, 2).is_err());
    }

    #[test]
    fn ssyt_counts() {
        assert_eq!(enumerate_ssyt(&[1], 2).unwrap().len(), 3);
        assert_eq!(enumerate_ssyt(&[2, 1], 2).unwrap().len(), 8);
        assert_eq!(enumerate_ssyt(&[2, 2], 1).unwrap(), vec![tab(&[&[0, 0], &[1, 1]], 1)]);
        assert_eq!(ssyt_crystal(&[2, 1], 2).unwrap().len(), 8);
        assert_eq!(ssyt_crystal(&[1, 1, 1], 2).unwrap().len(), 1);
        assert!(ssyt_crystal(&[1, 1, 1], 1).is_err());
        assert!(ssyt_crystal(&[1, 2], 2).is_err());
    }

    #[test]
    fn ssyt_crystal_covers_enumeration() {
        for n in 1..=2 {
            for shape in [vec![1], vec![2], vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![3, 2]] {
                if shape.len() > n + 1 {
                    continue;
                }
                let b = ssyt_crystal(&shape, n).unwrap();
                assert!(b.check_axioms().is_empty(), "{shape:?}");
                let mut from_crystal: Vec<String> = b.keys().to_vec();
                let mut enumerated: Vec<String> =
                    enumerate_ssyt(&shape, n).unwrap().iter().map(Tableau::key).collect();
                from_crystal.sort();
                enumerated.sort();
                assert_eq!(from_crystal, enumerated, "{shape:?}, n={n}");
            }
        }
    }

    #[test]
    fn one_row_constructions_agree() {
        for n in 1..=3 {
            for m in 1..=4 {
                let row = row_crystal(m, n).unwrap();
                let ssyt = ssyt_crystal(&[m], n).unwrap();
                assert!(are_isomorphic(&row, &ssyt).unwrap().is_some(), "m={m}, n={n}");
            }
        }
    }

    #[test]
    fn reading_intertwines_operators() {
        let n = 2;
        let bx = box_crystal(n).unwrap();
        for shape in [vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
            let factors: Vec<&Crystal> = std::iter::repeat(&bx).take(shape.iter().sum()).collect();
            let power = tensor_all(&factors).unwrap();
            for t in enumerate_ssyt(&shape, n).unwrap() {
                let at = power.index_of(&tensor_word_key(&reading(&t))).unwrap();
                for i in 1..=n {
                    for op in [Operator::E, Operator::F] {
                        let lifted = tableau_op(op, i, &t, n).unwrap().map(|s| tensor_word_key(&reading(&s)));
                        let direct = power.apply(op, i, at).map(|b| power.key(b).to_owned());
                        assert_eq!(lifted, direct, "{t} {op}_{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_json() {
        let t = tab(&[&[0, 1], &[2]], 2);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"shape":[2,1],"rows":[[0,1],[2]]}"#);
        assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), t);
    }
}

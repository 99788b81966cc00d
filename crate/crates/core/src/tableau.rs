//! Tableaux of n-iterates: the leaf-expansion tableau `A_n`, the two-line
//! product tableau `B_n`, and their concatenation `A_n ⊕ B_n`.
//!
//! Line `i` of `A_n` holds every order-`n` tree whose leaves `i` and `i + 1`
//! form a cherry, i.e. the images of all order-`(n - 1)` trees under
//! replacement of leaf `i` by `x·x`. The lines of `B_n` are `{P·x}` and `{x·P}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{catalan, catalan_or_zero, BigNat};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::tree::{enumerate_iterates, index_of, product, substitute_leaf, IterateTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableauKind {
    A,
    B,
    #[serde(rename = "AB")]
    AB,
}

impl fmt::Display for TableauKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableauKind::A => "A",
            TableauKind::B => "B",
            TableauKind::AB => "AB",
        })
    }
}

impl std::str::FromStr for TableauKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(TableauKind::A),
            "b" => Ok(TableauKind::B),
            "ab" | "a+b" | "a⊕b" => Ok(TableauKind::AB),
            _ => Err(Error::arg(format!("unknown tableau kind {s:?}"))),
        }
    }
}

/// One line: a set of order-`n` iterates, held both as sorted enumeration
/// indices and as a bit set over the enumeration.
#[derive(Clone, Debug)]
pub struct Line {
    members: Vec<u32>,
    bits: BitSet,
}

impl Line {
    fn from_trees(universe: &[IterateTree], trees: impl Iterator<Item = IterateTree>) -> Self {
        let mut members: Vec<u32> = trees
            .map(|t| index_of(universe, t).expect("line member outside the enumeration") as u32)
            .collect();
        members.sort_unstable();
        members.dedup();
        let mut bits = BitSet::new(universe.len());
        for &m in &members {
            bits.insert(m as usize);
        }
        Line { members, bits }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Enumeration indices of the members, ascending.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }
}

/// An ordered family of lines over the order-`n` iterates.
#[derive(Clone, Debug)]
pub struct Tableau {
    order: usize,
    kind: TableauKind,
    universe: Arc<Vec<IterateTree>>,
    lines: Vec<Line>,
}

fn check_order(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::arg("tableaux need order n >= 1"));
    }
    if n > cap {
        return Err(Error::ResourceLimit { what: "tableau order", requested: n, cap });
    }
    Ok(())
}

/// Builds `A_n`: `n` lines, line `i` the leaf-`i` expansions of all `(n-1)`-iterates.
pub fn build_tableau_a(n: usize, cap: usize) -> Result<Tableau> {
    check_order(n, cap)?;
    let universe = Arc::new(enumerate_iterates(n, cap)?);
    let prev = enumerate_iterates(n - 1, cap)?;
    build_a_over(n, universe, &prev)
}

fn build_a_over(n: usize, universe: Arc<Vec<IterateTree>>, prev: &[IterateTree]) -> Result<Tableau> {
    let mut lines = Vec::with_capacity(n);
    for i in 1..=n {
        let images = prev
            .iter()
            .map(|&p| substitute_leaf(p, i))
            .collect::<Result<Vec<_>>>()?;
        lines.push(Line::from_trees(&universe, images.into_iter()));
    }
    Ok(Tableau { order: n, kind: TableauKind::A, universe, lines })
}

/// Builds `B_n`: line 1 is `{P·x}`, line 2 is `{x·P}` over all `(n-1)`-iterates.
pub fn build_tableau_b(n: usize, cap: usize) -> Result<Tableau> {
    check_order(n, cap)?;
    let universe = Arc::new(enumerate_iterates(n, cap)?);
    let prev = enumerate_iterates(n - 1, cap)?;
    Ok(build_b_over(n, universe, &prev))
}

fn build_b_over(n: usize, universe: Arc<Vec<IterateTree>>, prev: &[IterateTree]) -> Tableau {
    let x = IterateTree::LEAF;
    let right = Line::from_trees(&universe, prev.iter().map(|&p| product(p, x)));
    let left = Line::from_trees(&universe, prev.iter().map(|&p| product(x, p)));
    Tableau { order: n, kind: TableauKind::B, universe, lines: vec![right, left] }
}

/// Concatenates `A_n` and `B_n` into the `n + 2` line tableau `A_n ⊕ B_n`.
pub fn direct_sum(a: &Tableau, b: &Tableau) -> Result<Tableau> {
    if a.kind != TableauKind::A || b.kind != TableauKind::B {
        return Err(Error::arg(format!(
            "direct sum needs kinds (A, B), got ({}, {})",
            a.kind, b.kind
        )));
    }
    if a.order != b.order {
        return Err(Error::arg(format!(
            "direct sum of orders {} and {}",
            a.order, b.order
        )));
    }
    let mut lines = a.lines.clone();
    lines.extend(b.lines.iter().cloned());
    Ok(Tableau { order: a.order, kind: TableauKind::AB, universe: a.universe.clone(), lines })
}

/// Builds a tableau of any kind, sharing one enumeration between the parts of `A ⊕ B`.
pub fn build_tableau(kind: TableauKind, n: usize, cap: usize) -> Result<Tableau> {
    check_order(n, cap)?;
    let universe = Arc::new(enumerate_iterates(n, cap)?);
    let prev = enumerate_iterates(n - 1, cap)?;
    match kind {
        TableauKind::A => build_a_over(n, universe, &prev),
        TableauKind::B => Ok(build_b_over(n, universe, &prev)),
        TableauKind::AB => {
            let a = build_a_over(n, universe.clone(), &prev)?;
            let b = build_b_over(n, universe, &prev);
            direct_sum(&a, &b)
        }
    }
}

/// Multiplicity counts per multiplicity value, zero counts omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityHistogram {
    pub order: usize,
    pub kind: TableauKind,
    pub counts: BTreeMap<usize, u64>,
}

impl MultiplicityHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ k · count(k)`, the total number of line memberships.
    pub fn mass(&self) -> u64 {
        self.counts.iter().map(|(&k, &c)| k as u64 * c).sum()
    }

    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }
}

/// Serialized form of a tableau.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauDump {
    pub n: usize,
    pub kind: TableauKind,
    pub lines: Vec<Vec<String>>,
}

impl Tableau {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// All order-`n` iterates in canonical order; line members index into this.
    pub fn universe(&self) -> &[IterateTree] {
        &self.universe
    }

    /// The trees on line `i` (1-based), in canonical order.
    pub fn line_trees(&self, i: usize) -> Result<Vec<IterateTree>> {
        let line = self.line(i)?;
        Ok(line.members.iter().map(|&m| self.universe[m as usize]).collect())
    }

    fn line(&self, i: usize) -> Result<&Line> {
        if i == 0 || i > self.lines.len() {
            return Err(Error::arg(format!(
                "line index {i} out of range 1..={}",
                self.lines.len()
            )));
        }
        Ok(&self.lines[i - 1])
    }

    /// Size of the intersection of the named lines (1-based; repeats collapse).
    pub fn line_intersection_size(&self, indices: &[usize]) -> Result<BigNat> {
        let (first, rest) = indices
            .split_first()
            .ok_or_else(|| Error::arg("intersection of no lines"))?;
        let mut acc = self.line(*first)?.bits.clone();
        for &i in rest {
            acc.intersect_with(&self.line(i)?.bits);
        }
        Ok(BigNat::from(acc.count_ones()))
    }

    /// Number of lines containing `j`.
    pub fn multiplicity(&self, j: IterateTree) -> Result<usize> {
        if j.order() != self.order {
            return Err(Error::arg(format!(
                "iterate of order {} queried against a tableau of order {}",
                j.order(),
                self.order
            )));
        }
        let idx = index_of(&self.universe, j).expect("enumeration is complete");
        Ok(self.lines.iter().filter(|l| l.contains_index(idx)).count())
    }

    /// Multiplicity of every iterate, indexed like [`Tableau::universe`].
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.universe.len()];
        for line in &self.lines {
            for &m in &line.members {
                out[m as usize] += 1;
            }
        }
        out
    }

    pub fn multiplicity_histogram(&self) -> MultiplicityHistogram {
        let mut counts = BTreeMap::new();
        for m in self.multiplicities() {
            if m > 0 {
                *counts.entry(m as usize).or_insert(0u64) += 1;
            }
        }
        MultiplicityHistogram { order: self.order, kind: self.kind, counts }
    }

    /// 0-based indices of the lines containing the iterate at enumeration index `idx`.
    pub fn lines_containing(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.contains_index(idx))
            .map(|(i, _)| i)
    }

    pub fn dump(&self) -> TableauDump {
        TableauDump {
            n: self.order,
            kind: self.kind,
            lines: self
                .lines
                .iter()
                .map(|l| {
                    l.members
                        .iter()
                        .map(|&m| self.universe[m as usize].code_string())
                        .collect()
                })
                .collect(),
        }
    }
}

/// The intersection law for lines of `A_n ⊕ B_n`.
///
/// With `k` distinct indices: `S_{n-1}` if all indices coincide, `0` if some
/// pair differs by 1 modulo `n`, `S_{n-k}` otherwise.
pub fn predicted_intersection_size(n: usize, indices: &[usize]) -> Result<BigNat> {
    if n < 2 {
        return Err(Error::arg(format!("intersection law needs n >= 2, got {n}")));
    }
    if indices.is_empty() {
        return Err(Error::arg("intersection of no lines"));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n + 2) {
        return Err(Error::arg(format!("line index {bad} out of range 1..={}", n + 2)));
    }
    let mut distinct = indices.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == 1 {
        return catalan(n as i64 - 1);
    }
    for (p, &a) in distinct.iter().enumerate() {
        for &b in &distinct[p + 1..] {
            if (b - a) % n == 1 {
                return Ok(BigNat::default());
            }
        }
    }
    Ok(catalan_or_zero(n as i64 - distinct.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{cherry_count, DEFAULT_ENUMERATION_CAP as CAP};

    fn x() -> IterateTree {
        IterateTree::LEAF
    }
    fn xx() -> IterateTree {
        product(x(), x())
    }
    fn words(ts: &[IterateTree]) -> Vec<String> {
        ts.iter().map(|t| t.to_word()).collect()
    }

    #[test]
    fn a_shapes() {
        let a1 = build_tableau_a(1, CAP).unwrap();
        assert_eq!(a1.line_count(), 1);
        assert_eq!(a1.line_trees(1).unwrap(), vec![xx()]);
        let a4 = build_tableau_a(4, CAP).unwrap();
        assert_eq!(a4.line_count(), 4);
        assert!(a4.lines().iter().all(|l| l.len() == 5));
    }

    #[test]
    fn b_lines() {
        let b3 = build_tableau_b(3, CAP).unwrap();
        let mut l1 = words(&b3.line_trees(1).unwrap());
        let mut l2 = words(&b3.line_trees(2).unwrap());
        l1.sort();
        l2.sort();
        assert_eq!(l1, vec!["((x·x)·x)·x", "(x·(x·x))·x"]);
        assert_eq!(l2, vec!["x·((x·x)·x)", "x·(x·(x·x))"]);
        let b2 = build_tableau_b(2, CAP).unwrap();
        assert_eq!(words(&b2.line_trees(1).unwrap()), vec!["(x·x)·x"]);
        assert_eq!(words(&b2.line_trees(2).unwrap()), vec!["x·(x·x)"]);
        let b1 = build_tableau_b(1, CAP).unwrap();
        assert_eq!(b1.line_trees(1).unwrap(), b1.line_trees(2).unwrap());
    }

    #[test]
    fn direct_sum_line_counts() {
        for (n, lines) in [(2, 4), (3, 5), (6, 8)] {
            let t = build_tableau(TableauKind::AB, n, CAP).unwrap();
            assert_eq!(t.line_count(), lines);
            assert_eq!(t.kind(), TableauKind::AB);
        }
    }

    #[test]
    fn direct_sum_rejects_mismatch() {
        let a = build_tableau_a(3, CAP).unwrap();
        let b = build_tableau_b(4, CAP).unwrap();
        assert!(matches!(direct_sum(&a, &b), Err(Error::Argument(_))));
        assert!(direct_sum(&b, &a).is_err());
    }

    #[test]
    fn direct_sum_places_product_lines_last() {
        let a = build_tableau_a(3, CAP).unwrap();
        let b = build_tableau_b(3, CAP).unwrap();
        let ab = direct_sum(&a, &b).unwrap();
        assert_eq!(ab.line_trees(4).unwrap(), b.line_trees(1).unwrap());
        assert_eq!(ab.line_trees(5).unwrap(), b.line_trees(2).unwrap());
        assert_eq!(ab.line_trees(1).unwrap(), a.line_trees(1).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let ab6 = build_tableau(TableauKind::AB, 6, CAP).unwrap();
        assert_eq!(ab6.line_intersection_size(&[1, 2]).unwrap(), BigNat::from(0u32));
        assert_eq!(ab6.line_intersection_size(&[1, 3]).unwrap(), BigNat::from(14u32));
        assert_eq!(ab6.line_intersection_size(&[1, 8]).unwrap(), BigNat::from(0u32));
        assert_eq!(ab6.line_intersection_size(&[4, 4]).unwrap(), BigNat::from(42u32));
        let ab3 = build_tableau(TableauKind::AB, 3, CAP).unwrap();
        assert_eq!(ab3.line_intersection_size(&[1, 4]).unwrap(), BigNat::from(1u32));
        assert!(ab3.line_intersection_size(&[0]).is_err());
        assert!(ab3.line_intersection_size(&[6]).is_err());
        assert!(ab3.line_intersection_size(&[]).is_err());
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_intersection_size(6, &[2, 8]).unwrap(), BigNat::from(14u32));
        assert_eq!(predicted_intersection_size(6, &[3, 3]).unwrap(), BigNat::from(42u32));
        assert_eq!(predicted_intersection_size(5, &[1, 3, 5]).unwrap(), BigNat::from(2u32));
        assert_eq!(predicted_intersection_size(6, &[7, 8]).unwrap(), BigNat::from(0u32));
        assert!(predicted_intersection_size(6, &[9]).is_err());
        assert!(predicted_intersection_size(1, &[1]).is_err());
    }

    #[test]
    fn law_holds_for_all_pairs() {
        for n in 3..=8 {
            let t = build_tableau(TableauKind::AB, n, CAP).unwrap();
            for i in 1..=n + 2 {
                for j in i..=n + 2 {
                    assert_eq!(
                        t.line_intersection_size(&[i, j]).unwrap(),
                        predicted_intersection_size(n, &[i, j]).unwrap(),
                        "n={n} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn law_degenerates_at_order_one() {
        let t = build_tableau(TableauKind::AB, 1, CAP).unwrap();
        // both product lines are {x·x}, so lines n+1 and n+2 meet
        assert_eq!(t.line_intersection_size(&[2, 3]).unwrap(), BigNat::from(1u32));
    }

    #[test]
    fn multiplicity_examples() {
        let a3 = build_tableau_a(3, CAP).unwrap();
        assert_eq!(a3.multiplicity(product(xx(), xx())).unwrap(), 2);
        let ab3 = build_tableau(TableauKind::AB, 3, CAP).unwrap();
        for &t in ab3.universe() {
            assert_eq!(ab3.multiplicity(t).unwrap(), 2);
        }
        let a1 = build_tableau_a(1, CAP).unwrap();
        assert_eq!(a1.multiplicity(xx()).unwrap(), 1);
        assert!(a1.multiplicity(product(xx(), x())).is_err());
    }

    #[test]
    fn histograms() {
        let a3 = build_tableau_a(3, CAP).unwrap().multiplicity_histogram();
        assert_eq!(a3.counts, BTreeMap::from([(1, 4), (2, 1)]));
        let ab3 = build_tableau(TableauKind::AB, 3, CAP).unwrap().multiplicity_histogram();
        assert_eq!(ab3.counts, BTreeMap::from([(2, 5)]));
        let a1 = build_tableau_a(1, CAP).unwrap().multiplicity_histogram();
        assert_eq!(a1.counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn line_sizes_and_histogram_mass() {
        for n in 2..=10 {
            let s_prev = catalan(n as i64 - 1).unwrap();
            let s_n: u64 = catalan(n as i64).unwrap().try_into().unwrap();
            for kind in [TableauKind::A, TableauKind::B, TableauKind::AB] {
                let t = build_tableau(kind, n, CAP).unwrap();
                for l in t.lines() {
                    assert_eq!(BigNat::from(l.len()), s_prev, "n={n} {kind}");
                }
                let h = t.multiplicity_histogram();
                let per_line: u64 = (&s_prev).try_into().unwrap();
                assert_eq!(h.mass(), t.line_count() as u64 * per_line);
                if kind != TableauKind::B {
                    assert_eq!(h.total(), s_n, "every iterate is covered, n={n} {kind}");
                }
            }
        }
    }

    #[test]
    fn multiplicity_matches_cherry_structure() {
        for n in 1..=10 {
            let a = build_tableau(TableauKind::A, n, CAP).unwrap();
            let ab = build_tableau(TableauKind::AB, n, CAP).unwrap();
            let ma = a.multiplicities();
            let mab = ab.multiplicities();
            for (idx, &t) in a.universe().iter().enumerate() {
                let c = cherry_count(t).unwrap();
                assert_eq!(ma[idx] as usize, c);
                let extra = t.root_left_is_leaf() as usize + t.root_right_is_leaf() as usize;
                assert_eq!(mab[idx] as usize, c + extra);
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            build_tableau_a(5, 4),
            Err(Error::ResourceLimit { requested: 5, cap: 4, .. })
        ));
        assert!(matches!(build_tableau_b(0, 4), Err(Error::Argument(_))));
    }

    #[test]
    fn dump_shape() {
        let d = build_tableau(TableauKind::AB, 2, CAP).unwrap().dump();
        assert_eq!(d.n, 2);
        assert_eq!(d.kind, TableauKind::AB);
        assert_eq!(d.lines, vec![vec!["11000"], vec!["10100"], vec!["11000"], vec!["10100"]]);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("\"kind\":\"AB\""));
    }
}

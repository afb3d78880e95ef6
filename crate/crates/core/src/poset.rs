//! Interval posets: every interval of a permutation, as a value range,
//! ordered by inclusion. Children of a node are listed by increasing
//! minimum, which fixes a plane embedding when the poset is a tree.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::json;

use crate::decomposition::{is_blockwise_simple, skeleton_decompose};
use crate::enumeration::{self, PermClass};
use crate::error::{Error, Result};
use crate::perm::{Permutation, ValueRange};

/// Default ceiling on `n` when searching for generators.
pub const GENERATOR_CAP: usize = 9;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalPoset {
    n: usize,
    /// Sorted by decreasing length, then by minimum; `nodes[0] = [1, n]`.
    nodes: Vec<ValueRange>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
}

/// Canonical nested-parentheses form of a tree poset: a leaf is `•`, an
/// internal node is `(` followed by its children's signatures and `)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PosetSignature(pub String);

impl fmt::Display for PosetSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An element of the closed poset: a node, or the artificial bottom `∅`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PosetElement {
    Bottom,
    Node(ValueRange),
}

pub fn build_interval_poset(p: &Permutation) -> IntervalPoset {
    IntervalPoset::from_ranges(p.len(), p.intervals()).expect("intervals of a permutation")
}

impl IntervalPoset {
    /// Poset on an explicit node set, which must include `[1, n]` and every
    /// singleton. Duplicates are ignored.
    pub fn from_ranges(n: usize, ranges: impl IntoIterator<Item = ValueRange>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("interval poset needs n >= 1"));
        }
        let set: BTreeSet<ValueRange> = ranges.into_iter().collect();
        for r in &set {
            if r.lo == 0 || r.lo > r.hi || r.hi > n {
                return Err(Error::input(format!("range {r} outside 1..={n}")));
            }
        }
        if !set.contains(&ValueRange::new(1, n)) {
            return Err(Error::input("missing the maximum [1, n]"));
        }
        if let Some(v) = (1..=n).find(|&v| !set.contains(&ValueRange::singleton(v))) {
            return Err(Error::input(format!("missing singleton {{{v}}}")));
        }
        let mut nodes: Vec<ValueRange> = set.into_iter().collect();
        nodes.sort_by_key(|r| (std::cmp::Reverse(r.len()), r.lo));

        let m = nodes.len();
        let strictly_inside = |i: usize, j: usize| i != j && nodes[j].contains(&nodes[i]);
        let mut parents = vec![Vec::new(); m];
        let mut children = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if strictly_inside(i, j)
                    && !(0..m).any(|k| strictly_inside(i, k) && strictly_inside(k, j))
                {
                    parents[i].push(j);
                    children[j].push(i);
                }
            }
        }
        for c in &mut children {
            c.sort_by_key(|&i| (nodes[i].lo, std::cmp::Reverse(nodes[i].len())));
        }
        Ok(IntervalPoset {
            n,
            nodes,
            children,
            parents,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[ValueRange] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, r: ValueRange) -> Option<usize> {
        self.nodes.iter().position(|&x| x == r)
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    /// Non-singleton nodes, the root included.
    pub fn internal_nodes(&self) -> Vec<ValueRange> {
        self.nodes
            .iter()
            .copied()
            .filter(|r| !r.is_singleton())
            .collect()
    }

    /// Cover relations `(lower, upper)` as value ranges.
    pub fn covers(&self) -> Vec<(ValueRange, ValueRange)> {
        let mut out = Vec::new();
        for (j, cs) in self.children.iter().enumerate() {
            for &i in cs {
                out.push((self.nodes[i], self.nodes[j]));
            }
        }
        out
    }

    /// The Hasse diagram is a tree: every node but the root has one parent.
    pub fn is_tree(&self) -> bool {
        self.parents.iter().skip(1).all(|ps| ps.len() == 1)
    }

    /// One node covering `k >= 4` singletons and nothing else.
    pub fn is_claw(&self) -> bool {
        self.n >= 4 && self.nodes.len() == self.n + 1
    }

    /// A tree whose internal nodes each have at least four children.
    pub fn is_claw_of_claws(&self) -> bool {
        self.is_tree()
            && self
                .nodes
                .iter()
                .enumerate()
                .all(|(i, r)| r.is_singleton() || self.children[i].len() >= 4)
    }

    pub fn signature(&self) -> Result<PosetSignature> {
        if !self.is_tree() {
            return Err(Error::Unsupported(
                "signatures are only defined for tree posets".into(),
            ));
        }
        let mut out = String::new();
        self.write_signature(0, &mut out);
        Ok(PosetSignature(out))
    }

    fn write_signature(&self, i: usize, out: &mut String) {
        if self.nodes[i].is_singleton() {
            out.push('•');
        } else {
            out.push('(');
            for &c in &self.children[i] {
                self.write_signature(c, out);
            }
            out.push(')');
        }
    }

    /// Nodes as `[a, b]` pairs plus cover edges as index pairs into `nodes`.
    pub fn to_json(&self) -> serde_json::Value {
        let covers: Vec<[usize; 2]> = self
            .children
            .iter()
            .enumerate()
            .flat_map(|(j, cs)| cs.iter().map(move |&i| [i, j]))
            .collect();
        json!({
            "n": self.n,
            "nodes": self.nodes.iter().map(|r| [r.lo, r.hi]).collect::<Vec<_>>(),
            "covers": covers,
        })
    }

    /// `μ(x, [1, n])` for every node `x`, and for the bottom `∅`, over the
    /// closed poset. Uses only the inclusion order:
    /// `μ(top) = 1`, `μ(x) = -Σ_{x < y} μ(y)`.
    pub fn mobius_to_top(&self) -> (Vec<i64>, i64) {
        let m = self.nodes.len();
        let mut mu = vec![0i64; m];
        for i in 0..m {
            if i == 0 {
                mu[i] = 1;
                continue;
            }
            let above: i64 = (0..i)
                .filter(|&j| {
                    self.nodes[j] != self.nodes[i] && self.nodes[j].contains(&self.nodes[i])
                })
                .map(|j| mu[j])
                .sum();
            mu[i] = -above;
        }
        let bottom = -mu.iter().sum::<i64>();
        (mu, bottom)
    }
}

/// Every `w ∈ S_n` with `P(w) = P(p)`.
pub fn generators(p: &Permutation, cap: usize) -> Result<Vec<Permutation>> {
    let target = p.intervals();
    enumeration::filter(p.len(), PermClass::All, cap, |v| {
        Permutation::from_vec_unchecked(v.to_vec()).intervals() == target
    })
}

/// `μ(I, [1, n])` by the generic recursion on the closed poset of `p`.
pub fn mobius_generic(p: &Permutation, elem: PosetElement) -> Result<i64> {
    let poset = build_interval_poset(p);
    let (mu, bottom) = poset.mobius_to_top();
    match elem {
        PosetElement::Bottom => Ok(bottom),
        PosetElement::Node(r) => poset
            .index_of(r)
            .map(|i| mu[i])
            .ok_or_else(|| Error::input(format!("{r} is not an interval of {p}"))),
    }
}

/// `μ(I, [1, n])` for block-wise simple `p = σ[α_1..α_k]`: `1` at the top,
/// `-1` on coatoms, `k - 1` at `∅`, `0` elsewhere.
pub fn mobius_formula(p: &Permutation, elem: PosetElement) -> Result<i64> {
    if !is_blockwise_simple(p) {
        return Err(Error::input(format!("{p} is not block-wise simple")));
    }
    let n = p.len();
    let top = ValueRange::new(1, n);
    if n == 1 {
        // ∅ is the only coatom
        return match elem {
            PosetElement::Node(r) if r == top => Ok(1),
            PosetElement::Bottom => Ok(-1),
            PosetElement::Node(r) => Err(Error::input(format!("{r} is not an interval of {p}"))),
        };
    }
    let sub = skeleton_decompose(p)?;
    let k = sub.skeleton.len() as i64;
    match elem {
        PosetElement::Bottom => Ok(k - 1),
        PosetElement::Node(r) if r == top => Ok(1),
        PosetElement::Node(r) => {
            let coatoms: Vec<ValueRange> = sub
                .windows
                .iter()
                .map(|&w| p.value_range(w))
                .collect::<Result<_>>()?;
            if coatoms.contains(&r) {
                Ok(-1)
            } else if p.intervals().contains(&r) {
                Ok(0)
            } else {
                Err(Error::input(format!("{r} is not an interval of {p}")))
            }
        }
    }
}

/// One interval poset per distinct shape among `W_n`, ordered by signature.
pub fn blockwise_posets(n: usize, cap: usize) -> Result<Vec<(PosetSignature, IntervalPoset)>> {
    let perms = enumeration::enumerate(n, PermClass::Blockwise, cap)?;
    let mut seen = std::collections::BTreeMap::new();
    for p in &perms {
        let poset = build_interval_poset(p);
        let sig = poset.signature()?;
        seen.entry(sig).or_insert(poset);
    }
    Ok(seen.into_iter().collect())
}

/// Number of distinct interval posets among `W_n`.
pub fn count_distinct_posets(n: usize, cap: usize) -> Result<usize> {
    use rayon::prelude::*;
    let perms = enumeration::enumerate(n, PermClass::Blockwise, cap)?;
    let sigs = perms
        .par_iter()
        .map(|p| build_interval_poset(p).signature())
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(sigs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::AllPermutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn vr(lo: usize, hi: usize) -> ValueRange {
        ValueRange::new(lo, hi)
    }

    fn children_of(poset: &IntervalPoset, r: ValueRange) -> Vec<ValueRange> {
        let i = poset.index_of(r).unwrap();
        poset
            .children(i)
            .iter()
            .map(|&c| poset.nodes()[c])
            .collect()
    }

    #[test]
    fn poset_of_5123647() {
        let poset = build_interval_poset(&p("5123647"));
        assert_eq!(children_of(&poset, vr(1, 7)), vec![vr(1, 6), vr(7, 7)]);
        assert_eq!(
            children_of(&poset, vr(1, 6)),
            vec![vr(1, 3), vr(4, 4), vr(5, 5), vr(6, 6)]
        );
        // the block 123 also contains the intervals 12 and 23
        assert_eq!(children_of(&poset, vr(1, 3)), vec![vr(1, 2), vr(2, 3)]);
        assert_eq!(poset.parents(poset.index_of(vr(2, 2)).unwrap()).len(), 2);
        assert_eq!(poset.node_count(), 12);
        assert!(!poset.is_tree());
        assert!(!poset.is_claw_of_claws());
    }

    #[test]
    fn tree_iff_no_triple_sum_interval() {
        use crate::decomposition::{decomp_tree, DecompTree, NodeKind};
        for n in 1..=7 {
            for q in AllPermutations::new(n) {
                let triple = decomp_tree(&q).internal_nodes().iter().any(|t| {
                    matches!(t, DecompTree::Node { kind: NodeKind::LinearPlus | NodeKind::LinearMinus, children, .. } if children.len() >= 3)
                });
                assert_eq!(build_interval_poset(&q).is_tree(), !triple, "{q}");
            }
        }
    }

    #[test]
    fn claws() {
        let poset = build_interval_poset(&p("3142"));
        assert!(poset.is_claw() && poset.is_claw_of_claws());
        assert_eq!(children_of(&poset, vr(1, 4)).len(), 4);
        assert_eq!(poset.signature().unwrap().0, "(••••)");
        assert_eq!(
            build_interval_poset(&p("3517246")).signature().unwrap().0,
            "(•••••••)"
        );

        let single = build_interval_poset(&p("1"));
        assert_eq!(single.node_count(), 1);
        assert_eq!(single.signature().unwrap().0, "•");
        assert!(single.is_claw_of_claws() && !single.is_claw());
    }

    #[test]
    fn nested_claw_signature_follows_value_order() {
        let poset = build_interval_poset(&p("4253716"));
        assert!(poset.is_claw_of_claws());
        assert_eq!(poset.internal_nodes(), vec![vr(1, 7), vr(2, 5)]);
        // {1} has the smallest minimum, so it precedes [2,5]
        assert_eq!(poset.signature().unwrap().0, "(•(••••)••)");
    }

    #[test]
    fn non_tree_posets() {
        let poset = build_interval_poset(&p("123"));
        assert!(!poset.is_tree());
        assert!(matches!(poset.signature(), Err(Error::Unsupported(_))));
        let j = poset.to_json();
        assert_eq!(j["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(j["covers"].as_array().unwrap().len(), 4 + 2);
    }

    #[test]
    fn from_ranges_validation() {
        assert!(IntervalPoset::from_ranges(3, [vr(1, 3), vr(1, 1), vr(2, 2)]).is_err());
        assert!(IntervalPoset::from_ranges(2, [vr(1, 1), vr(2, 2)]).is_err());
        assert!(IntervalPoset::from_ranges(2, [vr(1, 2), vr(1, 1), vr(2, 2), vr(2, 3)]).is_err());
        let q = IntervalPoset::from_ranges(2, [vr(1, 2), vr(2, 2), vr(1, 1), vr(1, 1)]).unwrap();
        assert_eq!(q, build_interval_poset(&p("21")));
    }

    #[test]
    fn generator_examples() {
        let mut want: Vec<Permutation> = [
            "5123647", "5321647", "4612357", "4632157", "7463215", "7461235", "7532164", "7512364",
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        want.sort();
        assert_eq!(generators(&p("5123647"), GENERATOR_CAP).unwrap(), want);
        assert_eq!(
            generators(&p("2413"), GENERATOR_CAP).unwrap(),
            vec![p("2413"), p("3142")]
        );
        assert_eq!(generators(&p("1"), GENERATOR_CAP).unwrap(), vec![p("1")]);
        assert!(generators(&Permutation::identity(10), GENERATOR_CAP).is_err());
    }

    #[test]
    fn mobius_examples() {
        let q = p("4253716");
        for f in [mobius_generic, mobius_formula] {
            assert_eq!(f(&q, PosetElement::Node(vr(1, 7))).unwrap(), 1);
            assert_eq!(f(&q, PosetElement::Node(vr(7, 7))).unwrap(), -1);
            assert_eq!(f(&q, PosetElement::Node(vr(2, 5))).unwrap(), -1);
            assert_eq!(f(&q, PosetElement::Node(vr(3, 3))).unwrap(), 0);
            assert_eq!(f(&q, PosetElement::Bottom).unwrap(), 3);
            assert!(f(&q, PosetElement::Node(vr(1, 2))).is_err());
        }
        assert!(mobius_formula(&p("12"), PosetElement::Bottom).is_err());
        assert_eq!(mobius_generic(&p("1"), PosetElement::Bottom).unwrap(), -1);
        assert_eq!(mobius_formula(&p("1"), PosetElement::Bottom).unwrap(), -1);
    }

    #[test]
    fn node_count_and_extremes() {
        for n in 1..=6 {
            for q in AllPermutations::new(n) {
                let poset = build_interval_poset(&q);
                assert_eq!(
                    poset.node_count(),
                    n + 1 - usize::from(n == 1) + q.proper_intervals().len()
                );
                assert_eq!(poset.nodes()[0], vr(1, n));
                let minimal = (0..poset.node_count())
                    .filter(|&i| poset.children(i).is_empty())
                    .count();
                assert_eq!(minimal, n);
                assert_eq!(q.is_simple_ge4(), poset.is_claw());
                assert_eq!(is_blockwise_simple(&q), poset.is_claw_of_claws(), "{q}");
            }
        }
    }

    #[test]
    fn distinct_poset_counts() {
        let counts: Vec<usize> = (4..=8)
            .map(|n| count_distinct_posets(n, 10).unwrap())
            .collect();
        assert_eq!(counts, [1, 1, 1, 5, 10]);
        assert_eq!(blockwise_posets(7, 10).unwrap().len(), 5);
    }
}

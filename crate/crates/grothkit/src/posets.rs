//! Finite labeled posets: the combinatorial input to every enumerator in this
//! crate.
//!
//! A [`LabeledPoset`] stores `m` vertices `0..m`, the full strict order
//! relation (transitively closed), and an injective integer label per vertex.
//! Only the *orientation* of each cover edge — whether the lower vertex
//! carries the smaller or larger label — affects any generating function
//! built from the poset, so [`LabeledPoset::canonical_key`] identifies
//! posets up to isomorphisms preserving cover orientations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("order relation is cyclic at vertex {0}")]
    Cyclic(usize),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexRange(usize, usize),
    #[error("labels must be injective but {0} repeats")]
    DuplicateLabel(i64),
    #[error("expected {expect} labels, got {got}")]
    LabelCount { got: usize, expect: usize },
    #[error("invalid poset JSON: {0}")]
    Json(String),
}

/// A finite poset on vertices `0..m` with an injective labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    m: usize,
    /// Full strict order: `(a, b)` present iff `a < b`. Transitively closed.
    less: BTreeSet<(usize, usize)>,
    labels: Vec<i64>,
}

impl LabeledPoset {
    /// Builds a poset from any generating set of strict relations; the stored
    /// relation is the transitive closure. Errors on cycles, bad vertex
    /// indices, or non-injective labels.
    pub fn new(
        m: usize,
        relations: &[(usize, usize)],
        labels: Vec<i64>,
    ) -> Result<Self, PosetError> {
        if labels.len() != m {
            return Err(PosetError::LabelCount {
                got: labels.len(),
                expect: m,
            });
        }
        let mut seen = BTreeSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(PosetError::DuplicateLabel(l));
            }
        }
        let mut lt = vec![false; m * m];
        for &(a, b) in relations {
            for v in [a, b] {
                if v >= m {
                    return Err(PosetError::VertexRange(v, m));
                }
            }
            lt[a * m + b] = true;
        }
        // Warshall closure.
        for k in 0..m {
            for a in 0..m {
                if lt[a * m + k] {
                    for b in 0..m {
                        if lt[k * m + b] {
                            lt[a * m + b] = true;
                        }
                    }
                }
            }
        }
        let mut less = BTreeSet::new();
        for a in 0..m {
            if lt[a * m + a] {
                return Err(PosetError::Cyclic(a));
            }
            for b in 0..m {
                if lt[a * m + b] {
                    less.insert((a, b));
                }
            }
        }
        Ok(LabeledPoset { m, less, labels })
    }

    /// The empty poset.
    pub fn empty() -> Self {
        LabeledPoset {
            m: 0,
            less: BTreeSet::new(),
            labels: Vec::new(),
        }
    }

    /// A chain `v0 ⋖ v1 ⋖ …` with the given labels.
    pub fn chain(labels: Vec<i64>) -> Self {
        let m = labels.len();
        let rels: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        LabeledPoset::new(m, &rels, labels).expect("chain construction cannot fail")
    }

    /// An antichain on `m` vertices labeled `1..=m`.
    pub fn antichain(m: usize) -> Self {
        LabeledPoset::new(m, &[], (1..=m as i64).collect()).expect("antichain")
    }

    /// The chain on `n` vertices whose label descents are exactly `des`
    /// (1-based positions in `1..n`): labels `ℓ_i = i + (n+1)·d_i` where
    /// `d_i` counts descent positions ≥ i, so consecutive labels differ by
    /// `-1 + (n+1)·[i ∈ des]`.
    pub fn chain_realization(n: usize, des: &BTreeSet<u32>) -> Self {
        assert!(
            des.iter().all(|&i| 1 <= i && (i as usize) < n.max(1)),
            "descents must lie in 1..n"
        );
        let labels: Vec<i64> = (1..=n)
            .map(|i| {
                let d = des.iter().filter(|&&j| j as usize >= i).count() as i64;
                i as i64 + (n as i64 + 1) * d
            })
            .collect();
        LabeledPoset::chain(labels)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }

    /// Full strict order relation.
    pub fn less(&self) -> &BTreeSet<(usize, usize)> {
        &self.less
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less.contains(&(a, b))
    }

    /// Cover relations `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.less
            .iter()
            .copied()
            .filter(|&(a, b)| !(0..self.m).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    pub fn up_covers(&self, v: usize) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(a, _)| a == v)
            .map(|(_, b)| b)
            .collect()
    }

    pub fn down_covers(&self, v: usize) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(_, b)| b == v)
            .map(|(a, _)| a)
            .collect()
    }

    /// Vertices in some order extending the partial order.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut verts: Vec<usize> = (0..self.m).collect();
        verts.sort_by_key(|&v| self.less.iter().filter(|&&(_, b)| b == v).count());
        // Counting strict predecessors sorts compatibly with the order:
        // a < b forces pred(a) < pred(b) since predecessors of a are
        // predecessors of b and a itself is one more.
        verts
    }

    /// Vertices whose every cover neighbor (above or below) has a larger
    /// label. Isolated vertices qualify vacuously.
    pub fn valleys(&self) -> Vec<usize> {
        let covers = self.covers();
        (0..self.m)
            .filter(|&v| {
                covers.iter().all(|&(a, b)| {
                    (a != v || self.labels[b] > self.labels[v])
                        && (b != v || self.labels[a] > self.labels[v])
                })
            })
            .collect()
    }

    /// Vertices `y` admitting covers `x ⋖ y ⋖ z` with
    /// `γ(x) < γ(y) > γ(z)`.
    pub fn peaks(&self) -> Vec<usize> {
        let covers = self.covers();
        (0..self.m)
            .filter(|&y| {
                let has_up_ascent = covers
                    .iter()
                    .any(|&(a, b)| b == y && self.labels[a] < self.labels[y]);
                let has_down_descent = covers
                    .iter()
                    .any(|&(a, b)| a == y && self.labels[b] < self.labels[y]);
                has_up_ascent && has_down_descent
            })
            .collect()
    }

    /// A canonical form for the isomorphism class of `(P, γ)` where only
    /// cover orientations of the labeling matter: the minimum over all
    /// vertex permutations of the sorted oriented-cover encoding.
    pub fn canonical_key(&self) -> String {
        let covers = self.covers();
        let mut best: Option<Vec<(usize, usize, bool)>> = None;
        let mut perm: Vec<usize> = (0..self.m).collect();
        permute_all(&mut perm, &mut |p| {
            let mut enc: Vec<(usize, usize, bool)> = covers
                .iter()
                .map(|&(a, b)| (p[a], p[b], self.labels[a] < self.labels[b]))
                .collect();
            enc.sort();
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        });
        let enc = best.unwrap_or_default();
        let mut out = format!("m={}", self.m);
        for (a, b, asc) in enc {
            let _ = write!(out, ";{}<{}{}", a, b, if asc { '+' } else { '-' });
        }
        out
    }

    /// Disjoint union with labels shifted so the left side stays below the
    /// right side's labels: left labels become `γ(s) - max γ(P)`, right
    /// labels `δ(s) - min δ(Q) + 1`.
    pub fn disjoint_union(&self, other: &LabeledPoset) -> LabeledPoset {
        let lmax = self.labels.iter().copied().max().unwrap_or(0);
        let rmin = other.labels.iter().copied().min().unwrap_or(0);
        let m = self.m + other.m;
        let mut labels = Vec::with_capacity(m);
        labels.extend(self.labels.iter().map(|&l| l - lmax));
        labels.extend(other.labels.iter().map(|&l| l - rmin + 1));
        let mut rels: Vec<(usize, usize)> = self.less.iter().copied().collect();
        rels.extend(other.less.iter().map(|&(a, b)| (a + self.m, b + self.m)));
        LabeledPoset::new(m, &rels, labels).expect("disjoint union preserves validity")
    }

    /// The induced subposet on `verts` (ascending, deduplicated), keeping the
    /// original labels. Vertex `verts[i]` becomes vertex `i`.
    pub fn induced(&self, verts: &[usize]) -> LabeledPoset {
        let verts: Vec<usize> = {
            let s: BTreeSet<usize> = verts.iter().copied().collect();
            s.into_iter().collect()
        };
        let labels: Vec<i64> = verts.iter().map(|&v| self.labels[v]).collect();
        let mut rels = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if self.lt(a, b) {
                    rels.push((i, j));
                }
            }
        }
        LabeledPoset::new(verts.len(), &rels, labels).expect("induced subposet is valid")
    }

    /// All pairs `(S, T)` with `S` a lower set, `T` an upper set,
    /// `S ∪ T = P`, and `S ∩ T` an antichain. Enumerated as a lower set `S`
    /// plus a subset of `Max(S)` shared with `T`.
    pub fn coproduct_splits(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << self.m) {
            let s: Vec<usize> = (0..self.m).filter(|&v| mask >> v & 1 == 1).collect();
            let in_s = |v: usize| mask >> v & 1 == 1;
            let lower = s
                .iter()
                .all(|&v| (0..self.m).all(|u| !self.lt(u, v) || in_s(u)));
            if !lower {
                continue;
            }
            let max_s: Vec<usize> = s
                .iter()
                .copied()
                .filter(|&v| !s.iter().any(|&u| self.lt(v, u)))
                .collect();
            let rest: Vec<usize> = (0..self.m).filter(|&v| !in_s(v)).collect();
            for amask in 0u64..(1u64 << max_s.len()) {
                let mut t: Vec<usize> = max_s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| amask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                t.extend(rest.iter().copied());
                t.sort_unstable();
                out.push((s.clone(), t));
            }
        }
        out
    }

    /// All words over the vertices, of length `|P| ..= max_len`, in which
    /// every vertex appears, adjacent letters differ, and every position of
    /// `a` precedes every position of `b` whenever `a < b`. Words of length
    /// exactly `|P|` are the classical linear extensions.
    pub fn linear_multiextensions(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.stream_linear_multiextensions(max_len, &mut |w| out.push(w.to_vec()));
        out
    }

    /// Visitor-style enumeration backing [`Self::linear_multiextensions`].
    pub fn stream_linear_multiextensions(&self, max_len: usize, visit: &mut dyn FnMut(&[usize])) {
        if self.m == 0 {
            visit(&[]);
            return;
        }
        if max_len < self.m {
            return;
        }
        let mut counts = vec![0usize; self.m];
        let mut closed = vec![false; self.m];
        let mut word = Vec::with_capacity(max_len);
        self.extend_word(max_len, &mut word, &mut counts, &mut closed, visit);
    }

    fn extend_word(
        &self,
        max_len: usize,
        word: &mut Vec<usize>,
        counts: &mut [usize],
        closed: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let missing = counts.iter().filter(|&&c| c == 0).count();
        if missing == 0 {
            visit(word);
        }
        if word.len() == max_len {
            return;
        }
        for v in 0..self.m {
            if closed[v] || word.last() == Some(&v) {
                continue;
            }
            // Everything below v must already have appeared.
            if (0..self.m).any(|u| self.lt(u, v) && counts[u] == 0) {
                continue;
            }
            // Placing v ends the window for everything below it.
            let newly_closed: Vec<usize> = (0..self.m)
                .filter(|&u| self.lt(u, v) && !closed[u])
                .collect();
            let missing_after = missing - usize::from(counts[v] == 0);
            if word.len() + 1 + missing_after > max_len {
                continue;
            }
            for &u in &newly_closed {
                closed[u] = true;
            }
            counts[v] += 1;
            word.push(v);
            self.extend_word(max_len, word, counts, closed, visit);
            word.pop();
            counts[v] -= 1;
            for &u in &newly_closed {
                closed[u] = false;
            }
        }
    }

    /// Inserts a copy `v'` directly above `v`: `v ⋖ v'`, everything that was
    /// strictly above `v` moves above `v'`, and labels shift so
    /// `δ(v') = γ(v) + 1` slots in while relative order elsewhere persists.
    /// The new vertex has index `m`.
    pub fn double_vertex(&self, v: usize) -> LabeledPoset {
        assert!(v < self.m, "vertex {v} out of range");
        let vp = self.m;
        let mut rels: Vec<(usize, usize)> = self.less.iter().copied().collect();
        rels.push((v, vp));
        for x in 0..self.m {
            if self.lt(x, v) {
                rels.push((x, vp));
            }
            if self.lt(v, x) {
                rels.push((vp, x));
            }
        }
        let gv = self.labels[v];
        let mut labels: Vec<i64> = self
            .labels
            .iter()
            .map(|&l| if l > gv { l + 1 } else { l })
            .collect();
        labels.push(gv + 1);
        LabeledPoset::new(self.m + 1, &rels, labels).expect("doubling preserves validity")
    }

    /// Order dual: all relations reversed, labels unchanged.
    pub fn dual(&self) -> LabeledPoset {
        let rels: Vec<(usize, usize)> = self.less.iter().map(|&(a, b)| (b, a)).collect();
        LabeledPoset::new(self.m, &rels, self.labels.clone()).expect("dual is valid")
    }

    /// Same poset with every label negated.
    pub fn negate_labels(&self) -> LabeledPoset {
        let labels = self.labels.iter().map(|&l| -l).collect();
        let rels: Vec<(usize, usize)> = self.less.iter().copied().collect();
        LabeledPoset::new(self.m, &rels, labels).expect("negation is valid")
    }

    /// Replaces labels by their rank `1..=m` in increasing label order,
    /// making the poset positively labeled without changing any orientation.
    pub fn relabel_positive(&self) -> LabeledPoset {
        let mut sorted: Vec<i64> = self.labels.clone();
        sorted.sort_unstable();
        let rank: BTreeMap<i64, i64> = sorted.into_iter().zip(1..).map(|(l, r)| (l, r)).collect();
        let labels = self.labels.iter().map(|l| rank[l]).collect();
        let rels: Vec<(usize, usize)> = self.less.iter().copied().collect();
        LabeledPoset::new(self.m, &rels, labels).expect("relabeling is valid")
    }

    /// Two-sided mirror: given `I ∪ J = P` (overlap allowed), builds the
    /// poset on a positive copy of `I` and a negative copy of `J`, where
    /// copies compare exactly as their originals do and the negative copy of
    /// `v` carries label `-γ(v)`. Requires strictly positive labels so the
    /// signed labels stay injective. Positive copies come first (ascending
    /// original vertex), then negative copies.
    pub fn mirror(&self, i_set: &BTreeSet<usize>, j_set: &BTreeSet<usize>) -> LabeledPoset {
        assert!(
            self.labels.iter().all(|&l| l > 0),
            "mirror requires positive labels; relabel_positive first"
        );
        assert!(
            (0..self.m).all(|v| i_set.contains(&v) || j_set.contains(&v)),
            "I and J must cover the vertex set"
        );
        assert!(i_set.iter().chain(j_set.iter()).all(|&v| v < self.m));
        let pos: Vec<usize> = i_set.iter().copied().collect();
        let neg: Vec<usize> = j_set.iter().copied().collect();
        let orig: Vec<usize> = pos.iter().chain(neg.iter()).copied().collect();
        let mut labels: Vec<i64> = pos.iter().map(|&v| self.labels[v]).collect();
        labels.extend(neg.iter().map(|&v| -self.labels[v]));
        let mut rels = Vec::new();
        for (i, &a) in orig.iter().enumerate() {
            for (j, &b) in orig.iter().enumerate() {
                if self.lt(a, b) {
                    rels.push((i, j));
                }
            }
        }
        LabeledPoset::new(orig.len(), &rels, labels).expect("mirror is valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "less": self.less.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "labels": self.labels,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PosetError> {
        let obj = v
            .as_object()
            .ok_or_else(|| PosetError::Json("expected object".into()))?;
        let m = obj
            .get("m")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| PosetError::Json("missing m".into()))? as usize;
        let labels: Vec<i64> = obj
            .get("labels")
            .and_then(|x| x.as_array())
            .ok_or_else(|| PosetError::Json("missing labels".into()))?
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| PosetError::Json("bad label".into()))
            })
            .collect::<Result<_, _>>()?;
        let mut rels = Vec::new();
        for pair in obj
            .get("less")
            .and_then(|x| x.as_array())
            .ok_or_else(|| PosetError::Json("missing less".into()))?
        {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| PosetError::Json("less entries must be [a, b] pairs".into()))?;
            let a = pair[0]
                .as_u64()
                .ok_or_else(|| PosetError::Json("bad vertex".into()))?;
            let b = pair[1]
                .as_u64()
                .ok_or_else(|| PosetError::Json("bad vertex".into()))?;
            rels.push((a as usize, b as usize));
        }
        LabeledPoset::new(m, &rels, labels)
    }

    /// Graphviz rendering: cover edges drawn upward, labels in parentheses.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for v in 0..self.m {
            let _ = writeln!(out, "  v{} [label=\"{} ({})\"];", v, v, self.labels[v]);
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Calls `f` with every permutation of `items` (Heap's algorithm).
fn permute_all<T: Copy>(items: &mut [T], f: &mut impl FnMut(&[T])) {
    fn go<T: Copy>(k: usize, items: &mut [T], f: &mut impl FnMut(&[T])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    go(items.len(), items, f);
}

/// 1-based positions `i` with `γ(w_i) > γ(w_{i+1})`.
pub fn word_descent_set(word: &[usize], labels: &[i64]) -> BTreeSet<u32> {
    (1..word.len())
        .filter(|&i| labels[word[i - 1]] > labels[word[i]])
        .map(|i| i as u32)
        .collect()
}

/// 0-based positions `j` that are valleys of the word: strictly smaller
/// label than the previous letter (or at the start) and no larger than the
/// next (or at the end).
pub fn word_valley_positions(word: &[usize], labels: &[i64]) -> Vec<usize> {
    (0..word.len())
        .filter(|&j| {
            let down = j == 0 || labels[word[j - 1]] > labels[word[j]];
            let up = j + 1 == word.len() || labels[word[j]] <= labels[word[j + 1]];
            down && up
        })
        .collect()
}

/// All labeled posets on `m` vertices up to cover-orientation isomorphism,
/// with labels `1..=m`. Brute force: suitable for small `m` only.
pub fn all_labeled_posets(m: usize) -> Vec<LabeledPoset> {
    if m == 0 {
        return vec![LabeledPoset::empty()];
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut base_labels: Vec<i64> = (1..=m as i64).collect();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rels: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        // Keep only masks that are already transitively closed and acyclic so
        // each partial order is visited exactly once.
        let Ok(p) = LabeledPoset::new(m, &rels, base_labels.clone()) else {
            continue;
        };
        if p.less().len() != rels.len() {
            continue;
        }
        let mut labelings = Vec::new();
        permute_all(&mut base_labels, &mut |lab| labelings.push(lab.to_vec()));
        base_labels.sort_unstable();
        for lab in labelings {
            let q = LabeledPoset::new(m, &rels, lab).expect("validated relation");
            if seen.insert(q.canonical_key()) {
                out.push(q);
            }
        }
    }
    out
}

/// Built-in poset names accepted by the command-line tools:
/// `chain<k>` (ascending labels), `dchain<k>` (descending labels),
/// `antichain<k>`, and `vee` / `wedge` / `diamond`
/// small fixed shapes.
pub fn named_poset(name: &str) -> Option<LabeledPoset> {
    if let Some(k) = name
        .strip_prefix("antichain")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Some(LabeledPoset::antichain(k));
    }
    if let Some(k) = name
        .strip_prefix("dchain")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Some(LabeledPoset::chain((1..=k as i64).rev().collect()));
    }
    if let Some(k) = name
        .strip_prefix("chain")
        .and_then(|s| s.parse::<usize>().ok())
    {
        return Some(LabeledPoset::chain((1..=k as i64).collect()));
    }
    match name {
        "vee" => Some(LabeledPoset::new(3, &[(0, 1), (0, 2)], vec![1, 2, 3]).unwrap()),
        "wedge" => Some(LabeledPoset::new(3, &[(0, 2), (1, 2)], vec![1, 2, 3]).unwrap()),
        "diamond" => {
            Some(LabeledPoset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], vec![1, 2, 3, 4]).unwrap())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain4() -> LabeledPoset {
        LabeledPoset::chain(vec![1, 2, 3, 4])
    }

    #[test]
    fn closure_and_covers() {
        let p = LabeledPoset::new(3, &[(0, 1), (1, 2)], vec![5, 1, 3]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(LabeledPoset::new(2, &[(0, 1), (1, 0)], vec![1, 2]).is_err());
        assert!(LabeledPoset::new(2, &[], vec![7, 7]).is_err());
    }

    #[test]
    fn canonical_key_matches_isomorphic_relabelings() {
        // A diamond with the two middle vertices swapped is the same object.
        let d1 = LabeledPoset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], vec![1, 2, 3, 4]).unwrap();
        let d2 = LabeledPoset::new(4, &[(0, 2), (0, 1), (2, 3), (1, 3)], vec![1, 3, 2, 4]).unwrap();
        assert_eq!(d1.canonical_key(), d2.canonical_key());
        // Orientation matters: descending chain differs from ascending.
        let up = LabeledPoset::chain(vec![1, 2]);
        let down = LabeledPoset::chain(vec![2, 1]);
        assert_ne!(up.canonical_key(), down.canonical_key());
        // Absolute label values do not matter, only orientations.
        let up_wide = LabeledPoset::chain(vec![-10, 40]);
        assert_eq!(up.canonical_key(), up_wide.canonical_key());
    }

    #[test]
    fn disjoint_union_separates_label_ranges() {
        let p = LabeledPoset::chain(vec![1, 2]);
        let q = LabeledPoset::chain(vec![4, 3]);
        let u = p.disjoint_union(&q);
        assert_eq!(u.labels(), &[-1, 0, 2, 1]);
        assert_eq!(u.covers(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn coproduct_split_counts() {
        assert_eq!(LabeledPoset::empty().coproduct_splits().len(), 1);
        assert_eq!(LabeledPoset::antichain(1).coproduct_splits().len(), 3);
        assert_eq!(LabeledPoset::chain(vec![1, 2]).coproduct_splits().len(), 5);
    }

    #[test]
    fn valleys_and_peaks() {
        // Labels dip at vertex 1: 3 > 1 < 2.
        let p = LabeledPoset::chain(vec![3, 1, 2]);
        assert_eq!(p.valleys(), vec![1]);
        assert_eq!(p.peaks(), Vec::<usize>::new());
        let q = LabeledPoset::chain(vec![1, 3, 2]);
        assert_eq!(q.peaks(), vec![1]);
        assert_eq!(q.valleys(), vec![0, 2]);
        assert_eq!(LabeledPoset::antichain(2).valleys(), vec![0, 1]);
    }

    #[test]
    fn multiextensions_of_antichain2() {
        let words = LabeledPoset::antichain(2).linear_multiextensions(3);
        assert_eq!(
            words,
            vec![vec![0, 1], vec![0, 1, 0], vec![1, 0], vec![1, 0, 1]]
        );
        // Length-|P| words are the classical linear extensions: n! of them.
        let a3 = LabeledPoset::antichain(3);
        let exts: Vec<_> = a3
            .linear_multiextensions(3)
            .into_iter()
            .filter(|w| w.len() == 3)
            .collect();
        assert_eq!(exts.len(), 6);
    }

    #[test]
    fn multiextensions_respect_order_windows() {
        let p = chain4();
        assert_eq!(p.linear_multiextensions(4), vec![vec![0, 1, 2, 3]]);
        let words = p.linear_multiextensions(5);
        // A letter may repeat only around letters it is incomparable to;
        // in a chain nothing is incomparable, so no repeats are possible.
        assert_eq!(words, vec![vec![0, 1, 2, 3]]);
        let vee = named_poset("vee").unwrap();
        let w5 = vee.linear_multiextensions(4);
        assert!(w5.contains(&vec![0, 1, 2, 1]));
        assert!(!w5.iter().any(|w| w.windows(2).any(|ab| ab[0] == ab[1])));
        assert!(!w5.iter().any(|w| w.first() != Some(&0)));
    }

    #[test]
    fn doubling_moves_up_covers_to_the_copy() {
        // v1⋖v2, v2⋖v3, v2⋖v4, v1⋖v5, v5⋖v3 with ascending labels;
        // doubling v2 reroutes v3 and v4 above the copy.
        let p = LabeledPoset::new(
            5,
            &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 2)],
            vec![1, 2, 3, 4, 5],
        )
        .unwrap();
        let d = p.double_vertex(1);
        let mut covers = d.covers();
        covers.sort_unstable();
        assert_eq!(covers, vec![(0, 1), (0, 4), (1, 5), (4, 2), (5, 2), (5, 3)]);
        assert_eq!(d.labels(), &[1, 2, 4, 5, 6, 3]);
        // Valleys are preserved by doubling.
        assert_eq!(p.valleys(), d.valleys());
    }

    #[test]
    fn mirror_of_a_chain() {
        let p = chain4();
        let i_set: BTreeSet<usize> = [0, 1, 2].into();
        let j_set: BTreeSet<usize> = [1, 2, 3].into();
        let m = p.mirror(&i_set, &j_set);
        assert_eq!(m.m(), 6);
        assert_eq!(m.labels(), &[1, 2, 3, -2, -3, -4]);
        let mut covers = m.covers();
        covers.sort_unstable();
        // Vertices: 0,1,2 are +1,+2,+3; 3,4,5 are -2,-3,-4.
        assert_eq!(
            covers,
            vec![
                (0, 1),
                (0, 3),
                (1, 2),
                (1, 4),
                (2, 5),
                (3, 2),
                (3, 4),
                (4, 5)
            ]
        );
        // Degenerate cases: everything positive is the identity, everything
        // negative is label negation.
        let all: BTreeSet<usize> = (0..4).collect();
        let none = BTreeSet::new();
        assert_eq!(p.mirror(&all, &none), p);
        assert_eq!(p.mirror(&none, &all), p.negate_labels());
    }

    #[test]
    fn duals_and_negations_compose() {
        let p = named_poset("diamond").unwrap();
        assert_eq!(p.dual().dual(), p);
        assert_eq!(p.negate_labels().negate_labels(), p);
        assert_eq!(p.dual().negate_labels(), p.negate_labels().dual());
    }

    #[test]
    fn chain_realization_has_requested_descents() {
        for n in 1..=6usize {
            for mask in 0u32..(1 << (n - 1)) {
                let des: BTreeSet<u32> = (1..n as u32)
                    .filter(|&i| mask >> (i - 1) & 1 == 1)
                    .collect();
                let c = LabeledPoset::chain_realization(n, &des);
                let word: Vec<usize> = (0..n).collect();
                assert_eq!(word_descent_set(&word, c.labels()), des);
            }
        }
    }

    #[test]
    fn word_statistics() {
        let labels = vec![2, 1, 3];
        // Word 0,1,2 has labels 2,1,3: descent at 1, valleys at positions 1.
        assert_eq!(word_descent_set(&[0, 1, 2], &labels), BTreeSet::from([1]));
        assert_eq!(word_valley_positions(&[0, 1, 2], &labels), vec![1]);
        // Ascending word: only the first position is a valley.
        assert_eq!(word_valley_positions(&[1, 0, 2], &labels), vec![0]);
    }

    #[test]
    fn counting_small_posets() {
        assert_eq!(all_labeled_posets(0).len(), 1);
        assert_eq!(all_labeled_posets(1).len(), 1);
        assert_eq!(all_labeled_posets(2).len(), 3);
        assert_eq!(all_labeled_posets(3).len(), 13);
        let four = all_labeled_posets(4);
        // Spot-check invariants rather than the raw count: keys unique, all
        // transitively closed, labels 1..=4.
        let keys: BTreeSet<String> = four.iter().map(|p| p.canonical_key()).collect();
        assert_eq!(keys.len(), four.len());
        for p in &four {
            let mut sorted = p.labels().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![1, 2, 3, 4]);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = named_poset("diamond").unwrap();
        let q = LabeledPoset::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        assert!(LabeledPoset::from_json(&serde_json::json!({"m": 1})).is_err());
    }

    #[test]
    fn dot_output_mentions_every_cover() {
        let p = LabeledPoset::chain(vec![2, 1]);
        let dot = p.to_dot();
        assert!(dot.contains("v0 -> v1"));
        assert!(dot.contains("rankdir=BT"));
    }
}

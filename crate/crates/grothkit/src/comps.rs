//! Compositions, peak compositions, and the index-set transforms used by the
//! quasisymmetric bases and involutions.
//!
//! A composition `α = (α1,..,αk)` of `n` is identified with its descent set
//! `I(α) = {α1, α1+α2, ..} ⊆ {1..n-1}` of proper partial sums. A *peak
//! composition* has every part ≥ 2 except possibly the last; equivalently
//! `I(α)` contains no 1 and no two consecutive integers.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// A finite sequence of positive integers (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Panics when any part is zero.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "composition parts must be positive"
        );
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The proper partial sums `{α1, α1+α2, …}`, excluding the total.
    pub fn descent_set(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut acc = 0;
        for &p in self.parts.iter().take(self.parts.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// The unique composition of `n` whose descent set is `s`.
    /// Panics when `s ⊄ {1..n-1}`.
    pub fn from_subset(n: u32, s: &BTreeSet<u32>) -> Self {
        assert!(
            s.iter().all(|&i| 1 <= i && i < n),
            "descent set must lie in 1..{n}"
        );
        let mut parts = Vec::with_capacity(s.len() + 1);
        let mut prev = 0;
        for &i in s {
            parts.push(i - prev);
            prev = i;
        }
        if n > prev {
            parts.push(n - prev);
        }
        Composition { parts }
    }

    /// `α^c`: the composition of the same size with complementary descent set.
    pub fn complement(&self) -> Self {
        let n = self.size();
        let i = self.descent_set();
        let comp: BTreeSet<u32> = (1..n).filter(|j| !i.contains(j)).collect();
        Composition::from_subset(n, &comp)
    }

    /// `α^r`: parts in reverse order.
    pub fn reverse(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// `α^t = (α^c)^r = (α^r)^c`.
    pub fn transpose(&self) -> Self {
        self.complement().reverse()
    }

    /// True when every part except possibly the last is ≥ 2.
    pub fn is_peak(&self) -> bool {
        self.parts
            .iter()
            .take(self.parts.len().saturating_sub(1))
            .all(|&p| p >= 2)
    }

    /// `α^♭ = (αk+1, α(k-1), …, α2, α1-1)` on peak compositions; with at
    /// most one part the adjustments cancel, so `()^♭ = ()` and
    /// `(n)^♭ = (n)`.
    pub fn flat(&self) -> Self {
        assert!(self.is_peak(), "flat is defined on peak compositions");
        let k = self.parts.len();
        if k <= 1 {
            return self.clone();
        }
        let mut parts = Vec::with_capacity(k);
        parts.push(self.parts[k - 1] + 1);
        for i in (1..k - 1).rev() {
            parts.push(self.parts[i]);
        }
        parts.push(self.parts[0] - 1);
        let out = Composition::new(parts);
        debug_assert!(out.is_peak() && out.size() == self.size());
        out
    }

    /// `Λ(α)`: the peak composition of `|α|` whose descent set is
    /// `{ i ∈ I(α) : i > 1, i-1 ∉ I(α) }`.
    pub fn lambda_map(&self) -> Self {
        let i = self.descent_set();
        let kept: BTreeSet<u32> = i
            .iter()
            .copied()
            .filter(|&j| j > 1 && !i.contains(&(j - 1)))
            .collect();
        let out = Composition::from_subset(self.size(), &kept);
        debug_assert!(out.is_peak());
        out
    }

    /// True when `other` refines `self`: equal sizes and
    /// `I(self) ⊆ I(other)`.
    pub fn refines(&self, other: &Composition) -> bool {
        self.size() == other.size() && self.descent_set().is_subset(&other.descent_set())
    }

    /// Parts added entrywise; `delta` may contain zeros but must have the
    /// same length.
    pub fn componentwise_add(&self, delta: &[u32]) -> Self {
        assert_eq!(delta.len(), self.parts.len(), "length mismatch");
        Composition::new(self.parts.iter().zip(delta).map(|(&a, &d)| a + d).collect())
    }

    /// All ways to write `self` as a concatenation `α = α'·α''`
    /// (the deconcatenation coproduct's index pairs).
    pub fn deconcatenations(&self) -> Vec<(Composition, Composition)> {
        (0..=self.parts.len())
            .map(|k| {
                (
                    Composition::new(self.parts[..k].to_vec()),
                    Composition::new(self.parts[k..].to_vec()),
                )
            })
            .collect()
    }

    /// Text form `(a1,a2,...)`; the empty composition prints `()`.
    pub fn to_text(&self) -> String {
        format!(
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Accepts `2,1`, `(2,1)`, or an empty string / `()` for ∅.
    pub fn parse(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("bad composition part {p:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parts.iter().any(|&p| p == 0) {
            return Err("composition parts must be positive".into());
        }
        Ok(Composition::new(parts))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.parts
                .iter()
                .map(|&p| serde_json::Value::from(p))
                .collect(),
        )
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The processing order for triangular basis solves: ascending size, and
/// within a size the lexicographically greater index first.
pub fn triangular_cmp(a: &Composition, b: &Composition) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts))
}

/// All compositions of `n` in triangular order.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::new();
    let mut stack: Vec<(u32, Vec<u32>)> = vec![(n, Vec::new())];
    while let Some((rem, prefix)) = stack.pop() {
        if rem == 0 {
            out.push(Composition::new(prefix));
            continue;
        }
        // Push smaller first parts first so larger ones pop first (lex-descending).
        for first in 1..=rem {
            let mut next = prefix.clone();
            next.push(first);
            stack.push((rem - first, next));
        }
    }
    out
}

/// All peak compositions of `n` in triangular order.
pub fn peak_compositions_of(n: u32) -> Vec<Composition> {
    compositions_of(n)
        .into_iter()
        .filter(Composition::is_peak)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn descent_sets() {
        assert_eq!(c(&[2, 1]).descent_set(), BTreeSet::from([2]));
        assert_eq!(Composition::empty().descent_set(), BTreeSet::new());
        assert_eq!(c(&[1, 2, 2]).descent_set(), BTreeSet::from([1, 3]));
    }

    #[test]
    fn from_subset_inverts() {
        assert_eq!(
            Composition::from_subset(3, &BTreeSet::from([2])),
            c(&[2, 1])
        );
        assert_eq!(Composition::from_subset(4, &BTreeSet::new()), c(&[4]));
        assert_eq!(
            Composition::from_subset(0, &BTreeSet::new()),
            Composition::empty()
        );
        for n in 0..=8u32 {
            for alpha in compositions_of(n) {
                assert_eq!(Composition::from_subset(n, &alpha.descent_set()), alpha);
            }
        }
    }

    #[test]
    fn complement_reverse_transpose() {
        assert_eq!(c(&[2, 1]).complement(), c(&[1, 2]));
        assert_eq!(c(&[2, 1]).transpose(), c(&[2, 1]));
        assert_eq!(Composition::empty().reverse(), Composition::empty());
        for n in 0..=8u32 {
            for alpha in compositions_of(n) {
                assert_eq!(alpha.complement().complement(), alpha);
                assert_eq!(alpha.reverse().reverse(), alpha);
                assert_eq!(alpha.transpose().transpose(), alpha);
                assert_eq!(alpha.complement().reverse(), alpha.reverse().complement());
            }
        }
    }

    #[test]
    fn flat_examples_and_involution() {
        assert_eq!(c(&[2, 1]).flat(), c(&[2, 1]));
        assert_eq!(c(&[2, 2]).flat(), c(&[3, 1]));
        assert_eq!(c(&[3, 2]).flat(), c(&[3, 2]));
        assert_eq!(c(&[1]).flat(), c(&[1]));
        assert_eq!(c(&[4]).flat(), c(&[4]));
        for n in 1..=8u32 {
            for alpha in peak_compositions_of(n) {
                assert_eq!(alpha.flat().flat(), alpha, "flat not involutive at {alpha}");
            }
        }
    }

    #[test]
    fn lambda_map_examples() {
        assert_eq!(c(&[1, 2, 2]).lambda_map(), c(&[3, 2]));
        assert_eq!(c(&[1, 1, 1]).lambda_map(), c(&[3]));
        for n in 0..=7u32 {
            for alpha in compositions_of(n) {
                let lam = alpha.lambda_map();
                assert!(lam.is_peak());
                if alpha.is_peak() {
                    assert_eq!(lam, alpha);
                }
            }
        }
    }

    #[test]
    fn refinement() {
        assert!(c(&[3]).refines(&c(&[2, 1])));
        assert!(!c(&[2, 1]).refines(&c(&[1, 2])));
        assert!(c(&[2, 1]).refines(&c(&[2, 1])));
        assert!(!c(&[2]).refines(&c(&[2, 1])));
    }

    #[test]
    fn componentwise_add_examples() {
        assert_eq!(c(&[2, 1]).componentwise_add(&[0, 1]), c(&[2, 2]));
        assert_eq!(c(&[2, 1]).componentwise_add(&[1, 0]), c(&[3, 1]));
        assert_eq!(c(&[1]).componentwise_add(&[3]), c(&[4]));
    }

    #[test]
    fn deconcatenations_of_pair() {
        let splits = c(&[2, 1]).deconcatenations();
        assert_eq!(
            splits,
            vec![
                (Composition::empty(), c(&[2, 1])),
                (c(&[2]), c(&[1])),
                (c(&[2, 1]), Composition::empty()),
            ]
        );
    }

    #[test]
    fn triangular_order_runs_size_then_lex_descending() {
        let all = compositions_of(3);
        let texts: Vec<String> = all.iter().map(|a| a.to_text()).collect();
        assert_eq!(texts, vec!["(3)", "(2,1)", "(1,2)", "(1,1,1)"]);
        let mut sorted = all.clone();
        sorted.sort_by(triangular_cmp);
        assert_eq!(sorted, all);
    }

    #[test]
    fn peak_composition_predicate() {
        assert!(c(&[2, 1]).is_peak());
        assert!(c(&[1]).is_peak());
        assert!(Composition::empty().is_peak());
        assert!(!c(&[1, 2]).is_peak());
        assert_eq!(peak_compositions_of(4).len(), 3); // (4), (3,1), (2,2)
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(Composition::parse("2,1").unwrap(), c(&[2, 1]));
        assert_eq!(Composition::parse("(2,1)").unwrap(), c(&[2, 1]));
        assert_eq!(Composition::parse("").unwrap(), Composition::empty());
        assert_eq!(Composition::parse("()").unwrap(), Composition::empty());
        assert!(Composition::parse("2,0").is_err());
        assert_eq!(c(&[2, 1]).to_text(), "(2,1)");
        assert_eq!(Composition::empty().to_text(), "()");
    }
}

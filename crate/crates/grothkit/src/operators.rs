//! Raising-operator calculus on the free module over strict partitions.
//!
//! For each diagonal `r ≥ 0` the operator `a_r` sends a strict partition to
//! its extension by the addable box of content `r` when one exists, to `β`
//! times itself when its box of content `r` is removable, and to zero
//! otherwise. A strict partition has at most one addable or removable box
//! per diagonal — never both — and `a_r ∘ a_r = β·a_r`.
//!
//! `A_r(x) = 1 + x·a_r` assembles the palindromic products
//! `P_n(x) = A_n ⋯ A_1 A_0 A_1 ⋯ A_n` and
//! `Q_n(x) = A_n ⋯ A_1 A_0 A_0 A_1 ⋯ A_n`, the rightmost factor applied
//! first. Pairing `⟨outer, P_n(x_k) ⋯ P_n(x_1) inner⟩` produces the
//! row-overlap skew families; [`check_yang_baxter`] verifies the exchange
//! identities the `A_r` satisfy.
//!
//! Vectors carry explicit size/width bounds. Shapes never shrink under the
//! operators, so truncating to bounded shapes is a quotient map: dropped
//! terms can never contribute to a bounded component later. The sticky
//! `overflowed` flag records whether anything was dropped.

// Function names carry the conventional upper-case family letters.
#![allow(non_snake_case)]

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::{BetaPoly, TruncPoly};
use crate::shapes;

#[derive(Debug, Error)]
pub enum OpError {
    #[error("parts must be strictly decreasing and positive: {0:?}")]
    NotStrict(Vec<u32>),
}

fn check_strict(parts: &[u32]) -> Result<(), OpError> {
    let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
    if ok {
        Ok(())
    } else {
        Err(OpError::NotStrict(parts.to_vec()))
    }
}

/// The partition obtained by adding the box of content `r`, when the result
/// is strict. Row `i` grows at content `mu[i]`; a new final row has content 0.
fn addable_on_diagonal(mu: &[u32], r: u32) -> Option<Vec<u32>> {
    for i in 0..mu.len() {
        if mu[i] == r {
            if i == 0 || mu[i - 1] > mu[i] + 1 {
                let mut nu = mu.to_vec();
                nu[i] += 1;
                return Some(nu);
            }
            return None;
        }
    }
    if r == 0 {
        if mu.is_empty() {
            return Some(vec![1]);
        }
        if *mu.last().unwrap() > 1 {
            let mut nu = mu.to_vec();
            nu.push(1);
            return Some(nu);
        }
    }
    None
}

/// Whether the box of content `r` ending some row is removable (removal
/// leaves a strict partition).
fn removable_on_diagonal(mu: &[u32], r: u32) -> bool {
    for i in 0..mu.len() {
        if mu[i] == r + 1 {
            let below = mu.get(i + 1).copied().unwrap_or(0);
            return mu[i] - 1 == 0 || mu[i] - 1 > below;
        }
    }
    false
}

/// A vector in the free module over strict partitions with coefficients in
/// the truncated polynomial ring, restricted to shapes of bounded size and
/// width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPVector {
    terms: BTreeMap<Vec<u32>, TruncPoly>,
    n_vars: usize,
    max_deg: u32,
    max_size: u32,
    max_part: u32,
    overflow: bool,
}

impl SPVector {
    pub fn zero(n_vars: usize, max_deg: u32, max_size: u32, max_part: u32) -> Self {
        SPVector {
            terms: BTreeMap::new(),
            n_vars,
            max_deg,
            max_size,
            max_part,
            overflow: false,
        }
    }

    /// The basis vector of one strict partition.
    ///
    /// # Panics
    /// Panics when `mu` is not strict or exceeds the bounds.
    pub fn unit(mu: &[u32], n_vars: usize, max_deg: u32, max_size: u32, max_part: u32) -> Self {
        check_strict(mu).expect("unit vector needs a strict partition");
        let mut v = Self::zero(n_vars, max_deg, max_size, max_part);
        v.add_term(mu.to_vec(), TruncPoly::one(n_vars, max_deg));
        assert!(
            !v.overflow,
            "unit partition {mu:?} exceeds the vector bounds"
        );
        v
    }

    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, TruncPoly> {
        &self.terms
    }

    /// The coefficient of one strict partition (zero when absent).
    pub fn get(&self, mu: &[u32]) -> TruncPoly {
        self.terms
            .get(mu)
            .cloned()
            .unwrap_or_else(|| TruncPoly::zero(self.n_vars, self.max_deg))
    }

    fn add_term(&mut self, mu: Vec<u32>, c: TruncPoly) {
        if c.is_zero() {
            return;
        }
        let size: u32 = mu.iter().sum();
        let wide = mu.first().copied().unwrap_or(0);
        if size > self.max_size || wide > self.max_part {
            self.overflow = true;
            return;
        }
        let cur = self
            .terms
            .remove(&mu)
            .unwrap_or_else(|| TruncPoly::zero(self.n_vars, self.max_deg));
        let sum = cur.add(&c);
        if !sum.is_zero() {
            self.terms.insert(mu, sum);
        }
    }

    /// Applies the single-diagonal raising operator `a_r`.
    pub fn apply_a(&self, r: u32) -> SPVector {
        let mut out = Self::zero(self.n_vars, self.max_deg, self.max_size, self.max_part);
        out.overflow = self.overflow;
        for (mu, c) in &self.terms {
            let add = addable_on_diagonal(mu, r);
            let rem = removable_on_diagonal(mu, r);
            debug_assert!(
                !(add.is_some() && rem),
                "diagonal {r} is both addable and removable on {mu:?}"
            );
            if let Some(nu) = add {
                out.add_term(nu, c.clone());
            } else if rem {
                out.add_term(mu.clone(), c.scale(&BetaPoly::beta()));
            }
        }
        out
    }

    /// Applies `A_r(x) = 1 + x·a_r` with `x` an arbitrary truncated series.
    pub fn apply_A(&self, r: u32, xp: &TruncPoly) -> SPVector {
        let mut out = self.clone();
        let raised = self.apply_a(r);
        out.overflow |= raised.overflow;
        for (mu, c) in raised.terms {
            out.add_term(mu, c.mul(xp));
        }
        out
    }

    /// Applies `P_n(x) = A_n ⋯ A_1 A_0 A_1 ⋯ A_n`, rightmost factor first.
    pub fn apply_P(&self, n: u32, xp: &TruncPoly) -> SPVector {
        let mut v = self.clone();
        for r in (0..=n).rev() {
            v = v.apply_A(r, xp);
        }
        for r in 1..=n {
            v = v.apply_A(r, xp);
        }
        v
    }

    /// Applies `Q_n(x) = A_n ⋯ A_1 A_0 A_0 A_1 ⋯ A_n`, rightmost factor first.
    pub fn apply_Q(&self, n: u32, xp: &TruncPoly) -> SPVector {
        let mut v = self.clone();
        for r in (0..=n).rev() {
            v = v.apply_A(r, xp);
        }
        for r in 0..=n {
            v = v.apply_A(r, xp);
        }
        v
    }
}

fn slashslash(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
    row_free: bool,
) -> Result<TruncPoly, OpError> {
    check_strict(outer)?;
    check_strict(inner)?;
    assert!(n_vars >= 1, "need at least one variable");
    let size: u32 = outer.iter().sum();
    let wide = outer.first().copied().unwrap_or(0);
    let inner_size: u32 = inner.iter().sum();
    let inner_wide = inner.first().copied().unwrap_or(0);
    if inner_size > size || inner_wide > wide {
        return Ok(TruncPoly::zero(n_vars, max_deg));
    }
    let n = wide.max(outer.len() as u32);
    let mut v = SPVector::unit(inner, n_vars, max_deg, size, wide);
    for i in 1..=n_vars {
        let x = TruncPoly::var(n_vars, max_deg, i);
        v = if row_free {
            v.apply_Q(n, &x)
        } else {
            v.apply_P(n, &x)
        };
    }
    Ok(v.get(outer))
}

/// The row-overlap skew family `⟨outer, P_n(x_k) ⋯ P_n(x_1) inner⟩` with
/// `n = max(outer_1, rows(outer))`.
#[allow(non_snake_case)]
pub fn gp_slashslash(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, OpError> {
    slashslash(outer, inner, n_vars, max_deg, false)
}

/// The row-overlap skew family built from the doubled-diagonal products
/// `Q_n`.
#[allow(non_snake_case)]
pub fn gq_slashslash(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, OpError> {
    slashslash(outer, inner, n_vars, max_deg, true)
}

/// All ways of removing a subset of the removable boxes of `mu` (at most one
/// per row, each removal leaving a strict shape even jointly), paired with
/// `β^(#removed boxes)`. The first entry is always `(mu, 1)`.
pub fn strip_sum(mu: &[u32]) -> Result<Vec<(Vec<u32>, BetaPoly)>, OpError> {
    check_strict(mu)?;
    let removable_rows: Vec<usize> = (0..mu.len())
        .filter(|&i| removable_on_diagonal(mu, mu[i] - 1))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << removable_rows.len()) {
        let mut nu = mu.to_vec();
        let mut removed = 0usize;
        for (bit, &row) in removable_rows.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                nu[row] -= 1;
                removed += 1;
            }
        }
        nu.retain(|&p| p > 0);
        debug_assert!(check_strict(&nu).is_ok());
        out.push((nu, BetaPoly::beta_pow(removed)));
    }
    Ok(out)
}

fn apply_word(v: &SPVector, word: &[(u32, TruncPoly)]) -> SPVector {
    let mut out = v.clone();
    for (r, xp) in word.iter().rev() {
        out = out.apply_A(*r, xp);
    }
    out
}

/// Checks the exchange identities of the `A_r` pointwise on every strict
/// partition of size at most `bound_size` and width at most `bound_part`,
/// with two formal variables truncated at total degree `formal_deg`:
///
/// - `A_i(x) A_j(y) = A_j(y) A_i(x)` for `|i−j| > 1`,
/// - `A_i(x) A_i(y) = A_i(x⊕y)`,
/// - `A_{i+1}(x) A_i(x⊕y) A_{i+1}(y) = A_i(y) A_{i+1}(x⊕y) A_i(x)` for `i ≥ 1`,
/// - `A_0(x) A_1(x⊕y) A_0(y) A_1(y⊖x) = A_1(y⊖x) A_0(y) A_1(x⊕y) A_0(x)`,
/// - `A_0(x⊖y) A_1(x) A_0(x⊕y) A_1(y) = A_1(y) A_0(x⊕y) A_1(x) A_0(x⊖y)`,
/// - `P_2(x) P_2(y) = P_2(y) P_2(x)` and the same for `Q_2`.
///
/// Returns the first failing identity and partition, if any.
pub fn check_yang_baxter(bound_size: u32, bound_part: u32, formal_deg: u32) -> Result<(), String> {
    let x = TruncPoly::var(2, formal_deg, 1);
    let y = TruncPoly::var(2, formal_deg, 2);
    let x_plus_y = x.oplus(&y);
    let y_minus_x = y.ominus_binary(&x);
    let x_minus_y = x.ominus_binary(&y);
    let r_max = bound_part + 2;

    let mut pairs: Vec<(String, Vec<(u32, TruncPoly)>, Vec<(u32, TruncPoly)>)> = Vec::new();
    for i in 0..=r_max {
        for j in (i + 2)..=r_max {
            pairs.push((
                format!("commuting distant diagonals ({i},{j})"),
                vec![(i, x.clone()), (j, y.clone())],
                vec![(j, y.clone()), (i, x.clone())],
            ));
        }
    }
    for i in 0..=r_max {
        pairs.push((
            format!("same-diagonal merge ({i})"),
            vec![(i, x.clone()), (i, y.clone())],
            vec![(i, x_plus_y.clone())],
        ));
    }
    for i in 1..r_max {
        pairs.push((
            format!("braid exchange ({},{})", i + 1, i),
            vec![
                (i + 1, x.clone()),
                (i, x_plus_y.clone()),
                (i + 1, y.clone()),
            ],
            vec![(i, y.clone()), (i + 1, x_plus_y.clone()), (i, x.clone())],
        ));
    }
    pairs.push((
        "diagonal-boundary exchange".to_string(),
        vec![
            (0, x.clone()),
            (1, x_plus_y.clone()),
            (0, y.clone()),
            (1, y_minus_x.clone()),
        ],
        vec![
            (1, y_minus_x.clone()),
            (0, y.clone()),
            (1, x_plus_y.clone()),
            (0, x.clone()),
        ],
    ));
    pairs.push((
        "diagonal-boundary exchange (mirrored)".to_string(),
        vec![
            (0, x_minus_y.clone()),
            (1, x.clone()),
            (0, x_plus_y.clone()),
            (1, y.clone()),
        ],
        vec![
            (1, y.clone()),
            (0, x_plus_y.clone()),
            (1, x.clone()),
            (0, x_minus_y.clone()),
        ],
    ));

    let mut shapes_to_try: Vec<Vec<u32>> = Vec::new();
    for s in 0..=bound_size {
        for mu in shapes::strict_partitions_of(s) {
            if mu.first().copied().unwrap_or(0) <= bound_part {
                shapes_to_try.push(mu);
            }
        }
    }

    for mu in &shapes_to_try {
        let v = SPVector::unit(mu, 2, formal_deg, bound_size + 4, bound_part + 4);
        for (name, lhs, rhs) in &pairs {
            let l = apply_word(&v, lhs);
            let r = apply_word(&v, rhs);
            assert!(
                !l.overflowed() && !r.overflowed(),
                "bounds too tight for {name}"
            );
            if l != r {
                return Err(format!("{name} fails on {mu:?}"));
            }
        }
        // Palindromic products commute; their words add up to 10 boxes.
        let vp = SPVector::unit(mu, 2, formal_deg, bound_size + 10, bound_part + 10);
        let pxy = vp.apply_P(2, &x).apply_P(2, &y);
        let pyx = vp.apply_P(2, &y).apply_P(2, &x);
        assert!(
            !pxy.overflowed() && !pyx.overflowed(),
            "bounds too tight for products"
        );
        if pxy != pyx {
            return Err(format!("products P_2 fail to commute on {mu:?}"));
        }
        let qxy = vp.apply_Q(2, &x).apply_Q(2, &y);
        let qyx = vp.apply_Q(2, &y).apply_Q(2, &x);
        assert!(
            !qxy.overflowed() && !qyx.overflowed(),
            "bounds too tight for products"
        );
        if qxy != qyx {
            return Err(format!("products Q_2 fail to commute on {mu:?}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta() -> BetaPoly {
        BetaPoly::beta()
    }

    #[test]
    fn single_diagonal_actions() {
        let empty = SPVector::unit(&[], 1, 2, 5, 5);
        let raised = empty.apply_a(0);
        assert_eq!(raised.get(&[1]), TruncPoly::one(1, 2));
        assert!(raised.get(&[]).is_zero());

        let one = SPVector::unit(&[1], 1, 2, 5, 5);
        let again = one.apply_a(0);
        assert_eq!(again.get(&[1]), TruncPoly::constant(1, 2, beta()));
        let up = one.apply_a(1);
        assert_eq!(up.get(&[2]), TruncPoly::one(1, 2));
        // No content-2 box can be added to or removed from a single box.
        assert!(one.apply_a(2).terms().is_empty());
        let x = TruncPoly::var(1, 2, 1);
        assert_eq!(one.apply_A(2, &x), one);
    }

    #[test]
    fn repeated_zero_diagonal() {
        let x = TruncPoly::var(1, 2, 1);
        let empty = SPVector::unit(&[], 1, 2, 5, 5);
        let once = empty.apply_A(0, &x);
        assert_eq!(once.get(&[]), TruncPoly::one(1, 2));
        assert_eq!(once.get(&[1]), x);
        let twice = once.apply_A(0, &x);
        assert_eq!(twice.get(&[1]).to_text(), "2*x1+b*x1^2");
    }

    #[test]
    fn palindromic_products_on_empty() {
        let x = TruncPoly::var(1, 2, 1);
        let empty = SPVector::unit(&[], 1, 2, 5, 5);
        assert_eq!(empty.apply_Q(1, &x).get(&[1]).to_text(), "2*x1+b*x1^2");
        assert_eq!(empty.apply_P(1, &x).get(&[1]).to_text(), "x1");
        let wide = SPVector::unit(&[], 1, 3, 9, 5);
        let x3 = TruncPoly::var(1, 3, 1);
        assert_eq!(wide.apply_P(2, &x3).get(&[]), TruncPoly::one(1, 3));
    }

    #[test]
    fn skew_families_of_single_box() {
        assert_eq!(gp_slashslash(&[1], &[], 1, 2).unwrap().to_text(), "x1");
        assert_eq!(
            gq_slashslash(&[1], &[], 1, 2).unwrap().to_text(),
            "2*x1+b*x1^2"
        );
    }

    #[test]
    fn straight_shapes_match_the_diagram_route() {
        for outer in [vec![2, 1], vec![3, 1], vec![3]] {
            let via_ops = gp_slashslash(&outer, &[], 3, 4).unwrap();
            let via_diagram = shapes::grothendieck_GP(&outer, &[], 3, 4).unwrap();
            assert_eq!(via_ops, via_diagram, "GP mismatch on {outer:?}");
            let via_ops = gq_slashslash(&outer, &[], 3, 4).unwrap();
            let via_diagram = shapes::grothendieck_GQ(&outer, &[], 3, 4).unwrap();
            assert_eq!(via_ops, via_diagram, "GQ mismatch on {outer:?}");
        }
    }

    #[test]
    fn strip_sums() {
        let ss = strip_sum(&[2, 1]).unwrap();
        assert_eq!(ss, vec![(vec![2, 1], BetaPoly::one()), (vec![2], beta())]);
        let ss = strip_sum(&[1]).unwrap();
        assert_eq!(ss, vec![(vec![1], BetaPoly::one()), (vec![], beta())]);
        assert_eq!(strip_sum(&[]).unwrap(), vec![(vec![], BetaPoly::one())]);
        assert!(strip_sum(&[1, 1]).is_err());
    }

    #[test]
    fn row_overlap_equals_strip_weighted_diagrams() {
        // Overlap family at inner (1) = GP of outer/(1) + β·GP of outer.
        let outer = [2u32, 1];
        let lhs = gp_slashslash(&outer, &[1], 2, 3).unwrap();
        let a = shapes::grothendieck_GP(&outer, &[1], 2, 3).unwrap();
        let b = shapes::grothendieck_GP(&outer, &[], 2, 3).unwrap();
        assert_eq!(lhs, a.add(&b.scale(&beta())));
    }

    #[test]
    fn exchange_identities_hold_on_small_shapes() {
        check_yang_baxter(3, 3, 2).unwrap();
    }

    #[test]
    fn overflow_is_sticky_and_exact() {
        let x = TruncPoly::var(1, 2, 1);
        let v = SPVector::unit(&[1], 1, 2, 1, 1);
        let w = v.apply_A(1, &x);
        assert!(w.overflowed());
        assert_eq!(w.get(&[1]), TruncPoly::one(1, 2));
        assert!(w.get(&[2]).is_zero());
    }
}

//! Set-valued and enriched set-valued P-partition enumeration.
//!
//! A plain assignment gives every vertex a nonempty finite set of positive
//! integers so that along each cover `s ⋖ t` the sets satisfy
//! `max σ(s) ≤ min σ(t)`, strictly when the lower vertex carries the larger
//! label. The enriched variant uses the marked alphabet
//! `1' < 1 < 2' < 2 < …`, encoded by keys `2v-1` (primed) and `2v`
//! (unprimed); equality `max σ(s) = min σ(t)` is allowed only when the shared
//! letter is unprimed on an ascent (`γ(s) < γ(t)`) or primed on a descent.
//! Vertices in the restriction set `V` (which must be valleys) may use only
//! unprimed letters.
//!
//! Each generating function weights an assignment by
//! `β^(|σ| - |P|) · ∏ x_(value of each letter)`, so truncating at total
//! x-degree `D` is the same as capping `|σ|` at `D`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::posets::LabeledPoset;
use crate::ring::{BetaPoly, Mono, TruncPoly};

#[derive(Debug, Error)]
pub enum PpartError {
    #[error("restricted vertex {0} is not a valley")]
    NotValley(usize),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexRange(usize, usize),
}

/// The value of a marked-alphabet key: `⌈key/2⌉`.
pub fn key_value(key: u32) -> u32 {
    key.div_ceil(2)
}

/// Odd keys are primed letters.
pub fn key_is_primed(key: u32) -> bool {
    key % 2 == 1
}

struct Engine<'a> {
    p: &'a LabeledPoset,
    order: Vec<usize>,
    in_covers: Vec<Vec<usize>>,
    max_key: u32,
    max_total: usize,
    enriched: bool,
    even_only: Vec<bool>,
    sets: Vec<Vec<u32>>,
    total: usize,
}

impl<'a> Engine<'a> {
    fn new(
        p: &'a LabeledPoset,
        max_key: u32,
        max_total: usize,
        enriched: bool,
        even_only: Vec<bool>,
    ) -> Self {
        let mut in_covers = vec![Vec::new(); p.m()];
        for (a, b) in p.covers() {
            in_covers[b].push(a);
        }
        Engine {
            p,
            order: p.topological_order(),
            in_covers,
            max_key,
            max_total,
            enriched,
            even_only,
            sets: vec![Vec::new(); p.m()],
            total: 0,
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vec<u32>])) {
        self.assign_vertex(0, visit);
    }

    fn assign_vertex(&mut self, k: usize, visit: &mut dyn FnMut(&[Vec<u32>])) {
        if k == self.order.len() {
            visit(&self.sets);
            return;
        }
        let v = self.order[k];
        let mut lo = 1u32;
        for &u in &self.in_covers[v] {
            let m = *self.sets[u].last().expect("lower vertex already assigned");
            let ascent = self.p.label(u) < self.p.label(v);
            let bound = if self.enriched {
                // Sharing the boundary letter needs an unprimed letter on an
                // ascent, a primed one on a descent.
                if (m % 2 == 0) == ascent {
                    m
                } else {
                    m + 1
                }
            } else if ascent {
                m
            } else {
                m + 1
            };
            lo = lo.max(bound);
        }
        let remaining_after = self.order.len() - k - 1;
        let budget = (self.max_total as i64) - (self.total as i64) - (remaining_after as i64);
        if budget < 1 || lo > self.max_key {
            return;
        }
        self.grow_set(k, v, lo, budget as usize, visit);
    }

    /// Extends `sets[v]` with ascending keys starting at `from`, visiting the
    /// rest of the poset after every nonempty prefix. Sets therefore appear
    /// in lexicographic order of their sorted elements.
    fn grow_set(
        &mut self,
        k: usize,
        v: usize,
        from: u32,
        budget: usize,
        visit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        for key in from..=self.max_key {
            if self.even_only[v] && key % 2 == 1 {
                continue;
            }
            self.sets[v].push(key);
            self.total += 1;
            self.assign_vertex(k + 1, visit);
            if budget > 1 && key < self.max_key {
                self.grow_set(k, v, key + 1, budget - 1, visit);
            }
            self.sets[v].pop();
            self.total -= 1;
        }
    }
}

fn check_restriction(p: &LabeledPoset, v_set: &BTreeSet<usize>) -> Result<(), PpartError> {
    let valleys: BTreeSet<usize> = p.valleys().into_iter().collect();
    for &v in v_set {
        if v >= p.m() {
            return Err(PpartError::VertexRange(v, p.m()));
        }
        if !valleys.contains(&v) {
            return Err(PpartError::NotValley(v));
        }
    }
    Ok(())
}

/// Streams every plain set-valued P-partition with entries in `1..=n` and at
/// most `max_total` entries overall. Slices are indexed by vertex.
pub fn stream_svp(p: &LabeledPoset, n: u32, max_total: usize, visit: &mut dyn FnMut(&[Vec<u32>])) {
    Engine::new(p, n, max_total, false, vec![false; p.m()]).run(visit);
}

/// Collects [`stream_svp`].
pub fn enumerate_svp(p: &LabeledPoset, n: u32, max_total: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    stream_svp(p, n, max_total, &mut |sets| out.push(sets.to_vec()));
    out
}

/// Streams every enriched assignment over `n` values (keys `1..=2n`), with
/// vertices in `v_set` restricted to unprimed letters. Errors unless every
/// restricted vertex is a valley.
pub fn stream_esvp(
    p: &LabeledPoset,
    v_set: &BTreeSet<usize>,
    n: u32,
    max_total: usize,
    visit: &mut dyn FnMut(&[Vec<u32>]),
) -> Result<(), PpartError> {
    check_restriction(p, v_set)?;
    let even_only: Vec<bool> = (0..p.m()).map(|v| v_set.contains(&v)).collect();
    Engine::new(p, 2 * n, max_total, true, even_only).run(visit);
    Ok(())
}

/// Collects [`stream_esvp`]; entries are marked-alphabet keys.
pub fn enumerate_esvp(
    p: &LabeledPoset,
    v_set: &BTreeSet<usize>,
    n: u32,
    max_total: usize,
) -> Result<Vec<Vec<Vec<u32>>>, PpartError> {
    let mut out = Vec::new();
    stream_esvp(p, v_set, n, max_total, &mut |sets| out.push(sets.to_vec()))?;
    Ok(out)
}

fn accumulate(poly: &mut TruncPoly, sets: &[Vec<u32>], m: usize, marked: bool) {
    let n_vars = poly.n_vars();
    let mut exps = vec![0u32; n_vars];
    let mut total = 0usize;
    for set in sets {
        for &key in set {
            let v = if marked { key_value(key) } else { key };
            exps[(v - 1) as usize] += 1;
            total += 1;
        }
    }
    poly.add_term(Mono::new(exps), BetaPoly::beta_pow(total - m));
}

/// The plain generating function `Σ β^(|σ|-|P|) x^σ` over assignments with
/// entries in `1..=n_vars`, truncated at total degree `max_deg`.
pub fn gamma_enumerator(p: &LabeledPoset, n_vars: usize, max_deg: u32) -> TruncPoly {
    let mut out = TruncPoly::zero(n_vars, max_deg);
    stream_svp(p, n_vars as u32, max_deg as usize, &mut |sets| {
        accumulate(&mut out, sets, p.m(), false);
    });
    out
}

/// The enriched generating function with valley restriction `v_set`.
pub fn omega_enumerator(
    p: &LabeledPoset,
    v_set: &BTreeSet<usize>,
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, PpartError> {
    let mut out = TruncPoly::zero(n_vars, max_deg);
    stream_esvp(p, v_set, n_vars as u32, max_deg as usize, &mut |sets| {
        accumulate(&mut out, sets, p.m(), true);
    })?;
    Ok(out)
}

/// The unrestricted enriched generating function (`V = ∅`).
pub fn omega_free_enumerator(p: &LabeledPoset, n_vars: usize, max_deg: u32) -> TruncPoly {
    omega_enumerator(p, &BTreeSet::new(), n_vars, max_deg).expect("empty restriction is valid")
}

/// The fully restricted enriched generating function (`V =` all valleys).
pub fn omega_bar_enumerator(p: &LabeledPoset, n_vars: usize, max_deg: u32) -> TruncPoly {
    let v: BTreeSet<usize> = p.valleys().into_iter().collect();
    omega_enumerator(p, &v, n_vars, max_deg).expect("valleys are a valid restriction")
}

/// Renders an assignment as `{1,2},{2}`; with `marked`, keys print as
/// letters (`{1',1},{2}`).
pub fn render_assignment(sets: &[Vec<u32>], marked: bool) -> String {
    sets.iter()
        .map(|set| {
            let inner = set
                .iter()
                .map(|&k| {
                    if marked {
                        format!(
                            "{}{}",
                            key_value(k),
                            if key_is_primed(k) { "'" } else { "" }
                        )
                    } else {
                        k.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(",");
            format!("{{{inner}}}")
        })
        .collect::<Vec<_>>()
        .join(",")
}

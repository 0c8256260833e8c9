//! Quasisymmetric bases over ℤ[β] and the linear maps between them.
//!
//! Four quasisymmetric families are synthesized directly from their defining
//! sums over chains of sets (`M`, `L`, `K`, `Kbar`), and the symmetric
//! families `GP`/`GQ`/`GS` are pulled in from the diagram enumerators in
//! [`crate::shapes`]. Expansions are computed by greedy triangular
//! elimination: indices are processed by ascending size and, within a size,
//! lexicographically greater index first, reading the coefficient of the
//! sorted monomial `x^index` and subtracting that multiple of the basis
//! element. `L`, `Kbar`, and `GP` have unit lead coefficients; `K` and `GQ`
//! lead with `2^(number of parts)`, so those expansions demand exact
//! divisibility. `GS` is not monomial-triangular and is instead eliminated
//! inside `GQ`-coordinates, ascending lexicographically within each size.
//!
//! Expansion coefficients are dyadic (`BetaPoly` over a power of two) so the
//! inverse change of basis from `Kbar` back to `K` is representable.

// Function names carry the conventional upper-case basis letters.
#![allow(non_snake_case)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::comps::{self, Composition};
use crate::ring::{BetaPoly, DyadicBeta, Mono, TruncPoly};
use crate::shapes;

#[derive(Debug, Error)]
pub enum QsymError {
    #[error("polynomial is not quasisymmetric near {0}")]
    NotQuasisymmetric(String),
    #[error("not in the {basis}-span up to degree {deg}: residual term {coeff} at {monomial}")]
    NotInSpan {
        basis: &'static str,
        deg: u32,
        monomial: String,
        coeff: String,
    },
    #[error("expanding to degree {1} needs at least that many variables, got {0}")]
    InsufficientVariables(usize, u32),
    #[error("operation expects a {expected} expansion, got {got}")]
    WrongBasis {
        expected: &'static str,
        got: &'static str,
    },
    #[error("coefficient {0} is not integral")]
    NonIntegralCoefficient(String),
    #[error("invalid expansion JSON: {0}")]
    Json(String),
}

/// Which family an expansion's indices refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisTag {
    M,
    L,
    K,
    Kbar,
    GP,
    GQ,
    GS,
}

impl BasisTag {
    pub fn name(self) -> &'static str {
        match self {
            BasisTag::M => "M",
            BasisTag::L => "L",
            BasisTag::K => "K",
            BasisTag::Kbar => "Kbar",
            BasisTag::GP => "GP",
            BasisTag::GQ => "GQ",
            BasisTag::GS => "GS",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            BasisTag::Kbar => "\\bar{K}",
            other => other.name(),
        }
    }

    pub fn from_name(s: &str) -> Option<BasisTag> {
        match s {
            "M" => Some(BasisTag::M),
            "L" => Some(BasisTag::L),
            "K" => Some(BasisTag::K),
            "Kbar" | "KBar" | "kbar" => Some(BasisTag::Kbar),
            "GP" => Some(BasisTag::GP),
            "GQ" => Some(BasisTag::GQ),
            "GS" => Some(BasisTag::GS),
            _ => None,
        }
    }

    /// Compositions for the quasisymmetric families, peak compositions for
    /// the `K`-families, strict partitions for the symmetric ones.
    fn valid_index(self, index: &[u32]) -> bool {
        match self {
            BasisTag::M | BasisTag::L => index.iter().all(|&p| p > 0),
            BasisTag::K | BasisTag::Kbar => {
                index.iter().all(|&p| p > 0) && Composition::new(index.to_vec()).is_peak()
            }
            BasisTag::GP | BasisTag::GQ | BasisTag::GS => {
                index.iter().all(|&p| p > 0) && index.windows(2).all(|w| w[0] > w[1])
            }
        }
    }
}

/// A finite linear combination of basis elements, exact up to indices of
/// size `valid_deg`; larger indices are truncated away and carry no
/// information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    basis: BasisTag,
    valid_deg: u32,
    terms: BTreeMap<Vec<u32>, DyadicBeta>,
}

impl BasisExpansion {
    pub fn new(basis: BasisTag, valid_deg: u32) -> Self {
        BasisExpansion {
            basis,
            valid_deg,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element with coefficient 1.
    pub fn single(basis: BasisTag, index: Vec<u32>, valid_deg: u32) -> Self {
        let mut e = BasisExpansion::new(basis, valid_deg);
        e.add_term(index, DyadicBeta::from_beta(BetaPoly::one()));
        e
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn valid_deg(&self) -> u32 {
        self.valid_deg
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, DyadicBeta> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: &[u32]) -> DyadicBeta {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(DyadicBeta::zero)
    }

    /// Merges in one term, dropping zeros and indices beyond `valid_deg`.
    pub fn add_term(&mut self, index: Vec<u32>, c: DyadicBeta) {
        debug_assert!(
            self.basis.valid_index(&index),
            "bad index for {}",
            self.basis.name()
        );
        if index.iter().sum::<u32>() > self.valid_deg {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(DyadicBeta::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            // Re-borrow to remove: find the key we just zeroed.
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Terms sorted by ascending size, then lexicographically greater index
    /// first — the same order the triangular solvers use.
    pub fn ordered_terms(&self) -> Vec<(&Vec<u32>, &DyadicBeta)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let (sa, sb) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            sa.cmp(&sb).then_with(|| b.cmp(a))
        });
        v
    }

    /// Reconstructs the truncated polynomial; every coefficient must be
    /// integral.
    pub fn synthesize(&self, n_vars: usize, max_deg: u32) -> Result<TruncPoly, QsymError> {
        let mut acc = TruncPoly::zero(n_vars, max_deg);
        for (index, c) in &self.terms {
            let ci = c
                .as_integral()
                .ok_or_else(|| QsymError::NonIntegralCoefficient(c.to_text()))?;
            acc = acc.add(&basis_element(self.basis, index, n_vars, max_deg).scale(ci));
        }
        Ok(acc)
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (index, c)) in self.ordered_terms().into_iter().enumerate() {
            let parts = index
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let name = if latex {
                format!("{}_{{({})}}", self.basis.latex(), parts)
            } else {
                format!("{}({})", self.basis.name(), parts)
            };
            let raw = if latex {
                c.num().to_latex()
            } else {
                c.num().to_text()
            };
            // Pull a leading minus out of a single-term numerator so joins
            // can render "a - b" instead of "a + -b".
            let (neg, mag) = match raw.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, raw),
            };
            let multi = mag.starts_with('-') || mag[1..].contains(['+', '-']);
            let body = if c.den_pow2() == 0 {
                if multi {
                    if latex {
                        format!("\\left({mag}\\right) {name}")
                    } else {
                        format!("({mag})*{name}")
                    }
                } else if mag == "1" {
                    name
                } else if latex {
                    format!("{mag}\\,{name}")
                } else {
                    format!("{mag}*{name}")
                }
            } else {
                let den = 2u128.pow(c.den_pow2());
                if latex {
                    format!("\\tfrac{{{mag}}}{{{den}}}\\,{name}")
                } else if multi {
                    format!("(({mag})/{den})*{name}")
                } else {
                    format!("({mag}/{den})*{name}")
                }
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": self.basis.name(),
            "valid_deg": self.valid_deg,
            "terms": self
                .ordered_terms()
                .into_iter()
                .map(|(index, c)| serde_json::json!({"index": index, "coeff": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, QsymError> {
        let obj = v
            .as_object()
            .ok_or_else(|| QsymError::Json("expected object".into()))?;
        let basis = obj
            .get("basis")
            .and_then(|b| b.as_str())
            .and_then(BasisTag::from_name)
            .ok_or_else(|| QsymError::Json("missing or unknown basis".into()))?;
        let valid_deg =
            obj.get("valid_deg")
                .and_then(|d| d.as_u64())
                .ok_or_else(|| QsymError::Json("missing valid_deg".into()))? as u32;
        let mut out = BasisExpansion::new(basis, valid_deg);
        for t in obj
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| QsymError::Json("missing terms".into()))?
        {
            let index: Vec<u32> = t
                .get("index")
                .and_then(|i| i.as_array())
                .ok_or_else(|| QsymError::Json("term missing index".into()))?
                .iter()
                .map(|p| {
                    p.as_u64()
                        .map(|p| p as u32)
                        .ok_or_else(|| QsymError::Json("bad index part".into()))
                })
                .collect::<Result<_, _>>()?;
            if !basis.valid_index(&index) {
                return Err(QsymError::Json(format!(
                    "index {index:?} is invalid for basis {}",
                    basis.name()
                )));
            }
            let coeff = DyadicBeta::from_json(
                t.get("coeff")
                    .ok_or_else(|| QsymError::Json("term missing coeff".into()))?,
            )
            .map_err(QsymError::Json)?;
            out.add_term(index, coeff);
        }
        Ok(out)
    }
}

fn mono_text(m: &Mono) -> String {
    if m.degree() == 0 {
        return "1".to_string();
    }
    m.exps()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

// ---------------------------------------------------------------------------
// Basis synthesis.

/// The monomial quasisymmetric element: all placements of the exponent
/// pattern `α` on strictly increasing variables.
pub fn monomial_M(alpha: &Composition, n_vars: usize, max_deg: u32) -> TruncPoly {
    let mut out = TruncPoly::zero(n_vars, max_deg);
    if alpha.size() > max_deg {
        return out;
    }
    fn place(parts: &[u32], n_vars: usize, start: usize, exps: &mut Vec<u32>, out: &mut TruncPoly) {
        match parts.split_first() {
            None => out.add_term(Mono::new(exps.clone()), BetaPoly::one()),
            Some((&p, rest)) => {
                for i in start..n_vars {
                    exps[i] = p;
                    place(rest, n_vars, i + 1, exps, out);
                    exps[i] = 0;
                }
            }
        }
    }
    let mut exps = vec![0u32; n_vars];
    place(alpha.parts(), n_vars, 0, &mut exps, &mut out);
    out
}

/// Shared enumerator for the chain-of-sets bases. Positions `1..=N` each get
/// a nonempty ascending set of keys; the boundary between positions `i` and
/// `i+1` is weak or strict according to whether `i` lies in `des`. In marked
/// mode keys run over `1..=2·n_vars` (odd = primed) and the boundary letter
/// may be shared exactly when its primedness matches the boundary kind;
/// positions flagged in `even_only` admit unprimed letters only.
struct ChainBuilder<'a> {
    n_positions: usize,
    des: &'a std::collections::BTreeSet<u32>,
    marked: bool,
    even_only: &'a [bool],
    max_key: u32,
    max_deg: u32,
    exps: Vec<u32>,
    total: u32,
    out: TruncPoly,
}

impl ChainBuilder<'_> {
    fn var_of(&self, key: u32) -> usize {
        if self.marked {
            key.div_ceil(2) as usize
        } else {
            key as usize
        }
    }

    fn position(&mut self, pos: usize, lo: u32) {
        if pos == self.n_positions {
            self.out.add_term(
                Mono::new(self.exps.clone()),
                BetaPoly::beta_pow((self.total as usize) - self.n_positions),
            );
            return;
        }
        let remaining_after = (self.n_positions - pos - 1) as i64;
        let budget = self.max_deg as i64 - self.total as i64 - remaining_after;
        if budget < 1 || lo > self.max_key {
            return;
        }
        self.grow(pos, lo, budget as usize);
    }

    fn grow(&mut self, pos: usize, from: u32, budget: usize) {
        for key in from..=self.max_key {
            if self.marked && self.even_only[pos] && key % 2 == 1 {
                continue;
            }
            let var = self.var_of(key);
            self.exps[var - 1] += 1;
            self.total += 1;
            let descent = self.des.contains(&(pos as u32 + 1));
            let next_lo = if self.marked {
                // Shared boundary letter must be unprimed on a weak boundary,
                // primed on a strict one.
                if (key % 2 == 0) != descent {
                    key
                } else {
                    key + 1
                }
            } else {
                key + u32::from(descent)
            };
            self.position(pos + 1, next_lo);
            if budget > 1 && key < self.max_key {
                self.grow(pos, key + 1, budget - 1);
            }
            self.exps[var - 1] -= 1;
            self.total -= 1;
        }
    }
}

fn chain_sum(
    n_vars: usize,
    max_deg: u32,
    n_positions: usize,
    des: &std::collections::BTreeSet<u32>,
    marked: bool,
    even_only: Vec<bool>,
) -> TruncPoly {
    let mut b = ChainBuilder {
        n_positions,
        des,
        marked,
        even_only: &even_only,
        max_key: if marked {
            2 * n_vars as u32
        } else {
            n_vars as u32
        },
        max_deg,
        exps: vec![0u32; n_vars],
        total: 0,
        out: TruncPoly::zero(n_vars, max_deg),
    };
    b.position(0, 1);
    b.out
}

/// The multifundamental element: sum over chains of `|α|` nonempty sets of
/// positive integers, weakly increasing between consecutive positions and
/// strictly increasing across the descents of `α`.
pub fn multifundamental_L(alpha: &Composition, n_vars: usize, max_deg: u32) -> TruncPoly {
    let des = alpha.descent_set();
    chain_sum(
        n_vars,
        max_deg,
        alpha.size() as usize,
        &des,
        false,
        vec![false; alpha.size() as usize],
    )
}

/// The multipeak element: the marked-set chain sum. Requires a peak
/// composition; leads with coefficient `2^(number of parts)` at `x^α`.
pub fn multipeak_K(alpha: &Composition, n_vars: usize, max_deg: u32) -> TruncPoly {
    assert!(
        alpha.is_peak(),
        "multipeak index must be a peak composition"
    );
    let des = alpha.descent_set();
    let n = alpha.size() as usize;
    chain_sum(n_vars, max_deg, n, &des, true, vec![false; n])
}

/// The small multipeak element: as [`multipeak_K`] but the first position
/// and every position directly after a strict boundary are unprimed-only.
/// Leads with coefficient 1 at `x^α`.
pub fn multipeak_Kbar(alpha: &Composition, n_vars: usize, max_deg: u32) -> TruncPoly {
    assert!(
        alpha.is_peak(),
        "small multipeak index must be a peak composition"
    );
    let des = alpha.descent_set();
    let n = alpha.size() as usize;
    let even_only: Vec<bool> = (0..n)
        .map(|j| j == 0 || des.contains(&(j as u32)))
        .collect();
    chain_sum(n_vars, max_deg, n, &des, true, even_only)
}

/// One basis element as a truncated polynomial. Panics on an index invalid
/// for the family (wrong positivity, non-peak, non-strict).
pub fn basis_element(basis: BasisTag, index: &[u32], n_vars: usize, max_deg: u32) -> TruncPoly {
    assert!(
        basis.valid_index(index),
        "invalid {} index {:?}",
        basis.name(),
        index
    );
    match basis {
        BasisTag::M => monomial_M(&Composition::new(index.to_vec()), n_vars, max_deg),
        BasisTag::L => multifundamental_L(&Composition::new(index.to_vec()), n_vars, max_deg),
        BasisTag::K => multipeak_K(&Composition::new(index.to_vec()), n_vars, max_deg),
        BasisTag::Kbar => multipeak_Kbar(&Composition::new(index.to_vec()), n_vars, max_deg),
        BasisTag::GP => {
            shapes::grothendieck_GP(index, &[], n_vars, max_deg).expect("strict partition index")
        }
        BasisTag::GQ => {
            shapes::grothendieck_GQ(index, &[], n_vars, max_deg).expect("strict partition index")
        }
        BasisTag::GS => {
            shapes::grothendieck_GS(index, &[], n_vars, max_deg).expect("strict partition index")
        }
    }
}

// ---------------------------------------------------------------------------
// Expansion.

fn non_quasisymmetric_witness(f: &TruncPoly) -> Option<String> {
    let mut groups: BTreeMap<Vec<u32>, Vec<(&Mono, &BetaPoly)>> = BTreeMap::new();
    for (m, c) in f.iter() {
        groups.entry(m.pattern()).or_default().push((m, c));
    }
    for (pattern, terms) in groups {
        if pattern.is_empty() {
            continue;
        }
        let expected = crate::ring::binomial(f.n_vars() as u64, pattern.len() as u64);
        let consistent =
            terms.len() as u64 == expected && terms.iter().all(|(_, c)| *c == terms[0].1);
        if !consistent {
            return Some(mono_text(terms[0].0));
        }
    }
    None
}

/// Reads off the monomial expansion of a quasisymmetric polynomial: the
/// coefficient of `M_α` is the coefficient of `x1^α1 ⋯ xk^αk`.
pub fn expand_in_M(f: &TruncPoly) -> Result<BasisExpansion, QsymError> {
    if let Some(w) = non_quasisymmetric_witness(f) {
        return Err(QsymError::NotQuasisymmetric(w));
    }
    let mut out = BasisExpansion::new(BasisTag::M, f.max_deg());
    for (m, c) in f.iter() {
        if m.exps().iter().all(|&e| e > 0) {
            out.add_term(m.exps().to_vec(), DyadicBeta::from_beta(c.clone()));
        }
    }
    Ok(out)
}

/// Candidate indices of one size, in processing order (lexicographically
/// greater first).
fn candidate_indices(basis: BasisTag, size: u32) -> Vec<Vec<u32>> {
    match basis {
        BasisTag::M | BasisTag::L => comps::compositions_of(size)
            .into_iter()
            .map(|a| a.parts().to_vec())
            .collect(),
        BasisTag::K | BasisTag::Kbar => comps::peak_compositions_of(size)
            .into_iter()
            .map(|a| a.parts().to_vec())
            .collect(),
        BasisTag::GP | BasisTag::GQ | BasisTag::GS => shapes::strict_partitions_of(size),
    }
}

fn lead_pow2(basis: BasisTag, index: &[u32]) -> u32 {
    match basis {
        BasisTag::K | BasisTag::GQ => index.len() as u32,
        _ => 0,
    }
}

fn not_in_span(basis: BasisTag, deg: u32, m: &Mono, c: &BetaPoly) -> QsymError {
    QsymError::NotInSpan {
        basis: basis.name(),
        deg,
        monomial: mono_text(m),
        coeff: c.to_text(),
    }
}

fn triangular_expand(f: &TruncPoly, basis: BasisTag) -> Result<BasisExpansion, QsymError> {
    if (f.n_vars() as u32) < f.max_deg() {
        return Err(QsymError::InsufficientVariables(f.n_vars(), f.max_deg()));
    }
    if let Some(w) = non_quasisymmetric_witness(f) {
        return Err(QsymError::NotQuasisymmetric(w));
    }
    let mut residual = f.clone();
    let mut out = BasisExpansion::new(basis, f.max_deg());
    for size in 0..=f.max_deg() {
        if residual.is_zero() {
            break;
        }
        if !residual.iter().any(|(m, _)| m.degree() == size) {
            continue;
        }
        for index in candidate_indices(basis, size) {
            let c = residual.coeff_of_parts(&index);
            if c.is_zero() {
                continue;
            }
            let lead = BigInt::from(2u8).pow(lead_pow2(basis, &index));
            let q = c
                .div_exact_int(&lead)
                .ok_or_else(|| not_in_span(basis, f.max_deg(), &Mono::new(index.clone()), &c))?;
            residual =
                residual.sub(&basis_element(basis, &index, f.n_vars(), f.max_deg()).scale(&q));
            out.add_term(index, DyadicBeta::from_beta(q));
        }
        if let Some((m, c)) = residual.iter().find(|(m, _)| m.degree() == size) {
            return Err(not_in_span(basis, f.max_deg(), m, c));
        }
    }
    debug_assert!(residual.is_zero());
    Ok(out)
}

/// `GS` is triangular only in `GQ`-coordinates: expand in `GQ` first, then
/// eliminate ascending (each `GS_λ` is `GQ_λ` plus strictly larger terms).
fn expand_in_gs(f: &TruncPoly) -> Result<BasisExpansion, QsymError> {
    let gq = triangular_expand(f, BasisTag::GQ)?;
    let mut g: BTreeMap<Vec<u32>, DyadicBeta> = gq.terms().clone();
    let mut out = BasisExpansion::new(BasisTag::GS, f.max_deg());
    for size in 0..=f.max_deg() {
        let mut indices = shapes::strict_partitions_of(size);
        indices.sort();
        for index in indices {
            let Some(c) = g.get(&index).cloned() else {
                continue;
            };
            if c.is_zero() {
                g.remove(&index);
                continue;
            }
            let gs_in_gq = triangular_expand(
                &basis_element(BasisTag::GS, &index, f.n_vars(), f.max_deg()),
                BasisTag::GQ,
            )?;
            for (mu, d) in gs_in_gq.terms() {
                let cur = g.remove(mu).unwrap_or_else(DyadicBeta::zero);
                let next = cur.sub(&c.mul(d));
                if !next.is_zero() {
                    g.insert(mu.clone(), next);
                }
            }
            out.add_term(index, c);
        }
    }
    if let Some((mu, c)) = g.iter().find(|(_, c)| !c.is_zero()) {
        return Err(QsymError::NotInSpan {
            basis: BasisTag::GS.name(),
            deg: f.max_deg(),
            monomial: mono_text(&Mono::new(mu.clone())),
            coeff: c.to_text(),
        });
    }
    Ok(out)
}

/// Expands `f` in the requested basis by triangular elimination, or reports
/// the first residual term that cannot be matched.
pub fn expand_in_basis(f: &TruncPoly, basis: BasisTag) -> Result<BasisExpansion, QsymError> {
    match basis {
        BasisTag::M => expand_in_M(f),
        BasisTag::GS => expand_in_gs(f),
        _ => triangular_expand(f, basis),
    }
}

// ---------------------------------------------------------------------------
// Change of basis between the two multipeak families.

/// `K_α` as a `Kbar`-combination: sum over 0/1 bumps `δ` of the parts, with
/// coefficient `2^(parts unbumped) β^(parts bumped)`, truncated at
/// `max_size`.
pub fn k_to_kbar(alpha: &Composition, max_size: u32) -> BasisExpansion {
    assert!(alpha.is_peak(), "index must be a peak composition");
    let n = alpha.len();
    let mut out = BasisExpansion::new(BasisTag::Kbar, max_size);
    for mask in 0u64..(1u64 << n) {
        let delta: Vec<u32> = (0..n).map(|i| (mask >> i & 1) as u32).collect();
        let bumped = mask.count_ones() as usize;
        let target = alpha.componentwise_add(&delta);
        if target.size() > max_size {
            continue;
        }
        let coeff = BetaPoly::beta_pow(bumped).mul_int(&BigInt::from(2u8).pow((n - bumped) as u32));
        out.add_term(target.parts().to_vec(), DyadicBeta::from_beta(coeff));
    }
    out
}

/// `Kbar_α` as a `K`-combination: `2^(-parts) Σ_δ (-β/2)^|δ| K_(α+δ)` over
/// all nonnegative bumps `δ`, truncated at `max_size`. Coefficients are
/// genuinely dyadic.
pub fn kbar_to_k(alpha: &Composition, max_size: u32) -> BasisExpansion {
    assert!(alpha.is_peak(), "index must be a peak composition");
    let mut out = BasisExpansion::new(BasisTag::K, max_size);
    let headroom = max_size.saturating_sub(alpha.size());
    fn bump(
        alpha: &Composition,
        i: usize,
        left: u32,
        delta: &mut Vec<u32>,
        out: &mut BasisExpansion,
    ) {
        let n = alpha.len();
        if i == n {
            let total: u32 = delta.iter().sum();
            let num = BetaPoly::beta_pow(total as usize)
                .mul_int(&BigInt::from(if total % 2 == 1 { -1 } else { 1 }));
            let coeff = DyadicBeta::new(num, n as u32 + total);
            out.add_term(alpha.componentwise_add(delta).parts().to_vec(), coeff);
            return;
        }
        for d in 0..=left {
            delta.push(d);
            bump(alpha, i + 1, left - d, delta, out);
            delta.pop();
        }
    }
    if alpha.size() <= max_size {
        bump(alpha, 0, headroom, &mut Vec::new(), &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// Linear and algebra maps.

/// Sends each `L_α` to `K_(Λ(α))`, collapsing a multifundamental expansion
/// onto the multipeak basis.
pub fn theta(exp: &BasisExpansion) -> Result<BasisExpansion, QsymError> {
    if exp.basis() != BasisTag::L {
        return Err(QsymError::WrongBasis {
            expected: "L",
            got: exp.basis().name(),
        });
    }
    let mut out = BasisExpansion::new(BasisTag::K, exp.valid_deg());
    for (index, c) in exp.terms() {
        let lam = Composition::new(index.clone()).lambda_map();
        out.add_term(lam.parts().to_vec(), c.clone());
    }
    Ok(out)
}

/// Deconcatenation coproduct on a monomial expansion: pairs
/// `(prefix, suffix, coefficient)` sorted by index.
pub fn coproduct_M(
    exp: &BasisExpansion,
) -> Result<Vec<(Vec<u32>, Vec<u32>, DyadicBeta)>, QsymError> {
    if exp.basis() != BasisTag::M {
        return Err(QsymError::WrongBasis {
            expected: "M",
            got: exp.basis().name(),
        });
    }
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), DyadicBeta> = BTreeMap::new();
    for (index, c) in exp.terms() {
        for (a, b) in Composition::new(index.clone()).deconcatenations() {
            let entry = acc
                .entry((a.parts().to_vec(), b.parts().to_vec()))
                .or_insert_with(DyadicBeta::zero);
            *entry = entry.add(c);
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((a, b), c)| (a, b, c))
        .collect())
}

fn integral(c: &DyadicBeta) -> Result<BetaPoly, QsymError> {
    c.as_integral()
        .cloned()
        .ok_or_else(|| QsymError::NonIntegralCoefficient(c.to_text()))
}

fn mobius_forward(f: &TruncPoly) -> TruncPoly {
    f.substitute_mobius(&BetaPoly::one(), &BetaPoly::beta())
}

/// The transpose involution: `L_α ↦ L_(α^t)` and `K_α ↦ K_(α^♭)`, composed
/// with the substitution `x ↦ x/(1-βx)`.
pub fn omega(exp: &BasisExpansion, n_vars: usize, max_deg: u32) -> Result<TruncPoly, QsymError> {
    let mut acc = TruncPoly::zero(n_vars, max_deg);
    for (index, c) in exp.terms() {
        let ci = integral(c)?;
        let alpha = Composition::new(index.clone());
        let image = match exp.basis() {
            BasisTag::L => multifundamental_L(&alpha.transpose(), n_vars, max_deg),
            BasisTag::K => multipeak_K(&alpha.flat(), n_vars, max_deg),
            _ => {
                return Err(QsymError::WrongBasis {
                    expected: "L or K",
                    got: exp.basis().name(),
                })
            }
        };
        acc = acc.add(&image.scale(&ci));
    }
    Ok(mobius_forward(&acc))
}

/// The complement involution: `L_α ↦ L_(α^c)` and `K_α ↦ K_α`, composed
/// with `x ↦ x/(1-βx)`.
pub fn psi(exp: &BasisExpansion, n_vars: usize, max_deg: u32) -> Result<TruncPoly, QsymError> {
    let mut acc = TruncPoly::zero(n_vars, max_deg);
    for (index, c) in exp.terms() {
        let ci = integral(c)?;
        let alpha = Composition::new(index.clone());
        let image = match exp.basis() {
            BasisTag::L => multifundamental_L(&alpha.complement(), n_vars, max_deg),
            BasisTag::K => multipeak_K(&alpha, n_vars, max_deg),
            _ => {
                return Err(QsymError::WrongBasis {
                    expected: "L or K",
                    got: exp.basis().name(),
                })
            }
        };
        acc = acc.add(&image.scale(&ci));
    }
    Ok(mobius_forward(&acc))
}

/// The reversal involution: `L_α ↦ L_(α^r)` and `K_α ↦ K_(α^♭)`, with no
/// substitution.
pub fn rho(exp: &BasisExpansion, n_vars: usize, max_deg: u32) -> Result<TruncPoly, QsymError> {
    let mut acc = TruncPoly::zero(n_vars, max_deg);
    for (index, c) in exp.terms() {
        let ci = integral(c)?;
        let alpha = Composition::new(index.clone());
        let image = match exp.basis() {
            BasisTag::L => multifundamental_L(&alpha.reverse(), n_vars, max_deg),
            BasisTag::K => multipeak_K(&alpha.flat(), n_vars, max_deg),
            _ => {
                return Err(QsymError::WrongBasis {
                    expected: "L or K",
                    got: exp.basis().name(),
                })
            }
        };
        acc = acc.add(&image.scale(&ci));
    }
    Ok(acc)
}

/// The antipode on a multifundamental expansion: each `L_α` maps to
/// `(-1)^|α|` times `L_(α^t)` with `β` negated throughout, then
/// `x ↦ x/(1+βx)`. Coefficients also have `β` negated.
pub fn antipode(exp: &BasisExpansion, n_vars: usize, max_deg: u32) -> Result<TruncPoly, QsymError> {
    if exp.basis() != BasisTag::L {
        return Err(QsymError::WrongBasis {
            expected: "L",
            got: exp.basis().name(),
        });
    }
    let mut acc = TruncPoly::zero(n_vars, max_deg);
    for (index, c) in exp.terms() {
        let alpha = Composition::new(index.clone());
        let mut ci = integral(c)?.negate_beta();
        if alpha.size() % 2 == 1 {
            ci = ci.neg();
        }
        let image = multifundamental_L(&alpha.transpose(), n_vars, max_deg).negate_beta();
        acc = acc.add(&image.scale(&ci));
    }
    Ok(acc.substitute_mobius(&BetaPoly::one(), &BetaPoly::beta().neg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn one_term(alpha: &[u32], basis: BasisTag, valid_deg: u32) -> BasisExpansion {
        let mut e = BasisExpansion::new(basis, valid_deg);
        e.add_term(alpha.to_vec(), DyadicBeta::from_beta(BetaPoly::one()));
        e
    }

    #[test]
    fn monomial_basis_examples() {
        let m = monomial_M(&c(&[2, 1]), 3, 3);
        assert_eq!(m.to_text(), "x1^2*x2+x1^2*x3+x2^2*x3");
        assert_eq!(monomial_M(&Composition::empty(), 2, 2).to_text(), "1");
    }

    #[test]
    fn multifundamental_small_values() {
        // |α| = 2 with a weak boundary: all pairs a ≤ b plus no β-terms
        // below degree 3.
        let l2 = multifundamental_L(&c(&[2]), 2, 2);
        assert_eq!(l2.to_text(), "x1^2+x1*x2+x2^2");
        let l11 = multifundamental_L(&c(&[1, 1]), 2, 2);
        assert_eq!(l11.to_text(), "x1*x2");
        // One element: sets of distinct values, β per extra entry.
        let l1 = multifundamental_L(&c(&[1]), 2, 2);
        assert_eq!(l1.to_text(), "x1+x2+b*x1*x2");
        assert_eq!(
            multifundamental_L(&Composition::empty(), 2, 2).to_text(),
            "1"
        );
    }

    #[test]
    fn multipeak_product_formula_on_two_vars() {
        let n = 2;
        let d = 7;
        let x1 = TruncPoly::var(n, d, 1);
        let x2 = TruncPoly::var(n, d, 2);
        let product = x1.oplus(&x1).mul(&x1.oplus(&x2)).mul(&x2.oplus(&x2));
        assert_eq!(multipeak_K(&c(&[2, 1]), n, d), product);
    }

    #[test]
    fn multipeak_lead_coefficients() {
        let k = multipeak_K(&c(&[2, 1]), 3, 3);
        assert_eq!(k.coeff_of_parts(&[2, 1]), BetaPoly::constant(4));
        let kbar = multipeak_Kbar(&c(&[2, 1]), 3, 3);
        assert_eq!(kbar.coeff_of_parts(&[2, 1]), BetaPoly::one());
        // Minimum x-degree is the index size.
        assert_eq!(k.min_x_degree(), Some(3));
        assert_eq!(kbar.min_x_degree(), Some(3));
    }

    #[test]
    #[should_panic(expected = "peak composition")]
    fn multipeak_rejects_non_peak_indices() {
        multipeak_K(&c(&[1, 2]), 3, 3);
    }

    #[test]
    fn beta_zero_multipeak_matches_doubled_monomial_sum() {
        // At β = 0 the multipeak element is Σ 2^(parts) M over compositions
        // whose descents cover the index's descents at distance ≤ 1.
        for alpha in [c(&[2, 1]), c(&[3]), c(&[2, 2])] {
            let n = alpha.size() as usize;
            let lhs = multipeak_K(&alpha, n, alpha.size()).specialize_beta(&BigInt::zero());
            let mut rhs = TruncPoly::zero(n, alpha.size());
            let ia = alpha.descent_set();
            for ap in comps::compositions_of(alpha.size()) {
                let ip = ap.descent_set();
                if ia.iter().all(|i| ip.contains(i) || ip.contains(&(i - 1))) {
                    let weight = BetaPoly::constant(1 << ap.len());
                    rhs = rhs.add(&monomial_M(&ap, n, alpha.size()).scale(&weight));
                }
            }
            assert_eq!(lhs, rhs, "mismatch at {alpha}");
        }
    }

    #[test]
    fn expansion_round_trips() {
        let n = 4;
        let d = 4;
        let f = multifundamental_L(&c(&[2, 1]), n, d)
            .add(&multifundamental_L(&c(&[1, 1]), n, d).scale(&BetaPoly::beta()));
        let e = expand_in_basis(&f, BasisTag::L).unwrap();
        assert_eq!(e.coeff(&[2, 1]), DyadicBeta::from_beta(BetaPoly::one()));
        assert_eq!(e.coeff(&[1, 1]), DyadicBeta::from_beta(BetaPoly::beta()));
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.synthesize(n, d).unwrap(), f);

        let k = multipeak_K(&c(&[2, 1]), n, d);
        let e = expand_in_basis(&k, BasisTag::K).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(&[2, 1]), DyadicBeta::from_beta(BetaPoly::one()));

        let m = expand_in_M(&k).unwrap();
        assert_eq!(
            m.coeff(&[2, 1]),
            DyadicBeta::from_beta(BetaPoly::constant(4))
        );
    }

    #[test]
    fn expansion_errors() {
        // x1 alone is not quasisymmetric on two variables.
        let x1 = TruncPoly::var(2, 2, 1);
        assert!(matches!(
            expand_in_basis(&x1, BasisTag::L),
            Err(QsymError::NotQuasisymmetric(_))
        ));
        // M_1 is quasisymmetric but its multipeak expansion needs 1/2.
        let m1 = monomial_M(&c(&[1]), 2, 2);
        match expand_in_basis(&m1, BasisTag::K) {
            Err(QsymError::NotInSpan { monomial, .. }) => assert_eq!(monomial, "x1"),
            other => panic!("expected NotInSpan, got {other:?}"),
        }
        // Degree bound above the variable count is refused.
        let f = monomial_M(&c(&[1]), 2, 3);
        assert!(matches!(
            expand_in_basis(&f, BasisTag::L),
            Err(QsymError::InsufficientVariables(2, 3))
        ));
    }

    #[test]
    fn multipeak_to_small_multipeak_example() {
        let e = k_to_kbar(&c(&[1]), 4);
        assert_eq!(e.to_text(), "2*Kbar(1) + b*Kbar(2)");
        let e = kbar_to_k(&c(&[1]), 3);
        assert_eq!(e.to_text(), "(1/2)*K(1) - (b/4)*K(2) + (b^2/8)*K(3)");
    }

    #[test]
    fn multipeak_conversion_round_trip() {
        let max_size = 5;
        for alpha in [c(&[2]), c(&[2, 1]), c(&[3, 2])] {
            let fwd = k_to_kbar(&alpha, max_size);
            let mut acc: BTreeMap<Vec<u32>, DyadicBeta> = BTreeMap::new();
            for (idx, c1) in fwd.terms() {
                let back = kbar_to_k(&Composition::new(idx.clone()), max_size);
                for (target, c2) in back.terms() {
                    let entry = acc.entry(target.clone()).or_insert_with(DyadicBeta::zero);
                    *entry = entry.add(&c1.mul(c2));
                }
            }
            acc.retain(|_, v| !v.is_zero());
            assert_eq!(acc.len(), 1, "roundtrip of {alpha} not diagonal: {acc:?}");
            assert_eq!(acc[alpha.parts()], DyadicBeta::from_beta(BetaPoly::one()));
        }
    }

    #[test]
    fn theta_collapses_by_lambda() {
        let mut e = BasisExpansion::new(BasisTag::L, 5);
        e.add_term(vec![1, 2, 2], DyadicBeta::from_beta(BetaPoly::one()));
        e.add_term(vec![3, 2], DyadicBeta::from_beta(BetaPoly::beta()));
        let t = theta(&e).unwrap();
        assert_eq!(t.basis(), BasisTag::K);
        assert_eq!(
            t.coeff(&[3, 2]),
            DyadicBeta::from_beta(BetaPoly::one().add(&BetaPoly::beta()))
        );
    }

    #[test]
    fn coproduct_of_monomials_deconcatenates() {
        let mut e = BasisExpansion::new(BasisTag::M, 3);
        e.add_term(vec![2, 1], DyadicBeta::from_beta(BetaPoly::one()));
        let cp = coproduct_M(&e).unwrap();
        assert_eq!(
            cp,
            vec![
                (vec![], vec![2, 1], DyadicBeta::from_beta(BetaPoly::one())),
                (vec![2], vec![1], DyadicBeta::from_beta(BetaPoly::one())),
                (vec![2, 1], vec![], DyadicBeta::from_beta(BetaPoly::one())),
            ]
        );
    }

    #[test]
    fn omega_squares_to_identity_through_expansion() {
        let n = 4;
        let d = 4;
        let e = one_term(&[2, 1], BasisTag::L, d);
        let once = omega(&e, n, d).unwrap();
        let back = expand_in_basis(&once, BasisTag::L).unwrap();
        let twice = omega(&back, n, d).unwrap();
        assert_eq!(twice, multifundamental_L(&c(&[2, 1]), n, d));
    }

    #[test]
    fn omega_factors_as_complement_after_reversal() {
        let n = 4;
        let d = 4;
        for alpha in [c(&[2, 1]), c(&[1, 1, 2]), c(&[4])] {
            let direct = omega(&one_term(alpha.parts(), BasisTag::L, d), n, d).unwrap();
            let via = psi(&one_term(alpha.reverse().parts(), BasisTag::L, d), n, d).unwrap();
            assert_eq!(direct, via, "mismatch at {alpha}");
        }
    }

    #[test]
    fn rho_reverses_without_substitution() {
        let n = 3;
        let d = 3;
        let r = rho(&one_term(&[2, 1], BasisTag::L, d), n, d).unwrap();
        assert_eq!(r, multifundamental_L(&c(&[1, 2]), n, d));
        let r = rho(&one_term(&[2, 2], BasisTag::K, 4), 4, 4).unwrap();
        assert_eq!(r, multipeak_K(&c(&[3, 1]), 4, 4));
    }

    #[test]
    fn antipode_of_a_single_set_is_the_formal_inverse() {
        let n = 3;
        let d = 3;
        let l1 = multifundamental_L(&c(&[1]), n, d);
        let s = antipode(&one_term(&[1], BasisTag::L, d), n, d).unwrap();
        assert_eq!(s, l1.ominus());
    }

    #[test]
    fn expansion_text_and_json_round_trip() {
        let mut e = BasisExpansion::new(BasisTag::GP, 8);
        e.add_term(vec![3, 2], DyadicBeta::from_beta(BetaPoly::constant(4)));
        e.add_term(
            vec![4, 2],
            DyadicBeta::from_beta(BetaPoly::beta().mul_int(&2.into())),
        );
        e.add_term(
            vec![4, 3],
            DyadicBeta::from_beta(BetaPoly::beta_pow(2).neg()),
        );
        assert_eq!(e.to_text(), "4*GP(3,2) + 2b*GP(4,2) - b^2*GP(4,3)");
        let back = BasisExpansion::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        assert!(BasisExpansion::from_json(&serde_json::json!({
            "basis": "K", "valid_deg": 3,
            "terms": [{"index": [1, 2], "coeff": {"num": [1], "den_pow2": 0}}],
        }))
        .is_err());
    }
}

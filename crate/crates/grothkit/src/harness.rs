//! The identity/conjecture registry and verification runner.
//!
//! Every entry checks one mechanically decidable statement relating the
//! enumerators, bases, diagram families, and operators, exhaustively over
//! all instances within explicit bounds. Identities are expected to PASS;
//! conjecture entries can only ever report CONSISTENT ("no counterexample
//! within bounds"), never "verified", and are excluded from failing exit
//! statuses.
//!
//! Checks are pure and deterministic: instance sets are enumerated in a
//! fixed order, failures are reported with the smallest counterexample
//! (serialized inputs plus both sides), and the JSON report carries no
//! timing so repeated runs at equal bounds are byte-identical.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::comps::{compositions_of, peak_compositions_of, Composition};
use crate::operators;
use crate::posets::{all_labeled_posets, word_descent_set, LabeledPoset};
use crate::ppart;
use crate::qsym::{self, BasisExpansion, BasisTag};
use crate::ring::{BetaPoly, TruncPoly};
use crate::shapes;

/// Whether a check verifies a proved statement or scans a conjecture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Identity,
    Conjecture,
}

/// Outcome of one check run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// An identity held on every instance.
    Pass,
    /// A conjecture survived every instance within the bounds.
    Consistent,
    /// A counterexample; the string serializes the inputs and both sides.
    Fail(String),
}

/// Instance bounds for a check; each check reads the fields it cares about.
/// A zero `n_vars`/`max_deg` means the check derives degrees per instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest poset vertex count.
    pub poset_size: usize,
    /// Largest composition size.
    pub comp_size: u32,
    /// Largest partition size (or staircase order / rectangle side).
    pub shape_size: u32,
    /// Largest allowed part in operator scans.
    pub part_bound: u32,
    /// Number of polynomial variables.
    pub n_vars: usize,
    /// Total-degree truncation.
    pub max_deg: u32,
    /// Truncation for formal operator variables.
    pub formal_deg: u32,
}

/// Optional per-field overrides applied on top of a check's defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundsOverride {
    pub poset_size: Option<usize>,
    /// Overrides both `comp_size` and `shape_size`.
    pub size: Option<u32>,
    pub part_bound: Option<u32>,
    pub n_vars: Option<usize>,
    pub max_deg: Option<u32>,
    pub formal_deg: Option<u32>,
}

impl Bounds {
    pub fn with_overrides(mut self, o: &BoundsOverride) -> Bounds {
        if let Some(v) = o.poset_size {
            self.poset_size = v;
        }
        if let Some(v) = o.size {
            self.comp_size = v;
            self.shape_size = v;
        }
        if let Some(v) = o.part_bound {
            self.part_bound = v;
        }
        if let Some(v) = o.n_vars {
            self.n_vars = v;
        }
        if let Some(v) = o.max_deg {
            self.max_deg = v;
        }
        if let Some(v) = o.formal_deg {
            self.formal_deg = v;
        }
        self
    }
}

/// Registry metadata for one check.
#[derive(Clone, Copy, Debug)]
pub struct CheckSpec {
    pub id: &'static str,
    pub kind: CheckKind,
    pub summary: &'static str,
    pub defaults: Bounds,
}

/// Result of running one check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: &'static str,
    pub kind: CheckKind,
    pub status: CheckStatus,
    /// Number of instances examined.
    pub cases: u64,
    pub millis: u128,
}

impl CheckReport {
    /// Whether this report should count toward a failing exit status.
    /// Conjecture refutations are flagged in the output but excluded here.
    pub fn exit_ok(&self) -> bool {
        self.kind == CheckKind::Conjecture || !matches!(self.status, CheckStatus::Fail(_))
    }

    pub fn line(&self) -> String {
        let t = self.millis as f64 / 1000.0;
        match (&self.kind, &self.status) {
            (CheckKind::Identity, CheckStatus::Pass | CheckStatus::Consistent) => {
                format!("{}: PASS ({} cases, {:.2}s)", self.id, self.cases, t)
            }
            (CheckKind::Conjecture, CheckStatus::Pass | CheckStatus::Consistent) => format!(
                "{}: CONSISTENT up to bounds ({} cases, {:.2}s) [conjecture — not a proof]",
                self.id, self.cases, t
            ),
            (CheckKind::Identity, CheckStatus::Fail(msg)) => {
                format!(
                    "{}: FAIL ({} cases, {:.2}s) — {}",
                    self.id, self.cases, t, msg
                )
            }
            (CheckKind::Conjecture, CheckStatus::Fail(msg)) => format!(
                "{}: FAIL ({} cases, {:.2}s) [conjecture refuted at these bounds] — {}",
                self.id, self.cases, t, msg
            ),
        }
    }

    /// Deterministic encoding: no timing field.
    pub fn to_json(&self) -> serde_json::Value {
        let (status, counterexample) = match &self.status {
            CheckStatus::Pass => ("pass", serde_json::Value::Null),
            CheckStatus::Consistent => ("consistent", serde_json::Value::Null),
            CheckStatus::Fail(msg) => ("fail", serde_json::Value::String(msg.clone())),
        };
        serde_json::json!({
            "id": self.id,
            "kind": match self.kind { CheckKind::Identity => "identity", CheckKind::Conjecture => "conjecture" },
            "status": status,
            "cases": self.cases,
            "counterexample": counterexample,
        })
    }
}

type CheckFn = fn(&Bounds) -> (Result<(), String>, u64);

struct CheckDef {
    spec: CheckSpec,
    run: CheckFn,
}

const fn bounds(
    poset_size: usize,
    comp_size: u32,
    shape_size: u32,
    part_bound: u32,
    n_vars: usize,
    max_deg: u32,
    formal_deg: u32,
) -> Bounds {
    Bounds {
        poset_size,
        comp_size,
        shape_size,
        part_bound,
        n_vars,
        max_deg,
        formal_deg,
    }
}

fn registry() -> &'static [CheckDef] {
    const REGISTRY: &[CheckDef] = &[
        CheckDef {
            spec: CheckSpec {
                id: "fundamental-lemma-plain",
                kind: CheckKind::Identity,
                summary: "plain enumerator equals its weighted multiextension-word sum",
                defaults: bounds(4, 0, 0, 0, 5, 5, 0),
            },
            run: check_fundamental_plain,
        },
        CheckDef {
            spec: CheckSpec {
                id: "fundamental-lemma-enriched",
                kind: CheckKind::Identity,
                summary: "enriched enumerator equals its weighted multiextension-word sum",
                defaults: bounds(4, 0, 0, 0, 5, 5, 0),
            },
            run: check_fundamental_enriched,
        },
        CheckDef {
            spec: CheckSpec {
                id: "product-rules",
                kind: CheckKind::Identity,
                summary: "enumerators multiply across disjoint unions",
                defaults: bounds(3, 0, 0, 0, 4, 4, 0),
            },
            run: check_product_rules,
        },
        CheckDef {
            spec: CheckSpec {
                id: "coproduct-rules",
                kind: CheckKind::Identity,
                summary: "alphabet splitting matches the β-weighted lower-set coproduct",
                defaults: bounds(3, 4, 0, 0, 6, 4, 0),
            },
            run: check_coproduct_rules,
        },
        CheckDef {
            spec: CheckSpec {
                id: "doubling",
                kind: CheckKind::Identity,
                summary: "valley-doubling recurrence for enriched enumerators",
                defaults: bounds(4, 0, 0, 0, 4, 4, 0),
            },
            run: check_doubling,
        },
        CheckDef {
            spec: CheckSpec {
                id: "op-thm-valley-product",
                kind: CheckKind::Identity,
                summary: "valley-restricted enumerator as a (2 + β·doubling) product",
                defaults: bounds(4, 0, 0, 0, 4, 4, 0),
            },
            run: check_op_thm,
        },
        CheckDef {
            spec: CheckSpec {
                id: "equiexp-roundtrip",
                kind: CheckKind::Identity,
                summary: "multipeak bases convert into each other and round-trip",
                defaults: bounds(0, 4, 0, 0, 6, 6, 0),
            },
            run: check_equiexp,
        },
        CheckDef {
            spec: CheckSpec {
                id: "theta-superfication",
                kind: CheckKind::Identity,
                summary: "the L→K lift turns plain enumerators into enriched ones",
                defaults: bounds(4, 0, 0, 0, 4, 4, 0),
            },
            run: check_theta,
        },
        CheckDef {
            spec: CheckSpec {
                id: "cancellation-K",
                kind: CheckKind::Identity,
                summary: "multipeak functions cancel a (t, ⊖t) variable pair",
                defaults: bounds(0, 5, 0, 0, 5, 5, 0),
            },
            run: check_cancellation_k,
        },
        CheckDef {
            spec: CheckSpec {
                id: "cancellation-GQ",
                kind: CheckKind::Identity,
                summary: "shifted families cancel a (t, ⊖t) variable pair",
                defaults: bounds(0, 0, 5, 0, 5, 5, 0),
            },
            run: check_cancellation_gq,
        },
        CheckDef {
            spec: CheckSpec {
                id: "skew-symmetry",
                kind: CheckKind::Identity,
                summary: "skew shifted families are symmetric polynomials",
                defaults: bounds(0, 0, 6, 0, 6, 6, 0),
            },
            run: check_skew_symmetry,
        },
        CheckDef {
            spec: CheckSpec {
                id: "yang-baxter",
                kind: CheckKind::Identity,
                summary: "exchange identities of the box-adding operators",
                defaults: bounds(0, 0, 8, 6, 0, 0, 3),
            },
            run: check_yang_baxter,
        },
        CheckDef {
            spec: CheckSpec {
                id: "gp-slashslash-crosscheck",
                kind: CheckKind::Identity,
                summary: "operator route equals strip-weighted diagram route for skew families",
                defaults: bounds(0, 0, 5, 0, 5, 5, 0),
            },
            run: check_slashslash,
        },
        CheckDef {
            spec: CheckSpec {
                id: "in-ex",
                kind: CheckKind::Identity,
                summary: "inclusion–exclusion recovers diagram skew from row-overlap skew",
                defaults: bounds(0, 0, 5, 0, 5, 5, 0),
            },
            run: check_inclusion_exclusion,
        },
        CheckDef {
            spec: CheckSpec {
                id: "omega-rho-psi",
                kind: CheckKind::Identity,
                summary: "ω, ψ, ρ are involutions with ω = ψ∘ρ",
                defaults: bounds(0, 5, 0, 0, 5, 5, 0),
            },
            run: check_omega_rho_psi,
        },
        CheckDef {
            spec: CheckSpec {
                id: "antipode-axiom",
                kind: CheckKind::Identity,
                summary: "antipode axiom at β = 0 under deconcatenation",
                defaults: bounds(0, 5, 0, 0, 5, 5, 0),
            },
            run: check_antipode,
        },
        CheckDef {
            spec: CheckSpec {
                id: "omega-G-transpose",
                kind: CheckKind::Identity,
                summary: "ω sends ordinary families to transposed shapes after x/(1−βx)",
                defaults: bounds(0, 0, 5, 0, 5, 5, 0),
            },
            run: check_omega_g,
        },
        CheckDef {
            spec: CheckSpec {
                id: "delta-staircase",
                kind: CheckKind::Identity,
                summary: "shifted and ordinary families agree on staircases",
                defaults: bounds(0, 0, 3, 0, 6, 6, 0),
            },
            run: check_delta_staircase,
        },
        CheckDef {
            spec: CheckSpec {
                id: "gq-to-gp-conjecture",
                kind: CheckKind::Conjecture,
                summary: "doubled family expands over single-box bumps of the shape",
                defaults: bounds(0, 0, 5, 0, 0, 0, 0),
            },
            run: check_gq_to_gp,
        },
        CheckDef {
            spec: CheckSpec {
                id: "gq-gp-positivity-conjecture",
                kind: CheckKind::Conjecture,
                summary: "skew expansions have nonnegative β-integer coefficients",
                defaults: bounds(0, 0, 4, 0, 6, 6, 0),
            },
            run: check_positivity,
        },
        CheckDef {
            spec: CheckSpec {
                id: "dewitt-conjecture",
                kind: CheckKind::Conjecture,
                summary: "staircase-padded rectangles match doubled staircase shapes",
                defaults: bounds(0, 0, 2, 0, 0, 0, 0),
            },
            run: check_dewitt,
        },
    ];
    REGISTRY
}

/// All registered check ids, in report order.
pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.spec.id).collect()
}

/// Metadata for one check.
pub fn check_spec(id: &str) -> Option<CheckSpec> {
    registry().iter().find(|c| c.spec.id == id).map(|c| c.spec)
}

/// Runs one check with its defaults plus overrides; `None` on unknown id.
pub fn run_check(id: &str, overrides: &BoundsOverride) -> Option<CheckReport> {
    let def = registry().iter().find(|c| c.spec.id == id)?;
    let b = def.spec.defaults.with_overrides(overrides);
    let start = Instant::now();
    let (res, cases) = (def.run)(&b);
    let status = match (res, def.spec.kind) {
        (Ok(()), CheckKind::Identity) => CheckStatus::Pass,
        (Ok(()), CheckKind::Conjecture) => CheckStatus::Consistent,
        (Err(msg), _) => CheckStatus::Fail(msg),
    };
    Some(CheckReport {
        id: def.spec.id,
        kind: def.spec.kind,
        status,
        cases,
        millis: start.elapsed().as_millis(),
    })
}

/// Runs every check in registry order.
pub fn run_all(overrides: &BoundsOverride) -> Vec<CheckReport> {
    check_ids()
        .iter()
        .map(|id| run_check(id, overrides).expect("registered"))
        .collect()
}

// ---------------------------------------------------------------------------
// Shared helpers

/// Runs `f` over all items in parallel; `f` returns how many instances it
/// checked or a counterexample. The lexicographically smallest failure wins,
/// keeping reports deterministic under parallelism.
fn tally<T, F>(items: &[T], f: F) -> (Result<(), String>, u64)
where
    T: Sync,
    F: Fn(&T) -> Result<u64, String> + Sync,
{
    let results: Vec<Result<u64, String>> = items.par_iter().map(&f).collect();
    let mut cases = 0;
    let mut fails = Vec::new();
    for r in results {
        match r {
            Ok(c) => cases += c,
            Err(e) => fails.push(e),
        }
    }
    fails.sort();
    (fails.into_iter().next().map_or(Ok(()), Err), cases)
}

fn eq_polys(lhs: &TruncPoly, rhs: &TruncPoly, context: &str) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "{context}: lhs = {} ; rhs = {}",
            lhs.to_text(),
            rhs.to_text()
        ))
    }
}

fn posets_up_to(m: usize) -> Vec<LabeledPoset> {
    (0..=m).flat_map(all_labeled_posets).collect()
}

fn subsets(items: &[usize]) -> Vec<BTreeSet<usize>> {
    (0..(1u32 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn strict_pairs(max_size: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for s in 0..=max_size {
        for lam in shapes::strict_partitions_of(s) {
            for mu in shapes::strict_subpartitions(&lam) {
                out.push((lam.clone(), mu));
            }
        }
    }
    out
}

/// All ordinary partitions contained in `outer`.
fn subpartitions(outer: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(outer: &[u32], i: usize, prev: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if i == outer.len() {
            return;
        }
        for p in 1..=outer[i].min(prev) {
            prefix.push(p);
            go(outer, i + 1, p, prefix, out);
            prefix.pop();
        }
    }
    go(outer, 0, u32::MAX, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

// ---------------------------------------------------------------------------
// Checks

fn multiextension_sum(p: &LabeledPoset, n_vars: usize, max_deg: u32, enriched: bool) -> TruncPoly {
    let mut rhs = TruncPoly::zero(n_vars, max_deg);
    p.stream_linear_multiextensions(max_deg as usize, &mut |w| {
        let des = word_descent_set(w, p.labels());
        let chain = LabeledPoset::chain_realization(w.len(), &des);
        let term = if enriched {
            ppart::omega_free_enumerator(&chain, n_vars, max_deg)
        } else {
            ppart::gamma_enumerator(&chain, n_vars, max_deg)
        };
        rhs = rhs.add(&term.scale(&BetaPoly::beta_pow(w.len() - p.m())));
    });
    rhs
}

fn check_fundamental_plain(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    tally(&ps, |p| {
        let lhs = ppart::gamma_enumerator(p, b.n_vars, b.max_deg);
        let rhs = multiextension_sum(p, b.n_vars, b.max_deg, false);
        eq_polys(&lhs, &rhs, &format!("poset {}", p.to_json()))?;
        Ok(1)
    })
}

fn check_fundamental_enriched(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    tally(&ps, |p| {
        let lhs = ppart::omega_free_enumerator(p, b.n_vars, b.max_deg);
        let rhs = multiextension_sum(p, b.n_vars, b.max_deg, true);
        eq_polys(&lhs, &rhs, &format!("poset {}", p.to_json()))?;
        Ok(1)
    })
}

fn check_product_rules(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    let pairs: Vec<(usize, usize)> = (0..ps.len())
        .flat_map(|i| (0..ps.len()).map(move |j| (i, j)))
        .collect();
    tally(&pairs, |&(i, j)| {
        let (p, q) = (&ps[i], &ps[j]);
        let u = p.disjoint_union(q);
        let ctx = format!("posets {} ⊔ {}", p.to_json(), q.to_json());
        let (n, d) = (b.n_vars, b.max_deg);
        eq_polys(
            &ppart::gamma_enumerator(p, n, d).mul(&ppart::gamma_enumerator(q, n, d)),
            &ppart::gamma_enumerator(&u, n, d),
            &format!("plain product, {ctx}"),
        )?;
        eq_polys(
            &ppart::omega_free_enumerator(p, n, d).mul(&ppart::omega_free_enumerator(q, n, d)),
            &ppart::omega_free_enumerator(&u, n, d),
            &format!("enriched product, {ctx}"),
        )?;
        eq_polys(
            &ppart::omega_bar_enumerator(p, n, d).mul(&ppart::omega_bar_enumerator(q, n, d)),
            &ppart::omega_bar_enumerator(&u, n, d),
            &format!("valley-restricted product, {ctx}"),
        )?;
        // Mixed restriction: restrict the left factor's valleys only. The
        // union keeps the left component's vertex indices.
        let vp: BTreeSet<usize> = p.valleys().into_iter().collect();
        let lhs = ppart::omega_enumerator(p, &vp, n, d)
            .expect("valleys are valleys")
            .mul(&ppart::omega_free_enumerator(q, n, d));
        let rhs = ppart::omega_enumerator(&u, &vp, n, d).expect("valleys survive the union");
        eq_polys(&lhs, &rhs, &format!("mixed-restriction product, {ctx}"))?;
        Ok(4)
    })
}

fn check_coproduct_rules(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    let a = b.n_vars / 2;
    let bb = b.n_vars - a;
    let (n, d) = (b.n_vars, b.max_deg);
    let (poset_res, poset_cases) = tally(&ps, |p| {
        let mut checked = 0u64;
        // Plain, free enriched, and fully valley-restricted variants.
        let all_valleys: BTreeSet<usize> = p.valleys().into_iter().collect();
        let variants: Vec<(String, Option<BTreeSet<usize>>)> = vec![
            ("plain".to_string(), None),
            ("enriched free".to_string(), Some(BTreeSet::new())),
            ("enriched restricted".to_string(), Some(all_valleys)),
        ];
        for (name, v_set) in &variants {
            let lhs = match v_set {
                None => ppart::gamma_enumerator(p, n, d),
                Some(v) => ppart::omega_enumerator(p, v, n, d).expect("valid valley set"),
            };
            let mut rhs = TruncPoly::zero(n, d);
            for (s_verts, t_verts) in p.coproduct_splits() {
                let overlap = s_verts.len() + t_verts.len() - p.m();
                let sp = p.induced(&s_verts);
                let tp = p.induced(&t_verts);
                let (left, right) = match v_set {
                    None => (
                        ppart::gamma_enumerator(&sp, a, d),
                        ppart::gamma_enumerator(&tp, bb, d),
                    ),
                    Some(v) => {
                        let vs: BTreeSet<usize> = s_verts
                            .iter()
                            .enumerate()
                            .filter(|(_, orig)| v.contains(orig))
                            .map(|(k, _)| k)
                            .collect();
                        let vt: BTreeSet<usize> = t_verts
                            .iter()
                            .enumerate()
                            .filter(|(_, orig)| v.contains(orig))
                            .map(|(k, _)| k)
                            .collect();
                        (
                            ppart::omega_enumerator(&sp, &vs, a, d)
                                .expect("lower sets keep valleys"),
                            ppart::omega_enumerator(&tp, &vt, bb, d)
                                .expect("upper parts keep valleys"),
                        )
                    }
                };
                let term = left.shift_vars(0, n).mul(&right.shift_vars(a, n));
                rhs = rhs.add(&term.scale(&BetaPoly::beta_pow(overlap)));
            }
            eq_polys(
                &lhs,
                &rhs,
                &format!("{name} coproduct, poset {}", p.to_json()),
            )?;
            checked += 1;
        }
        Ok(checked)
    });
    if poset_res.is_err() {
        return (poset_res, poset_cases);
    }
    // Monomial-basis coproduct: splitting the alphabet deconcatenates.
    let comps: Vec<Composition> = (0..=b.comp_size).flat_map(compositions_of).collect();
    let (comp_res, comp_cases) = tally(&comps, |alpha| {
        let lhs = qsym::monomial_M(alpha, n, d);
        let mut rhs = TruncPoly::zero(n, d);
        for (pre, suf, c) in qsym::coproduct_M(&BasisExpansion::single(
            BasisTag::M,
            alpha.parts().to_vec(),
            d,
        ))
        .expect("monomial expansion")
        {
            let left = qsym::monomial_M(&Composition::new(pre), a, d).shift_vars(0, n);
            let right = qsym::monomial_M(&Composition::new(suf), bb, d).shift_vars(a, n);
            let ci = c
                .as_integral()
                .expect("deconcatenation is integral")
                .clone();
            rhs = rhs.add(&left.mul(&right).scale(&ci));
        }
        eq_polys(
            &lhs,
            &rhs,
            &format!("monomial coproduct at {}", alpha.to_text()),
        )?;
        Ok(1)
    });
    (comp_res, poset_cases + comp_cases)
}

fn check_doubling(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&ps, |p| {
        let valleys = p.valleys();
        let mut checked = 0u64;
        for &v in &valleys {
            let others: Vec<usize> = valleys.iter().copied().filter(|&u| u != v).collect();
            for mut v_set in subsets(&others) {
                v_set.insert(v);
                let without: BTreeSet<usize> = v_set.iter().copied().filter(|&u| u != v).collect();
                let lhs = ppart::omega_enumerator(p, &without, n, d).expect("valley subset");
                let doubled = p.double_vertex(v);
                let rhs = ppart::omega_enumerator(p, &v_set, n, d)
                    .expect("valley subset")
                    .scale(&BetaPoly::constant(2))
                    .add(
                        &ppart::omega_enumerator(&doubled, &v_set, n, d)
                            .expect("doubling keeps valleys")
                            .scale(&BetaPoly::beta()),
                    );
                eq_polys(
                    &lhs,
                    &rhs,
                    &format!("doubling vertex {v} of {}", p.to_json()),
                )?;
                checked += 1;
            }
        }
        Ok(checked)
    })
}

fn check_op_thm(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&ps, |p| {
        let valleys = p.valleys();
        let mut checked = 0u64;
        for v_set in subsets(&valleys) {
            let u_set: Vec<usize> = valleys
                .iter()
                .copied()
                .filter(|u| !v_set.contains(u))
                .collect();
            let lhs = ppart::omega_enumerator(p, &v_set, n, d).expect("valley subset");
            let mut rhs = TruncPoly::zero(n, d);
            for w_set in subsets(&u_set) {
                let mut q = p.clone();
                for &w in &w_set {
                    q = q.double_vertex(w);
                }
                let coeff = BetaPoly::beta_pow(w_set.len())
                    .mul_int(&int(1i64 << (u_set.len() - w_set.len())));
                rhs = rhs.add(&ppart::omega_bar_enumerator(&q, n, d).scale(&coeff));
            }
            eq_polys(
                &lhs,
                &rhs,
                &format!("valley product on {} with V={v_set:?}", p.to_json()),
            )?;
            checked += 1;
        }
        Ok(checked)
    })
}

fn check_equiexp(b: &Bounds) -> (Result<(), String>, u64) {
    let comps: Vec<Composition> = (0..=b.comp_size).flat_map(peak_compositions_of).collect();
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&comps, |alpha| {
        let ell = alpha.len();
        // Finite bump expansion of the multipeak function.
        let lhs = qsym::multipeak_K(alpha, n, d);
        let mut rhs = TruncPoly::zero(n, d);
        for mask in 0u32..(1 << ell) {
            let delta: Vec<u32> = (0..ell).map(|k| mask >> k & 1).collect();
            let ones = delta.iter().sum::<u32>() as usize;
            let bumped = alpha.componentwise_add(&delta);
            let coeff = BetaPoly::beta_pow(ones).mul_int(&int(1i64 << (ell - ones)));
            rhs = rhs.add(&qsym::multipeak_Kbar(&bumped, n, d).scale(&coeff));
        }
        eq_polys(
            &lhs,
            &rhs,
            &format!("bump expansion of {}", alpha.to_text()),
        )?;

        // Inverse series: coefficients are (-β)^|δ| / 2^(ℓ+|δ|), so 2^(ℓ+B)
        // clears every denominator once bumps are capped at |δ| ≤ B.
        if d >= alpha.size() {
            let budget = (d - alpha.size()) as usize;
            let lhs2 =
                qsym::multipeak_Kbar(alpha, n, d).scale(&BetaPoly::constant(1 << (budget + ell)));
            let mut rhs2 = TruncPoly::zero(n, d);
            let mut deltas: Vec<Vec<u32>> = Vec::new();
            fn gen(ell: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if cur.len() == ell {
                    out.push(cur.clone());
                    return;
                }
                for v in 0..=left {
                    cur.push(v as u32);
                    gen(ell, left - v, cur, out);
                    cur.pop();
                }
            }
            gen(ell, budget, &mut Vec::new(), &mut deltas);
            for delta in deltas {
                let ones = delta.iter().sum::<u32>() as usize;
                let bumped = alpha.componentwise_add(&delta);
                let mut coeff = BetaPoly::beta_pow(ones).mul_int(&int(1i64 << (budget - ones)));
                if ones % 2 == 1 {
                    coeff = coeff.neg();
                }
                rhs2 = rhs2.add(&qsym::multipeak_K(&bumped, n, d).scale(&coeff));
            }
            eq_polys(
                &lhs2,
                &rhs2,
                &format!("inverse series at {}", alpha.to_text()),
            )?;
        }

        // Round trip on coefficients.
        let m = b.comp_size;
        let down = qsym::k_to_kbar(alpha, m);
        let mut acc = BasisExpansion::new(BasisTag::K, m);
        for (idx, c) in down.terms() {
            let back = qsym::kbar_to_k(&Composition::new(idx.clone()), m);
            for (k_idx, c2) in back.terms() {
                acc.add_term(k_idx.clone(), c.mul(c2));
            }
        }
        let expected = BasisExpansion::single(BasisTag::K, alpha.parts().to_vec(), m);
        if acc != expected {
            return Err(format!(
                "round trip at {}: got {}",
                alpha.to_text(),
                acc.to_text()
            ));
        }
        Ok(3)
    })
}

fn check_theta(b: &Bounds) -> (Result<(), String>, u64) {
    let ps = posets_up_to(b.poset_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&ps, |p| {
        let plain = ppart::gamma_enumerator(p, n, d);
        let e = qsym::expand_in_basis(&plain, BasisTag::L)
            .map_err(|e| format!("expansion failed on {}: {e}", p.to_json()))?;
        let lifted = qsym::theta(&e).expect("L expansion");
        let lhs = lifted.synthesize(n, d).map_err(|e| e.to_string())?;
        let rhs = ppart::omega_free_enumerator(p, n, d);
        eq_polys(&lhs, &rhs, &format!("lift of poset {}", p.to_json()))?;
        Ok(1)
    })
}

fn cancellation_images(n: usize, d: u32) -> Vec<TruncPoly> {
    let x1 = TruncPoly::var(n, d, 1);
    let mut images = vec![x1.clone(), x1.ominus()];
    for i in 3..=n {
        images.push(TruncPoly::var(n, d, i));
    }
    images
}

fn check_cancellation_k(b: &Bounds) -> (Result<(), String>, u64) {
    let comps: Vec<Composition> = (0..=b.comp_size).flat_map(peak_compositions_of).collect();
    let (n, d) = (b.n_vars, b.max_deg);
    assert!(n >= 3, "cancellation needs at least three variables");
    let images = cancellation_images(n, d);
    tally(&comps, |alpha| {
        let lhs = qsym::multipeak_K(alpha, n, d).substitute(&images);
        let rhs = qsym::multipeak_K(alpha, n - 2, d).shift_vars(2, n);
        eq_polys(&lhs, &rhs, &format!("cancellation at {}", alpha.to_text()))?;
        Ok(1)
    })
}

fn check_cancellation_gq(b: &Bounds) -> (Result<(), String>, u64) {
    let lams: Vec<Vec<u32>> = (0..=b.shape_size)
        .flat_map(shapes::strict_partitions_of)
        .collect();
    let (n, d) = (b.n_vars, b.max_deg);
    assert!(n >= 3, "cancellation needs at least three variables");
    let images = cancellation_images(n, d);
    tally(&lams, |lam| {
        let gp = shapes::grothendieck_GP(lam, &[], n, d).expect("strict");
        let gp_small = shapes::grothendieck_GP(lam, &[], n - 2, d).expect("strict");
        eq_polys(
            &gp.substitute(&images),
            &gp_small.shift_vars(2, n),
            &format!("GP cancellation at {lam:?}"),
        )?;
        let gq = shapes::grothendieck_GQ(lam, &[], n, d).expect("strict");
        let gq_small = shapes::grothendieck_GQ(lam, &[], n - 2, d).expect("strict");
        eq_polys(
            &gq.substitute(&images),
            &gq_small.shift_vars(2, n),
            &format!("GQ cancellation at {lam:?}"),
        )?;
        Ok(2)
    })
}

fn check_skew_symmetry(b: &Bounds) -> (Result<(), String>, u64) {
    let pairs = strict_pairs(b.shape_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&pairs, |(lam, mu)| {
        let gp = shapes::grothendieck_GP(lam, mu, n, d).expect("strict pair");
        if !gp.is_symmetric() {
            return Err(format!(
                "GP of {lam:?}/{mu:?} is not symmetric: {}",
                gp.to_text()
            ));
        }
        let gq = shapes::grothendieck_GQ(lam, mu, n, d).expect("strict pair");
        if !gq.is_symmetric() {
            return Err(format!(
                "GQ of {lam:?}/{mu:?} is not symmetric: {}",
                gq.to_text()
            ));
        }
        Ok(2)
    })
}

fn check_yang_baxter(b: &Bounds) -> (Result<(), String>, u64) {
    let cases = (0..=b.shape_size)
        .flat_map(shapes::strict_partitions_of)
        .filter(|mu| mu.first().copied().unwrap_or(0) <= b.part_bound)
        .count() as u64;
    (
        operators::check_yang_baxter(b.shape_size, b.part_bound, b.formal_deg),
        cases,
    )
}

fn check_slashslash(b: &Bounds) -> (Result<(), String>, u64) {
    let pairs = strict_pairs(b.shape_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&pairs, |(lam, mu)| {
        let strips = operators::strip_sum(mu).expect("strict");
        let mut rhs_p = TruncPoly::zero(n, d);
        let mut rhs_q = TruncPoly::zero(n, d);
        for (nu, c) in &strips {
            rhs_p = rhs_p.add(
                &shapes::grothendieck_GP(lam, nu, n, d)
                    .expect("contained")
                    .scale(c),
            );
            rhs_q = rhs_q.add(
                &shapes::grothendieck_GQ(lam, nu, n, d)
                    .expect("contained")
                    .scale(c),
            );
        }
        let lhs_p = operators::gp_slashslash(lam, mu, n, d).expect("strict");
        eq_polys(
            &lhs_p,
            &rhs_p,
            &format!("GP row-overlap at {lam:?}//{mu:?}"),
        )?;
        let lhs_q = operators::gq_slashslash(lam, mu, n, d).expect("strict");
        eq_polys(
            &lhs_q,
            &rhs_q,
            &format!("GQ row-overlap at {lam:?}//{mu:?}"),
        )?;
        Ok(2)
    })
}

fn check_inclusion_exclusion(b: &Bounds) -> (Result<(), String>, u64) {
    let pairs = strict_pairs(b.shape_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&pairs, |(lam, mu)| {
        let mu_size: u32 = mu.iter().sum();
        let mut rhs_p = TruncPoly::zero(n, d);
        let mut rhs_q = TruncPoly::zero(n, d);
        for nu in shapes::strict_subpartitions(mu) {
            let nu_size: u32 = nu.iter().sum();
            let k = (mu_size - nu_size) as usize;
            let mut sign = BetaPoly::beta_pow(k);
            if k % 2 == 1 {
                sign = sign.neg();
            }
            rhs_p = rhs_p.add(
                &operators::gp_slashslash(lam, &nu, n, d)
                    .expect("strict")
                    .scale(&sign),
            );
            rhs_q = rhs_q.add(
                &operators::gq_slashslash(lam, &nu, n, d)
                    .expect("strict")
                    .scale(&sign),
            );
        }
        let lhs_p = shapes::grothendieck_GP(lam, mu, n, d).expect("contained");
        eq_polys(
            &lhs_p,
            &rhs_p,
            &format!("GP inclusion–exclusion at {lam:?}/{mu:?}"),
        )?;
        let lhs_q = shapes::grothendieck_GQ(lam, mu, n, d).expect("contained");
        eq_polys(
            &lhs_q,
            &rhs_q,
            &format!("GQ inclusion–exclusion at {lam:?}/{mu:?}"),
        )?;
        Ok(2)
    })
}

fn check_omega_rho_psi(b: &Bounds) -> (Result<(), String>, u64) {
    let comps: Vec<Composition> = (0..=b.comp_size).flat_map(compositions_of).collect();
    let (n, d) = (b.n_vars, b.max_deg);
    fn ctx(e: qsym::QsymError, what: &str, alpha: &Composition) -> String {
        format!("{what} at {}: {e}", alpha.to_text())
    }
    type Invol = fn(&BasisExpansion, usize, u32) -> Result<TruncPoly, qsym::QsymError>;
    let (res_l, cases_l) = tally(&comps, |alpha| {
        let e0 = BasisExpansion::single(BasisTag::L, alpha.parts().to_vec(), d);
        let base = qsym::multifundamental_L(alpha, n, d);
        let invols: [(&str, Invol); 3] = [("ω", qsym::omega), ("ψ", qsym::psi), ("ρ", qsym::rho)];
        for (name, f) in invols {
            let once = f(&e0, n, d).map_err(|e| ctx(e, name, alpha))?;
            let mid = qsym::expand_in_basis(&once, BasisTag::L)
                .map_err(|e| ctx(e, "re-expansion", alpha))?;
            let twice = f(&mid, n, d).map_err(|e| ctx(e, name, alpha))?;
            eq_polys(&twice, &base, &format!("{name}² at {}", alpha.to_text()))?;
        }
        let lhs = qsym::omega(&e0, n, d).map_err(|e| ctx(e, "ω", alpha))?;
        let rho_poly = qsym::rho(&e0, n, d).map_err(|e| ctx(e, "ρ", alpha))?;
        let rho_exp = qsym::expand_in_basis(&rho_poly, BasisTag::L)
            .map_err(|e| ctx(e, "re-expansion", alpha))?;
        let rhs = qsym::psi(&rho_exp, n, d).map_err(|e| ctx(e, "ψ", alpha))?;
        eq_polys(&lhs, &rhs, &format!("ω = ψ∘ρ at {}", alpha.to_text()))?;
        Ok(4)
    });
    if res_l.is_err() {
        return (res_l, cases_l);
    }
    // On the multipeak basis, the direct formulas must agree with the route
    // through the (full) multifundamental basis. Only the substitution-free
    // map ρ keeps the multipeak span, so only it round-trips there.
    let peaks: Vec<Composition> = (0..=b.comp_size).flat_map(peak_compositions_of).collect();
    let (res_k, cases_k) = tally(&peaks, |alpha| {
        let e_k = BasisExpansion::single(BasisTag::K, alpha.parts().to_vec(), d);
        let base = qsym::multipeak_K(alpha, n, d);
        let via_l =
            qsym::expand_in_basis(&base, BasisTag::L).map_err(|e| ctx(e, "L-expansion", alpha))?;
        let invols: [(&str, Invol); 3] = [("ω", qsym::omega), ("ψ", qsym::psi), ("ρ", qsym::rho)];
        for (name, f) in invols {
            let through_l = f(&via_l, n, d).map_err(|e| ctx(e, name, alpha))?;
            let direct = f(&e_k, n, d).map_err(|e| ctx(e, name, alpha))?;
            eq_polys(
                &through_l,
                &direct,
                &format!("multipeak {name} routes at {}", alpha.to_text()),
            )?;
        }
        let once = qsym::rho(&e_k, n, d).map_err(|e| ctx(e, "ρ", alpha))?;
        let mid =
            qsym::expand_in_basis(&once, BasisTag::K).map_err(|e| ctx(e, "re-expansion", alpha))?;
        let twice = qsym::rho(&mid, n, d).map_err(|e| ctx(e, "ρ", alpha))?;
        eq_polys(
            &twice,
            &base,
            &format!("multipeak ρ² at {}", alpha.to_text()),
        )?;
        Ok(4)
    });
    (res_k, cases_l + cases_k)
}

fn check_antipode(b: &Bounds) -> (Result<(), String>, u64) {
    let (n, d) = (b.n_vars, b.max_deg);
    let zero_beta = int(0);
    // Antipode of a monomial element at β = 0, via Möbius inversion into the
    // multifundamental basis.
    let s0_of_m = |alpha: &Composition| -> TruncPoly {
        let mut acc = TruncPoly::zero(n, d);
        for gamma in compositions_of(alpha.size()) {
            if !alpha.refines(&gamma) {
                continue;
            }
            let e = BasisExpansion::single(BasisTag::L, gamma.parts().to_vec(), d);
            let s = qsym::antipode(&e, n, d).expect("L expansion");
            let mut term = s.specialize_beta(&zero_beta);
            if (gamma.len() - alpha.len()) % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        acc
    };
    let comps: Vec<Composition> = (0..=b.comp_size).flat_map(compositions_of).collect();
    tally(&comps, |alpha| {
        let mut acc = TruncPoly::zero(n, d);
        for (pre, suf) in alpha.deconcatenations() {
            let left = s0_of_m(&pre);
            let right = qsym::monomial_M(&suf, n, d).specialize_beta(&zero_beta);
            acc = acc.add(&left.mul(&right));
        }
        let expected = if alpha.is_empty() {
            TruncPoly::one(n, d)
        } else {
            TruncPoly::zero(n, d)
        };
        eq_polys(
            &acc,
            &expected,
            &format!("antipode axiom at {}", alpha.to_text()),
        )?;
        Ok(1)
    })
}

fn check_omega_g(b: &Bounds) -> (Result<(), String>, u64) {
    let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for s in 0..=b.shape_size {
        for lam in shapes::partitions_of(s) {
            for mu in subpartitions(&lam) {
                pairs.push((lam.clone(), mu));
            }
        }
    }
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&pairs, |(lam, mu)| {
        let f = shapes::grothendieck_G(lam, mu, n, d).expect("contained");
        let e = qsym::expand_in_basis(&f, BasisTag::L)
            .map_err(|e| format!("expansion failed at {lam:?}/{mu:?}: {e}"))?;
        let lhs = qsym::omega(&e, n, d).expect("L expansion");
        let rhs = shapes::grothendieck_G(&shapes::conjugate(lam), &shapes::conjugate(mu), n, d)
            .expect("conjugates stay contained")
            .substitute_mobius(&BetaPoly::one(), &BetaPoly::beta());
        eq_polys(&lhs, &rhs, &format!("ω on shape {lam:?}/{mu:?}"))?;
        Ok(1)
    })
}

fn check_delta_staircase(b: &Bounds) -> (Result<(), String>, u64) {
    let orders: Vec<u32> = (0..=b.shape_size).collect();
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&orders, |&k| {
        let delta: Vec<u32> = (1..=k).rev().collect();
        let lhs = shapes::grothendieck_GP(&delta, &[], n, d).expect("staircase is strict");
        let rhs = shapes::grothendieck_G(&delta, &[], n, d).expect("staircase");
        eq_polys(&lhs, &rhs, &format!("staircase of order {k}"))?;
        Ok(1)
    })
}

fn check_gq_to_gp(b: &Bounds) -> (Result<(), String>, u64) {
    let mus: Vec<Vec<u32>> = (0..=b.shape_size)
        .flat_map(shapes::strict_partitions_of)
        .collect();
    tally(&mus, |mu| {
        let size: u32 = mu.iter().sum();
        let d = if b.max_deg > 0 { b.max_deg } else { size + 3 };
        let n = if b.n_vars > 0 { b.n_vars } else { d as usize };
        let ell = mu.len();
        let lhs = shapes::grothendieck_GQ(mu, &[], n, d).expect("strict");
        let mut rhs = TruncPoly::zero(n, d);
        for mask in 0u32..(1 << ell) {
            let lam: Vec<u32> = mu
                .iter()
                .enumerate()
                .map(|(i, &p)| p + (mask >> i & 1))
                .collect();
            let strict = lam.windows(2).all(|w| w[0] > w[1]);
            if !strict {
                continue;
            }
            let ones = mask.count_ones() as usize;
            let cols: BTreeSet<u32> = (0..ell)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i as u32 + 1) + mu[i])
                .collect();
            let mut coeff = BetaPoly::beta_pow(ones).mul_int(&int(1i64 << (ell - ones)));
            if (cols.len() + ones) % 2 == 1 {
                coeff = coeff.neg();
            }
            rhs = rhs.add(
                &shapes::grothendieck_GP(&lam, &[], n, d)
                    .expect("strict")
                    .scale(&coeff),
            );
        }
        eq_polys(&lhs, &rhs, &format!("single-box bump expansion at {mu:?}"))?;
        Ok(1)
    })
}

fn check_positivity(b: &Bounds) -> (Result<(), String>, u64) {
    let pairs = strict_pairs(b.shape_size);
    let (n, d) = (b.n_vars, b.max_deg);
    tally(&pairs, |(lam, mu)| {
        for (family, tag) in [("GP", BasisTag::GP), ("GQ", BasisTag::GQ)] {
            let f = match tag {
                BasisTag::GP => shapes::grothendieck_GP(lam, mu, n, d).expect("contained"),
                _ => shapes::grothendieck_GQ(lam, mu, n, d).expect("contained"),
            };
            let e = qsym::expand_in_basis(&f, tag)
                .map_err(|e| format!("{family} of {lam:?}/{mu:?} failed to expand: {e}"))?;
            for (idx, c) in e.terms() {
                let ok = c.as_integral().is_some_and(|p| p.is_nonnegative());
                if !ok {
                    return Err(format!(
                        "{family} of {lam:?}/{mu:?} has coefficient {} at {idx:?}",
                        c.to_text()
                    ));
                }
            }
        }
        Ok(2)
    })
}

fn check_dewitt(b: &Bounds) -> (Result<(), String>, u64) {
    let mut rects: Vec<(u32, u32)> = Vec::new();
    for m in 1..=b.shape_size {
        for k in 1..=b.shape_size {
            rects.push((m, k));
        }
    }
    tally(&rects, |&(m, k)| {
        let d = if b.max_deg > 0 { b.max_deg } else { m * k + 3 };
        let n = if b.n_vars > 0 { b.n_vars } else { d as usize };
        let rect = vec![m; k as usize];
        let mut nu = Vec::new();
        let mut top = m + k - 1;
        let stop = m.abs_diff(k) + 1;
        while top >= stop {
            nu.push(top);
            if top < stop + 2 {
                break;
            }
            top -= 2;
        }
        let lhs = shapes::grothendieck_GS(&rect, &[], n, d).expect("rectangle");
        let rhs = shapes::grothendieck_GQ(&nu, &[], n, d).expect("strict");
        eq_polys(&lhs, &rhs, &format!("rectangle {m}^{k} against {nu:?}"))?;
        Ok(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> BoundsOverride {
        BoundsOverride {
            poset_size: Some(2),
            size: Some(2),
            part_bound: Some(2),
            n_vars: Some(3),
            max_deg: Some(3),
            formal_deg: Some(2),
        }
    }

    #[test]
    fn registry_is_complete_and_unique() {
        let ids = check_ids();
        assert_eq!(ids.len(), 21);
        let set: BTreeSet<&str> = ids.iter().copied().collect();
        assert_eq!(set.len(), ids.len());
        assert!(check_spec("yang-baxter").is_some());
        assert!(check_spec("no-such-check").is_none());
        assert!(run_check("no-such-check", &BoundsOverride::default()).is_none());
    }

    #[test]
    fn small_identity_checks_pass() {
        for id in [
            "fundamental-lemma-plain",
            "fundamental-lemma-enriched",
            "doubling",
            "op-thm-valley-product",
            "equiexp-roundtrip",
            "theta-superfication",
        ] {
            let r = run_check(id, &tiny()).unwrap();
            assert_eq!(r.status, CheckStatus::Pass, "{id}: {}", r.line());
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn small_conjecture_checks_are_consistent() {
        let o = BoundsOverride {
            size: Some(2),
            ..Default::default()
        };
        for id in ["gq-to-gp-conjecture", "dewitt-conjecture"] {
            let r = run_check(id, &o).unwrap();
            assert_eq!(r.status, CheckStatus::Consistent, "{id}: {}", r.line());
            assert!(r.exit_ok());
            assert!(r.line().contains("not a proof"));
        }
    }

    #[test]
    fn json_reports_are_deterministic() {
        let o = tiny();
        let a = run_check("doubling", &o).unwrap().to_json();
        let b = run_check("doubling", &o).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.get("millis").is_none());
        assert_eq!(a["status"], "pass");
    }

    #[test]
    fn failing_reports_serialize_the_counterexample() {
        let report = CheckReport {
            id: "demo",
            kind: CheckKind::Identity,
            status: CheckStatus::Fail("lhs = 1 ; rhs = 2".into()),
            cases: 7,
            millis: 12,
        };
        assert!(!report.exit_ok());
        assert!(report.line().contains("FAIL"));
        assert_eq!(report.to_json()["counterexample"], "lhs = 1 ; rhs = 2");
    }
}

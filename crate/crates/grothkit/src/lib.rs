//! Exact computation with K-theoretic quasisymmetric and symmetric functions.
//!
//! Everything is computed over the scalar ring ℤ[β] with no floating point
//! and no modular shortcuts. Infinite power series are modeled by truncation:
//! a [`ring::TruncPoly`] fixes a variable count `n_vars` and a total-degree
//! bound `max_deg`, and every identity asserted by this crate is an exact
//! statement about the truncated objects. Callers should keep
//! `n_vars >= max_deg` so that truncated (quasi)symmetry is equivalent to
//! (quasi)symmetry of the underlying series through that degree.
//!
//! Module layout, bottom-up:
//!
//! - [`ring`]: sparse polynomials over ℤ[β], the formal group law ⊕/⊖,
//!   Möbius-type variable substitutions.
//! - [`comps`]: compositions, peak compositions, and index transforms.
//! - [`posets`]: labeled posets, canonical isomorphism keys, disjoint
//!   unions, antichain splits, linear multiextensions, vertex doubling,
//!   mirroring.
//! - [`ppart`]: set-valued and enriched set-valued partition enumeration
//!   and the weight enumerators Γ and Ω.
//! - [`qsym`]: the bases M, L, K, K̄; triangular basis expansion; Θ; the
//!   involutions ω/ψ/ρ and the antipode.
//! - [`shapes`]: partitions and (shifted) skew diagrams; the Grothendieck
//!   families G, GP, GQ, GS and their tableau expansions.
//! - [`operators`]: the diagonal box-adding operator calculus on strict
//!   partitions and its Yang–Baxter relations.
//! - [`harness`]: the registry of mechanical identity and conjecture
//!   checks used by the CLI and the acceptance tests.

pub mod comps;
pub mod harness;
pub mod operators;
pub mod posets;
pub mod ppart;
pub mod qsym;
pub mod ring;
pub mod shapes;

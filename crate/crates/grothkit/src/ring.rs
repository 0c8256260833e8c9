//! Sparse exact polynomial arithmetic over ℤ[β] with total-degree truncation.
//!
//! [`BetaPoly`] is the scalar ring ℤ[β]: a dense coefficient vector with no
//! trailing zeros. [`TruncPoly`] is a sparse multivariate polynomial in
//! `x1..xn` over ℤ[β] in which every monomial of total x-degree greater than
//! `max_deg` is discarded; it is the finite model used for all quasisymmetric
//! and symmetric power series in this crate.
//!
//! Invariants:
//! - `BetaPoly::coeffs` never ends in a zero; the zero polynomial is empty.
//! - `TruncPoly::terms` stores no zero coefficients and no monomial of total
//!   degree above `max_deg`; exponent vectors carry no trailing zeros.
//! - Binary operations panic when the operands disagree on
//!   `(n_vars, max_deg)`; values with equal parameters compare equal iff
//!   their term maps are equal.
//!
//! Term order for iteration and serialization is graded lexicographic:
//! ascending total degree, and within a degree the lexicographically greater
//! exponent vector first, so `x1^2` precedes `x1*x2` precedes `x2^2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in β with arbitrary-precision integer coefficients.
///
/// Index `k` of `coeffs` holds the coefficient of β^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BetaPoly {
    coeffs: Vec<BigInt>,
}

impl BetaPoly {
    pub fn zero() -> Self {
        BetaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BetaPoly::constant(1)
    }

    /// The monomial β.
    pub fn beta() -> Self {
        BetaPoly::beta_pow(1)
    }

    /// The monomial β^k.
    pub fn beta_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        BetaPoly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        BetaPoly::from_coeffs(vec![BigInt::from(c)])
    }

    pub fn constant_big(c: BigInt) -> Self {
        BetaPoly::from_coeffs(vec![c])
    }

    /// `coeffs[k]` is the coefficient of β^k; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BetaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BetaPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in β, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &BetaPoly) -> BetaPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        BetaPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &BetaPoly) -> BetaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BetaPoly {
        BetaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &BetaPoly) -> BetaPoly {
        if self.is_zero() || other.is_zero() {
            return BetaPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BetaPoly::from_coeffs(out)
    }

    pub fn mul_int(&self, c: &BigInt) -> BetaPoly {
        BetaPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by β^k.
    pub fn mul_beta_pow(&self, k: usize) -> BetaPoly {
        if self.is_zero() {
            return BetaPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BetaPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> BetaPoly {
        let mut base = self.clone();
        let mut acc = BetaPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The substitution β ↦ -β (negates every odd-degree coefficient).
    pub fn negate_beta(&self) -> BetaPoly {
        BetaPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Evaluate at an integer value of β.
    pub fn eval(&self, c: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc * c + coeff;
        }
        acc
    }

    /// Exact division by an integer; `None` when any coefficient is not divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<BetaPoly> {
        assert!(!d.is_zero(), "division by zero");
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if (c % d).is_zero() {
                out.push(c / d);
            } else {
                return None;
            }
        }
        Some(BetaPoly::from_coeffs(out))
    }

    /// True when every coefficient is ≥ 0.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Compact rendering with `b` for β, e.g. `2+3b`, `-b^2`, `1-b+b^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mag_str = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => "b".into(),
                _ => format!("b^{k}"),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&mag_str);
            out.push_str(&var);
        }
        out
    }

    /// LaTeX rendering with `\beta`.
    pub fn to_latex(&self) -> String {
        // `b` only ever appears as the variable in the text form, so one
        // pass is safe (two would mangle the `b` inside `\beta` itself).
        self.to_text().replace('b', r"\beta")
    }

    /// True when the text form needs parentheses before a `*x..` factor.
    fn is_multi_term(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(bigint_to_json).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let arr = v.as_array().ok_or("beta coefficients must be an array")?;
        let coeffs = arr.iter().map(bigint_from_json).collect::<Result<_, _>>()?;
        Ok(BetaPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(n) => serde_json::Value::from(n),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt, String> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(n) = v.as_u64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s.parse().map_err(|_| format!("bad integer literal {s:?}"));
    }
    Err(format!("expected integer or decimal string, got {v}"))
}

/// An element of ℤ[1/2][β]: a [`BetaPoly`] numerator over a power-of-two
/// denominator, kept in lowest terms. Only the K̄-to-K change of basis ever
/// produces a nontrivial denominator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DyadicBeta {
    num: BetaPoly,
    den_pow2: u32,
}

impl DyadicBeta {
    pub fn new(num: BetaPoly, den_pow2: u32) -> Self {
        let mut v = DyadicBeta { num, den_pow2 };
        v.normalize();
        v
    }

    pub fn from_beta(num: BetaPoly) -> Self {
        DyadicBeta { num, den_pow2: 0 }
    }

    pub fn zero() -> Self {
        DyadicBeta::from_beta(BetaPoly::zero())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den_pow2 = 0;
            return;
        }
        let two = BigInt::from(2);
        while self.den_pow2 > 0 {
            match self.num.div_exact_int(&two) {
                Some(half) => {
                    self.num = half;
                    self.den_pow2 -= 1;
                }
                None => break,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &BetaPoly {
        &self.num
    }

    pub fn den_pow2(&self) -> u32 {
        self.den_pow2
    }

    /// The underlying `BetaPoly` when the denominator is trivial.
    pub fn as_integral(&self) -> Option<&BetaPoly> {
        (self.den_pow2 == 0).then_some(&self.num)
    }

    pub fn add(&self, other: &DyadicBeta) -> DyadicBeta {
        let k = self.den_pow2.max(other.den_pow2);
        let two = BigInt::from(2);
        let a = self.num.mul_int(&two.pow(k - self.den_pow2));
        let b = other.num.mul_int(&two.pow(k - other.den_pow2));
        DyadicBeta::new(a.add(&b), k)
    }

    pub fn sub(&self, other: &DyadicBeta) -> DyadicBeta {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DyadicBeta {
        DyadicBeta {
            num: self.num.neg(),
            den_pow2: self.den_pow2,
        }
    }

    pub fn mul(&self, other: &DyadicBeta) -> DyadicBeta {
        DyadicBeta::new(self.num.mul(&other.num), self.den_pow2 + other.den_pow2)
    }

    pub fn mul_beta(&self, other: &BetaPoly) -> DyadicBeta {
        DyadicBeta::new(self.num.mul(other), self.den_pow2)
    }

    pub fn to_text(&self) -> String {
        if self.den_pow2 == 0 {
            self.num.to_text()
        } else {
            format!("({})/{}", self.num.to_text(), 2u128.pow(self.den_pow2))
        }
    }

    pub fn to_latex(&self) -> String {
        if self.den_pow2 == 0 {
            self.num.to_latex()
        } else {
            format!(
                r"\tfrac{{{}}}{{{}}}",
                self.num.to_latex(),
                2u128.pow(self.den_pow2)
            )
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den_pow2": self.den_pow2 })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let num = BetaPoly::from_json(v.get("num").ok_or("missing num")?)?;
        let den = v
            .get("den_pow2")
            .and_then(|d| d.as_u64())
            .ok_or("missing den_pow2")?;
        Ok(DyadicBeta::new(num, den as u32))
    }
}

impl fmt::Display for DyadicBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An exponent vector with trailing zeros stripped. `mono.0[i]` is the
/// exponent of `x_{i+1}`.
///
/// The `Ord` instance is graded lexicographic as documented at module level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Mono(exps)
    }

    pub fn one() -> Self {
        Mono(Vec::new())
    }

    /// The single variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are 1-based");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Mono(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponent of `x_i` (1-based).
    pub fn exp(&self, i: usize) -> u32 {
        assert!(i >= 1, "variables are 1-based");
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Largest variable index with a nonzero exponent (0 for the empty monomial).
    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        Mono::new(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    /// The nonzero exponents read left to right: the composition this
    /// monomial realizes.
    pub fn pattern(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|&e| e > 0).collect()
    }

    fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        parts.join("*")
    }

    fn to_latex(&self) -> String {
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                out.push_str(&format!("x_{{{}}}", i + 1));
            } else if e > 1 {
                out.push_str(&format!("x_{{{}}}^{{{}}}", i + 1, e));
            }
        }
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Within a degree the lexicographically greater vector sorts first.
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                match b.cmp(&a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in `x1..x{n_vars}` over ℤ[β], truncated at total
/// x-degree `max_deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    n_vars: usize,
    max_deg: u32,
    terms: BTreeMap<Mono, BetaPoly>,
}

impl TruncPoly {
    pub fn zero(n_vars: usize, max_deg: u32) -> Self {
        assert!(n_vars >= 1, "n_vars must be positive");
        TruncPoly {
            n_vars,
            max_deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, max_deg: u32, c: BetaPoly) -> Self {
        let mut p = TruncPoly::zero(n_vars, max_deg);
        p.add_term(Mono::one(), c);
        p
    }

    pub fn one(n_vars: usize, max_deg: u32) -> Self {
        TruncPoly::constant(n_vars, max_deg, BetaPoly::one())
    }

    /// The variable `x_i` (1-based).
    pub fn var(n_vars: usize, max_deg: u32, i: usize) -> Self {
        let mut p = TruncPoly::zero(n_vars, max_deg);
        p.add_term(Mono::var(i), BetaPoly::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in graded lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &BetaPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> BetaPoly {
        self.terms.get(mono).cloned().unwrap_or_else(BetaPoly::zero)
    }

    /// Coefficient of `x1^{p[0]} x2^{p[1]} ...`.
    pub fn coeff_of_parts(&self, parts: &[u32]) -> BetaPoly {
        self.coeff(&Mono::new(parts.to_vec()))
    }

    /// Smallest total x-degree present, or `None` when zero.
    pub fn min_x_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Mono::degree)
    }

    /// Add `c · mono`, silently discarding it when the degree exceeds
    /// `max_deg`. Panics when the monomial mentions a variable above `n_vars`.
    pub fn add_term(&mut self, mono: Mono, c: BetaPoly) {
        assert!(
            mono.max_var() <= self.n_vars,
            "monomial uses x{} but the polynomial has {} variables",
            mono.max_var(),
            self.n_vars
        );
        if c.is_zero() || mono.degree() > self.max_deg {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&c);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    fn assert_same_params(&self, other: &TruncPoly) {
        assert_eq!(
            (self.n_vars, self.max_deg),
            (other.n_vars, other.max_deg),
            "mismatched truncation parameters"
        );
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        self.assert_same_params(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly {
            n_vars: self.n_vars,
            max_deg: self.max_deg,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BetaPoly) -> TruncPoly {
        if c.is_zero() {
            return TruncPoly::zero(self.n_vars, self.max_deg);
        }
        TruncPoly {
            n_vars: self.n_vars,
            max_deg: self.max_deg,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        self.assert_same_params(other);
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() > self.max_deg {
                    continue;
                }
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TruncPoly {
        let mut acc = TruncPoly::one(self.n_vars, self.max_deg);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The formal group law `p ⊕ q = p + q + β·p·q`.
    pub fn oplus(&self, other: &TruncPoly) -> TruncPoly {
        self.add(other)
            .add(&self.mul(other).scale(&BetaPoly::beta()))
    }

    /// The ⊕-inverse `⊖p = -p/(1+βp) = Σ_{j≥1} (-1)^j β^{j-1} p^j`.
    ///
    /// Panics when `p` has a nonzero constant term (the series does not
    /// truncate to a polynomial in that case).
    pub fn ominus(&self) -> TruncPoly {
        assert!(
            self.coeff(&Mono::one()).is_zero(),
            "ominus requires a zero constant term"
        );
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        let mut power = self.clone();
        let mut j = 1usize;
        while !power.is_zero() && j as u32 <= self.max_deg + 1 {
            let sign = if j % 2 == 1 { -1 } else { 1 };
            let coeff = BetaPoly::beta_pow(j - 1).mul_int(&BigInt::from(sign));
            out = out.add(&power.scale(&coeff));
            power = power.mul(self);
            j += 1;
        }
        out
    }

    /// `p ⊖ q = p ⊕ (⊖q)`.
    pub fn ominus_binary(&self, other: &TruncPoly) -> TruncPoly {
        self.oplus(&other.ominus())
    }

    /// Substitute `x_i ↦ images[i-1]` for every variable. All images must
    /// share truncation parameters, which become the parameters of the result.
    pub fn substitute(&self, images: &[TruncPoly]) -> TruncPoly {
        assert_eq!(images.len(), self.n_vars, "one image per variable");
        let (n_out, d_out) = (images[0].n_vars, images[0].max_deg);
        for im in images {
            assert_eq!(
                (im.n_vars, im.max_deg),
                (n_out, d_out),
                "images must share truncation parameters"
            );
        }
        // Memoized powers of each image, extended on demand.
        let mut powers: Vec<Vec<TruncPoly>> = images
            .iter()
            .map(|im| vec![TruncPoly::one(n_out, d_out), im.clone()])
            .collect();
        let mut out = TruncPoly::zero(n_out, d_out);
        for (mono, coeff) in &self.terms {
            let mut acc = TruncPoly::constant(n_out, d_out, coeff.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                acc = acc.mul(&powers[i][e as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Substitute `x_i ↦ a·x_i/(1 - b·x_i) = Σ_{k≥1} a·b^{k-1}·x_i^k` for
    /// every variable, truncating at `max_deg`.
    pub fn substitute_mobius(&self, a: &BetaPoly, b: &BetaPoly) -> TruncPoly {
        let images: Vec<TruncPoly> = (1..=self.n_vars)
            .map(|i| {
                let mut im = TruncPoly::zero(self.n_vars, self.max_deg);
                for k in 1..=self.max_deg.max(1) {
                    let coeff = a.mul(&b.pow(k - 1));
                    im.add_term(Mono::new(mono_power(i, k)), coeff);
                }
                im
            })
            .collect();
        self.substitute(&images)
    }

    /// Evaluate β at an integer.
    pub fn specialize_beta(&self, c: &BigInt) -> TruncPoly {
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), BetaPoly::constant_big(coeff.eval(c)));
        }
        out
    }

    /// Substitute `β ↦ -β` in every coefficient.
    pub fn negate_beta(&self) -> TruncPoly {
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), coeff.negate_beta());
        }
        out
    }

    /// Exchange `x_i` and `x_{i+1}` (1-based; requires `1 ≤ i < n_vars`).
    pub fn swap_adjacent_vars(&self, i: usize) -> TruncPoly {
        assert!(1 <= i && i < self.n_vars, "swap index out of range");
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        for (m, coeff) in &self.terms {
            let mut exps = m.exps().to_vec();
            if exps.len() < i + 1 {
                exps.resize(i + 1, 0);
            }
            exps.swap(i - 1, i);
            out.add_term(Mono::new(exps), coeff.clone());
        }
        out
    }

    /// True when invariant under every adjacent variable swap.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n_vars).all(|i| self.swap_adjacent_vars(i) == *self)
    }

    /// True when, for every composition pattern `(a1..ak)`, all placements
    /// `x_{i1}^{a1}..x_{ik}^{ak}` with `i1 < .. < ik ≤ n_vars` carry the same
    /// coefficient. Meaningful as a statement about the underlying series
    /// when `n_vars ≥ max_deg`.
    pub fn is_quasisymmetric(&self) -> bool {
        let mut groups: BTreeMap<Vec<u32>, Vec<&BetaPoly>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.pattern()).or_default().push(c);
        }
        for (pattern, coeffs) in groups {
            if pattern.is_empty() {
                continue;
            }
            let first = coeffs[0];
            if !coeffs.iter().all(|c| *c == first) {
                return false;
            }
            // All placements of the pattern must be present (zero coefficients
            // are never stored, so a missing placement means a zero there).
            if coeffs.len() as u64 != binomial(self.n_vars as u64, pattern.len() as u64) {
                return false;
            }
        }
        true
    }

    /// Drop every term that mentions any of the listed variables (1-based).
    pub fn set_vars_zero(&self, vars: &[usize]) -> TruncPoly {
        let mut out = TruncPoly::zero(self.n_vars, self.max_deg);
        for (m, c) in &self.terms {
            if vars.iter().any(|&i| m.exp(i) > 0) {
                continue;
            }
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Rename `x_i ↦ x_{i+k}` into a polynomial on `n_vars` variables.
    pub fn shift_vars(&self, k: usize, n_vars: usize) -> TruncPoly {
        let mut out = TruncPoly::zero(n_vars, self.max_deg);
        for (m, c) in &self.terms {
            let mut exps = vec![0; k];
            exps.extend_from_slice(m.exps());
            out.add_term(Mono::new(exps), c.clone());
        }
        out
    }

    /// Compact text form, e.g. `x1^2+x1*x2+b*x1^2*x2` or `(2+3b)*x1^2*x2`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono = m.to_text();
            let term = if mono.is_empty() {
                // Constant term: parenthesize only if followed by more terms.
                if c.is_multi_term() && self.terms.len() > 1 {
                    format!("({})", c.to_text())
                } else {
                    c.to_text()
                }
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else if c.is_multi_term() {
                format!("({})*{mono}", c.to_text())
            } else {
                format!("{}*{mono}", c.to_text())
            };
            if out.is_empty() {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(&term);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono = m.to_latex();
            let term = if mono.is_empty() {
                c.to_latex()
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else if c.is_multi_term() {
                format!(r"({})\,{mono}", c.to_latex())
            } else {
                format!(r"{}\,{mono}", c.to_latex())
            };
            if out.is_empty() {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "exp": m.exps().to_vec(),
                    "beta": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.n_vars, "D": self.max_deg, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or("missing field n")? as usize;
        let d = v
            .get("D")
            .and_then(|x| x.as_u64())
            .ok_or("missing field D")? as u32;
        let terms = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or("missing field terms")?;
        let mut out = TruncPoly::zero(n, d);
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(|x| x.as_array())
                .ok_or("term missing exp")?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32).ok_or("bad exponent"))
                .collect::<Result<Vec<_>, _>>()?;
            let beta = BetaPoly::from_json(t.get("beta").ok_or("term missing beta")?)?;
            let mono = Mono::new(exp);
            if mono.max_var() > n {
                return Err(format!("exponent vector uses more than {n} variables"));
            }
            if mono.degree() > d {
                return Err(format!("term of degree {} exceeds D={d}", mono.degree()));
            }
            out.add_term(mono, beta);
        }
        Ok(out)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exponent vector for `x_i^k` (1-based `i`).
fn mono_power(i: usize, k: u32) -> Vec<u32> {
    let mut exps = vec![0; i];
    exps[i - 1] = k;
    exps
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

//! Diagrams of (skew, possibly shifted) partition shapes and the symmetric
//! Grothendieck families built from them.
//!
//! A skew shape `outer/inner` is a pair of weakly decreasing positive
//! part-lists with `inner ⊆ outer`. Shifted shapes additionally require both
//! to be strict, and row `i` occupies columns `i+inner_i .. i+outer_i-1 + 1`
//! (i.e. cells `(i, i+j-1)` for `inner_i < j ≤ outer_i`).
//!
//! Cells are ordered componentwise. The canonical labeling reads rows bottom
//! to top, left to right, so labels increase along rows and decrease down
//! columns. On this labeled poset:
//! - the plain enumerator of an ordinary diagram is the `G` family,
//! - the free enriched enumerator of a shifted diagram is `GQ`,
//! - restricting the diagonal cells (always valleys) to unprimed letters
//!   gives `GP`,
//! - `GS` of a strict shape is `GP` of the shape padded by a staircase,
//!   which has no diagonal cells.

// Function names carry the conventional upper-case family letters.
#![allow(non_snake_case)]

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::comps::Composition;
use crate::posets::{word_descent_set, LabeledPoset};
use crate::ppart;
use crate::qsym::{BasisExpansion, BasisTag};
use crate::ring::{BetaPoly, DyadicBeta, TruncPoly};

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotPartition(Vec<u32>),
    #[error("shifted shapes need strictly decreasing parts: {0:?}")]
    NotStrict(Vec<u32>),
    #[error("inner shape {inner:?} is not contained in {outer:?}")]
    NotContained { outer: Vec<u32>, inner: Vec<u32> },
    #[error("cannot parse shape {0:?}")]
    Parse(String),
}

fn is_partition(parts: &[u32]) -> bool {
    parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1])
}

fn is_strict(parts: &[u32]) -> bool {
    parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1])
}

fn check_shape(outer: &[u32], inner: &[u32], shifted: bool) -> Result<(), ShapeError> {
    if !is_partition(outer) {
        return Err(ShapeError::NotPartition(outer.to_vec()));
    }
    if !is_partition(inner) {
        return Err(ShapeError::NotPartition(inner.to_vec()));
    }
    if shifted {
        if !is_strict(outer) {
            return Err(ShapeError::NotStrict(outer.to_vec()));
        }
        if !is_strict(inner) {
            return Err(ShapeError::NotStrict(inner.to_vec()));
        }
    }
    let contained = inner.len() <= outer.len() && inner.iter().zip(outer).all(|(&m, &l)| m <= l);
    if !contained {
        return Err(ShapeError::NotContained {
            outer: outer.to_vec(),
            inner: inner.to_vec(),
        });
    }
    Ok(())
}

/// Parses `"5,4,2/2,1"` into `(outer, inner)`; a missing `/inner` part means
/// a straight shape, and an empty string is the empty shape.
pub fn parse_shape(s: &str) -> Result<(Vec<u32>, Vec<u32>), ShapeError> {
    let (outer_s, inner_s) = match s.split_once('/') {
        Some((o, i)) => (o, i),
        None => (s, ""),
    };
    let parse_parts = |t: &str| -> Result<Vec<u32>, ShapeError> {
        let t = t.trim();
        if t.is_empty() {
            return Ok(Vec::new());
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| ShapeError::Parse(s.to_string()))
            })
            .collect()
    };
    Ok((parse_parts(outer_s)?, parse_parts(inner_s)?))
}

/// The cells of the (shifted) skew diagram in reading order (row ascending,
/// column ascending), 1-based coordinates.
pub fn skew_cells(
    outer: &[u32],
    inner: &[u32],
    shifted: bool,
) -> Result<Vec<(u32, u32)>, ShapeError> {
    check_shape(outer, inner, shifted)?;
    let mut cells = Vec::new();
    for (i, &l) in outer.iter().enumerate() {
        let m = inner.get(i).copied().unwrap_or(0);
        let row = (i + 1) as u32;
        for j in (m + 1)..=l {
            let col = if shifted { row + j - 1 } else { j };
            cells.push((row, col));
        }
    }
    Ok(cells)
}

/// The cell poset under componentwise order with the canonical bottom-up
/// reading labels. Returns the poset together with the cell carried by each
/// vertex.
pub fn diagram_poset(
    outer: &[u32],
    inner: &[u32],
    shifted: bool,
) -> Result<(LabeledPoset, Vec<(u32, u32)>), ShapeError> {
    let cells = skew_cells(outer, inner, shifted)?;
    let mut reading: Vec<usize> = (0..cells.len()).collect();
    // Bottom row first, left to right within each row.
    reading.sort_by_key(|&v| (std::cmp::Reverse(cells[v].0), cells[v].1));
    let mut labels = vec![0i64; cells.len()];
    for (rank, &v) in reading.iter().enumerate() {
        labels[v] = rank as i64 + 1;
    }
    let mut rels = Vec::new();
    for (a, &(ra, ca)) in cells.iter().enumerate() {
        for (b, &(rb, cb)) in cells.iter().enumerate() {
            if a != b && ra <= rb && ca <= cb {
                rels.push((a, b));
            }
        }
    }
    let poset = LabeledPoset::new(cells.len(), &rels, labels).expect("diagram poset is valid");
    Ok((poset, cells))
}

/// The ordinary-shape family: plain enumerator of the skew diagram.
pub fn grothendieck_G(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, ShapeError> {
    let (poset, _) = diagram_poset(outer, inner, false)?;
    Ok(ppart::gamma_enumerator(&poset, n_vars, max_deg))
}

/// The shifted family with free enriched entries.
pub fn grothendieck_GQ(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, ShapeError> {
    let (poset, _) = diagram_poset(outer, inner, true)?;
    Ok(ppart::omega_free_enumerator(&poset, n_vars, max_deg))
}

/// The shifted family with unprimed diagonals: the diagonal cells are
/// restricted, and they are always valleys of the canonical labeling.
pub fn grothendieck_GP(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, ShapeError> {
    let (poset, cells) = diagram_poset(outer, inner, true)?;
    let diagonal: BTreeSet<usize> = (0..cells.len())
        .filter(|&v| cells[v].0 == cells[v].1)
        .collect();
    let valleys: BTreeSet<usize> = poset.valleys().into_iter().collect();
    assert!(
        diagonal.is_subset(&valleys),
        "diagonal cells must be valleys of the canonical labeling"
    );
    Ok(ppart::omega_enumerator(&poset, &diagonal, n_vars, max_deg)
        .expect("diagonal restriction is valid"))
}

/// The staircase-padded family: `GP` of `(outer+δ)/(inner+δ)` where
/// `δ = (k, …, 1)` for `k` rows of `outer`.
pub fn grothendieck_GS(
    outer: &[u32],
    inner: &[u32],
    n_vars: usize,
    max_deg: u32,
) -> Result<TruncPoly, ShapeError> {
    // Padding by the staircase makes any weakly decreasing shape strict, so
    // arbitrary partition pairs are accepted here.
    check_shape(outer, inner, false)?;
    let k = outer.len() as u32;
    let pad_outer: Vec<u32> = outer
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - i as u32))
        .collect();
    let pad_inner: Vec<u32> = (0..k)
        .map(|i| inner.get(i as usize).copied().unwrap_or(0) + (k - i))
        .collect();
    grothendieck_GP(&pad_outer, &pad_inner, n_vars, max_deg)
}

/// A tableau assigning a nonempty set of entries to every cell; the entry
/// sets are the positions of each cell in a linear multiextension word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetTableau {
    pub cells: BTreeMap<(u32, u32), Vec<u32>>,
}

impl SetTableau {
    pub fn entries(&self) -> u32 {
        self.cells.values().map(|v| v.len() as u32).sum()
    }

    pub fn to_text(&self) -> String {
        self.cells
            .iter()
            .map(|(&(r, c), entries)| {
                format!(
                    "({r},{c})={{{}}}",
                    entries
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// All standard set-valued tableaux of the shape with at most `max_entries`
/// total entries: entries `1..=N` each used once, rows and columns weakly
/// increase setwise, rows strictly between consecutive cells in the column
/// direction — equivalently, the linear multiextensions of the cell poset.
pub fn standard_set_tableaux(
    outer: &[u32],
    inner: &[u32],
    shifted: bool,
    max_entries: usize,
) -> Result<Vec<SetTableau>, ShapeError> {
    let (poset, cells) = diagram_poset(outer, inner, shifted)?;
    let words = poset.linear_multiextensions(max_entries);
    Ok(words
        .into_iter()
        .map(|w| {
            let mut t: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
            for (pos, &v) in w.iter().enumerate() {
                t.entry(cells[v]).or_default().push(pos as u32 + 1);
            }
            SetTableau { cells: t }
        })
        .collect())
}

/// The multifundamental expansion of an ordinary-shape family by counting
/// descent compositions of multiextension words.
pub fn expand_G_in_L(
    outer: &[u32],
    inner: &[u32],
    max_deg: u32,
) -> Result<BasisExpansion, ShapeError> {
    let (poset, _) = diagram_poset(outer, inner, false)?;
    let m = poset.m();
    let mut out = BasisExpansion::new(BasisTag::L, max_deg);
    poset.stream_linear_multiextensions(max_deg as usize, &mut |w| {
        let des = word_descent_set(w, poset.labels());
        let alpha = Composition::from_subset(w.len() as u32, &des);
        out.add_term(
            alpha.parts().to_vec(),
            DyadicBeta::from_beta(BetaPoly::beta_pow(w.len() - m)),
        );
    });
    Ok(out)
}

/// The multipeak expansion of a shifted-shape family by counting peak
/// compositions of multiextension words.
pub fn expand_GQ_in_K(
    outer: &[u32],
    inner: &[u32],
    max_deg: u32,
) -> Result<BasisExpansion, ShapeError> {
    let (poset, _) = diagram_poset(outer, inner, true)?;
    let m = poset.m();
    let mut out = BasisExpansion::new(BasisTag::K, max_deg);
    poset.stream_linear_multiextensions(max_deg as usize, &mut |w| {
        let des = word_descent_set(w, poset.labels());
        let peaks: BTreeSet<u32> = des
            .iter()
            .copied()
            .filter(|&i| i > 1 && !des.contains(&(i - 1)))
            .collect();
        let alpha = Composition::from_subset(w.len() as u32, &peaks);
        out.add_term(
            alpha.parts().to_vec(),
            DyadicBeta::from_beta(BetaPoly::beta_pow(w.len() - m)),
        );
    });
    Ok(out)
}

/// The conjugate (transposed) partition.
pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let rows = parts.len() as u32;
    (1..=parts.first().copied().unwrap_or(0))
        .map(|j| (0..rows).filter(|&i| parts[i as usize] >= j).count() as u32)
        .collect()
}

/// All partitions of `size`, lexicographically greater first.
pub fn partitions_of(size: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            prefix.push(p);
            go(rem - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, &mut Vec::new(), &mut out);
    out
}

/// All strict partitions of `size`, lexicographically greater first.
pub fn strict_partitions_of(size: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            prefix.push(p);
            go(rem - p, p.saturating_sub(1), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, &mut Vec::new(), &mut out);
    out
}

/// Every strict partition contained in `outer` (componentwise, any length),
/// including the empty one and `outer` itself.
pub fn strict_subpartitions(outer: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(outer: &[u32], i: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if i == outer.len() {
            return;
        }
        for p in 1..=outer[i] {
            if prefix.last().is_none_or(|&prev| p < prev) {
                prefix.push(p);
                go(outer, i + 1, prefix, out);
                prefix.pop();
            }
        }
    }
    go(outer, 0, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Mono;

    #[test]
    fn parsing_shapes() {
        assert_eq!(
            parse_shape("5,4,2/2,1").unwrap(),
            (vec![5, 4, 2], vec![2, 1])
        );
        assert_eq!(parse_shape("3,2").unwrap(), (vec![3, 2], vec![]));
        assert_eq!(parse_shape("").unwrap(), (vec![], vec![]));
        assert!(matches!(parse_shape("a,b"), Err(ShapeError::Parse(_))));
        assert!(matches!(
            skew_cells(&[2, 3], &[], false),
            Err(ShapeError::NotPartition(_))
        ));
        assert!(matches!(
            skew_cells(&[2, 2], &[], true),
            Err(ShapeError::NotStrict(_))
        ));
        assert!(matches!(
            skew_cells(&[2], &[1, 1], false),
            Err(ShapeError::NotContained { .. })
        ));
    }

    #[test]
    fn shifted_cells_slide_right() {
        assert_eq!(
            skew_cells(&[3, 2], &[], true).unwrap(),
            vec![(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]
        );
        assert_eq!(
            skew_cells(&[2, 1], &[1], true).unwrap(),
            vec![(1, 2), (2, 2)]
        );
    }

    #[test]
    fn diagram_labels_increase_rightward_and_decrease_downward() {
        let (poset, cells) = diagram_poset(&[2, 1], &[], true).unwrap();
        assert_eq!(cells, vec![(1, 1), (1, 2), (2, 2)]);
        // Bottom-up reading labels: (2,2) first, then row 1.
        assert_eq!(poset.labels(), &[2, 3, 1]);
        let mut covers = poset.covers();
        covers.sort_unstable();
        assert_eq!(covers, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn single_box_families() {
        assert_eq!(
            grothendieck_G(&[1], &[], 2, 2).unwrap().to_text(),
            "x1+x2+b*x1*x2"
        );
        assert_eq!(
            grothendieck_GQ(&[1], &[], 1, 2).unwrap().to_text(),
            "2*x1+b*x1^2"
        );
        assert_eq!(grothendieck_GP(&[1], &[], 1, 2).unwrap().to_text(), "x1");
        assert_eq!(
            grothendieck_GS(&[1], &[], 1, 2).unwrap().to_text(),
            "2*x1+b*x1^2"
        );
    }

    #[test]
    fn staircase_padding_for_gs() {
        // GS of (1) is GP of (2)/(1) — one off-diagonal box.
        let direct = grothendieck_GP(&[2], &[1], 3, 3).unwrap();
        assert_eq!(grothendieck_GS(&[1], &[], 3, 3).unwrap(), direct);
        // GS of (2,1)/(1) is GP of (4,2)/(3,1).
        let lhs = grothendieck_GS(&[2, 1], &[1], 3, 4).unwrap();
        let rhs = grothendieck_GP(&[4, 2], &[3, 1], 3, 4).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn families_are_symmetric() {
        for (outer, inner, shifted) in [
            (vec![2, 1], vec![], true),
            (vec![3, 1], vec![1], true),
            (vec![2, 2], vec![1], false),
        ] {
            let f = if shifted {
                grothendieck_GQ(&outer, &inner, 4, 4).unwrap()
            } else {
                grothendieck_G(&outer, &inner, 4, 4).unwrap()
            };
            assert!(
                f.is_symmetric(),
                "not symmetric: {}/{:?}",
                f.to_text(),
                (outer, inner)
            );
        }
    }

    #[test]
    fn tableaux_of_small_shapes() {
        let t1 = standard_set_tableaux(&[1], &[], false, 2).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1[0].to_text(), "(1,1)={1}");
        let t2 = standard_set_tableaux(&[2], &[], false, 3).unwrap();
        assert_eq!(t2.len(), 1);
        assert_eq!(t2[0].entries(), 2);
        // Two standard tableaux of (2,1), plus set-valued ones at 4 entries.
        let t21 = standard_set_tableaux(&[2, 1], &[], false, 3).unwrap();
        assert_eq!(t21.len(), 2);
    }

    #[test]
    fn tableau_expansion_of_single_box() {
        let e = expand_G_in_L(&[1], &[], 2).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(&[1]), DyadicBeta::from_beta(BetaPoly::one()));
        let e = expand_G_in_L(&[2], &[], 2).unwrap();
        assert_eq!(e.coeff(&[2]), DyadicBeta::from_beta(BetaPoly::one()));
        assert_eq!(e.coeff(&[1, 1]), DyadicBeta::zero());
    }

    #[test]
    fn tableau_expansion_matches_triangular_expansion() {
        // Ordinary route: count descent words vs. eliminate monomials.
        let n = 4;
        let d = 4;
        let f = grothendieck_G(&[2, 1], &[], n, d).unwrap();
        let via_words = expand_G_in_L(&[2, 1], &[], d).unwrap();
        let via_solve = crate::qsym::expand_in_basis(&f, BasisTag::L).unwrap();
        assert_eq!(via_words, via_solve);
        // Shifted route.
        let f = grothendieck_GQ(&[2, 1], &[], n, d).unwrap();
        let via_words = expand_GQ_in_K(&[2, 1], &[], d).unwrap();
        let via_solve = crate::qsym::expand_in_basis(&f, BasisTag::K).unwrap();
        assert_eq!(via_words, via_solve);
    }

    #[test]
    fn conjugating_partitions() {
        assert_eq!(conjugate(&[2, 1]), vec![2, 1]);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(conjugate(&[]), Vec::<u32>::new());
        assert_eq!(conjugate(&conjugate(&[5, 4, 2, 2])), vec![5, 4, 2, 2]);
    }

    #[test]
    fn partition_generators() {
        assert_eq!(
            strict_partitions_of(5),
            vec![vec![5], vec![4, 1], vec![3, 2]]
        );
        assert_eq!(partitions_of(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(strict_partitions_of(0), vec![Vec::<u32>::new()]);
        assert_eq!(
            strict_subpartitions(&[2, 1]),
            vec![vec![], vec![1], vec![2], vec![2, 1]]
        );
    }

    #[test]
    fn delta_staircase_base_case() {
        // GS of (2,1)/(1) equals the square of GQ of a single box.
        let n = 3;
        let d = 4;
        let lhs = grothendieck_GS(&[2, 1], &[1], n, d).unwrap();
        let gq1 = grothendieck_GQ(&[1], &[], n, d).unwrap();
        assert_eq!(lhs, gq1.mul(&gq1));
    }

    #[test]
    fn gq_expansion_in_multipeak_has_doubled_lead() {
        let f = grothendieck_GQ(&[2, 1], &[], 3, 3).unwrap();
        assert_eq!(f.coeff(&Mono::new(vec![2, 1])), BetaPoly::constant(4));
        assert_eq!(
            grothendieck_GP(&[2, 1], &[], 3, 3)
                .unwrap()
                .coeff(&Mono::new(vec![2, 1])),
            BetaPoly::one()
        );
    }
}

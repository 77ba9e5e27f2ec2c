//! Polyhedral complexes and the overlay machinery that powers refinement.
//!
//! A complex is stored by its maximal cells; faces are recovered on demand.
//! The overlay of several cell families refines every cell by the full
//! constraint arrangement of all of them, so the resulting pieces are
//! pairwise identical or interior-disjoint and can be compared, summed,
//! or regrouped structurally.

use crate::polyhedron::{Constraint, GeometryError, HPolyhedron};
use crate::{Int, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cells live in different ambient spaces")]
    DimMismatch,
    #[error("cells {0} and {1} do not intersect in a common face")]
    NotCommonFace(usize, usize),
}

/// A polyhedral complex, represented by its maximal cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    maximal: Vec<HPolyhedron>,
}

impl PolyhedralComplex {
    /// Builds a complex from prospective maximal cells: drops empty and
    /// engulfed cells, deduplicates, and verifies that any two cells meet
    /// in a common face.
    pub fn from_top_cells(
        ambient_dim: usize,
        cells: Vec<HPolyhedron>,
    ) -> Result<PolyhedralComplex, ComplexError> {
        if cells.iter().any(|c| c.ambient_dim() != ambient_dim) {
            return Err(ComplexError::DimMismatch);
        }
        let mut kept: Vec<HPolyhedron> = Vec::new();
        for c in cells {
            if c.is_empty() || kept.contains(&c) {
                continue;
            }
            kept.push(c);
        }
        let engulfed: Vec<bool> = kept
            .iter()
            .map(|c| kept.iter().any(|o| o != c && c.is_subset(o)))
            .collect();
        let maximal: Vec<HPolyhedron> = kept
            .into_iter()
            .zip(engulfed)
            .filter(|(_, e)| !e)
            .map(|(c, _)| c)
            .collect();
        let mut sorted = maximal;
        sorted.sort();
        let complex = PolyhedralComplex { ambient_dim, maximal: sorted };
        if let Some((i, j)) = complex.common_face_violation() {
            return Err(ComplexError::NotCommonFace(i, j));
        }
        Ok(complex)
    }

    /// First pair of maximal cells whose intersection is not a face of both,
    /// if any.
    pub fn common_face_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.maximal.len() {
            for j in (i + 1)..self.maximal.len() {
                let m = self.maximal[i].intersect(&self.maximal[j]);
                if m.is_empty() {
                    continue;
                }
                let face_of = |cell: &HPolyhedron| -> bool {
                    if &m == cell {
                        return true;
                    }
                    cell.proper_faces().contains(&m)
                };
                if !face_of(&self.maximal[i]) || !face_of(&self.maximal[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cells(&self) -> &[HPolyhedron] {
        &self.maximal
    }

    /// Largest cell dimension; -1 when there are no cells.
    pub fn dimension(&self) -> isize {
        self.maximal.iter().map(|c| c.dimension()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.maximal.iter().all(|c| c.dimension() == d)
    }

    pub fn support_contains(&self, x: &[Rat]) -> bool {
        self.maximal.iter().any(|c| c.contains_point(x))
    }

    /// Splits every maximal cell along the hyperplane a·x = b.
    pub fn refine_by_hyperplane(
        &self,
        a: &[Rat],
        b: &Rat,
    ) -> Result<PolyhedralComplex, GeometryError> {
        if a.len() != self.ambient_dim {
            return Err(GeometryError::DimMismatch);
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(GeometryError::ZeroForm);
        }
        let mut cells = Vec::new();
        for c in &self.maximal {
            cells.extend(split_cell(c, a, b));
        }
        cells.sort();
        cells.dedup();
        Ok(PolyhedralComplex { ambient_dim: self.ambient_dim, maximal: cells })
    }

    /// Refines every cell of `self` by the constraint arrangement of
    /// `other`; the support is unchanged.
    pub fn common_refinement(&self, other: &PolyhedralComplex) -> PolyhedralComplex {
        let pool = constraint_pool(other.maximal.iter());
        let mut cells = Vec::new();
        for c in &self.maximal {
            cells.extend(refine_by_pool(c, &pool));
        }
        cells.sort();
        cells.dedup();
        PolyhedralComplex { ambient_dim: self.ambient_dim, maximal: cells }
    }

    /// Ridges: codimension-one faces of maximal cells, each with the sorted
    /// list of maximal cells containing it.
    pub fn ridges(&self) -> Vec<(HPolyhedron, Vec<usize>)> {
        let mut out: BTreeMap<HPolyhedron, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.maximal.iter().enumerate() {
            if c.dimension() <= 0 {
                continue;
            }
            for f in c.faces(1).expect("nonempty cell") {
                out.entry(f).or_default().push(i);
            }
        }
        out.into_iter().collect()
    }

    /// True when every maximal cell is a cone with apex at the origin.
    pub fn is_fan(&self) -> bool {
        self.maximal.iter().all(|c| c.is_cone())
    }

    /// True when the support is all of R^n, checked by purity in the top
    /// dimension plus every ridge lying in exactly two maximal cells.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_dim as isize;
        if self.maximal.is_empty() {
            return false;
        }
        if !self.maximal.iter().all(|c| c.dimension() == n) {
            return false;
        }
        self.ridges().iter().all(|(ridge, _)| {
            let count = self.maximal.iter().filter(|c| ridge.is_subset(c)).count();
            count == 2
        })
    }

    /// True when every maximal cell is a pointed cone with exactly as many
    /// extreme rays as its dimension.
    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|c| {
            if !c.is_cone() {
                return false;
            }
            let g = c.generators();
            g.lines.is_empty() && g.rays.len() == c.dimension() as usize
        })
    }
}

/// Splits one cell along a hyperplane, keeping the full-dimensional pieces
/// (relative to the cell); returns the cell itself when it does not cross.
fn split_cell(cell: &HPolyhedron, a: &[Rat], b: &Rat) -> Vec<HPolyhedron> {
    let d = cell.dimension();
    let (ge, le) = cell.triple_refine(a, b);
    let mut out = Vec::new();
    if ge.dimension() == d {
        out.push(ge);
    }
    if le.dimension() == d && out.first() != Some(&le) {
        out.push(le);
    }
    debug_assert!(!out.is_empty());
    out
}

/// All constraints of the given cells as sign-normalized primitive affine
/// forms (a, b), deduplicated. Equalities contribute their hyperplane.
pub fn constraint_pool<'a>(
    cells: impl Iterator<Item = &'a HPolyhedron>,
) -> Vec<(Vec<Rat>, Rat)> {
    let mut pool: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut push = |(a, b): &Constraint| {
        let mut row: Vec<Rat> = a.to_vec();
        row.push(b.clone());
        let prim = crate::linalg::primitive_from_rat(&row).expect("nonzero form");
        let lead = prim.iter().find(|x| !x.is_zero()).expect("nonzero form");
        let flip = lead.is_negative();
        let mut norm: Vec<Rat> = prim
            .iter()
            .map(|x| Rat::from_integer(if flip { -x.clone() } else { x.clone() }))
            .collect();
        let b = norm.pop().unwrap();
        if !pool.iter().any(|(pa, pb)| *pa == norm && *pb == b) {
            pool.push((norm, b));
        }
    };
    for c in cells {
        for con in c.inequalities().iter().chain(c.equalities()) {
            push(con);
        }
    }
    pool.sort();
    pool
}

/// Refines one cell by every hyperplane of the pool, keeping pieces of the
/// cell's own dimension. The pieces partition the cell up to boundaries.
pub fn refine_by_pool(cell: &HPolyhedron, pool: &[(Vec<Rat>, Rat)]) -> Vec<HPolyhedron> {
    let mut pieces = vec![cell.clone()];
    for (a, b) in pool {
        let mut next = Vec::new();
        for p in &pieces {
            next.extend(split_cell(p, a, b));
        }
        pieces = next;
    }
    pieces.sort();
    pieces.dedup();
    pieces
}

/// Overlays several families of d-dimensional cells. Returns the pieces of
/// the joint arrangement, each with the (family, cell) pairs containing it.
/// Pieces are canonical and sorted; distinct pieces have disjoint relative
/// interiors, and every input cell is exactly the union of its pieces.
pub fn overlay(sources: &[Vec<HPolyhedron>]) -> Vec<(HPolyhedron, Vec<(usize, usize)>)> {
    let pool = constraint_pool(sources.iter().flatten());
    let mut pieces: BTreeMap<HPolyhedron, Vec<(usize, usize)>> = BTreeMap::new();
    for (si, cells) in sources.iter().enumerate() {
        for (ci, cell) in cells.iter().enumerate() {
            for piece in refine_by_pool(cell, &pool) {
                pieces.entry(piece).or_default().push((si, ci));
            }
        }
    }
    pieces.into_iter().collect()
}

/// Sum of weights attributed to each overlay piece by one source, given the
/// source's cell weights.
pub fn piece_weight(covers: &[(usize, usize)], source: usize, weights: &[Int]) -> Int {
    covers
        .iter()
        .filter(|(s, _)| *s == source)
        .map(|(_, c)| weights[*c].clone())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn cons(rows: &[(&[i64], i64)]) -> Vec<Constraint> {
        rows.iter().map(|(a, b)| (rv(a), rat_int(*b))).collect()
    }

    fn square_at(x: i64, y: i64) -> HPolyhedron {
        HPolyhedron::from_constraints(
            2,
            cons(&[
                (&[1, 0], x),
                (&[0, 1], y),
                (&[-1, 0], -(x + 1)),
                (&[0, -1], -(y + 1)),
            ]),
            vec![],
        )
    }

    fn axis(coord: usize) -> HPolyhedron {
        let mut a = vec![rat_int(0); 2];
        a[1 - coord] = rat_int(1);
        HPolyhedron::from_constraints(2, vec![], vec![(a, rat_int(0))])
    }

    #[test]
    fn complex_construction_validates_faces() {
        // Two squares sharing an edge form a complex.
        let ok = PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0), square_at(1, 0)]);
        assert_eq!(ok.unwrap().maximal_cells().len(), 2);
        // Overlapping squares do not.
        let bad = PolyhedralComplex::from_top_cells(
            2,
            vec![square_at(0, 0), square_at(0, 0).translate(&[crate::rat(1, 2), rat_int(0)])],
        );
        assert_eq!(bad, Err(ComplexError::NotCommonFace(0, 1)));
        // Squares meeting edge-to-half-edge do not either.
        let tall = HPolyhedron::from_constraints(
            2,
            cons(&[(&[1, 0], 1), (&[0, 1], 0), (&[-1, 0], -2), (&[0, -1], -2)]),
            vec![],
        );
        let bad = PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0), tall]);
        assert!(matches!(bad, Err(ComplexError::NotCommonFace(_, _))));
    }

    #[test]
    fn construction_drops_redundant_cells() {
        let sq = square_at(0, 0);
        let edge = sq.faces(1).unwrap().pop().unwrap();
        let c =
            PolyhedralComplex::from_top_cells(2, vec![sq.clone(), edge, sq.clone(), HPolyhedron::empty(2)])
                .unwrap();
        assert_eq!(c.maximal_cells(), &[sq]);
        assert!(c.is_pure());
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn hyperplane_refinement_splits_cells() {
        let c = PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0)]).unwrap();
        let r = c.refine_by_hyperplane(&rv(&[1, -1]), &rat_int(0)).unwrap();
        assert_eq!(r.maximal_cells().len(), 2);
        assert!(r.is_pure());
        assert!(r.common_face_violation().is_none());
        // A hyperplane missing the support leaves it unchanged.
        let same = c.refine_by_hyperplane(&rv(&[1, 0]), &rat_int(-9)).unwrap();
        assert_eq!(same, c);
        assert_eq!(
            c.refine_by_hyperplane(&rv(&[0, 0]), &rat_int(1)),
            Err(GeometryError::ZeroForm)
        );
    }

    #[test]
    fn overlay_of_crossing_lines() {
        let pieces = overlay(&[vec![axis(0)], vec![axis(1)]]);
        assert_eq!(pieces.len(), 4);
        for (p, covers) in &pieces {
            assert_eq!(p.dimension(), 1);
            assert_eq!(covers.len(), 1);
        }
        // Each axis is cut at the origin into two rays.
        let from_x: Vec<_> = pieces.iter().filter(|(_, c)| c[0].0 == 0).collect();
        assert_eq!(from_x.len(), 2);
    }

    #[test]
    fn overlay_of_identical_sources_shares_pieces() {
        let pieces = overlay(&[vec![axis(0)], vec![axis(0)]]);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].1, vec![(0, 0), (1, 0)]);
        let w = piece_weight(&pieces[0].1, 0, &[Int::from(3)]);
        assert_eq!(w, Int::from(3));
    }

    #[test]
    fn overlay_pieces_cover_sources_exactly() {
        // A segment against a shifted copy: pieces [0,1],[1,2],[2,3] wait
        // [0,2] and [1,3] overlay into [0,1],[1,2],[2,3].
        let seg = |a: i64, b: i64| {
            HPolyhedron::from_constraints(
                2,
                cons(&[(&[1, 0], a), (&[-1, 0], -b)]),
                cons(&[(&[0, 1], 0)]),
            )
        };
        let pieces = overlay(&[vec![seg(0, 2)], vec![seg(1, 3)]]);
        assert_eq!(pieces.len(), 3);
        let covers: Vec<usize> = pieces.iter().map(|(_, c)| c.len()).collect();
        assert_eq!(covers.iter().sum::<usize>(), 4);
        assert_eq!(pieces.iter().filter(|(_, c)| c.len() == 2).count(), 1);
    }

    #[test]
    fn common_refinement_respects_other_complex() {
        let big = PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0)]).unwrap();
        let cutter = PolyhedralComplex::from_top_cells(
            2,
            vec![HPolyhedron::from_constraints(
                2,
                cons(&[(&[1, -1], 0)]),
                vec![],
            )],
        )
        .unwrap();
        let r = big.common_refinement(&cutter);
        assert_eq!(r.maximal_cells().len(), 2);
        assert!(r
            .maximal_cells()
            .iter()
            .all(|c| c.is_subset(&square_at(0, 0))));
    }

    #[test]
    fn fan_predicates() {
        let quadrant = |sx: i64, sy: i64| {
            HPolyhedron::from_constraints(2, cons(&[(&[sx, 0], 0), (&[0, sy], 0)]), vec![])
        };
        let complete = PolyhedralComplex::from_top_cells(
            2,
            vec![quadrant(1, 1), quadrant(-1, 1), quadrant(1, -1), quadrant(-1, -1)],
        )
        .unwrap();
        assert!(complete.is_fan());
        assert!(complete.is_complete());
        assert!(complete.is_simplicial());

        let partial =
            PolyhedralComplex::from_top_cells(2, vec![quadrant(1, 1), quadrant(-1, 1)]).unwrap();
        assert!(partial.is_fan());
        assert!(!partial.is_complete());

        let whole = PolyhedralComplex::from_top_cells(2, vec![HPolyhedron::full_space(2)]).unwrap();
        assert!(whole.is_complete());
        assert!(!whole.is_simplicial());

        let shifted = PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0)]).unwrap();
        assert!(!shifted.is_fan());
    }

    #[test]
    fn ridge_incidence() {
        let c =
            PolyhedralComplex::from_top_cells(2, vec![square_at(0, 0), square_at(1, 0)]).unwrap();
        let ridges = c.ridges();
        assert_eq!(ridges.len(), 7);
        let shared: Vec<_> = ridges.iter().filter(|(_, inc)| inc.len() == 2).collect();
        assert_eq!(shared.len(), 1);
    }
}

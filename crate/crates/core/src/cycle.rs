//! Tropical cycles: weighted pure-dimensional polyhedral complexes that are
//! balanced around every codimension-one cell. Cycles of the same dimension
//! form a group under overlay addition, and all operations treat cycles as
//! equal when one is a weighted refinement of the other.

use crate::complex::{self, PolyhedralComplex};
use crate::lattice::quotient_normal_vector;
use crate::linalg::{express_in_rows, primitive_from_rat};
use crate::polyhedron::{GeometryError, HPolyhedron};
use crate::{Int, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycles live in different ambient spaces")]
    DimMismatch,
    #[error("weighted cells do not have a common dimension")]
    MixedDimensions,
    #[error("cycles have different dimensions")]
    DimensionsDiffer,
    #[error("cycle is not a fan (some cell is not a cone at the origin)")]
    NotFan,
}

/// A tropical cycle, presented by weighted maximal cells. The zero cycle is
/// the empty presentation and carries no dimension.
///
/// Structural equality compares presentations; use [`TropicalCycle::equals`]
/// for equality of cycles up to refinement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropicalCycle {
    ambient_dim: usize,
    dim: Option<usize>,
    facets: Vec<(HPolyhedron, Int)>,
}

/// Balancing diagnosis of a presented cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Pairs of facet indices that do not meet in a common face.
    pub face_violations: Vec<(usize, usize)>,
    /// Ridges where the weighted normal vectors do not sum into the ridge's
    /// direction space, with the offending sum.
    pub unbalanced_ridges: Vec<(HPolyhedron, Vec<Rat>)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.face_violations.is_empty() && self.unbalanced_ridges.is_empty()
    }
}

impl TropicalCycle {
    /// The zero cycle in R^n.
    pub fn zero(ambient_dim: usize) -> TropicalCycle {
        TropicalCycle { ambient_dim, dim: None, facets: Vec::new() }
    }

    /// Builds a cycle from weighted cells. Empty cells are dropped, repeated
    /// cells have their weights added, and the remaining cells must share one
    /// dimension. Balancing is not checked here; see [`TropicalCycle::validate`].
    pub fn from_weighted_cells(
        ambient_dim: usize,
        cells: Vec<(HPolyhedron, Int)>,
    ) -> Result<TropicalCycle, CycleError> {
        let mut merged: BTreeMap<HPolyhedron, Int> = BTreeMap::new();
        for (cell, w) in cells {
            if cell.ambient_dim() != ambient_dim {
                return Err(CycleError::DimMismatch);
            }
            if cell.is_empty() {
                continue;
            }
            *merged.entry(cell).or_insert_with(Int::zero) += w;
        }
        let facets: Vec<(HPolyhedron, Int)> = merged.into_iter().collect();
        if facets.is_empty() {
            return Ok(TropicalCycle::zero(ambient_dim));
        }
        let d = facets[0].0.dimension();
        if facets.iter().any(|(c, _)| c.dimension() != d) {
            return Err(CycleError::MixedDimensions);
        }
        Ok(TropicalCycle { ambient_dim, dim: Some(d as usize), facets })
    }

    /// The cycle [R^n] with constant weight.
    pub fn constant(ambient_dim: usize, weight: Int) -> TropicalCycle {
        if weight.is_zero() {
            return TropicalCycle::zero(ambient_dim);
        }
        TropicalCycle {
            ambient_dim,
            dim: Some(ambient_dim),
            facets: vec![(HPolyhedron::full_space(ambient_dim), weight)],
        }
    }

    /// A single weighted point.
    pub fn point(p: &[Rat], weight: Int) -> TropicalCycle {
        TropicalCycle::from_weighted_cells(p.len(), vec![(HPolyhedron::point(p), weight)])
            .expect("a point is a cell")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the presented cycle; `None` for the zero cycle.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn facets(&self) -> &[(HPolyhedron, Int)] {
        &self.facets
    }

    pub fn is_zero_presented(&self) -> bool {
        self.facets.is_empty()
    }

    fn cells(&self) -> Vec<HPolyhedron> {
        self.facets.iter().map(|(c, _)| c.clone()).collect()
    }

    fn weights(&self) -> Vec<Int> {
        self.facets.iter().map(|(_, w)| w.clone()).collect()
    }

    /// Checks the complex property and the balancing condition around every
    /// ridge of the presentation.
    pub fn validate(&self) -> ValidationReport {
        let mut report =
            ValidationReport { face_violations: Vec::new(), unbalanced_ridges: Vec::new() };
        if self.facets.is_empty() {
            return report;
        }
        let complex_cells: Vec<HPolyhedron> = self.cells();
        for i in 0..complex_cells.len() {
            for j in (i + 1)..complex_cells.len() {
                let m = complex_cells[i].intersect(&complex_cells[j]);
                if m.is_empty() {
                    continue;
                }
                if !is_face_of(&m, &complex_cells[i]) || !is_face_of(&m, &complex_cells[j]) {
                    report.face_violations.push((i, j));
                }
            }
        }
        if !report.face_violations.is_empty() {
            return report;
        }
        if self.dim == Some(0) {
            return report;
        }
        // Collect ridges with their incident facets.
        let mut ridges: BTreeMap<HPolyhedron, Vec<usize>> = BTreeMap::new();
        for (i, (cell, _)) in self.facets.iter().enumerate() {
            for f in cell.faces(1).expect("facets are nonempty") {
                ridges.entry(f).or_default().push(i);
            }
        }
        for (ridge, incident) in ridges {
            let tau = ridge.direction_lattice();
            let tau_point = ridge.relative_interior_point().expect("ridge nonempty");
            let mut sum = vec![Rat::zero(); self.ambient_dim];
            for &i in &incident {
                let (cell, weight) = &self.facets[i];
                let sigma = cell.direction_lattice();
                let cell_point = cell.relative_interior_point().expect("facet nonempty");
                let dir: Vec<Rat> = cell_point
                    .iter()
                    .zip(&tau_point)
                    .map(|(a, b)| a - b)
                    .collect();
                let q = quotient_normal_vector(&tau, &sigma, &dir)
                    .expect("incident facet induces a normal vector");
                for (s, w) in sum.iter_mut().zip(&q.representative) {
                    *s = &*s + Rat::from_integer(w.clone() * weight);
                }
            }
            let in_tau = if sum.iter().all(|x| x.is_zero()) {
                true
            } else {
                express_in_rows(&tau.rat_rows(), &sum).is_some()
            };
            if !in_tau {
                report.unbalanced_ridges.push((ridge, sum));
            }
        }
        report
    }

    /// Drops zero weights and greedily merges neighbouring equal-weight cells
    /// whose union is again a polyhedron. The result presents the same cycle.
    pub fn normalize(&self) -> TropicalCycle {
        let mut facets: Vec<(HPolyhedron, Int)> = self
            .facets
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .cloned()
            .collect();
        'merge: loop {
            for i in 0..facets.len() {
                for j in (i + 1)..facets.len() {
                    if facets[i].1 != facets[j].1 {
                        continue;
                    }
                    let Some(u) = merge_cells(&facets[i].0, &facets[j].0) else {
                        continue;
                    };
                    // Merging must not break the complex property against
                    // the remaining facets (e.g. across a shared vertex).
                    let compatible = facets.iter().enumerate().all(|(k, (other, _))| {
                        if k == i || k == j {
                            return true;
                        }
                        let m = u.intersect(other);
                        m.is_empty() || (is_face_of(&m, &u) && is_face_of(&m, other))
                    });
                    if !compatible {
                        continue;
                    }
                    let w = facets[i].1.clone();
                    facets.remove(j);
                    facets.remove(i);
                    facets.push((u, w));
                    continue 'merge;
                }
            }
            break;
        }
        if facets.is_empty() {
            return TropicalCycle::zero(self.ambient_dim);
        }
        facets.sort();
        let d = facets[0].0.dimension() as usize;
        TropicalCycle { ambient_dim: self.ambient_dim, dim: Some(d), facets }
    }

    /// Equality of cycles up to refinement: the two presentations induce the
    /// same weights on their joint overlay.
    pub fn equals(&self, other: &TropicalCycle) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero_presented() && other.is_zero_presented() {
            return true;
        }
        let pieces = complex::overlay(&[self.cells(), other.cells()]);
        let (w_self, w_other) = (self.weights(), other.weights());
        pieces.iter().all(|(_, covers)| {
            complex::piece_weight(covers, 0, &w_self)
                == complex::piece_weight(covers, 1, &w_other)
        })
    }

    pub fn scalar_multiply(&self, k: &Int) -> TropicalCycle {
        if k.is_zero() {
            return TropicalCycle::zero(self.ambient_dim);
        }
        TropicalCycle {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            facets: self.facets.iter().map(|(c, w)| (c.clone(), w * k)).collect(),
        }
    }

    /// Sum of cycles of equal dimension, computed on the joint overlay with
    /// weights added; cancelled pieces disappear.
    pub fn add(&self, other: &TropicalCycle) -> Result<TropicalCycle, CycleError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(CycleError::DimMismatch);
        }
        if self.is_zero_presented() {
            return Ok(other.clone());
        }
        if other.is_zero_presented() {
            return Ok(self.clone());
        }
        if self.dim != other.dim {
            return Err(CycleError::DimensionsDiffer);
        }
        let pieces = complex::overlay(&[self.cells(), other.cells()]);
        let (w_self, w_other) = (self.weights(), other.weights());
        let mut facets = Vec::new();
        for (piece, covers) in pieces {
            let w = complex::piece_weight(&covers, 0, &w_self)
                + complex::piece_weight(&covers, 1, &w_other);
            if !w.is_zero() {
                facets.push((piece, w));
            }
        }
        Ok(TropicalCycle::from_weighted_cells(self.ambient_dim, facets)
            .expect("overlay pieces share one dimension")
            .normalize())
    }

    pub fn subtract(&self, other: &TropicalCycle) -> Result<TropicalCycle, CycleError> {
        self.add(&other.scalar_multiply(&Int::from(-1)))
    }

    pub fn translate(&self, v: &[Rat]) -> TropicalCycle {
        assert_eq!(v.len(), self.ambient_dim);
        TropicalCycle {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            facets: self.facets.iter().map(|(c, w)| (c.translate(v), w.clone())).collect(),
        }
    }

    /// Cartesian product with weights multiplied.
    pub fn cross_product(&self, other: &TropicalCycle) -> TropicalCycle {
        let n = self.ambient_dim + other.ambient_dim;
        if self.is_zero_presented() || other.is_zero_presented() {
            return TropicalCycle::zero(n);
        }
        let mut facets = Vec::new();
        for (c1, w1) in &self.facets {
            for (c2, w2) in &other.facets {
                facets.push((c1.cross(c2), w1 * w2));
            }
        }
        TropicalCycle::from_weighted_cells(n, facets).expect("products share one dimension")
    }

    /// Sum of weights of a zero-dimensional cycle.
    pub fn point_degree(&self) -> Result<Int, CycleError> {
        if self.is_zero_presented() {
            return Ok(Int::zero());
        }
        if self.dim != Some(0) {
            return Err(CycleError::DimensionsDiffer);
        }
        Ok(self.facets.iter().map(|(_, w)| w.clone()).sum())
    }

    /// Total weight of the presented facets containing `x`. For `x` in the
    /// relative interior of one facet this is that facet's weight.
    pub fn weight_at(&self, x: &[Rat]) -> Int {
        self.facets
            .iter()
            .filter(|(c, _)| c.contains_point(x))
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// Splits every facet along the hyperplane a·x = b; the cycle is
    /// unchanged as a class.
    pub fn refine_by_hyperplane(
        &self,
        a: &[Rat],
        b: &Rat,
    ) -> Result<TropicalCycle, GeometryError> {
        if a.len() != self.ambient_dim {
            return Err(GeometryError::DimMismatch);
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(GeometryError::ZeroForm);
        }
        let mut facets = Vec::new();
        for (cell, w) in &self.facets {
            let d = cell.dimension();
            let (ge, le) = cell.triple_refine(a, b);
            if ge.dimension() == d {
                facets.push((ge.clone(), w.clone()));
            }
            if le.dimension() == d && le != ge {
                facets.push((le, w.clone()));
            }
        }
        Ok(TropicalCycle::from_weighted_cells(self.ambient_dim, facets)
            .expect("refinement preserves dimension"))
    }

    /// True when every facet is a cone with apex at the origin.
    pub fn is_fan(&self) -> bool {
        self.facets.iter().all(|(c, _)| c.is_cone())
    }
}

/// True when `f` is a face of `cell` (the cell itself included).
fn is_face_of(f: &HPolyhedron, cell: &HPolyhedron) -> bool {
    f == cell || cell.proper_faces().contains(f)
}

/// Union of two cells when it is itself a polyhedron (`None` otherwise):
/// the cells must meet along a common facet-defining hyperplane and their
/// hull must split back into exactly the two cells.
fn merge_cells(c1: &HPolyhedron, c2: &HPolyhedron) -> Option<HPolyhedron> {
    if c1.dimension() != c2.dimension() {
        return None;
    }
    let hull = {
        let g1 = c1.generators();
        let g2 = c2.generators();
        let mut vertices = g1.vertices;
        vertices.extend(g2.vertices);
        let to_rat =
            |v: Vec<Vec<Int>>| -> Vec<Vec<Rat>> { v.iter().map(|r| crate::linalg::int_to_rat_vec(r)).collect() };
        let mut rays = to_rat(g1.rays);
        rays.extend(to_rat(g2.rays));
        let mut lines = to_rat(g1.lines);
        lines.extend(to_rat(g2.lines));
        HPolyhedron::from_generators(c1.ambient_dim(), &vertices, &rays, &lines)
    };
    for (a, b) in c1.inequalities() {
        let (ge, le) = hull.triple_refine(a, b);
        if &ge == c1 && &le == c2 {
            return Some(hull);
        }
    }
    None
}

/// A cycle whose facets are all cones at the origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FanCycle(TropicalCycle);

/// A complete simplicial fan extending a fan cycle's support, together with
/// the cycle rewritten on that fan's cones.
#[derive(Debug, Clone)]
pub struct SimplicialCompletion {
    pub fan: PolyhedralComplex,
    pub cycle: FanCycle,
}

impl FanCycle {
    pub fn try_new(cycle: TropicalCycle) -> Result<FanCycle, CycleError> {
        if !cycle.is_fan() {
            return Err(CycleError::NotFan);
        }
        Ok(FanCycle(cycle))
    }

    pub fn as_cycle(&self) -> &TropicalCycle {
        &self.0
    }

    pub fn into_inner(self) -> TropicalCycle {
        self.0
    }

    /// Extends the fan of this cycle to a complete simplicial fan and
    /// rewrites the cycle on its cones. The returned cycle equals the input.
    pub fn complete_to_simplicial(&self) -> SimplicialCompletion {
        let n = self.0.ambient_dim;
        // Forms: every constraint normal of every facet, plus all coordinate
        // forms so the arrangement cones are pointed.
        let mut forms: Vec<Vec<Rat>> = Vec::new();
        let mut add_form = |a: &[Rat]| {
            if a.iter().all(|x| x.is_zero()) {
                return;
            }
            let prim = primitive_from_rat(a).unwrap();
            let lead = prim.iter().find(|x| !x.is_zero()).unwrap();
            let flip = lead.is_negative();
            let norm: Vec<Rat> = prim
                .iter()
                .map(|x| Rat::from_integer(if flip { -x.clone() } else { x.clone() }))
                .collect();
            if !forms.contains(&norm) {
                forms.push(norm);
            }
        };
        for (cell, _) in &self.0.facets {
            debug_assert!(cell.is_cone());
            for (a, _) in cell.inequalities().iter().chain(cell.equalities()) {
                add_form(a);
            }
        }
        for i in 0..n {
            let mut a = vec![Rat::zero(); n];
            a[i] = crate::rat_int(1);
            add_form(&a);
        }
        forms.sort();
        // Arrangement fan: refine R^n by every form through the origin.
        let mut tops = vec![HPolyhedron::full_space(n)];
        for a in &forms {
            let mut next = Vec::new();
            for cell in &tops {
                let (ge, le) = cell.triple_refine(a, &Rat::zero());
                let d = cell.dimension();
                if ge.dimension() == d {
                    next.push(ge.clone());
                }
                if le.dimension() == d && le != ge {
                    next.push(le);
                }
            }
            tops = next;
        }
        tops.sort();
        tops.dedup();
        // All cones of the arrangement fan, bucketed by dimension.
        let mut by_dim: Vec<Vec<HPolyhedron>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HPolyhedron> = Vec::new();
        for t in &tops {
            let mut stack = vec![t.clone()];
            while let Some(c) = stack.pop() {
                if seen.contains(&c) {
                    continue;
                }
                seen.push(c.clone());
                if c.dimension() > 0 {
                    stack.extend(c.faces(1).expect("nonempty cone"));
                }
                by_dim[c.dimension() as usize].push(c);
            }
        }
        for bucket in by_dim.iter_mut() {
            bucket.sort();
            bucket.dedup();
        }
        // Simplicialize bottom-up by stellar subdivision.
        let mut new_by_dim: Vec<Vec<HPolyhedron>> = vec![Vec::new(); n + 1];
        new_by_dim[0] = by_dim[0].clone();
        if n >= 1 {
            new_by_dim[1] = by_dim[1].clone();
        }
        for p in 2..=n {
            let mut level: Vec<HPolyhedron> = Vec::new();
            for sigma in &by_dim[p] {
                let g = sigma.generators();
                let simplicial = g.lines.is_empty() && g.rays.len() == p;
                let boundary: Vec<HPolyhedron> = new_by_dim[p - 1]
                    .iter()
                    .filter(|tau| tau.is_subset(sigma))
                    .cloned()
                    .collect();
                let own_facets = {
                    let mut f = sigma.faces(1).expect("nonempty cone");
                    f.sort();
                    f
                };
                if simplicial && boundary == own_facets {
                    level.push(sigma.clone());
                    continue;
                }
                // Stellar subdivision at the sum of the primitive rays.
                let mut rho = vec![Int::zero(); n];
                for r in &g.rays {
                    for (ri, xi) in rho.iter_mut().zip(r) {
                        *ri += xi;
                    }
                }
                let rho: Vec<Rat> =
                    crate::linalg::int_to_rat_vec(&crate::lattice::primitive(&rho).expect("full cone has rays"));
                for tau in &boundary {
                    let tg = tau.generators();
                    let mut rays: Vec<Vec<Rat>> = tg
                        .rays
                        .iter()
                        .map(|r| crate::linalg::int_to_rat_vec(r))
                        .collect();
                    rays.push(rho.clone());
                    let joined = HPolyhedron::cone_from_rays(n, &rays, &[]);
                    debug_assert_eq!(joined.dimension() as usize, p);
                    level.push(joined);
                }
            }
            level.sort();
            level.dedup();
            new_by_dim[p] = level;
        }
        let fan = PolyhedralComplex::from_top_cells(n, new_by_dim[n].clone())
            .expect("stellar subdivision of a complete fan is a complete fan");
        // Rewrite the cycle on the new fan by weight inheritance.
        let cycle = match self.0.dim {
            None => TropicalCycle::zero(n),
            Some(d) => {
                let mut facets = Vec::new();
                for cone in &new_by_dim[d] {
                    let x = cone.relative_interior_point().expect("cone nonempty");
                    let w = self.0.weight_at(&x);
                    if !w.is_zero() {
                        facets.push((cone.clone(), w));
                    }
                }
                TropicalCycle::from_weighted_cells(n, facets).expect("cones of one dimension")
            }
        };
        SimplicialCompletion { fan, cycle: FanCycle(cycle) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn ray(dir: &[i64]) -> HPolyhedron {
        let rays = vec![rv(dir)];
        HPolyhedron::cone_from_rays(dir.len(), &rays, &[])
    }

    /// The tropical line in R^2: rays toward (-1,0), (0,-1), (1,1).
    fn l1() -> TropicalCycle {
        TropicalCycle::from_weighted_cells(
            2,
            vec![
                (ray(&[-1, 0]), Int::from(1)),
                (ray(&[0, -1]), Int::from(1)),
                (ray(&[1, 1]), Int::from(1)),
            ],
        )
        .unwrap()
    }

    /// The four coordinate rays in R^2 with unit weights.
    fn axes() -> TropicalCycle {
        TropicalCycle::from_weighted_cells(
            2,
            vec![
                (ray(&[1, 0]), Int::from(1)),
                (ray(&[-1, 0]), Int::from(1)),
                (ray(&[0, 1]), Int::from(1)),
                (ray(&[0, -1]), Int::from(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_merges_and_checks_purity() {
        let c = TropicalCycle::from_weighted_cells(
            2,
            vec![(ray(&[1, 0]), Int::from(2)), (ray(&[1, 0]), Int::from(3))],
        )
        .unwrap();
        assert_eq!(c.facets().len(), 1);
        assert_eq!(c.facets()[0].1, Int::from(5));

        let bad = TropicalCycle::from_weighted_cells(
            2,
            vec![(ray(&[1, 0]), Int::from(1)), (HPolyhedron::full_space(2), Int::from(1))],
        );
        assert_eq!(bad, Err(CycleError::MixedDimensions));

        assert!(TropicalCycle::from_weighted_cells(2, vec![]).unwrap().is_zero_presented());
    }

    #[test]
    fn balanced_cycles_validate() {
        assert!(l1().validate().is_valid());
        assert!(axes().validate().is_valid());
        assert!(TropicalCycle::constant(2, Int::from(3)).validate().is_valid());
        assert!(TropicalCycle::zero(2).validate().is_valid());
        assert!(TropicalCycle::point(&rv(&[1, 2]), Int::from(-4)).validate().is_valid());
    }

    #[test]
    fn unbalanced_cycles_report_ridges() {
        let spider = TropicalCycle::from_weighted_cells(
            2,
            vec![
                (ray(&[-1, 0]), Int::from(1)),
                (ray(&[0, -1]), Int::from(1)),
                (ray(&[1, 1]), Int::from(2)),
            ],
        )
        .unwrap();
        let report = spider.validate();
        assert!(!report.is_valid());
        assert_eq!(report.unbalanced_ridges.len(), 1);
        let (ridge, defect) = &report.unbalanced_ridges[0];
        assert_eq!(ridge, &HPolyhedron::point(&rv(&[0, 0])));
        assert_eq!(defect, &rv(&[1, 1]));
    }

    #[test]
    fn non_complex_presentations_report_pairs() {
        let crossing = TropicalCycle::from_weighted_cells(
            2,
            vec![
                (
                    HPolyhedron::from_constraints(2, vec![], vec![(rv(&[0, 1]), rat_int(0))]),
                    Int::from(1),
                ),
                (
                    HPolyhedron::from_constraints(2, vec![], vec![(rv(&[1, 0]), rat_int(0))]),
                    Int::from(1),
                ),
            ],
        )
        .unwrap();
        let report = crossing.validate();
        assert_eq!(report.face_violations, vec![(0, 1)]);
    }

    #[test]
    fn higher_dimensional_balancing() {
        // A balanced weight-2 halfplane pair: x>=0 with weight 1 glued to
        // x<=0 with weight 1 along the y-axis is just [R^2, 1] refined.
        let refined = TropicalCycle::constant(2, Int::from(1))
            .refine_by_hyperplane(&rv(&[1, 0]), &rat_int(0))
            .unwrap();
        assert_eq!(refined.facets().len(), 2);
        assert!(refined.validate().is_valid());
        // Mismatched halfplane weights are unbalanced along the axis.
        let lopsided = TropicalCycle::from_weighted_cells(
            2,
            vec![
                (refined.facets()[0].0.clone(), Int::from(1)),
                (refined.facets()[1].0.clone(), Int::from(2)),
            ],
        )
        .unwrap();
        assert!(!lopsided.validate().is_valid());
    }

    #[test]
    fn normalization_merges_refinements() {
        let refined = TropicalCycle::constant(2, Int::from(5))
            .refine_by_hyperplane(&rv(&[1, -1]), &rat_int(0))
            .unwrap();
        let merged = refined.normalize();
        assert_eq!(merged, TropicalCycle::constant(2, Int::from(5)));
        // Zero weights vanish.
        let z = TropicalCycle::from_weighted_cells(2, vec![(ray(&[1, 0]), Int::zero())]).unwrap();
        assert!(z.normalize().is_zero_presented());
    }

    #[test]
    fn equality_up_to_refinement() {
        let c = l1();
        let refined = c.refine_by_hyperplane(&rv(&[1, 0]), &rat_int(-2)).unwrap();
        assert_ne!(c, refined);
        assert!(c.equals(&refined));
        assert!(!c.equals(&c.scalar_multiply(&Int::from(2))));
        assert!(!c.equals(&c.translate(&rv(&[1, 0]))));
        assert!(TropicalCycle::zero(2).equals(&TropicalCycle::zero(2)));
        assert!(!c.equals(&TropicalCycle::zero(2)));
    }

    #[test]
    fn addition_cancels_and_normalizes() {
        let c = l1();
        let neg = c.scalar_multiply(&Int::from(-1));
        assert!(c.add(&neg).unwrap().is_zero_presented());
        let doubled = c.add(&c).unwrap();
        assert!(doubled.equals(&c.scalar_multiply(&Int::from(2))));
        assert!(doubled.validate().is_valid());
        // Sum with a translate stays balanced.
        let sum = c.add(&c.translate(&rv(&[3, 1]))).unwrap();
        assert!(sum.validate().is_valid());
        assert_eq!(sum.dim(), Some(1));
        // Adding the zero cycle is the identity.
        assert_eq!(c.add(&TropicalCycle::zero(2)).unwrap(), c);
    }

    #[test]
    fn products_and_translates() {
        let p = TropicalCycle::point(&rv(&[0]), Int::from(2));
        let q = TropicalCycle::point(&rv(&[0]), Int::from(3));
        let pq = p.cross_product(&q);
        assert_eq!(pq.dim(), Some(0));
        assert_eq!(pq.point_degree().unwrap(), Int::from(6));

        let line_cross = l1().cross_product(&TropicalCycle::constant(1, Int::from(1)));
        assert_eq!(line_cross.ambient_dim(), 3);
        assert_eq!(line_cross.dim(), Some(2));
        assert!(line_cross.validate().is_valid());

        let t = l1().translate(&rv(&[5, -1]));
        assert!(t.validate().is_valid());
        assert!(t.translate(&rv(&[-5, 1])).equals(&l1()));
    }

    #[test]
    fn weights_at_points() {
        let c = l1();
        assert_eq!(c.weight_at(&rv(&[-3, 0])), Int::from(1));
        assert_eq!(c.weight_at(&rv(&[2, 2])), Int::from(1));
        assert_eq!(c.weight_at(&rv(&[5, 7])), Int::from(0));
        // At the vertex all three rays contribute.
        assert_eq!(c.weight_at(&rv(&[0, 0])), Int::from(3));
    }

    #[test]
    fn fan_cycles_and_completion() {
        assert!(FanCycle::try_new(l1()).is_ok());
        assert_eq!(
            FanCycle::try_new(l1().translate(&rv(&[1, 0]))),
            Err(CycleError::NotFan)
        );

        let completion = FanCycle::try_new(l1()).unwrap().complete_to_simplicial();
        assert!(completion.fan.is_fan());
        assert!(completion.fan.is_complete());
        assert!(completion.fan.is_simplicial());
        assert!(completion.cycle.as_cycle().equals(&l1()));
        // The support of the line cuts the plane into six sectors.
        assert_eq!(completion.fan.maximal_cells().len(), 6);
    }

    #[test]
    fn completion_of_full_plane_and_zero() {
        let full = FanCycle::try_new(TropicalCycle::constant(2, Int::from(2))).unwrap();
        let completion = full.complete_to_simplicial();
        assert!(completion.fan.is_complete() && completion.fan.is_simplicial());
        assert_eq!(completion.fan.maximal_cells().len(), 4);
        assert!(completion.cycle.as_cycle().equals(full.as_cycle()));

        let zero = FanCycle::try_new(TropicalCycle::zero(2)).unwrap();
        let completion = zero.complete_to_simplicial();
        assert!(completion.fan.is_complete());
        assert!(completion.cycle.as_cycle().is_zero_presented());
    }
}

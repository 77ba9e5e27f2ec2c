//! Tropical polynomials and piecewise affine functions, and the divisor
//! construction that intersects a function with a cycle: the divisor lives
//! on the codimension-one cells of the refined cycle, weighted by how much
//! the function bends across each of them.

use crate::complex::{constraint_pool, refine_by_pool, PolyhedralComplex};
use crate::cycle::TropicalCycle;
use crate::lattice::quotient_normal_vector;
use crate::linalg::{dot_rat, express_in_rows, int_to_rat_vec};
use crate::polyhedron::HPolyhedron;
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctionError {
    #[error("ambient dimensions do not match")]
    DimMismatch,
    #[error("a function needs at least one term or piece")]
    Empty,
    #[error("pieces are not affine pieces of one continuous function")]
    NotContinuous,
    #[error("pieces do not form a polyhedral complex")]
    NotComplex,
    #[error("the cycle's support is not covered by the function's domain")]
    SupportNotCovered,
    #[error("divisor weight is not an integer")]
    NonIntegralWeight,
    #[error("the fan is not complete")]
    NotComplete,
    #[error("the fan is not simplicial")]
    NotSimplicial,
    #[error("the vector does not generate a ray of the fan")]
    RayNotInFan,
}

/// A tropical polynomial max_i(<m_i, x> + c_i) with integer exponents and
/// rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    ambient_dim: usize,
    terms: Vec<(Vec<Int>, Rat)>,
}

impl TropicalPolynomial {
    /// Duplicate exponents are merged keeping the larger coefficient (the
    /// smaller one can never attain the maximum).
    pub fn new(
        ambient_dim: usize,
        terms: Vec<(Vec<Int>, Rat)>,
    ) -> Result<TropicalPolynomial, FunctionError> {
        if terms.is_empty() {
            return Err(FunctionError::Empty);
        }
        if terms.iter().any(|(m, _)| m.len() != ambient_dim) {
            return Err(FunctionError::DimMismatch);
        }
        let mut merged: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
        for (m, c) in terms {
            merged
                .entry(m)
                .and_modify(|e| {
                    if c > *e {
                        *e = c.clone();
                    }
                })
                .or_insert(c);
        }
        Ok(TropicalPolynomial { ambient_dim, terms: merged.into_iter().collect() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &[(Vec<Int>, Rat)] {
        &self.terms
    }

    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(m, c)| dot_rat(&int_to_rat_vec(m), x) + c)
            .max()
            .expect("a polynomial has terms")
    }

    /// The function given by the linearity regions of the maximum.
    pub fn piecewise(&self) -> PiecewiseAffineFunction {
        let n = self.ambient_dim;
        let mut pieces = Vec::new();
        for (i, (mi, ci)) in self.terms.iter().enumerate() {
            let ineqs: Vec<(Vec<Rat>, Rat)> = self
                .terms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (mj, cj))| {
                    let a: Vec<Rat> = mi
                        .iter()
                        .zip(mj)
                        .map(|(x, y)| Rat::from_integer(x - y))
                        .collect();
                    (a, cj - ci)
                })
                .collect();
            let cell = HPolyhedron::from_constraints(n, ineqs, vec![]);
            if cell.dimension() == n as isize {
                pieces.push(AffinePiece {
                    cell,
                    linear: int_to_rat_vec(mi),
                    constant: ci.clone(),
                });
            }
        }
        PiecewiseAffineFunction::from_pieces(n, pieces)
            .expect("linearity regions of a maximum are a continuous complex")
    }
}

/// One affine piece: the function x -> linear·x + constant on `cell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub cell: HPolyhedron,
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

/// A continuous function given by affine pieces on the full-dimensional
/// cells of a polyhedral complex. The domain is the union of the cells and
/// need not be all of R^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAffineFunction {
    ambient_dim: usize,
    pieces: Vec<AffinePiece>,
}

impl PiecewiseAffineFunction {
    pub fn from_pieces(
        ambient_dim: usize,
        mut pieces: Vec<AffinePiece>,
    ) -> Result<PiecewiseAffineFunction, FunctionError> {
        if pieces.is_empty() {
            return Err(FunctionError::Empty);
        }
        if pieces
            .iter()
            .any(|p| p.cell.ambient_dim() != ambient_dim || p.linear.len() != ambient_dim)
        {
            return Err(FunctionError::DimMismatch);
        }
        if pieces.iter().any(|p| p.cell.dimension() != ambient_dim as isize) {
            return Err(FunctionError::NotComplex);
        }
        pieces.sort_by(|a, b| a.cell.cmp(&b.cell));
        // Cells must form a complex and the affine data must agree on every
        // intersection.
        let cells: Vec<HPolyhedron> = pieces.iter().map(|p| p.cell.clone()).collect();
        if PolyhedralComplex::from_top_cells(ambient_dim, cells).is_err() {
            return Err(FunctionError::NotComplex);
        }
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                let m = pieces[i].cell.intersect(&pieces[j].cell);
                if m.is_empty() {
                    continue;
                }
                let dl: Vec<Rat> = pieces[i]
                    .linear
                    .iter()
                    .zip(&pieces[j].linear)
                    .map(|(a, b)| a - b)
                    .collect();
                let dc = &pieces[i].constant - &pieces[j].constant;
                let z = m.relative_interior_point().expect("nonempty intersection");
                let vanishes_at_z = dot_rat(&dl, &z) + &dc == Rat::zero();
                let lattice = m.direction_lattice();
                let flat = lattice
                    .rat_rows()
                    .iter()
                    .all(|dir| dot_rat(&dl, dir).is_zero());
                if !vanishes_at_z || !flat {
                    return Err(FunctionError::NotContinuous);
                }
            }
        }
        Ok(PiecewiseAffineFunction { ambient_dim, pieces })
    }

    /// The function x -> linear·x + constant on all of R^n.
    pub fn global_affine(linear: Vec<Rat>, constant: Rat) -> PiecewiseAffineFunction {
        let n = linear.len();
        PiecewiseAffineFunction {
            ambient_dim: n,
            pieces: vec![AffinePiece { cell: HPolyhedron::full_space(n), linear, constant }],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn evaluate(&self, x: &[Rat]) -> Option<Rat> {
        self.pieces
            .iter()
            .find(|p| p.cell.contains_point(x))
            .map(|p| dot_rat(&p.linear, x) + &p.constant)
    }

    /// Pointwise sum (domain: cells covered by both).
    pub fn add(&self, other: &PiecewiseAffineFunction) -> Result<PiecewiseAffineFunction, FunctionError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(FunctionError::DimMismatch);
        }
        let pool = constraint_pool(other.pieces.iter().map(|p| &p.cell));
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for cell in refine_by_pool(&p.cell, &pool) {
                let z = cell.relative_interior_point().expect("piece nonempty");
                let Some(q) = other.pieces.iter().find(|q| q.cell.contains_point(&z)) else {
                    continue;
                };
                pieces.push(AffinePiece {
                    cell,
                    linear: p.linear.iter().zip(&q.linear).map(|(a, b)| a + b).collect(),
                    constant: &p.constant + &q.constant,
                });
            }
        }
        PiecewiseAffineFunction::from_pieces(self.ambient_dim, pieces)
    }

    pub fn negate(&self) -> PiecewiseAffineFunction {
        PiecewiseAffineFunction {
            ambient_dim: self.ambient_dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| AffinePiece {
                    cell: p.cell.clone(),
                    linear: p.linear.iter().map(|x| -x.clone()).collect(),
                    constant: -p.constant.clone(),
                })
                .collect(),
        }
    }

    /// Refines the cycle's facets along this function's pieces and assigns
    /// each refined facet its affine data.
    fn refine_along(
        &self,
        cycle: &TropicalCycle,
    ) -> Result<Vec<(HPolyhedron, Int, usize)>, FunctionError> {
        let pool = constraint_pool(self.pieces.iter().map(|p| &p.cell));
        let mut out = Vec::new();
        for (cell, weight) in cycle.facets() {
            for piece in refine_by_pool(cell, &pool) {
                let z = piece.relative_interior_point().expect("piece nonempty");
                let idx = self
                    .pieces
                    .iter()
                    .position(|p| p.cell.contains_point(&z))
                    .ok_or(FunctionError::SupportNotCovered)?;
                out.push((piece, weight.clone(), idx));
            }
        }
        Ok(out)
    }

    /// The divisor of this function on a cycle: the weighted codimension-one
    /// skeleton of the refined cycle, where the weight of a ridge measures
    /// the total outward bend of the function across it. The result is
    /// balanced and one dimension lower; weights that cancel disappear.
    pub fn divisor(&self, cycle: &TropicalCycle) -> Result<TropicalCycle, FunctionError> {
        if self.ambient_dim != cycle.ambient_dim() {
            return Err(FunctionError::DimMismatch);
        }
        let n = self.ambient_dim;
        match cycle.dim() {
            None | Some(0) => return Ok(TropicalCycle::zero(n)),
            Some(_) => {}
        }
        let refined = self.refine_along(cycle)?;
        let mut ridges: BTreeMap<HPolyhedron, Vec<usize>> = BTreeMap::new();
        for (i, (cell, _, _)) in refined.iter().enumerate() {
            for f in cell.faces(1).expect("facets are nonempty") {
                ridges.entry(f).or_default().push(i);
            }
        }
        let mut weights: Vec<(HPolyhedron, Rat)> = Vec::new();
        for (ridge, incident) in ridges {
            let tau = ridge.direction_lattice();
            let tau_point = ridge.relative_interior_point().expect("ridge nonempty");
            let mut bend = Rat::zero();
            let mut sum: Vec<Rat> = vec![Rat::zero(); n];
            for &i in &incident {
                let (cell, weight, piece_idx) = &refined[i];
                let sigma = cell.direction_lattice();
                let cell_point = cell.relative_interior_point().expect("facet nonempty");
                let dir: Vec<Rat> = cell_point
                    .iter()
                    .zip(&tau_point)
                    .map(|(a, b)| a - b)
                    .collect();
                let q = quotient_normal_vector(&tau, &sigma, &dir)
                    .expect("incident facet induces a normal vector");
                let w_rat = int_to_rat_vec(&q.representative);
                let l = &self.pieces[*piece_idx].linear;
                bend += dot_rat(l, &w_rat) * Rat::from_integer(weight.clone());
                for (s, wi) in sum.iter_mut().zip(&w_rat) {
                    *s = &*s + wi * Rat::from_integer(weight.clone());
                }
            }
            // Correct by the value on the summed normal; any incident piece's
            // linear part agrees on the ridge's directions, and the sum lies
            // there by balancedness.
            debug_assert!(
                sum.iter().all(|x| x.is_zero())
                    || express_in_rows(&tau.rat_rows(), &sum).is_some(),
                "input cycle is balanced"
            );
            let l0 = &self.pieces[refined[incident[0]].2].linear;
            bend -= dot_rat(l0, &sum);
            if !bend.is_zero() {
                weights.push((ridge, bend));
            }
        }
        if weights.iter().any(|(_, b)| !b.denom().is_one()) {
            return Err(FunctionError::NonIntegralWeight);
        }
        let facets: Vec<(HPolyhedron, Int)> = weights
            .into_iter()
            .map(|(r, b)| (r, b.numer().clone()))
            .collect();
        Ok(TropicalCycle::from_weighted_cells(n, facets)
            .expect("ridges share one dimension")
            .normalize())
    }
}

/// The piecewise linear function on a complete simplicial fan that is 1 on
/// the given primitive ray generator and 0 on every other ray of the fan.
pub fn simplicial_ray_function(
    fan: &PolyhedralComplex,
    ray: &[Int],
) -> Result<PiecewiseAffineFunction, FunctionError> {
    let n = fan.ambient_dim();
    if ray.len() != n {
        return Err(FunctionError::DimMismatch);
    }
    if !fan.is_complete() {
        return Err(FunctionError::NotComplete);
    }
    if !fan.is_simplicial() {
        return Err(FunctionError::NotSimplicial);
    }
    let mut found = false;
    let mut pieces = Vec::new();
    for cone in fan.maximal_cells() {
        let rays = cone.generators().rays;
        debug_assert_eq!(rays.len(), n);
        let targets: Vec<Rat> = rays
            .iter()
            .map(|r| if r == ray { Rat::one() } else { Rat::zero() })
            .collect();
        if targets.iter().any(|t| t.is_one()) {
            found = true;
        }
        // Solve V l = targets with V the matrix of ray rows, via the
        // column span of V.
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|j| rays.iter().map(|r| Rat::from_integer(r[j].clone())).collect())
            .collect();
        let linear =
            express_in_rows(&cols, &targets).expect("simplicial cone rays are independent");
        pieces.push(AffinePiece { cell: cone.clone(), linear, constant: Rat::zero() });
    }
    if !found {
        return Err(FunctionError::RayNotInFan);
    }
    PiecewiseAffineFunction::from_pieces(n, pieces)
}

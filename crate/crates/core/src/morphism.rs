//! Integer affine maps between tropical ambient spaces: push-forwards of
//! cycles (with lattice-index multiplicities), pull-backs of functions, and
//! the bounded-function witness that exhibits a translate of a cycle as
//! rationally equivalent to the cycle itself.

use crate::cycle::TropicalCycle;
use crate::function::{FunctionError, PiecewiseAffineFunction, TropicalPolynomial};
use crate::lattice::{lattice_index, LatticeBasis};
use crate::linalg::int_to_rat_vec;
use crate::polyhedron::HPolyhedron;
use crate::{Int, Rat};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("dimensions do not match")]
    DimMismatch,
    #[error("matrix entries must be integers")]
    NonIntegralMatrix,
    #[error("translation witnesses need a nonzero shift")]
    ZeroShift,
}

/// An affine map x -> M x + t with integer linear part M and rational
/// translation t, from R^source to R^target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerAffineMap {
    matrix: Vec<Vec<Int>>,
    shift: Vec<Rat>,
}

impl IntegerAffineMap {
    /// Validates that every matrix entry is an integer.
    pub fn new(matrix: Vec<Vec<Rat>>, shift: Vec<Rat>) -> Result<IntegerAffineMap, MorphismError> {
        if matrix.len() != shift.len() {
            return Err(MorphismError::DimMismatch);
        }
        let source = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != source) {
            return Err(MorphismError::DimMismatch);
        }
        let mut rows = Vec::with_capacity(matrix.len());
        for r in &matrix {
            let mut row = Vec::with_capacity(source);
            for x in r {
                if !x.denom().is_one() {
                    return Err(MorphismError::NonIntegralMatrix);
                }
                row.push(x.numer().clone());
            }
            rows.push(row);
        }
        Ok(IntegerAffineMap { matrix: rows, shift })
    }

    pub fn from_integer_matrix(matrix: Vec<Vec<Int>>, shift: Vec<Rat>) -> IntegerAffineMap {
        assert_eq!(matrix.len(), shift.len());
        IntegerAffineMap { matrix, shift }
    }

    pub fn identity(n: usize) -> IntegerAffineMap {
        IntegerAffineMap {
            matrix: crate::linalg::identity_int(n),
            shift: vec![Rat::zero(); n],
        }
    }

    /// The projection (x, t) -> x + t v dropping the last coordinate of
    /// R^(n+1); v must have length n.
    pub fn collapse_last_onto(v: &[Int]) -> IntegerAffineMap {
        let n = v.len();
        let mut matrix = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![Int::zero(); n + 1];
            row[i] = Int::one();
            row[n] = v[i].clone();
            matrix.push(row);
        }
        IntegerAffineMap { matrix, shift: vec![Rat::zero(); n] }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Int>] {
        &self.matrix
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.source_dim());
        self.matrix
            .iter()
            .zip(&self.shift)
            .map(|(row, s)| {
                row.iter()
                    .zip(x)
                    .map(|(m, xi)| Rat::from_integer(m.clone()) * xi)
                    .sum::<Rat>()
                    + s
            })
            .collect()
    }

    fn rat_matrix(&self) -> Vec<Vec<Rat>> {
        self.matrix.iter().map(|r| int_to_rat_vec(r)).collect()
    }

    /// Image of an integer vector under the linear part.
    fn apply_linear_int(&self, b: &[Int]) -> Vec<Int> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(b).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Push-forward of a cycle: facets map to their images, images of too
    /// small dimension vanish, and each surviving piece is weighted by the
    /// index of the pushed lattice inside the image's lattice.
    pub fn push_forward(&self, cycle: &TropicalCycle) -> Result<TropicalCycle, MorphismError> {
        if cycle.ambient_dim() != self.source_dim() {
            return Err(MorphismError::DimMismatch);
        }
        let m = self.target_dim();
        let Some(d) = cycle.dim() else {
            return Ok(TropicalCycle::zero(m));
        };
        let rat_m = self.rat_matrix();
        let mut images: Vec<Vec<HPolyhedron>> = Vec::new();
        let mut factors: Vec<Int> = Vec::new();
        for (cell, weight) in cycle.facets() {
            let image = cell.affine_image(&rat_m, &self.shift);
            if image.dimension() != d as isize {
                continue;
            }
            let pushed_rows: Vec<Vec<Int>> = cell
                .direction_lattice()
                .rows()
                .iter()
                .map(|b| self.apply_linear_int(b))
                .collect();
            let pushed = LatticeBasis::from_rows(m, &pushed_rows);
            let index = lattice_index(&pushed, &image.direction_lattice())
                .expect("pushed lattice sits in the image lattice");
            factors.push(weight * index);
            images.push(vec![image]);
        }
        let pieces = crate::complex::overlay(&images);
        let mut facets = Vec::new();
        for (piece, covers) in pieces {
            let w: Int = covers.iter().map(|(s, _)| factors[*s].clone()).sum();
            if !w.is_zero() {
                facets.push((piece, w));
            }
        }
        Ok(TropicalCycle::from_weighted_cells(m, facets)
            .expect("image pieces share one dimension")
            .normalize())
    }

    /// Pull-back of a tropical polynomial: exponents compose with the
    /// linear part, coefficients absorb the translation.
    pub fn pull_back_polynomial(
        &self,
        p: &TropicalPolynomial,
    ) -> Result<TropicalPolynomial, FunctionError> {
        if p.ambient_dim() != self.target_dim() {
            return Err(FunctionError::DimMismatch);
        }
        let n = self.source_dim();
        let terms: Vec<(Vec<Int>, Rat)> = p
            .terms()
            .iter()
            .map(|(e, c)| {
                let pulled: Vec<Int> = (0..n)
                    .map(|j| e.iter().zip(&self.matrix).map(|(ei, row)| ei * &row[j]).sum())
                    .collect();
                let lifted: Rat = e
                    .iter()
                    .zip(&self.shift)
                    .map(|(ei, s)| Rat::from_integer(ei.clone()) * s)
                    .sum();
                (pulled, c + lifted)
            })
            .collect();
        TropicalPolynomial::new(n, terms)
    }

    /// Pull-back of a piecewise affine function: pieces become preimages,
    /// overlaps collapse since the data agrees there.
    pub fn pull_back(
        &self,
        f: &PiecewiseAffineFunction,
    ) -> Result<PiecewiseAffineFunction, FunctionError> {
        if f.ambient_dim() != self.target_dim() {
            return Err(FunctionError::DimMismatch);
        }
        let n = self.source_dim();
        let rat_m = self.rat_matrix();
        let mut raw: Vec<crate::function::AffinePiece> = Vec::new();
        for p in f.pieces() {
            let cell = p.cell.affine_preimage(&rat_m, &self.shift);
            if cell.dimension() != n as isize {
                continue;
            }
            let linear: Vec<Rat> = (0..n)
                .map(|j| {
                    p.linear
                        .iter()
                        .zip(&self.matrix)
                        .map(|(li, row)| li * Rat::from_integer(row[j].clone()))
                        .sum()
                })
                .collect();
            let constant = crate::linalg::dot_rat(&p.linear, &self.shift) + &p.constant;
            raw.push(crate::function::AffinePiece { cell, linear, constant });
        }
        // Preimages can overlap; refine them jointly and deduplicate (the
        // affine data agrees wherever cells coincide).
        let pool = crate::complex::constraint_pool(raw.iter().map(|p| &p.cell));
        let mut pieces: Vec<crate::function::AffinePiece> = Vec::new();
        for p in &raw {
            for cell in crate::complex::refine_by_pool(&p.cell, &pool) {
                let candidate = crate::function::AffinePiece {
                    cell,
                    linear: p.linear.clone(),
                    constant: p.constant.clone(),
                };
                if !pieces.iter().any(|q| q.cell == candidate.cell) {
                    pieces.push(candidate);
                }
            }
        }
        PiecewiseAffineFunction::from_pieces(n, pieces)
    }
}

/// A certificate that a cycle and its translate by mu along coordinate i
/// differ by the divisor of a bounded function on a cylinder over the cycle.
#[derive(Debug, Clone)]
pub struct TranslationWitness {
    /// The cylinder: cycle x [R, 1] in one more dimension.
    pub cylinder: TropicalCycle,
    /// Projection (x, t) -> x + t e_i back to the cycle's space.
    pub projection: IntegerAffineMap,
    /// The bounded function max(0, t) - max(mu, t) on the last coordinate.
    pub function: PiecewiseAffineFunction,
    /// The expected value: cycle - translate(cycle, mu e_i).
    pub difference: TropicalCycle,
}

impl TranslationWitness {
    /// Evaluates the certificate: the divisor of the function on the
    /// cylinder, pushed down by the projection, must equal the difference.
    pub fn verify(&self) -> bool {
        let div = self
            .function
            .divisor(&self.cylinder)
            .expect("witness function is defined on the whole cylinder");
        let pushed = self
            .projection
            .push_forward(&div)
            .expect("witness dimensions agree");
        pushed.equals(&self.difference)
    }
}

/// Builds the translation witness for a cycle, a coordinate index, and a
/// nonzero rational shift mu.
pub fn translation_witness(
    cycle: &TropicalCycle,
    coordinate: usize,
    mu: &Rat,
) -> Result<TranslationWitness, MorphismError> {
    let r = cycle.ambient_dim();
    if coordinate >= r {
        return Err(MorphismError::DimMismatch);
    }
    if mu.is_zero() {
        return Err(MorphismError::ZeroShift);
    }
    let cylinder = cycle.cross_product(&TropicalCycle::constant(1, Int::one()));
    let mut e_i = vec![Int::zero(); r];
    e_i[coordinate] = Int::one();
    let projection = IntegerAffineMap::collapse_last_onto(&e_i);
    // max(0, t) - max(mu, t) in the coordinates (x, t) of the cylinder.
    let mut t_exp = vec![Int::zero(); r + 1];
    t_exp[r] = Int::one();
    let zero_exp = vec![Int::zero(); r + 1];
    let p1 = TropicalPolynomial::new(
        r + 1,
        vec![(zero_exp.clone(), Rat::zero()), (t_exp.clone(), Rat::zero())],
    )
    .expect("two terms");
    let p2 = TropicalPolynomial::new(r + 1, vec![(zero_exp, mu.clone()), (t_exp, Rat::zero())])
        .expect("two terms");
    let function = p1
        .piecewise()
        .add(&p2.piecewise().negate())
        .expect("difference of complete functions");
    let mut shift = vec![Rat::zero(); r];
    shift[coordinate] = mu.clone();
    let difference = cycle
        .subtract(&cycle.translate(&shift))
        .expect("translate has the same dimension");
    Ok(TranslationWitness { cylinder, projection, function, difference })
}

//! Lattice arithmetic in Z^r: primitive vectors, normal forms, saturations,
//! lattice indices, and quotient normal vectors for weighted complexes.

use crate::linalg::{
    det_rat, express_in_rows, gcd_vec, int_to_rat_vec, row_hnf, smith_with_transforms, IntMatrix,
};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("lattices do not share a rational span")]
    RankMismatch,
    #[error("first lattice is not a sublattice of the second")]
    NotSublattice,
    #[error("rank gap between the lattices is not one")]
    RankGapNotOne,
    #[error("sublattice is not saturated; quotient has torsion")]
    NotSaturated,
    #[error("direction lies in the smaller lattice's span")]
    DirectionInTau,
    #[error("direction is outside the larger lattice's span")]
    DirectionNotInSpan,
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>, LatticeError> {
    let g = gcd_vec(v);
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// A sublattice of Z^r stored as its canonical row Hermite normal form.
/// Two values are equal exactly when they describe the same lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    rows: IntMatrix,
}

impl LatticeBasis {
    pub fn from_rows(ambient_dim: usize, rows: &[Vec<Int>]) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ambient_dim));
        LatticeBasis { ambient_dim, rows: row_hnf(&rows.to_vec()) }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, rows: Vec::new() }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            rows: crate::linalg::identity_int(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows (row Hermite normal form).
    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn rat_rows(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|r| int_to_rat_vec(r)).collect()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Reduces `v` modulo the lattice: subtracts basis rows to zero out the
    /// pivot columns where possible, leaving smallest nonnegative residues.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut w = v.to_vec();
        for row in &self.rows {
            let p = row.iter().position(|x| !x.is_zero()).expect("no zero rows in HNF");
            if w[p].is_zero() {
                continue;
            }
            let q = w[p].div_floor(&row[p]);
            for (wj, rj) in w.iter_mut().zip(row) {
                let t = rj * &q;
                *wj = &*wj - t;
            }
        }
        w
    }

    /// The lattice generated by this one together with extra vectors.
    pub fn extended(&self, extra: &[Vec<Int>]) -> LatticeBasis {
        let mut rows = self.rows.clone();
        rows.extend(extra.iter().cloned());
        LatticeBasis::from_rows(self.ambient_dim, &rows)
    }
}

/// Result of `smith_decomposition`: `u * input * v = d`, with `u`, `v`
/// unimodular and nonnegative diagonal entries satisfying d_i | d_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<Int> {
        let mut out = Vec::new();
        for (i, row) in self.d.iter().enumerate() {
            if i < row.len() && !row[i].is_zero() {
                out.push(row[i].clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let s = smith_with_transforms(m);
    SmithDecomposition { u: s.u, d: s.d, v: s.v }
}

/// Index of `sub` in `sup` as sublattices of equal rational span:
/// the absolute determinant of the change of basis.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<Int, LatticeError> {
    if sub.ambient_dim != sup.ambient_dim || sub.rank() != sup.rank() {
        return Err(LatticeError::RankMismatch);
    }
    if sub.rank() == 0 {
        return Ok(Int::one());
    }
    let sup_rat = sup.rat_rows();
    let mut x: Vec<Vec<Rat>> = Vec::with_capacity(sub.rank());
    for row in sub.rows() {
        let c = express_in_rows(&sup_rat, &int_to_rat_vec(row))
            .ok_or(LatticeError::RankMismatch)?;
        x.push(c);
    }
    if x.iter().flatten().any(|e| !e.denom().is_one()) {
        return Err(LatticeError::NotSublattice);
    }
    let d = det_rat(&x);
    debug_assert!(d.denom().is_one());
    Ok(d.numer().abs())
}

/// Saturation of the rational span of `vectors` inside Z^r:
/// the largest sublattice with that span.
pub fn saturate_span(ambient_dim: usize, vectors: &[Vec<Int>]) -> LatticeBasis {
    debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
    if vectors.is_empty() {
        return LatticeBasis::zero(ambient_dim);
    }
    let s = smith_with_transforms(&vectors.to_vec());
    let rank = (0..vectors.len().min(ambient_dim))
        .filter(|&i| !s.d[i][i].is_zero())
        .count();
    // input = u^-1 d v^-1, so the rational row span is spanned by the first
    // `rank` rows of v^-1, which extend to a basis of Z^r: saturated.
    LatticeBasis::from_rows(ambient_dim, &s.v_inv[..rank])
}

/// A generator of a rank-one lattice quotient. `representative` is an
/// integer vector whose class generates; `denominator_scale` supports
/// fractional representatives such as (1/k)·v, whose actual vector is
/// `representative / denominator_scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGenerator {
    pub representative: Vec<Int>,
    pub denominator_scale: Rat,
}

impl QuotientGenerator {
    pub fn fractional_vector(&self) -> Vec<Rat> {
        self.representative
            .iter()
            .map(|x| Rat::from_integer(x.clone()) / &self.denominator_scale)
            .collect()
    }
}

/// Generator of `sigma / tau` for a saturated corank-one sublattice `tau`,
/// oriented to the side of `interior_direction` and reduced modulo `tau`
/// to smallest nonnegative residues at the pivot columns.
pub fn quotient_normal_vector(
    tau: &LatticeBasis,
    sigma: &LatticeBasis,
    interior_direction: &[Rat],
) -> Result<QuotientGenerator, LatticeError> {
    let t = tau.rank();
    let s = sigma.rank();
    if tau.ambient_dim != sigma.ambient_dim || s != t + 1 {
        return Err(LatticeError::RankGapNotOne);
    }
    let sigma_rat = sigma.rat_rows();
    // Coordinates of tau's basis inside sigma's basis; must be integral.
    let mut a: IntMatrix = Vec::with_capacity(t);
    for row in tau.rows() {
        let c = express_in_rows(&sigma_rat, &int_to_rat_vec(row))
            .ok_or(LatticeError::NotSublattice)?;
        if c.iter().any(|e| !e.denom().is_one()) {
            return Err(LatticeError::NotSublattice);
        }
        a.push(c.iter().map(|e| e.numer().clone()).collect());
    }
    let mut w_coords: Vec<Int>;
    let v; // change of basis used to read the quotient class
    if t == 0 {
        v = crate::linalg::identity_int(s);
        w_coords = vec![Int::one()];
    } else {
        let sm = smith_with_transforms(&a);
        if (0..t).any(|i| sm.d[i][i].abs() != Int::one()) {
            return Err(LatticeError::NotSaturated);
        }
        v = sm.v;
        // In coordinates y = x v the sublattice becomes the first t unit
        // rows, so the free generator pulls back to the last row of v^-1.
        w_coords = sm.v_inv[s - 1].clone();
    }
    let dir_coords =
        express_in_rows(&sigma_rat, interior_direction).ok_or(LatticeError::DirectionNotInSpan)?;
    // Class of the direction: last y-coordinate.
    let class: Rat = (0..s)
        .map(|i| &dir_coords[i] * Rat::from_integer(v[i][s - 1].clone()))
        .sum();
    if class.is_zero() {
        return Err(LatticeError::DirectionInTau);
    }
    if class.is_negative() {
        for x in w_coords.iter_mut() {
            *x = -x.clone();
        }
    }
    let w: Vec<Int> = (0..sigma.ambient_dim)
        .map(|j| (0..s).map(|i| &w_coords[i] * &sigma.rows()[i][j]).sum())
        .collect();
    Ok(QuotientGenerator {
        representative: tau.reduce(&w),
        denominator_scale: Rat::one(),
    })
}

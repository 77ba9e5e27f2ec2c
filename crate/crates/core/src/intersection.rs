//! Stable intersection of tropical cycles, the induced degree pairing,
//! recession fans, the rational-equivalence decision procedure, and the
//! Bézout verifier.

use std::collections::BTreeMap;

use crate::cycle::{FanCycle, TropicalCycle};
use crate::function::{simplicial_ray_function, TropicalPolynomial};
use crate::lattice::{lattice_index, LatticeBasis};
use crate::morphism::IntegerAffineMap;
use crate::{Int, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("cycles live in different ambient spaces")]
    DimMismatch,
    #[error("cycle dimensions do not sum to the ambient dimension")]
    DimensionsNotComplementary,
    #[error("input cycle is not balanced")]
    InvalidCycle,
}

/// Stable intersection: both cycles are crossed into twice the ambient
/// dimension, one max(x_i, y_i) divisor per coordinate cuts down to the
/// diagonal, and the first-factor projection carries the result back.
pub fn stable_intersect(
    c: &TropicalCycle,
    d: &TropicalCycle,
) -> Result<TropicalCycle, IntersectionError> {
    if c.ambient_dim() != d.ambient_dim() {
        return Err(IntersectionError::DimMismatch);
    }
    let r = c.ambient_dim();
    let mut w = c.cross_product(d);
    for i in 0..r {
        if w.dim().is_none() {
            break;
        }
        let mut x_exp = vec![Int::zero(); 2 * r];
        x_exp[i] = Int::from(1);
        let mut y_exp = vec![Int::zero(); 2 * r];
        y_exp[r + i] = Int::from(1);
        let phi = TropicalPolynomial::new(2 * r, vec![(x_exp, Rat::zero()), (y_exp, Rat::zero())])
            .expect("two monomials");
        w = phi
            .piecewise()
            .divisor(&w)
            .expect("a complete function with integer slopes divides any cycle");
    }
    let mut matrix = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = vec![Int::zero(); 2 * r];
        row[i] = Int::from(1);
        matrix.push(row);
    }
    let proj = IntegerAffineMap::from_integer_matrix(matrix, vec![Rat::zero(); r]);
    Ok(proj.push_forward(&w).expect("projection matches the product space"))
}

/// Degree of the stable intersection of two cycles of complementary
/// dimensions. Zero cycles pair to zero against anything.
pub fn degree_pairing(
    c: &TropicalCycle,
    d: &TropicalCycle,
) -> Result<Int, IntersectionError> {
    if c.ambient_dim() != d.ambient_dim() {
        return Err(IntersectionError::DimMismatch);
    }
    let r = c.ambient_dim();
    match (c.dim(), d.dim()) {
        (None, _) | (_, None) => Ok(Int::zero()),
        (Some(a), Some(b)) if a + b == r => {
            let z = stable_intersect(c, d)?;
            Ok(z.point_degree().expect("complementary dimensions meet in points"))
        }
        _ => Err(IntersectionError::DimensionsNotComplementary),
    }
}

/// The pairing D -> deg(C · D) against a fixed base cycle, with results
/// cached per normalized argument.
#[derive(Debug, Clone)]
pub struct DegreePairing {
    base: TropicalCycle,
    cache: BTreeMap<TropicalCycle, Int>,
}

impl DegreePairing {
    pub fn new(base: TropicalCycle) -> DegreePairing {
        DegreePairing { base, cache: BTreeMap::new() }
    }

    pub fn base(&self) -> &TropicalCycle {
        &self.base
    }

    pub fn evaluate(&mut self, d: &TropicalCycle) -> Result<Int, IntersectionError> {
        let key = d.normalize();
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = degree_pairing(&self.base, &key)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }
}

/// The recession fan: every facet contributes its recession cone, cones of
/// too small dimension drop out, the full-dimensional ones are overlaid into
/// a fan, and each piece collects the weights of all facets whose recession
/// cone contains it.
pub fn recession_fan(c: &TropicalCycle) -> Result<FanCycle, IntersectionError> {
    let r = c.ambient_dim();
    let Some(d) = c.dim() else {
        return Ok(FanCycle::try_new(TropicalCycle::zero(r)).expect("zero cycle is a fan"));
    };
    let mut sources: Vec<Vec<crate::polyhedron::HPolyhedron>> = Vec::new();
    let mut factors: Vec<Int> = Vec::new();
    for (cell, weight) in c.facets() {
        let rc = cell.recession_cone();
        if rc.dimension() == d as isize {
            sources.push(vec![rc]);
            factors.push(weight.clone());
        }
    }
    let pieces = crate::complex::overlay(&sources);
    let mut facets = Vec::new();
    for (piece, covers) in pieces {
        let w: Int = covers.iter().map(|(s, _)| factors[*s].clone()).sum();
        if !w.is_zero() {
            facets.push((piece, w));
        }
    }
    let fan = TropicalCycle::from_weighted_cells(r, facets)
        .expect("recession cones share the cycle dimension")
        .normalize();
    if !fan.validate().is_valid() {
        return Err(IntersectionError::InvalidCycle);
    }
    Ok(FanCycle::try_new(fan).expect("recession pieces are cones"))
}

/// The fan cycle representing the rational-equivalence class of a cycle.
pub fn delta(c: &TropicalCycle) -> Result<FanCycle, IntersectionError> {
    recession_fan(c)
}

/// Two cycles are rationally equivalent exactly when their recession fans
/// agree as cycles.
pub fn rationally_equivalent(
    c: &TropicalCycle,
    d: &TropicalCycle,
) -> Result<bool, IntersectionError> {
    if c.ambient_dim() != d.ambient_dim() {
        return Err(IntersectionError::DimMismatch);
    }
    Ok(delta(c)?.as_cycle().equals(delta(d)?.as_cycle()))
}

/// Compares the degree pairings of two cycles against a finite probe list.
/// Agreement is necessary for rational equivalence, never a proof of it.
pub fn numerically_equivalent_sample(
    c: &TropicalCycle,
    d: &TropicalCycle,
    probes: &[TropicalCycle],
) -> Result<bool, IntersectionError> {
    for p in probes {
        if degree_pairing(c, p)? != degree_pairing(d, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether a fan cycle is zero by the inductive reduction: complete
/// to a simplicial fan, peel one ray off each facet with that ray's support
/// function, and recover the facet weight from the divisor one dimension
/// down. The weight is forced to zero exactly when the divisor vanishes
/// recursively.
pub fn simplicial_zero_reduction(c: &FanCycle) -> bool {
    zero_reduction_step(c.as_cycle())
}

fn zero_reduction_step(x: &TropicalCycle) -> bool {
    let normalized = FanCycle::try_new(x.normalize()).expect("fan cycles normalize to fans");
    if normalized.as_cycle().facets().is_empty() {
        return true;
    }
    let completion = normalized.complete_to_simplicial();
    let cycle = completion.cycle.as_cycle();
    let Some(d) = cycle.dim() else {
        return true;
    };
    if d == 0 {
        // A fan point cycle is a weight at the origin; it survived
        // normalization, so the weight is nonzero.
        return false;
    }
    let mut divisors: BTreeMap<Vec<Int>, TropicalCycle> = BTreeMap::new();
    for (sigma, weight) in cycle.facets() {
        let gens = sigma.generators();
        debug_assert_eq!(gens.rays.len(), d);
        let v_d = gens.rays.last().expect("facet of positive dimension").clone();
        let div = divisors.entry(v_d.clone()).or_insert_with(|| {
            let phi = simplicial_ray_function(&completion.fan, &v_d)
                .expect("facet rays generate fan rays");
            phi.divisor(cycle).expect("ray functions cover the fan")
        });
        // Recover the facet weight from the divisor's weight on the facet
        // of sigma opposite v_d, scaled by the lattice index of the span of
        // that facet plus v_d inside sigma's lattice.
        let tau_rays: Vec<Vec<Rat>> = gens.rays[..d - 1]
            .iter()
            .map(|r| crate::linalg::int_to_rat_vec(r))
            .collect();
        let tau =
            crate::polyhedron::HPolyhedron::cone_from_rays(cycle.ambient_dim(), &tau_rays, &[]);
        let mut sub_rows: Vec<Vec<Int>> =
            tau.direction_lattice().rows().to_vec();
        sub_rows.push(v_d.clone());
        let sub = LatticeBasis::from_rows(cycle.ambient_dim(), &sub_rows);
        let index = lattice_index(&sub, &sigma.direction_lattice())
            .expect("sub spans sigma's directions");
        let tau_point = tau.relative_interior_point().expect("cone is nonempty");
        let recovered = div.weight_at(&tau_point) * index;
        assert_eq!(
            &recovered, weight,
            "facet weight must match the divisor weight times the lattice index"
        );
        if !zero_reduction_step(div) {
            return false;
        }
    }
    true
}

/// Both sides of the product identity for recession fans: the recession fan
/// of a stable intersection against the stable intersection of the
/// recession fans.
#[derive(Debug, Clone)]
pub struct BezoutReport {
    pub holds: bool,
    pub lhs: FanCycle,
    pub rhs: FanCycle,
}

pub fn bezout_verify(
    c: &TropicalCycle,
    d: &TropicalCycle,
) -> Result<BezoutReport, IntersectionError> {
    let lhs = recession_fan(&stable_intersect(c, d)?)?;
    let rhs_cycle = stable_intersect(recession_fan(c)?.as_cycle(), recession_fan(d)?.as_cycle())?;
    let rhs = FanCycle::try_new(rhs_cycle).expect("intersection of fans is a fan");
    let holds = lhs.as_cycle().equals(rhs.as_cycle());
    Ok(BezoutReport { holds, lhs, rhs })
}

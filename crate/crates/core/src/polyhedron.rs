//! Rational polyhedra in H-representation. Every value is canonical on
//! construction: infeasibility detected, implicit equalities surfaced into
//! a reduced equality system, inequalities reduced modulo that system,
//! scaled to primitive integer data, stripped of redundancy, and sorted.
//! Equal point sets therefore compare equal structurally.

use crate::lattice::LatticeBasis;
use crate::linalg::{dot_rat, int_to_rat_vec, nullspace, primitive_from_rat, rref};
use crate::lp::{feasible_point, maximize, LpOutcome};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("ambient dimensions do not match")]
    DimMismatch,
    #[error("operation undefined on an empty polyhedron")]
    EmptyInput,
    #[error("codimension exceeds the dimension of the polyhedron")]
    BadCodim,
    #[error("the zero form does not define a hyperplane")]
    ZeroForm,
}

pub type Constraint = (Vec<Rat>, Rat);

/// A polyhedron {x | a·x >= b, e·x = f} in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPolyhedron {
    ambient_dim: usize,
    empty: bool,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
}

/// Generator description: the polyhedron is the convex hull of `vertices`
/// plus the cone on `rays` plus the span of `lines`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Int>>,
    pub lines: Vec<Vec<Int>>,
}

impl HPolyhedron {
    pub fn from_constraints(
        ambient_dim: usize,
        inequalities: Vec<Constraint>,
        equalities: Vec<Constraint>,
    ) -> HPolyhedron {
        debug_assert!(inequalities
            .iter()
            .chain(&equalities)
            .all(|(a, _)| a.len() == ambient_dim));
        canonicalize(ambient_dim, inequalities, equalities)
    }

    pub fn full_space(ambient_dim: usize) -> HPolyhedron {
        HPolyhedron {
            ambient_dim,
            empty: false,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn empty(ambient_dim: usize) -> HPolyhedron {
        HPolyhedron {
            ambient_dim,
            empty: true,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// The single point {p}.
    pub fn point(p: &[Rat]) -> HPolyhedron {
        let n = p.len();
        let eqs = (0..n)
            .map(|i| {
                let mut a = vec![Rat::zero(); n];
                a[i] = Rat::one();
                (a, p[i].clone())
            })
            .collect();
        HPolyhedron::from_constraints(n, Vec::new(), eqs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    /// Dimension of the polyhedron; -1 for the empty set.
    pub fn dimension(&self) -> isize {
        if self.empty {
            return -1;
        }
        let normals: Vec<Vec<Rat>> = self.equalities.iter().map(|(a, _)| a.clone()).collect();
        self.ambient_dim as isize - crate::linalg::rank_rat(&normals) as isize
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        if self.empty {
            return false;
        }
        self.inequalities.iter().all(|(a, b)| dot_rat(a, x) >= *b)
            && self.equalities.iter().all(|(a, b)| dot_rat(a, x) == *b)
    }

    /// True when `x` satisfies every inequality strictly (and lies in the
    /// affine hull), i.e. lies in the relative interior.
    pub fn contains_point_strictly(&self, x: &[Rat]) -> bool {
        if self.empty {
            return false;
        }
        self.inequalities.iter().all(|(a, b)| dot_rat(a, x) > *b)
            && self.equalities.iter().all(|(a, b)| dot_rat(a, x) == *b)
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.empty || other.empty {
            return HPolyhedron::empty(self.ambient_dim);
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equalities.clone();
        eqs.extend(other.equalities.iter().cloned());
        canonicalize(self.ambient_dim, ineqs, eqs)
    }

    pub fn is_subset(&self, other: &HPolyhedron) -> bool {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.empty {
            return true;
        }
        if other.empty {
            return false;
        }
        let valid_ge = |a: &[Rat], b: &Rat| -> bool {
            // a·x >= b holds on self iff min a·x over self is >= b.
            match maximize(
                self.ambient_dim,
                &a.iter().map(|x| -x.clone()).collect::<Vec<_>>(),
                &self.inequalities,
                &self.equalities,
            ) {
                LpOutcome::Infeasible => unreachable!("self is nonempty"),
                LpOutcome::Unbounded => false,
                LpOutcome::Optimal { value, .. } => -value >= *b,
            }
        };
        other.inequalities.iter().all(|(a, b)| valid_ge(a, b))
            && other.equalities.iter().all(|(a, b)| {
                let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
                valid_ge(a, b) && valid_ge(&neg, &-b.clone())
            })
    }

    /// The recession cone {v | a·v >= 0, e·v = 0}.
    pub fn recession_cone(&self) -> HPolyhedron {
        if self.empty {
            return HPolyhedron::empty(self.ambient_dim);
        }
        let ineqs = self
            .inequalities
            .iter()
            .map(|(a, _)| (a.clone(), Rat::zero()))
            .collect();
        let eqs = self
            .equalities
            .iter()
            .map(|(a, _)| (a.clone(), Rat::zero()))
            .collect();
        canonicalize(self.ambient_dim, ineqs, eqs)
    }

    /// Faces of the given codimension (codim 0 is the polyhedron itself).
    pub fn faces(&self, codim: usize) -> Result<Vec<HPolyhedron>, GeometryError> {
        if self.empty {
            return Err(GeometryError::EmptyInput);
        }
        if codim as isize > self.dimension() {
            return Err(GeometryError::BadCodim);
        }
        let mut level = vec![self.clone()];
        for _ in 0..codim {
            let mut next = Vec::new();
            for f in &level {
                for facet in f.facet_list() {
                    if !next.contains(&facet) {
                        next.push(facet);
                    }
                }
            }
            next.sort();
            level = next;
        }
        Ok(level)
    }

    /// Codimension-one faces: one per canonical inequality.
    fn facet_list(&self) -> Vec<HPolyhedron> {
        let mut out = Vec::new();
        for (a, b) in &self.inequalities {
            let mut eqs = self.equalities.clone();
            eqs.push((a.clone(), b.clone()));
            let f = canonicalize(self.ambient_dim, self.inequalities.clone(), eqs);
            debug_assert_eq!(f.dimension(), self.dimension() - 1);
            out.push(f);
        }
        out
    }

    /// Every proper face, all codimensions, deduplicated.
    pub fn proper_faces(&self) -> Vec<HPolyhedron> {
        let mut out = Vec::new();
        let mut level = vec![self.clone()];
        loop {
            let mut next: Vec<HPolyhedron> = Vec::new();
            for f in &level {
                for facet in f.facet_list() {
                    if !next.contains(&facet) {
                        next.push(facet);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Intersections with the closed sides of the hyperplane a·x = b,
    /// in (>=, <=) order; either piece may be empty.
    pub fn triple_refine(&self, a: &[Rat], b: &Rat) -> (HPolyhedron, HPolyhedron) {
        let mut ge = self.inequalities.clone();
        ge.push((a.to_vec(), b.clone()));
        let mut le = self.inequalities.clone();
        le.push((a.iter().map(|x| -x.clone()).collect(), -b.clone()));
        (
            canonicalize(self.ambient_dim, ge, self.equalities.clone()),
            canonicalize(self.ambient_dim, le, self.equalities.clone()),
        )
    }

    pub fn translate(&self, v: &[Rat]) -> HPolyhedron {
        debug_assert_eq!(v.len(), self.ambient_dim);
        if self.empty {
            return self.clone();
        }
        let shift = |cons: &[Constraint]| -> Vec<Constraint> {
            cons.iter()
                .map(|(a, b)| (a.clone(), b + dot_rat(a, v)))
                .collect()
        };
        HPolyhedron {
            ambient_dim: self.ambient_dim,
            empty: false,
            equalities: shift(&self.equalities),
            inequalities: shift(&self.inequalities),
        }
    }

    pub fn cross(&self, other: &HPolyhedron) -> HPolyhedron {
        let n = self.ambient_dim + other.ambient_dim;
        if self.empty || other.empty {
            return HPolyhedron::empty(n);
        }
        let lift_left = |cons: &[Constraint]| -> Vec<Constraint> {
            cons.iter()
                .map(|(a, b)| {
                    let mut v = a.clone();
                    v.extend(vec![Rat::zero(); other.ambient_dim]);
                    (v, b.clone())
                })
                .collect()
        };
        let lift_right = |cons: &[Constraint]| -> Vec<Constraint> {
            cons.iter()
                .map(|(a, b)| {
                    let mut v = vec![Rat::zero(); self.ambient_dim];
                    v.extend(a.iter().cloned());
                    (v, b.clone())
                })
                .collect()
        };
        let mut ineqs = lift_left(&self.inequalities);
        ineqs.extend(lift_right(&other.inequalities));
        let mut eqs = lift_left(&self.equalities);
        eqs.extend(lift_right(&other.equalities));
        canonicalize(n, ineqs, eqs)
    }

    /// Preimage {x | m x + shift ∈ self} under an affine map into this
    /// polyhedron's space; `m` has one row per coordinate of that space.
    pub fn affine_preimage(&self, m: &[Vec<Rat>], shift: &[Rat]) -> HPolyhedron {
        debug_assert_eq!(m.len(), self.ambient_dim);
        debug_assert_eq!(shift.len(), self.ambient_dim);
        let source_dim = if m.is_empty() { 0 } else { m[0].len() };
        if self.empty {
            return HPolyhedron::empty(source_dim);
        }
        let pull = |cons: &[Constraint]| -> Vec<Constraint> {
            cons.iter()
                .map(|(a, b)| {
                    let row: Vec<Rat> = (0..source_dim)
                        .map(|j| (0..self.ambient_dim).map(|i| &a[i] * &m[i][j]).sum())
                        .collect();
                    (row, b - dot_rat(a, shift))
                })
                .collect()
        };
        canonicalize(source_dim, pull(&self.inequalities), pull(&self.equalities))
    }

    /// Image {m x + shift | x ∈ self} under an affine map out of this
    /// polyhedron's space, via the generator description.
    pub fn affine_image(&self, m: &[Vec<Rat>], shift: &[Rat]) -> HPolyhedron {
        let target_dim = m.len();
        debug_assert!(m.iter().all(|row| row.len() == self.ambient_dim));
        debug_assert_eq!(shift.len(), target_dim);
        if self.empty {
            return HPolyhedron::empty(target_dim);
        }
        let apply_lin = |v: &[Rat]| -> Vec<Rat> {
            (0..target_dim).map(|i| dot_rat(&m[i], v)).collect()
        };
        let g = self.generators();
        let vertices: Vec<Vec<Rat>> = g
            .vertices
            .iter()
            .map(|v| {
                apply_lin(v)
                    .into_iter()
                    .zip(shift)
                    .map(|(x, s)| x + s)
                    .collect()
            })
            .collect();
        let rays: Vec<Vec<Rat>> = g
            .rays
            .iter()
            .map(|r| apply_lin(&int_to_rat_vec(r)))
            .collect();
        let lines: Vec<Vec<Rat>> = g
            .lines
            .iter()
            .map(|l| apply_lin(&int_to_rat_vec(l)))
            .collect();
        HPolyhedron::from_generators(target_dim, &vertices, &rays, &lines)
    }

    /// The saturated lattice of the direction space (the lattice of the
    /// affine hull's linear part).
    pub fn direction_lattice(&self) -> LatticeBasis {
        debug_assert!(!self.empty);
        let normals: Vec<Vec<Rat>> = self.equalities.iter().map(|(a, _)| a.clone()).collect();
        let dirs = nullspace(&normals, self.ambient_dim);
        let ints: Vec<Vec<Int>> = dirs
            .iter()
            .map(|d| primitive_from_rat(d).expect("nullspace vectors are nonzero"))
            .collect();
        crate::lattice::saturate_span(self.ambient_dim, &ints)
    }

    /// A deterministic relative interior point: the vertex average plus the
    /// sum of the primitive ray generators.
    pub fn relative_interior_point(&self) -> Option<Vec<Rat>> {
        if self.empty {
            return None;
        }
        let g = self.generators();
        debug_assert!(!g.vertices.is_empty());
        let k = Rat::from_integer(Int::from(g.vertices.len() as u64));
        let mut p = vec![Rat::zero(); self.ambient_dim];
        for v in &g.vertices {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi = &*pi + vi;
            }
        }
        for x in p.iter_mut() {
            *x = &*x / &k;
        }
        for r in &g.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi = &*pi + Rat::from_integer(ri.clone());
            }
        }
        debug_assert!(self.contains_point_strictly(&p));
        Some(p)
    }

    /// Generator description via double description of the homogenization.
    pub fn generators(&self) -> Generators {
        if self.empty {
            return Generators { vertices: Vec::new(), rays: Vec::new(), lines: Vec::new() };
        }
        let n = self.ambient_dim;
        // Cone {(x,t) | a·x - b t >= 0, e·x - f t = 0, t >= 0}.
        let mut ineqs: Vec<Vec<Rat>> = Vec::new();
        for (a, b) in &self.inequalities {
            let mut row = a.clone();
            row.push(-b.clone());
            ineqs.push(row);
        }
        let mut t_pos = vec![Rat::zero(); n + 1];
        t_pos[n] = Rat::one();
        ineqs.push(t_pos);
        let eqs: Vec<Vec<Rat>> = self
            .equalities
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(-b.clone());
                row
            })
            .collect();
        let (lin, rays) = dd_cone(n + 1, &ineqs, &eqs);
        let mut vertices = Vec::new();
        let mut rec_rays = Vec::new();
        let mut lines = Vec::new();
        for l in lin {
            debug_assert!(l[n].is_zero());
            lines.push(primitive_from_rat(&l[..n]).expect("nonzero lineality"));
        }
        for r in rays {
            debug_assert!(!r[n].is_negative());
            if r[n].is_zero() {
                if let Some(p) = primitive_from_rat(&r[..n]) {
                    rec_rays.push(p);
                }
            } else {
                let t = r[n].clone();
                vertices.push(r[..n].iter().map(|x| x / &t).collect());
            }
        }
        vertices.sort();
        rec_rays.sort();
        lines.sort();
        Generators { vertices, rays: rec_rays, lines }
    }

    /// Polyhedron spanned by generators: conv(vertices) + cone(rays) +
    /// span(lines). Empty when no vertex is given.
    pub fn from_generators(
        ambient_dim: usize,
        vertices: &[Vec<Rat>],
        rays: &[Vec<Rat>],
        lines: &[Vec<Rat>],
    ) -> HPolyhedron {
        if vertices.is_empty() {
            return HPolyhedron::empty(ambient_dim);
        }
        // Valid constraints (a, c) with a·x + c >= 0 on all generators.
        let mut ineq_rows: Vec<Vec<Rat>> = Vec::new();
        for v in vertices {
            let mut row = v.clone();
            row.push(Rat::one());
            ineq_rows.push(row);
        }
        for r in rays {
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut row = r.clone();
            row.push(Rat::zero());
            ineq_rows.push(row);
        }
        let mut eq_rows: Vec<Vec<Rat>> = Vec::new();
        for l in lines {
            if l.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut row = l.clone();
            row.push(Rat::zero());
            eq_rows.push(row);
        }
        let (lin, dual_rays) = dd_cone(ambient_dim + 1, &ineq_rows, &eq_rows);
        let mut ineqs: Vec<Constraint> = Vec::new();
        let mut eqs: Vec<Constraint> = Vec::new();
        for l in lin {
            if l[..ambient_dim].iter().any(|x| !x.is_zero()) {
                eqs.push((l[..ambient_dim].to_vec(), -l[ambient_dim].clone()));
            }
        }
        for r in dual_rays {
            if r[..ambient_dim].iter().any(|x| !x.is_zero()) {
                ineqs.push((r[..ambient_dim].to_vec(), -r[ambient_dim].clone()));
            }
        }
        canonicalize(ambient_dim, ineqs, eqs)
    }

    /// The cone generated by rays and lines with apex at the origin.
    pub fn cone_from_rays(ambient_dim: usize, rays: &[Vec<Rat>], lines: &[Vec<Rat>]) -> HPolyhedron {
        HPolyhedron::from_generators(ambient_dim, &[vec![Rat::zero(); ambient_dim]], rays, lines)
    }

    /// True when the polyhedron is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        !self.empty
            && self.inequalities.iter().all(|(_, b)| b.is_zero())
            && self.equalities.iter().all(|(_, b)| b.is_zero())
    }
}

/// Canonicalization pipeline; the only constructor of nonempty values.
fn canonicalize(
    ambient_dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
) -> HPolyhedron {
    if feasible_point(ambient_dim, &inequalities, &equalities).is_none() {
        return HPolyhedron::empty(ambient_dim);
    }
    // Find implicit equalities. Fast path: a point strictly inside all
    // inequalities (maximize a slack t <= 1) proves there are none.
    let mut ineqs = inequalities;
    let mut eqs = equalities;
    if !ineqs.is_empty() {
        let n = ambient_dim + 1;
        let mut slack_cons: Vec<Constraint> = ineqs
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(-Rat::one());
                (row, b.clone())
            })
            .collect();
        let mut cap = vec![Rat::zero(); n];
        cap[ambient_dim] = -Rat::one();
        slack_cons.push((cap, -Rat::one()));
        let slack_eqs: Vec<Constraint> = eqs
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(Rat::zero());
                (row, b.clone())
            })
            .collect();
        let mut obj = vec![Rat::zero(); n];
        obj[ambient_dim] = Rat::one();
        let strict = match maximize(n, &obj, &slack_cons, &slack_eqs) {
            LpOutcome::Optimal { value, .. } => value.is_positive(),
            _ => false,
        };
        if !strict {
            let mut implicit = vec![false; ineqs.len()];
            for i in 0..ineqs.len() {
                let (a, b) = ineqs[i].clone();
                let mut capped = ineqs.clone();
                capped.push((a.iter().map(|x| -x.clone()).collect(), -(b.clone() + Rat::one())));
                match maximize(ambient_dim, &a, &capped, &eqs) {
                    LpOutcome::Optimal { value, .. } => {
                        if value == b {
                            implicit[i] = true;
                        }
                    }
                    // Unbounded or pushed past the cap by other constraints:
                    // a·x exceeds b somewhere, so the inequality is strict.
                    LpOutcome::Unbounded | LpOutcome::Infeasible => {}
                }
            }
            let mut kept = Vec::new();
            for (i, c) in ineqs.into_iter().enumerate() {
                if implicit[i] {
                    eqs.push(c);
                } else {
                    kept.push(c);
                }
            }
            ineqs = kept;
        }
    }
    // Reduce the equality system to scaled reduced row echelon form.
    let eq_rows: Vec<Vec<Rat>> = eqs
        .iter()
        .map(|(a, b)| {
            let mut row = a.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let (eq_rref, eq_pivots) = rref(&eq_rows);
    debug_assert!(eq_pivots.iter().all(|&p| p < ambient_dim), "inconsistent equalities");
    let equalities: Vec<Constraint> = eq_rref
        .iter()
        .map(|row| {
            let prim = primitive_from_rat(row).expect("rref rows are nonzero");
            let mut prim = int_to_rat_vec(&prim);
            // Primitive scaling keeps the sign of the leading entry, which
            // rref made positive (it is 1).
            let b = prim.pop().unwrap();
            (prim, b)
        })
        .collect();
    // Reduce inequalities modulo the equality rows, scale primitive, dedup.
    let mut reduced: Vec<Constraint> = Vec::new();
    for (a, b) in &ineqs {
        let mut row = a.clone();
        row.push(b.clone());
        for (er, &p) in eq_rref.iter().zip(&eq_pivots) {
            if !row[p].is_zero() {
                let f = &row[p] / &er[p];
                for (rj, ej) in row.iter_mut().zip(er) {
                    let t = ej * &f;
                    *rj = &*rj - t;
                }
            }
        }
        let b = row.pop().unwrap();
        if row.iter().all(|x| x.is_zero()) {
            debug_assert!(!b.is_positive(), "infeasible after reduction");
            continue;
        }
        let scale = {
            let mut full = row.clone();
            full.push(b.clone());
            let prim = primitive_from_rat(&full).unwrap();
            // Positive multiple: divide by the (positive) ratio of norms.
            let idx = row.iter().position(|x| !x.is_zero()).unwrap();
            &Rat::from_integer(prim[idx].clone()) / &row[idx]
        };
        debug_assert!(scale.is_positive());
        let a_p: Vec<Rat> = row.iter().map(|x| x * &scale).collect();
        let b_p = &b * &scale;
        if let Some(existing) = reduced.iter_mut().find(|(ea, _)| *ea == a_p) {
            if b_p > existing.1 {
                existing.1 = b_p;
            }
        } else {
            reduced.push((a_p, b_p));
        }
    }
    // Strip redundant inequalities one at a time.
    let mut idx = 0;
    reduced.sort();
    while idx < reduced.len() {
        let (a, b) = reduced[idx].clone();
        let mut others: Vec<Constraint> = reduced
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, c)| c.clone())
            .collect();
        // Cap from above by b to bound the minimization.
        others.push((a.iter().map(|x| -x.clone()).collect(), -b.clone()));
        let redundant = match maximize(
            ambient_dim,
            &a.iter().map(|x| -x.clone()).collect::<Vec<_>>(),
            &others,
            &equalities,
        ) {
            LpOutcome::Optimal { value, .. } => -value >= b,
            LpOutcome::Unbounded => false,
            // The rest of the system stays off {a·x <= b}: a·x > b there.
            LpOutcome::Infeasible => true,
        };
        if redundant {
            reduced.remove(idx);
        } else {
            idx += 1;
        }
    }
    HPolyhedron {
        ambient_dim,
        empty: false,
        equalities,
        inequalities: reduced,
    }
}

/// Bit set sized for constraint counts in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
struct TightSet(Vec<u64>);

impl TightSet {
    fn new(n: usize) -> TightSet {
        TightSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersection(&self, other: &TightSet) -> TightSet {
        TightSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Double description of {y | i·y >= 0 for i in ineqs, e·y = 0 for e in eqs}:
/// returns (lineality basis, extreme rays modulo lineality), both exact.
pub fn dd_cone(
    dim: usize,
    ineqs: &[Vec<Rat>],
    eqs: &[Vec<Rat>],
) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let nineq = ineqs.len();
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    let mut rays: Vec<(Vec<Rat>, TightSet)> = Vec::new();

    let project = |v: &[Rat], l0: &[Rat], a: &[Rat], val_l0: &Rat| -> Vec<Rat> {
        let f = dot_rat(a, v) / val_l0;
        v.iter()
            .zip(l0)
            .map(|(x, y)| {
                let t = y * &f;
                x - t
            })
            .collect()
    };

    let handle = |a: &[Rat],
                      is_eq: bool,
                      idx: Option<usize>,
                      lineality: &mut Vec<Vec<Rat>>,
                      rays: &mut Vec<(Vec<Rat>, TightSet)>| {
        if let Some(pos) = lineality.iter().position(|l| !dot_rat(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut val = dot_rat(a, &l0);
            if val.is_negative() {
                for x in l0.iter_mut() {
                    *x = -x.clone();
                }
                val = -val;
            }
            for l in lineality.iter_mut() {
                *l = project(l, &l0, a, &val);
            }
            for (r, t) in rays.iter_mut() {
                // Projection lands every existing ray on {a·y = 0}.
                *r = project(r, &l0, a, &val);
                if let Some(c) = idx {
                    t.insert(c);
                }
            }
            if !is_eq {
                // The absorbed lineality direction becomes a ray, tight for
                // every previously processed inequality but not this one.
                let mut tight = TightSet::new(nineq);
                if let Some(i) = idx {
                    for j in 0..i {
                        tight.insert(j);
                    }
                }
                rays.push((l0, tight));
            }
            return;
        }
        let vals: Vec<Rat> = rays.iter().map(|(r, _)| dot_rat(a, r)).collect();
        let mut new_rays: Vec<(Vec<Rat>, TightSet)> = Vec::new();
        for (i, (r, t)) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut t = t.clone();
                if let Some(c) = idx {
                    t.insert(c);
                }
                new_rays.push((r.clone(), t));
            } else if vals[i].is_positive() && !is_eq {
                new_rays.push((r.clone(), t.clone()));
            }
        }
        for ip in 0..rays.len() {
            if !vals[ip].is_positive() {
                continue;
            }
            for im in 0..rays.len() {
                if !vals[im].is_negative() {
                    continue;
                }
                let common = rays[ip].1.intersection(&rays[im].1);
                let adjacent = rays.iter().enumerate().all(|(k, (_, tk))| {
                    k == ip || k == im || !common.is_subset_of(tk)
                });
                if !adjacent {
                    continue;
                }
                let (rp, rm) = (&rays[ip].0, &rays[im].0);
                let combo: Vec<Rat> = rp
                    .iter()
                    .zip(rm)
                    .map(|(p, m)| {
                        let t1 = p * &-vals[im].clone();
                        let t2 = m * &vals[ip];
                        t1 + t2
                    })
                    .collect();
                debug_assert!(dot_rat(a, &combo).is_zero());
                let mut t = common;
                if let Some(c) = idx {
                    t.insert(c);
                }
                if !combo.iter().all(|x| x.is_zero()) {
                    new_rays.push((combo, t));
                }
            }
        }
        // Deduplicate parallel rays for safety in degenerate inputs.
        let mut seen: Vec<Vec<Int>> = Vec::new();
        let mut deduped = Vec::new();
        for (r, t) in new_rays {
            let p = primitive_from_rat(&r).expect("zero combos filtered");
            if !seen.contains(&p) {
                seen.push(p);
                deduped.push((r, t));
            }
        }
        *rays = deduped;
    };

    for e in eqs {
        handle(e, true, None, &mut lineality, &mut rays);
    }
    for (i, a) in ineqs.iter().enumerate() {
        handle(a, false, Some(i), &mut lineality, &mut rays);
    }

    let mut lin_out: Vec<Vec<Rat>> = {
        let (r, _) = rref(&lineality);
        r.iter()
            .map(|row| int_to_rat_vec(&primitive_from_rat(row).unwrap()))
            .collect()
    };
    lin_out.sort();
    let mut ray_out: Vec<Vec<Rat>> = rays
        .iter()
        .map(|(r, _)| int_to_rat_vec(&primitive_from_rat(r).expect("nonzero rays")))
        .collect();
    ray_out.sort();
    (lin_out, ray_out)
}

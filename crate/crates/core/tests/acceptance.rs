//! Acceptance suite for the library: one test per advertised guarantee,
//! each ending in a single printed pass line. Randomized checks use a
//! fixed-seed ChaCha stream so every run sees the same instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropint::function::simplicial_ray_function;
use tropint::intersection::{
    bezout_verify, degree_pairing, numerically_equivalent_sample, rationally_equivalent,
    recession_fan, simplicial_zero_reduction, stable_intersect,
};
use tropint::lattice::lattice_index;
use tropint::morphism::translation_witness;
use tropint::{
    rat, rat_int, FanCycle, HPolyhedron, Int, IntegerAffineMap, LatticeBasis, Rat, TropicalCycle,
    TropicalPolynomial,
};

fn rv(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat_int(x)).collect()
}

fn ray2(d: &[i64]) -> HPolyhedron {
    HPolyhedron::cone_from_rays(2, &[rv(d)], &[])
}

/// Tropical line through the origin: rays -e1, -e2, e1+e2.
fn l1() -> TropicalCycle {
    TropicalCycle::from_weighted_cells(
        2,
        vec![
            (ray2(&[-1, 0]), Int::from(1)),
            (ray2(&[0, -1]), Int::from(1)),
            (ray2(&[1, 1]), Int::from(1)),
        ],
    )
    .unwrap()
}

/// Union of the two coordinate axes, all four rays weight 1.
fn axes_cross() -> TropicalCycle {
    TropicalCycle::from_weighted_cells(
        2,
        vec![
            (ray2(&[1, 0]), Int::from(1)),
            (ray2(&[-1, 0]), Int::from(1)),
            (ray2(&[0, 1]), Int::from(1)),
            (ray2(&[0, -1]), Int::from(1)),
        ],
    )
    .unwrap()
}

/// One-dimensional fan with a non-unimodular completion: its simplicial
/// completion contains two cones of lattice index 2.
fn skew_fan() -> TropicalCycle {
    TropicalCycle::from_weighted_cells(
        2,
        vec![
            (ray2(&[1, 0]), Int::from(1)),
            (ray2(&[-1, 2]), Int::from(1)),
            (ray2(&[0, -1]), Int::from(2)),
        ],
    )
    .unwrap()
}

/// Degree two curve: divisor of a smooth quadratic on the plane.
fn deg2_curve() -> TropicalCycle {
    let e = |a: i64, b: i64| vec![Int::from(a), Int::from(b)];
    let f = TropicalPolynomial::new(
        2,
        vec![
            (e(0, 0), rat_int(0)),
            (e(1, 0), rat_int(1)),
            (e(0, 1), rat_int(1)),
            (e(2, 0), rat_int(0)),
            (e(1, 1), rat_int(2)),
            (e(0, 2), rat_int(0)),
        ],
    )
    .unwrap();
    f.piecewise()
        .divisor(&TropicalCycle::constant(2, Int::from(1)))
        .unwrap()
}

/// Tropical line in 3-space: rays -e1, -e2, -e3, e1+e2+e3.
fn line3() -> TropicalCycle {
    let ray = |d: &[i64]| {
        HPolyhedron::cone_from_rays(3, &[d.iter().map(|&x| rat_int(x)).collect()], &[])
    };
    TropicalCycle::from_weighted_cells(
        3,
        vec![
            (ray(&[-1, 0, 0]), Int::from(1)),
            (ray(&[0, -1, 0]), Int::from(1)),
            (ray(&[0, 0, -1]), Int::from(1)),
            (ray(&[1, 1, 1]), Int::from(1)),
        ],
    )
    .unwrap()
}

/// Tropical plane in 3-space: divisor of max(0, x, y, z).
fn hyperplane3() -> TropicalCycle {
    let e = |a: i64, b: i64, c: i64| vec![Int::from(a), Int::from(b), Int::from(c)];
    let f = TropicalPolynomial::new(
        3,
        vec![
            (e(0, 0, 0), rat_int(0)),
            (e(1, 0, 0), rat_int(0)),
            (e(0, 1, 0), rat_int(0)),
            (e(0, 0, 1), rat_int(0)),
        ],
    )
    .unwrap();
    f.piecewise()
        .divisor(&TropicalCycle::constant(3, Int::from(1)))
        .unwrap()
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let num = rng.gen_range(-6i64..=6);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1i64..=3);
        return rat(num, den);
    }
}

/// Probe cycles for the sampled equivalence check: translated multiples of
/// coordinate subspace cycles of dimension `k` in R^r.
fn probe_cycles(r: usize, k: usize, count: usize, seed: u64) -> Vec<TropicalCycle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mask: Vec<usize> = {
            let mut idx: Vec<usize> = (0..r).collect();
            for i in (1..idx.len()).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            idx.into_iter().take(k).collect()
        };
        let lines: Vec<Vec<Rat>> = mask
            .iter()
            .map(|&i| {
                let mut v = rv(&vec![0; r]);
                v[i] = rat_int(1);
                v
            })
            .collect();
        let cell = HPolyhedron::cone_from_rays(r, &[], &lines);
        let w = Int::from(rng.gen_range(1i64..=3));
        let shift: Vec<Rat> = (0..r).map(|_| rat(rng.gen_range(-10i64..=10), 2)).collect();
        let cycle = TropicalCycle::from_weighted_cells(r, vec![(cell, w)])
            .unwrap()
            .translate(&shift);
        out.push(cycle);
    }
    out
}

#[test]
fn criterion_01_balancing_corpus() {
    let swap = IntegerAffineMap::from_integer_matrix(
        vec![vec![Int::from(0), Int::from(1)], vec![Int::from(1), Int::from(0)]],
        rv(&[0, 0]),
    );
    let line_poly = TropicalPolynomial::new(
        2,
        vec![
            (vec![Int::from(0), Int::from(0)], rat_int(0)),
            (vec![Int::from(1), Int::from(0)], rat_int(0)),
            (vec![Int::from(0), Int::from(1)], rat_int(0)),
        ],
    )
    .unwrap();
    let xaxis = HPolyhedron::cone_from_rays(2, &[], &[rv(&[1, 0])]);
    let diag = HPolyhedron::cone_from_rays(2, &[], &[rv(&[1, 1])]);
    let witness = translation_witness(&l1(), 0, &rat_int(2)).unwrap();

    let corpus: Vec<(&str, TropicalCycle)> = vec![
        ("line", l1()),
        ("double line", l1().scalar_multiply(&Int::from(2))),
        ("triple line", l1().scalar_multiply(&Int::from(3))),
        ("translated line", l1().translate(&rv(&[3, 0]))),
        ("rationally translated line", l1().translate(&[rat(-1, 2), rat(7, 3)])),
        ("axes cross", axes_cross()),
        ("skew fan", skew_fan()),
        ("degree two curve", deg2_curve()),
        ("translated curve", deg2_curve().translate(&rv(&[-2, 5]))),
        ("line in 3-space", line3()),
        ("plane in 3-space", hyperplane3()),
        ("weighted plane", TropicalCycle::constant(2, Int::from(2))),
        ("ambient 3-space", TropicalCycle::constant(3, Int::from(1))),
        ("point", TropicalCycle::point(&rv(&[0, 0]), Int::from(1))),
        (
            "point pair",
            TropicalCycle::from_weighted_cells(
                2,
                vec![
                    (HPolyhedron::point(&rv(&[1, 4])), Int::from(2)),
                    (HPolyhedron::point(&rv(&[-2, 0])), Int::from(-2)),
                ],
            )
            .unwrap(),
        ),
        ("zero cycle", TropicalCycle::zero(2)),
        ("product of lines", l1().cross_product(&l1())),
        ("cylinder over the line", l1().cross_product(&TropicalCycle::constant(1, Int::from(1)))),
        (
            "weighted axis",
            TropicalCycle::from_weighted_cells(2, vec![(xaxis, Int::from(3))]).unwrap(),
        ),
        (
            "weighted diagonal",
            TropicalCycle::from_weighted_cells(2, vec![(diag, Int::from(2))]).unwrap(),
        ),
        ("divisor output", line_poly.piecewise().divisor(&TropicalCycle::constant(2, Int::from(1))).unwrap()),
        ("push-forward output", swap.push_forward(&deg2_curve()).unwrap()),
        ("intersection output", stable_intersect(&l1(), &deg2_curve()).unwrap()),
        ("recession output", recession_fan(&deg2_curve().translate(&rv(&[4, 1]))).unwrap().into_inner()),
        ("witness cylinder", witness.cylinder.clone()),
        ("witness difference", witness.difference.clone()),
    ];
    assert!(corpus.len() >= 20, "corpus must hold at least 20 cycles");
    for (name, cycle) in &corpus {
        let report = cycle.validate();
        assert!(report.is_valid(), "{name} failed validation: {report:?}");
    }
    println!("criterion 1 (balancing corpus, {} cycles): PASS", corpus.len());
}

#[test]
fn criterion_02_translation_witnesses() {
    let pool: Vec<TropicalCycle> = vec![
        l1(),
        l1().scalar_multiply(&Int::from(2)),
        deg2_curve(),
        axes_cross(),
        TropicalCycle::point(&rv(&[2, -3]), Int::from(3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(02_2112);
    for k in 0..10 {
        let cycle = &pool[k % pool.len()];
        let coord = k % 2;
        let mu = nonzero_rat(&mut rng);
        let witness = translation_witness(cycle, coord, &mu).unwrap();
        assert!(
            witness.verify(),
            "witness {k} failed for coordinate {coord}, shift {mu}"
        );
    }
    println!("criterion 2 (translation witnesses x10): PASS");
}

#[test]
fn criterion_03_simplicial_completions() {
    let fans: Vec<(&str, TropicalCycle)> = vec![
        ("line", l1()),
        ("double line", l1().scalar_multiply(&Int::from(2))),
        ("axes cross", axes_cross()),
        ("skew fan", skew_fan()),
        ("weighted plane", TropicalCycle::constant(2, Int::from(2))),
        ("line in 3-space", line3()),
    ];
    assert!(fans.len() >= 5);
    for (name, cycle) in &fans {
        let fan_cycle = FanCycle::try_new(cycle.clone()).unwrap();
        let completion = fan_cycle.complete_to_simplicial();
        assert!(completion.fan.is_complete(), "{name}: completion not complete");
        assert!(completion.fan.is_simplicial(), "{name}: completion not simplicial");
        assert!(
            completion.cycle.as_cycle().equals(cycle),
            "{name}: completion changed the cycle"
        );
    }
    println!("criterion 3 (simplicial completions x{}): PASS", fans.len());
}

/// For each facet sigma of a simplicial fan cycle, the divisor of the ray
/// function of sigma's last ray carries weight w(sigma)/index on the
/// opposite face, where the index is computed independently from lattice
/// normal forms.
#[test]
fn criterion_04_ray_function_coefficients() {
    let mut instances: Vec<TropicalCycle> = vec![skew_fan(), l1()];
    // Two-dimensional instances: the full 2-skeletons of the completions,
    // weighted so every quotient index divides the facet weight.
    for base in [skew_fan(), l1()] {
        let completion = FanCycle::try_new(base).unwrap().complete_to_simplicial();
        let cells: Vec<_> = completion
            .fan
            .maximal_cells()
            .iter()
            .map(|c| (c.clone(), Int::from(2)))
            .collect();
        instances.push(TropicalCycle::from_weighted_cells(2, cells).unwrap());
    }

    let mut checks = 0usize;
    let mut nontrivial_indices = 0usize;
    for x in &instances {
        let completion = FanCycle::try_new(x.clone()).unwrap().complete_to_simplicial();
        let cycle = completion.cycle.as_cycle();
        let d = cycle.dim().unwrap();
        for (sigma, weight) in cycle.facets() {
            let gens = sigma.generators();
            assert_eq!(gens.rays.len(), d, "completion facets are simplicial cones");
            let v_d = gens.rays.last().unwrap().clone();
            let phi = simplicial_ray_function(&completion.fan, &v_d).unwrap();
            let div = phi.divisor(cycle).unwrap();

            let tau_rays: Vec<Vec<Rat>> = gens.rays[..d - 1]
                .iter()
                .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect();
            let tau = HPolyhedron::cone_from_rays(2, &tau_rays, &[]);
            let computed = div.weight_at(&tau.relative_interior_point().unwrap());

            // Independent index: Smith form of the sublattice spanned by
            // tau's directions and v_d inside sigma's direction lattice.
            let mut rows = tau.direction_lattice().rows().to_vec();
            rows.push(v_d.clone());
            let sub = LatticeBasis::from_rows(2, &rows);
            let index = lattice_index(&sub, &sigma.direction_lattice()).unwrap();
            if index > Int::from(1) {
                nontrivial_indices += 1;
            }
            assert_eq!(
                computed * &index,
                weight.clone(),
                "divisor weight times index must recover the facet weight"
            );
            checks += 1;
        }
    }
    assert!(checks >= 15, "expected a substantial instance set, got {checks}");
    assert!(
        nontrivial_indices >= 2,
        "instance set must exercise lattice index > 1"
    );
    println!(
        "criterion 4 (ray function coefficients, {checks} facets, {nontrivial_indices} with index > 1): PASS"
    );
}

#[test]
fn criterion_05_zero_test_matches_support_equality() {
    let quadrant = |sx: i64, sy: i64| {
        HPolyhedron::cone_from_rays(2, &[rv(&[sx, 0]), rv(&[0, sy])], &[])
    };
    let quadrants_minus_plane = TropicalCycle::from_weighted_cells(
        2,
        vec![
            (quadrant(1, 1), Int::from(1)),
            (quadrant(-1, 1), Int::from(1)),
            (quadrant(-1, -1), Int::from(1)),
            (quadrant(1, -1), Int::from(1)),
            (HPolyhedron::full_space(2), Int::from(-1)),
        ],
    )
    .unwrap();
    let halves_minus_plane = TropicalCycle::from_weighted_cells(
        2,
        vec![
            (
                HPolyhedron::cone_from_rays(2, &[rv(&[1, 0])], &[rv(&[0, 1])]),
                Int::from(2),
            ),
            (
                HPolyhedron::cone_from_rays(2, &[rv(&[-1, 0])], &[rv(&[0, 1])]),
                Int::from(2),
            ),
            (HPolyhedron::full_space(2), Int::from(-2)),
        ],
    )
    .unwrap();

    let cases: Vec<(&str, TropicalCycle, bool)> = vec![
        ("zero in the plane", TropicalCycle::zero(2), true),
        ("zero in 3-space", TropicalCycle::zero(3), true),
        ("line", l1(), false),
        ("double line", l1().scalar_multiply(&Int::from(2)), false),
        ("axes cross", axes_cross(), false),
        ("skew fan", skew_fan(), false),
        ("plane", TropicalCycle::constant(2, Int::from(1)), false),
        ("line in 3-space", line3(), false),
        ("line minus itself", l1().subtract(&l1()).unwrap(), true),
        ("quadrants minus plane", quadrants_minus_plane, true),
        ("half-planes minus plane", halves_minus_plane, true),
        ("negative point", TropicalCycle::point(&rv(&[0, 0]), Int::from(-3)), false),
    ];
    assert!(cases.len() >= 10);
    for (name, cycle, expect_zero) in &cases {
        let fan = FanCycle::try_new(cycle.clone()).unwrap();
        let reduced = simplicial_zero_reduction(&fan);
        let by_equals = cycle.equals(&TropicalCycle::zero(cycle.ambient_dim()));
        assert_eq!(reduced, by_equals, "{name}: reduction disagrees with equality");
        assert_eq!(reduced, *expect_zero, "{name}: unexpected verdict");
    }
    println!("criterion 5 (zero test vs equality, {} fan cycles): PASS", cases.len());
}

#[test]
fn criterion_06_equivalence_coherence() {
    let sum = l1().add(&l1().translate(&rv(&[5, -1]))).unwrap();
    let pairs: Vec<(&str, TropicalCycle, TropicalCycle, bool)> = vec![
        ("line vs translate", l1(), l1().translate(&rv(&[2, 3])), true),
        (
            "line vs refinement",
            l1(),
            l1().refine_by_hyperplane(&rv(&[1, 2]), &rat(1, 2)).unwrap(),
            true,
        ),
        ("line vs double line", l1(), l1().scalar_multiply(&Int::from(2)), false),
        ("curve vs double line", deg2_curve(), l1().scalar_multiply(&Int::from(2)), true),
        ("curve vs line", deg2_curve(), l1(), false),
        ("sum of lines vs double line", sum, l1().scalar_multiply(&Int::from(2)), true),
        ("axes vs line", axes_cross(), l1(), false),
        (
            "axes vs translated axes",
            axes_cross(),
            axes_cross().translate(&[rat(1, 2), rat_int(-3)]),
            true,
        ),
        (
            "point vs distant point",
            TropicalCycle::point(&rv(&[1, 4]), Int::from(5)),
            TropicalCycle::point(&rv(&[-2, 0]), Int::from(5)),
            true,
        ),
        (
            "point vs opposite point",
            TropicalCycle::point(&rv(&[1, 4]), Int::from(5)),
            TropicalCycle::point(&rv(&[1, 4]), Int::from(-5)),
            false,
        ),
        ("cancelled line vs zero", l1().subtract(&l1()).unwrap(), TropicalCycle::zero(2), true),
        (
            "plane vs moved plane",
            TropicalCycle::constant(2, Int::from(2)),
            TropicalCycle::constant(2, Int::from(2)).translate(&rv(&[9, 9])),
            true,
        ),
    ];
    assert!(pairs.len() >= 10);
    for (i, (name, a, b, expected)) in pairs.iter().enumerate() {
        let verdict = rationally_equivalent(a, b).unwrap();
        let by_delta = recession_fan(a)
            .unwrap()
            .as_cycle()
            .equals(recession_fan(b).unwrap().as_cycle());
        assert_eq!(verdict, by_delta, "{name}: verdict must match recession fan equality");
        assert_eq!(verdict, *expected, "{name}: unexpected verdict");
        if verdict {
            let r = a.ambient_dim();
            let k = r - a.dim().or(b.dim()).unwrap_or(1).min(r);
            let probes = probe_cycles(r, k, 5, 600 + i as u64);
            assert!(
                numerically_equivalent_sample(a, b, &probes).unwrap(),
                "{name}: equivalent cycles must pair equally against probes"
            );
        }
    }
    println!("criterion 6 (equivalence coherence, {} pairs): PASS", pairs.len());
}

/// Counts intersection points of two curves in the plane assuming every
/// crossing is transverse and interior to a facet of each; multiplicity is
/// the weight product times |det| of the primitive directions. Returns None
/// when the position is degenerate, so callers can detect bad instances.
fn transverse_degree(c: &TropicalCycle, d: &TropicalCycle) -> Option<Int> {
    let mut total = Int::from(0);
    for (a, wa) in c.facets() {
        for (b, wb) in d.facets() {
            let m = a.intersect(b);
            if m.is_empty() {
                continue;
            }
            if m.dimension() != 0 {
                return None;
            }
            let p = m.relative_interior_point()?;
            if !a.contains_point_strictly(&p) || !b.contains_point_strictly(&p) {
                return None;
            }
            let la = a.direction_lattice();
            let lb = b.direction_lattice();
            let (u, v) = (&la.rows()[0], &lb.rows()[0]);
            let det = &u[0] * &v[1] - &u[1] * &v[0];
            let mag = if det < Int::from(0) { -det } else { det };
            total += wa * wb * mag;
        }
    }
    Some(total)
}

#[test]
fn criterion_07_line_degrees() {
    for d in 1i64..=3 {
        for e in 1i64..=3 {
            let a = l1()
                .scalar_multiply(&Int::from(d))
                .translate(&[rat(7 + 3 * d, 3), rat(-5 + 7 * d, 7)]);
            let b = l1().scalar_multiply(&Int::from(e));
            let paired = degree_pairing(&a, &b).unwrap();
            assert_eq!(paired, Int::from(d * e), "pairing of degrees {d} and {e}");
            let counted = transverse_degree(&a, &b)
                .expect("translated lines must be in general position");
            assert_eq!(counted, paired, "transverse count of degrees {d} and {e}");
        }
    }
    println!("criterion 7 (line degrees d*e for d,e <= 3, both methods): PASS");
}

#[test]
fn criterion_08_product_identity() {
    let pairs: Vec<(&str, TropicalCycle, TropicalCycle)> = vec![
        ("line self", l1(), l1()),
        ("line vs translate", l1(), l1().translate(&rv(&[3, 0]))),
        (
            "weighted lines",
            l1().scalar_multiply(&Int::from(2)).translate(&rv(&[1, -5])),
            l1().scalar_multiply(&Int::from(3)),
        ),
        ("curve vs line", deg2_curve(), l1()),
        ("curve self", deg2_curve(), deg2_curve()),
        ("curve vs moved curve", deg2_curve().translate(&[rat(5, 2), rat(-7, 3)]), deg2_curve()),
        ("line vs axes", l1(), axes_cross()),
        ("axes vs moved axes", axes_cross().translate(&rv(&[2, 1])), axes_cross()),
        ("space line vs plane", line3(), hyperplane3()),
        ("plane vs point", TropicalCycle::constant(2, Int::from(2)), TropicalCycle::point(&rv(&[1, -1]), Int::from(3))),
        ("line vs point", l1(), TropicalCycle::point(&rv(&[4, 4]), Int::from(2))),
    ];
    assert!(pairs.len() >= 10);
    for (name, a, b) in &pairs {
        let report = bezout_verify(a, b).unwrap();
        assert!(
            report.holds,
            "{name}: recession of the intersection differs from intersection of recessions"
        );
    }
    println!("criterion 8 (recession fan product identity, {} pairs): PASS", pairs.len());
}

#[test]
fn criterion_09_degree_conservation() {
    let maps2: Vec<IntegerAffineMap> = vec![
        IntegerAffineMap::from_integer_matrix(vec![vec![Int::from(1), Int::from(0)]], vec![rat_int(0)]),
        IntegerAffineMap::from_integer_matrix(vec![vec![Int::from(3), Int::from(1)]], vec![rat(1, 2)]),
        IntegerAffineMap::from_integer_matrix(
            vec![vec![Int::from(1), Int::from(1)], vec![Int::from(0), Int::from(1)]],
            vec![rat(1, 2), rat_int(-2)],
        ),
        IntegerAffineMap::from_integer_matrix(
            vec![vec![Int::from(2), Int::from(0)], vec![Int::from(0), Int::from(1)]],
            rv(&[0, 0]),
        ),
        IntegerAffineMap::from_integer_matrix(
            vec![vec![Int::from(1), Int::from(0)], vec![Int::from(0), Int::from(0)]],
            rv(&[0, 0]),
        ),
    ];
    let perm3 = IntegerAffineMap::from_integer_matrix(
        vec![
            vec![Int::from(0), Int::from(1), Int::from(0)],
            vec![Int::from(0), Int::from(0), Int::from(1)],
            vec![Int::from(1), Int::from(0), Int::from(0)],
        ],
        rv(&[0, 0, 0]),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(09_0451);
    for k in 0..10 {
        let r = if k >= 8 { 3 } else { 2 };
        let n_pts = 2 + k % 3;
        let mut facets = Vec::new();
        for _ in 0..n_pts {
            let p: Vec<Rat> = (0..r).map(|_| rat(rng.gen_range(-10i64..=10), 2)).collect();
            let w = *[-2i64, -1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
            facets.push((HPolyhedron::point(&p), Int::from(w)));
        }
        let cycle = TropicalCycle::from_weighted_cells(r, facets).unwrap();
        let map = if r == 3 { &perm3 } else { &maps2[k % maps2.len()] };
        let pushed = map.push_forward(&cycle).unwrap();
        assert_eq!(
            pushed.point_degree().unwrap(),
            cycle.point_degree().unwrap(),
            "instance {k}: push-forward changed the degree"
        );
    }
    println!("criterion 9 (degree conservation under push-forward x10): PASS");
}

#[test]
fn criterion_10_refinement_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_1982);
    let mut random_form = |r: usize| -> (Vec<Rat>, Rat) {
        loop {
            let a: Vec<Rat> = (0..r).map(|_| rat_int(rng.gen_range(-3i64..=3))).collect();
            if a.iter().all(|x| x == &rat_int(0)) {
                continue;
            }
            let b = rat(rng.gen_range(-8i64..=8), 2);
            return (a, b);
        }
    };
    let line_poly = TropicalPolynomial::new(
        2,
        vec![
            (vec![Int::from(0), Int::from(0)], rat_int(0)),
            (vec![Int::from(1), Int::from(0)], rat_int(0)),
            (vec![Int::from(0), Int::from(1)], rat_int(0)),
        ],
    )
    .unwrap()
    .piecewise();

    let divisor_targets: Vec<TropicalCycle> = vec![
        TropicalCycle::constant(2, Int::from(1)),
        TropicalCycle::constant(2, Int::from(2)),
        TropicalCycle::constant(2, Int::from(1)).translate(&rv(&[1, 1])),
        deg2_curve(),
        l1(),
        l1().scalar_multiply(&Int::from(2)),
        l1().translate(&rv(&[1, -5])),
        axes_cross(),
        skew_fan(),
        deg2_curve().translate(&[rat(1, 2), rat_int(0)]),
    ];
    for (k, target) in divisor_targets.iter().enumerate() {
        let (a, b) = random_form(2);
        let refined = target.refine_by_hyperplane(&a, &b).unwrap();
        let d1 = line_poly.divisor(target).unwrap();
        let d2 = line_poly.divisor(&refined).unwrap();
        assert!(d1.equals(&d2), "divisor instance {k} changed under refinement");
    }

    let intersect_pairs: Vec<(TropicalCycle, TropicalCycle)> = vec![
        (l1(), l1()),
        (l1(), l1().translate(&rv(&[3, 0]))),
        (l1().scalar_multiply(&Int::from(2)), l1().translate(&rv(&[1, -5]))),
        (axes_cross(), l1()),
        (axes_cross(), axes_cross().translate(&rv(&[1, 1]))),
        (l1(), TropicalCycle::constant(2, Int::from(1))),
        (TropicalCycle::point(&rv(&[2, 2]), Int::from(3)), TropicalCycle::constant(2, Int::from(1))),
        (skew_fan(), l1()),
        (deg2_curve(), l1()),
        (l1().translate(&[rat(1, 3), rat(2, 5)]), axes_cross()),
    ];
    for (k, (c, d)) in intersect_pairs.iter().enumerate() {
        let (a, b) = random_form(2);
        let refined = c.refine_by_hyperplane(&a, &b).unwrap();
        let z1 = stable_intersect(c, d).unwrap();
        let z2 = stable_intersect(&refined, d).unwrap();
        assert!(z1.equals(&z2), "intersection instance {k} changed under refinement");
    }

    let delta_targets: Vec<TropicalCycle> = vec![
        l1(),
        l1().translate(&rv(&[2, 3])),
        l1().scalar_multiply(&Int::from(3)),
        deg2_curve(),
        deg2_curve().translate(&rv(&[-1, 4])),
        axes_cross(),
        skew_fan(),
        TropicalCycle::constant(2, Int::from(2)),
        TropicalCycle::point(&rv(&[5, -5]), Int::from(2)),
        l1().add(&l1().translate(&rv(&[4, 0]))).unwrap(),
    ];
    for (k, c) in delta_targets.iter().enumerate() {
        let (a, b) = random_form(2);
        let refined = c.refine_by_hyperplane(&a, &b).unwrap();
        let f1 = recession_fan(c).unwrap();
        let f2 = recession_fan(&refined).unwrap();
        assert!(
            f1.as_cycle().equals(f2.as_cycle()),
            "recession instance {k} changed under refinement"
        );
    }

    let pairing_pairs: Vec<(TropicalCycle, TropicalCycle)> = vec![
        (l1(), l1()),
        (l1(), l1().translate(&rv(&[3, 0]))),
        (l1().scalar_multiply(&Int::from(2)), l1().scalar_multiply(&Int::from(3))),
        (deg2_curve(), l1()),
        (deg2_curve(), l1().scalar_multiply(&Int::from(3)).translate(&rv(&[3, -2]))),
        (axes_cross(), l1()),
        (TropicalCycle::constant(2, Int::from(1)), TropicalCycle::point(&rv(&[1, 1]), Int::from(4))),
        (skew_fan(), l1().translate(&rv(&[1, 2]))),
        (axes_cross(), axes_cross().translate(&rv(&[1, 3]))),
        (l1().translate(&[rat(1, 2), rat(1, 3)]), deg2_curve()),
    ];
    for (k, (c, d)) in pairing_pairs.iter().enumerate() {
        let (a, b) = random_form(2);
        let refined = c.refine_by_hyperplane(&a, &b).unwrap();
        assert_eq!(
            degree_pairing(c, d).unwrap(),
            degree_pairing(&refined, d).unwrap(),
            "pairing instance {k} changed under refinement"
        );
    }

    println!("criterion 10 (refinement invariance x10 per operation): PASS");
}

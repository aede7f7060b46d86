//! Acceptance suite: every criterion is one test that prints a PASS line
//! with its measured figures. Run with `--nocapture` to see them:
//!
//! ```text
//! cargo test -p paretomatch --test acceptance -- --nocapture
//! ```

mod common;

use std::time::Instant;

use common::{brute_force_bottleneck, random_diagram, seeded_rng};
use paretomatch::complex::{
    compute_diagram, make_sphere, make_torus, sup_norm_difference, TorusOrientation,
};
use paretomatch::diagram::{
    bottleneck, point_distance, DiagramPoint, PersistenceDiagram,
};
use paretomatch::estimate::{
    boundary_domination_check, naive_estimate, realizer_bound_check, reduced_estimate,
    EstimatorConfig,
};
use paretomatch::geometry::{ExtendedReal, LineParam};
use paretomatch::grid::{
    analytic_sphere_grid, analytic_torus_grid, hat_intersect, intersect, position_candidates_for,
    position_check, threshold_slope, Contour, ExtendedParetoGrid, FunctionTag, TangentDir,
};
use paretomatch::special::{
    curve_c_factored, curve_c_residual, is_special, is_ultraspecial, ContourTangent,
    CurveCQuadruple, GridPair, ParamRegion,
};
use rand::Rng;

fn line(a: f64, b: f64) -> LineParam {
    LineParam::new(a, b).unwrap()
}

/// Criterion 1: Exact bottleneck against the brute-force matching oracle on 200
/// randomized diagram pairs with at most 6 points each.
#[test]
fn acceptance_01_bottleneck_exactness() {
    let start = Instant::now();
    let mut rng = seeded_rng(2024);
    for round in 0..200 {
        let d1 = random_diagram(&mut rng, 6, 0);
        let d2 = random_diagram(&mut rng, 6, 0);
        let fast = bottleneck(&d1, &d2).cost;
        let slow = brute_force_bottleneck(&d1, &d2);
        match (fast, slow) {
            (ExtendedReal::Finite(f), ExtendedReal::Finite(s)) => {
                assert!((f - s).abs() <= 1e-12, "round {round}: {f} vs {s}");
            }
            (f, s) => assert_eq!(f, s, "round {round}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("ACCEPTANCE 01 (bottleneck exactness, 200 pairs in {elapsed:.2?}): PASS");
}

/// Criterion 2: The metric reproduces a fixed table of hand-derived values covering
/// all six cases, with infinite essential/proper cross distances.
#[test]
fn acceptance_02_metric_cases() {
    let proper = |u, v| DiagramPoint::proper(u, v, 1);
    let essential = |u| DiagramPoint::essential(u, 1);
    let delta = DiagramPoint::delta();
    let fin = ExtendedReal::finite;
    let table: Vec<(DiagramPoint, DiagramPoint, ExtendedReal)> = vec![
        // proper-proper: shift term vs collapse term
        (proper(0.0, 10.0), proper(1.0, 12.0), fin(2.0)),
        (proper(0.0, 1.0), proper(10.0, 11.0), fin(0.5)),
        (proper(1.0, 3.0), proper(1.0, 3.0), fin(0.0)),
        (proper(0.0, 4.0), proper(1.0, 4.0), fin(1.0)),
        // essential-essential
        (essential(0.0), essential(2.0), fin(2.0)),
        (essential(5.0), essential(5.0), fin(0.0)),
        // proper against the trivial cornerpoint
        (proper(1.0, 2.0), delta, fin(0.5)),
        (delta, proper(0.0, 6.0), fin(3.0)),
        // trivial against trivial
        (delta, delta, fin(0.0)),
        // infinite cross distances
        (proper(0.0, 1.0), essential(0.0), ExtendedReal::Infinite),
        (essential(-2.0), proper(-2.0, 5.0), ExtendedReal::Infinite),
        (essential(3.0), delta, ExtendedReal::Infinite),
    ];
    assert_eq!(table.len(), 12);
    for (i, (p, q, expected)) in table.iter().enumerate() {
        assert_eq!(point_distance(p, q), *expected, "row {i}");
        assert_eq!(point_distance(q, p), *expected, "row {i} (swapped)");
    }
    println!("ACCEPTANCE 02 (metric cases, 12-row table): PASS");
}

/// Criterion 3: Diagram stability: perturbing sphere values by at most 0.05 moves
/// every per-line diagram by at most 0.05 in bottleneck distance.
#[test]
fn acceptance_03_diagram_stability() {
    let delta = 0.05;
    let cx = make_sphere(16, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let mut rng = seeded_rng(31);
    let lines: Vec<LineParam> = (0..20)
        .map(|_| line(rng.gen_range(0.02..0.98), rng.gen_range(-1.05..1.05)))
        .collect();
    for round in 0..50 {
        let perturbed = cx
            .with_values(
                cx.values()
                    .iter()
                    .map(|&(x, z)| {
                        (
                            x + rng.gen_range(-delta..delta),
                            z + rng.gen_range(-delta..delta),
                        )
                    })
                    .collect(),
            )
            .unwrap();
        for &l in &lines {
            let d1 = compute_diagram(&cx, l, None).unwrap();
            let d2 = compute_diagram(&perturbed, l, None).unwrap();
            for k in 0..d1.len() {
                let cost = bottleneck(&d1[k], &d2[k]).cost.to_f64();
                assert!(
                    cost <= delta + 1e-9,
                    "round {round}, line {l}, degree {k}: {cost}"
                );
            }
        }
    }
    println!("ACCEPTANCE 03 (diagram stability, 50 perturbations x 20 lines): PASS");
}

/// Criterion 4: Matching-distance stability: the naive estimate never exceeds the
/// sup-norm difference.
#[test]
fn acceptance_04_matching_distance_stability() {
    let instances: Vec<(
        paretomatch::BifilteredComplex,
        paretomatch::BifilteredComplex,
    )> = vec![
        (
            make_sphere(12, 1.0, (0.0, 0.0, 0.0)).unwrap(),
            make_sphere(12, 1.0, (0.3, 0.0, 0.0)).unwrap(),
        ),
        (
            make_torus(12, (1.0, 0.4), TorusOrientation::default()).unwrap(),
            make_torus(
                12,
                (1.0, 0.4),
                TorusOrientation {
                    offset: (0.2, -0.1),
                    scale: (1.1, 1.0),
                },
            )
            .unwrap(),
        ),
        {
            let cx = make_sphere(12, 0.8, (0.0, 0.0, 0.0)).unwrap();
            let shifted = cx
                .with_values(cx.values().iter().map(|&(x, z)| (x + 0.1, z + 0.1)).collect())
                .unwrap();
            (cx, shifted)
        },
    ];
    for (i, (cx1, cx2)) in instances.iter().enumerate() {
        let mut config = EstimatorConfig::for_complexes(cx1, cx2);
        config.resolution_a = 15;
        config.resolution_b = 15;
        let report = naive_estimate(cx1, cx2, &config).unwrap();
        let bound = sup_norm_difference(cx1, cx2).unwrap();
        assert!(
            report.value.to_f64() <= bound + 1e-9,
            "instance {i}: {} > {bound}",
            report.value
        );
    }
    println!("ACCEPTANCE 04 (matching-distance stability, 3 instances): PASS");
}

/// Criterion 5: Generalized position: every finite diagram coordinate of the sphere
/// (resolution 64) and torus (resolution 48) examples matches a grid
/// candidate, at 10 random lines plus boundary lines.
#[test]
fn acceptance_05_position_theorem() {
    let start = Instant::now();
    let mut rng = seeded_rng(64);

    let check = |cx: &paretomatch::BifilteredComplex,
                 grid: &ExtendedParetoGrid,
                 lines: &[LineParam],
                 label: &str| {
        let tol = 2.0 * cx.max_edge_value_gap();
        for &l in lines {
            let dgms = compute_diagram(cx, l, None).unwrap();
            let cands = position_candidates_for(grid, FunctionTag::First, l).unwrap();
            for d in &dgms {
                let report = position_check(d, &cands, tol);
                assert!(
                    report.pass(),
                    "{label} at {l}: violations {:?}",
                    report.violations
                );
            }
        }
    };

    let mut lines: Vec<LineParam> = (0..10)
        .map(|_| line(rng.gen_range(0.02..0.98), rng.gen_range(-1.0..1.0)))
        .collect();
    for a in [0.0, 1.0] {
        for j in 0..5 {
            lines.push(line(a, -1.2 + 0.6 * j as f64));
        }
    }

    let sphere = make_sphere(64, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let sphere_grid = analytic_sphere_grid(64, 1.0, (0.0, 0.0, 0.0)).unwrap();
    check(&sphere, &sphere_grid, &lines, "sphere");

    let torus = make_torus(48, (1.0, 0.4), TorusOrientation::default()).unwrap();
    let torus_grid = analytic_torus_grid(48, (1.0, 0.4), TorusOrientation::default()).unwrap();
    check(&torus, &torus_grid, &lines, "torus");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!("ACCEPTANCE 05 (position theorem, sphere+torus, 20 lines each in {elapsed:.2?}): PASS");
}

/// Criterion 6: Threshold slope of a horizontal improper contour: closed form on 100
/// random admissible inputs, the escaped intersection at `a = 1`, and the
/// empty/nonempty flip across the threshold.
#[test]
fn acceptance_06_threshold_slope() {
    let mut rng = seeded_rng(3633);
    for _ in 0..100 {
        let b = rng.gen_range(-2.0..2.0);
        let x0 = b + rng.gen_range(0.1..3.0);
        let y0 = -b + rng.gen_range(0.1..3.0);
        let c = Contour::improper_horizontal(x0, y0, FunctionTag::First);
        let threshold = threshold_slope(&c, b).unwrap();
        assert!(
            (threshold - (x0 - b) / (x0 + y0)).abs() <= 1e-9,
            "threshold formula at (x0={x0}, y0={y0}, b={b})"
        );

        // the escaped intersection at a = 1
        let hit = hat_intersect(line(1.0, b), &c).unwrap().unwrap();
        assert!(hit.point.x.is_infinite());
        assert_eq!(hit.point.y, ExtendedReal::finite(y0));

        // intersection flips empty -> nonempty across the threshold
        let margin = 0.49 * threshold.min(1.0 - threshold);
        assert!(intersect(line(threshold - margin, b), &c).unwrap().is_none());
        assert!(intersect(line(threshold + margin, b), &c).unwrap().is_some());
    }
    println!("ACCEPTANCE 06 (threshold slope, 100 random contours): PASS");
}

/// Criterion 7: The expanded parallelism residual equals its factored form
/// `C·D·(P1·P2 - Q1·Q2)/∏D̂³` within relative 1e-9, over random quadruples
/// including vertical-slope limits.
#[test]
fn acceptance_07_factorization_identity() {
    let mut rng = seeded_rng(777);
    let mut evaluated = 0usize;
    for quad_round in 0..20 {
        let tangents: [ContourTangent; 4] = std::array::from_fn(|_| {
            let dir = if rng.gen_bool(0.25) {
                TangentDir::VERTICAL
            } else {
                TangentDir::from_slope(-rng.gen_range(0.0..5.0))
            };
            ContourTangent::new(dir, (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .unwrap()
        });
        let quad = CurveCQuadruple::new(tangents, ParamRegion::strip(2.0));
        for _ in 0..50 {
            let a = rng.gen_range(0.02..0.98);
            let b = rng.gen_range(-2.0..2.0);
            let l = line(a, b);
            let expanded = curve_c_residual(l, &quad).unwrap();
            let factored = curve_c_factored(l, &quad).unwrap();
            let scale = expanded.abs().max(factored.abs());
            if scale <= 1e-12 {
                // both routes are at the rounding floor; a relative
                // comparison carries no information there
                evaluated += 1;
                continue;
            }
            assert!(
                (expanded - factored).abs() / scale <= 1e-9,
                "quad {quad_round} at ({a}, {b}): expanded {expanded} vs factored {factored}"
            );
            evaluated += 1;
        }
    }
    assert_eq!(evaluated, 1000);
    println!("ACCEPTANCE 07 (factorization identity, 1000 points over 20 quadruples): PASS");
}

/// Criterion 8: Three equidistant parallel improper contours: special and ultraspecial
/// fire at every sampled parameter whose line meets all three, with
/// machine-precision residuals.
#[test]
fn acceptance_08_ultraspecial_example() {
    let g1 = ExtendedParetoGrid::new(vec![
        Contour::improper_vertical(-0.5, -50.0, FunctionTag::First),
        Contour::improper_vertical(0.25, -50.0, FunctionTag::First),
    ]);
    let g2 = ExtendedParetoGrid::new(vec![Contour::improper_vertical(
        1.0,
        -50.0,
        FunctionTag::Second,
    )]);
    let grids = GridPair::new(&g1, &g2);
    let mut sampled = 0;
    for i in 1..20 {
        for j in 0..20 {
            let l = line(i as f64 / 20.0, -1.0 + 0.1 * j as f64);
            let meets_all = grids
                .intersections(l)
                .unwrap()
                .len()
                == 3;
            if !meets_all {
                continue;
            }
            sampled += 1;
            let witnesses = is_special(&grids, l, 1e-12).unwrap();
            assert!(!witnesses.is_empty(), "no special witness at {l}");
            // abscissa gaps are exact; ordinate gaps (used for a >= 1/2)
            // are computed and may carry a few ulps
            assert!(
                witnesses.iter().any(|w| w.residual <= 1e-12),
                "no machine-precision witness at {l}"
            );
            let ultra = is_ultraspecial(&grids, l, 1e-12).unwrap();
            let ultra = ultra.unwrap_or_else(|| panic!("not ultraspecial at {l}"));
            assert!(ultra.spread <= 1e-12, "spread {} at {l}", ultra.spread);
        }
    }
    assert!(sampled > 100, "only {sampled} parameters met all contours");
    println!("ACCEPTANCE 08 (ultraspecial parallel contours, {sampled} parameters): PASS");
}

/// Criterion 9: Main reduction desk check: the reduced estimator loses at most 1e-3
/// against the naive 200x200 scan on both desk instances.
#[test]
fn acceptance_09_main_theorem_desk_check() {
    // sphere vs shifted sphere
    let start = Instant::now();
    let cx1 = make_sphere(64, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let cx2 = make_sphere(64, 1.0, (0.3, 0.0, 0.0)).unwrap();
    let g1 = analytic_sphere_grid(64, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let g2 = analytic_sphere_grid(64, 1.0, (0.3, 0.0, 0.0)).unwrap();
    let mut config = EstimatorConfig::for_complexes(&cx1, &cx2);
    config.resolution_a = 200;
    config.resolution_b = 200;
    let naive = naive_estimate(&cx1, &cx2, &config).unwrap();
    let reduced = reduced_estimate(&cx1, &cx2, &g1, &g2, &config).unwrap();
    let sphere_elapsed = start.elapsed();
    assert!(
        reduced.value.to_f64() >= naive.value.to_f64() - 1e-3,
        "sphere: reduced {} < naive {} - 1e-3",
        reduced.value,
        naive.value
    );
    assert!(
        sphere_elapsed.as_secs_f64() < 600.0,
        "sphere instance took {sphere_elapsed:?}"
    );

    // torus vs reparametrized torus
    let start = Instant::now();
    let orientation2 = TorusOrientation {
        offset: (0.2, -0.1),
        scale: (1.1, 1.0),
    };
    let tx1 = make_torus(48, (1.0, 0.4), TorusOrientation::default()).unwrap();
    let tx2 = make_torus(48, (1.0, 0.4), orientation2).unwrap();
    let tg1 = analytic_torus_grid(48, (1.0, 0.4), TorusOrientation::default()).unwrap();
    let tg2 = analytic_torus_grid(48, (1.0, 0.4), orientation2).unwrap();
    let mut config = EstimatorConfig::for_complexes(&tx1, &tx2);
    config.resolution_a = 200;
    config.resolution_b = 200;
    let tnaive = naive_estimate(&tx1, &tx2, &config).unwrap();
    let treduced = reduced_estimate(&tx1, &tx2, &tg1, &tg2, &config).unwrap();
    let torus_elapsed = start.elapsed();
    assert!(
        treduced.value.to_f64() >= tnaive.value.to_f64() - 1e-3,
        "torus: reduced {} < naive {} - 1e-3",
        treduced.value,
        tnaive.value
    );
    assert!(
        torus_elapsed.as_secs_f64() < 600.0,
        "torus instance took {torus_elapsed:?}"
    );
    println!(
        "ACCEPTANCE 09 (main reduction: sphere naive {} / reduced {} in {:.1?}; torus naive {} / reduced {} in {:.1?}): PASS",
        naive.value, reduced.value, sphere_elapsed, tnaive.value, treduced.value, torus_elapsed
    );
}

/// Criterion 10: Realizer slope bound on a constructed instance with component norms
/// (1, 3): the dense-scan realizer satisfies a > 1/4.
#[test]
fn acceptance_10_realizer_bound() {
    let cx1 = make_sphere(16, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let cx2 = cx1
        .with_values(cx1.values().iter().map(|&(x, z)| (x + 1.0, z + 3.0)).collect())
        .unwrap();
    let (n1, n2) = paretomatch::complex::component_sup_norms(&cx1, &cx2).unwrap();
    assert_eq!((n1, n2), (1.0, 3.0));

    let mut config = EstimatorConfig::for_complexes(&cx1, &cx2);
    config.resolution_a = 41;
    config.resolution_b = 41;
    let report = naive_estimate(&cx1, &cx2, &config).unwrap();
    let check = realizer_bound_check(&cx1, &cx2, &report, config.tol).unwrap();
    assert!(
        check.hypothesis_holds,
        "hypothesis fails: sup {} estimate {}",
        check.sup_norm, check.estimate
    );
    assert_eq!(check.ratio, 0.25);
    assert_eq!(
        check.bound_satisfied,
        Some(true),
        "realizer a = {} <= 1/4",
        check.realizer_a
    );
    println!(
        "ACCEPTANCE 10 (realizer bound: a = {} > 1/4, estimate {}): PASS",
        check.realizer_a, check.estimate
    );
}

/// Criterion 11: Boundary domination: the profiles at `a ∈ {0, 1}` never exceed the
/// slope-1 maximum by more than 1e-3 on either desk instance.
#[test]
fn acceptance_11_boundary_domination() {
    let cx1 = make_sphere(32, 1.0, (0.0, 0.0, 0.0)).unwrap();
    let cx2 = make_sphere(32, 1.0, (0.3, 0.0, 0.0)).unwrap();
    let mut config = EstimatorConfig::for_complexes(&cx1, &cx2);
    config.resolution_b = 101;
    let sphere = boundary_domination_check(&cx1, &cx2, &config).unwrap();
    assert!(
        sphere.pass,
        "sphere: boundary {} > slope-1 {} + 1e-3",
        sphere.boundary_max, sphere.slope1_max
    );

    let tx1 = make_torus(24, (1.0, 0.4), TorusOrientation::default()).unwrap();
    let tx2 = make_torus(
        24,
        (1.0, 0.4),
        TorusOrientation {
            offset: (0.2, -0.1),
            scale: (1.1, 1.0),
        },
    )
    .unwrap();
    let mut config = EstimatorConfig::for_complexes(&tx1, &tx2);
    config.resolution_b = 101;
    let torus = boundary_domination_check(&tx1, &tx2, &config).unwrap();
    assert!(
        torus.pass,
        "torus: boundary {} > slope-1 {} + 1e-3",
        torus.boundary_max, torus.slope1_max
    );
    println!(
        "ACCEPTANCE 11 (boundary domination: sphere {} <= {}, torus {} <= {}): PASS",
        sphere.boundary_max, sphere.slope1_max, torus.boundary_max, torus.slope1_max
    );
}

/// Criterion 12: Multiplicity boxes recover every stored multiplicity at small eps
/// and vanish on 100 random off-diagram boxes.
#[test]
fn acceptance_12_multiplicity_boxes() {
    let mut rng = seeded_rng(1212);
    for _ in 0..20 {
        // random diagram with multiplicities
        let n = rng.gen_range(1..6);
        let mut points = Vec::new();
        for _ in 0..n {
            let birth = rng.gen_range(-4.0..4.0);
            let death = birth + rng.gen_range(0.5..3.0);
            points.push(DiagramPoint::proper(birth, death, rng.gen_range(1..4)));
        }
        if rng.gen_bool(0.5) {
            points.push(DiagramPoint::essential(rng.gen_range(-4.0..4.0), 1));
        }
        let dgm = PersistenceDiagram::new(0, points);

        // half the minimum pairwise gap, including the gap to the diagonal
        let stored: Vec<(f64, f64, u32)> = dgm
            .points()
            .iter()
            .filter_map(|p| match p.death() {
                Some(d) if d.is_finite() => {
                    Some((p.birth().unwrap(), d.value().unwrap(), p.multiplicity))
                }
                _ => None,
            })
            .collect();
        let mut min_gap = f64::INFINITY;
        for (i, &(u, v, _)) in stored.iter().enumerate() {
            min_gap = min_gap.min(v - u);
            for &(u2, v2, _) in stored.iter().skip(i + 1) {
                let d = (u - u2).abs().max((v - v2).abs());
                if d > 0.0 {
                    min_gap = min_gap.min(d);
                }
            }
        }
        let eps = 0.4 * min_gap;
        if !eps.is_finite() || eps <= 0.0 {
            continue;
        }

        for &(u, v, multiplicity) in &stored {
            assert_eq!(
                dgm.multiplicity_box(u, v, eps).unwrap(),
                multiplicity as i64,
                "box at ({u}, {v})"
            );
        }

        // off-diagram boxes are empty
        let mut checked = 0;
        while checked < 100 {
            let u = rng.gen_range(-6.0..6.0);
            let v = u + rng.gen_range(3.0 * eps..8.0);
            let clear = stored
                .iter()
                .all(|&(u2, v2, _)| (u - u2).abs().max((v - v2).abs()) > 2.0 * eps);
            if !clear {
                continue;
            }
            assert_eq!(dgm.multiplicity_box(u, v, eps).unwrap(), 0);
            checked += 1;
        }
    }
    println!("ACCEPTANCE 12 (multiplicity boxes, 20 diagrams x 100 off-diagram probes): PASS");
}

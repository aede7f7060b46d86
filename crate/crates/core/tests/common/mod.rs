#![allow(dead_code)]

//! Shared test support: reference implementations kept independent of the
//! library's algorithmic paths, plus seeded random instance generators.

use paretomatch::diagram::{point_distance, DiagramPoint, PersistenceDiagram};
use paretomatch::geometry::ExtendedReal;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute-force bottleneck distance: exhaustive search over all matchings of
/// the diagrams augmented with the diagonal. Exponential, only for small
/// diagrams.
pub fn brute_force_bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> ExtendedReal {
    let p1: Vec<DiagramPoint> = d1.expanded().collect();
    let p2: Vec<DiagramPoint> = d2.expanded().collect();
    let mut used = vec![false; p2.len()];
    let mut best = ExtendedReal::Infinite;
    search(&p1, &p2, 0, &mut used, ExtendedReal::finite(0.0), &mut best);
    best
}

fn search(
    p1: &[DiagramPoint],
    p2: &[DiagramPoint],
    i: usize,
    used: &mut Vec<bool>,
    current: ExtendedReal,
    best: &mut ExtendedReal,
) {
    if current >= *best {
        return;
    }
    if i == p1.len() {
        let mut total = current;
        for (j, q) in p2.iter().enumerate() {
            if !used[j] {
                total = total.max(point_distance(&DiagramPoint::delta(), q));
            }
        }
        if total < *best {
            *best = total;
        }
        return;
    }
    for j in 0..p2.len() {
        if !used[j] {
            used[j] = true;
            let cost = current.max(point_distance(&p1[i], &p2[j]));
            search(p1, p2, i + 1, used, cost, best);
            used[j] = false;
        }
    }
    let cost = current.max(point_distance(&p1[i], &DiagramPoint::delta()));
    search(p1, p2, i + 1, used, cost, best);
}

/// Seeded random diagram with at most `max_points` points, mixing proper and
/// essential cornerpoints.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_points: usize, degree: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let birth = rng.gen_range(-5.0..5.0);
        if rng.gen_bool(0.25) {
            points.push(DiagramPoint::essential(birth, 1));
        } else {
            let death = birth + rng.gen_range(1e-3..4.0);
            points.push(DiagramPoint::proper(birth, death, 1));
        }
    }
    PersistenceDiagram::new(degree, points)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[allow(dead_code)]
pub fn assert_close(got: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (got - expected).abs() <= tol,
        "{what}: got {got}, expected {expected} (tol {tol})"
    );
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use paretomatch::complex::{make_sphere_mesh, make_torus_mesh, TorusOrientation, TriangleMesh};
use paretomatch::diagram;
use paretomatch::error::Result;
use paretomatch::estimate::{
    naive_estimate, reduced_estimate, save_report, verify_main_theorem, EstimatorConfig,
};
use paretomatch::geometry::LineParam;
use paretomatch::grid::{load_grid, save_grid, ContourKind, ExtendedParetoGrid};
use paretomatch::special::{
    approximate_curve_c, assemble_u, sample_special_set, save_candidates, CandidateKind,
    GridPair, ParamRegion,
};
use paretomatch::BifilteredComplex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::{
    BottleneckArgs, DiagramArgs, MatchdistArgs, Method, ParetoArgs, RenderArgs, SetChoice, Shape,
    SpecialArgs, OUT_DIR_ENV,
};

/// Relative output paths land in `PARETOMATCH_OUT` when it is set.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn values_path(mesh: &Path, values: &Option<PathBuf>) -> PathBuf {
    values
        .clone()
        .unwrap_or_else(|| mesh.with_extension("vals"))
}

fn load_complex(mesh: &Path, values: &Option<PathBuf>) -> Result<BifilteredComplex> {
    TriangleMesh::load(mesh, values_path(mesh, values))?.complex()
}

pub fn diagram(args: DiagramArgs) -> Result<ExitCode> {
    let cx = load_complex(&args.mesh, &args.values)?;
    let line = LineParam::new(args.a, args.b)?;
    let diagrams = paretomatch::complex::compute_diagram(&cx, line, None)?;
    let selected: Vec<_> = diagrams
        .into_iter()
        .filter(|d| args.degree.is_none_or(|k| d.degree() == k))
        .collect();
    for d in &selected {
        println!(
            "degree {}: {} proper, {} essential",
            d.degree(),
            d.proper_count(),
            d.essential_count()
        );
    }
    diagram::save_diagrams(resolve_out(&args.out), &selected)?;
    Ok(ExitCode::SUCCESS)
}

pub fn bottleneck(args: BottleneckArgs) -> Result<ExitCode> {
    let d1 = diagram::load_diagrams(&args.diagram1)?;
    let d2 = diagram::load_diagrams(&args.diagram2)?;
    let degrees: Vec<usize> = match args.degree {
        Some(k) => vec![k],
        None => {
            let mut ks: Vec<usize> = d1.iter().chain(d2.iter()).map(|d| d.degree()).collect();
            ks.sort_unstable();
            ks.dedup();
            ks
        }
    };
    let find = |list: &[diagram::PersistenceDiagram], k: usize| {
        list.iter()
            .find(|d| d.degree() == k)
            .cloned()
            .unwrap_or_else(|| diagram::PersistenceDiagram::empty(k))
    };
    let mut overall = paretomatch::geometry::ExtendedReal::finite(0.0);
    for k in degrees {
        let m = diagram::bottleneck(&find(&d1, k), &find(&d2, k));
        println!("degree {k}: cost {}", m.cost);
        if let Some(reason) = &m.infinite_reason {
            println!("  {reason}");
        }
        for (p, q) in &m.pairs {
            println!("  {p} -> {q}");
        }
        if m.cost > overall {
            overall = m.cost;
        }
    }
    println!("bottleneck {overall}");
    Ok(ExitCode::SUCCESS)
}

fn build_config(
    args: &crate::MatchdistCommonArgs,
    cx1: &BifilteredComplex,
    cx2: &BifilteredComplex,
) -> EstimatorConfig {
    let mut config = EstimatorConfig::for_complexes(cx1, cx2);
    config.resolution_a = args.res_a;
    config.resolution_b = args.res_b;
    config.tol = args.tol;
    config.degree = args.degree;
    if let Some(cbar) = args.cbar {
        config.cbar = cbar;
    }
    config
}

fn load_grids(
    args: &crate::MatchdistCommonArgs,
) -> Result<(ExtendedParetoGrid, ExtendedParetoGrid)> {
    let (Some(g1), Some(g2)) = (&args.grid1, &args.grid2) else {
        return Err(paretomatch::Error::Precondition(
            "the reduced estimator needs --grid1 and --grid2".to_string(),
        ));
    };
    Ok((load_grid(g1)?, load_grid(g2)?))
}

pub fn matchdist(args: MatchdistArgs) -> Result<ExitCode> {
    let common = &args.common;
    if args.method != Method::Naive && (common.grid1.is_none() || common.grid2.is_none()) {
        // usage error: exit code 2 via the error path
        return Err(paretomatch::Error::Precondition(
            "--method reduced/verify requires --grid1 and --grid2".to_string(),
        ));
    }
    let cx1 = load_complex(&common.mesh1, &common.values1)?;
    let cx2 = load_complex(&common.mesh2, &common.values2)?;
    let config = build_config(common, &cx1, &cx2);

    let describe = |label: &str, report: &paretomatch::EstimateReport| {
        println!(
            "{label}: {} realized at (a={}, b={})",
            report.value,
            report.realizer.a(),
            report.realizer.b()
        );
        if let Some(w) = report.infinite_witness {
            println!("{label}: infinite bottleneck at (a={}, b={})", w.a(), w.b());
        }
    };

    match args.method {
        Method::Naive => {
            let report = naive_estimate(&cx1, &cx2, &config)?;
            describe("naive", &report);
            if let Some(out) = &common.out {
                save_report(resolve_out(out), &report)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Method::Reduced => {
            let (g1, g2) = load_grids(common)?;
            let report = reduced_estimate(&cx1, &cx2, &g1, &g2, &config)?;
            describe("reduced", &report);
            if let Some(out) = &common.out {
                save_report(resolve_out(out), &report)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Method::Verify => {
            let (g1, g2) = load_grids(common)?;
            let verify = verify_main_theorem(&cx1, &cx2, &g1, &g2, &config)?;
            describe("naive", &verify.naive);
            describe("reduced", &verify.reduced);
            if let Some(out) = &common.out {
                let out = resolve_out(out);
                save_report(with_suffix(&out, "naive"), &verify.naive)?;
                save_report(with_suffix(&out, "reduced"), &verify.reduced)?;
            }
            if verify.pass {
                println!("verify: PASS (reduced >= naive - {})", verify.tol);
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verify: FAIL (reduced < naive - {})", verify.tol);
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(suffix);
    path.with_file_name(name)
}

pub fn pareto(args: ParetoArgs) -> Result<ExitCode> {
    let (mut mesh, grid) = match args.shape {
        Shape::Sphere => (
            make_sphere_mesh(args.resolution, args.radius, args.center)?,
            paretomatch::grid::analytic_sphere_grid(args.resolution, args.radius, args.center)?,
        ),
        Shape::Torus => {
            let orientation = TorusOrientation {
                offset: args.offset,
                scale: args.scale,
            };
            (
                make_torus_mesh(args.resolution, args.radii, orientation)?,
                paretomatch::grid::analytic_torus_grid(args.resolution, args.radii, orientation)?,
            )
        }
    };
    if args.jitter > 0.0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        for v in &mut mesh.values {
            v.0 += rng.gen_range(-args.jitter..args.jitter);
            v.1 += rng.gen_range(-args.jitter..args.jitter);
        }
    }
    if let Some(out) = &args.out_grid {
        save_grid(resolve_out(out), &grid)?;
        println!("grid: {} contours", grid.len());
    }
    if let (Some(off), Some(vals)) = (&args.out_mesh, &args.out_values) {
        mesh.save(resolve_out(off), resolve_out(vals))?;
        println!(
            "mesh: {} vertices, {} triangles",
            mesh.positions.len(),
            mesh.triangles.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

/// Largest finite coordinate appearing in a grid, as a default offset bound.
fn grid_bound(grid: &ExtendedParetoGrid) -> f64 {
    let mut bound = 0.0f64;
    for c in &grid.contours {
        match &c.kind {
            ContourKind::Proper { polyline } => {
                for &(x, y) in polyline {
                    bound = bound.max(x.abs()).max(y.abs());
                }
            }
            ContourKind::ImproperVertical { x0, y0 }
            | ContourKind::ImproperHorizontal { x0, y0 } => {
                bound = bound.max(x0.abs()).max(y0.abs());
            }
        }
    }
    bound
}

pub fn special(args: SpecialArgs) -> Result<ExitCode> {
    let g1 = load_grid(&args.grid1)?;
    let g2 = load_grid(&args.grid2)?;
    let grids = GridPair::new(&g1, &g2);
    let cbar = args
        .cbar
        .unwrap_or_else(|| grid_bound(&g1).max(grid_bound(&g2)));
    let region = ParamRegion::interior(cbar, args.margin);
    let resolution = (args.res_a, args.res_b);
    let points = match args.set {
        SetChoice::Special => sample_special_set(&grids, region, resolution, args.tol)?,
        SetChoice::Ultraspecial => {
            let mut u = assemble_u(&grids, region, resolution, args.tol)?;
            u.retain(|c| c.kind == CandidateKind::Ultraspecial);
            u
        }
        SetChoice::Curvec => approximate_curve_c(&grids, region, resolution)?,
        SetChoice::U => assemble_u(&grids, region, resolution, args.tol)?,
    };
    let mut counts = std::collections::BTreeMap::new();
    for p in &points {
        *counts.entry(p.kind.label()).or_insert(0usize) += 1;
    }
    for (kind, count) in counts {
        println!("{kind}: {count} samples");
    }
    println!("total: {} samples", points.len());
    save_candidates(resolve_out(&args.out), &points)?;
    Ok(ExitCode::SUCCESS)
}

pub fn render(args: RenderArgs) -> Result<ExitCode> {
    let mut scene = crate::svg::Scene::default();
    for path in &args.grid {
        scene.grids.push(load_grid(path)?);
    }
    for path in &args.diagram {
        scene.diagram_files.push(diagram::load_diagrams(path)?);
    }
    for path in &args.candidates {
        scene
            .candidates
            .extend(paretomatch::special::load_candidates(path)?);
    }
    for path in &args.report {
        scene.reports.push(paretomatch::estimate::load_report(path)?);
    }
    for &(a, b) in &args.line {
        scene.lines.push(LineParam::new(a, b)?);
    }
    let svg = scene.render();
    std::fs::write(resolve_out(&args.out), svg)?;
    Ok(ExitCode::SUCCESS)
}

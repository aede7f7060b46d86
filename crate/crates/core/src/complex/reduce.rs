//! Persistence by boundary-matrix reduction over the two-element field.
//!
//! The filtration is the lower-star order of the normalised restriction
//! along a filtering line. Reduction uses the standard column algorithm with
//! the clearing optimization, processing dimensions from top to bottom; the
//! diagram, not the reduction order, is the contract.

use crate::complex::BifilteredComplex;
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::geometry::{normalized_value, LineParam};

const NONE: u32 = u32::MAX;

/// The one-parameter filtration induced on a complex by a filtering line:
/// simplices sorted by value with faces before cofaces at ties.
#[derive(Clone, Debug)]
pub struct LineFiltration {
    pub line: LineParam,
    /// Simplex indices in filtration order.
    pub order: Vec<u32>,
    /// Value of each simplex, indexed by simplex id.
    pub values: Vec<f64>,
}

impl LineFiltration {
    pub fn new(cx: &BifilteredComplex, line: LineParam) -> Self {
        let mut values = vec![0.0f64; cx.simplex_count()];
        let vertex_values: Vec<f64> = cx
            .values()
            .iter()
            .map(|&(p1, p2)| normalized_value(p1, p2, line))
            .collect();
        for (i, s) in cx.simplices().iter().enumerate() {
            values[i] = s
                .vertices()
                .iter()
                .map(|&v| vertex_values[v as usize])
                .fold(f64::NEG_INFINITY, f64::max);
        }
        let mut order: Vec<u32> = (0..cx.simplex_count() as u32).collect();
        sort_order(&mut order, &values, cx);
        LineFiltration {
            line,
            order,
            values,
        }
    }
}

fn sort_order(order: &mut [u32], values: &[f64], cx: &BifilteredComplex) {
    // Simplices are stored in (dim, vertex-lex) order, so the index is a
    // deterministic tiebreaker that keeps faces before cofaces.
    order.sort_unstable_by(|&a, &b| {
        let (va, vb) = (values[a as usize], values[b as usize]);
        va.partial_cmp(&vb)
            .unwrap()
            .then_with(|| {
                cx.simplices()[a as usize]
                    .dim()
                    .cmp(&cx.simplices()[b as usize].dim())
            })
            .then(a.cmp(&b))
    });
}

/// Reusable buffers for repeated reductions of the same complex along many
/// lines. One scratch per worker thread keeps the hot loop allocation-free.
pub struct ReductionScratch {
    vertex_values: Vec<f64>,
    values: Vec<f64>,
    order: Vec<u32>,
    pos: Vec<u32>,
    by_dim: Vec<Vec<u32>>,
    low_inv: Vec<u32>,
    columns: Vec<Vec<u32>>,
    cleared: Vec<bool>,
    negative: Vec<bool>,
    cur: Vec<u32>,
    tmp: Vec<u32>,
}

impl ReductionScratch {
    pub fn new(cx: &BifilteredComplex) -> Self {
        let n = cx.simplex_count();
        ReductionScratch {
            vertex_values: vec![0.0; cx.vertex_count()],
            values: vec![0.0; n],
            order: vec![0; n],
            pos: vec![0; n],
            by_dim: vec![Vec::new(); cx.dimension() + 1],
            low_inv: vec![NONE; n],
            columns: vec![Vec::new(); n],
            cleared: vec![false; n],
            negative: vec![false; n],
            cur: Vec::new(),
            tmp: Vec::new(),
        }
    }
}

/// Persistence diagrams of the normalised restriction along `line`, in
/// degrees `0..=max_degree` (defaulting to the complex dimension).
pub fn compute_diagram(
    cx: &BifilteredComplex,
    line: LineParam,
    max_degree: Option<usize>,
) -> Result<Vec<PersistenceDiagram>> {
    let mut scratch = ReductionScratch::new(cx);
    compute_diagram_with(cx, line, max_degree, &mut scratch)
}

/// As [`compute_diagram`], reusing caller-provided buffers.
pub fn compute_diagram_with(
    cx: &BifilteredComplex,
    line: LineParam,
    max_degree: Option<usize>,
    scratch: &mut ReductionScratch,
) -> Result<Vec<PersistenceDiagram>> {
    let n = cx.simplex_count();
    if scratch.values.len() != n || scratch.vertex_values.len() != cx.vertex_count() {
        return Err(Error::StructureMismatch(
            "scratch built for a different complex".to_string(),
        ));
    }
    let max_degree = max_degree.unwrap_or(cx.dimension()).min(cx.dimension());

    // Lower-star values along the line.
    for (i, &(p1, p2)) in cx.values().iter().enumerate() {
        scratch.vertex_values[i] = normalized_value(p1, p2, line);
    }
    for (i, s) in cx.simplices().iter().enumerate() {
        scratch.values[i] = s
            .vertices()
            .iter()
            .map(|&v| scratch.vertex_values[v as usize])
            .fold(f64::NEG_INFINITY, f64::max);
    }

    for (i, o) in scratch.order.iter_mut().enumerate() {
        *o = i as u32;
    }
    sort_order(&mut scratch.order, &scratch.values, cx);
    for (rank, &s) in scratch.order.iter().enumerate() {
        scratch.pos[s as usize] = rank as u32;
    }
    for list in &mut scratch.by_dim {
        list.clear();
    }
    for &s in &scratch.order {
        scratch.by_dim[cx.simplices()[s as usize].dim()].push(s);
    }
    scratch.low_inv[..n].fill(NONE);
    scratch.cleared[..n].fill(false);
    scratch.negative[..n].fill(false);

    let mut pairs: Vec<(u32, u32)> = Vec::new();

    for d in (1..=cx.dimension()).rev() {
        // by_dim[d] is iterated by index to appease the borrow on scratch.
        for k in 0..scratch.by_dim[d].len() {
            let s = scratch.by_dim[d][k] as usize;
            if scratch.cleared[s] {
                continue;
            }
            scratch.cur.clear();
            for &f in cx.facets_of(s) {
                scratch.cur.push(scratch.pos[f as usize]);
            }
            scratch.cur.sort_unstable();

            while let Some(&low) = scratch.cur.last() {
                let owner = scratch.low_inv[low as usize];
                if owner == NONE {
                    break;
                }
                xor_into(&scratch.cur, &scratch.columns[owner as usize], &mut scratch.tmp);
                std::mem::swap(&mut scratch.cur, &mut scratch.tmp);
            }

            if let Some(&low) = scratch.cur.last() {
                let birth = scratch.order[low as usize];
                scratch.low_inv[low as usize] = s as u32;
                scratch.negative[s] = true;
                scratch.cleared[birth as usize] = true;
                pairs.push((birth, s as u32));
                std::mem::swap(&mut scratch.columns[s], &mut scratch.cur);
            }
        }
    }

    let mut diagrams: Vec<Vec<DiagramPoint>> = vec![Vec::new(); max_degree + 1];
    for &(birth, death) in &pairs {
        let degree = cx.simplices()[birth as usize].dim();
        if degree > max_degree {
            continue;
        }
        let (bv, dv) = (scratch.values[birth as usize], scratch.values[death as usize]);
        if bv < dv {
            diagrams[degree].push(DiagramPoint::proper(bv, dv, 1));
        }
    }
    for s in 0..n {
        if !scratch.negative[s] && !scratch.cleared[s] {
            let degree = cx.simplices()[s].dim();
            if degree <= max_degree {
                diagrams[degree].push(DiagramPoint::essential(scratch.values[s], 1));
            }
        }
    }

    // Release reduced columns but keep their capacity for the next line.
    for &(_, death) in &pairs {
        scratch.columns[death as usize].clear();
    }

    Ok(diagrams
        .into_iter()
        .enumerate()
        .map(|(degree, pts)| PersistenceDiagram::new(degree, pts))
        .collect())
}

/// Symmetric difference of two ascending index lists.
fn xor_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

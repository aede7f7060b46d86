//! First-order residual of the gap-gradient parallelism condition.
//!
//! For four contours meeting the line `r_(a,b)` the squared coordinate gaps
//! of the two pairs define maps `f, g` of `(a, b)`; the parameters where
//! `∇f ∥ ∇g` obstruct distance-increasing rotations. Replacing each contour
//! by its tangent line `y = m_ω(x - x_X) + y_X` at the current intersection
//! turns the parallelism condition into an explicit rational equation whose
//! two sides this module evaluates.
//!
//! Slopes are carried as homogeneous pairs `(s : t)` (vertical contours are
//! `(-1 : 0)`), which makes every formula the analytic limit of the finite-
//! slope one as the slope goes to `-∞`: with the tangent line `t·y = s·x -
//! N̂` the intersection abscissa is `x(a,b) = (N̂a - tb) / (a(s+t) - t)`, and
//! for `t = 0` this is the constant abscissa of the vertical contour.
//!
//! The residual factors as `C·D·(P₁P₂ - Q₁Q₂) / ∏ D̂³` with `C, D` of the
//! form `a(c₂a + c₁b + c₀)`; the factored route is evaluated from the
//! extracted polynomial coefficients and agreeing with the expanded route is
//! the module's correctness anchor.

use crate::error::{Error, Result};
use crate::geometry::LineParam;
use crate::grid::{ContourRef, TangentDir};
use crate::special::sample::ParamRegion;

/// First-order data of one contour: tangent direction and anchor point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourTangent {
    pub dir: TangentDir,
    pub anchor: (f64, f64),
}

impl ContourTangent {
    pub fn new(dir: TangentDir, anchor: (f64, f64)) -> Result<Self> {
        if dir.t < 0.0 || (dir.t == 0.0 && dir.s == 0.0) || (dir.t > 0.0 && dir.s > 0.0) {
            return Err(Error::Precondition(format!(
                "tangent slope must be non-positive or vertical, got ({}, {})",
                dir.s, dir.t
            )));
        }
        if !anchor.0.is_finite() || !anchor.1.is_finite() {
            return Err(Error::Precondition(format!(
                "non-finite tangent anchor ({}, {})",
                anchor.0, anchor.1
            )));
        }
        // vertical directions are projectively equal; keep one sign
        let dir = if dir.t == 0.0 { TangentDir::VERTICAL } else { dir };
        Ok(ContourTangent { dir, anchor })
    }

    fn n_hat(&self) -> f64 {
        self.dir.s * self.anchor.0 - self.dir.t * self.anchor.1
    }

    fn k_hat(&self) -> f64 {
        self.dir.s + self.dir.t
    }

    fn d_hat(&self, a: f64) -> f64 {
        a * self.k_hat() - self.dir.t
    }
}

/// Four contours `(α, β, γ, δ)` with tangent data, defining the gap maps
/// `f = (x_α - x_β)²` and `g = (x_γ - x_δ)²` (ordinates on the upper half of
/// the slope range). The two pairs `{α,β}` and `{γ,δ}` must differ as pairs.
#[derive(Clone, Debug)]
pub struct CurveCQuadruple {
    pub contours: Option<[ContourRef; 4]>,
    pub tangents: [ContourTangent; 4],
    pub domain: ParamRegion,
}

impl CurveCQuadruple {
    pub fn new(tangents: [ContourTangent; 4], domain: ParamRegion) -> Self {
        CurveCQuadruple {
            contours: None,
            tangents,
            domain,
        }
    }
}

/// Per-contour intersection value and partial derivatives at `(a, b)`,
/// against the tangent-line model.
struct Loc {
    value: f64,
    da: f64,
    d_hat: f64,
    n_hat: f64,
    k_hat: f64,
    s: f64,
    t: f64,
}

fn locate(c: &ContourTangent, line: LineParam, use_x: bool) -> Result<Loc> {
    let (a, b) = (line.a(), line.b());
    let d_hat = c.d_hat(a);
    if d_hat.abs() < 1e-12 {
        return Err(Error::Precondition(format!(
            "tangent-line denominator vanishes at a = {a} (slope {})",
            c.dir.slope()
        )));
    }
    let (s, t) = (c.dir.s, c.dir.t);
    let n_hat = c.n_hat();
    let k_hat = c.k_hat();
    Ok(if use_x {
        Loc {
            value: (n_hat * a - t * b) / d_hat,
            da: t * (b * k_hat - n_hat) / (d_hat * d_hat),
            d_hat,
            n_hat,
            k_hat,
            s,
            t,
        }
    } else {
        Loc {
            value: ((1.0 - a) * n_hat - b * s) / d_hat,
            da: s * (b * k_hat - n_hat) / (d_hat * d_hat),
            d_hat,
            n_hat,
            k_hat,
            s,
            t,
        }
    })
}

fn check_line(line: LineParam) -> Result<bool> {
    let a = line.a();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Precondition(format!(
            "curve-set residual needs 0 < a < 1, got a = {a}"
        )));
    }
    Ok(a <= 0.5)
}

/// Left side minus right side of the parallelism equation, evaluated
/// term-by-term in the displayed grouping. Uses the abscissa form for
/// `a ≤ 1/2` and the ordinate form for `a ≥ 1/2`.
pub fn curve_c_residual(line: LineParam, quad: &CurveCQuadruple) -> Result<f64> {
    let use_x = check_line(line)?;
    let (a, b) = (line.a(), line.b());
    let [alpha, beta, gamma, delta] = &quad.tangents;
    let la = locate(alpha, line, use_x)?;
    let lb = locate(beta, line, use_x)?;
    let lg = locate(gamma, line, use_x)?;
    let ld = locate(delta, line, use_x)?;

    // the displayed grouping: N̂/D̂ pieces plus the quotient-rule correction
    let deriv_term = |p: &Loc, q: &Loc| -> f64 {
        let head = p.n_hat / p.d_hat - q.n_hat / q.d_hat;
        let (pc, qc) = if use_x {
            (
                (p.n_hat * a - p.t * b) * p.k_hat / (p.d_hat * p.d_hat),
                (q.n_hat * a - q.t * b) * q.k_hat / (q.d_hat * q.d_hat),
            )
        } else {
            // ordinate form has its own quotient-rule correction; the head
            // collapses the same way
            return p.da - q.da;
        };
        head + qc - pc
    };

    let f1 = la.value - lb.value;
    let f2 = ld.value - lg.value;
    let f3 = deriv_term(&lg, &ld);
    let (f4, f4p) = if use_x {
        (
            la.t / la.d_hat - lb.t / lb.d_hat,
            ld.t / ld.d_hat - lg.t / lg.d_hat,
        )
    } else {
        (
            la.s / la.d_hat - lb.s / lb.d_hat,
            ld.s / ld.d_hat - lg.s / lg.d_hat,
        )
    };
    let f3p = deriv_term(&la, &lb);

    let lhs = f1 * f2 * f3 * f4;
    let rhs = -(f1 * f2 * f3p * f4p);
    Ok(lhs - rhs)
}

/// The factored evaluation `C·D·(P₁P₂ - Q₁Q₂) / ∏ D̂³`, built from the
/// extracted polynomial coefficients; an independent arithmetic route to the
/// same value as [`curve_c_residual`].
pub fn curve_c_factored(line: LineParam, quad: &CurveCQuadruple) -> Result<f64> {
    let use_x = check_line(line)?;
    let (a, b) = (line.a(), line.b());
    let [alpha, beta, gamma, delta] = &quad.tangents;
    let la = locate(alpha, line, use_x)?;
    let lb = locate(beta, line, use_x)?;
    let lg = locate(gamma, line, use_x)?;
    let ld = locate(delta, line, use_x)?;

    // Gap numerator of a pair over the common denominator: a(c₂a + c₁b + c₀)
    // in the abscissa form, the (1-a)-rooted analogue in the ordinate form.
    let pair_poly = |p: &Loc, q: &Loc| -> f64 {
        if use_x {
            let c2 = p.n_hat * q.k_hat - q.n_hat * p.k_hat;
            let c1 = q.t * p.s - p.t * q.s;
            let c0 = q.n_hat * p.t - p.n_hat * q.t;
            a * (c2 * a + c1 * b + c0)
        } else {
            ((1.0 - a) * p.n_hat - b * p.s) * q.d_hat
                - ((1.0 - a) * q.n_hat - b * q.s) * p.d_hat
        }
    };

    let c_poly = pair_poly(&la, &lb);
    let d_poly = pair_poly(&lg, &ld);

    let (w_ab, w_gd, b_scale) = if use_x {
        (
            lb.t * la.s - la.t * lb.s,
            ld.t * lg.s - lg.t * ld.s,
            a,
        )
    } else {
        (
            lb.s * la.t - la.s * lb.t,
            ld.s * lg.t - lg.s * ld.t,
            a - 1.0,
        )
    };

    let grad_num = |p: &Loc, q: &Loc| -> f64 {
        let coeff = |l: &Loc| if use_x { l.t } else { l.s };
        coeff(p) * (b * p.k_hat - p.n_hat) * q.d_hat * q.d_hat
            - coeff(q) * (b * q.k_hat - q.n_hat) * p.d_hat * p.d_hat
    };

    let p1 = grad_num(&lg, &ld);
    let p2 = b_scale * w_ab * la.d_hat * lb.d_hat;
    let q1 = grad_num(&la, &lb);
    let q2 = b_scale * w_gd * lg.d_hat * ld.d_hat;

    let denom = (la.d_hat * lb.d_hat * lg.d_hat * ld.d_hat).powi(3);
    Ok(c_poly * d_poly * (p1 * p2 - q1 * q2) / denom)
}

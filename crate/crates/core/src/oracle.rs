//! Numeric cross-check of the frame connection and curvature against
//! coordinate Christoffel symbols obtained by finite differences of the
//! coordinate metric. Chart mode only.

use nalgebra::Matrix3 as M3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::Connection;
use crate::manifold::{FrameManifold, FrameTensor, Mode};
use crate::scalar::{ScalarExpr, DIM};

pub const DEFAULT_POINTS: usize = 8;
pub const CHRISTOFFEL_TOLERANCE: f64 = 1e-6;
pub const RIEMANN_TOLERANCE: f64 = 1e-5;

const METRIC_STEP: f64 = 1e-3;
const CHRISTOFFEL_STEP: f64 = 5e-3;
const SPREAD: f64 = 0.5;

type Gamma = [[[f64; DIM]; DIM]; DIM];

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub points: Vec<[f64; DIM]>,
    /// Largest `|frame − oracle| / max(1, |frame|)` over connection coefficients.
    pub christoffel_max_error: f64,
    /// Same for curvature components.
    pub riemann_max_error: f64,
}

impl OracleReport {
    pub fn christoffel_ok(&self) -> bool {
        self.christoffel_max_error <= CHRISTOFFEL_TOLERANCE
    }

    pub fn riemann_ok(&self) -> bool {
        self.riemann_max_error <= RIEMANN_TOLERANCE
    }
}

struct Numeric<'a> {
    frame: &'a [[ScalarExpr; DIM]; DIM],
    metric: &'a [[ScalarExpr; DIM]; DIM],
}

fn eval_matrix(m: &[[ScalarExpr; DIM]; DIM], x: &[f64; DIM]) -> M3<f64> {
    M3::from_fn(|i, j| m[i][j].eval(x))
}

fn shifted(x: &[f64; DIM], dir: usize, h: f64) -> [f64; DIM] {
    let mut y = *x;
    y[dir] += h;
    y
}

/// Five-point central difference of a vector-valued function.
fn derivative<const N: usize>(f: impl Fn(&[f64; DIM]) -> [f64; N], x: &[f64; DIM], dir: usize, h: f64) -> [f64; N] {
    let a = f(&shifted(x, dir, 2.0 * h));
    let b = f(&shifted(x, dir, h));
    let c = f(&shifted(x, dir, -h));
    let d = f(&shifted(x, dir, -2.0 * h));
    std::array::from_fn(|k| (-a[k] + 8.0 * b[k] - 8.0 * c[k] + d[k]) / (12.0 * h))
}

fn flatten(m: &M3<f64>) -> [f64; 9] {
    std::array::from_fn(|k| m[(k / 3, k % 3)])
}

impl Numeric<'_> {
    fn frame_at(&self, x: &[f64; DIM]) -> M3<f64> {
        eval_matrix(self.frame, x)
    }

    fn frame_inverse(&self, x: &[f64; DIM]) -> M3<f64> {
        self.frame_at(x).try_inverse().expect("frame is invertible")
    }

    /// `G_jl = g(∂ⱼ, ∂ₗ)` with `∂ = A⁻¹ e`.
    fn coordinate_metric(&self, x: &[f64; DIM]) -> M3<f64> {
        let ainv = self.frame_inverse(x);
        ainv * eval_matrix(self.metric, x) * ainv.transpose()
    }

    /// `gam[m][j][l]`: coordinate Christoffel symbols `Γᵐⱼₗ`.
    fn christoffel(&self, x: &[f64; DIM]) -> Gamma {
        let ginv = self.coordinate_metric(x).try_inverse().expect("metric is invertible");
        let dg: [[f64; 9]; DIM] =
            std::array::from_fn(|d| derivative(|y| flatten(&self.coordinate_metric(y)), x, d, METRIC_STEP));
        let dgf = |d: usize, a: usize, b: usize| dg[d][a * 3 + b];
        std::array::from_fn(|m| {
            std::array::from_fn(|j| {
                std::array::from_fn(|l| {
                    0.5 * (0..DIM)
                        .map(|n| ginv[(m, n)] * (dgf(j, n, l) + dgf(l, n, j) - dgf(n, j, l)))
                        .sum::<f64>()
                })
            })
        })
    }

    /// Frame coefficients `∇_{eᵢ}eⱼ = Σₖ Γᵢⱼᵏ eₖ` from the coordinate connection.
    fn frame_connection(&self, x: &[f64; DIM]) -> Gamma {
        let a = self.frame_at(x);
        let ainv = self.frame_inverse(x);
        let gam = self.christoffel(x);
        let da: [[f64; 9]; DIM] = std::array::from_fn(|d| derivative(|y| flatten(&self.frame_at(y)), x, d, METRIC_STEP));
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let coord: [f64; DIM] = std::array::from_fn(|b| {
                    (0..DIM)
                        .map(|p| {
                            let mut t = da[p][j * 3 + b];
                            for c in 0..DIM {
                                t += a[(j, c)] * gam[b][p][c];
                            }
                            a[(i, p)] * t
                        })
                        .sum()
                });
                std::array::from_fn(|k| (0..DIM).map(|b| coord[b] * ainv[(b, k)]).sum())
            })
        })
    }

    /// Frame components `R[i][j][k][l]` via the coordinate curvature.
    fn frame_riemann(&self, x: &[f64; DIM]) -> Vec<f64> {
        let gam = self.christoffel(x);
        let flat_gamma = |y: &[f64; DIM]| -> [f64; 27] {
            let g = self.christoffel(y);
            std::array::from_fn(|k| g[k / 9][(k / 3) % 3][k % 3])
        };
        let dgam: [[f64; 27]; DIM] = std::array::from_fn(|d| derivative(flat_gamma, x, d, CHRISTOFFEL_STEP));
        // ∂_d Γᵐⱼₗ
        let dg = |d: usize, m: usize, j: usize, l: usize| dgam[d][m * 9 + j * 3 + l];
        let mut rc = [[[[0.0f64; DIM]; DIM]; DIM]; DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    for d in 0..DIM {
                        let mut v = dg(a, d, b, c) - dg(b, d, a, c);
                        for e in 0..DIM {
                            v += gam[e][b][c] * gam[d][a][e] - gam[e][a][c] * gam[d][b][e];
                        }
                        rc[a][b][c][d] = v;
                    }
                }
            }
        }
        let af = self.frame_at(x);
        let ainv = self.frame_inverse(x);
        let mut out = Vec::with_capacity(81);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        let mut v = 0.0;
                        for a in 0..DIM {
                            for b in 0..DIM {
                                for c in 0..DIM {
                                    let w = af[(i, a)] * af[(j, b)] * af[(k, c)];
                                    if w == 0.0 {
                                        continue;
                                    }
                                    for d in 0..DIM {
                                        v += w * rc[a][b][c][d] * ainv[(d, l)];
                                    }
                                }
                            }
                        }
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}

fn relative_error(exact: f64, approx: f64) -> f64 {
    (exact - approx).abs() / exact.abs().max(1.0)
}

/// Runs the cross-check at `n_points` seeded points around the base point.
/// Returns `None` in Lie mode, where no chart is available.
pub fn finite_difference_check(
    m: &FrameManifold,
    c: &Connection,
    riemann: &FrameTensor,
    seed: u64,
    n_points: usize,
) -> Option<OracleReport> {
    if m.mode() != Mode::Chart {
        return None;
    }
    let num = Numeric {
        frame: m.frame_coefficients()?,
        metric: m.metric_components(),
    };
    let base: [f64; DIM] = std::array::from_fn(|i| {
        let r = &m.base_point()[i];
        ScalarExpr::constant(r.clone()).eval(&[0.0; DIM])
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<[f64; DIM]> = (0..n_points)
        .map(|_| std::array::from_fn(|i| base[i] + rng.gen_range(-SPREAD..SPREAD)))
        .collect();

    let gamma = c.coefficients();
    let mut christoffel_max_error: f64 = 0.0;
    let mut riemann_max_error: f64 = 0.0;
    for x in &points {
        let approx = num.frame_connection(x);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let e = relative_error(gamma[i][j][k].eval(x), approx[i][j][k]);
                    christoffel_max_error = christoffel_max_error.max(e);
                }
            }
        }
        let approx = num.frame_riemann(x);
        for ((_, exact), a) in riemann.components().zip(approx) {
            riemann_max_error = riemann_max_error.max(relative_error(exact.eval(x), a));
        }
    }
    Some(OracleReport {
        points,
        christoffel_max_error,
        riemann_max_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::levi_civita;
    use crate::curvature::riemann;
    use crate::testing::{example, s3};

    #[test]
    fn example_agrees_with_finite_differences() {
        let m = example();
        let c = levi_civita(&m).unwrap();
        let r = riemann(&m, &c).unwrap();
        let rep = finite_difference_check(&m, &c, &r, 7, DEFAULT_POINTS).unwrap();
        assert_eq!(rep.points.len(), 8);
        assert!(rep.christoffel_ok(), "{}", rep.christoffel_max_error);
        assert!(rep.riemann_ok(), "{}", rep.riemann_max_error);
    }

    #[test]
    fn detects_a_wrong_connection() {
        let m = example();
        let mut gamma = levi_civita(&m).unwrap().coefficients().clone();
        gamma[0][0][2] = ScalarExpr::int(3);
        let c = Connection::from_coefficients(gamma);
        let r = riemann(&m, &c).unwrap();
        let rep = finite_difference_check(&m, &c, &r, 7, DEFAULT_POINTS).unwrap();
        assert!(!rep.christoffel_ok());
        assert!(!rep.riemann_ok());
    }

    #[test]
    fn lie_mode_has_no_chart() {
        let m = s3();
        let c = levi_civita(&m).unwrap();
        let r = riemann(&m, &c).unwrap();
        assert!(finite_difference_check(&m, &c, &r, 0, 8).is_none());
    }
}

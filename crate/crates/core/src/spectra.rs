//! Signless Laplacian spectra.
//!
//! Eigenvalues come from Householder tridiagonalisation followed by implicit
//! QL; the least eigenvector is recovered by inverse iteration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::recognize_curly_f;
use crate::graph::{Graph, VertexSet};
use crate::report::{ser_f64, ser_vec_f64, Status};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MARGIN: f64 = 1e-8;
/// Entries below this magnitude count as zero in the structure checks.
pub const THETA: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("tolerance {0} outside [1e-14, 1e-6]")]
    BadTolerance(f64),
    #[error("vector has length {got}, graph has {n} vertices")]
    DimensionMismatch { got: usize, n: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeAbsent(usize, usize),
    #[error("{0}")]
    Precondition(String),
}

/// Dense symmetric `Q = D + A`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl QMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

pub fn q_matrix(g: &Graph) -> QMatrix {
    let n = g.order();
    let mut data = vec![0.0; n * n];
    for v in 0..n {
        data[v * n + v] = g.degree(v) as f64;
        for w in g.neighbors(v).iter() {
            data[v * n + w] = 1.0;
        }
    }
    QMatrix { n, data }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralCert {
    #[serde(serialize_with = "ser_f64")]
    pub q_min: f64,
    #[serde(serialize_with = "ser_vec_f64")]
    pub eigvec: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub residual: f64,
    #[serde(serialize_with = "ser_vec_f64")]
    pub spectrum: Vec<f64>,
    #[serde(skip, default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl SpectralCert {
    /// Whether the least eigenvalue is separated from the next by more than
    /// `100 * tol`.
    pub fn is_simple(&self) -> bool {
        self.spectrum.len() < 2 || self.spectrum[1] - self.spectrum[0] > 100.0 * self.tol
    }

    pub fn multiplicity(&self) -> usize {
        self.spectrum
            .iter()
            .take_while(|&&q| q - self.q_min <= 100.0 * self.tol)
            .count()
    }
}

/// Householder reduction to tridiagonal form. Returns the diagonal and the
/// subdiagonal (`e[i]` couples `i - 1` and `i`; `e[0] = 0`).
fn tridiagonalize(mut z: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..i).map(|k| z[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = z[at(i, l)];
            } else {
                for k in 0..i {
                    z[at(i, k)] /= scale;
                    h += z[at(i, k)] * z[at(i, k)];
                }
                let f = z[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += z[at(j, k)] * z[at(i, k)];
                    }
                    for k in j + 1..i {
                        g += z[at(k, j)] * z[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * z[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    let f = z[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        z[at(j, k)] -= f * e[k] + g * z[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = z[at(i, l)];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (i, di) in d.iter_mut().enumerate() {
        *di = z[at(i, i)];
    }
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues only.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], max_iter: usize) -> Result<(), SpectraError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut total = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            total += 1;
            if total > max_iter {
                return Err(SpectraError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(q: &QMatrix) -> Result<Vec<f64>, SpectraError> {
    let n = q.n;
    let (mut d, mut e) = tridiagonalize(q.data.clone(), n);
    tridiagonal_ql(&mut d, &mut e, 100 * n.max(1))?;
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Solves `A x = b` by LU with partial pivoting; zero pivots are nudged.
fn lu_solve(mut a: Vec<f64>, n: usize, b: &[f64]) -> Vec<f64> {
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let tiny = f64::EPSILON * 1e-3;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .unwrap();
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            x.swap(k, p);
        }
        if a[k * n + k].abs() < tiny {
            a[k * n + k] = tiny;
        }
        for i in k + 1..n {
            let f = a[i * n + k] / a[k * n + k];
            a[i * n + k] = f;
            for j in k + 1..n {
                a[i * n + j] -= f * a[k * n + j];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k * n + j] * x[j]).sum();
        x[k] = (x[k] - s) / a[k * n + k];
    }
    x
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn residual(q: &QMatrix, x: &[f64], lambda: f64) -> f64 {
    let qx = q.mul(x);
    norm(&qx.iter().zip(x).map(|(a, b)| a - lambda * b).collect::<Vec<_>>())
}

/// Flips `x` so that its largest-magnitude entry (lowest index among ties) is
/// positive.
fn normalize_sign(x: &mut [f64]) {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(i) = x.iter().position(|v| v.abs() >= max - 1e-12) {
        if x[i] < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

pub fn q_spectrum(g: &Graph, tol: f64) -> Result<SpectralCert, SpectraError> {
    if !(1e-14..=1e-6).contains(&tol) {
        return Err(SpectraError::BadTolerance(tol));
    }
    let q = q_matrix(g);
    let n = q.n;
    let spectrum = symmetric_eigenvalues(&q)?;
    let q_min = spectrum[0];
    let shift = q_min - 1e-10 * (1.0 + q_min.abs());
    let mut a = q.data.clone();
    for i in 0..n {
        a[i * n + i] -= shift;
    }
    // Fixed pseudo-random start so the run is deterministic.
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            0.5 + (state >> 11) as f64 / (1u64 << 53) as f64
        })
        .collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut res = f64::INFINITY;
    for _ in 0..50 {
        let y = lu_solve(a.clone(), n, &x);
        let ny = norm(&y);
        if !ny.is_finite() || ny == 0.0 {
            return Err(SpectraError::NoConvergence);
        }
        x = y.into_iter().map(|v| v / ny).collect();
        res = residual(&q, &x, q_min);
        if res <= tol * 1e-2 {
            break;
        }
    }
    if res > tol {
        return Err(SpectraError::NoConvergence);
    }
    normalize_sign(&mut x);
    Ok(SpectralCert {
        q_min,
        eigvec: x,
        residual: res,
        spectrum,
        tol,
    })
}

/// Least Q-eigenvalue at the default tolerance.
pub fn q_min(g: &Graph) -> f64 {
    let q = q_matrix(g);
    symmetric_eigenvalues(&q).expect("eigenvalues converge for graphs")[0]
}

/// `XᵀQX` as the edge sum `Σ (x_i + x_j)²`.
pub fn rayleigh(g: &Graph, x: &[f64]) -> Result<f64, SpectraError> {
    if x.len() != g.order() {
        return Err(SpectraError::DimensionMismatch {
            got: x.len(),
            n: g.order(),
        });
    }
    Ok(g.edges().iter().map(|&(i, j)| (x[i] + x[j]).powi(2)).sum())
}

/// Whether `q_1 ≥ s_1 ≥ q_2 ≥ … ≥ q_n ≥ s_n ≥ 0` within `tol`, where `q`
/// and `s` are the spectra of `G` and `G - e`.
pub fn interlacing_check(g: &Graph, e: (usize, usize), tol: f64) -> Result<bool, SpectraError> {
    if !g.has_edge(e.0, e.1) {
        return Err(SpectraError::EdgeAbsent(e.0, e.1));
    }
    let h = g.delete_edge(e.0, e.1).expect("edge present");
    let q = symmetric_eigenvalues(&q_matrix(g))?;
    let s = symmetric_eigenvalues(&q_matrix(&h))?;
    let n = q.len();
    let mut ok = s[0] >= -tol;
    for i in 0..n {
        ok &= s[i] <= q[i] + tol;
        if i + 1 < n {
            ok &= q[i] <= s[i + 1] + tol;
        }
    }
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub status: Status,
    pub simple: bool,
    pub checks: Vec<CheckOutcome>,
}

impl StructureReport {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Best status over alternative readings: PASS if any passes, then
/// INCONCLUSIVE, FAIL only if all fail.
fn best(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().min().unwrap_or(Status::Pass)
}

/// Vertices of the hanging tree at `root`, each with its parent.
fn tree_edges(g: &Graph, root: usize, on_cycle: VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, parent)) = stack.pop() {
        for w in g.neighbors(v).iter() {
            if w != parent && !on_cycle.contains(w) {
                out.push((v, w));
                stack.push((w, v));
            }
        }
    }
    out
}

/// Runtime checks of the least-eigenvector structure of a nonbipartite
/// unicyclic graph. Each strict inequality reads PASS above `THETA`, FAIL
/// below `-THETA`, and INCONCLUSIVE between.
pub fn eigvec_structure_check(g: &Graph, cert: &SpectralCert) -> Result<StructureReport, SpectraError> {
    if !g.is_unicyclic() || g.is_bipartite() {
        return Err(SpectraError::Precondition("graph must be nonbipartite unicyclic".into()));
    }
    if cert.residual > cert.tol || cert.eigvec.len() != g.order() {
        return Err(SpectraError::Precondition("certificate does not match graph".into()));
    }
    if !cert.is_simple() {
        return Ok(StructureReport {
            status: Status::Inconclusive,
            simple: false,
            checks: vec![CheckOutcome {
                name: "simple_least_eigenvalue",
                status: Status::Inconclusive,
                detail: format!("multiplicity {}", cert.multiplicity()),
            }],
        });
    }
    let x = &cert.eigvec;
    let ax: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let cycle = g.unique_cycle().expect("unicyclic");
    let k = cycle.len();
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let mut checks = Vec::new();
    let mut push = |name, status, detail: String| checks.push(CheckOutcome { name, status, detail });

    let cyc_abs: Vec<f64> = cycle.iter().map(|&v| ax[v]).collect();
    let min = cyc_abs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = cyc_abs.iter().copied().fold(0.0, f64::max);
    push("cycle_min_below_max", Status::strict(max - min, THETA), format!("min {min:.3e}, max {max:.3e}"));

    // Hanging trees: zero branches, sign alternation, growth away from the root.
    let mut zero_status = Status::Pass;
    let mut growth_status = Status::Pass;
    let mut roots_max: f64 = 0.0;
    let mut has_trees = false;
    for &root in &cycle {
        let edges = tree_edges(g, root, on_cycle);
        if edges.is_empty() {
            continue;
        }
        has_trees = true;
        roots_max = roots_max.max(ax[root]);
        if ax[root] < THETA {
            let worst = edges.iter().map(|&(_, w)| ax[w]).fold(0.0, f64::max);
            zero_status = zero_status.merge(Status::from_bool(worst < THETA));
        } else {
            for &(p, c) in &edges {
                let alternates = ax[c] >= THETA && x[p] * x[c] < 0.0;
                zero_status = zero_status.merge(Status::from_bool(alternates));
                growth_status = growth_status.merge(Status::strict(ax[c] - ax[p], THETA));
            }
        }
    }
    push("zero_branches", zero_status, String::new());
    push("tree_growth", growth_status, String::new());
    if has_trees {
        push("root_nonzero", Status::strict(roots_max, THETA), format!("max root entry {roots_max:.3e}"));
    }

    // Cycle sign structure and monotone arcs, over every admissible choice of
    // the minimum vertex (positions within THETA of the minimum).
    let mins: Vec<usize> = (0..k).filter(|&i| cyc_abs[i] <= min + THETA).collect();
    let maxs: Vec<usize> = (0..k).filter(|&i| cyc_abs[i] >= max - THETA).collect();
    let same_sign: Vec<usize> = (0..k)
        .filter(|&i| {
            let (a, b) = (x[cycle[i]], x[cycle[(i + 1) % k]]);
            a.abs() >= THETA && b.abs() >= THETA && a * b > 0.0
        })
        .collect();
    let sign_status = best(mins.iter().map(|&m| {
        let incident = |i: usize| i == m || (i + 1) % k == m;
        let (prev, next) = ((m + k - 1) % k, (m + 1) % k);
        let mut st = Status::from_bool(same_sign.iter().all(|&i| incident(i)) && same_sign.len() <= 1);
        if cyc_abs[m] >= THETA {
            st = st.merge(Status::from_bool(same_sign.len() == 1));
            // The same-sign edge joins the minimum to its smaller neighbour.
            let d = cyc_abs[next] - cyc_abs[prev];
            if d > THETA {
                st = st.merge(Status::from_bool(same_sign == [prev]));
            } else if d < -THETA {
                st = st.merge(Status::from_bool(same_sign == [m]));
            }
        } else {
            let s = x[cycle[prev]] + x[cycle[next]];
            st = st.merge(Status::from_bool(s.abs() < 10.0 * THETA && cyc_abs[next] >= THETA));
        }
        st
    }));
    push("cycle_signs", sign_status, format!("same-sign cycle edges: {}", same_sign.len()));

    if min >= THETA {
        let arc_status = best(mins.iter().flat_map(|&m| {
            maxs.iter().map(move |&s| (m, s))
        }).map(|(m, s)| {
            let mut st = Status::Pass;
            for dir in [1, k - 1] {
                // Walk from m towards s; entries grow strictly until the step into s.
                let mut path = vec![(m + dir) % k];
                while *path.last().unwrap() != s {
                    path.push((path.last().unwrap() + dir) % k);
                }
                for w in path.windows(2) {
                    let diff = cyc_abs[w[1]] - cyc_abs[w[0]];
                    st = st.merge(if w[1] == s {
                        Status::non_strict(diff, THETA)
                    } else {
                        Status::strict(diff, THETA)
                    });
                }
            }
            st
        }));
        push("cycle_monotone_arcs", arc_status, String::new());
        let drop = best(maxs.iter().map(|&s| {
            let lo = cyc_abs[(s + 1) % k].min(cyc_abs[(s + k - 1) % k]);
            // Only a near tie can make this inconclusive; it can never fail.
            Status::strict(cyc_abs[s] - lo, THETA).min(Status::Inconclusive)
        }));
        push("max_neighbour_drop", drop, String::new());
    }

    if k == 3 {
        let labelings: Vec<_> = recognize_curly_f(g).into_iter().filter(|f| f.g == 3).collect();
        if !labelings.is_empty() {
            let st = best(labelings.iter().map(|f| {
                let v = |i: usize| ax[f.spine[i - 1]];
                Status::non_strict(v(3) - v(1).max(v(2)), THETA)
            }));
            push("triangle_max_at_v3", st, String::new());
        }
    }

    let status = checks.iter().fold(Status::Pass, |s, c| s.merge(c.status));
    Ok(StructureReport {
        status,
        simple: true,
        checks,
    })
}

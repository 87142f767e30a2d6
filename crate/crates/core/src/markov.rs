//! Stationary distributions of the joint chain and the quantities derived from them.
//!
//! Chains with a single closed class have a unique stationary distribution,
//! which is solved exactly. Chains with several closed classes depend on the
//! start distribution; for those the Cesàro limit from `initial` is computed
//! by iterating the lazy kernel `(I + T) / 2` in floating point.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::linalg::Matrix;
use crate::rational::{dot, sum, to_f64, zero, Rational};
use crate::strategy::{assemble_transition, MemoryOneStrategy, MonitoringStructure, PressDysonMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactSolve,
    CesaroIteration,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactSolve => "exact-solve",
            Method::CesaroIteration => "cesaro-iteration",
        }
    }
}

/// A vector that is either exact or a floating approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Exact(Vec<Rational>),
    Approx(Vec<f64>),
}

impl Weights {
    pub fn len(&self) -> usize {
        match self {
            Weights::Exact(v) => v.len(),
            Weights::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Weights::Exact(v) => v.iter().map(to_f64).collect(),
            Weights::Approx(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        match self {
            Weights::Exact(v) => Some(v),
            Weights::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Weights::Exact(_))
    }

    /// Inner product with an exact vector, keeping exactness when possible.
    pub fn dot(&self, v: &[Rational]) -> Weights {
        match self {
            Weights::Exact(w) => Weights::Exact(vec![dot(w, v)]),
            Weights::Approx(w) => Weights::Approx(vec![w.iter().zip(v).map(|(a, b)| a * to_f64(b)).sum()]),
        }
    }

    /// Largest absolute entry as a float.
    pub fn max_abs(&self) -> f64 {
        self.to_f64().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn concat(parts: Vec<Weights>) -> Weights {
        if parts.iter().all(Weights::is_exact) {
            Weights::Exact(parts.into_iter().flat_map(|p| p.exact().unwrap().to_vec()).collect())
        } else {
            Weights::Approx(parts.iter().flat_map(Weights::to_f64).collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CesaroOptions {
    /// Stop when successive lazy iterates differ by at most this in the max norm.
    pub tolerance: f64,
    pub max_steps: u64,
}

impl Default for CesaroOptions {
    fn default() -> Self {
        CesaroOptions { tolerance: 1e-14, max_steps: 10_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryResult {
    pub rho: Weights,
    pub initial: Vec<Rational>,
    pub method: Method,
    /// `‖Tρ − ρ‖∞`; exactly zero for the exact method.
    pub residual: f64,
    /// Lazy-kernel iterations, zero for the exact method.
    pub steps: u64,
}

pub fn check_stochastic(t: &Matrix) -> Result<()> {
    if t.rows() != t.cols() {
        return Err(Error::InvalidInput(format!("transition matrix is {}x{}", t.rows(), t.cols())));
    }
    for c in 0..t.cols() {
        let col = t.column(c);
        if col.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(format!("negative transition probability out of state {c}")));
        }
        if !sum(&col).is_one() {
            return Err(Error::InvalidInput(format!("transition probabilities out of state {c} do not sum to 1")));
        }
    }
    Ok(())
}

fn successors(t: &Matrix) -> Vec<Vec<usize>> {
    (0..t.cols()).map(|from| (0..t.rows()).filter(|&to| !t[(to, from)].is_zero()).collect()).collect()
}

/// Strongly connected components of the support graph (edge `σ' → σ` iff `T(σ|σ') > 0`).
pub fn strongly_connected_components(t: &Matrix) -> Vec<Vec<usize>> {
    let succ = successors(t);
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (from, tos) in succ.iter().enumerate() {
        for &to in tos {
            pred[to].push(from);
        }
    }
    // Kosaraju: finishing order on the forward graph, then sweep the reverse graph.
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = succ[node].get(*next) {
                *next += 1;
                if !visited[child] {
                    visited[child] = true;
                    stack.push((child, 0));
                }
            } else {
                order.push(node);
                stack.pop();
            }
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components = Vec::new();
    for &root in order.iter().rev() {
        if component[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![root];
        component[root] = id;
        let mut i = 0;
        while i < members.len() {
            for &p in &pred[members[i]] {
                if component[p] == usize::MAX {
                    component[p] = id;
                    members.push(p);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    components.sort();
    components
}

/// Components with no edge leaving them (the recurrent classes).
pub fn closed_classes(t: &Matrix) -> Vec<Vec<usize>> {
    let succ = successors(t);
    strongly_connected_components(t)
        .into_iter()
        .filter(|comp| comp.iter().all(|&s| succ[s].iter().all(|to| comp.binary_search(to).is_ok())))
        .collect()
}

pub fn is_irreducible(t: &Matrix) -> bool {
    strongly_connected_components(t).len() == 1
}

pub fn stationary_distribution(t: &Matrix, initial: &[Rational]) -> Result<StationaryResult> {
    stationary_distribution_with(t, initial, CesaroOptions::default())
}

pub fn stationary_distribution_with(
    t: &Matrix,
    initial: &[Rational],
    options: CesaroOptions,
) -> Result<StationaryResult> {
    check_stochastic(t)?;
    let m = t.rows();
    if initial.len() != m || initial.iter().any(Signed::is_negative) || !sum(initial).is_one() {
        return Err(Error::InvalidInput("initial distribution is not a probability vector of matching length".into()));
    }
    if closed_classes(t).len() == 1 {
        let rho = exact_unique_stationary(t);
        return Ok(StationaryResult {
            rho: Weights::Exact(rho),
            initial: initial.to_vec(),
            method: Method::ExactSolve,
            residual: 0.0,
            steps: 0,
        });
    }
    let (rho, steps) = cesaro(t, initial, options)?;
    let residual = residual_f64(t, &rho);
    Ok(StationaryResult { rho: Weights::Approx(rho), initial: initial.to_vec(), method: Method::CesaroIteration, residual, steps })
}

/// Solves `(T − I)ρ = 0, Σρ = 1`; requires a single closed class.
fn exact_unique_stationary(t: &Matrix) -> Vec<Rational> {
    let m = t.rows();
    let mut a = t.clone();
    for i in 0..m {
        a[(i, i)] -= Rational::one();
    }
    for c in 0..m {
        a[(m - 1, c)] = Rational::one();
    }
    let mut b = vec![zero(); m];
    b[m - 1] = Rational::one();
    a.solve(&b).expect("unichain stationary system is nonsingular")
}

struct SparseColumns {
    /// `(to, probability)` lists per source state
    columns: Vec<Vec<(usize, f64)>>,
}

impl SparseColumns {
    fn new(t: &Matrix) -> Self {
        let columns = (0..t.cols())
            .map(|from| {
                (0..t.rows()).filter(|&to| !t[(to, from)].is_zero()).map(|to| (to, to_f64(&t[(to, from)]))).collect()
            })
            .collect();
        SparseColumns { columns }
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (from, col) in self.columns.iter().enumerate() {
            let mass = x[from];
            if mass == 0.0 {
                continue;
            }
            for &(to, p) in col {
                out[to] += p * mass;
            }
        }
    }
}

/// Cesàro limit of `Tᵗ x₀` via the lazy kernel `(I + T)/2`, which has the
/// same limit and converges geometrically on every closed class.
/// Returns the limit and the number of iterations.
pub fn cesaro_limit(t: &Matrix, initial: &[Rational], options: CesaroOptions) -> Result<(Vec<f64>, u64)> {
    check_stochastic(t)?;
    if initial.len() != t.rows() {
        return Err(Error::InvalidInput("initial distribution has the wrong length".into()));
    }
    cesaro(t, initial, options)
}

fn cesaro(t: &Matrix, initial: &[Rational], options: CesaroOptions) -> Result<(Vec<f64>, u64)> {
    let sparse = SparseColumns::new(t);
    let m = t.rows();
    let mut x: Vec<f64> = initial.iter().map(to_f64).collect();
    let mut tx = vec![0.0; m];
    let mut diff = f64::INFINITY;
    for step in 1..=options.max_steps {
        sparse.apply(&x, &mut tx);
        diff = 0.0;
        for (xi, ti) in x.iter_mut().zip(&tx) {
            let next = 0.5 * (*xi + ti);
            diff = diff.max((next - *xi).abs());
            *xi = next;
        }
        if diff <= options.tolerance {
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= total);
            return Ok((x, step));
        }
    }
    Err(Error::NonConvergence { steps: options.max_steps, last_residual: diff })
}

fn residual_f64(t: &Matrix, rho: &[f64]) -> f64 {
    let sparse = SparseColumns::new(t);
    let mut out = vec![0.0; rho.len()];
    sparse.apply(rho, &mut out);
    out.iter().zip(rho).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// `e = Sᵀρ = (1, e_1, ..., e_N)`.
pub fn expected_payoffs(rho: &Weights, game: &Game) -> Weights {
    let mut parts = vec![match rho {
        Weights::Exact(w) => Weights::Exact(vec![sum(w)]),
        Weights::Approx(w) => Weights::Approx(vec![w.iter().sum()]),
    }];
    for n in 0..game.players() {
        parts.push(rho.dot(game.payoffs(n)));
    }
    Weights::concat(parts)
}

/// `ρᵀ T̃_n(σ_n)` for every own action `σ_n`.
pub fn akin_residuals(rho: &Weights, pd: &PressDysonMatrix) -> Weights {
    Weights::concat(pd.vectors.iter().map(|v| rho.dot(v)).collect())
}

/// Stationary analysis of a full strategy profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSolution {
    pub transition: Matrix,
    pub stationary: StationaryResult,
    pub payoffs: Weights,
}

pub fn solve_profile(
    game: &Game,
    strategies: &[MemoryOneStrategy],
    monitoring: &MonitoringStructure,
    initial: &[Rational],
) -> Result<ProfileSolution> {
    let transition = assemble_transition(strategies, monitoring, game.space())?;
    let stationary = stationary_distribution(&transition, initial)?;
    let payoffs = expected_payoffs(&stationary.rho, game);
    Ok(ProfileSolution { transition, stationary, payoffs })
}

/// Point mass on a joint state.
pub fn point_mass(size: usize, state: usize) -> Vec<Rational> {
    let mut v = vec![zero(); size];
    v[state] = Rational::one();
    v
}

pub fn uniform(size: usize) -> Vec<Rational> {
    vec![Rational::new(1.into(), (size as i64).into()); size]
}

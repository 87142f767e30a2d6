//! Zero-determinant detection and the structure of enforced payoff relations.
//!
//! A strategy is ZD when `V_n = span T̃_n ∩ span S` is nontrivial, with
//! `S = (1, s_1, ..., s_N)`. Each vector `S α` in `V_n` enforces the
//! relation `α_0 + Σ α_n e_n = 0` on the stationary expected payoffs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, StateSpace};
use crate::linalg::{rank_of, row_basis, Matrix};
use crate::rational::{format_rational, Rational};
use crate::strategy::PressDysonMatrix;

/// `α_0 + α_1 e_1 + ... + α_N e_N = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    alpha: Vec<Rational>,
}

impl LinearRelation {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::InvalidInput("a relation needs a constant and at least one payoff coefficient".into()));
        }
        if alpha.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("relation coefficients are all zero".into()));
        }
        Ok(LinearRelation { alpha })
    }

    /// `e_player = value`.
    pub fn fixes(players: usize, player: usize, value: Rational) -> Self {
        let mut alpha = vec![Rational::zero(); players + 1];
        alpha[0] = -value;
        alpha[player + 1] = Rational::one();
        LinearRelation { alpha }
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn players(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Scaled so the leading coefficient in canonical column order is 1.
    pub fn canonical(&self) -> LinearRelation {
        let lead = canonical_order(self.players())
            .map(|c| &self.alpha[c])
            .find(|x| !x.is_zero())
            .expect("nonzero relation")
            .clone();
        LinearRelation { alpha: self.alpha.iter().map(|x| x / &lead).collect() }
    }

    /// True if `e` satisfies the relation exactly; `e` excludes the leading 1.
    pub fn holds_at(&self, payoffs: &[Rational]) -> bool {
        self.evaluate(payoffs).is_zero()
    }

    pub fn evaluate(&self, payoffs: &[Rational]) -> Rational {
        self.alpha[1..].iter().zip(payoffs).fold(self.alpha[0].clone(), |acc, (a, e)| acc + a * e)
    }

    pub fn evaluate_f64(&self, payoffs: &[f64]) -> f64 {
        let a: Vec<f64> = self.alpha.iter().map(crate::rational::to_f64).collect();
        a[1..].iter().zip(payoffs).fold(a[0], |acc, (a, e)| acc + a * e)
    }
}

impl core::fmt::Display for LinearRelation {
    /// Renders as e.g. `e1 - e2 = 0` or `e2 = 11/4`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let c = self.canonical();
        let mut lhs = String::new();
        for (n, a) in c.alpha.iter().enumerate().skip(1) {
            if a.is_zero() {
                continue;
            }
            let magnitude = a.abs();
            let coef = if magnitude.is_one() { String::new() } else { format!("{} ", format_rational(&magnitude)) };
            if lhs.is_empty() {
                if a.is_negative() {
                    lhs.push('-');
                }
            } else {
                lhs.push_str(if a.is_negative() { " - " } else { " + " });
            }
            lhs.push_str(&format!("{coef}e{n}"));
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        write!(f, "{lhs} = {}", format_rational(&-c.alpha[0].clone()))
    }
}

/// Pivot priority for relations: payoff coefficients first, then the constant.
fn canonical_order(players: usize) -> impl Iterator<Item = usize> + Clone {
    (1..=players).chain(core::iter::once(0))
}

fn to_canonical_order(alpha: &[Rational]) -> Vec<Rational> {
    canonical_order(alpha.len() - 1).map(|c| alpha[c].clone()).collect()
}

fn from_canonical_order(v: &[Rational]) -> Vec<Rational> {
    let n = v.len() - 1;
    let mut alpha = Vec::with_capacity(v.len());
    alpha.push(v[n].clone());
    alpha.extend(v[..n].iter().cloned());
    alpha
}

/// Canonical reduced echelon basis of a set of relations (in canonical column order).
pub fn canonical_relations(alphas: &[Vec<Rational>]) -> Vec<LinearRelation> {
    let Some(first) = alphas.first() else { return Vec::new() };
    let width = first.len();
    let reordered: Vec<_> = alphas.iter().map(|a| to_canonical_order(a)).collect();
    row_basis(&reordered, width).iter().map(|r| LinearRelation { alpha: from_canonical_order(r) }).collect()
}

/// Basis of `V_n` with the relations and witnesses behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZdCertificate {
    pub player: usize,
    /// `u_k = S α_k`
    pub basis: Vec<Vec<Rational>>,
    pub relations: Vec<LinearRelation>,
    /// `c_k` with `T̃_n c_k = S α_k`
    pub witnesses: Vec<Vec<Rational>>,
    /// Relations `S α = 0` that hold for every distribution (payoff columns dependent).
    pub structural: Vec<LinearRelation>,
}

impl ZdCertificate {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Relations are only determined modulo the structural ones.
    pub fn is_nonunique(&self) -> bool {
        !self.structural.is_empty()
    }

    /// Re-checks independence of the basis and every witness equation.
    pub fn verify(&self, pd: &PressDysonMatrix, game: &Game) -> core::result::Result<(), String> {
        if self.basis.is_empty() {
            return Err("empty certificate".into());
        }
        if self.basis.len() != self.relations.len() || self.basis.len() != self.witnesses.len() {
            return Err("basis, relations and witnesses differ in length".into());
        }
        if rank_of(&self.basis) != self.basis.len() {
            return Err("basis vectors are linearly dependent".into());
        }
        for (k, ((u, rel), c)) in self.basis.iter().zip(&self.relations).zip(&self.witnesses).enumerate() {
            if game.combine(rel.alpha()) != *u {
                return Err(format!("basis vector {k} differs from S alpha"));
            }
            if pd.combine(c) != *u {
                return Err(format!("witness {k} does not reproduce the basis vector"));
            }
        }
        Ok(())
    }
}

/// Computes `V_n` exactly. Returns `None` when the strategy is not ZD.
pub fn detect_zd(pd: &PressDysonMatrix, game: &Game) -> Option<ZdCertificate> {
    let m = game.space().size();
    assert_eq!(pd.states(), m, "strategy vectors do not match the game");
    let t = pd.matrix();
    let s = game.payoff_matrix();

    // (c, α) with T̃ c − S α = 0
    let joint = t.hstack(&s.scale(&-Rational::one()));
    let alphas: Vec<Vec<Rational>> = joint.nullspace().into_iter().map(|v| v[pd.actions()..].to_vec()).collect();

    let structural_basis = structural_nullspace(&s);
    let reduced: Vec<Vec<Rational>> = alphas.iter().map(|a| reduce_modulo(a, &structural_basis)).collect();
    let relations: Vec<LinearRelation> =
        canonical_relations(&reduced).into_iter().filter(|r| !game.combine(r.alpha()).iter().all(Zero::is_zero)).collect();
    if relations.is_empty() {
        return None;
    }
    let basis: Vec<Vec<Rational>> = relations.iter().map(|r| game.combine(r.alpha())).collect();
    let witnesses = basis.iter().map(|u| t.solve(u).expect("S alpha lies in span of the strategy vectors")).collect();
    let structural = structural_basis.iter().map(|z| LinearRelation { alpha: z.clone() }.canonical()).collect();
    Some(ZdCertificate { player: pd.player, basis, relations, witnesses, structural })
}

/// Nullspace of `S`, echelonized with pivots as late as possible in canonical
/// order so that reduction keeps the earliest payoff coefficients.
fn structural_nullspace(s: &Matrix) -> Vec<Vec<Rational>> {
    let ns = s.nullspace();
    if ns.is_empty() {
        return ns;
    }
    let width = ns[0].len();
    // reverse canonical order, echelonize, reverse back
    let reversed: Vec<Vec<Rational>> = ns.iter().map(|a| to_canonical_order(a).into_iter().rev().collect()).collect();
    row_basis(&reversed, width)
        .into_iter()
        .map(|r| {
            let forward: Vec<Rational> = r.into_iter().rev().collect();
            from_canonical_order(&forward)
        })
        .collect()
}

/// Eliminates, from `alpha`, the pivot coordinate of each structural vector.
fn reduce_modulo(alpha: &[Rational], structural: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = alpha.to_vec();
    let order: Vec<usize> = canonical_order(alpha.len() - 1).collect();
    for z in structural {
        // pivot is the last nonzero coordinate in canonical order
        let pivot = *order.iter().rev().find(|&&c| !z[c].is_zero()).expect("nonzero structural vector");
        if out[pivot].is_zero() {
            continue;
        }
        let factor = &out[pivot] / &z[pivot];
        for (o, zi) in out.iter_mut().zip(z) {
            *o -= zi * &factor;
        }
    }
    out
}

/// Affine set `{ particular + Σ t_i direction_i }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSet {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineSet {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn is_point(&self) -> bool {
        self.directions.is_empty()
    }
}

/// `A = (α_1 ... α_K)` split into its constant row `bᵀ` and the payoff rows `Ā`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencySystem {
    pub players: usize,
    pub relations: Vec<LinearRelation>,
    pub rank_a: usize,
    pub rank_a_bar: usize,
    /// Expected-payoff vectors `(e_1, ..., e_N)` satisfying every relation, or `None` if empty.
    pub solution: Option<AffineSet>,
}

impl ConsistencySystem {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }
}

pub fn consistency_check(players: usize, relations: &[LinearRelation]) -> Result<ConsistencySystem> {
    if let Some(r) = relations.iter().find(|r| r.players() != players) {
        return Err(Error::InvalidInput(format!("relation over {} players in a {players}-player system", r.players())));
    }
    let k = relations.len();
    let a = Matrix::from_columns(&relations.iter().map(|r| r.alpha.clone()).collect::<Vec<_>>(), players + 1);
    let b: Vec<Rational> = relations.iter().map(|r| r.alpha[0].clone()).collect();
    let a_bar_t = Matrix::from_rows_with_width(&relations.iter().map(|r| r.alpha[1..].to_vec()).collect::<Vec<_>>(), players);
    let rank_a = a.rank();
    let rank_a_bar = a_bar_t.rank();
    // ēᵀĀ + bᵀ = 0  ⇔  Āᵀ ē = −b
    let neg_b: Vec<Rational> = b.iter().map(|x| -x.clone()).collect();
    let solution = if k == 0 {
        Some(AffineSet { particular: vec![Rational::zero(); players], directions: Matrix::identity(players).columns() })
    } else {
        a_bar_t.solve(&neg_b).map(|particular| AffineSet { particular, directions: a_bar_t.nullspace() })
    };
    debug_assert_eq!(solution.is_some(), rank_a == rank_a_bar);
    Ok(ConsistencySystem { players, relations: relations.to_vec(), rank_a, rank_a_bar, solution })
}

/// One player's share of a dependence witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencePart {
    pub player: usize,
    /// Coefficients on that player's certificate basis.
    pub coefficients: Vec<Rational>,
    /// `w_n ∈ V_n`; the parts sum to the zero vector.
    pub vector: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent(Vec<DependencePart>),
}

/// Decides whether the `V_n` form a direct sum.
///
/// Nonzero `v_n ∈ V_n` can be chosen linearly dependent exactly when some
/// nontrivial `Σ w_n = 0` with `w_n ∈ V_n` exists, i.e. when
/// `dim Σ V_n < Σ dim V_n`.
pub fn independence_check(certs: &[ZdCertificate]) -> Result<Independence> {
    for (i, a) in certs.iter().enumerate() {
        if certs[..i].iter().any(|b| b.player == a.player) {
            return Err(Error::InvalidInput(format!("two certificates for player {}", a.player + 1)));
        }
        if a.basis.is_empty() {
            return Err(Error::InvalidInput(format!("certificate for player {} is empty", a.player + 1)));
        }
    }
    let Some(first) = certs.first() else { return Ok(Independence::Independent) };
    let m = first.basis[0].len();
    let columns: Vec<Vec<Rational>> = certs.iter().flat_map(|c| c.basis.iter().cloned()).collect();
    if columns.iter().any(|c| c.len() != m) {
        return Err(Error::InvalidInput("certificates come from different state spaces".into()));
    }
    let stacked = Matrix::from_columns(&columns, m);
    let Some(x) = stacked.nullspace().into_iter().next() else {
        return Ok(Independence::Independent);
    };
    let mut parts = Vec::with_capacity(certs.len());
    let mut offset = 0;
    for cert in certs {
        let coefficients = x[offset..offset + cert.basis.len()].to_vec();
        offset += cert.basis.len();
        let vector = Matrix::from_columns(&cert.basis, m).mul_vec(&coefficients);
        parts.push(DependencePart { player: cert.player, coefficients, vector });
    }
    Ok(Independence::Dependent(parts))
}

/// True iff no strategy vector has a zero entry.
pub fn check_nonzero_pd(pd: &PressDysonMatrix) -> bool {
    !pd.has_zero_entry()
}

/// Failed sign conditions for one ordered action pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    /// Action whose rows must be `<= 0`.
    pub max_action: usize,
    /// Action whose rows must be `>= 0`.
    pub min_action: usize,
    /// States with own previous action `max_action` where the target is positive.
    pub positive_in_max_rows: Vec<usize>,
    /// States with own previous action `min_action` where the target is negative.
    pub negative_in_min_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignFeasibility {
    Feasible { max_action: usize, min_action: usize },
    /// Also returned for the zero vector when the player has a single action.
    Vacuous,
    Infeasible(Vec<PairViolation>),
}

impl SignFeasibility {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, SignFeasibility::Infeasible(_))
    }
}

/// Necessary condition for a nonzero `v` to lie in the span of some strategy
/// matrix of `player`: there are actions `a ≠ b` with `v <= 0` on every state
/// whose own action is `a` and `v >= 0` on every state whose own action is `b`.
pub fn sign_feasibility(target: &[Rational], player: usize, space: &StateSpace) -> SignFeasibility {
    assert_eq!(target.len(), space.size());
    if target.iter().all(Zero::is_zero) {
        return SignFeasibility::Vacuous;
    }
    let actions = space.actions(player);
    let mut positive = vec![Vec::new(); actions];
    let mut negative = vec![Vec::new(); actions];
    for (state, v) in target.iter().enumerate() {
        let own = space.action_of(state, player);
        if v.is_positive() {
            positive[own].push(state);
        } else if v.is_negative() {
            negative[own].push(state);
        }
    }
    let mut violations = Vec::new();
    for a in 0..actions {
        for b in 0..actions {
            if a == b {
                continue;
            }
            if positive[a].is_empty() && negative[b].is_empty() {
                return SignFeasibility::Feasible { max_action: a, min_action: b };
            }
            violations.push(PairViolation {
                max_action: a,
                min_action: b,
                positive_in_max_rows: positive[a].clone(),
                negative_in_min_rows: negative[b].clone(),
            });
        }
    }
    SignFeasibility::Infeasible(violations)
}

/// Outcome of checking the dimension-`N` impossibility results on one strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImpossibilityVerdict {
    /// Either a hypothesis failed (the check is vacuous) or `dim V_n < N`.
    Upheld { dimension: usize, nonzero_hypothesis: bool, distinct_payoff_hypothesis: bool },
    Violation { dimension: usize, nonzero_hypothesis: bool, distinct_payoff_hypothesis: bool, certificate: ZdCertificate },
}

impl ImpossibilityVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, ImpossibilityVerdict::Violation { .. })
    }
}

/// In weakly symmetric games, a single player cannot reach `dim V_n = N` when
/// (a) the strategy vectors have no zero entry and the payoff columns are
/// independent, or (b) another player's payoffs are pairwise distinct.
pub fn check_dimension_n_impossibility(game: &Game, pd: &PressDysonMatrix) -> Result<ImpossibilityVerdict> {
    if !game.is_weakly_symmetric()? {
        return Err(Error::Precondition("game is not weakly symmetric".into()));
    }
    let n_players = game.players();
    let certificate = detect_zd(pd, game);
    let dimension = certificate.as_ref().map_or(0, ZdCertificate::dimension);
    let nonzero_hypothesis = check_nonzero_pd(pd) && game.payoff_matrix().rank() == n_players + 1;
    let distinct_payoff_hypothesis = (0..n_players).filter(|&n| n != pd.player).any(|n| all_distinct(game.payoffs(n)));
    let applies = nonzero_hypothesis || distinct_payoff_hypothesis;
    Ok(match certificate {
        Some(certificate) if applies && dimension >= n_players => {
            ImpossibilityVerdict::Violation { dimension, nonzero_hypothesis, distinct_payoff_hypothesis, certificate }
        }
        _ => ImpossibilityVerdict::Upheld { dimension, nonzero_hypothesis, distinct_payoff_hypothesis },
    })
}

fn all_distinct(values: &[Rational]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// `dim span(V_n over all given certificates)`.
pub fn joint_dimension(certs: &[ZdCertificate]) -> usize {
    let all: Vec<Vec<Rational>> = certs.iter().flat_map(|c| c.basis.iter().cloned()).collect();
    rank_of(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::rational::{int, ratio};
    use crate::strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure};

    fn rel(v: &[i64]) -> LinearRelation {
        LinearRelation::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn tft_pd(space: &StateSpace, player: usize) -> PressDysonMatrix {
        let other = 1 - player;
        let coop: Vec<Rational> =
            (0..4).map(|i| if space.action_of(i, other) == 0 { int(1) } else { int(0) }).collect();
        let defect = coop.iter().map(|x| int(1) - x).collect();
        let s = MemoryOneStrategy::from_marginal(space, player, &[coop, defect]).unwrap();
        strategy_vectors(&s, &MonitoringStructure::perfect(space), space).unwrap()
    }

    #[test]
    fn relation_display() {
        assert_eq!(rel(&[0, 1, -1]).to_string(), "e1 - e2 = 0");
        assert_eq!(LinearRelation::fixes(2, 1, ratio(11, 4)).to_string(), "e2 = 11/4");
        assert_eq!(rel(&[3, 0, -2]).to_string(), "e2 = 3/2");
        assert_eq!(rel(&[0, 2, 4]).to_string(), "e1 + 2 e2 = 0");
        assert!(LinearRelation::new(vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn tit_for_tat_detected() {
        let game = Game::prisoners_dilemma(int(3), int(0), int(5), int(1));
        let pd = tft_pd(game.space(), 0);
        let cert = detect_zd(&pd, &game).unwrap();
        assert_eq!(cert.dimension(), 1);
        assert_eq!(cert.relations, vec![rel(&[0, 1, -1])]);
        assert!(cert.verify(&pd, &game).is_ok());
        assert!(!check_nonzero_pd(&pd));
    }

    #[test]
    fn repeat_not_zd() {
        let game = Game::prisoners_dilemma(int(3), int(0), int(5), int(1));
        let pd = PressDysonMatrix { player: 0, vectors: vec![vec![int(0); 4]; 2] };
        assert!(detect_zd(&pd, &game).is_none());
        assert!(!check_nonzero_pd(&pd));
    }

    #[test]
    fn consistency_examples() {
        let line = consistency_check(2, &[rel(&[0, 1, -1]), rel(&[0, 1, -1])]).unwrap();
        let set = line.solution.unwrap();
        assert_eq!(set.dimension(), 1);
        assert_eq!(set.particular, vec![int(0), int(0)]);
        assert_eq!(set.directions, vec![vec![int(1), int(1)]]);

        let point = consistency_check(2, &[LinearRelation::fixes(2, 1, ratio(11, 4)), LinearRelation::fixes(2, 0, int(2))])
            .unwrap();
        assert_eq!(point.solution.unwrap(), AffineSet { particular: vec![int(2), ratio(11, 4)], directions: vec![] });

        let free = consistency_check(3, &[]).unwrap();
        assert_eq!(free.solution.unwrap().dimension(), 3);

        let empty = consistency_check(2, &[LinearRelation::fixes(2, 0, int(1)), LinearRelation::fixes(2, 0, int(2))]).unwrap();
        assert!(!empty.is_consistent());
        assert_eq!((empty.rank_a, empty.rank_a_bar), (2, 1));
    }

    #[test]
    fn tit_for_tat_pair_dependent() {
        let game = Game::prisoners_dilemma(int(3), int(0), int(5), int(1));
        let pd1 = tft_pd(game.space(), 0);
        let pd2 = tft_pd(game.space(), 1);
        assert_eq!(pd2.vectors[0], pd1.vectors[0].iter().map(|x| -x.clone()).collect::<Vec<_>>());
        let c1 = detect_zd(&pd1, &game).unwrap();
        let c2 = detect_zd(&pd2, &game).unwrap();
        match independence_check(&[c1.clone(), c2]).unwrap() {
            Independence::Dependent(parts) => {
                let total: Vec<Rational> =
                    (0..4).map(|i| parts.iter().fold(int(0), |acc, p| acc + &p.vector[i])).collect();
                assert!(total.iter().all(Zero::is_zero));
                assert!(parts.iter().all(|p| p.vector.iter().any(|x| !x.is_zero())));
            }
            Independence::Independent => panic!("tit-for-tat pair must be dependent"),
        }
        assert_eq!(independence_check(&[c1.clone()]).unwrap(), Independence::Independent);
        assert!(independence_check(&[c1.clone(), c1]).is_err());
    }

    #[test]
    fn sign_conditions() {
        let space = StateSpace::new(&[3, 3]).unwrap();
        let rps: Vec<Rational> = [0, 1, -1, -1, 0, 1, 1, -1, 0].iter().map(|&x| int(x)).collect();
        match sign_feasibility(&rps, 0, &space) {
            SignFeasibility::Infeasible(v) => assert_eq!(v.len(), 6),
            other => panic!("{other:?}"),
        }
        assert_eq!(sign_feasibility(&vec![int(0); 9], 0, &space), SignFeasibility::Vacuous);
        let zs: Vec<Rational> = [0, 1, 0, -1, 0, 0, 0, 0, 0].iter().map(|&x| int(x)).collect();
        assert_eq!(sign_feasibility(&zs, 0, &space), SignFeasibility::Feasible { max_action: 1, min_action: 0 });
    }

    #[test]
    fn dependent_payoff_columns_flagged() {
        // zero-sum: s2 = -s1; V spans s1
        let space = StateSpace::new(&[2, 2]).unwrap();
        let s1: Vec<Rational> = [0, 1, -1, 0].iter().map(|&x| int(x)).collect();
        let s2: Vec<Rational> = s1.iter().map(|x| -x.clone()).collect();
        let game = Game::new(space.clone(), vec![s1, s2]).unwrap();
        let pd = tft_pd(&space, 0); // (0,-1,1,0) = -s1
        let cert = detect_zd(&pd, &game).unwrap();
        assert_eq!(cert.dimension(), 1);
        assert_eq!(cert.relations, vec![rel(&[0, 1, 0])]);
        assert_eq!(cert.structural, vec![rel(&[0, 1, 1])]);
        assert!(cert.is_nonunique());
        assert!(cert.verify(&pd, &game).is_ok());
    }

    #[test]
    fn impossibility_needs_weak_symmetry() {
        let space = StateSpace::new(&[2, 2]).unwrap();
        let game = Game::new(space.clone(), vec![vec![int(0), int(1), int(0), int(0)], vec![int(0); 4]]).unwrap();
        let pd = tft_pd(&space, 0);
        assert!(matches!(check_dimension_n_impossibility(&game, &pd), Err(Error::Precondition(_))));
    }
}

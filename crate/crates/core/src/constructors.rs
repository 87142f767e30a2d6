//! Closed-form ZD strategies: tit-for-tat, the imperfect-monitoring
//! equalizer, the simultaneous two-relation controller (perfect and
//! imperfect monitoring) and the zero-sum controller.
//!
//! Every constructor emits its certificate from the closed-form witnesses
//! and then cross-checks it against [`detect_zd`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, StateSpace};
use crate::rational::{format_rational, int, is_probability, one, ratio, zero, Rational};
use crate::strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure, PressDysonMatrix};
use crate::zd::{canonical_relations, detect_zd, ZdCertificate};

/// Everything needed to analyze or simulate a constructed strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub game: Game,
    pub monitoring: MonitoringStructure,
    pub strategy: MemoryOneStrategy,
    pub strategy_vectors: PressDysonMatrix,
    pub certificate: ZdCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualizerParams {
    pub beta: Rational,
    pub gamma: Rational,
}

impl EqualizerParams {
    /// The opponent payoff the equalizer enforces, `−γ/β`.
    pub fn target(&self) -> Rational {
        -&self.gamma / &self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllerParams {
    pub p: Rational,
    pub q: Rational,
    pub p_prime: Rational,
    pub q_prime: Rational,
}

impl ControllerParams {
    /// `p′q − pq′`, the common denominator of the witness coefficients.
    pub fn determinant(&self) -> Rational {
        &self.p_prime * &self.q - &self.p * &self.q_prime
    }

    fn validate(&self, bound: &Rational) -> Result<()> {
        let bound_name = if bound == &one() { "1".to_string() } else { format!("w = {}", format_rational(bound)) };
        for (name, v) in [("p", &self.p), ("q", &self.q), ("p'", &self.p_prime), ("q'", &self.q_prime)] {
            if v.is_negative() || v > bound {
                return Err(Error::InfeasibleParameters(format!(
                    "{name} = {} violates 0 <= {name} <= {bound_name}",
                    format_rational(v)
                )));
            }
        }
        if self.q > self.p {
            return Err(Error::InfeasibleParameters("q <= p is violated".into()));
        }
        if self.p_prime > self.q_prime {
            return Err(Error::InfeasibleParameters("p' <= q' is violated".into()));
        }
        if self.determinant().is_zero() {
            return Err(Error::DegenerateController("p'q - pq' = 0".into()));
        }
        Ok(())
    }
}

fn finish(game: Game, monitoring: MonitoringStructure, strategy: MemoryOneStrategy, mut claimed: ZdCertificate) -> Result<Construction> {
    let space = game.space().clone();
    let pd = strategy_vectors(&strategy, &monitoring, &space)?;
    claimed.verify(&pd, &game).map_err(|e| Error::InvalidInput(format!("closed-form certificate: {e}")))?;
    let detected = detect_zd(&pd, &game)
        .ok_or_else(|| Error::InvalidInput("constructed strategy is not ZD".into()))?;
    if detected.relations != claimed.relations {
        return Err(Error::InvalidInput(format!(
            "closed-form relations {:?} differ from detected {:?}",
            claimed.relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            detected.relations.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    claimed.structural = detected.structural;
    Ok(Construction { game, monitoring, strategy, strategy_vectors: pd, certificate: claimed })
}

/// Certificate from closed-form `(α_k, c_k)` pairs, put in canonical form.
fn certificate(game: &Game, player: usize, pairs: Vec<(Vec<Rational>, Vec<Rational>)>) -> Result<ZdCertificate> {
    let alphas: Vec<Vec<Rational>> = pairs.iter().map(|(a, _)| a.clone()).collect();
    let relations = canonical_relations(&alphas);
    if relations.len() != pairs.len() {
        return Err(Error::InvalidInput("closed-form relations are dependent".into()));
    }
    // express each canonical relation through the closed-form pairs
    let a = crate::linalg::Matrix::from_columns(&alphas, game.players() + 1);
    let mut witnesses = Vec::with_capacity(relations.len());
    for r in &relations {
        let mix = a.solve(r.alpha()).expect("canonical relation lies in the span");
        let width = pairs[0].1.len();
        let c = (0..width).map(|i| pairs.iter().zip(&mix).fold(zero(), |acc, ((_, c), m)| acc + &c[i] * m)).collect();
        witnesses.push(c);
    }
    let basis = relations.iter().map(|r| game.combine(r.alpha())).collect();
    Ok(ZdCertificate { player, basis, relations, witnesses, structural: Vec::new() })
}

/// Tit-for-tat for player 1 in a 2x2 game with `s1 = (R,S,T,P)`, `s2 = (R,T,S,P)`.
pub fn make_tit_for_tat(game: &Game) -> Result<Construction> {
    let space = game.space();
    if space.action_counts() != [2, 2] {
        return Err(Error::InvalidInput("tit-for-tat needs a two-player two-action game".into()));
    }
    let s1 = game.payoffs(0);
    let s2 = game.payoffs(1);
    let (r, s, t, p) = (&s1[0], &s1[1], &s1[2], &s1[3]);
    if s2 != [r.clone(), t.clone(), s.clone(), p.clone()] {
        return Err(Error::InvalidInput("payoffs are not in the (R,S,T,P) / (R,T,S,P) layout".into()));
    }
    if t == s {
        return Err(Error::DegeneratePayoff("T = S".into()));
    }
    // cooperate iff the opponent cooperated
    let coop: Vec<Rational> = (0..4).map(|i| if space.action_of(i, 1) == 0 { one() } else { zero() }).collect();
    let defect = coop.iter().map(|x| one() - x).collect();
    let strategy = MemoryOneStrategy::from_marginal(space, 0, &[coop, defect])?;
    // T̃(1) = (s1 − s2)/(T − S)
    let diff = t - s;
    let cert = certificate(game, 0, vec![(vec![zero(), one(), -one()], vec![diff, zero()])])?;
    finish(game.clone(), MonitoringStructure::perfect(space), strategy, cert)
}

/// Two-signal monitoring of the two-action equalizer example:
/// `W(1|1,1) = 1/2, W(1|1,2) = w, W(1|2,1) = 1 − w, W(1|2,2) = 1/2`.
pub fn winner_monitoring(w: &Rational) -> Result<MonitoringStructure> {
    let half = ratio(1, 2);
    let law = [half.clone(), w.clone(), one() - w, half]
        .into_iter()
        .map(|first| vec![first.clone(), one() - first])
        .collect();
    MonitoringStructure::new(vec!["1".into(), "2".into()], law)
}

/// Player-1 equalizer `T̃_1(1) = β s_2 + γ 1` under [`winner_monitoring`].
pub fn make_equalizer_imperfect(game: &Game, w: &Rational, params: &EqualizerParams) -> Result<Construction> {
    let space = game.space();
    if space.action_counts() != [2, 2] {
        return Err(Error::InvalidInput("the equalizer needs a two-player two-action game".into()));
    }
    if params.beta.is_zero() {
        return Err(Error::InfeasibleParameters("beta must be nonzero".into()));
    }
    let denom = one() - int(2) * w;
    if denom.is_zero() {
        return Err(Error::SingularMonitoring("w = 1/2 makes the signal uninformative".into()));
    }
    let s1 = game.payoffs(0);
    let (r, s, t, p) = (&s1[0], &s1[1], &s1[2], &s1[3]);
    let (beta, gamma) = (&params.beta, &params.gamma);
    let two = int(2);
    let entries = [
        ("T̂1(1|1,1)", (&two * (one() - w) * r - t) / &denom * beta + gamma + one()),
        ("T̂1(1|1,2)", (t - &two * w * r) / &denom * beta + gamma + one()),
        ("T̂1(1|2,1)", (s - &two * w * p) / &denom * beta + gamma),
        ("T̂1(1|2,2)", (&two * (one() - w) * p - s) / &denom * beta + gamma),
    ];
    if let Some((name, v)) = entries.iter().find(|(_, v)| !is_probability(v)) {
        return Err(Error::InfeasibleParameters(format!("{name} = {} is outside [0, 1]", format_rational(v))));
    }
    let table = entries.iter().map(|(_, v)| vec![v.clone(), one() - v]).collect();
    let strategy = MemoryOneStrategy::new(0, 2, 2, table)?;
    let monitoring = winner_monitoring(w)?;
    let cert = certificate(game, 0, vec![(vec![gamma.clone(), zero(), beta.clone()], vec![one(), zero()])])?;
    finish(game.clone(), monitoring, strategy, cert)
}

/// `s1 = (0, r1, 0, r2, 0, ...)`, `s2 = (0, r2, 0, r1, 0, ...)` on a 3x3 space.
pub fn controller_game(r1: &Rational, r2: &Rational) -> Game {
    let space = StateSpace::new(&[3, 3]).expect("3x3");
    let mut s1 = vec![zero(); 9];
    let mut s2 = vec![zero(); 9];
    s1[1] = r1.clone();
    s1[3] = r2.clone();
    s2[1] = r2.clone();
    s2[3] = r1.clone();
    Game::new(space, vec![s1, s2]).expect("valid game")
}

/// Marginal vectors `T_1(1), T_1(2), T_1(3)` shared by all controllers.
pub fn controller_marginals(params: &ControllerParams) -> [Vec<Rational>; 3] {
    let ControllerParams { p, q, p_prime, q_prime } = params;
    let z = zero;
    [
        vec![one(), one() - p, one(), p_prime.clone(), z(), z(), z(), z(), z()],
        vec![z(), q.clone(), z(), one() - q_prime, one(), one(), z(), z(), z()],
        vec![z(), p - q, z(), q_prime - p_prime, z(), z(), one(), one(), one()],
    ]
}

fn controller_witness(params: &ControllerParams, a: &Rational, b: &Rational) -> Vec<Rational> {
    // coefficients on T̃(1), T̃(2) reproducing the payoff vector with (r1, r2) = (a, b)
    let d = params.determinant();
    vec![(&params.q_prime * a + &params.q * b) / &d, (&params.p_prime * a + &params.p * b) / &d, zero()]
}

fn check_r(r1: &Rational, r2: &Rational) -> Result<()> {
    if r1 == r2 {
        return Err(Error::DegeneratePayoff("r1 = r2 makes s1, s2 and 1 linearly dependent".into()));
    }
    if *r1 == -r2.clone() {
        return Err(Error::DegeneratePayoff("r1 = -r2 makes s1, s2 and 1 linearly dependent".into()));
    }
    Ok(())
}

fn controller_certificate(game: &Game, params: &ControllerParams, r1: &Rational, r2: &Rational) -> Result<ZdCertificate> {
    certificate(
        game,
        0,
        vec![
            (vec![zero(), one(), zero()], controller_witness(params, r1, r2)),
            (vec![zero(), zero(), one()], controller_witness(params, r2, r1)),
        ],
    )
}

/// Perfect-monitoring controller enforcing `e1 = 0` and `e2 = 0` at once.
pub fn make_simultaneous_controller(r1: &Rational, r2: &Rational, params: &ControllerParams) -> Result<Construction> {
    check_r(r1, r2)?;
    params.validate(&one())?;
    let game = controller_game(r1, r2);
    let strategy = MemoryOneStrategy::from_marginal(game.space(), 0, &controller_marginals(params))?;
    let cert = controller_certificate(&game, params, r1, r2)?;
    let monitoring = MonitoringStructure::perfect(game.space());
    finish(game, monitoring, strategy, cert)
}

/// Signal `y` iff exactly one of the two nonzero-payoff states occurred, with probability `w`.
pub fn nonzero_payoff_monitoring(w: &Rational) -> Result<MonitoringStructure> {
    let law = (0..9)
        .map(|i| {
            let y = if i == 1 || i == 3 { w.clone() } else { zero() };
            vec![y.clone(), one() - y]
        })
        .collect();
    MonitoringStructure::new(vec!["y".into(), "n".into()], law)
}

/// The 18-entry signal-conditioned controller table, rows `(own previous action, signal)`.
pub fn controller_imperfect_table(w: &Rational, params: &ControllerParams) -> Vec<Vec<Rational>> {
    let ControllerParams { p, q, p_prime, q_prime } = params;
    let z = zero;
    vec![
        // own 1: y, n
        vec![(w - p) / w, q / w, (p - q) / w],
        vec![one(), z(), z()],
        // own 2: y, n
        vec![p_prime / w, (w - q_prime) / w, (q_prime - p_prime) / w],
        vec![z(), one(), z()],
        // own 3: y, n
        vec![z(), z(), one()],
        vec![z(), z(), one()],
    ]
}

/// Controller under [`nonzero_payoff_monitoring`]; parameters must lie in `[0, w]`.
pub fn make_simultaneous_controller_imperfect(
    r1: &Rational,
    r2: &Rational,
    w: &Rational,
    params: &ControllerParams,
) -> Result<Construction> {
    check_r(r1, r2)?;
    if !w.is_positive() || *w > one() {
        return Err(Error::InfeasibleParameters(format!("w = {} violates 0 < w <= 1", format_rational(w))));
    }
    params.validate(w)?;
    let game = controller_game(r1, r2);
    let monitoring = nonzero_payoff_monitoring(w)?;
    let strategy = MemoryOneStrategy::new(0, 3, 2, controller_imperfect_table(w, params))?;
    let cert = controller_certificate(&game, params, r1, r2)?;
    finish(game, monitoring, strategy, cert)
}

/// Zero-sum variant `s1 = (0, r, 0, −r, 0, ...)`, `s2 = −s1`.
pub fn zero_sum_game(r: &Rational) -> Game {
    controller_game(r, &-r.clone())
}

/// Zero-sum controller enforcing `e1 = 0` (and hence `e2 = 0`).
pub fn make_zero_sum_controller(r: &Rational, params: &ControllerParams) -> Result<Construction> {
    if r.is_zero() {
        return Err(Error::DegeneratePayoff("r = 0 gives an all-zero game".into()));
    }
    params.validate(&one())?;
    let game = zero_sum_game(r);
    let strategy = MemoryOneStrategy::from_marginal(game.space(), 0, &controller_marginals(params))?;
    let d = params.determinant();
    let witness = vec![r * (&params.q_prime - &params.q) / &d, r * (&params.p_prime - &params.p) / &d, zero()];
    let cert = certificate(&game, 0, vec![(vec![zero(), one(), zero()], witness)])?;
    let monitoring = MonitoringStructure::perfect(game.space());
    finish(game, monitoring, strategy, cert)
}

/// Human-readable summary such as `"e1 = 0, e2 = 0"`.
pub fn describe_relations(cert: &ZdCertificate) -> String {
    cert.relations.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

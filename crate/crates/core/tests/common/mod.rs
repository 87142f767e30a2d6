#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use num_traits::Signed;
use rand::{Rng, SeedableRng};

use zdkit_core::game::{Game, StateSpace};
use zdkit_core::rational::{int, ratio, zero, Rational};
use zdkit_core::strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure, PressDysonMatrix};
use zdkit_core::zd::LinearRelation;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random distribution with denominators bounded by `k * granularity`.
pub fn probability_vector(rng: &mut StdRng, k: usize, granularity: i64, interior: bool) -> Vec<Rational> {
    loop {
        let lo = if interior { 1 } else { 0 };
        let weights: Vec<i64> = (0..k).map(|_| rng.random_range(lo..=granularity)).collect();
        let total: i64 = weights.iter().sum();
        if total > 0 {
            return weights.iter().map(|&w| ratio(w, total)).collect();
        }
    }
}

pub fn small_rational(rng: &mut StdRng, range: i64) -> Rational {
    ratio(rng.random_range(-range..=range), rng.random_range(1..=4))
}

pub fn nonzero_rational(rng: &mut StdRng, range: i64) -> Rational {
    loop {
        let r = small_rational(rng, range);
        if r != zero() {
            return r;
        }
    }
}

pub fn payoff_vector(rng: &mut StdRng, m: usize) -> Vec<Rational> {
    (0..m).map(|_| int(rng.random_range(-5..=5))).collect()
}

pub fn random_space(rng: &mut StdRng, players: std::ops::RangeInclusive<usize>, actions: std::ops::RangeInclusive<usize>) -> StateSpace {
    let n = rng.random_range(players);
    let counts: Vec<usize> = (0..n).map(|_| rng.random_range(actions.clone())).collect();
    StateSpace::new(&counts).unwrap()
}

/// Perfect monitoring about a third of the time, otherwise 1 to 3 random signals.
pub fn random_monitoring(rng: &mut StdRng, space: &StateSpace, interior: bool) -> MonitoringStructure {
    if rng.random_bool(0.3) {
        return MonitoringStructure::perfect(space);
    }
    let b = rng.random_range(1..=3);
    let signals = (1..=b).map(|i| i.to_string()).collect();
    let law = (0..space.size()).map(|_| probability_vector(rng, b, 6, interior)).collect();
    MonitoringStructure::new(signals, law).unwrap()
}

pub fn random_strategy(
    rng: &mut StdRng,
    space: &StateSpace,
    player: usize,
    signals: usize,
    interior: bool,
) -> MemoryOneStrategy {
    let actions = space.actions(player);
    let table = (0..actions * signals).map(|_| probability_vector(rng, actions, 6, interior)).collect();
    MemoryOneStrategy::new(player, actions, signals, table).unwrap()
}

pub fn random_profile(rng: &mut StdRng, space: &StateSpace, monitoring: &MonitoringStructure, interior: bool) -> Vec<MemoryOneStrategy> {
    (0..space.players()).map(|n| random_strategy(rng, space, n, monitoring.signal_count(), interior)).collect()
}

/// A game in which the listed players are ZD by construction.
#[derive(Debug, Clone)]
pub struct ZdInstance {
    pub game: Game,
    pub monitoring: MonitoringStructure,
    pub strategies: Vec<MemoryOneStrategy>,
    pub zd_players: Vec<usize>,
    /// The relation planted for each ZD player.
    pub planted: Vec<LinearRelation>,
    pub pd: Vec<PressDysonMatrix>,
}

/// Builds random strategies first, then chooses payoffs so that each ZD
/// player's `T̃ c` lies in the payoff span.
///
/// ZD player `i` solves its relation for payoff `k_i`; later targets get a
/// zero coefficient so the equations can be solved in order.
pub fn random_zd_instance(rng: &mut StdRng, min_zd: usize, interior: bool) -> ZdInstance {
    loop {
        let space = random_space(rng, 2..=3, 2..=4);
        if space.size() > 36 {
            continue;
        }
        if let Some(instance) = try_zd_instance(rng, space, min_zd, interior) {
            return instance;
        }
    }
}

fn try_zd_instance(rng: &mut StdRng, space: StateSpace, min_zd: usize, interior: bool) -> Option<ZdInstance> {
    let n = space.players();
    let m = space.size();
    if min_zd > n {
        return None;
    }
    let monitoring = random_monitoring(rng, &space, interior);
    let strategies = random_profile(rng, &space, &monitoring, interior);
    let pd: Vec<PressDysonMatrix> = strategies.iter().map(|s| strategy_vectors(s, &monitoring, &space).unwrap()).collect();

    let z = rng.random_range(min_zd.max(1)..=n);
    let mut zd_players: Vec<usize> = (0..n).collect();
    zd_players.shuffle(rng);
    zd_players.truncate(z);
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    targets.truncate(z);

    let mut payoffs: Vec<Vec<Rational>> = (0..n).map(|_| payoff_vector(rng, m)).collect();
    let mut planted = Vec::with_capacity(z);
    for i in 0..z {
        let player = zd_players[i];
        let c: Vec<Rational> = (0..space.actions(player)).map(|_| small_rational(rng, 3)).collect();
        let v = pd[player].combine(&c);
        if v.iter().all(|x| *x == zero()) {
            return None;
        }
        let mut alpha: Vec<Rational> = (0..=n).map(|_| if rng.random_bool(0.5) { small_rational(rng, 3) } else { zero() }).collect();
        for &later in &targets[i + 1..] {
            alpha[later + 1] = zero();
        }
        let k = targets[i];
        alpha[k + 1] = nonzero_rational(rng, 3);
        let mut s_k = Vec::with_capacity(m);
        for state in 0..m {
            let mut rest = v[state].clone() - &alpha[0];
            for j in 0..n {
                if j != k {
                    rest -= &alpha[j + 1] * &payoffs[j][state];
                }
            }
            s_k.push(rest / &alpha[k + 1]);
        }
        payoffs[k] = s_k;
        planted.push(LinearRelation::new(alpha).unwrap());
    }
    let game = Game::new(space, payoffs).ok()?;
    Some(ZdInstance { game, monitoring, strategies, zd_players, planted, pd })
}

/// Symmetric two-player game `s_2(a, b) = s_1(b, a)`.
pub fn symmetric_two_player(rng: &mut StdRng, actions: usize, distinct: bool) -> Game {
    let space = StateSpace::new(&[actions, actions]).unwrap();
    let m = space.size();
    let s1: Vec<Rational> = if distinct {
        let mut values: Vec<i64> = (-20..=20).collect();
        values.shuffle(rng);
        values[..m].iter().map(|&v| int(v)).collect()
    } else {
        (0..m).map(|_| int(rng.random_range(-3..=3))).collect()
    };
    let s2 = (0..m)
        .map(|i| {
            let st = space.decode(i);
            s1[space.index(&[st[1], st[0]])].clone()
        })
        .collect();
    Game::new(space, vec![s1, s2]).unwrap()
}

/// A perfect-monitoring ZD strategy for `player` whose strategy vectors have
/// no zero entry, when the random target happens to be strictly sign-feasible.
///
/// With `c = e_a − e_b` the target `v` needs `v < 0` on rows with own action
/// `a` and `v > 0` on rows with own action `b`.
pub fn nonzero_zd_strategy(rng: &mut StdRng, game: &Game, player: usize) -> Option<(MemoryOneStrategy, LinearRelation)> {
    let space = game.space();
    let n = game.players();
    let actions = space.actions(player);
    let alpha: Vec<Rational> = (0..=n).map(|_| small_rational(rng, 3)).collect();
    let v = game.combine(&alpha);
    let (a, b) = strict_pair(&v, player, space)?;
    let scale = v.iter().map(|x| x.abs()).max()?;
    // ε |v| <= 1/4 keeps every probability inside (0, 1)
    let eps = ratio(1, 4) / scale;
    let half = ratio(1, 2);
    let quarter = ratio(1, 4);
    let mut columns = vec![vec![zero(); space.size()]; actions];
    for state in 0..space.size() {
        let own = space.action_of(state, player);
        let ev = &eps * &v[state];
        let mut col = vec![zero(); actions];
        let d = ev.abs();
        let (hi, lo) = if own == a { (a, b) } else { (b, a) };
        if own == a || own == b {
            // own == a: T(a) − T(b) = 1 − d;  own == b: T(b) − T(a) = 1 − d
            if actions == 2 {
                col[hi] = int(1) - &d * &half;
                col[lo] = &d * &half;
            } else {
                col[lo] = &d * &quarter;
                col[hi] = int(1) - &d * ratio(3, 4);
                let share = &d * &half / int(actions as i64 - 2);
                for x in (0..actions).filter(|&x| x != a && x != b) {
                    col[x] = share.clone();
                }
            }
        } else {
            let base = ratio(1, actions as i64);
            for x in 0..actions {
                col[x] = base.clone();
            }
            col[a] = &base + &ev * &half;
            col[b] = &base - &ev * &half;
        }
        for (x, p) in col.into_iter().enumerate() {
            columns[x][state] = p;
        }
    }
    let strategy = MemoryOneStrategy::from_marginal(space, player, &columns).ok()?;
    Some((strategy, LinearRelation::new(alpha).ok()?))
}

fn strict_pair(v: &[Rational], player: usize, space: &StateSpace) -> Option<(usize, usize)> {
    let actions = space.actions(player);
    for a in 0..actions {
        for b in 0..actions {
            if a == b {
                continue;
            }
            let ok = (0..space.size()).all(|s| match space.action_of(s, player) {
                x if x == a => v[s] < zero(),
                x if x == b => v[s] > zero(),
                _ => true,
            });
            if ok {
                return Some((a, b));
            }
        }
    }
    None
}

/// Max-norm distance of an `f64` vector from zero.
pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

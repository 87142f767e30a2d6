//! Memory-one strategies under public monitoring.
//!
//! A strategy is stored in its signal-conditioned form `T̂_n(σ_n | σ'_n, τ)`
//! even under perfect monitoring, where the signal is the previous joint
//! state itself.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::StateSpace;
use crate::linalg::Matrix;
use crate::rational::{is_probability, one, sum, zero, Rational};

/// Signal set `B` with the conditional law `W(τ | σ')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitoringStructure {
    signals: Vec<String>,
    /// `law[σ'][τ]`
    law: Vec<Vec<Rational>>,
    perfect: bool,
}

impl MonitoringStructure {
    pub fn new(signals: Vec<String>, law: Vec<Vec<Rational>>) -> Result<Self> {
        if signals.is_empty() {
            return Err(Error::InvalidInput("monitoring needs at least one signal".into()));
        }
        for (state, row) in law.iter().enumerate() {
            check_distribution(row, signals.len())
                .map_err(|e| Error::InvalidInput(format!("signal law for state {state}: {e}")))?;
        }
        Ok(MonitoringStructure { signals, law, perfect: false })
    }

    /// `B = Σ` with `W(τ | σ') = δ(τ, σ')`; signals are labelled like `"1-2"`.
    pub fn perfect(space: &StateSpace) -> Self {
        let m = space.size();
        let signals = (0..m).map(|i| space.label(i)).collect();
        let law = (0..m)
            .map(|i| {
                let mut row = vec![zero(); m];
                row[i] = one();
                row
            })
            .collect();
        MonitoringStructure { signals, law, perfect: true }
    }

    pub fn is_perfect(&self) -> bool {
        self.perfect
    }

    pub fn signals(&self) -> &[String] {
        &self.signals
    }

    pub fn signal_count(&self) -> usize {
        self.signals.len()
    }

    pub fn signal_index(&self, label: &str) -> Option<usize> {
        self.signals.iter().position(|s| s == label)
    }

    pub fn law(&self, state: usize) -> &[Rational] {
        &self.law[state]
    }

    pub fn states(&self) -> usize {
        self.law.len()
    }

    pub fn check_space(&self, space: &StateSpace) -> Result<()> {
        if self.law.len() != space.size() {
            return Err(Error::InvalidInput(format!(
                "monitoring covers {} states, game has {}",
                self.law.len(),
                space.size()
            )));
        }
        Ok(())
    }
}

fn check_distribution(row: &[Rational], len: usize) -> core::result::Result<(), String> {
    if row.len() != len {
        return Err(format!("expected {len} entries, got {}", row.len()));
    }
    if let Some(x) = row.iter().find(|x| !is_probability(x)) {
        return Err(format!("entry {} outside [0, 1]", crate::rational::format_rational(x)));
    }
    let total = sum(row);
    if !total.is_one() {
        return Err(format!("entries sum to {}", crate::rational::format_rational(&total)));
    }
    Ok(())
}

/// `T̂_n(σ_n | σ'_n, τ)` for one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryOneStrategy {
    player: usize,
    actions: usize,
    signals: usize,
    /// `table[own_prev * signals + τ][σ_n]`
    table: Vec<Vec<Rational>>,
}

impl MemoryOneStrategy {
    pub fn new(player: usize, actions: usize, signals: usize, table: Vec<Vec<Rational>>) -> Result<Self> {
        if table.len() != actions * signals {
            return Err(Error::InvalidInput(format!(
                "strategy of player {} needs {} rows, got {}",
                player + 1,
                actions * signals,
                table.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            check_distribution(row, actions).map_err(|e| {
                Error::InvalidInput(format!(
                    "strategy of player {}, previous action {}, signal #{}: {e}",
                    player + 1,
                    i / signals + 1,
                    i % signals
                ))
            })?;
        }
        Ok(MemoryOneStrategy { player, actions, signals, table })
    }

    /// Repeat the previous action with probability one.
    pub fn repeat(player: usize, actions: usize, signals: usize) -> Self {
        let table = (0..actions * signals)
            .map(|i| {
                let mut row = vec![zero(); actions];
                row[i / signals] = one();
                row
            })
            .collect();
        MemoryOneStrategy { player, actions, signals, table }
    }

    /// Same distribution regardless of history.
    pub fn constant(player: usize, signals: usize, distribution: Vec<Rational>) -> Result<Self> {
        let actions = distribution.len();
        Self::new(player, actions, signals, vec![distribution; actions * signals])
    }

    /// Perfect-monitoring strategy from its marginal vectors `T_n(σ_n | σ')`.
    ///
    /// `columns[σ_n][σ']`. Signal rows whose joint state disagrees with the
    /// player's own previous action never occur and are filled with Repeat.
    pub fn from_marginal(space: &StateSpace, player: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let actions = space.actions(player);
        let m = space.size();
        if columns.len() != actions || columns.iter().any(|c| c.len() != m) {
            return Err(Error::InvalidInput(format!(
                "marginal of player {} must be {} vectors of length {}",
                player + 1,
                actions,
                m
            )));
        }
        let mut table = Vec::with_capacity(actions * m);
        for own in 0..actions {
            for tau in 0..m {
                let row = if space.action_of(tau, player) == own {
                    columns.iter().map(|c| c[tau].clone()).collect()
                } else {
                    let mut r = vec![zero(); actions];
                    r[own] = one();
                    r
                };
                table.push(row);
            }
        }
        Self::new(player, actions, m, table)
    }

    pub fn player(&self) -> usize {
        self.player
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn signal_count(&self) -> usize {
        self.signals
    }

    pub fn row(&self, own_prev: usize, signal: usize) -> &[Rational] {
        &self.table[own_prev * self.signals + signal]
    }

    pub fn probability(&self, action: usize, own_prev: usize, signal: usize) -> &Rational {
        &self.row(own_prev, signal)[action]
    }

    pub fn check_against(&self, monitoring: &MonitoringStructure, space: &StateSpace) -> Result<()> {
        monitoring.check_space(space)?;
        if self.player >= space.players() {
            return Err(Error::InvalidInput(format!("no player {} in the game", self.player + 1)));
        }
        if self.actions != space.actions(self.player) {
            return Err(Error::InvalidInput(format!(
                "strategy of player {} has {} actions, game has {}",
                self.player + 1,
                self.actions,
                space.actions(self.player)
            )));
        }
        if self.signals != monitoring.signal_count() {
            return Err(Error::InvalidInput(format!(
                "strategy of player {} uses {} signals, monitoring has {}",
                self.player + 1,
                self.signals,
                monitoring.signal_count()
            )));
        }
        Ok(())
    }
}

/// `T_n(σ_n | σ')`, stored as one length-`M` vector per own action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalTransition {
    pub player: usize,
    pub vectors: Vec<Vec<Rational>>,
}

/// Strategy vectors `T̃_n(σ_n | σ') = T_n(σ_n | σ') - δ(σ_n, σ'_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PressDysonMatrix {
    pub player: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl PressDysonMatrix {
    pub fn actions(&self) -> usize {
        self.vectors.len()
    }

    pub fn states(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// The `M x M_n` matrix with the strategy vectors as columns.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors, self.states())
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.vectors.iter().flatten().any(Zero::is_zero)
    }

    /// `T̃_n c`.
    pub fn combine(&self, coefficients: &[Rational]) -> Vec<Rational> {
        self.matrix().mul_vec(coefficients)
    }

    /// Checks normalization, sign structure and entry bounds; returns the first violation.
    pub fn check_invariants(&self, space: &StateSpace) -> core::result::Result<(), String> {
        for state in 0..self.states() {
            let total = sum(self.vectors.iter().map(|v| &v[state]));
            if !total.is_zero() {
                return Err(format!("column sum at state {state} is nonzero"));
            }
            let own = space.action_of(state, self.player);
            for (action, v) in self.vectors.iter().enumerate() {
                let x = &v[state];
                if x.abs() > one() {
                    return Err(format!("entry ({action}, {state}) outside [-1, 1]"));
                }
                let ok = if action == own { !x.is_positive() } else { !x.is_negative() };
                if !ok {
                    return Err(format!("entry ({action}, {state}) has the wrong sign"));
                }
            }
        }
        Ok(())
    }
}

pub fn marginal_transition(
    strategy: &MemoryOneStrategy,
    monitoring: &MonitoringStructure,
    space: &StateSpace,
) -> Result<MarginalTransition> {
    strategy.check_against(monitoring, space)?;
    let n = strategy.player;
    let mut vectors = vec![vec![zero(); space.size()]; strategy.actions];
    for state in 0..space.size() {
        let own = space.action_of(state, n);
        for (tau, w) in monitoring.law(state).iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (action, p) in strategy.row(own, tau).iter().enumerate() {
                if !p.is_zero() {
                    vectors[action][state] += w * p;
                }
            }
        }
    }
    Ok(MarginalTransition { player: n, vectors })
}

/// Subtracts the Repeat kernel, which is built from the indexing alone.
pub fn press_dyson(marginal: &MarginalTransition, space: &StateSpace) -> PressDysonMatrix {
    let n = marginal.player;
    let mut vectors = marginal.vectors.clone();
    for state in 0..space.size() {
        vectors[space.action_of(state, n)][state] -= Rational::one();
    }
    PressDysonMatrix { player: n, vectors }
}

/// Convenience: marginal then Press-Dyson.
pub fn strategy_vectors(
    strategy: &MemoryOneStrategy,
    monitoring: &MonitoringStructure,
    space: &StateSpace,
) -> Result<PressDysonMatrix> {
    Ok(press_dyson(&marginal_transition(strategy, monitoring, space)?, space))
}

/// Orders a profile by player and checks there is exactly one strategy each.
pub fn order_profile<'a>(
    strategies: &'a [MemoryOneStrategy],
    space: &StateSpace,
) -> Result<Vec<&'a MemoryOneStrategy>> {
    let mut slots: Vec<Option<&MemoryOneStrategy>> = vec![None; space.players()];
    for s in strategies {
        let slot = slots
            .get_mut(s.player)
            .ok_or_else(|| Error::InvalidInput(format!("no player {} in the game", s.player + 1)))?;
        if slot.replace(s).is_some() {
            return Err(Error::InvalidInput(format!("two strategies for player {}", s.player + 1)));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(n, s)| s.ok_or_else(|| Error::InvalidInput(format!("missing strategy for player {}", n + 1))))
        .collect()
}

/// Joint transition matrix with entry `(σ, σ') = T(σ | σ')`; columns sum to one.
pub fn assemble_transition(
    strategies: &[MemoryOneStrategy],
    monitoring: &MonitoringStructure,
    space: &StateSpace,
) -> Result<Matrix> {
    let profile = order_profile(strategies, space)?;
    for s in &profile {
        s.check_against(monitoring, space)?;
    }
    let m = space.size();
    let n_players = space.players();
    let mut t = Matrix::zeros(m, m);
    let mut weights = vec![zero(); m];
    for prev in 0..m {
        let prev_state = space.decode(prev);
        for (tau, w) in monitoring.law(prev).iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            // product distribution over next joint states, built player by player
            for x in weights.iter_mut() {
                x.set_zero();
            }
            let mut partial: Vec<(usize, Rational)> = vec![(0, w.clone())];
            for n in 0..n_players {
                let row = profile[n].row(prev_state[n], tau);
                let stride = m / space.action_counts()[..=n].iter().product::<usize>();
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (base, weight) in &partial {
                    for (action, p) in row.iter().enumerate() {
                        if !p.is_zero() {
                            next.push((base + action * stride, weight * p));
                        }
                    }
                }
                partial = next;
            }
            for (idx, weight) in partial {
                weights[idx] += weight;
            }
            for (next_state, weight) in weights.iter().enumerate() {
                if !weight.is_zero() {
                    t[(next_state, prev)] += weight;
                }
            }
        }
    }
    Ok(t)
}

//! Existence search for ZD strategies over a finite family of candidate relations.
//!
//! For each candidate `α` the sign conditions on `S α` are checked first; a
//! failure proves that no strategy of the player can enforce that relation.
//! Survivors are attacked with a linear program per coefficient direction `c`:
//! find signal-conditioned probabilities with `T̃_n c = λ S α`, `λ > 0`.
//! The joint problem in `(T̂, c)` is bilinear, so fixing `c` makes the search
//! sound but not complete: `Inconclusive` means neither a construction nor a
//! sign-condition refutation was found.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::{one, zero, Rational};
use crate::strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure};
use crate::zd::{detect_zd, sign_feasibility, LinearRelation, PairViolation, SignFeasibility, ZdCertificate};

/// Finite family of candidate relations.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaFamily {
    Explicit(Vec<LinearRelation>),
    /// Every coefficient vector with entries from `values`; `α_0 = 0` when `gamma_zero`.
    Grid { values: Vec<Rational>, gamma_zero: bool },
    /// `e_k = t` for every player `k` and target `t`.
    Equalizers { targets: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Extra coefficient values; every vector over them is tried as a direction.
    pub direction_grid: Vec<Rational>,
    pub max_candidates: usize,
    pub max_directions: usize,
    pub max_lp_variables: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { direction_grid: Vec::new(), max_candidates: 10_000, max_directions: 4_096, max_lp_variables: 50_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrunedCandidate {
    pub relation: LinearRelation,
    pub violations: Vec<PairViolation>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found {
        relation: LinearRelation,
        direction: Vec<Rational>,
        /// `T̃_n c = scale · S α`
        scale: Rational,
        strategy: MemoryOneStrategy,
        certificate: ZdCertificate,
    },
    /// Every candidate fails the sign conditions.
    PrunedNonexistence { pruned: Vec<PrunedCandidate> },
    Inconclusive { pruned: Vec<PrunedCandidate>, unresolved: Vec<LinearRelation> },
}

impl SearchOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::PrunedNonexistence { .. } => "pruned-nonexistence",
            SearchOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Expands a family into canonical, deduplicated candidates with `S α ≠ 0`.
pub fn expand_family(game: &Game, family: &AlphaFamily, max_candidates: usize) -> Result<Vec<LinearRelation>> {
    let players = game.players();
    let raw: Vec<Vec<Rational>> = match family {
        AlphaFamily::Explicit(relations) => {
            if let Some(r) = relations.iter().find(|r| r.players() != players) {
                return Err(Error::InvalidInput(format!("relation over {} players in a {players}-player game", r.players())));
            }
            relations.iter().map(|r| r.alpha().to_vec()).collect()
        }
        AlphaFamily::Grid { values, gamma_zero } => {
            let free = if *gamma_zero { players } else { players + 1 };
            let count = grid_size(values.len(), free);
            if count.is_none_or(|c| c > max_candidates) {
                return Err(Error::ResourceLimit(format!(
                    "grid of {} values over {free} coefficients exceeds {max_candidates} candidates",
                    values.len()
                )));
            }
            grid_vectors(values, free)
                .into_iter()
                .map(|v| if *gamma_zero { core::iter::once(zero()).chain(v).collect() } else { v })
                .collect()
        }
        AlphaFamily::Equalizers { targets } => {
            if targets.len().saturating_mul(players) > max_candidates {
                return Err(Error::ResourceLimit(format!("{} equalizer targets exceed {max_candidates}", targets.len())));
            }
            (0..players)
                .flat_map(|k| targets.iter().map(move |t| LinearRelation::fixes(players, k, t.clone()).alpha().to_vec()))
                .collect()
        }
    };
    if raw.len() > max_candidates {
        return Err(Error::ResourceLimit(format!("{} candidates exceed {max_candidates}", raw.len())));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for alpha in raw {
        if alpha.iter().all(Zero::is_zero) || game.combine(&alpha).iter().all(Zero::is_zero) {
            continue;
        }
        let rel = LinearRelation::new(alpha)?.canonical();
        if seen.insert(rel.alpha().to_vec()) {
            out.push(rel);
        }
    }
    Ok(out)
}

fn grid_size(values: usize, slots: usize) -> Option<usize> {
    (0..slots).try_fold(1usize, |acc, _| acc.checked_mul(values))
}

fn grid_vectors(values: &[Rational], slots: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..slots {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Rational>| {
                values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn directions(actions: usize, options: &SearchOptions) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for a in 0..actions {
        for b in 0..actions {
            if a != b {
                let mut c = vec![zero(); actions];
                c[a] = one();
                c[b] = -one();
                seen.insert(c.clone());
                out.push(c);
            }
        }
    }
    if !options.direction_grid.is_empty() {
        if grid_size(options.direction_grid.len(), actions).is_none_or(|c| c > options.max_directions) {
            return Err(Error::ResourceLimit(format!(
                "direction grid of {} values over {actions} actions exceeds {}",
                options.direction_grid.len(),
                options.max_directions
            )));
        }
        for c in grid_vectors(&options.direction_grid, actions) {
            // constant vectors are annihilated by every strategy matrix
            if c.iter().all(|x| *x == c[0]) {
                continue;
            }
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub fn existence_search(
    game: &Game,
    monitoring: &MonitoringStructure,
    player: usize,
    family: &AlphaFamily,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    let space = game.space();
    monitoring.check_space(space)?;
    if player >= game.players() {
        return Err(Error::InvalidInput(format!("no player {} in the game", player + 1)));
    }
    let actions = space.actions(player);
    let variables = actions * actions * monitoring.signal_count() + 1;
    if variables > options.max_lp_variables {
        return Err(Error::ResourceLimit(format!("{variables} LP variables exceed {}", options.max_lp_variables)));
    }
    let candidates = expand_family(game, family, options.max_candidates)?;
    let dirs = directions(actions, options)?;

    let mut pruned = Vec::new();
    let mut unresolved = Vec::new();
    for relation in candidates {
        let target = game.combine(relation.alpha());
        match sign_feasibility(&target, player, space) {
            SignFeasibility::Infeasible(violations) => {
                pruned.push(PrunedCandidate { relation, violations });
                continue;
            }
            SignFeasibility::Feasible { .. } | SignFeasibility::Vacuous => {}
        }
        for c in &dirs {
            if let Some((scale, strategy)) = construct(game, monitoring, player, &target, c)? {
                let pd = strategy_vectors(&strategy, monitoring, space)?;
                let certificate = detect_zd(&pd, game).expect("constructed strategy enforces the candidate");
                return Ok(SearchOutcome::Found { relation, direction: c.clone(), scale, strategy, certificate });
            }
        }
        unresolved.push(relation);
    }
    Ok(if unresolved.is_empty() {
        SearchOutcome::PrunedNonexistence { pruned }
    } else {
        SearchOutcome::Inconclusive { pruned, unresolved }
    })
}

/// Solves `max λ` s.t. `T̃_n c = λ v` over valid signal-conditioned tables.
fn construct(
    game: &Game,
    monitoring: &MonitoringStructure,
    player: usize,
    target: &[Rational],
    c: &[Rational],
) -> Result<Option<(Rational, MemoryOneStrategy)>> {
    let space = game.space();
    let actions = space.actions(player);
    let signals = monitoring.signal_count();
    let var = |own: usize, tau: usize, action: usize| (own * signals + tau) * actions + action;
    let lambda = actions * signals * actions;
    let width = lambda + 1;

    let mut constraints = Vec::new();
    for own in 0..actions {
        for tau in 0..signals {
            let mut row = vec![zero(); width];
            for a in 0..actions {
                row[var(own, tau, a)] = one();
            }
            constraints.push(Constraint { coefficients: row, relation: Relation::Eq, rhs: one() });
        }
    }
    // Σ_τ W(τ|σ') Σ_σ c_σ T̂(σ|σ'_n, τ) − c_{σ'_n} = λ v(σ')
    for (state, v) in target.iter().enumerate() {
        let own = space.action_of(state, player);
        let mut row = vec![zero(); width];
        for (tau, w) in monitoring.law(state).iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (a, ca) in c.iter().enumerate() {
                if !ca.is_zero() {
                    row[var(own, tau, a)] += w * ca;
                }
            }
        }
        row[lambda] = -v.clone();
        constraints.push(Constraint { coefficients: row, relation: Relation::Eq, rhs: c[own].clone() });
    }
    let mut cap = vec![zero(); width];
    cap[lambda] = one();
    constraints.push(Constraint { coefficients: cap.clone(), relation: Relation::Le, rhs: one() });

    let lp = LinearProgram { objective: cap, constraints };
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let table = (0..actions * signals).map(|row| x[row * actions..(row + 1) * actions].to_vec()).collect();
            let strategy = MemoryOneStrategy::new(player, actions, signals, table)?;
            Ok(Some((value, strategy)))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::StateSpace;
    use crate::rational::int;

    fn rps() -> Game {
        let s1: Vec<Rational> = [0, 1, -1, -1, 0, 1, 1, -1, 0].iter().map(|&x| int(x)).collect();
        let s2 = s1.iter().map(|x| -x.clone()).collect();
        Game::new(StateSpace::new(&[3, 3]).unwrap(), vec![s1, s2]).unwrap()
    }

    #[test]
    fn rps_gamma_zero_family_is_pruned() {
        let game = rps();
        let pm = MonitoringStructure::perfect(game.space());
        let family = AlphaFamily::Grid { values: vec![int(-1), int(0), int(1), int(2)], gamma_zero: true };
        let out = existence_search(&game, &pm, 0, &family, &SearchOptions::default()).unwrap();
        match out {
            SearchOutcome::PrunedNonexistence { pruned } => {
                // canonical candidates reduce to ±s1 modulo s1 + s2 = 0
                assert!(!pruned.is_empty());
                assert!(pruned.iter().all(|p| p.violations.len() == 6));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_action_player_has_no_zd() {
        let game = Game::new(StateSpace::new(&[1, 2]).unwrap(), vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        let pm = MonitoringStructure::perfect(game.space());
        let family = AlphaFamily::Equalizers { targets: vec![int(0), int(1)] };
        let out = existence_search(&game, &pm, 0, &family, &SearchOptions::default()).unwrap();
        assert_eq!(out.status(), "pruned-nonexistence");
    }

    #[test]
    fn oversized_grid_is_a_resource_error() {
        let game = rps();
        let pm = MonitoringStructure::perfect(game.space());
        let values: Vec<Rational> = (0..30).map(int).collect();
        let family = AlphaFamily::Grid { values, gamma_zero: false };
        let err = existence_search(&game, &pm, 0, &family, &SearchOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn prisoners_dilemma_equalizer_found() {
        let game = Game::prisoners_dilemma(int(3), int(0), int(5), int(1));
        let pm = MonitoringStructure::perfect(game.space());
        let family = AlphaFamily::Explicit(vec![LinearRelation::fixes(2, 1, int(2))]);
        match existence_search(&game, &pm, 0, &family, &SearchOptions::default()).unwrap() {
            SearchOutcome::Found { certificate, relation, .. } => {
                assert_eq!(certificate.relations, vec![relation]);
            }
            other => panic!("{other:?}"),
        }
    }
}

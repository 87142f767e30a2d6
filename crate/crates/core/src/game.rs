//! Joint state spaces, payoff vectors and symmetry structure.
//!
//! Joint states are indexed lexicographically with player 1 most
//! significant: for a 2x2 game the order is (1,1), (1,2), (2,1), (2,2).
//! Internally actions and players are 0-based; the 1-based convention only
//! appears in text and file formats.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Default upper bound on the player count for brute-force permutation search.
pub const DEFAULT_PERMUTATION_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    action_counts: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl StateSpace {
    pub fn new(action_counts: &[usize]) -> Result<Self> {
        if action_counts.is_empty() {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        if let Some(n) = action_counts.iter().position(|&m| m == 0) {
            return Err(Error::InvalidGame(format!("player {} has no actions", n + 1)));
        }
        let mut strides = vec![1; action_counts.len()];
        let mut size: usize = 1;
        for n in (0..action_counts.len()).rev() {
            strides[n] = size;
            size = size
                .checked_mul(action_counts[n])
                .ok_or_else(|| Error::InvalidGame("state space size overflows".into()))?;
        }
        Ok(StateSpace { action_counts: action_counts.to_vec(), strides, size })
    }

    pub fn players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn actions(&self, player: usize) -> usize {
        self.action_counts[player]
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    /// Number of joint states `M`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, state: &[usize]) -> usize {
        debug_assert_eq!(state.len(), self.players());
        state.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        (0..self.players()).map(|n| self.action_of(index, n)).collect()
    }

    /// Action of `player` in the joint state with flat index `index`.
    pub fn action_of(&self, index: usize, player: usize) -> usize {
        (index / self.strides[player]) % self.action_counts[player]
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size).map(|i| self.decode(i))
    }

    /// 1-based label such as `"1-2"` for a joint state.
    pub fn label(&self, index: usize) -> alloc::string::String {
        let parts: Vec<_> = self.decode(index).iter().map(|a| (a + 1).to_string()).collect();
        parts.join("-")
    }
}

/// A bijection on players, stored 0-based: `mapping[n] = pi(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(Error::InvalidInput(format!("{mapping:?} is not a permutation")));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { mapping: (0..n).collect() }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(a, b);
        Permutation { mapping }
    }

    pub fn apply(&self, n: usize) -> usize {
        self.mapping[n]
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// `(self ∘ other)(n) = self(other(n))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { mapping: other.mapping.iter().map(|&n| self.mapping[n]).collect() }
    }

    /// Permuted joint state `sigma_pi = (sigma_{pi(1)}, ..., sigma_{pi(N)})`.
    pub fn permute_state(&self, state: &[usize]) -> Vec<usize> {
        self.mapping.iter().map(|&m| state[m]).collect()
    }

    /// All permutations of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation { mapping: current.clone() }];
        while next_permutation(&mut current) {
            out.push(Permutation { mapping: current.clone() });
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    space: StateSpace,
    payoffs: Vec<Vec<Rational>>,
}

/// Witness permutations for weak symmetry, one per ordered player pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSymmetry {
    /// `(n, target, pi)` with `pi(n) = target` and the game symmetric under `pi`.
    pub witnesses: Vec<(usize, usize, Permutation)>,
}

impl Game {
    pub fn new(space: StateSpace, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if payoffs.len() != space.players() {
            return Err(Error::InvalidGame(format!(
                "expected {} payoff vectors, got {}",
                space.players(),
                payoffs.len()
            )));
        }
        if let Some(n) = payoffs.iter().position(|p| p.len() != space.size()) {
            return Err(Error::InvalidGame(format!(
                "payoff vector of player {} has {} entries, expected {}",
                n + 1,
                payoffs[n].len(),
                space.size()
            )));
        }
        Ok(Game { space, payoffs })
    }

    /// Two-player, two-action game with `s1 = (R,S,T,P)` and `s2 = (R,T,S,P)`.
    pub fn prisoners_dilemma(r: Rational, s: Rational, t: Rational, p: Rational) -> Self {
        let space = StateSpace::new(&[2, 2]).expect("2x2");
        let s1 = vec![r.clone(), s.clone(), t.clone(), p.clone()];
        let s2 = vec![r, t, s, p];
        Game { space, payoffs: vec![s1, s2] }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.players()
    }

    pub fn payoffs(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn all_payoffs(&self) -> &[Vec<Rational>] {
        &self.payoffs
    }

    /// The `M x (N+1)` matrix `(1, s_1, ..., s_N)`.
    pub fn payoff_matrix(&self) -> Matrix {
        let mut cols = Vec::with_capacity(self.players() + 1);
        cols.push(vec![Rational::one(); self.space.size()]);
        cols.extend(self.payoffs.iter().cloned());
        Matrix::from_columns(&cols, self.space.size())
    }

    /// `S alpha` for a coefficient vector over `(1, e_1, ..., e_N)`.
    pub fn combine(&self, alpha: &[Rational]) -> Vec<Rational> {
        assert_eq!(alpha.len(), self.players() + 1);
        (0..self.space.size())
            .map(|i| {
                self.payoffs
                    .iter()
                    .zip(&alpha[1..])
                    .filter(|(_, a)| !a.is_zero())
                    .fold(alpha[0].clone(), |acc, (s, a)| acc + &s[i] * a)
            })
            .collect()
    }

    /// True iff `M_n = M_pi(n)` and `s_pi(n)(sigma) = s_n(sigma_pi)` for all states and players.
    pub fn is_symmetric_under(&self, pi: &Permutation) -> bool {
        let n_players = self.players();
        if pi.len() != n_players {
            return false;
        }
        if (0..n_players).any(|n| self.space.actions(n) != self.space.actions(pi.apply(n))) {
            return false;
        }
        self.space.states().all(|state| {
            let permuted = self.space.index(&pi.permute_state(&state));
            let idx = self.space.index(&state);
            (0..n_players).all(|n| self.payoffs[pi.apply(n)][idx] == self.payoffs[n][permuted])
        })
    }

    /// Exhaustive weak-symmetry check with the default permutation bound.
    pub fn weak_symmetry(&self) -> Result<Option<WeakSymmetry>> {
        self.weak_symmetry_bounded(DEFAULT_PERMUTATION_BOUND)
    }

    pub fn weak_symmetry_bounded(&self, bound: usize) -> Result<Option<WeakSymmetry>> {
        let n = self.players();
        if n > bound {
            return Err(Error::SearchBoundExceeded { players: n, bound });
        }
        let symmetric: Vec<Permutation> =
            Permutation::all(n).into_iter().filter(|pi| self.is_symmetric_under(pi)).collect();
        let mut witnesses = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                match symmetric.iter().find(|pi| pi.apply(a) == b) {
                    Some(pi) => witnesses.push((a, b, pi.clone())),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(WeakSymmetry { witnesses }))
    }

    pub fn is_weakly_symmetric(&self) -> Result<bool> {
        Ok(self.weak_symmetry()?.is_some())
    }
}

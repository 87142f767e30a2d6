//! Monte Carlo episodes of a memory-one profile under public monitoring.
//!
//! Sampling inverts exact rational CDFs against a 53-bit uniform draw, so the
//! only floating-point step is reporting the running averages.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::game::{Game, StateSpace};
use crate::rational::{is_probability, scaled_ceiling, sum, to_f64, Rational};
use crate::strategy::{order_profile, MemoryOneStrategy, MonitoringStructure};

/// Generator identifier recorded in simulation metadata.
pub const RNG_ID: &str = "xoshiro256++ (splitmix64 seed expansion), rand_xoshiro 0.7";

const UNIFORM_BITS: u32 = 53;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialCondition {
    /// A joint state given as 0-based actions.
    Fixed(Vec<usize>),
    /// Independent per-player distributions over actions.
    Product(Vec<Vec<Rational>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpisodeConfig {
    pub steps: u64,
    pub seed: u64,
    pub initial: InitialCondition,
    pub record_every: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: u64,
    pub averages: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// 0-based actions at `t = steps`.
    pub final_state: Vec<usize>,
    pub final_averages: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub mean: Vec<f64>,
    /// Sample standard deviation (n − 1 denominator); zero for a single run.
    pub stddev: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub trajectories: Vec<Trajectory>,
    pub summary: BatchSummary,
}

/// Cumulative thresholds: outcome `j` is drawn when `u < thresholds[j]`.
#[derive(Debug, Clone)]
struct Sampler {
    thresholds: Vec<u64>,
}

impl Sampler {
    fn new(probabilities: &[Rational]) -> Self {
        let mut acc = Rational::zero();
        let thresholds = probabilities
            .iter()
            .map(|p| {
                acc += p;
                scaled_ceiling(&acc, UNIFORM_BITS)
            })
            .collect();
        Sampler { thresholds }
    }

    fn draw(&self, rng: &mut Xoshiro256PlusPlus) -> usize {
        let u = rng.next_u64() >> (64 - UNIFORM_BITS);
        self.thresholds.iter().position(|&t| u < t).expect("cumulative probabilities reach one")
    }
}

/// Everything an episode needs, validated and precomputed once.
struct Compiled {
    space: StateSpace,
    signal_samplers: Vec<Sampler>,
    /// `[player][own * signals + τ]`
    action_samplers: Vec<Vec<Sampler>>,
    signals: usize,
    strides: Vec<usize>,
    /// Payoffs scaled by a common denominator, per player and state.
    scaled_payoffs: Vec<Vec<BigInt>>,
    denominator: BigInt,
}

impl Compiled {
    fn new(game: &Game, strategies: &[MemoryOneStrategy], monitoring: &MonitoringStructure) -> Result<Self> {
        let space = game.space().clone();
        monitoring.check_space(&space)?;
        let profile = order_profile(strategies, &space)?;
        let signals = monitoring.signal_count();
        let mut action_samplers = Vec::with_capacity(profile.len());
        for s in &profile {
            s.check_against(monitoring, &space)?;
            let rows = (0..s.actions()).flat_map(|own| (0..signals).map(move |tau| (own, tau)));
            action_samplers.push(rows.map(|(own, tau)| Sampler::new(s.row(own, tau))).collect());
        }
        let signal_samplers = (0..space.size()).map(|i| Sampler::new(monitoring.law(i))).collect();
        let mut strides = vec![1; space.players()];
        for n in (0..space.players().saturating_sub(1)).rev() {
            strides[n] = strides[n + 1] * space.actions(n + 1);
        }
        let denominator = game
            .all_payoffs()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled_payoffs = game
            .all_payoffs()
            .iter()
            .map(|row| row.iter().map(|x| x.numer() * (&denominator / x.denom())).collect())
            .collect();
        Ok(Compiled { space, signal_samplers, action_samplers, signals, strides, scaled_payoffs, denominator })
    }

    fn initial_state(&self, initial: &InitialCondition, rng: &mut Xoshiro256PlusPlus) -> Result<Vec<usize>> {
        let players = self.space.players();
        match initial {
            InitialCondition::Fixed(state) => {
                if state.len() != players || state.iter().enumerate().any(|(n, &a)| a >= self.space.actions(n)) {
                    return Err(Error::InvalidInput(format!("initial state {state:?} is not a joint state")));
                }
                Ok(state.clone())
            }
            InitialCondition::Product(dists) => {
                if dists.len() != players {
                    return Err(Error::InvalidInput("one initial distribution per player is required".into()));
                }
                dists
                    .iter()
                    .enumerate()
                    .map(|(n, d)| {
                        if d.len() != self.space.actions(n)
                            || !d.iter().all(is_probability)
                            || !sum(d).is_one()
                        {
                            return Err(Error::InvalidInput(format!("initial distribution of player {} is invalid", n + 1)));
                        }
                        Ok(Sampler::new(d).draw(rng))
                    })
                    .collect()
            }
        }
    }

    fn averages(&self, totals: &[BigInt], t: u64) -> Vec<f64> {
        let d = &self.denominator * BigInt::from(t);
        totals.iter().map(|s| to_f64(&Rational::new(s.clone(), d.clone()))).collect()
    }
}

/// Runs one episode. Averages at time `t` cover the states `σ(1), ..., σ(t)`.
pub fn run_episode(
    game: &Game,
    strategies: &[MemoryOneStrategy],
    monitoring: &MonitoringStructure,
    config: &EpisodeConfig,
) -> Result<Trajectory> {
    let compiled = Compiled::new(game, strategies, monitoring)?;
    episode(&compiled, config)
}

fn episode(c: &Compiled, config: &EpisodeConfig) -> Result<Trajectory> {
    if config.steps == 0 || config.record_every == 0 {
        return Err(Error::InvalidInput("steps and record_every must be positive".into()));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(config.seed);
    let players = c.space.players();
    let mut actions = c.initial_state(&config.initial, &mut rng)?;
    let mut state: usize = actions.iter().zip(&c.strides).map(|(a, s)| a * s).sum();
    let mut totals = vec![BigInt::zero(); players];
    let mut samples = Vec::with_capacity((config.steps / config.record_every + 1) as usize);
    for t in 1..=config.steps {
        let tau = c.signal_samplers[state].draw(&mut rng);
        let mut next = 0;
        for n in 0..players {
            let a = c.action_samplers[n][actions[n] * c.signals + tau].draw(&mut rng);
            actions[n] = a;
            next += a * c.strides[n];
        }
        state = next;
        for (total, payoffs) in totals.iter_mut().zip(&c.scaled_payoffs) {
            *total += &payoffs[state];
        }
        if t % config.record_every == 0 || t == config.steps {
            samples.push(Sample { t, averages: c.averages(&totals, t) });
        }
    }
    let final_averages = samples.last().expect("at least one sample").averages.clone();
    Ok(Trajectory { samples, final_state: actions, final_averages })
}

/// Mean and sample standard deviation of the final averages.
pub fn summarize(trajectories: &[Trajectory]) -> BatchSummary {
    let players = trajectories.first().map_or(0, |t| t.final_averages.len());
    let count = trajectories.len() as f64;
    let mut mean = vec![0.0; players];
    let mut stddev = vec![0.0; players];
    for n in 0..players {
        mean[n] = trajectories.iter().map(|t| t.final_averages[n]).sum::<f64>() / count;
        if trajectories.len() > 1 {
            let ss: f64 = trajectories.iter().map(|t| (t.final_averages[n] - mean[n]) * (t.final_averages[n] - mean[n])).sum();
            stddev[n] = libm::sqrt(ss / (count - 1.0));
        }
    }
    BatchSummary { mean, stddev }
}

/// Runs every config in order. Callers wanting parallelism can run
/// [`run_episode`] per config and merge with [`summarize`].
pub fn run_batch(
    game: &Game,
    strategies: &[MemoryOneStrategy],
    monitoring: &MonitoringStructure,
    configs: &[EpisodeConfig],
) -> Result<BatchResult> {
    if configs.is_empty() {
        return Err(Error::InvalidInput("a batch needs at least one config".into()));
    }
    let compiled = Compiled::new(game, strategies, monitoring)?;
    let trajectories = configs.iter().map(|cfg| episode(&compiled, cfg)).collect::<Result<Vec<_>>>()?;
    let summary = summarize(&trajectories);
    Ok(BatchResult { trajectories, summary })
}

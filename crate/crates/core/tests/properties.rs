mod common;

use proptest::prelude::*;
use rand::Rng;

use zdkit_core::game::{Game, Permutation, StateSpace};
use zdkit_core::linalg::Matrix;
use zdkit_core::markov::{
    akin_residuals, cesaro_limit, expected_payoffs, is_irreducible, solve_profile, uniform, CesaroOptions, Method,
    Weights,
};
use zdkit_core::rational::{int, one, sum, zero, Rational};
use zdkit_core::strategy::{assemble_transition, marginal_transition, press_dyson, strategy_vectors};
use zdkit_core::zd::{check_nonzero_pd, consistency_check, detect_zd, independence_check, joint_dimension, Independence};

use common::*;

fn action_counts() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=12, 1..=5).prop_filter("at most 10^4 states", |c| c.iter().product::<usize>() <= 10_000)
}

/// Payoffs constant on the classes generated by `s_{π(n)}(σ) = s_n(σ_π)`.
fn symmetric_game(seed: u64, players: usize, actions: usize, generators: &[Permutation]) -> Game {
    let mut rng = rng(seed);
    let space = StateSpace::new(&vec![actions; players]).unwrap();
    let m = space.size();
    let mut parent: Vec<usize> = (0..players * m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for pi in generators {
        for n in 0..players {
            for i in 0..m {
                let permuted = space.index(&pi.permute_state(&space.decode(i)));
                let a = find(&mut parent, pi.apply(n) * m + i);
                let b = find(&mut parent, n * m + permuted);
                parent[a] = b;
            }
        }
    }
    let values: Vec<Rational> = (0..players * m).map(|_| int(rng.random_range(-4..=4))).collect();
    let payoffs = (0..players)
        .map(|n| (0..m).map(|i| values[find(&mut parent, n * m + i)].clone()).collect())
        .collect();
    Game::new(space, payoffs).unwrap()
}

fn permutation(players: usize, seed: u64) -> Permutation {
    let all = Permutation::all(players);
    all[(seed as usize) % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn state_indexing_round_trips(counts in action_counts()) {
        let space = StateSpace::new(&counts).unwrap();
        let mut previous: Option<Vec<usize>> = None;
        for i in 0..space.size() {
            let state = space.decode(i);
            prop_assert_eq!(space.index(&state), i);
            for (n, &a) in state.iter().enumerate() {
                prop_assert!(a < counts[n]);
                prop_assert_eq!(space.action_of(i, n), a);
            }
            if let Some(p) = &previous {
                prop_assert!(p < &state, "player 1 must be the most significant digit");
            }
            previous = Some(state);
        }
    }

    #[test]
    fn identity_is_always_a_symmetry(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 1..=3, 1..=3);
        let payoffs = (0..space.players()).map(|_| payoff_vector(&mut rng, space.size())).collect();
        let game = Game::new(space.clone(), payoffs).unwrap();
        prop_assert!(game.is_symmetric_under(&Permutation::identity(space.players())));
    }

    #[test]
    fn symmetries_are_closed_under_composition(
        seed in any::<u64>(),
        players in 2usize..=4,
        actions in 1usize..=3,
        g1 in any::<u64>(),
        g2 in any::<u64>(),
        two in any::<bool>(),
    ) {
        let mut generators = vec![permutation(players, g1)];
        if two {
            generators.push(permutation(players, g2));
        }
        let game = symmetric_game(seed, players, actions, &generators);
        for g in &generators {
            prop_assert!(game.is_symmetric_under(g));
        }
        let symmetries: Vec<Permutation> =
            Permutation::all(players).into_iter().filter(|p| game.is_symmetric_under(p)).collect();
        for a in &symmetries {
            for b in &symmetries {
                prop_assert!(game.is_symmetric_under(&a.compose(b)));
            }
        }
    }

    #[test]
    fn strategy_vectors_are_well_formed(seed in any::<u64>(), interior in any::<bool>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 1..=3, 1..=4);
        let monitoring = random_monitoring(&mut rng, &space, interior);
        for s in random_profile(&mut rng, &space, &monitoring, interior) {
            let marginal = marginal_transition(&s, &monitoring, &space).unwrap();
            for state in 0..space.size() {
                let column: Vec<&Rational> = marginal.vectors.iter().map(|v| &v[state]).collect();
                prop_assert!(column.iter().all(|p| **p >= zero() && **p <= one()));
                prop_assert_eq!(sum(column), one());
            }
            let pd = press_dyson(&marginal, &space);
            let m = pd.matrix();
            prop_assert!(m.mul_vec(&vec![one(); pd.actions()]).iter().all(|x| *x == zero()));
            prop_assert_eq!(pd.check_invariants(&space), Ok(()));
            prop_assert!(pd.rank() < space.actions(s.player()).max(1));
        }
    }

    #[test]
    fn joint_transition_marginalizes_to_player_transitions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 1..=3, 1..=3);
        let monitoring = random_monitoring(&mut rng, &space, false);
        let strategies = random_profile(&mut rng, &space, &monitoring, false);
        let t = assemble_transition(&strategies, &monitoring, &space).unwrap();
        for from in 0..space.size() {
            prop_assert_eq!(sum(t.column(from).iter()), one());
        }
        for s in &strategies {
            let marginal = marginal_transition(s, &monitoring, &space).unwrap();
            for from in 0..space.size() {
                for a in 0..space.actions(s.player()) {
                    let total = sum((0..space.size()).filter(|&to| space.action_of(to, s.player()) == a).map(|to| &t[(to, from)]));
                    prop_assert_eq!(&total, &marginal.vectors[a][from]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn akin_residuals_vanish_and_constants_are_preserved(seed in any::<u64>(), interior in any::<bool>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 2..=3, 2..=3);
        let monitoring = random_monitoring(&mut rng, &space, interior);
        let strategies = random_profile(&mut rng, &space, &monitoring, interior);
        let constant = int(rng.random_range(-7..=7));
        let payoffs = vec![vec![constant.clone(); space.size()]; space.players()];
        let game = Game::new(space.clone(), payoffs).unwrap();
        let sol = solve_profile(&game, &strategies, &monitoring, &uniform(space.size())).unwrap();
        for s in &strategies {
            let pd = strategy_vectors(s, &monitoring, &space).unwrap();
            match akin_residuals(&sol.stationary.rho, &pd) {
                Weights::Exact(r) => prop_assert!(r.iter().all(|x| *x == zero())),
                Weights::Approx(r) => prop_assert!(max_abs(&r) <= 1e-9, "residuals {:?}", r),
            }
        }
        match &sol.payoffs {
            Weights::Exact(e) => prop_assert!(e[1..].iter().all(|x| *x == constant)),
            Weights::Approx(e) => prop_assert!(e[1..].iter().all(|x| (x - constant_f64(&constant)).abs() <= 1e-9)),
        }
    }

    #[test]
    fn cesaro_agrees_with_exact_on_irreducible_chains(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let space = random_space(&mut rng, 2..=3, 2..=3);
        let monitoring = random_monitoring(&mut rng, &space, true);
        let strategies = random_profile(&mut rng, &space, &monitoring, true);
        let t = assemble_transition(&strategies, &monitoring, &space).unwrap();
        prop_assert!(is_irreducible(&t));
        let exact = zdkit_core::markov::stationary_distribution(&t, &uniform(space.size())).unwrap();
        prop_assert_eq!(exact.method, Method::ExactSolve);
        let (approx, _) = cesaro_limit(&t, &uniform(space.size()), CesaroOptions::default()).unwrap();
        let diff: Vec<f64> = exact.rho.to_f64().iter().zip(&approx).map(|(a, b)| a - b).collect();
        prop_assert!(max_abs(&diff) <= 1e-10, "difference {:?}", diff);
    }

    #[test]
    fn zd_sets_are_consistent_and_exclude_the_ones_vector(seed in any::<u64>(), interior in any::<bool>()) {
        let mut rng = rng(seed);
        let inst = random_zd_instance(&mut rng, 1, interior);
        let certs: Vec<_> = inst.zd_players.iter().map(|&n| detect_zd(&inst.pd[n], &inst.game).unwrap()).collect();
        let relations: Vec<_> = certs.iter().flat_map(|c| c.relations.iter().cloned()).collect();
        prop_assert!(consistency_check(inst.game.players(), &relations).unwrap().is_consistent());
        prop_assert!(joint_dimension(&certs) <= inst.game.players());

        let m = inst.game.space().size();
        let columns: Vec<Vec<Rational>> = inst.pd.iter().flat_map(|p| p.vectors.iter().cloned()).collect();
        let t = Matrix::from_columns(&columns, m);
        prop_assert_eq!(t.hstack(&Matrix::from_columns(&[vec![one(); m]], m)).rank(), t.rank() + 1);
    }

    #[test]
    fn nonzero_strategy_vectors_give_independent_zd_sets(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let inst = random_zd_instance(&mut rng, 2, true);
        prop_assume!(inst.zd_players.iter().all(|&n| check_nonzero_pd(&inst.pd[n])));
        let certs: Vec<_> = inst.zd_players.iter().map(|&n| detect_zd(&inst.pd[n], &inst.game).unwrap()).collect();
        prop_assert_eq!(independence_check(&certs).unwrap(), Independence::Independent);
    }

    #[test]
    fn detected_relations_are_enforced(seed in any::<u64>(), interior in any::<bool>()) {
        let mut rng = rng(seed);
        let inst = random_zd_instance(&mut rng, 1, interior);
        let sol = solve_profile(&inst.game, &inst.strategies, &inst.monitoring, &uniform(inst.game.space().size())).unwrap();
        for &n in &inst.zd_players {
            let cert = detect_zd(&inst.pd[n], &inst.game).unwrap();
            for rel in cert.relations.iter().chain(&cert.structural) {
                match &sol.payoffs {
                    Weights::Exact(e) => prop_assert_eq!(rel.evaluate(&e[1..]), zero()),
                    Weights::Approx(e) => {
                        let scale = rel.alpha().iter().map(|a| a.abs_f64()).fold(1.0, f64::max);
                        prop_assert!(rel.evaluate_f64(&e[1..]).abs() <= 1e-8 * scale, "{} at {:?}", rel, e);
                    }
                }
            }
        }
    }
}

#[test]
fn expected_payoffs_include_the_normalization() {
    let game = Game::prisoners_dilemma(int(3), int(0), int(5), int(1));
    let rho = Weights::Exact(uniform(4));
    let e = expected_payoffs(&rho, &game);
    assert_eq!(e.exact().unwrap()[0], one());
}

fn constant_f64(r: &Rational) -> f64 {
    zdkit_core::rational::to_f64(r)
}

trait AbsF64 {
    fn abs_f64(&self) -> f64;
}

impl AbsF64 for Rational {
    fn abs_f64(&self) -> f64 {
        zdkit_core::rational::to_f64(self).abs()
    }
}

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use zdkit_core::constructors::{
    describe_relations, make_equalizer_imperfect, make_simultaneous_controller, make_simultaneous_controller_imperfect,
    make_tit_for_tat, make_zero_sum_controller, Construction, ControllerParams, EqualizerParams,
};
use zdkit_core::game::{Game, StateSpace};
use zdkit_core::markov::{akin_residuals, point_mass, solve_profile, uniform, Weights};
use zdkit_core::rational::{format_rational, parse_list, parse_rational, Rational};
use zdkit_core::search::{existence_search, AlphaFamily, SearchOptions, SearchOutcome};
use zdkit_core::sim::{run_episode, summarize, EpisodeConfig, InitialCondition, Trajectory, RNG_ID};
use zdkit_core::strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure};
use zdkit_core::zd::{consistency_check, detect_zd, independence_check, Independence, LinearRelation, ZdCertificate};

use crate::error::CliError;
use crate::formats::{
    certificate_json, game_json, load_certificate, load_game, load_monitoring, load_strategy, monitoring_json,
    parse_state, rational_strings, strategy_json,
};
use crate::{AnalyzeArgs, CheckArgs, ConstructArgs, Context, Family, Outcome, SearchArgs, SearchFamily, SimulateArgs};

fn write_json(dir: &Path, name: &str, value: &Value, outputs: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let text = serde_json::to_string_pretty(value).expect("value serializes");
    fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    outputs.push(path);
    Ok(())
}

fn flag(name: &str, value: &Option<String>) -> Result<Rational, CliError> {
    let text = value.as_deref().ok_or_else(|| CliError::Validation(format!("--{name} is required for this family")))?;
    parse_rational(text).map_err(|e| CliError::Validation(format!("--{name}: {e}")))
}

fn vector_text(v: &[Rational]) -> String {
    format!("({})", rational_strings(v).join(", "))
}

fn f64_text(v: &[f64]) -> String {
    format!("({})", v.iter().map(|x| sig12(*x)).collect::<Vec<_>>().join(", "))
}

/// Rounds to 12 significant digits and prints the shortest exact form of the result.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn load_setup(
    game_path: &Path,
    monitoring_path: Option<&Path>,
) -> Result<(Game, MonitoringStructure), CliError> {
    let loaded = load_game(game_path)?;
    let monitoring = match monitoring_path {
        Some(p) => load_monitoring(p, loaded.game.space())?,
        None => loaded.monitoring.unwrap_or_else(|| MonitoringStructure::perfect(loaded.game.space())),
    };
    monitoring
        .check_space(loaded.game.space())
        .map_err(|e| CliError::Validation(format!("monitoring does not fit the game: {e}")))?;
    Ok((loaded.game, monitoring))
}

fn load_strategies(
    paths: &[PathBuf],
    game: &Game,
    monitoring: &MonitoringStructure,
) -> Result<Vec<MemoryOneStrategy>, CliError> {
    let mut strategies: Vec<MemoryOneStrategy> = Vec::with_capacity(paths.len());
    for path in paths {
        let s = load_strategy(path, game.space(), monitoring)?;
        if strategies.iter().any(|t| t.player() == s.player()) {
            return Err(CliError::Validation(format!("{}: second strategy for player {}", path.display(), s.player() + 1)));
        }
        strategies.push(s);
    }
    Ok(strategies)
}

fn initial_distribution(text: &str, space: &StateSpace) -> Result<Vec<Rational>, CliError> {
    if text == "uniform" {
        return Ok(uniform(space.size()));
    }
    Ok(point_mass(space.size(), space.index(&parse_state(text, space)?)))
}

fn weights_json(w: &Weights) -> Value {
    match w {
        Weights::Exact(v) => json!(rational_strings(v)),
        Weights::Approx(v) => json!(v),
    }
}

fn weights_text(w: &Weights) -> String {
    match w {
        Weights::Exact(v) => vector_text(v),
        Weights::Approx(v) => f64_text(v),
    }
}

fn status_line(cert: Option<&ZdCertificate>) -> String {
    match cert {
        Some(c) => format!("ZD, dim {}, {}", c.dimension(), describe_relations(c)),
        None => "not ZD".into(),
    }
}

pub fn analyze(args: &AnalyzeArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (game, monitoring) = load_setup(&args.game, args.monitoring.as_deref())?;
    let space = game.space();
    let mut strategies = load_strategies(&args.strategies, &game, &monitoring)?;
    strategies.sort_by_key(|s| s.player());

    let mut text = String::new();
    let mut players = Vec::new();
    let mut certs = Vec::new();
    let mut pds = Vec::new();
    for s in &strategies {
        let pd = strategy_vectors(s, &monitoring, space)?;
        let cert = detect_zd(&pd, &game);
        writeln!(text, "player {}: {}", s.player() + 1, status_line(cert.as_ref())).unwrap();
        if let Some(c) = cert.as_ref().filter(|c| c.is_nonunique()) {
            let structural: Vec<String> = c.structural.iter().map(ToString::to_string).collect();
            writeln!(text, "  note: the game itself satisfies {}; relations are reported modulo it", structural.join(", ")).unwrap();
        }
        players.push(json!({
            "player": s.player() + 1,
            "status": if cert.is_some() { "zd" } else { "not-zd" },
            "certificate": cert.as_ref().map(certificate_json),
        }));
        if let Some(c) = cert {
            certs.push(c);
        }
        pds.push(pd);
    }

    let mut report = json!({ "players": players });
    if strategies.len() == space.players() {
        let initial = initial_distribution(&args.initial, space)?;
        let sol = solve_profile(&game, &strategies, &monitoring, &initial)?;
        let st = &sol.stationary;
        match st.method {
            zdkit_core::markov::Method::ExactSolve => writeln!(text, "stationary: {}", st.method.name()).unwrap(),
            _ => writeln!(text, "stationary: {} ({} steps, residual {:e})", st.method.name(), st.steps, st.residual).unwrap(),
        }
        let payoffs = match &sol.payoffs {
            Weights::Exact(v) => Weights::Exact(v[1..].to_vec()),
            Weights::Approx(v) => Weights::Approx(v[1..].to_vec()),
        };
        writeln!(text, "payoffs: {}", weights_text(&payoffs)).unwrap();
        let mut residuals = Vec::new();
        for (s, pd) in strategies.iter().zip(&pds) {
            let r = akin_residuals(&st.rho, pd);
            writeln!(text, "akin residuals, player {}: max |r| = {}", s.player() + 1, sig12(r.max_abs())).unwrap();
            residuals.push(json!({ "player": s.player() + 1, "residuals": weights_json(&r), "max_abs": r.max_abs() }));
        }
        report["stationary"] = json!({
            "initial": args.initial,
            "method": st.method.name(),
            "steps": st.steps,
            "residual": st.residual,
            "distribution": weights_json(&st.rho),
            "payoffs": weights_json(&payoffs),
            "akin_residuals": residuals,
        });
    } else {
        writeln!(text, "stationary: skipped (profile covers {} of {} players)", strategies.len(), space.players()).unwrap();
    }

    let mut outputs = Vec::new();
    if let Some(dir) = &ctx.out {
        write_json(dir, "analysis.json", &report, &mut outputs)?;
        for c in &certs {
            write_json(dir, &format!("certificate-player{}.json", c.player + 1), &certificate_json(c), &mut outputs)?;
        }
    }
    Ok(Outcome { text, json: report, outputs })
}

fn affine_text(particular: &[Rational], directions: &[Vec<Rational>]) -> String {
    let names: Vec<String> = (1..=particular.len()).map(|n| format!("e{n}")).collect();
    let mut s = format!("({}) = {}", names.join(", "), vector_text(particular));
    for (k, d) in directions.iter().enumerate() {
        write!(s, " + t{} {}", k + 1, vector_text(d)).unwrap();
    }
    s
}

pub fn check(args: &CheckArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let certs = args.certificates.iter().map(|p| load_certificate(p)).collect::<Result<Vec<_>, _>>()?;
    let players = certs[0].relations[0].players();
    for (path, c) in args.certificates.iter().zip(&certs) {
        if c.relations.iter().chain(&c.structural).any(|r| r.players() != players) {
            return Err(CliError::Validation(format!("{}: relations over a different number of players", path.display())));
        }
    }
    let relations: Vec<LinearRelation> =
        certs.iter().flat_map(|c| c.relations.iter().chain(&c.structural).cloned()).collect();
    let system = consistency_check(players, &relations)?;
    let independence = independence_check(&certs)?;

    let mut text = String::new();
    for r in &relations {
        writeln!(text, "relation: {r}").unwrap();
    }
    writeln!(text, "rank A = {}, rank A-bar = {}", system.rank_a, system.rank_a_bar).unwrap();
    let solution_json = match &system.solution {
        Some(set) => {
            let shape = if set.is_point() { "unique point".to_string() } else { format!("affine set of dimension {}", set.dimension()) };
            writeln!(text, "consistent: yes, {shape}").unwrap();
            writeln!(text, "solution: {}", affine_text(&set.particular, &set.directions)).unwrap();
            json!({
                "particular": rational_strings(&set.particular),
                "directions": set.directions.iter().map(|d| rational_strings(d)).collect::<Vec<_>>(),
                "dimension": set.dimension(),
            })
        }
        None => {
            writeln!(text, "consistent: no").unwrap();
            Value::Null
        }
    };
    let independence_json = match &independence {
        Independence::Independent => {
            writeln!(text, "independence: independent").unwrap();
            json!({ "verdict": "independent" })
        }
        Independence::Dependent(parts) => {
            writeln!(text, "independence: dependent").unwrap();
            for part in parts {
                writeln!(
                    text,
                    "  player {}: coefficients {} give {}",
                    part.player + 1,
                    vector_text(&part.coefficients),
                    vector_text(&part.vector)
                )
                .unwrap();
            }
            writeln!(text, "  the vectors above sum to zero").unwrap();
            json!({
                "verdict": "dependent",
                "witness": parts.iter().map(|p| json!({
                    "player": p.player + 1,
                    "coefficients": rational_strings(&p.coefficients),
                    "vector": rational_strings(&p.vector),
                })).collect::<Vec<_>>(),
            })
        }
    };
    let report = json!({
        "relations": relations.iter().map(|r| rational_strings(r.alpha())).collect::<Vec<_>>(),
        "relations_text": relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rank_a": system.rank_a,
        "rank_a_bar": system.rank_a_bar,
        "consistent": system.is_consistent(),
        "solution": solution_json,
        "independence": independence_json,
    });
    let mut outputs = Vec::new();
    if let Some(dir) = &ctx.out {
        write_json(dir, "check.json", &report, &mut outputs)?;
    }
    Ok(Outcome { text, json: report, outputs })
}

fn controller_params(args: &ConstructArgs) -> Result<ControllerParams, CliError> {
    Ok(ControllerParams {
        p: flag("p", &args.p)?,
        q: flag("q", &args.q)?,
        p_prime: flag("pp", &args.pp)?,
        q_prime: flag("qp", &args.qp)?,
    })
}

fn pd_game(args: &ConstructArgs) -> Result<Game, CliError> {
    let text = args.payoffs.as_deref().ok_or_else(|| CliError::Validation("--payoffs R,S,T,P is required for this family".into()))?;
    let v = parse_list(text).map_err(|e| CliError::Validation(format!("--payoffs: {e}")))?;
    let [r, s, t, p]: [Rational; 4] =
        v.try_into().map_err(|_| CliError::Validation("--payoffs takes exactly four values R,S,T,P".into()))?;
    Ok(Game::prisoners_dilemma(r, s, t, p))
}

fn table_text(strategy: &MemoryOneStrategy, monitoring: &MonitoringStructure) -> String {
    let mut s = String::new();
    for own in 0..strategy.actions() {
        for (tau, label) in monitoring.signals().iter().enumerate() {
            writeln!(s, "  own {}, signal {label}: {}", own + 1, vector_text(strategy.row(own, tau))).unwrap();
        }
    }
    s
}

pub fn construct(args: &ConstructArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let c: Construction = match args.family {
        Family::Tft => make_tit_for_tat(&pd_game(args)?)?,
        Family::EqualizerImperfect => {
            let params = EqualizerParams { beta: flag("beta", &args.beta)?, gamma: flag("gamma", &args.gamma)? };
            make_equalizer_imperfect(&pd_game(args)?, &flag("w", &args.w)?, &params)?
        }
        Family::Controller => make_simultaneous_controller(&flag("r1", &args.r1)?, &flag("r2", &args.r2)?, &controller_params(args)?)?,
        Family::ControllerImperfect => make_simultaneous_controller_imperfect(
            &flag("r1", &args.r1)?,
            &flag("r2", &args.r2)?,
            &flag("w", &args.w)?,
            &controller_params(args)?,
        )?,
        Family::ZeroSumController => make_zero_sum_controller(&flag("r", &args.r)?, &controller_params(args)?)?,
    };
    let space = c.game.space();
    let cert = &c.certificate;
    let mut text = String::new();
    writeln!(text, "player {}: {}", cert.player + 1, status_line(Some(cert))).unwrap();
    writeln!(text, "strategy table (rows are distributions over own actions):").unwrap();
    text.push_str(&table_text(&c.strategy, &c.monitoring));

    let strategy = strategy_json(&c.strategy, &c.monitoring);
    let certificate = certificate_json(cert);
    let game = game_json(&c.game, None);
    let monitoring = monitoring_json(&c.monitoring, space);
    let report = json!({
        "relations_text": cert.relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "game": game,
        "monitoring": monitoring,
        "strategy": strategy,
        "certificate": certificate,
    });
    let mut outputs = Vec::new();
    if let Some(dir) = &ctx.out {
        write_json(dir, "game.json", &game, &mut outputs)?;
        write_json(dir, "monitoring.json", &monitoring, &mut outputs)?;
        write_json(dir, "strategy.json", &strategy, &mut outputs)?;
        write_json(dir, "certificate.json", &certificate, &mut outputs)?;
    }
    Ok(Outcome { text, json: report, outputs })
}

fn trajectory_csv(t: &Trajectory, players: usize) -> String {
    let mut s = String::from("t");
    for n in 1..=players {
        write!(s, ",avg_payoff_{n}").unwrap();
    }
    s.push('\n');
    for sample in &t.samples {
        write!(s, "{}", sample.t).unwrap();
        for x in &sample.averages {
            write!(s, ",{}", sig12(*x)).unwrap();
        }
        s.push('\n');
    }
    s
}

fn with_seed(path: &Path, seed: u64) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}-seed{seed}"),
    };
    path.with_file_name(name)
}

fn write_file(path: &Path, contents: &str, outputs: &mut Vec<PathBuf>) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    outputs.push(path.to_path_buf());
    Ok(())
}

pub fn simulate(args: &SimulateArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (game, monitoring) = load_setup(&args.game, args.monitoring.as_deref())?;
    let space = game.space();
    let strategies = load_strategies(&args.strategies, &game, &monitoring)?;
    if strategies.len() != space.players() {
        return Err(CliError::Validation(format!(
            "simulation needs one strategy per player, got {} of {}",
            strategies.len(),
            space.players()
        )));
    }
    if args.steps == 0 {
        return Err(CliError::Validation("--steps must be positive".into()));
    }
    let record_every = args.record_every.unwrap_or((args.steps / 1000).max(1));
    if record_every == 0 {
        return Err(CliError::Validation("--record-every must be positive".into()));
    }
    let initial = if args.initial == "uniform" {
        InitialCondition::Product((0..space.players()).map(|n| uniform(space.actions(n))).collect())
    } else {
        InitialCondition::Fixed(parse_state(&args.initial, space)?)
    };
    let batch = args.seeds.is_some();
    let seeds = args.seeds.clone().unwrap_or_else(|| vec![args.seed]);
    if seeds.is_empty() {
        return Err(CliError::Validation("--seeds needs at least one seed".into()));
    }
    let configs: Vec<EpisodeConfig> = seeds
        .iter()
        .map(|&seed| EpisodeConfig { steps: args.steps, seed, initial: initial.clone(), record_every })
        .collect();
    // par_iter keeps input order in collect, so results line up with seeds
    let trajectories = configs
        .par_iter()
        .map(|cfg| run_episode(&game, &strategies, &monitoring, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(&trajectories);

    let players = space.players();
    let csv_path = |seed: u64| -> Option<PathBuf> {
        match (&args.csv, &ctx.out, batch) {
            (Some(p), _, false) => Some(p.clone()),
            (Some(p), _, true) => Some(with_seed(p, seed)),
            (None, Some(dir), false) => Some(dir.join("trajectory.csv")),
            (None, Some(dir), true) => Some(dir.join(format!("trajectory-seed{seed}.csv"))),
            (None, None, _) => None,
        }
    };
    let mut outputs = Vec::new();
    let mut csv_on_stdout = None;
    let mut runs = Vec::new();
    for (cfg, t) in configs.iter().zip(&trajectories) {
        let csv = trajectory_csv(t, players);
        let path = csv_path(cfg.seed);
        if let Some(path) = &path {
            write_file(path, &csv, &mut outputs)?;
            let meta = json!({
                "seed": cfg.seed,
                "rng": RNG_ID,
                "steps": cfg.steps,
                "record_every": cfg.record_every,
                "initial": args.initial,
                "game": args.game,
                "monitoring": args.monitoring,
                "strategies": args.strategies,
                "csv": path,
            });
            let meta_path = path.with_extension("meta.json");
            write_file(&meta_path, &(serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n"), &mut outputs)?;
        } else if !batch {
            csv_on_stdout = Some(csv);
        }
        runs.push(json!({
            "seed": cfg.seed,
            "final_state": t.final_state.iter().map(|a| a + 1).collect::<Vec<_>>(),
            "final_averages": t.final_averages,
            "csv": path,
        }));
    }
    let report = json!({
        "rng": RNG_ID,
        "steps": args.steps,
        "record_every": record_every,
        "runs": runs,
        "mean": summary.mean,
        "stddev": summary.stddev,
    });
    let text = match csv_on_stdout {
        Some(csv) => csv,
        None => {
            let mut s = String::new();
            for (cfg, t) in configs.iter().zip(&trajectories) {
                writeln!(s, "seed {}: final averages {}", cfg.seed, f64_text(&t.final_averages)).unwrap();
            }
            if batch {
                writeln!(s, "mean {}", f64_text(&summary.mean)).unwrap();
                writeln!(s, "stddev {}", f64_text(&summary.stddev)).unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, json: report, outputs })
}

fn list(flag: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    parse_list(text).map_err(|e| CliError::Validation(format!("--{flag}: {e}")))
}

pub fn search(args: &SearchArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (game, monitoring) = load_setup(&args.game, args.monitoring.as_deref())?;
    if args.player == 0 || args.player > game.players() {
        return Err(CliError::Validation(format!("--player must be between 1 and {}", game.players())));
    }
    let player = args.player - 1;
    let family = match args.family {
        SearchFamily::GammaZero => AlphaFamily::Grid { values: list("grid", &args.grid)?, gamma_zero: true },
        SearchFamily::Grid => AlphaFamily::Grid { values: list("grid", &args.grid)?, gamma_zero: false },
        SearchFamily::Equalizer => {
            let targets = args.targets.as_deref().ok_or_else(|| CliError::Validation("--targets is required for the equalizer family".into()))?;
            AlphaFamily::Equalizers { targets: list("targets", targets)? }
        }
        SearchFamily::Relation => {
            if args.relations.is_empty() {
                return Err(CliError::Validation("--relation is required for the relation family".into()));
            }
            let relations = args
                .relations
                .iter()
                .map(|r| {
                    let alpha = list("relation", r)?;
                    if alpha.len() != game.players() + 1 {
                        return Err(CliError::Validation(format!("--relation {r:?} needs {} coefficients", game.players() + 1)));
                    }
                    LinearRelation::new(alpha).map_err(|e| CliError::Validation(format!("--relation {r:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            AlphaFamily::Explicit(relations)
        }
    };
    let mut options = SearchOptions { max_candidates: args.max_candidates, ..SearchOptions::default() };
    if let Some(grid) = &args.direction_grid {
        options.direction_grid = list("direction-grid", grid)?;
    }
    let outcome = existence_search(&game, &monitoring, player, &family, &options)?;

    let space = game.space();
    let mut text = format!("player {}: {}\n", args.player, outcome.status());
    let mut report = json!({ "player": args.player, "status": outcome.status() });
    let mut outputs = Vec::new();
    let pruned_json = |pruned: &[zdkit_core::search::PrunedCandidate], text: &mut String| -> Value {
        let mut items = Vec::new();
        for p in pruned {
            writeln!(text, "pruned: {}", p.relation).unwrap();
            let mut violations = Vec::new();
            for v in &p.violations {
                let labels = |rows: &[usize]| rows.iter().map(|&i| space.label(i)).collect::<Vec<_>>();
                writeln!(
                    text,
                    "  actions (max {}, min {}): positive at [{}], negative at [{}]",
                    v.max_action + 1,
                    v.min_action + 1,
                    labels(&v.positive_in_max_rows).join(" "),
                    labels(&v.negative_in_min_rows).join(" ")
                )
                .unwrap();
                violations.push(json!({
                    "max_action": v.max_action + 1,
                    "min_action": v.min_action + 1,
                    "positive_in_max_rows": labels(&v.positive_in_max_rows),
                    "negative_in_min_rows": labels(&v.negative_in_min_rows),
                }));
            }
            items.push(json!({ "relation": rational_strings(p.relation.alpha()), "relation_text": p.relation.to_string(), "violations": violations }));
        }
        Value::Array(items)
    };
    match &outcome {
        SearchOutcome::Found { relation, direction, scale, strategy, certificate } => {
            writeln!(text, "enforces: {relation}").unwrap();
            writeln!(text, "certificate: {}", status_line(Some(certificate))).unwrap();
            writeln!(text, "direction {}, scale {}", vector_text(direction), format_rational(scale)).unwrap();
            writeln!(text, "strategy table (rows are distributions over own actions):").unwrap();
            text.push_str(&table_text(strategy, &monitoring));
            let s = strategy_json(strategy, &monitoring);
            let c = certificate_json(certificate);
            report["relation"] = json!(rational_strings(relation.alpha()));
            report["relation_text"] = json!(relation.to_string());
            report["direction"] = json!(rational_strings(direction));
            report["scale"] = json!(format_rational(scale));
            report["strategy"] = s.clone();
            report["certificate"] = c.clone();
            if let Some(dir) = &ctx.out {
                write_json(dir, "strategy.json", &s, &mut outputs)?;
                write_json(dir, "certificate.json", &c, &mut outputs)?;
            }
        }
        SearchOutcome::PrunedNonexistence { pruned } => {
            writeln!(text, "every candidate fails the sign conditions for every action pair").unwrap();
            report["pruned"] = pruned_json(pruned, &mut text);
        }
        SearchOutcome::Inconclusive { pruned, unresolved } => {
            report["pruned"] = pruned_json(pruned, &mut text);
            for r in unresolved {
                writeln!(text, "unresolved: {r}").unwrap();
            }
            report["unresolved"] = json!(unresolved.iter().map(|r| rational_strings(r.alpha())).collect::<Vec<_>>());
        }
    }
    if let Some(dir) = &ctx.out {
        write_json(dir, "search.json", &report, &mut outputs)?;
    }
    Ok(Outcome { text, json: report, outputs })
}

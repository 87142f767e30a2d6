//! JSON file formats for games, monitoring structures, strategies and certificates.
//!
//! Players and actions are 1-based in files; flat state indices are 0-based
//! with player 1 as the most significant digit.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Value};

use zdkit_core::game::{Game, StateSpace};
use zdkit_core::rational::{format_rational, parse_rational, Rational};
use zdkit_core::strategy::{MemoryOneStrategy, MonitoringStructure};
use zdkit_core::zd::{LinearRelation, ZdCertificate};

use crate::error::CliError;

/// A rational given as `"p/q"`, a decimal string, or a JSON number.
#[derive(Debug, Clone)]
pub struct Q(pub Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match Value::deserialize(d)? {
            Value::String(s) => s,
            Value::Number(n) => n.to_string(),
            other => return Err(D::Error::custom(format!("expected a rational, found {other}"))),
        };
        parse_rational(&text).map(Q).map_err(D::Error::custom)
    }
}

fn rationals(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|q| q.0).collect()
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameSpec {
    players: Option<usize>,
    action_counts: Vec<usize>,
    payoffs: Vec<Vec<Q>>,
    monitoring: Option<MonitoringSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonitoringSpec {
    #[serde(default)]
    perfect: bool,
    signals: Option<Vec<String>>,
    law: Option<LawSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LawSpec {
    List(Vec<Vec<Q>>),
    /// Keyed by flat index or by state label such as `"1-2"`.
    Map(BTreeMap<String, Vec<Q>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategySpec {
    player: usize,
    signals: Vec<String>,
    table: TableSpec,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableSpec {
    /// `table[own - 1][signal position]`
    Nested(Vec<Vec<Vec<Q>>>),
    /// `table["own"]["signal label"]`
    Keyed(BTreeMap<String, BTreeMap<String, Vec<Q>>>),
}

#[derive(Deserialize)]
struct CertificateSpec {
    player: usize,
    relations: Vec<Vec<Q>>,
    basis: Vec<Vec<Q>>,
    #[serde(default)]
    witnesses: Vec<Vec<Q>>,
    #[serde(default)]
    structural: Vec<Vec<Q>>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let at = e.path().to_string();
        CliError::Validation(format!("{}: {}: {}", path.display(), if at == "." { "document".into() } else { at }, e.inner()))
    })
}

fn invalid(path: &Path, field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{}: {field}: {msg}", path.display()))
}

pub struct LoadedGame {
    pub game: Game,
    pub monitoring: Option<MonitoringStructure>,
}

pub fn load_game(path: &Path) -> Result<LoadedGame, CliError> {
    let spec: GameSpec = read_json(path)?;
    let space = StateSpace::new(&spec.action_counts).map_err(|e| invalid(path, "action_counts", e))?;
    if let Some(n) = spec.players {
        if n != space.players() {
            return Err(invalid(path, "players", format!("{n} players but {} action counts", space.players())));
        }
    }
    if spec.payoffs.len() != space.players() {
        return Err(invalid(path, "payoffs", format!("expected {} payoff vectors, found {}", space.players(), spec.payoffs.len())));
    }
    for (n, row) in spec.payoffs.iter().enumerate() {
        if row.len() != space.size() {
            return Err(invalid(path, &format!("payoffs[{n}]"), format!("expected {} entries, found {}", space.size(), row.len())));
        }
    }
    let payoffs = spec.payoffs.into_iter().map(rationals).collect();
    let game = Game::new(space, payoffs).map_err(|e| invalid(path, "payoffs", e))?;
    let monitoring = spec.monitoring.map(|m| monitoring_from_spec(m, game.space(), path, "monitoring.")).transpose()?;
    Ok(LoadedGame { game, monitoring })
}

pub fn load_monitoring(path: &Path, space: &StateSpace) -> Result<MonitoringStructure, CliError> {
    let spec: MonitoringSpec = read_json(path)?;
    monitoring_from_spec(spec, space, path, "")
}

fn monitoring_from_spec(spec: MonitoringSpec, space: &StateSpace, path: &Path, prefix: &str) -> Result<MonitoringStructure, CliError> {
    if spec.perfect {
        if spec.signals.is_some() || spec.law.is_some() {
            return Err(invalid(path, &format!("{prefix}perfect"), "perfect monitoring takes no signals or law"));
        }
        return Ok(MonitoringStructure::perfect(space));
    }
    let signals = spec.signals.ok_or_else(|| invalid(path, &format!("{prefix}signals"), "missing"))?;
    let law_spec = spec.law.ok_or_else(|| invalid(path, &format!("{prefix}law"), "missing"))?;
    let m = space.size();
    let law: Vec<Vec<Rational>> = match law_spec {
        LawSpec::List(rows) => {
            if rows.len() != m {
                return Err(invalid(path, &format!("{prefix}law"), format!("expected {m} rows, found {}", rows.len())));
            }
            rows.into_iter().map(rationals).collect()
        }
        LawSpec::Map(map) => {
            let mut rows: Vec<Option<Vec<Rational>>> = vec![None; m];
            for (key, row) in map {
                let idx = key
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < m)
                    .or_else(|| (0..m).find(|&i| space.label(i) == key))
                    .ok_or_else(|| invalid(path, &format!("{prefix}law.{key}"), "not a state index or label"))?;
                if rows[idx].replace(rationals(row)).is_some() {
                    return Err(invalid(path, &format!("{prefix}law.{key}"), "state given twice"));
                }
            }
            rows.into_iter()
                .enumerate()
                .map(|(i, r)| r.ok_or_else(|| invalid(path, &format!("{prefix}law"), format!("missing state {i} ({})", space.label(i)))))
                .collect::<Result<_, _>>()?
        }
    };
    MonitoringStructure::new(signals, law).map_err(|e| invalid(path, &format!("{prefix}law"), e))
}

pub fn load_strategy(path: &Path, space: &StateSpace, monitoring: &MonitoringStructure) -> Result<MemoryOneStrategy, CliError> {
    let spec: StrategySpec = read_json(path)?;
    if spec.player == 0 || spec.player > space.players() {
        return Err(invalid(path, "player", format!("must be between 1 and {}", space.players())));
    }
    let player = spec.player - 1;
    let actions = space.actions(player);
    // position of each file signal in the monitoring order
    let mut order = Vec::with_capacity(spec.signals.len());
    for label in &spec.signals {
        let idx = monitoring
            .signal_index(label)
            .ok_or_else(|| invalid(path, "signals", format!("signal {label:?} is not emitted by the monitoring structure")))?;
        order.push(idx);
    }
    if order.len() != monitoring.signal_count() {
        return Err(invalid(path, "signals", format!("expected {} signals, found {}", monitoring.signal_count(), order.len())));
    }
    let b = monitoring.signal_count();
    let mut table: Vec<Option<Vec<Rational>>> = vec![None; actions * b];
    match spec.table {
        TableSpec::Nested(rows) => {
            if rows.len() != actions {
                return Err(invalid(path, "table", format!("expected {actions} own actions, found {}", rows.len())));
            }
            for (own, per_signal) in rows.into_iter().enumerate() {
                if per_signal.len() != b {
                    return Err(invalid(path, &format!("table[{own}]"), format!("expected {b} signals, found {}", per_signal.len())));
                }
                for (pos, dist) in per_signal.into_iter().enumerate() {
                    table[own * b + order[pos]] = Some(rationals(dist));
                }
            }
        }
        TableSpec::Keyed(map) => {
            for (own_key, per_signal) in map {
                let own = own_key
                    .parse::<usize>()
                    .ok()
                    .filter(|&a| a >= 1 && a <= actions)
                    .ok_or_else(|| invalid(path, &format!("table.{own_key}"), format!("own action must be between 1 and {actions}")))?;
                for (label, dist) in per_signal {
                    let tau = spec
                        .signals
                        .iter()
                        .position(|s| *s == label)
                        .map(|p| order[p])
                        .ok_or_else(|| invalid(path, &format!("table.{own_key}.{label}"), "unknown signal"))?;
                    table[(own - 1) * b + tau] = Some(rationals(dist));
                }
            }
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.ok_or_else(|| {
                invalid(path, "table", format!("missing row for own action {} and signal {:?}", i / b + 1, monitoring.signals()[i % b]))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    MemoryOneStrategy::new(player, actions, b, table).map_err(|e| invalid(path, "table", e))
}

pub fn load_certificate(path: &Path) -> Result<ZdCertificate, CliError> {
    let spec: CertificateSpec = read_json(path)?;
    if spec.player == 0 {
        return Err(invalid(path, "player", "players are numbered from 1"));
    }
    let relations = spec
        .relations
        .into_iter()
        .enumerate()
        .map(|(k, r)| LinearRelation::new(rationals(r)).map_err(|e| invalid(path, &format!("relations[{k}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let structural = spec
        .structural
        .into_iter()
        .enumerate()
        .map(|(k, r)| LinearRelation::new(rationals(r)).map_err(|e| invalid(path, &format!("structural[{k}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let basis: Vec<Vec<Rational>> = spec.basis.into_iter().map(rationals).collect();
    if basis.len() != relations.len() {
        return Err(invalid(path, "basis", "one basis vector per relation is required"));
    }
    if relations.is_empty() {
        return Err(invalid(path, "relations", "a certificate needs at least one relation"));
    }
    Ok(ZdCertificate {
        player: spec.player - 1,
        basis,
        relations,
        witnesses: spec.witnesses.into_iter().map(rationals).collect(),
        structural,
    })
}

pub fn game_json(game: &Game, monitoring: Option<&MonitoringStructure>) -> Value {
    let mut v = json!({
        "players": game.players(),
        "action_counts": game.space().action_counts(),
        "payoffs": game.all_payoffs().iter().map(|p| rational_strings(p)).collect::<Vec<_>>(),
    });
    if let Some(m) = monitoring {
        v["monitoring"] = monitoring_json(m, game.space());
    }
    v
}

pub fn monitoring_json(m: &MonitoringStructure, space: &StateSpace) -> Value {
    if m.is_perfect() && m.signals().iter().enumerate().all(|(i, s)| *s == space.label(i)) {
        return json!({ "perfect": true });
    }
    let law: serde_json::Map<String, Value> =
        (0..m.states()).map(|i| (i.to_string(), json!(rational_strings(m.law(i))))).collect();
    json!({ "signals": m.signals(), "law": law })
}

pub fn strategy_json(s: &MemoryOneStrategy, monitoring: &MonitoringStructure) -> Value {
    let mut table = serde_json::Map::new();
    for own in 0..s.actions() {
        let per_signal: serde_json::Map<String, Value> = monitoring
            .signals()
            .iter()
            .enumerate()
            .map(|(tau, label)| (label.clone(), json!(rational_strings(s.row(own, tau)))))
            .collect();
        table.insert((own + 1).to_string(), Value::Object(per_signal));
    }
    json!({ "player": s.player() + 1, "signals": monitoring.signals(), "table": table })
}

pub fn certificate_json(cert: &ZdCertificate) -> Value {
    json!({
        "player": cert.player + 1,
        "status": "zd",
        "dimension": cert.dimension(),
        "relations": cert.relations.iter().map(|r| rational_strings(r.alpha())).collect::<Vec<_>>(),
        "relations_text": cert.relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "basis": cert.basis.iter().map(|b| rational_strings(b)).collect::<Vec<_>>(),
        "witnesses": cert.witnesses.iter().map(|w| rational_strings(w)).collect::<Vec<_>>(),
        "structural": cert.structural.iter().map(|r| rational_strings(r.alpha())).collect::<Vec<_>>(),
        "nonunique": cert.is_nonunique(),
    })
}

/// Parses `"1-2"` style joint states (1-based actions) into 0-based actions.
pub fn parse_state(text: &str, space: &StateSpace) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = text.split('-').collect();
    let bad = || CliError::Validation(format!("--initial: {text:?} is not a joint state of this game"));
    if parts.len() != space.players() {
        return Err(bad());
    }
    parts
        .iter()
        .enumerate()
        .map(|(n, p)| p.trim().parse::<usize>().ok().filter(|&a| a >= 1 && a <= space.actions(n)).map(|a| a - 1).ok_or_else(bad))
        .collect()
}

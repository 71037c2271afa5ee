//! Line-oriented model files.
//!
//! ```text
//! # comment
//! kind minimal
//! world w
//! world w'
//! rel w w'
//! true w' a bot
//! ```
//!
//! `rel` lines are generators; the loader closes them reflexively and
//! transitively, then validates against the declared kind.

use std::fmt::Write as _;

use super::{validate, Interpretation, ModelKind, Relation, WorldSet};
use crate::error::Error;
use crate::formula::Atom;

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::ModelFormat {
        line,
        message: message.into(),
    }
}

pub fn load_model(text: &str) -> Result<Interpretation, Error> {
    let mut kind = None;
    let mut worlds: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    let mut truths: Vec<(usize, usize, String)> = Vec::new();

    let index = |worlds: &[String], line: usize, name: &str| {
        worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| format_err(line, format!("undeclared world {name:?}")))
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut words = content.split_whitespace();
        let Some(keyword) = words.next() else { continue };
        let args: Vec<&str> = words.collect();
        match keyword {
            "kind" => {
                let [name] = args[..] else {
                    return Err(format_err(line, "expected `kind <logic>`"));
                };
                if kind.is_some() {
                    return Err(format_err(line, "kind declared twice"));
                }
                kind = Some(name.parse::<ModelKind>().map_err(|e| format_err(line, e))?);
            }
            "world" => {
                let [name] = args[..] else {
                    return Err(format_err(line, "expected `world <name>`"));
                };
                if worlds.iter().any(|w| w == name) {
                    return Err(format_err(line, format!("world {name:?} declared twice")));
                }
                worlds.push(name.to_string());
            }
            "rel" => {
                let [from, to] = args[..] else {
                    return Err(format_err(line, "expected `rel <world> <world>`"));
                };
                pairs.push((index(&worlds, line, from)?, index(&worlds, line, to)?));
            }
            "true" => {
                let Some((world, leaves)) = args.split_first() else {
                    return Err(format_err(line, "expected `true <world> <atom-or-bot>...`"));
                };
                let w = index(&worlds, line, world)?;
                for leaf in leaves {
                    truths.push((line, w, leaf.to_string()));
                }
            }
            other => return Err(format_err(line, format!("unknown directive {other:?}"))),
        }
    }

    let kind = kind.ok_or_else(|| format_err(0, "missing `kind` line"))?;
    if worlds.is_empty() {
        return Err(format_err(0, "no worlds declared"));
    }
    if worlds.len() > super::MAX_WORLDS {
        return Err(Error::TooManyWorlds(worlds.len()));
    }
    let relation = Relation::closure(worlds.len(), pairs);
    let mut m = Interpretation::new(worlds, relation, kind)?;
    let mut bottom = WorldSet::EMPTY;
    let mut atoms = std::collections::BTreeMap::<Atom, WorldSet>::new();
    for (line, w, leaf) in truths {
        if leaf == "bot" {
            bottom.insert(w);
        } else {
            let atom = Atom::new(leaf).map_err(|e| format_err(line, e.to_string()))?;
            atoms.entry(atom).or_default().insert(w);
        }
    }
    for (atom, set) in atoms {
        m.set_atom(atom, set);
    }
    m.set_bottom(bottom);

    let violations = validate(&m);
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(Error::InvalidModel(violations))
    }
}

/// Writes `m` so that [`load_model`] reads back an equal interpretation.
/// Every non-loop pair of the relation is listed.
pub fn write_model(m: &Interpretation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", m.kind());
    for name in m.world_names() {
        let _ = writeln!(out, "world {name}");
    }
    for (w, v) in m.relation().pairs().filter(|(w, v)| w != v) {
        let _ = writeln!(out, "rel {} {}", m.world_name(w), m.world_name(v));
    }
    for w in 0..m.world_count() {
        let mut leaves: Vec<String> = m
            .atoms()
            .filter(|(_, s)| s.contains(w))
            .map(|(a, _)| a.to_string())
            .collect();
        if m.bottom().contains(w) {
            leaves.push("bot".into());
        }
        if !leaves.is_empty() {
            let _ = writeln!(out, "true {} {}", m.world_name(w), leaves.join(" "));
        }
    }
    out
}

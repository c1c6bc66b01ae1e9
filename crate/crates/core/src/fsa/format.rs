//! The `.fsa` text format.
//!
//! Line-oriented, UTF-8, `#` starts a comment. Sections appear in order:
//!
//! ```text
//! event <name> <c|u>
//! state <name> [initial] [marked]
//! trans <src> <event> <dst>
//! ```
//!
//! Serialization writes events sorted by name, states in canonical id order
//! and transitions sorted by (source, event), so canonical automata
//! round-trip bit-exactly.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Alphabet, Automaton, Controllability, Event, FsaError};

fn parse_err(line: usize, msg: impl Into<String>) -> FsaError {
    FsaError::Parse { line, msg: msg.into() }
}

pub fn parse_fsa(text: &str) -> Result<Automaton, FsaError> {
    #[derive(PartialEq, PartialOrd)]
    enum Section {
        Events,
        States,
        Trans,
    }
    let mut section = Section::Events;
    let mut events: Vec<Event> = Vec::new();
    let mut event_names: HashSet<String> = HashSet::new();
    let mut names: Vec<String> = Vec::new();
    let mut state_index: HashMap<String, usize> = HashMap::new();
    let mut marked: Vec<bool> = Vec::new();
    let mut initial: Option<usize> = None;
    // Transitions are collected by name and resolved once the alphabet is
    // final, so event indices refer to the sorted order.
    let mut raw_trans: Vec<(usize, usize, String, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "event" => {
                if section > Section::Events {
                    return Err(parse_err(lineno, "event declarations must precede states"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(lineno, "expected: event <name> <c|u>"));
                }
                let ctrl = match tokens[2] {
                    "c" => Controllability::Controllable,
                    "u" => Controllability::Uncontrollable,
                    other => {
                        return Err(parse_err(lineno, format!("bad controllability '{other}'")))
                    }
                };
                let ev = Event::new(tokens[1], ctrl)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if !event_names.insert(tokens[1].to_string()) {
                    let prev = events.iter().find(|e| e.name() == tokens[1]).unwrap();
                    if prev.controllability() != ctrl {
                        return Err(FsaError::ControllabilityConflict(tokens[1].to_string()));
                    }
                    return Err(parse_err(lineno, format!("duplicate event '{}'", tokens[1])));
                }
                events.push(ev);
            }
            "state" => {
                if section > Section::States {
                    return Err(parse_err(lineno, "state declarations must precede transitions"));
                }
                section = Section::States;
                if tokens.len() < 2 {
                    return Err(parse_err(lineno, "expected: state <name> [initial] [marked]"));
                }
                let name = tokens[1];
                if state_index.contains_key(name) {
                    return Err(parse_err(lineno, format!("duplicate state '{name}'")));
                }
                let mut is_initial = false;
                let mut is_marked = false;
                for &flag in &tokens[2..] {
                    match flag {
                        "initial" if !is_initial => is_initial = true,
                        "marked" if !is_marked => is_marked = true,
                        other => {
                            return Err(parse_err(lineno, format!("bad state flag '{other}'")))
                        }
                    }
                }
                let id = names.len();
                names.push(name.to_string());
                state_index.insert(name.to_string(), id);
                marked.push(is_marked);
                if is_initial {
                    if initial.is_some() {
                        return Err(parse_err(lineno, "more than one initial state"));
                    }
                    initial = Some(id);
                }
            }
            "trans" => {
                section = Section::Trans;
                if tokens.len() != 4 {
                    return Err(parse_err(lineno, "expected: trans <src> <event> <dst>"));
                }
                let src = *state_index
                    .get(tokens[1])
                    .ok_or_else(|| parse_err(lineno, format!("unknown state '{}'", tokens[1])))?;
                if !event_names.contains(tokens[2]) {
                    return Err(parse_err(lineno, format!("unknown event '{}'", tokens[2])));
                }
                let dst = *state_index
                    .get(tokens[3])
                    .ok_or_else(|| parse_err(lineno, format!("unknown state '{}'", tokens[3])))?;
                raw_trans.push((lineno, src, tokens[2].to_string(), dst));
            }
            other => return Err(parse_err(lineno, format!("unknown directive '{other}'"))),
        }
    }

    let alphabet = Alphabet::new(events)?;
    let mut delta: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); names.len()];
    for (lineno, src, event, dst) in raw_trans {
        let ev = alphabet.index_of(&event).expect("checked during parse");
        if delta[src].insert(ev, dst).is_some() {
            return Err(parse_err(
                lineno,
                format!("nondeterministic: second transition from '{}' on '{}'", names[src], event),
            ));
        }
    }
    Automaton::from_parts(alphabet, names, marked, initial, delta)
}

/// Serialize in canonical section order. Duplicate display names (possible
/// after product-name truncation) are deterministically suffixed so the
/// output always re-parses.
pub fn serialize_fsa(a: &Automaton) -> String {
    let mut out = String::new();
    for e in a.alphabet().iter() {
        out.push_str(&format!("event {} {}\n", e.name(), e.controllability()));
    }
    let mut used: HashSet<String> = HashSet::new();
    let mut names: Vec<String> = Vec::with_capacity(a.num_states());
    for s in 0..a.num_states() {
        let mut name = a.state_name(s).to_string();
        if used.contains(&name) {
            let mut k = 2;
            while used.contains(&format!("{name}~{k}")) {
                k += 1;
            }
            name = format!("{name}~{k}");
        }
        used.insert(name.clone());
        names.push(name);
    }
    for s in 0..a.num_states() {
        out.push_str(&format!("state {}", names[s]));
        if a.initial() == Some(s) {
            out.push_str(" initial");
        }
        if a.is_marked(s) {
            out.push_str(" marked");
        }
        out.push('\n');
    }
    for s in 0..a.num_states() {
        for (e, t) in a.transitions_from(s) {
            out.push_str(&format!(
                "trans {} {} {}\n",
                names[s],
                a.alphabet().event(e).name(),
                names[t]
            ));
        }
    }
    out
}

//! Deterministic finite generators and the language-level operations
//! everything else builds on.
//!
//! States are dense integers `0..n-1` carrying a display name. The transition
//! function is partial and deterministic. An automaton without an initial
//! state denotes the empty language; its canonical form has zero states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

mod format;
mod ops;

pub use format::{parse_fsa, serialize_fsa};
pub use ops::{
    accepts, accessible, coaccessible, enumerate_language, enumerate_language_with_cap,
    is_isomorphic, meet, meet_with_pairs, sync, trim,
};

/// Default cap on `enumerate_language` word length.
pub const DEFAULT_ENUM_CAP: usize = 12;

/// Display names of composed states are truncated at this length.
pub const MAX_DISPLAY_NAME: usize = 120;

#[derive(Debug, Error)]
pub enum FsaError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid name '{0}': names must be non-empty, without whitespace or '#'")]
    InvalidName(String),
    #[error("conflicting controllability for event '{0}'")]
    ControllabilityConflict(String),
    #[error("duplicate event '{0}'")]
    DuplicateEvent(String),
    #[error("unknown event '{0}'")]
    UnknownEvent(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("nondeterministic transition from state {state} on '{event}'")]
    Nondeterministic { state: String, event: String },
    #[error("state index {0} out of range")]
    BadStateIndex(usize),
    #[error("enumeration length {requested} exceeds cap {cap}")]
    EnumCapExceeded { requested: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Controllability {
    Controllable,
    Uncontrollable,
}

impl Controllability {
    pub fn is_controllable(self) -> bool {
        matches!(self, Controllability::Controllable)
    }
}

impl fmt::Display for Controllability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Controllability::Controllable => write!(f, "c"),
            Controllability::Uncontrollable => write!(f, "u"),
        }
    }
}

/// A named event together with its (session-global) controllability.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Event {
    name: String,
    controllability: Controllability,
}

impl Event {
    pub fn new(name: impl Into<String>, controllability: Controllability) -> Result<Self, FsaError> {
        let name = name.into();
        check_name(&name)?;
        Ok(Event { name, controllability })
    }

    pub fn controllable(name: impl Into<String>) -> Result<Self, FsaError> {
        Event::new(name, Controllability::Controllable)
    }

    pub fn uncontrollable(name: impl Into<String>) -> Result<Self, FsaError> {
        Event::new(name, Controllability::Uncontrollable)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn controllability(&self) -> Controllability {
        self.controllability
    }

    pub fn is_controllable(&self) -> bool {
        self.controllability.is_controllable()
    }
}

pub(crate) fn check_name(name: &str) -> Result<(), FsaError> {
    if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
        return Err(FsaError::InvalidName(name.to_string()));
    }
    Ok(())
}

/// A finite, duplicate-free event set. Iteration order is sorted by name,
/// which is the canonical order used everywhere (serialization, BFS
/// tie-breaking, enumeration).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    events: Vec<Event>,
}

impl Alphabet {
    pub fn new(mut events: Vec<Event>) -> Result<Self, FsaError> {
        events.sort_by(|a, b| a.name.cmp(&b.name));
        for pair in events.windows(2) {
            if pair[0].name == pair[1].name {
                if pair[0].controllability != pair[1].controllability {
                    return Err(FsaError::ControllabilityConflict(pair[0].name.clone()));
                }
                return Err(FsaError::DuplicateEvent(pair[0].name.clone()));
            }
        }
        Ok(Alphabet { events })
    }

    pub fn empty() -> Self {
        Alphabet { events: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event> {
        self.events.iter()
    }

    pub fn event(&self, idx: usize) -> &Event {
        &self.events[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.events.binary_search_by(|e| e.name.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// True when every event of `self` appears in `other` with the same
    /// controllability.
    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.events.iter().all(|e| {
            other
                .index_of(&e.name)
                .map(|i| other.events[i].controllability == e.controllability)
                .unwrap_or(false)
        })
    }

    /// Union of two alphabets; shared names must agree on controllability.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet, FsaError> {
        let mut merged: BTreeMap<&str, &Event> = BTreeMap::new();
        for e in self.events.iter().chain(other.events.iter()) {
            match merged.get(e.name.as_str()) {
                Some(prev) if prev.controllability != e.controllability => {
                    return Err(FsaError::ControllabilityConflict(e.name.clone()));
                }
                Some(_) => {}
                None => {
                    merged.insert(&e.name, e);
                }
            }
        }
        Ok(Alphabet {
            events: merged.into_values().cloned().collect(),
        })
    }
}

/// Deterministic finite generator.
#[derive(Debug, Clone)]
pub struct Automaton {
    alphabet: Alphabet,
    names: Vec<String>,
    marked: Vec<bool>,
    initial: Option<usize>,
    /// Per-state successor map keyed by event index; `BTreeMap` keeps
    /// iteration in canonical event order.
    delta: Vec<BTreeMap<usize, usize>>,
}

impl Automaton {
    /// The canonical empty-language automaton: zero states, no initial.
    pub fn empty(alphabet: Alphabet) -> Self {
        Automaton {
            alphabet,
            names: Vec::new(),
            marked: Vec::new(),
            initial: None,
            delta: Vec::new(),
        }
    }

    /// Assemble an automaton from raw parts, validating index ranges and
    /// shapes. Display names are not required to be unique.
    pub fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        marked: Vec<bool>,
        initial: Option<usize>,
        delta: Vec<BTreeMap<usize, usize>>,
    ) -> Result<Self, FsaError> {
        let n = names.len();
        if marked.len() != n || delta.len() != n {
            return Err(FsaError::BadStateIndex(n));
        }
        for name in &names {
            check_name(name)?;
        }
        if let Some(i) = initial {
            if i >= n {
                return Err(FsaError::BadStateIndex(i));
            }
        }
        for row in &delta {
            for (&ev, &dst) in row {
                if ev >= alphabet.len() {
                    return Err(FsaError::UnknownEvent(format!("#{ev}")));
                }
                if dst >= n {
                    return Err(FsaError::BadStateIndex(dst));
                }
            }
        }
        Ok(Automaton { alphabet, names, marked, initial, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(|row| row.len()).sum()
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    /// True when the automaton denotes the empty language.
    pub fn is_empty_language(&self) -> bool {
        self.initial.is_none()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn is_marked(&self, s: usize) -> bool {
        self.marked[s]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.marked[s])
    }

    /// Successors of `s` in canonical event order.
    pub fn transitions_from(&self, s: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.delta[s].iter().map(|(&e, &t)| (e, t))
    }

    pub fn target(&self, s: usize, event_idx: usize) -> Option<usize> {
        self.delta[s].get(&event_idx).copied()
    }

    pub fn target_by_name(&self, s: usize, event: &str) -> Result<Option<usize>, FsaError> {
        let idx = self
            .alphabet
            .index_of(event)
            .ok_or_else(|| FsaError::UnknownEvent(event.to_string()))?;
        Ok(self.target(s, idx))
    }

    /// Event indices enabled at `s`, in canonical order.
    pub fn enabled(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.delta[s].keys().copied()
    }
}

/// Incremental, name-keyed construction of an automaton. State names must be
/// unique here (unlike product automata, whose display names are free-form).
#[derive(Debug)]
pub struct AutomatonBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    marked: Vec<bool>,
    initial: Option<usize>,
    delta: Vec<BTreeMap<usize, usize>>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        AutomatonBuilder {
            alphabet,
            names: Vec::new(),
            index: BTreeMap::new(),
            marked: Vec::new(),
            initial: None,
            delta: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: &str, marked: bool) -> Result<usize, FsaError> {
        check_name(name)?;
        if self.index.contains_key(name) {
            return Err(FsaError::Parse {
                line: 0,
                msg: format!("duplicate state '{name}'"),
            });
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.marked.push(marked);
        self.delta.push(BTreeMap::new());
        Ok(id)
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn set_initial(&mut self, state: usize) {
        self.initial = Some(state);
    }

    pub fn add_transition(&mut self, src: usize, event: &str, dst: usize) -> Result<(), FsaError> {
        let ev = self
            .alphabet
            .index_of(event)
            .ok_or_else(|| FsaError::UnknownEvent(event.to_string()))?;
        if src >= self.names.len() {
            return Err(FsaError::BadStateIndex(src));
        }
        if dst >= self.names.len() {
            return Err(FsaError::BadStateIndex(dst));
        }
        if self.delta[src].contains_key(&ev) {
            return Err(FsaError::Nondeterministic {
                state: self.names[src].clone(),
                event: event.to_string(),
            });
        }
        self.delta[src].insert(ev, dst);
        Ok(())
    }

    pub fn build(self) -> Automaton {
        Automaton {
            alphabet: self.alphabet,
            names: self.names,
            marked: self.marked,
            initial: self.initial,
            delta: self.delta,
        }
    }
}

/// A finite event-name sequence; names are resolved against an alphabet at
/// the point of use.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace(pub Vec<String>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Trace(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ev in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{ev}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Trace {
    type Err = FsaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let names: Vec<String> = s.split_whitespace().map(str::to_string).collect();
        for n in &names {
            check_name(n)?;
        }
        Ok(Trace(names))
    }
}

/// Outcome of running a trace on an automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Ran to completion and ended in a marked state.
    Marked,
    /// Ran to completion and ended in an unmarked state.
    InLanguage,
    /// The event at this index was not enabled (index 0 also covers the
    /// empty-language automaton, which cannot run anything).
    RejectedAt(usize),
}

/// Which language of an automaton an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanguageKind {
    /// The prefix-closed generated language L.
    Generated,
    /// The marked language L_m.
    Marked,
}

/// Compose a product display name, flattening nested parentheses and
/// truncating at [`MAX_DISPLAY_NAME`].
pub(crate) fn compose_name(a: &str, b: &str) -> String {
    let strip = |s: &str| -> String {
        if s.len() >= 2 && s.starts_with('(') && s.ends_with(')') {
            s[1..s.len() - 1].to_string()
        } else {
            s.to_string()
        }
    };
    let mut joined = format!("({},{})", strip(a), strip(b));
    if joined.len() > MAX_DISPLAY_NAME {
        joined.truncate(MAX_DISPLAY_NAME);
    }
    joined
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sorts_and_rejects_duplicates() {
        let al = Alphabet::new(vec![
            Event::uncontrollable("u").unwrap(),
            Event::controllable("a").unwrap(),
        ])
        .unwrap();
        assert_eq!(al.event(0).name(), "a");
        assert_eq!(al.event(1).name(), "u");
        assert_eq!(al.index_of("u"), Some(1));

        let dup = Alphabet::new(vec![
            Event::controllable("a").unwrap(),
            Event::controllable("a").unwrap(),
        ]);
        assert!(matches!(dup, Err(FsaError::DuplicateEvent(_))));

        let conflict = Alphabet::new(vec![
            Event::controllable("a").unwrap(),
            Event::uncontrollable("a").unwrap(),
        ]);
        assert!(matches!(conflict, Err(FsaError::ControllabilityConflict(_))));
    }

    #[test]
    fn event_names_are_validated() {
        assert!(Event::controllable("ok_name").is_ok());
        assert!(Event::controllable("bad name").is_err());
        assert!(Event::controllable("bad#name").is_err());
        assert!(Event::controllable("").is_err());
    }

    #[test]
    fn builder_rejects_nondeterminism() {
        let al = Alphabet::new(vec![Event::controllable("a").unwrap()]).unwrap();
        let mut b = AutomatonBuilder::new(al);
        let q0 = b.add_state("q0", true).unwrap();
        let q1 = b.add_state("q1", false).unwrap();
        let q2 = b.add_state("q2", false).unwrap();
        b.set_initial(q0);
        b.add_transition(q0, "a", q1).unwrap();
        let err = b.add_transition(q0, "a", q2).unwrap_err();
        assert!(matches!(err, FsaError::Nondeterministic { .. }));
    }

    #[test]
    fn trace_round_trips_through_display() {
        let t: Trace = "a b c".parse().unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.to_string(), "a b c");
        assert_eq!(Trace::empty().to_string(), "");
    }

    #[test]
    fn compose_name_flattens_and_truncates() {
        assert_eq!(compose_name("x", "y"), "(x,y)");
        assert_eq!(compose_name("(x,y)", "z"), "(x,y,z)");
        let long = "a".repeat(200);
        assert_eq!(compose_name(&long, "b").len(), MAX_DISPLAY_NAME);
    }
}

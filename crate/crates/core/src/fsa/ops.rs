//! Language-level operations: reachability restriction, trim, products,
//! membership and bounded enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{
    compose_name, Automaton, FsaError, LanguageKind, RunStatus, Trace, DEFAULT_ENUM_CAP,
};

/// Restrict to the states reachable from the initial state and renumber them
/// canonically: breadth-first discovery order, successors taken in event-name
/// order. Languages are unchanged.
pub fn accessible(a: &Automaton) -> Automaton {
    let Some(init) = a.initial() else {
        return Automaton::empty(a.alphabet().clone());
    };
    let mut order = Vec::new();
    let mut new_id = vec![usize::MAX; a.num_states()];
    let mut queue = VecDeque::new();
    new_id[init] = 0;
    order.push(init);
    queue.push_back(init);
    while let Some(s) = queue.pop_front() {
        for (_, t) in a.transitions_from(s) {
            if new_id[t] == usize::MAX {
                new_id[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let names = order.iter().map(|&s| a.state_name(s).to_string()).collect();
    let marked = order.iter().map(|&s| a.is_marked(s)).collect();
    let delta = order
        .iter()
        .map(|&s| {
            a.transitions_from(s)
                .map(|(e, t)| (e, new_id[t]))
                .collect::<BTreeMap<_, _>>()
        })
        .collect();
    Automaton::from_parts(a.alphabet().clone(), names, marked, Some(0), delta)
        .expect("accessible restriction preserves well-formedness")
}

/// Restrict to the states from which some marked state is reachable,
/// deleting transitions into removed states. If the initial state does not
/// survive (or is absent), the result is the canonical empty automaton.
/// The marked language is unchanged.
pub fn coaccessible(a: &Automaton) -> Automaton {
    let n = a.num_states();
    // Reverse reachability from the marked states.
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        for (_, t) in a.transitions_from(s) {
            rev[t].push(s);
        }
    }
    let mut keep = vec![false; n];
    let mut queue: VecDeque<usize> = a.marked_states().collect();
    for &s in &queue {
        keep[s] = true;
    }
    while let Some(s) = queue.pop_front() {
        for &p in &rev[s] {
            if !keep[p] {
                keep[p] = true;
                queue.push_back(p);
            }
        }
    }
    let initial = match a.initial() {
        Some(i) if keep[i] => i,
        _ => return Automaton::empty(a.alphabet().clone()),
    };
    let mut new_id = vec![usize::MAX; n];
    let mut names = Vec::new();
    let mut marked = Vec::new();
    for s in 0..n {
        if keep[s] {
            new_id[s] = names.len();
            names.push(a.state_name(s).to_string());
            marked.push(a.is_marked(s));
        }
    }
    let mut delta = vec![BTreeMap::new(); names.len()];
    for s in 0..n {
        if !keep[s] {
            continue;
        }
        for (e, t) in a.transitions_from(s) {
            if keep[t] {
                delta[new_id[s]].insert(e, new_id[t]);
            }
        }
    }
    Automaton::from_parts(a.alphabet().clone(), names, marked, Some(new_id[initial]), delta)
        .expect("coaccessible restriction preserves well-formedness")
}

/// `accessible(coaccessible(a))`; idempotent.
pub fn trim(a: &Automaton) -> Automaton {
    accessible(&coaccessible(a))
}

fn require_same_alphabet(a: &Automaton, b: &Automaton) -> Result<(), FsaError> {
    if a.alphabet() != b.alphabet() {
        return Err(FsaError::AlphabetMismatch(
            "operands must share one alphabet (names and controllability)".into(),
        ));
    }
    Ok(())
}

/// Product automaton on reachable state pairs: `L = L(a) ∩ L(b)`,
/// `L_m = L_m(a) ∩ L_m(b)`. Also returns, per product state, the
/// originating `(a-state, b-state)` pair. Accessible by construction,
/// canonically numbered.
pub fn meet_with_pairs(
    a: &Automaton,
    b: &Automaton,
) -> Result<(Automaton, Vec<(usize, usize)>), FsaError> {
    require_same_alphabet(a, b)?;
    let (Some(ia), Some(ib)) = (a.initial(), b.initial()) else {
        return Ok((Automaton::empty(a.alphabet().clone()), Vec::new()));
    };
    let mut pairs: Vec<(usize, usize)> = vec![(ia, ib)];
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    index.insert((ia, ib), 0);
    let mut delta: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        // BTreeMap iteration keeps successors in event order, so discovery
        // order is the canonical BFS order.
        let row: Vec<(usize, usize, usize)> = a
            .transitions_from(x)
            .filter_map(|(e, tx)| b.target(y, e).map(|ty| (e, tx, ty)))
            .collect();
        for (e, tx, ty) in row {
            let id = *index.entry((tx, ty)).or_insert_with(|| {
                pairs.push((tx, ty));
                delta.push(BTreeMap::new());
                pairs.len() - 1
            });
            delta[head].insert(e, id);
        }
        head += 1;
    }
    let names = pairs
        .iter()
        .map(|&(x, y)| compose_name(a.state_name(x), b.state_name(y)))
        .collect();
    let marked = pairs
        .iter()
        .map(|&(x, y)| a.is_marked(x) && b.is_marked(y))
        .collect();
    let aut = Automaton::from_parts(a.alphabet().clone(), names, marked, Some(0), delta)
        .expect("product construction preserves well-formedness");
    Ok((aut, pairs))
}

/// Language intersection of two automata over an identical alphabet.
pub fn meet(a: &Automaton, b: &Automaton) -> Result<Automaton, FsaError> {
    meet_with_pairs(a, b).map(|(aut, _)| aut)
}

/// Parallel (synchronous) composition over the union alphabet: shared events
/// move both components, private events move their owner and leave the other
/// in place. Marked iff both components are marked.
pub fn sync(a: &Automaton, b: &Automaton) -> Result<Automaton, FsaError> {
    let alphabet = a.alphabet().union(b.alphabet())?;
    let in_a: Vec<Option<usize>> = alphabet
        .iter()
        .map(|e| a.alphabet().index_of(e.name()))
        .collect();
    let in_b: Vec<Option<usize>> = alphabet
        .iter()
        .map(|e| b.alphabet().index_of(e.name()))
        .collect();
    let (Some(ia), Some(ib)) = (a.initial(), b.initial()) else {
        return Ok(Automaton::empty(alphabet));
    };
    let mut pairs: Vec<(usize, usize)> = vec![(ia, ib)];
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    index.insert((ia, ib), 0);
    let mut delta: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        for e in 0..alphabet.len() {
            let next = match (in_a[e], in_b[e]) {
                (Some(ea), Some(eb)) => match (a.target(x, ea), b.target(y, eb)) {
                    (Some(tx), Some(ty)) => Some((tx, ty)),
                    _ => None,
                },
                (Some(ea), None) => a.target(x, ea).map(|tx| (tx, y)),
                (None, Some(eb)) => b.target(y, eb).map(|ty| (x, ty)),
                (None, None) => None,
            };
            if let Some(pair) = next {
                let id = *index.entry(pair).or_insert_with(|| {
                    pairs.push(pair);
                    delta.push(BTreeMap::new());
                    pairs.len() - 1
                });
                delta[head].insert(e, id);
            }
        }
        head += 1;
    }
    let names = pairs
        .iter()
        .map(|&(x, y)| compose_name(a.state_name(x), b.state_name(y)))
        .collect();
    let marked = pairs
        .iter()
        .map(|&(x, y)| a.is_marked(x) && b.is_marked(y))
        .collect();
    Ok(Automaton::from_parts(alphabet, names, marked, Some(0), delta)
        .expect("product construction preserves well-formedness"))
}

/// Run a trace from the initial state. The empty-language automaton rejects
/// everything at index 0.
pub fn accepts(a: &Automaton, t: &Trace) -> Result<RunStatus, FsaError> {
    let indices: Vec<usize> = t
        .iter()
        .map(|name| {
            a.alphabet()
                .index_of(name)
                .ok_or_else(|| FsaError::UnknownEvent(name.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let Some(mut state) = a.initial() else {
        return Ok(RunStatus::RejectedAt(0));
    };
    for (i, ev) in indices.into_iter().enumerate() {
        match a.target(state, ev) {
            Some(next) => state = next,
            None => return Ok(RunStatus::RejectedAt(i)),
        }
    }
    Ok(if a.is_marked(state) {
        RunStatus::Marked
    } else {
        RunStatus::InLanguage
    })
}

/// All words of the selected language with length at most `max_len`, in
/// length-then-lexicographic order (by event name). The brute-force oracle
/// behind every language-equality property in the test suites.
pub fn enumerate_language(
    a: &Automaton,
    max_len: usize,
    kind: LanguageKind,
) -> Result<Vec<Trace>, FsaError> {
    enumerate_language_with_cap(a, max_len, kind, DEFAULT_ENUM_CAP)
}

pub fn enumerate_language_with_cap(
    a: &Automaton,
    max_len: usize,
    kind: LanguageKind,
    cap: usize,
) -> Result<Vec<Trace>, FsaError> {
    if max_len > cap {
        return Err(FsaError::EnumCapExceeded { requested: max_len, cap });
    }
    let mut out = Vec::new();
    let Some(init) = a.initial() else {
        return Ok(out);
    };
    // Each level holds (word, state) pairs in lexicographic word order;
    // extending in event order preserves that order.
    let mut level: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), init)];
    for len in 0..=max_len {
        for (word, state) in &level {
            let emit = match kind {
                LanguageKind::Generated => true,
                LanguageKind::Marked => a.is_marked(*state),
            };
            if emit {
                out.push(Trace(
                    word.iter().map(|&e| a.alphabet().event(e).name().to_string()).collect(),
                ));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (word, state) in &level {
            for (e, t) in a.transitions_from(*state) {
                let mut w = word.clone();
                w.push(e);
                next.push((w, t));
            }
        }
        level = next;
    }
    Ok(out)
}

/// Structural equality of two accessible deterministic automata up to state
/// renaming, decided by lock-step breadth-first traversal from the initial
/// states. Display names are ignored; alphabets must be identical.
pub fn is_isomorphic(a: &Automaton, b: &Automaton) -> bool {
    if a.alphabet() != b.alphabet() {
        return false;
    }
    match (a.initial(), b.initial()) {
        (None, None) => return a.num_states() == b.num_states(),
        (Some(_), Some(_)) => {}
        _ => return false,
    }
    if a.num_states() != b.num_states() {
        return false;
    }
    let (ia, ib) = (a.initial().unwrap(), b.initial().unwrap());
    let mut map_ab: HashMap<usize, usize> = HashMap::new();
    let mut map_ba: HashMap<usize, usize> = HashMap::new();
    map_ab.insert(ia, ib);
    map_ba.insert(ib, ia);
    let mut queue = VecDeque::new();
    queue.push_back((ia, ib));
    while let Some((x, y)) = queue.pop_front() {
        if a.is_marked(x) != b.is_marked(y) {
            return false;
        }
        let ex: BTreeSet<usize> = a.enabled(x).collect();
        let ey: BTreeSet<usize> = b.enabled(y).collect();
        if ex != ey {
            return false;
        }
        for e in ex {
            let tx = a.target(x, e).unwrap();
            let ty = b.target(y, e).unwrap();
            match (map_ab.get(&tx), map_ba.get(&ty)) {
                (None, None) => {
                    map_ab.insert(tx, ty);
                    map_ba.insert(ty, tx);
                    queue.push_back((tx, ty));
                }
                (Some(&prev), _) if prev != ty => return false,
                (_, Some(&prev)) if prev != tx => return false,
                _ => {}
            }
        }
    }
    // Lock-step traversal covers every state of both (pre: accessible).
    map_ab.len() == a.num_states()
}

//! Controllability checking, supremal-controllable synthesis and supervisor
//! realization.
//!
//! Synthesis follows the state-deletion formulation: on the accessible
//! product of plant and specification, alternately delete states where an
//! uncontrollable plant event escapes the product and states that break
//! nonblocking (trim), until a fixpoint. The marked language of the survivor
//! is the supremal controllable sublanguage of
//! `L_m(plant) ∩ L_m(spec)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::fsa::{self, Alphabet, Automaton, FsaError, Trace};

#[derive(Debug, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Fsa(#[from] FsaError),
    #[error("specification alphabet is not a subset of the full alphabet: missing or conflicting '{0}'")]
    NotSubAlphabet(String),
    #[error("plant has no initial state")]
    NoPlantInitial,
    #[error("realization is not a sub-behavior of the plant: no plant transition from '{state}' on '{event}'")]
    TraceUnrunnable { state: String, event: String },
    #[error("two realization paths to '{state}' reach different plant states; state mapping is ambiguous")]
    AmbiguousStateMapping { state: String },
    #[error("uncontrollable event '{event}' is plant-enabled but disabled at realization state '{state}'")]
    UncontrollableDisablement { state: String, event: String },
    #[error("supervisor disabled set contains uncontrollable event '{0}'")]
    UncontrollableInDisabledSet(String),
}

/// Result of a controllability check. `violations` lists every reachable
/// product state where an uncontrollable plant event escapes the
/// specification, with a shortest witness trace to that state.
#[derive(Debug, Clone)]
pub struct ControllabilityReport {
    pub controllable: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub spec_state: usize,
    pub plant_state: usize,
    pub event: String,
    pub witness: Trace,
}

/// A synthesized supervisor: the realization automaton plus, per realization
/// state, the controllable events the supervisor withholds there.
#[derive(Debug, Clone)]
pub struct Supervisor {
    pub realization: Automaton,
    pub disabled: BTreeMap<usize, BTreeSet<String>>,
}

impl Supervisor {
    /// Validates the structural invariant that disabled sets never contain
    /// an uncontrollable event.
    pub fn new(
        realization: Automaton,
        disabled: BTreeMap<usize, BTreeSet<String>>,
    ) -> Result<Self, SynthesisError> {
        for events in disabled.values() {
            for name in events {
                match realization.alphabet().index_of(name) {
                    Some(i) if realization.alphabet().event(i).is_controllable() => {}
                    _ => return Err(SynthesisError::UncontrollableInDisabledSet(name.clone())),
                }
            }
        }
        Ok(Supervisor { realization, disabled })
    }
}

/// Lift a specification over a sub-alphabet to `full` by adding a self-loop
/// at every state for every absent event. The generated language becomes the
/// inverse projection of the original.
pub fn lift(spec: &Automaton, full: &Alphabet) -> Result<Automaton, SynthesisError> {
    if !spec.alphabet().is_subset_of(full) {
        let culprit = spec
            .alphabet()
            .iter()
            .find(|e| {
                full.index_of(e.name())
                    .map(|i| full.event(i).controllability() != e.controllability())
                    .unwrap_or(true)
            })
            .map(|e| e.name().to_string())
            .unwrap_or_default();
        return Err(SynthesisError::NotSubAlphabet(culprit));
    }
    let n = spec.num_states();
    let mut delta = vec![BTreeMap::new(); n];
    for s in 0..n {
        for (e, t) in spec.transitions_from(s) {
            let full_idx = full
                .index_of(spec.alphabet().event(e).name())
                .expect("subset checked above");
            delta[s].insert(full_idx, t);
        }
        for (i, _) in full.iter().enumerate() {
            if spec.alphabet().index_of(full.event(i).name()).is_none() {
                delta[s].insert(i, s);
            }
        }
    }
    let names = (0..n).map(|s| spec.state_name(s).to_string()).collect();
    let marked = (0..n).map(|s| spec.is_marked(s)).collect();
    Ok(Automaton::from_parts(full.clone(), names, marked, spec.initial(), delta)?)
}

/// Accessible product of plant and spec with component-state provenance and
/// shortest-witness parents (BFS, event-name tie-break).
struct Product {
    pairs: Vec<(usize, usize)>, // (plant state, spec state)
    delta: Vec<BTreeMap<usize, usize>>,
    parent: Vec<Option<(usize, usize)>>, // (predecessor product state, event)
}

fn build_product(plant: &Automaton, spec: &Automaton) -> Result<Option<Product>, SynthesisError> {
    if plant.alphabet() != spec.alphabet() {
        return Err(FsaError::AlphabetMismatch(
            "specification must be lifted to the plant alphabet".into(),
        )
        .into());
    }
    let (Some(ip), Some(is)) = (plant.initial(), spec.initial()) else {
        return Ok(None);
    };
    let mut pairs = vec![(ip, is)];
    let mut index: std::collections::HashMap<(usize, usize), usize> = Default::default();
    index.insert((ip, is), 0);
    let mut delta: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut head = 0;
    while head < pairs.len() {
        let (p, s) = pairs[head];
        let row: Vec<(usize, usize, usize)> = plant
            .transitions_from(p)
            .filter_map(|(e, tp)| spec.target(s, e).map(|ts| (e, tp, ts)))
            .collect();
        for (e, tp, ts) in row {
            let id = *index.entry((tp, ts)).or_insert_with(|| {
                pairs.push((tp, ts));
                delta.push(BTreeMap::new());
                parent.push(Some((head, e)));
                pairs.len() - 1
            });
            delta[head].insert(e, id);
        }
        head += 1;
    }
    Ok(Some(Product { pairs, delta, parent }))
}

fn witness_to(product: &Product, alphabet: &Alphabet, mut state: usize) -> Trace {
    let mut rev = Vec::new();
    while let Some((prev, e)) = product.parent[state] {
        rev.push(alphabet.event(e).name().to_string());
        state = prev;
    }
    rev.reverse();
    Trace(rev)
}

/// Statewise check of `L(K)Σ_u ∩ L(P) ⊆ L(K)`: for every reachable product
/// state, every uncontrollable event the plant enables must also be enabled
/// by the (lifted) specification.
pub fn check_controllable(
    plant: &Automaton,
    spec: &Automaton,
) -> Result<ControllabilityReport, SynthesisError> {
    let Some(product) = build_product(plant, spec)? else {
        // An empty desired language is vacuously controllable.
        return Ok(ControllabilityReport { controllable: true, violations: Vec::new() });
    };
    let alphabet = plant.alphabet();
    let mut violations = Vec::new();
    for (id, &(p, s)) in product.pairs.iter().enumerate() {
        for (e, _) in plant.transitions_from(p) {
            if alphabet.event(e).is_controllable() {
                continue;
            }
            if spec.target(s, e).is_none() {
                violations.push(Violation {
                    spec_state: s,
                    plant_state: p,
                    event: alphabet.event(e).name().to_string(),
                    witness: witness_to(&product, alphabet, id),
                });
            }
        }
    }
    Ok(ControllabilityReport { controllable: violations.is_empty(), violations })
}

/// Supremal controllable nonblocking synthesis.
///
/// The specification must already be lifted to the plant alphabet. Returns
/// the realization (possibly the empty automaton) and the per-state
/// disablement map against plant enablement.
pub fn supcon(plant: &Automaton, spec: &Automaton) -> Result<Supervisor, SynthesisError> {
    if plant.initial().is_none() {
        return Err(SynthesisError::NoPlantInitial);
    }
    let alphabet = plant.alphabet().clone();
    let Some(product) = build_product(plant, spec)? else {
        return Ok(Supervisor { realization: Automaton::empty(alphabet), disabled: BTreeMap::new() });
    };
    let n = product.pairs.len();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        // (1) Delete states where an uncontrollable plant event is not
        // matched by a (surviving) product transition.
        for id in 0..n {
            if !alive[id] {
                continue;
            }
            let (p, _) = product.pairs[id];
            let escapes = plant.transitions_from(p).any(|(e, _)| {
                !alphabet.event(e).is_controllable()
                    && product.delta[id].get(&e).map(|&t| !alive[t]).unwrap_or(true)
            });
            if escapes {
                alive[id] = false;
                changed = true;
            }
        }
        // (2) Trim: keep only survivors both reachable from the initial
        // state and able to reach a surviving marked state.
        let coacc = {
            let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
            for s in 0..n {
                if !alive[s] {
                    continue;
                }
                for (_, &t) in &product.delta[s] {
                    if alive[t] {
                        rev[t].push(s);
                    }
                }
            }
            let mut keep = vec![false; n];
            let mut queue = VecDeque::new();
            for s in 0..n {
                let (p, q) = product.pairs[s];
                if alive[s] && plant.is_marked(p) && spec.is_marked(q) {
                    keep[s] = true;
                    queue.push_back(s);
                }
            }
            while let Some(s) = queue.pop_front() {
                for &pred in &rev[s] {
                    if !keep[pred] {
                        keep[pred] = true;
                        queue.push_back(pred);
                    }
                }
            }
            keep
        };
        let acc = {
            let mut keep = vec![false; n];
            if alive[0] && coacc[0] {
                let mut queue = VecDeque::new();
                keep[0] = true;
                queue.push_back(0);
                while let Some(s) = queue.pop_front() {
                    for (_, &t) in &product.delta[s] {
                        if alive[t] && coacc[t] && !keep[t] {
                            keep[t] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
            keep
        };
        for s in 0..n {
            if alive[s] && !(coacc[s] && acc[s]) {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if !alive[0] {
        return Ok(Supervisor { realization: Automaton::empty(alphabet), disabled: BTreeMap::new() });
    }

    // Canonical renumbering of the surviving subgraph by BFS.
    let mut new_id = vec![usize::MAX; n];
    let mut order = vec![0usize];
    new_id[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for (_, &t) in &product.delta[s] {
            if alive[t] && new_id[t] == usize::MAX {
                new_id[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let names = order
        .iter()
        .map(|&s| {
            let (p, q) = product.pairs[s];
            fsa::compose_name(plant.state_name(p), spec.state_name(q))
        })
        .collect();
    let marked = order
        .iter()
        .map(|&s| {
            let (p, q) = product.pairs[s];
            plant.is_marked(p) && spec.is_marked(q)
        })
        .collect();
    let delta: Vec<BTreeMap<usize, usize>> = order
        .iter()
        .map(|&s| {
            product.delta[s]
                .iter()
                .filter(|(_, &t)| alive[t])
                .map(|(&e, &t)| (e, new_id[t]))
                .collect()
        })
        .collect();
    let mut disabled = BTreeMap::new();
    for (new, &old) in order.iter().enumerate() {
        let (p, _) = product.pairs[old];
        let set: BTreeSet<String> = plant
            .transitions_from(p)
            .filter(|&(e, _)| alphabet.event(e).is_controllable() && !delta[new].contains_key(&e))
            .map(|(e, _)| alphabet.event(e).name().to_string())
            .collect();
        disabled.insert(new, set);
    }
    let realization = Automaton::from_parts(alphabet, names, marked, Some(0), delta)?;
    Ok(Supervisor { realization, disabled })
}

/// True iff every accessible state is coaccessible:
/// `trim(a)` is isomorphic to `accessible(a)`.
pub fn nonblocking(a: &Automaton) -> bool {
    fsa::is_isomorphic(&fsa::trim(a), &fsa::accessible(a))
}

/// Result of a modular-conflict check. When blocking, `witness` is a
/// shortest trace into a blocking state of the composed closed loop.
#[derive(Debug, Clone)]
pub struct NonconflictReport {
    pub nonconflicting: bool,
    pub witness: Option<Trace>,
}

/// Compose all supervisor realizations with the plant by intersection and
/// test nonblocking. Modular supervision is sound exactly when this holds.
pub fn nonconflicting(
    supervisors: &[Supervisor],
    plant: &Automaton,
) -> Result<NonconflictReport, SynthesisError> {
    let mut composed = plant.clone();
    for sup in supervisors {
        composed = fsa::meet(&composed, &sup.realization)?;
    }
    // Shortest-witness search: BFS over the accessible part, then flag the
    // first discovered state that cannot reach a marked state.
    let acc = fsa::accessible(&composed);
    if acc.is_empty_language() {
        return Ok(NonconflictReport { nonconflicting: true, witness: None });
    }
    let n = acc.num_states();
    let mut coacc = vec![false; n];
    {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for (_, t) in acc.transitions_from(s) {
                rev[t].push(s);
            }
        }
        let mut queue: VecDeque<usize> = acc.marked_states().collect();
        for &s in &queue {
            coacc[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if !coacc[p] {
                    coacc[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    // States are already in BFS order, so the first non-coaccessible id has
    // a shortest witness; reconstruct it by BFS parents.
    let blocking = (0..n).find(|&s| !coacc[s]);
    let Some(target) = blocking else {
        return Ok(NonconflictReport { nonconflicting: true, witness: None });
    };
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(s) = queue.pop_front() {
        for (e, t) in acc.transitions_from(s) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, e));
                queue.push_back(t);
            }
        }
    }
    let mut rev = Vec::new();
    let mut cur = target;
    while let Some((prev, e)) = parent[cur] {
        rev.push(acc.alphabet().event(e).name().to_string());
        cur = prev;
    }
    rev.reverse();
    Ok(NonconflictReport { nonconflicting: false, witness: Some(Trace(rev)) })
}

/// Recover the per-state disablement map of a realization against its plant.
///
/// Walks both automata in lock step; every realization state must map to a
/// unique plant state (guaranteed for synthesized realizations). Errors if
/// the realization leaves the plant's behavior or withholds an
/// uncontrollable event.
pub fn disablement_map(
    plant: &Automaton,
    realization: &Automaton,
) -> Result<BTreeMap<usize, BTreeSet<String>>, SynthesisError> {
    if plant.alphabet() != realization.alphabet() {
        return Err(FsaError::AlphabetMismatch(
            "realization must share the plant alphabet".into(),
        )
        .into());
    }
    let mut disabled = BTreeMap::new();
    let (Some(ir), Some(ip)) = (realization.initial(), plant.initial()) else {
        return Ok(disabled);
    };
    let mut map: Vec<Option<usize>> = vec![None; realization.num_states()];
    map[ir] = Some(ip);
    let mut queue = VecDeque::from([ir]);
    let mut visited = vec![false; realization.num_states()];
    visited[ir] = true;
    while let Some(r) = queue.pop_front() {
        let p = map[r].expect("mapped before enqueue");
        for (e, rt) in realization.transitions_from(r) {
            let pt = plant.target(p, e).ok_or_else(|| SynthesisError::TraceUnrunnable {
                state: realization.state_name(r).to_string(),
                event: realization.alphabet().event(e).name().to_string(),
            })?;
            match map[rt] {
                None => map[rt] = Some(pt),
                Some(prev) if prev != pt => {
                    return Err(SynthesisError::AmbiguousStateMapping {
                        state: realization.state_name(rt).to_string(),
                    })
                }
                Some(_) => {}
            }
            if !visited[rt] {
                visited[rt] = true;
                queue.push_back(rt);
            }
        }
    }
    for r in 0..realization.num_states() {
        let Some(p) = map[r] else { continue }; // unreachable realization state
        let mut set = BTreeSet::new();
        for (e, _) in plant.transitions_from(p) {
            if realization.target(r, e).is_some() {
                continue;
            }
            let ev = plant.alphabet().event(e);
            if ev.is_controllable() {
                set.insert(ev.name().to_string());
            } else {
                return Err(SynthesisError::UncontrollableDisablement {
                    state: realization.state_name(r).to_string(),
                    event: ev.name().to_string(),
                });
            }
        }
        disabled.insert(r, set);
    }
    Ok(disabled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::{
        accepts, enumerate_language, is_isomorphic, Alphabet, AutomatonBuilder, Event,
        LanguageKind, RunStatus,
    };

    fn toy_alphabet() -> Alphabet {
        Alphabet::new(vec![
            Event::controllable("a").unwrap(),
            Event::uncontrollable("u").unwrap(),
        ])
        .unwrap()
    }

    fn g_toy() -> Automaton {
        let mut b = AutomatonBuilder::new(toy_alphabet());
        let q0 = b.add_state("q0", true).unwrap();
        let q1 = b.add_state("q1", false).unwrap();
        b.set_initial(q0);
        b.add_transition(q0, "a", q1).unwrap();
        b.add_transition(q1, "u", q0).unwrap();
        b.build()
    }

    /// K_toy already over the full alphabet: k0 --a--> k1 with a u self-loop
    /// at k0 and no u at k1 (the controllability defect).
    fn k_toy_lifted() -> Automaton {
        let mut b = AutomatonBuilder::new(toy_alphabet());
        let k0 = b.add_state("k0", true).unwrap();
        let k1 = b.add_state("k1", true).unwrap();
        b.set_initial(k0);
        b.add_transition(k0, "a", k1).unwrap();
        b.add_transition(k0, "u", k0).unwrap();
        b.build()
    }

    #[test]
    fn lift_adds_self_loops_for_absent_events() {
        let sub = Alphabet::new(vec![Event::controllable("a").unwrap()]).unwrap();
        let mut b = AutomatonBuilder::new(sub);
        let s0 = b.add_state("s0", true).unwrap();
        let s1 = b.add_state("s1", true).unwrap();
        b.set_initial(s0);
        b.add_transition(s0, "a", s1).unwrap();
        let spec = b.build();
        let lifted = lift(&spec, &toy_alphabet()).unwrap();
        assert_eq!(lifted.target_by_name(0, "u").unwrap(), Some(0));
        assert_eq!(lifted.target_by_name(1, "u").unwrap(), Some(1));
        assert_eq!(lifted.target_by_name(0, "a").unwrap(), Some(1));
    }

    #[test]
    fn lift_is_identity_on_full_alphabet_and_empty() {
        let k = k_toy_lifted();
        let lifted = lift(&k, &toy_alphabet()).unwrap();
        assert!(is_isomorphic(&lifted, &k));
        let empty = Automaton::empty(Alphabet::new(vec![Event::controllable("a").unwrap()]).unwrap());
        let lifted = lift(&empty, &toy_alphabet()).unwrap();
        assert!(lifted.is_empty_language());
    }

    #[test]
    fn lift_rejects_non_subset() {
        let other = Alphabet::new(vec![Event::uncontrollable("a").unwrap()]).unwrap();
        let spec = Automaton::empty(other);
        assert!(matches!(
            lift(&spec, &toy_alphabet()),
            Err(SynthesisError::NotSubAlphabet(_))
        ));
    }

    #[test]
    fn toy_spec_has_one_violation_with_witness_a() {
        let report = check_controllable(&g_toy(), &k_toy_lifted()).unwrap();
        assert!(!report.controllable);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.event, "u");
        assert_eq!(v.plant_state, 1); // q1
        assert_eq!(v.spec_state, 1); // k1
        assert_eq!(v.witness.to_string(), "a");
    }

    #[test]
    fn spec_equal_to_plant_is_controllable() {
        let g = g_toy();
        let report = check_controllable(&g, &g).unwrap();
        assert!(report.controllable);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn empty_spec_is_vacuously_controllable() {
        let report =
            check_controllable(&g_toy(), &Automaton::empty(toy_alphabet())).unwrap();
        assert!(report.controllable);
    }

    #[test]
    fn supcon_on_toy_pair_keeps_only_the_initial_state() {
        let sup = supcon(&g_toy(), &k_toy_lifted()).unwrap();
        assert_eq!(sup.realization.num_states(), 1);
        assert_eq!(sup.realization.num_transitions(), 0);
        assert!(sup.realization.is_marked(0));
        let words = enumerate_language(&sup.realization, 3, LanguageKind::Marked).unwrap();
        assert_eq!(words.len(), 1);
        assert!(words[0].is_empty());
        assert_eq!(sup.disabled[&0], BTreeSet::from(["a".to_string()]));
    }

    #[test]
    fn supcon_with_spec_equal_to_plant_disables_nothing() {
        let g = g_toy();
        let sup = supcon(&g, &g).unwrap();
        assert!(is_isomorphic(&sup.realization, &fsa::trim(&g)));
        assert!(sup.disabled.values().all(|s| s.is_empty()));
    }

    #[test]
    fn supcon_with_only_uncontrollable_events_can_be_empty() {
        let al = Alphabet::new(vec![Event::uncontrollable("u").unwrap()]).unwrap();
        let mut p = AutomatonBuilder::new(al.clone());
        let p0 = p.add_state("p0", true).unwrap();
        p.set_initial(p0);
        p.add_transition(p0, "u", p0).unwrap();
        let plant = p.build();
        // Spec allows u once, then stops: uncontrollably violated.
        let mut k = AutomatonBuilder::new(al);
        let k0 = k.add_state("k0", true).unwrap();
        let k1 = k.add_state("k1", true).unwrap();
        k.set_initial(k0);
        k.add_transition(k0, "u", k1).unwrap();
        let spec = k.build();
        let sup = supcon(&plant, &spec).unwrap();
        assert!(sup.realization.is_empty_language());
        assert!(sup.disabled.is_empty());
    }

    #[test]
    fn supcon_requires_plant_initial() {
        let plant = Automaton::empty(toy_alphabet());
        assert!(matches!(
            supcon(&plant, &k_toy_lifted()),
            Err(SynthesisError::NoPlantInitial)
        ));
    }

    #[test]
    fn supcon_output_is_controllable_and_nonblocking() {
        let g = g_toy();
        let sup = supcon(&g, &k_toy_lifted()).unwrap();
        let report = check_controllable(&g, &sup.realization).unwrap();
        assert!(report.controllable);
        assert!(nonblocking(&sup.realization));
    }

    #[test]
    fn nonblocking_detects_reachable_deadlock() {
        let g = g_toy();
        assert!(nonblocking(&fsa::trim(&g)));
        let al = Alphabet::new(vec![Event::controllable("a").unwrap()]).unwrap();
        let mut b = AutomatonBuilder::new(al);
        let q0 = b.add_state("q0", true).unwrap();
        let q1 = b.add_state("q1", false).unwrap();
        b.set_initial(q0);
        b.add_transition(q0, "a", q1).unwrap();
        assert!(!nonblocking(&b.build()));
        assert!(nonblocking(&Automaton::empty(toy_alphabet())));
    }

    #[test]
    fn duplicate_supervisors_cannot_conflict() {
        let g = g_toy();
        let s = supcon(&g, &g).unwrap();
        let report = nonconflicting(&[s.clone(), s], &g).unwrap();
        assert!(report.nonconflicting);
        assert!(report.witness.is_none());
    }

    #[test]
    fn empty_supervisor_list_reduces_to_plant_nonblocking() {
        let g = g_toy();
        let report = nonconflicting(&[], &g).unwrap();
        assert_eq!(report.nonconflicting, nonblocking(&g));
    }

    #[test]
    fn conflicting_supervisors_are_reported_with_witness() {
        // Plant: p0 --c--> p1 with marked continuations a and b.
        let al = Alphabet::new(vec![
            Event::controllable("a").unwrap(),
            Event::controllable("b").unwrap(),
            Event::controllable("c").unwrap(),
        ])
        .unwrap();
        let mut p = AutomatonBuilder::new(al.clone());
        let p0 = p.add_state("p0", true).unwrap();
        let p1 = p.add_state("p1", false).unwrap();
        let pa = p.add_state("pa", true).unwrap();
        let pb = p.add_state("pb", true).unwrap();
        p.set_initial(p0);
        p.add_transition(p0, "c", p1).unwrap();
        p.add_transition(p1, "a", pa).unwrap();
        p.add_transition(p1, "b", pb).unwrap();
        let plant = p.build();

        // One supervisor marks only the a-continuation, the other only b.
        let make = |good: &str, bad: &str| {
            let mut b = AutomatonBuilder::new(al.clone());
            let s0 = b.add_state("s0", true).unwrap();
            let s1 = b.add_state("s1", false).unwrap();
            let sg = b.add_state("sg", true).unwrap();
            let sb = b.add_state("sb", false).unwrap();
            b.set_initial(s0);
            b.add_transition(s0, "c", s1).unwrap();
            b.add_transition(s1, good, sg).unwrap();
            b.add_transition(s1, bad, sb).unwrap();
            Supervisor::new(b.build(), BTreeMap::new()).unwrap()
        };
        let report = nonconflicting(&[make("a", "b"), make("b", "a")], &plant).unwrap();
        assert!(!report.nonconflicting);
        let witness = report.witness.unwrap();
        assert!(!witness.is_empty());
        assert_eq!(witness.to_string(), "c");
    }

    #[test]
    fn disablement_map_matches_supcon() {
        let g = g_toy();
        let sup = supcon(&g, &k_toy_lifted()).unwrap();
        let map = disablement_map(&g, &sup.realization).unwrap();
        assert_eq!(map, sup.disabled);
        assert_eq!(map[&0], BTreeSet::from(["a".to_string()]));
    }

    #[test]
    fn disablement_map_of_trim_plant_is_empty_sets() {
        let g = g_toy();
        let map = disablement_map(&g, &fsa::trim(&g)).unwrap();
        assert!(map.values().all(|s| s.is_empty()));
    }

    #[test]
    fn disablement_map_rejects_uncontrollable_disablement() {
        let g = g_toy();
        // A "realization" that keeps a but drops the u-successor at q1.
        let mut b = AutomatonBuilder::new(toy_alphabet());
        let r0 = b.add_state("r0", true).unwrap();
        let _r1 = b.add_state("r1", false).unwrap();
        b.set_initial(r0);
        b.add_transition(r0, "a", _r1).unwrap();
        let err = disablement_map(&g, &b.build()).unwrap_err();
        assert!(matches!(err, SynthesisError::UncontrollableDisablement { .. }));
    }

    #[test]
    fn disablement_map_rejects_non_sub_behavior() {
        let al = toy_alphabet();
        let mut b = AutomatonBuilder::new(al);
        let r0 = b.add_state("r0", true).unwrap();
        b.set_initial(r0);
        b.add_transition(r0, "u", r0).unwrap(); // plant has no u at q0
        let err = disablement_map(&g_toy(), &b.build()).unwrap_err();
        assert!(matches!(err, SynthesisError::TraceUnrunnable { .. }));
    }

    #[test]
    fn supervisor_rejects_uncontrollable_disabled_sets() {
        let g = g_toy();
        let mut disabled = BTreeMap::new();
        disabled.insert(0usize, BTreeSet::from(["u".to_string()]));
        assert!(matches!(
            Supervisor::new(g, disabled),
            Err(SynthesisError::UncontrollableInDisabledSet(_))
        ));
    }

    #[test]
    fn supcon_language_is_contained_in_desired_behavior() {
        let g = g_toy();
        let k = k_toy_lifted();
        let sup = supcon(&g, &k).unwrap();
        let desired = fsa::meet(&g, &k).unwrap();
        let sup_words = enumerate_language(&sup.realization, 6, LanguageKind::Marked).unwrap();
        for w in sup_words {
            assert_eq!(accepts(&desired, &w).unwrap(), RunStatus::Marked);
        }
    }
}

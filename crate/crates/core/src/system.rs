//! Finite mixed and modal transition systems.
//!
//! A system carries an explicit event alphabet, a set of named states and two
//! transition relations: the asserted relation (must-transitions) and the
//! consistent relation (everything an implementation is permitted to do). A
//! system is *modal* when every asserted transition is also consistent.
//!
//! States and events are interned; their canonical order is declaration order,
//! so every traversal and every printed form is deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EventId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Which of the two transition relations is meant: `A` for asserted
/// (must) behaviour, `C` for consistent (may) behaviour.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A,
    C,
}

impl Mode {
    pub fn dual(self) -> Mode {
        match self {
            Mode::A => Mode::C,
            Mode::C => Mode::A,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::A => "a",
            Mode::C => "c",
        })
    }
}

/// The declared flavour of a system. Modal systems satisfy `r_a ⊆ r_c`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Modal,
    Mixed,
}

/// A nonempty, ordered set of event names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventAlphabet {
    events: IndexSet<String>,
}

impl EventAlphabet {
    /// Builds an alphabet in declaration order; repeated names collapse.
    pub fn new<I, S>(events: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let events: IndexSet<String> = events.into_iter().map(Into::into).collect();
        if events.is_empty() {
            return Err(Error::Invalid("empty alphabet".into()));
        }
        Ok(EventAlphabet { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn name(&self, e: EventId) -> &str {
        &self.events[e.0]
    }

    pub fn id(&self, name: &str) -> Option<EventId> {
        self.events.get_index_of(name).map(EventId)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.events.contains(name)
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.events.len()).map(EventId)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.events.iter().map(String::as_str)
    }

    /// This alphabet followed by the events of `extra` it does not yet contain.
    pub fn widened<'a>(&self, extra: impl IntoIterator<Item = &'a str>) -> EventAlphabet {
        let mut events = self.events.clone();
        for e in extra {
            events.insert(e.to_string());
        }
        EventAlphabet { events }
    }

    /// Ok when both alphabets list the same events in the same order.
    pub fn ensure_same(&self, other: &EventAlphabet) -> Result<()> {
        if self == other {
            return Ok(());
        }
        let only_left: Vec<&str> = self.names().filter(|e| !other.contains(e)).collect();
        let only_right: Vec<&str> = other.names().filter(|e| !self.contains(e)).collect();
        let msg = if only_left.is_empty() && only_right.is_empty() {
            "same events declared in a different order".to_string()
        } else {
            let mut parts = Vec::new();
            if !only_left.is_empty() {
                parts.push(format!("only on the left: {}", only_left.join(" ")));
            }
            if !only_right.is_empty() {
                parts.push(format!("only on the right: {}", only_right.join(" ")));
            }
            parts.join("; ")
        };
        Err(Error::AlphabetMismatch(msg))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: StateId,
    pub event: EventId,
    pub dst: StateId,
}

impl Transition {
    pub fn new(src: StateId, event: EventId, dst: StateId) -> Self {
        Transition { src, event, dst }
    }
}

/// Name-based, unchecked system data as it comes out of a parser or a
/// hand-written fixture. [`validate`] reports everything wrong with it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSystem {
    pub modal: bool,
    pub alphabet: Vec<String>,
    /// Declared states; transition endpoints outside this list are reported.
    pub states: Vec<String>,
    pub asserted: Vec<(String, String, String)>,
    pub consistent: Vec<(String, String, String)>,
}

/// A single well-formedness problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet,
    UnknownEvent { event: String, transition: String },
    UnknownState { state: String, transition: String },
    ModalConditionViolated { transition: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAlphabet => write!(f, "empty alphabet"),
            Violation::UnknownEvent { event, transition } => {
                write!(f, "unknown event `{event}` in transition {transition}")
            }
            Violation::UnknownState { state, transition } => {
                write!(f, "unknown state `{state}` in transition {transition}")
            }
            Violation::ModalConditionViolated { transition } => {
                write!(f, "modal condition violated: {transition} is asserted but not consistent")
            }
        }
    }
}

fn show_triple((s, e, t): &(String, String, String)) -> String {
    format!("({s}, {e}, {t})")
}

/// Lists every invariant violation of `raw`; empty iff the data is a valid
/// system (and, with `expect_modal`, a modal one).
pub fn validate(raw: &RawSystem, expect_modal: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    if raw.alphabet.is_empty() {
        out.push(Violation::EmptyAlphabet);
    }
    let events: IndexSet<&str> = raw.alphabet.iter().map(String::as_str).collect();
    let states: IndexSet<&str> = raw.states.iter().map(String::as_str).collect();
    for triple in raw.asserted.iter().chain(&raw.consistent) {
        let (s, e, t) = triple;
        if !events.contains(e.as_str()) {
            out.push(Violation::UnknownEvent {
                event: e.clone(),
                transition: show_triple(triple),
            });
        }
        for st in [s, t] {
            if !states.contains(st.as_str()) {
                out.push(Violation::UnknownState {
                    state: st.clone(),
                    transition: show_triple(triple),
                });
            }
        }
    }
    if expect_modal {
        let consistent: BTreeSet<&(String, String, String)> = raw.consistent.iter().collect();
        let mut seen = BTreeSet::new();
        for triple in &raw.asserted {
            if !consistent.contains(triple) && seen.insert(triple) {
                out.push(Violation::ModalConditionViolated {
                    transition: show_triple(triple),
                });
            }
        }
    }
    out
}

/// A finite mixed transition system; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    kind: Kind,
    alphabet: EventAlphabet,
    states: IndexSet<String>,
    ra: BTreeSet<Transition>,
    rc: BTreeSet<Transition>,
    // succ[mode][state][event] -> successors, sorted
    succ_a: Vec<Vec<Vec<StateId>>>,
    succ_c: Vec<Vec<Vec<StateId>>>,
}

impl System {
    fn assemble(
        kind: Kind,
        alphabet: EventAlphabet,
        states: IndexSet<String>,
        ra: BTreeSet<Transition>,
        rc: BTreeSet<Transition>,
    ) -> System {
        let index = |rel: &BTreeSet<Transition>| {
            let mut succ = vec![vec![Vec::new(); alphabet.len()]; states.len()];
            for t in rel {
                succ[t.src.0][t.event.0].push(t.dst);
            }
            succ
        };
        let succ_a = index(&ra);
        let succ_c = index(&rc);
        System {
            kind,
            alphabet,
            states,
            ra,
            rc,
            succ_a,
            succ_c,
        }
    }

    /// Checks `raw` with [`validate`] and interns it.
    pub fn from_raw(raw: &RawSystem) -> Result<System> {
        let violations = validate(raw, raw.modal);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(Error::Invalid(msgs.join("; ")));
        }
        let kind = if raw.modal { Kind::Modal } else { Kind::Mixed };
        let mut b = SystemBuilder::new(kind, EventAlphabet::new(raw.alphabet.iter().cloned())?);
        for s in &raw.states {
            b.state(s);
        }
        for (s, e, t) in &raw.asserted {
            b.add_named(Mode::A, s, e, t)?;
        }
        for (s, e, t) in &raw.consistent {
            b.add_named(Mode::C, s, e, t)?;
        }
        b.build()
    }

    pub fn to_raw(&self) -> RawSystem {
        let triple = |t: &Transition| {
            (
                self.state_name(t.src).to_string(),
                self.alphabet.name(t.event).to_string(),
                self.state_name(t.dst).to_string(),
            )
        };
        RawSystem {
            modal: self.kind == Kind::Modal,
            alphabet: self.alphabet.names().map(String::from).collect(),
            states: self.states.iter().cloned().collect(),
            asserted: self.ra.iter().map(triple).collect(),
            consistent: self.rc.iter().map(triple).collect(),
        }
    }

    /// Convenience wrapper around [`validate`] for an interned system.
    pub fn validate(&self, expect_modal: bool) -> Vec<Violation> {
        validate(&self.to_raw(), expect_modal)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// True when `r_a ⊆ r_c`, regardless of the declared kind.
    pub fn is_modal(&self) -> bool {
        self.ra.is_subset(&self.rc)
    }

    pub fn alphabet(&self) -> &EventAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.get_index_of(name).map(StateId)
    }

    pub fn relation(&self, mode: Mode) -> &BTreeSet<Transition> {
        match mode {
            Mode::A => &self.ra,
            Mode::C => &self.rc,
        }
    }

    /// Successors of `s` under `e` in the relation selected by `mode`.
    pub fn succ(&self, mode: Mode, s: StateId, e: EventId) -> &[StateId] {
        match mode {
            Mode::A => &self.succ_a[s.0][e.0],
            Mode::C => &self.succ_c[s.0][e.0],
        }
    }

    /// All `(event, successor)` pairs of `s` in canonical order.
    pub fn out(&self, mode: Mode, s: StateId) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.alphabet
            .ids()
            .flat_map(move |e| self.succ(mode, s, e).iter().map(move |&t| (e, t)))
    }

    pub fn has_transition(&self, mode: Mode, t: &Transition) -> bool {
        self.relation(mode).contains(t)
    }

    /// Must-transitions are the asserted ones; may-transitions are consistent
    /// but not asserted.
    pub fn may_only(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.rc.iter().filter(move |t| !self.ra.contains(t))
    }

    pub fn show_transition(&self, t: &Transition) -> String {
        format!(
            "({}, {}, {})",
            self.state_name(t.src),
            self.alphabet.name(t.event),
            self.state_name(t.dst)
        )
    }

    /// Same states and transitions over a larger (or reordered) alphabet.
    pub fn with_alphabet(&self, alphabet: &EventAlphabet) -> Result<System> {
        let remap: Vec<EventId> = self
            .alphabet
            .names()
            .map(|e| {
                alphabet.id(e).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("target alphabet lacks event `{e}`"))
                })
            })
            .collect::<Result<_>>()?;
        let map = |rel: &BTreeSet<Transition>| -> BTreeSet<Transition> {
            rel.iter()
                .map(|t| Transition::new(t.src, remap[t.event.0], t.dst))
                .collect()
        };
        Ok(System::assemble(
            self.kind,
            alphabet.clone(),
            self.states.clone(),
            map(&self.ra),
            map(&self.rc),
        ))
    }

    /// The sub-system on the states reachable from `init`, pointed at `init`.
    pub fn restrict_to_reachable(&self, init: StateId) -> Pointed {
        let keep = reachable_from(self, init);
        let mut b = SystemBuilder::new(self.kind, self.alphabet.clone());
        for &s in &keep {
            b.state(self.state_name(s));
        }
        for mode in [Mode::A, Mode::C] {
            for t in self.relation(mode) {
                if keep.contains(&t.src) {
                    let (s, d) = (b.state(self.state_name(t.src)), b.state(self.state_name(t.dst)));
                    b.add(mode, Transition::new(s, t.event, d));
                }
            }
        }
        let sys = b.build_unchecked();
        let init = sys.state_id(self.state_name(init)).expect("init is reachable");
        Pointed::new(sys, init)
    }
}

/// Incremental construction of a [`System`].
#[derive(Clone, Debug)]
pub struct SystemBuilder {
    kind: Kind,
    alphabet: EventAlphabet,
    states: IndexSet<String>,
    ra: BTreeSet<Transition>,
    rc: BTreeSet<Transition>,
}

impl SystemBuilder {
    pub fn new(kind: Kind, alphabet: EventAlphabet) -> Self {
        SystemBuilder {
            kind,
            alphabet,
            states: IndexSet::new(),
            ra: BTreeSet::new(),
            rc: BTreeSet::new(),
        }
    }

    /// Declares a state (idempotent) and returns its id.
    pub fn state(&mut self, name: &str) -> StateId {
        match self.states.get_index_of(name) {
            Some(i) => StateId(i),
            None => StateId(self.states.insert_full(name.to_string()).0),
        }
    }

    pub fn event(&self, name: &str) -> Result<EventId> {
        self.alphabet
            .id(name)
            .ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn add(&mut self, mode: Mode, t: Transition) -> &mut Self {
        match mode {
            Mode::A => self.ra.insert(t),
            Mode::C => self.rc.insert(t),
        };
        self
    }

    pub fn add_named(&mut self, mode: Mode, s: &str, e: &str, t: &str) -> Result<&mut Self> {
        let e = self.event(e)?;
        let (s, t) = (self.state(s), self.state(t));
        Ok(self.add(mode, Transition::new(s, e, t)))
    }

    /// Must-transition: enters both relations.
    pub fn must(&mut self, s: &str, e: &str, t: &str) -> Result<&mut Self> {
        self.add_named(Mode::A, s, e, t)?;
        self.add_named(Mode::C, s, e, t)
    }

    /// May-transition: consistent only.
    pub fn may(&mut self, s: &str, e: &str, t: &str) -> Result<&mut Self> {
        self.add_named(Mode::C, s, e, t)
    }

    /// Fails if the system was declared modal but has an asserted transition
    /// outside the consistent relation.
    pub fn build(self) -> Result<System> {
        if self.kind == Kind::Modal {
            if let Some(t) = self.ra.iter().find(|t| !self.rc.contains(t)).copied() {
                let sys = self.build_unchecked();
                return Err(Error::NotModal(format!(
                    "{} is asserted but not consistent",
                    sys.show_transition(&t)
                )));
            }
        }
        Ok(self.build_unchecked())
    }

    pub(crate) fn build_unchecked(self) -> System {
        System::assemble(self.kind, self.alphabet, self.states, self.ra, self.rc)
    }
}

/// A system together with a designated initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pointed {
    system: Arc<System>,
    init: StateId,
}

impl Pointed {
    pub fn new(system: impl Into<Arc<System>>, init: StateId) -> Self {
        let system = system.into();
        assert!(init.0 < system.num_states(), "initial state out of range");
        Pointed { system, init }
    }

    pub fn named(system: impl Into<Arc<System>>, init: &str) -> Result<Self> {
        let system = system.into();
        let init = system
            .state_id(init)
            .ok_or_else(|| Error::UnknownState(init.to_string()))?;
        Ok(Pointed { system, init })
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn shared(&self) -> &Arc<System> {
        &self.system
    }

    pub fn init(&self) -> StateId {
        self.init
    }

    pub fn init_name(&self) -> &str {
        self.system.state_name(self.init)
    }

    pub fn alphabet(&self) -> &EventAlphabet {
        self.system.alphabet()
    }

    /// Same system, different initial state.
    pub fn at(&self, state: &str) -> Result<Pointed> {
        Pointed::named(self.system.clone(), state)
    }

    pub fn at_id(&self, state: StateId) -> Pointed {
        Pointed::new(self.system.clone(), state)
    }

    pub fn ensure_modal(&self) -> Result<()> {
        if self.system.is_modal() {
            Ok(())
        } else {
            let t = self
                .system
                .relation(Mode::A)
                .iter()
                .find(|t| !self.system.has_transition(Mode::C, t))
                .expect("non-modal system has an asserted-only transition");
            Err(Error::NotModal(format!(
                "{} is asserted but not consistent",
                self.system.show_transition(t)
            )))
        }
    }

    pub fn with_alphabet(&self, alphabet: &EventAlphabet) -> Result<Pointed> {
        Ok(Pointed::new(self.system.with_alphabet(alphabet)?, self.init))
    }
}

fn reachable_from(sys: &System, init: StateId) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::from([init]);
    let mut queue = VecDeque::from([init]);
    while let Some(s) = queue.pop_front() {
        for mode in [Mode::A, Mode::C] {
            for (_, t) in sys.out(mode, s) {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

/// States reachable from the initial state along `r_a ∪ r_c`.
pub fn reachable(p: &Pointed) -> BTreeSet<StateId> {
    reachable_from(p.system(), p.init())
}

/// Keeps only the must-transitions: `(Σ, r_a, r_a)` at the same initial state.
pub fn must_projection(p: &Pointed) -> Pointed {
    let sys = p.system();
    let ra = sys.relation(Mode::A).clone();
    let proj = System::assemble(
        Kind::Modal,
        sys.alphabet.clone(),
        sys.states.clone(),
        ra.clone(),
        ra,
    );
    Pointed::new(proj, p.init())
}

/// The tagged sum of two systems, with the injections of their states.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub system: System,
    pub left: Vec<StateId>,
    pub right: Vec<StateId>,
}

/// States of `m` become `m.<name>`, states of `n` become `n.<name>`.
pub fn disjoint_union(m: &System, n: &System) -> Result<DisjointUnion> {
    m.alphabet().ensure_same(n.alphabet())?;
    let kind = if m.kind == Kind::Modal && n.kind == Kind::Modal {
        Kind::Modal
    } else {
        Kind::Mixed
    };
    let mut b = SystemBuilder::new(kind, m.alphabet.clone());
    let left: Vec<StateId> = m.states().map(|s| b.state(&format!("m.{}", m.state_name(s)))).collect();
    let right: Vec<StateId> = n.states().map(|s| b.state(&format!("n.{}", n.state_name(s)))).collect();
    for (sys, inj) in [(m, &left), (n, &right)] {
        for mode in [Mode::A, Mode::C] {
            for t in sys.relation(mode) {
                b.add(mode, Transition::new(inj[t.src.0], t.event, inj[t.dst.0]));
            }
        }
    }
    Ok(DisjointUnion {
        system: b.build_unchecked(),
        left,
        right,
    })
}

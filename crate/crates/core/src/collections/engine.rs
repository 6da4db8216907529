//! Signature-indexed fixpoint pruning shared by all builders.
//!
//! Members are flat `u32` tuples. Each slot blanks some positions of a
//! member; members agreeing off the blanks share a signature. A signature
//! whose count crosses its slot's threshold is pruned: all of its members
//! die, which may push further signatures over their thresholds.

use super::PruneStep;
use crate::error::{Error, Result};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHasher};
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::hash::Hasher;

pub(crate) const BLANK: u32 = u32::MAX;
const MAX_KEY: usize = 40;

/// How a slot turns a member into a signature key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum KeyRule {
    /// the member with blanked positions, tagged by slot
    Blank,
    /// cycles: the canonical path left after deleting the single blank,
    /// shared by all slots
    CyclePath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CountMode {
    Members,
    /// distinct values at this position among the live members
    DistinctAt(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Threshold {
    Below(usize),
    AtMost(usize),
}

impl Threshold {
    pub(crate) fn violated(self, c: usize) -> bool {
        c > 0
            && match self {
                Threshold::Below(a) => c < a,
                Threshold::AtMost(x) => c <= x,
            }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Slot {
    pub blank: Vec<usize>,
    pub count: CountMode,
    pub threshold: Threshold,
    /// lower classes are always drained first
    pub class: usize,
}

impl Slot {
    pub(crate) fn single(pos: usize, threshold: Threshold) -> Slot {
        Slot { blank: vec![pos], count: CountMode::Members, threshold, class: 0 }
    }
}

#[derive(Clone, Copy)]
struct Key {
    buf: [u32; MAX_KEY],
    len: usize,
}

impl Key {
    fn as_slice(&self) -> &[u32] {
        &self.buf[..self.len]
    }
}

fn make_key(rule: KeyRule, member: &[u32], slot_idx: usize, slot: &Slot) -> Key {
    let mut k = Key { buf: [0; MAX_KEY], len: 0 };
    match rule {
        KeyRule::Blank => {
            k.buf[0] = slot_idx as u32;
            for (i, &x) in member.iter().enumerate() {
                k.buf[i + 1] = if slot.blank.contains(&i) { BLANK } else { x };
            }
            k.len = member.len() + 1;
        }
        KeyRule::CyclePath => {
            let m = member.len();
            let i = slot.blank[0];
            let fwd = (1..m).map(|j| member[(i + j) % m]);
            let bwd = (1..m).map(|j| member[(i + m - j) % m]);
            if fwd.clone().cmp(bwd.clone()) == Ordering::Greater {
                for (j, x) in bwd.enumerate() {
                    k.buf[j] = x;
                }
            } else {
                for (j, x) in fwd.enumerate() {
                    k.buf[j] = x;
                }
            }
            k.len = m - 1;
        }
    }
    k
}

fn hash_key(k: &Key) -> u64 {
    let mut h = FxHasher::default();
    for &x in k.as_slice() {
        h.write_u32(x);
    }
    h.finish()
}

/// Entries `member * slots + slot` grouped by signature.
pub(crate) struct Groups {
    pub sig_of: Vec<u32>,
    pub start: Vec<usize>,
    pub items: Vec<u32>,
}

impl Groups {
    pub(crate) fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub(crate) fn group(&self, sig: usize) -> &[u32] {
        &self.items[self.start[sig]..self.start[sig + 1]]
    }
}

pub(crate) fn group(members: &[u32], arity: usize, slots: &[Slot], rule: KeyRule) -> Groups {
    assert!(arity < MAX_KEY, "tuple too long");
    let s = slots.len();
    let m = members.len() / arity;
    let total = m * s;
    assert!(total < u32::MAX as usize, "too many signature entries");
    let key_of = |e: usize| make_key(rule, &members[(e / s) * arity..(e / s + 1) * arity], e % s, &slots[e % s]);
    let mut keyed: Vec<(u64, u32)> = (0..total).into_par_iter().map(|e| (hash_key(&key_of(e)), e as u32)).collect();
    keyed.par_sort_unstable();
    let mut sig_of = vec![0u32; total];
    let mut start = Vec::new();
    let mut items = Vec::with_capacity(total);
    let mut run = 0;
    while run < keyed.len() {
        let h = keyed[run].0;
        let end = run + keyed[run..].partition_point(|x| x.0 == h);
        let first = key_of(keyed[run].1 as usize);
        let mixed = keyed[run + 1..end].iter().any(|x| key_of(x.1 as usize).as_slice() != first.as_slice());
        if !mixed {
            start.push(items.len());
            for &(_, e) in &keyed[run..end] {
                sig_of[e as usize] = (start.len() - 1) as u32;
                items.push(e);
            }
            run = end;
            continue;
        }
        // hash collision: order the run by key
        keyed[run..end].sort_unstable_by(|a, b| {
            key_of(a.1 as usize).as_slice().cmp(key_of(b.1 as usize).as_slice()).then(a.1.cmp(&b.1))
        });
        let mut prev: Option<Key> = None;
        for &(_, e) in &keyed[run..end] {
            let k = key_of(e as usize);
            if prev.as_ref().map_or(true, |p| p.as_slice() != k.as_slice()) {
                start.push(items.len());
                prev = Some(k);
            }
            sig_of[e as usize] = (start.len() - 1) as u32;
            items.push(e);
        }
        run = end;
    }
    start.push(items.len());
    Groups { sig_of, start, items }
}

pub(crate) struct Engine<'a> {
    arity: usize,
    members: &'a [u32],
    slots: &'a [Slot],
    rule: KeyRule,
    groups: Groups,
    alive: Vec<bool>,
    count: Vec<u32>,
    sub_of: Vec<u32>,
    sub_alive: Vec<u32>,
    queued: Vec<bool>,
    queues: Vec<VecDeque<u32>>,
    pub steps: Vec<PruneStep>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(members: &'a [u32], arity: usize, slots: &'a [Slot], rule: KeyRule) -> Engine<'a> {
        let mut groups = group(members, arity, slots, rule);
        let s = slots.len();
        let nsig = groups.len();
        let mut count = vec![0u32; nsig];
        let mut sub_of = Vec::new();
        let mut sub_alive = Vec::new();
        let distinct = slots.iter().any(|sl| matches!(sl.count, CountMode::DistinctAt(_)));
        if distinct {
            sub_of = vec![u32::MAX; groups.items.len()];
        }
        for sig in 0..nsig {
            let (a, b) = (groups.start[sig], groups.start[sig + 1]);
            let slot = &slots[groups.items[a] as usize % s];
            match slot.count {
                CountMode::Members => count[sig] = (b - a) as u32,
                CountMode::DistinctAt(pos) => {
                    let value = |e: u32| members[(e as usize / s) * arity + pos];
                    groups.items[a..b].sort_unstable_by_key(|&e| (value(e), e));
                    let mut last = None;
                    for idx in a..b {
                        let e = groups.items[idx];
                        if last != Some(value(e)) {
                            last = Some(value(e));
                            sub_alive.push(0);
                            count[sig] += 1;
                        }
                        let sub = sub_alive.len() - 1;
                        sub_alive[sub] += 1;
                        sub_of[e as usize] = sub as u32;
                    }
                }
            }
        }
        let classes = slots.iter().map(|sl| sl.class).max().unwrap_or(0) + 1;
        Engine {
            arity,
            members,
            slots,
            rule,
            alive: vec![true; members.len() / arity],
            count,
            sub_of,
            sub_alive,
            queued: vec![false; nsig],
            queues: vec![VecDeque::new(); classes],
            groups,
            steps: Vec::new(),
        }
    }

    fn slot_of_sig(&self, sig: usize) -> usize {
        self.groups.items[self.groups.start[sig]] as usize % self.slots.len()
    }

    fn violated(&self, sig: usize) -> bool {
        self.slots[self.slot_of_sig(sig)].threshold.violated(self.count[sig] as usize)
    }

    fn maybe_queue(&mut self, sig: usize) {
        if !self.queued[sig] && self.violated(sig) {
            self.queued[sig] = true;
            let class = self.slots[self.slot_of_sig(sig)].class;
            self.queues[class].push_back(sig as u32);
        }
    }

    fn kill(&mut self, m: usize) {
        self.alive[m] = false;
        let s = self.slots.len();
        for slot in 0..s {
            let e = m * s + slot;
            let sig = self.groups.sig_of[e] as usize;
            match self.slots[slot].count {
                CountMode::Members => self.count[sig] -= 1,
                CountMode::DistinctAt(_) => {
                    let sub = self.sub_of[e] as usize;
                    self.sub_alive[sub] -= 1;
                    if self.sub_alive[sub] == 0 {
                        self.count[sig] -= 1;
                    }
                }
            }
            self.maybe_queue(sig);
        }
    }

    fn signature(&self, sig: usize) -> (usize, Vec<Option<usize>>) {
        let s = self.slots.len();
        let e = self.groups.group(sig)[0] as usize;
        let (m, slot) = (e / s, e % s);
        let member = &self.members[m * self.arity..(m + 1) * self.arity];
        let key = make_key(self.rule, member, slot, &self.slots[slot]);
        let body = match self.rule {
            KeyRule::Blank => &key.as_slice()[1..],
            KeyRule::CyclePath => key.as_slice(),
        };
        (slot, body.iter().map(|&x| (x != BLANK).then_some(x as usize)).collect())
    }

    fn prune(&mut self, sig: usize) {
        let (slot, signature) = self.signature(sig);
        self.steps.push(PruneStep { slot, signature, observed: self.count[sig] as usize });
        let s = self.slots.len();
        let (a, b) = (self.groups.start[sig], self.groups.start[sig + 1]);
        for idx in a..b {
            let m = self.groups.items[idx] as usize / s;
            if self.alive[m] {
                self.kill(m);
            }
        }
    }

    /// Runs the deletion process to its fixpoint.
    pub(crate) fn run(&mut self) {
        for e in 0..self.groups.sig_of.len() {
            self.maybe_queue(self.groups.sig_of[e] as usize);
        }
        loop {
            let Some(sig) = self.queues.iter_mut().find_map(|q| q.pop_front()) else { break };
            let sig = sig as usize;
            if self.violated(sig) {
                self.prune(sig);
            }
        }
    }

    /// Applies recorded steps instead of searching for violations.
    pub(crate) fn replay(&mut self, steps: &[PruneStep]) -> Result<()> {
        let mut lookup: FxHashMap<(usize, Vec<Option<usize>>), usize> = FxHashMap::default();
        for sig in 0..self.groups.len() {
            let (slot, signature) = self.signature(sig);
            let slot = if self.rule == KeyRule::CyclePath { 0 } else { slot };
            lookup.insert((slot, signature), sig);
        }
        for (i, st) in steps.iter().enumerate() {
            let slot = if self.rule == KeyRule::CyclePath { 0 } else { st.slot };
            let sig = *lookup
                .get(&(slot, st.signature.clone()))
                .ok_or_else(|| Error::Integrity(format!("audit step {i} names an unknown signature")))?;
            if self.count[sig] as usize != st.observed {
                return Err(Error::Integrity(format!(
                    "audit step {i}: recorded count {} but replay sees {}",
                    st.observed, self.count[sig]
                )));
            }
            self.prune(sig);
        }
        Ok(())
    }

    /// Live members, flat, in seed order.
    pub(crate) fn survivors(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (m, &a) in self.alive.iter().enumerate() {
            if a {
                out.extend_from_slice(&self.members[m * self.arity..(m + 1) * self.arity]);
            }
        }
        out
    }

    /// Slots whose live signatures violate their threshold; empty at a fixpoint.
    pub(crate) fn violations(&self) -> usize {
        (0..self.groups.len()).filter(|&sig| self.violated(sig)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_keys_ignore_labelling() {
        let slot = Slot::single(0, Threshold::Below(1));
        let a = make_key(KeyRule::CyclePath, &[9, 1, 2, 3], 0, &slot);
        let slot2 = Slot::single(1, Threshold::Below(1));
        let b = make_key(KeyRule::CyclePath, &[3, 9, 1, 2], 1, &slot2);
        assert_eq!(a.as_slice(), &[1, 2, 3]);
        assert_eq!(b.as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn distinct_counts_and_priorities() {
        // tuples (a, b, c); slot 0 counts distinct b per a, slot 1 counts members per (a, c)
        let members = [0, 1, 5, 0, 1, 6, 0, 2, 5, 1, 3, 5];
        let slots = vec![
            Slot { blank: vec![1, 2], count: CountMode::DistinctAt(1), threshold: Threshold::AtMost(1), class: 1 },
            Slot { blank: vec![1], count: CountMode::Members, threshold: Threshold::AtMost(1), class: 0 },
        ];
        let mut e = Engine::new(&members, 3, &slots, KeyRule::Blank);
        e.run();
        // the class-0 singletons (0,*,6) and (1,*,5) go first, which empties a=1
        // before its class-1 signature comes up
        assert_eq!(e.survivors(), vec![0, 1, 5, 0, 2, 5]);
        assert_eq!(e.steps.iter().map(|s| s.slot).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(e.violations(), 0);
    }
}

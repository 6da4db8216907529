//! Rich and good collections of labelled paths and cycles, built by
//! signature-pruning deletion processes and checked by direct sweeps.

mod engine;
mod good;
mod rich;
mod scope;
mod verify;

pub use good::{
    build_good_paths, build_good_paths_in, decide_case, default_l, good_path_seed, restrict_last, CaseDecision,
    GoodPaths,
};
pub use rich::{build_rich_cycles, build_rich_cycles_in, build_rich_paths, build_rich_paths_in, rich_cycle_seed, rich_path_seed};
pub use scope::SeedScope;
pub use verify::{verify_collection, Counterexample, Verification};

use crate::error::{input, Error, Result};
use engine::{Engine, KeyRule, Slot};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollectionKind {
    /// labelled paths, checked for single-position richness
    Path,
    /// cycles, every rotation and reflection counts as a member
    Cycle,
    /// labelled paths, checked for disjoint fill edges on adjacent pairs
    GoodPath,
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollectionKind::Path => "path",
            CollectionKind::Cycle => "cycle",
            CollectionKind::GoodPath => "good_path",
        })
    }
}

impl FromStr for CollectionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(CollectionKind::Path),
            "cycle" => Ok(CollectionKind::Cycle),
            "good_path" => Ok(CollectionKind::GoodPath),
            _ => input(format!("unknown collection kind {s:?}")),
        }
    }
}

/// Rotates and reflects a cycle so that its minimum comes first and the
/// second entry is smaller than the last.
pub fn canonical_cycle<T: Copy + Ord>(c: &[T]) -> Vec<T> {
    let m = c.len();
    let (i, _) = c.iter().enumerate().min_by_key(|&(_, x)| *x).unwrap();
    let fwd: Vec<T> = (0..m).map(|j| c[(i + j) % m]).collect();
    if m > 2 && fwd[1] > fwd[m - 1] {
        (0..m).map(|j| c[(i + m - j) % m]).collect()
    } else {
        fwd
    }
}

/// A set of tuples of one arity. Path members are stored as given; cycle
/// members in canonical form. `alpha` is the parameter the collection has
/// been built or certified for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCollection {
    pub kind: CollectionKind,
    pub length: usize,
    pub alpha: usize,
    members: Vec<u32>,
}

impl LabeledCollection {
    /// Sorts and dedups the members; cycles are canonicalized first.
    pub fn new(kind: CollectionKind, length: usize, alpha: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        if length < 2 {
            return input("tuples need at least two positions");
        }
        let mut flat = Vec::with_capacity(members.len() * length);
        for m in &members {
            if m.len() != length {
                return input(format!("member {m:?} does not have length {length}"));
            }
            if m.iter().any(|&x| x >= u32::MAX as usize) {
                return input("vertex id too large");
            }
            let t: Vec<u32> = m.iter().map(|&x| x as u32).collect();
            if kind == CollectionKind::Cycle {
                flat.extend(canonical_cycle(&t));
            } else {
                flat.extend(t);
            }
        }
        Ok(Self::from_flat(kind, length, alpha, flat))
    }

    pub(crate) fn from_flat(kind: CollectionKind, length: usize, alpha: usize, flat: Vec<u32>) -> Self {
        let mut rows: Vec<&[u32]> = flat.chunks(length).collect();
        rows.par_sort_unstable();
        rows.dedup();
        let members = rows.concat();
        LabeledCollection { kind, length, alpha, members }
    }

    pub fn empty(kind: CollectionKind, length: usize) -> Self {
        LabeledCollection { kind, length, alpha: 0, members: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len() / self.length
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> Vec<usize> {
        self.raw(i).iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self, i: usize) -> &[u32] {
        &self.members[i * self.length..(i + 1) * self.length]
    }

    pub(crate) fn flat(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(|i| self.member(i))
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        if tuple.len() != self.length || tuple.iter().any(|&x| x >= u32::MAX as usize) {
            return false;
        }
        let mut t: Vec<u32> = tuple.iter().map(|&x| x as u32).collect();
        if self.kind == CollectionKind::Cycle {
            t = canonical_cycle(&t);
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.raw(mid).cmp(&t[..]) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Vertices `b` with `tuple[pos] := b` a member, the original included
    /// when it is one. Linear scan.
    pub fn fills(&self, tuple: &[usize], pos: usize) -> Vec<usize> {
        assert!(tuple.len() == self.length && pos < self.length);
        let mut out: Vec<usize> = if self.kind == CollectionKind::Cycle {
            let m = self.length;
            let path: Vec<u32> = (1..m).map(|j| tuple[(pos + j) % m] as u32).collect();
            let rev: Vec<u32> = path.iter().rev().copied().collect();
            self.members
                .par_chunks(m)
                .filter_map(|c| {
                    (0..m).find_map(|i| {
                        let cand = (1..m).map(|j| c[(i + j) % m]);
                        (cand.clone().eq(path.iter().copied()) || cand.eq(rev.iter().copied())).then_some(c[i] as usize)
                    })
                })
                .collect()
        } else {
            self.members
                .par_chunks(self.length)
                .filter(|c| c.iter().enumerate().all(|(i, &x)| i == pos || x as usize == tuple[i]))
                .map(|c| c[pos] as usize)
                .collect()
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Edges `(a, b)` with `tuple[pos] := a, tuple[pos+1] := b` a member.
    pub fn fill_edges(&self, tuple: &[usize], pos: usize) -> Vec<(usize, usize)> {
        assert!(self.kind != CollectionKind::Cycle, "fill edges are defined for paths");
        assert!(tuple.len() == self.length && pos + 1 < self.length);
        self.members
            .par_chunks(self.length)
            .filter(|c| c.iter().enumerate().all(|(i, &x)| i == pos || i == pos + 1 || x as usize == tuple[i]))
            .map(|c| (c[pos] as usize, c[pos + 1] as usize))
            .collect()
    }

    /// Same members, certified for a different parameter after a passing check.
    pub fn certify(mut self, g: &crate::Graph, alpha: usize) -> Result<Self> {
        let v = verify_collection(&self, g, alpha);
        match v.counterexample {
            None => {
                self.alpha = alpha;
                Ok(self)
            }
            Some(c) => Err(Error::NotFound(format!("collection fails at alpha={alpha}: {c}"))),
        }
    }

    /// Text form: header `kind length count`, an optional `# alpha N` line,
    /// then one member per line.
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.kind, self.length, self.len())?;
        writeln!(w, "# alpha {}", self.alpha)?;
        for c in self.members.chunks(self.length) {
            let line: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut header: Option<(CollectionKind, usize, usize)> = None;
        let mut alpha = 0;
        let mut rows = Vec::new();
        for (no, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                if it.next() == Some("alpha") {
                    alpha = it.next().and_then(|a| a.parse().ok()).ok_or_else(|| bad(no, "bad alpha line"))?;
                }
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            match header {
                None => {
                    if toks.len() != 3 {
                        return Err(bad(no, "header must be `kind length count`"));
                    }
                    let kind = toks[0].parse()?;
                    let length = toks[1].parse().map_err(|_| bad(no, "bad length"))?;
                    let count = toks[2].parse().map_err(|_| bad(no, "bad count"))?;
                    header = Some((kind, length, count));
                }
                Some((_, length, _)) => {
                    if toks.len() != length {
                        return Err(bad(no, "member has the wrong length"));
                    }
                    let row: std::result::Result<Vec<usize>, _> = toks.iter().map(|x| x.parse()).collect();
                    rows.push(row.map_err(|_| bad(no, "bad vertex id"))?);
                }
            }
        }
        let (kind, length, count) = header.ok_or_else(|| Error::Input("missing collection header".into()))?;
        if rows.len() != count {
            return input(format!("header promises {count} members, found {}", rows.len()));
        }
        Self::new(kind, length, alpha, rows)
    }
}

fn bad(line: usize, msg: &str) -> Error {
    Error::Input(format!("line {}: {msg}", line + 1))
}

/// One pruning event: the slot, the signature (blanks as `None`; for cycles
/// the remaining path) and the live count seen when it fired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStep {
    pub slot: usize,
    pub signature: Vec<Option<usize>>,
    pub observed: usize,
}

/// Which deletion process produced an audit, with its thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "process", rename_all = "snake_case")]
pub enum Layout {
    RichPaths { k: usize, alpha: usize },
    RichCycles { ell: usize, alpha: usize },
    /// adjacent pairs pruned at `limit = floor(C^2)` fill edges or fewer
    GoodCase1 { vertices: usize, limit: usize },
    /// typed deletions at `limit = 2 alpha` or fewer
    GoodCase2 { vertices: usize, limit: usize },
}

impl Layout {
    pub(crate) fn arity(&self) -> usize {
        match *self {
            Layout::RichPaths { k, .. } => k,
            Layout::RichCycles { ell, .. } => 2 * ell,
            Layout::GoodCase1 { vertices, .. } | Layout::GoodCase2 { vertices, .. } => vertices,
        }
    }

    pub(crate) fn rule(&self) -> KeyRule {
        match self {
            Layout::RichCycles { .. } => KeyRule::CyclePath,
            _ => KeyRule::Blank,
        }
    }

    pub(crate) fn slots(&self) -> Vec<Slot> {
        use engine::{CountMode, Threshold};
        match *self {
            Layout::RichPaths { k, alpha } => (1..k - 1).map(|i| Slot::single(i, Threshold::Below(alpha))).collect(),
            Layout::RichCycles { ell, alpha } => (0..2 * ell).map(|i| Slot::single(i, Threshold::Below(alpha))).collect(),
            Layout::GoodCase1 { vertices, limit } => (0..vertices.saturating_sub(3))
                .map(|i| Slot {
                    blank: vec![i + 1, i + 2],
                    count: CountMode::Members,
                    threshold: Threshold::AtMost(limit),
                    class: 0,
                })
                .collect(),
            Layout::GoodCase2 { vertices, limit } => {
                let k = (vertices - 1) / 2;
                let lim = Threshold::AtMost(limit);
                let mut s: Vec<Slot> =
                    (1..=k).map(|i| Slot { blank: vec![2 * i - 1], count: CountMode::Members, threshold: lim, class: 0 }).collect();
                for i in 0..k.saturating_sub(1) {
                    s.push(Slot {
                        blank: vec![2 * i + 1, 2 * i + 2],
                        count: CountMode::DistinctAt(2 * i + 2),
                        threshold: lim,
                        class: 1,
                    });
                }
                for i in 1..k {
                    s.push(Slot {
                        blank: vec![2 * i, 2 * i + 1],
                        count: CountMode::DistinctAt(2 * i),
                        threshold: lim,
                        class: 2,
                    });
                }
                s
            }
        }
    }
}

/// Replayable record of a deletion process.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneAudit {
    pub layout: Layout,
    /// parameter the output was built for
    pub alpha: usize,
    pub seed_size: usize,
    pub steps: Vec<PruneStep>,
}

impl PruneAudit {
    /// Reapplies the steps to `seed`, checking every recorded count.
    pub fn replay(&self, seed: &LabeledCollection) -> Result<LabeledCollection> {
        if seed.length != self.layout.arity() {
            return input("seed arity does not match the audit");
        }
        if seed.len() != self.seed_size {
            return Err(Error::Integrity(format!(
                "audit expects a seed of {} members, got {}",
                self.seed_size,
                seed.len()
            )));
        }
        let slots = self.layout.slots();
        let mut e = Engine::new(seed.flat(), seed.length, &slots, self.layout.rule());
        e.replay(&self.steps)?;
        Ok(LabeledCollection { members: e.survivors(), alpha: self.alpha, ..seed.clone() })
    }
}

/// Runs a layout's deletion process on a canonical, sorted seed.
pub(crate) fn prune(seed: &LabeledCollection, layout: Layout, kind: CollectionKind, alpha: usize) -> (LabeledCollection, PruneAudit) {
    let slots = layout.slots();
    let mut e = Engine::new(seed.flat(), seed.length, &slots, layout.rule());
    e.run();
    debug_assert_eq!(e.violations(), 0);
    let members = e.survivors();
    let audit = PruneAudit { layout, alpha, seed_size: seed.len(), steps: std::mem::take(&mut e.steps) };
    (LabeledCollection { kind, length: seed.length, alpha, members }, audit)
}

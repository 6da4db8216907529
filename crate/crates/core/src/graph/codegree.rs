use super::Graph;
use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

static SPILL_DIR: OnceLock<PathBuf> = OnceLock::new();

/// Directory where tables built inside the library are spilled and reused.
/// Set once per process; later calls are ignored.
pub fn set_spill_dir(dir: PathBuf) {
    let _ = SPILL_DIR.set(dir);
}

/// Dense table of all pairwise codegrees (upper triangle), built only for
/// graphs with at most `cap` vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeTable {
    n: usize,
    cells: Vec<u32>,
}

pub const DEFAULT_CAP: usize = 5000;

fn slot(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl CodegreeTable {
    pub fn build(g: &Graph, cap: usize) -> Option<CodegreeTable> {
        let n = g.n();
        if n > cap {
            return None;
        }
        let mut cells = vec![0u32; n * n.saturating_sub(1) / 2];
        for w in 0..n {
            let nb = g.neighbors(w);
            for (i, &a) in nb.iter().enumerate() {
                let row = a * (2 * n - a - 1) / 2;
                for &b in &nb[i + 1..] {
                    cells[row + b - a - 1] += 1;
                }
            }
        }
        Some(CodegreeTable { n, cells })
    }

    /// Loads a previously spilled table for `g` from `dir`, or builds and
    /// spills it. Spill failures are ignored; the table is still returned.
    pub fn load_or_build(g: &Graph, cap: usize, dir: Option<&Path>) -> Option<CodegreeTable> {
        let Some(dir) = dir else {
            return Self::build(g, cap);
        };
        if g.n() > cap {
            return None;
        }
        let path = spill_path(dir, g);
        if let Ok(t) = Self::read_from(&path) {
            if t.n == g.n() {
                return Some(t);
            }
        }
        let t = Self::build(g, cap)?;
        let _ = std::fs::create_dir_all(dir).and_then(|_| t.write_to(&path));
        Some(t)
    }

    /// As [`CodegreeTable::load_or_build`] with the process spill directory.
    pub fn shared(g: &Graph, cap: usize) -> Option<CodegreeTable> {
        Self::load_or_build(g, cap, SPILL_DIR.get().map(PathBuf::as_path))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        self.cells[slot(self.n, u, v)] as usize
    }

    fn write_to(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        f.write_all(&(self.n as u64).to_le_bytes())?;
        for c in &self.cells {
            f.write_all(&c.to_le_bytes())?;
        }
        f.flush()
    }

    fn read_from(path: &Path) -> Result<CodegreeTable> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        if bytes.len() < 8 {
            return Err(Error::Integrity("truncated codegree spill".into()));
        }
        let n = u64::from_le_bytes(bytes[..8].try_into().unwrap()) as usize;
        let want = n * n.saturating_sub(1) / 2;
        if bytes.len() != 8 + 4 * want {
            return Err(Error::Integrity("codegree spill has the wrong length".into()));
        }
        let cells = bytes[8..].chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
        Ok(CodegreeTable { n, cells })
    }
}

/// FNV-1a over the vertex count and the edge list.
pub fn fingerprint(g: &Graph) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(g.n() as u64);
    for (u, v) in g.edges() {
        eat(u as u64);
        eat(v as u64);
    }
    h
}

fn spill_path(dir: &Path, g: &Graph) -> PathBuf {
    dir.join(format!("codeg-{:016x}.bin", fingerprint(g)))
}

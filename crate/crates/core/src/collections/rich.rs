use super::scope::{seed_cycles, seed_paths};
use super::{prune, CollectionKind, LabeledCollection, Layout, PruneAudit, SeedScope};
use crate::error::{input, Result};
use crate::graph::Graph;

/// All labelled paths on `k` vertices within `scope`.
pub fn rich_path_seed(g: &Graph, k: usize, scope: &SeedScope, cap: u64) -> Result<LabeledCollection> {
    if k < 3 {
        return input("rich paths need k >= 3");
    }
    let flat = seed_paths(g, k, scope, cap, |_, _| true)?;
    Ok(LabeledCollection::from_flat(CollectionKind::Path, k, 0, flat))
}

/// All `2*ell`-cycles within `scope`, canonical.
pub fn rich_cycle_seed(g: &Graph, ell: usize, scope: &SeedScope, cap: u64) -> Result<LabeledCollection> {
    if ell < 2 {
        return input("rich cycles need ell >= 2");
    }
    let flat = seed_cycles(g, ell, scope, cap)?;
    Ok(LabeledCollection::from_flat(CollectionKind::Cycle, 2 * ell, 0, flat))
}

/// Prunes every signature (member with one internal position blanked) that
/// has fewer than `alpha` fills until none is left.
pub fn build_rich_paths(g: &Graph, k: usize, alpha: usize, cap: u64) -> Result<(LabeledCollection, PruneAudit)> {
    build_rich_paths_in(g, k, alpha, cap, &SeedScope::Full)
}

pub fn build_rich_paths_in(
    g: &Graph,
    k: usize,
    alpha: usize,
    cap: u64,
    scope: &SeedScope,
) -> Result<(LabeledCollection, PruneAudit)> {
    let seed = rich_path_seed(g, k, scope, cap)?;
    Ok(prune(&seed, Layout::RichPaths { k, alpha }, CollectionKind::Path, alpha))
}

/// As for paths, over all `2*ell` positions of each cycle.
pub fn build_rich_cycles(g: &Graph, ell: usize, alpha: usize, cap: u64) -> Result<(LabeledCollection, PruneAudit)> {
    build_rich_cycles_in(g, ell, alpha, cap, &SeedScope::Full)
}

pub fn build_rich_cycles_in(
    g: &Graph,
    ell: usize,
    alpha: usize,
    cap: u64,
    scope: &SeedScope,
) -> Result<(LabeledCollection, PruneAudit)> {
    let seed = rich_cycle_seed(g, ell, scope, cap)?;
    Ok(prune(&seed, Layout::RichCycles { ell, alpha }, CollectionKind::Cycle, alpha))
}

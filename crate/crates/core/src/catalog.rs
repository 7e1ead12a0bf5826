//! Branching catalogs: inclusion-minimal modification sets of small graphs,
//! branching numbers, and the induced-subgraph selection that minimises the
//! branching number.
//!
//! Every catalog is computed on the canonical form of its host and lifted back
//! through the stored labelling, so results do not depend on whether the memo
//! cache is used or how the host happened to be labelled.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalCode, MAX_CANON};
use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, PairSet};
use crate::small::{minimal_modification_masks, SmallGraph};

/// Branching numbers closer than this are treated as equal when choosing.
const TIE_EPS: f64 = 1e-12;

/// Which induced subgraph a catalog branches on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgraphPolicy {
    /// Scan every P4-containing induced subgraph and keep the one with the
    /// smallest branching number.
    Minimized,
    /// Branch on all minimal sets of the whole host.
    Whole,
}

/// The branching policy used by the solvers for each mode.
///
/// Deletion minimises over induced subgraphs. Editing branches on the whole
/// rule subgraph: that is the reading whose worst cases come out at 4.313
/// (B2-B4) and 4.329 (B5) in the analyzer; minimising is also sound and is
/// available through [`RuleEngine`](crate::rules::RuleEngine).
pub fn default_policy(mode: Mode) -> SubgraphPolicy {
    match mode {
        Mode::Deletion => SubgraphPolicy::Minimized,
        Mode::Editing => SubgraphPolicy::Whole,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchCatalog {
    pub host: Graph,
    pub mode: Mode,
    /// Vertices of the chosen induced subgraph, ascending host ids.
    pub chosen_subgraph: Vec<usize>,
    /// Minimal modification sets of the chosen subgraph in host ids, ordered
    /// by size and then lexicographically.
    pub options: Vec<PairSet>,
    /// Option sizes, ascending.
    pub vector: Vec<usize>,
    pub number: f64,
}

/// Unique `τ ≥ 1` with `Σ τ^(-b_i) = 1`, by bisection to below `1e-12`.
pub fn branching_number(vector: &[usize]) -> Result<f64> {
    if vector.is_empty() {
        return Err(Error::EmptyVector);
    }
    if vector.contains(&0) {
        return Err(Error::ZeroInVector);
    }
    if vector.len() == 1 {
        return Ok(1.0);
    }
    let f = |t: f64| vector.iter().map(|&b| t.powi(-(b as i32))).sum::<f64>() - 1.0;
    // f is decreasing, f(1) = r - 1 > 0 and f(r) <= 0.
    let (mut lo, mut hi) = (1.0f64, vector.len() as f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_small(h: &Graph) -> Result<()> {
    if h.n() > MAX_CANON {
        Err(Error::GraphTooLarge { n: h.n(), max: MAX_CANON })
    } else {
        Ok(())
    }
}

fn lift_family(small: &SmallGraph, masks: &[u64], relabel: impl Fn(usize) -> usize) -> Vec<PairSet> {
    let mut out: Vec<PairSet> = masks
        .iter()
        .map(|&m| small.pairs_to_set(m).map(&relabel))
        .collect();
    out.sort_by(PairSet::size_lex_cmp);
    out
}

/// Every inclusion-minimal deletion set of `h` (`{∅}` for a cograph).
pub fn minimal_deletion_sets(h: &Graph) -> Result<Vec<PairSet>> {
    minimal_sets(h, Mode::Deletion)
}

/// Every inclusion-minimal editing set of `h` (`{∅}` for a cograph).
pub fn minimal_editing_sets(h: &Graph) -> Result<Vec<PairSet>> {
    minimal_sets(h, Mode::Editing)
}

pub fn minimal_sets(h: &Graph, mode: Mode) -> Result<Vec<PairSet>> {
    check_small(h)?;
    let small = SmallGraph::from_graph(h);
    let masks = minimal_modification_masks(&small, mode);
    Ok(lift_family(&small, &masks, |v| v))
}

/// Minimal family of a canonical graph together with its branching number.
#[derive(Debug)]
struct Family {
    masks: Vec<u64>,
    number: f64,
}

/// Catalog of a canonical host, in canonical labels.
#[derive(Debug)]
struct CanonCatalog {
    chosen: u16,
    masks: Vec<u64>,
    number: f64,
}

type CatalogKey = (CanonicalCode, Mode, SubgraphPolicy);

/// Memo tables keyed by canonical code. Values are idempotent, so racing
/// writers may both compute; the first insert wins.
#[derive(Default)]
pub struct CatalogCache {
    families: RwLock<HashMap<(CanonicalCode, Mode), Arc<Family>>>,
    catalogs: RwLock<HashMap<CatalogKey, Arc<CanonCatalog>>>,
    disabled: bool,
}

impl CatalogCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        CatalogCache {
            disabled: true,
            ..Self::default()
        }
    }

    pub fn global() -> &'static CatalogCache {
        static GLOBAL: OnceLock<CatalogCache> = OnceLock::new();
        GLOBAL.get_or_init(CatalogCache::new)
    }

    pub fn len(&self) -> usize {
        self.catalogs.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn family(&self, code: CanonicalCode, mode: Mode) -> Arc<Family> {
        if !self.disabled {
            if let Some(f) = self.families.read().unwrap().get(&(code, mode)) {
                return f.clone();
            }
        }
        let masks = minimal_modification_masks(&code.graph(), mode);
        let sizes: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
        let number = branching_number(&sizes).expect("non-empty family");
        let fam = Arc::new(Family { masks, number });
        if self.disabled {
            return fam;
        }
        self.families
            .write()
            .unwrap()
            .entry((code, mode))
            .or_insert(fam)
            .clone()
    }

    fn canon_catalog(&self, code: CanonicalCode, mode: Mode, policy: SubgraphPolicy) -> Arc<CanonCatalog> {
        let key = (code, mode, policy);
        if !self.disabled {
            if let Some(c) = self.catalogs.read().unwrap().get(&key) {
                return c.clone();
            }
        }
        let cat = Arc::new(self.compute(code, mode, policy));
        if self.disabled {
            return cat;
        }
        self.catalogs.write().unwrap().entry(key).or_insert(cat).clone()
    }

    fn compute(&self, code: CanonicalCode, mode: Mode, policy: SubgraphPolicy) -> CanonCatalog {
        let host = code.graph();
        let all = host.all();
        let whole = self.family(code, mode);
        if policy == SubgraphPolicy::Whole {
            return CanonCatalog {
                chosen: all,
                masks: whole.masks.clone(),
                number: whole.number,
            };
        }
        let mut best: Option<(f64, u16)> = None;
        for subset in 1..=all {
            if subset.count_ones() < 4 {
                continue;
            }
            let sub = host.induced(subset);
            if sub.is_cograph() {
                continue;
            }
            let (sub_code, _) = canonical_form(&sub);
            let number = self.family(sub_code, mode).number;
            let better = match best {
                None => true,
                Some((bn, bs)) => {
                    if number < bn - TIE_EPS {
                        true
                    } else if number > bn + TIE_EPS {
                        false
                    } else if subset.count_ones() != bs.count_ones() {
                        subset.count_ones() > bs.count_ones()
                    } else {
                        vertex_list(subset) < vertex_list(bs)
                    }
                }
            };
            if better {
                best = Some((number, subset));
            }
        }
        let (number, chosen) = best.expect("host contains an induced P4");
        // Family of the chosen subgraph, relabelled into canonical host ids.
        let sub = host.induced(chosen);
        let (sub_code, perm) = canonical_form(&sub);
        let fam = self.family(sub_code, mode);
        let verts = vertex_list(chosen);
        let mut inv = vec![0; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = verts[v];
        }
        let canon_sub = sub_code.graph();
        let masks = fam
            .masks
            .iter()
            .map(|&m| {
                let mut out = 0u64;
                for p in canon_sub.pairs_to_set(m).iter() {
                    out |= 1 << crate::small::pair_index(inv[p.u()], inv[p.v()]);
                }
                out
            })
            .collect();
        CanonCatalog { chosen, masks, number }
    }

    /// Branch catalog of `h` under `policy`.
    pub fn catalog(&self, h: &Graph, mode: Mode, policy: SubgraphPolicy) -> Result<BranchCatalog> {
        check_small(h)?;
        let small = SmallGraph::from_graph(h);
        if small.is_cograph() {
            return Err(Error::AlreadyCograph);
        }
        let (code, perm) = canonical_form(&small);
        let cat = self.canon_catalog(code, mode, policy);
        let mut inv = vec![0; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let canon = code.graph();
        let options = lift_family(&canon, &cat.masks, |p| inv[p]);
        let mut chosen_subgraph: Vec<usize> = vertex_list(cat.chosen).into_iter().map(|p| inv[p]).collect();
        chosen_subgraph.sort_unstable();
        let vector = options.iter().map(PairSet::len).collect();
        Ok(BranchCatalog {
            host: h.clone(),
            mode,
            chosen_subgraph,
            options,
            vector,
            number: cat.number,
        })
    }
}

fn vertex_list(mask: u16) -> Vec<usize> {
    (0..16).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `F_min(h)`: the catalog of the P4-containing induced subgraph with the
/// smallest branching number (ties: more vertices, then the lexicographically
/// smaller vertex set in canonical labels).
pub fn fmin(h: &Graph, mode: Mode) -> Result<BranchCatalog> {
    CatalogCache::global().catalog(h, mode, SubgraphPolicy::Minimized)
}

/// Catalog over all minimal sets of the whole host.
pub fn fmin_whole(h: &Graph, mode: Mode) -> Result<BranchCatalog> {
    CatalogCache::global().catalog(h, mode, SubgraphPolicy::Whole)
}

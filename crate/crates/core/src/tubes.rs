//! Combinatorics of a tube of rank r, realized as nilpotent uniserial
//! representations of the cyclic quiver and truncated at a length bound.
//!
//! The classification target: every wide subcategory of the tube should be
//! (a) contained in a single wing of size at most r-1, or (b) such a set
//! together with the full ray of length-nr modules over one quasi-simple.
//! The report states its findings for the truncated catalog only; the filt
//! closure below the bound under-approximates the true closure, so
//! conclusions read "consistent up to the bound", never unconditional.

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::torsops::{filt_closure, ClassSet};
use crate::universe::{MemberClass, Universe, UniverseKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Position in a rank-r tube: the uniserial S_i[k] with socle quasi-simple
/// index i (1-based residue mod r) and regular length k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TubeCoord {
    pub i: usize,
    pub k: usize,
}

impl TubeCoord {
    pub fn new(rank: usize, i: usize, k: usize) -> Result<TubeCoord> {
        if !(1..=rank).contains(&i) || k == 0 {
            return Err(Error::invalid(format!(
                "coordinate ({i},{k}) is outside a rank-{rank} tube"
            )));
        }
        Ok(TubeCoord { i, k })
    }
}

/// Truncated tube catalog together with the coordinate dictionary.
pub struct TubeModel {
    pub universe: Universe,
    pub rank: usize,
    pub bound: usize,
    index: BTreeMap<TubeCoord, usize>,
    coords: Vec<TubeCoord>,
}

impl TubeModel {
    pub fn new(field: FieldSpec, rank: usize, bound: usize) -> Result<TubeModel> {
        let universe = Universe::tube(field, rank, bound)?;
        let mut index = BTreeMap::new();
        let mut coords = Vec::with_capacity(universe.len());
        for (pos, m) in universe.members().iter().enumerate() {
            let MemberClass::TubeChain { socle, len } = m.class else {
                return Err(Error::invariant("tube catalog holds a non-chain member"));
            };
            let c = TubeCoord { i: socle, k: len };
            index.insert(c, pos);
            coords.push(c);
        }
        debug_assert_eq!(universe.kind(), UniverseKind::Tube { rank, bound });
        Ok(TubeModel { universe, rank, bound, index, coords })
    }

    pub fn index_of(&self, c: TubeCoord) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn coord_of(&self, member: usize) -> TubeCoord {
        self.coords[member]
    }

    pub fn coords_of(&self, set: &ClassSet) -> Vec<TubeCoord> {
        let mut v: Vec<TubeCoord> = set.iter().map(|&m| self.coords[m]).collect();
        v.sort();
        v
    }

    /// AR-translate: rotate the socle one step backwards, keep the length.
    pub fn tau(&self, c: TubeCoord) -> TubeCoord {
        TubeCoord { i: (c.i + self.rank - 2) % self.rank + 1, k: c.k }
    }
}

/// Bricks of the truncated tube, found by scanning endomorphism dimensions.
/// The scan must come out as the square {S_i[k] : 1 <= i,k <= r}; any other
/// outcome is reported as a broken invariant.
pub fn tube_bricks(model: &TubeModel) -> Result<Vec<TubeCoord>> {
    if model.bound < model.rank {
        return Err(Error::invalid("length bound below the tube rank"));
    }
    let mut found: Vec<TubeCoord> = (0..model.universe.len())
        .filter(|&m| model.universe.is_brick(m))
        .map(|m| model.coord_of(m))
        .collect();
    found.sort();
    let mut expected = Vec::new();
    for i in 1..=model.rank {
        for k in 1..=model.rank {
            expected.push(TubeCoord { i, k });
        }
    }
    expected.sort();
    if found != expected {
        return Err(Error::invariant(format!(
            "brick scan of the rank-{} tube produced {found:?}",
            model.rank
        )));
    }
    Ok(found)
}

/// The triangular region under a vertex of regular length below r: all
/// S_{i+a}[b] with a >= 0, b >= 1, a + b <= k.
pub fn wing(rank: usize, vertex: TubeCoord) -> Result<BTreeSet<TubeCoord>> {
    if vertex.k >= rank {
        return Err(Error::invalid(format!(
            "wing vertex S_{}[{}] must have length below the rank {rank}",
            vertex.i, vertex.k
        )));
    }
    let mut out = BTreeSet::new();
    for a in 0..vertex.k {
        for b in 1..=(vertex.k - a) {
            out.insert(TubeCoord { i: (vertex.i - 1 + a) % rank + 1, k: b });
        }
    }
    Ok(out)
}

/// Shape of a classified wide subcategory in the truncated tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WideShape {
    /// Contained in a single wing of size at most r-1.
    #[serde(rename = "wing")]
    Wing,
    /// A wing-contained part plus the full ray {S_i[nr] : nr <= bound}.
    #[serde(rename = "wing+ray")]
    WingRay,
    /// The whole truncated catalog, standing in for the full tube: the
    /// trivial wide subcategory outside the classification's scope.
    #[serde(rename = "all")]
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedWide {
    pub coords: Vec<TubeCoord>,
    pub shape: WideShape,
}

#[derive(Debug, Clone, Serialize)]
pub struct TubeViolation {
    pub coords: Vec<TubeCoord>,
    pub reason: String,
}

/// Outcome of the exhaustive semibrick scan of a truncated tube.
#[derive(Debug, Clone, Serialize)]
pub struct TubeReport {
    pub rank: usize,
    pub bound: usize,
    pub wides: Vec<ClassifiedWide>,
    pub violations: Vec<TubeViolation>,
}

fn fits_wing(rank: usize, set: &BTreeSet<TubeCoord>) -> bool {
    if set.is_empty() {
        return true;
    }
    for i in 1..=rank {
        for k in 1..rank {
            let w = wing(rank, TubeCoord { i, k }).expect("vertex length below rank");
            if set.is_subset(&w) {
                return true;
            }
        }
    }
    false
}

fn ray(rank: usize, bound: usize, i: usize) -> BTreeSet<TubeCoord> {
    (1..=bound / rank)
        .map(|n| TubeCoord { i, k: n * rank })
        .collect()
}

fn fits_wing_ray(rank: usize, bound: usize, set: &BTreeSet<TubeCoord>) -> bool {
    (1..=rank).any(|i| {
        let r = ray(rank, bound, i);
        r.is_subset(set) && fits_wing(rank, &set.difference(&r).copied().collect())
    })
}

/// Enumerate every semibrick among the tube bricks, close each under
/// filtrations within the truncated catalog, and test the resulting wide
/// subcategories against the wing / wing-plus-ray shapes. Wides matching
/// neither shape are returned as violations with the offending coordinates.
pub fn classify_wide_in_tube(
    field: FieldSpec,
    rank: usize,
    bound: usize,
    budget: u64,
) -> Result<TubeReport> {
    if bound % rank != 0 || bound < 2 * rank {
        return Err(Error::invalid(
            "classification bound must be a multiple of the rank, at least twice it",
        ));
    }
    let model = TubeModel::new(field, rank, bound)?;
    let u = &model.universe;
    let bricks: Vec<usize> = tube_bricks(&model)?
        .into_iter()
        .map(|c| model.index_of(c).expect("brick scan stays in catalog"))
        .collect();
    let mut semibricks: Vec<Vec<usize>> = vec![Vec::new()];
    fn extend(
        u: &Universe,
        bricks: &[usize],
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for (pos, &b) in bricks.iter().enumerate().skip(from) {
            if current.iter().all(|&a| u.hom(a, b) == 0 && u.hom(b, a) == 0) {
                current.push(b);
                out.push(current.clone());
                extend(u, bricks, pos + 1, current, out);
                current.pop();
            }
        }
    }
    extend(u, &bricks, 0, &mut Vec::new(), &mut semibricks);

    let mut seen: Vec<ClassSet> = Vec::new();
    let mut wides = Vec::new();
    let mut violations = Vec::new();
    for sb in semibricks {
        let seeds: ClassSet = sb.iter().copied().collect();
        let w = filt_closure(u, &seeds, budget)?;
        if seen.contains(&w) {
            continue;
        }
        seen.push(w.clone());
        let coords: BTreeSet<TubeCoord> = w.iter().map(|&m| model.coord_of(m)).collect();
        let listed: Vec<TubeCoord> = coords.iter().copied().collect();
        if fits_wing(rank, &coords) {
            wides.push(ClassifiedWide { coords: listed, shape: WideShape::Wing });
        } else if fits_wing_ray(rank, bound, &coords) {
            wides.push(ClassifiedWide { coords: listed, shape: WideShape::WingRay });
        } else if w.len() == u.len() {
            wides.push(ClassifiedWide { coords: listed, shape: WideShape::All });
        } else {
            violations.push(TubeViolation {
                coords: listed,
                reason: "neither inside a wing nor a wing joined with one full ray"
                    .to_string(),
            });
        }
    }
    wides.sort_by(|a, b| (a.coords.len(), &a.coords).cmp(&(b.coords.len(), &b.coords)));
    violations.sort_by(|a, b| (a.coords.len(), &a.coords).cmp(&(b.coords.len(), &b.coords)));
    Ok(TubeReport { rank, bound, wides, violations })
}

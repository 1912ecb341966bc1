//! Brute-force packing oracle for small integer-sided boxes: exhaustive
//! first-empty-cell depth-first search, used to cross-validate goodness
//! proofs. A volume-divisibility precheck short-circuits obvious
//! infeasibility; everything else is searched exactly within a node budget.

use thiserror::Error;

use crate::exactnum::{QNum, Rational, SymbolSpace};
use crate::geometry::{BoxSpec, Dissection, GeomError, PlacedBox};

pub const DEFAULT_PACK_CELL_CAP: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct BrickType {
    pub dims: Vec<u32>,
    /// `None` = unlimited supply.
    pub count: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct PackProblem {
    pub dims: Vec<u32>,
    pub bricks: Vec<BrickType>,
    pub allow_rotations: bool,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PackError {
    #[error("box and bricks must have matching positive dimensions")]
    BadProblem,
    #[error("box has {cells} cells, above the cap of {cap}")]
    TooManyCells { cells: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedBrick {
    pub brick: usize,
    pub offset: Vec<u32>,
    pub extents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub placed: Vec<PlacedBrick>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// No brick-count combination matches the box volume.
    VolumePrecheck,
    /// The search space was exhausted.
    SearchExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackOutcome {
    Packed(Packing),
    Infeasible { reason: InfeasibleReason, nodes: u64 },
    LimitExceeded { nodes: u64 },
}

/// Orientations of a brick: its distinct axis permutations in lexicographic
/// order, or just the given extents when rotations are off.
fn orientations(dims: &[u32], allow_rotations: bool) -> Vec<Vec<u32>> {
    if !allow_rotations {
        return vec![dims.to_vec()];
    }
    let mut perms: Vec<Vec<u32>> = Vec::new();
    let mut order: Vec<usize> = (0..dims.len()).collect();
    // Heap-free lexicographic permutation walk over the index order
    loop {
        let candidate: Vec<u32> = order.iter().map(|&i| dims[i]).collect();
        if !perms.contains(&candidate) {
            perms.push(candidate);
        }
        // next lexicographic permutation of `order`
        let Some(i) = (0..order.len().saturating_sub(1)).rev().find(|&i| order[i] < order[i + 1])
        else {
            break;
        };
        let j = (i + 1..order.len()).rev().find(|&j| order[j] > order[i]).unwrap();
        order.swap(i, j);
        order[i + 1..].reverse();
    }
    perms.sort();
    perms
}

/// Can some in-budget combination of brick volumes fill the box volume
/// exactly? Bounded coin DP over the volume.
fn volume_feasible(total: u64, bricks: &[(u64, Option<u64>)]) -> bool {
    let total = usize::try_from(total).expect("cell cap bounds the volume");
    let mut reachable = vec![false; total + 1];
    reachable[0] = true;
    for &(vol, count) in bricks {
        let vol = usize::try_from(vol).unwrap();
        if vol == 0 {
            continue;
        }
        match count {
            None => {
                for v in vol..=total {
                    if reachable[v - vol] {
                        reachable[v] = reachable[v] || reachable[v - vol];
                    }
                }
            }
            Some(c) => {
                let mut next = reachable.clone();
                for used in 1..=c.min((total / vol) as u64) {
                    let shift = vol * usize::try_from(used).unwrap();
                    for v in shift..=total {
                        if reachable[v - shift] {
                            next[v] = true;
                        }
                    }
                }
                reachable = next;
            }
        }
    }
    reachable[total]
}

struct Search {
    dims: Vec<u32>,
    strides: Vec<usize>,
    grid: Vec<bool>,
    /// per brick type: canonical orientation list
    orients: Vec<Vec<Vec<u32>>>,
    remaining: Vec<Option<u32>>,
    placed: Vec<PlacedBrick>,
    nodes: u64,
    node_limit: u64,
}

enum SearchResult {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn cell_to_index(&self, flat: usize) -> Vec<u32> {
        let mut rem = flat;
        self.strides
            .iter()
            .map(|&s| {
                let i = rem / s;
                rem %= s;
                i as u32
            })
            .collect()
    }

    fn fits(&self, at: &[u32], ext: &[u32]) -> bool {
        at.iter().zip(ext).zip(&self.dims).all(|((&a, &e), &d)| a + e <= d)
    }

    fn cells_of<'a>(
        &'a self,
        at: &'a [u32],
        ext: &'a [u32],
    ) -> impl Iterator<Item = usize> + 'a {
        let spans: Vec<usize> = ext.iter().map(|&e| e as usize).collect();
        crate::geometry::index_product(spans).map(move |rel| {
            rel.iter()
                .zip(at)
                .zip(&self.strides)
                .map(|((&r, &a), &s)| (r + a as usize) * s)
                .sum()
        })
    }

    fn solve(&mut self, from: usize) -> SearchResult {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return SearchResult::OutOfBudget;
        }
        let Some(flat) = (from..self.grid.len()).find(|&i| !self.grid[i]) else {
            return SearchResult::Found;
        };
        let at = self.cell_to_index(flat);
        for brick in 0..self.orients.len() {
            if self.remaining[brick] == Some(0) {
                continue;
            }
            for oi in 0..self.orients[brick].len() {
                let ext = self.orients[brick][oi].clone();
                if !self.fits(&at, &ext) {
                    continue;
                }
                let cells: Vec<usize> = self.cells_of(&at, &ext).collect();
                if cells.iter().any(|&c| self.grid[c]) {
                    continue;
                }
                for &c in &cells {
                    self.grid[c] = true;
                }
                if let Some(r) = &mut self.remaining[brick] {
                    *r -= 1;
                }
                self.placed.push(PlacedBrick { brick, offset: at.clone(), extents: ext.clone() });
                match self.solve(flat + 1) {
                    SearchResult::Found => return SearchResult::Found,
                    SearchResult::OutOfBudget => return SearchResult::OutOfBudget,
                    SearchResult::Exhausted => {}
                }
                self.placed.pop();
                if let Some(r) = &mut self.remaining[brick] {
                    *r += 1;
                }
                for &c in &cells {
                    self.grid[c] = false;
                }
            }
        }
        SearchResult::Exhausted
    }
}

/// Exhaustive packing search within `node_limit` nodes. Deterministic:
/// identical inputs explore identical trees.
pub fn pack(p: &PackProblem, node_limit: u64) -> Result<PackOutcome, PackError> {
    let n = p.dims.len();
    if n == 0
        || p.dims.contains(&0)
        || p.bricks.is_empty()
        || p.bricks.iter().any(|b| b.dims.len() != n || b.dims.contains(&0))
    {
        return Err(PackError::BadProblem);
    }
    let cells: u64 = p.dims.iter().map(|&d| d as u64).product();
    if cells > DEFAULT_PACK_CELL_CAP {
        return Err(PackError::TooManyCells { cells, cap: DEFAULT_PACK_CELL_CAP });
    }

    let volumes: Vec<(u64, Option<u64>)> = p
        .bricks
        .iter()
        .map(|b| {
            let v: u64 = b.dims.iter().map(|&d| d as u64).product();
            (v, b.count.map(u64::from))
        })
        .collect();
    if !volume_feasible(cells, &volumes) {
        return Ok(PackOutcome::Infeasible { reason: InfeasibleReason::VolumePrecheck, nodes: 0 });
    }

    let mut strides = vec![1usize; n];
    for a in (0..n - 1).rev() {
        strides[a] = strides[a + 1] * p.dims[a + 1] as usize;
    }
    let mut search = Search {
        dims: p.dims.clone(),
        strides,
        grid: vec![false; cells as usize],
        orients: p.bricks.iter().map(|b| orientations(&b.dims, p.allow_rotations)).collect(),
        remaining: p.bricks.iter().map(|b| b.count).collect(),
        placed: Vec::new(),
        nodes: 0,
        node_limit,
    };
    match search.solve(0) {
        SearchResult::Found => Ok(PackOutcome::Packed(Packing { placed: search.placed })),
        SearchResult::Exhausted => Ok(PackOutcome::Infeasible {
            reason: InfeasibleReason::SearchExhausted,
            nodes: search.nodes,
        }),
        SearchResult::OutOfBudget => Ok(PackOutcome::LimitExceeded { nodes: search.nodes }),
    }
}

/// Convert a packing to an exact dissection for `verify_tiling`.
pub fn packing_to_dissection(
    p: &PackProblem,
    packing: &Packing,
    space: &SymbolSpace,
) -> Result<Dissection, GeomError> {
    let int = |v: u32| QNum::from_rational(space, Rational::from_integer(v.into()));
    let whole = PlacedBox::at_origin(BoxSpec::new(p.dims.iter().map(|&d| int(d)).collect())?);
    let pieces = packing
        .placed
        .iter()
        .map(|pb| {
            PlacedBox::new(
                pb.offset.iter().map(|&o| int(o)).collect(),
                BoxSpec::new(pb.extents.iter().map(|&e| int(e)).collect())?,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Dissection::new(whole, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{verify_tiling, VerifyOutcome};

    fn unlimited(dims: &[u32]) -> BrickType {
        BrickType { dims: dims.to_vec(), count: None }
    }

    #[test]
    fn orientation_dedup_and_order() {
        assert_eq!(
            orientations(&[1, 2, 4], true),
            vec![
                vec![1, 2, 4],
                vec![1, 4, 2],
                vec![2, 1, 4],
                vec![2, 4, 1],
                vec![4, 1, 2],
                vec![4, 2, 1],
            ]
        );
        assert_eq!(orientations(&[1, 2, 2], true).len(), 3);
        assert_eq!(orientations(&[3, 3, 3], true), vec![vec![3, 3, 3]]);
        assert_eq!(orientations(&[1, 3], false), vec![vec![1, 3]]);
    }

    #[test]
    fn four_cube_packs_with_eight_bricks() {
        let p = PackProblem {
            dims: vec![4, 4, 4],
            bricks: vec![unlimited(&[1, 2, 4])],
            allow_rotations: true,
        };
        match pack(&p, 1_000_000).unwrap() {
            PackOutcome::Packed(packing) => {
                assert_eq!(packing.placed.len(), 8);
                let space = SymbolSpace::rational_only();
                let d = packing_to_dissection(&p, &packing, &space).unwrap();
                assert_eq!(verify_tiling(&d).unwrap(), VerifyOutcome::Valid);
            }
            other => panic!("expected packing, got {other:?}"),
        }
    }

    #[test]
    fn volume_precheck_short_circuits() {
        let p = PackProblem {
            dims: vec![3, 3, 3],
            bricks: vec![unlimited(&[1, 2, 4])],
            allow_rotations: true,
        };
        assert_eq!(
            pack(&p, 1_000_000).unwrap(),
            PackOutcome::Infeasible { reason: InfeasibleReason::VolumePrecheck, nodes: 0 }
        );
    }

    #[test]
    fn fixed_orientation_board_is_searched_infeasible() {
        // 5×5 with vertical 1×3 and horizontal 2×1, no rotations
        let p = PackProblem {
            dims: vec![5, 5],
            bricks: vec![unlimited(&[1, 3]), unlimited(&[2, 1])],
            allow_rotations: false,
        };
        match pack(&p, 100_000_000).unwrap() {
            PackOutcome::Infeasible { reason, nodes } => {
                assert_eq!(reason, InfeasibleReason::SearchExhausted);
                assert!(nodes > 0);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn node_limit_is_respected() {
        let p = PackProblem {
            dims: vec![6, 6, 6],
            bricks: vec![unlimited(&[1, 2, 4])],
            allow_rotations: true,
        };
        match pack(&p, 5_000).unwrap() {
            PackOutcome::LimitExceeded { nodes } => assert!(nodes > 5_000),
            // a 6×6×6 all-brick packing does not exist, but the budget must
            // stop the search long before exhaustion proves that
            other => panic!("expected limit exceeded, got {other:?}"),
        }
    }

    #[test]
    fn search_is_deterministic() {
        let p = PackProblem {
            dims: vec![4, 6],
            bricks: vec![unlimited(&[2, 3]), unlimited(&[1, 2])],
            allow_rotations: true,
        };
        let a = pack(&p, 1_000_000).unwrap();
        let b = pack(&p, 1_000_000).unwrap();
        assert_eq!(a, b);
        assert!(matches!(a, PackOutcome::Packed(_)));
    }

    #[test]
    fn brick_counts_are_honored() {
        // 2×2 box, only one 1×2 brick available: cannot fill
        let p = PackProblem {
            dims: vec![2, 2],
            bricks: vec![BrickType { dims: vec![1, 2], count: Some(1) }],
            allow_rotations: true,
        };
        match pack(&p, 10_000).unwrap() {
            PackOutcome::Infeasible { reason, .. } => {
                assert_eq!(reason, InfeasibleReason::VolumePrecheck);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        // with two bricks it fills
        let p2 = PackProblem {
            dims: vec![2, 2],
            bricks: vec![BrickType { dims: vec![1, 2], count: Some(2) }],
            allow_rotations: true,
        };
        assert!(matches!(pack(&p2, 10_000).unwrap(), PackOutcome::Packed(_)));
    }

    #[test]
    fn agreement_with_goodness_proof_on_odd_board() {
        use crate::exactnum::rational::parse_rational;
        use crate::goodness::{prove_unpackable, Subgroup, UnpackOutcome};
        let space = SymbolSpace::rational_only();
        let q = |s: &str| QNum::from_rational(&space, parse_rational(s).unwrap());
        let board = BoxSpec::new(vec![q("3"), q("5")]).unwrap();
        let brick = BoxSpec::new(vec![q("1"), q("2")]).unwrap();
        let g2 = Subgroup::new(vec![q("2")]);
        assert!(matches!(
            prove_unpackable(&board, &[brick], &g2, 1).unwrap(),
            UnpackOutcome::Proof(_)
        ));
        let p = PackProblem {
            dims: vec![3, 5],
            bricks: vec![unlimited(&[1, 2])],
            allow_rotations: true,
        };
        assert!(matches!(
            pack(&p, 1_000_000).unwrap(),
            PackOutcome::Infeasible { .. }
        ));
    }
}

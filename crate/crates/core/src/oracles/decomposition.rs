use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A simplicial walk on a pattern graph's vertex set. Each step is the
/// current simplex listed in the order its vertices came in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialWalk {
    pub steps: Vec<Vec<usize>>,
}

impl SimplicialWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Largest simplex size minus one.
    pub fn width(&self) -> usize {
        self.steps
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn simplices(&self) -> Vec<Vec<usize>> {
        self.steps.iter().map(|s| sorted(s)).collect()
    }
}

/// A path decomposition given by its bag sequence; bags are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

fn violation(condition: &'static str, detail: String) -> Error {
    Error::Validation { condition, detail }
}

fn mask_of(s: &[usize]) -> u32 {
    s.iter().fold(0, |m, &v| m | 1 << v)
}

/// The vertex in which two consecutive bags differ, with `true` when it
/// enters. Errors unless they differ in exactly one vertex.
fn single_change(prev: &[usize], next: &[usize], step: usize) -> Result<(usize, bool)> {
    let (a, b) = (mask_of(prev), mask_of(next));
    let diff = a ^ b;
    let entering = b & !a != 0;
    if diff.count_ones() != 1 {
        return Err(violation(
            "N1",
            format!(
                "steps {} and {} differ in more than one vertex",
                step,
                step + 1
            ),
        ));
    }
    Ok((diff.trailing_zeros() as usize, entering))
}

/// Searches for a k-simplicial walk in `f` in which every vertex comes in
/// exactly once and every edge lies in some simplex. Vertices only leave
/// once all their neighbors have come in, which loses no solutions since a
/// departed vertex never returns. Dead (simplex, introduced) states are
/// memoized; `cap` bounds the number of states visited.
pub fn decomposing_walk_search(f: &Graph, k: usize, cap: u64) -> Result<Option<SimplicialWalk>> {
    let n = f.n();
    assert!(n < 32, "vertex sets are 32-bit masks");
    if n == 0 {
        return Ok(Some(SimplicialWalk { steps: Vec::new() }));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|u| f.neighbors(u).fold(0, |m, w| m | 1 << w))
        .collect();
    let mut search = Search {
        n,
        k,
        nbr,
        dead: HashSet::new(),
        visited: 0,
        cap,
        path: Vec::new(),
    };
    for v in 0..n {
        search.path.push(vec![v]);
        if search.dfs(1 << v, 1 << v)? {
            return Ok(Some(SimplicialWalk { steps: search.path }));
        }
        search.path.pop();
    }
    Ok(None)
}

struct Search {
    n: usize,
    k: usize,
    nbr: Vec<u32>,
    dead: HashSet<(u32, u32)>,
    visited: u64,
    cap: u64,
    path: Vec<Vec<usize>>,
}

impl Search {
    fn dfs(&mut self, simplex: u32, introduced: u32) -> Result<bool> {
        let all = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        if introduced == all {
            return Ok(true);
        }
        if self.dead.contains(&(simplex, introduced)) {
            return Ok(false);
        }
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::ResourceCap {
                what: "decomposing walk states",
                limit: self.cap,
            });
        }
        let cur = self.path.last().expect("walk is non-empty").clone();
        if simplex.count_ones() >= 2 {
            for (slot, &u) in cur.iter().enumerate() {
                if self.nbr[u] & !introduced != 0 {
                    continue;
                }
                let mut next = cur.clone();
                next.remove(slot);
                self.path.push(next);
                if self.dfs(simplex & !(1 << u), introduced)? {
                    return Ok(true);
                }
                self.path.pop();
            }
        }
        if (simplex.count_ones() as usize) < self.k + 1 {
            for v in 0..self.n {
                if introduced >> v & 1 == 1 {
                    continue;
                }
                let mut next = cur.clone();
                next.push(v);
                self.path.push(next);
                if self.dfs(simplex | 1 << v, introduced | 1 << v)? {
                    return Ok(true);
                }
                self.path.pop();
            }
        }
        self.dead.insert((simplex, introduced));
        Ok(false)
    }
}

/// Checks that `walk` is a k-simplicial walk in `f` that is decomposing:
/// it starts at a single vertex, moves one vertex at a time keeping the
/// incoming order, every vertex comes in exactly once (D1) and every edge
/// lies in some simplex (D2).
pub fn validate_decomposing_walk(f: &Graph, walk: &SimplicialWalk, k: usize) -> Result<()> {
    let n = f.n();
    if walk.is_empty() {
        return if n == 0 {
            Ok(())
        } else {
            Err(violation("D1", "empty walk on a non-empty graph".into()))
        };
    }
    for (i, s) in walk.steps.iter().enumerate() {
        if s.is_empty() || s.len() > k + 1 {
            return Err(violation(
                "walk",
                format!("step {} has {} vertices", i + 1, s.len()),
            ));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if sorted(s).windows(2).any(|w| w[0] == w[1]) {
            return Err(violation(
                "walk",
                format!("step {} repeats a vertex", i + 1),
            ));
        }
    }
    if walk.steps[0].len() != 1 {
        return Err(violation(
            "walk",
            "first simplex is not a single vertex".into(),
        ));
    }
    let mut incoming = vec![0usize; n];
    incoming[walk.steps[0][0]] += 1;
    for i in 1..walk.len() {
        let (prev, next) = (&walk.steps[i - 1], &walk.steps[i]);
        let (v, entering) = single_change(prev, next, i)?;
        let expected: Vec<usize> = if entering {
            prev.iter().copied().chain(std::iter::once(v)).collect()
        } else {
            prev.iter().copied().filter(|&u| u != v).collect()
        };
        if &expected != next {
            return Err(violation(
                "walk",
                format!("step {} breaks the incoming order", i + 1),
            ));
        }
        if entering {
            incoming[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| incoming[v] != 1) {
        return Err(violation(
            "D1",
            format!("vertex {v} comes in {} times", incoming[v]),
        ));
    }
    let masks: Vec<u32> = walk.steps.iter().map(|s| mask_of(s)).collect();
    for (u, v) in f.edges() {
        let e = 1u32 << u | 1 << v;
        if !masks.iter().any(|m| m & e == e) {
            return Err(violation("D2", format!("edge {u}-{v} lies in no simplex")));
        }
    }
    Ok(())
}

/// Checks T1 (every edge in a bag) and T2 (each vertex's bags form a
/// nonempty contiguous run); with `nice`, also N1 (consecutive bags differ
/// by one vertex) and N2 (the first or last bag is a single vertex).
pub fn validate_path_decomposition(f: &Graph, pd: &PathDecomposition, nice: bool) -> Result<()> {
    let n = f.n();
    for bag in &pd.bags {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let masks: Vec<u32> = pd.bags.iter().map(|b| mask_of(b)).collect();
    for (u, v) in f.edges() {
        let e = 1u32 << u | 1 << v;
        if !masks.iter().any(|m| m & e == e) {
            return Err(violation("T1", format!("edge {u}-{v} lies in no bag")));
        }
    }
    for v in 0..n {
        let hits: Vec<usize> = (0..masks.len())
            .filter(|&i| masks[i] >> v & 1 == 1)
            .collect();
        if hits.is_empty() {
            return Err(violation("T2", format!("vertex {v} lies in no bag")));
        }
        if hits[hits.len() - 1] - hits[0] + 1 != hits.len() {
            return Err(violation(
                "T2",
                format!("bags holding vertex {v} are not contiguous"),
            ));
        }
    }
    if nice && !pd.bags.is_empty() {
        for i in 1..pd.bags.len() {
            single_change(&pd.bags[i - 1], &pd.bags[i], i)?;
        }
        let ends = [&pd.bags[0], &pd.bags[pd.bags.len() - 1]];
        if ends.iter().all(|b| b.len() != 1) {
            return Err(violation("N2", "neither end bag is a single vertex".into()));
        }
    }
    Ok(())
}

/// Bags are the walk's simplices.
pub fn walk_to_path_decomposition(f: &Graph, walk: &SimplicialWalk) -> Result<PathDecomposition> {
    validate_decomposing_walk(f, walk, walk.width())?;
    let pd = PathDecomposition {
        bags: walk.simplices(),
    };
    validate_path_decomposition(f, &pd, true)?;
    Ok(pd)
}

/// The walk through the bags of a nice decomposition, read from the end
/// whose bag is a single vertex (the first one if both are).
pub fn path_decomposition_to_walk(f: &Graph, pd: &PathDecomposition) -> Result<SimplicialWalk> {
    validate_path_decomposition(f, pd, true)?;
    let mut bags = pd.bags.clone();
    if bags.first().is_some_and(|b| b.len() != 1) {
        bags.reverse();
    }
    let mut steps: Vec<Vec<usize>> = Vec::with_capacity(bags.len());
    for (i, bag) in bags.iter().enumerate() {
        let next = match steps.last() {
            None => bag.clone(),
            Some(prev) => {
                let (v, entering) = single_change(prev, bag, i)?;
                if entering {
                    prev.iter().copied().chain(std::iter::once(v)).collect()
                } else {
                    prev.iter().copied().filter(|&u| u != v).collect()
                }
            }
        };
        steps.push(next);
    }
    let walk = SimplicialWalk { steps };
    validate_decomposing_walk(f, &walk, walk.width())?;
    Ok(walk)
}

/// Pathwidth as the vertex separation number: the least over vertex
/// orderings of the largest number of placed vertices that still have an
/// unplaced neighbor. Exponential in the vertex count.
pub fn pathwidth(f: &Graph) -> usize {
    let n = f.n();
    assert!(n <= 20, "subset dynamic program limited to 20 vertices");
    let nbr: Vec<u32> = (0..n)
        .map(|u| f.neighbors(u).fold(0, |m, w| m | 1 << w))
        .collect();
    let full = (1usize << n) - 1;
    let boundary = |s: usize| -> usize {
        (0..n)
            .filter(|&v| s >> v & 1 == 1 && (nbr[v] as usize) & !s != 0)
            .count()
    };
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let cut = boundary(s);
        let inner = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .map(|v| best[s & !(1 << v)])
            .min()
            .unwrap();
        best[s] = inner.max(cut);
    }
    best[full]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::DEFAULT_CAP;

    #[test]
    fn path_has_width_one_walk() {
        let w = decomposing_walk_search(&Graph::path(4), 1, DEFAULT_CAP)
            .unwrap()
            .unwrap();
        validate_decomposing_walk(&Graph::path(4), &w, 1).unwrap();
    }

    #[test]
    fn triangle_needs_width_two() {
        let k3 = Graph::complete(3);
        assert!(decomposing_walk_search(&k3, 1, DEFAULT_CAP)
            .unwrap()
            .is_none());
        assert!(decomposing_walk_search(&k3, 2, DEFAULT_CAP)
            .unwrap()
            .is_some());
    }

    #[test]
    fn single_vertex_walk() {
        let w = decomposing_walk_search(&Graph::empty(1), 3, DEFAULT_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.steps, vec![vec![0]]);
    }

    #[test]
    fn bags_to_walk() {
        let p3 = Graph::path(3);
        let pd = PathDecomposition {
            bags: vec![vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2]],
        };
        let w = path_decomposition_to_walk(&p3, &pd).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.width(), 1);
        assert_eq!(walk_to_path_decomposition(&p3, &w).unwrap(), pd);
    }

    #[test]
    fn jump_violates_n1() {
        let p3 = Graph::path(3);
        let pd = PathDecomposition {
            bags: vec![vec![0], vec![0, 1, 2]],
        };
        let err = path_decomposition_to_walk(&p3, &pd).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Validation {
                    condition: "N1",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn revisit_violates_d1() {
        let p2 = Graph::path(2);
        let w = SimplicialWalk {
            steps: vec![vec![0], vec![0, 1], vec![0], vec![0, 1]],
        };
        let err = validate_decomposing_walk(&p2, &w, 1).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Validation {
                    condition: "D1",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn missing_edge_violates_d2_and_t1() {
        let k3 = Graph::complete(3);
        let w = SimplicialWalk {
            steps: vec![vec![0], vec![0, 1], vec![1], vec![1, 2]],
        };
        let err = validate_decomposing_walk(&k3, &w, 1).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Validation {
                    condition: "D2",
                    ..
                }
            ),
            "{err}"
        );
        let pd = PathDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
        };
        let err = validate_path_decomposition(&k3, &pd, false).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Validation {
                    condition: "T1",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn split_interval_violates_t2() {
        let p3 = Graph::path(3);
        let pd = PathDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0]],
        };
        let err = validate_path_decomposition(&p3, &pd, false).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Validation {
                    condition: "T2",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn pathwidth_values() {
        assert_eq!(pathwidth(&Graph::path(5)), 1);
        assert_eq!(pathwidth(&Graph::cycle(5)), 2);
        assert_eq!(pathwidth(&Graph::complete(4)), 3);
        assert_eq!(pathwidth(&Graph::empty(3)), 0);
        assert_eq!(pathwidth(&Graph::star(4)), 1);
    }
}

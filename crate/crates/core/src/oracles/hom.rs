use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of homomorphisms F → G by backtracking over vertex images.
/// Pattern vertices are placed in breadth-first order so that each new
/// vertex is constrained by an already placed neighbor where possible.
/// `cap` bounds the number of search nodes.
pub fn hom_count(f: &Graph, g: &Graph, cap: u64) -> Result<u64> {
    let order = placement_order(f);
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            order[..i]
                .iter()
                .copied()
                .filter(|&u| f.has_edge(u, v))
                .collect()
        })
        .collect();
    let mut image = vec![usize::MAX; f.n()];
    let mut nodes = 0u64;
    let mut count = 0u64;
    extend(
        g, &order, &earlier, 0, &mut image, &mut nodes, cap, &mut count,
    )?;
    Ok(count)
}

fn placement_order(f: &Graph) -> Vec<usize> {
    let mut seen = vec![false; f.n()];
    let mut order = Vec::with_capacity(f.n());
    for root in 0..f.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in f.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    order: &[usize],
    earlier: &[Vec<usize>],
    depth: usize,
    image: &mut [usize],
    nodes: &mut u64,
    cap: u64,
    count: &mut u64,
) -> Result<()> {
    if depth == order.len() {
        *count = count.checked_add(1).ok_or(Error::ResourceCap {
            what: "homomorphism count",
            limit: u64::MAX,
        })?;
        return Ok(());
    }
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::ResourceCap {
            what: "homomorphism search nodes",
            limit: cap,
        });
    }
    let v = order[depth];
    for x in 0..g.n() {
        if earlier[depth].iter().all(|&u| g.has_edge(image[u], x)) {
            image[v] = x;
            extend(g, order, earlier, depth + 1, image, nodes, cap, count)?;
        }
    }
    image[v] = usize::MAX;
    Ok(())
}

//! Canonical labeling of lattices.
//!
//! Two lattices are isomorphic when a renumbering of the lines carries the
//! incidence sets of the points of multiplicity at least 3 onto each other;
//! the double points are then determined. The search works on the bipartite
//! graph of lines and such points: colors are refined to an equitable
//! partition, a line from the first non-singleton line cell is
//! individualized, and so on until every line has its own color. Each leaf
//! yields a relabeled copy of the incidence sets and the smallest copy is
//! the key.

use alloc::vec;
use alloc::vec::Vec;

use super::Lattice;

/// Complete isomorphism invariant of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub d: usize,
    /// Relabeled incidence sets of the points of multiplicity >= 3, each
    /// sorted, in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
}

struct Graph {
    lines: usize,
    adj: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
}

pub fn canonical_form(l: &Lattice) -> CanonicalKey {
    let d = l.d();
    let blocks: Vec<Vec<usize>> = l.triple_and_higher().map(|p| p.lines().to_vec()).collect();
    let mut adj = vec![Vec::new(); d + blocks.len()];
    for (b, lines) in blocks.iter().enumerate() {
        for &i in lines {
            adj[i].push(d + b);
            adj[d + b].push(i);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let g = Graph { lines: d, adj, blocks };
    let colors: Vec<usize> = (0..g.adj.len()).map(|v| if v < d { 0 } else { g.blocks[v - d].len() }).collect();
    let mut best = None;
    search(&g, colors, &mut best);
    CanonicalKey { d, blocks: best.unwrap_or_default() }
}

pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> bool {
    a.d() == b.d() && a.census() == b.census() && canonical_form(a) == canonical_form(b)
}

fn distinct_count(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines to the coarsest equitable partition below `colors`. New colors
/// are ranks of (old color, neighbour colors), so the result commutes with
/// relabeling.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let mut cells = distinct_count(colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
            .map(|v| {
                let mut n: Vec<usize> = g.adj[v].iter().map(|&u| colors[u]).collect();
                n.sort_unstable();
                (colors[v], n)
            })
            .collect();
        let mut order = sigs.clone();
        order.sort();
        order.dedup();
        for (v, s) in sigs.iter().enumerate() {
            colors[v] = order.binary_search(s).expect("signature present");
        }
        if order.len() == cells {
            return;
        }
        cells = order.len();
    }
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<Vec<Vec<usize>>>) {
    refine(g, &mut colors);
    let line_colors = &colors[..g.lines];
    let mut counts = vec![0usize; colors.len() + 1];
    for &c in line_colors {
        counts[c] += 1;
    }
    let target = line_colors.iter().copied().filter(|&c| counts[c] > 1).min();
    let Some(target) = target else {
        let key = leaf_key(g, line_colors);
        if best.as_ref().map_or(true, |b| key < *b) {
            *best = Some(key);
        }
        return;
    };
    let cell: Vec<usize> = (0..g.lines).filter(|&v| colors[v] == target).collect();
    for (k, &v) in cell.iter().enumerate() {
        // lines through exactly the same points are interchangeable
        if cell[..k].iter().any(|&u| g.adj[u] == g.adj[v]) {
            continue;
        }
        let next = colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(u != v)).collect();
        search(g, next, best);
    }
}

fn leaf_key(g: &Graph, line_colors: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.lines).collect();
    order.sort_by_key(|&v| line_colors[v]);
    let mut label = vec![0; g.lines];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    let mut blocks: Vec<Vec<usize>> = g
        .blocks
        .iter()
        .map(|b| {
            let mut r: Vec<usize> = b.iter().map(|&i| label[i]).collect();
            r.sort_unstable();
            r
        })
        .collect();
    blocks.sort();
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(d: usize, blocks: &[&[usize]]) -> Lattice {
        Lattice::from_incidence(d, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        let l = lat(7, &[&[0, 1, 2], &[0, 3, 4], &[1, 3, 5], &[2, 4, 5, 6]]);
        let perm = [3, 6, 0, 5, 1, 4, 2];
        assert_eq!(canonical_form(&l), canonical_form(&l.relabeled(&perm)));
    }

    #[test]
    fn triple_points_on_a_common_line_or_not() {
        let apart = lat(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let joined = lat(6, &[&[0, 1, 2], &[0, 3, 4]]);
        assert_eq!(apart.census(), joined.census());
        assert!(!is_isomorphic(&apart, &joined));
        assert!(is_isomorphic(&joined, &lat(6, &[&[5, 2, 3], &[1, 4, 5]])));
    }

    #[test]
    fn generic_lattices() {
        assert_eq!(canonical_form(&lat(5, &[])), CanonicalKey { d: 5, blocks: Vec::new() });
        assert!(!is_isomorphic(&lat(5, &[]), &lat(6, &[])));
    }
}

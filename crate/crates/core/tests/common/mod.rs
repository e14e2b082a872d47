//! Brute-force reference implementations shared by the integration tests.
//! They avoid the library's evaluators and search code on purpose.
#![allow(dead_code)]

use std::collections::HashSet;

use hypersens::{BitString, Hypergraph};

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Edge list of `g` as a set of sorted vertex lists.
pub fn edge_set(g: &Hypergraph) -> HashSet<Vec<usize>> {
    g.edges().into_iter().collect()
}

/// Is `s` an isolated clique: every k-subset of `s` present and every edge
/// not inside `s` meets it in fewer than `i` vertices.
pub fn is_isolated_clique(edges: &HashSet<Vec<usize>>, k: usize, i: usize, s: &[usize]) -> bool {
    let inside = combinations(s.len(), k)
        .into_iter()
        .all(|c| edges.contains(&c.iter().map(|&j| s[j]).collect::<Vec<_>>()));
    inside
        && edges.iter().all(|e| {
            let meet = e.iter().filter(|x| s.contains(x)).count();
            meet == k || meet < i
        })
}

/// Isolated-clique property by trying every `h`-subset.
pub fn brute_isolated_clique(
    v: usize,
    k: usize,
    i: usize,
    h: usize,
    edges: &HashSet<Vec<usize>>,
) -> bool {
    combinations(v, h)
        .iter()
        .any(|s| is_isolated_clique(edges, k, i, s))
}

/// Isolated vertex: some vertex in no edge.
pub fn brute_isolated_vertex(v: usize, edges: &HashSet<Vec<usize>>) -> bool {
    (0..v).any(|x| edges.iter().all(|e| !e.contains(&x)))
}

/// Rubinstein's function written directly from its definition.
pub fn brute_rubinstein(k: usize, x: &BitString) -> bool {
    (0..k).any(|b| {
        let ones: Vec<usize> = (0..k).filter(|&j| x.get(b * k + j)).collect();
        ones.len() == 2 && ones[1] == ones[0] + 1
    })
}

pub fn brute_cyclic_rubinstein(k: usize, x: &BitString) -> bool {
    let n = k * k;
    (0..n).any(|l| {
        let y = BitString::from_positions(n, (0..n).filter(|&p| x.get((p + l) % n))).unwrap();
        brute_rubinstein(k, &y)
    })
}

/// Number of single-bit flips changing `f` at `x`.
pub fn flip_count(f: impl Fn(&BitString) -> bool, x: &BitString) -> usize {
    let fx = f(x);
    (0..x.len())
        .filter(|&p| {
            let mut y = x.clone();
            y.flip(p);
            f(&y) != fx
        })
        .count()
}

/// Maximum number of disjoint sensitive blocks at `x` of a truth table
/// (`table[y]` = value at input `y`), over all subsets.
pub fn brute_block_sensitivity(table: &[bool], n: usize, x: usize) -> usize {
    let size = 1usize << n;
    let sensitive: Vec<bool> = (0..size)
        .map(|b| b != 0 && table[x ^ b] != table[x])
        .collect();
    // best[m]: most disjoint sensitive blocks inside m
    let mut best = vec![0usize; size];
    for m in 1..size {
        let low = m & m.wrapping_neg();
        let mut b = best[m ^ low];
        // submasks of m containing its lowest bit
        let rest = m ^ low;
        let mut sub = rest;
        loop {
            let s = sub | low;
            if sensitive[s] {
                b = b.max(1 + best[m ^ s]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[m] = b;
    }
    best[size - 1]
}

/// `h`-sets made an isolated clique by one edge flip, with those flips.
pub fn brute_sensitive_sets(
    v: usize,
    k: usize,
    i: usize,
    h: usize,
    edges: &HashSet<Vec<usize>>,
) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let slots = combinations(v, k);
    let mut g = edges.clone();
    combinations(v, h)
        .into_iter()
        .filter_map(|s| {
            let mut flips = Vec::new();
            for e in &slots {
                let had = g.remove(e);
                if !had {
                    g.insert(e.clone());
                }
                if is_isolated_clique(&g, k, i, &s) {
                    flips.push(e.clone());
                }
                if had {
                    g.insert(e.clone());
                } else {
                    g.remove(e);
                }
            }
            (!flips.is_empty()).then_some((s, flips))
        })
        .collect()
}

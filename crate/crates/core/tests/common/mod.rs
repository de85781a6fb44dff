//! Reference computations that share no code with the library.

#![allow(dead_code)]

use trideg::Graph;

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for (i, j) in g.edges() {
        m[i][j] = true;
        m[j][i] = true;
    }
    m
}

/// Triangles through each vertex by a plain triple loop.
pub fn naive_triangle_degrees(g: &Graph) -> Vec<usize> {
    let m = matrix(g);
    let n = m.len();
    let mut t = vec![0; n];
    for a in 0..n {
        for b in a + 1..n {
            if !m[a][b] {
                continue;
            }
            for c in b + 1..n {
                if m[a][c] && m[b][c] {
                    t[a] += 1;
                    t[b] += 1;
                    t[c] += 1;
                }
            }
        }
    }
    t
}

pub fn naive_degrees(g: &Graph) -> Vec<usize> {
    matrix(g).iter().map(|row| row.iter().filter(|&&x| x).count()).collect()
}

pub fn all_distinct(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

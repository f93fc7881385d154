//! Explicit constructions of small named graphs and Steiner systems, used
//! by the test suites and the examples. Vertex orders are lexicographic in
//! the natural labels.

use std::collections::BTreeSet;

use super::io::AdjacencyMatrix;

/// K_{m x n}: vertex `part * n + position`.
pub fn complete_multipartite(m: usize, n: usize) -> AdjacencyMatrix {
    AdjacencyMatrix::from_fn(m * n, |i, j| i / n != j / n)
}

/// Unordered pairs {i, j} of 0..n with i < j, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// T_n: pairs adjacent when they share one element.
pub fn triangular(n: usize) -> AdjacencyMatrix {
    let p = pairs(n);
    AdjacencyMatrix::from_fn(p.len(), |x, y| {
        let (a, b) = p[x];
        let (c, d) = p[y];
        a == c || a == d || b == c || b == d
    })
}

/// T_n*: pairs adjacent when disjoint.
pub fn cotriangular(n: usize) -> AdjacencyMatrix {
    triangular(n).complement()
}

pub fn petersen() -> AdjacencyMatrix {
    cotriangular(5)
}

pub fn path(n: usize) -> AdjacencyMatrix {
    AdjacencyMatrix::from_fn(n, |i, j| j == i + 1)
}

pub fn cycle(n: usize) -> AdjacencyMatrix {
    AdjacencyMatrix::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
}

/// Paley graph on a prime q = 1 mod 4.
pub fn paley(q: usize) -> AdjacencyMatrix {
    let squares: BTreeSet<usize> = (1..q).map(|x| x * x % q).collect();
    AdjacencyMatrix::from_fn(q, |i, j| squares.contains(&((j - i) % q)))
}

/// Paley graph on GF(9) = GF(3)[i]/(i^2 + 1); element a + b i is 3a + b.
pub fn paley9() -> AdjacencyMatrix {
    let mul = |x: usize, y: usize| {
        let (a, b) = (x / 3, x % 3);
        let (c, d) = (y / 3, y % 3);
        let re = (a * c + 2 * b * d) % 3;
        let im = (a * d + b * c) % 3;
        3 * re + im
    };
    let squares: BTreeSet<usize> = (1..9).map(|x| mul(x, x)).collect();
    let sub = |x: usize, y: usize| 3 * ((x / 3 + 3 - y / 3) % 3) + (x % 3 + 3 - y % 3) % 3;
    AdjacencyMatrix::from_fn(9, |i, j| squares.contains(&sub(j, i)))
}

/// Sp(2d, 2): nonzero vectors of GF(2)^(2d) in binary order, adjacent when
/// sum_i x_{2i} y_{2i+1} + x_{2i+1} y_{2i} = 1.
pub fn symplectic(d: u32) -> AdjacencyMatrix {
    let size = (1usize << (2 * d)) - 1;
    let even: usize = (0..d).map(|i| 1usize << (2 * i)).sum();
    let form = |x: usize, y: usize| {
        let (xe, xo) = (x & even, (x >> 1) & even);
        let (ye, yo) = (y & even, (y >> 1) & even);
        ((xe & yo).count_ones() + (xo & ye).count_ones()) % 2 == 1
    };
    AdjacencyMatrix::from_fn(size, |i, j| form(i + 1, j + 1))
}

/// Block graph: blocks adjacent when they meet in exactly `meet` points.
pub fn block_graph(blocks: &[Vec<usize>], meet: usize) -> AdjacencyMatrix {
    let sets: Vec<BTreeSet<usize>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    AdjacencyMatrix::from_fn(sets.len(), |i, j| {
        sets[i].intersection(&sets[j]).count() == meet
    })
}

/// AG(2,3): 9 points (x, y) as 3x + y, 12 lines.
pub fn affine_plane_3() -> Vec<Vec<usize>> {
    let mut lines = Vec::new();
    for m in 0..3 {
        for c in 0..3 {
            lines.push((0..3).map(|x| 3 * x + (m * x + c) % 3).collect());
        }
    }
    for c in 0..3 {
        lines.push((0..3).map(|y| 3 * c + y).collect());
    }
    lines
}

/// Cyclic STS(13) from base blocks {0,1,4} and {0,2,7}.
pub fn sts13() -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    for base in [[0, 1, 4], [0, 2, 7]] {
        for s in 0..13 {
            let mut b: Vec<usize> = base.iter().map(|x| (x + s) % 13).collect();
            b.sort_unstable();
            blocks.push(b);
        }
    }
    blocks
}

// Projective points of GF(q)^dim for prime q, first nonzero coordinate 1.
fn projective_points(q: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = q.pow(dim as u32);
    for code in 1..total {
        let v: Vec<usize> = (0..dim).rev().map(|i| code / q.pow(i as u32) % q).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn normalize(v: &[usize], q: usize) -> Option<Vec<usize>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = (1..q).find(|&y| lead * y % q == 1)?;
    Some(v.iter().map(|x| x * inv % q).collect())
}

/// Lines of PG(3, q) for a prime q, as sets of point indices.
pub fn pg3_lines(q: usize) -> Vec<Vec<usize>> {
    let points = projective_points(q, 4);
    let index = |v: &Vec<usize>| points.iter().position(|p| p == v).expect("point");
    let mut lines = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let mut line = BTreeSet::new();
            for a in 0..q {
                for b in 0..q {
                    let v: Vec<usize> = (0..4)
                        .map(|t| (a * points[i][t] + b * points[j][t]) % q)
                        .collect();
                    if let Some(n) = normalize(&v, q) {
                        line.insert(index(&n));
                    }
                }
            }
            lines.insert(line.into_iter().collect::<Vec<_>>());
        }
    }
    lines.into_iter().collect()
}

// GF(8) = GF(2)[x]/(x^3 + x + 1).
fn gf8_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

/// The 2-(28, 4, 1) design whose points are the lines of PG(2, 8) missing
/// the hyperoval {(1, t, t^2)} + {(0,0,1), (0,1,0)} and whose blocks are
/// the 63 points off the hyperoval. Its block graph is S_4(9).
pub fn hyperoval_design() -> Vec<Vec<usize>> {
    let mut points = Vec::new();
    for code in 1..512usize {
        let v = [code >> 6, (code >> 3) & 7, code & 7];
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            points.push(v);
        }
    }
    let on = |line: &[usize; 3], p: &[usize; 3]| {
        (0..3).fold(0, |acc, i| acc ^ gf8_mul(line[i], p[i])) == 0
    };
    let mut oval: Vec<[usize; 3]> = (0..8).map(|t| [1, t, gf8_mul(t, t)]).collect();
    oval.push([0, 0, 1]);
    oval.push([0, 1, 0]);
    let external: Vec<&[usize; 3]> = points
        .iter()
        .filter(|l| oval.iter().all(|p| !on(l, p)))
        .collect();
    points
        .iter()
        .filter(|p| !oval.contains(p))
        .map(|p| {
            external
                .iter()
                .enumerate()
                .filter(|(_, l)| on(l, p))
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// Check that `blocks` form a 2-(v, k, 1) design on points 0..v.
pub fn is_steiner_system(blocks: &[Vec<usize>], v: usize, k: usize) -> bool {
    let mut cover = vec![0u32; v * v];
    for b in blocks {
        if b.len() != k || b.iter().any(|&x| x >= v) {
            return false;
        }
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                cover[x * v + y] += 1;
                cover[y * v + x] += 1;
            }
        }
    }
    (0..v).all(|x| (0..v).all(|y| x == y || cover[x * v + y] == 1))
}

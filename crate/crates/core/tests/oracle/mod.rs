//! Independent reference arithmetic for the integration tests. Nothing here
//! calls into the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `t a + u b (mod n)`.
pub fn zn(n: u64, t: u64, u: u64, a: u64, b: u64) -> u64 {
    (t * a + u * b) % n
}

pub fn valid_loop(n: u64, m: u64) -> bool {
    n % 2 == 1 && n > 3 && 1 < m && m < n && gcd(m, n) == 1 && gcd(m - 1, n) == 1
}

/// Loop product on ranks, `0` standing for `e`.
pub fn lp(n: u64, m: u64, i: u64, j: u64) -> u64 {
    match (i, j) {
        (0, _) => j,
        (_, 0) => i,
        _ if i == j => 0,
        _ => {
            let r = ((m * j) as i64 - ((m - 1) * i) as i64).rem_euclid(n as i64) as u64;
            if r == 0 { n } else { r }
        }
    }
}

pub type Table = Vec<Vec<usize>>;

pub fn loop_table(n: u64, m: u64) -> Table {
    (0..=n)
        .map(|i| (0..=n).map(|j| lp(n, m, i, j) as usize).collect())
        .collect()
}

pub fn zn_table(n: u64, t: u64, u: u64) -> Table {
    (0..n).map(|a| (0..n).map(|b| zn(n, t, u, a, b) as usize).collect()).collect()
}

pub fn strict_count(n: u64) -> u64 {
    (2..n)
        .filter(|&m| valid_loop(n, m))
        .filter(|&m| {
            (1..=n).all(|x| (1..=n).all(|y| x == y || lp(n, m, x, y) != lp(n, m, y, x)))
        })
        .count() as u64
}

fn image(h: &[usize], f: impl Fn(usize) -> usize) -> BTreeSet<usize> {
    h.iter().map(|&x| f(x)).collect()
}

/// `{j : jH = Hj}` and `{j : (jH)j = H}`.
pub fn normalizers(t: &Table, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let hs: BTreeSet<usize> = h.iter().copied().collect();
    let first = (0..t.len())
        .filter(|&j| image(h, |x| t[j][x]) == image(h, |x| t[x][j]))
        .collect();
    let second = (0..t.len()).filter(|&j| image(h, |x| t[t[j][x]][j]) == hs).collect();
    (first, second)
}

/// Elements commuting and associating with everything.
pub fn center(t: &Table) -> Vec<usize> {
    let n = t.len();
    (0..n)
        .filter(|&a| {
            (0..n).all(|x| t[a][x] == t[x][a])
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        t[t[a][x]][y] == t[a][t[x][y]]
                            && t[t[x][a]][y] == t[x][t[a][y]]
                            && t[t[x][y]][a] == t[x][t[y][a]]
                    })
                })
        })
        .collect()
}

pub fn moufang_center(t: &Table) -> Vec<usize> {
    let n = t.len();
    (0..n)
        .filter(|&a| (0..n).all(|x| (0..n).all(|y| t[t[a][a]][t[x][y]] == t[t[a][x]][t[a][y]])))
        .collect()
}

/// Every nonempty subset `I` with `I * S` (right) or `S * I` (left) inside
/// `I`, by scanning all bitmasks.
pub fn ideals(t: &Table, right: bool) -> BTreeSet<Vec<usize>> {
    let n = t.len();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let inside = |v: usize| mask & (1 << v) != 0;
        let ok = (0..n).filter(|&x| inside(x)).all(|x| {
            (0..n).all(|s| inside(if right { t[x][s] } else { t[s][x] }))
        });
        if ok {
            out.insert((0..n).filter(|&x| inside(x)).collect());
        }
    }
    out
}

pub fn latin(t: &Table) -> bool {
    let n = t.len();
    let perm = |cells: Vec<usize>| {
        let mut seen = vec![false; n];
        cells.into_iter().all(|v| !std::mem::replace(&mut seen[v], true))
    };
    (0..n).all(|i| perm((0..n).map(|j| t[i][j]).collect()) && perm((0..n).map(|j| t[j][i]).collect()))
}

/// The five three-variable laws, evaluated directly.
pub fn law(t: &Table, name: &str) -> bool {
    let n = t.len();
    let m = |a: usize, b: usize| t[a][b];
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| match name {
                "left-alternative" => m(m(x, x), y) == m(x, m(x, y)),
                "right-alternative" => m(m(x, y), y) == m(x, m(y, y)),
                "P-identity" => m(m(x, y), x) == m(x, m(y, x)),
                "bol" => m(m(m(x, y), z), x) == m(x, m(m(y, z), x)),
                "moufang" => m(m(x, y), m(z, x)) == m(m(x, m(y, z)), x),
                other => panic!("no law {other}"),
            })
        })
    })
}

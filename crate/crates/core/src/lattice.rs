//! Small dense integer linear algebra: determinants, maximal-minor gcds and a
//! column Hermite reduction that keeps track of the unimodular change of basis.

use num_integer::Integer;

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k x k` minors of a `k x n` matrix given by its rows.
pub fn maximal_minor_gcd(rows: &[Vec<i128>]) -> i128 {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = 0i128;
    for cols in combinations(n, k) {
        let sub: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        g = g.gcd(&determinant(&sub));
    }
    g
}

/// Result of reducing the rows `G` (k x n) by integer column operations:
/// `G = H * W[0..k]` with `H` lower triangular (k x k) and `W` unimodular.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: Vec<Vec<i128>>,
    pub w: Vec<Vec<i128>>,
}

/// Returns `None` when the rows are linearly dependent.
pub fn column_hermite(rows: &[Vec<i128>]) -> Option<ColumnHermite> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if k > n {
        return None;
    }
    let mut g: Vec<Vec<i128>> = rows.to_vec();
    let mut w: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    for i in 0..k {
        loop {
            let pivot = (i..n).filter(|&j| g[i][j] != 0).min_by_key(|&j| g[i][j].abs());
            let Some(p) = pivot else {
                return None;
            };
            if p != i {
                for r in g.iter_mut() {
                    r.swap(i, p);
                }
                w.swap(i, p);
            }
            let mut done = true;
            for j in i + 1..n {
                if g[i][j] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&g[i][j], &g[i][i]);
                // column j -= q * column i, so row i of W gains q * row j
                for r in g.iter_mut() {
                    r[j] -= q * r[i];
                }
                for c in 0..n {
                    let v = w[j][c];
                    w[i][c] += q * v;
                }
                if g[i][j] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
    }
    let h = g.iter().map(|r| r[..k].to_vec()).collect();
    Some(ColumnHermite { h, w })
}

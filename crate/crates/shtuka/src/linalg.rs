//! Small exact linear algebra helpers: Gaussian elimination over Q and the
//! invariant factors of an integer matrix (for lattice quotients).

use num_rational::BigRational;
use num_traits::Zero;

/// Solve `A x = b` exactly over Q, where `a` is given column-major
/// (`a[j]` is the j-th column).  Returns `None` when the system is
/// inconsistent.  When the solution space is positive-dimensional an
/// arbitrary particular solution is returned; the callers here only use
/// full-column-rank systems.
pub fn solve_columns(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = b.len();
    let cols = a.len();
    for col in a {
        assert_eq!(col.len(), rows, "ragged column in solve_columns");
    }
    // augmented row-major matrix
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: no row of the form (0 ... 0 | nonzero)
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

/// Invariant factors of the cokernel `Z^rows / col-span(m)`: the diagonal of
/// the Smith normal form, padded with zeros for the free part, sorted with
/// torsion first.  Entries are assumed small; arithmetic is in i64.
pub fn smith_invariants(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut t = 0usize;
    while t < rows.min(cols) {
        let mut pivot = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                while m[i][t] != 0 {
                    let q = m[i][t].div_euclid(m[t][t]);
                    for j in 0..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                while m[t][j] != 0 {
                    let q = m[t][j].div_euclid(m[t][t]);
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let mut diag: Vec<i64> = (0..t).map(|i| m[i][i].abs()).collect();
    diag.extend(std::iter::repeat(0).take(rows - t));
    diag.sort_unstable_by_key(|&d| if d == 0 { i64::MAX } else { d });
    diag
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

//! Integer matrix reductions: Smith normal form and exact rank.

use num_rational::Ratio;
use num_traits::Zero;

/// Diagonal of the Smith normal form of an integer matrix: non-negative
/// entries `d_1 | d_2 | …`, zeros trimmed. Pivots are chosen by minimal
/// absolute value to keep entry growth down.
pub fn smith_normal_form(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag: Vec<i128> = Vec::new();
    let mut t = 0usize;

    loop {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in &mut m {
            row.swap(t, pj);
        }

        'reduce: loop {
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        continue 'reduce;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for row in m.iter_mut().take(rows).skip(t) {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        for row in &mut m {
                            row.swap(t, j);
                        }
                        continue 'reduce;
                    }
                }
            }
            // Divisibility: fold in any entry the pivot does not divide.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % m[t][t] != 0 {
                        for col in t..cols {
                            let add = m[i][col];
                            m[t][col] += add;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        diag.push(m[t][t].abs());
        t += 1;
        if t == rows || t == cols {
            break;
        }
    }
    diag
}

/// Rank of an integer matrix over the rationals, by exact Gaussian
/// elimination. Independent of the Smith reduction above.
pub fn rank_over_q(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col];
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col] / pivot;
                for c in col..cols {
                    let sub = factor * a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

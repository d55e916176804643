//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A nonzero `x` with `Σ x_j · columns[j] = 0`, normalized so the first
/// nonzero entry is 1. `None` when the columns are independent.
pub fn null_vector(columns: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let m = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> =
        (0..m).map(|i| columns.iter().map(|c| c.get(i).cloned().unwrap_or_else(Rational::zero)).collect()).collect();
    let pivots = rref(&mut rows);
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); k];
    x[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -rows[row][free].clone();
    }
    let lead = x.iter().find(|v| !v.is_zero()).cloned()?;
    Some(x.into_iter().map(|v| v / &lead).collect())
}

/// Solves `Σ x_j · columns[j] = rhs` exactly. `None` when inconsistent.
/// When the columns are dependent the free variables are set to zero.
pub fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let m = columns.iter().map(Vec::len).chain(std::iter::once(rhs.len())).max().unwrap_or(0);
    let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| get(c, i)).collect();
            row.push(get(rhs, i));
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[row][k].clone();
    }
    Some(x)
}

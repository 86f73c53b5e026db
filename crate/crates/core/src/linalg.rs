//! Dense linear algebra over `Q`.

use crate::rat::Rat;
use num_traits::Zero;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` given the augmented rows `[A | b]`; free variables are set
/// to zero. `None` when inconsistent.
pub fn solve_augmented(mut rows: Vec<Vec<Rat>>) -> Option<Vec<Rat>> {
    let n = rows.first().map_or(0, Vec::len).checked_sub(1)?;
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

/// Basis of the right null space of `A`.
pub fn nullspace(mut a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let cols = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::from_integer(1.into());
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn solves_and_detects_inconsistency() {
        let rows = vec![vec![int(1), int(1), int(3)], vec![int(1), int(-1), int(1)]];
        assert_eq!(solve_augmented(rows), Some(vec![int(2), int(1)]));
        let bad = vec![vec![int(1), int(1), int(3)], vec![int(2), int(2), int(1)]];
        assert_eq!(solve_augmented(bad), None);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let ns = nullspace(a.clone());
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s: Rat = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }
}

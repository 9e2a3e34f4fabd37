//! Dense linear algebra over the prime field `Z/p`.

use crate::arith::inv_mod;

/// Row-reduces a copy of `rows` and returns `(echelon rows, pivot columns)`.
pub fn row_reduce(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot).take(ncols) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    row_reduce(rows, p).1.len()
}

/// Basis of `{x : A x = 0}` where `a` is given by rows of length `ncols`.
pub fn kernel(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    if a.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| u64::from(i == j)).collect())
            .collect();
    }
    let (rref, pivots) = row_reduce(a, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Solves `sum_i x_i * cols[i] = target`, returning one solution if any.
pub fn solve_combination(cols: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = cols.len();
    let dim = target.len();
    // augmented system: rows indexed by coordinate
    let rows: Vec<Vec<u64>> = (0..dim)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r] % p).collect();
            row.push(target[r] % p);
            row
        })
        .collect();
    let (rref, pivots) = row_reduce(&rows, p);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for (row, &pc) in rref.iter().zip(&pivots) {
        x[pc] = row[n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let a = vec![vec![1, 2, 0], vec![2, 1, 0]];
        // over Z/3 the two rows are proportional (2*row0 = [2,1,0])
        assert_eq!(rank(&a, 3), 1);
        let k = kernel(&a, 3, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s: u64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert_eq!(s % 3, 0);
            }
        }
        assert_eq!(kernel(&[], 2, 5).len(), 2);
    }

    #[test]
    fn combination() {
        let cols = vec![vec![1, 0], vec![1, 1]];
        let x = solve_combination(&cols, &[0, 2], 3).unwrap();
        assert_eq!(x, vec![1, 2]);
        assert!(solve_combination(&[vec![1, 1]], &[1, 0], 3).is_none());
    }
}

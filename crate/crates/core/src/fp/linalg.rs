//! Dense linear algebra over `F_p`.

use super::field::Fp;

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(f: &Fp, rows: &[Vec<u64>]) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = f.inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..ncols {
                    let t = f.mul(k, a[r][j]);
                    a[i][j] = f.sub(a[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(f: &Fp, rows: &[Vec<u64>]) -> usize {
    rref(f, rows).1.len()
}

/// Basis of `{v : A v = 0}`.
pub fn nullspace(f: &Fp, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let (r, pivots) = if rows.is_empty() { (vec![], vec![]) } else { rref(f, rows) };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

//! Dense exact linear algebra over Z and Q, sized for lattice and
//! polyhedral computations in small ambient dimension.

use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<Int>>;
pub type RatMatrix = Vec<Vec<Rat>>;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mat_mul_int(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert!(a.is_empty() || inner == b.len());
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Greatest common divisor of a slice, nonnegative; 0 for the zero slice.
pub fn gcd_vec(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Scales a nonzero rational vector to the unique primitive integer vector
/// with the same orientation. Returns None on the zero vector.
pub fn primitive_from_rat(v: &[Rat]) -> Option<Vec<Int>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let lcm = v
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = gcd_vec(&ints);
    Some(ints.iter().map(|x| x / &g).collect())
}

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_rat(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel {x | M x = 0}, one vector per free column.
pub fn nullspace(m: &RatMatrix, cols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Expresses `target` as a rational combination of `basis_rows`:
/// returns c with c · B = target, if it exists.
pub fn express_in_rows(basis_rows: &RatMatrix, target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis_rows.len();
    let n = target.len();
    // Solve B^T c = target^T by elimination on the augmented system.
    let mut aug: RatMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = (0..k).map(|i| basis_rows[i][j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let rows = n;
    let cols = k + 1;
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..cols {
                    let t = &aug[r][j] * &f;
                    aug[i][j] = &aug[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..rows {
        if !aug[i][k].is_zero() {
            return None;
        }
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &pc) in aug.iter().zip(&pivots) {
        c[pc] = row[k].clone();
    }
    // Verify (columns without pivots may make the system inconsistent).
    for j in 0..n {
        let got: Rat = (0..k).map(|i| &c[i] * &basis_rows[i][j]).sum();
        if got != target[j] {
            return None;
        }
    }
    Some(c)
}

pub fn det_rat(m: &RatMatrix) -> Rat {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].clone();
        for j in c..n {
            a[c][j] = &a[c][j] / &inv;
        }
        for i in (c + 1)..n {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
    }
    det
}

pub fn det_int(m: &IntMatrix) -> Int {
    let rat: RatMatrix = m.iter().map(|r| int_to_rat_vec(r)).collect();
    let d = det_rat(&rat);
    debug_assert!(d.denom().is_one());
    d.numer().clone()
}

/// Row-style Hermite normal form: positive pivots with strictly increasing
/// pivot columns, entries above each pivot reduced into [0, pivot),
/// zero rows removed. Canonical for the row span as a lattice.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if (r..rows).all(|i| a[i][c].is_zero()) {
            continue;
        }
        loop {
            let p = (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].abs())
                .unwrap();
            a.swap(r, p);
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let mut clean = true;
            for i in (r + 1)..rows {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    for j in 0..cols {
                        let t = &a[r][j] * &q;
                        a[i][j] = &a[i][j] - t;
                    }
                    if !a[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        for i in 0..r {
            if !a[i][c].is_zero() {
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..cols {
                    let t = &a[r][j] * &q;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Smith normal form data: u * input * v = d with u, v unimodular and the
/// diagonal of d nonnegative with each entry dividing the next.
pub struct SmithTransforms {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_with_transforms(m: &IntMatrix) -> SmithTransforms {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut d = m.to_vec();
    let mut u = identity_int(rows);
    let mut v = identity_int(cols);
    let mut v_inv = identity_int(cols);

    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        d.swap(i, j);
        u.swap(i, j);
    };
    let add_row = |d: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &Int| {
        // row_dst += q * row_src
        for col in 0..d[dst].len() {
            let t = &d[src][col] * q;
            d[dst][col] = &d[dst][col] + t;
        }
        for col in 0..u[dst].len() {
            let t = &u[src][col] * q;
            u[dst][col] = &u[dst][col] + t;
        }
    };
    let swap_cols =
        |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize| {
            for row in d.iter_mut() {
                row.swap(i, j);
            }
            for row in v.iter_mut() {
                row.swap(i, j);
            }
            v_inv.swap(i, j);
        };
    let add_col = |d: &mut IntMatrix,
                   v: &mut IntMatrix,
                   v_inv: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   q: &Int| {
        // col_dst += q * col_src; v_inv gets the inverse row operation
        for row in d.iter_mut() {
            let t = &row[src] * q;
            row[dst] = &row[dst] + t;
        }
        for row in v.iter_mut() {
            let t = &row[src] * q;
            row[dst] = &row[dst] + t;
        }
        for col in 0..cols {
            let t = &v_inv[dst][col] * q;
            v_inv[src][col] = &v_inv[src][col] - t;
        }
    };
    let negate_row = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize| {
        for x in d[i].iter_mut() {
            *x = -x.clone();
        }
        for x in u[i].iter_mut() {
            *x = -x.clone();
        }
    };

    let mut t = 0;
    while t < rows && t < cols {
        // Deterministic pivot: smallest absolute value, then position.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() {
                    let better = match pivot {
                        Some((pi, pj)) => d[i][j].abs() < d[pi][pj].abs(),
                        None => true,
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, &mut v_inv, t, pj);
        loop {
            if d[t][t].is_negative() {
                negate_row(&mut d, &mut u, t);
            }
            let mut restarted = false;
            for i in 0..rows {
                if i != t && !d[i][t].is_zero() {
                    let q = -d[i][t].div_floor(&d[t][t]);
                    add_row(&mut d, &mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        swap_rows(&mut d, &mut u, t, i);
                        restarted = true;
                        break;
                    }
                }
            }
            if restarted {
                continue;
            }
            let mut restarted = false;
            for j in 0..cols {
                if j != t && !d[t][j].is_zero() {
                    let q = -d[t][j].div_floor(&d[t][t]);
                    add_col(&mut d, &mut v, &mut v_inv, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, &mut v, &mut v_inv, t, j);
                        restarted = true;
                        break;
                    }
                }
            }
            if restarted {
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let mut fixed = false;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        add_row(&mut d, &mut u, t, i, &Int::one());
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        t += 1;
    }
    SmithTransforms { u, d, v, v_inv }
}

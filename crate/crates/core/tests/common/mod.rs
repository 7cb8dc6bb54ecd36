//! Dense brute-force solves used as an independent oracle: every system is
//! written out as a full matrix from the generator matrices alone and its
//! rank is taken modulo two primes.
#![allow(dead_code)]

use num_traits::{Signed, ToPrimitive};
use skewberger::lie::LieRep;
use skewberger::linalg::Q;
use skewberger::registry::parse_spec;

/// Every canonical spec with `dim V ≤ 6` the grammar accepts.
pub fn small_specs() -> Vec<String> {
    let mut factors: Vec<String> = (2..=6).map(|n| format!("sl({n})")).collect();
    factors.extend((3..=6).map(|n| format!("so({n})")));
    factors.extend([2, 4, 6].map(|n| format!("sp({n})")));
    factors.extend([3, 5].map(|m| format!("spin({m})")));
    let mut reps: Vec<String> = ["std", "adjoint", "spin", "spin+", "spin-", "sym2_0", "wedge3_0"]
        .map(String::from)
        .to_vec();
    reps.extend((2..=5).map(|k| format!("sym({k})")));
    reps.extend((2..=5).map(|k| format!("wedge({k})")));
    let mut out = std::collections::BTreeSet::new();
    for z in ["", "+z"] {
        for f in &factors {
            for r in &reps {
                out.insert(format!("{f}{z}:{r}"));
            }
            for g in &factors {
                out.insert(format!("{f}*{g}{z}:tensor"));
            }
        }
    }
    let specs: std::collections::BTreeSet<String> = out
        .iter()
        .filter_map(|s| parse_spec(s).ok())
        .filter(|s| s.dim_v() <= 6)
        .map(|s| s.to_string())
        .collect();
    specs.into_iter().collect()
}

const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn reduce(x: &Q, p: u64) -> u64 {
    let conv = |v: &num_bigint::BigInt| -> u64 {
        let m = (v.abs() % num_bigint::BigInt::from(p)).to_u64().unwrap();
        if v.is_negative() {
            (p - m) % p
        } else {
            m
        }
    };
    conv(x.numer()) * pow(conv(x.denom()), p - 2, p) % p
}

fn rank_mod(rows: &[Vec<(usize, Q)>], ncols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0u64; ncols];
            for (c, v) in r {
                d[*c] = (d[*c] + reduce(v, p)) % p;
            }
            d
        })
        .filter(|d| d.iter().any(|x| *x != 0))
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][col], p - 2, p);
        for x in m[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pr = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f != 0 {
                for (x, y) in row[col..].iter_mut().zip(&pr[col..]) {
                    if *y != 0 {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over Q, assuming neither prime is unlucky; panics if they disagree.
pub fn rank(rows: &[Vec<(usize, Q)>], ncols: usize) -> usize {
    let r: Vec<usize> = PRIMES.iter().map(|p| rank_mod(rows, ncols, *p)).collect();
    assert_eq!(r[0], r[1], "oracle primes disagree");
    r[0]
}

fn gens(rep: &LieRep) -> Vec<Vec<Vec<Q>>> {
    rep.generators().iter().map(|g| g.to_dense()).collect()
}

/// All ordered pairs `(i, j)`, `i ≤ j`, indexed densely.
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            idx[i][j] = k;
            idx[j][i] = k;
            k += 1;
        }
    }
    idx
}

/// Bianchi rows for unknown symmetric `R(e_i, e_j) = Σ_a r_{ij}^a X_a`,
/// with columns `offset + pair·d + a`.
fn bianchi_rows(x: &[Vec<Vec<Q>>], n: usize, offset: usize, out: &mut Vec<Vec<(usize, Q)>>) {
    let d = x.len();
    let pi = pair_index(n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in 0..n {
                    let mut row = Vec::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (g, xm) in x.iter().enumerate() {
                            let v = &xm[l][c];
                            if *v != Q::from_integer(0.into()) {
                                row.push((offset + pi[a][b] * d + g, v.clone()));
                            }
                        }
                    }
                    out.push(row);
                }
            }
        }
    }
}

pub fn rbar_dim(rep: &LieRep) -> usize {
    let (n, d) = (rep.dim_v(), rep.dim_g());
    let x = gens(rep);
    let cols = n * (n + 1) / 2 * d;
    let mut rows = Vec::new();
    bianchi_rows(&x, n, 0, &mut rows);
    cols - rank(&rows, cols)
}

/// `S: V → ⊙²V*⊗g` with every `S_x` in `R̄` and the cyclic sum of
/// `S_x(y, z)` vanishing.
pub fn nabla_dim(rep: &LieRep) -> usize {
    let (n, d) = (rep.dim_v(), rep.dim_g());
    let x = gens(rep);
    let p = n * (n + 1) / 2;
    let block = p * d;
    let cols = n * block;
    let pi = pair_index(n);
    let mut rows = Vec::new();
    for s in 0..n {
        bianchi_rows(&x, n, s * block, &mut rows);
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for a in 0..d {
                    let row = [(i, j, k), (j, k, i), (k, i, j)]
                        .iter()
                        .map(|&(s, y, z)| (s * block + pi[y][z] * d + a, Q::from_integer(1.into())))
                        .collect();
                    rows.push(row);
                }
            }
        }
    }
    cols - rank(&rows, cols)
}

/// `φ: V → g` with `φ(e_i)e_j + φ(e_j)e_i = 0`.
pub fn g1_dim(rep: &LieRep) -> usize {
    let (n, d) = (rep.dim_v(), rep.dim_g());
    let x = gens(rep);
    let cols = n * d;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                let mut row = Vec::new();
                for (s, t) in [(i, j), (j, i)] {
                    for (a, xm) in x.iter().enumerate() {
                        let v = &xm[l][t];
                        if *v != Q::from_integer(0.into()) {
                            row.push((s * d + a, v.clone()));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    cols - rank(&rows, cols)
}

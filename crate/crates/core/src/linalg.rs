//! Exact linear algebra over Q and over word-sized prime fields, with the
//! Chinese remainder and rational reconstruction glue between them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Row reduces in place (leftmost pivots, monic, cleared above and below),
/// drops zero rows and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
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
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : A v = 0}`, one vector per free column, in column order.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Solutions of `A x = b` as a particular solution and a nullspace basis, or
/// `None` when the system is inconsistent.
pub fn solve_affine(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    ncols: usize,
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some((x, nullspace(a, ncols)))
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| powmod(a, p - 2, p))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≡ 1 (mod 8)` below `2^62`, descending.
pub fn primes_1_mod_8() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - ((1u64 << 62) % 8) + 1 - 8;
    (0..).map(move |k| start - 8 * k).filter(|&p| is_prime_u64(p))
}

/// A primitive 8th root of unity modulo `p ≡ 1 (mod 8)`.
pub fn zeta8_mod(p: u64) -> u64 {
    (2..p)
        .map(|g| powmod(g, (p - 1) / 8, p))
        .find(|&z| powmod(z, 4, p) == p - 1)
        .expect("p = 1 mod 8")
}

/// Reduction of a rational with denominator prime to `p`.
pub fn rat_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    Some(mulmod(n, invmod(d, p)?, p))
}

/// In-place row reduction modulo `p`; returns pivot columns.
pub fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pi) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pi);
        let inv = invmod(rows[r][c], p).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = ((*x as u128 + f as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Nullspace modulo `p` in reduced form: one vector per free column `f`,
/// with a 1 at `f` and zeros at the other free columns.
pub fn nullspace_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut a = rows.to_vec();
    let pivots = rref_mod(&mut a, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect();
    (free, basis)
}

/// Combines residues `a mod m` and `b mod p` into one modulo `m·p`.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let a_mod_p = a.mod_floor(&pb).to_u64().expect("residue");
    let m_mod_p = m.mod_floor(&pb).to_u64().expect("residue");
    let diff = (b + p - a_mod_p) % p;
    let k = mulmod(diff, invmod(m_mod_p, p).expect("coprime moduli"), p);
    a + m * BigInt::from(k)
}

/// The rational `n/d` with `|n|, d ≤ sqrt(m/2)` congruent to `a` mod `m`,
/// if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.clone().gcd(&t1) != BigInt::one() && !r1.is_zero() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primes_and_roots() {
        let ps: Vec<u64> = primes_1_mod_8().take(3).collect();
        for &p in &ps {
            assert_eq!(p % 8, 1);
            assert!(p < 1 << 62);
            let z = zeta8_mod(p);
            assert_eq!(powmod(z, 8, p), 1);
            assert_eq!(powmod(z, 4, p), p - 1);
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn affine_solve() {
        let a = vec![vec![q(1, 1), q(2, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]];
        let (x, ns) = solve_affine(&a, &[q(3, 1), q(1, 2)], 3).unwrap();
        assert_eq!(x, vec![q(3, 1), q(0, 1), q(1, 2)]);
        assert_eq!(ns, vec![vec![q(-2, 1), q(1, 1), q(0, 1)]]);
        let bad = vec![vec![q(1, 1)], vec![q(2, 1)]];
        assert!(solve_affine(&bad, &[q(1, 1), q(1, 1)], 1).is_none());
    }

    proptest! {
        #[test]
        fn reconstruction_round_trips(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let x = q(n, d);
            let ps: Vec<u64> = primes_1_mod_8().take(2).collect();
            let mut a = BigInt::from(rat_mod(&x, ps[0]).unwrap());
            let mut m = BigInt::from(ps[0]);
            a = crt_pair(&a, &m, rat_mod(&x, ps[1]).unwrap(), ps[1]);
            m *= BigInt::from(ps[1]);
            prop_assert_eq!(rational_reconstruct(&a, &m), Some(x));
        }

        #[test]
        fn modular_and_rational_nullspaces_agree(entries in proptest::collection::vec(-3i64..4, 12)) {
            let rows: Vec<Vec<BigRational>> = entries.chunks(4).map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect();
            let p = primes_1_mod_8().next().unwrap();
            let mrows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| rat_mod(x, p).unwrap()).collect()).collect();
            let (_, nm) = nullspace_mod(&mrows, 4, p);
            let nq = nullspace(&rows, 4);
            prop_assert_eq!(nm.len(), nq.len());
            for (a, b) in nm.iter().zip(&nq) {
                let reduced: Vec<u64> = b.iter().map(|x| rat_mod(x, p).unwrap()).collect();
                prop_assert_eq!(a, &reduced);
            }
        }
    }
}

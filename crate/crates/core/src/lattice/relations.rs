//! Exact multiplicative-relation lattices of diagonal tuples whose entries
//! are rational multiples of roots of unity. This is how a certificate's
//! diagonal generators are checked against the lattice they claim to
//! generate.

use super::{IntMat, Lattice};
use crate::arith::{Coeff, CycloNum, Rat};
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

const TRIAL_LIMIT: u64 = 1_000_000;

/// One multiplicative generator decomposed as sign * prod p^a * zeta_q^e.
#[derive(Debug, Clone)]
struct EntryFactors {
    primes: BTreeMap<u64, i64>,
    sign_odd: bool,
    zeta_exp: i64,
    zeta_q: u32,
}

fn factor_nat(mut n: BigInt, sign: i64, out: &mut BTreeMap<u64, i64>) -> Option<()> {
    debug_assert!(n.is_positive());
    let mut p = 2u64;
    while &n > &BigInt::one() {
        if p > TRIAL_LIMIT {
            return None;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > n && n.to_u64().map(|v| v > TRIAL_LIMIT).unwrap_or(true) {
            // leftover prime beyond trial range
            return None;
        }
        if (&n % &pb).is_zero() {
            let mut k = 0i64;
            while (&n % &pb).is_zero() {
                n /= &pb;
                k += 1;
            }
            *out.entry(p).or_insert(0) += sign * k;
        } else if &pb * &pb > n {
            // n itself is prime
            let v = n.to_u64()?;
            *out.entry(v).or_insert(0) += sign;
            break;
        }
        p += 1;
    }
    Some(())
}

fn decompose(entry: &CycloNum) -> Option<EntryFactors> {
    // find e with entry * zeta^-e rational
    let q = entry.conductor().max(1);
    let mut rational: Option<(Rat, i64)> = None;
    for e in 0..q.max(1) {
        let z = CycloNum::root(q, -(e as i64));
        let cand = entry.checked_mul(&z).ok()?;
        if let Some(r) = cand.to_rat() {
            rational = Some((r, e as i64));
            break;
        }
    }
    let (c, e) = rational?;
    if Coeff::is_zero(&c) {
        return None;
    }
    let mut primes = BTreeMap::new();
    factor_nat(c.numer().abs(), 1, &mut primes)?;
    factor_nat(c.denom().abs(), -1, &mut primes)?;
    Some(EntryFactors {
        primes,
        sign_odd: c.numer().is_negative(),
        zeta_exp: e,
        zeta_q: q,
    })
}

/// The lattice of all integer vectors v with prod_j g_{i,j}^{v_j} = 1 for
/// every tuple i. `None` when some entry is not a rational times a root of
/// unity (or a prime factor exceeds the trial-division range).
pub fn relation_lattice_of_tuples(tuples: &[Vec<CycloNum>]) -> Option<Lattice> {
    let d = tuples.first()?.len();
    assert!(tuples.iter().all(|t| t.len() == d));
    let factored: Vec<Vec<EntryFactors>> = tuples
        .iter()
        .map(|t| t.iter().map(decompose).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    // the torsion parts live in one cyclic group of order Q = lcm(2, q_j);
    // a sign is the Q/2-th power of the primitive root, so signs and zeta
    // exponents fold into a single congruence per tuple
    let any_sign = factored.iter().flatten().any(|f| f.sign_odd);
    let mut q: u32 = factored
        .iter()
        .flatten()
        .fold(1u32, |a, f| a.lcm(&f.zeta_q.max(1)));
    if any_sign {
        q = q.lcm(&2);
    }

    let mut exact_rows: Vec<Vec<BigInt>> = vec![];
    let mut cong_rows: Vec<(Vec<BigInt>, i64)> = vec![];
    for tuple in &factored {
        let mut all_primes: Vec<u64> = tuple.iter().flat_map(|f| f.primes.keys().copied()).collect();
        all_primes.sort_unstable();
        all_primes.dedup();
        for p in all_primes {
            exact_rows.push(
                tuple
                    .iter()
                    .map(|f| BigInt::from(f.primes.get(&p).copied().unwrap_or(0)))
                    .collect(),
            );
        }
        if q > 1 {
            cong_rows.push((
                tuple
                    .iter()
                    .map(|f| {
                        let zeta = f.zeta_exp * (q / f.zeta_q.max(1)) as i64;
                        let sign = if f.sign_odd { (q / 2) as i64 } else { 0 };
                        BigInt::from((zeta + sign).rem_euclid(q as i64))
                    })
                    .collect(),
                q as i64,
            ));
        }
    }

    // kernel of [exact 0; cong M_diag] over (v, k), projected to v
    let n_aux = cong_rows.len();
    let total_rows = exact_rows.len() + cong_rows.len();
    let mut a = IntMat::zeros(total_rows, d + n_aux);
    for (i, row) in exact_rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            a[(i, j)] = e.clone();
        }
    }
    for (ci, (row, modulus)) in cong_rows.iter().enumerate() {
        let i = exact_rows.len() + ci;
        for (j, e) in row.iter().enumerate() {
            a[(i, j)] = e.clone();
        }
        a[(i, d + ci)] = BigInt::from(*modulus);
    }
    let kernel = integer_kernel(&a);
    let rows: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..d].to_vec()).collect();
    Some(Lattice::from_rows(d, rows))
}

/// Basis of {v : A v = 0} over the integers, via the Smith normal form.
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<BigInt>> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                v
            })
            .collect();
    }
    let res = super::snf(a);
    let r = res.divisors.len();
    // kernel = span of columns r..n of V
    (r..n)
        .map(|j| (0..n).map(|i| res.v[(i, j)].clone()).collect())
        .collect()
}

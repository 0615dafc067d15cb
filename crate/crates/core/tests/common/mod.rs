#![allow(dead_code)]

use gamehop::{Dist, Prob, Residue};
use proptest::prelude::*;

pub const VALUES: u8 = 6;

/// A distribution over `0..VALUES` with repeated values allowed.
pub fn arb_dist() -> impl Strategy<Value = Dist<u8>> {
    prop::collection::vec((0..VALUES, 1u64..10), 1..6).prop_map(|raw| {
        let total: u64 = raw.iter().map(|(_, w)| w).sum();
        let entries = raw
            .into_iter()
            .map(|(v, w)| (v, Prob::new(w, total).unwrap()))
            .collect();
        Dist::from_entries(entries).unwrap()
    })
}

/// A continuation `u8 -> Dist<u8>`, tabulated on `0..VALUES`.
pub fn arb_kernel() -> impl Strategy<Value = Vec<Dist<u8>>> {
    prop::collection::vec(arb_dist(), VALUES as usize)
}

/// An event on `0..VALUES` as a bit mask.
pub fn arb_event() -> impl Strategy<Value = u8> {
    any::<u8>()
}

pub fn in_event(mask: u8, v: u8) -> bool {
    mask >> v & 1 == 1
}

pub fn arb_eps() -> impl Strategy<Value = Prob> {
    (0u64..=12).prop_map(|k| Prob::new(k, 12).unwrap())
}

/// `bind(pure(a), f) = f(a)`, `bind(d, pure) = d` and associativity.
pub fn monad_laws(a: u8, d: &Dist<u8>, f: &[Dist<u8>], g: &[Dist<u8>]) -> [bool; 3] {
    let left_id = gamehop::dist_eq(&Dist::pure(a).bind(|x| f[*x as usize].clone()), &f[a as usize]);
    let right_id = gamehop::dist_eq(&d.bind(|x| Dist::pure(*x)), d);
    let nested = d.bind(|x| f[*x as usize].clone()).bind(|y| g[*y as usize].clone());
    let flat = d.bind(|x| f[*x as usize].bind(|y| g[*y as usize].clone()));
    [left_id, right_id, gamehop::dist_eq(&nested, &flat)]
}

/// Reflexivity, symmetry, the triangle rule with the tight epsilons, and
/// monotonicity in epsilon.
pub fn indist_laws(d: [&Dist<u8>; 3], mask: u8, eps: &Prob, wider: &Prob) -> [bool; 4] {
    let ev = |v: &u8| in_event(mask, *v);
    let gap = |a: &Dist<u8>, b: &Dist<u8>| a.pr(ev).abs_diff(&b.pr(ev));
    let reflexive = gamehop::indist(d[0], d[0], ev, &Prob::zero());
    let symmetric = gamehop::indist(d[0], d[1], ev, eps) == gamehop::indist(d[1], d[0], ev, eps);
    let e1 = gap(d[0], d[1]);
    let e2 = gap(d[1], d[2]);
    let triangle = gamehop::indist(d[0], d[1], ev, &e1)
        && gamehop::indist(d[1], d[2], ev, &e2)
        && gamehop::indist(d[0], d[2], ev, &(&e1 + &e2));
    let hi = if wider < eps { eps } else { wider };
    let monotone = !gamehop::indist(d[0], d[1], ev, eps) || gamehop::indist(d[0], d[1], ev, hi);
    [reflexive, symmetric, triangle, monotone]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Quadratic residues modulo `n`, by squaring every unit.
pub fn brute_qr(n: u64) -> Vec<u64> {
    let mut qr: Vec<u64> = (1..n).filter(|&y| gcd(y, n) == 1).map(|y| y * y % n).collect();
    qr.sort_unstable();
    qr.dedup();
    qr
}

/// Jacobi-(+1) slices by Euler's criterion at each prime factor.
pub fn brute_jacobi_slices(p: u64, q: u64) -> (Vec<u64>, Vec<u64>) {
    let n = p * q;
    let euler = |a: u64, r: u64| {
        let mut acc = 1u64;
        for _ in 0..(r - 1) / 2 {
            acc = acc * (a % r) % r;
        }
        if acc == 1 {
            1i8
        } else {
            -1
        }
    };
    let qr = brute_qr(n);
    let plus1: Vec<u64> = (1..n)
        .filter(|&y| gcd(y, n) == 1 && euler(y, p) * euler(y, q) == 1)
        .collect();
    let qnr_plus1 = plus1.iter().copied().filter(|y| qr.binary_search(y).is_err()).collect();
    (plus1, qnr_plus1)
}

/// Every square root of `x` that is itself a residue.
pub fn brute_principal_roots(x: u64, n: u64) -> Vec<u64> {
    let qr = brute_qr(n);
    (1..n)
        .filter(|&r| r * r % n == x && qr.binary_search(&r).is_ok())
        .collect()
}

pub fn values(set: &[Residue]) -> Vec<u64> {
    set.iter().map(|r| r.value()).collect()
}

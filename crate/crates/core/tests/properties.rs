mod common;

use common::*;
use gamehop::numth::{jacobi, legendre, BlumModulus, SemiprimeModulus};
use gamehop::primitives::{gm_decrypt, gm_encrypt_core, gm_keygen};
use gamehop::{dist_eq, Dist, Prob};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
const BLUM_PRIMES: [u64; 5] = [3, 7, 11, 19, 23];

fn semiprime() -> impl Strategy<Value = SemiprimeModulus> {
    (0..SMALL_PRIMES.len(), 0..SMALL_PRIMES.len() - 1).prop_map(|(i, j)| {
        let j = if j >= i { j + 1 } else { j };
        SemiprimeModulus::new(SMALL_PRIMES[i], SMALL_PRIMES[j]).unwrap()
    })
}

fn blum() -> impl Strategy<Value = BlumModulus> {
    (0..BLUM_PRIMES.len(), 0..BLUM_PRIMES.len() - 1).prop_map(|(i, j)| {
        let j = if j >= i { j + 1 } else { j };
        BlumModulus::new(BLUM_PRIMES[i], BLUM_PRIMES[j]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monad_laws_hold(a in 0..VALUES, d in arb_dist(), f in arb_kernel(), g in arb_kernel()) {
        prop_assert_eq!(monad_laws(a, &d, &f, &g), [true; 3]);
    }

    #[test]
    fn indist_laws_hold(
        d0 in arb_dist(), d1 in arb_dist(), d2 in arb_dist(),
        mask in arb_event(), eps in arb_eps(), wider in arb_eps(),
    ) {
        prop_assert_eq!(indist_laws([&d0, &d1, &d2], mask, &eps, &wider), [true; 4]);
    }

    #[test]
    fn map_is_bind_of_pure(d in arb_dist(), k in 1u8..4) {
        let mapped = d.map(|x| x / k);
        let bound = d.bind(|x| Dist::pure(x / k));
        prop_assert!(dist_eq(&mapped, &bound));
        prop_assert!(mapped.total_mass().is_one());
    }

    #[test]
    fn jacobi_is_product_of_legendre(m in semiprime(), a in -500i64..500) {
        let (p, q) = (m.p(), m.q());
        prop_assert_eq!(jacobi(a, m.n()).unwrap(), legendre(a, p).unwrap() * legendre(a, q).unwrap());
    }

    #[test]
    fn jacobi_is_multiplicative(m in semiprime(), a in 1i64..400, b in 1i64..400) {
        let n = m.n();
        prop_assert_eq!(jacobi(a * b, n).unwrap(), jacobi(a, n).unwrap() * jacobi(b, n).unwrap());
    }

    #[test]
    fn principal_root_squares_back(m in blum(), k in any::<usize>()) {
        let x = m.qr()[k % m.qr().len()];
        let r = m.principal_sqrt(x).unwrap();
        prop_assert_eq!(r.square(), x);
        prop_assert!(m.is_qr(r).unwrap());
        prop_assert_eq!(brute_principal_roots(x.value(), m.n()), vec![r.value()]);
    }

    #[test]
    fn gm_round_trip(m in semiprime(), k in any::<usize>(), j in any::<usize>(), bit in any::<bool>()) {
        let y = m.qnr_plus1()[k % m.qnr_plus1().len()];
        let (pk, sk) = gm_keygen(m.p(), m.q(), y.value()).unwrap();
        let x = m.units()[j % m.units().len()];
        let c = gm_encrypt_core(&pk, bit, x).unwrap();
        prop_assert_eq!(gm_decrypt(&sk, c).unwrap(), bit);
    }

    #[test]
    fn prob_sum_of_halves(k in 1u64..50) {
        let parts: Prob = (0..k).map(|_| Prob::new(1, k).unwrap()).sum();
        prop_assert!(parts.is_one());
    }
}

#[test]
fn tables_match_brute_force() {
    for (p, q) in [(3, 5), (3, 7), (3, 11), (5, 7), (3, 19), (7, 11), (7, 19)] {
        let m = SemiprimeModulus::new(p, q).unwrap();
        let (plus1, qnr_plus1) = brute_jacobi_slices(p, q);
        assert_eq!(values(m.qr()), brute_qr(m.n()), "n = {}", m.n());
        assert_eq!(values(m.units_plus1()), plus1, "n = {}", m.n());
        assert_eq!(values(m.qnr_plus1()), qnr_plus1, "n = {}", m.n());
    }
}

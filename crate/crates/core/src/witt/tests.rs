use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::poly::Polynomial;
use crate::spectrum::RingPresentation;

fn xs_ys(t: &WittPolynomialTable) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let k = t.divisors().len();
    let ctx = t.ctx();
    ((0..k).map(|i| Polynomial::var(ctx, i)).collect(), (0..k).map(|i| Polynomial::var(ctx, k + i)).collect())
}

fn int(t: &WittPolynomialTable, c: i64) -> Polynomial {
    Polynomial::constant(t.ctx(), c)
}

#[test]
fn depth_one() {
    let t = WittPolynomialTable::build(1).unwrap();
    let (x, y) = xs_ys(&t);
    assert_eq!(t.sum(1).unwrap(), &(&x[0] + &y[0]));
    assert_eq!(t.product(1).unwrap(), &(&x[0] * &y[0]));
    assert_eq!(t.negation(1).unwrap(), &-&x[0]);
}

#[test]
fn depth_two_and_three() {
    let t = WittPolynomialTable::build(2).unwrap();
    let (x, y) = xs_ys(&t);
    assert_eq!(t.sum(2).unwrap(), &(&(&x[1] + &y[1]) - &(&x[0] * &y[0])));
    let m = &(&(&x[0].pow(2) * &y[1]) + &(&x[1] * &y[0].pow(2))) + &(&int(&t, 2) * &(&x[1] * &y[1]));
    assert_eq!(t.product(2).unwrap(), &m);
    assert_eq!(t.negation(2).unwrap(), &-(&x[0].pow(2) + &x[1]));

    let t = WittPolynomialTable::build(3).unwrap();
    let (x, y) = xs_ys(&t);
    let s = &(&(&x[1] + &y[1]) - &(&x[0].pow(2) * &y[0])) - &(&x[0] * &y[0].pow(2));
    assert_eq!(t.sum(3).unwrap(), &s);
    assert_eq!(t.negation(3).unwrap(), &-&x[1]);
}

#[test]
fn prime_closed_forms() {
    for p in [2u64, 3, 5] {
        let t = WittPolynomialTable::build(p).unwrap();
        let (x, y) = xs_ys(&t);
        let mut s = &x[1] + &y[1];
        for i in 1..p {
            let c = binomial(BigInt::from(p), BigInt::from(i)) / BigInt::from(p);
            s = &s - &(&x[0].pow(i as u32) * &y[0].pow((p - i) as u32)).scale(&c);
        }
        assert_eq!(t.sum(p).unwrap(), &s, "S_{p}");
        let pp = p as u32;
        let m = &(&(&x[0].pow(pp) * &y[1]) + &(&x[1] * &y[0].pow(pp))) + &(&x[1] * &y[1]).scale(&BigInt::from(p));
        assert_eq!(t.product(p).unwrap(), &m, "M_{p}");
    }
}

#[test]
fn larger_tables_satisfy_identities() {
    for d in [4u64, 6, 8, 12] {
        let t = WittPolynomialTable::build(d).unwrap();
        assert_eq!(t.divisors(), divisors(d).as_slice());
        let rebuilt = WittPolynomialTable::from_parts(
            d,
            t.polynomials(WittOp::Add).to_vec(),
            t.polynomials(WittOp::Mul).to_vec(),
            t.polynomials(WittOp::Neg).to_vec(),
        )
        .unwrap();
        assert_eq!(rebuilt, t);
    }
}

#[test]
fn tampered_table_is_rejected() {
    let t = WittPolynomialTable::build(2).unwrap();
    let mut sum = t.polynomials(WittOp::Add).to_vec();
    sum[1] = &sum[1] + &int(&t, 1);
    let err = WittPolynomialTable::from_parts(
        2,
        sum,
        t.polynomials(WittOp::Mul).to_vec(),
        t.polynomials(WittOp::Neg).to_vec(),
    );
    assert!(matches!(err, Err(Error::InvariantViolation(_))));
    assert!(WittPolynomialTable::build(0).is_err());
}

#[test]
fn table_names() {
    let t = WittPolynomialTable::build(6).unwrap();
    assert_eq!(t.names(), ["X1", "X2", "X3", "X6", "Y1", "Y2", "Y3", "Y6"]);
    assert_eq!(t.sum(2).unwrap().to_text(&t.names()), "-X1*Y1 + X2 + Y2");
}

fn over_integers(d: u64) -> WittRing {
    WittRing::new(WittPolynomialTable::build(d).unwrap(), RingPresentation::integers())
}

#[test]
fn small_examples() {
    let w = over_integers(2);
    let a = w.from_integers(&[1, 0]).unwrap();
    assert_eq!(w.add(&a, &a).unwrap(), w.from_integers(&[2, -1]).unwrap());
    assert_eq!(w.add(&a, &w.zero()).unwrap(), a);
    let b = w.from_integers(&[3, 1]).unwrap();
    let g: Vec<_> = w.ghost(&b).unwrap().iter().map(|p| p.as_constant().unwrap()).collect();
    assert_eq!(g, [BigInt::from(3), BigInt::from(11)]);
    assert_eq!(w.mul(&w.one().unwrap(), &b).unwrap(), b);
    assert_eq!(w.w_map(&w.from_integers(&[1, 1]).unwrap()).unwrap().as_constant(), Some(BigInt::from(3)));

    let w = over_integers(6);
    let e = w.from_integers(&[0, 0, 0, 1]).unwrap();
    let g: Vec<_> = w.ghost(&e).unwrap().iter().map(|p| p.as_constant().unwrap_or_default()).collect();
    assert_eq!(g, [0, 0, 0, 6].map(BigInt::from));
    let a = w.from_integers(&[5, 0, 0, 0]).unwrap();
    assert_eq!(w.w_map(&a).unwrap().as_constant(), Some(BigInt::from(5i64.pow(6))));
}

#[test]
fn from_ghost_examples() {
    let w = WittRing::new(WittPolynomialTable::build(2).unwrap(), RingPresentation::integers_mod(9));
    let g = [w.base().constant(2), w.base().constant(2)];
    assert_eq!(w.from_ghost(&g).unwrap(), w.from_integers(&[2, 8]).unwrap());

    let w = WittRing::new(WittPolynomialTable::build(6).unwrap(), RingPresentation::integers_mod(25));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let a = w.random(&mut rng, 10).unwrap();
        assert_eq!(w.from_ghost(&w.ghost(&a).unwrap()).unwrap(), a);
    }

    let w = WittRing::new(WittPolynomialTable::build(3).unwrap(), RingPresentation::integers_mod(3));
    let g = [w.base().constant(1), w.base().constant(1)];
    let r = w.from_ghost(&g);
    assert!(matches!(r, Err(Error::NotInvertible(_))), "{r:?}");
}

#[test]
fn polynomial_coefficients() {
    let base = RingPresentation::new(vec!["e".into()], vec![]).unwrap();
    let e = base.var(0);
    let base = base.quotient(&[&e * &e]).unwrap();
    let w = WittRing::new(WittPolynomialTable::build(4).unwrap(), base);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let a = w.random(&mut rng, 10).unwrap();
        let b = w.random(&mut rng, 10).unwrap();
        let s = w.ghost(&w.add(&a, &b).unwrap()).unwrap();
        let p = w.ghost(&w.mul(&a, &b).unwrap()).unwrap();
        for (k, (ga, gb)) in w.ghost(&a).unwrap().iter().zip(&w.ghost(&b).unwrap()).enumerate() {
            assert!(w.base().equal(&s[k], &w.base().add(ga, gb).unwrap()).unwrap());
            assert!(w.base().equal(&p[k], &w.base().mul(ga, gb).unwrap()).unwrap());
        }
        assert_eq!(w.add(&a, &w.neg(&a).unwrap()).unwrap(), w.zero());
    }
}

#[test]
fn mismatched_vectors() {
    let w = over_integers(2);
    let v = over_integers(4).zero();
    assert!(w.add(&w.zero(), &v).is_err());
    assert!(w.vector(vec![]).is_err());
}

#[test]
fn descent_on_dual_numbers_mod_two() {
    let b = RingPresentation::new(vec!["e".into()], vec![]).unwrap();
    let e = b.var(0);
    let b = b.quotient(&[&e * &e, e.scale(&BigInt::from(2))]).unwrap();
    let t = WittDescent::new(b.clone(), vec![e.clone()], WittPolynomialTable::build(2).unwrap()).unwrap();
    let one_one = t.lower().from_integers(&[1, 1]).unwrap();
    assert!(b.equal(&t.apply(&one_one).unwrap(), &b.constant(3)).unwrap());
    let lifted = t.apply_lift(&[&b.constant(1) + &e, b.constant(1)]).unwrap();
    assert!(b.equal(&lifted, &b.constant(3)).unwrap());
    assert!(t.apply(&t.lower().zero()).unwrap().is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let u = t.lower().random(&mut rng, 10).unwrap();
        let v = t.lower().random(&mut rng, 10).unwrap();
        assert!(t.lift_independent(&u, &mut rng, 4).unwrap());
        let (tu, tv) = (t.apply(&u).unwrap(), t.apply(&v).unwrap());
        let sum = t.apply(&t.lower().add(&u, &v).unwrap()).unwrap();
        let prod = t.apply(&t.lower().mul(&u, &v).unwrap()).unwrap();
        assert!(b.equal(&sum, &b.add(&tu, &tv).unwrap()).unwrap());
        assert!(b.equal(&prod, &b.mul(&tu, &tv).unwrap()).unwrap());
    }
}

#[test]
fn descent_factors_the_w_map() {
    let b = RingPresentation::integers_mod(9);
    let table = WittPolynomialTable::build(3).unwrap();
    let upper = WittRing::new(table.clone(), b.clone());
    let t = WittDescent::new(b.clone(), vec![b.constant(3)], table).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = upper.random(&mut rng, 10).unwrap();
        let r = t.reduce(x.components()).unwrap();
        assert!(b.equal(&t.apply(&r).unwrap(), &upper.w_map(&x).unwrap()).unwrap());
    }
}

#[test]
fn descent_hypotheses() {
    let b = RingPresentation::integers_mod(8);
    let table = WittPolynomialTable::build(2).unwrap();
    let err = WittDescent::new(b.clone(), vec![b.constant(2)], table.clone());
    assert!(matches!(err, Err(Error::HypothesisViolation(_))));
    let b = RingPresentation::integers_mod(9);
    let err = WittDescent::new(b.clone(), vec![b.constant(3)], table);
    assert!(matches!(err, Err(Error::HypothesisViolation(_))));
}

/// Ghost components computed directly with integers.
fn ghost_oracle(divs: &[u64], a: &[BigInt]) -> Vec<BigInt> {
    divs.iter()
        .map(|&j| {
            divs.iter()
                .enumerate()
                .filter(|(_, &i)| j % i == 0)
                .map(|(q, &i)| BigInt::from(i) * a[q].pow((j / i) as u32))
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integer_arithmetic_matches_ghost_oracle(
        d in prop::sample::select(vec![2u64, 3, 4, 6]),
        a in prop::collection::vec(-10i64..=10, 4),
        b in prop::collection::vec(-10i64..=10, 4),
    ) {
        let w = over_integers(d);
        let k = w.table().divisors().len();
        let (va, vb) = (w.from_integers(&a[..k]).unwrap(), w.from_integers(&b[..k]).unwrap());
        let ga = ghost_oracle(w.table().divisors(), &a[..k].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let gb = ghost_oracle(w.table().divisors(), &b[..k].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let value = |v: &WittVector| v.components().iter().map(|c| c.as_constant().unwrap_or_default()).collect::<Vec<_>>();
        let s = ghost_oracle(w.table().divisors(), &value(&w.add(&va, &vb).unwrap()));
        let p = ghost_oracle(w.table().divisors(), &value(&w.mul(&va, &vb).unwrap()));
        let n = ghost_oracle(w.table().divisors(), &value(&w.neg(&va).unwrap()));
        for q in 0..k {
            prop_assert_eq!(&s[q], &(&ga[q] + &gb[q]));
            prop_assert_eq!(&p[q], &(&ga[q] * &gb[q]));
            prop_assert_eq!(&n[q], &-&ga[q]);
        }
    }
}

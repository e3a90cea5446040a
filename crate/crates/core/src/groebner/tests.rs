use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::poly::Context;

fn ctx(n: usize) -> Context {
    Context::grevlex(n)
}

fn x(c: Context, i: usize) -> Polynomial {
    Polynomial::var(c, i)
}

fn k(c: Context, v: i64) -> Polynomial {
    Polynomial::constant(c, v)
}

fn ideal(c: Context, gens: Vec<Polynomial>) -> IdealPresentation {
    IdealPresentation::integers(c, gens).unwrap()
}

#[test]
fn bezout_in_basis() {
    let c = ctx(1);
    let gb = ideal(c, vec![x(c, 0).scale(&2.into()), x(c, 0).scale(&3.into())]).basis().unwrap();
    assert_eq!(gb.elements(), &[x(c, 0)]);
}

#[test]
fn single_generator_over_q() {
    let c = ctx(1);
    let f = &x(c, 0).pow(2) - &x(c, 0);
    let gb = groebner_basis(core::slice::from_ref(&f), c.order, &Domain::Rationals, Limits::default()).unwrap();
    assert_eq!(gb.elements(), &[f]);
}

#[test]
fn normal_forms() {
    let c = ctx(1);
    let xs = x(c, 0);
    let gb = ideal(c, vec![xs.clone()]).basis().unwrap();
    assert!(gb.normal_form(&xs.pow(2)).is_zero());
    assert_eq!(gb.normal_form(&(&xs.scale(&2.into()) + &k(c, 1))), k(c, 1));
    let gb = ideal(c, vec![xs.scale(&2.into())]).basis().unwrap();
    assert_eq!(gb.normal_form(&xs.scale(&3.into())), xs);
    // x itself is no combination a*2x with |a| small
    for a in -20i64..=20 {
        assert_ne!(xs.scale(&(2 * a).into()), xs);
    }
}

#[test]
fn membership_examples() {
    let c = ctx(1);
    let xs = x(c, 0);
    assert!(ideal(c, vec![xs.clone()]).member(&xs.pow(2)).unwrap());
    assert!(!ideal(c, vec![k(c, 2), xs.clone()]).member(&k(c, 1)).unwrap());
    assert!(ideal(c, vec![xs.scale(&2.into()), xs.scale(&3.into())]).member(&xs).unwrap());
}

#[test]
fn radical_examples() {
    let c = ctx(1);
    let xs = x(c, 0);
    assert!(ideal(c, vec![xs.pow(2)]).radical_member(&xs).unwrap());
    let idem = ideal(c, vec![&xs.pow(2) - &xs]);
    assert!(!idem.radical_member(&xs).unwrap());
    let gb = idem.basis().unwrap();
    for n in 1..12 {
        assert_eq!(gb.normal_form(&xs.pow(n)), xs);
    }
    assert!(ideal(c, vec![k(c, 4)]).radical_member(&k(c, 2)).unwrap());
}

#[test]
fn intersection_of_coordinate_ideals() {
    let c = ctx(2);
    let (a, b) = (x(c, 0), x(c, 1));
    let i = ideal(c, vec![a.clone()]);
    let j = ideal(c, vec![b.clone()]);
    let m = i.intersect(&j).unwrap();
    let xy = ideal(c, vec![&a * &b]);
    assert!(m.same_ideal(&xy).unwrap());
    for g in m.generators() {
        assert!(i.member(g).unwrap() && j.member(g).unwrap());
    }
    let samples = [&a * &b, &(&a * &b) * &(&a + &k(c, 3)), (&a * &b).pow(2).scale(&5.into())];
    for s in &samples {
        assert!(m.member(s).unwrap());
    }
    assert!(!m.member(&a).unwrap());
}

#[test]
fn quotients_and_sums() {
    let c = ctx(1);
    let xs = x(c, 0);
    let q = ideal(c, vec![xs.pow(2)]).quotient(&ideal(c, vec![xs.clone()])).unwrap();
    assert!(q.same_ideal(&ideal(c, vec![xs.clone()])).unwrap());
    let s = ideal(c, vec![&xs - &k(c, 1)]).sum(&ideal(c, vec![&xs + &k(c, 1)])).unwrap();
    assert!(s.member(&k(c, 2)).unwrap());
    assert!(!s.member(&k(c, 1)).unwrap());
    let sat = ideal(c, vec![xs.pow(3), &xs.pow(2) * &(&xs - &k(c, 1))]).saturate(&ideal(c, vec![xs.clone()])).unwrap();
    assert!(sat.is_unit().unwrap());
    let sat = ideal(c, vec![&xs.pow(2) * &(&xs - &k(c, 1))]).saturate_element(&xs).unwrap();
    assert!(sat.same_ideal(&ideal(c, vec![&xs - &k(c, 1)])).unwrap());
}

#[test]
fn elimination() {
    // variables x, y, t
    let c = ctx(3);
    let (a, b, t) = (x(c, 0), x(c, 1), x(c, 2));
    let i = ideal(c, vec![&a - &t, &b - &t.pow(2)]);
    let e = i.eliminate(&[0, 1]).unwrap();
    let target = &b - &a.pow(2);
    assert!(e.same_ideal(&ideal(c, vec![target.clone()])).unwrap());
    // substitution oracle x -> t, y -> t^2 kills y - x^2
    let img = target.compose(&[t.clone(), t.pow(2), t.clone()], c).unwrap();
    assert!(img.is_zero());

    let c2 = ctx(2);
    let e = ideal(c2, vec![x(c2, 0)]).eliminate(&[1]).unwrap();
    assert!(e.is_zero());

    let (a, b) = (x(c2, 0), x(c2, 1));
    let i = ideal(c2, vec![a.scale(&2.into()), b.scale(&2.into()), &a - &b]);
    let e = i.eliminate(&[0]).unwrap();
    let two_x = a.scale(&2.into());
    assert!(e.same_ideal(&ideal(c2, vec![two_x.clone()])).unwrap());
    assert!(i.member(&two_x).unwrap());
    assert!(!i.member(&a).unwrap());
}

#[test]
fn contraction() {
    let c = ctx(1);
    let xs = x(c, 0);
    assert_eq!(ideal(c, vec![k(c, 6), k(c, 4)]).contract_integers().unwrap(), BigInt::from(2));
    assert_eq!(ideal(c, vec![xs.clone()]).contract_integers().unwrap(), BigInt::from(0));
    assert_eq!(ideal(c, vec![xs.clone(), k(c, 3)]).contract_integers().unwrap(), BigInt::from(3));
    let i = ideal(c, vec![xs.scale(&2.into()) - k(c, 1), xs.scale(&3.into())]);
    assert_eq!(i.contract_integers().unwrap(), BigInt::from(3));
}

#[test]
fn dimensions() {
    let c = ctx(1);
    let f = &x(c, 0).pow(2) + &k(c, 1);
    let i = IdealPresentation::new(c, vec![f], Domain::Rationals).unwrap();
    assert_eq!(i.dimension_over_field().unwrap(), 0);
    let c2 = ctx(2);
    assert_eq!(IdealPresentation::zero(c2, Domain::prime_field(5)).dimension_over_field().unwrap(), 2);
    let i = IdealPresentation::new(c2, vec![&x(c2, 0) * &x(c2, 1)], Domain::Rationals).unwrap();
    assert_eq!(i.dimension_over_field().unwrap(), 1);
    assert_eq!(IdealPresentation::unit(c2, Domain::Rationals).dimension_over_field().unwrap(), -1);
}

#[test]
fn prime_field_basis_is_monic() {
    let c = ctx(2);
    let (a, b) = (x(c, 0), x(c, 1));
    let gens = vec![&a.pow(2).scale(&3.into()) + &b, &(&a * &b).scale(&2.into()) - &k(c, 1)];
    let gb = groebner_basis(&gens, c.order, &Domain::prime_field(7), Limits::default()).unwrap();
    for g in gb.elements() {
        assert_eq!(g.lc(), &BigInt::from(1));
    }
}

#[test]
fn resource_cap_reported() {
    let c = ctx(3);
    let (a, b, d) = (x(c, 0), x(c, 1), x(c, 2));
    let gens = vec![&a.pow(3) - &(&b * &d), &b.pow(3) - &(&a * &d).scale(&2.into()), &d.pow(3) - &(&a * &b)];
    let err = groebner_basis(&gens, c.order, &Domain::Integers, Limits { max_basis: 4, max_steps: 1 });
    assert!(matches!(err, Err(Error::ResourceCap(_))));
}

fn arb_poly(c: Context) -> impl Strategy<Value = Polynomial> {
    let n = c.nvars;
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..=4), 1..4).prop_map(move |terms| {
        Polynomial::from_terms(c, terms.into_iter().map(|(e, k)| (Monomial::from_exponents(e), BigInt::from(k))))
    })
}

/// All points of `F_p^n`.
fn points(p: i64, n: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |a| {
                    let mut w = v.clone();
                    w.push(BigInt::from(a));
                    w
                })
            })
            .collect();
    }
    out
}

fn vanishes_mod(f: &Polynomial, pt: &[BigInt], p: i64) -> bool {
    (f.eval_integers(pt) % BigInt::from(p)) == BigInt::from(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn combinations_are_members(
        f in arb_poly(ctx(2)), g in arb_poly(ctx(2)), a in arb_poly(ctx(2)), b in arb_poly(ctx(2))
    ) {
        let c = ctx(2);
        let i = ideal(c, vec![f.clone(), g.clone()]);
        let h = &(&a * &f) + &(&b * &g);
        prop_assert!(i.member(&h).unwrap());
        let gb = i.basis().unwrap();
        for e in gb.elements() {
            prop_assert!(e.lc() > &BigInt::from(0));
        }
    }

    #[test]
    fn members_vanish_on_common_zeros(f in arb_poly(ctx(2)), g in arb_poly(ctx(2)), h in arb_poly(ctx(2))) {
        let c = ctx(2);
        let i = ideal(c, vec![f.clone(), g.clone()]);
        let member = i.member(&h).unwrap();
        let unit = i.is_unit().unwrap();
        for p in [2i64, 3] {
            for pt in points(p, 2) {
                if vanishes_mod(&f, &pt, p) && vanishes_mod(&g, &pt, p) {
                    prop_assert!(!unit);
                    if member {
                        prop_assert!(vanishes_mod(&h, &pt, p));
                    }
                }
            }
        }
    }

    #[test]
    fn order_does_not_change_membership(f in arb_poly(ctx(2)), g in arb_poly(ctx(2)), h in arb_poly(ctx(2))) {
        let c = ctx(2);
        let i = ideal(c, vec![f, g]);
        let lex = i.with_order(MonomialOrder::Lex);
        prop_assert_eq!(i.member(&h).unwrap(), lex.member(&h.with_order(MonomialOrder::Lex)).unwrap());
        prop_assert!(i.same_ideal(&i.reduced().unwrap()).unwrap());
    }

    #[test]
    fn normal_form_is_congruent(f in arb_poly(ctx(2)), g in arb_poly(ctx(2)), h in arb_poly(ctx(2))) {
        let c = ctx(2);
        let i = ideal(c, vec![f, g]);
        let gb = i.basis().unwrap();
        let r = gb.normal_form(&h);
        prop_assert!(i.member(&(&h - &r)).unwrap());
        prop_assert_eq!(gb.normal_form(&r), r);
    }

    #[test]
    fn intersection_is_contained_in_both(f in arb_poly(ctx(2)), g in arb_poly(ctx(2))) {
        let c = ctx(2);
        let i = ideal(c, vec![f.clone()]);
        let j = ideal(c, vec![g.clone()]);
        let m = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&m).unwrap() && j.contains_ideal(&m).unwrap());
        prop_assert!(m.member(&(&f * &g)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_bases_contain_combinations(
        f in arb_poly(ctx(2)), g in arb_poly(ctx(2)), a in arb_poly(ctx(2)), b in arb_poly(ctx(2))
    ) {
        let c = ctx(2);
        let h = &(&a * &f) + &(&b * &g);
        for domain in [Domain::Rationals, Domain::prime_field(5)] {
            let i = IdealPresentation::new(c, vec![f.clone(), g.clone()], domain.clone()).unwrap();
            prop_assert!(i.member(&h).unwrap());
            let gb = i.basis().unwrap();
            let r = gb.normal_form(&h.scale(&3.into()));
            prop_assert!(r.is_zero());
            // every element reduces the others to themselves in a reduced basis
            for e in gb.elements() {
                let others: Vec<Polynomial> = gb.elements().iter().filter(|o| *o != e).cloned().collect();
                for o in &others {
                    prop_assert!(!o.lm().divides(e.lm()));
                }
            }
            // field membership over Z-image implies membership over the field
            let zi = ideal(c, vec![f.clone(), g.clone()]);
            if zi.member(&a).unwrap() {
                prop_assert!(i.member(&a).unwrap());
            }
        }
    }
}

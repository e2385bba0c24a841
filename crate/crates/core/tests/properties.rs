//! Randomized algebraic properties of the polynomial ring, matrix algebra,
//! and module division, cross-checked against brute-force oracles where one
//! exists.

use pauli_modules::code::{apply_elementary, CodeDef, Move, SymplecticTransform};
use pauli_modules::field::Field;
use pauli_modules::groebner::{
    bounded_syzygy_oracle, buchberger, divide, syzygy_basis, GroebnerConfig, MVec, Order,
};
use pauli_modules::matrix::PolyMatrix;
use pauli_modules::poly::{parse_poly, Exps, LaurentPoly};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(5).unwrap()),
    ]
}

fn poly_strategy(field: Field, dim: usize, span: i32) -> impl Strategy<Value = LaurentPoly> {
    let p = field.order();
    prop::collection::vec(
        (
            prop::collection::vec(-span..=span, dim),
            1..p,
        ),
        0..5,
    )
    .prop_map(move |terms| {
        let terms: Vec<(Exps, u64)> = terms;
        LaurentPoly::from_terms(&field, dim, &terms)
    })
}

fn ring_triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
    field_strategy().prop_flat_map(|f| {
        (
            poly_strategy(f.clone(), 2, 2),
            poly_strategy(f.clone(), 2, 2),
            poly_strategy(f, 2, 2),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in ring_triple()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn antipode_is_an_involutive_ring_map((a, b, _) in ring_triple()) {
        prop_assert_eq!(a.antipode().antipode(), a.clone());
        prop_assert_eq!(a.mul(&b).antipode(), a.antipode().mul(&b.antipode()));
        prop_assert_eq!(a.add(&b).antipode(), a.antipode().add(&b.antipode()));
    }

    #[test]
    fn parse_format_round_trip((a, _, _) in ring_triple()) {
        let s = a.to_string();
        let back = parse_poly(&s, &a.field, 2).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dagger_reverses_products(
        (f, rows) in field_strategy().prop_flat_map(|f| {
            let fs = f.clone();
            (Just(f), prop::collection::vec(poly_strategy(fs, 2, 1), 12))
        })
    ) {
        let a = PolyMatrix::from_rows(
            &f, 2,
            rows[..6].chunks(3).map(|r| r.to_vec()).collect(),
        ).unwrap();
        let b = PolyMatrix::from_rows(
            &f, 2,
            rows[6..].chunks(2).map(|r| r.to_vec()).collect(),
        ).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.dagger(), b.dagger().mul(&a.dagger()).unwrap());
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn division_certificate(
        (_f, gens, v) in field_strategy().prop_flat_map(|f| {
            let fs = f.clone();
            let fv = f.clone();
            (
                Just(f),
                prop::collection::vec(poly_strategy(fs, 2, 0), 2..4),
                poly_strategy(fv, 2, 2),
            )
        })
    ) {
        // divisor leading terms must exist; drop zero generators
        let gens: Vec<MVec> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| MVec::from_comps(vec![g]))
            .collect();
        prop_assume!(!gens.is_empty());
        let order = Order::default();
        let target = MVec::from_comps(vec![v]);
        let (quo, rem) = divide(&target, &gens, &order);
        // v = sum quo_i g_i + rem
        let mut acc = rem.clone();
        for (q, g) in quo.iter().zip(&gens) {
            acc = acc.add(&g.mul_poly(q));
        }
        prop_assert_eq!(acc, target);
        // remainder is fully reduced: no term divisible by any leading term
        if !rem.is_zero() {
            for g in &gens {
                let (gc, ge, _) = g.leading_term(&order).unwrap();
                for (comp, poly) in rem.comps.iter().enumerate() {
                    if comp != gc {
                        continue;
                    }
                    for (e, _) in poly.iter_terms() {
                        let divisible = e.iter().zip(&ge).all(|(a, b)| a >= b);
                        prop_assert!(!divisible);
                    }
                }
            }
        }
    }

    #[test]
    fn syzygy_basis_is_complete(
        (_f, gens) in field_strategy().prop_flat_map(|f| {
            let fs = f.clone();
            (Just(f), prop::collection::vec(poly_strategy(fs, 2, 0), 2..4))
        })
    ) {
        let gens: Vec<MVec> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| MVec::from_comps(vec![g]))
            .collect();
        prop_assume!(gens.len() >= 2);
        let cfg = GroebnerConfig::default();
        let syz = syzygy_basis(&gens, 1, &cfg).unwrap();
        let field = gens[0].comps[0].field.clone();
        // every basis element is a genuine relation
        for s in &syz {
            let mut acc = MVec::zero(&field, 2, 1);
            for (a, g) in s.comps.iter().zip(&gens) {
                acc = acc.add(&g.mul_poly(a));
            }
            prop_assert!(acc.is_zero());
        }
        // and the basis spans all low-degree relations found by brute force
        let oracle = bounded_syzygy_oracle(&gens, 1, 2);
        if oracle.is_empty() {
            return Ok(());
        }
        prop_assume!(!syz.is_empty());
        let gb = buchberger(&syz, gens.len(), Order::default(), &cfg).unwrap();
        for w in &oracle {
            prop_assert!(gb.contains(w));
        }
    }

    #[test]
    fn random_move_sequences_stay_symplectic(
        seed in prop::collection::vec(0usize..7, 1..12),
        polys in prop::collection::vec(prop::collection::vec(-1i32..=1, 2), 12),
    ) {
        let f = Field::prime(2).unwrap();
        let mut code = CodeDef::new(
            "seed",
            2,
            2,
            f.clone(),
            PolyMatrix::from_rows(
                &f,
                2,
                vec![
                    vec![parse_poly("1+x", &f, 2).unwrap(), LaurentPoly::zero(&f, 2)],
                    vec![LaurentPoly::zero(&f, 2), LaurentPoly::zero(&f, 2)],
                    vec![LaurentPoly::zero(&f, 2), LaurentPoly::zero(&f, 2)],
                    vec![LaurentPoly::zero(&f, 2), parse_poly("1+y", &f, 2).unwrap()],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let mut t = SymplecticTransform::identity(&f, 2, 2);
        for (k, &kind) in seed.iter().enumerate() {
            let e = &polys[k % polys.len()];
            let mono = LaurentPoly::monomial(&f, e.clone(), 1);
            let sym = mono.add(&mono.antipode());
            let mv = match kind {
                0 => Move::Hadamard { qubit: k % 2 },
                1 => Move::CPhase { qubit: k % 2, f: sym },
                2 => Move::CPhaseX { qubit: k % 2, f: sym },
                3 => Move::Cnot { i: k % 2, j: 1 - k % 2, a: mono },
                4 => Move::CnotHadamard { i: k % 2, j: 1 - k % 2, a: mono },
                5 => Move::QubitSwap { i: 0, j: 1 },
                _ => Move::ColAdd { i: k % 2, j: 1 - k % 2, a: mono },
            };
            // a zero phase polynomial is fine; just apply
            apply_elementary(&mut code, &mut t, &mv).unwrap();
            prop_assert!(code.check_commuting().is_ok());
        }
        prop_assert!(t.is_symplectic());
    }
}

use crep_core::algebra::{ParamPoint, QField, Quad, RatFunc};
use crep_core::constraints::{reference_constraints, Echelon};
use crep_core::diffform::{Axis, DiffForm, DiffMonomial, UPower};
use crep_core::positivity::{phi_oracle, phi_table, pick_c1, quad_psd, s_values, IntervalSet};
use crep_core::reduction::reduction;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = QField> {
    (-30i64..30, 1i64..12).prop_map(|(a, b)| QField::rat(a, b))
}

fn qfield() -> impl Strategy<Value = QField> {
    (rat(), rat()).prop_map(|(a, b)| a + b * QField::sqrt17())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    prop::sample::select(vec![
        "n*p - mu",
        "(p-1)^2*c1 + 2*n",
        "mu/(9*p-4)",
        "(n+1)/(p^2+1)",
        "3",
        "c1*mu - p/n",
        "-2*n/(p-1)^2",
    ])
    .prop_map(|s| RatFunc::parse(s).unwrap())
}

fn monomial() -> impl Strategy<Value = DiffMonomial> {
    (0i32..3, -2i32..3, 0u8..2, 0u8..3, 1u32..3, 0u8..2, 0u8..2).prop_map(|(cp, k, a1, a2, e, b1, b2)| {
        DiffMonomial::new(UPower::new(cp, k), &[(a1, a2, e), (b1, b2, 1)]).unwrap()
    })
}

fn form() -> impl Strategy<Value = DiffForm> {
    prop::collection::vec((monomial(), ratfunc()), 1..4).prop_map(DiffForm::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qfield_is_a_field(a in qfield(), b in qfield(), c in qfield()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.to_string().parse::<QField>().unwrap(), a);
    }

    #[test]
    fn qfield_order_matches_floats(a in qfield(), b in qfield()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a < b, x < y);
        }
    }

    #[test]
    fn exact_square_roots(a in qfield()) {
        let r = (a.clone() * a.clone()).sqrt_exact().unwrap();
        prop_assert!(!r.is_negative());
        prop_assert!(r == a || r == -a);
    }

    #[test]
    fn simplest_rational_is_inside(a in qfield(), d in qfield()) {
        prop_assume!(!d.is_zero());
        let (lo, hi) = if d.is_positive() { (a.clone(), a.clone() + d) } else { (a.clone() + d, a.clone()) };
        let r = QField::from_base(QField::simplest_rational_between(&lo, &hi));
        prop_assert!(lo < r && r < hi);
    }

    #[test]
    fn ratfunc_text_round_trip(f in ratfunc(), g in ratfunc()) {
        let h = &f * &g + f.clone();
        prop_assert_eq!(RatFunc::parse(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn ratfunc_division_cancels(f in ratfunc(), g in ratfunc()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(&(&f * &g) / &g, f);
    }

    #[test]
    fn leibniz_rule(f in form(), g in form(), along_a in any::<bool>()) {
        let ax = if along_a { Axis::A } else { Axis::B };
        let lhs = f.mul(&g).differentiate(ax).unwrap();
        let rhs = &f.differentiate(ax).unwrap().mul(&g) + &f.mul(&g.differentiate(ax).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mirror_swaps_axes(f in form()) {
        prop_assert_eq!(f.mirror().mirror(), f.clone());
        prop_assert_eq!(f.differentiate(Axis::A).unwrap().mirror(), f.mirror().differentiate(Axis::B).unwrap());
    }

    #[test]
    fn span_reduction_ignores_constraint_combinations(
        picks in prop::collection::vec((0usize..28, ratfunc()), 1..5),
        idx in 0usize..28,
        c in ratfunc(),
    ) {
        let rs = reference_constraints();
        let forms: Vec<DiffForm> = rs.iter().map(|r| r.form.clone()).collect();
        let ech = Echelon::new(&forms);
        let mut comb = DiffForm::zero();
        for (i, k) in &picks {
            comb = &comb + &forms[*i].scale(k);
        }
        prop_assert!(ech.reduce(&comb).0.is_zero());
        let extra = DiffForm::monomial(DiffMonomial::new(UPower::int(2), &[(1, 1, 2)]).unwrap(), c);
        let target = &extra + &forms[idx].scale(&RatFunc::one());
        prop_assert_eq!(ech.reduce(&(&target + &comb)).0, ech.reduce(&target).0);
    }

    #[test]
    fn quadratic_sets_match_signs(r1 in rat(), r2 in rat(), lead in rat(), x in rat()) {
        prop_assume!(!lead.is_zero());
        let b = -(lead.clone() * (r1.clone() + r2.clone()));
        let k = lead.clone() * r1.clone() * r2.clone();
        let set = IntervalSet::quadratic_nonneg(&lead, &b, &k).unwrap();
        let v = lead.clone() * x.clone() * x.clone() + b * x.clone() + k;
        prop_assert_eq!(set.contains(&x), !v.is_negative());
    }

    #[test]
    fn oracle_witnesses_are_psd(n in 1u32..6, p in (1i64..40, 1i64..10), mu in (-16i64..48, 1i64..8)) {
        let pv = QField::rat(p.0, p.1);
        prop_assume!(pv != QField::int(1));
        let x = ParamPoint::new(n, pv, QField::rat(mu.0, mu.1)).unwrap();
        let v = phi_oracle(&x).unwrap();
        if let Some(c1) = pick_c1(&v.c1_set) {
            prop_assert!(!c1.is_positive());
            let y = x.with_c1(c1);
            let s = s_values(&y).unwrap();
            prop_assert!(!s.s1.is_negative() && !s.s2.is_negative() && !s.s3.is_negative());
            let [a1, a2, a3] = reduction().unwrap().quad.eval(&y).unwrap();
            prop_assert!(quad_psd(&a1, &a2, &a3));
        } else {
            prop_assert!(!v.feasible);
        }
    }

    #[test]
    fn table_agrees_with_oracle_off_grid(n in 1u32..8, p in (1i64..80, 1i64..23), mu in (-40i64..90, 1i64..13)) {
        let pv = QField::rat(p.0, p.1);
        prop_assume!(pv != QField::int(1));
        let x = ParamPoint::new(n, pv, QField::rat(mu.0, mu.1)).unwrap();
        prop_assert_eq!(phi_table(&x).unwrap().holds, phi_oracle(&x).unwrap().feasible, "at {}", x);
    }
}

#[test]
fn quad_inverse_of_zero_is_none() {
    assert!(Quad::<crep_core::algebra::Rat>::zero().inv().is_none());
}

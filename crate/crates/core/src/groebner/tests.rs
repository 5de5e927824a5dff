use super::*;
use proptest::prelude::*;

fn xyz() -> VarTable {
    VarTable::of(&["x", "y", "z"])
}

#[test]
fn already_a_basis() {
    let v = xyz();
    let gb = buchberger(&v, &[v.poly("x^2"), v.poly("x*y")], &TermOrder::DegRevLex).unwrap();
    let mut got: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
    got.sort();
    assert_eq!(got, ["x*y", "x^2"]);
}

#[test]
fn linear_lex() {
    let v = xyz();
    let gb = buchberger(&v, &[v.poly("x - y"), v.poly("y - z")], &TermOrder::Lex).unwrap();
    assert_eq!(gb.generators(), &[v.poly("y - z"), v.poly("x - z")]);
}

#[test]
fn normal_forms() {
    let v = xyz();
    let gens = [v.poly("x^2 - y"), v.poly("x*y - z")];
    let gb = buchberger(&v, &gens, &TermOrder::DegRevLex).unwrap();
    for g in &gens {
        assert!(gb.normal_form(g).unwrap().is_zero());
    }
    assert!(!gb.contains(&Polynomial::one(&v)).unwrap());
    assert!(gb.contains(&v.poly("y^2 - x*z")).unwrap());
    assert!(!gb.contains(&v.poly("y - z")).unwrap());
    let r = gb.normal_form(&v.poly("x^2 + 1/2")).unwrap();
    assert_eq!(r, v.poly("y + 1/2"));
}

#[test]
fn unit_ideal() {
    let v = xyz();
    let gb = buchberger(&v, &[v.poly("x*y - 1"), v.poly("x")], &TermOrder::DegRevLex).unwrap();
    assert!(gb.is_unit_ideal());
    assert_eq!(gb.generators(), &[Polynomial::one(&v)]);
}

#[test]
fn twisted_cubic() {
    let v = VarTable::of(&["a", "b", "c", "d"]);
    let gens = [v.poly("a*c - b^2"), v.poly("b*d - c^2"), v.poly("a*d - b*c")];
    let gb = buchberger(&v, &gens, &TermOrder::DegRevLex).unwrap();
    assert_eq!(gb.len(), 3);
    let lex = buchberger(&v, &gens, &TermOrder::Lex).unwrap();
    assert!(lex.contains(&v.poly("a*c^3 - b^3*d")).unwrap() || lex.len() > 3);
    for g in gb.generators() {
        assert!(lex.contains(g).unwrap());
    }
}

#[test]
fn saturation_examples() {
    let v = VarTable::of(&["v", "x"]);
    let sat = saturate_by_variable(&v, &[v.poly("v*x")], "v").unwrap();
    assert_eq!(sat, vec![v.poly("x")]);
    let sat = saturate_by_variable(&v, &[v.poly("x^2")], "v").unwrap();
    assert_eq!(sat, vec![v.poly("x^2")]);
    assert!(saturate_by_variable(&v, &[v.poly("x")], "w").is_err());
}

#[test]
fn elimination_examples() {
    let v = xyz();
    assert!(eliminate(&v, &[v.poly("x - y^2")], &["x"]).unwrap().is_empty());
    let e = eliminate(&v, &[v.poly("x - y^2"), v.poly("x - z^3")], &["x"]).unwrap();
    assert_eq!(e.len(), 1);
    assert!(e[0].same_up_to_scalar(&v.poly("y^2 - z^3")));
}

#[test]
fn step_cap_is_enforced() {
    let v = VarTable::of(&["a", "b", "c", "d"]);
    let gens = [v.poly("a*c - b^2"), v.poly("b*d - c^2"), v.poly("a*d - b*c")];
    let r = buchberger_with(&v, &gens, &TermOrder::Lex, Limits { step_cap: 1 });
    assert!(matches!(r, Err(Error::DeskScaleExceeded { .. })));
}

#[test]
fn vk4_combination_identity() {
    // x0x3 - x1x2 for k = 4 lies in the ideal of (I) and the guiding cases.
    let v = VarTable::of(&["x0", "x1", "x2", "x3", "x4", "a", "b", "c", "z"]);
    let gens = [
        v.poly("a*x0 + b*x1 + c*x2"),
        v.poly("a*x1 + b*x2 + c*x3"),
        v.poly("a*x2 + b*x3 + c*x4"),
        v.poly("x0*x2 - x1^2 - c^2*z"),
        v.poly("x1*x3 - x2^2 - a*c*z"),
        v.poly("x2*x4 - x3^2 - a^2*z"),
    ];
    let gb = buchberger(&v, &gens, &TermOrder::DegRevLex).unwrap();
    let combo = v.poly("c*(x0*x3 - x1*x2 + b*c*z)");
    assert!(gb.contains(&combo).unwrap());
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let v = xyz();
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..4), 1..4).prop_map(move |ts| {
        Polynomial::from_terms(
            &v,
            ts.into_iter().map(|((a, b, c), n)| (Monomial::from_exponents(vec![a, b, c]), crate::ring::rat(n))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_of_combinations(f in arb_poly(), g in arb_poly(), p in arb_poly(), q in arb_poly()) {
        let v = xyz();
        let gb = buchberger(&v, &[f.clone(), g.clone()], &TermOrder::DegRevLex).unwrap();
        prop_assert!(gb.contains(&(&(&p * &f) + &(&q * &g))).unwrap());
        // monotone under adding generators
        let bigger = buchberger(&v, &[f.clone(), g.clone(), p.clone()], &TermOrder::DegRevLex).unwrap();
        prop_assert!(bigger.contains_all(gb.generators()).unwrap());
    }

    #[test]
    fn normal_form_is_order_independent(f in arb_poly(), g in arb_poly(), p in arb_poly()) {
        let v = xyz();
        let a = buchberger(&v, &[f.clone(), g.clone()], &TermOrder::DegRevLex).unwrap();
        let b = buchberger(&v, &[g, f], &TermOrder::DegRevLex).unwrap();
        prop_assert!(a.same_ideal(&b));
        prop_assert_eq!(a.normal_form(&p).unwrap(), b.normal_form(&p).unwrap());
    }

    #[test]
    fn saturation_contains_and_is_idempotent(f in arb_poly(), g in arb_poly()) {
        let v = xyz();
        let gens = [f, g];
        let once = saturate_by_variable(&v, &gens, "z").unwrap();
        let gb1 = buchberger(&v, &once, &TermOrder::DegRevLex).unwrap();
        prop_assert!(gb1.contains_all(&gens).unwrap());
        let twice = saturate_by_variable(&v, &once, "z").unwrap();
        let gb2 = buchberger(&v, &twice, &TermOrder::DegRevLex).unwrap();
        prop_assert!(gb1.same_ideal(&gb2));
    }
}

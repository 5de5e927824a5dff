use super::*;
use proptest::prelude::*;

fn vt() -> VarTable {
    VarTable::of(&["x", "y", "z"])
}

#[test]
fn difference_of_squares() {
    let v = vt();
    let p = v.poly("(x+y)*(x-y)");
    assert_eq!(p, v.poly("x^2 - y^2"));
    assert_eq!(&p + &Polynomial::zero(&v), p);
}

#[test]
fn commutativity_cancels() {
    let v = VarTable::of(&["a", "b", "c", "x0", "x1", "x2", "z"]);
    let l = v.poly("a*x0 + b*x1 + c*x2");
    let z = v.var("z");
    assert!((&(&l * &z) - &(&z * &l)).is_zero());
}

#[test]
fn display_is_degrevlex() {
    let v = vt();
    assert_eq!(v.poly("z + x^2 - 3/2*x*y + 1").to_string(), "x^2 - 3/2*x*y + z + 1");
    assert_eq!(v.poly("y*z - x*z").to_string(), "-x*z + y*z");
    assert_eq!(Polynomial::zero(&v).to_string(), "0");
}

#[test]
fn degrevlex_breaks_ties_on_last_variable() {
    // x*z < y^2 in degrevlex with x > y > z.
    assert_eq!(degrevlex(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    assert_eq!(degrevlex(&[1, 1, 0], &[0, 2, 0]), Ordering::Greater);
    assert_eq!(degrevlex(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
}

#[test]
fn exact_division_examples() {
    let v = VarTable::of(&["x0", "x1", "x2", "x3", "B", "L", "M"]);
    let p = v.poly("(x0*x2)^2 - (B*M)^2");
    let q = v.poly("x0*x2 - B*M");
    assert_eq!(p.exact_divide(&q).unwrap(), v.poly("x0*x2 + B*M"));
    assert_eq!(p.exact_divide(&Polynomial::one(&v)).unwrap(), p);
    let p = v.poly("(x1*x3)^3 - (B*L*M)^3");
    let q = v.poly("x1*x3 - B*L*M");
    let r = p.exact_divide(&q).unwrap();
    assert_eq!(r, v.poly("(x1*x3)^2 + x1*x3*B*L*M + (B*L*M)^2"));
    assert_eq!(&r * &q, p);
}

#[test]
fn non_divisible_is_signalled() {
    let v = vt();
    assert_eq!(v.poly("x^2 + y").exact_divide(&v.poly("x + y")), Err(Error::NotDivisible));
    assert_eq!(v.poly("x").exact_divide(&Polynomial::zero(&v)), Err(Error::DivisionByZero));
}

#[test]
fn geometric_quotient() {
    let v = VarTable::of(&["x0", "x2", "B", "M"]);
    let p = v.poly("x0*x2");
    let q = v.poly("B*M");
    assert!(Polynomial::geom_quotient(&p, &q, 1).unwrap().is_one());
    assert_eq!(Polynomial::geom_quotient(&p, &q, 2).unwrap(), v.poly("x0*x2 + B*M"));
    for n in 1..6 {
        let g = Polynomial::geom_quotient(&p, &q, n).unwrap();
        assert_eq!(&(&p - &q) * &g, &p.pow(n) - &q.pow(n));
    }
}

#[test]
fn substitution_of_the_recurrence() {
    let src = VarTable::of(&["a", "b", "c", "z", "x0", "x1", "x2"]);
    let tgt = VarTable::of(&["x0", "x1", "x2", "y1", "A", "B", "L", "M"]);
    let s = Substitution::new(&src, &tgt).with("a", "L*M").with("b", "-y1").with("c", "A*B").with("z", "B*M");
    let img = src.poly("a*x0 + b*x1 + c*x2").substitute(&s).unwrap();
    assert_eq!(img, tgt.poly("L*M*x0 - y1*x1 + A*B*x2"));
    let id = Substitution::new(&src, &src);
    let p = src.poly("a*x0^2 - 3*z");
    assert_eq!(p.substitute(&id).unwrap(), p);
}

#[test]
fn substitution_requires_mapped_variables() {
    let src = VarTable::of(&["a", "w"]);
    let tgt = VarTable::of(&["a"]);
    let s = Substitution::new(&src, &tgt);
    assert_eq!(src.poly("a").substitute(&s).unwrap(), tgt.poly("a"));
    assert_eq!(src.poly("w").substitute(&s), Err(Error::UnmappedVariable("w".into())));
}

#[test]
fn derivatives() {
    let v = VarTable::of(&["u", "v", "y0", "y1", "y2"]);
    assert_eq!(v.poly("u^4 + v^4").differentiate_by("u").unwrap(), v.poly("4*u^3"));
    assert!(v.poly("7").differentiate_by("u").unwrap().is_zero());
    let f = v.poly("y0*u^2 + 2*y1*u*v + y2*v^2");
    assert_eq!(f.differentiate_by("u").unwrap(), v.poly("2*y0*u + 2*y1*v"));
}

#[test]
fn evaluation_at_typical_point() {
    let v = VarTable::of(&["x0", "x1", "x2", "x3", "a", "b", "c", "z"]);
    let pt = RationalPoint::from_pairs(&v, &[("x0", rat(1)), ("x3", rat(1)), ("b", rat(1)), ("z", rat(-1))]).unwrap();
    assert!(v.poly("x0*x3 - x1*x2 + b*z").evaluate(&pt).unwrap().is_zero());
    assert!(Polynomial::zero(&v).evaluate(&pt).unwrap().is_zero());
}

#[test]
fn parse_errors() {
    let v = vt();
    assert!(matches!(v.parse("x +"), Err(Error::Parse { .. })));
    assert_eq!(v.parse("w"), Err(Error::UnknownVariable("w".into())));
    assert!(matches!(v.parse("x / y"), Err(Error::Parse { .. })));
    assert_eq!(v.poly("x/2 + 1/3"), v.poly("3*x/6 + 2/6"));
}

#[test]
fn canonical_scalings() {
    let v = vt();
    let p = v.poly("-2/3*x*y + 4/9*z");
    assert_eq!(p.primitive(), v.poly("3*x*y - 2*z"));
    assert_eq!(p.monic(), v.poly("x*y - 2/3*z"));
    assert!(p.same_up_to_scalar(&v.poly("6*x*y - 4*z")));
}

#[test]
fn mismatched_tables_are_rejected() {
    let a = vt();
    let b = VarTable::of(&["x", "y"]);
    assert_eq!(a.var("x").try_add(&b.var("x")), Err(Error::VarTableMismatch));
    assert_eq!(b.var("x").embed(&a).unwrap(), a.var("x"));
}

#[test]
fn collect_by_key_variables() {
    let v = VarTable::of(&["u", "v", "a", "b"]);
    let p = v.poly("a*u^2 + b*u*v + 3*u^2");
    let cs = p.collect(&[0, 1]);
    assert_eq!(cs.len(), 2);
    assert_eq!(cs[0], (vec![2, 0], v.poly("a + 3")));
    assert_eq!(cs[1], (vec![1, 1], v.poly("b")));
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let v = vt();
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(move |ts| {
        Polynomial::from_terms(
            &v,
            ts.into_iter().map(|((a, b, c), n, d)| (Monomial::from_exponents(vec![a, b, c]), ratio(n, d))),
        )
    })
}

fn arb_point() -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((-4i64..5, 1i64..4), 3)
        .prop_map(|vs| RationalPoint::new(&vt(), vs.into_iter().map(|(n, d)| ratio(n, d)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&(&p + &q) - &q - &p).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in arb_poly(), q in arb_poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn geometric_quotient_identity(p in arb_poly(), q in arb_poly(), n in 1u32..6) {
        let g = Polynomial::geom_quotient(&p, &q, n).unwrap();
        prop_assert_eq!(&(&p - &q) * &g, &p.pow(n) - &q.pow(n));
    }

    #[test]
    fn substitution_is_a_homomorphism(p in arb_poly(), q in arb_poly(), a in arb_poly(), b in arb_poly()) {
        let v = vt();
        let s = Substitution::new(&v, &v).with_poly("x", a).with_poly("y", b);
        let lhs = (&p * &q).substitute(&s).unwrap();
        let rhs = &p.substitute(&s).unwrap() * &q.substitute(&s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_commutes_with_substitution(p in arb_poly(), a in arb_poly(), pt in arb_point()) {
        let v = vt();
        let s = Substitution::new(&v, &v).with_poly("z", a);
        let direct = p.substitute(&s).unwrap().evaluate(&pt).unwrap();
        let pulled = p.evaluate(&s.pull_point(&pt).unwrap()).unwrap();
        prop_assert_eq!(direct, pulled);
    }
}

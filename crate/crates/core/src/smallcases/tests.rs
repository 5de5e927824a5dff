use super::*;
use crate::groebner::{buchberger, saturate_by_variable, Limits, TermOrder};
use crate::matrix::quadruples;
use crate::polar::{wd_equations, WdParams, WdSpec};
use crate::ring::{rat, ratio, Rational};
use crate::sample::Sampler;
use num_traits::Zero;

fn all_vanish(sys: &crate::system::EquationSystem, pt: &crate::ring::RationalPoint) -> bool {
    sys.generators().iter().all(|g| g.poly.evaluate(pt).unwrap().is_zero())
}

#[test]
fn k1_displays() {
    let s = k1_equations(1, 1).unwrap();
    let v = k1_vars();
    assert_eq!(s.get("x1y0").unwrap(), &v.poly("x1*y0 - B - L*x0"));
    assert_eq!(s.get("x0y1").unwrap(), &v.poly("x0*y1 - A*x1 - M"));
    let s = k1_equations(2, 3).unwrap();
    assert_eq!(s.get("x1y0").unwrap(), &v.poly("x1*y0 - B - L*x0^3"));
    assert_eq!(s.get("x0y1").unwrap(), &v.poly("x0*y1 - A*x1^2 - M"));
    assert!(k1_equations(0, 1).is_err());
    for (d, e) in [(1, 1), (2, 3), (3, 1), (1, 3)] {
        let w = k1_weights(d, e).unwrap();
        for g in k1_equations(d, e).unwrap().generators() {
            assert!(w.is_homogeneous(&g.poly), "({d},{e}) {}", g.label);
        }
    }
}

#[test]
fn k2_section_contains_bottom_cross() {
    for d in 1..=4 {
        for e in 1..=3 {
            let sec = k2_section(d, e).unwrap();
            for g in k2_bottom_cross(d, e).unwrap().generators() {
                assert!(sec.generators().iter().any(|h| h.poly.same_up_to_sign(&g.poly)), "d={d} e={e} {}", g.label);
            }
        }
    }
    // e = 1 sets C to 1.
    let full = wd_equations(WdSpec::new(2).unwrap()).unwrap();
    let sv = crate::polar::wd_vars(WdSpec::section(2, 1).unwrap());
    let c1 = crate::ring::Substitution::new(full.vars(), &sv).with("C", "1");
    let one = k2_section(2, 1).unwrap();
    for g in full.generators() {
        assert_eq!(one.get(&g.label), Some(&c1.apply(&g.poly).unwrap()), "{}", g.label);
    }
    let v = crate::polar::wd_vars(WdSpec::section(2, 2).unwrap());
    let sec = k2_section(2, 2).unwrap();
    assert!(sec.contains_up_to_scalar(&v.poly("x1*y0 - A*B^2 - L*x0^2")));
}

#[test]
fn k2_points_annihilate_section() {
    let mut s = Sampler::new(11);
    for d in 1..=4 {
        for e in 1..=3 {
            let sec = k2_section(d, e).unwrap();
            for _ in 0..5 {
                let pt = k2_point(d, e, &mut s).unwrap();
                assert!(all_vanish(&sec, &pt), "d={d} e={e}");
            }
        }
    }
    // Inconsistent parameters are refused.
    let p = WdParams::from_ints([1, 1, 1, 1, 1, 1, 2]);
    assert!(crate::polar::wd_parametrize(WdSpec::section(2, 3).unwrap(), &p).is_err());
}

#[test]
fn crazy_shapes() {
    assert!(CrazySpec::new(1).is_err());
    let spec = CrazySpec::new(2).unwrap();
    let (a, b) = crazy_matrices(spec).unwrap();
    assert_eq!((a.size(), b.size()), (5, 6));
    let v = crazy_vars(spec);
    assert_eq!(b.upper(5, 6), &v.poly("-A*C"));
    let spec3 = CrazySpec::new(3).unwrap();
    let v3 = crazy_vars(spec3);
    // The divided difference of length 1 is 1.
    assert_eq!(m3d1_matrix(spec3).unwrap().upper(5, 6), &v3.poly("x3*A*L*C"));
}

#[test]
fn m3d1_is_wd_pullback() {
    for d in 2..=5 {
        let spec = CrazySpec::new(d).unwrap();
        let m = m3d1_matrix(spec).unwrap();
        let pulled = wd_pullback_matrix(spec, &m3d1_substitution(spec)).unwrap();
        assert!(m.differences(&pulled).is_empty(), "d={d}");
        let printed = wd_pullback_matrix(spec, &printed_m3d1_substitution(spec)).unwrap();
        assert!(!m.differences(&printed).is_empty(), "d={d}");
    }
}

#[test]
fn crazy_scan_matches_list() {
    for d in 2..=5 {
        let spec = CrazySpec::new(d).unwrap();
        let found = crazy_scan(spec).unwrap();
        let sets: Vec<[usize; 4]> = found.iter().map(|e| e.indices).collect();
        assert_eq!(sets, expected_exceptions(spec), "d={d}");
        assert!(found.iter().all(|e| e.exact_division));
        assert_eq!(sets.len(), d + 1);
    }
}

#[test]
fn crazy_examples_d2() {
    let spec = CrazySpec::new(2).unwrap();
    let v = crazy_vars(spec);
    let m = m1mc_matrix(spec).unwrap();
    let f = floated_matrix(spec).unwrap();
    let r = spec.region();
    let crazy = f.crazy_pfaffian4(&r, 1, 2, 3, 6).unwrap();
    assert_eq!(&crazy * &v.var("M"), m.pfaffian4(1, 2, 3, 6).unwrap());
    assert_eq!(f.crazy_pfaffian4(&r, 1, 2, 3, 4).unwrap(), m.pfaffian4(1, 2, 3, 4).unwrap());
    assert_eq!(quadruples(6).len(), 15);
}

#[test]
fn missing_equation_is_added_by_floating() {
    for d in 2..=4 {
        let spec = CrazySpec::new(d).unwrap();
        let v = crazy_vars(spec);
        let miss = missing_equation(spec).unwrap();
        let want = v.poly(&format!("x1*y0 + A*B^{}*C - x0*L", d - 1));
        assert!(miss.same_up_to_sign(&want), "d={d}: {miss}");
        let ordinary = m1mc_matrix(spec).unwrap().all_pfaffians4("ordinary");
        // At d = 2 the multiple x1^{d-2} Pf_{14.56} is the equation itself.
        assert_eq!(ordinary.find_up_to_scalar(&miss).is_some(), d == 2, "d={d}");
        assert!(ordinary.contains_up_to_scalar(&(&miss * &v.var("M"))));
        let all = crazy_equation_set(spec).unwrap();
        assert!(all.contains_up_to_scalar(&miss));
        assert!(ordinary.generators().iter().all(|g| all.contains_up_to_scalar(&g.poly)));
        assert!(all.len() > ordinary.len(), "d={d}");
    }
}

#[test]
fn crazy_unprojection_reports() {
    for d in 2..=5 {
        let spec = CrazySpec::new(d).unwrap();
        let r = crazy_unprojection(spec).unwrap();
        assert!(r.holds(), "d={d}: {r:?}");
        assert!(r.pfaffians_scanned > 0);
    }
    let spec = CrazySpec::new(3).unwrap();
    let v = crazy_vars(spec);
    assert_eq!(crazy_unprojection(spec).unwrap().pf_12_35, v.poly("x1^2 - x0*x3 + B*M*C*y0"));
    // The pentagram's bottom cross carries C^2.
    let p = x1y0_pentagram(spec).pfaffian4(1, 2, 3, 4).unwrap();
    assert_eq!(p, v.poly("x1*y0 - A*B^2*C^2 - L*x0"));
}

#[test]
fn de3_pentagrams_reproduce_displays() {
    for case in De3Case::ALL {
        for c in de3_pentagram_checks(case).unwrap() {
            assert!(c.holds(), "{case} {}: {c:?}", c.name);
            assert_eq!(c.others.len(), 2);
        }
    }
}

#[test]
fn de3_examples() {
    let v = de3_vars(De3Case::ThreeOneThreeOne);
    assert_eq!(v.len(), 12);
    let pg = &de3_pentagrams(De3Case::ThreeOneThreeOne)[0];
    let pfs = pg.matrix.all_pfaffians4("M1");
    for e in ["x0*y2 - x4*A - M*y1^2", "y0*y2 - y1^3 - A*L", "x4*y1 - y2*B - L*M", "x0*y1 - A*B - M*y0"] {
        assert!(pfs.generators().iter().any(|g| g.poly.same_up_to_sign(&v.poly(e))), "{e}");
    }
    let s = de3_case_equations(De3Case::ThreeOneThreeOne).unwrap();
    assert_eq!(s.len(), 14);
    assert_eq!(s.get("M2:x2").unwrap(), &v.poly("x2 - x0*x4 + y1*B*M"));
    assert_eq!(de3_case_equations(De3Case::OneThreeOneThree).unwrap().len(), 12);
    let s5 = de3_case_equations(De3Case::OneThreeOneThreeOne).unwrap();
    let v5 = de3_vars(De3Case::OneThreeOneThreeOne);
    assert!(s5.contains_up_to_scalar(&v5.poly("x4 - x0*x5 + y1^2*B*M")));
    assert_eq!(s5.len(), 6);
    assert_eq!("[3,1,3,1,3]".parse::<De3Case>().unwrap(), De3Case::OneThreeOneThreeOne);
    assert!("[2,2]".parse::<De3Case>().is_err());
}

#[test]
fn de3_points_satisfy_case_equations() {
    let mut s = Sampler::new(5);
    for case in De3Case::ALL {
        let sys = de3_case_equations(case).unwrap();
        let mut n = 0;
        while n < 20 {
            if let Ok(pt) = de3_point(case, &mut s) {
                assert!(all_vanish(&sys, &pt), "{case}");
                n += 1;
            }
        }
    }
}

#[test]
fn graph_13131_is_a6() {
    assert!(graph_13131_is_affine_space().unwrap());
    assert!(graph_13131_elimination_is_zero(Limits::default()).unwrap());
}

#[test]
fn long_equation_by_saturation_and_elimination() {
    let r = long_equation_report(Limits::default()).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn eight_equations_have_residual_component() {
    // The reduced model lies inside the eight, with a residual A^4 along
    // x0, x4, B, M where the long equation fails.
    let v = de3_vars(De3Case::OneThreeOneThree);
    let pt =
        crate::ring::RationalPoint::from_pairs(&v, &[("x0", rat(1)), ("x4", rat(1)), ("B", rat(2)), ("M", rat(3))])
            .unwrap();
    assert!(reduced_model_1313().iter().all(|p| p.evaluate(&pt).unwrap().is_zero()));
    assert!(!long_equation_1313().evaluate(&pt).unwrap().is_zero());
    let sat = saturate_by_variable(&v, &reduced_model_1313(), "y0").unwrap();
    let gb = buchberger(&v, &sat, &TermOrder::DegRevLex).unwrap();
    assert!(gb.contains(&long_equation_1313()).unwrap());
}

#[test]
fn key_variety_has_twenty_generators() {
    let w = key_variety_equations().unwrap();
    assert_eq!(w.len(), 20);
    let v = keyw_vars();
    assert_eq!(v.len(), 16);
    assert_eq!(w.get("s2v2").unwrap(), &v.poly("s2*v2 - u2*u3 + a4*a1*s3*s4^2*s1"));
    assert_eq!(w.get("s1v1").unwrap(), &v.poly("s1*v1 - u1*u2 + a3*a4*s2*s3^2*s4"));
    assert!(w.get("v4v1").is_some());
    // The displayed v2v4 is the shift of v1v3.
    let [l13, l24] = long_equations();
    assert_eq!(cyclic_shift(1).apply(&l13.1).unwrap(), l24.1);
    assert_eq!(cyclic_shift(4).apply(&l13.1).unwrap(), l13.1);
    // The v1 pentagram gives the triple and both CI equations.
    let pfs = v1_pentagram().all_pfaffians4("v1");
    for (_, p) in v1_triple().iter().chain(keyw_ci().iter()) {
        assert!(pfs.generators().iter().any(|g| g.poly.same_up_to_sign(p)), "{p}");
    }
}

#[test]
fn key_variety_worked_point() {
    let ones = [rat(1), rat(1), rat(1), rat(1)];
    let pt = key_variety_parametrize(&ones, &ones, &rat(2), &rat(3)).unwrap();
    let want = [rat(2), rat(3), ratio(11, 5), ratio(7, 5), rat(5), ratio(28, 5), ratio(52, 25), ratio(9, 5)];
    assert_eq!(uv_values(&pt), want);
    let w = key_variety_equations().unwrap();
    assert!(all_vanish(&w, &pt));
    let v1v3: Rational = pt.get("v1").unwrap() * pt.get("v3").unwrap();
    assert_eq!(v1v3, ratio(52, 5));
    // u1 = u2 under all-ones parameters is fixed by the shift.
    let sym = key_variety_parametrize(&ones, &ones, &rat(2), &rat(2)).unwrap();
    let shifted = cyclic_shift(1).pull_point(&sym).unwrap();
    assert_eq!(shifted, sym);
    assert!(key_variety_parametrize(&ones, &[rat(0), rat(1), rat(1), rat(1)], &rat(2), &rat(3)).is_err());
    assert!(key_variety_parametrize(&ones, &ones, &rat(1), &rat(1)).is_err());
}

#[test]
fn key_variety_random_points() {
    let mut s = Sampler::new(42);
    let w = key_variety_equations().unwrap();
    let mut n = 0;
    while n < 100 {
        let a = [0; 4].map(|_| s.nonzero_int(7));
        let sv = [0; 4].map(|_| s.nonzero_int(7));
        if let Ok(pt) = key_variety_parametrize(&a, &sv, &s.nonzero_int(7), &s.nonzero_int(7)) {
            assert!(all_vanish(&w, &pt));
            n += 1;
        }
    }
}

#[test]
fn key_variety_stress_with_zero_s() {
    let mut s = Sampler::new(3);
    let w = key_variety_equations().unwrap();
    let mut n = 0;
    while n < 30 {
        let a = [0; 4].map(|_| s.nonzero_int(7));
        let mut sv = [0; 4].map(|_| s.nonzero_int(7));
        sv[1 + n % 3] = Rational::zero();
        if let Ok(pt) = key_variety_degenerate_point(&a, &sv, &s.nonzero_int(7), &s.nonzero_int(7)) {
            let bad: Vec<&str> = w
                .generators()
                .iter()
                .filter(|g| !g.poly.evaluate(&pt).unwrap().is_zero())
                .map(|g| g.label.as_str())
                .collect();
            assert!(bad.is_empty(), "s{} = 0: {bad:?}", 2 + n % 3);
            n += 1;
        }
    }
}

#[test]
fn pullback_tables_are_total() {
    for case in De3Case::ALL {
        assert!(pullback_table(case).is_total(), "{case}");
    }
}

#[test]
fn de3_pullbacks_land_in_case_ideals() {
    for case in De3Case::ALL {
        let r = de3_pullback(case, 20, 7, Limits::default()).unwrap();
        assert!(r.holds(), "{case}: {r:?}");
        assert!(r.membership.is_some(), "{case}");
        assert_eq!(r.images.len(), 20);
    }
    let r = de3_pullback(De3Case::ThreeOneThreeOne, 1, 7, Limits::default()).unwrap();
    let v = de3_vars(De3Case::ThreeOneThreeOne);
    assert!(r.image("s1v1").unwrap().same_up_to_sign(&v.poly("x1 - x0*x2 + A*B^2*M")));
}

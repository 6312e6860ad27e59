use achow::arith::Symbol;
use achow::cycles::{check_admissible_curve, modulus_classify, surface_faces, Cycle, ParamCurve, ParamSurface};
use achow::regulator::regulator_cycle;
use achow::text::rf;
use proptest::prelude::*;

fn curve(m: u32, coords: &[&str]) -> ParamCurve {
    ParamCurve::new(Symbol::var("t"), m, rf(coords[0]), coords[1..].iter().map(|s| rf(s)).collect()).unwrap()
}

fn pool() -> Vec<ParamCurve> {
    vec![
        curve(2, &["t", "1 + t^2", "(t + 2)/(t + 1)"]),
        curve(2, &["t", "1 + t^2", "1 + t^3"]),
        curve(2, &["t", "(1 - a1*t)*(1 - a2*t)/(1 - (a1 + a2)*t)", "(t + 3)/(t + a1)"]),
        curve(2, &["t^2 + 1", "1 + (t^2 + 1)^2/(t + 2)", "(t + 3)/(t - 1)"]),
        curve(2, &["5", "a1", "t"]),
    ]
}

fn coordinate(x: &str, e: u32, g: &str) -> String {
    format!("1 + ({x})^{e}*({g})")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regulator_is_linear(i in 0usize..5, j in 0usize..5, a in -3i64..4, b in -3i64..4) {
        let p = pool();
        let (z1, z2) = (Cycle::single(p[i].clone()), Cycle::single(p[j].clone()));
        let combined = z1.scale(a).add(&z2.scale(b)).unwrap();
        let lhs = regulator_cycle(&combined).unwrap();
        let rhs = regulator_cycle(&z1).unwrap().scale(a).add(&regulator_cycle(&z2).unwrap().scale(b));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn modulus_forms_agree(
        x in prop::sample::select(vec!["t", "t^2", "t*(t + 1)", "t^2 - 2", "t/(t + 1)", "t^3/(t - 1)"]),
        e1 in 1u32..5,
        e2 in 1u32..5,
        g1 in prop::sample::select(vec!["1", "t + 2", "1/(t + 3)", "a1", "(t - 2)/(t + 5)"]),
        g2 in prop::sample::select(vec!["2", "t - 4", "1/(t - 3)", "a2*t", "(t + 7)/(t - 6)"]),
        m in 2u32..4,
    ) {
        let c = curve(m, &[x, &coordinate(x, e1, g1), &coordinate(x, e2, g2)]);
        let classify = modulus_classify(&c);
        let rep = check_admissible_curve(&c);
        prop_assume!(classify.is_ok() && rep.is_ok());
        prop_assert_eq!(classify.unwrap().satisfied(), rep.unwrap().sup_form_effective, "{}", c.render());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn face_multiplicities_match_degree(
        roots in prop::collection::vec((prop::sample::select(vec!["1", "2", "-3", "a1", "u", "u + 1", "2*u - a2"]), 1u32..3), 1..4),
        pole in prop::sample::select(vec!["1", "v + 7", "(v + 7)*(v - 5)", "(v - 5)^4"]),
    ) {
        let num: Vec<String> = roots.iter().map(|(r, e)| format!("(v - ({r}))^{e}")).collect();
        let t1 = rf(&format!("({})/({pole})", num.join("*")));
        prop_assume!(!t1.is_one());
        let (u, v) = (Symbol::var("u"), Symbol::var("v"));
        let s = ParamSurface::new(u, v.clone(), 2, rf("u"), vec![t1.clone(), rf("(u + v + 3)/(u + v + 4)"), rf("(v + 2)/(u + 9)")]);
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        for (at_infinity, eq) in [(false, t1.num()), (true, t1.den())] {
            let faces = surface_faces(&s, 1, at_infinity).unwrap();
            prop_assert!(faces.faces.iter().all(|f| f.mult >= 1));
            let affine: i64 = faces.faces.iter().filter(|f| f.component.starts_with("v = ") && f.component != "v = inf").map(|f| f.mult).sum();
            prop_assert_eq!(affine, eq.degree_in(&v) as i64);
            let balance = t1.num().degree_in(&v) as i64 - t1.den().degree_in(&v) as i64;
            let at_inf: i64 = faces.faces.iter().filter(|f| f.component == "v = inf").map(|f| f.mult).sum();
            let expected = if at_infinity { balance.max(0) } else { (-balance).max(0) };
            prop_assert_eq!(at_inf, expected);
        }
    }
}

use mzlab_core::{parse_poly, Ambient, Ring};
use proptest::prelude::*;

/// Grammar-valid expressions over `x, y` with explicit `*`.
fn expr() -> impl Strategy<Value = String> {
    let coeff = (1i64..20, prop::option::of(1i64..6)).prop_map(|(n, d)| match d {
        Some(d) => format!("{n}/{d}"),
        None => n.to_string(),
    });
    let var = (prop_oneof![Just("x"), Just("y")], prop::option::of(-3i32..6)).prop_map(|(v, e)| match e {
        Some(e) => format!("{v}^{e}"),
        None => v.to_string(),
    });
    let factor = prop_oneof![coeff, var];
    let leaf = prop::collection::vec(factor, 1..4).prop_map(|fs| fs.join("*"));
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), prop_oneof![Just(" + "), Just(" - ")], inner.clone()).prop_map(|(a, op, b)| format!("{a}{op}{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            inner.prop_map(|a| format!("({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(s in expr(), ring in prop_oneof![Just(Ring::Q), Just(Ring::Fp(7))]) {
        let amb = Ambient::new(ring, &["x", "y"], true);
        let f = parse_poly(&s, &amb).unwrap();
        let g = parse_poly(&f.to_string(), &amb).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(f.to_string(), g.to_string());
    }

    #[test]
    fn negative_exponents_need_laurent(e in 1i32..6) {
        let amb = Ambient::new(Ring::Q, &["x"], false);
        let text = format!("x^-{e}");
        prop_assert!(parse_poly(&text, &amb).is_err());
    }
}

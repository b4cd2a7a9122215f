use proptest::prelude::*;
use topozeta::symbolic::{canonical, latex, parse_rational_function, Poly, RationalFunction};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|c| Poly::from_i64(&c))
}

fn linear() -> impl Strategy<Value = Poly> {
    (1i64..=30, -12i64..=12).prop_map(|(a, b)| Poly::from_i64(&[b, a]))
}

fn rational() -> impl Strategy<Value = RationalFunction> {
    (poly(), prop::collection::vec(linear(), 0..4), prop::option::of(poly()), 1i64..=5).prop_map(
        |(num, lin, extra, scale)| {
            let mut den = Poly::from_i64(&[scale]);
            for f in &lin {
                den = &den * f;
            }
            if let Some(e) = extra.filter(|e| !e.is_zero()) {
                den = &den * &e;
            }
            RationalFunction::new(num, den).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_text_parses_back(x in rational()) {
        let text = canonical(&x, "s");
        prop_assert_eq!(parse_rational_function(&text, "s").unwrap(), x.clone());
        prop_assert_eq!(canonical(&parse_rational_function(&text, "s").unwrap(), "s"), text);
    }

    #[test]
    fn other_variable_names(x in rational()) {
        let text = canonical(&x, "t");
        prop_assert_eq!(parse_rational_function(&text, "t").unwrap(), x);
    }

    #[test]
    fn latex_is_deterministic(x in rational()) {
        let y = parse_rational_function(&canonical(&x, "s"), "s").unwrap();
        prop_assert_eq!(latex(&x, "s"), latex(&y, "s"));
    }
}

#[test]
fn rendering_examples() {
    let x = parse_rational_function("1/(s+1)^2", "s").unwrap();
    assert_eq!(canonical(&x, "s"), "1/((s + 1)^2)");
    let y = parse_rational_function("(3*s+7)/((15*s+7)*(s+1))", "s").unwrap();
    assert_eq!(latex(&y, "s"), "\\frac{3s + 7}{(15 s + 7)(s + 1)}");
}

use proptest::prelude::*;
use tower_integrate::frontend::{parse_element, parse_expression, parse_tower, render, FrontendError, TowerFile};

fn file() -> TowerFile {
    parse_tower("base x\nt1 = log(x)\nt2 = log(x+1)\n").unwrap()
}

fn expression() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..12).prop_map(|n| n.to_string()),
        prop::sample::select(vec!["x", "t1", "t2"]).prop_map(str::to_string),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}/({b} + 13)")),
            inner.clone().prop_map(|a| format!("-{a}")),
            (inner, 0u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn render_parse_round_trip(text in expression()) {
        let f = file();
        // divisors can still cancel to zero
        let Ok(value) = parse_element(&text, &f) else { return Ok(()) };
        let printed = render(&value, &f.names());
        prop_assert_eq!(parse_element(&printed, &f).unwrap(), value.clone());
        prop_assert_eq!(render(&parse_element(&printed, &f).unwrap(), &f.names()), printed);
    }

    #[test]
    fn error_offsets_in_bounds(text in "[ x0-9t12+*/^()-]{0,16}") {
        match parse_expression(&text, &file().names()) {
            Err(FrontendError::Syntax { offset, .. }) | Err(FrontendError::UnknownName { offset, .. }) => {
                prop_assert!(offset <= text.len());
            }
            _ => {}
        }
    }
}

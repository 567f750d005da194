use proptest::prelude::*;

use nearhopf::{Group, HopfAlgebra, Symbol};
use nearhopf_cli::expr::{parse, parse_in, Context, Expr, ExprError, Op, Value};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20).prop_map(Expr::Int),
        prop::sample::select(vec![
            Symbol::X(6),
            Symbol::Zeta(3),
            Symbol::Zeta(5),
            Symbol::Rho(11),
            Symbol::C(vec![3, 5]),
        ])
        .prop_map(Expr::Gen),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Tensor(Box::new(a), Box::new(b))),
            (
                prop::sample::select(vec![Op::Bock, Op::Cop, Op::Psi]),
                inner
            )
                .prop_map(|(op, e)| Expr::Apply(op, Box::new(e))),
        ]
    })
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn parse_never_panics(s in "[-+*^()x0-9zetarhoC{},(x) ]{0,30}") {
        let _ = parse(&s);
    }
}

#[test]
fn corpus_round_trips() {
    let corpus = [
        "x6*zeta5",
        "zeta3*zeta3",
        "-x6^2 + 3*zeta3*zeta5",
        "psi(rho11)",
        "bock(zeta5 (x) zeta5)",
        "cop(x6) - x6 (x) 1 - 1 (x) x6",
        "2*(x6 + zeta3)^2",
        "C{3,5}*rho11",
        "--x6",
        "x6 - (zeta3 - zeta5)",
    ];
    for s in corpus {
        let e = parse(s).unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
    }
}

#[test]
fn evaluation_in_g2_mod_2() {
    let entry = std::sync::Arc::new(nearhopf::catalog::entry(Group::G2).unwrap());
    let h = HopfAlgebra::new(entry, 2, nearhopf::presentation::Model::Strict).unwrap();
    let ctx = Context::ModP(&h);
    let eval = |s: &str| ctx.eval(&parse_in(s, &ctx).unwrap()).unwrap();
    assert_eq!(eval("zeta3*zeta3"), eval("x6"));
    assert_eq!(eval("bock(zeta5)"), eval("x6"));
    assert_eq!(eval("psi(zeta5) + 0 (x) 0"), eval("0 (x) 0"));
    let Value::Tensor(t) = eval("cop(x6*zeta5) - psi(x6*zeta5)") else {
        panic!()
    };
    assert_eq!(
        t,
        match eval("x6*zeta5 (x) 1 + 1 (x) x6*zeta5") {
            Value::Tensor(u) => u,
            _ => panic!(),
        }
    );
    assert!(matches!(
        parse_in("rho11", &ctx),
        Err(ExprError::UnknownGenerator { .. })
    ));
    assert!(matches!(
        parse_in("x7", &ctx),
        Err(ExprError::UnknownGenerator { pos: 0, .. })
    ));
}

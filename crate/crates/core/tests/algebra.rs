use dynamod_core::algebra::{discriminant, rat, Assignment};
use dynamod_core::{Error, MultiPoly, Rational, UniPoly, Var};
use num_traits::Zero;
use proptest::prelude::*;

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn x() -> Var {
    Var::x(1)
}

/// Random polynomial in `t, x1` with degree at most `deg` in each variable.
fn poly(deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=deg), (0..=deg), -9i64..=9), 0..8).prop_map(|terms| {
        let mut acc = MultiPoly::zero();
        for (a, b, c) in terms {
            let mono = &MultiPoly::var(Var::T).pow(a as i64).unwrap() * &MultiPoly::var(x()).pow(b as i64).unwrap();
            acc = &acc + &mono.scale(&c.into());
        }
        acc
    })
}

fn uni(deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 1..=deg + 1).prop_map(|c| UniPoly::from_ints(&c))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

#[test]
fn ring_examples() {
    assert_eq!(&p("x^2 + t") * &MultiPoly::one(), p("x^2 + t"));
    assert_eq!(p("x^2 + t").pow(2).unwrap(), p("x^4 + 2*t*x^2 + t^2"));
    assert_eq!(&p("x^2 - x + t") * &p("x^2 + x + t + 1"), p("x^4 + 2*t*x^2 - x + t^2 + t"));
    assert!(matches!(p("x").pow(-1), Err(Error::NegativeExponent(-1))));
}

#[test]
fn division_examples() {
    assert_eq!(p("x^4 + 2*t*x^2 - x + t^2 + t").divexact(&p("x^2 - x + t")).unwrap(), p("x^2 + x + t + 1"));
    assert_eq!(p("x^2 + t").divexact(&MultiPoly::one()).unwrap(), p("x^2 + t"));
    assert!(matches!(p("x^2 + t").divexact(&p("x + 1")), Err(Error::NotDivisible)));
    assert!(matches!(p("x").divexact(&MultiPoly::zero()), Err(Error::DivisionByZero)));
}

#[test]
fn substitution_examples() {
    assert_eq!(p("x^2 - x + t").substitute(x(), &p("-x")), p("x^2 + x + t"));
    assert_eq!(p("x").substitute(x(), &p("x^2 + t")), p("x^2 + t"));
    let inner = p("-(x^2 + t)");
    assert_eq!(p("x^2 - x + t").substitute(x(), &inner), p("(x^2 + t)^2 + (x^2 + t) + t"));
}

#[test]
fn evaluation_examples() {
    let a = |xv: Rational, tv: Rational| -> Assignment { [(x(), xv), (Var::T, tv)].into_iter().collect() };
    assert!(p("x^2 - x + t").eval(&a(rat(0, 1), rat(0, 1))).unwrap().is_zero());
    assert!(p("x^2 + x + t + 1").eval(&a(rat(-1, 2), rat(-3, 4))).unwrap().is_zero());
    assert_eq!(p("x^2 + t").eval(&a(rat(-7, 4), rat(-29, 16))).unwrap(), rat(5, 4));
    let missing: Assignment = [(x(), rat(1, 1))].into_iter().collect();
    assert!(matches!(p("x + t").eval(&missing), Err(Error::UnboundVariable(_))));
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&p("x^2 - x + t"), x()).unwrap(), p("1 - 4*t"));
    assert_eq!(discriminant(&p("x^2 + x + t + 1"), x()).unwrap(), p("-3 - 4*t"));
    assert_eq!(discriminant(&p("x^2 - 1"), x()).unwrap(), p("4"));
    assert!(discriminant(&p("t + 1"), x()).is_err());
}

#[test]
fn root_and_squarefree_examples() {
    assert_eq!(UniPoly::from_ints(&[1, -4]).rational_roots().unwrap(), vec![rat(1, 4)]);
    assert_eq!(UniPoly::from_ints(&[0, 1, 1]).rational_roots().unwrap(), vec![rat(-1, 1), rat(0, 1)]);
    assert!(UniPoly::from_ints(&[1, 0, 1]).rational_roots().unwrap().is_empty());
    assert!(UniPoly::from_ints(&[]).rational_roots().is_err());

    let c = UniPoly::new(vec![rat(1, 4), rat(1, 1), rat(1, 1)]);
    let (sf, flag) = c.squarefree_part();
    assert_eq!(sf, UniPoly::new(vec![rat(1, 2), rat(1, 1)]));
    assert!(!flag);
    assert_eq!(UniPoly::from_ints(&[0, -1, 1]).squarefree_part(), (UniPoly::from_ints(&[0, -1, 1]), true));
    assert_eq!(UniPoly::from_ints(&[-1, 3, -3, 1]).squarefree_part(), (UniPoly::from_ints(&[-1, 1]), false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divexact_inverts_multiplication(a in poly(6), b in poly(6)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
    }

    #[test]
    fn substitution_composes(a in poly(3), q in poly(2), r in poly(2)) {
        let left = a.substitute(x(), &q).substitute(x(), &r);
        let right = a.substitute(x(), &q.substitute(x(), &r));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(4), b in poly(4), xv in small_rational(), tv in small_rational()) {
        let asg: Assignment = [(x(), xv), (Var::T, tv)].into_iter().collect();
        let ab = (&a * &b).eval(&asg).unwrap();
        prop_assert_eq!(ab, a.eval(&asg).unwrap() * b.eval(&asg).unwrap());
        let sum = (&a + &b).eval(&asg).unwrap();
        prop_assert_eq!(sum, a.eval(&asg).unwrap() + b.eval(&asg).unwrap());
    }

    #[test]
    fn text_and_json_round_trip(a in poly(5)) {
        prop_assert_eq!(a.to_string().parse::<MultiPoly>().unwrap(), a.clone());
        prop_assert_eq!(MultiPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn discriminant_detects_planted_squares(f in uni(3), g in uni(2), square in any::<bool>()) {
        prop_assume!(f.degree().unwrap_or(0) >= 1 && !g.is_zero());
        let prod = if square { f.mul(&f).mul(&g) } else { f.mul(&g) };
        let (_, squarefree) = prod.squarefree_part();
        let disc = prod.discriminant().unwrap();
        prop_assert_eq!(disc.is_zero(), !squarefree);
        if square {
            prop_assert!(!squarefree);
        }
    }

    #[test]
    fn planted_rational_roots_are_found(roots in prop::collection::vec(small_rational(), 1..5), g in uni(2)) {
        prop_assume!(!g.is_zero());
        let mut poly = g.clone();
        for r in &roots {
            poly = poly.mul(&UniPoly::new(vec![-r.clone(), rat(1, 1)]));
        }
        let found = poly.rational_roots().unwrap();
        for r in &roots {
            prop_assert!(found.contains(r));
        }
        for r in &found {
            prop_assert!(poly.eval(r).is_zero());
        }
    }
}

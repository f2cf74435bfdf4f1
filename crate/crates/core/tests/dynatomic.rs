use dynamod_core::algebra::rat;
use dynamod_core::dynatomic::{
    cycle_count, divisors, dynatomic, formal_count, gen_degree, gen_dynatomic, iterate_poly, mobius, specialize,
};
use dynamod_core::{default_cache, DynatomicCache, Error, MultiPoly, UniPoly, Var};

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

#[test]
fn mobius_values() {
    assert_eq!(mobius(1).unwrap(), 1);
    assert_eq!(mobius(6).unwrap(), 1);
    assert_eq!(mobius(12).unwrap(), 0);
    assert_eq!(mobius(7).unwrap(), -1);
    assert!(mobius(0).is_err());
}

#[test]
fn iterates() {
    assert_eq!(iterate_poly(0).unwrap(), p("x"));
    assert_eq!(iterate_poly(1).unwrap(), p("x^2 + t"));
    assert_eq!(iterate_poly(2).unwrap(), p("x^4 + 2*t*x^2 + t^2 + t"));
    for n in 0..=6 {
        assert_eq!(iterate_poly(n).unwrap().degree(Var::x(1)), 1 << n);
    }
}

#[test]
fn small_dynatomic_polynomials() {
    assert_eq!(dynatomic(1).unwrap(), p("x^2 - x + t"));
    assert_eq!(dynatomic(2).unwrap(), p("x^2 + x + t + 1"));
    assert_eq!(gen_dynatomic(0, 2).unwrap(), p("x^2 + x + t + 1"));
    assert_eq!(gen_dynatomic(1, 1).unwrap(), p("x^2 + x + t"));
    assert_eq!(gen_dynatomic(3, 2).unwrap().degree(Var::x(1)), 8);
    assert_eq!(default_cache().table(3).unwrap().degree_x, 6);
}

#[test]
fn degree_bookkeeping() {
    let d = [2, 2, 6, 12, 30, 54, 126, 240, 504, 990];
    let r = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    for n in 1..=10u32 {
        assert_eq!(formal_count(n), d[n as usize - 1]);
        assert_eq!(cycle_count(n), r[n as usize - 1]);
        let sum: i64 = divisors(n as u64).iter().map(|&k| mobius(n as u64 / k).unwrap() as i64 * (1i64 << k)).sum();
        assert_eq!(sum as u64, formal_count(n));
        assert_eq!(n as u64 * cycle_count(n), formal_count(n));
    }
    for n in 1..=8 {
        let phi = dynatomic(n).unwrap();
        assert_eq!(phi.degree(Var::x(1)) as u64, formal_count(n));
        if n >= 2 {
            assert_eq!(phi.degree(Var::T) as u64, formal_count(n) / 2, "deg_t Phi_{n}");
        }
    }
}

#[test]
fn generalized_degrees() {
    for m in 1..=4 {
        for n in 1..=3 {
            let phi = gen_dynatomic(m, n).unwrap();
            assert_eq!(phi.degree(Var::x(1)) as u64, gen_degree(m, n));
            assert_eq!(gen_degree(m, n), formal_count(n) << (m - 1));
        }
    }
}

#[test]
fn cycle_factorizations() {
    let cache = default_cache();
    for n in 1..=8 {
        assert!(cache.verify_cycle_factorization(n).unwrap(), "N = {n}");
    }
    assert_eq!(&dynatomic(1).unwrap() * &dynatomic(2).unwrap(), &iterate_poly(2).unwrap() - &p("x"));
}

#[test]
fn preperiodic_factorizations_and_quotient_route() {
    let cache = default_cache();
    for m in 1..=3 {
        for n in 1..=3 {
            assert!(cache.verify_preper_factorization(m, n).unwrap(), "({m},{n})");
            assert_eq!(cache.gen_dynatomic(m, n).unwrap(), cache.gen_dynatomic_quotient(m, n).unwrap(), "({m},{n})");
        }
    }
    assert_eq!(iterate_poly(3).unwrap().degree(Var::x(1)), 8);
}

#[test]
fn degree_cap() {
    let small = DynatomicCache::new(16);
    assert!(small.dynatomic(4).is_ok());
    assert!(matches!(small.dynatomic(5), Err(Error::DegreeCap { needed: 32, cap: 16 })));
    assert!(matches!(small.verify_preper_factorization(3, 2), Err(Error::DegreeCap { .. })));
    assert!(matches!(small.gen_dynatomic(5, 2), Err(Error::DegreeCap { .. })));
}

#[test]
fn branch_polynomials() {
    let b1 = default_cache().branch_poly(0, 1).unwrap();
    assert_eq!(b1, p("1 - 4*t"));
    let b2 = default_cache().branch_poly(0, 2).unwrap();
    assert_eq!(b2, p("-3 - 4*t"));
    let roots = |q: &MultiPoly| q.to_unipoly(Var::T, &Default::default()).unwrap().rational_roots().unwrap();
    assert_eq!(roots(&b1), vec![rat(1, 4)]);
    assert_eq!(roots(&b2), vec![rat(-3, 4)]);
}

#[test]
fn specializations() {
    assert_eq!(specialize(0, 2, &rat(-3, 4)).unwrap(), UniPoly::new(vec![rat(1, 4), rat(1, 1), rat(1, 1)]));
    assert_eq!(specialize(0, 1, &rat(-29, 16)).unwrap(), UniPoly::new(vec![rat(-29, 16), rat(-1, 1), rat(1, 1)]));
    assert_eq!(specialize(0, 3, &rat(-29, 16)).unwrap().eval(&rat(-7, 4)), rat(0, 1));
}

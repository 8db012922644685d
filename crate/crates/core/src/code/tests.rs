use super::*;
use crate::cyclotomic::{cosets, profile};
use proptest::prelude::*;

fn f(lit: &str) -> Arc<FieldCtx> {
    FieldCtx::from_literal(lit).unwrap()
}

/// Weight distribution by encoding every message in lexicographic order.
fn naive_weights(code: &impl LinearCode) -> Vec<u64> {
    let g = code.generator_matrix();
    let ctx = g.ctx().clone();
    let q = ctx.order();
    let k = g.num_rows();
    let mut hist = vec![0u64; g.n() + 1];
    for idx in 0..q.pow(k as u32) {
        let msg: Vec<Fe> = (0..k)
            .map(|i| Fe(((idx / q.pow(i as u32)) % q) as u32))
            .collect();
        let w = g.encode(&msg).iter().filter(|c| !c.is_zero()).count();
        hist[w] += 1;
    }
    hist
}

fn naive_distance(code: &impl LinearCode) -> usize {
    naive_weights(code)
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map(|(w, _)| w)
        .unwrap()
}

fn params(c: &CyclicCode) -> (usize, usize, usize) {
    (c.n(), c.k(), min_distance(c, DEFAULT_BUDGET).unwrap().d)
}

#[test]
fn from_generator_examples() {
    let f2 = f("2");
    let c = CyclicCode::from_generator(Poly::from_ints(&f2, &[1, 1, 1]), 3).unwrap();
    assert_eq!(params(&c), (3, 1, 3));
    assert!(same_code(&c, &build_repetition(3, &f2).unwrap()).unwrap());

    let f5 = f("5");
    let c = CyclicCode::from_generator(Poly::from_ints(&f5, &[-1, 1]), 4).unwrap();
    assert_eq!((c.n(), c.k()), (4, 3));
    assert_eq!(
        c.generator_matrix().rows()[0],
        vec![Fe(4), Fe(1), Fe(0), Fe(0)]
    );

    assert_eq!(
        CyclicCode::from_generator(Poly::from_ints(&f2, &[1, 1, 1]), 4).unwrap_err(),
        Error::NotADivisor { n: 4 }
    );
    assert_eq!(
        CyclicCode::from_generator(Poly::from_ints(&f5, &[1, 2]), 4).unwrap_err(),
        Error::NotMonic
    );
}

#[test]
fn build_examples() {
    let c = build_cn(6, &f("5")).unwrap();
    assert_eq!((c.n(), c.k(), c.label()), (6, 4, "C_6"));
    let c = build_cn(15, &f("2")).unwrap();
    assert_eq!((c.n(), c.k()), (15, 7));
    assert_eq!(
        build_cn(3, &f("3")).unwrap_err(),
        Error::CharacteristicDividesN { n: 3, p: 3 }
    );
    assert_eq!(build_cn(1, &f("2")).unwrap_err(), Error::InvalidLength(1));

    let c = build_cn1(15, &f("2")).unwrap();
    assert_eq!((c.n(), c.k()), (15, 6));
    assert_eq!(build_cn1(7, &f("2")).unwrap_err(), Error::PrimeLength(7));
    let c = build_cn1(6, &f("5")).unwrap();
    assert_eq!((c.n(), c.k()), (6, 3));
}

#[test]
fn repetition_codes() {
    let f2 = f("2");
    let r5 = build_repetition(5, &f2).unwrap();
    assert_eq!(params(&r5), (5, 1, 5));
    assert_eq!(params(&r5.dual()), (5, 4, 2));
    let r1 = build_repetition(1, &f2).unwrap();
    assert_eq!(params(&r1), (1, 1, 1));
}

#[test]
fn dual_examples() {
    let f2 = f("2");
    let r3 = build_repetition(3, &f2).unwrap();
    let d = r3.dual();
    assert_eq!(d.generator(), &Poly::from_ints(&f2, &[1, 1]));
    assert_eq!(params(&d), (3, 2, 2));
    assert_eq!(d.label(), "R_3⊥");
    assert_eq!(d.dual().label(), "R_3");

    let c6 = build_cn(6, &f("5")).unwrap();
    assert_eq!((c6.dual().n(), c6.dual().k()), (6, 2));
    assert!(!same_code(&c6, &c6.dual()).unwrap());
}

#[test]
fn dual_generator_is_h_star_over_h0() {
    for lit in ["3", "5", "7", "2^2", "3^2"] {
        let k = f(lit);
        for n in 2..=20u64 {
            let Ok(c) = build_cn(n, &k) else { continue };
            let h = c.check_poly();
            let h0 = h.coeff(0);
            let scaled = h.reciprocal().unwrap().scale(k.inv(h0).unwrap());
            assert_eq!(&scaled, c.dual().generator());
        }
    }
}

#[test]
fn structural_invariants_over_many_codes() {
    for lit in ["2", "3", "2^2", "5", "7", "2^3", "3^2"] {
        let k = f(lit);
        for n in 2..=30u64 {
            if n % k.characteristic() == 0 {
                continue;
            }
            let mut codes = vec![build_cn(n, &k).unwrap(), build_repetition(n, &k).unwrap()];
            if profile(n).is_composite() {
                codes.push(build_cn1(n, &k).unwrap());
            }
            for c in codes {
                let d = c.dual();
                let product = c
                    .generator_matrix()
                    .mul_transpose(&d.generator_matrix())
                    .unwrap();
                assert!(
                    product.iter().flatten().all(|x| x.is_zero()),
                    "{}",
                    c.label()
                );
                assert!(same_code(&d.dual(), &c).unwrap());
                assert_eq!(
                    c.generator().degree().unwrap() + c.check_poly().degree().unwrap(),
                    n as usize
                );
                assert_eq!(
                    c.generator() * c.check_poly(),
                    Poly::x_n_minus_one(&k, n as usize)
                );
                assert_eq!(d.k(), n as usize - c.k());
            }
        }
    }
}

#[test]
fn rref_of_cyclic_rows() {
    let c3 = build_cn(3, &f("2")).unwrap();
    assert_eq!(
        c3.generator_matrix().rref().rows(),
        &[vec![Fe(1), Fe(1), Fe(1)]]
    );
}

#[test]
fn same_code_errors() {
    let a = build_cn(6, &f("5")).unwrap();
    let b = build_cn(7, &f("5")).unwrap();
    assert_eq!(same_code(&a, &b).unwrap_err(), Error::LengthMismatch(6, 7));
    let c = build_cn(6, &f("7")).unwrap();
    assert_eq!(same_code(&a, &c).unwrap_err(), Error::FieldMismatch);
    assert!(same_code(&a, &a).unwrap());
}

#[test]
fn sums() {
    let k = f("2");
    let c = build_cn(15, &k).unwrap();
    assert!(same_code(&sum_codes(&c, &c).unwrap(), &c).unwrap());
    let zero = GenMatrix::empty(&k, 15);
    assert!(same_code(&sum_codes(&zero, &c).unwrap(), &c).unwrap());
    let lhs = sum_codes(&c.dual(), &build_repetition(15, &k).unwrap()).unwrap();
    assert!(same_code(&lhs, &build_cn1(15, &k).unwrap().dual()).unwrap());
}

#[test]
fn zero_sum_subcodes() {
    let k = f("2");
    let sub = zero_sum_subcode(&build_cn(15, &k).unwrap());
    assert!(same_code(&sub, &build_cn1(15, &k).unwrap()).unwrap());

    let r4 = build_repetition(4, &k).unwrap();
    assert!(same_code(&zero_sum_subcode(&r4), &r4).unwrap());
    let r5 = build_repetition(5, &k).unwrap();
    assert_eq!(zero_sum_subcode(&r5).num_rows(), 0);

    let f3 = f("3");
    let full = GenMatrix::identity(&f3, 3);
    let parity = zero_sum_subcode(&full);
    assert_eq!(parity.num_rows(), 2);
    assert!(same_code(&parity, &build_repetition(3, &f3).unwrap().dual()).unwrap());
}

#[test]
fn direct_sums() {
    let k = f("2");
    let r2 = build_repetition(2, &k).unwrap();
    let r3 = build_repetition(3, &k).unwrap();
    let s = direct_sum(&r2, &r3).unwrap();
    assert_eq!((s.n(), s.rank()), (5, 2));
    assert_eq!(naive_weights(&s), vec![1, 0, 1, 1, 0, 1]);
    assert_eq!(min_distance(&s, DEFAULT_BUDGET).unwrap().d, 2);

    let a = build_cn(6, &f("5")).unwrap();
    let s = direct_sum(&a, &GenMatrix::empty(&f("5"), 0)).unwrap();
    assert!(same_code(&s, &a).unwrap());

    let d3 = r3.dual();
    let s = direct_sum(&d3, &d3).unwrap();
    assert_eq!(
        (s.n(), s.rank(), min_distance(&s, DEFAULT_BUDGET).unwrap().d),
        (6, 4, 2)
    );

    assert_eq!(
        direct_sum(&r3, &build_repetition(3, &f("3")).unwrap()).unwrap_err(),
        Error::FieldMismatch
    );
}

#[test]
fn distance_examples() {
    let k = f("2");
    let c = build_cn(15, &k).unwrap();
    let rep = min_distance(&c, DEFAULT_BUDGET).unwrap();
    assert_eq!((rep.d, rep.codewords_enumerated), (3, 127));
    assert_eq!(rep.method, "exhaustive-messages");
    assert_eq!(
        min_distance(&build_cn1(15, &k).unwrap(), DEFAULT_BUDGET)
            .unwrap()
            .d,
        6
    );
    assert_eq!(min_distance(&c.dual(), DEFAULT_BUDGET).unwrap().d, 4);
}

#[test]
fn budget_and_zero_code() {
    let c = build_cn(15, &f("2")).unwrap();
    assert_eq!(
        min_distance(&c, 100).unwrap_err(),
        Error::BudgetExceeded {
            required: 127,
            budget: 100
        }
    );
    assert_eq!(
        weight_distribution(&c, 127).unwrap_err(),
        Error::BudgetExceeded {
            required: 128,
            budget: 127
        }
    );
    assert_eq!(
        min_distance(&GenMatrix::empty(&f("2"), 4), 10).unwrap_err(),
        Error::ZeroCode
    );
    assert_eq!(
        weight_distribution(&GenMatrix::empty(&f("2"), 4), 10).unwrap(),
        vec![1, 0, 0, 0, 0]
    );
}

#[test]
fn weight_distribution_examples() {
    let k = f("2");
    let r3 = build_repetition(3, &k).unwrap();
    assert_eq!(weight_distribution(&r3, 16).unwrap(), vec![1, 0, 0, 1]);
    assert_eq!(
        weight_distribution(&r3.dual(), 16).unwrap(),
        vec![1, 0, 3, 0]
    );
}

#[test]
fn kernel_matches_naive_enumeration() {
    for lit in ["2", "3", "2^2", "5", "7", "2^3", "3^2"] {
        let k = f(lit);
        let q = k.order();
        for n in 2..=16u64 {
            if n % k.characteristic() == 0 {
                continue;
            }
            let mut codes = vec![build_cn(n, &k).unwrap()];
            codes.push(codes[0].dual());
            if profile(n).is_composite() {
                let c = build_cn1(n, &k).unwrap();
                codes.push(c.dual());
                codes.push(c);
            }
            for c in codes {
                if q.pow(c.k() as u32) > 200_000 {
                    continue;
                }
                let fast = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
                assert_eq!(fast, naive_weights(&c), "{} over {lit}", c.label());
                assert_eq!(fast.iter().sum::<u64>(), q.pow(c.k() as u32));
                assert_eq!(
                    min_distance(&c, DEFAULT_BUDGET).unwrap().d,
                    naive_distance(&c)
                );
            }
        }
    }
}

#[test]
fn defining_sets() {
    for lit in ["2", "3", "2^2", "5"] {
        let k = f(lit);
        for n in [5u64, 7, 8, 9, 12, 15, 21] {
            if arith::gcd(n, k.order()) != 1 {
                continue;
            }
            let units = units_mod(n);
            let cn = build_cn(n, &k).unwrap();
            let ds = cn.zeros_and_nonzeros().unwrap();
            assert_eq!(ds.zeros, units);
            assert_eq!(ds.zeros.len(), cn.generator().degree().unwrap());
            assert_eq!(cn.dual().zeros_and_nonzeros().unwrap().nonzeros, units);

            let rep = build_repetition(n, &k)
                .unwrap()
                .zeros_and_nonzeros()
                .unwrap();
            assert_eq!(rep.zeros, (1..n).collect());

            let cs = cosets(n, k.order()).unwrap();
            for code in [
                cn.clone(),
                cn.dual(),
                build_cn1(n, &k).map_or(cn.clone(), |c| c),
            ] {
                let zeros = code.zeros_and_nonzeros().unwrap().zeros;
                for c in &cs {
                    let inside = c.members.iter().filter(|m| zeros.contains(m)).count();
                    assert!(
                        inside == 0 || inside == c.len(),
                        "T must be a union of cosets"
                    );
                }
            }
        }
    }
}

#[test]
fn cyclic_recovery_from_matrix() {
    let k = f("3");
    let c = build_cn(8, &k).unwrap().dual();
    let back = CyclicCode::from_matrix(&c.generator_matrix().rref()).unwrap();
    assert_eq!(back.generator(), c.generator());
    let not_cyclic = GenMatrix::from_ints(&k, &[vec![1, 0, 0, 0]]).unwrap();
    assert_eq!(
        CyclicCode::from_matrix(&not_cyclic).unwrap_err(),
        Error::NotCyclic
    );
}

#[test]
fn descriptor_round_trip() {
    let c = build_cn(6, &f("5")).unwrap();
    let d = c.descriptor();
    assert_eq!(
        serde_json::to_value(&d.generator).unwrap(),
        serde_json::json!([1, 4, 1])
    );
    let g = poly_from_json(c.ctx(), &d.generator).unwrap();
    assert_eq!(&g, c.generator());

    let k = f("2^2");
    let c = build_cn(5, &k).unwrap().dual();
    let d = c.descriptor();
    let back = poly_from_json(&k, &d.generator).unwrap();
    assert_eq!(&back, c.generator());
}

#[test]
fn small_order_generators_give_distance_at_most_two() {
    // Every divisor g of x^n - 1 (as a product of a subset of the minimal polynomials)
    // whose order is below n generates a code with d <= 2.
    let mut checked = 0;
    for lit in ["2", "3", "2^2", "5", "7"] {
        let k = f(lit);
        for n in 3..=30u64 {
            if arith::gcd(n, k.order()) != 1 {
                continue;
            }
            let Ok(mins) = cyclotomic::minimal_polys(n, &k) else {
                continue;
            };
            let count = mins.len().min(10);
            for mask in 1u32..(1 << count) {
                let g = (0..count)
                    .filter(|i| mask & (1 << i) != 0)
                    .fold(Poly::one(&k), |acc, i| &acc * &mins[i].1);
                if g.degree() == Some(n as usize) {
                    continue;
                }
                if g.order().unwrap() >= n {
                    continue;
                }
                let c = CyclicCode::from_generator(g, n as usize).unwrap();
                if let Ok(rep) = min_distance(&c, 1 << 20) {
                    assert!(rep.d <= 2);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 100, "only {checked} pairs checked");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_is_commutative_and_contains_both(n in 2u64..24, lit_idx in 0usize..4) {
        let lit = ["2", "3", "5", "7"][lit_idx];
        let k = f(lit);
        prop_assume!(n % k.characteristic() != 0);
        let a = build_cn(n, &k).unwrap();
        let b = build_repetition(n, &k).unwrap();
        let ab = sum_codes(&a, &b).unwrap();
        let ba = sum_codes(&b, &a).unwrap();
        prop_assert!(same_code(&ab, &ba).unwrap());
        prop_assert!(same_code(&sum_codes(&ab, &a).unwrap(), &ab).unwrap());
        prop_assert!(same_code(&sum_codes(&ab, &b).unwrap(), &ab).unwrap());
    }
}

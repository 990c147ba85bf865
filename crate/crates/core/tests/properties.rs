use g2eis::charalg::Assignment;
use g2eis::cterm::{c_factors, term_series};
use g2eis::g2matrix::{
    form_value, in_v0, orbit_class, phi32, phi32_isometric, preserves_form, v_rho, x_minus_alpha,
    Fp, OrbitClass,
};
use g2eis::laurent::{apriori_valuation, expand_c_with, OffLatticePolicy};
use g2eis::polescan::{cvector, rank_one_status, standard_inducing, RankOneStatus};
use g2eis::rational::{int, rat};
use g2eis::rootsys::{degenerate_weyl_set, reduced_words, roots, weyl_group};
use g2eis::{
    CoeffPoly, CoeffSymbol, Gl1Char, LaurentSeries, Order, Orientation, Parabolic, Rat, Relations,
    Simple, TorsionClass, TorusChar,
};
use num_traits::Zero;
use proptest::prelude::*;

fn any_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    any_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::BetaLong), Just(Orientation::AlphaLong)]
}

fn torus_char(o: Orientation) -> impl Strategy<Value = TorusChar> {
    (any_rat(), any_rat(), any_rat(), any_rat(), 0i64..3, 0i64..3).prop_map(
        move |(a, b, sa, sb, ka, kb)| {
            let class = TorsionClass::chi0(3);
            let c1 = Gl1Char::constant(a)
                .with_var("s", sa)
                .with_torsion(class.clone(), ka);
            let c2 = Gl1Char::constant(b)
                .with_var("s", sb)
                .with_torsion(class, kb);
            TorusChar::new(c1, c2, o)
        },
    )
}

fn oriented_char() -> impl Strategy<Value = TorusChar> {
    orientation().prop_flat_map(torus_char)
}

fn symbol_poly() -> impl Strategy<Value = CoeffPoly> {
    let symbols = [
        CoeffSymbol::zeta(0, 2),
        CoeffSymbol::zeta(-1, 1),
        CoeffSymbol::Log1,
        CoeffSymbol::Log2,
    ];
    proptest::collection::vec((0usize..4, -3i64..=3), 0..3).prop_map(move |terms| {
        terms.into_iter().fold(CoeffPoly::int(1), |acc, (i, k)| {
            &acc + &CoeffPoly::symbol(symbols[i].clone()).scale(&int(k))
        })
    })
}

fn series() -> impl Strategy<Value = LaurentSeries> {
    (-2i64..=1, proptest::collection::vec(symbol_poly(), 3))
        .prop_map(|(start, coeffs)| LaurentSeries::new("u", start, coeffs, start + 3))
}

fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let n = a.truncation().min(b.truncation());
    a.truncate(n) == b.truncate(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pairing_is_equivariant(chi in oriented_char(), wi in 0usize..12) {
        let o = chi.orientation;
        let w = &weyl_group(o)[wi];
        for gamma in roots(o) {
            let lhs = chi.weyl_act(w).coroot_pairing(&w.act_root(&gamma)).unwrap();
            prop_assert_eq!(lhs, chi.coroot_pairing(&gamma).unwrap());
        }
    }

    #[test]
    fn simple_reflections_are_involutions(chi in oriented_char()) {
        for s in [Simple::A, Simple::B] {
            prop_assert_eq!(chi.reflect(s).reflect(s), chi.clone());
        }
    }

    #[test]
    fn weyl_action_is_linear((x, y) in orientation().prop_flat_map(|o| (torus_char(o), torus_char(o))), wi in 0usize..12) {
        let w = &weyl_group(x.orientation)[wi];
        prop_assert_eq!(x.add(&y).weyl_act(w), x.weyl_act(w).add(&y.weyl_act(w)));
    }

    #[test]
    fn c_factors_ignore_word_choice(chi in oriented_char()) {
        for class in reduced_words(chi.orientation) {
            let mut reference = c_factors(&class[0], &chi);
            reference.sort();
            for w in &class[1..] {
                let mut f = c_factors(w, &chi);
                f.sort();
                prop_assert_eq!(&f, &reference);
            }
        }
    }

    #[test]
    fn series_multiplication_is_associative(a in series(), b in series(), c in series()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&left, &right));
    }

    #[test]
    fn series_multiplication_distributes(a in series(), b in series(), c in series()) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&left, &right));
    }

    #[test]
    fn functional_equation_holds(
        j in -3i64..=3,
        slope in nonzero_rat(),
        offset in any_rat(),
        integral in any::<bool>(),
        n in 1u32..=3,
        k in 0i64..3,
    ) {
        let constant = if integral { int(j) } else { offset };
        let mut x = Gl1Char::constant(constant).with_var("u", slope);
        if k % n as i64 != 0 {
            x = x.with_torsion(TorsionClass::chi0(n), k);
        }
        let a = expand_c_with(&x, "u", 3, OffLatticePolicy::AsUnit).unwrap();
        let b = expand_c_with(&-&x, "u", 3, OffLatticePolicy::AsUnit).unwrap();
        let prod = Relations::global().normalize_series(&a.mul(&b).unwrap()).unwrap();
        prop_assert!(prod.truncation() >= 1);
        for d in prod.start()..prod.truncation() {
            let want = if d == 0 { CoeffPoly::one() } else { CoeffPoly::zero() };
            prop_assert_eq!(prod.coefficient(d), want);
        }
    }

    #[test]
    fn normalization_is_confluent(x in nonzero_rat(), y in any_rat(), slope in nonzero_rat()) {
        let rel = Relations::global();
        let ax = Gl1Char::constant(int(-1)).with_var("u", slope.clone());
        let bx = Gl1Char::constant(int(1)).with_var("u", x);
        let cx = Gl1Char::constant(int(0)).with_var("u", if y.is_zero() { int(1) } else { y });
        let [a, b, c] = [ax, bx, cx].map(|g| expand_c_with(&g, "u", 3, OffLatticePolicy::Strict).unwrap());
        let left = rel.normalize_series(&a.mul(&b).unwrap().mul(&c).unwrap()).unwrap();
        let ab = rel.normalize_series(&a.mul(&b).unwrap()).unwrap();
        let right = rel.normalize_series(&ab.mul(&rel.normalize_series(&c).unwrap()).unwrap()).unwrap();
        prop_assert!(agree(&left, &right));
        for (_, coeff) in left.terms() {
            for s in coeff.symbols() {
                prop_assert!(Relations::is_free(s), "unreduced symbol {}", s);
            }
        }
    }

    #[test]
    fn term_pole_order_counts_edge_arguments(wi in 0usize..6, n in 1u32..=3, num in 9i64..=36, den in 9i64..=18) {
        let ws = degenerate_weyl_set(Parabolic::P, Orientation::BetaLong);
        let chi = standard_inducing(Order::Finite(n));
        let s0 = rat(num, den);
        let args = c_factors(&ws[wi], &chi);
        let point = Assignment::new().set("s", s0.clone());
        let mut by_rules = 0i64;
        for arg in &args {
            match rank_one_status(arg, &point).unwrap() {
                RankOneStatus::Pole => by_rules += 1,
                RankOneStatus::HasKernel => by_rules -= 1,
                _ => {}
            }
        }
        let shift = Gl1Char::constant(s0).with_var("t", int(1));
        let local: Vec<Gl1Char> = args.iter().map(|a| a.substitute("s", &shift).unwrap()).collect();
        let s = term_series(&local, [&Rat::zero(), &Rat::zero()], "t", 1, &int(1), OffLatticePolicy::AsUnit).unwrap();
        prop_assert_eq!(-s.valuation().unwrap(), by_rules);
    }

    #[test]
    fn x_minus_alpha_is_a_one_parameter_subgroup(r in any_rat(), t in any_rat()) {
        prop_assert_eq!(x_minus_alpha(&r).mul(&x_minus_alpha(&t)), x_minus_alpha(&(&r + &t)));
    }

    #[test]
    fn x_minus_alpha_preserves_form_and_v0(r in any_rat(), x in proptest::array::uniform8(any_rat())) {
        let m = x_minus_alpha(&r);
        prop_assert_eq!(form_value(&m.apply(&x)), form_value(&x));
        let mut y = x.clone();
        y[4] = y[3].clone();
        prop_assert!(in_v0(&m.apply(&y)));
    }

    #[test]
    fn isometric_embedding_preserves_form(t in nonzero_rat(), x in any_rat(), y in any_rat()) {
        let g = [[&t * (int(1) + &x * &y), &t * &x], [&y / &t, int(1) / &t]];
        prop_assert!(preserves_form(&phi32_isometric(&g).unwrap()));
    }

    #[test]
    fn embedding_fixes_v_rho_and_multiplies(
        g in (0i64..5, 0i64..5, 0i64..5),
        h in (0i64..5, 0i64..5, 0i64..5),
        rho in 1i64..5,
    ) {
        type F = Fp<5>;
        // [[a, b], [c, (1 + bc)/a]] with a ≠ 0
        let build = |(a, b, c): (i64, i64, i64)| {
            let a = F::new(a.max(1));
            let (b, c) = (F::new(b), F::new(c));
            let d = (F::new(1) + b * c) * a.pow(3);
            [[a, b], [c, d]]
        };
        let (g, h) = (build(g), build(h));
        let gh = [
            [g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
            [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]],
        ];
        prop_assert_eq!(phi32(&g).unwrap().mul(&phi32(&h).unwrap()), phi32(&gh).unwrap());
        let v = v_rho(&F::new(rho));
        prop_assert_eq!(phi32(&g).unwrap().apply(&v), v);
    }

    #[test]
    fn orbit_class_changes_only_at_the_roots(a in nonzero_rat(), r in any_rat()) {
        let rho = &a * &a;
        let v = x_minus_alpha(&r).apply(&v_rho(&rho));
        let class = orbit_class(&v, &rho, Some(&a)).unwrap();
        let expected = if r == a {
            OrbitClass::Plus
        } else if r == -a.clone() {
            OrbitClass::Minus
        } else {
            OrbitClass::Mid
        };
        prop_assert_eq!(class, expected);
    }
}

#[test]
fn inversion_sets_agree_across_reduced_words() {
    for o in Orientation::ALL {
        for class in reduced_words(o) {
            let reference = class[0].inversion_set(o).unwrap();
            assert_eq!(reference.len(), class[0].len());
            for w in &class {
                assert_eq!(w.inversion_set(o).unwrap(), reference, "{w}");
            }
        }
        assert_eq!(weyl_group(o).len(), 12);
    }
}

#[test]
fn longest_p_representative_is_an_involution() {
    let o = Orientation::BetaLong;
    let w5 = degenerate_weyl_set(Parabolic::P, o).pop().unwrap();
    assert_eq!(w5.to_string(), "babab");
    assert!(w5.inverse().same_element(&w5, o));
}

#[test]
fn c_factors_of_w_i_are_prefixes_of_the_pairing_vector() {
    for n in [
        Order::Free,
        Order::Finite(1),
        Order::Finite(2),
        Order::Finite(3),
    ] {
        let chi = standard_inducing(n);
        let cvec = cvector(&chi).unwrap();
        for (i, w) in degenerate_weyl_set(Parabolic::P, Orientation::BetaLong)
            .iter()
            .enumerate()
        {
            let mut f = c_factors(w, &chi);
            let mut prefix = cvec[..i].to_vec();
            f.sort();
            prefix.sort();
            assert_eq!(f, prefix, "w_{i}");
        }
    }
}

#[test]
fn reflected_w5_product_inverts_the_w5_product() {
    let rel = Relations::global();
    let w5 = degenerate_weyl_set(Parabolic::P, Orientation::BetaLong)
        .pop()
        .unwrap();
    for n in 1..=3 {
        for s0 in [rat(1, 2), rat(5, 9), rat(2, 3), int(1), rat(7, 10)] {
            let chi = standard_inducing(Order::Finite(n));
            let shift = Gl1Char::constant(s0.clone()).with_var("t", int(1));
            let local = chi.substitute("s", &shift).unwrap();
            let forward = c_factors(&w5, &local);
            let back = c_factors(&w5, &local.weyl_act(&w5));
            let zero = Rat::zero();
            let val = |fs: &[Gl1Char]| {
                fs.iter()
                    .map(|a| apriori_valuation(a, "t").unwrap())
                    .sum::<i64>()
            };
            let (vf, vb) = (val(&forward), val(&back));
            let f = term_series(
                &forward,
                [&zero, &zero],
                "t",
                1 - vb,
                &int(1),
                OffLatticePolicy::AsUnit,
            )
            .unwrap();
            let b = term_series(
                &back,
                [&zero, &zero],
                "t",
                1 - vf,
                &int(1),
                OffLatticePolicy::AsUnit,
            )
            .unwrap();
            let prod = rel.normalize_series(&f.mul(&b).unwrap()).unwrap();
            assert!(prod.truncation() >= 1, "n={n}, s0={s0}");
            assert_eq!(prod.coefficient(0), CoeffPoly::one(), "n={n}, s0={s0}");
            for d in prod.start()..prod.truncation() {
                if d != 0 {
                    assert!(prod.coefficient(d).is_zero(), "n={n}, s0={s0}, d={d}");
                }
            }
        }
    }
}

#[test]
fn displayed_embedding_does_not_preserve_the_form() {
    // ac = 2, bd = 6 ≠ 0: x1x2 and x7x8 cross terms appear
    let g = [[int(2), int(3)], [int(1), int(2)]];
    let m = phi32(&g).unwrap();
    assert!(!preserves_form(&m));
    let mut x: [Rat; 8] = std::array::from_fn(|_| int(0));
    x[0] = int(1);
    x[1] = int(1);
    assert_eq!(form_value(&x), int(0));
    assert_eq!(form_value(&m.apply(&x)), int(8));
}

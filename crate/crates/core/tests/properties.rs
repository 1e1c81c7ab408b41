use cuspcad::classifier::gcd_free_basis;
use cuspcad::groebner::GroebnerBasis;
use cuspcad::interval::{eval_multi, Interval};
use cuspcad::poly::{discriminant, gcd, resultant, sylvester_resultant, Monomial};
use cuspcad::solver::count_real_solutions;
use cuspcad::univariate::{count_open, isolate_squarefree, simplest_rational, sturm_sequence};
use cuspcad::upoly::UPoly;
use cuspcad::{MonomialOrder, MultiPoly, PolySystem, Rational, VarList};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn vars(names: &[&str]) -> VarList {
    VarList::new(names)
}

fn poly_strategy(
    names: &'static [&'static str],
    terms: usize,
    deg: u16,
    coeff: i64,
) -> impl Strategy<Value = MultiPoly> {
    let n = names.len();
    prop::collection::vec((prop::collection::vec(0..=deg, n), -coeff..=coeff), 0..=terms).prop_map(move |ts| {
        let v = vars(names);
        MultiPoly::from_terms(
            &v,
            ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e.into_iter().map(|x| x as _)), rat(c))),
        )
    })
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

const XYZ: &[&str] = &["x", "y", "z"];
const XA: &[&str] = &["x", "a"];
const XY: &[&str] = &["x", "y"];

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(p in poly_strategy(XYZ, 5, 3, 9), q in poly_strategy(XYZ, 5, 3, 9), r in poly_strategy(XYZ, 4, 2, 9)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(p.pow(2), &p * &p);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly_strategy(XYZ, 5, 3, 9), q in poly_strategy(XYZ, 5, 3, 9),
                                pt in prop::collection::vec(rational_strategy(), 3)) {
        let e = |f: &MultiPoly| f.eval(&pt).unwrap();
        prop_assert_eq!(e(&(&p * &q)), e(&p) * e(&q));
        prop_assert_eq!(e(&(&p - &q)), e(&p) - e(&q));
    }

    #[test]
    fn text_and_json_round_trip(p in poly_strategy(XYZ, 6, 4, 30)) {
        let text = p.to_string();
        let back = MultiPoly::parse(&text, p.vars()).unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn derivative_obeys_leibniz(p in poly_strategy(XY, 4, 3, 9), q in poly_strategy(XY, 4, 3, 9)) {
        let lhs = (&p * &q).derivative("x").unwrap();
        let rhs = &(&p.derivative("x").unwrap() * &q) + &(&p * &q.derivative("x").unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_routes_agree(p in poly_strategy(XA, 4, 3, 6), q in poly_strategy(XA, 4, 3, 6)) {
        prop_assume!(p.degree_in(0) > 0 && q.degree_in(0) > 0);
        let sub = resultant(&p, &q, "x").unwrap();
        let syl = sylvester_resultant(&p, &q, "x").unwrap();
        prop_assert_eq!(&sub, &syl);
        let swapped = resultant(&q, &p, "x").unwrap();
        let sign = if p.degree_in(0) * q.degree_in(0) % 2 == 1 { rat(-1) } else { rat(1) };
        prop_assert_eq!(sub, swapped.scale(&sign));
    }

    #[test]
    fn resultant_is_multiplicative(p in poly_strategy(XA, 3, 2, 5), q in poly_strategy(XA, 3, 2, 5), r in poly_strategy(XA, 3, 2, 5)) {
        prop_assume!(p.degree_in(0) > 0 && q.degree_in(0) > 0 && r.degree_in(0) > 0);
        let lhs = resultant(&(&p * &q), &r, "x").unwrap();
        let rhs = &resultant(&p, &r, "x").unwrap() * &resultant(&q, &r, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_on_a_shared_factor(p in poly_strategy(XA, 3, 2, 5), q in poly_strategy(XA, 3, 2, 5), s in poly_strategy(XA, 2, 1, 5)) {
        prop_assume!(s.degree_in(0) > 0 && p.degree_in(0) + s.degree_in(0) > 0);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let res = resultant(&(&p * &s), &(&q * &s), "x").unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn discriminant_of_a_square_vanishes(p in poly_strategy(XA, 3, 2, 5)) {
        prop_assume!(p.degree_in(0) > 0);
        prop_assert!(discriminant(&(&p * &p), "x").unwrap().is_zero());
    }

    #[test]
    fn gcd_divides_both(p in poly_strategy(XY, 3, 2, 6), q in poly_strategy(XY, 3, 2, 6), s in poly_strategy(XY, 2, 2, 6)) {
        prop_assume!(!p.is_zero() && !q.is_zero() && !s.is_zero());
        let (a, b) = (&p * &s, &q * &s);
        let g = gcd(&a, &b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&s.primitive()).is_some() || s.is_constant());
    }

    #[test]
    fn groebner_invariants(gens in prop::collection::vec(poly_strategy(XY, 3, 2, 4), 1..=3), lex in any::<bool>()) {
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let gb = GroebnerBasis::compute(&gens, ord).unwrap();
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
        for g in gb.polys() {
            // basis elements lie in the ideal of the generators: they reduce to 0 modulo themselves
            prop_assert!(gb.normal_form(g).is_zero());
        }
        let again = GroebnerBasis::compute(gb.polys(), ord).unwrap();
        prop_assert_eq!(again.polys(), gb.polys());
        let reordered: Vec<MultiPoly> = gens.iter().rev().cloned().collect();
        let other = GroebnerBasis::compute(&reordered, ord).unwrap();
        prop_assert_eq!(other.polys(), gb.polys());
    }

    #[test]
    fn isolation_agrees_with_sturm(c in prop::collection::vec(-30i64..=30, 2..=10)) {
        let p = UPoly::from_i64(&c);
        prop_assume!(p.degree() > 0);
        let sf = p.squarefree_part();
        let roots = isolate_squarefree(&sf);
        let seq = sturm_sequence(&sf);
        prop_assert_eq!(roots.len(), count_open(&seq, None, None));
        for iv in &roots {
            if iv.is_exact() {
                prop_assert_eq!(sf.sign_at(&iv.lo), 0);
            } else {
                prop_assert_eq!(count_open(&seq, Some(&iv.lo), Some(&iv.hi)), 1);
                prop_assert!(sf.sign_at(&iv.lo) * sf.sign_at(&iv.hi) < 0);
            }
        }
        for w in roots.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn isolation_finds_known_rational_roots(rs in prop::collection::btree_set((-40i64..=40, 1i64..=6), 1..=6)) {
        let roots: std::collections::BTreeSet<Rational> = rs.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect();
        let p = roots.iter().fold(UPoly::one(), |acc, r| acc.mul(&UPoly::linear_root(r)));
        let found = isolate_squarefree(&p.squarefree_part());
        prop_assert_eq!(found.len(), roots.len());
        for (iv, r) in found.iter().zip(&roots) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
        }
    }

    #[test]
    fn simplest_rational_is_minimal(a in rational_strategy(), b in rational_strategy()) {
        prop_assume!(a < b);
        let s = simplest_rational(&Some((a.clone(), true)), &Some((b.clone(), true)));
        prop_assert!(a < s && s < b);
        // nothing strictly inside has a smaller denominator
        for d in 1..s.denom().try_into().unwrap_or(1i64) {
            let d = Rational::from_integer(d.into());
            let k = (&a * &d).floor() + Rational::one();
            prop_assert!(k.clone() / &d >= b, "{}/{} is simpler than {}", k, d, s);
        }
    }

    #[test]
    fn interval_evaluation_encloses_point_values(p in poly_strategy(XYZ, 5, 3, 9),
                                                 centre in prop::collection::vec(rational_strategy(), 3),
                                                 t in prop::collection::vec(0i64..=8, 3)) {
        let radius = Rational::new(1.into(), 4.into());
        let bx: Vec<Interval> = centre.iter().map(|c| Interval::around(c, &radius)).collect();
        let enc = eval_multi(&p, &bx);
        let pt: Vec<Rational> = centre.iter().zip(&t).map(|(c, k)| c - &radius + &radius * Rational::new((*k).into(), 4.into())).collect();
        prop_assert!(enc.contains(&p.eval(&pt).unwrap()));
    }

    #[test]
    fn gcd_free_basis_is_coprime_and_covers(p in poly_strategy(XY, 3, 2, 4), q in poly_strategy(XY, 3, 2, 4), s in poly_strategy(XY, 2, 1, 4)) {
        let inputs: Vec<MultiPoly> = [&p * &s, &q * &s].into_iter().filter(|f| !f.is_constant()).map(|f| cuspcad::poly::squarefree_part(&f)).collect();
        prop_assume!(!inputs.is_empty());
        let basis = gcd_free_basis(inputs.clone());
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                prop_assert!(gcd(&basis[i], &basis[j]).is_constant());
            }
        }
        // each input is, up to a constant, the product of the basis elements dividing it
        for f in &inputs {
            let mut rest = f.clone();
            for b in &basis {
                if let Some(q) = rest.div_exact(b) {
                    rest = q;
                }
            }
            prop_assert!(rest.is_constant(), "{} leaves {}", f, rest);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn solver_count_ignores_variable_order(a in -3i64..=3, b in -3i64..=3, c in 1i64..=6) {
        let e1 = format!("x^2+y^2-{c}");
        let e2 = format!("x*y+({a})*x+({b})*y-1");
        let sys = |eqs: [&str; 2], names: [&str; 2]| {
            let v = vars(&names);
            PolySystem::new(eqs.iter().map(|e| MultiPoly::parse(e, &v).unwrap()).collect(), vec![], &names, &[] as &[&str]).unwrap()
        };
        let n1 = count_real_solutions(&sys([&e1, &e2], ["x", "y"]));
        let n2 = count_real_solutions(&sys([&e2, &e1], ["y", "x"]));
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn solver_count_matches_product_oracle(a in -9i64..=9, b in -9i64..=9) {
        let names = ["x", "y"];
        let v = vars(&names);
        let eqs = vec![MultiPoly::parse(&format!("x^2-({a})"), &v).unwrap(), MultiPoly::parse(&format!("y^3-({b})*y"), &v).unwrap()];
        let sys = PolySystem::new(eqs, vec![], &names, &[] as &[&str]).unwrap();
        let roots_x = match a.signum() { 1 => 2, 0 => 1, _ => 0 };
        let roots_y = if b > 0 { 3 } else { 1 };
        prop_assert_eq!(count_real_solutions(&sys).unwrap(), roots_x * roots_y);
    }
}

#[test]
fn resultant_of_linear_factors_matches_root_products() {
    // Res((x - r1)(x - r2), x - s) = (s - r1)(s - r2) up to the sign convention
    let v = vars(&["x"]);
    let p = MultiPoly::parse("(x-2)*(x+3)", &v).unwrap();
    let q = MultiPoly::parse("x-5", &v).unwrap();
    let r = resultant(&p, &q, "x").unwrap().constant_value().unwrap();
    assert_eq!(r.abs(), rat(3 * 8));
}

//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`) and enforcing its runtime budget.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropical_ep::charpoly::{char_poly, eval_matrix, ParametricMatrix};
use tropical_ep::models::{
    hatano_nelson, presets, ssh_chain, three_site, two_site, HNParams, SSHParams, TrimerParams,
    TwoSiteParams,
};
use tropical_ep::newton_amoeba::{amoeba_sample, newton_polygon, GridSpec};
use tropical_ep::numerics::{
    cycle_type, eigenvalues, holonomy_trace, min_cost_assignment, polynomial_roots,
    splitting_exponent, DecadeRange, LoopMode, LoopSpec,
};
use tropical_ep::poly::UniPoly;
use tropical_ep::rational::{rational_from_str, Scalar};
use tropical_ep::tropical::{
    ep_order, trop_semiring, tropical_roots, tropicalize, valuation, EpKind, ExtendedInt, Fraction,
    TropicalPolynomial,
};

fn criterion(name: &str, budget: Duration, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("{name}: PASS ({elapsed:?})");
        }
        Ok(()) => {
            println!("{name}: FAIL (runtime {elapsed:?} exceeds budget {budget:?})");
            panic!("{name} exceeded its runtime budget");
        }
        Err(cause) => {
            println!("{name}: FAIL ({elapsed:?})");
            resume_unwind(cause);
        }
    }
}

fn br(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn fr(n: i64, d: i64) -> Fraction {
    Fraction::new(n, d)
}

fn trop_terms(terms: &[(u32, i64)]) -> TropicalPolynomial {
    TropicalPolynomial::new(
        terms
            .iter()
            .map(|(i, c)| (*i, ExtendedInt::Finite(*c)))
            .collect(),
    )
    .unwrap()
}

fn ssh_at_collapse(n: usize) -> ParametricMatrix {
    ssh_chain(&SSHParams::new(n, br(1), br(1), br(1)).unwrap()).unwrap()
}

fn hn_fourth_order() -> HNParams {
    let w = rational_from_str(presets::FRAC_1_SQRT_2).unwrap();
    HNParams::new(br(1), br(0), w.clone(), w).unwrap()
}

fn hn_generic_angles() -> HNParams {
    HNParams::new(
        BigRational::new(3.into(), 5.into()),
        BigRational::new(4.into(), 5.into()),
        BigRational::new(5.into(), 13.into()),
        BigRational::new(12.into(), 13.into()),
    )
    .unwrap()
}

#[test]
fn criterion_1_two_site_exact_pipeline() {
    criterion(
        "criterion 1 (two-site exact pipeline)",
        Duration::from_millis(100),
        || {
            let m = two_site(&TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap()).unwrap();
            let p = char_poly(&m);
            let trop = tropicalize(&p).unwrap();
            assert_eq!(trop, trop_terms(&[(0, 1), (2, 0)]));
            assert_eq!(trop.render(), "min(1, 2\u{3c9})");
            let roots = tropical_roots(&trop);
            assert_eq!(roots, vec![(fr(1, 2), 2)]);
            let cls = ep_order(&trop);
            assert_eq!(cls.kind, EpKind::Order(2));
        },
    );
}

#[test]
fn criterion_2_trimer_orders() {
    criterion(
        "criterion 2 (trimer orders at the stock angles)",
        Duration::from_millis(100),
        || {
            let tan_a = -rational_from_str(presets::INV_SQRT_3).unwrap();
            let third = three_site(&TrimerParams::balanced(br(1), tan_a).unwrap()).unwrap();
            let cls = ep_order(&tropicalize(&char_poly(&third)).unwrap());
            assert_eq!(cls.kind, EpKind::Order(3));

            let second = three_site(&TrimerParams::balanced(br(1), br(-1)).unwrap()).unwrap();
            let cls = ep_order(&tropicalize(&char_poly(&second)).unwrap());
            assert_eq!(cls.kind, EpKind::Order(2));
        },
    );
}

#[test]
fn criterion_3_ssh_collapse_and_generic() {
    criterion(
        "criterion 3 (open-chain collapse and generic hull)",
        Duration::from_secs(1),
        || {
            for n in [4usize, 5, 6, 8] {
                let p = char_poly(&ssh_at_collapse(n));
                let trop = tropicalize(&p).unwrap();
                assert_eq!(trop, trop_terms(&[(0, 1), (n as u32, 0)]));
                let cls = ep_order(&trop);
                assert_eq!(cls.kind, EpKind::Order(n as u32));
                let np = newton_polygon(&p).unwrap();
                assert!(np.is_segment(), "N = {n}: expected a 2-vertex segment");
                assert_eq!(np.hull.len(), 2);
            }
            for n in [4usize, 5, 6, 8] {
                let m = ssh_chain(&SSHParams::new(n, br(2), br(1), br(1)).unwrap()).unwrap();
                let p = char_poly(&m);
                let cls = ep_order(&tropicalize(&p).unwrap());
                if let Some(order) = cls.order() {
                    assert!(order < n as u32, "N = {n}: order {order}");
                }
                assert_ne!(cls.kind, EpKind::Order(n as u32));
                let np = newton_polygon(&p).unwrap();
                assert!(np.hull.len() >= 3, "N = {n}: hull {:?}", np.hull);
            }
        },
    );
}

#[test]
fn criterion_4_hatano_nelson_orders() {
    criterion(
        "criterion 4 (asymmetric-chain orders and tropicalization)",
        Duration::from_millis(100),
        || {
            let w = rational_from_str(presets::FRAC_1_SQRT_2).unwrap();
            let cases: [(HNParams, u32); 3] = [
                (hn_fourth_order(), 4),
                (HNParams::new(br(1), br(0), br(1), br(0)).unwrap(), 2),
                (HNParams::new(w.clone(), w, br(1), br(0)).unwrap(), 3),
            ];
            for (params, order) in cases {
                let cls =
                    ep_order(&tropicalize(&char_poly(&hatano_nelson(&params).unwrap())).unwrap());
                assert_eq!(cls.kind, EpKind::Order(order));
            }
            let trop =
                tropicalize(&char_poly(&hatano_nelson(&hn_generic_angles()).unwrap())).unwrap();
            assert_eq!(trop, trop_terms(&[(0, 1), (1, 1), (2, 1), (4, 0)]));
        },
    );
}

#[test]
fn criterion_5_disorder_universality() {
    criterion(
        "criterion 5 (disorder leaves the tropicalization invariant)",
        Duration::from_secs(5),
        || {
            let clean = hn_generic_angles();
            let reference = tropicalize(&char_poly(&hatano_nelson(&clean).unwrap())).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(20260810);
            for draw in 0..100 {
                let factors: [BigRational; 6] = std::array::from_fn(|_| loop {
                    let numer = rng.gen_range(-1000i64..=1000);
                    let denom = rng.gen_range(100i64..=1000);
                    if numer != 0 {
                        // non-zero rationals in [-10, 10]
                        break BigRational::new(numer.into(), denom.into());
                    }
                });
                let noisy = clean.clone().with_disorder(factors).unwrap();
                let trop = tropicalize(&char_poly(&hatano_nelson(&noisy).unwrap())).unwrap();
                assert_eq!(trop, reference, "draw {draw} changed the tropicalization");
            }
        },
    );
}

#[test]
fn criterion_6_tropical_numeric_consistency() {
    criterion(
        "criterion 6 (splitting exponents match 1/order within 0.02)",
        Duration::from_secs(30),
        || {
            let mut cases: Vec<(String, ParametricMatrix)> = vec![
                (
                    "two-site".into(),
                    two_site(&TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap()).unwrap(),
                ),
                (
                    "trimer third-order".into(),
                    three_site(
                        &TrimerParams::balanced(
                            br(1),
                            -rational_from_str(presets::INV_SQRT_3).unwrap(),
                        )
                        .unwrap(),
                    )
                    .unwrap(),
                ),
                (
                    "trimer second-order".into(),
                    three_site(&TrimerParams::balanced(br(1), br(-1)).unwrap()).unwrap(),
                ),
                (
                    "asymmetric chain order 4".into(),
                    hatano_nelson(&hn_fourth_order()).unwrap(),
                ),
                (
                    "asymmetric chain order 2".into(),
                    hatano_nelson(&HNParams::new(br(1), br(0), br(1), br(0)).unwrap()).unwrap(),
                ),
                (
                    "asymmetric chain order 3".into(),
                    hatano_nelson(
                        &HNParams::new(
                            rational_from_str(presets::FRAC_1_SQRT_2).unwrap(),
                            rational_from_str(presets::FRAC_1_SQRT_2).unwrap(),
                            br(1),
                            br(0),
                        )
                        .unwrap(),
                    )
                    .unwrap(),
                ),
            ];
            for n in [4usize, 5, 6, 8] {
                cases.push((format!("open chain N={n}"), ssh_at_collapse(n)));
            }
            for (label, m) in cases {
                let cls = ep_order(&tropicalize(&char_poly(&m)).unwrap());
                let order = cls
                    .order()
                    .unwrap_or_else(|| panic!("{label}: expected a finite order"));
                let fit = splitting_exponent(&m, DecadeRange { min: 3, max: 9 }).unwrap();
                let predicted = 1.0 / order as f64;
                assert!(
                    (fit.exponent - predicted).abs() <= 0.02,
                    "{label}: fit {} vs predicted {predicted}",
                    fit.exponent
                );
            }
        },
    );
}

#[test]
fn criterion_7_holonomy() {
    criterion(
        "criterion 7 (holonomy cycles and petals)",
        Duration::from_secs(60),
        || {
            let clean = hn_fourth_order();
            let spec = LoopSpec::new(0.1, 512, LoopMode::Enclosing).unwrap();
            let result = holonomy_trace(&hatano_nelson(&clean).unwrap(), &spec).unwrap();
            assert_eq!(cycle_type(&result.permutation), vec![4]);

            // scaling disorder: non-zero factors with magnitude in [1/2, 2]
            let mut rng = ChaCha8Rng::seed_from_u64(4404);
            for draw in 0..10 {
                let factors: [BigRational; 6] = std::array::from_fn(|_| {
                    let numer = rng.gen_range(8i64..=32);
                    let denom = 16i64;
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    BigRational::new((sign * numer).into(), denom.into())
                });
                let noisy = clean.clone().with_disorder(factors).unwrap();
                let result = holonomy_trace(&hatano_nelson(&noisy).unwrap(), &spec).unwrap();
                assert_eq!(
                    cycle_type(&result.permutation),
                    vec![4],
                    "draw {draw} broke the 4-cycle"
                );
            }

            let touching = LoopSpec::new(0.1, 512, LoopMode::Touching).unwrap();
            let result = holonomy_trace(&hatano_nelson(&clean).unwrap(), &touching).unwrap();
            assert_eq!(result.petal_count, Some(4));
        },
    );
}

#[test]
fn criterion_8_property_suites() {
    criterion(
        "criterion 8 (property suites)",
        Duration::from_secs(60),
        || {
            semiring_axioms(1000);
            valuation_axioms(1000);
            bend_locus_equals_hull(500);
            charpoly_identities(200);
            eigenvalues_match_exact_charpoly(100);
        },
    );
}

fn semiring_axioms(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let draw = |rng: &mut ChaCha8Rng| -> f64 {
        if rng.gen_bool(0.1) {
            f64::INFINITY
        } else {
            rng.gen_range(-50.0..50.0)
        }
    };
    for _ in 0..cases {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let (s_ab, p_ab) = trop_semiring(a, b);
        let (s_ba, p_ba) = trop_semiring(b, a);
        assert_eq!(s_ab, s_ba);
        assert!(p_ab == p_ba || (p_ab.is_nan() && p_ba.is_nan()));
        // associativity of both operations
        assert_eq!(
            trop_semiring(trop_semiring(a, b).0, c).0,
            trop_semiring(a, trop_semiring(b, c).0).0
        );
        let lhs = trop_semiring(trop_semiring(a, b).1, c).1;
        let rhs = trop_semiring(a, trop_semiring(b, c).1).1;
        assert!(lhs == rhs || (lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0));
        // distributivity: a . (b + c) = (a . b) + (a . c)
        assert_eq!(a + b.min(c), (a + b).min(a + c));
        // identities
        assert_eq!(trop_semiring(a, f64::INFINITY).0, a);
        assert_eq!(trop_semiring(a, 0.0).1, a);
    }
}

fn random_unipoly(rng: &mut ChaCha8Rng) -> UniPoly {
    let n_terms = rng.gen_range(0..5);
    UniPoly::from_terms((0..n_terms).map(|_| {
        let k = rng.gen_range(0u32..6);
        let re = rng.gen_range(-5i64..=5);
        let im = rng.gen_range(-5i64..=5);
        (k, Scalar::new(br(re), br(im)))
    }))
}

fn valuation_axioms(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(82);
    for _ in 0..cases {
        let f = random_unipoly(&mut rng);
        let g = random_unipoly(&mut rng);
        let vf = valuation(&f);
        let vg = valuation(&g);
        let vfg = valuation(&f.mul(&g));
        let expected = match (vf, vg) {
            (ExtendedInt::Finite(a), ExtendedInt::Finite(b)) => ExtendedInt::Finite(a + b),
            _ => ExtendedInt::Infinity,
        };
        assert_eq!(vfg, expected);
        let vsum = valuation(&f.add(&g));
        assert!(vsum >= vf.min(vg));
        if vf != vg {
            assert_eq!(vsum, vf.min(vg));
        }
    }
}

fn bend_locus_equals_hull(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..cases {
        let n_terms = rng.gen_range(1..7);
        let mut terms = std::collections::BTreeMap::new();
        for _ in 0..n_terms {
            terms.insert(rng.gen_range(0u32..8), rng.gen_range(-6i64..=6));
        }
        let t = TropicalPolynomial::new(
            terms
                .iter()
                .map(|(i, c)| (*i, ExtendedInt::Finite(*c)))
                .collect(),
        )
        .unwrap();
        let hull_roots: Vec<Fraction> = tropical_roots(&t).into_iter().map(|(r, _)| r).collect();

        // independent oracle: exhaustive rational tie enumeration over all
        // term pairs, keeping ties that attain the global minimum
        let term_list: Vec<(i64, i64)> = terms.iter().map(|(i, c)| (*i as i64, *c)).collect();
        let mut tie_roots: Vec<Fraction> = Vec::new();
        for a in 0..term_list.len() {
            for b in (a + 1)..term_list.len() {
                let (ia, ca) = term_list[a];
                let (ib, cb) = term_list[b];
                if ia == ib {
                    continue;
                }
                let w = Fraction::new(ca - cb, ib - ia);
                let value =
                    |i: i64, c: i64| Fraction::from_integer(c) + Fraction::from_integer(i) * w;
                let min = term_list.iter().map(|&(i, c)| value(i, c)).min().unwrap();
                let attained = term_list
                    .iter()
                    .filter(|&&(i, c)| value(i, c) == min)
                    .count();
                if attained >= 2 && !tie_roots.contains(&w) {
                    tie_roots.push(w);
                }
            }
        }
        tie_roots.sort();
        assert_eq!(hull_roots, tie_roots);
    }
}

/// Exact cofactor determinant, independent of Faddeev-LeVerrier.
fn det_cofactor(rows: &[Vec<UniPoly>]) -> UniPoly {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for (j, pivot) in rows[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = pivot.mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn charpoly_identities(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(84);
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        let mut m = ParametricMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let deg = rng.gen_range(0..=1u32);
                let re = rng.gen_range(-3i64..=3);
                let im = rng.gen_range(-3i64..=3);
                m.set(i, j, UniPoly::monomial(deg, Scalar::new(br(re), br(im))));
            }
        }
        let p = char_poly(&m);
        assert_eq!(p.lambda_coefficient(n as u32), UniPoly::one());
        assert_eq!(p.lambda_coefficient(n as u32 - 1), m.trace().neg());
        let rows: Vec<Vec<UniPoly>> = (0..n)
            .map(|r| (0..n).map(|c| m.get(r, c).clone()).collect())
            .collect();
        let det = det_cofactor(&rows);
        let expected = if n % 2 == 0 { det } else { det.neg() };
        assert_eq!(p.lambda_coefficient(0), expected);
    }
}

fn eigenvalues_match_exact_charpoly(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(85);
    for case in 0..cases {
        let n = 6;
        let mut m = ParametricMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let re = rng.gen_range(-2i64..=2);
                let im = rng.gen_range(-2i64..=2);
                m.set(i, j, UniPoly::constant(Scalar::new(br(re), br(im))));
            }
        }
        let a = eval_matrix(&m, Complex64::new(0.0, 0.0));
        let eigs = eigenvalues(&a).unwrap();
        let p = char_poly(&m);
        let coeffs = p.lambda_poly_at(Complex64::new(0.0, 0.0));
        let roots = polynomial_roots(&coeffs).unwrap();
        assert_eq!(eigs.len(), roots.len());
        // multiset agreement via optimal assignment
        let cost: Vec<f64> = eigs
            .iter()
            .flat_map(|e| roots.iter().map(move |r| (e - r).norm()))
            .collect();
        let (assignment, _) = min_cost_assignment(&cost, n);
        for (i, j) in assignment.iter().enumerate() {
            let d = (eigs[i] - roots[*j]).norm();
            assert!(d <= 1e-6, "case {case}: eigenvalue off by {d}");
        }
    }
}

#[test]
fn criterion_9_amoeba_structure() {
    criterion(
        "criterion 9 (amoeba tentacles and collapse line)",
        Duration::from_secs(60),
        || {
            // line amoeba: far points cluster on the three tentacle
            // directions
            let line = tropical_ep::poly::build_bipoly(vec![
                (0, 0, Scalar::one()),
                (0, 1, Scalar::one()),
                (1, 0, Scalar::one()),
            ])
            .unwrap();
            let grid = GridSpec {
                r_min: 1e-4,
                r_max: 1e4,
                radii: 100,
                angles: 128,
            };
            let cloud = amoeba_sample(&line, &grid).unwrap();
            let dirs: [(f64, f64); 3] = [(-1.0, 0.0), (0.0, -1.0), (1.0, 1.0)];
            let mut far = 0usize;
            let mut aligned = 0usize;
            for &(x, y) in &cloud.points {
                let norm = x.hypot(y);
                if norm <= 6.0 {
                    continue;
                }
                far += 1;
                if dirs.iter().any(|&(dx, dy)| {
                    let cosang = (x * dx + y * dy) / (norm * dx.hypot(dy));
                    cosang.clamp(-1.0, 1.0).acos() < 0.1
                }) {
                    aligned += 1;
                }
            }
            assert!(far > 200, "only {far} far points sampled");
            assert!(
                aligned as f64 >= 0.95 * far as f64,
                "{aligned} of {far} far points aligned"
            );

            // collapsed chain: every sampled point within 1e-6 of the single
            // line |lambda|^N = |c| |v|, whose slope has magnitude 1/N
            let n = 5usize;
            let p = char_poly(&ssh_at_collapse(n));
            let c_abs = p.lambda_coefficient(0).coefficient(1).to_complex64().norm();
            let cloud = amoeba_sample(&p, &grid).unwrap();
            assert!(!cloud.points.is_empty());
            let norm = ((n * n + 1) as f64).sqrt();
            let slope = 1.0 / n as f64;
            assert!((slope.abs() - 1.0 / n as f64).abs() < 1e-12);
            for &(x, y) in &cloud.points {
                let dist = (n as f64 * y - x - c_abs.ln()).abs() / norm;
                assert!(dist <= 1e-6, "point ({x}, {y}) off the line by {dist}");
            }
        },
    );
}

//! Cross-module consistency: the exact algebraic pipeline against the
//! floating verification layer.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropical_ep::charpoly::{char_poly, eval_matrix, ParametricMatrix};
use tropical_ep::models::{
    hatano_nelson, presets, three_site, two_site, HNParams, TrimerParams, TwoSiteParams,
};
use tropical_ep::newton_amoeba::{amoeba_sample, detect_hole, GridSpec};
use tropical_ep::numerics::{
    cycle_type, eigenvalues, holonomy_trace, polynomial_roots, LoopMode, LoopSpec,
};
use tropical_ep::poly::{build_bipoly, BiPoly, UniPoly};
use tropical_ep::rational::{rational_from_str, Scalar};
use tropical_ep::tropical::{ep_order, tropical_roots, tropicalize, Fraction};

fn br(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn charpoly_is_numerically_consistent_with_eigenvalues() {
    // for random unit-circle v, every eigenvalue of the evaluated matrix is
    // a root of the exact characteristic polynomial up to 1e-8 * ||M||^n
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut m = ParametricMatrix::zero(4);
    for i in 0..4 {
        for j in 0..4 {
            let deg = rng.gen_range(0..=1u32);
            m.set(
                i,
                j,
                UniPoly::monomial(
                    deg,
                    Scalar::new(br(rng.gen_range(-2..=2)), br(rng.gen_range(-2..=2))),
                ),
            );
        }
    }
    let p = char_poly(&m);
    for _ in 0..100 {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let nu = Complex64::from_polar(1.0, theta);
        let a = eval_matrix(&m, nu);
        let bound = 1e-8 * a.frobenius_norm().powi(4);
        for lambda in eigenvalues(&a).unwrap() {
            let residual = p.eval(nu, lambda).norm();
            assert!(
                residual <= bound,
                "residual {residual} above bound {bound} at nu = {nu}"
            );
        }
    }
}

#[test]
fn fundamental_theorem_desk_check() {
    // the valuations of the non-zero roots are exactly the tropical roots:
    // checked by fitting per-rank log-modulus slopes over deep decades,
    // which cancels the leading Puiseux coefficient that a single-point
    // quotient cannot remove
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let decades: Vec<f64> = (4..=8).map(|k| 10f64.powi(-k)).collect();
    let mut checked = 0usize;
    while checked < 40 {
        let n_terms = rng.gen_range(2..7);
        let lambda_deg = rng.gen_range(1i64..=4);
        let mut terms: Vec<(i64, i64, Scalar)> = (0..n_terms)
            .map(|_| {
                let i = rng.gen_range(0i64..=lambda_deg);
                let k = rng.gen_range(0i64..=3);
                let pick = [-4i64, -3, -2, -1, 1, 2, 3, 4];
                let re = pick[rng.gen_range(0..pick.len())];
                (i, k, Scalar::from_int(re))
            })
            .collect();
        // pin a v-independent leading coefficient, as every characteristic
        // polynomial has; this keeps all tropical roots non-negative and
        // the root moduli within double-precision reach
        terms.push((lambda_deg, 0, Scalar::one()));
        let p = build_bipoly(terms).unwrap();
        if p.lambda_degree().unwrap_or(0) == 0 {
            continue;
        }
        let trop = tropicalize(&p).unwrap();
        let roots = tropical_roots(&trop);
        if roots.is_empty() {
            continue;
        }
        // skip spreads that would drive root moduli below what a double
        // eigensolver resolves at the deepest decade
        let spread = roots.last().unwrap().0 - roots.first().unwrap().0;
        if spread > Fraction::new(3, 2) {
            continue;
        }
        checked += 1;

        // expected slopes: tropical roots expanded by multiplicity,
        // descending (the fastest-vanishing root has the smallest modulus)
        let mut expected: Vec<f64> = Vec::new();
        for (r, mult) in &roots {
            for _ in 0..*mult {
                expected.push(*r.numer() as f64 / *r.denom() as f64);
            }
        }
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());

        // per-decade sorted log-moduli of the non-zero roots
        let mut per_rank: Vec<Vec<(f64, f64)>> = vec![Vec::new(); expected.len()];
        for &nu_val in &decades {
            let nu = Complex64::new(nu_val, 0.0);
            let coeffs = p.lambda_poly_at(nu);
            let mut mods: Vec<f64> = polynomial_roots(&coeffs)
                .unwrap()
                .into_iter()
                .map(|z| z.norm())
                .filter(|m| *m > 1e-300)
                .collect();
            mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(
                mods.len(),
                expected.len(),
                "non-zero root count disagrees with hull width for {p:?}"
            );
            for (rank, m) in mods.iter().enumerate() {
                per_rank[rank].push((nu_val.ln(), m.ln()));
            }
        }
        for (rank, pts) in per_rank.iter().enumerate() {
            let n = pts.len() as f64;
            let mx = pts.iter().map(|(x, _)| x).sum::<f64>() / n;
            let my = pts.iter().map(|(_, y)| y).sum::<f64>() / n;
            let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
            let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
            let slope = sxy / sxx;
            assert!(
                (slope - expected[rank]).abs() <= 0.02,
                "rank {rank}: slope {slope} vs tropical root {} for {p:?}",
                expected[rank]
            );
        }
    }
}

#[test]
fn holonomy_order_matches_ep_order() {
    // a loop enclosing a single order-N point permutes the N coalescing
    // branches cyclically
    let spec = LoopSpec::new(0.1, 256, LoopMode::Enclosing).unwrap();

    let m2 = two_site(&TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap()).unwrap();
    let r = holonomy_trace(&m2, &spec).unwrap();
    assert_eq!(cycle_type(&r.permutation), vec![2]);

    let m3 = three_site(
        &TrimerParams::balanced(br(1), -rational_from_str(presets::INV_SQRT_3).unwrap()).unwrap(),
    )
    .unwrap();
    let r = holonomy_trace(&m3, &spec).unwrap();
    assert_eq!(cycle_type(&r.permutation), vec![3]);

    let w = rational_from_str(presets::FRAC_1_SQRT_2).unwrap();
    let m4 = hatano_nelson(&HNParams::new(br(1), br(0), w.clone(), w).unwrap()).unwrap();
    let r = holonomy_trace(&m4, &spec).unwrap();
    assert_eq!(cycle_type(&r.permutation), vec![4]);

    // in each case the permutation order equals the tropical order
    for (m, expect) in [(m2, 2u32), (m3, 3), (m4, 4)] {
        let cls = ep_order(&tropicalize(&char_poly(&m)).unwrap());
        assert_eq!(cls.order(), Some(expect));
    }
}

#[test]
fn hermitian_loop_is_identity() {
    let m = two_site(&TwoSiteParams::new(Scalar::one(), Scalar::zero()).unwrap()).unwrap();
    let spec = LoopSpec::new(0.1, 128, LoopMode::Enclosing).unwrap();
    let r = holonomy_trace(&m, &spec).unwrap();
    assert_eq!(cycle_type(&r.permutation), vec![1, 1]);
    assert_eq!(r.petal_count, None);
}

#[test]
fn disordered_loop_keeps_cycle_type() {
    let w = rational_from_str(presets::FRAC_1_SQRT_2).unwrap();
    let clean = HNParams::new(br(1), br(0), w.clone(), w).unwrap();
    let noisy = clean
        .clone()
        .with_disorder([
            BigRational::new(5.into(), 4.into()),
            BigRational::new(3.into(), 4.into()),
            BigRational::new(7.into(), 8.into()),
            BigRational::new(9.into(), 8.into()),
            BigRational::new(11.into(), 8.into()),
            BigRational::new(13.into(), 16.into()),
        ])
        .unwrap();
    let spec = LoopSpec::new(0.1, 256, LoopMode::Enclosing).unwrap();
    let a = holonomy_trace(&hatano_nelson(&clean).unwrap(), &spec).unwrap();
    let b = holonomy_trace(&hatano_nelson(&noisy).unwrap(), &spec).unwrap();
    assert_eq!(cycle_type(&a.permutation), cycle_type(&b.permutation));
}

#[test]
fn trimer_amoeba_has_a_bounded_hole() {
    // the interior lattice point of the trimer polygon shows up as a
    // bounded complement component in the sampled amoeba
    let p = char_poly(
        &three_site(
            &TrimerParams::balanced(br(1), -rational_from_str(presets::INV_SQRT_3).unwrap())
                .unwrap(),
        )
        .unwrap(),
    );
    // hole detection needs the full sampling density: sparser grids leave
    // gaps in the amoeba boundary that leak the hole to the window border
    let grid = GridSpec::default();
    let cloud = amoeba_sample(&p, &grid).unwrap();
    let report = detect_hole(&cloud, 4.0, 64);
    assert!(report.has_hole, "expected a bounded complement component");

    let np = tropical_ep::newton_amoeba::newton_polygon(&p).unwrap();
    assert_eq!(np.interior_lattice_points().len(), 1);

    // the two-site amoeba has no interior lattice points and no hole
    let p2 =
        char_poly(&two_site(&TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap()).unwrap());
    let cloud2 = amoeba_sample(&p2, &grid).unwrap();
    assert!(!detect_hole(&cloud2, 4.0, 64).has_hole);
    let np2 = tropical_ep::newton_amoeba::newton_polygon(&p2).unwrap();
    assert!(np2.interior_lattice_points().is_empty());
}

#[test]
fn ssh_even_chain_order_two_at_partial_collapse() {
    // with gamma matching only the intra-cell hopping the even chain keeps
    // a double zero that splits at order two
    let m = tropical_ep::models::ssh_chain(
        &tropical_ep::models::SSHParams::new(4, br(1), br(2), br(1)).unwrap(),
    )
    .unwrap();
    let p = char_poly(&m);
    let cls = ep_order(&tropicalize(&p).unwrap());
    // t2 != gamma: leftward inter-cell hops survive, no full collapse
    assert_ne!(cls.kind, tropical_ep::tropical::EpKind::Order(4));
}

#[test]
fn two_site_tropical_root_matches_closed_form() {
    // closed form: lambda = +/- sqrt(v^2 + 2iv) has leading exponent 1/2
    let m = two_site(&TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap()).unwrap();
    let roots = tropical_roots(&tropicalize(&char_poly(&m)).unwrap());
    assert_eq!(roots, vec![(Fraction::new(1, 2), 2)]);
    let nu = Complex64::new(1e-8, 0.0);
    let closed = (nu * nu + Complex64::new(0.0, 2.0) * nu).sqrt();
    let coeffs = char_poly(&m).lambda_poly_at(nu);
    let numeric = polynomial_roots(&coeffs).unwrap();
    assert!(numeric
        .iter()
        .any(|z| (z - closed).norm() < 1e-10 * closed.norm().max(1e-30)));
}

#[test]
fn monomial_amoeba_is_an_error_path() {
    let p = BiPoly::monomial(2, 1, Scalar::one());
    // depends on both variables but is a single monomial: the sampled
    // solution set is empty of non-zero points, so the cloud is empty
    let grid = GridSpec {
        r_min: 1e-1,
        r_max: 1e1,
        radii: 4,
        angles: 8,
    };
    let cloud = amoeba_sample(&p, &grid).unwrap();
    assert!(cloud.points.is_empty());
}

use num_complex::Complex64;
use proptest::prelude::*;
use twobridge::charvar::{nonabelian_poly, slice_roots};
use twobridge::epi_pipeline::{
    build_map_plan, covering_info, epi_report, longitude_image, tower_generate, DomainKind, EpiOptions, Status,
    TowerParams,
};
use twobridge::farey_action::{orbit_enumerate, OrbitCertificate};
use twobridge::invariants::{alexander, alexander_from_even_cf, divides, LaurentPoly};
use twobridge::presentation::{plat_braid, upper_presentation, Gen, PlatDiagram};
use twobridge::rational_cf::{cf_canonical, cf_even, ContFrac};
use twobridge::schubert::{components, epi_candidate};
use twobridge::Slope;

type M2 = [Complex64; 4];

fn mul(x: &M2, y: &M2) -> M2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn inv(x: &M2) -> M2 {
    [x[3], -x[1], -x[2], x[0]]
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn norm(x: &M2) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Builds the pair `A, B` with `tr A = tr B = x0` and `tr AB⁻¹ = y`, and
/// measures how far it is from satisfying the relator `a·w·b^e·w⁻¹` of the
/// upper presentation of the knot, written as `A W = W B^{-e}`. The defect
/// is relative to the size of the unreduced product.
fn relator_defect(slope: Slope, x0: f64, y: Complex64) -> (f64, Complex64) {
    let s = (c(x0) + (c(x0 * x0 - 4.0)).sqrt()) / 2.0;
    let u = c(2.0) - y;
    let a: M2 = [s, c(1.0), c(0.0), s.inv()];
    let b: M2 = [s, c(0.0), u, s.inv()];
    let pres = upper_presentation(slope);
    let mut w: M2 = [c(1.0), c(0.0), c(0.0), c(1.0)];
    // rounding in the product scales with the product of the factor norms
    let mut scale = 1.0;
    for (g, e) in pres.w.letters() {
        let step = match (g, e > 0) {
            (Gen::A, true) => a,
            (Gen::A, false) => inv(&a),
            (Gen::B, true) => b,
            (Gen::B, false) => inv(&b),
        };
        w = mul(&w, &step);
        scale *= norm(&step);
    }
    let b_side = if slope.num() % 2 == 0 { inv(&b) } else { b };
    let (lhs, rhs) = (mul(&a, &w), mul(&w, &b_side));
    let diff: M2 = [lhs[0] - rhs[0], lhs[1] - rhs[1], lhs[2] - rhs[2], lhs[3] - rhs[3]];
    let defect = norm(&diff) / (norm(&a).max(norm(&b)) * scale);
    let ab_inv = mul(&a, &inv(&b));
    (defect, ab_inv[0] + ab_inv[3])
}

fn knot_strategy() -> impl Strategy<Value = Slope> {
    (1i128..16, 1i128..200).prop_filter_map("knot", |(h, q)| {
        let p = 2 * h + 1;
        let s = Slope::new(q % p, p).ok()?;
        (s.den() == p && p >= 3).then_some(s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_roots_are_representations(slope in knot_strategy(), x0 in -2.9f64..2.9) {
        let phi = nonabelian_poly(slope).unwrap();
        prop_assert_eq!(phi.deg_y() as i128, (slope.den() - 1) / 2);
        for y in slice_roots(slope, x0).unwrap() {
            let (defect, trace) = relator_defect(slope, x0, y);
            prop_assert!(defect < 1e-8, "{} at x={} y={}: defect {}", slope, x0, y, defect);
            prop_assert!((trace - y).norm() < 1e-8);
        }
    }

    #[test]
    fn even_expansion_route_matches_fox(slope in knot_strategy()) {
        // K(q/p) = K((q+p)/p), and one of the two has an even numerator
        let even_rep = if slope.num() % 2 == 0 { slope } else { slope.add_int(1) };
        let e = cf_even(even_rep).unwrap();
        let unshifted = ContFrac::new(e.entries().to_vec());
        let from_cf = alexander_from_even_cf(&unshifted).unwrap();
        let fox = alexander(slope);
        prop_assert!(from_cf.associate(&fox), "{}: {} vs {}", slope, from_cf, fox);
        prop_assert_eq!(fox.eval_int(1).map(i128::abs), Some(1));
        prop_assert_eq!(fox.span(), Some(e.len()));
    }

    #[test]
    fn relator_depends_on_q_mod_2p(slope in knot_strategy(), k in -3i128..3) {
        let shifted = Slope::new(slope.num() + 2 * k * slope.den(), slope.den()).unwrap();
        prop_assert_eq!(upper_presentation(slope).relator, upper_presentation(shifted).relator);
    }

    #[test]
    fn plans_satisfy_inventory(
        q in 1i128..40, p in 2i128..40,
        signs in prop::collection::vec(prop::bool::ANY, 1..7),
        mids in prop::collection::vec(prop_oneof![-3i64..0, 1i64..4], 6),
    ) {
        let r = Slope::new(q, p).unwrap();
        prop_assume!(!r.is_integer() && r < Slope::integer(1));
        let a = cf_canonical(r).unwrap();
        let signs: Vec<i8> = signs.into_iter().map(|b| if b { 1 } else { -1 }).collect();
        let cert = OrbitCertificate::from_pattern(&a, 0, &signs, &mids[..signs.len() - 1]).unwrap();
        let plan = build_map_plan(&cert).unwrap();
        let n = plan.blocks.len() as i64;
        prop_assert!(plan.degree.abs() <= n);
        prop_assert_eq!((plan.degree - n).rem_euclid(2), 0);
        prop_assert_eq!(plan.degree, plan.certificate_degree());
        prop_assert!(plan.blocks.windows(2).all(|w| w[0].delta == -w[1].delta));
        let mirrors = plan.cdomains.iter().filter(|d| d.kind == DomainKind::Mirror).count();
        let rotations = plan.cdomains.len() - mirrors;
        prop_assert_eq!(plan.branch_lines + plan.fold_spheres, rotations + 3 * mirrors);
        let cov = covering_info(&plan);
        if signs.iter().all(|&e| e > 0) {
            prop_assert_eq!(cov.sheets, Some(signs.len()));
            prop_assert_eq!(plan.degree, n);
        } else {
            prop_assert!(!cov.applicable);
        }
    }
}

#[test]
fn trefoil_pair_is_parabolic() {
    // A = [[1,1],[0,1]], B = [[1,0],[-1,1]]: x = 2, y = 3
    let (defect, trace) = relator_defect("1/3".parse().unwrap(), 2.0, c(3.0));
    assert!(defect < 1e-12);
    assert!((trace - 3.0).norm() < 1e-12);
}

#[test]
fn enumerated_pairs_are_never_rejected() {
    let opts = EpiOptions { fq_orders: vec![3], ..EpiOptions::default() };
    for r in ["1/3", "2/5", "3/7", "1/4"] {
        let r: Slope = r.parse().unwrap();
        let found = orbit_enumerate(r, 3, 1, 60).unwrap();
        for (&v, _) in found.iter().filter(|(v, _)| !v.is_infinite()).take(8) {
            let rep = epi_report(v, r, &opts).unwrap();
            assert_eq!(rep.status, Status::CandidateVerified, "{v} over {r}");
        }
    }
}

#[test]
fn alexander_polynomials_divide_along_towers() {
    let t = tower_generate("2/5".parse().unwrap(), 2, &TowerParams::default()).unwrap();
    let polys: Vec<LaurentPoly> = t.expansions.iter().map(|e| alexander_from_even_cf(e).unwrap()).collect();
    for w in polys.windows(2) {
        assert!(divides(&w[0], &w[1]));
    }
    for w in t.slopes.windows(2) {
        assert!(epi_candidate(w[1], w[0]).unwrap().orbit_candidate);
    }
    for cert in &t.certificates {
        let plan = build_map_plan(cert).unwrap();
        assert_eq!(plan.degree, 3);
        assert_eq!(covering_info(&plan).sheets, Some(3));
    }
}

#[test]
fn longitudes_follow_component_counts() {
    let a = cf_canonical("2/5".parse().unwrap()).unwrap();
    for (signs, mids) in [(vec![1i8, -1], vec![1i64]), (vec![1, 1, 1], vec![1, 1])] {
        let cert = OrbitCertificate::from_pattern(&a, 0, &signs, &mids).unwrap();
        let v = cert.continued_fraction().unwrap().eval();
        let plan = build_map_plan(&cert).unwrap();
        let img = longitude_image(&plan, v, "2/5".parse().unwrap(), None);
        if components(v) == 2 && plan.degree % 2 != 0 {
            assert!(img.is_err());
        } else {
            assert!(img.is_ok(), "{v}");
        }
    }
}

#[test]
fn diagrams_of_enumerated_knots_share_alexander() {
    for (v, _) in orbit_enumerate("1/3".parse().unwrap(), 3, 1, 80).unwrap() {
        if v.is_infinite() || components(v) != 1 {
            continue;
        }
        let d = PlatDiagram::from_braid(&plat_braid(v).unwrap());
        assert!(d.alexander().associate(&alexander(v)), "{v}");
    }
}

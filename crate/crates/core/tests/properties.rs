use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use tsgeom_core::connection::levi_civita;
use tsgeom_core::curvature::CurvatureBundle;
use tsgeom_core::fixtures;
use tsgeom_core::manifest::Manifest;
use tsgeom_core::manifold::{FrameManifold, Mode};
use tsgeom_core::scalar::{Linear, Rational, ScalarExpr, DIM};
use tsgeom_core::structure::{detect_trans_sasakian, identity_suite_constant, identity_suite_general};

fn seeded(cases: u32) -> ProptestConfig {
    ProptestConfig {
        rng_seed: RngSeed::Fixed(0x7353),
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn atom(k: u8) -> ScalarExpr {
    let lin = |c: [i64; 3]| Linear(c.map(|v| rat(v, 1)));
    match k % 9 {
        0 => ScalarExpr::one(),
        1 => ScalarExpr::var(0),
        2 => ScalarExpr::var(1),
        3 => &ScalarExpr::var(0) * &ScalarExpr::var(2),
        4 => ScalarExpr::exp(lin([0, 0, 1])),
        5 => ScalarExpr::exp(lin([-1, 0, 2])),
        6 => ScalarExpr::sin(&lin([1, 1, 0])),
        7 => ScalarExpr::cos(&lin([0, 0, 2])),
        _ => ScalarExpr::var(1).pow(2),
    }
}

fn scalar() -> impl Strategy<Value = ScalarExpr> {
    prop::collection::vec((-5i64..=5, 1i64..=3, any::<u8>()), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(n, d, k)| atom(k).scale(&rat(n, d)))
            .sum()
    })
}

fn point() -> impl Strategy<Value = [f64; DIM]> {
    prop::array::uniform3(-1.0f64..1.0)
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn five_point(f: &ScalarExpr, x: &[f64; DIM], dir: usize) -> f64 {
    let h = 1e-3;
    let at = |s: f64| {
        let mut y = *x;
        y[dir] += s;
        f.eval(&y)
    };
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

proptest! {
    #![proptest_config(seeded(64))]

    #[test]
    fn derivative_is_linear(f in scalar(), g in scalar(), a in coefficient(), b in coefficient(), dir in 0..DIM) {
        let lhs = (&f.scale(&a) + &g.scale(&b)).diff(dir);
        let rhs = &f.diff(dir).scale(&a) + &g.diff(dir).scale(&b);
        prop_assert!((&lhs - &rhs).is_canonical_zero());
    }

    #[test]
    fn derivative_obeys_leibniz(f in scalar(), g in scalar(), dir in 0..DIM) {
        let lhs = (&f * &g).diff(dir);
        let rhs = &(&f.diff(dir) * &g) + &(&f * &g.diff(dir));
        prop_assert!((&lhs - &rhs).is_canonical_zero());
    }

    #[test]
    fn mixed_partials_commute(f in scalar(), i in 0..DIM, j in 0..DIM) {
        prop_assert_eq!(f.diff(i).diff(j), f.diff(j).diff(i));
    }

    #[test]
    fn derivative_matches_finite_differences(f in scalar(), x in point(), dir in 0..DIM) {
        let exact = f.diff(dir).eval(&x);
        let approx = five_point(&f, &x, dir);
        prop_assert!((exact - approx).abs() / exact.abs().max(1.0) < 1e-5, "{} vs {}", exact, approx);
    }

    #[test]
    fn canonical_form_is_unique(f in scalar(), g in scalar()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_canonical_zero());
        prop_assert_eq!(&(&f * &g) - &(&g * &f), ScalarExpr::zero());
    }

    #[test]
    fn display_reparses(f in scalar()) {
        let back: ScalarExpr = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in scalar(), g in scalar(), x in point()) {
        let (a, b) = (f.eval(&x), g.eval(&x));
        prop_assert!(((&f * &g).eval(&x) - a * b).abs() < 1e-9 * (1.0 + (a * b).abs()));
        prop_assert!(((&f + &g).eval(&x) - (a + b)).abs() < 1e-9 * (1.0 + a.abs() + b.abs()));
    }
}

/// Warped frame `e1 = exp(a z)∂x, e2 = exp(a z)∂y, e3 = ∂z` with the standard φ.
fn warped(a: i64) -> String {
    let f = format!("exp({a}*z)");
    format!(
        "format_version = 1\nmode = \"chart\"\nframe = [[\"{f}\",\"0\",\"0\"],[\"0\",\"{f}\",\"0\"],[\"0\",\"0\",\"1\"]]\n\
         phi = [[\"0\",\"1\",\"0\"],[\"-1\",\"0\",\"0\"],[\"0\",\"0\",\"0\"]]\nxi = [\"0\",\"0\",\"1\"]\n"
    )
}

/// Milnor frame: `[e2,e3] = n1 e1`, `[e3,e1] = n2 e2`, `[e1,e2] = n3 e3`.
fn milnor(n: [i64; 3]) -> FrameManifold {
    let mut c: [[[Rational; DIM]; DIM]; DIM] = Default::default();
    for (k, (i, j)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        c[i][j][k] = rat(n[k], 1);
        c[j][i][k] = rat(-n[k], 1);
    }
    FrameManifold::lie(c, None).expect("unimodular constants satisfy Jacobi")
}

fn assert_riemannian_invariants(m: &FrameManifold) {
    let c = levi_civita(m).unwrap();
    assert!(c.torsion_defects(m).is_empty());
    assert!(c.metric_compatibility_defects(m).unwrap().is_empty());
    let k = CurvatureBundle::compute(m, &c, None).unwrap();
    assert!(k.skew_defects().is_empty());
    assert!(k.pair_skew_defects(m).is_empty());
    assert!(k.bianchi_defects().is_empty());
    assert!(k.ricci_defects(m).iter().all(|(_, d)| d.is_zero()));
}

proptest! {
    #![proptest_config(seeded(24))]

    #[test]
    fn warped_frames_are_beta_kenmotsu(a in -4i64..=4) {
        let manifest = Manifest::parse(&warped(a)).unwrap();
        let m = manifest.manifold().unwrap();
        assert_riemannian_invariants(&m);
        let c = levi_civita(&m).unwrap();
        let cs = manifest.contact_structure(&m).unwrap();
        let ts = detect_trans_sasakian(&m, &c, &cs).unwrap();
        prop_assert!(ts.is_trans_sasakian());
        prop_assert_eq!(&ts.alpha, &ScalarExpr::zero());
        prop_assert_eq!(&ts.beta, &ScalarExpr::int(-a));
        let k = CurvatureBundle::compute(&m, &c, Some(cs.phi())).unwrap();
        prop_assert!(identity_suite_constant(&m, &cs, &k, &ts.alpha, &ts.beta).unwrap().all_pass());
        prop_assert!(identity_suite_general(&m, &cs, &k, &ts.alpha, &ts.beta).unwrap().all_pass());
    }

    #[test]
    fn unimodular_lie_frames_satisfy_curvature_invariants(n in prop::array::uniform3(-3i64..=3)) {
        let m = milnor(n);
        prop_assert_eq!(m.mode(), Mode::Lie);
        assert_riemannian_invariants(&m);
    }

    #[test]
    fn manifests_round_trip(a in -4i64..=4, bp in prop::array::uniform3(-9i64..=9)) {
        let text = format!(
            "{}base_point = [\"{}\", \"{}/2\", \"{}\"]\n[[soliton]]\nkind = \"conformal_ricci\"\nv = [\"x\", \"sin(y)\", \"0\"]\np = \"{}/3\"\nlambda = \"solve\"\n",
            warped(a), bp[0], bp[1], bp[2], bp[0]
        );
        let m = Manifest::parse(&text).unwrap();
        let again = Manifest::parse(&m.to_toml()).unwrap();
        prop_assert_eq!(again, m);
    }
}

#[test]
fn bundled_fixtures_round_trip() {
    for (name, text) in fixtures::ALL {
        let m = Manifest::parse(text).unwrap();
        assert_eq!(Manifest::parse(&m.to_toml()).unwrap(), m, "{name}");
    }
}

use cyclekit::hypercomplex::{iwasawa, moebius};
use cyclekit::invariants::{bilinear, reflect};
use cyclekit::{Cycle, FsccParams, GroupElement, HyperNumber, IwasawaFactors, Sigma};
use proptest::prelude::*;

fn sigma() -> impl Strategy<Value = Sigma> {
    prop::sample::select(Sigma::ALL.to_vec())
}

fn hyper(s: Sigma) -> impl Strategy<Value = HyperNumber> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(move |(x, y)| HyperNumber::new(x, y, s))
}

fn group() -> impl Strategy<Value = GroupElement> {
    (0.3..3.0f64, -2.0..2.0f64, -3.0..3.0f64).prop_map(|(alpha, nu, phi)| IwasawaFactors { alpha, nu, phi }.recompose())
}

fn cycle() -> impl Strategy<Value = Cycle> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(Cycle::from_array).prop_filter("nonzero", |c| c.norm() > 0.1)
}

fn params() -> impl Strategy<Value = FsccParams> {
    (sigma(), 0.5..2.0f64).prop_map(|(s, t)| FsccParams::with_s(s, t))
}

fn near(a: HyperNumber, b: HyperNumber) -> bool {
    (a.re - b.re).abs() + (a.im - b.im).abs() < 1e-9 * (1.0 + a.re.abs() + a.im.abs())
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(
        (a, b, c) in sigma().prop_flat_map(|s| (hyper(s), hyper(s), hyper(s)))
    ) {
        let ab = a.try_mul(b).unwrap();
        prop_assert!(near(ab, b.try_mul(a).unwrap()));
        prop_assert!(near(ab.try_mul(c).unwrap(), a.try_mul(b.try_mul(c).unwrap()).unwrap()));
    }

    #[test]
    fn conjugate_product_is_norm(z in sigma().prop_flat_map(hyper)) {
        let w = z.try_mul(z.conj()).unwrap();
        prop_assert!((w.re - z.norm_sq()).abs() < 1e-9 && w.im.abs() < 1e-12);
    }

    #[test]
    fn moebius_composes(g in group(), h in group(), x in -2.0..2.0f64, y in 0.1..2.0f64) {
        let z = HyperNumber::new(x, y, Sigma::Elliptic);
        let two = moebius(&g, moebius(&h, z).unwrap()).unwrap();
        let one = moebius(&g.compose(&h), z).unwrap();
        prop_assert!(near(one, two));
    }

    #[test]
    fn iwasawa_round_trip(g in group()) {
        prop_assert!(iwasawa(&g).recompose().max_diff(&g) < 1e-10);
    }

    #[test]
    fn transform_is_an_action(c in cycle(), g in group(), h in group(), p in params()) {
        let two = c.transform(&h, p).transform(&g, p);
        let one = c.transform(&g.compose(&h), p);
        prop_assert!(one.projective_distance(&two) < 1e-8, "{one:?} {two:?}");
    }

    #[test]
    fn pairing_is_invariant(a in cycle(), b in cycle(), g in group(), p in params()) {
        let before = bilinear(&a, &b, p);
        let after = bilinear(&a.transform(&g, p), &b.transform(&g, p), p);
        prop_assert!((before - after).abs() < 1e-7 * (1.0 + before.abs()), "{before} {after}");
    }

    #[test]
    fn reflection_is_an_involution(mirror in cycle(), c in cycle(), p in params()) {
        prop_assume!(mirror.determinant(p).abs() > 1e-3);
        let back = reflect(&mirror, &reflect(&mirror, &c, p), p);
        prop_assert!(back.projective_distance(&c) < 1e-8, "{back:?} {c:?}");
    }
}

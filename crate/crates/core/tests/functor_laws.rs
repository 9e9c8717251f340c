use homocalc::cocycles::{h1_via_cocycles, h2_via_cocycles, normalized_via_cocycles};
use homocalc::functors::{hom_with_module, tensor_with_module};
use homocalc::groups::{cyclic, dihedral, symmetric};
use homocalc::intlinalg::DenseMatrix;
use homocalc::{group_cohomology, group_homology, AbelianInvariants, FiniteGroup, GModule, Int, Resolution, ResolutionChoice, ResolutionKind};
use num_integer::Integer;

const BAR_KINDS: [ResolutionKind; 3] = [ResolutionKind::Bar, ResolutionKind::NormalizedBar, ResolutionKind::Homogeneous];

fn h(g: &FiniteGroup, n: usize, a: &GModule) -> AbelianInvariants {
    group_homology(g, n, a, ResolutionChoice::Auto).unwrap()
}

fn c(g: &FiniteGroup, n: usize, a: &GModule) -> AbelianInvariants {
    group_cohomology(g, n, a, ResolutionChoice::Auto).unwrap()
}

/// `Z/m` (or `Z` for `m = 0`) on which every generator acts by its sign.
fn sign_module(g: &FiniteGroup, m: u64) -> GModule {
    let acts = g
        .generators()
        .iter()
        .map(|p| {
            // parity from the cycle decomposition
            let odd = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
            DenseMatrix::<Int>::from_i64_rows(&[vec![if odd { -1 } else { 1 }]])
        })
        .collect();
    GModule::new(g, vec![Int::from(m)], acts, "sign").unwrap()
}

/// `(Z/m)^d` permuted by a permutation group of degree `d`, as a left action.
fn permutation_module(g: &FiniteGroup, m: u64) -> GModule {
    let d = g.degree();
    let acts = g
        .generators()
        .iter()
        .map(|p| {
            let q = p.inverse();
            let mut a = DenseMatrix::<Int>::zeros(d, d);
            for i in 0..d {
                a.set(q.image(i), i, Int::from(1));
            }
            a
        })
        .collect();
    GModule::new(g, vec![Int::from(m); d], acts, "perm").unwrap()
}

#[test]
fn direct_sum_is_additive() {
    let g = symmetric(3).unwrap();
    let a = GModule::trivial(&g, 2);
    let b = sign_module(&g, 3);
    let ab = a.direct_sum(&b).unwrap();
    for n in 0..=3 {
        assert_eq!(c(&g, n, &ab), c(&g, n, &a).sum(&c(&g, n, &b)), "H^{n}");
        assert_eq!(h(&g, n, &ab), h(&g, n, &a).sum(&h(&g, n, &b)), "H_{n}");
    }
}

#[test]
fn resolution_kind_does_not_matter() {
    for g in [dihedral(4).unwrap(), symmetric(3).unwrap(), cyclic(4).unwrap()] {
        let mods = [GModule::integers(&g), GModule::trivial(&g, 2), sign_module(&g, 0)];
        let top = if g.order() > 6 { 2 } else { 3 };
        for a in &mods {
            for n in 0..=top {
                let hs: Vec<_> = BAR_KINDS.iter().map(|&k| group_homology(&g, n, a, k.into()).unwrap()).collect();
                let cs: Vec<_> = BAR_KINDS.iter().map(|&k| group_cohomology(&g, n, a, k.into()).unwrap()).collect();
                assert!(hs.windows(2).all(|w| w[0] == w[1]), "{} H_{n} {}: {hs:?}", g.name(), a.label());
                assert!(cs.windows(2).all(|w| w[0] == w[1]), "{} H^{n} {}: {cs:?}", g.name(), a.label());
            }
        }
    }
}

#[test]
fn cyclic_groups_with_finite_coefficients() {
    for m in 2..=6usize {
        let g = cyclic(m).unwrap();
        for k in 2..=6u64 {
            let a = GModule::trivial(&g, k);
            let want = AbelianInvariants::cyclic((m as u64).gcd(&k));
            assert_eq!(h(&g, 0, &a), AbelianInvariants::cyclic(k));
            assert_eq!(c(&g, 0, &a), AbelianInvariants::cyclic(k));
            for n in 1..=5 {
                assert_eq!(h(&g, n, &a), want, "H_{n}(C{m}, Z/{k})");
                assert_eq!(c(&g, n, &a), want, "H^{n}(C{m}, Z/{k})");
            }
        }
    }
}

#[test]
fn sign_module_on_c2() {
    let g = cyclic(2).unwrap();
    let zm = sign_module(&g, 0);
    let z2 = AbelianInvariants::cyclic(2);
    assert!(c(&g, 0, &zm).is_trivial());
    assert_eq!(h(&g, 0, &zm), z2);
    for n in 1..=6 {
        let (hn, cn) = (h(&g, n, &zm), c(&g, n, &zm));
        if n % 2 == 1 {
            assert!(hn.is_trivial(), "H_{n}");
            assert_eq!(cn, z2, "H^{n}");
        } else {
            assert_eq!(hn, z2, "H_{n}");
            assert!(cn.is_trivial(), "H^{n}");
        }
    }
    // the bar path sees the same thing as the periodic one
    for n in 0..=3 {
        assert_eq!(group_cohomology(&g, n, &zm, ResolutionKind::Bar.into()).unwrap(), c(&g, n, &zm));
    }
}

#[test]
fn shapiro_for_point_stabilizer() {
    // the permutation module of S3 on 3 points is induced from S2
    let g = symmetric(3).unwrap();
    let s2 = cyclic(2).unwrap();
    for p in [2u64, 3] {
        let a = permutation_module(&g, p);
        for n in 0..=3 {
            assert_eq!(c(&g, n, &a), c(&s2, n, &GModule::trivial(&s2, p)), "H^{n} mod {p}");
            assert_eq!(h(&g, n, &a), h(&s2, n, &GModule::trivial(&s2, p)), "H_{n} mod {p}");
        }
    }
}

#[test]
fn twisted_complexes_square_to_zero() {
    let g = symmetric(3).unwrap();
    let mods = [permutation_module(&g, 0), permutation_module(&g, 4), sign_module(&g, 0), sign_module(&g, 5)];
    for kind in [ResolutionKind::Bar, ResolutionKind::NormalizedBar, ResolutionKind::Homogeneous] {
        let r = Resolution::new(&g, kind, 4).unwrap();
        for a in &mods {
            assert!(tensor_with_module(&r, a, 3).unwrap().is_complex().unwrap(), "{kind:?} tensor {}", a.label());
            assert!(hom_with_module(&r, a, 3).unwrap().is_complex().unwrap(), "{kind:?} hom {}", a.label());
        }
    }
}

#[test]
fn finite_self_dual_modules() {
    // sign and permutation modules over Z/p are self-dual, so H_n = H^n
    let g = symmetric(3).unwrap();
    for a in [sign_module(&g, 3), sign_module(&g, 2), permutation_module(&g, 2), permutation_module(&g, 3)] {
        for n in 0..=3 {
            assert_eq!(h(&g, n, &a), c(&g, n, &a), "degree {n} {}", a.label());
        }
    }
}

#[test]
fn cocycles_agree_with_resolutions() {
    let s3 = symmetric(3).unwrap();
    let d4 = dihedral(4).unwrap();
    let cases = [
        (s3.clone(), permutation_module(&s3, 2)),
        (s3.clone(), permutation_module(&s3, 0)),
        (s3.clone(), sign_module(&s3, 3)),
        (s3.clone(), sign_module(&s3, 0)),
        (d4.clone(), GModule::trivial(&d4, 2)),
    ];
    for (g, a) in &cases {
        let h1 = h1_via_cocycles(g, a).unwrap();
        let h2 = h2_via_cocycles(g, a).unwrap();
        assert_eq!(h1, c(g, 1, a), "{} {}", g.name(), a.label());
        assert_eq!(h2, c(g, 2, a), "{} {}", g.name(), a.label());
        assert_eq!(normalized_via_cocycles(g, a, 1).unwrap(), h1);
        assert_eq!(normalized_via_cocycles(g, a, 2).unwrap(), h2);
    }
}

use homocalc::groups::{quotient_group, subgroup, sylow_subgroup, Permutation};
use homocalc::{FiniteGroup, GroupExpr, GroupHom, Int, Word};
use proptest::prelude::*;

const NAMES: [&str; 8] = ["C1", "C5", "S3", "D4", "Q8", "A4", "C2xC3", "perm:[(1,2,3,4),(1,2)]"];

fn group(i: usize) -> FiniteGroup {
    GroupExpr::parse(NAMES[i % NAMES.len()]).unwrap().build().unwrap()
}

fn word(g: &FiniteGroup, rank: usize, raw: &[(usize, usize, i64)]) -> Word {
    Word::from_terms(rank, raw.iter().map(|&(i, e, c)| (i % rank, e % g.order(), Int::from(c))))
}

fn raw_terms() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..8, 0usize..64, -3i64..=3), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triples_round_trip(gi in 0usize..8, rank in 1usize..4, raw in raw_terms()) {
        let g = group(gi);
        let w = word(&g, rank, &raw);
        prop_assert_eq!(Word::from_triples(&w.to_triples(), rank).unwrap(), w.clone());
        let pairs = w.to_pairs(64).unwrap();
        prop_assert_eq!(Word::from_pairs(&pairs, rank).unwrap(), w);
    }

    #[test]
    fn act_is_an_action(gi in 0usize..8, a in 0usize..64, b in 0usize..64, raw in raw_terms()) {
        let g = group(gi);
        let (a, b) = (a % g.order(), b % g.order());
        let w = word(&g, 2, &raw);
        prop_assert_eq!(w.act(b, &g).act(a, &g), w.act(g.mul(a, b), &g));
        prop_assert_eq!(w.act(0, &g), w.clone());
        prop_assert_eq!(w.act(a, &g).augmentation(), w.augmentation());
    }

    #[test]
    fn substitute_is_additive(gi in 0usize..8, x in raw_terms(), y in raw_terms(), im in prop::collection::vec(raw_terms(), 2)) {
        let g = group(gi);
        let (u, v) = (word(&g, 2, &x), word(&g, 2, &y));
        let images: Vec<Word> = im.iter().map(|r| word(&g, 3, r)).collect();
        let lhs = u.add(&v).unwrap().substitute(&images, &g).unwrap();
        let rhs = u.substitute(&images, &g).unwrap().add(&v.substitute(&images, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.sub(&u).unwrap().is_zero());
        prop_assert_eq!(u.neg().neg(), u);
    }

    #[test]
    fn substitute_commutes_with_action(gi in 0usize..8, a in 0usize..64, x in raw_terms(), im in prop::collection::vec(raw_terms(), 2)) {
        let g = group(gi);
        let a = a % g.order();
        let u = word(&g, 2, &x);
        let images: Vec<Word> = im.iter().map(|r| word(&g, 2, r)).collect();
        prop_assert_eq!(u.act(a, &g).substitute(&images, &g).unwrap(), u.substitute(&images, &g).unwrap().act(a, &g));
    }

    #[test]
    fn group_axioms(gi in 0usize..8, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let g = group(gi);
        let (a, b, c) = (a % g.order(), b % g.order(), c % g.order());
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.order() % g.element_order(a), 0);
        // element indices track the permutation product
        let p = g.element(a).mul(g.element(b));
        prop_assert_eq!(g.index_of(&p), Some(g.mul(a, b)));
    }

    #[test]
    fn permutation_text_round_trip(images in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(&images).unwrap();
        let q = Permutation::parse(&p.to_string()).unwrap();
        prop_assert_eq!(q.extended(6), p.clone());
        prop_assert!(p.mul(&p.inverse()).is_identity());
        prop_assert_eq!(p.cycles().iter().map(Vec::len).fold(1, num_integer::lcm), p.order());
    }
}

#[test]
fn group_expressions_round_trip() {
    for s in NAMES {
        let e = GroupExpr::parse(s).unwrap();
        assert_eq!(GroupExpr::parse(&e.to_string()).unwrap(), e, "{s}");
    }
    for bad in ["", "C", "X3", "perm:[(1,1)]", "S3x", "C0"] {
        assert!(GroupExpr::parse(bad).and_then(|e| e.build()).is_err(), "{bad:?}");
    }
}

#[test]
fn subgroups_and_quotients() {
    for (i, _) in NAMES.iter().enumerate() {
        let g = group(i);
        let n = g.order();
        for p in [2u64, 3, 5] {
            let (s, incl) = sylow_subgroup(&g, p).unwrap();
            assert!(incl.is_injective());
            let mut pk = 1;
            while n % (pk * p as usize) == 0 {
                pk *= p as usize;
            }
            assert_eq!(s.order(), pk, "{} p={p}", g.name());
        }
        // the center is normal; quotient by it
        let center: Vec<usize> = (0..n).filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z))).collect();
        let (h, _) = subgroup(&g, &center).unwrap();
        assert_eq!(n % h.order(), 0);
        let (q, proj) = quotient_group(&g, &center).unwrap();
        assert!(proj.is_surjective());
        assert_eq!(q.order() * center.len(), n);
        let mut ker = proj.kernel();
        ker.sort_unstable();
        assert_eq!(ker, center);
    }
}

#[test]
fn homomorphisms_are_checked() {
    let s3 = group(2);
    let c2 = GroupExpr::parse("C2").unwrap().build().unwrap();
    // sign map: both generators of S3 need an image
    let images: Vec<usize> = s3
        .generators()
        .iter()
        .map(|p| if p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1 { 1 } else { 0 })
        .collect();
    let sign = GroupHom::new(&s3, &c2, images.clone()).unwrap();
    assert_eq!(sign.kernel().len(), 3);
    assert!(sign.is_surjective() && !sign.is_injective());
    // sending a 3-cycle to the involution is not a homomorphism
    let flipped: Vec<usize> = images.iter().map(|&x| 1 - x).collect();
    assert!(GroupHom::new(&s3, &c2, flipped).is_err());
    let id = GroupHom::identity(&s3);
    assert_eq!(id.then(&sign).unwrap().images(), sign.images());
}

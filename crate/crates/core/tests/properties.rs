use flagdesign::classify::{classify, classify_in, SearchBox, Witness};
use flagdesign::constructions::{ag3_lines, pg_collinear_triples, pg_triangles};
use flagdesign::design::{admissible, verify_2design, Design};
use flagdesign::geometry::gaussian;
use flagdesign::gf::FieldTable;
use flagdesign::perm::PermGroup;
use proptest::prelude::*;
use proptest::sample::select;

const FIELDS: [(u32, u32); 10] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6)];

fn small_designs() -> Vec<Design> {
    vec![
        pg_collinear_triples(2, 3).unwrap().0,
        pg_collinear_triples(3, 3).unwrap().0,
        pg_collinear_triples(2, 4).unwrap().0,
        pg_triangles(2, 3).unwrap().0,
        ag3_lines(2).unwrap().0,
    ]
}

fn shuffled(v: usize, seed: &[u32]) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..v as u32).collect();
    for (i, s) in seed.iter().enumerate().take(v.saturating_sub(1)) {
        let j = i + (*s as usize) % (v - i);
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #[test]
    fn field_axioms_on_samples(
        (p, d) in select(FIELDS.to_vec()),
        a in 0u32..64, b in 0u32..64, c in 0u32..64,
    ) {
        let f = FieldTable::new(p, d).unwrap();
        let n = f.size();
        let (x, y, z) = (f.elem(a % n).unwrap(), f.elem(b % n).unwrap(), f.elem(c % n).unwrap());
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.elem(0).unwrap());
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.elem(1).unwrap());
        }
        // Frobenius is additive and multiplicative
        prop_assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
        prop_assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
    }

    #[test]
    fn gaussian_recurrence(n in 1u32..9, k in 1u32..9, q in select(vec![2u64, 3, 4, 5, 7, 8, 9, 11])) {
        prop_assume!(k <= n);
        let lhs = gaussian(n, k, q).unwrap();
        let rhs = gaussian(n - 1, k - 1, q).unwrap()
            + (q as u128).pow(k) * if k <= n - 1 { gaussian(n - 1, k, q).unwrap() } else { 0 };
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lhs, gaussian(n, n - k, q).unwrap());
    }

    #[test]
    fn relabelling_preserves_parameters(which in 0usize..5, seed in prop::collection::vec(any::<u32>(), 32)) {
        let design = &small_designs()[which];
        let perm = shuffled(design.v(), &seed);
        let relabelled = design.relabel(&perm).unwrap();
        let (a, b) = (verify_2design(design), verify_2design(&relabelled));
        prop_assert_eq!((a.v, a.b, a.r, a.lambda, a.is_2design), (b.v, b.b, b.r, b.lambda, b.is_2design));
    }

    #[test]
    fn design_identities(which in 0usize..5) {
        let p = verify_2design(&small_designs()[which]);
        prop_assert!(p.is_2design);
        prop_assert_eq!(p.lambda * (p.v - 1), 2 * p.r);
        prop_assert_eq!(p.v * p.r, 3 * p.b);
    }

    #[test]
    fn text_round_trip(v in 4usize..20, raw in prop::collection::vec((0u32..20, 0u32..20, 0u32..20), 1..40)) {
        let mut blocks: Vec<[u32; 3]> = raw
            .into_iter()
            .map(|(a, b, c)| [a % v as u32, b % v as u32, c % v as u32])
            .filter(|[a, b, c]| a != b && b != c && a != c)
            .map(|mut b| { b.sort_unstable(); b })
            .collect();
        blocks.sort_unstable();
        blocks.dedup();
        prop_assume!(!blocks.is_empty());
        let design = Design::new(v, blocks, "random").unwrap();
        prop_assert_eq!(Design::from_text(&design.to_text()).unwrap(), design);
    }

    #[test]
    fn orbits_partition_and_ignore_generator_order(
        v in 2usize..30,
        seeds in prop::collection::vec(prop::collection::vec(any::<u32>(), 30), 1..4),
    ) {
        let gens: Vec<Vec<u32>> = seeds.iter().map(|s| shuffled(v, s)).collect();
        let forward = PermGroup::new(v, gens.clone(), "g").unwrap().point_orbits();
        let mut reversed = gens;
        reversed.reverse();
        let backward = PermGroup::new(v, reversed, "g").unwrap().point_orbits();
        prop_assert_eq!(forward.total(), v);
        prop_assert_eq!(forward.orbit_sizes(), backward.orbit_sizes());
        prop_assert_eq!(forward.representatives(), backward.representatives());
    }

    #[test]
    fn classifier_is_consistent(v in 4u64..3000, lambda in 1u64..60) {
        let out = classify(v, lambda).unwrap();
        prop_assert_eq!(out.admissible, admissible(v, lambda).unwrap());
        if !out.admissible {
            prop_assert!(out.cases.is_empty());
        }
        for (_, w) in &out.witnesses {
            let n = match *w {
                Witness::PrimePower { p, d } => p.pow(d),
                Witness::Projective { q, h } => (q.pow(h) - 1) / (q - 1),
                Witness::Affine { h } => 3u64.pow(h),
            };
            prop_assert_eq!(n, v);
        }
        let small = classify_in(v, lambda, SearchBox { max_q: 16, max_h: 8 }).unwrap();
        prop_assert!(small.cases.is_subset(&out.cases));
    }
}

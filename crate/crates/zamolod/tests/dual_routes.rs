//! Two independent routes to each star binding: the explicit edge-list
//! constructors versus the dual of a chain of parallel bindings glued to a
//! twist (or to a folded twist). The routes must agree up to relabeling.

use zamolod::biagram::{DynkinBiagram, DynkinType};
use zamolod::catalog::{self, biagram_isomorphic, parallel_extend};

/// Chain `copies` rank-2 components onto the first side of a base binding,
/// then dualize.
fn dual_of_chain(base: DynkinBiagram, mut side: Vec<usize>, extra: usize) -> DynkinBiagram {
    let mut bg = base;
    for _ in 0..extra {
        let (next, new_side) = parallel_extend(&bg, &side);
        bg = next;
        side = new_side;
    }
    bg.dual()
}

#[test]
fn b_star_c_is_the_dual_of_the_b2_twist_chain() {
    // n factors of B2, the last two twisted together.
    for n in 2..=6 {
        let twist = catalog::twist(DynkinType::b(2));
        let built = dual_of_chain(twist, vec![0, 1], n - 2);
        let explicit = catalog::b_star_c(n).unwrap();
        assert!(biagram_isomorphic(&built, &explicit), "n = {n}");
    }
}

#[test]
fn f4_star_f4_is_the_dual_of_the_sandwiched_twist() {
    // B2 = B2 x B2 = B2: one parallel factor on each side of the twist.
    let twist = catalog::twist(DynkinType::b(2));
    let (one, _) = parallel_extend(&twist, &[0, 1]);
    let (two, _) = parallel_extend(&one, &[2, 3]);
    let built = two.dual();
    let explicit = catalog::f4_star_f4().unwrap();
    assert!(biagram_isomorphic(&built, &explicit));
}

#[test]
fn b_star_d_is_the_dual_of_the_c2_chain_into_d3() {
    // (C2 = ... = C2 ltimes D3)^*: the C2 side extends n - 2 times.
    for n in 2..=6 {
        let base = catalog::c_ltimes_d(2).unwrap();
        let built = dual_of_chain(base, vec![0, 1], n - 2);
        let explicit = catalog::b_star_d(n).unwrap();
        assert!(biagram_isomorphic(&built, &explicit), "n = {n}");
    }
}

#[test]
fn c_star_d_is_the_dual_of_the_b2_chain_into_d3() {
    for n in 2..=6 {
        let base = catalog::b_ltimes_d(2).unwrap();
        let built = dual_of_chain(base, vec![0, 1], n - 2);
        let explicit = catalog::c_star_d(n).unwrap();
        assert!(biagram_isomorphic(&built, &explicit), "n = {n}");
    }
}

#[test]
fn a_star_b_is_the_dual_of_the_d3_chain_into_b2() {
    // (D3 = D3 = ... = D3 rtimes B2)^*: the D3 side extends n - 2 times.
    for n in 2..=5 {
        let base = catalog::b_ltimes_d(2).unwrap();
        let built = dual_of_chain(base, vec![2, 3, 4], n - 2);
        let explicit = catalog::b_star_a(n).unwrap();
        assert!(biagram_isomorphic(&built, &explicit), "n = {n}");
    }
}

#[test]
fn a_star_c_is_the_dual_of_the_d3_chain_into_c2() {
    for n in 2..=5 {
        let base = catalog::c_ltimes_d(2).unwrap();
        let built = dual_of_chain(base, vec![2, 3, 4], n - 2);
        let explicit = catalog::c_star_a(n).unwrap();
        assert!(biagram_isomorphic(&built, &explicit), "n = {n}");
    }
}

#[test]
fn e6_star_f4_variants_are_duals_of_sandwiched_folded_twists() {
    // (B2 = B2 ltimes D3 = D3)^* and its flipped companion.
    let base = catalog::b_ltimes_d(2).unwrap();
    let (one, _) = parallel_extend(&base, &[0, 1]);
    let (two, _) = parallel_extend(&one, &[2, 3, 4]);
    let built = two.dual();
    let e1 = catalog::e6_star_f4(1).unwrap();
    let e2 = catalog::e6_star_f4(2).unwrap();
    let hits_e1 = biagram_isomorphic(&built, &e1);
    let hits_e2 = biagram_isomorphic(&built, &e2);
    assert!(hits_e1 ^ hits_e2, "exactly one orientation matches");

    let base = catalog::c_ltimes_d(2).unwrap();
    let (one, _) = parallel_extend(&base, &[0, 1]);
    let (two, _) = parallel_extend(&one, &[2, 3, 4]);
    let other = two.dual();
    assert!(
        biagram_isomorphic(&other, if hits_e1 { &e2 } else { &e1 }),
        "the flipped chain gives the other orientation"
    );
}

#[test]
fn deleting_the_last_parallel_factor_of_every_chain_family() {
    use zamolod::catalog::{ChainSide, FamilySpec, StarBase};
    // Subdiagram closure: the (m-1)-factor chain is an induced sub-biagram
    // of the m-factor chain, for every base and both sides.
    let bases = [
        StarBase::BA(2),
        StarBase::CA(2),
        StarBase::BC(3),
        StarBase::BD(3),
        StarBase::CD(2),
        StarBase::AD(2),
        StarBase::FF,
        StarBase::B2B2,
    ];
    for base in bases {
        for side in [ChainSide::First, ChainSide::Second] {
            let small = FamilySpec::Chain { base, side, m: 3 }.build().unwrap();
            let big = FamilySpec::Chain { base, side, m: 4 }.build().unwrap();
            let k = small.n();
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(small.gamma()[i][j], big.gamma()[i][j], "{base:?} {side:?}");
                    assert_eq!(small.delta()[i][j], big.delta()[i][j], "{base:?} {side:?}");
                }
            }
            assert!(big.is_admissible());
        }
    }
}

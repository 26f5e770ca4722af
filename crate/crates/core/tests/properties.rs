use std::collections::BTreeSet;

use alexandrov::group::{ball, GroupDescriptor, GroupElem, Letter};
use alexandrov::monoid::{saturate_congruence, Oracle, SubmonoidSpec};
use alexandrov::poset::{irreducible_closed_sets, is_minimal_basis, random_poset, WindowPoset};
use alexandrov::render::{parse_dot_covers, parse_grid, render_hasse, RenderConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> GroupDescriptor {
    GroupDescriptor::free(2).unwrap()
}

fn free_word() -> impl Strategy<Value = GroupElem> {
    prop::collection::vec((0u32..2, any::<bool>()), 0..8).prop_map(|letters| {
        let letters = letters.into_iter().map(|(g, inv)| {
            let l = Letter::positive(g);
            if inv {
                l.inverted()
            } else {
                l
            }
        });
        GroupElem::word(f2(), letters).unwrap()
    })
}

fn lattice_elem() -> impl Strategy<Value = GroupElem> {
    (prop::collection::vec(-20i64..20, 2), 0i64..2).prop_map(|(c, r)| {
        GroupElem::vector(GroupDescriptor::int_cyclic(2, 2).unwrap(), c, r).unwrap()
    })
}

/// Free reduction with an explicit stack, on `(generator, inverted)` pairs.
fn reduce(word: &[(u32, bool)]) -> Vec<(u32, bool)> {
    let mut out: Vec<(u32, bool)> = Vec::new();
    for &(g, inv) in word {
        match out.last() {
            Some(&(h, hinv)) if h == g && hinv != inv => {
                out.pop();
            }
            _ => out.push((g, inv)),
        }
    }
    out
}

fn pairs(g: &GroupElem) -> Vec<(u32, bool)> {
    g.letters().unwrap().iter().map(|l| (l.generator, l.inverse)).collect()
}

proptest! {
    #[test]
    fn free_group_associative(a in free_word(), b in free_word(), c in free_word()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn free_product_matches_stack_reduction(a in free_word(), b in free_word()) {
        let mut joined = pairs(&a);
        joined.extend(pairs(&b));
        prop_assert_eq!(pairs(&a.mul(&b)), reduce(&joined));
    }

    #[test]
    fn inverse_cancels(a in free_word(), v in lattice_elem()) {
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.inverse().mul(&a).is_identity());
        prop_assert!(v.mul(&v.inverse()).is_identity());
    }

    #[test]
    fn display_parses_back(a in free_word(), v in lattice_elem()) {
        prop_assert_eq!(GroupElem::parse(f2(), &a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(GroupElem::parse(v.descriptor(), &v.to_string()).unwrap(), v);
    }

    #[test]
    fn lattice_associative_and_abelian(a in lattice_elem(), b in lattice_elem(), c in lattice_elem()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn norm_is_subadditive(a in free_word(), b in free_word()) {
        prop_assert!(a.mul(&b).norm() <= a.norm() + b.norm());
    }

    #[test]
    fn shortlex_is_a_total_order(a in free_word(), b in free_word(), c in free_word()) {
        prop_assert_eq!(a < b, b > a);
        prop_assert!(a <= b || b <= a);
        if a < b && b < c {
            prop_assert!(a < c);
        }
        prop_assert!(f2().identity() <= a);
    }

    /// Saturating one pair on `ℕ ⊂ ℤ` gives `a ~ b` iff `a = b` or both are
    /// at least `min(p,q)` and agree mod `|p - q|`.
    #[test]
    fn single_pair_congruence_on_nat(p in 0i64..6, d in 1i64..5) {
        let spec = SubmonoidSpec::new(GroupDescriptor::int(1).unwrap(), Oracle::Nonneg, None).unwrap();
        let q = p + d;
        let pairs = [(GroupElem::int(p), GroupElem::int(q))];
        let c = saturate_congruence(&pairs, &spec, 20, 5).unwrap();
        prop_assert!(c.is_stable());
        for a in 0..=20 {
            for b in 0..=20 {
                let expected = a == b || (a >= p && b >= p && (a - b) % d == 0);
                prop_assert_eq!(c.related(&GroupElem::int(a), &GroupElem::int(b)).unwrap(), expected, "{} {}", a, b);
            }
        }
    }

    #[test]
    fn random_posets_are_sober_and_have_minimal_bases(seed in any::<u64>(), size in 1usize..8, density in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poset(&mut rng, size, density);
        let sets: BTreeSet<Vec<usize>> = irreducible_closed_sets(&p).unwrap().into_iter().collect();
        let downs: BTreeSet<Vec<usize>> = (0..p.len()).map(|x| p.down_set(x)).collect();
        prop_assert_eq!(sets, downs);
        let ups: Vec<Vec<usize>> = (0..p.len()).map(|x| p.up_set(x)).collect();
        prop_assert!(is_minimal_basis(&p, &ups).unwrap().passes());
    }

    #[test]
    fn dot_round_trips_covers(seed in any::<u64>(), size in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poset(&mut rng, size, 0.4);
        let dot = render_hasse(&p, &RenderConfig::default());
        prop_assert_eq!(dot.clone(), render_hasse(&p, &RenderConfig::default()));
        let got: BTreeSet<(String, String)> = parse_dot_covers(&dot).unwrap().into_iter().collect();
        let mut brute = BTreeSet::new();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.lt(a, b) && !(0..p.len()).any(|x| p.lt(a, x) && p.lt(x, b)) {
                    brute.insert((p.name(a).to_string(), p.name(b).to_string()));
                }
            }
        }
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn grid_text_round_trips(cells in prop::collection::vec(prop::collection::vec(any::<bool>(), 5), 5)) {
        let text: String = (0..5)
            .rev()
            .map(|b| (0..5).map(|a| if cells[a][b] { '#' } else { '.' }).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n");
        prop_assert_eq!(parse_grid(&text).unwrap(), cells);
    }
}

#[test]
fn ball_sizes() {
    assert_eq!(ball(f2(), 2).unwrap().len(), 17);
    assert_eq!(ball(GroupDescriptor::int(1).unwrap(), 3).unwrap().len(), 7);
    let z2 = GroupDescriptor::int_cyclic(1, 2).unwrap();
    assert_eq!(ball(z2, 1).unwrap().len(), 6);
}

#[test]
fn antichain_union_is_not_minimal() {
    let p = WindowPoset::antichain(&["a", "b"]);
    assert!(!is_minimal_basis(&p, &[vec![0], vec![1], vec![0, 1]]).unwrap().passes());
}

use super::automorphism::{cusp_word, whitehead_generators, FreeMap};
use super::stallings::SubgroupGraph;
use super::words::{cyclic_reduce, Word};
use crate::error::Error;
use proptest::prelude::*;

fn w(rank: usize, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

#[test]
fn reduce_examples() {
    // a a^-1 b -> b
    assert_eq!(Word::reduce(2, &[1, -1, 2]).unwrap(), w(2, "b"));
    // empty -> empty
    assert!(Word::reduce(2, &[]).unwrap().is_empty());
    // a b b^-1 a -> a a
    assert_eq!(Word::reduce(2, &[1, 2, -2, 1]).unwrap(), w(2, "aa"));
    // out-of-range letter
    assert!(matches!(
        Word::reduce(2, &[3]),
        Err(Error::LetterOutOfRange { .. })
    ));
}

#[test]
fn cyclic_reduce_examples() {
    // a b a^-1 -> (b, conjugator a)
    let (c, conj) = cyclic_reduce(&w(2, "abA"));
    assert_eq!(c.as_word(), w(2, "b"));
    assert_eq!(conj.mul(&c.as_word()).mul(&conj.inverse()), w(2, "abA"));
    // [a,b] already cyclically reduced
    let (c, conj) = cyclic_reduce(&w(2, "abAB"));
    assert_eq!(c.len(), 4);
    assert!(conj.mul(&c.as_word()).mul(&conj.inverse()) == w(2, "abAB"));
    // a^-1 (ab) a reduces to ba; canonical rotation is ab
    let input = w(2, "A").mul(&w(2, "ab")).mul(&w(2, "a"));
    assert_eq!(input, w(2, "ba"));
    let (c, conj) = cyclic_reduce(&input);
    assert_eq!(c.as_word(), w(2, "ab"));
    assert_eq!(conj.mul(&c.as_word()).mul(&conj.inverse()), input);
}

#[test]
fn apply_compose_invert() {
    // f: a -> ab, b -> b
    let f = FreeMap::automorphism(2, vec![w(2, "ab"), w(2, "b")]).unwrap();
    assert_eq!(f.apply(&w(2, "a")), w(2, "ab"));
    // compose(f, invert(f)) = identity
    let finv = f.invert().unwrap();
    let id = f.compose(&finv);
    for i in 1..=2 {
        assert_eq!(id.image_of(i), Word::generator(2, i));
    }
    // cusp word preserved by a -> ab, b -> b
    let cusp = cusp_word(1);
    assert_eq!(f.apply(&cusp), cusp);
}

#[test]
fn invert_non_automorphism_reports_witness() {
    // a -> a^2, b -> b is not an automorphism
    let f = FreeMap::endomorphism(2, vec![w(2, "aa"), w(2, "b")]).unwrap();
    match f.verified() {
        Err(Error::NotAnAutomorphism { witness }) => {
            assert!(witness.contains('a'));
        }
        other => panic!("expected NotAnAutomorphism, got {other:?}"),
    }
}

#[test]
fn inner_examples() {
    // conjugation by a
    let f = FreeMap::inner(2, &w(2, "a"));
    assert_eq!(f.inner_conjugator().unwrap(), w(2, "a"));
    // identity -> trivial conjugator
    let id = FreeMap::identity(2);
    assert_eq!(id.inner_conjugator().unwrap(), Word::identity(2));
    // the swap a <-> b is not inner (abelianization is a nontrivial permutation)
    let swap = FreeMap::automorphism(2, vec![w(2, "b"), w(2, "a")]).unwrap();
    assert!(swap.inner_conjugator().is_none());
}

#[test]
fn whitehead_generator_examples() {
    let gens = whitehead_generators(2);
    // includes the four right transvection types on a
    for img in ["ab", "aB", "ba", "Ba"] {
        assert!(
            gens.iter()
                .any(|g| g.image_of(1) == w(2, img) && g.image_of(2) == w(2, "b")),
            "missing transvection a -> {img}"
        );
    }
    // closed under inversion and every member verified
    for g in &gens {
        assert!(g.is_verified());
        let ginv = g.invert().unwrap();
        assert!(
            gens.iter().any(|h| h.images() == ginv.images()),
            "inverse of {g:?} not in the set"
        );
    }
}

#[test]
fn cusp_word_examples() {
    assert_eq!(cusp_word(1), w(2, "abAB"));
    assert_eq!(cusp_word(2).len(), 8);
}

#[test]
fn stallings_membership_and_rank() {
    let g = SubgroupGraph::from_words(2, &[w(2, "ab"), w(2, "b")]);
    assert!(g.is_whole_group());
    let h = SubgroupGraph::from_words(2, &[w(2, "aa"), w(2, "b")]);
    assert!(!h.is_whole_group());
    assert!(h.contains(&w(2, "aab")));
    assert!(!h.contains(&w(2, "a")));
    assert_eq!(h.subgroup_rank(), 2);
}

#[test]
fn stallings_intersection() {
    // <a^2, b> meet <a^3, b> contains a^6 and b but not a^2
    let g = SubgroupGraph::from_words(2, &[w(2, "aa"), w(2, "b")]);
    let h = SubgroupGraph::from_words(2, &[w(2, "aaa"), w(2, "b")]);
    let i = g.intersect(&h);
    assert!(i.contains(&w(2, "aaaaaa")));
    assert!(i.contains(&w(2, "b")));
    assert!(!i.contains(&w(2, "aa")));
}

#[test]
fn subgroup_conjugacy_keys() {
    // <ab> and <ba> are conjugate cyclic subgroups
    let g = SubgroupGraph::from_words(2, &[w(2, "ab")]);
    let h = SubgroupGraph::from_words(2, &[w(2, "ba")]);
    assert_ne!(g.canonical_key(), h.canonical_key());
    assert_eq!(g.conjugacy_key(), h.conjugacy_key());
    let k = SubgroupGraph::from_words(2, &[w(2, "a")]);
    assert_ne!(g.conjugacy_key(), k.conjugacy_key());
}

proptest! {
    #[test]
    fn prop_reduce_no_adjacent_inverses(raw in proptest::collection::vec(-3i8..=3, 0..40)) {
        let raw: Vec<i8> = raw.into_iter().filter(|&l| l != 0).collect();
        let word = Word::reduce(3, &raw).unwrap();
        for pair in word.letters().windows(2) {
            prop_assert!(pair[0] != -pair[1]);
        }
    }

    #[test]
    fn prop_mul_associative(a in proptest::collection::vec(-2i8..=2, 0..12),
                            b in proptest::collection::vec(-2i8..=2, 0..12),
                            c in proptest::collection::vec(-2i8..=2, 0..12)) {
        let f = |v: Vec<i8>| Word::reduce(2, &v.into_iter().filter(|&l| l != 0).collect::<Vec<_>>()).unwrap();
        let (a, b, c) = (f(a), f(b), f(c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn prop_cyclic_reduce_conjugation_invariant(
        a in proptest::collection::vec(-2i8..=2, 1..10),
        g in proptest::collection::vec(-2i8..=2, 0..6))
    {
        let f = |v: Vec<i8>| Word::reduce(2, &v.into_iter().filter(|&l| l != 0).collect::<Vec<_>>()).unwrap();
        let (a, g) = (f(a), f(g));
        let conj = g.mul(&a).mul(&g.inverse());
        let (c1, _) = cyclic_reduce(&a);
        let (c2, _) = cyclic_reduce(&conj);
        prop_assert_eq!(c1, c2);
        // idempotence
        let (c3, t) = cyclic_reduce(&cyclic_reduce(&a).0.as_word());
        prop_assert!(t.is_empty());
        prop_assert_eq!(c3, cyclic_reduce(&a).0);
    }

    #[test]
    fn prop_compose_is_pointwise(seed in 0u64..500) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let gens = whitehead_generators(2);
        let f = &gens[rng.gen_range(0..gens.len())];
        let g = &gens[rng.gen_range(0..gens.len())];
        let raw: Vec<i8> = (0..rng.gen_range(0..10)).map(|_| {
            let l = rng.gen_range(1..=2i8);
            if rng.gen_bool(0.5) { l } else { -l }
        }).collect();
        let word = Word::reduce(2, &raw).unwrap();
        prop_assert_eq!(f.compose(g).apply(&word), f.apply(&g.apply(&word)));
    }
}

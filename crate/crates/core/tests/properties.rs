use std::sync::OnceLock;

use loopsig::fuzz::random_path;
use loopsig::operators::{lcl, rcl, rot, shift};
use loopsig::path::{path_signature, PiecewiseLinearPath};
use loopsig::rational::int;
use loopsig::spaces::InvariantSpaces;
use loopsig::{LevelVector, Rational, Subspace, TensorElement, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(d: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=d as u8, 0..=max_len).prop_map(|l| Word::from_letters(&l))
}

fn nonempty_word(d: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=d as u8, 1..=max_len).prop_map(|l| Word::from_letters(&l))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn element(d: usize, max_len: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((word(d, max_len), coeff()), 0..4)
        .prop_map(move |terms| TensorElement::from_terms(d, terms).unwrap())
}

fn homogeneous(d: usize, n: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(1..=d as u8, n), coeff()), 1..4).prop_map(move |terms| {
        TensorElement::from_terms(d, terms.into_iter().map(|(l, c)| (Word::from_letters(&l), c))).unwrap()
    })
}

fn path(d: usize) -> impl Strategy<Value = PiecewiseLinearPath> {
    any::<u64>().prop_map(move |s| random_path(&mut ChaCha8Rng::seed_from_u64(s), d))
}

fn spaces2() -> &'static InvariantSpaces {
    static S: OnceLock<InvariantSpaces> = OnceLock::new();
    S.get_or_init(|| InvariantSpaces::new(2).unwrap())
}

/// All ways to cut `w` into three consecutive pieces.
fn triple_cuts_left(w: &Word) -> Vec<(Word, Word, Word)> {
    let mut out = Vec::new();
    for (ab, c, _) in TensorElement::from_word(3, w.clone()).deconcat() {
        for (a, b, _) in TensorElement::from_word(3, ab).deconcat() {
            out.push((a, b, c.clone()));
        }
    }
    out.sort();
    out
}

fn triple_cuts_right(w: &Word) -> Vec<(Word, Word, Word)> {
    let mut out = Vec::new();
    for (a, bc, _) in TensorElement::from_word(3, w.clone()).deconcat() {
        for (b, c, _) in TensorElement::from_word(3, bc).deconcat() {
            out.push((a.clone(), b, c));
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative(x in element(3, 3), y in element(3, 3)) {
        prop_assert_eq!(x.shuffle(&y).unwrap(), y.shuffle(&x).unwrap());
    }

    #[test]
    fn shuffle_is_associative(x in element(2, 2), y in element(2, 2), z in element(2, 2)) {
        let left = x.shuffle(&y).unwrap().shuffle(&z).unwrap();
        let right = x.shuffle(&y.shuffle(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn concat_is_associative(x in element(3, 3), y in element(3, 3), z in element(3, 3)) {
        let left = x.concat(&y).unwrap().concat(&z).unwrap();
        let right = x.concat(&y.concat(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn deconcatenation_is_coassociative(w in word(3, 6)) {
        prop_assert_eq!(triple_cuts_left(&w), triple_cuts_right(&w));
    }

    #[test]
    fn shuffle_of_words_has_binomial_mass(u in word(3, 4), v in word(3, 4)) {
        let x = TensorElement::from_word(3, u.clone()).shuffle(&TensorElement::from_word(3, v.clone())).unwrap();
        let mass: Rational = x.terms().map(|(_, c)| c.clone()).sum();
        let n = u.len() + v.len();
        let binom = loopsig::rational::factorial(n)
            / (loopsig::rational::factorial(u.len()) * loopsig::rational::factorial(v.len()));
        prop_assert_eq!(mass, Rational::from_integer(binom));
    }

    #[test]
    fn rot_is_fixed_by_shift(w in nonempty_word(3, 6)) {
        let r = rot(&w, 3).unwrap();
        prop_assert_eq!(shift(&r, w.len()).unwrap(), r);
    }

    #[test]
    fn shift_has_order_dividing_level(x in homogeneous(3, 5)) {
        let mut y = x.clone();
        for _ in 0..5 {
            y = shift(&y, 5).unwrap();
        }
        prop_assert_eq!(y, x);
    }

    #[test]
    fn rot_pairs_equally_on_swapped_concatenations(w in nonempty_word(2, 6), a in path(2), b in path(2)) {
        let r = rot(&w, 2).unwrap();
        let ab = path_signature(&a.concat(&b).unwrap(), w.len()).pair(&r).unwrap();
        let ba = path_signature(&b.concat(&a).unwrap(), w.len()).pair(&r).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn rcl_and_lcl_are_idempotent(x in element(2, 6)) {
        let r = rcl(&x);
        prop_assert_eq!(rcl(&r), r);
        let l = lcl(&x);
        prop_assert_eq!(lcl(&l), l);
    }

    #[test]
    fn rcl_is_a_shuffle_homomorphism(x in element(2, 3), y in element(2, 3)) {
        let lhs = rcl(&x.shuffle(&y).unwrap());
        let rhs = rcl(&x).shuffle(&rcl(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lcl_is_a_shuffle_homomorphism(x in element(3, 3), y in element(3, 2)) {
        let lhs = lcl(&x.shuffle(&y).unwrap());
        let rhs = lcl(&x).shuffle(&lcl(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rcl_kills_shuffles_with_letters(i in 1u8..=3, x in element(3, 4)) {
        let y = TensorElement::letter(3, i).shuffle(&x).unwrap();
        prop_assert!(rcl(&y).is_zero());
        prop_assert!(lcl(&y).is_zero());
    }

    #[test]
    fn chen_is_associative(a in path(3), b in path(3), c in path(3)) {
        let ab_c = path_signature(&a, 4).mul(&path_signature(&b, 4)).unwrap().mul(&path_signature(&c, 4)).unwrap();
        let a_bc = path_signature(&a, 4).mul(&path_signature(&b, 4).mul(&path_signature(&c, 4)).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        let whole = path_signature(&a.concat(&b).unwrap().concat(&c).unwrap(), 4);
        prop_assert_eq!(ab_c, whole);
    }

    #[test]
    fn level_one_is_the_increment(p in path(3)) {
        let sig = path_signature(&p, 2);
        prop_assert_eq!(sig.level_coefficients(1).to_vec(), p.increment());
    }

    #[test]
    fn signatures_are_grouplike(p in path(2)) {
        prop_assert!(path_signature(&p, 5).is_grouplike(5));
    }

    #[test]
    fn loops_annihilate_the_letter_ideal(p in path(2), u in word(2, 3), i in 1u8..=2) {
        let lp = p.closed();
        let y = TensorElement::letter(2, i).shuffle(&TensorElement::from_word(2, u.clone())).unwrap();
        let sig = path_signature(&lp, u.len() + 1);
        prop_assert_eq!(sig.pair(&y).unwrap(), int(0));
    }

    #[test]
    fn loop_invariants_are_conjugation_invariant_on_loops(a in path(2), b in path(2), n in 1usize..=4) {
        let lp = a.closed();
        let conj = b.concat(&lp).unwrap().concat(&b.reverse()).unwrap();
        let s1 = path_signature(&lp, n);
        let s2 = path_signature(&conj, n);
        for x in spaces2().loop_invariants(n).unwrap().basis() {
            prop_assert_eq!(s1.pair(&x).unwrap(), s2.pair(&x).unwrap());
        }
    }

    #[test]
    fn word_index_round_trips(w in word(4, 6)) {
        prop_assert_eq!(Word::from_index(w.index(4), 4, w.len()), w);
    }

    #[test]
    fn min_rotation_is_least_rotation(w in nonempty_word(3, 8)) {
        let least = w.rotations().min().unwrap();
        prop_assert_eq!(w.min_rotation(), least);
    }

    #[test]
    fn span_ignores_order_and_scaling(
        rows in prop::collection::vec(homogeneous(2, 3), 1..5),
        scale in 1i64..=5,
    ) {
        let a = Subspace::span_tensors(2, 3, &rows, &Default::default()).unwrap();
        let mut shuffled: Vec<TensorElement> = rows.iter().rev().map(|x| x.scale(&int(scale))).collect();
        shuffled.push(rows[0].try_add(&rows[rows.len() - 1]).unwrap());
        let b = Subspace::span_tensors(2, 3, &shuffled, &Default::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn complement_is_an_involution(rows in prop::collection::vec(homogeneous(2, 3), 0..5)) {
        let a = Subspace::span_tensors(2, 3, &rows, &Default::default()).unwrap();
        let back = a.orthogonal_complement().unwrap().orthogonal_complement().unwrap();
        prop_assert_eq!(&back, &a);
        for r in a.orthogonal_complement().unwrap().rows() {
            for x in &rows {
                prop_assert_eq!(r.dot(&LevelVector::from_tensor(x, 3).unwrap()), int(0));
            }
        }
    }

    #[test]
    fn intersection_lies_in_both(
        xs in prop::collection::vec(homogeneous(2, 3), 0..5),
        ys in prop::collection::vec(homogeneous(2, 3), 0..5),
    ) {
        let a = Subspace::span_tensors(2, 3, &xs, &Default::default()).unwrap();
        let b = Subspace::span_tensors(2, 3, &ys, &Default::default()).unwrap();
        let m = a.intersect(&b).unwrap();
        prop_assert!(m.is_subspace_of(&a).unwrap());
        prop_assert!(m.is_subspace_of(&b).unwrap());
        prop_assert_eq!(m.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
    }
}

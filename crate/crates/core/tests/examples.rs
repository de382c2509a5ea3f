use loopsig::evidence::{area, conjecture_evidence};
use loopsig::spaces::{Family, InvariantSpaces};
use loopsig::{Subspace, TensorElement};

fn spaces(d: usize) -> InvariantSpaces {
    InvariantSpaces::new(d).unwrap()
}

#[test]
fn conjugation_dims() {
    assert_eq!(spaces(2).conj_invariants(6).unwrap().dim(), 14);
    assert_eq!(spaces(3).conj_invariants(6).unwrap().dim(), 130);
    assert_eq!(spaces(4).conj_invariants(4).unwrap().dim(), 70);
}

#[test]
fn s_and_v_dims() {
    assert_eq!(spaces(2).space_s(2).unwrap().dim(), 3);
    assert_eq!(spaces(3).space_s(2).unwrap().dim(), 6);
    assert_eq!(spaces(2).space_s(1).unwrap().dim(), 2);
    let d3 = spaces(3);
    let dims: Vec<usize> = (1..=6).map(|n| d3.space_v(n).unwrap().dim()).collect();
    assert_eq!(dims, [0, 3, 8, 24, 72, 216]);
    assert_eq!(spaces(2).space_v(6).unwrap().dim(), 16);
}

#[test]
fn bracket_spans() {
    assert_eq!(spaces(2).bracket_v(6).unwrap().dim(), 12);
    assert_eq!(spaces(3).bracket_v(4).unwrap().dim(), 18);
}

#[test]
fn letter_reduced_dims() {
    let d2 = spaces(2);
    assert_eq!(d2.letter_reduced_loop_dim(8).unwrap(), 10);
    assert_eq!(d2.letter_reduced_conj_dim(8).unwrap(), 10);
    assert_eq!(spaces(3).letter_reduced_conj_dim(6).unwrap(), 38);
    let d4 = spaces(4);
    assert_eq!(d4.letter_reduced_conj_dim(4).unwrap(), 20);
    assert_eq!(d4.letter_reduced_loop_dim(4).unwrap(), 21);
}

#[test]
fn closure_invariants() {
    let d2 = spaces(2);
    let c = d2.closure_invariants(2).unwrap();
    let area12 = Subspace::span_tensors(2, 2, &[area(2, 1, 2)], &Default::default()).unwrap();
    assert_eq!(*c, area12);
    assert_eq!(spaces(3).closure_invariants(4).unwrap().dim(), 24);
}

#[test]
fn minimal_generators() {
    assert_eq!(spaces(2).min_generator_count(Family::Conjugation, 4).unwrap(), 1);
    assert_eq!(spaces(3).min_generator_count(Family::Conjugation, 6).unwrap(), 38);
}

#[test]
fn area_square_lies_in_rcl_rot() {
    let d2 = spaces(2);
    let sq: TensorElement = area(2, 1, 2).shuffle(&area(2, 1, 2)).unwrap();
    assert!(d2.rcl_rot(4).unwrap().contains_tensor(&sq).unwrap());
}

#[test]
fn closure_meets_conjugation_trivially_for_d2() {
    let d2 = spaces(2);
    for n in 1..=6 {
        assert_eq!(conjecture_evidence(&d2, n).unwrap().closure_meet_conj_dim, 0, "n={n}");
    }
}

// Large levels take minutes; run with `cargo test -- --ignored`.

#[test]
#[ignore]
fn d3_v_at_level_eight() {
    assert_eq!(spaces(3).space_v(8).unwrap().dim(), 1944);
}

#[test]
#[ignore]
fn d3_letter_reduced_loop_at_level_nine() {
    assert_eq!(spaces(3).letter_reduced_loop_dim(9).unwrap(), 508);
}

#[test]
#[ignore]
fn d2_minimal_generators_at_level_twelve() {
    assert_eq!(spaces(2).min_generator_count(Family::Conjugation, 12).unwrap(), 68);
}

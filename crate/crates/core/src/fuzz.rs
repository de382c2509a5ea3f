//! Randomized checks of the invariance statements against exact path
//! signatures.
//!
//! Every trial draws its own ChaCha stream from `(seed, suite, trial)`, so
//! reports are reproducible and independent of how trials are scheduled
//! across threads.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Budget, Subspace};
use crate::operators::{lcl, rcl, rot};
use crate::path::{path_signature, PiecewiseLinearPath, TruncatedSignature};
use crate::rational::{factorial, format_rational, Rational};
use crate::spaces::InvariantSpaces;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// Truncation level used when none is given.
pub fn default_level(d: usize) -> usize {
    match d {
        2 => 6,
        3 => 5,
        _ => 4,
    }
}

/// Candidate budget for witness searches.
pub const WITNESS_CANDIDATES: usize = 1000;

#[derive(Clone, Copy)]
#[repr(u64)]
enum Suite {
    Conjugation = 1,
    Loop = 2,
    Closure = 3,
    Steps = 4,
    Staircase = 5,
    ConjugationWitness = 11,
    LoopWitness = 12,
}

fn rng_for(seed: u64, suite: Suite, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | trial);
    rng
}

/// Numerator uniform in `[-3, 3]`, denominator in `{1, 2, 3}`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-3..=3);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

/// One to five segments with [`random_rational`] coordinates.
pub fn random_path<R: Rng>(rng: &mut R, d: usize) -> PiecewiseLinearPath {
    let segments = rng.gen_range(1..=5);
    let segs = (0..segments)
        .map(|_| (0..d).map(|_| random_rational(rng)).collect())
        .collect();
    PiecewiseLinearPath::new(d, segs).expect("segments have d coordinates")
}

fn random_word<R: Rng>(rng: &mut R, d: usize, n: usize) -> Word {
    let letters: Vec<Letter> = (0..n).map(|_| rng.gen_range(1..=d as Letter)).collect();
    Word::from_letters(&letters)
}

/// An exact equality that did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub check: String,
    pub element: String,
    pub paths: Vec<PiecewiseLinearPath>,
    pub left: String,
    pub right: String,
}

/// Paths on which a chosen element takes different values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub paths: Vec<PiecewiseLinearPath>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSearch {
    pub element: String,
    pub candidates_tried: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub suite: String,
    pub d: usize,
    pub level: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<FuzzFailure>,
    pub witness_search: Option<WitnessSearch>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} d={} N={} trials={} seed={}: {} checks, {} failures",
            self.suite,
            self.d,
            self.level,
            self.trials,
            self.seed,
            self.checks,
            self.failures.len()
        );
        if let Some(w) = &self.witness_search {
            match &w.witness {
                Some(found) => s.push_str(&format!(
                    "; witness for {} after {} candidates ({} vs {})",
                    w.element, w.candidates_tried, found.left, found.right
                )),
                None => s.push_str(&format!(
                    "; no witness for {} in {} candidates",
                    w.element, w.candidates_tried
                )),
            }
        }
        s
    }
}

#[derive(Default)]
struct TrialOutcome {
    checks: u64,
    failures: Vec<FuzzFailure>,
}

impl TrialOutcome {
    fn compare(
        &mut self,
        trial: usize,
        check: &str,
        element: &TensorElement,
        paths: &[&PiecewiseLinearPath],
        left: Rational,
        right: Rational,
    ) {
        self.checks += 1;
        if left != right {
            self.failures.push(FuzzFailure {
                trial,
                check: check.to_string(),
                element: element.to_string(),
                paths: paths.iter().map(|p| (*p).clone()).collect(),
                left: format_rational(&left),
                right: format_rational(&right),
            });
        }
    }
}

fn run_trials<F>(trials: usize, f: F) -> Result<TrialOutcome>
where
    F: Fn(usize) -> Result<TrialOutcome> + Sync + Send,
{
    let outcomes: Vec<Result<TrialOutcome>> = (0..trials).into_par_iter().map(f).collect();
    let mut total = TrialOutcome::default();
    for o in outcomes {
        let o = o?;
        total.checks += o.checks;
        total.failures.extend(o.failures);
    }
    Ok(total)
}

fn bases_up_to<F>(level: usize, mut f: F) -> Result<Vec<TensorElement>>
where
    F: FnMut(usize) -> Result<std::sync::Arc<Subspace>>,
{
    let mut out = Vec::new();
    for k in 1..=level {
        out.extend(f(k)?.basis());
    }
    Ok(out)
}

fn check_args(spaces: &InvariantSpaces, level: usize) -> Result<usize> {
    if level == 0 {
        return Err(Error::InvalidArgument("truncation level must be at least 1".into()));
    }
    Ok(spaces.alphabet_size())
}

/// `⟨sig(A⊔B), b⟩ = ⟨sig(B⊔A), b⟩` for every conjugation-invariant basis
/// element `b` up to `level`, plus a witness search showing `12 - 21` is
/// not conjugation invariant.
pub fn fuzz_conjugation(spaces: &InvariantSpaces, level: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    let d = check_args(spaces, level)?;
    let basis = bases_up_to(level, |k| spaces.conj_invariants(k))?;
    let outcome = run_trials(trials, |t| {
        let mut rng = rng_for(seed, Suite::Conjugation, t as u64);
        let a = random_path(&mut rng, d);
        let b = random_path(&mut rng, d);
        let ab = path_signature(&a.concat(&b)?, level);
        let ba = path_signature(&b.concat(&a)?, level);
        let mut out = TrialOutcome::default();
        for x in &basis {
            out.compare(t, "sig(A⊔B) vs sig(B⊔A)", x, &[&a, &b], ab.pair(x)?, ba.pair(x)?);
        }
        Ok(out)
    })?;

    let witness_search = if d >= 2 && level >= 2 {
        let area = TensorElement::parse(d, "12 - 21")?;
        let mut tried = 0;
        let mut witness = None;
        while tried < WITNESS_CANDIDATES && witness.is_none() {
            let mut rng = rng_for(seed, Suite::ConjugationWitness, tried as u64);
            tried += 1;
            let a = random_path(&mut rng, d);
            let b = random_path(&mut rng, d);
            let left = path_signature(&a.concat(&b)?, 2).pair(&area)?;
            let right = path_signature(&b.concat(&a)?, 2).pair(&area)?;
            if left != right {
                witness = Some(Witness {
                    paths: vec![a, b],
                    left: format_rational(&left),
                    right: format_rational(&right),
                });
            }
        }
        Some(WitnessSearch {
            element: area.to_string(),
            candidates_tried: tried,
            witness,
        })
    } else {
        None
    };

    Ok(FuzzReport {
        suite: "conjugation".into(),
        d,
        level,
        trials,
        seed,
        checks: outcome.checks,
        failures: outcome.failures,
        witness_search,
    })
}

/// For random loops, every loop-invariant basis element pairs to the same
/// value under each rotation of the segment list and under conjugation
/// `B ⊔ A ⊔ B⁻¹`; a witness search shows `112` is not loop invariant.
pub fn fuzz_loop(spaces: &InvariantSpaces, level: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    let d = check_args(spaces, level)?;
    let basis = bases_up_to(level, |k| spaces.loop_invariants(k))?;
    let outcome = run_trials(trials, |t| {
        let mut rng = rng_for(seed, Suite::Loop, t as u64);
        let lp = random_path(&mut rng, d).closed();
        let base = path_signature(&lp, level);
        let mut out = TrialOutcome::default();
        for r in 1..lp.len() {
            let rotated = lp.rotate_segments(r);
            let sig = path_signature(&rotated, level);
            for x in &basis {
                out.compare(
                    t,
                    "loop vs rotated loop",
                    x,
                    &[&lp, &rotated],
                    base.pair(x)?,
                    sig.pair(x)?,
                );
            }
        }
        let b = random_path(&mut rng, d);
        let conj = path_signature(&b.concat(&lp)?.concat(&b.reverse())?, level);
        for x in &basis {
            out.compare(
                t,
                "loop vs conjugated loop",
                x,
                &[&lp, &b],
                base.pair(x)?,
                conj.pair(x)?,
            );
        }
        Ok(out)
    })?;

    let witness_search = if level >= 3 {
        let target = TensorElement::parse(d, "112")?;
        let mut tried = 0;
        let mut witness = None;
        let mut loop_index = 0u64;
        'search: while tried < WITNESS_CANDIDATES {
            let mut rng = rng_for(seed, Suite::LoopWitness, loop_index);
            loop_index += 1;
            let lp = random_path(&mut rng, d).closed();
            let base = path_signature(&lp, 3).pair(&target)?;
            for r in 1..lp.len() {
                if tried >= WITNESS_CANDIDATES {
                    break 'search;
                }
                tried += 1;
                let rotated = lp.rotate_segments(r);
                let value = path_signature(&rotated, 3).pair(&target)?;
                if value != base {
                    witness = Some(Witness {
                        paths: vec![lp, rotated],
                        left: format_rational(&base),
                        right: format_rational(&value),
                    });
                    break 'search;
                }
            }
        }
        Some(WitnessSearch {
            element: target.to_string(),
            candidates_tried: tried,
            witness,
        })
    } else {
        None
    };

    Ok(FuzzReport {
        suite: "loop".into(),
        d,
        level,
        trials,
        seed,
        checks: outcome.checks,
        failures: outcome.failures,
        witness_search,
    })
}

/// `⟨sig X, rcl(w)⟩ = ⟨sig(X ⊔ R_X), w⟩` and its mirror
/// `⟨sig X, lcl(w)⟩ = ⟨sig(R_X ⊔ X), w⟩` for one random word per level, and
/// invariance of every basis element of `im rcl` (resp. `im lcl`) under
/// appending (resp. prepending) the closing segment.
pub fn fuzz_closure(spaces: &InvariantSpaces, level: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    let d = check_args(spaces, level)?;
    let right_basis = bases_up_to(level, |k| spaces.closure_invariants(k))?;
    let mut left_basis = Vec::new();
    for k in 1..=level {
        let images: Vec<TensorElement> = Word::all(d, k).map(|w| lcl(&TensorElement::from_word(d, w))).collect();
        left_basis.extend(Subspace::span_tensors(d, k, &images, spaces.budget())?.basis());
    }
    let outcome = run_trials(trials, |t| {
        let mut rng = rng_for(seed, Suite::Closure, t as u64);
        let x = random_path(&mut rng, d);
        let mut closing = PiecewiseLinearPath::empty(d);
        closing.push_segment(x.closing_segment())?;
        let sig = path_signature(&x, level);
        let right = path_signature(&x.concat(&closing)?, level);
        let left = path_signature(&closing.concat(&x)?, level);
        let mut out = TrialOutcome::default();
        for k in 1..=level {
            let w = TensorElement::from_word(d, random_word(&mut rng, d, k));
            out.compare(
                t,
                "⟨sig X, rcl w⟩ vs ⟨sig(X⊔R_X), w⟩",
                &w,
                &[&x],
                sig.pair(&rcl(&w))?,
                right.pair(&w)?,
            );
            out.compare(
                t,
                "⟨sig X, lcl w⟩ vs ⟨sig(R_X⊔X), w⟩",
                &w,
                &[&x],
                sig.pair(&lcl(&w))?,
                left.pair(&w)?,
            );
        }
        for b in &right_basis {
            out.compare(t, "im rcl: X vs X⊔R_X", b, &[&x], sig.pair(b)?, right.pair(b)?);
        }
        for b in &left_basis {
            out.compare(t, "im lcl: X vs R_X⊔X", b, &[&x], sig.pair(b)?, left.pair(b)?);
        }
        Ok(out)
    })?;

    Ok(FuzzReport {
        suite: "closure".into(),
        d,
        level,
        trials,
        seed,
        checks: outcome.checks,
        failures: outcome.failures,
        witness_search: None,
    })
}

/// Right `a`, up `b`, right `c`, up `d`.
pub fn steps_path(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> PiecewiseLinearPath {
    let z = Rational::zero();
    PiecewiseLinearPath::new(
        2,
        vec![
            vec![a.clone(), z.clone()],
            vec![z.clone(), b.clone()],
            vec![c.clone(), z.clone()],
            vec![z, d.clone()],
        ],
    )
    .expect("two coordinates")
}

/// `⟨sig, 1212⟩ = abcd` and `⟨sig, 2121⟩ = 0` on random step paths.
pub fn fuzz_steps(trials: usize, seed: u64) -> Result<FuzzReport> {
    let w1212 = TensorElement::parse(2, "1212")?;
    let w2121 = TensorElement::parse(2, "2121")?;
    let outcome = run_trials(trials, |t| {
        let mut rng = rng_for(seed, Suite::Steps, t as u64);
        let [a, b, c, d] = [0; 4].map(|_| random_rational(&mut rng));
        let p = steps_path(&a, &b, &c, &d);
        let sig = path_signature(&p, 4);
        let mut out = TrialOutcome::default();
        out.compare(
            t,
            "⟨sig, 1212⟩ vs abcd",
            &w1212,
            &[&p],
            sig.pair(&w1212)?,
            &a * &b * &c * &d,
        );
        out.compare(
            t,
            "⟨sig, 2121⟩ vs 0",
            &w2121,
            &[&p],
            sig.pair(&w2121)?,
            Rational::zero(),
        );
        Ok(out)
    })?;
    Ok(FuzzReport {
        suite: "steps".into(),
        d: 2,
        level: 4,
        trials,
        seed,
        checks: outcome.checks,
        failures: outcome.failures,
        witness_search: None,
    })
}

/// `1^{m+1} (21)^{n-1} 2`.
pub fn staircase_word(n: usize, m: usize) -> Result<Word> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("staircase needs n ≥ 1 and m ≥ 1".into()));
    }
    let mut letters = vec![1; m + 1];
    for _ in 1..n {
        letters.extend([2, 1]);
    }
    letters.push(2);
    Ok(Word::from_letters(&letters))
}

/// Alternating axis path: right `x_1`, up 1, right `x_2`, up 1, ….
pub fn staircase_path(x: &[Rational]) -> PiecewiseLinearPath {
    let mut segs = Vec::with_capacity(2 * x.len());
    for xi in x {
        segs.push(vec![xi.clone(), Rational::zero()]);
        segs.push(vec![Rational::zero(), Rational::from_integer(1.into())]);
    }
    PiecewiseLinearPath::new(2, segs).expect("two coordinates")
}

/// `⟨sig(staircase(x)), rot(1^{m+1}(21)^{n-1}2)⟩` with `n = x.len()`.
pub fn staircase_eval(m: usize, x: &[Rational]) -> Result<Rational> {
    let w = staircase_word(x.len(), m)?;
    let invariant = rot(&w, 2)?;
    path_signature(&staircase_path(x), w.len()).pair(&invariant)
}

/// `x_1⋯x_n · Σ x_i^m / (m+1)!`. Each run of `m+1` ones in a rotation of
/// the word has to be read inside a single horizontal step, which is where
/// the factorial comes from.
pub fn staircase_closed_form(m: usize, x: &[Rational]) -> Rational {
    let product: Rational = x.iter().fold(Rational::from_integer(1.into()), |acc, v| acc * v);
    let power_sum: Rational = x
        .iter()
        .fold(Rational::zero(), |acc, v| acc + num_traits::pow(v.clone(), m));
    product * power_sum / Rational::from_integer(factorial(m + 1))
}

/// Staircase evaluation against the closed form for all `n ≤ max_n`,
/// `m ≤ max_m`, with `trials` random `x` each.
pub fn fuzz_staircase(max_n: usize, max_m: usize, trials: usize, seed: u64) -> Result<FuzzReport> {
    let outcome = run_trials(trials, |t| {
        let mut rng = rng_for(seed, Suite::Staircase, t as u64);
        let mut out = TrialOutcome::default();
        for n in 1..=max_n {
            let x: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let p = staircase_path(&x);
            for m in 1..=max_m {
                let w = TensorElement::from_word(2, staircase_word(n, m)?);
                out.compare(
                    t,
                    "staircase vs closed form",
                    &w,
                    &[&p],
                    staircase_eval(m, &x)?,
                    staircase_closed_form(m, &x),
                );
            }
        }
        Ok(out)
    })?;
    Ok(FuzzReport {
        suite: "staircase".into(),
        d: 2,
        level: 2 * max_n + max_m,
        trials,
        seed,
        checks: outcome.checks,
        failures: outcome.failures,
        witness_search: None,
    })
}

/// `sig` is grouplike on a random path; used as a sanity check by callers
/// that want to confirm the engine before trusting a report.
pub fn random_signature_is_grouplike(d: usize, level: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig: TruncatedSignature = path_signature(&random_path(&mut rng, d), level);
    sig.is_grouplike(level.min(5))
}

/// Runs every suite at `(d, level)` under a budget, in a fixed order.
pub fn fuzz_all(d: usize, level: usize, trials: usize, seed: u64, budget: Budget) -> Result<Vec<FuzzReport>> {
    let spaces = InvariantSpaces::new(d)?.with_budget(budget);
    let mut out = vec![
        fuzz_conjugation(&spaces, level, trials, seed)?,
        fuzz_loop(&spaces, level, trials, seed)?,
        fuzz_closure(&spaces, level, trials, seed)?,
    ];
    if d == 2 {
        out.push(fuzz_steps(trials.min(100), seed)?);
        out.push(fuzz_staircase(3, 3, trials.min(20), seed)?);
    }
    Ok(out)
}

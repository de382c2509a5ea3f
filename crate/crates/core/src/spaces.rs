//! The invariant subspaces of a level `T_n(R^d)`: conjugation invariants,
//! the shuffle ideal `S` of the letters, its orthogonal complement `V`, loop
//! invariants `[V, R^d]^⊥`, closure invariants `im rcl`, and the dimension
//! bookkeeping built on them.
//!
//! Every space with two independent constructions is computed both ways and
//! the two results are compared; a disagreement surfaces as
//! [`Error::CrossCheck`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::combinat::{lyndon_bracketing_cached, lyndon_count, lyndon_words, necklace_count, necklaces};
use crate::error::{Error, Result};
use crate::linalg::{Budget, LevelVector, Subspace};
use crate::operators::{closure_word, rot, Side};
use crate::rational::Rational;
use crate::relations::Check;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// Coefficient of `q^n` in `(1 - q)^d / (1 - d q)`.
pub fn dim_v_generating_function(d: usize, n: usize) -> u128 {
    // (1-q)^d has coefficients (-1)^k C(d,k); divide by (1 - dq) by
    // accumulating c_n = a_n + d c_{n-1}
    let mut binom = vec![0i128; n + 1];
    let mut c = 1i128;
    for (k, slot) in binom.iter_mut().enumerate() {
        if k > d {
            break;
        }
        *slot = if k % 2 == 0 { c } else { -c };
        c = c * (d - k) as i128 / (k + 1) as i128;
    }
    let mut acc = 0i128;
    for a in binom {
        acc = a + d as i128 * acc;
    }
    acc as u128
}

/// Generator counts of the free graded-commutative algebra with the given
/// graded dimensions (`dims[0]` is level 1). Mismatch with an observed
/// generator count means relations exist.
pub fn inverse_euler_transform(dims: &[i128]) -> Vec<i128> {
    let n_max = dims.len();
    let a = |k: usize| if k == 0 { 1 } else { dims[k - 1] };
    // c_n = n a_n - Σ_{k<n} c_k a_{n-k} = Σ_{j | n} j g_j
    let mut c = vec![0i128; n_max + 1];
    for n in 1..=n_max {
        let lower: i128 = (1..n).map(|k| c[k] * a(n - k)).sum();
        c[n] = n as i128 * a(n) - lower;
    }
    let mut g = vec![0i128; n_max + 1];
    for n in 1..=n_max {
        let lower: i128 = (1..n).filter(|j| n % j == 0).map(|j| j as i128 * g[j]).sum();
        g[n] = (c[n] - lower) / n as i128;
    }
    g[1..].to_vec()
}

/// Which graded family the generator count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Conjugation invariants.
    Conjugation,
    /// `rcl(LoopInv)`, the loop-and-closure invariants.
    LoopClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    ConjRot,
    ConjBracket,
    S,
    VComplement,
    VPbw,
    BracketV,
    BracketT,
    LoopBracket,
    LoopClosureKernel,
    RclRot,
    Closure,
    KerRcl,
    RclLoop,
    AreaConj,
}

// Each cell has its own lock so that a space requested from several
// threads is computed once. Dependencies between cells form a DAG (lower
// levels, or other kinds at the same level), so holding a cell lock while
// computing its dependencies cannot deadlock.
type Cell = Arc<Mutex<Option<Arc<Subspace>>>>;

/// Lazily computed invariant spaces for a fixed alphabet size. Clones made
/// with [`InvariantSpaces::with_budget`] share the cache, so independent
/// levels may be computed from several threads.
#[derive(Clone)]
pub struct InvariantSpaces {
    d: usize,
    budget: Budget,
    cache: Arc<Mutex<HashMap<(Kind, usize), Cell>>>,
}

/// One row of the dimension tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub d: usize,
    pub level: usize,
    pub conjugation: usize,
    pub logsignature: usize,
    pub v: usize,
    pub bracket_vr: usize,
    pub letter_reduced_conj: usize,
    pub letter_reduced_loop: usize,
    pub closure: usize,
    pub loop_inv: usize,
    pub s: usize,
    pub min_generators: usize,
    pub min_generators_loop_closure: usize,
}

impl InvariantSpaces {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if d > crate::word::MAX_ALPHABET {
            return Err(Error::InvalidArgument(format!("alphabet size {d} too large")));
        }
        Ok(InvariantSpaces {
            d,
            budget: Budget::unlimited(),
            cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    /// A handle sharing this cache whose computations run under `budget`.
    pub fn with_budget(&self, budget: Budget) -> Self {
        InvariantSpaces {
            d: self.d,
            budget,
            cache: Arc::clone(&self.cache),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Failed computations are not cached, so a later call with a larger
    /// budget can retry.
    fn cached<F>(&self, kind: Kind, n: usize, compute: F) -> Result<Arc<Subspace>>
    where
        F: FnOnce() -> Result<Subspace>,
    {
        let cell = {
            let mut map = self.cache.lock().expect("cache lock poisoned");
            Arc::clone(map.entry((kind, n)).or_default())
        };
        let mut slot = cell.lock().expect("cell lock poisoned");
        if let Some(s) = slot.as_ref() {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(compute()?);
        *slot = Some(Arc::clone(&s));
        Ok(s)
    }

    fn letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.d as Letter
    }

    fn span(&self, n: usize, elements: &[TensorElement]) -> Result<Subspace> {
        Subspace::span_tensors(self.d, n, elements, &self.budget)
    }

    fn vectors_span(&self, n: usize, vectors: Vec<LevelVector>) -> Result<Subspace> {
        Subspace::span_with_budget(self.d, n, vectors, &self.budget)
    }

    fn require_level(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("level must be at least 1".into()));
        }
        Ok(())
    }

    /// `rot(w)` for every necklace representative `w` of length `n`.
    pub fn necklace_rotations(&self, n: usize) -> Result<Vec<TensorElement>> {
        Self::require_level(n)?;
        necklaces(self.d, n).iter().map(|w| rot(w, self.d)).collect()
    }

    /// Conjugation invariants as `span{rot(w)}`.
    pub fn conj_via_rot(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::ConjRot, n, || self.span(n, &self.necklace_rotations(n)?))
    }

    /// Conjugation invariants as the annihilator of `{[i, q]}`.
    pub fn conj_via_brackets(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::ConjBracket, n, || {
            let t = self.bracket_t(n)?;
            t.complement_with_budget(&self.budget)
        })
    }

    /// Conjugation invariants of level `n`, both constructions compared.
    pub fn conj_invariants(&self, n: usize) -> Result<Arc<Subspace>> {
        let a = self.conj_via_rot(n)?;
        let b = self.conj_via_brackets(n)?;
        if *a != *b {
            return Err(Error::CrossCheck(format!(
                "conjugation invariants d={} n={n}: im rot (dim {}) != bracket annihilator (dim {})",
                self.d,
                a.dim(),
                b.dim()
            )));
        }
        Ok(a)
    }

    /// `S_n = span{ i ⧢ u : i letter, |u| = n - 1 }`.
    pub fn space_s(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::S, n, || {
            let mut gens = Vec::with_capacity(self.d.pow(n as u32));
            for u in Word::all(self.d, n - 1) {
                let u = TensorElement::from_word(self.d, u);
                for i in self.letters() {
                    gens.push(TensorElement::letter(self.d, i).shuffle(&u)?);
                }
            }
            self.span(n, &gens)
        })
    }

    /// `V_n = S_n^⊥`.
    pub fn v_via_complement(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::VComplement, n, || {
            if n == 0 {
                return Ok(Subspace::full(self.d, 0));
            }
            self.space_s(n)?.complement_with_budget(&self.budget)
        })
    }

    /// `V_n` as the span of ordered products `P_{h_1} ⋯ P_{h_k}` of Lie
    /// polynomials of non-letter Lyndon words, `h_1 ≤ ... ≤ h_k`.
    pub fn v_via_pbw(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::VPbw, n, || self.span(n, &self.pbw_monomials(n)?))
    }

    /// The PBW monomials spanning `V_n`; there are exactly `dim V_n` of them.
    pub fn pbw_monomials(&self, n: usize) -> Result<Vec<TensorElement>> {
        let d = self.d;
        let mut factors: Vec<Word> = (2..=n).flat_map(|k| lyndon_words(d, k)).collect();
        factors.sort_by(|a, b| a.letters().cmp(b.letters()));
        let mut cache = HashMap::new();
        let mut polys = Vec::with_capacity(factors.len());
        for h in &factors {
            polys.push(lyndon_bracketing_cached(h, d, &mut cache)?);
        }

        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn walk(
            start: usize,
            remaining: usize,
            factors: &[Word],
            polys: &[TensorElement],
            stack: &mut Vec<usize>,
            out: &mut Vec<TensorElement>,
            d: usize,
        ) -> Result<()> {
            if remaining == 0 {
                let mut prod = TensorElement::unit(d);
                for &i in stack.iter() {
                    prod = prod.concat(&polys[i])?;
                }
                out.push(prod);
                return Ok(());
            }
            for i in start..factors.len() {
                if factors[i].len() <= remaining {
                    stack.push(i);
                    walk(i, remaining - factors[i].len(), factors, polys, stack, out, d)?;
                    stack.pop();
                }
            }
            Ok(())
        }
        walk(0, n, &factors, &polys, &mut stack, &mut out, d)?;
        Ok(out)
    }

    /// `V_n` by both routes, also checked against the generating function.
    pub fn space_v(&self, n: usize) -> Result<Arc<Subspace>> {
        let a = self.v_via_complement(n)?;
        let b = self.v_via_pbw(n)?;
        if *a != *b {
            return Err(Error::CrossCheck(format!(
                "V_{n} for d={}: S^⊥ (dim {}) != PBW span (dim {})",
                self.d,
                a.dim(),
                b.dim()
            )));
        }
        let expected = dim_v_generating_function(self.d, n);
        if a.dim() as u128 != expected {
            return Err(Error::CrossCheck(format!(
                "dim V_{n} = {} but generating function gives {expected}",
                a.dim()
            )));
        }
        Ok(a)
    }

    /// `[V_{n-1}, R^d]` at level `n`.
    pub fn bracket_v(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::BracketV, n, || {
            let v = self.space_v(n - 1)?;
            bracket_span_with_budget(&v, &self.budget)
        })
    }

    /// `[T_{n-1}, R^d]` at level `n`.
    pub fn bracket_t(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::BracketT, n, || {
            bracket_span_with_budget(&Subspace::full(self.d, n - 1), &self.budget)
        })
    }

    /// Loop invariants as `[V_{n-1}, R^d]^⊥`.
    pub fn loop_via_brackets(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::LoopBracket, n, || {
            self.bracket_v(n)?.complement_with_budget(&self.budget)
        })
    }

    /// Loop invariants as `ker(rcl - lcl)` on level `n`.
    pub fn loop_via_closure(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::LoopClosureKernel, n, || {
            let rows = self.operator_constraint_rows(n, |w| {
                closure_word(w, self.d, Side::Right) - closure_word(w, self.d, Side::Left)
            })?;
            Subspace::kernel_with_budget(self.d, n, rows, &self.budget)
        })
    }

    /// Loop invariants of level `n`, both constructions compared.
    pub fn loop_invariants(&self, n: usize) -> Result<Arc<Subspace>> {
        let a = self.loop_via_brackets(n)?;
        let b = self.loop_via_closure(n)?;
        if *a != *b {
            return Err(Error::CrossCheck(format!(
                "loop invariants d={} n={n}: [V,R^d]^⊥ (dim {}) != ker(rcl - lcl) (dim {})",
                self.d,
                a.dim(),
                b.dim()
            )));
        }
        Ok(a)
    }

    /// Rows `u ↦ (coefficient of u in f(w))_w` whose common kernel is
    /// `ker f` on level `n`.
    fn operator_constraint_rows<F>(&self, n: usize, f: F) -> Result<Vec<LevelVector>>
    where
        F: Fn(&Word) -> TensorElement,
    {
        let size = self.d.pow(n as u32);
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); size];
        for (wi, w) in Word::all(self.d, n).enumerate() {
            for (u, c) in f(&w).terms() {
                columns[u.index(self.d)].push((wi, c.clone()));
            }
            if wi % 64 == 0 {
                self.budget.check_time()?;
            }
        }
        columns
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|c| LevelVector::new(self.d, n, c))
            .collect()
    }

    /// `span{ rcl(rot(w)) : w necklace of length n }`.
    pub fn rcl_rot(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::RclRot, n, || {
            let images: Vec<TensorElement> = self.necklace_rotations(n)?.iter().map(crate::operators::rcl).collect();
            self.span(n, &images)
        })
    }

    /// `dim V_n - dim [V_{n-1}, R^d]`.
    pub fn letter_reduced_loop_dim(&self, n: usize) -> Result<usize> {
        Ok(self.space_v(n)?.dim() - self.bracket_v(n)?.dim())
    }

    /// `dim V_n - dim([T_{n-1}, R^d] ∩ V_n)`, checked against
    /// `rank{rcl(rot(w))}`.
    pub fn letter_reduced_conj_dim(&self, n: usize) -> Result<usize> {
        let v = self.space_v(n)?;
        let meet = self.bracket_t(n)?.intersect_with_budget(&v, &self.budget)?;
        let quotient = v.dim() - meet.dim();
        let rank = self.rcl_rot(n)?.dim();
        if quotient != rank {
            return Err(Error::CrossCheck(format!(
                "letter-reduced conj d={} n={n}: quotient formula {quotient} != rank rcl∘rot {rank}",
                self.d
            )));
        }
        Ok(quotient)
    }

    /// `im rcl` on level `n`: the right-closure invariants.
    pub fn closure_invariants(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::Closure, n, || {
            let images: Vec<LevelVector> = Word::all(self.d, n)
                .map(|w| LevelVector::from_tensor(&closure_word(&w, self.d, Side::Right), n))
                .collect::<Result<_>>()?;
            self.vectors_span(n, images)
        })
    }

    /// `ker rcl` on level `n`.
    pub fn ker_rcl(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::KerRcl, n, || {
            let rows = self.operator_constraint_rows(n, |w| closure_word(w, self.d, Side::Right))?;
            Subspace::kernel_with_budget(self.d, n, rows, &self.budget)
        })
    }

    /// `rcl(LoopInv_n)`, the loop-and-closure invariants of level `n`.
    pub fn rcl_loop(&self, n: usize) -> Result<Arc<Subspace>> {
        self.cached(Kind::RclLoop, n, || {
            let images: Vec<TensorElement> = self
                .loop_via_brackets(n)?
                .basis()
                .iter()
                .map(crate::operators::rcl)
                .collect();
            self.span(n, &images)
        })
    }

    /// Basis of a family at level `n` used for generator counting.
    fn family_basis(&self, family: Family, n: usize) -> Result<Arc<Subspace>> {
        match family {
            Family::Conjugation => self.conj_via_rot(n),
            Family::LoopClosure => self.rcl_loop(n),
        }
    }

    /// `dim F_n - rank{ a ⧢ b : a ∈ F_k, b ∈ F_{n-k}, 1 ≤ k ≤ n/2 }`: the
    /// number of degree-`n` generators of the shuffle algebra `F` not
    /// reachable as products of lower-degree elements.
    pub fn min_generator_count(&self, family: Family, n: usize) -> Result<usize> {
        Self::require_level(n)?;
        let top = self.family_basis(family, n)?;
        let mut products = Vec::new();
        for k in 1..=n / 2 {
            let left = self.family_basis(family, k)?.basis();
            let right = self.family_basis(family, n - k)?.basis();
            for (i, a) in left.iter().enumerate() {
                let start = if k == n - k { i } else { 0 };
                for b in &right[start..] {
                    products.push(a.shuffle(b)?);
                }
            }
            self.budget.check_time()?;
        }
        let decomposable = self.span(n, &products)?;
        if !decomposable.is_subspace_of(&top)? {
            return Err(Error::CrossCheck(format!(
                "{family:?} d={} n={n}: products leave the family",
                self.d
            )));
        }
        Ok(top.dim() - decomposable.dim())
    }

    /// The shuffle subalgebra generated by the areas `ij - ji` and the
    /// conjugation invariants, at level `n`.
    pub fn area_conj(&self, n: usize) -> Result<Arc<Subspace>> {
        Self::require_level(n)?;
        self.cached(Kind::AreaConj, n, || {
            let mut gens = self.conj_via_rot(n)?.basis();
            if n == 2 {
                for i in 1..=self.d as Letter {
                    for j in i + 1..=self.d as Letter {
                        gens.push(TensorElement::from_terms(
                            self.d,
                            [
                                (Word::from_letters(&[i, j]), Rational::from_integer(1.into())),
                                (Word::from_letters(&[j, i]), Rational::from_integer((-1).into())),
                            ],
                        )?);
                    }
                }
            }
            for k in 1..=n / 2 {
                let left = self.area_conj(k)?.basis();
                let right = self.area_conj(n - k)?.basis();
                for (i, a) in left.iter().enumerate() {
                    let start = if k == n - k { i } else { 0 };
                    for b in &right[start..] {
                        gens.push(a.shuffle(b)?);
                    }
                }
            }
            self.span(n, &gens)
        })
    }

    /// Inclusions and decompositions that must hold at every level.
    pub fn structural_checks(&self, n: usize) -> Result<Vec<Check>> {
        let d = self.d;
        let s = self.space_s(n)?;
        let v = self.space_v(n)?;
        let conj = self.conj_invariants(n)?;
        let loops = self.loop_invariants(n)?;
        let closure = self.closure_invariants(n)?;
        let ker = self.ker_rcl(n)?;
        let rcl_loop = self.rcl_loop(n)?;
        let meet = closure.intersect_with_budget(&s, &self.budget)?;
        let reduced_loop = self.letter_reduced_loop_dim(n)?;
        let reduced_conj = self.letter_reduced_conj_dim(n)?;
        let tag = |what: &str| format!("d={d} n={n}: {what}");
        Ok(vec![
            Check::new(
                tag("ker rcl = S_n"),
                *ker == *s,
                format!("dim ker rcl {} / dim S_n {}", ker.dim(), s.dim()),
            ),
            Check::new(
                tag("T_n = S_n ⊕ im rcl"),
                meet.dim() == 0 && s.dim() + closure.dim() == d.pow(n as u32),
                format!(
                    "dim S_n {} + dim im rcl {}, meet {}",
                    s.dim(),
                    closure.dim(),
                    meet.dim()
                ),
            ),
            Check::new(
                tag("dim im rcl = dim V_n"),
                closure.dim() == v.dim(),
                format!("{} vs {}", closure.dim(), v.dim()),
            ),
            Check::new(
                tag("ConjInv_n ⊆ LoopInv_n"),
                conj.is_subspace_of(&loops)?,
                String::new(),
            ),
            Check::new(tag("S_n ⊆ LoopInv_n"), s.is_subspace_of(&loops)?, String::new()),
            Check::new(
                tag("rcl(LoopInv_n) ⊆ LoopInv_n"),
                rcl_loop.is_subspace_of(&loops)?,
                String::new(),
            ),
            Check::new(
                tag("rank rcl on LoopInv_n = letter-reduced loop dim"),
                rcl_loop.dim() == reduced_loop,
                format!("{} vs {}", rcl_loop.dim(), reduced_loop),
            ),
            Check::new(
                tag("letter-reduced conj ≤ letter-reduced loop"),
                reduced_conj <= reduced_loop,
                format!("{reduced_conj} vs {reduced_loop}"),
            ),
        ])
    }

    /// All dimension columns for level `n`, with every two-route check run.
    pub fn report(&self, n: usize) -> Result<InvariantReport> {
        Self::require_level(n)?;
        let d = self.d;
        let conj = self.conj_invariants(n)?;
        if conj.dim() as u64 != necklace_count(d as u64, n as u64) {
            return Err(Error::CrossCheck(format!(
                "conjugation dim {} differs from necklace count",
                conj.dim()
            )));
        }
        let v = self.space_v(n)?;
        let s = self.space_s(n)?;
        if s.dim() + v.dim() != d.pow(n as u32) {
            return Err(Error::CrossCheck("dim S_n + dim V_n != d^n".into()));
        }
        let bracket_vr = self.bracket_v(n)?.dim();
        let loop_inv = self.loop_invariants(n)?;
        let letter_reduced_loop = v.dim() - bracket_vr;
        let letter_reduced_conj = self.letter_reduced_conj_dim(n)?;
        let closure = self.closure_invariants(n)?;
        if closure.dim() != v.dim() {
            return Err(Error::CrossCheck(format!(
                "dim im rcl = {} but dim V_n = {}",
                closure.dim(),
                v.dim()
            )));
        }
        Ok(InvariantReport {
            d,
            level: n,
            conjugation: conj.dim(),
            logsignature: lyndon_count(d as u64, n as u64) as usize,
            v: v.dim(),
            bracket_vr,
            letter_reduced_conj,
            letter_reduced_loop,
            closure: closure.dim(),
            loop_inv: loop_inv.dim(),
            s: s.dim(),
            min_generators: self.min_generator_count(Family::Conjugation, n)?,
            min_generators_loop_closure: self.min_generator_count(Family::LoopClosure, n)?,
        })
    }
}

/// `span{ [b, i] : b basis row of s, i letter }`, one level above `s`.
pub fn bracket_span(s: &Subspace) -> Result<Subspace> {
    bracket_span_with_budget(s, &Budget::unlimited())
}

pub fn bracket_span_with_budget(s: &Subspace, budget: &Budget) -> Result<Subspace> {
    let d = s.alphabet_size();
    let n = s.level() + 1;
    let mut gens = Vec::with_capacity(s.dim() * d);
    for b in s.basis() {
        for i in 1..=d as Letter {
            gens.push(b.bracket(&TensorElement::letter(d, i))?);
        }
    }
    Subspace::span_tensors(d, n, &gens, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spaces(d: usize) -> InvariantSpaces {
        InvariantSpaces::new(d).unwrap()
    }

    fn t(d: usize, s: &str) -> TensorElement {
        TensorElement::parse(d, s).unwrap()
    }

    #[test]
    fn generating_function_values() {
        let d3: Vec<u128> = (0..=8).map(|n| dim_v_generating_function(3, n)).collect();
        assert_eq!(d3, vec![1, 0, 3, 8, 24, 72, 216, 648, 1944]);
        let d2: Vec<u128> = (1..=10).map(|n| dim_v_generating_function(2, n)).collect();
        assert_eq!(d2, vec![0, 1, 2, 4, 8, 16, 32, 64, 128, 256]);
        assert_eq!(dim_v_generating_function(5, 4), 205);
        assert_eq!(dim_v_generating_function(7, 1), 0);
    }

    #[test]
    fn euler_transform_examples() {
        assert_eq!(inverse_euler_transform(&[2, 3, 4, 6, 8, 14]), vec![2, 0, 0, 1, 0, 4]);
        assert_eq!(inverse_euler_transform(&[1; 6]), vec![1, 0, 0, 0, 0, 0]);
        let d2: Vec<i128> = (1..=12).map(|n| necklace_count(2, n) as i128).collect();
        assert_eq!(inverse_euler_transform(&d2)[11], 64);
    }

    #[test]
    fn conj_small_levels() {
        let sp = spaces(2);
        let c2 = sp.conj_invariants(2).unwrap();
        assert_eq!(c2.dim(), 3);
        assert!(!c2.contains_tensor(&t(2, "12 - 21")).unwrap());
        assert!(c2.contains_tensor(&t(2, "12 + 21")).unwrap());
        assert_eq!(sp.conj_invariants(6).unwrap().dim(), 14);
        let c4 = sp.conj_invariants(4).unwrap();
        assert!(c4
            .contains_tensor(&rot(&Word::parse("1212", 2).unwrap(), 2).unwrap())
            .unwrap());
    }

    #[test]
    fn s_and_v_small_levels() {
        let sp = spaces(2);
        assert_eq!(sp.space_s(1).unwrap().dim(), 2);
        assert_eq!(sp.space_s(2).unwrap().dim(), 3);
        assert_eq!(sp.space_v(2).unwrap().basis(), vec![t(2, "12 - 21")]);
        let sp3 = spaces(3);
        assert_eq!(sp3.space_s(2).unwrap().dim(), 6);
        assert_eq!(sp3.space_v(2).unwrap().dim(), 3);
        let dims: Vec<usize> = (1..=5).map(|n| sp3.space_v(n).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 3, 8, 24, 72]);
    }

    #[test]
    fn v_equals_s_perp_route_by_route() {
        let sp = spaces(3);
        let s = sp.space_s(3).unwrap();
        assert_eq!(*sp.v_via_complement(3).unwrap(), s.orthogonal_complement().unwrap());
        assert_eq!(sp.pbw_monomials(3).unwrap().len(), 8);
    }

    #[test]
    fn bracket_span_examples() {
        let sp = spaces(3);
        assert_eq!(sp.bracket_v(4).unwrap().dim(), 18);
        assert_eq!(bracket_span(&Subspace::zero(2, 3)).unwrap().dim(), 0);
        assert_eq!(bracket_span(&Subspace::zero(2, 3)).unwrap().level(), 4);
    }

    #[test]
    fn loop_invariants_small() {
        let sp = spaces(2);
        let l2 = sp.loop_invariants(2).unwrap();
        assert_eq!(l2.dim(), 4);
        assert!(l2.contains_tensor(&t(2, "12 - 21")).unwrap());
        assert_eq!(sp.letter_reduced_loop_dim(4).unwrap(), 1);
        assert_eq!(sp.loop_invariants(1).unwrap().dim(), 2);
    }

    #[test]
    fn closure_small() {
        let sp = spaces(2);
        let c = sp.closure_invariants(2).unwrap();
        assert_eq!(c.basis(), vec![t(2, "12 - 21")]);
        assert_eq!(*sp.ker_rcl(3).unwrap(), *sp.space_s(3).unwrap());
    }

    #[test]
    fn min_generators_small() {
        let sp = spaces(2);
        let gens: Vec<usize> = (1..=6)
            .map(|n| sp.min_generator_count(Family::Conjugation, n).unwrap())
            .collect();
        assert_eq!(gens, vec![2, 0, 0, 1, 0, 4]);
    }

    #[test]
    fn report_level_four() {
        let r = spaces(2).report(4).unwrap();
        assert_eq!(
            (
                r.conjugation,
                r.v,
                r.bracket_vr,
                r.letter_reduced_conj,
                r.letter_reduced_loop
            ),
            (6, 4, 3, 1, 1)
        );
        assert_eq!(r.closure, r.v);
        assert_eq!(r.s, 16 - r.v);
    }

    #[test]
    fn level_zero_is_rejected_where_undefined() {
        let sp = spaces(2);
        assert!(sp.conj_invariants(0).is_err());
        assert!(sp.space_s(0).is_err());
        assert_eq!(sp.space_v(0).unwrap().dim(), 1);
    }
}

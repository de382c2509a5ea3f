//! Computational evidence for the open conjectures about loop, closure and
//! conjugation invariants. Everything here is reported, never asserted: a
//! conjecture may fail at a level nobody has computed before.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Subspace;
use crate::rational::int;
use crate::relations::Check;
use crate::spaces::InvariantSpaces;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// Membership of a shuffle product of areas `(i j - j i)` in `im rcl∘rot`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaProduct {
    pub pairs: Vec<(Letter, Letter)>,
    pub distinct_letters: bool,
    pub in_rcl_rot: bool,
}

impl AreaProduct {
    pub fn label(&self) -> String {
        self.pairs
            .iter()
            .map(|(i, j)| format!("({i}{j}-{j}{i})"))
            .collect::<Vec<_>>()
            .join("⧢")
    }

    /// Distinct letters predict "not a member", repeated letters predict
    /// "member".
    pub fn matches_prediction(&self) -> bool {
        self.in_rcl_rot != self.distinct_letters
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEvidence {
    pub d: usize,
    pub level: usize,
    /// `dim LoopInv_n` against `dim(S_n + AreaConj_n)`, where `AreaConj` is
    /// the shuffle algebra generated by the areas and the conjugation
    /// invariants.
    pub loop_dim: usize,
    pub s_plus_area_conj_dim: usize,
    pub s_plus_area_conj_inside_loop: bool,
    /// `dim([T_{n-1}, R^d] ∩ V_n)` against `dim [V_{n-1}, R^d]` plus the
    /// number of areas at level two.
    pub bracket_t_meet_v_dim: usize,
    pub bracket_v_plus_areas_dim: usize,
    /// `dim(S_n + ConjInv_n + areas)`, the sharper form of the loop
    /// decomposition.
    pub s_plus_conj_plus_areas_dim: usize,
    pub closure_meet_conj_dim: usize,
    pub area_products: Vec<AreaProduct>,
    /// `(ij - ji) ⧢ u ∈ im rcl∘rot` for every basis element `u` of
    /// `im rcl∘rot` two levels down; `None` below level four.
    pub area_times_rcl_rot_closed: Option<bool>,
    /// `dim(ConjInv_n ∩ S_n)` against `dim span{ i ⧢ c : c ∈ ConjInv_{n-1} }`.
    pub conj_meet_s_dim: usize,
    pub letters_times_conj_dim: usize,
}

impl ConjectureEvidence {
    pub fn loop_equals_s_plus_area_conj(&self) -> bool {
        self.s_plus_area_conj_inside_loop && self.loop_dim == self.s_plus_area_conj_dim
    }

    pub fn bracket_meet_splits(&self) -> bool {
        self.bracket_t_meet_v_dim == self.bracket_v_plus_areas_dim
    }

    pub fn loop_equals_s_plus_conj_plus_areas(&self) -> bool {
        self.loop_dim == self.s_plus_conj_plus_areas_dim
    }

    pub fn conj_shuffles_with_letters_factor(&self) -> bool {
        self.conj_meet_s_dim == self.letters_times_conj_dim
    }

    /// Human-readable lines, one per comparison.
    pub fn lines(&self) -> Vec<String> {
        let (d, n) = (self.d, self.level);
        let yes = |b: bool| if b { "consistent" } else { "VIOLATED" };
        let mut out = vec![
            format!(
                "d={d} n={n} LoopInv = S + AreaConj: {} vs {} ({})",
                self.loop_dim,
                self.s_plus_area_conj_dim,
                yes(self.loop_equals_s_plus_area_conj())
            ),
            format!(
                "d={d} n={n} [T,R^d] ∩ V = [V,R^d] ⊕ areas: {} vs {} ({})",
                self.bracket_t_meet_v_dim,
                self.bracket_v_plus_areas_dim,
                if d <= 3 {
                    yes(self.bracket_meet_splits())
                } else if self.bracket_meet_splits() {
                    "holds"
                } else {
                    "fails (only conjectured for d ≤ 3)"
                }
            ),
            format!(
                "d={d} n={n} LoopInv = S + ConjInv + areas: {} vs {}",
                self.loop_dim, self.s_plus_conj_plus_areas_dim
            ),
            format!(
                "d={d} n={n} dim(im rcl ∩ ConjInv) = {} ({})",
                self.closure_meet_conj_dim,
                yes(self.closure_meet_conj_dim == 0)
            ),
        ];
        for p in &self.area_products {
            out.push(format!(
                "d={d} n={n} {} {} im rcl∘rot ({})",
                p.label(),
                if p.in_rcl_rot { "in" } else { "NOT in" },
                yes(p.matches_prediction())
            ));
        }
        if let Some(closed) = self.area_times_rcl_rot_closed {
            out.push(format!("d={d} n={n} areas ⧢ im rcl∘rot ⊆ im rcl∘rot: {}", yes(closed)));
        }
        out.push(format!(
            "d={d} n={n} ConjInv ∩ S vs letters ⧢ ConjInv: {} vs {}{}",
            self.conj_meet_s_dim,
            self.letters_times_conj_dim,
            if d == 2 {
                format!(" ({})", yes(self.conj_shuffles_with_letters_factor()))
            } else {
                String::new()
            }
        ));
        out
    }
}

/// `ij - ji`.
pub fn area(d: usize, i: Letter, j: Letter) -> TensorElement {
    let mut x = TensorElement::zero(d);
    x.add_term(Word::from_letters(&[i, j]), int(1));
    x.add_term(Word::from_letters(&[j, i]), int(-1));
    x
}

fn areas(d: usize) -> Vec<(Letter, Letter)> {
    let mut out = Vec::new();
    for i in 1..=d as Letter {
        for j in i + 1..=d as Letter {
            out.push((i, j));
        }
    }
    out
}

/// Multisets of size `k` drawn from `items`, as weakly increasing index
/// sequences.
fn multisets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every shuffle product of `n/2` areas and its membership in
/// `im rcl∘rot`. Empty for odd `n`.
pub fn area_products(spaces: &InvariantSpaces, n: usize) -> Result<Vec<AreaProduct>> {
    let d = spaces.alphabet_size();
    if n % 2 == 1 || n < 2 {
        return Ok(Vec::new());
    }
    let target = spaces.rcl_rot(n)?;
    let mut out = Vec::new();
    for pairs in multisets(&areas(d), n / 2) {
        let mut x = TensorElement::unit(d);
        for &(i, j) in &pairs {
            x = x.shuffle(&area(d, i, j))?;
        }
        let mut seen: Vec<Letter> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        seen.sort_unstable();
        let distinct = seen.windows(2).all(|w| w[0] != w[1]);
        out.push(AreaProduct {
            pairs,
            distinct_letters: distinct,
            in_rcl_rot: target.contains_tensor(&x)?,
        });
    }
    Ok(out)
}

/// `(12 - 21) ⧢ (34 - 43)` is not in `im rcl∘rot` at level four (needs
/// `d ≥ 4`).
pub fn distinct_area_product_check(spaces: &InvariantSpaces) -> Result<Check> {
    let d = spaces.alphabet_size();
    if d < 4 {
        return Err(crate::Error::InvalidArgument(format!(
            "the distinct-letter area product needs d >= 4, got {d}"
        )));
    }
    let x = area(d, 1, 2).shuffle(&area(d, 3, 4))?;
    let inside = spaces.rcl_rot(4)?.contains_tensor(&x)?;
    Ok(Check::new(
        "(12-21)⧢(34-43) ∉ im rcl∘rot",
        !inside,
        if inside { "found inside" } else { "not a member" },
    ))
}

pub fn conjecture_evidence(spaces: &InvariantSpaces, n: usize) -> Result<ConjectureEvidence> {
    let d = spaces.alphabet_size();
    let budget = spaces.budget();
    let loops = spaces.loop_invariants(n)?;
    let s = spaces.space_s(n)?;
    let conj = spaces.conj_invariants(n)?;
    let v = spaces.space_v(n)?;

    let s_area_conj = s.sum_with_budget(&*spaces.area_conj(n)?, budget)?;
    let area_elements: Vec<TensorElement> = if n == 2 {
        areas(d).into_iter().map(|(i, j)| area(d, i, j)).collect()
    } else {
        Vec::new()
    };
    let area_span = Subspace::span_tensors(d, n, &area_elements, budget)?;
    let s_conj_areas = s.sum_with_budget(&conj, budget)?.sum_with_budget(&area_span, budget)?;

    let bracket_t_meet_v = spaces.bracket_t(n)?.intersect_with_budget(&v, budget)?;
    let bracket_v_areas = spaces.bracket_v(n)?.sum_with_budget(&area_span, budget)?;

    let closure_meet_conj = spaces.closure_invariants(n)?.intersect_with_budget(&conj, budget)?;

    let area_times_rcl_rot_closed = if n >= 4 {
        let target = spaces.rcl_rot(n)?;
        let mut closed = true;
        'outer: for u in spaces.rcl_rot(n - 2)?.basis() {
            for (i, j) in areas(d) {
                if !target.contains_tensor(&area(d, i, j).shuffle(&u)?)? {
                    closed = false;
                    break 'outer;
                }
            }
        }
        Some(closed)
    } else {
        None
    };

    let conj_meet_s = conj.intersect_with_budget(&s, budget)?;
    let letters_times_conj = if n >= 2 {
        let lower = spaces.conj_invariants(n - 1)?.basis();
        let mut products = Vec::new();
        for i in 1..=d as Letter {
            let l = TensorElement::letter(d, i);
            for c in &lower {
                products.push(l.shuffle(c)?);
            }
        }
        Subspace::span_tensors(d, n, &products, budget)?.dim()
    } else {
        0
    };

    Ok(ConjectureEvidence {
        d,
        level: n,
        loop_dim: loops.dim(),
        s_plus_area_conj_dim: s_area_conj.dim(),
        s_plus_area_conj_inside_loop: s_area_conj.is_subspace_of(&loops)?,
        bracket_t_meet_v_dim: bracket_t_meet_v.dim(),
        bracket_v_plus_areas_dim: bracket_v_areas.dim(),
        s_plus_conj_plus_areas_dim: s_conj_areas.dim(),
        closure_meet_conj_dim: closure_meet_conj.dim(),
        area_products: area_products(spaces, n)?,
        area_times_rcl_rot_closed,
        conj_meet_s_dim: conj_meet_s.dim(),
        letters_times_conj_dim: letters_times_conj,
    })
}

//! Explicit shuffle identities among invariants, evaluated exactly.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operators::{rcl, rot};
use crate::rational::int;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// Outcome of one exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Passes when `lhs - rhs` is exactly zero; the detail shows the
    /// difference otherwise.
    pub fn equality(name: impl Into<String>, lhs: &TensorElement, rhs: &TensorElement) -> Result<Self> {
        let diff = lhs.try_add(&rhs.scale(&int(-1)))?;
        let detail = if diff.is_zero() && lhs.is_zero() {
            "exactly zero".to_string()
        } else if diff.is_zero() {
            format!("{} terms on each side", lhs.len())
        } else {
            format!("difference has {} terms, e.g. {}", diff.len(), truncate_display(&diff))
        };
        Ok(Check::new(name, diff.is_zero(), detail))
    }
}

fn truncate_display(x: &TensorElement) -> String {
    let s = x.to_string();
    if s.len() > 120 {
        format!("{}…", &s[..s.char_indices().nth(120).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

struct Alg {
    d: usize,
}

impl Alg {
    fn letter(&self, i: Letter) -> TensorElement {
        TensorElement::letter(self.d, i)
    }

    fn word(&self, s: &str) -> Result<Word> {
        Word::parse(s, self.d)
    }

    fn rot(&self, s: &str) -> Result<TensorElement> {
        rot(&self.word(s)?, self.d)
    }

    fn rcl_rot(&self, s: &str) -> Result<TensorElement> {
        Ok(rcl(&self.rot(s)?))
    }

    /// `ij - ji`.
    fn area(&self, i: Letter, j: Letter) -> TensorElement {
        let mut x = TensorElement::zero(self.d);
        x.add_term(Word::from_letters(&[i, j]), int(1));
        x.add_term(Word::from_letters(&[j, i]), int(-1));
        x
    }

    /// `rot(abc) - rot(bac)`.
    fn vol3(&self, a: Letter, b: Letter, c: Letter) -> Result<TensorElement> {
        let abc = rot(&Word::from_letters(&[a, b, c]), self.d)?;
        let bac = rot(&Word::from_letters(&[b, a, c]), self.d)?;
        abc.try_add(&bac.scale(&int(-1)))
    }

    fn sh(&self, factors: &[TensorElement]) -> Result<TensorElement> {
        let mut acc = TensorElement::unit(self.d);
        for f in factors {
            acc = acc.shuffle(f)?;
        }
        Ok(acc)
    }

    fn sum(&self, terms: &[(i64, TensorElement)]) -> Result<TensorElement> {
        let mut acc = TensorElement::zero(self.d);
        for (c, t) in terms {
            acc = acc.try_add(&t.scale(&int(*c)))?;
        }
        Ok(acc)
    }
}

/// The level-6 relation among conjugation invariants of three-letter
/// paths.
fn d3_level6_relation(a: &Alg) -> Result<Check> {
    let (l1, l2, l3) = (a.letter(1), a.letter(2), a.letter(3));
    let r132 = a.rot("132")?;
    let lhs = a.sum(&[
        (2, a.sh(&[l1.clone(), l1.clone(), a.rot("2233")?])?),
        (2, a.sh(&[l1.clone(), l2.clone(), a.rot("1323")?])?),
        (-1, a.sh(&[l2.clone(), l2.clone(), a.rot("1313")?])?),
        (-4, a.sh(&[l1.clone(), l3.clone(), a.rot("1223")?])?),
        (-4, a.sh(&[l2.clone(), l3.clone(), a.rot("1132")?])?),
        (2, a.sh(&[l3.clone(), l3.clone(), a.rot("1122")?])?),
        (2, a.sh(&[r132.clone(), r132.clone()])?),
        (-2, a.sh(&[l1.clone(), l2.clone(), l3.clone(), r132])?),
        (1, a.sh(&[l1.clone(), l1, l2.clone(), l2, l3.clone(), l3])?),
    ])?;
    Check::equality(
        "level-6 relation among conjugation invariants of 1, 2, 3 vanishes",
        &lhs,
        &TensorElement::zero(a.d),
    )
}

fn d4_vol3_relation(a: &Alg) -> Result<Check> {
    let lhs = a.sum(&[
        (1, a.letter(1).shuffle(&a.vol3(2, 3, 4)?)?),
        (-1, a.letter(2).shuffle(&a.vol3(1, 3, 4)?)?),
        (1, a.letter(3).shuffle(&a.vol3(1, 2, 4)?)?),
        (-1, a.letter(4).shuffle(&a.vol3(1, 2, 3)?)?),
    ])?;
    Check::equality(
        "1⧢vol3(2,3,4) - 2⧢vol3(1,3,4) + 3⧢vol3(1,2,4) - 4⧢vol3(1,2,3) = 0",
        &lhs,
        &TensorElement::zero(a.d),
    )
}

fn vol3_presentation(a: &Alg, x: Letter, y: Letter, z: Letter) -> Result<Check> {
    let rhs = a.sum(&[
        (1, a.letter(x).shuffle(&a.area(y, z))?),
        (-1, a.letter(y).shuffle(&a.area(x, z))?),
        (1, a.letter(z).shuffle(&a.area(x, y))?),
    ])?;
    Check::equality(
        format!("vol3({x},{y},{z}) = {x}⧢({y}{z}-{z}{y}) - {y}⧢({x}{z}-{z}{x}) + {z}⧢({x}{y}-{y}{x})"),
        &a.vol3(x, y, z)?,
        &rhs,
    )
}

fn rcl_rot_identities(a: &Alg) -> Result<Vec<Check>> {
    let (a12, a13, a23) = (a.area(1, 2), a.area(1, 3), a.area(2, 3));
    let mut out = vec![Check::equality(
        "(12-21)^⧢2 = 2·rcl∘rot(1212)",
        &a.sh(&[a12.clone(), a12.clone()])?,
        &a.sum(&[(2, a.rcl_rot("1212")?)])?,
    )?];
    out.push(Check::equality(
        "(12-21)^⧢3 = 4·rcl∘rot(121212) + 16·rcl∘rot(121122)",
        &a.sh(&[a12.clone(), a12.clone(), a12.clone()])?,
        &a.sum(&[(4, a.rcl_rot("121212")?), (16, a.rcl_rot("121122")?)])?,
    )?);
    if a.d < 3 {
        return Ok(out);
    }
    out.push(Check::equality(
        "(12-21)⧢(13-31) = 2·rcl∘rot(1213)",
        &a.sh(&[a12.clone(), a13.clone()])?,
        &a.sum(&[(2, a.rcl_rot("1213")?)])?,
    )?);
    out.push(Check::equality(
        "(12-21)^⧢2⧢(13-31) = 4·rcl∘rot(121213) + 8·rcl∘rot(121123) + 8·rcl∘rot(212113)",
        &a.sh(&[a12.clone(), a12.clone(), a13.clone()])?,
        &a.sum(&[
            (4, a.rcl_rot("121213")?),
            (8, a.rcl_rot("121123")?),
            (8, a.rcl_rot("212113")?),
        ])?,
    )?);
    out.push(Check::equality(
        "(12-21)⧢(13-31)⧢(23-32) = -8·rcl∘rot(121323) - 16·rcl∘rot(212133) - 16·rcl∘rot(122133)",
        &a.sh(&[a12, a13, a23])?,
        &a.sum(&[
            (-8, a.rcl_rot("121323")?),
            (-16, a.rcl_rot("212133")?),
            (-16, a.rcl_rot("122133")?),
        ])?,
    )?);
    Ok(out)
}

/// Every listed identity whose letters fit in the alphabet `1..=d`,
/// evaluated in `T(R^d)`.
pub fn verify_relations(d: usize) -> Result<Vec<Check>> {
    if d == 0 || d > crate::word::MAX_ALPHABET {
        return Err(crate::Error::InvalidArgument(format!("alphabet size {d} out of range")));
    }
    let a = Alg { d };
    let mut out = Vec::new();
    if d >= 2 {
        out.extend(rcl_rot_identities(&a)?);
    }
    if d >= 3 {
        out.push(vol3_presentation(&a, 1, 2, 3)?);
        out.push(d3_level6_relation(&a)?);
    }
    if d >= 4 {
        for (x, y, z) in [(1, 2, 4), (1, 3, 4), (2, 3, 4)] {
            out.push(vol3_presentation(&a, x, y, z)?);
        }
        out.push(d4_vol3_relation(&a)?);
    }
    Ok(out)
}
